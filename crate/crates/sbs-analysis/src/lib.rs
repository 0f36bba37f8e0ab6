//! Structural analyses on top of the syzygy machinery.
//!
//! The *pin graph* records, on the ground vertices, which pin module has
//! its head where and its socle where; its longest path length `m` bounds
//! how wide iterated syzygies can grow (`4m + 6` from depth `2m + 2` on),
//! provided the graph is acyclic. Interior descent cycles, the path
//! grading they induce, and the injective-orbit checks live in
//! [`grading`]; weak periodicity along cycles of length-two zero
//! relations lives in [`periodicity`].

use sbs_permdata::PermissibleData;
use sbs_quiver::{Arrow, Quiver, VertexId};
use sbs_strips::Strip;
use sbs_syzygy::iterated_syzygy;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use thiserror::Error;

mod grading;
mod periodicity;

pub use grading::{
    grade, grade_syllable, injective_orbit_check, interior_descent_cycles,
    InjectiveOrbitReport, InteriorDescentCycle, OrbitOutcome,
};
pub use periodicity::{strip_of_arrow_ideal, verify_weak_periodicity, zero_relation_cycles};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("the pin graph has a cycle, so no syzygy width bound applies")]
    CyclicPinGraph,
    #[error("slot {slot} does not lie on the cycle's overquiver component")]
    OffComponent { slot: usize },
}

/// Directed graph on the ground vertices with an arrow `i -> j` whenever
/// a pin module has head `S_i` and socle `S_j`. At most one arrow leaves
/// and at most one arrow enters each vertex.
#[derive(Debug, Clone)]
pub struct PinGraph {
    quiver: Quiver,
}

impl PinGraph {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn n_vertices(&self) -> usize {
        self.quiver.n_vertices()
    }

    pub fn n_arrows(&self) -> usize {
        self.quiver.n_arrows()
    }

    /// Head/socle vertex pairs, one per pin module, in vertex order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.quiver.arrow_ids().map(|x| (self.quiver.source(x), self.quiver.target(x))).collect()
    }

    pub fn is_one_regular(&self) -> bool {
        self.quiver.is_m_regular(1)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph pin_graph {\n");
        for v in self.quiver.vertices() {
            let _ = writeln!(s, "  v{} [label=\"{}\"];", v.0, self.quiver.vertex_name(v));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  v{} -> v{};", a.0, b.0);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "vertices": self.quiver.vertices()
                .map(|v| serde_json::json!({ "name": self.quiver.vertex_name(v) }))
                .collect::<Vec<_>>(),
            "arrows": self.edges().iter().map(|&(a, b)| serde_json::json!([a.0, b.0]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Read the pin graph off the encodings: every pin slot heads a pin
/// module at its ground vertex, whose socle sits where the commutativity
/// component lands. The two lifts of a pin vertex name the same module,
/// so head/socle pairs are deduplicated.
pub fn pin_graph(pd: &PermissibleData) -> PinGraph {
    let over = pd.over();
    let padded = over.padded();
    let mut pairs: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    for i in pd.slots() {
        if pd.is_pin_slot(i) {
            let head = over.ground_vertex(i);
            let socle = over.ground_vertex(over.shift(i, pd.a(i) as isize));
            pairs.insert((head, socle));
        }
    }
    let vertices: Vec<String> =
        padded.vertices().map(|v| padded.vertex_name(v).to_string()).collect();
    let arrows: Vec<Arrow> = pairs
        .into_iter()
        .map(|(head, socle)| Arrow {
            name: format!("pin({})", padded.vertex_name(head)),
            source: head,
            target: socle,
        })
        .collect();
    PinGraph { quiver: Quiver::new(vertices, arrows) }
}

/// Length, in arrows, of a longest path in the pin graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PinPathLength {
    Finite(usize),
    Infinite,
}

/// Longest path by topological order; any cycle (loops included) makes
/// every length reachable, hence `Infinite`.
pub fn longest_pin_path(pg: &PinGraph) -> PinPathLength {
    let q = pg.quiver();
    let n = q.n_vertices();
    let mut indegree = vec![0usize; n];
    for x in q.arrow_ids() {
        indegree[q.target(x).0] += 1;
    }
    let mut ready: Vec<VertexId> =
        (0..n).map(VertexId).filter(|v| indegree[v.0] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for x in q.out_arrows(v) {
            let t = q.target(x);
            indegree[t.0] -= 1;
            if indegree[t.0] == 0 {
                ready.push(t);
            }
        }
    }
    if order.len() < n {
        return PinPathLength::Infinite;
    }
    let mut longest = vec![0usize; n];
    for &v in order.iter().rev() {
        for x in q.out_arrows(v) {
            longest[v.0] = longest[v.0].max(1 + longest[q.target(x).0]);
        }
    }
    PinPathLength::Finite(longest.into_iter().max().unwrap_or(0))
}

/// Outcome of driving samples to syzygy depth `2m + 2` and measuring
/// every summand against the width bound `4m + 6`.
#[derive(Debug, Clone)]
pub struct WidthBoundReport {
    /// Longest pin path `m`.
    pub longest_path: usize,
    /// Syzygy depth checked, `2m + 2`.
    pub depth: usize,
    /// Width bound, `4m + 6`.
    pub bound: usize,
    pub summands_checked: usize,
    /// Summands wider than the bound, with their widths (expected empty).
    pub violations: Vec<(Strip, usize)>,
}

impl WidthBoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the syzygy width bound on the given sample strips. Requires an
/// acyclic pin graph; a cyclic one carries no bound at all.
pub fn check_width_bound(
    pd: &PermissibleData,
    samples: &[Strip],
) -> Result<WidthBoundReport, AnalysisError> {
    let m = match longest_pin_path(&pin_graph(pd)) {
        PinPathLength::Infinite => return Err(AnalysisError::CyclicPinGraph),
        PinPathLength::Finite(m) => m,
    };
    let depth = 2 * m + 2;
    let bound = 4 * m + 6;
    let mut summands_checked = 0;
    let mut violations = Vec::new();
    for w in samples {
        for summand in iterated_syzygy(pd, w, depth) {
            summands_checked += 1;
            let width = summand.width();
            if width > bound {
                violations.push((summand, width));
            }
        }
    }
    Ok(WidthBoundReport { longest_path: m, depth, bound, summands_checked, violations })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use sbs_presentation::SbAlgebraSpec;

    pub fn running() -> PermissibleData {
        PermissibleData::canonical(
            &SbAlgebraSpec::parse(sbs_presentation::example_source(1).unwrap()).unwrap(),
        )
    }

    /// Radical-square-zero monomial data on a two-cycle.
    pub fn monomial() -> PermissibleData {
        let src = "quiver {\n  vertices: 1 2;\n  arrows: a: 1 -> 2; b: 2 -> 1;\n}\nrelations {\n  a*b;\n  b*a;\n}\n";
        PermissibleData::canonical(&SbAlgebraSpec::parse(src).unwrap())
    }

    /// Selfinjective data: both vertices carry a pin module whose socle
    /// returns home, so the pin graph is two loops.
    pub fn selfinjective() -> PermissibleData {
        let src = "quiver {\n  vertices: 1 2;\n  arrows: a: 1 -> 2; b: 2 -> 1; c: 1 -> 2; d: 2 -> 1;\n}\nrelations {\n  a*d;\n  b*a;\n  c*b;\n  d*c;\n  a*b - c*d;\n  b*c - d*a;\n}\n";
        PermissibleData::canonical(&SbAlgebraSpec::parse(src).unwrap())
    }

    /// One pin module with head 1 and socle 2, so the pin graph is a
    /// single honest arrow.
    pub fn pin_arrow() -> PermissibleData {
        let src = "quiver {\n  vertices: 1 2;\n  arrows: a: 1 -> 1; b: 1 -> 2; c: 2 -> 2;\n}\nrelations {\n  a*a;\n  c*c;\n  a*b - b*c;\n}\n";
        PermissibleData::canonical(&SbAlgebraSpec::parse(src).unwrap())
    }
}
