//! String graphs: labelled linear graphs and the conversions between them
//! and strips.
//!
//! A string graph is a finite linear graph whose vertices carry ground
//! vertices and whose edges carry ground arrows, each edge pointing either
//! towards the higher position (*forward*) or towards the lower one. The
//! two outgoing labels at any position must differ, as must the two
//! incoming labels; each maximal equioriented stretch must spell a path
//! whose residue survives in the algebra — that last condition is what
//! [`strip_from_string`] checks while lifting.

use crate::{assemble_runs, Strip, StripError};
use sbs_permdata::PermissibleData;
use sbs_quiver::{ArrowId, Quiver, VertexId};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StringGraphError {
    #[error("step {index}: {msg}")]
    Step { index: usize, msg: String },
    #[error("edges {left} and {right} leave their shared vertex along `{label}` twice")]
    RepeatedOut { left: usize, right: usize, label: String },
    #[error("edges {left} and {right} enter their shared vertex along `{label}` twice")]
    RepeatedIn { left: usize, right: usize, label: String },
}

/// A labelled linear graph. Vertices sit at positions `0..n`; edge `j`
/// joins positions `j` and `j + 1` and stores `(label, forward)`, where
/// `forward` means the edge points from `j` to `j + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StringGraph {
    vertices: Vec<VertexId>,
    edges: Vec<(ArrowId, bool)>,
}

impl StringGraph {
    /// The graph with no vertices at all (the zero module).
    pub fn empty() -> StringGraph {
        StringGraph { vertices: Vec::new(), edges: Vec::new() }
    }

    /// A single labelled vertex and no edges (a simple module).
    pub fn single(v: VertexId) -> StringGraph {
        StringGraph { vertices: vec![v], edges: Vec::new() }
    }

    /// Walk the ground quiver from `start`, crossing each listed arrow
    /// either with its direction (`forward = true`) or against it, and
    /// record the trail as a string graph.
    pub fn from_walk(
        ground: &Quiver,
        start: VertexId,
        steps: &[(ArrowId, bool)],
    ) -> Result<StringGraph, StringGraphError> {
        let mut vertices = vec![start];
        for (index, &(x, forward)) in steps.iter().enumerate() {
            let here = *vertices.last().unwrap();
            let (tail, head) =
                if forward { (ground.source(x), ground.target(x)) } else { (ground.target(x), ground.source(x)) };
            if tail != here {
                return Err(StringGraphError::Step {
                    index,
                    msg: format!(
                        "arrow `{}` cannot be crossed {} from vertex `{}`",
                        ground.arrow_name(x),
                        if forward { "forwards" } else { "backwards" },
                        ground.vertex_name(here),
                    ),
                });
            }
            vertices.push(head);
        }
        let graph = StringGraph { vertices, edges: steps.to_vec() };
        graph.check_label_conditions(ground)?;
        Ok(graph)
    }

    /// Internal constructor for graphs already known to be consistent.
    pub(crate) fn from_parts(vertices: Vec<VertexId>, edges: Vec<(ArrowId, bool)>) -> StringGraph {
        debug_assert!(vertices.is_empty() || edges.len() + 1 == vertices.len());
        StringGraph { vertices, edges }
    }

    /// Two edges leaving (or entering) one position must carry distinct
    /// labels; only adjacent edge pairs can share a position.
    fn check_label_conditions(&self, ground: &Quiver) -> Result<(), StringGraphError> {
        for j in 1..self.vertices.len().saturating_sub(1) {
            let (left, lfwd) = self.edges[j - 1];
            let (right, rfwd) = self.edges[j];
            if left != right {
                continue;
            }
            let label = ground.arrow_name(left).to_string();
            if !lfwd && rfwd {
                return Err(StringGraphError::RepeatedOut { left: j - 1, right: j, label });
            }
            if lfwd && !rfwd {
                return Err(StringGraphError::RepeatedIn { left: j - 1, right: j, label });
            }
        }
        Ok(())
    }

    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Ground vertex at each position.
    pub fn vertex_labels(&self) -> &[VertexId] {
        &self.vertices
    }

    /// `(label, forward)` for each edge, in position order.
    pub fn edges(&self) -> &[(ArrowId, bool)] {
        &self.edges
    }

    /// Number of positions that are a sink or a source, minus one; the
    /// empty graph has width zero. Equals the number of maximal
    /// equioriented stretches, and a lone vertex — both a sink and a
    /// source — has width zero.
    pub fn width(&self) -> usize {
        if self.vertices.is_empty() {
            return 0;
        }
        let n = self.vertices.len();
        let count = (0..n)
            .filter(|&j| {
                let in_left = j > 0 && self.edges[j - 1].1;
                let out_left = j > 0 && !self.edges[j - 1].1;
                let in_right = j < n - 1 && !self.edges[j].1;
                let out_right = j < n - 1 && self.edges[j].1;
                let is_sink = !out_left && !out_right;
                let is_source = !in_left && !in_right;
                is_sink || is_source
            })
            .count();
        count - 1
    }

    /// How many positions carry each ground vertex.
    pub fn dimension_vector(&self, ground: &Quiver) -> Vec<usize> {
        let mut dims = vec![0; ground.n_vertices()];
        for v in &self.vertices {
            dims[v.0] += 1;
        }
        dims
    }

    /// Flip the direction of every edge, keeping labels and positions.
    /// This is the same labelled graph seen over the opposite algebra,
    /// where every ground arrow points the other way.
    pub fn reversed(&self) -> StringGraph {
        let edges = self.edges.iter().map(|&(x, fwd)| (x, !fwd)).collect();
        StringGraph { vertices: self.vertices.clone(), edges }
    }

    /// Mirror the graph left to right.
    pub fn reflected(&self) -> StringGraph {
        let vertices = self.vertices.iter().rev().copied().collect();
        let edges = self.edges.iter().rev().map(|&(x, fwd)| (x, !fwd)).collect();
        StringGraph { vertices, edges }
    }

    /// The smaller of the graph and its mirror image, so that reflected
    /// graphs compare equal.
    pub fn canonical(&self) -> StringGraph {
        let mirrored = self.reflected();
        if *self <= mirrored {
            self.clone()
        } else {
            mirrored
        }
    }
}

impl Strip {
    /// Read off the string graph the strip represents. Zero strips and
    /// all-virtual rows give the empty graph.
    pub fn string_graph(&self, pd: &PermissibleData) -> StringGraph {
        let Some((base, letters)) = self.spine(pd) else {
            return StringGraph::empty();
        };
        let padded = pd.over().padded();
        let mut vertices = vec![base];
        let mut edges = Vec::with_capacity(letters.len());
        for (x, inverse) in letters {
            let here = *vertices.last().unwrap();
            if inverse {
                debug_assert_eq!(padded.target(x), here);
                vertices.push(padded.source(x));
                edges.push((x, false));
            } else {
                debug_assert_eq!(padded.source(x), here);
                vertices.push(padded.target(x));
                edges.push((x, true));
            }
        }
        StringGraph::from_parts(vertices, edges)
    }
}

/// Represent a string graph as a canonical strip. The empty graph gives
/// the blank strip and a lone vertex gives the simple strip there; anything
/// longer is cut into maximal equioriented runs, each lifted to a syllable.
///
/// Errors when some run's label path has vanishing residue (or names a
/// whole commutativity component), i.e. the graph is not a string graph
/// for this algebra.
pub fn strip_from_string(pd: &PermissibleData, sg: &StringGraph) -> Result<Strip, StripError> {
    if sg.is_empty() {
        return Ok(Strip::empty());
    }
    if sg.edges().is_empty() {
        return Ok(Strip::simple(pd, sg.vertex_labels()[0]));
    }
    // Group edges into maximal equioriented runs, recording each run's
    // label path in path order: backward stretches are walked against the
    // arrows, so their labels accumulate in reverse.
    let mut runs: Vec<(Vec<ArrowId>, bool)> = Vec::new();
    for &(x, forward) in sg.edges() {
        let inverse = !forward;
        match runs.last_mut() {
            Some((path, pi)) if *pi == inverse => {
                if inverse {
                    path.insert(0, x);
                } else {
                    path.push(x);
                }
            }
            _ => runs.push((vec![x], inverse)),
        }
    }
    assemble_runs(pd, &runs)
}

/// The strip of the dual module over the opposite algebra: same labelled
/// graph, every arrow now pointing the other way. Applying it twice (with
/// the opposite data the second time) gives back the canonical strip.
pub fn dual_strip(w: &Strip, pd: &PermissibleData) -> Strip {
    let graph = w.string_graph(pd).reversed();
    let op = pd.opposite();
    strip_from_string(&op, &graph)
        .expect("a string graph stays a string graph over the opposite algebra")
}
