//! Syzygies of strips, syzygy fabrics, and the syzygy quiver.
//!
//! Covering each peak of a canonical strip with its patch produces a
//! bottom row of syllables. Cutting that row — bottom cells of a patch
//! separate unless the pin projective acts there, cells facing each other
//! across a patch boundary always stay together — yields the syzygy as a
//! direct sum of strips. Iterating draws the fabric (a tree of rows) and,
//! at the module level, the syzygy quiver whose vertices are the distinct
//! canonical strips reachable from a seed.

use sbs_patches::{patch_for_peak, Patch, ProjectiveKind};
use sbs_permdata::{PermissibleData, SlotId};
use sbs_quiver::VertexId;
use sbs_strips::Strip;
use sbs_syllables::Syllable;
use std::collections::BTreeMap;
use std::fmt::Write as _;

mod bands;
pub use bands::{
    band_from_string, band_syzygy_chain, band_syzygy_is_band, band_syzygy_successor, power,
    BandError, BandGraph,
};

/// The line of patches covering a canonical strip. Patch `j` tops the peak
/// at columns `(2(k + j), 2(k + j) + 1)`, where `k` is [`first_peak`];
/// its two bottom cells land one column to the right of its top cells.
///
/// [`first_peak`]: PatchCover::first_peak
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatchCover {
    patches: Vec<Patch>,
    first_peak: usize,
}

/// Cover each peak of the (canonicalised) strip by its patch. The direct
/// sum of the associated projectives is the projective cover of the module
/// the strip presents.
pub fn patch_cover(pd: &PermissibleData, strip: &Strip) -> PatchCover {
    let s = strip.canonical(pd);
    let first_peak = s.first_col() / 2;
    let patches = s
        .peaks()
        .into_iter()
        .map(|(l, r)| patch_for_peak(pd, l, r).expect("a valid strip is covered by patches"))
        .collect();
    PatchCover { patches, first_peak }
}

impl PatchCover {
    pub fn patches(&self) -> &[Patch] {
        &self.patches
    }

    /// Index of the leftmost peak covered, in the parent's column grid.
    pub fn first_peak(&self) -> usize {
        self.first_peak
    }

    /// Bottom-row cells with their columns, one column right of the tops.
    pub fn bottom_row(&self) -> Vec<(usize, Syllable)> {
        self.patches
            .iter()
            .enumerate()
            .flat_map(|(j, p)| {
                let col = 2 * (self.first_peak + j) + 1;
                let (sw, se) = p.bottom();
                [(col, sw), (col + 1, se)]
            })
            .collect()
    }

    /// Number of patches where a projective acts.
    pub fn n_projectives(&self) -> usize {
        self.patches.iter().filter(|p| p.kind() != ProjectiveKind::Zero).count()
    }

    /// Vertexwise dimension of the direct sum of associated projectives.
    pub fn dimension_vector(&self, pd: &PermissibleData) -> Vec<usize> {
        let mut dims = vec![0usize; pd.over().padded().n_vertices()];
        for p in &self.patches {
            if let Some(v) = p.vertex(pd) {
                for (pos, d) in projective_dimension_vector(pd, v).iter().enumerate() {
                    dims[pos] += d;
                }
            }
        }
        dims
    }
}

/// Vertexwise dimension of the projective at a ground vertex, counting the
/// paths out of the vertex with the two components of a commutativity
/// relation identified.
pub fn projective_dimension_vector(pd: &PermissibleData, v: VertexId) -> Vec<usize> {
    let over = pd.over();
    let mut dims = vec![0usize; over.padded().n_vertices()];
    dims[v.0] += 1;
    for k in 0..2 {
        let i = SlotId(2 * v.0 + k);
        debug_assert_eq!(over.ground_vertex(i), v);
        for len in 1..=pd.a(i) {
            dims[over.ground_vertex(over.shift(i, len as isize)).0] += 1;
        }
    }
    let i = SlotId(2 * v.0);
    if pd.is_pin_slot(i) {
        let j = over.dagger(i);
        let socle = over.ground_vertex(over.shift(i, pd.a(i) as isize));
        debug_assert_eq!(socle, over.ground_vertex(over.shift(j, pd.a(j) as isize)));
        dims[socle.0] -= 1;
    }
    dims
}

/// The bottom row cut into maximal stretches: the two cells of one patch
/// separate unless the pin projective acts there, while cells facing each
/// other across a patch boundary always stay together. Blank padding is
/// trimmed and all-blank stretches are dropped.
fn cut_runs(pc: &PatchCover) -> Vec<Vec<(usize, Syllable)>> {
    let bottom = pc.bottom_row();
    let mut cut_after = vec![false; bottom.len()];
    for (j, p) in pc.patches.iter().enumerate() {
        if !p.glues_below() {
            cut_after[2 * j] = true;
        }
    }
    let mut out = Vec::new();
    let mut run: Vec<(usize, Syllable)> = Vec::new();
    let mut flush = |run: &mut Vec<(usize, Syllable)>| {
        let nonblank: Vec<_> = run.iter().filter(|(_, c)| !c.is_blank()).copied().collect();
        run.clear();
        if nonblank.is_empty() {
            return;
        }
        let first = nonblank[0].0;
        debug_assert!(nonblank.iter().enumerate().all(|(k, (col, _))| *col == first + k));
        out.push(nonblank);
    };
    for (pos, &cell) in bottom.iter().enumerate() {
        run.push(cell);
        if cut_after[pos] {
            flush(&mut run);
        }
    }
    flush(&mut run);
    out
}

/// Column intervals (inclusive) of the bottom-row segments, left to right.
pub fn segments(pc: &PatchCover) -> Vec<(usize, usize)> {
    cut_runs(pc)
        .into_iter()
        .map(|run| (run[0].0, run.last().unwrap().0))
        .collect()
}

/// One syzygy step on the row level: the segments the bottom row cuts
/// into, in column order. Virtual rows are kept as they are; use
/// [`syzygy_strips`] for the module-level answer.
pub fn syzygy_row(pd: &PermissibleData, strip: &Strip) -> Vec<Strip> {
    cut_runs(&patch_cover(pd, strip))
        .into_iter()
        .map(|run| {
            let first = run[0].0;
            let cells: Vec<_> = run.into_iter().map(|(_, c)| c).collect();
            let strip =
                Strip::from_cells(pd, cells, first).expect("a syzygy segment is a valid strip");
            strip.canonical(pd)
        })
        .collect()
}

/// The syzygy of the module a strip presents: virtual rows produced on the
/// way carry no module and are resolved through to their own syzygies.
pub fn syzygy_strips(pd: &PermissibleData, strip: &Strip) -> Vec<Strip> {
    let mut out = Vec::new();
    for seg in syzygy_row(pd, strip) {
        if seg.is_virtual_row() {
            out.extend(syzygy_strips(pd, &seg));
        } else if !seg.is_empty() {
            out.push(seg);
        }
    }
    out
}

/// Iterated module-level syzygy: the summands of the k-th syzygy, with
/// multiplicity, in a stable order.
pub fn iterated_syzygy(pd: &PermissibleData, strip: &Strip, k: usize) -> Vec<Strip> {
    let mut layer = vec![strip.canonical(pd)];
    for _ in 0..k {
        layer = layer.iter().flat_map(|s| syzygy_strips(pd, s)).collect();
        layer.sort();
    }
    layer
}

/// A node of a syzygy fabric: one row, its depth, and its children.
#[derive(Debug, Clone)]
pub struct FabricNode {
    pub strip: Strip,
    pub depth: usize,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
}

/// The tree of rows obtained by iterating row-level syzygies from a root
/// strip down to a fixed depth. Virtual rows appear as interior nodes.
#[derive(Debug, Clone)]
pub struct Fabric {
    nodes: Vec<FabricNode>,
}

impl Fabric {
    pub fn build(pd: &PermissibleData, root: &Strip, depth: usize) -> Fabric {
        let mut nodes = vec![FabricNode {
            strip: root.canonical(pd),
            depth: 0,
            parent: None,
            children: Vec::new(),
        }];
        let mut frontier = vec![0usize];
        for d in 1..=depth {
            let mut next = Vec::new();
            for &idx in &frontier {
                let parent_strip = nodes[idx].strip.clone();
                for seg in syzygy_row(pd, &parent_strip) {
                    let child = nodes.len();
                    nodes.push(FabricNode {
                        strip: seg,
                        depth: d,
                        parent: Some(idx),
                        children: Vec::new(),
                    });
                    nodes[idx].children.push(child);
                    next.push(child);
                }
            }
            frontier = next;
        }
        Fabric { nodes }
    }

    pub fn nodes(&self) -> &[FabricNode] {
        &self.nodes
    }

    pub fn root(&self) -> &FabricNode {
        &self.nodes[0]
    }

    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// Rows at a given depth, in tree order.
    pub fn layer(&self, depth: usize) -> Vec<&FabricNode> {
        self.nodes.iter().filter(|n| n.depth == depth).collect()
    }

    pub fn to_dot(&self, pd: &PermissibleData) -> String {
        let mut s = String::from("digraph fabric {\n  node [shape=box];\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = if n.strip.is_empty() {
                "0".to_string()
            } else if n.strip.is_virtual_row() {
                n.strip.display(pd)
            } else {
                n.strip.word_string(pd)
            };
            let _ = writeln!(s, "  n{} [label=\"{}\"];", i, escape(&label));
        }
        for (i, n) in self.nodes.iter().enumerate() {
            for &c in &n.children {
                let _ = writeln!(s, "  n{} -> n{};", i, c);
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, pd: &PermissibleData) -> serde_json::Value {
        serde_json::json!({
            "nodes": self.nodes.iter().map(|n| serde_json::json!({
                "word": n.strip.word_string(pd),
                "row": n.strip.display(pd),
                "dim": n.strip.dim(),
                "depth": n.depth,
                "parent": n.parent,
                "children": n.children,
                "virtual": n.strip.is_virtual_row(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Whether a syzygy quiver walk saw every reachable vertex or gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuiverStatus {
    Finite,
    /// The vertex budget ran out before the walk closed.
    Unknown,
}

/// The syzygy quiver generated by a set of seed strips: one vertex per
/// distinct nonzero canonical strip encountered, one arrow per syzygy
/// summand (with multiplicity).
#[derive(Debug, Clone)]
pub struct SyzygyQuiver {
    strips: Vec<Strip>,
    arrows: Vec<(usize, usize)>,
    status: QuiverStatus,
}

pub const DEFAULT_QUIVER_BUDGET: usize = 10_000;

impl SyzygyQuiver {
    /// Breadth-first walk of module-level syzygies from the seeds. Stops
    /// expanding once `budget` vertices have been discovered, reporting
    /// [`QuiverStatus::Unknown`].
    pub fn explore(pd: &PermissibleData, seeds: &[Strip], budget: usize) -> SyzygyQuiver {
        let mut strips: Vec<Strip> = Vec::new();
        let mut index: BTreeMap<Strip, usize> = BTreeMap::new();
        let mut arrows = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        let mut truncated = false;

        let intern = |s: Strip,
                          strips: &mut Vec<Strip>,
                          index: &mut BTreeMap<Strip, usize>,
                          queue: &mut std::collections::VecDeque<usize>|
         -> Option<usize> {
            if let Some(&i) = index.get(&s) {
                return Some(i);
            }
            if strips.len() >= budget {
                return None;
            }
            let i = strips.len();
            index.insert(s.clone(), i);
            strips.push(s);
            queue.push_back(i);
            Some(i)
        };

        for seed in seeds {
            let s = seed.canonical(pd);
            if s.is_zero_module() {
                continue;
            }
            if intern(s, &mut strips, &mut index, &mut queue).is_none() {
                truncated = true;
            }
        }
        while let Some(i) = queue.pop_front() {
            let src = strips[i].clone();
            for summand in syzygy_strips(pd, &src) {
                match intern(summand, &mut strips, &mut index, &mut queue) {
                    Some(j) => arrows.push((i, j)),
                    None => truncated = true,
                }
            }
        }
        SyzygyQuiver {
            strips,
            arrows,
            status: if truncated { QuiverStatus::Unknown } else { QuiverStatus::Finite },
        }
    }

    pub fn strips(&self) -> &[Strip] {
        &self.strips
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn n_vertices(&self) -> usize {
        self.strips.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn status(&self) -> QuiverStatus {
        self.status
    }

    /// Successor vertices of one vertex, with multiplicity, sorted.
    pub fn successors(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.arrows.iter().filter(|(s, _)| *s == i).map(|&(_, t)| t).collect();
        out.sort_unstable();
        out
    }

    /// Sorted canonical words of all vertices — a stable fingerprint that
    /// does not depend on discovery order.
    pub fn word_set(&self, pd: &PermissibleData) -> Vec<String> {
        let mut words: Vec<String> = self.strips.iter().map(|s| s.word_string(pd)).collect();
        words.sort();
        words
    }

    pub fn to_dot(&self, pd: &PermissibleData) -> String {
        let mut s = String::from("digraph syzygy_quiver {\n  node [shape=box];\n");
        for (i, strip) in self.strips.iter().enumerate() {
            let _ = writeln!(s, "  v{} [label=\"{}\"];", i, escape(&strip.word_string(pd)));
        }
        for &(a, b) in &self.arrows {
            let _ = writeln!(s, "  v{} -> v{};", a, b);
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, pd: &PermissibleData) -> serde_json::Value {
        serde_json::json!({
            "status": match self.status {
                QuiverStatus::Finite => "finite",
                QuiverStatus::Unknown => "unknown",
            },
            "vertices": self.strips.iter().map(|s| serde_json::json!({
                "word": s.word_string(pd),
                "row": s.display(pd),
                "dim": s.dim(),
            })).collect::<Vec<_>>(),
            "arrows": self.arrows.iter().map(|&(a, b)| serde_json::json!([a, b]))
                .collect::<Vec<_>>(),
        })
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use sbs_presentation::{example_source, SbAlgebraSpec};
    use sbs_quiver::VertexId;

    fn pd() -> PermissibleData {
        PermissibleData::canonical(
            &SbAlgebraSpec::parse(example_source(1).unwrap()).unwrap(),
        )
    }

    fn words(pd: &PermissibleData, strips: &[Strip]) -> Vec<String> {
        strips.iter().map(|s| s.word_string(pd)).collect()
    }

    #[test]
    fn syzygies_of_the_small_strips() {
        let pd = pd();
        let s1 = Strip::simple(&pd, VertexId(0));
        let s2 = Strip::simple(&pd, VertexId(1));
        assert_eq!(words(&pd, &syzygy_strips(&pd, &s1)), ["(b.c)(c.a)^-1"]);
        assert_eq!(words(&pd, &syzygy_strips(&pd, &s2)), ["(a)", "(d.d)"]);

        let gamma = Strip::from_word(&pd, "(a)").unwrap();
        assert_eq!(words(&pd, &syzygy_strips(&pd, &gamma)), ["(c)(c.a)^-1"]);
        let delta = Strip::from_word(&pd, "(d.d)").unwrap();
        assert_eq!(words(&pd, &syzygy_strips(&pd, &delta)), ["(a)", "e:2"]);

        let b = Strip::from_word(&pd, "(c)(c.a)^-1").unwrap();
        assert_eq!(words(&pd, &syzygy_strips(&pd, &b)), ["(d.d)", "(a)", "(d.d)"]);
    }

    #[test]
    fn syzygy_of_the_big_injective() {
        let pd = pd();
        let e2 = Strip::injective(&pd, VertexId(1)).unwrap();
        assert_eq!(words(&pd, &syzygy_strips(&pd, &e2)), ["(c)(c.a)^-1", "(a)"]);
    }

    #[test]
    fn projectives_have_zero_syzygy() {
        let pd = pd();
        let p2 = Strip::projective(&pd, VertexId(1)).unwrap();
        assert!(syzygy_strips(&pd, &p2).is_empty());
        assert!(syzygy_strips(&pd, &Strip::empty()).is_empty());
    }

    #[test]
    fn pin_quotient_resolves_through_a_virtual_row() {
        let pd = pd();
        let q = Strip::pin_quotient(&pd, VertexId(0)).unwrap();
        let row = syzygy_row(&pd, &q);
        assert_eq!(row.len(), 1);
        assert!(row[0].is_virtual_row());
        let module = syzygy_strips(&pd, &q);
        assert_eq!(words(&pd, &module), ["e:1"]);
    }

    #[test]
    fn mixed_word_syzygy() {
        let pd = pd();
        let v5 = Strip::from_word(&pd, "(a.b)^-1(b.c)(a)^-1(b.c)").unwrap();
        assert_eq!(words(&pd, &syzygy_strips(&pd, &v5)), ["(a)^-1(b.c)"]);
    }

    #[test]
    fn iterated_syzygies_reach_a_cycle() {
        let pd = pd();
        let gamma = Strip::from_word(&pd, "(a)").unwrap();
        let omega3 = iterated_syzygy(&pd, &gamma, 3);
        assert!(omega3.contains(&gamma));
        assert_eq!(omega3.len(), 5);
        let delta = Strip::from_word(&pd, "(d.d)").unwrap();
        assert!(iterated_syzygy(&pd, &delta, 3).contains(&delta));
    }

    #[test]
    fn quiver_from_the_big_injective() {
        let pd = pd();
        let e2 = Strip::injective(&pd, VertexId(1)).unwrap();
        let q = SyzygyQuiver::explore(&pd, &[e2], DEFAULT_QUIVER_BUDGET);
        assert_eq!(q.status(), QuiverStatus::Finite);
        assert_eq!(q.n_vertices(), 5);
        assert_eq!(q.n_arrows(), 10);
        let mut expected = vec![
            "(a.b)(d.d.d)^-1",
            "(c)(c.a)^-1",
            "(a)",
            "(d.d)",
            "e:2",
        ];
        expected.sort();
        assert_eq!(q.word_set(&pd), expected);
        // The seed maps onto its two syzygy summands.
        assert_eq!(q.successors(0).len(), 2);
    }

    /// Strips exercising every patch shape on the worked example.
    fn sample_strips(pd: &PermissibleData) -> Vec<Strip> {
        let mut out = vec![
            Strip::empty(),
            Strip::simple(pd, VertexId(0)),
            Strip::simple(pd, VertexId(1)),
            Strip::projective(pd, VertexId(1)).unwrap(),
            Strip::injective(pd, VertexId(1)).unwrap(),
            Strip::pin_quotient(pd, VertexId(0)).unwrap(),
        ];
        for word in [
            "(a)",
            "(d.d)",
            "(c)(c.a)^-1",
            "(b)^-1(a)(c)^-1(d.d)",
            "(a.b)(d)^-1(c)(c.a)^-1",
            "(a.b)^-1(b.c)(a)^-1(b.c)",
            "(a)^-1(b.c)",
            "(a.b)(d.d.d)^-1",
        ] {
            out.push(Strip::from_word(pd, word).unwrap());
        }
        out
    }

    #[test]
    fn covers_of_known_strips() {
        let pd = pd();
        // The simple at the pin vertex is covered by the pin projective.
        let s1 = Strip::simple(&pd, VertexId(0));
        let pc = patch_cover(&pd, &s1);
        assert_eq!(pc.patches().len(), 1);
        assert_eq!(pc.patches()[0].kind(), ProjectiveKind::Pin);
        assert_eq!(pc.patches()[0].vertex(&pd), Some(VertexId(0)));
        assert_eq!(pc.dimension_vector(&pd), [4, 2]);
        assert_eq!(segments(&pc).len(), 1);

        assert!(patch_cover(&pd, &Strip::empty()).patches().is_empty());

        let v2 = Strip::from_word(&pd, "(a.b)(d)^-1(c)(c.a)^-1").unwrap();
        let pc = patch_cover(&pd, &v2);
        let kinds: Vec<_> = pc.patches().iter().map(|p| p.kind()).collect();
        assert_eq!(
            kinds,
            [ProjectiveKind::Pin, ProjectiveKind::String, ProjectiveKind::String]
        );
        let tops: Vec<_> = pc.patches().iter().map(|p| p.vertex(&pd)).collect();
        assert_eq!(tops, [Some(VertexId(0)), Some(VertexId(1)), Some(VertexId(1))]);
        assert_eq!(pc.n_projectives(), 3);
        assert_eq!(pc.bottom_row().len(), 6);
        assert_eq!(pc.dimension_vector(&pd), [8, 10]);
        assert_eq!(segments(&pc).len(), 3);

        assert_eq!(projective_dimension_vector(&pd, VertexId(0)), [4, 2]);
        assert_eq!(projective_dimension_vector(&pd, VertexId(1)), [2, 4]);
    }

    #[test]
    fn cover_dimensions_account_for_module_and_syzygy() {
        let pd = pd();
        let padded = pd.over().padded();
        for w in sample_strips(&pd) {
            let w = w.canonical(&pd);
            let cover = patch_cover(&pd, &w).dimension_vector(&pd);
            let mut total = w.string_graph(&pd).dimension_vector(padded);
            for s in syzygy_strips(&pd, &w) {
                for (k, d) in s.string_graph(&pd).dimension_vector(padded).iter().enumerate() {
                    total[k] += d;
                }
            }
            assert_eq!(cover, total, "cover of `{}`", w.word_string(&pd));
        }
    }

    #[test]
    fn syzygy_rows_stay_within_one_column_of_the_parent() {
        let pd = pd();
        for w in sample_strips(&pd) {
            let w = w.canonical(&pd);
            if w.is_empty() {
                continue;
            }
            let lo = w.first_col();
            let hi = w.first_col() + w.cells().len() - 1;
            for (l, r) in segments(&patch_cover(&pd, &w)) {
                assert!(
                    l + 1 >= lo && r <= hi + 1,
                    "segment ({l}, {r}) of `{}` leaves [{lo} - 1, {hi} + 1]",
                    w.word_string(&pd)
                );
            }
        }
    }

    #[test]
    fn syzygy_quivers_agree_across_overquivers() {
        // A quiver that is not 2-regular leaves room for several
        // overquivers; the syzygy quiver must not depend on the choice.
        let spec = SbAlgebraSpec::parse(
            "quiver { vertices: 1 2; arrows: a: 1 -> 2; }\nrelations { }",
        )
        .unwrap();
        let choices = PermissibleData::all(&spec);
        assert_eq!(choices.len(), 4);
        let fingerprints: Vec<Vec<String>> = choices
            .iter()
            .map(|pd| {
                let mut seeds = Vec::new();
                for v in 0..spec.quiver().n_vertices() {
                    let v = VertexId(v);
                    seeds.push(Strip::simple(pd, v));
                    seeds.extend(Strip::projective(pd, v));
                    seeds.extend(Strip::injective(pd, v));
                    seeds.extend(Strip::pin_quotient(pd, v));
                }
                SyzygyQuiver::explore(pd, &seeds, DEFAULT_QUIVER_BUDGET).word_set(pd)
            })
            .collect();
        for f in &fingerprints[1..] {
            assert_eq!(f, &fingerprints[0]);
        }
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let pd = pd();
        let e2 = Strip::injective(&pd, VertexId(1)).unwrap();
        let q = SyzygyQuiver::explore(&pd, &[e2], 3);
        assert_eq!(q.status(), QuiverStatus::Unknown);
        assert!(q.n_vertices() <= 3);
    }

    #[test]
    fn fabric_layers_match_row_syzygies() {
        let pd = pd();
        let q = Strip::pin_quotient(&pd, VertexId(0)).unwrap();
        let f = Fabric::build(&pd, &q, 3);
        assert_eq!(f.root().strip, q);
        assert_eq!(f.layer(1).len(), 1);
        assert!(f.layer(1)[0].strip.is_virtual_row());
        assert_eq!(f.layer(2).len(), 1);
        assert_eq!(f.layer(2)[0].strip.word_string(&pd), "e:1");
        assert_eq!(f.layer(3).len(), 1);
        assert_eq!(f.layer(3)[0].strip.word_string(&pd), "(b.c)(c.a)^-1");
        let dot = f.to_dot(&pd);
        assert!(dot.contains("digraph fabric"));
        assert!(dot.contains("e:1"));
        let js = f.to_json(&pd);
        assert_eq!(js["nodes"].as_array().unwrap().len(), f.nodes().len());
    }

    #[test]
    fn emitters_are_well_formed() {
        let pd = pd();
        let e2 = Strip::injective(&pd, VertexId(1)).unwrap();
        let q = SyzygyQuiver::explore(&pd, &[e2], DEFAULT_QUIVER_BUDGET);
        let dot = q.to_dot(&pd);
        assert_eq!(dot.matches(" -> ").count(), q.n_arrows());
        let js = q.to_json(&pd);
        assert_eq!(js["status"], "finite");
        assert_eq!(js["vertices"].as_array().unwrap().len(), 5);
        assert_eq!(js["arrows"].as_array().unwrap().len(), 10);
    }
}
