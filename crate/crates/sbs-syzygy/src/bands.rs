//! Band graphs: cyclic strings and their syzygy behaviour.
//!
//! A band graph is a string graph bent into a cycle. Its module depends on
//! a scalar too, but the combinatorics here never need it: the questions
//! answered below — is the syzygy of the band again a band, and if so,
//! which one — are decided entirely by the cycle of labels. Sources and
//! sinks alternate around the cycle, and between them run the maximal
//! directed paths; when every source sits under a pin projective, the
//! syzygy is the band whose maximal paths are the commutativity
//! complements of the original ones.

use sbs_permdata::PermissibleData;
use sbs_quiver::{ArrowId, Quiver, VertexId};
use sbs_strips::{StringGraph, StringGraphError};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BandError {
    #[error("a band needs at least one edge")]
    Empty,
    #[error("the walk cannot close up: it starts over `{start}` but ends over `{end}`")]
    OpenEnds { start: String, end: String },
    #[error("joining the ends breaks a string condition: {0}")]
    Junction(StringGraphError),
    #[error("all edges point one way around the cycle")]
    Equioriented,
}

/// A cyclic string graph. Positions run `0..n`; edge `k` joins positions
/// `k` and `k + 1 (mod n)` and stores `(label, forward)`, where `forward`
/// means the arrow points from `k` to `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BandGraph {
    labels: Vec<VertexId>,
    edges: Vec<(ArrowId, bool)>,
}

impl BandGraph {
    /// Close a cyclic walk into a band graph: the walk must return to its
    /// start, satisfy the string conditions at every position including
    /// the seam, and point both ways somewhere.
    pub fn from_cycle(
        ground: &Quiver,
        start: VertexId,
        edges: Vec<(ArrowId, bool)>,
    ) -> Result<BandGraph, BandError> {
        if edges.is_empty() {
            return Err(BandError::Empty);
        }
        let single =
            StringGraph::from_walk(ground, start, &edges).map_err(BandError::Junction)?;
        let end = single.vertex_labels()[edges.len()];
        if end != start {
            return Err(BandError::OpenEnds {
                start: ground.vertex_name(start).to_string(),
                end: ground.vertex_name(end).to_string(),
            });
        }
        let doubled: Vec<_> = edges.iter().chain(edges.iter()).copied().collect();
        StringGraph::from_walk(ground, start, &doubled).map_err(BandError::Junction)?;
        if edges.iter().all(|&(_, fwd)| fwd) || edges.iter().all(|&(_, fwd)| !fwd) {
            return Err(BandError::Equioriented);
        }
        let labels = single.vertex_labels()[..edges.len()].to_vec();
        Ok(BandGraph { labels, edges })
    }

    pub fn n_vertices(&self) -> usize {
        self.labels.len()
    }

    /// Ground vertex at each position.
    pub fn labels(&self) -> &[VertexId] {
        &self.labels
    }

    /// `(label, forward)` for each edge, in position order.
    pub fn edges(&self) -> &[(ArrowId, bool)] {
        &self.edges
    }

    /// The same cycle read from position `r`.
    pub fn rotated(&self, r: usize) -> BandGraph {
        let n = self.labels.len();
        let labels = (0..n).map(|k| self.labels[(k + r) % n]).collect();
        let edges = (0..n).map(|k| self.edges[(k + r) % n]).collect();
        BandGraph { labels, edges }
    }

    /// The cycle traversed the other way around.
    pub fn reflected(&self) -> BandGraph {
        let n = self.labels.len();
        let labels = (0..n).map(|k| self.labels[(n - k) % n]).collect();
        let edges = (0..n).map(|k| { let (x, fwd) = self.edges[n - 1 - k]; (x, !fwd) }).collect();
        BandGraph { labels, edges }
    }

    /// The least rotation of the band or its reflection: rotated or
    /// reflected bands compare equal in canonical form.
    pub fn canonical(&self) -> BandGraph {
        let mirrored = self.reflected();
        (0..self.labels.len())
            .flat_map(|r| [self.rotated(r), mirrored.rotated(r)])
            .min()
            .expect("a band has at least one position")
    }

    /// Positions whose two incident edges both point away.
    pub fn source_positions(&self) -> Vec<usize> {
        let n = self.edges.len();
        (0..n).filter(|&k| !self.edges[(k + n - 1) % n].1 && self.edges[k].1).collect()
    }

    /// Positions whose two incident edges both point in.
    pub fn sink_positions(&self) -> Vec<usize> {
        let n = self.edges.len();
        (0..n).filter(|&k| self.edges[(k + n - 1) % n].1 && !self.edges[k].1).collect()
    }

    /// The maximal directed path leaving a source towards lower positions,
    /// in path order, with the position of the sink it ends at.
    fn run_left(&self, source: usize) -> (Vec<ArrowId>, usize) {
        let n = self.edges.len();
        let mut pos = source;
        let mut arrows = Vec::new();
        loop {
            let j = (pos + n - 1) % n;
            if self.edges[j].1 {
                break;
            }
            arrows.push(self.edges[j].0);
            pos = j;
        }
        (arrows, pos)
    }

    /// The maximal directed path leaving a source towards higher positions.
    fn run_right(&self, source: usize) -> (Vec<ArrowId>, usize) {
        let n = self.edges.len();
        let mut pos = source;
        let mut arrows = Vec::new();
        while self.edges[pos].1 {
            arrows.push(self.edges[pos].0);
            pos = (pos + 1) % n;
        }
        (arrows, pos)
    }

    /// Whether every maximal directed path of the band survives in the
    /// algebra: it follows the overquiver walk, fits the slot's path
    /// budget, and never spells out a full commutativity component.
    pub fn is_admissible(&self, pd: &PermissibleData) -> bool {
        let over = pd.over();
        let fits = |path: &[ArrowId]| {
            let i = over.slot_of_arrow(path[0]);
            path.iter()
                .enumerate()
                .all(|(k, &x)| over.arrow_at(over.shift(i, k as isize)) == x)
                && path.len() <= pd.a(i)
                && !(path.len() == pd.a(i) && pd.is_pin_slot(i))
        };
        self.source_positions()
            .into_iter()
            .all(|s| fits(&self.run_left(s).0) && fits(&self.run_right(s).0))
    }
}

/// The `m`-fold concatenation of a string graph with itself, defined when
/// the two end labels agree and the junction satisfies the string
/// conditions. `power(sg, 1)` is `sg` itself.
pub fn power(ground: &Quiver, sg: &StringGraph, m: usize) -> Result<StringGraph, BandError> {
    assert!(m >= 1, "a power concatenates at least one copy");
    if m == 1 {
        return Ok(sg.clone());
    }
    if sg.is_empty() {
        return Err(BandError::Empty);
    }
    let labels = sg.vertex_labels();
    let (start, end) = (labels[0], labels[labels.len() - 1]);
    if start != end {
        return Err(BandError::OpenEnds {
            start: ground.vertex_name(start).to_string(),
            end: ground.vertex_name(end).to_string(),
        });
    }
    let steps: Vec<_> = (0..m).flat_map(|_| sg.edges().iter().copied()).collect();
    StringGraph::from_walk(ground, start, &steps).map_err(BandError::Junction)
}

/// Identify the two ends of a powerable string graph, yielding the band
/// graph it wraps into.
pub fn band_from_string(ground: &Quiver, sg: &StringGraph) -> Result<BandGraph, BandError> {
    if sg.is_empty() {
        return Err(BandError::Empty);
    }
    BandGraph::from_cycle(ground, sg.vertex_labels()[0], sg.edges().to_vec())
}

/// Whether the syzygy of the band's module is again a band: true exactly
/// when every source position sits over a pin vertex, so that every
/// summand of the projective cover carries a commutativity relation.
pub fn band_syzygy_is_band(pd: &PermissibleData, bg: &BandGraph) -> bool {
    let over = pd.over();
    let n = bg.edges().len();
    bg.source_positions().into_iter().all(|k| {
        let right = over.slot_of_arrow(bg.edges()[k].0);
        let left = over.slot_of_arrow(bg.edges()[(k + n - 1) % n].0);
        debug_assert_eq!(over.dagger(right), left);
        debug_assert_eq!(pd.is_pin_slot(right), pd.is_pin_slot(left));
        pd.is_pin_slot(right)
    })
}

/// The band presenting the syzygy of this band's module. Every maximal
/// path is replaced by the complement completing it to a commutativity
/// component, the old sinks becoming the sources of the new band.
///
/// Requires [`band_syzygy_is_band`] and an admissible band.
pub fn band_syzygy_successor(pd: &PermissibleData, bg: &BandGraph) -> BandGraph {
    assert!(bg.is_admissible(pd), "the band must avoid the relations");
    assert!(band_syzygy_is_band(pd, bg), "every source of the band must sit under a pin");
    let over = pd.over();
    let complement = |path: &[ArrowId]| -> Vec<ArrowId> {
        let i = over.slot_of_arrow(path[0]);
        debug_assert!(path.len() < pd.a(i));
        (path.len()..pd.a(i)).map(|k| over.arrow_at(over.shift(i, k as isize))).collect()
    };
    let mut edges = Vec::new();
    let mut start = None;
    for s in bg.source_positions() {
        let (left, sink) = bg.run_left(s);
        let (right, _) = bg.run_right(s);
        start.get_or_insert(bg.labels()[sink]);
        edges.extend(complement(&left).into_iter().map(|x| (x, true)));
        edges.extend(complement(&right).into_iter().rev().map(|x| (x, false)));
    }
    BandGraph::from_cycle(over.padded(), start.expect("a band has a source"), edges)
        .expect("commutativity complements close up into a band")
}

/// Successive band syzygies: step while the syzygy stays a band, for at
/// most `limit` steps, returning the successor bands in order.
pub fn band_syzygy_chain(pd: &PermissibleData, bg: &BandGraph, limit: usize) -> Vec<BandGraph> {
    let mut out = Vec::new();
    let mut cur = bg.clone();
    for _ in 0..limit {
        if !band_syzygy_is_band(pd, &cur) {
            break;
        }
        cur = band_syzygy_successor(pd, &cur);
        out.push(cur.clone());
    }
    out
}
