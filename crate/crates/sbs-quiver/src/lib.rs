//! Finite quivers with named vertices and arrows, plus the small amount of
//! graph arithmetic the rest of the workspace is built on: regularity
//! checks, deterministic enumeration of m-regular augmentations, and
//! vertex/path arithmetic on 1-regular quivers (where a path is determined
//! by its source and its length).

use std::collections::BTreeMap;
use std::fmt;

/// Index of a vertex within a [`Quiver`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

/// Index of an arrow within a [`Quiver`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArrowId(pub usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: VertexId,
    pub target: VertexId,
}

/// A finite quiver. Vertices and arrows are identified by their declaration
/// order; names are kept for display and parsing only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_names: Vec<String>, arrows: Vec<Arrow>) -> Self {
        for a in &arrows {
            assert!(a.source.0 < vertex_names.len(), "arrow source out of range");
            assert!(a.target.0 < vertex_names.len(), "arrow target out of range");
        }
        Quiver { vertex_names, arrows }
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn n_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n_vertices()).map(VertexId)
    }

    pub fn arrow_ids(&self) -> impl Iterator<Item = ArrowId> {
        (0..self.n_arrows()).map(ArrowId)
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.0]
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a.0]
    }

    pub fn arrow_name(&self, a: ArrowId) -> &str {
        &self.arrows[a.0].name
    }

    pub fn source(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].source
    }

    pub fn target(&self, a: ArrowId) -> VertexId {
        self.arrows[a.0].target
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|n| n == name).map(VertexId)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name).map(ArrowId)
    }

    /// Arrows with the given source, in declaration order.
    pub fn out_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrow_ids().filter(|&a| self.source(a) == v).collect()
    }

    /// Arrows with the given target, in declaration order.
    pub fn in_arrows(&self, v: VertexId) -> Vec<ArrowId> {
        self.arrow_ids().filter(|&a| self.target(a) == v).collect()
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.arrow_ids().filter(|&a| self.source(a) == v).count()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.arrow_ids().filter(|&a| self.target(a) == v).count()
    }

    /// Every vertex has in-degree and out-degree at most `m`.
    pub fn is_sub_m_regular(&self, m: usize) -> bool {
        self.vertices().all(|v| self.in_degree(v) <= m && self.out_degree(v) <= m)
    }

    /// Every vertex has in-degree and out-degree exactly `m`.
    pub fn is_m_regular(&self, m: usize) -> bool {
        self.vertices().all(|v| self.in_degree(v) == m && self.out_degree(v) == m)
    }

    /// Whether the underlying undirected graph is connected (the empty
    /// quiver counts as connected).
    pub fn is_connected(&self) -> bool {
        let n = self.n_vertices();
        if n <= 1 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source.0, a.target.0), (a.target.0, a.source.0)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// All ways of adding unnamed arrows so that the result is exactly
    /// m-regular, enumerated deterministically and deduplicated by the
    /// multiset of added (source, target) pairs. Each augmentation is
    /// returned as that multiset, sorted.
    pub fn m_regular_augmentations(&self, m: usize) -> Vec<Vec<(VertexId, VertexId)>> {
        if !self.is_sub_m_regular(m) {
            return Vec::new();
        }
        // Multiset of sources still lacking out-arrows, in vertex order.
        let mut sources = Vec::new();
        for v in self.vertices() {
            for _ in self.out_degree(v)..m {
                sources.push(v);
            }
        }
        let mut target_deficit: Vec<usize> =
            self.vertices().map(|v| m - self.in_degree(v)).collect();
        debug_assert_eq!(sources.len(), target_deficit.iter().sum::<usize>());

        let mut out = Vec::new();
        let mut chosen: Vec<(VertexId, VertexId)> = Vec::new();
        assign(&sources, 0, &mut target_deficit, &mut chosen, &mut out);
        return out;

        fn assign(
            sources: &[VertexId],
            k: usize,
            deficit: &mut Vec<usize>,
            chosen: &mut Vec<(VertexId, VertexId)>,
            out: &mut Vec<Vec<(VertexId, VertexId)>>,
        ) {
            if k == sources.len() {
                out.push(chosen.clone());
                return;
            }
            // When consecutive source slots belong to the same vertex the
            // added arrows are interchangeable; forcing nondecreasing
            // targets within such a block deduplicates the enumeration.
            let min_target = match chosen.last() {
                Some(&(s, t)) if s == sources[k] => t.0,
                _ => 0,
            };
            for t in min_target..deficit.len() {
                if deficit[t] == 0 {
                    continue;
                }
                deficit[t] -= 1;
                chosen.push((sources[k], VertexId(t)));
                assign(sources, k + 1, deficit, chosen, out);
                chosen.pop();
                deficit[t] += 1;
            }
        }
    }

    /// Materialise an augmentation as a quiver; the added arrows are named
    /// `~0`, `~1`, ... after the declared ones.
    pub fn with_augmentation(&self, added: &[(VertexId, VertexId)]) -> Quiver {
        let mut q = self.clone();
        for (k, &(s, t)) in added.iter().enumerate() {
            q.arrows.push(Arrow { name: format!("~{k}"), source: s, target: t });
        }
        q
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vertices:")?;
        for n in &self.vertex_names {
            write!(f, " {n}")?;
        }
        writeln!(f)?;
        for a in &self.arrows {
            writeln!(
                f,
                "{}: {} -> {}",
                a.name,
                self.vertex_names[a.source.0],
                self.vertex_names[a.target.0]
            )?;
        }
        Ok(())
    }
}

/// Walk data for a 1-regular quiver: every vertex has exactly one outgoing
/// and one incoming arrow, so the quiver is a disjoint union of cycles and
/// a path is determined by its source and length.
#[derive(Debug, Clone)]
pub struct OneRegularWalk {
    /// successor[v] = target of the unique arrow with source v.
    successor: Vec<usize>,
    /// predecessor[v] = source of the unique arrow with target v.
    predecessor: Vec<usize>,
    /// out_arrow[v] = the unique arrow with source v.
    out_arrow: Vec<ArrowId>,
    /// component[v] = (cycle index, position of v within the cycle).
    component: Vec<(usize, usize)>,
    /// cycle_len[c] = length of cycle c.
    cycle_len: Vec<usize>,
}

impl OneRegularWalk {
    pub fn new(q: &Quiver) -> Result<Self, String> {
        let n = q.n_vertices();
        let mut successor = vec![usize::MAX; n];
        let mut predecessor = vec![usize::MAX; n];
        let mut out_arrow = vec![ArrowId(usize::MAX); n];
        for a in q.arrow_ids() {
            let (s, t) = (q.source(a).0, q.target(a).0);
            if successor[s] != usize::MAX {
                return Err(format!("vertex {} has two outgoing arrows", q.vertex_name(VertexId(s))));
            }
            if predecessor[t] != usize::MAX {
                return Err(format!("vertex {} has two incoming arrows", q.vertex_name(VertexId(t))));
            }
            successor[s] = t;
            predecessor[t] = s;
            out_arrow[s] = a;
        }
        if successor.iter().any(|&s| s == usize::MAX) || predecessor.iter().any(|&p| p == usize::MAX) {
            return Err("quiver is not 1-regular".into());
        }
        let mut component = vec![(usize::MAX, 0); n];
        let mut cycle_len = Vec::new();
        for start in 0..n {
            if component[start].0 != usize::MAX {
                continue;
            }
            let c = cycle_len.len();
            let mut v = start;
            let mut pos = 0;
            loop {
                component[v] = (c, pos);
                v = successor[v];
                pos += 1;
                if v == start {
                    break;
                }
            }
            cycle_len.push(pos);
        }
        Ok(OneRegularWalk { successor, predecessor, out_arrow, component, cycle_len })
    }

    pub fn n_vertices(&self) -> usize {
        self.successor.len()
    }

    /// Move `steps` arrows forward (following arrow direction) when
    /// positive, backward when negative.
    pub fn shift_vertex(&self, v: VertexId, steps: isize) -> VertexId {
        let mut cur = v.0;
        if steps >= 0 {
            let (c, _) = self.component[cur];
            let k = (steps as usize) % self.cycle_len[c];
            for _ in 0..k {
                cur = self.successor[cur];
            }
        } else {
            let (c, _) = self.component[cur];
            let k = ((-steps) as usize) % self.cycle_len[c];
            for _ in 0..k {
                cur = self.predecessor[cur];
            }
        }
        VertexId(cur)
    }

    /// The unique arrow with the given source.
    pub fn arrow_from(&self, v: VertexId) -> ArrowId {
        self.out_arrow[v.0]
    }

    pub fn component_of(&self, v: VertexId) -> usize {
        self.component[v.0].0
    }

    pub fn cycle_len_at(&self, v: VertexId) -> usize {
        self.cycle_len[self.component[v.0].0]
    }

    /// The arrows traversed by the path of length `len` from `v`, in order.
    pub fn path_arrows(&self, v: VertexId, len: usize) -> Vec<ArrowId> {
        let mut cur = v;
        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(self.arrow_from(cur));
            cur = VertexId(self.successor[cur.0]);
        }
        out
    }
}

/// A path in a 1-regular quiver: source vertex plus length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OneRegularPath {
    pub source: VertexId,
    pub len: usize,
}

impl OneRegularPath {
    pub fn stationary(v: VertexId) -> Self {
        OneRegularPath { source: v, len: 0 }
    }

    pub fn target(&self, walk: &OneRegularWalk) -> VertexId {
        walk.shift_vertex(self.source, self.len as isize)
    }

    /// Left-to-right composition: `self` then `other`.
    pub fn compose(&self, other: &OneRegularPath, walk: &OneRegularWalk) -> Option<OneRegularPath> {
        if self.target(walk) != other.source {
            return None;
        }
        Some(OneRegularPath { source: self.source, len: self.len + other.len })
    }

    /// Whether `self` occurs as a (not necessarily proper) subpath of
    /// `other`, i.e. some suffix-of-prefix of `other` equals `self`.
    pub fn is_subpath_of(&self, other: &OneRegularPath, walk: &OneRegularWalk) -> bool {
        if self.len > other.len {
            return false;
        }
        (0..=other.len - self.len).any(|off| {
            walk.shift_vertex(other.source, off as isize) == self.source
        })
    }
}

/// Group a list of (key, value) pairs into a deterministic multiset map.
/// Small helper used by callers that compare adjacency forms.
pub fn multiset<K: Ord, I: IntoIterator<Item = K>>(items: I) -> BTreeMap<K, usize> {
    let mut m = BTreeMap::new();
    for k in items {
        *m.entry(k).or_insert(0) += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_arrow() -> Quiver {
        Quiver::new(
            vec!["v1".into(), "v2".into()],
            vec![Arrow { name: "a".into(), source: VertexId(0), target: VertexId(1) }],
        )
    }

    #[test]
    fn regularity_checks() {
        let q = single_arrow();
        assert!(q.is_sub_m_regular(1));
        assert!(q.is_sub_m_regular(2));
        assert!(!q.is_m_regular(1));
    }

    #[test]
    fn augmentations_of_single_arrow() {
        let q = single_arrow();
        let one = q.m_regular_augmentations(1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0], vec![(VertexId(1), VertexId(0))]);
        let two = q.m_regular_augmentations(2);
        assert_eq!(two.len(), 2);
        for aug in &two {
            let aq = q.with_augmentation(aug);
            assert!(aq.is_m_regular(2));
        }
        assert_ne!(two[0], two[1]);
    }

    #[test]
    fn augmented_quiver_is_regular() {
        let q = Quiver::new(
            vec!["u".into(), "v".into(), "w".into()],
            vec![
                Arrow { name: "a".into(), source: VertexId(0), target: VertexId(1) },
                Arrow { name: "b".into(), source: VertexId(1), target: VertexId(2) },
            ],
        );
        for aug in q.m_regular_augmentations(2) {
            assert!(q.with_augmentation(&aug).is_m_regular(2));
        }
    }

    #[test]
    fn walk_arithmetic_on_cycle_plus_loop() {
        // 3-cycle u -> v -> w -> u and a loop at z.
        let q = Quiver::new(
            vec!["u".into(), "v".into(), "w".into(), "z".into()],
            vec![
                Arrow { name: "a".into(), source: VertexId(0), target: VertexId(1) },
                Arrow { name: "b".into(), source: VertexId(1), target: VertexId(2) },
                Arrow { name: "c".into(), source: VertexId(2), target: VertexId(0) },
                Arrow { name: "d".into(), source: VertexId(3), target: VertexId(3) },
            ],
        );
        let walk = OneRegularWalk::new(&q).unwrap();
        assert_eq!(walk.shift_vertex(VertexId(0), 1), VertexId(1));
        assert_eq!(walk.shift_vertex(VertexId(0), 3), VertexId(0));
        assert_eq!(walk.shift_vertex(VertexId(0), -1), VertexId(2));
        assert_eq!(walk.shift_vertex(VertexId(3), 7), VertexId(3));
        assert_eq!(walk.cycle_len_at(VertexId(0)), 3);
        assert_eq!(walk.cycle_len_at(VertexId(3)), 1);

        let p = OneRegularPath { source: VertexId(0), len: 2 };
        assert_eq!(p.target(&walk), VertexId(2));
        let s = OneRegularPath { source: VertexId(2), len: 1 };
        assert_eq!(p.compose(&s, &walk), Some(OneRegularPath { source: VertexId(0), len: 3 }));
        let sub = OneRegularPath { source: VertexId(1), len: 1 };
        assert!(sub.is_subpath_of(&p, &walk));
        assert!(!p.is_subpath_of(&sub, &walk));
    }

    #[test]
    fn non_one_regular_rejected() {
        let q = single_arrow();
        assert!(OneRegularWalk::new(&q).is_err());
    }
}
