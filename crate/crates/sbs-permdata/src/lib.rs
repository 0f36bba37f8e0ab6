//! Overquivers and permissible-data encodings.
//!
//! A special biserial presentation is flattened into purely numeric data in
//! two steps. First the quiver is padded to a 2-regular quiver by adding
//! phantom arrows, and each vertex's in-arrows are matched bijectively to
//! its out-arrows, extending the partial matching forced by the relations
//! (an in-arrow is matched to the unique out-arrow it composes with
//! nonzero, when there is one). The induced successor graph on arrow
//! *slots* — an arrow slot is a position 0 or 1 in some vertex's out-arrow
//! list — is a 1-regular quiver called the overquiver. Second, every slot
//! `i` is assigned four numbers:
//!
//! * `a_i`: length of the longest path with nonzero residue read off by
//!   walking the overquiver forward from `i` (phantom arrows stop the walk);
//! * `b_i`: 0 when that longest path is a commutativity component (a "pin"
//!   slot), 1 otherwise;
//! * `c_i`: length of the longest nonzero path arriving at `i` along the
//!   overquiver;
//! * `d_i`: 0 when some pin path lands exactly on `i`, 1 otherwise.
//!
//! Only the matching of leftover slots is a free choice, so an algebra has
//! finitely many overquivers; they are enumerated deterministically and
//! index 0 is the canonical one (unmatched ins and outs paired in
//! declaration order). All downstream module arithmetic consumes
//! [`PermissibleData`] and never looks back at the presentation.

use sbs_presentation::SbAlgebraSpec;
use sbs_quiver::{multiset, Arrow, ArrowId, OneRegularWalk, Quiver, VertexId};
use thiserror::Error;

/// Index of an overquiver vertex (an out-arrow slot of the padded quiver).
/// Slot `2v + k` is position `k` in vertex `v`'s out-arrow list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SlotId(pub usize);

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PermDataError {
    #[error("reduction not applicable at {slot}: {reason}")]
    Reduce { slot: String, reason: String },
}

/// The 1-regular successor quiver on arrow slots, together with the maps
/// back to the ground quiver.
#[derive(Debug, Clone)]
pub struct Overquiver {
    /// Ground quiver plus phantom arrows (`~k`), exactly 2-regular.
    padded: Quiver,
    n_ground_arrows: usize,
    /// Vertices are slots named `s(<arrow>)`; arrow `i` runs from slot `i`
    /// to the slot of the matched successor.
    oq: Quiver,
    walk: OneRegularWalk,
    /// slot -> padded arrow occupying it.
    slot_arrow: Vec<ArrowId>,
    /// padded arrow -> its slot.
    slot_of: Vec<SlotId>,
    choice: usize,
}

impl PartialEq for Overquiver {
    fn eq(&self, other: &Self) -> bool {
        self.padded == other.padded
            && self.oq == other.oq
            && self.slot_arrow == other.slot_arrow
    }
}

impl Eq for Overquiver {}

impl Overquiver {
    /// Number of distinct overquivers of the presentation: the product over
    /// vertices of the factorial of the number of unmatched in-slots there.
    pub fn count(spec: &SbAlgebraSpec) -> usize {
        let (padded, n_ground) = pad(spec);
        unmatched(spec, &padded, n_ground).iter().map(|(ins, _)| radix(ins.len())).product()
    }

    /// The `index`-th overquiver in the deterministic enumeration.
    pub fn nth(spec: &SbAlgebraSpec, index: usize) -> Option<Overquiver> {
        let (padded, n_ground) = pad(spec);
        let free = unmatched(spec, &padded, n_ground);
        let total: usize = free.iter().map(|(ins, _)| radix(ins.len())).product();
        if index >= total {
            return None;
        }

        let mut sigma = vec![ArrowId(usize::MAX); padded.n_arrows()];
        for x in padded.arrow_ids() {
            if x.0 < n_ground {
                if let Some(y) = spec.nonzero_successor(x) {
                    sigma[x.0] = y;
                }
            }
        }
        let mut rest = index;
        for (ins, outs) in &free {
            let r = radix(ins.len());
            let digit = rest % r;
            rest /= r;
            match ins.len() {
                0 => {}
                1 => sigma[ins[0].0] = outs[0],
                2 => {
                    sigma[ins[0].0] = outs[digit];
                    sigma[ins[1].0] = outs[1 - digit];
                }
                _ => unreachable!("padded quiver is 2-regular"),
            }
        }

        let mut slot_arrow = Vec::with_capacity(2 * padded.n_vertices());
        let mut slot_of = vec![SlotId(usize::MAX); padded.n_arrows()];
        let mut slot_names = Vec::new();
        for v in padded.vertices() {
            for x in padded.out_arrows(v) {
                slot_of[x.0] = SlotId(slot_arrow.len());
                slot_names.push(format!("s({})", padded.arrow_name(x)));
                slot_arrow.push(x);
            }
        }
        let oq_arrows: Vec<Arrow> = slot_arrow
            .iter()
            .map(|&x| Arrow {
                name: padded.arrow_name(x).to_string(),
                source: VertexId(slot_of[x.0].0),
                target: VertexId(slot_of[sigma[x.0].0].0),
            })
            .collect();
        let oq = Quiver::new(slot_names, oq_arrows);
        let walk = OneRegularWalk::new(&oq).expect("slot successor graph is 1-regular");
        Some(Overquiver {
            padded,
            n_ground_arrows: n_ground,
            oq,
            walk,
            slot_arrow,
            slot_of,
            choice: index,
        })
    }

    pub fn canonical(spec: &SbAlgebraSpec) -> Overquiver {
        Overquiver::nth(spec, 0).expect("every presentation has at least one overquiver")
    }

    pub fn all(spec: &SbAlgebraSpec) -> Vec<Overquiver> {
        (0..Overquiver::count(spec)).map(|k| Overquiver::nth(spec, k).unwrap()).collect()
    }

    pub fn choice_index(&self) -> usize {
        self.choice
    }

    pub fn n_slots(&self) -> usize {
        self.slot_arrow.len()
    }

    pub fn slots(&self) -> impl Iterator<Item = SlotId> {
        (0..self.n_slots()).map(SlotId)
    }

    /// The slot quiver itself (vertices `s(<arrow>)`, 1-regular).
    pub fn quiver(&self) -> &Quiver {
        &self.oq
    }

    /// Ground quiver plus phantom arrows.
    pub fn padded(&self) -> &Quiver {
        &self.padded
    }

    pub fn n_ground_arrows(&self) -> usize {
        self.n_ground_arrows
    }

    /// The padded arrow occupying a slot.
    pub fn arrow_at(&self, i: SlotId) -> ArrowId {
        self.slot_arrow[i.0]
    }

    /// Whether the slot holds a declared (non-phantom) arrow.
    pub fn is_real_slot(&self, i: SlotId) -> bool {
        self.slot_arrow[i.0].0 < self.n_ground_arrows
    }

    pub fn slot_of_arrow(&self, a: ArrowId) -> SlotId {
        self.slot_of[a.0]
    }

    /// The ground vertex a slot sits over.
    pub fn ground_vertex(&self, i: SlotId) -> VertexId {
        self.padded.source(self.slot_arrow[i.0])
    }

    /// The other slot over the same ground vertex.
    pub fn dagger(&self, i: SlotId) -> SlotId {
        SlotId(i.0 ^ 1)
    }

    /// Move along the slot quiver: positive steps follow the arrows.
    pub fn shift(&self, i: SlotId, steps: isize) -> SlotId {
        SlotId(self.walk.shift_vertex(VertexId(i.0), steps).0)
    }

    pub fn cycle_len_at(&self, i: SlotId) -> usize {
        self.walk.cycle_len_at(VertexId(i.0))
    }

    pub fn slot_name(&self, i: SlotId) -> &str {
        self.oq.vertex_name(VertexId(i.0))
    }

    pub fn slot_by_name(&self, name: &str) -> Option<SlotId> {
        self.oq.vertex_by_name(name).map(|v| SlotId(v.0))
    }

    /// The ground arrows of the length-`len` path read off from slot `i`,
    /// or `None` if the path runs into a phantom arrow.
    pub fn ground_path(&self, i: SlotId, len: usize) -> Option<Vec<ArrowId>> {
        let mut out = Vec::with_capacity(len);
        for oq_arrow in self.walk.path_arrows(VertexId(i.0), len) {
            let x = self.slot_arrow[oq_arrow.0];
            if x.0 >= self.n_ground_arrows {
                return None;
            }
            out.push(x);
        }
        Some(out)
    }

    /// Dotted arrow-name form of the path from slot `i`, e.g. `a.b.c`.
    pub fn path_name(&self, i: SlotId, len: usize) -> Option<String> {
        let word = self.ground_path(i, len)?;
        Some(
            word.iter()
                .map(|&x| self.padded.arrow_name(x))
                .collect::<Vec<_>>()
                .join("."),
        )
    }

    /// Structural reversal: slot `i` of the result reads the reversed
    /// ground arrows backwards along the original walk. Involution.
    pub fn reversed(&self) -> Overquiver {
        let vertex_names = self.padded.vertices().map(|v| self.padded.vertex_name(v).to_string());
        let rev_arrows: Vec<Arrow> = self
            .padded
            .arrow_ids()
            .map(|x| Arrow {
                name: self.padded.arrow_name(x).to_string(),
                source: self.padded.target(x),
                target: self.padded.source(x),
            })
            .collect();
        let padded = Quiver::new(vertex_names.collect(), rev_arrows);
        let n = self.n_slots();
        let slot_arrow: Vec<ArrowId> =
            (0..n).map(|i| self.slot_arrow[self.shift(SlotId(i), -1).0]).collect();
        let mut slot_of = vec![SlotId(usize::MAX); padded.n_arrows()];
        for (i, &x) in slot_arrow.iter().enumerate() {
            slot_of[x.0] = SlotId(i);
        }
        let slot_names: Vec<String> =
            slot_arrow.iter().map(|&x| format!("s({})", padded.arrow_name(x))).collect();
        let oq_arrows: Vec<Arrow> = (0..n)
            .map(|i| Arrow {
                name: padded.arrow_name(slot_arrow[i]).to_string(),
                source: VertexId(i),
                target: VertexId(self.shift(SlotId(i), -1).0),
            })
            .collect();
        let oq = Quiver::new(slot_names, oq_arrows);
        let walk = OneRegularWalk::new(&oq).expect("reversal preserves 1-regularity");
        Overquiver {
            padded,
            n_ground_arrows: self.n_ground_arrows,
            oq,
            walk,
            slot_arrow,
            slot_of,
            choice: self.choice,
        }
    }
}

fn radix(unmatched_ins: usize) -> usize {
    match unmatched_ins {
        2 => 2,
        _ => 1,
    }
}

/// Pad every vertex to out-degree and in-degree 2; leftover out-slots are
/// matched to leftover in-slots in vertex order, which is a fixed harmless
/// choice (phantom arrows carry no paths).
fn pad(spec: &SbAlgebraSpec) -> (Quiver, usize) {
    let g = spec.quiver();
    let mut out_def = Vec::new();
    let mut in_def = Vec::new();
    for v in g.vertices() {
        for _ in g.out_degree(v)..2 {
            out_def.push(v);
        }
        for _ in g.in_degree(v)..2 {
            in_def.push(v);
        }
    }
    debug_assert_eq!(out_def.len(), in_def.len());
    let added: Vec<(VertexId, VertexId)> = out_def.into_iter().zip(in_def).collect();
    (g.with_augmentation(&added), g.n_arrows())
}

/// Per padded vertex: in-arrows not matched by the relations, and
/// out-arrows not hit by that matching, both in declaration order.
fn unmatched(
    spec: &SbAlgebraSpec,
    padded: &Quiver,
    n_ground: usize,
) -> Vec<(Vec<ArrowId>, Vec<ArrowId>)> {
    padded
        .vertices()
        .map(|v| {
            let outs = padded.out_arrows(v);
            let mut taken = vec![false; outs.len()];
            let mut ins = Vec::new();
            for x in padded.in_arrows(v) {
                let succ = if x.0 < n_ground { spec.nonzero_successor(x) } else { None };
                match succ {
                    Some(y) => taken[outs.iter().position(|&o| o == y).unwrap()] = true,
                    None => ins.push(x),
                }
            }
            let free_outs =
                outs.into_iter().zip(&taken).filter(|(_, &t)| !t).map(|(o, _)| o).collect();
            (ins, free_outs)
        })
        .collect()
}

/// The four per-slot sequences, tied to the overquiver they were computed
/// on. See the crate docs for what `a`, `b`, `c`, `d` measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermissibleData {
    over: Overquiver,
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
    d: Vec<usize>,
}

impl PermissibleData {
    pub fn compute(spec: &SbAlgebraSpec, over: Overquiver) -> PermissibleData {
        let n = over.n_slots();
        let mut a = vec![0usize; n];
        let mut b = vec![1usize; n];
        for i in 0..n {
            let mut len = 0usize;
            loop {
                match over.ground_path(SlotId(i), len + 1) {
                    Some(word) if spec.residue_is_nonzero(&word) => len += 1,
                    _ => break,
                }
            }
            a[i] = len;
            if len > 0 {
                let word = over.ground_path(SlotId(i), len).unwrap();
                let is_component = spec
                    .commutativity()
                    .iter()
                    .any(|cr| cr.left == word || cr.right == word);
                if is_component {
                    b[i] = 0;
                }
            }
        }
        let c = arrivals(&a, &over);
        let d = pin_targets(&a, &b, &over);
        PermissibleData { over, a, b, c, d }
    }

    pub fn canonical(spec: &SbAlgebraSpec) -> PermissibleData {
        PermissibleData::compute(spec, Overquiver::canonical(spec))
    }

    pub fn all(spec: &SbAlgebraSpec) -> Vec<PermissibleData> {
        Overquiver::all(spec)
            .into_iter()
            .map(|o| PermissibleData::compute(spec, o))
            .collect()
    }

    pub fn over(&self) -> &Overquiver {
        &self.over
    }

    pub fn n_slots(&self) -> usize {
        self.a.len()
    }

    pub fn slots(&self) -> impl Iterator<Item = SlotId> {
        (0..self.n_slots()).map(SlotId)
    }

    pub fn a(&self, i: SlotId) -> usize {
        self.a[i.0]
    }

    pub fn b(&self, i: SlotId) -> usize {
        self.b[i.0]
    }

    pub fn c(&self, i: SlotId) -> usize {
        self.c[i.0]
    }

    pub fn d(&self, i: SlotId) -> usize {
        self.d[i.0]
    }

    pub fn a_values(&self) -> &[usize] {
        &self.a
    }

    pub fn b_values(&self) -> &[usize] {
        &self.b
    }

    pub fn c_values(&self) -> &[usize] {
        &self.c
    }

    pub fn d_values(&self) -> &[usize] {
        &self.d
    }

    /// Whether the longest path from `i` is a commutativity component.
    pub fn is_pin_slot(&self, i: SlotId) -> bool {
        self.b[i.0] == 0
    }

    /// Whether a pin path lands on `i` (the slot then carries a virtual
    /// syllable).
    pub fn has_virtual(&self, i: SlotId) -> bool {
        self.d[i.0] == 0
    }

    /// Multiset sanity: `a` and `c` agree as multisets, as do `b` and `d`
    /// and the slotwise sums `a+b` and `c+d`.
    pub fn permutation_property_holds(&self) -> bool {
        let sums = |x: &[usize], y: &[usize]| {
            multiset(x.iter().zip(y).map(|(p, q)| p + q))
        };
        multiset(self.a.iter().copied()) == multiset(self.c.iter().copied())
            && multiset(self.b.iter().copied()) == multiset(self.d.iter().copied())
            && sums(&self.a, &self.b) == sums(&self.c, &self.d)
    }

    /// Forget which maximal paths were commutativity components: every `b`
    /// becomes 1 (and hence every `d`), with `a` and `c` untouched.
    pub fn decoupled(&self) -> PermissibleData {
        let b = vec![1; self.n_slots()];
        let d = pin_targets(&self.a, &b, &self.over);
        PermissibleData { over: self.over.clone(), a: self.a.clone(), b, c: self.c.clone(), d }
    }

    /// Shorten the path budget at one slot by 1. Applicable when the slot
    /// is not a pin source, has something to give, and no incoming
    /// neighbour depends on the full length.
    pub fn reduced_at(&self, i: SlotId) -> Result<PermissibleData, PermDataError> {
        let fail = |reason: &str| PermDataError::Reduce {
            slot: self.over.slot_name(i).to_string(),
            reason: reason.to_string(),
        };
        if self.b[i.0] == 0 {
            return Err(fail("the slot is the source of a commutativity component"));
        }
        if self.a[i.0] == 0 {
            return Err(fail("the slot already has no outgoing path"));
        }
        let back = self.over.shift(i, -1);
        if self.a[back.0] > self.a[i.0] {
            return Err(fail("the incoming neighbour's path would overhang"));
        }
        let mut a = self.a.clone();
        a[i.0] -= 1;
        let c = arrivals(&a, &self.over);
        let d = pin_targets(&a, &self.b, &self.over);
        Ok(PermissibleData { over: self.over.clone(), a, b: self.b.clone(), c, d })
    }

    /// The data of the opposite algebra on the reversed overquiver: what
    /// arrived becomes what leaves, so `a` and `c` swap and `b` and `d`
    /// swap, slot for slot.
    pub fn opposite(&self) -> PermissibleData {
        PermissibleData {
            over: self.over.reversed(),
            a: self.c.clone(),
            b: self.d.clone(),
            c: self.a.clone(),
            d: self.b.clone(),
        }
    }
}

fn arrivals(a: &[usize], over: &Overquiver) -> Vec<usize> {
    (0..a.len())
        .map(|i| {
            let mut r = 0usize;
            loop {
                let next = r + 1;
                let start = over.shift(SlotId(i), -(next as isize));
                if a[start.0] >= next {
                    r = next;
                } else {
                    return r;
                }
            }
        })
        .collect()
}

fn pin_targets(a: &[usize], b: &[usize], over: &Overquiver) -> Vec<usize> {
    let mut d = vec![1usize; a.len()];
    for j in 0..a.len() {
        if b[j] == 0 {
            let t = over.shift(SlotId(j), a[j] as isize);
            d[t.0] = 0;
        }
    }
    d
}

impl std::fmt::Display for PermissibleData {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let width = self
            .slots()
            .map(|i| self.over.slot_name(i).len())
            .max()
            .unwrap_or(4)
            .max(4);
        writeln!(f, "{:width$}  a  b  c  d", "slot")?;
        for i in self.slots() {
            writeln!(
                f,
                "{:width$}  {}  {}  {}  {}",
                self.over.slot_name(i),
                self.a[i.0],
                self.b[i.0],
                self.c[i.0],
                self.d[i.0],
            )?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sbs_presentation::example_source;

    fn example() -> SbAlgebraSpec {
        SbAlgebraSpec::parse(example_source(1).unwrap()).unwrap()
    }

    #[test]
    fn example_overquiver_is_a_cycle_and_a_loop() {
        let spec = example();
        assert_eq!(Overquiver::count(&spec), 1);
        let over = Overquiver::canonical(&spec);
        assert_eq!(over.n_slots(), 4);
        let names: Vec<&str> = over.slots().map(|i| over.slot_name(i)).collect();
        assert_eq!(names, ["s(a)", "s(b)", "s(c)", "s(d)"]);
        assert_eq!(over.shift(SlotId(0), 1), SlotId(1));
        assert_eq!(over.shift(SlotId(1), 1), SlotId(2));
        assert_eq!(over.shift(SlotId(2), 1), SlotId(0));
        assert_eq!(over.shift(SlotId(3), 1), SlotId(3));
        assert_eq!(over.dagger(SlotId(0)), SlotId(1));
        assert_eq!(over.dagger(SlotId(3)), SlotId(2));
        assert_eq!(over.ground_vertex(SlotId(2)), VertexId(1));
        assert!(over.slots().all(|i| over.is_real_slot(i)));
        assert_eq!(over.path_name(SlotId(0), 3).as_deref(), Some("a.b.c"));
    }

    #[test]
    fn example_encoding_values() {
        let pd = PermissibleData::canonical(&example());
        assert_eq!(pd.a_values(), [3, 3, 2, 3]);
        assert_eq!(pd.b_values(), [0, 0, 1, 1]);
        assert_eq!(pd.c_values(), [3, 3, 2, 3]);
        assert_eq!(pd.d_values(), [0, 0, 1, 1]);
        assert!(pd.permutation_property_holds());
        assert!(pd.is_pin_slot(SlotId(0)));
        assert!(pd.has_virtual(SlotId(1)));
        assert!(!pd.has_virtual(SlotId(2)));
    }

    #[test]
    fn decoupling_clears_pins() {
        let pd = PermissibleData::canonical(&example()).decoupled();
        assert_eq!(pd.a_values(), [3, 3, 2, 3]);
        assert_eq!(pd.b_values(), [1, 1, 1, 1]);
        assert_eq!(pd.d_values(), [1, 1, 1, 1]);
        assert!(pd.permutation_property_holds());
    }

    #[test]
    fn reduction_at_the_loop_slot() {
        let pd = PermissibleData::canonical(&example());
        let red = pd.reduced_at(SlotId(3)).unwrap();
        assert_eq!(red.a_values(), [3, 3, 2, 2]);
        assert_eq!(red.c_values(), [3, 3, 2, 2]);
        assert_eq!(red.d_values(), [0, 0, 1, 1]);
        assert!(red.permutation_property_holds());
    }

    #[test]
    fn invalid_reductions_are_rejected() {
        let pd = PermissibleData::canonical(&example());
        // Pin source.
        assert!(pd.reduced_at(SlotId(0)).is_err());
        // Incoming neighbour (s(b), a=3) would overhang a=2-1 at s(c).
        assert!(pd.reduced_at(SlotId(2)).is_err());
    }

    #[test]
    fn opposite_swaps_departures_and_arrivals() {
        let pd = PermissibleData::canonical(&example());
        let op = pd.opposite();
        assert_eq!(op.a_values(), pd.c_values());
        assert_eq!(op.b_values(), pd.d_values());
        assert_eq!(op.opposite(), pd);
        let names: Vec<&str> = op.over().slots().map(|i| op.over().slot_name(i)).collect();
        assert_eq!(names, ["s(c)", "s(a)", "s(b)", "s(d)"]);
        assert!(op.permutation_property_holds());
    }

    #[test]
    fn deficient_quiver_is_padded_with_phantoms() {
        let spec = SbAlgebraSpec::parse(
            "quiver { vertices: 1 2; arrows: a: 1 -> 2; }\nrelations { }",
        )
        .unwrap();
        assert_eq!(Overquiver::count(&spec), 4);
        for k in 0..4 {
            let over = Overquiver::nth(&spec, k).unwrap();
            assert!(over.padded().is_m_regular(2));
            assert_eq!(over.n_slots(), 4);
            assert!(over.is_real_slot(over.slot_of_arrow(ArrowId(0))));
            let pd = PermissibleData::compute(&spec, over);
            assert_eq!(pd.a_values(), [1, 0, 0, 0]);
            assert_eq!(pd.b_values(), [1, 1, 1, 1]);
            assert!(pd.permutation_property_holds());
        }
        assert!(Overquiver::nth(&spec, 4).is_none());
    }

    #[test]
    fn phantom_paths_are_dead_ends() {
        let spec = SbAlgebraSpec::parse(
            "quiver { vertices: 1 2; arrows: a: 1 -> 2; }\nrelations { }",
        )
        .unwrap();
        let over = Overquiver::canonical(&spec);
        let i = over.slot_of_arrow(ArrowId(0));
        assert_eq!(over.ground_path(i, 1), Some(vec![ArrowId(0)]));
        assert_eq!(over.ground_path(i, 2), None);
        assert!(!over.is_real_slot(over.dagger(i)));
    }

    #[test]
    fn reversal_is_an_involution() {
        let spec = example();
        let over = Overquiver::canonical(&spec);
        assert_eq!(over.reversed().reversed(), over);
        let rev = over.reversed();
        // Walking the reversal forward retraces the original backwards.
        assert_eq!(rev.shift(SlotId(0), 1), over.shift(SlotId(0), -1));
    }

    #[test]
    fn display_table_lists_all_slots() {
        let pd = PermissibleData::canonical(&example());
        let shown = pd.to_string();
        for name in ["s(a)", "s(b)", "s(c)", "s(d)"] {
            assert!(shown.contains(name));
        }
    }
}