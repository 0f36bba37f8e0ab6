//! Syllables: the letters that strips are spelled in.
//!
//! A non-blank syllable `(i, l, e)` names the path of length `l` read off
//! the overquiver from slot `i`, tagged with a boundary bit `e`. Against a
//! fixed [`PermissibleData`] it is *proper* when `l + e >= 1` and
//! `l < a_i + b_i` (so `l = 0` forces `e = 1`; those are the stationary
//! syllables). The shape `(i, 0, 0)` is instead the *virtual* syllable at
//! `i`, which exists only where a pin path lands (`d_i = 0`) and carries no
//! module content. A blank placeholder rounds out the alphabet.
//!
//! The descent operator chops the named path off the front of slot `i`'s
//! full budget: the remainder starts where the syllable ends. It is left
//! undefined exactly on the maximal boundary shape `(i, a_i + b_i - 1, 1)`.

use sbs_permdata::{PermissibleData, SlotId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SyllableData {
    pub source: SlotId,
    pub len: usize,
    /// Boundary bit, 0 or 1.
    pub eps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Syllable {
    Blank,
    NonBlank(SyllableData),
}

use Syllable::{Blank, NonBlank};

impl Syllable {
    /// A proper syllable, if the shape is valid over `pd`.
    pub fn proper(pd: &PermissibleData, source: SlotId, len: usize, eps: usize) -> Option<Syllable> {
        if eps > 1 || len + eps == 0 || len >= pd.a(source) + pd.b(source) {
            return None;
        }
        Some(NonBlank(SyllableData { source, len, eps }))
    }

    /// The stationary syllable `(i, 0, 1)`, valid at every slot.
    pub fn stationary(pd: &PermissibleData, source: SlotId) -> Syllable {
        Syllable::proper(pd, source, 0, 1).expect("a_i + b_i >= 1 at every slot")
    }

    /// The virtual syllable at `i`, if a pin path lands there.
    pub fn virtual_at(pd: &PermissibleData, source: SlotId) -> Option<Syllable> {
        if pd.has_virtual(source) {
            Some(NonBlank(SyllableData { source, len: 0, eps: 0 }))
        } else {
            None
        }
    }

    /// The boundary syllable `(i, a_i - 1, 1)` of a pin slot.
    pub fn pin_boundary(pd: &PermissibleData, source: SlotId) -> Option<Syllable> {
        if pd.is_pin_slot(source) {
            Syllable::proper(pd, source, pd.a(source) - 1, 1)
        } else {
            None
        }
    }

    pub fn data(&self) -> Option<SyllableData> {
        match *self {
            Blank => None,
            NonBlank(d) => Some(d),
        }
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Blank)
    }

    pub fn is_virtual(&self) -> bool {
        matches!(self, NonBlank(d) if d.len == 0 && d.eps == 0)
    }

    /// Non-blank and non-virtual.
    pub fn is_proper(&self) -> bool {
        matches!(self, NonBlank(d) if d.len + d.eps >= 1)
    }

    pub fn is_stationary(&self) -> bool {
        matches!(self, NonBlank(d) if d.len == 0 && d.eps == 1)
    }

    /// Proper with boundary bit 0.
    pub fn is_interior(&self) -> bool {
        matches!(self, NonBlank(d) if d.len >= 1 && d.eps == 0)
    }

    pub fn is_pin_boundary(&self, pd: &PermissibleData) -> bool {
        match *self {
            NonBlank(d) => {
                pd.is_pin_slot(d.source) && d.eps == 1 && d.len == pd.a(d.source) - 1
            }
            Blank => false,
        }
    }

    pub fn source(&self) -> Option<SlotId> {
        self.data().map(|d| d.source)
    }

    /// End slot of the named path plus the boundary step.
    pub fn target(&self, pd: &PermissibleData) -> Option<SlotId> {
        self.data().map(|d| pd.over().shift(d.source, (d.len + d.eps) as isize))
    }

    /// Descent is undefined exactly on the maximal boundary shape.
    pub fn descent_defined(&self, pd: &PermissibleData) -> bool {
        match *self {
            Blank => false,
            NonBlank(d) => !(d.eps == 1 && d.len == pd.a(d.source) + pd.b(d.source) - 1),
        }
    }

    /// Remainder of slot `i`'s budget after this syllable: starts at the
    /// syllable's target, has length `a_i - (l + e)`, and inherits `b_i`
    /// as its boundary bit.
    pub fn descent(&self, pd: &PermissibleData) -> Option<Syllable> {
        if !self.descent_defined(pd) {
            return None;
        }
        let d = self.data()?;
        let step = d.len + d.eps;
        let source = pd.over().shift(d.source, step as isize);
        Syllable::proper(pd, source, pd.a(d.source) - step, pd.b(d.source))
    }

    /// Descent where defined, blank where not. This is the form patch
    /// bottoms use: the maximal boundary shape has nothing left to give.
    pub fn based_descent(&self, pd: &PermissibleData) -> Syllable {
        match self.descent(pd) {
            Some(s) => s,
            None => Blank,
        }
    }

    /// The stationary syllable at the partner slot of this one's source.
    pub fn sidestep(&self, pd: &PermissibleData) -> Option<Syllable> {
        let d = self.data()?;
        Some(Syllable::stationary(pd, pd.over().dagger(d.source)))
    }

    /// Set the boundary bit. Idempotent; no-op on blanks.
    pub fn perturbed(&self) -> Syllable {
        match *self {
            Blank => Blank,
            NonBlank(d) => NonBlank(SyllableData { eps: 1, ..d }),
        }
    }

    /// Length of the underlying path (0 for blanks).
    pub fn path_len(&self) -> usize {
        self.data().map_or(0, |d| d.len)
    }

    pub fn display(&self, pd: &PermissibleData) -> String {
        match *self {
            Blank => "_".to_string(),
            NonBlank(d) if self.is_virtual() => {
                format!("x({})", pd.over().slot_name(d.source))
            }
            NonBlank(d) if d.len == 0 => format!("e({})", pd.over().slot_name(d.source)),
            NonBlank(d) => {
                let path = pd
                    .over()
                    .path_name(d.source, d.len)
                    .unwrap_or_else(|| format!("{}+{}", pd.over().slot_name(d.source), d.len));
                format!("({},{})", path, d.eps)
            }
        }
    }
}

/// Every syllable valid over `pd`: the blank first, then per slot in id
/// order by `(l, e)` — the virtual shape `(0,0)` where it exists, the
/// stationary `(0,1)`, then the longer shapes.
pub fn census(pd: &PermissibleData) -> Vec<Syllable> {
    let mut out = vec![Blank];
    for i in pd.slots() {
        for len in 0..pd.a(i) + pd.b(i) {
            for eps in 0..=1 {
                if len == 0 && eps == 0 {
                    out.extend(Syllable::virtual_at(pd, i));
                } else {
                    out.extend(Syllable::proper(pd, i, len, eps));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use sbs_presentation::{example_source, SbAlgebraSpec};

    fn pd() -> PermissibleData {
        PermissibleData::canonical(
            &SbAlgebraSpec::parse(example_source(1).unwrap()).unwrap(),
        )
    }

    fn slot(pd: &PermissibleData, name: &str) -> SlotId {
        pd.over().slot_by_name(name).unwrap()
    }

    #[test]
    fn census_has_25_syllables() {
        let pd = pd();
        let all = census(&pd);
        assert_eq!(all.len(), 25);
        assert_eq!(all.iter().filter(|s| s.is_blank()).count(), 1);
        assert_eq!(all.iter().filter(|s| s.is_virtual()).count(), 2);
        assert_eq!(all.iter().filter(|s| s.is_stationary()).count(), 4);
        assert_eq!(all.iter().filter(|s| s.is_interior()).count(), 9);
        let shown: Vec<String> = all.iter().take(8).map(|s| s.display(&pd)).collect();
        assert_eq!(
            shown,
            ["_", "x(s(a))", "e(s(a))", "(a,0)", "(a,1)", "(a.b,0)", "(a.b,1)", "x(s(b))"]
        );
    }

    #[test]
    fn validity_bounds() {
        let pd = pd();
        let sa = slot(&pd, "s(a)");
        let sc = slot(&pd, "s(c)");
        // a+b = 3 at s(a) and s(c).
        assert!(Syllable::proper(&pd, sa, 2, 1).is_some());
        assert!(Syllable::proper(&pd, sa, 3, 0).is_none());
        assert!(Syllable::proper(&pd, sc, 0, 0).is_none());
        assert!(Syllable::virtual_at(&pd, sc).is_none());
        assert!(Syllable::virtual_at(&pd, sa).is_some());
        assert!(Syllable::proper(&pd, sc, 0, 2).is_none());
    }

    #[test]
    fn pin_boundaries() {
        let pd = pd();
        let sa = slot(&pd, "s(a)");
        let sd = slot(&pd, "s(d)");
        let r = Syllable::pin_boundary(&pd, sa).unwrap();
        assert_eq!(r.data().unwrap().len, 2);
        assert!(r.is_pin_boundary(&pd));
        assert!(!r.descent_defined(&pd));
        assert!(Syllable::pin_boundary(&pd, sd).is_none());
    }

    #[test]
    fn descent_chops_off_the_front() {
        let pd = pd();
        let sd = slot(&pd, "s(d)");
        let sc = slot(&pd, "s(c)");
        let sb = slot(&pd, "s(b)");
        // (d.d, 1) leaves the stationary at s(d).
        let dd1 = Syllable::proper(&pd, sd, 2, 1).unwrap();
        assert_eq!(dd1.descent(&pd), Some(Syllable::stationary(&pd, sd)));
        // Descending a stationary yields the slot's full budget.
        let e_c = Syllable::stationary(&pd, sc);
        let down = e_c.descent(&pd).unwrap();
        assert_eq!(down.display(&pd), "(a,1)");
        // The b=0 budget comes back with boundary bit 0.
        let e_b = Syllable::stationary(&pd, sb);
        assert_eq!(e_b.descent(&pd).unwrap().display(&pd), "(c.a,0)");
        // Maximal boundary shapes drop to blank.
        let ddd1 = Syllable::proper(&pd, sd, 3, 1).unwrap();
        assert!(!ddd1.descent_defined(&pd));
        assert_eq!(ddd1.based_descent(&pd), Syllable::Blank);
    }

    #[test]
    fn descent_lands_at_the_target() {
        let pd = pd();
        for s in census(&pd) {
            if let Some(down) = s.descent(&pd) {
                assert_eq!(down.source(), s.target(&pd), "{}", s.display(&pd));
            }
        }
    }

    #[test]
    fn sidestep_and_perturb() {
        let pd = pd();
        let sa = slot(&pd, "s(a)");
        let x = Syllable::virtual_at(&pd, sa).unwrap();
        assert_eq!(x.sidestep(&pd).unwrap().display(&pd), "e(s(b))");
        let interior = Syllable::proper(&pd, sa, 1, 0).unwrap();
        assert_eq!(interior.perturbed().display(&pd), "(a,1)");
        assert_eq!(interior.perturbed(), interior.perturbed().perturbed());
        assert!(Syllable::Blank.sidestep(&pd).is_none());
    }

    #[test]
    fn ordering_matches_census() {
        let pd = pd();
        let all = census(&pd);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
