//! Patches: the building blocks of a syzygy computation.
//!
//! Each peak `(L, R)` of a strip is covered by a patch — a 2x2 block whose
//! top row is the (rounded) peak and whose bottom row holds the syllables
//! that survive into the kernel of the projective cover at that peak.
//! The patch also records which kind of projective acts there, which
//! decides whether the two bottom cells stay glued or fall apart when the
//! syzygy row is cut into strips.

use sbs_permdata::{PermissibleData, SlotId};
use sbs_quiver::VertexId;
use sbs_syllables::Syllable;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PatchError {
    #[error("({left}, {right}) is not a peak a patch can cover: {msg}")]
    NonPeak { left: String, right: String, msg: String },
}

/// The projective module acting at a patch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectiveKind {
    /// No projective acts (blank or virtual top).
    Zero,
    /// The projective carries the commutativity relation; its bottom cells
    /// stay glued.
    Pin,
    /// A string projective; its bottom cells separate.
    String,
}

/// Construction family of a patch, read off its top row.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatchClass {
    /// Both top cells blank.
    Blank,
    /// A virtual syllable against a blank.
    Virtual,
    /// Proper top with no pin-boundary cell.
    Plain,
    /// Exactly one pin-boundary top cell.
    OnePinTop,
    /// Both top cells pin-boundary.
    TwoPinTop,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Patch {
    top: (Syllable, Syllable),
    bottom: (Syllable, Syllable),
    kind: ProjectiveKind,
}

impl Patch {
    /// The peak after rounding (exposed proper ends get their stationary
    /// partner filled in).
    pub fn top(&self) -> (Syllable, Syllable) {
        self.top
    }

    pub fn bottom(&self) -> (Syllable, Syllable) {
        self.bottom
    }

    pub fn kind(&self) -> ProjectiveKind {
        self.kind
    }

    /// Bottom cells within one patch stay in one strip exactly when the
    /// acting projective is the pin.
    pub fn glues_below(&self) -> bool {
        self.kind == ProjectiveKind::Pin
    }

    /// Ground vertex of the acting projective, when one acts.
    pub fn vertex(&self, pd: &PermissibleData) -> Option<VertexId> {
        match self.kind {
            ProjectiveKind::Zero => None,
            _ => {
                let slot = self.top.0.source().or(self.top.1.source())?;
                Some(pd.over().ground_vertex(slot))
            }
        }
    }

    pub fn class(&self, pd: &PermissibleData) -> PatchClass {
        let (l, r) = self.top;
        if l.is_blank() && r.is_blank() {
            return PatchClass::Blank;
        }
        if l.is_virtual() || r.is_virtual() {
            return PatchClass::Virtual;
        }
        match (l.is_pin_boundary(pd), r.is_pin_boundary(pd)) {
            (true, true) => PatchClass::TwoPinTop,
            (false, false) => PatchClass::Plain,
            _ => PatchClass::OnePinTop,
        }
    }

    /// Mirror image: the two columns swap.
    pub fn reflected(&self) -> Patch {
        Patch {
            top: (self.top.1, self.top.0),
            bottom: (self.bottom.1, self.bottom.0),
            kind: self.kind,
        }
    }
}

/// Every patch over `pd`, family by family: the blank patch, a pair of
/// virtual patches per slot where a pin path lands, and one patch per
/// ordered pair of proper syllables over partner slots (peaks that show a
/// proper syllable against a blank are rounded to these, so the list
/// covers every peak). Top rows are pairwise distinct and the set is
/// closed under reflection.
pub fn build_patch_set(pd: &PermissibleData) -> Vec<Patch> {
    let mut out = vec![Patch {
        top: (Syllable::Blank, Syllable::Blank),
        bottom: (Syllable::Blank, Syllable::Blank),
        kind: ProjectiveKind::Zero,
    }];
    for i in pd.slots() {
        if let Some(x) = Syllable::virtual_at(pd, i) {
            let e = Syllable::stationary(pd, i);
            out.push(Patch {
                top: (Syllable::Blank, x),
                bottom: (Syllable::Blank, e),
                kind: ProjectiveKind::Zero,
            });
            out.push(Patch {
                top: (x, Syllable::Blank),
                bottom: (e, Syllable::Blank),
                kind: ProjectiveKind::Zero,
            });
        }
    }
    let proper_at = |i: SlotId| -> Vec<Syllable> {
        let mut shapes = Vec::new();
        for len in 0..pd.a(i) + pd.b(i) {
            for eps in 0..=1 {
                shapes.extend(Syllable::proper(pd, i, len, eps));
            }
        }
        shapes
    };
    for i in pd.slots() {
        let j = pd.over().dagger(i);
        for &l in &proper_at(i) {
            for &r in &proper_at(j) {
                out.push(proper_patch(pd, l, r).expect("partner-slot tops always carry a patch"));
            }
        }
    }
    out
}

/// Build the patch covering one peak. The pair must satisfy the peak rule;
/// virtual syllables may only face a blank.
pub fn patch_for_peak(
    pd: &PermissibleData,
    left: Syllable,
    right: Syllable,
) -> Result<Patch, PatchError> {
    let fail = |msg: &str| PatchError::NonPeak {
        left: left.display(pd),
        right: right.display(pd),
        msg: msg.to_string(),
    };
    match (left.data(), right.data()) {
        (None, None) => Ok(Patch {
            top: (left, right),
            bottom: (Syllable::Blank, Syllable::Blank),
            kind: ProjectiveKind::Zero,
        }),
        (None, Some(d)) if right.is_virtual() => Ok(Patch {
            top: (left, right),
            bottom: (Syllable::Blank, Syllable::stationary(pd, d.source)),
            kind: ProjectiveKind::Zero,
        }),
        (Some(d), None) if left.is_virtual() => Ok(Patch {
            top: (left, right),
            bottom: (Syllable::stationary(pd, d.source), Syllable::Blank),
            kind: ProjectiveKind::Zero,
        }),
        (None, Some(d)) => {
            let partner = Syllable::stationary(pd, pd.over().dagger(d.source));
            proper_patch(pd, partner, right).ok_or_else(|| fail("rounding failed"))
        }
        (Some(d), None) => {
            let partner = Syllable::stationary(pd, pd.over().dagger(d.source));
            proper_patch(pd, left, partner).ok_or_else(|| fail("rounding failed"))
        }
        (Some(_), Some(_)) => {
            if left.is_virtual() || right.is_virtual() {
                return Err(fail("a virtual syllable can only face a blank"));
            }
            proper_patch(pd, left, right)
                .ok_or_else(|| fail("the sources are not partner slots"))
        }
    }
}

fn proper_patch(pd: &PermissibleData, left: Syllable, right: Syllable) -> Option<Patch> {
    let i = left.source()?;
    let j = right.source()?;
    if pd.over().dagger(i) != j {
        return None;
    }
    let kind = if pd.is_pin_slot(i) { ProjectiveKind::Pin } else { ProjectiveKind::String };
    let boundary = |s: Syllable| s.is_pin_boundary(pd);
    let bottom = match (boundary(left), boundary(right)) {
        (true, true) => {
            let below = |slot: SlotId| {
                let landing = pd.over().shift(slot, pd.a(slot) as isize);
                Syllable::virtual_at(pd, landing)
                    .expect("a commutativity component lands where the encoding vanishes")
            };
            (below(i), below(j))
        }
        (true, false) => (Syllable::Blank, descend_perturbed(pd, right)),
        (false, true) => (descend_perturbed(pd, left), Syllable::Blank),
        (false, false) => (left.based_descent(pd), right.based_descent(pd)),
    };
    Some(Patch { top: (left, right), bottom, kind })
}

fn descend_perturbed(pd: &PermissibleData, s: Syllable) -> Syllable {
    let below = s
        .descent(pd)
        .expect("a non-boundary syllable at a pin vertex has a descent");
    below.perturbed()
}
