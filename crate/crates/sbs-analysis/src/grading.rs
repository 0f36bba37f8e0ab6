//! Interior descent cycles and the path grading they induce.
//!
//! Iterating the descent operator on an interior syllable either leaves
//! the interior alphabet or settles into a cycle. Each cycle singles out
//! the *factorisable* slots — the sources of its syllables — and grades
//! every overquiver path on that component by how many factorisable slots
//! the path's minimal factorisable extension passes through. Descent
//! flips the grade to `2 - grade`, so grades of syllables riding a cycle
//! stay odd while injective compressions stay even; that parity split is
//! what the injective-orbit check exploits.

use crate::AnalysisError;
use sbs_permdata::{PermissibleData, SlotId};
use sbs_syllables::{census, Syllable};
use std::collections::{BTreeMap, BTreeSet};

/// A periodic descent orbit of interior syllables, stored from its
/// smallest element.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InteriorDescentCycle {
    syllables: Vec<Syllable>,
}

impl InteriorDescentCycle {
    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The elementary factor paths, i.e. the paths the cycle's syllables
    /// spell, in cycle order.
    pub fn factor_names(&self, pd: &PermissibleData) -> Vec<String> {
        self.syllables
            .iter()
            .map(|s| {
                let d = s.data().expect("cycle syllables are interior");
                pd.over().path_name(d.source, d.len).expect("interior syllables spell real paths")
            })
            .collect()
    }

    /// Sources of the cycle's syllables: the factorisable slots.
    pub fn factorisable_slots(&self) -> BTreeSet<SlotId> {
        self.syllables.iter().filter_map(|s| s.source()).collect()
    }

    /// Whether `slot` lies on the overquiver component the cycle runs on.
    pub fn on_component(&self, pd: &PermissibleData, slot: SlotId) -> bool {
        let over = pd.over();
        let f = self.factorisable_slots();
        (0..over.cycle_len_at(slot)).any(|k| f.contains(&over.shift(slot, k as isize)))
    }
}

/// All periodic descent orbits of interior syllables, each listed once
/// (rotations identified by starting at the smallest member).
pub fn interior_descent_cycles(pd: &PermissibleData) -> Vec<InteriorDescentCycle> {
    let limit = census(pd).len() + 1;
    let mut found: BTreeSet<Vec<Syllable>> = BTreeSet::new();
    for start in census(pd) {
        if !start.is_interior() {
            continue;
        }
        let mut orbit = vec![start];
        let mut cur = start;
        loop {
            match cur.descent(pd) {
                Some(next) if next == start => {
                    let min = orbit.iter().enumerate().min_by_key(|(_, s)| *s).unwrap().0;
                    orbit.rotate_left(min);
                    found.insert(orbit);
                    break;
                }
                Some(next) if next.is_interior() && orbit.len() < limit => {
                    orbit.push(next);
                    cur = next;
                }
                _ => break,
            }
        }
    }
    found.into_iter().map(|syllables| InteriorDescentCycle { syllables }).collect()
}

/// Grade of the path of length `len` out of `source`, relative to the
/// cycle's factorisable slots: extend the path forward until it ends on a
/// factorisable slot, skip to the first factorisable slot after the
/// start, and count the factorisable slots passed. Factorisable paths are
/// fixed (their grade is their factor count) and the grade is additive
/// along composition.
pub fn grade(
    pd: &PermissibleData,
    cyc: &InteriorDescentCycle,
    source: SlotId,
    len: usize,
) -> Result<usize, AnalysisError> {
    if !cyc.on_component(pd, source) {
        return Err(AnalysisError::OffComponent { slot: source.0 });
    }
    let over = pd.over();
    let f = cyc.factorisable_slots();
    let hits = |j: usize| f.contains(&over.shift(source, j as isize));
    let first = (0..).find(|&j| hits(j)).expect("the component carries a factorisable slot");
    let end = (len..).find(|&j| hits(j)).expect("the component carries a factorisable slot");
    Ok((first + 1..=end).filter(|&j| hits(j)).count())
}

/// Grade of a syllable: the grade of its compression, the path of length
/// `l + e` out of its source.
pub fn grade_syllable(
    pd: &PermissibleData,
    cyc: &InteriorDescentCycle,
    s: Syllable,
) -> Result<usize, AnalysisError> {
    let d = s.data().expect("blank syllables carry no grade");
    grade(pd, cyc, d.source, d.len + d.eps)
}

/// What happened to one injective syllable's forward descent orbit.
#[derive(Debug, Clone)]
pub struct OrbitOutcome {
    pub syllable: Syllable,
    /// Length of the periodic part.
    pub period_len: usize,
    /// Whether the periodic part consists of interior syllables only
    /// (must not happen).
    pub period_all_interior: bool,
    /// Whether the orbit ever visits a syllable of some interior descent
    /// cycle (must not happen).
    pub meets_cycle: bool,
    /// `Some(even)` when an interior cycle lives on the syllable's
    /// component, in which case the parity shortcut applies and the grade
    /// must be even.
    pub even_grade: Option<bool>,
}

/// Report of [`injective_orbit_check`].
#[derive(Debug, Clone)]
pub struct InjectiveOrbitReport {
    pub outcomes: Vec<OrbitOutcome>,
    /// Injective syllables whose orbit runs into an undefined descent;
    /// nothing to verify there.
    pub skipped: Vec<Syllable>,
    /// Statistics on the boundary-perturbed variants: how many have a
    /// full orbit, and how many of those touch a cycle. No verdicts are
    /// attached — the grading cannot separate perturbed orbits.
    pub perturbed_with_orbit: usize,
    pub perturbed_meeting_cycle: usize,
}

impl InjectiveOrbitReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(|o| {
            !o.period_all_interior && !o.meets_cycle && o.even_grade.unwrap_or(true)
        })
    }
}

/// Walk the descent orbit of `start`; `Some((orbit, k))` lists the
/// distinct syllables visited and the index where the period begins,
/// `None` means a descent was undefined along the way.
fn forward_orbit(pd: &PermissibleData, start: Syllable) -> Option<(Vec<Syllable>, usize)> {
    let mut index: BTreeMap<Syllable, usize> = BTreeMap::new();
    let mut orbit = Vec::new();
    let mut cur = start;
    loop {
        if let Some(&k) = index.get(&cur) {
            return Some((orbit, k));
        }
        index.insert(cur, orbit.len());
        orbit.push(cur);
        cur = cur.descent(pd)?;
    }
}

/// For every injective syllable — the compression of a maximal path into
/// a slot where no pin lands, with either boundary bit — follow the
/// descent orbit to its period and verify the period is not all-interior
/// and the orbit stays clear of every interior descent cycle. Where a
/// cycle lives on the same component, the grade parity backs this up:
/// injective compressions grade even, cycle syllables odd.
pub fn injective_orbit_check(pd: &PermissibleData) -> InjectiveOrbitReport {
    let over = pd.over();
    let cycles = interior_descent_cycles(pd);
    let cycle_syllables: BTreeSet<Syllable> =
        cycles.iter().flat_map(|c| c.syllables().iter().copied()).collect();
    let mut outcomes = Vec::new();
    let mut skipped = Vec::new();
    let mut perturbed_with_orbit = 0;
    let mut perturbed_meeting_cycle = 0;
    for i in pd.slots() {
        if pd.d(i) != 1 {
            continue;
        }
        let depth = pd.c(i);
        let src = over.shift(i, -(depth as isize));
        for eps in 0..=1 {
            let Some(s) = Syllable::proper(pd, src, depth, eps) else { continue };
            let Some((orbit, k)) = forward_orbit(pd, s) else {
                skipped.push(s);
                continue;
            };
            let period = &orbit[k..];
            let cycle_here = cycles.iter().find(|c| c.on_component(pd, src));
            let even_grade = cycle_here.map(|c| {
                grade_syllable(pd, c, s).expect("the cycle was chosen on this component") % 2
                    == 0
            });
            outcomes.push(OrbitOutcome {
                syllable: s,
                period_len: period.len(),
                period_all_interior: period.iter().all(|t| t.is_interior()),
                meets_cycle: orbit.iter().any(|t| cycle_syllables.contains(t)),
                even_grade,
            });
            if eps == 0 {
                if let Some((orbit, _)) = forward_orbit(pd, s.perturbed()) {
                    perturbed_with_orbit += 1;
                    if orbit.iter().any(|t| cycle_syllables.contains(t)) {
                        perturbed_meeting_cycle += 1;
                    }
                }
            }
        }
    }
    InjectiveOrbitReport { outcomes, skipped, perturbed_with_orbit, perturbed_meeting_cycle }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn the_cycle(pd: &PermissibleData) -> InteriorDescentCycle {
        let cycles = interior_descent_cycles(pd);
        assert_eq!(cycles.len(), 1);
        cycles.into_iter().next().unwrap()
    }

    #[test]
    fn running_example_has_one_cycle() {
        let pd = running();
        let cyc = the_cycle(&pd);
        let expected = vec![
            Syllable::proper(&pd, SlotId(0), 1, 0).unwrap(),
            Syllable::proper(&pd, SlotId(1), 2, 0).unwrap(),
        ];
        assert_eq!(cyc.syllables(), &expected[..]);
        assert_eq!(cyc.factor_names(&pd), vec!["a".to_string(), "b.c".to_string()]);
        assert_eq!(
            cyc.factorisable_slots(),
            BTreeSet::from([SlotId(0), SlotId(1)])
        );
    }

    #[test]
    fn monomial_data_has_no_cycles() {
        assert!(interior_descent_cycles(&monomial()).is_empty());
        assert!(interior_descent_cycles(&pin_arrow()).is_empty());
    }

    #[test]
    fn grades_of_named_paths() {
        let pd = running();
        let cyc = the_cycle(&pd);
        let g = |slot: usize, len: usize| grade(&pd, &cyc, SlotId(slot), len).unwrap();
        assert_eq!(g(2, 1), 0, "grade of the path c");
        assert_eq!(g(1, 1), 1, "grade of the path b");
        assert_eq!(g(1, 2), 1, "grade of the path b.c");
        assert_eq!(g(0, 1), 1, "grade of the path a");
        assert_eq!(g(0, 2), 2, "grade of the path a.b");
        // stationary paths at factorisable slots grade 0
        assert_eq!(g(0, 0), 0);
        assert_eq!(g(1, 0), 0);
        // the shortest dependent path out of every component slot grades 2
        for slot in [0usize, 1, 2] {
            let i = SlotId(slot);
            assert_eq!(g(slot, pd.a(i) + pd.b(i)), 2, "dependent path at slot {slot}");
        }
    }

    #[test]
    fn grade_is_an_error_off_the_component() {
        let pd = running();
        let cyc = the_cycle(&pd);
        assert_eq!(
            grade(&pd, &cyc, SlotId(3), 1),
            Err(AnalysisError::OffComponent { slot: 3 })
        );
    }

    #[test]
    fn grade_is_additive_along_composition() {
        let pd = running();
        let cyc = the_cycle(&pd);
        let over = pd.over();
        for slot in [0usize, 1, 2] {
            let i = SlotId(slot);
            for l1 in 0..=4usize {
                for l2 in 0..=4usize {
                    let whole = grade(&pd, &cyc, i, l1 + l2).unwrap();
                    let first = grade(&pd, &cyc, i, l1).unwrap();
                    let rest = grade(&pd, &cyc, over.shift(i, l1 as isize), l2).unwrap();
                    assert_eq!(whole, first + rest, "slot {slot}, lengths {l1}+{l2}");
                }
            }
        }
    }

    #[test]
    fn descent_flips_grade_to_two_minus() {
        let pd = running();
        let cyc = the_cycle(&pd);
        for s in census(&pd) {
            let Some(d) = s.data() else { continue };
            if !s.is_proper() || !cyc.on_component(&pd, d.source) {
                continue;
            }
            let Some(t) = s.descent(&pd) else { continue };
            let gs = grade_syllable(&pd, &cyc, s).unwrap();
            let gt = grade_syllable(&pd, &cyc, t).unwrap();
            assert_eq!(gt, 2 - gs, "descent parity at {}", s.display(&pd));
        }
    }

    #[test]
    fn cycle_factors_grade_one() {
        let pd = running();
        let cyc = the_cycle(&pd);
        for &s in cyc.syllables() {
            assert_eq!(grade_syllable(&pd, &cyc, s).unwrap(), 1);
        }
    }

    #[test]
    fn injective_orbits_avoid_the_cycle() {
        let pd = running();
        let report = injective_orbit_check(&pd);
        assert!(report.passed());
        assert_eq!(report.outcomes.len(), 2);
        assert_eq!(report.skipped.len(), 2);
        let compressions: BTreeSet<Syllable> =
            report.outcomes.iter().map(|o| o.syllable).collect();
        let expected = BTreeSet::from([
            Syllable::proper(&pd, SlotId(0), 2, 0).unwrap(),
            Syllable::proper(&pd, SlotId(3), 3, 0).unwrap(),
        ]);
        assert_eq!(compressions, expected);
        for o in &report.outcomes {
            assert!(!o.period_all_interior);
            assert!(!o.meets_cycle);
            assert_eq!(o.period_len, 2);
        }
        // the slot-0 orbit rides the graded component, the slot-3 one does not
        let graded: Vec<Option<bool>> =
            report.outcomes.iter().map(|o| o.even_grade).collect();
        assert!(graded.contains(&Some(true)));
        assert!(graded.contains(&None));
    }

    #[test]
    fn injective_orbits_pass_on_the_other_fixtures() {
        for pd in [monomial(), selfinjective(), pin_arrow()] {
            let report = injective_orbit_check(&pd);
            assert!(report.passed());
        }
    }
}
