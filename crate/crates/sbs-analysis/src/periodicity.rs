//! Weak periodicity along cycles of length-two zero relations.
//!
//! Arrows chain into a digraph with an edge `x -> y` whenever `x*y` is a
//! declared length-two monomial relation. Around any cycle of that
//! digraph, the right ideal `xA` of the starting arrow recurs as a syzygy
//! summand after one full lap — provided the projective at the arrow's
//! source is a string module, so that `xA` is itself a string module cut
//! out of it.

use sbs_permdata::PermissibleData;
use sbs_presentation::SbAlgebraSpec;
use sbs_quiver::ArrowId;
use sbs_strips::Strip;
use sbs_syllables::Syllable;
use sbs_syzygy::iterated_syzygy;
use std::collections::{BTreeMap, BTreeSet};

/// All cycles of the length-two-zero-relation digraph, each reported once
/// (rotated to start at its smallest arrow) in ascending order.
pub fn zero_relation_cycles(spec: &SbAlgebraSpec) -> Vec<Vec<ArrowId>> {
    let mut edges: BTreeMap<ArrowId, Vec<ArrowId>> = BTreeMap::new();
    for m in spec.monomials() {
        if let [x, y] = m[..] {
            edges.entry(x).or_default().push(y);
        }
    }
    let mut cycles: BTreeSet<Vec<ArrowId>> = BTreeSet::new();
    for &start in edges.keys() {
        // Depth-first over simple paths that only use arrows above the
        // start, so each cycle is found exactly once, smallest-first.
        let mut stack: Vec<Vec<ArrowId>> = vec![vec![start]];
        while let Some(path) = stack.pop() {
            let cur = *path.last().unwrap();
            for &next in edges.get(&cur).into_iter().flatten() {
                if next == start {
                    cycles.insert(path.clone());
                } else if next > start && !path.contains(&next) {
                    let mut longer = path.clone();
                    longer.push(next);
                    stack.push(longer);
                }
            }
        }
    }
    cycles.into_iter().collect()
}

/// The strip of the right ideal `xA`: the part of the slot's path budget
/// that survives past `x`, hanging off a simple top.
pub fn strip_of_arrow_ideal(pd: &PermissibleData, x: ArrowId) -> Strip {
    let over = pd.over();
    let slot = over.slot_of_arrow(x);
    let len = pd.a(slot) - 1;
    let src = over.shift(slot, 1);
    if len == 0 {
        return Strip::simple(pd, over.ground_vertex(src));
    }
    let cell = Syllable::proper(pd, src, len, 1).expect("a tail of a surviving path is a syllable");
    Strip::from_cells(pd, vec![cell], 1)
        .expect("a single direct syllable is a strip")
        .canonical(pd)
}

/// Run the syzygy engine one lap around the cycle from each rotation
/// whose starting arrow leaves a string projective (pin projectives are
/// not covered by the argument and are skipped), and confirm the ideal's
/// strip recurs among the summands at depth equal to the cycle length.
pub fn verify_weak_periodicity(pd: &PermissibleData, cycle: &[ArrowId]) -> bool {
    let over = pd.over();
    let ell = cycle.len();
    for r in 0..ell {
        let first = cycle[r];
        let source = over.padded().source(first);
        if Strip::projective(pd, source).is_none() {
            continue;
        }
        let ideal = strip_of_arrow_ideal(pd, first);
        if !iterated_syzygy(pd, &ideal, ell).contains(&ideal) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use sbs_presentation::example_source;

    fn spec() -> SbAlgebraSpec {
        SbAlgebraSpec::parse(example_source(1).unwrap()).unwrap()
    }

    fn arrow(spec: &SbAlgebraSpec, name: &str) -> ArrowId {
        spec.quiver().arrow_by_name(name).unwrap()
    }

    #[test]
    fn running_example_has_two_cycles() {
        let spec = spec();
        let cycles = zero_relation_cycles(&spec);
        let a = arrow(&spec, "a");
        let b = arrow(&spec, "b");
        let c = arrow(&spec, "c");
        let d = arrow(&spec, "d");
        assert_eq!(cycles, vec![vec![a], vec![b, d, c]]);
    }

    #[test]
    fn chains_without_cycles_give_nothing() {
        let src = "quiver {\n  vertices: 1 2 3;\n  arrows: a: 1 -> 2; b: 2 -> 3;\n}\nrelations {\n  a*b;\n}\n";
        let spec = SbAlgebraSpec::parse(src).unwrap();
        assert!(zero_relation_cycles(&spec).is_empty());
    }

    #[test]
    fn arrow_ideals_read_off_the_slot_tails() {
        let spec = spec();
        let pd = PermissibleData::canonical(&spec);
        let word = |name: &str| strip_of_arrow_ideal(&pd, arrow(&spec, name)).word_string(&pd);
        assert_eq!(word("a"), "(b.c)");
        assert_eq!(word("b"), "(c.a)");
        assert_eq!(word("c"), "(a)");
        assert_eq!(word("d"), "(d.d)");
    }

    #[test]
    fn the_loop_ideal_is_its_own_syzygy() {
        let spec = spec();
        let pd = PermissibleData::canonical(&spec);
        let ideal = strip_of_arrow_ideal(&pd, arrow(&spec, "a"));
        assert_eq!(iterated_syzygy(&pd, &ideal, 1), vec![ideal]);
    }

    #[test]
    fn both_running_cycles_are_weakly_periodic() {
        let spec = spec();
        let pd = PermissibleData::canonical(&spec);
        for cycle in zero_relation_cycles(&spec) {
            assert!(verify_weak_periodicity(&pd, &cycle), "cycle {cycle:?}");
        }
    }

    #[test]
    fn ideals_recur_after_the_lap_length() {
        let spec = spec();
        let pd = PermissibleData::canonical(&spec);
        for name in ["c", "d"] {
            let ideal = strip_of_arrow_ideal(&pd, arrow(&spec, name));
            assert!(!iterated_syzygy(&pd, &ideal, 1).contains(&ideal), "{name}A at depth 1");
            assert!(iterated_syzygy(&pd, &ideal, 3).contains(&ideal), "{name}A at depth 3");
        }
    }

    #[test]
    fn the_monomial_two_cycle_is_weakly_periodic() {
        let monomial_src = "quiver {\n  vertices: 1 2;\n  arrows: a: 1 -> 2; b: 2 -> 1;\n}\nrelations {\n  a*b;\n  b*a;\n}\n";
        let spec = SbAlgebraSpec::parse(monomial_src).unwrap();
        let pd = PermissibleData::canonical(&spec);
        let cycles = zero_relation_cycles(&spec);
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 2);
        assert!(verify_weak_periodicity(&pd, &cycles[0]));
    }
}
