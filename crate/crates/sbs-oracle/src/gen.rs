//! Random valid presentations and random strips, for differential tests.
//!
//! The generator works backwards from the combinatorics: it draws a
//! 2-regular quiver, a walk successor for every arrow, compatible maximal
//! path lengths and an optional commutativity relation per vertex, then
//! renders the relation set those choices force and parses the result.

use rand::seq::SliceRandom;
use rand::Rng;
use sbs_permdata::PermissibleData;
use sbs_presentation::SbAlgebraSpec;
use sbs_quiver::{ArrowId, VertexId};
use sbs_strips::{strip_from_string, Strip, StringGraph};

/// A generated presentation together with the combinatorial choices it
/// was built from.
pub struct RandomSpec {
    pub source: String,
    pub spec: SbAlgebraSpec,
    /// Length of the longest nonzero path out of each arrow.
    pub a_by_arrow: Vec<usize>,
    /// One entry per commutativity relation: the first arrows of its two
    /// components.
    pub pins: Vec<(ArrowId, ArrowId)>,
}

/// Draw a valid presentation on a 2-regular quiver with `n_vertices`
/// vertices. Maximal paths have length at most four, so relation
/// components have length at most five.
pub fn random_spec(rng: &mut impl Rng, n_vertices: usize) -> RandomSpec {
    assert!((1..=8).contains(&n_vertices), "keep generated quivers small");
    loop {
        if let Some(found) = try_random_spec(rng, n_vertices) {
            return found;
        }
    }
}

fn try_random_spec(rng: &mut impl Rng, n: usize) -> Option<RandomSpec> {
    let n_arrows = 2 * n;

    // Vertex v owns the out-stubs of arrows 2v and 2v+1; a shuffled list
    // of in-stubs fixes the targets, making the quiver exactly 2-regular.
    let mut target: Vec<usize> = (0..n).flat_map(|v| [v, v]).collect();
    target.shuffle(rng);

    // At every vertex, match the two incoming arrows with the two
    // outgoing ones; the matching is the successor along the walks.
    let mut succ = vec![usize::MAX; n_arrows];
    for v in 0..n {
        let ins: Vec<usize> = (0..n_arrows).filter(|&x| target[x] == v).collect();
        let flip = usize::from(rng.gen_bool(0.5));
        succ[ins[0]] = 2 * v + flip;
        succ[ins[1]] = 2 * v + 1 - flip;
    }
    let mut pred = vec![usize::MAX; n_arrows];
    for x in 0..n_arrows {
        pred[succ[x]] = x;
    }

    // Maximal path lengths, drawn per successor cycle: along a walk the
    // length may drop by at most one per step.
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut seen = vec![false; n_arrows];
    for start in 0..n_arrows {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = succ[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = succ[x];
        }
        cycles.push(cycle);
    }
    let mut a = vec![0usize; n_arrows];
    for cycle in &cycles {
        let mut fits = false;
        for _ in 0..32 {
            for &x in cycle {
                a[x] = rng.gen_range(1..=4);
            }
            fits = cycle
                .iter()
                .enumerate()
                .all(|(k, &x)| a[cycle[(k + 1) % cycle.len()]] + 1 >= a[x]);
            if fits {
                break;
            }
        }
        if !fits {
            let level = rng.gen_range(1..=4);
            for &x in cycle {
                a[x] = level;
            }
        }
    }

    let walk_word = |x: usize, len: usize| {
        let mut word = vec![x];
        for _ in 1..len {
            word.push(succ[*word.last().unwrap()]);
        }
        word
    };

    // Optional commutativity relation per vertex. Both components must
    // be genuine maximal paths meeting at one socle vertex, the lengths
    // must not be exceeded by the walks arriving from behind, and no two
    // relations may share a source or socle vertex.
    let mut pins: Vec<(usize, usize)> = Vec::new();
    let mut used_socles: Vec<usize> = Vec::new();
    for v in 0..n {
        let (i, j) = (2 * v, 2 * v + 1);
        if a[i] < 2 || a[j] < 2 || a[pred[i]] > a[i] || a[pred[j]] > a[j] {
            continue;
        }
        let (li, lj) = (walk_word(i, a[i]), walk_word(j, a[j]));
        let (last_i, last_j) = (*li.last().unwrap(), *lj.last().unwrap());
        if last_i == last_j || target[last_i] != target[last_j] {
            continue;
        }
        if used_socles.contains(&target[last_i]) || !rng.gen_bool(0.6) {
            continue;
        }
        used_socles.push(target[last_i]);
        pins.push((i, j));
    }
    let components: Vec<Vec<usize>> =
        pins.iter().flat_map(|&(i, j)| [walk_word(i, a[i]), walk_word(j, a[j])]).collect();

    // Length-2 relations confine nonzero products to the walks; longer
    // monomials truncate each walk once it outlives its length budget.
    let mut monomials: Vec<Vec<usize>> = Vec::new();
    for x in 0..n_arrows {
        let v = target[x];
        for y in [2 * v, 2 * v + 1] {
            if y != succ[x] {
                monomials.push(vec![x, y]);
            }
        }
    }
    let pin_starts: Vec<usize> = pins.iter().flat_map(|&(i, j)| [i, j]).collect();
    for x in 0..n_arrows {
        if pin_starts.contains(&x) || a[succ[x]] < a[x] {
            continue;
        }
        let w = walk_word(x, a[x] + 1);
        if components.iter().any(|c| contains_subword(&w, c)) {
            continue;
        }
        monomials.push(w);
    }

    let arrow_name = |x: usize| char::from(b'a' + x as u8).to_string();
    let word_str = |w: &[usize]| w.iter().map(|&x| arrow_name(x)).collect::<Vec<_>>().join("*");
    let mut src = String::from("quiver {\n  vertices:");
    for v in 0..n {
        src += &format!(" {}", v + 1);
    }
    src += ";\n  arrows:";
    for x in 0..n_arrows {
        src += &format!(" {}: {} -> {};", arrow_name(x), x / 2 + 1, target[x] + 1);
    }
    src += "\n}\nrelations {\n";
    for m in &monomials {
        src += &format!("  {};\n", word_str(m));
    }
    for &(i, j) in &pins {
        src += &format!("  {} - {};\n", word_str(&walk_word(i, a[i])), word_str(&walk_word(j, a[j])));
    }
    src += "}\n";

    let spec = SbAlgebraSpec::parse(&src).ok()?;
    Some(RandomSpec {
        source: src,
        spec,
        a_by_arrow: a,
        pins: pins.into_iter().map(|(i, j)| (ArrowId(i), ArrowId(j))).collect(),
    })
}

fn contains_subword(hay: &[usize], needle: &[usize]) -> bool {
    !needle.is_empty() && hay.windows(needle.len()).any(|w| w == needle)
}

/// Grow a random strip by walking the ground quiver from a random
/// vertex, keeping only steps that extend a valid string for the
/// algebra. The result has at most `max_edges` edges and may be shorter
/// (possibly a bare simple module) when no extension fits.
pub fn random_strip(pd: &PermissibleData, rng: &mut impl Rng, max_edges: usize) -> Strip {
    let ground = pd.over().padded();
    let n_real = pd.over().n_ground_arrows();
    let start = VertexId(rng.gen_range(0..ground.n_vertices()));
    let mut steps: Vec<(ArrowId, bool)> = Vec::new();
    let budget = rng.gen_range(0..=max_edges);
    'grow: while steps.len() < budget {
        let mut candidates: Vec<(ArrowId, bool)> = (0..n_real)
            .map(ArrowId)
            .flat_map(|x| [(x, true), (x, false)])
            .collect();
        candidates.shuffle(rng);
        for cand in candidates {
            steps.push(cand);
            if let Ok(sg) = StringGraph::from_walk(ground, start, &steps) {
                if strip_from_string(pd, &sg).is_ok() {
                    continue 'grow;
                }
            }
            steps.pop();
        }
        break;
    }
    let sg = StringGraph::from_walk(ground, start, &steps).unwrap();
    strip_from_string(pd, &sg).unwrap()
}
