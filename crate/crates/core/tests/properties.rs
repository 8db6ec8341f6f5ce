//! Semantic properties of the slice constructions and morphism tests,
//! checked against exhaustive model enumeration.

mod common;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use relgraph::graph::{
    add_arc, difference_slice, eliminate_id_arc, glue_slice, graph_of_slice, Arc, Label, NodeId, Slice,
};
use relgraph::morphism::{find_morphism, is_erasable, is_zero_slice};
use relgraph::semantics::{eval_label, graph_extension, holds, natural_model, satisfies, slice_extension, Model};

const NAMES: [&str; 2] = ["p", "q"];

/// Every model with one name up to size 3 and two names up to size 2.
fn each_small_model(mut f: impl FnMut(&Model)) {
    for size in 1..=3 {
        common::for_each_model(size, &["p"], &mut f);
    }
    for size in 1..=2 {
        common::for_each_model(size, &NAMES, &mut f);
    }
}

fn pick(rng: &mut StdRng, s: &Slice) -> NodeId {
    let nodes: Vec<NodeId> = s.nodes().iter().copied().collect();
    nodes[rng.gen_range(0..nodes.len())]
}

/// A slice made zero by construction: `t` glued at `(u, v)` plus `u ~t v`.
fn zero_slice(rng: &mut StdRng) -> Slice {
    let n = rng.gen_range(1..=3);
    let s = common::slice(rng, n, &NAMES, 1);
    let k = rng.gen_range(1..=3);
    let t = common::slice(rng, k, &NAMES, 1);
    let u = pick(rng, &s);
    let v = if t.input() == t.output() { u } else { pick(rng, &s) };
    let glued = glue_slice(&s, u, v, &t);
    add_arc(&glued, Arc::new(u, Label::compl_slice(&t), v))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructed_zero_slices_are_zero_and_empty(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = zero_slice(&mut rng);
        prop_assert!(is_zero_slice(&s).is_some(), "{}", s);
        each_small_model(|m| assert!(slice_extension(m, &s).is_empty(), "{s} in {m:?}"));
    }

    #[test]
    fn zero_detection_is_sound_on_random_slices(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=4);
        let s = common::slice(&mut rng, n, &NAMES, 2);
        if is_zero_slice(&s).is_some() {
            each_small_model(|m| assert!(slice_extension(m, &s).is_empty(), "{s} in {m:?}"));
        }
    }

    #[test]
    fn pinned_morphisms_shrink_extensions(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let (n, k) = (rng.gen_range(1..=3), rng.gen_range(1..=4));
        let src = common::slice(&mut rng, n, &NAMES, 1);
        let dst = common::slice(&mut rng, k, &NAMES, 1);
        let mut pinned = std::collections::BTreeMap::new();
        pinned.insert(src.input(), dst.input());
        if src.output() != src.input() {
            pinned.insert(src.output(), dst.output());
        } else if dst.output() != dst.input() {
            return Ok(());
        }
        if find_morphism(src.draft(), dst.draft(), &pinned).is_some() {
            each_small_model(|m| {
                assert!(slice_extension(m, &dst).is_subset(&slice_extension(m, &src)), "{dst} into {src}");
            });
        }
    }

    #[test]
    fn erasure_is_sound_under_its_hypotheses(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let h = rng.gen_range(1..=2);
        let hyp = common::slice(&mut rng, h, &NAMES, 1);
        let n = rng.gen_range(1..=4);
        let s = common::slice(&mut rng, n, &NAMES, 1);
        let hyps = [hyp];
        if is_erasable(&s, &hyps).is_some() {
            each_small_model(|m| {
                if hyps.iter().all(|h| slice_extension(m, h).is_empty()) {
                    assert!(slice_extension(m, &s).is_empty(), "{s} under {}", hyps[0]);
                }
            });
        }
    }

    #[test]
    fn identity_arc_elimination_preserves_extension(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=3);
        let s = common::slice(&mut rng, n, &NAMES, 1);
        let (w, z) = (pick(&mut rng, &s), pick(&mut rng, &s));
        let a = Arc::new(w, Label::Id, z);
        let with_id = add_arc(&s, a.clone());
        let out = eliminate_id_arc(&with_id, &a).unwrap();
        each_small_model(|m| {
            assert_eq!(slice_extension(m, &with_id), slice_extension(m, &out), "{with_id}");
        });
    }

    #[test]
    fn complement_of_small_slice_is_its_complemented_arcs(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let s = common::slice(&mut rng, 2, &NAMES, 1);
        if s.input() == s.output() {
            return Ok(());
        }
        let g = graph_of_slice(&s).unwrap();
        let l = Label::compl_slice(&s);
        each_small_model(|m| assert_eq!(eval_label(m, &l), graph_extension(m, g.iter()), "{s}"));
    }

    #[test]
    fn natural_model_satisfies_positive_drafts(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let d = common::draft(&mut rng, n, &NAMES, 0);
        let (m, nodes) = natural_model(&d);
        let assignment = nodes.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        prop_assert!(satisfies(&m, &d, &assignment));
    }

    #[test]
    fn inclusion_holds_iff_difference_slice_is_empty(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let inc = common::inclusion(&mut rng, &NAMES, 3);
        let ds = difference_slice(Label::from(&inc.lhs), Label::from(&inc.rhs));
        each_small_model(|m| assert_eq!(holds(m, &inc), slice_extension(m, &ds).is_empty(), "{inc}"));
    }
}
