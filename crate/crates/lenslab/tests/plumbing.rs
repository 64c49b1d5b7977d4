mod common;

use common::{brute_d, det_laplace, random_admissible, rational_eq};
use lenslab::exactlat::rat;
use lenslab::lens::LensSpace;
use lenslab::plumbing::{
    build_family_graph, two_handle_form, tm_vectors, plumbed_tm_values, GraphFamily, PlumbingGraph,
};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn lens_multiset(p: i64, q: i64) -> Vec<lenslab::exactlat::Rational> {
    let mut v = LensSpace::new(p, q).unwrap().d_all();
    v.sort();
    v
}

#[test]
fn stars_that_are_lens_spaces() {
    for ((p, k, m), (n, q)) in [((5, 2, 3), (11, 3)), ((7, 2, 3), (17, 3)), ((7, 3, 4), (19, 4))] {
        let g = build_family_graph(GraphFamily::Star, p, k, m).unwrap();
        assert_eq!(g.d_plumbed().unwrap().d_values(), lens_multiset(n, q), "({p},{k},{m})");
    }
}

// With k = 1 and pm-1 odd the star is L(pm-1, p), t_M sits at (p-1)/2 and the shifted class at (3p-1)/2.
#[test]
fn k_one_star_is_lens() {
    for p in [5, 7, 11] {
        for m in (2..=8).step_by(2) {
            let (dt, dc) = plumbed_tm_values(GraphFamily::Star, p, 1, m).unwrap();
            let l = LensSpace::new(p * m - 1, p).unwrap();
            assert_eq!(dt, l.d((p - 1) / 2).unwrap(), "t_M at ({p},1,{m})");
            if m >= 3 {
                assert_eq!(dc.unwrap(), l.d((3 * p - 1) / 2).unwrap(), "shift at ({p},1,{m})");
            }
        }
    }
}

#[test]
fn named_vectors_are_the_maximisers() {
    let cases = [
        (GraphFamily::Star, 5, 2, 5),
        (GraphFamily::Star, 7, 3, 6),
        (GraphFamily::Star, 7, 2, 7),
        (GraphFamily::Neg52, 5, 2, -3),
        (GraphFamily::Neg72, 7, 2, -1),
        (GraphFamily::Neg73, 7, 3, -2),
    ];
    for (f, p, k, m) in cases {
        let g = build_family_graph(f, p, k, m).unwrap();
        let table = g.d_plumbed().unwrap();
        let lat = table.lattice();
        let (t, c) = tm_vectors(f, p, k, m).unwrap();
        assert!(lat.is_self_conjugate(&t), "{f:?}({m}) t_M");
        let te = table.class_of(&t).unwrap();
        assert_eq!(te.d, (lat.square(&t) + rat(g.len() as i64, 1)) / rat(4, 1));
        let shifted = table.mu_shifted_class(&g, &te.class).unwrap();
        let conj = table.conjugate(&shifted.class);
        assert_eq!(conj.class, table.class_of(&c).unwrap().class, "{f:?}({m}) companion class");
        assert_eq!(conj.d, (lat.square(&c) + rat(g.len() as i64, 1)) / rat(4, 1));
    }
}

#[test]
fn neg52_candidates() {
    for m in [-1i64, -2, -3, -5] {
        let g = build_family_graph(GraphFamily::Neg52, 5, 2, m).unwrap();
        let mut want = BTreeSet::new();
        for j in (m..=-m).filter(|j| (j - m) % 2 == 0) {
            want.extend([vec![2, 0, 0, j, 0], vec![0, 0, 2, j, 0], vec![0, 0, 0, j, 0]]);
        }
        for j in (m..=-m - 2).filter(|j| (j - m) % 2 == 0) {
            want.extend([vec![0, 2, 0, j, 0], vec![0, 0, 0, j, 2]]);
        }
        want.insert(vec![0, 0, 0, -m + 2, 0]);
        let got: BTreeSet<Vec<i64>> = g.maximising_initiators().unwrap().into_iter().map(|(s, _)| s).collect();
        assert_eq!(got.len() as i64, -5 * m + 4);
        assert_eq!(got, want, "m = {m}");
    }
}

#[test]
fn two_handle_determinant() {
    for p in [5i64, 7, 11] {
        for k in 1..=(p - 1) / 2 {
            for m in -4..=4 {
                let q = two_handle_form(p, k, m).unwrap();
                let rows = q.to_i64_rows().unwrap();
                let det = det_laplace(&rows);
                assert_eq!(q.det(), BigInt::from(det));
                // The displayed form has |det| = k²(p-1)+mp, whose parity can differ from pm-k².
                assert_eq!(det.abs() as i64, (k * k * (p - 1) + m * p).abs(), "({p},{k},{m})");
            }
        }
    }
}

#[test]
fn stars_match_brute_force() {
    for (p, k, m) in [(5, 2, 4), (5, 2, 5), (7, 2, 3), (7, 3, 5)] {
        let g = build_family_graph(GraphFamily::Star, p, k, m).unwrap();
        let brute = brute_d(g.weights(), g.edges());
        let table = g.d_plumbed().unwrap();
        assert_eq!(table.len() as i128, brute.det.abs());
        for (w, d) in brute.classes.values() {
            assert!(rational_eq(&table.class_of(w).unwrap().d, d), "({p},{k},{m}) at {w:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_graphs_match_brute_force(seed in any::<u64>()) {
        let (w, e) = random_admissible(1, seed).pop().unwrap();
        let g = PlumbingGraph::new(w, e).unwrap();
        let brute = brute_d(g.weights(), g.edges());
        let table = g.d_plumbed().unwrap();
        prop_assert_eq!(table.len() as i128, brute.det.abs());
        for (v, d) in brute.classes.values() {
            prop_assert!(rational_eq(&table.class_of(v).unwrap().d, d));
        }
        let sc = table.self_conjugate_classes().len();
        if brute.det % 2 != 0 {
            prop_assert_eq!(sc, 1);
        } else {
            prop_assert!(sc >= 2);
        }
    }

    #[test]
    fn conjugate_classes_share_d(seed in any::<u64>()) {
        let (w, e) = random_admissible(1, seed).pop().unwrap();
        let g = PlumbingGraph::new(w, e).unwrap();
        let table = g.d_plumbed().unwrap();
        for entry in &table.entries {
            prop_assert_eq!(&table.conjugate(&entry.class).d, &entry.d);
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let (w, e) = random_admissible(1, seed).pop().unwrap();
        let g = PlumbingGraph::new(w, e).unwrap();
        prop_assert_eq!(PlumbingGraph::from_json(&g.to_json()).unwrap(), g);
    }
}

#[test]
fn preconditions_are_enforced() {
    let indefinite = PlumbingGraph::new(vec![-1, -1], vec![(0, 1)]).unwrap();
    assert!(indefinite.d_plumbed().is_err());
    let two_bad = PlumbingGraph::new(vec![-1, -2, -2, -1], vec![(0, 1), (1, 2), (2, 3), ]).unwrap();
    assert!(two_bad.d_plumbed().is_err());
}
