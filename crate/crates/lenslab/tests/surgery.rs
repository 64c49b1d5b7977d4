mod common;

use common::det_laplace;
use lenslab::surgery::{
    h1_null, h1_order, is_spin_cobordism, linking_form, qz_b_plus_minus, HomologyBasis, SurgeryProblem,
};
use num_integer::Integer;
use proptest::prelude::*;
use std::collections::BTreeSet;

fn problem() -> impl Strategy<Value = SurgeryProblem> {
    prop::sample::select(vec![5i64, 7, 11, 13, 17])
        .prop_flat_map(|p| (Just(p), 1..=(p - 1) / 2, -40i64..=40))
        .prop_map(|(p, k, m)| SurgeryProblem::new(p, k, m).unwrap())
}

proptest! {
    #[test]
    fn order_is_form_determinant(sp in problem()) {
        let det = det_laplace(&[vec![sp.p, sp.k], vec![sp.k, sp.m]]);
        prop_assert_eq!(h1_order(&sp).unwrap() as i128, det.abs());
        prop_assert_eq!(is_spin_cobordism(&sp).unwrap(), det % 2 == 0);
    }

    #[test]
    fn b_plus_minus_from_trace_and_det(sp in problem()) {
        let det = sp.p * sp.m - sp.k * sp.k;
        prop_assume!(det != 0);
        let (bp, bm) = qz_b_plus_minus(&sp).unwrap();
        prop_assert_eq!(bp + bm, 2);
        let trace = sp.p + sp.m;
        let want = if det < 0 { (1, 1) } else if trace > 0 { (2, 0) } else { (0, 2) };
        prop_assert_eq!((bp, bm), want);
    }

    #[test]
    fn theta_generates(sp in problem()) {
        let b = HomologyBasis::new(sp.p, sp.k).unwrap();
        prop_assert_eq!(b.theta_image(sp.p, sp.k), 1);
        prop_assert_eq!(sp.p * b.k_prime - sp.k * b.p_prime, 1);
        // γ = mμ + λ is (pm - k²)θ.
        prop_assert_eq!(sp.m * b.mu_coeff + b.lambda_coeff, sp.det());
    }

    // The values v Q⁻¹ vᵀ mod 1 on Z² are the form q·a²/|x|.
    #[test]
    fn linking_form_matches_inverse_form(sp in problem()) {
        let x = sp.det();
        prop_assume!(x != 0 && x.abs() > 1);
        let (order, q) = linking_form(&sp).unwrap();
        prop_assert_eq!(order, x.abs());
        prop_assert_eq!(q.gcd(&order), 1);
        let adj = [[sp.m, -sp.k], [-sp.k, sp.p]];
        let mut oracle = BTreeSet::new();
        for a in 0..order {
            for b in 0..order {
                let v = a * a * adj[0][0] + 2 * a * b * adj[0][1] + b * b * adj[1][1];
                oracle.insert((x.signum() * v).rem_euclid(order));
            }
        }
        let lib: BTreeSet<i64> = (0..order).map(|a| (q * a % order * a).rem_euclid(order)).collect();
        prop_assert_eq!(lib, oracle);
    }
}

#[test]
fn null_homology() {
    assert_eq!(h1_null(5, 3).order(), 15);
    assert_eq!(h1_null(7, -2).order(), 14);
    assert!(h1_order(&SurgeryProblem::new(5, 0, 3).unwrap()).is_err());
}

#[test]
fn spin_parity_grid() {
    for p in [5i64, 7, 11, 13] {
        for k in 1..=(p - 1) / 2 {
            for m in -20..=20 {
                let sp = SurgeryProblem::new(p, k, m).unwrap();
                // p odd: pm - k² is even exactly when m and k have the same parity.
                assert_eq!(is_spin_cobordism(&sp).unwrap(), (m - k) % 2 == 0, "({p},{k},{m})");
            }
        }
    }
}
