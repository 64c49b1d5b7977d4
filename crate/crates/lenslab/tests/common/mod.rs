//! Independent oracles shared by the integration tests and the acceptance run.
//! Nothing here calls into the library's arithmetic.
#![allow(dead_code)]

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;

pub type Q128 = Ratio<i128>;

pub fn q(n: i128, d: i128) -> Q128 {
    Q128::new(n, d)
}

/// Determinant by Laplace expansion along the first row.
pub fn det_laplace(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let sign = if c % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][c] as i128 * det_laplace(&minor(m, 0, c));
    }
    total
}

pub fn minor(m: &[Vec<i64>], r: usize, c: usize) -> Vec<Vec<i64>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != r)
        .map(|(_, row)| row.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, &x)| x).collect())
        .collect()
}

/// Adjugate from cofactors.
pub fn adj_cofactor(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut a = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            a[j][i] = sign * det_laplace(&minor(m, i, j));
        }
    }
    a
}

/// Sylvester's criterion for `-m`.
pub fn negative_definite(m: &[Vec<i64>]) -> bool {
    (1..=m.len()).all(|k| {
        let lead: Vec<Vec<i64>> = m[..k].iter().map(|r| r[..k].to_vec()).collect();
        let d = det_laplace(&lead);
        if k % 2 == 0 {
            d > 0
        } else {
            d < 0
        }
    })
}

pub fn form(weights: &[i64], edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let n = weights.len();
    let mut m = vec![vec![0i64; n]; n];
    for (i, &w) in weights.iter().enumerate() {
        m[i][i] = w;
    }
    for &(a, b) in edges {
        m[a][b] += 1;
        m[b][a] += 1;
    }
    m
}

/// d-invariants of a negative definite plumbing by direct maximisation of
/// `⟨w,w⟩` over each class, with the search radius grown until the maxima
/// stop changing between consecutive radii. Keys are `adj·w mod 2|det|` computed here.
pub struct BruteD {
    pub det: i128,
    pub classes: BTreeMap<Vec<i128>, (Vec<i64>, Q128)>,
}

pub fn brute_d(weights: &[i64], edges: &[(usize, usize)]) -> BruteD {
    let m = form(weights, edges);
    let n = m.len();
    let det = det_laplace(&m);
    let adj = adj_cofactor(&m);
    let modulus = 2 * det.abs();
    let key = |w: &[i64]| -> Vec<i128> {
        adj.iter()
            .map(|row| row.iter().zip(w).map(|(&a, &b)| a * b as i128).sum::<i128>().rem_euclid(modulus))
            .collect()
    };
    let square = |w: &[i64]| -> Q128 {
        let num: i128 = (0..n)
            .map(|i| (0..n).map(|j| w[i] as i128 * adj[i][j] * w[j] as i128).sum::<i128>())
            .sum();
        q(num, det)
    };

    // One characteristic representative per class.
    let mut reps: BTreeMap<Vec<i128>, Vec<i64>> = BTreeMap::new();
    let mut span = 2;
    while reps.len() as i128 != det.abs() {
        for w in odometer(&weights.iter().map(|&om| (-om.abs() - span, om.abs() + span, Some(om))).collect::<Vec<_>>()) {
            reps.entry(key(&w)).or_insert(w);
        }
        span += 2;
        assert!(span < 40, "representatives not found");
    }

    // ⟨c+2Qz, c+2Qz⟩ = ⟨c,c⟩ + 4(c·z + zᵀQz), so only the integer part moves.
    let gain = |c: &[i64], z: &[i64]| -> i128 {
        let mut g: i128 = c.iter().zip(z).map(|(&a, &b)| a as i128 * b as i128).sum();
        for i in 0..n {
            if z[i] == 0 {
                continue;
            }
            for j in 0..n {
                g += z[i] as i128 * m[i][j] as i128 * z[j] as i128;
            }
        }
        g
    };
    let mut classes = BTreeMap::new();
    for (k, c) in reps {
        // Centre the search at the rounded real optimum z = -Q⁻¹c/2.
        let centre: Vec<i64> = adj
            .iter()
            .map(|row| {
                let num = -row.iter().zip(&c).map(|(&a, &b)| a * b as i128).sum::<i128>();
                let den = 2 * det;
                let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
                (2 * num + den).div_euclid(2 * den) as i64
            })
            .collect();
        let mut best_prev: Option<(i128, Vec<i64>)> = None;
        let mut radius = 1i64;
        loop {
            let ranges: Vec<(i64, i64, Option<i64>)> = centre.iter().map(|&z| (z - radius, z + radius, None)).collect();
            let best = odometer(&ranges).into_iter().map(|z| (gain(&c, &z), z)).max_by(|a, b| a.0.cmp(&b.0)).unwrap();
            if let Some(prev) = &best_prev {
                if prev.0 == best.0 {
                    break;
                }
            }
            best_prev = Some(best);
            radius += 1;
            assert!(radius <= 4, "radius did not stabilise");
        }
        let (g, z) = best_prev.unwrap();
        let w: Vec<i64> = (0..n).map(|i| c[i] + 2 * (0..n).map(|j| m[i][j] * z[j]).sum::<i64>()).collect();
        let sq = square(&c) + Q128::from_integer(4 * g);
        classes.insert(k, (w, (sq + Q128::from_integer(n as i128)) / Q128::from_integer(4)));
    }
    BruteD { det, classes }
}

// All integer vectors with lo ≤ x ≤ hi per coordinate, optionally of fixed parity.
fn odometer(ranges: &[(i64, i64, Option<i64>)]) -> Vec<Vec<i64>> {
    let axes: Vec<Vec<i64>> = ranges
        .iter()
        .map(|&(lo, hi, par)| (lo..=hi).filter(|x| par.map_or(true, |p| (x - p).rem_euclid(2) == 0)).collect())
        .collect();
    let mut out = vec![vec![]];
    for axis in axes {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for v in &out {
            for &x in &axis {
                let mut w = v.clone();
                w.push(x);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// d(L(p,q), i) by the recursion, no caching, for p > q > 0 coprime.
pub fn lens_oracle(p: i128, q_: i128, i: i128) -> Q128 {
    if p == 1 {
        return Q128::from_integer(0);
    }
    let s = 2 * i + 1 - p - q_;
    q(-1, 4) + q(s * s, 4 * p * q_) - lens_oracle(q_, p % q_, i % q_)
}

pub fn ln1_formula(n: i128, i: i128) -> Q128 {
    q(-1, 4) + q((2 * i - n) * (2 * i - n), 4 * n)
}

/// Random trees on 3..=6 vertices with weights in [-4,-1] that are negative
/// definite with at most one bad vertex.
pub fn random_admissible(count: usize, seed: u64) -> Vec<(Vec<i64>, Vec<(usize, usize)>)> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=6);
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..=-1)).collect();
        let mut deg = vec![0i64; n];
        for &(a, b) in &edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        let bad = (0..n).filter(|&v| weights[v] > -deg[v]).count();
        if bad <= 1 && negative_definite(&form(&weights, &edges)) {
            out.push((weights, edges));
        }
    }
    out
}

pub fn rational_eq(a: &num_rational::BigRational, b: &Q128) -> bool {
    use num_traits::ToPrimitive;
    a.numer().to_i128() == Some(*b.numer()) && a.denom().to_i128() == Some(*b.denom())
}
