//! Correction terms of lens spaces.
//!
//! `L(p,q)` with `p < 0` stands for the orientation reversal of `L(|p|,q)`;
//! labels are kept and values negated.

use crate::exactlat::{rat, Rational};
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LensError {
    #[error("invalid lens parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LensSpace {
    pub p: i64,
    pub q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self, LensError> {
        if p == 0 {
            return Err(LensError::InvalidParams("p must be nonzero".into()));
        }
        let a = p.abs();
        if a == 1 {
            return Ok(LensSpace { p, q: 0 });
        }
        if q <= 0 || q >= a || a.gcd(&q) != 1 {
            return Err(LensError::InvalidParams(format!(
                "need 0 < q < |p| with gcd(|p|,q) = 1, got L({p},{q})"
            )));
        }
        Ok(LensSpace { p, q })
    }

    pub fn order(&self) -> i64 {
        self.p.abs()
    }

    pub fn d(&self, i: i64) -> Result<Rational, LensError> {
        let a = self.p.abs();
        if i < 0 || i >= a {
            return Err(LensError::InvalidParams(format!("index {i} outside [0,{a})")));
        }
        if a == 1 {
            return Ok(Rational::zero());
        }
        let v = table(a, self.q)[i as usize].clone();
        Ok(if self.p < 0 { -v } else { v })
    }

    pub fn d_all(&self) -> Vec<Rational> {
        (0..self.order()).map(|i| self.d(i).expect("index in range")).collect()
    }
}

type Table = Arc<Vec<Rational>>;

fn cache() -> &'static Mutex<HashMap<(i64, i64), Table>> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64), Table>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

// All values of d(L(p,q), .) for p > q > 0 coprime, or p = 1.
fn table(p: i64, q: i64) -> Table {
    if p == 1 {
        return Arc::new(vec![Rational::zero()]);
    }
    if let Some(t) = cache().lock().expect("lens cache").get(&(p, q)) {
        return t.clone();
    }
    let r = p % q;
    let child = if q == 1 { table(1, 0) } else { table(q, r) };
    let t: Vec<Rational> = (0..p)
        .map(|i| {
            let s = 2 * i + 1 - p - q;
            rat(-1, 4) + rat(s * s, 4 * p * q) - &child[(i % q) as usize]
        })
        .collect();
    let t = Arc::new(t);
    cache().lock().expect("lens cache").insert((p, q), t.clone());
    t
}

/// d(L(p,q), i) by the recursion, for p > q > 0 coprime (or p = 1).
pub fn d_lens(p: i64, q: i64, i: i64) -> Result<Rational, LensError> {
    if p <= 0 {
        return Err(LensError::InvalidParams("d_lens needs p > 0".into()));
    }
    LensSpace::new(p, q)?.d(i)
}

/// Closed form for `L(n,1)`; negative `n` reverses orientation.
pub fn d_ln1(n: i64, i: i64) -> Result<Rational, LensError> {
    if n == 0 {
        return Err(LensError::InvalidParams("n must be nonzero".into()));
    }
    let a = n.abs();
    if i < 0 || i >= a {
        return Err(LensError::InvalidParams(format!("index {i} outside [0,{a})")));
    }
    let s = 2 * i - a;
    let v = rat(-1, 4) + rat(s * s, 4 * a);
    Ok(if n < 0 { -v } else { v })
}

/// Indices of the self-conjugate Spin^c structures under the recursion's labeling.
pub fn self_conjugate_indices(p: i64, q: i64) -> Result<Vec<i64>, LensError> {
    let l = LensSpace::new(p, q)?;
    let a = l.order();
    if a == 1 {
        return Ok(vec![0]);
    }
    let mut out = Vec::new();
    for twice in [a + l.q - 1, l.q - 1] {
        if twice % 2 == 0 {
            out.push((twice / 2).rem_euclid(a));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ClosedForm {
    PosZero,
    PosIndex,
    PosSelfConjugate,
    PosShifted,
    NegZero,
    NegIndex,
    NegSelfConjugate,
    NegShifted,
}

impl ClosedForm {
    pub const ALL: [ClosedForm; 8] = [
        ClosedForm::PosZero,
        ClosedForm::PosIndex,
        ClosedForm::PosSelfConjugate,
        ClosedForm::PosShifted,
        ClosedForm::NegZero,
        ClosedForm::NegIndex,
        ClosedForm::NegSelfConjugate,
        ClosedForm::NegShifted,
    ];

    fn positive_range(self) -> bool {
        matches!(self, ClosedForm::PosZero | ClosedForm::PosIndex | ClosedForm::PosSelfConjugate | ClosedForm::PosShifted)
    }

    /// The lens space and index the closed form evaluates, as `(p, q, i)`.
    /// `PosIndex`/`NegIndex` take their index from the caller.
    pub fn target(self, p: i64, m: i64, j: i64) -> (i64, i64, i64) {
        let n = if self.positive_range() { p * m - 1 } else { -p * m + 1 };
        match self {
            ClosedForm::PosZero | ClosedForm::NegZero => (n, 1, 0),
            ClosedForm::PosIndex | ClosedForm::NegIndex => (n, 1, j),
            ClosedForm::PosSelfConjugate | ClosedForm::NegSelfConjugate => (n, p, (p - 1) / 2),
            ClosedForm::PosShifted | ClosedForm::NegShifted => (n, p, (3 * p - 1) / 2),
        }
    }
}

/// Tabulated values for `L(pm-1, .)` (m >= 2) and `L(-pm+1, .)` (m <= -2).
/// `j` is only read by `PosIndex` and `NegIndex`.
pub fn d_closed_form(family: ClosedForm, p: i64, m: i64, j: i64) -> Result<Rational, LensError> {
    if p < 2 || p % 2 == 0 {
        return Err(LensError::InvalidParams(format!("p = {p} must be odd and >= 3")));
    }
    if family.positive_range() && m < 2 {
        return Err(LensError::InvalidParams(format!("{family:?} needs m >= 2")));
    }
    if !family.positive_range() && m > -2 {
        return Err(LensError::InvalidParams(format!("{family:?} needs m <= -2")));
    }
    let n = if family.positive_range() { p * m - 1 } else { -p * m + 1 };
    if matches!(family, ClosedForm::PosIndex | ClosedForm::NegIndex) && (j < 0 || j >= n) {
        return Err(LensError::InvalidParams(format!("index {j} outside [0,{n})")));
    }
    let sq = |x: i64| x * x;
    Ok(match family {
        ClosedForm::PosZero => rat(p * m - 2, 4),
        ClosedForm::PosIndex | ClosedForm::NegIndex => rat(-1, 4) + rat(sq(2 * j - n), 4 * n),
        ClosedForm::PosSelfConjugate => rat(m - 2, 4),
        ClosedForm::PosShifted => rat(p * m * m - (6 * p + 1) * m + 4 * p + 6, 4 * (p * m - 1)),
        ClosedForm::NegZero => rat(-p * m, 4),
        ClosedForm::NegSelfConjugate => rat(-m, 4),
        ClosedForm::NegShifted => rat(p * m * m + (4 * p - 1) * m + 4 * p - 4, 4 * (-p * m + 1)),
    })
}
