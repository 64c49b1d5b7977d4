//! Homology of `(mμ+λ)`-surgery on a knot `K` in `L(p,1)` with winding number `k`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurgeryError {
    #[error("invalid surgery problem: {0}")]
    InvalidParams(String),
    #[error("k = 0 uses the null-homologous formula")]
    NullHomologous,
    #[error("form [[p,k],[k,m]] is degenerate")]
    DegenerateForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurgeryProblem {
    pub p: i64,
    pub k: i64,
    pub m: i64,
}

pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl SurgeryProblem {
    pub fn new(p: i64, k: i64, m: i64) -> Result<Self, SurgeryError> {
        if p < 5 || !is_prime(p) {
            return Err(SurgeryError::InvalidParams(format!("p = {p} must be a prime >= 5")));
        }
        if k < 0 || k > (p - 1) / 2 {
            return Err(SurgeryError::InvalidParams(format!("k = {k} outside [0,{}]", (p - 1) / 2)));
        }
        Ok(SurgeryProblem { p, k, m })
    }

    /// `pm - k²`, the determinant of `[[p,k],[k,m]]`.
    pub fn det(&self) -> i64 {
        self.p * self.m - self.k * self.k
    }
}

/// `|pm - k²|`; zero means infinite first homology.
pub fn h1_order(sp: &SurgeryProblem) -> Result<u64, SurgeryError> {
    if sp.k == 0 {
        return Err(SurgeryError::NullHomologous);
    }
    Ok(sp.det().unsigned_abs())
}

/// `Z/p ⊕ Z/m` for surgery on a null-homologous knot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullHomology {
    pub p: i64,
    pub m: i64,
}

impl NullHomology {
    pub fn order(&self) -> u64 {
        self.p.unsigned_abs() * self.m.unsigned_abs()
    }
}

pub fn h1_null(p: i64, m: i64) -> NullHomology {
    NullHomology { p, m }
}

/// The cobordism is Spin iff the surgered manifold has even `|H₁|`.
pub fn is_spin_cobordism(sp: &SurgeryProblem) -> Result<bool, SurgeryError> {
    Ok(h1_order(sp)? % 2 == 0)
}

/// `(b⁺, b⁻)` of `[[p,k],[k,m]]`.
pub fn qz_b_plus_minus(sp: &SurgeryProblem) -> Result<(u32, u32), SurgeryError> {
    let d = sp.det();
    match d.signum() {
        0 => Err(SurgeryError::DegenerateForm),
        // p > 0, so a positive determinant means both eigenvalues are positive.
        1 => Ok((2, 0)),
        _ => Ok((1, 1)),
    }
}

/// Coefficients of the generator `θ = p′μ₀ + k′μ` and the relations it gives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyBasis {
    pub p_prime: i64,
    pub k_prime: i64,
    /// `[μ] = mu_coeff·[θ]`
    pub mu_coeff: i64,
    /// `[λ] = lambda_coeff·[θ]`
    pub lambda_coeff: i64,
}

impl HomologyBasis {
    pub fn new(p: i64, k: i64) -> Result<Self, SurgeryError> {
        if k == 0 {
            return Err(SurgeryError::NullHomologous);
        }
        let e = p.extended_gcd(&k);
        if e.gcd != 1 {
            return Err(SurgeryError::InvalidParams(format!("gcd({p},{k}) != 1")));
        }
        // x·p + y·k = 1, so k′ = x and p′ = -y give p·k′ - k·p′ = 1.
        Ok(HomologyBasis { p_prime: -e.y, k_prime: e.x, mu_coeff: p, lambda_coeff: -k * k })
    }

    /// The map `H₁(Y−K) → Z` sending `μ₀ ↦ -k`, `μ ↦ p`, evaluated on θ.
    pub fn theta_image(&self, p: i64, k: i64) -> i64 {
        self.p_prime * -k + self.k_prime * p
    }
}

/// Linking form of `(p,k,m)` surgery as the `q` of `L(|x|, q)`-type form `q/x`,
/// normalised to `[0, |x|)` by the sign of `x = pm - k²`.
pub fn linking_form(sp: &SurgeryProblem) -> Result<(i64, i64), SurgeryError> {
    let x = sp.det();
    if x == 0 {
        return Err(SurgeryError::DegenerateForm);
    }
    if sp.k == 0 {
        return Err(SurgeryError::NullHomologous);
    }
    // c·p - d·k² = 1
    let e = sp.p.extended_gcd(&(sp.k * sp.k));
    if e.gcd != 1 {
        return Err(SurgeryError::InvalidParams("p and k not coprime".into()));
    }
    let (c, d) = (e.x, -e.y);
    let y = c - d * sp.m;
    let ax = x.abs();
    Ok((ax, (x.signum() * y).rem_euclid(ax)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: i64, k: i64, m: i64) -> SurgeryProblem {
        SurgeryProblem::new(p, k, m).unwrap()
    }

    #[test]
    fn h1_examples() {
        assert_eq!(h1_order(&sp(5, 2, 1)).unwrap(), 1);
        assert_eq!(h1_order(&sp(7, 3, 0)).unwrap(), 9);
        assert_eq!(h1_order(&sp(7, 3, 2)).unwrap(), 5);
        assert_eq!(h1_order(&sp(5, 0, 1)), Err(SurgeryError::NullHomologous));
    }

    #[test]
    fn null_examples() {
        assert_eq!(h1_null(5, 3).order(), 15);
        assert_eq!(h1_null(5, 1).order(), 5);
        assert_eq!(h1_null(7, -3).order(), 21);
    }

    #[test]
    fn spin_examples() {
        assert!(is_spin_cobordism(&sp(5, 1, 1)).unwrap());
        assert!(!is_spin_cobordism(&sp(5, 2, 1)).unwrap());
        assert!(is_spin_cobordism(&sp(7, 2, 2)).unwrap());
    }

    #[test]
    fn b_plus_minus_examples() {
        assert_eq!(qz_b_plus_minus(&sp(5, 2, 1)).unwrap(), (2, 0));
        assert_eq!(qz_b_plus_minus(&sp(5, 2, 0)).unwrap(), (1, 1));
        assert_eq!(qz_b_plus_minus(&sp(5, 0, -3)).unwrap(), (1, 1));
        assert_eq!(qz_b_plus_minus(&sp(5, 0, 0)), Err(SurgeryError::DegenerateForm));
    }

    #[test]
    fn rejects_bad_problems() {
        assert!(SurgeryProblem::new(9, 1, 1).is_err());
        assert!(SurgeryProblem::new(3, 1, 1).is_err());
        assert!(SurgeryProblem::new(7, 4, 1).is_err());
    }

    #[test]
    fn linking_form_example() {
        // x = -9, y = 4
        assert_eq!(linking_form(&sp(7, 3, 0)).unwrap(), (9, 5));
    }
}
