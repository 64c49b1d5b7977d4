//! d-invariant obstructions to distance one surgery from `L(p,1)` to `L(n,1)`.

use crate::exactlat::{fmt_rational, int, rat, Rational};
use crate::lens::{d_closed_form, d_ln1, ClosedForm, LensError, LensSpace};
use crate::plumbing::{plumbed_tm_values, GraphFamily, PlumbingError};
use crate::simpleknot::{xi0_support_ok, KnotError};
use crate::surgery::{is_prime, linking_form, SurgeryError, SurgeryProblem};
use num_integer::{Integer, Roots};
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ObstructError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("outside the formula's hypotheses: {0}")]
    OutsideApplicability(String),
    #[error("no closed form for this case")]
    NoClosedForm,
    #[error(transparent)]
    Lens(#[from] LensError),
    #[error(transparent)]
    Plumbing(#[from] PlumbingError),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Knot(#[from] KnotError),
}

/// Why a case is impossible. Rationals are kept in `a/b` text form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    Negative { quantity: String, value: String },
    NonIntegral { quantity: String, value: String },
    /// Every branch value was tried against every `j` in `[lo, hi]`.
    NoRoot { quantity: String, branches: Vec<String>, lo: i64, hi: i64 },
    /// No self-conjugate class of `L(n,1)` sits at distance `1/4`.
    SpinDeltaD { n: i64 },
    LinkingForm { order: i64, q_candidate: i64, q_target: i64 },
    ImportedFact { statement: String },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Negative { quantity, value } => write!(f, "{quantity} = {value} < 0"),
            Witness::NonIntegral { quantity, value } => write!(f, "{quantity} = {value} not an integer"),
            Witness::NoRoot { quantity, branches, lo, hi } => {
                write!(f, "no j in [{lo},{hi}] for {quantity} with branch values {}", branches.join(","))
            }
            Witness::SpinDeltaD { n } => write!(f, "no self-conjugate class of L({n},1) differs by 1/4"),
            Witness::LinkingForm { order, q_candidate, q_target } => {
                write!(f, "{q_candidate} != {q_target}*a^2 mod {order}")
            }
            Witness::ImportedFact { statement } => write!(f, "{statement}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", content = "detail", rename_all = "snake_case")]
pub enum Verdict {
    Obstructed(Witness),
    NotObstructed(String),
    Realized(String),
    /// A needed input (e.g. a second d-value) is not available.
    Undetermined(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Obstructed(_) => "obstructed",
            Verdict::NotObstructed(_) => "not_obstructed",
            Verdict::Realized(_) => "realized",
            Verdict::Undetermined(_) => "undetermined",
        }
    }

    pub fn detail(&self) -> String {
        match self {
            Verdict::Obstructed(w) => w.to_string(),
            Verdict::NotObstructed(s) | Verdict::Realized(s) | Verdict::Undetermined(s) => s.clone(),
        }
    }

    pub fn is_obstructed(&self) -> bool {
        matches!(self, Verdict::Obstructed(_))
    }
}

/// Least integer root of `ax² + bx + c` in `[lo, hi]`.
pub fn quad_root_in_range(a: i64, b: i64, c: i64, lo: i64, hi: i64) -> Option<i64> {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let in_range = |x: i128| x >= lo as i128 && x <= hi as i128;
    let mut roots = Vec::new();
    if a == 0 {
        if b == 0 {
            return if c == 0 && lo <= hi { Some(lo) } else { None };
        }
        if (-c) % b == 0 {
            roots.push(-c / b);
        }
    } else {
        let disc = b * b - 4 * a * c;
        if disc < 0 {
            return None;
        }
        let s = disc.sqrt();
        if s * s != disc {
            return None;
        }
        for num in [-b - s, -b + s] {
            if num % (2 * a) == 0 {
                roots.push(num / (2 * a));
            }
        }
    }
    roots.into_iter().filter(|&x| in_range(x)).min().map(|x| x as i64)
}

/// `j² - pmj + p - mp`
pub fn null_equal_branch(p: i64, m: i64) -> (i64, i64, i64) {
    (1, -p * m, p - m * p)
}

/// `j² - pmj + pm + p`
pub fn null_lower_branch(p: i64, m: i64) -> (i64, i64, i64) {
    (1, -p * m, p * m + p)
}

/// `j² - (pm-k²)j + p + k² - mp`
pub fn star_equal_branch(p: i64, k: i64, m: i64) -> (i64, i64, i64) {
    (1, -(p * m - k * k), p + k * k - m * p)
}

/// `j² - (pm-k²)j + p + pm - k²`
pub fn star_lower_branch(p: i64, k: i64, m: i64) -> (i64, i64, i64) {
    (1, -(p * m - k * k), p + p * m - k * k)
}

fn check_prime(p: i64) -> Result<(), ObstructError> {
    if p < 5 || !is_prime(p) {
        return Err(ObstructError::InvalidParams(format!("p = {p} must be a prime >= 5")));
    }
    Ok(())
}

// Nonnegative integer, or the witness against it.
fn require_nonneg_int(quantity: &str, v: &Rational) -> Result<Rational, Witness> {
    if v.is_negative() {
        return Err(Witness::Negative { quantity: quantity.into(), value: fmt_rational(v) });
    }
    if !v.is_integer() {
        return Err(Witness::NonIntegral { quantity: quantity.into(), value: fmt_rational(v) });
    }
    Ok(v.clone())
}

// Search every index of L(n,1) for d = rhs(branch).
fn search_branches(n: i64, quantity: &str, branches: &[Rational], rhs: impl Fn(&Rational) -> Rational) -> Verdict {
    let order = n.abs();
    for b in branches {
        let want = rhs(b);
        for j in 0..order {
            if d_ln1(n, j).expect("index in range") == want {
                return Verdict::NotObstructed(format!("{quantity} = {} solved at j = {j}", fmt_rational(b)));
            }
        }
    }
    Verdict::Obstructed(Witness::NoRoot {
        quantity: quantity.into(),
        branches: branches.iter().map(fmt_rational).collect(),
        lo: 0,
        hi: order - 1,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    fn flip(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    fn sign(self) -> i64 {
        match self {
            Orientation::Positive => 1,
            Orientation::Negative => -1,
        }
    }
}

/// `s`-surgery (s odd) on a null-homologous knot in `L(p,1)` giving
/// `L(±p|s|, 1)`, with the sign taken from `target`.
pub fn null_case(p: i64, s: i64, target: Orientation) -> Result<Verdict, ObstructError> {
    check_prime(p)?;
    if s % 2 == 0 {
        return Err(ObstructError::InvalidParams(format!("surgery coefficient {s} must be odd")));
    }
    // Negative surgery: reverse orientation of everything.
    let (y, m, target) = if s > 0 { (p, s, target) } else { (-p, -s, target.flip()) };
    let n = target.sign() * p * m;
    let dy = d_ln1(y, 0)?;
    let n00 = (&dy + d_ln1(m, 0)? - d_ln1(n, 0)?) / int(2);
    let n00 = match require_nonneg_int("N00", &n00) {
        Ok(v) => v,
        Err(w) => return Ok(Verdict::Obstructed(w)),
    };
    if m == 1 {
        return Ok(Verdict::NotObstructed(format!("N00 = {}, no second equation for m = 1", fmt_rational(&n00))));
    }
    let mut branches = vec![n00.clone()];
    if n00 >= int(1) {
        branches.push(&n00 - int(1));
    }
    let base = dy + d_ln1(m, 1)?;
    Ok(search_branches(n, "N01", &branches, |b| &base - int(2) * b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DSource {
    ClosedForm,
    Plumbing,
    /// Closed form where one exists, push-down otherwise.
    Auto,
}

fn negative_family(p: i64, k: i64, m: i64) -> Option<GraphFamily> {
    match (p, k) {
        (5, 2) if m <= -1 => Some(GraphFamily::Neg52),
        (7, 2) if m <= -1 => Some(GraphFamily::Neg72),
        (7, 3) if m <= 0 => Some(GraphFamily::Neg73),
        _ => None,
    }
}

fn closed_form_values(sp: &SurgeryProblem) -> Result<(Rational, Option<Rational>), ObstructError> {
    let SurgeryProblem { p, k, m } = *sp;
    if k == 1 {
        return Ok(if m >= 2 {
            (d_closed_form(ClosedForm::PosSelfConjugate, p, m, 0)?, Some(d_closed_form(ClosedForm::PosShifted, p, m, 0)?))
        } else if m <= -2 {
            (-d_closed_form(ClosedForm::NegSelfConjugate, p, m, 0)?, Some(-d_closed_form(ClosedForm::NegShifted, p, m, 0)?))
        } else {
            return Err(ObstructError::NoClosedForm);
        });
    }
    let h = p * m - k * k;
    if k >= 2 && m >= k + 3 {
        let (t, c) = if k % 2 == 0 {
            (
                rat(m + p - 2 * k - 2, 4),
                rat(
                    p * m * m - (6 * p + 2 * k * p - p * p + k * k) * m + 4 * p + 6 * k * k + 2 * k * k * k - p * k * k,
                    4 * h,
                ),
            )
        } else {
            (rat(m - 2, 4), rat(p * m * m - (6 * p + k * k) * m + 6 * k * k + 4 * p, 4 * h))
        };
        return Ok((t, Some(c)));
    }
    match negative_family(p, k, m) {
        Some(GraphFamily::Neg52) => Ok((rat(m + 1, 4), Some(rat(-5 * m * m - 21 * m, 4 * (-5 * m + 4))))),
        Some(GraphFamily::Neg72) => Ok((rat(m + 3, 4), Some(rat(-7 * m * m - 45 * m, 4 * (-7 * m + 4))))),
        Some(GraphFamily::Neg73) => Ok((rat(m, 4), Some(rat(-7 * m * m - 19 * m + 8, 4 * (-7 * m + 9))))),
        _ => Err(ObstructError::NoClosedForm),
    }
}

fn computed_values(sp: &SurgeryProblem) -> Result<(Rational, Option<Rational>), ObstructError> {
    let SurgeryProblem { p, k, m } = *sp;
    if k == 1 {
        // M is the lens space L(pm-1, p).
        if m.abs() < 2 {
            return Err(ObstructError::OutsideApplicability(format!("no d-values for M at (p,1,{m})")));
        }
        let l = LensSpace::new(p * m - 1, p)?;
        return Ok((l.d((p - 1) / 2)?, Some(l.d((3 * p - 1) / 2)?)));
    }
    if m > k {
        let (t, c) = plumbed_tm_values(GraphFamily::Star, p, k, m)?;
        return Ok((t, c));
    }
    match negative_family(p, k, m) {
        Some(f) => Ok(plumbed_tm_values(f, p, k, m)?),
        None => Err(ObstructError::OutsideApplicability(format!(
            "no plumbing for M at (p,k,m) = ({p},{k},{m})"
        ))),
    }
}

/// `d(M, t_M)` and `d(M, t_M + i*PD[μ])`; the second is `None` when the
/// meridian class is not available.
pub fn essential_d_values(sp: &SurgeryProblem, source: DSource) -> Result<(Rational, Option<Rational>), ObstructError> {
    if sp.k == 0 {
        return Err(SurgeryError::NullHomologous.into());
    }
    match source {
        DSource::ClosedForm => closed_form_values(sp),
        DSource::Plumbing => computed_values(sp),
        DSource::Auto => match closed_form_values(sp) {
            Err(ObstructError::NoClosedForm) => computed_values(sp),
            r => r,
        },
    }
}

/// Checks the hypotheses on `(p,k,m)` under which the two surgery formulas hold.
pub fn essential_applicable(sp: &SurgeryProblem) -> Result<(), ObstructError> {
    let SurgeryProblem { p, k, m } = *sp;
    let h = sp.det();
    let outside = |msg: String| Err(ObstructError::OutsideApplicability(msg));
    if h > 0 {
        if h < 5 {
            return outside(format!("|H1| = {h} < 5"));
        }
        if 2 * p * (m - 1) >= (p + k) * k {
            return Ok(());
        }
        if (p == 5 || p == 7) && xi0_support_ok(p, k, m)? {
            return Ok(());
        }
        outside(format!("m = {m} below the bound for p = {p}, k = {k}"))
    } else {
        if h == -1 {
            return outside("|H1| = 1".into());
        }
        if p == 5 || p == 7 || 2 * p * (m + 1) <= (3 * k - p) * k {
            return Ok(());
        }
        outside(format!("m = {m} above the bound for p = {p}, k = {k}"))
    }
}

/// `(mμ+λ)`-surgery on a knot of winding number `k ≥ 1` giving `L(n,1)`, `n` odd.
pub fn essential_case(sp: &SurgeryProblem, n: i64, source: DSource) -> Result<Verdict, ObstructError> {
    let h = sp.det();
    if sp.k < 1 {
        return Err(SurgeryError::NullHomologous.into());
    }
    if n.abs() != h.abs() || n % 2 == 0 {
        return Err(ObstructError::InvalidParams(format!("n = {n} must be odd with |n| = |pm-k^2| = {}", h.abs())));
    }
    essential_applicable(sp)?;
    let (dt, dc) = essential_d_values(sp, source)?;
    let dy = d_ln1(n, 0)?;
    let positive = h > 0;
    let v = if positive { (&dt - &dy) / int(2) } else { (&dy - &dt) / int(2) };
    let v = match require_nonneg_int("V", &v) {
        Ok(v) => v,
        Err(w) => return Ok(Verdict::Obstructed(w)),
    };
    if v < int(2) {
        return Ok(Verdict::NotObstructed(format!("V = {} and V<2", fmt_rational(&v))));
    }
    let Some(dc) = dc else {
        return Ok(Verdict::Undetermined(format!(
            "V = {} but no meridian-shifted d-value",
            fmt_rational(&v)
        )));
    };
    let branches = [v.clone(), &v - int(1)];
    Ok(search_branches(n, "V_mu", &branches, |b| {
        if positive {
            &dc - int(2) * b
        } else {
            &dc + int(2) * b
        }
    }))
}

/// Spin cobordism with `b⁺ = 1` between `L(p,1)` and `L(n,1)`, `n` even:
/// some self-conjugate d-values must differ by exactly `1/4`.
pub fn spin_deltad_check(p: i64, n: i64) -> Result<Verdict, ObstructError> {
    check_prime(p)?;
    if n == 0 || n % 2 != 0 {
        return Err(ObstructError::InvalidParams(format!("n = {n} must be even and nonzero")));
    }
    let dp = d_ln1(p, 0)?;
    let quarter = rat(1, 4);
    for i in [0, n.abs() / 2] {
        let dn = d_ln1(n, i)?;
        let diff = &dn - &dp;
        if diff == -quarter.clone() || diff == quarter {
            return Ok(Verdict::NotObstructed(format!("d(L({n},1),{i}) - d(L({p},1),0) = {}", fmt_rational(&diff))));
        }
    }
    Ok(Verdict::Obstructed(Witness::SpinDeltaD { n }))
}

/// Cyclic linking forms `q_candidate/order` and `q_target/order` agree iff
/// `q_candidate ≡ q_target·a²` for some unit `a`.
pub fn linking_form_obstruct(order: i64, q_candidate: i64, q_target: i64) -> Result<Verdict, ObstructError> {
    if order <= 0 {
        return Err(ObstructError::InvalidParams(format!("order {order} must be positive")));
    }
    let (qc, qt) = (q_candidate.rem_euclid(order), q_target.rem_euclid(order));
    if order > 1 && (qc.gcd(&order) != 1 || qt.gcd(&order) != 1) {
        return Err(ObstructError::InvalidParams("forms must be units mod the order".into()));
    }
    if order == 1 {
        return Ok(Verdict::NotObstructed("trivial group".into()));
    }
    for a in 1..order {
        if a.gcd(&order) == 1 && (qt * (a * a % order)) % order == qc {
            return Ok(Verdict::NotObstructed(format!("a = {a}")));
        }
    }
    Ok(Verdict::Obstructed(Witness::LinkingForm { order, q_candidate, q_target }))
}

/// Compare the linking form of `(p,k,m)` surgery with that of `L(n,1)`.
pub fn essential_linking_form(sp: &SurgeryProblem, n: i64) -> Result<Verdict, ObstructError> {
    let (order, qc) = linking_form(sp)?;
    if order != n.abs() {
        return Err(ObstructError::InvalidParams(format!("|n| = {} but |H1| = {order}", n.abs())));
    }
    linking_form_obstruct(order, qc, n.signum())
}

fn is_squarefree(m: i64) -> bool {
    let mut d = 2;
    while d * d <= m {
        if m % (d * d) == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Imported fact: a distance one surgery on `L(m,1)` gives `-L(m,1)` iff `m ∈ {1,5}`.
pub fn reversal_negative_lens(m: i64) -> Result<bool, ObstructError> {
    if m <= 0 || m % 2 == 0 || !is_squarefree(m) {
        return Err(ObstructError::InvalidParams(format!("m = {m} must be positive, odd and squarefree")));
    }
    Ok(m == 1 || m == 5)
}

pub fn reversal_witness(m: i64) -> Witness {
    Witness::ImportedFact {
        statement: format!("distance one surgery from L({m},1) to L(-{m},1) exists only for m = 1, 5"),
    }
}
