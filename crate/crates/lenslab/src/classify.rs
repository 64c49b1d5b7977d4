//! Sweeps over `(k, m)` assembling the engines into a classification of the
//! lens spaces `L(n,1)` reachable from `L(p,1)` by distance one surgery.

use crate::obstruct::{
    essential_case, essential_linking_form, reversal_negative_lens, reversal_witness, null_case, spin_deltad_check, DSource,
    ObstructError, Orientation, Verdict,
};
use crate::surgery::{is_prime, SurgeryProblem};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use thiserror::Error;

pub const DEFAULT_M_BOUND: i64 = 12;
pub const SCHEMA: &str = "1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("p = {0} must be a prime >= 5")]
    InvalidPrime(i64),
    #[error("k = {0} out of range")]
    InvalidK(i64),
    #[error("m bound {0} must be nonnegative")]
    InvalidBound(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub p: i64,
    pub k: i64,
    pub m: i64,
    pub n: i64,
    pub verdict: Verdict,
    pub engine: String,
}

/// Known constructions, as `(k, m, n, tag)`.
pub fn realizations(p: i64) -> Vec<(i64, i64, i64, &'static str)> {
    let mut v = vec![
        (0, 1, p, "null-unit"),
        (0, -1, p, "null-unit"),
        (2, -1, p + 4, "band-b"),
        (1, 1, p - 1, "band-c"),
        (1, -1, p + 1, "band-d"),
        (1, 0, 1, "to-sphere"),
        (1, 0, -1, "to-sphere"),
    ];
    if p == 5 {
        v.extend([(2, 1, 1, "to-sphere"), (2, 1, -1, "to-sphere"), (0, 1, -5, "orientation-reversal")]);
    }
    if p == 7 {
        v.push((2, 1, 3, "simple-knot"));
    }
    v
}

fn realization(p: i64, k: i64, m: i64, n: i64) -> Option<&'static str> {
    realizations(p)
        .into_iter()
        .find(|&(rk, rm, rn, _)| (rk, rm, rn) == (k, m, n))
        .map(|(_, _, _, t)| t)
}

fn undetermined(e: &ObstructError) -> Verdict {
    Verdict::Undetermined(e.to_string())
}

fn null_row(p: i64, m: i64, n: i64) -> (Verdict, &'static str) {
    if n % 2 == 0 {
        return match spin_deltad_check(p, n) {
            Ok(v) => (v, "spin"),
            Err(e) => (undetermined(&e), "spin"),
        };
    }
    let target = if n > 0 { Orientation::Positive } else { Orientation::Negative };
    let v = match null_case(p, m, target) {
        Ok(v) => v,
        Err(e) => return (undetermined(&e), "null"),
    };
    if v.is_obstructed() || n != -p {
        return (v, "null");
    }
    match reversal_negative_lens(p) {
        Ok(false) => (Verdict::Obstructed(reversal_witness(p)), "reversal"),
        Ok(true) => (v, "null"),
        Err(e) => (undetermined(&e), "reversal"),
    }
}

fn essential_row(sp: &SurgeryProblem, n: i64) -> (Verdict, &'static str) {
    if n % 2 == 0 {
        return match spin_deltad_check(sp.p, n) {
            Ok(v) => (v, "spin"),
            Err(e) => (undetermined(&e), "spin"),
        };
    }
    let first = match essential_case(sp, n, DSource::Auto) {
        Ok(v) if v.is_obstructed() => return (v, "essential"),
        Ok(v) => v,
        Err(e) => undetermined(&e),
    };
    match essential_linking_form(sp, n) {
        Ok(v) if v.is_obstructed() => (v, "linking"),
        _ => (first, "essential"),
    }
}

/// Verdict for one `(k, m, n)`, with the realization overlay applied.
pub fn evaluate_row(p: i64, k: i64, m: i64, n: i64) -> Row {
    let (mut verdict, mut engine) = if k == 0 {
        null_row(p, m, n)
    } else {
        essential_row(&SurgeryProblem { p, k, m }, n)
    };
    if !verdict.is_obstructed() {
        if let Some(tag) = realization(p, k, m, n) {
            verdict = Verdict::Realized(tag.into());
            engine = "realization";
        }
    }
    Row { p, k, m, n, verdict, engine: engine.into() }
}

// Every (k, m, n) with cyclic H₁ of order |n|.
fn candidates(p: i64, k: i64, bound: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for m in -bound..=bound {
        let h = if k == 0 {
            if m == 0 || m % p == 0 {
                continue;
            }
            p * m.abs()
        } else {
            (p * m - k * k).abs()
        };
        if h == 0 {
            continue;
        }
        out.push((m, h));
        out.push((m, -h));
    }
    out
}

fn check(p: i64, bound: i64) -> Result<(), ClassifyError> {
    if p < 5 || !is_prime(p) {
        return Err(ClassifyError::InvalidPrime(p));
    }
    if bound < 0 {
        return Err(ClassifyError::InvalidBound(bound));
    }
    Ok(())
}

fn sweep(p: i64, ks: &[i64], bound: i64) -> Vec<Row> {
    let jobs: Vec<(i64, i64, i64)> = ks
        .iter()
        .flat_map(|&k| candidates(p, k, bound).into_iter().map(move |(m, n)| (k, m, n)))
        .collect();
    let mut rows: Vec<Row> = jobs.into_par_iter().map(|(k, m, n)| evaluate_row(p, k, m, n)).collect();
    rows.sort_by_key(|r| (r.k, r.m, r.n));
    rows
}

/// Rows for one winding number.
pub fn classify_essential(p: i64, k: i64, m_bound: i64) -> Result<Vec<Row>, ClassifyError> {
    check(p, m_bound)?;
    if k < 1 || k > (p - 1) / 2 {
        return Err(ClassifyError::InvalidK(k));
    }
    Ok(sweep(p, &[k], m_bound))
}

fn surviving(rows: &[Row]) -> BTreeSet<i64> {
    rows.iter().filter(|r| !r.verdict.is_obstructed()).map(|r| r.n).collect()
}

/// Even `n` not ruled out over all winding numbers.
pub fn classify_even(p: i64) -> Result<BTreeSet<i64>, ClassifyError> {
    check(p, DEFAULT_M_BOUND)?;
    let ks: Vec<i64> = (0..=(p - 1) / 2).collect();
    let rows: Vec<Row> = sweep(p, &ks, DEFAULT_M_BOUND).into_iter().filter(|r| r.n % 2 == 0).collect();
    Ok(surviving(&rows))
}

/// `n` not ruled out for null-homologous knots.
pub fn classify_null(p: i64, m_bound: i64) -> Result<BTreeSet<i64>, ClassifyError> {
    check(p, m_bound)?;
    Ok(surviving(&sweep(p, &[0], m_bound)))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub realized: Vec<i64>,
    /// Not obstructed by any engine, no known construction.
    pub unknown_realization: Vec<i64>,
    pub undetermined: Vec<i64>,
    pub obstructed: Vec<i64>,
}

impl Summary {
    fn from_rows(rows: &[Row]) -> Summary {
        // Rank: realized > not obstructed > undetermined > obstructed.
        let mut best: BTreeMap<i64, u8> = BTreeMap::new();
        for r in rows {
            let rank = match r.verdict {
                Verdict::Realized(_) => 3,
                Verdict::NotObstructed(_) => 2,
                Verdict::Undetermined(_) => 1,
                Verdict::Obstructed(_) => 0,
            };
            let e = best.entry(r.n).or_insert(0);
            *e = (*e).max(rank);
        }
        let mut s = Summary::default();
        for (n, rank) in best {
            match rank {
                3 => s.realized.push(n),
                2 => s.unknown_realization.push(n),
                1 => s.undetermined.push(n),
                _ => s.obstructed.push(n),
            }
        }
        s
    }

    /// `n` that no engine rules out, realized or not.
    pub fn not_obstructed(&self) -> BTreeSet<i64> {
        self.realized.iter().chain(&self.unknown_realization).copied().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub schema: String,
    pub p: i64,
    pub m_bound: i64,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

pub fn classify_all(p: i64, m_bound: i64) -> Result<ClassificationReport, ClassifyError> {
    check(p, m_bound)?;
    let ks: Vec<i64> = (0..=(p - 1) / 2).collect();
    let rows = sweep(p, &ks, m_bound);
    let summary = Summary::from_rows(&rows);
    Ok(ClassificationReport { schema: SCHEMA.into(), p, m_bound, rows, summary })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl ClassificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!("# schema={}\np,k,m,n,verdict,engine,witness\n", self.schema);
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.p,
                r.k,
                r.m,
                r.n,
                r.verdict.label(),
                r.engine,
                csv_field(&r.verdict.detail())
            );
        }
        out
    }

    pub fn to_text(&self) -> String {
        let header = ["k", "m", "n", "verdict", "engine", "witness"];
        let cells: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.k.to_string(),
                    r.m.to_string(),
                    r.n.to_string(),
                    r.verdict.label().to_string(),
                    r.engine.clone(),
                    r.verdict.detail(),
                ]
            })
            .collect();
        let mut width = header.map(str::len);
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |row: &[String]| {
            let mut s = String::new();
            for (i, c) in row.iter().enumerate() {
                if i == row.len() - 1 {
                    s.push_str(c);
                } else if i < 3 {
                    let _ = write!(s, "{:>w$}  ", c, w = width[i]);
                } else {
                    let _ = write!(s, "{:<w$}  ", c, w = width[i]);
                }
            }
            s.trim_end().to_string()
        };
        let mut out = format!("schema {}  p = {}  m_bound = {}\n", self.schema, self.p, self.m_bound);
        out.push_str(&line(&header.map(String::from)));
        out.push('\n');
        for row in &cells {
            out.push_str(&line(row));
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(out, "realized: {}", join(&s.realized));
        let _ = writeln!(out, "not obstructed, realization unknown: {}", join(&s.unknown_realization));
        let _ = writeln!(out, "undetermined: {}", join(&s.undetermined));
        let nob: Vec<i64> = s.not_obstructed().into_iter().collect();
        let _ = writeln!(out, "not obstructed: {}", join(&nob));
        out
    }
}
