//! Simple knots `K(p,1,k)` in `L(p,1)` and the hat mapping cone of their
//! `(mμ+λ)`-surgeries.
//!
//! In a class the cone is the path
//! `… A_{r} – B_{r+D} – A_{r+D} – …` with `D = pm - k²`; `A_ξ` meets `B_ξ`
//! (vertical map) when its sign is `∘` or `+`, and `B_{ξ+D}` (horizontal map)
//! when it is `∘` or `-`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KnotError {
    #[error("invalid simple knot parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
    Circ,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
            Sign::Circ => 'o',
        }
    }

    fn vertical(self) -> bool {
        matches!(self, Sign::Plus | Sign::Circ)
    }

    fn horizontal(self) -> bool {
        matches!(self, Sign::Minus | Sign::Circ)
    }
}

fn check(p: i64, k: i64) -> Result<(), KnotError> {
    if p < 5 || !crate::surgery::is_prime(p) {
        return Err(KnotError::InvalidParams(format!("p = {p} must be a prime >= 5")));
    }
    if k < 1 || k > (p - 1) / 2 {
        return Err(KnotError::InvalidParams(format!("k = {k} outside [1,{}]", (p - 1) / 2)));
    }
    Ok(())
}

/// The `p` Alexander gradings of `K(p,1,k)`, sorted.
pub fn alexander_gradings(p: i64, k: i64) -> Result<Vec<i64>, KnotError> {
    check(p, k)?;
    let mut s = vec![0];
    let (step, count, scale, odd_max) = if k % 2 == 0 {
        (p - k, k / 2, k / 2, p - k - 2)
    } else {
        (k, (p - k) / 2, (p - k) / 2, k - 2)
    };
    for t in 1..=count {
        s.extend([step * t, -step * t]);
    }
    let mut odd = 1;
    while odd <= odd_max {
        s.extend([scale * odd, -scale * odd]);
        odd += 2;
    }
    s.sort_unstable();
    s.dedup();
    debug_assert_eq!(s.len() as i64, p);
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeDiagram {
    pub d: i64,
    pub residue: i64,
    pub lo: i64,
    pub hi: i64,
    /// Class positions in `[lo, hi]`, increasing.
    pub positions: Vec<i64>,
    pub signs: Vec<Sign>,
}

impl ConeDiagram {
    pub fn render(&self) -> String {
        self.signs.iter().map(|s| s.symbol().to_string()).collect::<Vec<_>>().join(" ")
    }

    pub fn sign_at(&self, xi: i64) -> Option<Sign> {
        self.positions.iter().position(|&x| x == xi).map(|i| self.signs[i])
    }

    // Path elements in order. A B-node is kept when some A-node maps to it.
    fn nodes(&self) -> Vec<Node> {
        let mut out = Vec::new();
        for (i, &x) in self.positions.iter().enumerate() {
            if self.signs[i].vertical() || (i > 0 && self.signs[i - 1].horizontal()) {
                out.push(Node::B(x));
            }
            out.push(Node::A(i));
        }
        if let (Some(&x), Some(s)) = (self.positions.last(), self.signs.last()) {
            if s.horizontal() {
                out.push(Node::B(x + self.d));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    A(usize),
    B(i64),
}

fn sign_of(s: &[i64], xi: i64) -> Sign {
    if s.binary_search(&xi).is_ok() {
        Sign::Circ
    } else if xi > 0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Signs of one class over `[-(max S + 2D), max S + 2D]`.
pub fn cone_diagram(p: i64, k: i64, m: i64, class_residue: i64) -> Result<ConeDiagram, KnotError> {
    let s = alexander_gradings(p, k)?;
    let d = p * m - k * k;
    if d <= 0 {
        return Err(KnotError::InvalidParams(format!("pm - k^2 = {d} must be positive")));
    }
    if class_residue < 0 || class_residue >= d {
        return Err(KnotError::InvalidParams(format!("residue {class_residue} outside [0,{d})")));
    }
    let top = s[s.len() - 1];
    let (lo, hi) = (-(top + 2 * d), top + 2 * d);
    let first = lo + (class_residue - lo).rem_euclid(d);
    let positions: Vec<i64> = (0..).map(|j| first + j * d).take_while(|&x| x <= hi).collect();
    let signs = positions.iter().map(|&x| sign_of(&s, x)).collect();
    Ok(ConeDiagram { d, residue: class_residue, lo, hi, positions, signs })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SummandType {
    /// `[-,+]`: A-nodes at both ends, homology in the top row.
    MinusPlus,
    /// `[+,-]`: B-nodes at both ends.
    PlusMinus,
    MinusMinus,
    PlusPlus,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub kind: SummandType,
    /// Positions of the A-nodes in the run.
    pub top: Vec<i64>,
}

/// Connected runs of the path, left to right.
pub fn summands(d: &ConeDiagram) -> Vec<Summand> {
    let nodes = d.nodes();
    let linked = |a: Node, b: Node| match (a, b) {
        (Node::B(_), Node::A(i)) => d.signs[i].vertical(),
        (Node::A(i), Node::B(_)) => d.signs[i].horizontal(),
        _ => false,
    };
    let mut out = Vec::new();
    let mut start = 0;
    for i in 0..nodes.len() {
        if i + 1 < nodes.len() && linked(nodes[i], nodes[i + 1]) {
            continue;
        }
        let run = &nodes[start..=i];
        let kind = match (run[0], run[run.len() - 1]) {
            (Node::A(_), Node::A(_)) => SummandType::MinusPlus,
            (Node::B(_), Node::B(_)) => SummandType::PlusMinus,
            (Node::A(_), Node::B(_)) => SummandType::MinusMinus,
            (Node::B(_), Node::A(_)) => SummandType::PlusPlus,
        };
        let top = run
            .iter()
            .filter_map(|n| if let Node::A(j) = n { Some(d.positions[*j]) } else { None })
            .collect();
        out.push(Summand { kind, top });
        start = i + 1;
    }
    out
}

/// Rank of `H_*` of the windowed cone over F₂ and the top-row positions
/// carrying a cycle.
pub fn summand_homology(d: &ConeDiagram) -> (usize, Vec<i64>) {
    let nodes = d.nodes();
    let a_count = d.positions.len();
    let b_pos: Vec<i64> = nodes.iter().filter_map(|n| if let Node::B(x) = n { Some(*x) } else { None }).collect();
    // Boundary matrix: one row per A, one column per B, as bitsets over B.
    let words = b_pos.len().div_ceil(64).max(1);
    let mut rows: Vec<Vec<u64>> = vec![vec![0; words]; a_count];
    for (i, &x) in d.positions.iter().enumerate() {
        let mut set = |pos: i64| {
            if let Ok(c) = b_pos.binary_search(&pos) {
                rows[i][c / 64] ^= 1 << (c % 64);
            }
        };
        if d.signs[i].vertical() {
            set(x);
        }
        if d.signs[i].horizontal() {
            set(x + d.d);
        }
    }
    // Row reduction tracking combinations of A-nodes gives a kernel basis.
    let aw = a_count.div_ceil(64).max(1);
    let mut combo: Vec<Vec<u64>> = (0..a_count)
        .map(|i| {
            let mut v = vec![0; aw];
            v[i / 64] |= 1 << (i % 64);
            v
        })
        .collect();
    let mut rank = 0;
    for col in 0..b_pos.len() {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(piv) = (rank..a_count).find(|&r| rows[r][w] & bit != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        combo.swap(rank, piv);
        for r in 0..a_count {
            if r != rank && rows[r][w] & bit != 0 {
                let (pr, pc) = (rows[rank].clone(), combo[rank].clone());
                rows[r].iter_mut().zip(&pr).for_each(|(a, b)| *a ^= b);
                combo[r].iter_mut().zip(&pc).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    let mut support = vec![false; a_count];
    for c in &combo[rank..] {
        for (i, s) in support.iter_mut().enumerate() {
            if c[i / 64] >> (i % 64) & 1 == 1 {
                *s = true;
            }
        }
    }
    let top = d.positions.iter().zip(&support).filter(|(_, &s)| s).map(|(&x, _)| x).collect();
    (a_count - rank + b_pos.len() - rank, top)
}

fn class_well_ordered(d: &ConeDiagram) -> bool {
    let sm = summands(d);
    let mid: Vec<&Summand> = sm.iter().filter(|s| s.kind == SummandType::MinusPlus).collect();
    if mid.len() != 1 || sm.iter().any(|s| s.kind == SummandType::PlusMinus) {
        return false;
    }
    let (left, right) = (mid[0].top[0], *mid[0].top.last().expect("nonempty run"));
    d.positions.iter().zip(&d.signs).all(|(&x, &s)| {
        (x >= left || s == Sign::Minus) && (x <= right || s == Sign::Plus)
    })
}

/// Every class has a single `[-,+]` summand, only `-` to its left and only `+`
/// to its right.
pub fn is_well_ordered(p: i64, k: i64, m: i64) -> Result<bool, KnotError> {
    let d = p * m - k * k;
    if d <= 0 {
        return Err(KnotError::InvalidParams(format!("pm - k^2 = {d} must be positive")));
    }
    for r in 0..d {
        if !class_well_ordered(&cone_diagram(p, k, m, r)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The class of `ξ₀ = 0` has rank one homology carried at position 0.
pub fn xi0_support_ok(p: i64, k: i64, m: i64) -> Result<bool, KnotError> {
    let diag = cone_diagram(p, k, m, 0)?;
    let (rank, top) = summand_homology(&diag);
    Ok(rank == 1 && top.contains(&0))
}
