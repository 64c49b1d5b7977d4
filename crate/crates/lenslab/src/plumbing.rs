//! Plumbing graphs and the push-down algorithm for their d-invariants.
//!
//! A graph with weights `ω(v)` gives the intersection form `Q`. Characteristic
//! vectors are integer covectors `w` with `w_v ≡ ω(v) (mod 2)`; two are in the
//! same Spin^c class when `Q⁻¹(w - w')` lies in `2Zⁿ`. For a negative definite
//! graph with at most one bad vertex,
//!
//! ```text
//! d(∂X, t) = (max ⟨w,w⟩ + |G|) / 4,   ⟨w,w⟩ = w Q⁻¹ wᵀ,
//! ```
//!
//! and the maximum is attained by a box vector (`ω+2 ≤ w ≤ -ω`) whose
//! push-down path is maximising.

use crate::exactlat::{IntMatrix, LatError, Rational};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use thiserror::Error;

pub type CharVector = Vec<i64>;

/// Box enumeration refuses graphs whose box is larger than this.
pub const MAX_BOX: u64 = 1 << 28;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlumbingError {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid builder parameters: {0}")]
    InvalidParams(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("vertex {0} has weight >= 0, the box is empty")]
    EmptyBox(usize),
    #[error("push-down path revisited a vector")]
    CycleDetected,
    #[error("{0} classes have no maximising initiator")]
    ClassWithoutMaximiser(u64),
    #[error("characteristic vector has wrong length or parity")]
    NotCharacteristic,
    #[error("graph has no designated meridian vertex")]
    NotApplicable,
    #[error("box has {0} vectors, more than the enumeration limit")]
    BoxTooLarge(u64),
    #[error(transparent)]
    Lattice(#[from] LatError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlumbingGraph {
    weights: Vec<i64>,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    mu_vertex: Option<usize>,
}

impl PlumbingGraph {
    pub fn new(weights: Vec<i64>, edges: Vec<(usize, usize)>) -> Result<Self, PlumbingError> {
        let n = weights.len();
        if n == 0 {
            return Err(PlumbingError::InvalidGraph("no vertices".into()));
        }
        let mut seen = HashSet::new();
        let mut norm = Vec::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(PlumbingError::InvalidGraph(format!("edge ({a},{b}) out of range")));
            }
            if a == b {
                return Err(PlumbingError::InvalidGraph(format!("self-loop at {a}")));
            }
            let e = (a.min(b), a.max(b));
            if !seen.insert(e) {
                return Err(PlumbingError::InvalidGraph(format!("duplicate edge ({a},{b})")));
            }
            norm.push(e);
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        norm.sort_unstable();
        Ok(PlumbingGraph { weights, edges: norm, adj, mu_vertex: None })
    }

    pub fn with_mu_vertex(mut self, v: usize) -> Result<Self, PlumbingError> {
        if v >= self.len() {
            return Err(PlumbingError::InvalidGraph(format!("vertex {v} out of range")));
        }
        self.mu_vertex = Some(v);
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn mu_vertex(&self) -> Option<usize> {
        self.mu_vertex
    }

    pub fn intersection_form(&self) -> IntMatrix {
        let n = self.len();
        let mut rows = vec![vec![0i64; n]; n];
        for (v, row) in rows.iter_mut().enumerate() {
            row[v] = self.weights[v];
            for &u in &self.adj[v] {
                row[u] = 1;
            }
        }
        IntMatrix::from_i64(&rows).expect("square, nonempty")
    }

    pub fn bad_vertices(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&v| self.weights[v] > -(self.degree(v) as i64))
            .collect()
    }

    pub fn is_characteristic(&self, w: &[i64]) -> bool {
        w.len() == self.len() && w.iter().zip(&self.weights).all(|(a, b)| (a - b).rem_euclid(2) == 0)
    }

    fn box_radices(&self) -> Result<Vec<u64>, PlumbingError> {
        self.weights
            .iter()
            .enumerate()
            .map(|(v, &om)| if om <= -1 { Ok((-om) as u64) } else { Err(PlumbingError::EmptyBox(v)) })
            .collect()
    }

    pub fn box_size(&self) -> Result<u64, PlumbingError> {
        let mut total: u64 = 1;
        for r in self.box_radices()? {
            total = total.saturating_mul(r);
        }
        Ok(total)
    }

    // Mixed-radix decode, first vertex most significant (lexicographic order).
    fn box_vector(&self, radices: &[u64], mut idx: u64, out: &mut [i64]) {
        for v in (0..self.len()).rev() {
            let digit = (idx % radices[v]) as i64;
            idx /= radices[v];
            out[v] = self.weights[v] + 2 + 2 * digit;
        }
    }

    /// All characteristic vectors with `ω(v)+2 ≤ w_v ≤ -ω(v)`, lexicographically.
    pub fn char_box(&self) -> Result<Vec<CharVector>, PlumbingError> {
        let radices = self.box_radices()?;
        let total = self.box_size()?;
        if total > MAX_BOX {
            return Err(PlumbingError::BoxTooLarge(total));
        }
        let mut out = Vec::with_capacity(total as usize);
        let mut buf = vec![0i64; self.len()];
        for idx in 0..total {
            self.box_vector(&radices, idx, &mut buf);
            out.push(buf.clone());
        }
        Ok(out)
    }

    /// Follow the push-down path from `w0`, always at the lowest eligible vertex.
    pub fn push_down_path(&self, w0: &[i64]) -> Result<PushDown, PlumbingError> {
        if !self.is_characteristic(w0) {
            return Err(PlumbingError::NotCharacteristic);
        }
        let mut w = w0.to_vec();
        let mut saved = w.clone();
        let (mut power, mut lam) = (1u64, 0u64);
        loop {
            let mut target = None;
            for (v, (&x, &om)) in w.iter().zip(&self.weights).enumerate() {
                if x > -om {
                    return Ok(PushDown::NonMaximising);
                }
                if x == -om && target.is_none() {
                    target = Some(v);
                }
            }
            let Some(v) = target else {
                debug_assert!(w.iter().zip(&self.weights).all(|(&x, &om)| x >= om));
                return Ok(PushDown::Maximising(w));
            };
            w[v] += 2 * self.weights[v];
            for &u in &self.adj[v] {
                w[u] += 2;
            }
            // Brent: the map is deterministic, so a repeat means a cycle.
            lam += 1;
            if w == saved {
                return Err(PlumbingError::CycleDetected);
            }
            if lam == power {
                saved.clone_from(&w);
                power *= 2;
                lam = 0;
            }
        }
    }

    // Same as push_down_path on a scratch buffer, returning only the terminal.
    fn push_down_in_place(&self, w: &mut [i64], saved: &mut Vec<i64>) -> Result<bool, PlumbingError> {
        saved.clear();
        saved.extend_from_slice(w);
        let (mut power, mut lam) = (1u64, 0u64);
        loop {
            let mut target = usize::MAX;
            for v in 0..w.len() {
                let om = self.weights[v];
                if w[v] > -om {
                    return Ok(false);
                }
                if w[v] == -om && target == usize::MAX {
                    target = v;
                }
            }
            if target == usize::MAX {
                return Ok(true);
            }
            w[target] += 2 * self.weights[target];
            for &u in &self.adj[target] {
                w[u] += 2;
            }
            lam += 1;
            if w == saved.as_slice() {
                return Err(PlumbingError::CycleDetected);
            }
            if lam == power {
                saved.clear();
                saved.extend_from_slice(w);
                power *= 2;
                lam = 0;
            }
        }
    }

    fn check_preconditions(&self) -> Result<IntMatrix, PlumbingError> {
        let q = self.intersection_form();
        if !q.is_negative_definite()? {
            return Err(PlumbingError::PreconditionViolated("form is not negative definite".into()));
        }
        let bad = self.bad_vertices();
        if bad.len() > 1 {
            return Err(PlumbingError::PreconditionViolated(format!(
                "{} bad vertices, at most one allowed",
                bad.len()
            )));
        }
        Ok(q)
    }

    /// Box vectors that start a maximising path, with their terminals.
    pub fn maximising_initiators(&self) -> Result<Vec<(CharVector, CharVector)>, PlumbingError> {
        self.check_preconditions()?;
        let radices = self.box_radices()?;
        let total = self.box_size()?;
        if total > MAX_BOX {
            return Err(PlumbingError::BoxTooLarge(total));
        }
        let n = self.len();
        let found: Result<Vec<Vec<(CharVector, CharVector)>>, PlumbingError> = (0..total)
            .into_par_iter()
            .fold(
                || Ok((Vec::new(), vec![0i64; n], vec![0i64; n], Vec::with_capacity(n))),
                |acc, idx| {
                    let (mut hits, mut start, mut w, mut saved) = acc?;
                    self.box_vector(&radices, idx, &mut start);
                    w.copy_from_slice(&start);
                    if self.push_down_in_place(&mut w, &mut saved)? {
                        hits.push((start.clone(), w.clone()));
                    }
                    Ok((hits, start, w, saved))
                },
            )
            .map(|r| r.map(|(hits, _, _, _)| hits))
            .collect();
        let mut all: Vec<(CharVector, CharVector)> = found?.into_iter().flatten().collect();
        all.sort();
        Ok(all)
    }

    pub fn lattice(&self) -> Result<Lattice, PlumbingError> {
        Lattice::new(&self.intersection_form())
    }

    /// The d-invariant of every Spin^c structure on the boundary.
    pub fn d_plumbed(&self) -> Result<DTable, PlumbingError> {
        let lat = Lattice::new(&self.check_preconditions()?)?;
        let inits = self.maximising_initiators()?;
        let mut classes: BTreeMap<Vec<i64>, (CharVector, Rational, CharVector)> = BTreeMap::new();
        for (start, term) in inits {
            let key = lat.class_key(&start);
            let sq = lat.square(&start);
            match classes.get_mut(&key) {
                None => {
                    classes.insert(key, (term, sq, start));
                }
                Some(entry) => {
                    if term < entry.0 {
                        entry.0 = term;
                    }
                    if sq > entry.1 || (sq == entry.1 && start < entry.2) {
                        entry.1 = sq;
                        entry.2 = start;
                    }
                }
            }
        }
        let order = lat.order();
        if (classes.len() as u64) < order {
            return Err(PlumbingError::ClassWithoutMaximiser(order - classes.len() as u64));
        }
        let n = Rational::from_integer(BigInt::from(self.len() as i64));
        let four = Rational::from_integer(BigInt::from(4));
        let mut entries: Vec<DEntry> = classes
            .into_iter()
            .map(|(key, (canonical, sq, maximiser))| DEntry {
                class: SpincClass { canonical, key },
                d: (sq + &n) / &four,
                maximiser,
            })
            .collect();
        entries.sort_by(|a, b| a.class.canonical.cmp(&b.class.canonical));
        Ok(DTable { lattice: lat, entries })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexSpec {
    weight: i64,
}

/// On-disk form: `{"vertices":[{"weight":-2},...],"edges":[[0,1],...]}`,
/// with an optional `"mu_vertex"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<VertexSpec>,
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mu_vertex: Option<usize>,
}

impl PlumbingGraph {
    pub fn from_json(s: &str) -> Result<Self, PlumbingError> {
        let f: GraphFile = serde_json::from_str(s).map_err(|e| PlumbingError::InvalidGraph(e.to_string()))?;
        let g = PlumbingGraph::new(
            f.vertices.into_iter().map(|v| v.weight).collect(),
            f.edges.into_iter().map(|[a, b]| (a, b)).collect(),
        )?;
        match f.mu_vertex {
            Some(v) => g.with_mu_vertex(v),
            None => Ok(g),
        }
    }

    pub fn to_json(&self) -> String {
        let f = GraphFile {
            vertices: self.weights.iter().map(|&weight| VertexSpec { weight }).collect(),
            edges: self.edges.iter().map(|&(a, b)| [a, b]).collect(),
            mu_vertex: self.mu_vertex,
        };
        serde_json::to_string(&f).expect("graph serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PushDown {
    Maximising(CharVector),
    NonMaximising,
}

/// `Q` together with its adjugate, for class arithmetic.
#[derive(Debug, Clone)]
pub struct Lattice {
    det: i64,
    adj: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(q: &IntMatrix) -> Result<Self, PlumbingError> {
        let det = q.det().to_i64().ok_or(LatError::Overflow)?;
        if det == 0 {
            return Err(LatError::SingularMatrix.into());
        }
        let adj = q
            .adjugate()?
            .into_iter()
            .map(|row| row.into_iter().map(|x| x.to_i64().ok_or(LatError::Overflow)).collect())
            .collect::<Result<Vec<Vec<i64>>, LatError>>()?;
        Ok(Lattice { det, adj })
    }

    pub fn det(&self) -> i64 {
        self.det
    }

    /// Number of Spin^c structures, `|det Q|`.
    pub fn order(&self) -> u64 {
        self.det.unsigned_abs()
    }

    fn adj_times(&self, w: &[i64]) -> Vec<i128> {
        self.adj
            .iter()
            .map(|row| row.iter().zip(w).map(|(&a, &b)| a as i128 * b as i128).sum())
            .collect()
    }

    /// `adj(Q)·w mod 2|det|`; equal keys mean `w - w' ∈ 2Q·Zⁿ`.
    pub fn class_key(&self, w: &[i64]) -> Vec<i64> {
        let m = 2 * self.det.unsigned_abs() as i128;
        self.adj_times(w).into_iter().map(|x| x.rem_euclid(m) as i64).collect()
    }

    pub fn same_class(&self, a: &[i64], b: &[i64]) -> bool {
        self.class_key(a) == self.class_key(b)
    }

    /// `Q⁻¹ w` as exact rationals.
    pub fn solve(&self, w: &[i64]) -> Vec<Rational> {
        let d = BigInt::from(self.det);
        self.adj_times(w)
            .into_iter()
            .map(|x| Rational::new(BigInt::from(x), d.clone()))
            .collect()
    }

    /// `⟨w,w⟩ = w Q⁻¹ wᵀ`.
    pub fn square(&self, w: &[i64]) -> Rational {
        let aw = self.adj_times(w);
        let num: i128 = aw.iter().zip(w).map(|(&a, &b)| a * b as i128).sum();
        Rational::new(BigInt::from(num), BigInt::from(self.det))
    }

    /// `w ~ -w`, i.e. `Q⁻¹w` is integral.
    pub fn is_self_conjugate(&self, w: &[i64]) -> bool {
        crate::exactlat::is_integral_vector(&self.solve(w))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpincClass {
    /// Lexicographically smallest terminal of a maximising path in the class.
    pub canonical: CharVector,
    pub key: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DEntry {
    pub class: SpincClass,
    pub d: Rational,
    pub maximiser: CharVector,
}

#[derive(Debug, Clone)]
pub struct DTable {
    lattice: Lattice,
    pub entries: Vec<DEntry>,
}

impl DTable {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn class_of(&self, w: &[i64]) -> Option<&DEntry> {
        let key = self.lattice.class_key(w);
        self.entries.iter().find(|e| e.class.key == key)
    }

    pub fn d_values(&self) -> Vec<Rational> {
        let mut v: Vec<Rational> = self.entries.iter().map(|e| e.d.clone()).collect();
        v.sort();
        v
    }

    pub fn conjugate(&self, c: &SpincClass) -> &DEntry {
        let neg: Vec<i64> = c.canonical.iter().map(|x| -x).collect();
        self.class_of(&neg).expect("every class is present")
    }

    pub fn self_conjugate_classes(&self) -> Vec<&DEntry> {
        self.entries
            .iter()
            .filter(|e| self.lattice.is_self_conjugate(&e.class.canonical))
            .collect()
    }

    /// The class of `t + i*PD[μ]`, i.e. the canonical vector minus twice the
    /// dual of the meridian vertex.
    pub fn mu_shifted_class(&self, g: &PlumbingGraph, c: &SpincClass) -> Result<&DEntry, PlumbingError> {
        let mv = g.mu_vertex().ok_or(PlumbingError::NotApplicable)?;
        let mut w = c.canonical.clone();
        w[mv] -= 2;
        Ok(self.class_of(&w).expect("every class is present"))
    }
}

/// Self-conjugate classes of `g`.
pub fn self_conjugate_classes(g: &PlumbingGraph) -> Result<Vec<SpincClass>, PlumbingError> {
    let t = g.d_plumbed()?;
    Ok(t.self_conjugate_classes().into_iter().map(|e| e.class.clone()).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphFamily {
    /// Three arms of -2 chains (lengths m-k-1, p-k-1, k-1) on a -3 center.
    Star,
    /// (p,k) = (5,2), m <= -1.
    Neg52,
    /// (p,k) = (7,2), m <= -1.
    Neg72,
    /// (p,k) = (7,3), m <= 0.
    Neg73,
}

/// Arm lengths of the star graph, in vertex order.
pub fn star_arms(p: i64, k: i64, m: i64) -> Result<[usize; 3], PlumbingError> {
    if k < 1 {
        return Err(PlumbingError::InvalidParams(format!("star needs k >= 1, got {k}")));
    }
    let arms = [m - k - 1, p - k - 1, k - 1];
    if let Some(a) = arms.iter().find(|&&a| a < 0) {
        return Err(PlumbingError::InvalidParams(format!(
            "star arm of length {a} for (p,k,m) = ({p},{k},{m})"
        )));
    }
    Ok([arms[0] as usize, arms[1] as usize, arms[2] as usize])
}

/// Named graph families, with the meridian vertex marked where known.
pub fn build_family_graph(family: GraphFamily, p: i64, k: i64, m: i64) -> Result<PlumbingGraph, PlumbingError> {
    let bad = |msg: &str| Err(PlumbingError::InvalidParams(msg.to_string()));
    match family {
        GraphFamily::Star => {
            let arms = star_arms(p, k, m)?;
            let n: usize = arms.iter().sum::<usize>() + 1;
            let center = n - 1;
            let mut weights = vec![-2i64; n];
            weights[center] = -3;
            let mut edges = Vec::new();
            let mut start = 0;
            for len in arms {
                for i in 0..len {
                    let v = start + i;
                    edges.push(if i + 1 < len { (v, v + 1) } else { (v, center) });
                }
                start += len;
            }
            let g = PlumbingGraph::new(weights, edges)?;
            if arms[0] > 0 {
                g.with_mu_vertex(0)
            } else {
                Ok(g)
            }
        }
        GraphFamily::Neg52 => {
            if (p, k) != (5, 2) || m > -1 {
                return bad("Neg52 needs (p,k) = (5,2) and m <= -1");
            }
            PlumbingGraph::new(vec![-2, -2, -2, m - 2, -2], vec![(0, 1), (1, 4), (2, 4), (3, 4)])?
                .with_mu_vertex(3)
        }
        GraphFamily::Neg72 => {
            if (p, k) != (7, 2) || m > -1 {
                return bad("Neg72 needs (p,k) = (7,2) and m <= -1");
            }
            PlumbingGraph::new(
                vec![-2, -2, -2, -2, -2, m - 2, -2],
                vec![(0, 1), (1, 2), (2, 3), (3, 6), (4, 6), (5, 6)],
            )?
            .with_mu_vertex(5)
        }
        GraphFamily::Neg73 => {
            if (p, k) != (7, 3) || m > 0 {
                return bad("Neg73 needs (p,k) = (7,3) and m <= 0");
            }
            PlumbingGraph::new(
                vec![-2, -2, -2, -2, -2, m - 3, -2],
                vec![(0, 1), (1, 2), (2, 6), (3, 4), (4, 6), (5, 6)],
            )?
            .with_mu_vertex(5)
        }
    }
}

/// The `p x p` form of `X ∪ W`: a chain of `p-1` vertices of weight -2 and a
/// vertex of weight `m` pairing `k` with the first chain vertex.
pub fn two_handle_form(p: i64, k: i64, m: i64) -> Result<IntMatrix, PlumbingError> {
    if p < 2 {
        return Err(PlumbingError::InvalidParams("two-handle form needs p >= 2".into()));
    }
    let n = p as usize;
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n - 1 {
        rows[i][i] = -2;
        if i + 1 < n - 1 {
            rows[i][i + 1] = 1;
            rows[i + 1][i] = 1;
        }
    }
    rows[n - 1][n - 1] = m;
    rows[0][n - 1] = k;
    rows[n - 1][0] = k;
    Ok(IntMatrix::from_i64(&rows)?)
}

/// Named maximiser families of the star graph (`m >= k+3`, `k > 1`).
///
/// Labels follow `w^a_b(i,j)` with 1-based positions inside each arm.
pub fn star_maximiser_families(p: i64, k: i64, m: i64) -> Result<Vec<(String, CharVector)>, PlumbingError> {
    if k < 2 || m < k + 3 {
        return Err(PlumbingError::InvalidParams("families need k > 1 and m >= k+3".into()));
    }
    let arms = star_arms(p, k, m)?;
    let offs = [0, arms[0], arms[0] + arms[1]];
    let n = arms.iter().sum::<usize>() + 1;
    let vec_with = |twos: &[(usize, usize)], center: i64| {
        let mut w = vec![0i64; n];
        for &(arm, i) in twos {
            w[offs[arm] + i - 1] = 2;
        }
        w[n - 1] = center;
        w
    };
    let mut out = Vec::new();
    let pairs = [(0usize, 1usize, 1), (0, 2, 2), (1, 2, 3)];
    for (a, b, label) in pairs {
        for i in 1..=arms[a] {
            for j in 1..=arms[b] {
                out.push((format!("w{label}_2({i},{j})"), vec_with(&[(a, i), (b, j)], -1)));
            }
        }
    }
    for arm in 0..3 {
        for i in 1..=arms[arm] {
            for s in [1i64, -1] {
                out.push((format!("w{}_1({i},{s:+})", arm + 1), vec_with(&[(arm, i)], s)));
            }
        }
    }
    out.push(("w4_1".into(), vec_with(&[], 3)));
    out.push(("w1_0".into(), vec_with(&[], 1)));
    out.push(("w2_0".into(), vec_with(&[], -1)));
    Ok(out)
}

/// Maximisers of `t_M` and of the conjugate of `t_M + i*PD[μ]`.
pub fn tm_vectors(family: GraphFamily, p: i64, k: i64, m: i64) -> Result<(CharVector, CharVector), PlumbingError> {
    match family {
        GraphFamily::Star => {
            if k < 2 || m < k + 3 {
                return Err(PlumbingError::InvalidParams("needs k > 1 and m >= k+3".into()));
            }
            let arms = star_arms(p, k, m)?;
            let n = arms.iter().sum::<usize>() + 1;
            let mut t = vec![0i64; n];
            let mut c = vec![0i64; n];
            t[n - 1] = -1;
            c[n - 1] = -1;
            c[0] = 2;
            if k % 2 == 0 {
                let pos = arms[0] + arms[1] + (k / 2) as usize - 1;
                t[pos] = 2;
                c[pos] = 2;
            } else {
                let pos = arms[0] + ((p - k) / 2) as usize - 1;
                t[pos] = 2;
                c[pos] = 2;
            }
            Ok((t, c))
        }
        GraphFamily::Neg52 => {
            build_family_graph(family, p, k, m)?;
            Ok((vec![2, 0, 0, -m, 0], vec![0, 0, 2, m, 0]))
        }
        GraphFamily::Neg72 => {
            build_family_graph(family, p, k, m)?;
            Ok((vec![2, 0, 0, 0, 0, -m, 0], vec![0, 0, 0, 0, 2, m, 0]))
        }
        GraphFamily::Neg73 => {
            build_family_graph(family, p, k, m)?;
            Ok((vec![0, 0, 0, 0, 2, -m - 1, 0], vec![0, 2, 0, 0, 0, m - 1, 0]))
        }
    }
}

/// `d(M, t_M)` and `d(M, t_M + i*PD[μ])`, read off the push-down table.
/// The second value is `None` when the graph has no meridian vertex.
pub fn plumbed_tm_values(family: GraphFamily, p: i64, k: i64, m: i64) -> Result<(Rational, Option<Rational>), PlumbingError> {
    let g = build_family_graph(family, p, k, m)?;
    let table = g.d_plumbed()?;
    let sc = table.self_conjugate_classes();
    if sc.len() != 1 {
        return Err(PlumbingError::PreconditionViolated(format!(
            "{} self-conjugate classes, expected exactly one",
            sc.len()
        )));
    }
    let t = sc[0];
    let shifted = match table.mu_shifted_class(&g, &t.class) {
        Ok(e) => Some(e.d.clone()),
        Err(PlumbingError::NotApplicable) => None,
        Err(e) => return Err(e),
    };
    Ok((t.d.clone(), shifted))
}
