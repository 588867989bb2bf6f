//! Plumbing builders and lens-space identification of linear chains.
//!
//! A weighted graph plumbs to a 4-manifold whose Kirby diagram has one
//! unknotted 0-framed... rather: one 2-handle per vertex, framed by the
//! weight, with a single clasp per edge. For a linear chain of weights
//! `-a1, ..., -ak` (all `ai >= 2`) the boundary is the lens space `L(p, q)`
//! with `p/q = [a1, ..., ak]` as a Hirzebruch-Jung fraction. The chains this
//! engine cares most about are the `c_p` configurations with boundary
//! `L(p^2, p-1)` and the rational balls `b_p` with the same boundary.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::handlebody::{ExtInt, HandleDecomposition, KnotTag, TwoHandle};
use crate::intalg::evaluate_hj;

/// Errors from plumbing constructions.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlumbingError {
    #[error("duplicate vertex label `{0}`")]
    DuplicateVertex(String),
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("loop edge at `{0}`")]
    LoopEdge(String),
    #[error("parallel edge between `{0}` and `{1}`")]
    ParallelEdge(String, String),
    #[error("lens-space identification needs every chain weight <= -2, got {0}")]
    NonHjWeight(BigInt),
    #[error("lens-space identification needs a nonempty chain")]
    EmptyChain,
    #[error("lens space L(p, q) needs 0 < q < p and gcd(p, q) = 1, got p = {p}, q = {q}")]
    BadLensParams { p: BigInt, q: BigInt },
    #[error("the configuration needs p >= 2, got {0}")]
    BadP(u32),
}

/// A simple weighted graph: vertices carry integer weights, edges are
/// unordered label pairs.
#[derive(Debug, Clone)]
pub struct PlumbingGraph {
    vertices: Vec<(String, BigInt)>,
    edges: Vec<(String, String)>,
}

impl PlumbingGraph {
    pub fn new(
        vertices: Vec<(String, BigInt)>,
        edges: Vec<(String, String)>,
    ) -> Result<Self, PlumbingError> {
        let mut seen = HashSet::new();
        for (label, _) in &vertices {
            if !seen.insert(label.clone()) {
                return Err(PlumbingError::DuplicateVertex(label.clone()));
            }
        }
        let mut edge_set = HashSet::new();
        for (a, b) in &edges {
            if a == b {
                return Err(PlumbingError::LoopEdge(a.clone()));
            }
            for end in [a, b] {
                if !seen.contains(end) {
                    return Err(PlumbingError::UnknownVertex(end.clone()));
                }
            }
            let key = if a < b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            if !edge_set.insert(key) {
                return Err(PlumbingError::ParallelEdge(a.clone(), b.clone()));
            }
        }
        Ok(PlumbingGraph { vertices, edges })
    }

    /// A linear chain with auto-generated labels `k1, k2, ...`.
    pub fn chain(weights: &[BigInt]) -> Self {
        let vertices: Vec<(String, BigInt)> = weights
            .iter()
            .enumerate()
            .map(|(i, w)| (format!("k{}", i + 1), w.clone()))
            .collect();
        let edges = (1..weights.len())
            .map(|i| (format!("k{i}"), format!("k{}", i + 1)))
            .collect();
        PlumbingGraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[(String, BigInt)] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }
}

/// Translates a plumbing graph into a handle decomposition: one 0-handle,
/// one unknotted 2-handle per vertex framed by its weight, linking 1 exactly
/// along edges.
pub fn from_plumbing(g: &PlumbingGraph) -> HandleDecomposition {
    let n = g.vertices.len();
    let two: Vec<TwoHandle> = g
        .vertices
        .iter()
        .map(|(label, w)| TwoHandle::new(label.clone(), ExtInt::known(w.clone()), KnotTag::Unknot))
        .collect();
    let mut linking = vec![vec![ExtInt::zero(); n]; n];
    for (i, (_, w)) in g.vertices.iter().enumerate() {
        linking[i][i] = ExtInt::known(w.clone());
    }
    let index = |label: &str| g.vertices.iter().position(|(l, _)| l == label).unwrap();
    for (a, b) in &g.edges {
        let (i, j) = (index(a), index(b));
        linking[i][j] = ExtInt::known(1);
        linking[j][i] = ExtInt::known(1);
    }
    HandleDecomposition::new(1, vec![], two, linking, vec![], 0, 0)
        .expect("plumbing translation is structurally valid")
}

/// Chain weights of the `c_p` configuration: `-(p+2), -2, ..., -2` with
/// `p - 1` entries.
pub fn cp_weights(p: u32) -> Vec<BigInt> {
    let mut w = vec![BigInt::from(-(i64::from(p) + 2))];
    w.extend((0..p.saturating_sub(2)).map(|_| BigInt::from(-2)));
    w
}

/// The negative-definite linear plumbing `c_p` whose boundary is
/// `L(p^2, p-1)`; the configuration removed by a rational blow-down.
pub fn c_p(p: u32) -> Result<HandleDecomposition, PlumbingError> {
    if p < 2 {
        return Err(PlumbingError::BadP(p));
    }
    let weights = cp_weights(p);
    let x = from_plumbing(&PlumbingGraph::chain(&weights));
    let lens = lens_space_of_chain(&weights).expect("c_p weights are all <= -2");
    let p_big = BigInt::from(p);
    let expected = LensSpace::new(&p_big * &p_big, p_big - 1u32)
        .expect("p^2 and p-1 are coprime with 0 < p-1 < p^2");
    assert!(
        lens_equivalent(&lens, &expected),
        "c_p boundary must be L(p^2, p-1)"
    );
    Ok(x)
}

/// The rational homology ball `b_p`: one 0-handle, one dotted circle, one
/// 2-handle running over it `p` times. Its framing is not determined by any
/// invariant in scope and stays unknown; `H_1 = Z/p`.
pub fn b_p(p: u32) -> Result<HandleDecomposition, PlumbingError> {
    if p < 2 {
        return Err(PlumbingError::BadP(p));
    }
    Ok(HandleDecomposition::new(
        1,
        vec!["d1".into()],
        vec![TwoHandle::new("k1", ExtInt::Unknown, KnotTag::Unknown)],
        vec![vec![ExtInt::Unknown]],
        vec![vec![BigInt::from(p)]],
        0,
        0,
    )
    .expect("b_p parts are structurally valid"))
}

/// A lens space `L(p, q)`, stored with `q` normalized to the least
/// representative of `{ +/- q^{+/-1} mod p }`. Orientation is not tracked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LensSpace {
    p: BigInt,
    q: BigInt,
}

impl LensSpace {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, PlumbingError> {
        let p = p.into();
        let q = q.into();
        if !(q.is_positive() && q < p) || !p.gcd(&q).is_one() {
            return Err(PlumbingError::BadLensParams { p, q });
        }
        let inv = mod_inverse(&q, &p).expect("q invertible mod p since gcd = 1");
        let candidates = [q.clone(), &p - &q, inv.clone(), &p - &inv];
        let q_norm = candidates.into_iter().min().unwrap();
        Ok(LensSpace { p, q: q_norm })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    /// The normalized second parameter.
    pub fn q(&self) -> &BigInt {
        &self.q
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

/// `x^{-1} mod m` for `m >= 2`.
fn mod_inverse(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = x.extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Identifies the boundary of a linear chain of 2-handles with weights
/// `<= -2` as a lens space, via the Hirzebruch-Jung fraction of the negated
/// weights.
pub fn lens_space_of_chain(weights: &[BigInt]) -> Result<LensSpace, PlumbingError> {
    if weights.is_empty() {
        return Err(PlumbingError::EmptyChain);
    }
    let mut coeffs = Vec::with_capacity(weights.len());
    for w in weights {
        if *w > BigInt::from(-2) {
            return Err(PlumbingError::NonHjWeight(w.clone()));
        }
        coeffs.push(-w);
    }
    let (p, q) = evaluate_hj(&coeffs).expect("coefficients >= 2 cannot hit a zero tail");
    LensSpace::new(p, q)
}

/// True when the two lens spaces are diffeomorphic (up to orientation):
/// equal `p` and `q' = +/- q^{+/-1} (mod p)`.
pub fn lens_equivalent(a: &LensSpace, b: &LensSpace) -> bool {
    // both stored normalized, so equivalence is equality of normal forms
    a == b
}

/// Reads the 2-handles of `x` as a linear chain, returning the weight list
/// when `x` is exactly a chain: fully known linking, off-diagonal entries 0
/// or 1 forming a path through every handle.
pub fn chain_weights(x: &HandleDecomposition) -> Option<Vec<BigInt>> {
    let n = x.two_handles().len();
    if n == 0 || !x.one_handles().is_empty() {
        return None;
    }
    let linking = x.known_linking()?;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            let v = linking.get(i, j);
            if v.is_zero() {
                continue;
            }
            if !v.is_one() {
                return None;
            }
            adj[i].push(j);
            adj[j].push(i);
        }
    }
    if n == 1 {
        return Some(vec![linking.get(0, 0).clone()]);
    }
    if adj.iter().any(|nb| nb.len() > 2) {
        return None;
    }
    let ends: Vec<usize> = (0..n).filter(|&i| adj[i].len() == 1).collect();
    if ends.len() != 2 {
        return None;
    }
    // walk the path from one end
    let mut order = vec![ends[0]];
    let mut prev = None;
    while order.len() < n {
        let here = *order.last().unwrap();
        let next = adj[here].iter().copied().find(|&v| Some(v) != prev)?;
        prev = Some(here);
        order.push(next);
    }
    // a cycle plus isolated vertices could fake the degree profile
    let mut seen = HashSet::new();
    if !order.iter().all(|i| seen.insert(*i)) {
        return None;
    }
    Some(
        order
            .into_iter()
            .map(|i| linking.get(i, i).clone())
            .collect(),
    )
}
