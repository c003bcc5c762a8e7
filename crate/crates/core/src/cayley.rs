//! Cayley graphs of the affine group `Aff(F_p)` and their subdivisions,
//! which have bounded degree and a highly repeated second eigenvalue.

use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeType, Graph};
use crate::mult_bound::{certified_mult_upper, MULT_TOL};
use crate::spectra::adjacency_spectrum;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Smallest generator of `F_p^×` for an odd prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidArgument("p must be odd".into()));
    }
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    Ok((2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).expect("a primitive root exists"))
}

/// The map `x ↦ ax + b` over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffElement {
    pub a: u64,
    pub b: u64,
    pub p: u64,
}

impl AffElement {
    pub fn new(a: u64, b: u64, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if a == 0 || a >= p || b >= p {
            return Err(Error::InvalidArgument(format!("({a}, {b}) is not in Aff(F_{p})")));
        }
        Ok(AffElement { a, b, p })
    }

    pub fn inverse(self) -> AffElement {
        let p = self.p;
        let ai = pow_mod(self.a, p - 2, p);
        AffElement { a: ai, b: (p - mul_mod(self.b, ai, p)) % p, p }
    }

    pub fn apply(self, x: u64) -> u64 {
        (mul_mod(self.a, x, self.p) + self.b) % self.p
    }

    /// Vertex index `(a − 1)p + b`.
    pub fn index(self) -> usize {
        ((self.a - 1) * self.p + self.b) as usize
    }

    pub fn from_index(i: usize, p: u64) -> AffElement {
        let i = i as u64;
        AffElement { a: i / p + 1, b: i % p, p }
    }
}

impl Mul for AffElement {
    type Output = AffElement;

    /// Apply `self`, then `other`: `(a, b)·(c, d) = (ac, bc + d)`.
    fn mul(self, other: AffElement) -> AffElement {
        let p = self.p;
        AffElement { a: mul_mod(self.a, other.a, p), b: (mul_mod(self.b, other.a, p) + other.b) % p, p }
    }
}

/// 4-regular Cayley graph with connection set `{s₁^{±1}, s₂^{±1}}`,
/// `s₁ = (g, 0)` for the least primitive root `g` and `s₂ = (1, 1)`.
/// Edges are `{x, x·s}`; `s₁` edges are `type_i`, `s₂` edges `type_ii`.
pub fn aff_cayley(p: u64) -> Result<Graph> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::InvalidArgument(format!("p must be at least 5, got {p}")));
    }
    let g = primitive_root(p)?;
    let s1 = AffElement { a: g, b: 0, p };
    let s2 = AffElement { a: 1, b: 1, p };
    let n = (p * (p - 1)) as usize;
    let mut out = Graph::new(n);
    for i in 0..n {
        let x = AffElement::from_index(i, p);
        out.add_labeled_edge(i, (x * s1).index(), EdgeType::TypeI);
        out.add_labeled_edge(i, (x * s2).index(), EdgeType::TypeIi);
    }
    Ok(out)
}

/// `⌈log₂ p⌉`.
pub fn default_subdivision(p: u64) -> usize {
    (64 - (p - 1).leading_zeros()) as usize
}

/// Every `type_ii` edge replaced by a path of `length` edges.
pub fn subdivided_aff(p: u64, length: Option<usize>) -> Result<Graph> {
    let g = aff_cayley(p)?;
    g.subdivide_edges(EdgeType::TypeIi, length.unwrap_or_else(|| default_subdivision(p)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondMultiplicity {
    pub n: usize,
    pub lambda2: f64,
    pub mult: usize,
    /// `√(n / log₂ n)`.
    pub target: f64,
}

pub fn measure_second_multiplicity(g: &Graph, tol: f64) -> Result<SecondMultiplicity> {
    if g.n() < 2 {
        return Err(Error::TooSmall { needed: 2, got: g.n() });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let spec = adjacency_spectrum(g);
    let lambda2 = spec.values[1];
    let n = g.n();
    Ok(SecondMultiplicity {
        n,
        lambda2,
        mult: spec.multiplicity_report(lambda2, tol).count,
        target: (n as f64 / (n as f64).log2()).sqrt(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub p: u64,
    pub n: usize,
    pub lambda2: f64,
    pub measured: usize,
    pub r: usize,
    pub s: usize,
    pub bound: usize,
    pub bound_over_n: f64,
}

/// Measured second multiplicity and the best certified bound over the
/// `(r, s)` grid for each `p`. The minimum of sound bounds is sound.
pub fn scaling_report(ps: &[u64], rs: &[usize], ss: &[usize]) -> Result<Vec<ScalingRow>> {
    let mut rows = Vec::new();
    for &p in ps {
        let g = subdivided_aff(p, None)?;
        let m = measure_second_multiplicity(&g, MULT_TOL)?;
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in rs {
            for &s in ss {
                let b = certified_mult_upper(&g, m.lambda2, r, s)?;
                if best.is_none_or(|(_, _, x)| b.bound < x) {
                    best = Some((r, s, b.bound));
                }
            }
        }
        let (r, s, bound) = best.ok_or_else(|| Error::InvalidArgument("empty parameter grid".into()))?;
        rows.push(ScalingRow {
            p,
            n: g.n(),
            lambda2: m.lambda2,
            measured: m.mult,
            r,
            s,
            bound,
            bound_over_n: bound as f64 / g.n() as f64,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(5).unwrap(), 2);
        assert_eq!(primitive_root(7).unwrap(), 3);
        assert_eq!(primitive_root(3).unwrap(), 2);
        assert_eq!(primitive_root(23).unwrap(), 5);
        assert!(matches!(primitive_root(9), Err(Error::NotPrime(9))));
        assert!(primitive_root(2).is_err());
    }

    #[test]
    fn group_law() {
        let p = 5;
        let all: Vec<AffElement> = (0..20).map(|i| AffElement::from_index(i, p)).collect();
        for &x in &all {
            assert_eq!(x * x.inverse(), AffElement { a: 1, b: 0, p });
            for &y in &all {
                for t in 0..p {
                    assert_eq!((x * y).apply(t), y.apply(x.apply(t)));
                }
                for &z in &all {
                    assert_eq!(x * y * z, x * (y * z));
                }
            }
        }
        assert!(AffElement::new(0, 1, 5).is_err());
        assert!(AffElement::new(1, 1, 6).is_err());
    }

    #[test]
    fn cayley_shape() {
        let g = aff_cayley(5).unwrap();
        assert_eq!((g.n(), g.edge_count()), (20, 40));
        assert!(g.degrees().iter().all(|&d| d == 4));
        assert!(g.is_connected());
        assert!(g.labels_consistent());
        let ti = g.edges_of_type(EdgeType::TypeI);
        assert_eq!(ti.components().len(), 5);
        assert!(ti.components().iter().all(|c| c.len() == 4));
        assert_eq!(adjacency_spectrum(&ti).multiplicity(2.0, 1e-8), 5);
        let g7 = aff_cayley(7).unwrap();
        assert_eq!(g7.n(), 42);
        assert_eq!(g7.max_degree(), 4);
        assert!(aff_cayley(3).is_err());
        assert!(aff_cayley(8).is_err());
    }

    #[test]
    fn subdivisions() {
        assert_eq!(default_subdivision(5), 3);
        assert_eq!(default_subdivision(8), 3);
        assert_eq!(default_subdivision(13), 4);
        assert_eq!(subdivided_aff(5, Some(3)).unwrap().n(), 60);
        assert_eq!(subdivided_aff(5, Some(1)).unwrap(), aff_cayley(5).unwrap());
        let g = subdivided_aff(13, None).unwrap();
        assert_eq!(g.n(), 624);
        assert_eq!(g.max_degree(), 4);
        assert!(g.is_connected());
    }

    #[test]
    fn second_multiplicity() {
        // numpy oracle: λ₂ ≈ 2.7642532165704417 with multiplicity 4
        let m = measure_second_multiplicity(&subdivided_aff(5, None).unwrap(), 1e-8).unwrap();
        assert_eq!((m.n, m.mult), (60, 4));
        assert!((m.lambda2 - 2.7642532165704417).abs() < 1e-9);
        let k = measure_second_multiplicity(&Graph::complete(6), 1e-8).unwrap();
        assert_eq!(k.mult, 5);
        assert!((k.lambda2 + 1.0).abs() < 1e-12);
        let two = Graph::disjoint_union(&[Graph::path(2), Graph::path(2)]);
        assert!(matches!(measure_second_multiplicity(&two, 1e-8), Err(Error::Disconnected)));
    }
}
