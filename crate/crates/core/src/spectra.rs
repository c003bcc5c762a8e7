//! Adjacency spectra, multiplicity clustering, local spectral radii and
//! exact closed-walk counts.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{symmetric_eigenvalues, SymMatrix};

/// Slack used when checking Cauchy interlacing numerically.
pub const INTERLACING_SLACK: f64 = 1e-7;

/// Eigenvalues sorted descending, with the tolerance used to group them
/// into clusters when counting multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub cluster_tol: f64,
}

/// Result of a tolerance-based multiplicity query.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultiplicityReport {
    pub count: usize,
    /// Distance from the target to the nearest eigenvalue outside the
    /// cluster (`inf` if none).
    pub gap: f64,
    pub well_separated: bool,
}

impl Spectrum {
    /// Spectrum with the default tolerance `1e-8 · max(1, λ₁)`.
    pub fn new(values: Vec<f64>) -> Self {
        let top = values.first().copied().unwrap_or(0.0);
        let cluster_tol = 1e-8 * top.abs().max(1.0);
        Spectrum { values, cluster_tol }
    }

    pub fn with_tol(values: Vec<f64>, cluster_tol: f64) -> Self {
        assert!(cluster_tol > 0.0, "cluster tolerance must be positive");
        Spectrum { values, cluster_tol }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn multiplicity(&self, lam: f64, tol: f64) -> usize {
        self.multiplicity_report(lam, tol).count
    }

    /// Counts eigenvalues within `tol` of `lam` and reports the gap to the
    /// closest excluded one; warns when that gap is below `10 · tol`.
    pub fn multiplicity_report(&self, lam: f64, tol: f64) -> MultiplicityReport {
        let mut count = 0;
        let mut gap = f64::INFINITY;
        for &x in &self.values {
            let d = (x - lam).abs();
            if d <= tol {
                count += 1;
            } else {
                gap = gap.min(d);
            }
        }
        let well_separated = gap >= 10.0 * tol;
        if !well_separated {
            log::warn!("eigenvalue cluster at {lam} is ill-separated: gap {gap:e} < 10·{tol:e}");
        }
        MultiplicityReport { count, gap, well_separated }
    }

    /// Distinct clusters as (representative, multiplicity), descending.
    pub fn clusters(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &x in &self.values {
            match out.last_mut() {
                Some((rep, m)) if (*rep - x).abs() <= self.cluster_tol => *m += 1,
                _ => out.push((x, 1)),
            }
        }
        out
    }

    /// One eigenvalue per line with 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for x in &self.values {
            s.push_str(&format!("{x:.16e}\n"));
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Spectrum> {
        let values = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{l:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Spectrum::new(values))
    }
}

/// Eigenvalues of a symmetric matrix.
pub fn eigen_sym(m: &SymMatrix) -> Result<Spectrum> {
    Ok(Spectrum::new(symmetric_eigenvalues(m)?))
}

pub fn adjacency_spectrum(g: &Graph) -> Spectrum {
    eigen_sym(&g.adjacency()).expect("adjacency matrices are symmetric and finite")
}

pub fn lambda1(g: &Graph) -> Result<f64> {
    if g.n() == 0 {
        return Err(Error::TooSmall { needed: 1, got: 0 });
    }
    if g.edge_count() == 0 {
        return Ok(0.0);
    }
    Ok(adjacency_spectrum(g).values[0])
}

pub fn lambda2(g: &Graph) -> Result<f64> {
    if g.n() < 2 {
        return Err(Error::TooSmall { needed: 2, got: g.n() });
    }
    Ok(adjacency_spectrum(g).values[1])
}

/// Largest eigenvalue of the radius-`s` ball around `v`.
pub fn local_radius(g: &Graph, v: usize, s: usize) -> Result<f64> {
    let (ball, _) = g.ball(v, s)?;
    lambda1(&ball)
}

/// `(A^len)_{vv}`: closed walks of length `len` at `v`, counted exactly.
pub fn closed_walks(g: &Graph, v: usize, len: usize) -> Result<BigUint> {
    g.check_vertex(v)?;
    if len == 0 || len % 2 == 1 {
        return Err(Error::InvalidArgument(format!("walk length must be even and positive, got {len}")));
    }
    // walks never leave the radius len/2 ball
    let (ball, map) = g.ball(v, len / 2)?;
    let root = map.binary_search(&v).expect("center lies in its ball");
    let nb: Vec<Vec<usize>> = (0..ball.n()).map(|u| ball.neighbors(u).collect()).collect();
    let mut counts = vec![BigUint::zero(); ball.n()];
    counts[root] = BigUint::from(1u32);
    for _ in 0..len {
        let next: Vec<BigUint> =
            nb.iter().map(|ns| ns.iter().fold(BigUint::zero(), |acc, &w| acc + &counts[w])).collect();
        counts = next;
    }
    Ok(counts.swap_remove(root))
}

/// `tr A^len` as an exact integer.
pub fn total_closed_walks(g: &Graph, len: usize) -> Result<BigUint> {
    let mut total = BigUint::zero();
    for v in 0..g.n() {
        total += closed_walks(g, v, len)?;
    }
    Ok(total)
}

/// Whether the spectrum of `sub` (order n-1) interlaces `full` (order n).
pub fn interlaces(full: &[f64], sub: &[f64], slack: f64) -> bool {
    if sub.len() + 1 != full.len() {
        return false;
    }
    sub.iter().enumerate().all(|(i, &mu)| full[i] + slack >= mu && mu + slack >= full[i + 1])
}

/// Cauchy interlacing between `g` and `g - v`.
pub fn interlacing_check(g: &Graph, v: usize) -> Result<bool> {
    g.check_vertex(v)?;
    if g.n() < 2 {
        return Err(Error::TooSmall { needed: 2, got: g.n() });
    }
    let full = adjacency_spectrum(g);
    let (h, _) = g.remove_vertices(&[v]);
    let sub = adjacency_spectrum(&h);
    Ok(interlaces(&full.values, &sub.values, INTERLACING_SLACK))
}

pub(crate) fn biguint_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::NamedGraph;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn known_spectra() {
        let s2 = 2f64.sqrt();
        assert!(close(&adjacency_spectrum(&Graph::path(2)).values, &[1.0, -1.0]));
        assert!(close(&adjacency_spectrum(&Graph::complete(3)).values, &[2.0, -1.0, -1.0]));
        assert!(close(&adjacency_spectrum(&Graph::path(3)).values, &[s2, 0.0, -s2]));
    }

    #[test]
    fn multiplicities() {
        let tri = adjacency_spectrum(&Graph::complete(3));
        assert_eq!(tri.multiplicity(-1.0, 1e-8), 2);
        let k7 = adjacency_spectrum(&Graph::complete(7));
        assert_eq!(k7.multiplicity(-1.0, 1e-8), 6);
        let edges: Vec<Graph> = (0..5).map(|_| Graph::path(2)).collect();
        let m = adjacency_spectrum(&Graph::disjoint_union(&edges));
        assert_eq!(m.multiplicity(1.0, 1e-8), 5);
        let rep = m.multiplicity_report(1.0, 1e-8);
        assert!(rep.well_separated && (rep.gap - 2.0).abs() < 1e-10);
        assert!(!m.multiplicity_report(1.0 + 5e-8, 1e-8).well_separated || m.multiplicity(1.0 + 5e-8, 1e-8) == 0);
        assert_eq!(k7.clusters().len(), 2);
    }

    #[test]
    fn top_two() {
        assert!((lambda1(&Graph::complete(3)).unwrap() - 2.0).abs() < 1e-12);
        assert!((lambda2(&Graph::complete(3)).unwrap() + 1.0).abs() < 1e-12);
        assert!((lambda2(&Graph::path(2)).unwrap() + 1.0).abs() < 1e-12);
        let two = Graph::disjoint_union(&[Graph::path(2), Graph::path(2)]);
        assert!((lambda1(&two).unwrap() - 1.0).abs() < 1e-12);
        assert!((lambda2(&two).unwrap() - 1.0).abs() < 1e-12);
        assert!(lambda1(&Graph::new(0)).is_err());
        assert!(lambda2(&Graph::new(1)).is_err());
    }

    #[test]
    fn local_radii() {
        assert!((local_radius(&Graph::path(7), 0, 1).unwrap() - 1.0).abs() < 1e-12);
        assert!((local_radius(&Graph::complete(4), 2, 1).unwrap() - 3.0).abs() < 1e-12);
        let star = Graph::build_named(NamedGraph::Star, 5).unwrap();
        assert!((local_radius(&star, 0, 1).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn walks() {
        assert_eq!(closed_walks(&Graph::path(2), 0, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(closed_walks(&Graph::complete(3), 1, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(closed_walks(&Graph::complete(3), 0, 4).unwrap(), BigUint::from(6u32));
        assert!(closed_walks(&Graph::complete(3), 0, 3).is_err());
        assert!(closed_walks(&Graph::complete(3), 0, 0).is_err());
    }

    #[test]
    fn interlacing_examples() {
        assert!(interlacing_check(&Graph::complete(4), 0).unwrap());
        assert!(interlacing_check(&Graph::path(3), 0).unwrap());
        assert!(interlacing_check(&Graph::path(2), 1).unwrap());
        assert!(!interlaces(&[2.0, -1.0, -1.0], &[3.0, 0.0], 1e-7));
        assert!(interlacing_check(&Graph::new(1), 0).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let s = adjacency_spectrum(&Graph::path(5));
        let text = s.to_csv();
        let back = Spectrum::from_csv(&text).unwrap();
        assert_eq!(back.values, s.values);
        assert_eq!(back.to_csv(), text);
    }
}
