//! Spectral radius order: the fewest vertices of a graph whose largest
//! adjacency eigenvalue is a given algebraic number.

mod enumerate;

pub use enumerate::{
    canonical_code, connected_classes, connected_labeled, enumerate_connected, upper_mask, MAX_ENUMERATION_ORDER,
};

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{char_poly, AlgebraicReal, IntPolynomial, SturmSequence};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::spectra::lambda1;

/// Numeric tolerance for matching the top eigenvalue.
pub const TOP_MATCH_TOL: f64 = 1e-8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationBudget {
    n_max: usize,
    pub dedup: bool,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { n_max: 8, dedup: true }
    }
}

impl EnumerationBudget {
    pub fn new(n_max: usize, dedup: bool) -> Result<Self> {
        if n_max == 0 || n_max > MAX_ENUMERATION_ORDER {
            return Err(Error::InvalidArgument(format!("n_max must be in 1..={MAX_ENUMERATION_ORDER}, got {n_max}")));
        }
        Ok(EnumerationBudget { n_max, dedup })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificates {
    /// The minimal polynomial divides the characteristic polynomial.
    pub divisibility: bool,
    /// `|λ₁(G) − λ| ≤ 1e-8` in floating point.
    pub numeric_top: bool,
    /// No root of the characteristic polynomial lies above `λ` (Sturm count).
    pub exact_top: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum KOrder {
    Found { k: usize, witness: Graph, certificates: Certificates },
    Exceeded { n_max: usize },
}

impl KOrder {
    pub fn k(&self) -> Option<usize> {
        match self {
            KOrder::Found { k, .. } => Some(*k),
            KOrder::Exceeded { .. } => None,
        }
    }
}

/// Whether `lam` is the largest real root of `p`. Assumes `lam` is a root.
pub fn is_exact_top(p: &IntPolynomial, lam: &AlgebraicReal) -> bool {
    let sq = p.squarefree_part();
    let sturm = SturmSequence::new(&sq);
    let mut x = lam.clone();
    for _ in 0..4096 {
        let (lo, hi) = (x.lo().clone(), x.hi().clone());
        let ends_ok = sq.sign_at(&lo) != Ordering::Equal && sq.sign_at(&hi) != Ordering::Equal;
        if ends_ok {
            match sturm.count_roots(Some(&lo), Some(&hi)) {
                0 => return false,
                1 => return sturm.count_roots(Some(&hi), None) == 0,
                _ => {}
            }
        }
        let half_width = x.width() / BigRational::from_integer(2.into());
        x.refine_in_place(&half_width);
    }
    false
}

/// Certificates of `g` against `lam`; `None` if the numeric check fails
/// (the exact checks are skipped then).
pub fn certify(g: &Graph, lam: &AlgebraicReal, lam_f: f64) -> Option<Certificates> {
    let top = lambda1(g).ok()?;
    if (top - lam_f).abs() > TOP_MATCH_TOL {
        return None;
    }
    let p = char_poly(g);
    let divisibility = lam.minpoly().divides(&p).unwrap_or(false);
    let exact_top = divisibility && is_exact_top(&p, lam);
    Some(Certificates { divisibility, numeric_top: true, exact_top })
}

/// Smallest connected witness within budget. A disconnected witness has a
/// connected component that also witnesses, so connected graphs suffice.
pub fn spectral_radius_order(lam: &AlgebraicReal, budget: EnumerationBudget) -> Result<KOrder> {
    if lam.signum() != Ordering::Greater {
        return Err(Error::InvalidArgument("λ must be positive".into()));
    }
    // graph eigenvalues are weak Perron algebraic integers
    let perron = lam.minpoly().is_monic() && lam.is_weak_perron()?;
    if !perron {
        log::info!("{lam:?} is not a weak Perron number; no graph has it as top eigenvalue");
        return Ok(KOrder::Exceeded { n_max: budget.n_max });
    }
    let lam_f = lam.to_f64();
    for n in 1..=budget.n_max {
        let graphs = enumerate_connected(n, budget.dedup)?;
        let hit = graphs
            .par_iter()
            .map(|g| certify(g, lam, lam_f).filter(|c| c.divisibility))
            .collect::<Vec<_>>()
            .into_iter()
            .zip(graphs)
            .find_map(|(c, g)| c.map(|c| (g, c)));
        if let Some((witness, certificates)) = hit {
            return Ok(KOrder::Found { k: n, witness, certificates });
        }
    }
    Ok(KOrder::Exceeded { n_max: budget.n_max })
}

/// `k(λ)` from the line angle via `λ = (1 − α)/(2α)`.
pub fn spectral_radius_order_of_alpha(alpha: &AlgebraicReal, budget: EnumerationBudget) -> Result<KOrder> {
    let lam = AlgebraicReal::alpha_to_lambda(alpha)?;
    if lam.compare(&BigRational::zero()) != Ordering::Greater {
        return Err(Error::InvalidArgument("λ must be positive".into()));
    }
    spectral_radius_order(&lam, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(lam: AlgebraicReal, n_max: usize) -> KOrder {
        spectral_radius_order(&lam, EnumerationBudget::new(n_max, true).unwrap()).unwrap()
    }

    #[test]
    fn integer_lambdas_give_complete_graphs() {
        for k in 2..=6 {
            match order(AlgebraicReal::from_integer(k as i64 - 1), 6) {
                KOrder::Found { k: found, witness, certificates } => {
                    assert_eq!(found, k);
                    assert_eq!(witness.edge_count(), k * (k - 1) / 2);
                    assert!(certificates.divisibility && certificates.numeric_top && certificates.exact_top);
                }
                other => panic!("λ = {}: {other:?}", k - 1),
            }
        }
    }

    #[test]
    fn sqrt_two_gives_path() {
        let KOrder::Found { k, witness, certificates } = order(AlgebraicReal::sqrt_of(2), 6) else {
            panic!("not found")
        };
        assert_eq!(k, 3);
        assert_eq!(witness.degrees().iter().copied().max(), Some(2));
        assert_eq!(witness.edge_count(), 2);
        assert!(certificates.exact_top);
    }

    #[test]
    fn dedup_flag_agrees() {
        for lam in [AlgebraicReal::from_integer(2), AlgebraicReal::sqrt_of(3)] {
            let a = order(lam.clone(), 5);
            let b = spectral_radius_order(&lam, EnumerationBudget::new(5, false).unwrap()).unwrap();
            assert_eq!(a.k(), b.k());
            if let (KOrder::Found { witness: wa, .. }, KOrder::Found { witness: wb, .. }) = (a, b) {
                assert_eq!(canonical_code(&wa), canonical_code(&wb));
            }
        }
    }

    #[test]
    fn non_perron_is_exceeded() {
        // 1/2 is not an algebraic integer; the golden ratio conjugate is negative
        let half = AlgebraicReal::from_rational(&BigRational::new(1.into(), 2.into()));
        assert_eq!(order(half, 6), KOrder::Exceeded { n_max: 6 });
        assert!(spectral_radius_order(&AlgebraicReal::from_integer(0), EnumerationBudget::default()).is_err());
        assert!(spectral_radius_order(&AlgebraicReal::from_integer(-1), EnumerationBudget::default()).is_err());
    }

    #[test]
    fn exceeded_under_small_budget() {
        assert_eq!(order(AlgebraicReal::from_integer(3), 3), KOrder::Exceeded { n_max: 3 });
        assert!(EnumerationBudget::new(10, true).is_err());
        assert!(EnumerationBudget::new(0, true).is_err());
    }

    #[test]
    fn exact_top_rejects_lower_eigenvalue() {
        // C6 has eigenvalues 2, 1, 1, -1, -1, -2
        let c6 = Graph::build_named(crate::graph::NamedGraph::Cycle, 6).unwrap();
        let p = char_poly(&c6);
        assert!(!is_exact_top(&p, &AlgebraicReal::from_integer(1)));
        assert!(is_exact_top(&p, &AlgebraicReal::from_integer(2)));
    }

    #[test]
    fn via_alpha() {
        let a = AlgebraicReal::from_rational(&BigRational::new(1.into(), 7.into()));
        let r = spectral_radius_order_of_alpha(&a, EnumerationBudget::new(6, true).unwrap()).unwrap();
        assert_eq!(r.k(), Some(4));
    }
}
