//! Equiangular line families through their Gram matrices
//! `(1 − α)I − 2αA + αJ`, where `A` is the negative graph.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{parse_rational, AlgebraicJson, AlgebraicReal, IntPolynomial};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::korder::{spectral_radius_order, EnumerationBudget, KOrder};
use crate::linalg::{symmetric_eigen, symmetric_eigenvalues, SymMatrix};
use crate::spectra::adjacency_spectrum;

/// Eigenvalues of magnitude at most this are treated as zero when factoring.
pub const CLIP_TOL: f64 = 1e-9;

/// The common inner product magnitude, exact with a float shadow.
#[derive(Clone, Debug, PartialEq)]
pub struct Alpha {
    exact: AlgebraicReal,
    value: f64,
}

impl Alpha {
    pub fn new(exact: AlgebraicReal) -> Result<Self> {
        if exact.compare(&BigRational::zero()) != Ordering::Greater
            || exact.compare(&BigRational::one()) != Ordering::Less
        {
            return Err(Error::InvalidArgument(format!("α must lie in (0, 1), got {exact}")));
        }
        let value = match exact.as_rational() {
            Some(q) => q.to_f64().unwrap_or(f64::NAN),
            None => exact.to_f64(),
        };
        Ok(Alpha { exact, value })
    }

    pub fn from_rational(q: &BigRational) -> Result<Self> {
        Alpha::new(AlgebraicReal::from_rational(q))
    }

    /// `"p/q"`, an integer, or a decimal.
    pub fn parse(s: &str) -> Result<Self> {
        Alpha::from_rational(&parse_rational(s)?)
    }

    pub fn from_lambda(lam: &AlgebraicReal) -> Result<Self> {
        Alpha::new(AlgebraicReal::lambda_to_alpha(lam)?)
    }

    /// `1/√5`, the icosahedron angle.
    pub fn inv_sqrt5() -> Self {
        let p = IntPolynomial::from_i64s(&[-1, 0, 5]);
        let lo = BigRational::new(2.into(), 5.into());
        let hi = BigRational::new(1.into(), 2.into());
        Alpha::new(AlgebraicReal::new(p, lo, hi).expect("isolating interval")).unwrap()
    }

    pub fn exact(&self) -> &AlgebraicReal {
        &self.exact
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    /// `λ = (1 − α)/(2α)`.
    pub fn lambda(&self) -> AlgebraicReal {
        AlgebraicReal::alpha_to_lambda(&self.exact).expect("α in (0, 1)")
    }
}

/// Unit vectors, one per row, with their claimed common angle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineFamily {
    pub d: usize,
    pub alpha: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha_exact: Option<AlgebraicJson>,
    pub vectors: Vec<Vec<f64>>,
}

impl LineFamily {
    pub fn n(&self) -> usize {
        self.vectors.len()
    }

    pub fn gram(&self) -> SymMatrix {
        let v = &self.vectors;
        SymMatrix::from_fn(v.len(), |i, j| dot(&v[i], &v[j]))
    }

    /// Negates the rows where `signs` is `-1`.
    pub fn flip(&self, signs: &[i8]) -> Result<LineFamily> {
        if signs.len() != self.n() {
            return Err(Error::InvalidArgument(format!("{} signs for {} vectors", signs.len(), self.n())));
        }
        let mut out = self.clone();
        for (row, &s) in out.vectors.iter_mut().zip(signs) {
            if s < 0 {
                row.iter_mut().for_each(|x| *x = -*x);
            }
        }
        Ok(out)
    }

    /// Header `d,alpha_float,n` as values, then one row per vector.
    pub fn to_csv(&self) -> String {
        let mut s = format!("{},{:.16e},{}\n", self.d, self.alpha, self.n());
        for row in &self.vectors {
            let cells: Vec<String> = row.iter().map(|x| format!("{x:.16e}")).collect();
            writeln!(s, "{}", cells.join(",")).unwrap();
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<LineFamily> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty family file".into()))?;
        let parts: Vec<&str> = header.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("bad header {header:?}")));
        }
        let bad = |what: &str| Error::Parse(format!("bad {what} in header {header:?}"));
        let d: usize = parts[0].parse().map_err(|_| bad("d"))?;
        let alpha: f64 = parts[1].parse().map_err(|_| bad("alpha"))?;
        let n: usize = parts[2].parse().map_err(|_| bad("n"))?;
        let mut vectors = Vec::with_capacity(n);
        for (i, line) in lines.enumerate() {
            let row = line
                .split(',')
                .map(|c| c.trim().parse::<f64>().map_err(|e| Error::Parse(format!("row {i}: {e}"))))
                .collect::<Result<Vec<f64>>>()?;
            if row.len() != d {
                return Err(Error::Parse(format!("row {i} has {} entries, expected {d}", row.len())));
            }
            vectors.push(row);
        }
        if vectors.len() != n {
            return Err(Error::Parse(format!("expected {n} rows, found {}", vectors.len())));
        }
        Ok(LineFamily { d, alpha, alpha_exact: None, vectors })
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// 1 on the diagonal, `−α` on edges, `+α` elsewhere.
pub fn gram_from_graph(g: &Graph, alpha: &Alpha) -> SymMatrix {
    let a = alpha.value();
    SymMatrix::from_fn(g.n(), |i, j| {
        if i == j {
            1.0
        } else if g.has_edge(i, j) {
            -a
        } else {
            a
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsdReport {
    pub is_psd: bool,
    pub rank: usize,
    /// Eigenvalues within the rank threshold of zero.
    pub nullity: usize,
    pub min_eigenvalue: f64,
}

/// PSD iff the smallest eigenvalue is `≥ −tol`; rank counts eigenvalues
/// above `tol · max(1, λ₁)`.
pub fn psd_rank(m: &SymMatrix, tol: f64) -> Result<PsdReport> {
    let values = symmetric_eigenvalues(m)?;
    let top = values.first().copied().unwrap_or(0.0);
    let cut = tol * top.abs().max(1.0);
    Ok(PsdReport {
        is_psd: values.last().is_none_or(|&x| x >= -tol),
        rank: values.iter().filter(|&&x| x > cut).count(),
        nullity: values.iter().filter(|&&x| x.abs() <= cut).count(),
        min_eigenvalue: values.last().copied().unwrap_or(0.0),
    })
}

/// Rows `V` with `V·Vᵀ = m`, from `V = U·√Λ`, padded with zero columns to `d`.
pub fn realize(m: &SymMatrix, d: usize) -> Result<Vec<Vec<f64>>> {
    let ed = symmetric_eigen(m)?;
    if let Some(&min) = ed.values.last() {
        if min < -CLIP_TOL {
            return Err(Error::NotPsd { min_eigenvalue: min });
        }
    }
    let kept: Vec<usize> = (0..ed.values.len()).filter(|&j| ed.values[j] > CLIP_TOL).collect();
    if kept.len() > d {
        return Err(Error::RankExceeded { rank: kept.len(), d });
    }
    let n = m.n();
    let mut rows = vec![vec![0.0; d]; n];
    for (col, &j) in kept.iter().enumerate() {
        let s = ed.values[j].sqrt();
        for (i, row) in rows.iter_mut().enumerate() {
            row[col] = ed.vectors[j][i] * s;
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Optimality {
    /// `⌊k(d−1)/(k−1)⌋`.
    pub formula_value: u64,
    /// True only where the matching upper bound is known for this `d`.
    pub proven: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Construction {
    pub family: LineFamily,
    pub graph: Graph,
    pub witness: Graph,
    pub k: usize,
    pub copies: usize,
    pub isolated: usize,
    pub optimality: Optimality,
}

/// `ℓ = ⌊(d−1)/(k−1)⌋` copies of the order-`k` witness plus
/// `h = d − 1 − (k−1)ℓ` isolated vertices, realized in `R^d`.
pub fn construct_optimal(alpha: &Alpha, d: usize, budget: EnumerationBudget) -> Result<Construction> {
    let lam = alpha.lambda();
    if lam.signum() != Ordering::Greater {
        return Err(Error::InvalidArgument("α must be below 1/2 for a positive λ".into()));
    }
    let (k, witness) = match spectral_radius_order(&lam, budget)? {
        KOrder::Found { k, witness, .. } => (k, witness),
        KOrder::Exceeded { n_max } => return Err(Error::BudgetExceeded(n_max)),
    };
    if d < k {
        return Err(Error::TooSmall { needed: k, got: d });
    }
    let copies = (d - 1) / (k - 1);
    let isolated = (d - 1) - (k - 1) * copies;
    let mut parts = vec![witness.clone(); copies];
    parts.push(Graph::new(isolated));
    let graph = Graph::disjoint_union(&parts);
    let vectors = realize(&gram_from_graph(&graph, alpha), d)?;
    let formula_value = (k * (d - 1) / (k - 1)) as u64;
    debug_assert_eq!(formula_value as usize, graph.n());
    let known_exact = alpha.exact().as_rational() == Some(BigRational::new(1.into(), 3.into())) && d >= 15;
    let optimality = Optimality {
        formula_value,
        proven: known_exact,
        note: if known_exact {
            "optimal: N_{1/3}(d) = 2(d-1) for d >= 15".into()
        } else {
            "lower bound; equals N_alpha(d) for d >= d0(alpha), with d0 not explicit (2^(k^(Ck)) for alpha = 1/(2k-1))"
                .into()
        },
    };
    let family = LineFamily { d, alpha: alpha.value(), alpha_exact: Some(AlgebraicJson::from(alpha.exact())), vectors };
    Ok(Construction { family, graph, witness, k, copies, isolated, optimality })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n: usize,
    pub d: usize,
    pub max_norm_deviation: f64,
    pub max_inner_product_deviation: f64,
    /// Mean of `|⟨vᵢ, vⱼ⟩|` over pairs.
    pub recovered_alpha: f64,
    /// Pairs whose inner product matches neither `±α` within `tol`.
    pub ambiguous_pairs: Vec<(usize, usize, f64)>,
    pub valid: bool,
}

pub fn verify_family(f: &LineFamily, tol: f64) -> VerifyReport {
    let n = f.n();
    let mut max_norm = 0.0f64;
    for (i, v) in f.vectors.iter().enumerate() {
        let dev = (dot(v, v).sqrt() - 1.0).abs();
        if v.len() != f.d {
            max_norm = f64::INFINITY;
            log::warn!("row {i} has width {} in a family of dimension {}", v.len(), f.d);
        }
        max_norm = max_norm.max(dev);
    }
    let mut max_ip = 0.0f64;
    let mut sum = 0.0;
    let mut ambiguous = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let ip = dot(&f.vectors[i], &f.vectors[j]);
            let dev = (ip.abs() - f.alpha).abs();
            max_ip = max_ip.max(dev);
            sum += ip.abs();
            if dev > tol {
                ambiguous.push((i, j, ip));
            }
        }
    }
    let pairs = n * n.saturating_sub(1) / 2;
    VerifyReport {
        n,
        d: f.d,
        max_norm_deviation: max_norm,
        max_inner_product_deviation: max_ip,
        recovered_alpha: if pairs == 0 { f64::NAN } else { sum / pairs as f64 },
        valid: max_norm <= tol && ambiguous.is_empty(),
        ambiguous_pairs: ambiguous,
    }
}

/// Edges where the inner product is negative.
pub fn negative_graph(f: &LineFamily) -> Graph {
    let n = f.n();
    let mut g = Graph::new(n);
    for i in 0..n {
        for j in i + 1..n {
            if dot(&f.vectors[i], &f.vectors[j]) < 0.0 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// The six diagonals of the regular icosahedron, from the vertices
/// `(0, ±1, ±φ)` and their cyclic shifts.
pub fn icosahedron_family() -> LineFamily {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let raw = [[0.0, 1.0, phi], [0.0, 1.0, -phi], [1.0, phi, 0.0], [1.0, -phi, 0.0], [phi, 0.0, 1.0], [-phi, 0.0, 1.0]];
    let norm = (1.0 + phi * phi).sqrt();
    let alpha = Alpha::inv_sqrt5();
    LineFamily {
        d: 3,
        alpha: alpha.value(),
        alpha_exact: Some(AlgebraicJson::from(alpha.exact())),
        vectors: raw.iter().map(|r| r.iter().map(|x| x / norm).collect()).collect(),
    }
}

/// `d(d+1)/2`.
pub fn gerzon_bound(d: u64) -> u64 {
    d * (d + 1) / 2
}

/// Whether the `vᵢ ⊗ vᵢ` are linearly independent. Their Gram matrix has
/// entries `⟨vᵢ, vⱼ⟩²`, so the rank is read off its eigenvalues.
pub fn tensor_independence(f: &LineFamily) -> bool {
    let n = f.n();
    if n as u64 > gerzon_bound(f.d as u64) {
        return false;
    }
    let v = &f.vectors;
    let w = SymMatrix::from_fn(n, |i, j| dot(&v[i], &v[j]).powi(2));
    match symmetric_eigenvalues(&w) {
        Ok(values) => {
            let cut = 1e-9 * values.first().copied().unwrap_or(0.0).max(1.0);
            values.iter().filter(|&&x| x > cut).count() == n
        }
        Err(_) => false,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NAlpha {
    Value(u64),
    /// `N_α(d) = d + o(d)`; no closed form.
    Linear,
}

/// `⌊k(d−1)/(k−1)⌋` when `k` is known, the linear marker otherwise.
/// The value is exact only for `d ≥ d₀(α)`.
pub fn n_alpha_formula(k: Option<usize>, d: u64) -> Result<NAlpha> {
    if d == 0 {
        return Err(Error::InvalidArgument("d must be positive".into()));
    }
    match k {
        Some(k) if k >= 2 => {
            let k = k as u64;
            Ok(NAlpha::Value(k * (d - 1) / (k - 1)))
        }
        Some(k) => Err(Error::InvalidArgument(format!("spectral radius order {k} is impossible"))),
        None => Ok(NAlpha::Linear),
    }
}

/// Looks up `k(λ)` for `α` first.
pub fn n_alpha(alpha: &Alpha, d: u64, budget: EnumerationBudget) -> Result<NAlpha> {
    let lam = alpha.lambda();
    let k = if lam.signum() == Ordering::Greater { spectral_radius_order(&lam, budget)?.k() } else { None };
    n_alpha_formula(k, d)
}

/// `rank + nullity == n` for a Gram matrix at tolerance `tol`.
pub fn rank_nullity_audit(m: &SymMatrix, tol: f64) -> Result<bool> {
    let r = psd_rank(m, tol)?;
    Ok(r.rank + r.nullity == m.n())
}

/// `nullity(Gram) ≤ mult(λ, G) + 1`.
pub fn nullity_bound_audit(g: &Graph, alpha: &Alpha, tol: f64) -> Result<bool> {
    let r = psd_rank(&gram_from_graph(g, alpha), tol)?;
    let lam = alpha.lambda().to_f64();
    let mult = adjacency_spectrum(g).multiplicity(lam, 1e-8 * lam.abs().max(1.0));
    Ok(r.nullity <= mult + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(p: i64, q: i64) -> Alpha {
        Alpha::from_rational(&BigRational::new(p.into(), q.into())).unwrap()
    }

    fn budget() -> EnumerationBudget {
        EnumerationBudget::new(6, true).unwrap()
    }

    #[test]
    fn gram_entries() {
        let m = gram_from_graph(&Graph::new(2), &a(1, 3));
        assert_eq!(m.get(0, 1), 1.0 / 3.0);
        let m = gram_from_graph(&Graph::path(2), &a(1, 3));
        assert_eq!(m.get(1, 0), -1.0 / 3.0);
        assert_eq!(m.get(1, 1), 1.0);
        assert!(Alpha::parse("1").is_err());
        assert!(Alpha::parse("0").is_err());
        assert!(Alpha::parse("-1/3").is_err());
    }

    #[test]
    fn psd_examples() {
        let r = psd_rank(&SymMatrix::identity(3), 1e-9).unwrap();
        assert!(r.is_psd && r.rank == 3 && r.nullity == 0);
        let r = psd_rank(&SymMatrix::from_fn(4, |_, _| 1.0), 1e-9).unwrap();
        assert!(r.is_psd && r.rank == 1 && r.nullity == 3);
        let g = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3), Graph::new(1)]);
        let m = gram_from_graph(&g, &a(1, 5));
        let r = psd_rank(&m, 1e-9).unwrap();
        assert!(r.is_psd && r.rank <= 6);
        assert!(rank_nullity_audit(&m, 1e-9).unwrap());
        assert!(nullity_bound_audit(&g, &a(1, 5), 1e-9).unwrap());
    }

    #[test]
    fn realize_examples() {
        let rows = realize(&SymMatrix::identity(2), 2).unwrap();
        let back = SymMatrix::from_fn(2, |i, j| dot(&rows[i], &rows[j]));
        assert!((back.get(0, 0) - 1.0).abs() < 1e-12 && back.get(0, 1).abs() < 1e-12);
        let rows = realize(&gram_from_graph(&Graph::path(2), &a(1, 3)), 2).unwrap();
        assert!((dot(&rows[0], &rows[1]) + 1.0 / 3.0).abs() < 1e-9);
        let g = Graph::disjoint_union(&[Graph::complete(3), Graph::complete(3), Graph::new(1)]);
        let rows = realize(&gram_from_graph(&g, &a(1, 5)), 6).unwrap();
        assert_eq!(rows.len(), 7);
        assert!(rows.iter().all(|r| r.len() == 6));
        assert!(matches!(realize(&SymMatrix::identity(3), 2), Err(Error::RankExceeded { rank: 3, d: 2 })));
        let bad = SymMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]).unwrap();
        assert!(matches!(realize(&bad, 2), Err(Error::NotPsd { .. })));
    }

    #[test]
    fn constructions() {
        for (p, q, d, n) in [(1, 3, 15, 28), (1, 5, 11, 15), (1, 7, 10, 12)] {
            let c = construct_optimal(&a(p, q), d, budget()).unwrap();
            assert_eq!(c.family.n(), n, "α = {p}/{q}, d = {d}");
            assert!(verify_family(&c.family, 1e-9).valid);
            assert_eq!(negative_graph(&c.family), c.graph);
            assert!(tensor_independence(&c.family));
            assert!(c.family.n() as u64 <= gerzon_bound(d as u64));
        }
        let c = construct_optimal(&a(1, 7), 10, budget()).unwrap();
        assert_eq!((c.k, c.witness.edge_count()), (4, 6));
        let c = construct_optimal(&a(1, 5), 11, budget()).unwrap();
        assert_eq!((c.copies, c.isolated), (5, 0));
        assert_eq!(c.graph.components().len(), 5);
        assert!(construct_optimal(&a(1, 7), 3, budget()).is_err());
        assert!(construct_optimal(&a(1, 3), 15, budget()).unwrap().optimality.proven);
    }

    #[test]
    fn verify_rejects_orthogonal_pair() {
        let f = LineFamily { d: 2, alpha: 1.0 / 3.0, alpha_exact: None, vectors: vec![vec![1.0, 0.0], vec![0.0, 1.0]] };
        let r = verify_family(&f, 1e-9);
        assert!(!r.valid);
        assert_eq!(r.ambiguous_pairs, vec![(0, 1, 0.0)]);
    }

    #[test]
    fn icosahedron() {
        let f = icosahedron_family();
        let r = verify_family(&f, 1e-12);
        assert!(r.valid);
        assert!((r.recovered_alpha - 1.0 / 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(f.n() as u64, gerzon_bound(3));
        assert!(tensor_independence(&f));
    }

    #[test]
    fn formulas() {
        assert_eq!(gerzon_bound(2), 3);
        assert_eq!(gerzon_bound(3), 6);
        assert_eq!(n_alpha(&a(1, 3), 100, budget()).unwrap(), NAlpha::Value(198));
        assert_eq!(n_alpha_formula(Some(5), 101).unwrap(), NAlpha::Value(125));
        assert_eq!(n_alpha_formula(None, 10).unwrap(), NAlpha::Linear);
    }

    #[test]
    fn csv_round_trip() {
        let c = construct_optimal(&a(1, 5), 6, budget()).unwrap();
        let text = c.family.to_csv();
        assert!(text.starts_with("6,2.0000000000000001e-1,7\n"));
        let back = LineFamily::from_csv(&text).unwrap();
        assert_eq!(back.vectors, c.family.vectors);
        assert_eq!(back.to_csv(), text);
        assert!(LineFamily::from_csv("2,0.5,1\n1,2,3\n").is_err());
    }

    #[test]
    fn flipping_rows_switches_the_negative_graph() {
        let c = construct_optimal(&a(1, 5), 8, budget()).unwrap();
        let mut signs = vec![1i8; c.family.n()];
        signs[2] = -1;
        signs[5] = -1;
        let flipped = c.family.flip(&signs).unwrap();
        assert_eq!(negative_graph(&flipped), c.graph.switch_set(&[2, 5]).unwrap());
        assert!(verify_family(&flipped, 1e-9).valid);
    }
}
