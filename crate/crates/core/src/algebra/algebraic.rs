use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::poly::{format_rational, parse_rational, IntPolynomial};
use super::sturm::SturmSequence;
use crate::error::{Error, Result};

/// A real algebraic number: the unique root of a squarefree integer
/// polynomial inside an open rational interval `(lo, hi)`.
///
/// The endpoints are never roots, so the sign of the polynomial at `lo`
/// decides which half of a bisection keeps the root.
#[derive(Clone, PartialEq)]
pub struct AlgebraicReal {
    minpoly: IntPolynomial,
    lo: BigRational,
    hi: BigRational,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

impl AlgebraicReal {
    /// Validates the isolating interval after reducing `poly` to its
    /// squarefree primitive part.
    pub fn new(poly: IntPolynomial, lo: BigRational, hi: BigRational) -> Result<Self> {
        let minpoly = poly.squarefree_part();
        if minpoly.degree().unwrap_or(0) == 0 {
            return Err(Error::BadInterval("polynomial must have positive degree".into()));
        }
        if lo >= hi {
            return Err(Error::BadInterval(format!(
                "empty interval ({}, {})",
                format_rational(&lo),
                format_rational(&hi)
            )));
        }
        if minpoly.sign_at(&lo) == Ordering::Equal || minpoly.sign_at(&hi) == Ordering::Equal {
            return Err(Error::BadInterval("interval endpoint is a root".into()));
        }
        let count = SturmSequence::new(&minpoly).count_roots(Some(&lo), Some(&hi));
        if count != 1 {
            return Err(Error::BadInterval(format!("{count} roots of {minpoly} in the interval")));
        }
        Ok(AlgebraicReal { minpoly, lo, hi })
    }

    pub fn from_rational(q: &BigRational) -> Self {
        let poly = IntPolynomial::new(vec![-q.numer().clone(), q.denom().clone()]).primitive();
        let one = BigRational::one();
        AlgebraicReal { minpoly: poly, lo: q - &one, hi: q + &one }
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(k.into()))
    }

    /// `√k` for a positive non-square `k`, or the integer root otherwise.
    pub fn sqrt_of(k: u64) -> Self {
        let r = (k as f64).sqrt().round() as u64;
        if r * r == k {
            return Self::from_integer(r as i64);
        }
        let poly = IntPolynomial::from_i64s(&[-(k as i64), 0, 1]);
        let lo = BigRational::from_integer(((k as f64).sqrt().floor() as i64).into());
        let hi = &lo + BigRational::one();
        AlgebraicReal::new(poly, lo, hi).expect("√k isolated between consecutive integers")
    }

    pub fn minpoly(&self) -> &IntPolynomial {
        &self.minpoly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// The value as a rational when the defining polynomial is linear.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.minpoly.degree() == Some(1)).then(|| BigRational::new(-self.minpoly.coeff(0), self.minpoly.coeff(1)))
    }

    /// One bisection step.
    fn bisect(&mut self) {
        let mid = (&self.lo + &self.hi) * half();
        match self.minpoly.sign_at(&mid) {
            Ordering::Equal => {
                // rational root: shrink symmetrically around it
                let w = self.width() * half() * half();
                self.lo = &mid - &w;
                self.hi = &mid + &w;
            }
            s if s == self.minpoly.sign_at(&self.lo) => self.lo = mid,
            _ => self.hi = mid,
        }
    }

    /// Bisects until the interval is no wider than `width`.
    pub fn refine(&self, width: &BigRational) -> Self {
        let mut out = self.clone();
        while out.width() > *width {
            out.bisect();
        }
        out
    }

    pub fn refine_in_place(&mut self, width: &BigRational) {
        while self.width() > *width {
            self.bisect();
        }
    }

    /// Exact comparison with a rational.
    pub fn compare(&self, q: &BigRational) -> Ordering {
        if let Some(r) = self.as_rational() {
            return r.cmp(q);
        }
        if *q <= self.lo {
            return Ordering::Greater;
        }
        if *q >= self.hi {
            return Ordering::Less;
        }
        match self.minpoly.sign_at(q) {
            Ordering::Equal => Ordering::Equal,
            s if s == self.minpoly.sign_at(&self.lo) => Ordering::Greater,
            _ => Ordering::Less,
        }
    }

    pub fn signum(&self) -> Ordering {
        self.compare(&BigRational::zero())
    }

    /// Double-precision value and an upper bound on its absolute error.
    pub fn to_f64_with_error(&self) -> (f64, f64) {
        if let Some(r) = self.as_rational() {
            let x = r.to_f64().unwrap_or(f64::NAN);
            return (x, x.abs() * f64::EPSILON);
        }
        let scale = self.lo.abs().max(self.hi.abs()).max(BigRational::one());
        let target = scale * BigRational::new(BigInt::one(), BigInt::one() << 64u32);
        let fine = self.refine(&target);
        let mid = (&fine.lo + &fine.hi) * half();
        let x = mid.to_f64().unwrap_or(f64::NAN);
        let half_width = (fine.width() * half()).to_f64().unwrap_or(f64::NAN);
        (x, half_width + x.abs() * f64::EPSILON)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_f64_with_error().0
    }

    /// Exact equality of two algebraic reals.
    pub fn same_number(&self, other: &AlgebraicReal) -> bool {
        let g = self.minpoly.gcd(&other.minpoly);
        if g.degree().unwrap_or(0) == 0 {
            return false;
        }
        let (lo, hi) = (self.lo.clone().max(other.lo.clone()), self.hi.clone().min(other.hi.clone()));
        if lo >= hi {
            return false;
        }
        // overlap endpoints are endpoints of one of the isolating intervals,
        // hence non-roots of either minpoly and of g
        SturmSequence::new(&g).count_roots(Some(&lo), Some(&hi)) >= 1
    }

    /// Refines until `lo > bound`; requires the number to exceed `bound`.
    fn lift_lo_above(&mut self, bound: &BigRational) {
        while self.lo <= *bound {
            self.bisect();
        }
    }

    fn drop_hi_below(&mut self, bound: &BigRational) {
        while self.hi >= *bound {
            self.bisect();
        }
    }

    /// `α ↦ λ = (1 - α) / (2α)` for `0 < α < 1`.
    pub fn alpha_to_lambda(alpha: &AlgebraicReal) -> Result<AlgebraicReal> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        if alpha.compare(&zero) != Ordering::Greater || alpha.compare(&one) != Ordering::Less {
            return Err(Error::InvalidArgument("alpha must lie in (0, 1)".into()));
        }
        if let Some(a) = alpha.as_rational() {
            return Ok(Self::from_rational(&((&one - &a) / (&a * BigRational::from_integer(2.into())))));
        }
        let mut a = alpha.clone();
        a.lift_lo_above(&zero);
        a.drop_hi_below(&one);
        let two = BigRational::from_integer(2.into());
        let map = |x: &BigRational| (&one - x) / (&two * x);
        let poly = a.minpoly.mobius(0, 1, 2, 1);
        AlgebraicReal::new(poly, map(&a.hi), map(&a.lo))
    }

    /// `λ ↦ α = 1 / (2λ + 1)` for `λ > 0`.
    pub fn lambda_to_alpha(lambda: &AlgebraicReal) -> Result<AlgebraicReal> {
        let zero = BigRational::zero();
        let one = BigRational::one();
        if lambda.signum() != Ordering::Greater {
            return Err(Error::InvalidArgument("lambda must be positive".into()));
        }
        let two = BigRational::from_integer(2.into());
        let map = |x: &BigRational| &one / (&two * x + &one);
        if let Some(l) = lambda.as_rational() {
            return Ok(Self::from_rational(&map(&l)));
        }
        let mut l = lambda.clone();
        l.lift_lo_above(&zero);
        let poly = l.minpoly.mobius(-1, 1, 2, 0);
        AlgebraicReal::new(poly, map(&l.hi), map(&l.lo))
    }

    /// Weak Perron condition: a positive algebraic integer whose conjugates
    /// are all real with absolute value at most the number itself.
    pub fn is_weak_perron(&self) -> Result<bool> {
        Ok(self.perron_check()?.map(|(weak, _)| weak).unwrap_or(false))
    }

    /// Strict Perron condition: as [`Self::is_weak_perron`], with every
    /// other conjugate strictly smaller in absolute value.
    pub fn is_strict_perron(&self) -> Result<bool> {
        Ok(self.perron_check()?.map(|(weak, strict)| weak && strict).unwrap_or(false))
    }

    /// `None` when not positive or not totally real; otherwise (weak, no `-λ` conjugate).
    fn perron_check(&self) -> Result<Option<(bool, bool)>> {
        if !self.minpoly.is_monic() {
            return Err(Error::NotMonic);
        }
        if self.signum() != Ordering::Greater {
            return Ok(None);
        }
        let deg = self.minpoly.degree().unwrap();
        let sturm = SturmSequence::new(&self.minpoly);
        if sturm.count_real_roots() != deg {
            return Ok(None);
        }
        let reflected = self.minpoly.reflect();
        let both = (&self.minpoly * &reflected).squarefree_part();
        let both_sturm = SturmSequence::new(&both);
        let mut x = self.clone();
        x.lift_lo_above(&BigRational::zero());
        loop {
            let ends_ok = both.sign_at(&x.lo) != Ordering::Equal && both.sign_at(&x.hi) != Ordering::Equal;
            if ends_ok && both_sturm.count_roots(Some(&x.lo), Some(&x.hi)) == 1 {
                break;
            }
            x.bisect();
        }
        let neg_hi = -x.hi.clone();
        let above = sturm.count_roots(Some(&x.hi), None);
        let below = sturm.count_roots(None, Some(&neg_hi));
        let weak = above == 0 && below == 0;
        let reflected_here = SturmSequence::new(&reflected).count_roots(Some(&x.lo), Some(&x.hi));
        Ok(Some((weak, reflected_here == 0)))
    }
}

impl fmt::Debug for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root of {} in ({}, {}) ≈ {}",
            self.minpoly,
            format_rational(&self.lo),
            format_rational(&self.hi),
            self.to_f64()
        )
    }
}

impl fmt::Display for AlgebraicReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Some(r) => write!(f, "{}", format_rational(&r)),
            None => write!(f, "{:.12} (root of {})", self.to_f64(), self.minpoly),
        }
    }
}

/// `{"minpoly": ["c0","c1",...], "lo": "p/q", "hi": "p/q"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicJson {
    pub minpoly: Vec<String>,
    pub lo: String,
    pub hi: String,
}

impl From<&AlgebraicReal> for AlgebraicJson {
    fn from(a: &AlgebraicReal) -> Self {
        AlgebraicJson {
            minpoly: a.minpoly.coeffs().iter().map(BigInt::to_string).collect(),
            lo: format_rational(&a.lo),
            hi: format_rational(&a.hi),
        }
    }
}

impl TryFrom<&AlgebraicJson> for AlgebraicReal {
    type Error = Error;

    fn try_from(j: &AlgebraicJson) -> Result<Self> {
        let coeffs = j
            .minpoly
            .iter()
            .map(|c| c.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("bad coefficient {c:?}"))))
            .collect::<Result<Vec<_>>>()?;
        AlgebraicReal::new(IntPolynomial::new(coeffs), parse_rational(&j.lo)?, parse_rational(&j.hi)?)
    }
}

impl Serialize for AlgebraicReal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        AlgebraicJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraicReal {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = AlgebraicJson::deserialize(d)?;
        AlgebraicReal::try_from(&j).map_err(serde::de::Error::custom)
    }
}
