use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial with arbitrary-precision integer coefficients, constant term
/// first. Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `x - c`.
    pub fn linear_root(c: i64) -> Self {
        Self::from_i64s(&[-c, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect())
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() }).collect())
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content, keeping the sign of every coefficient.
    pub fn positive_normalized(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        let p = self.positive_normalized();
        match p.leading() {
            Some(l) if l.is_negative() => -p,
            _ => p,
        }
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    /// Sign of `p(x)` computed in integers: `q^deg p(num/q)` has the same sign.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let Some(deg) = self.degree() else {
            return Ordering::Equal;
        };
        let num = x.numer();
        let den = x.denom();
        let mut acc = BigInt::zero();
        let mut num_pow = BigInt::one();
        let mut den_pows = Vec::with_capacity(deg + 1);
        let mut dp = BigInt::one();
        for _ in 0..=deg {
            den_pows.push(dp.clone());
            dp *= den;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            acc += c * &num_pow * &den_pows[deg - i];
            num_pow *= num;
        }
        acc.sign_cmp()
    }

    /// Sign of `p` as `x → +∞` (`positive`) or `x → -∞`.
    pub fn sign_at_infinity(&self, positive: bool) -> Ordering {
        match (self.leading(), self.degree()) {
            (Some(l), Some(d)) => {
                let s = l.sign_cmp();
                if !positive && d % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }
            _ => Ordering::Equal,
        }
    }

    /// `(c x + d)^deg · p((a x + b) / (c x + d))`.
    pub fn mobius(&self, a: i64, b: i64, c: i64, d: i64) -> Self {
        let Some(deg) = self.degree() else {
            return Self::zero();
        };
        let num = Self::from_i64s(&[b, a]);
        let den = Self::from_i64s(&[d, c]);
        let mut out = Self::zero();
        for (i, coef) in self.coeffs.iter().enumerate() {
            let term = &(&num.pow(i) * &den.pow(deg - i)) * &Self::new(vec![coef.clone()]);
            out = &out + &term;
        }
        out
    }

    /// Quotient and remainder over the rationals.
    pub fn div_rem_rational(&self, divisor: &Self) -> Result<(RatPoly, RatPoly)> {
        RatPoly::from(self).div_rem(&RatPoly::from(divisor))
    }

    /// True iff `self` divides `p` over the rationals.
    pub fn divides(&self, p: &Self) -> Result<bool> {
        let (_, r) = p.div_rem_rational(self)?;
        Ok(r.is_zero())
    }

    /// Monic-over-Q gcd, returned as a primitive integer polynomial.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = RatPoly::from(self);
        let mut b = RatPoly::from(other);
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.to_integer().primitive()
    }

    /// `p / gcd(p, p')`, primitive with positive leading coefficient.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive();
        }
        let g = self.gcd(&self.derivative());
        let (q, _) = self.div_rem_rational(&g).expect("gcd is nonzero");
        q.to_integer().primitive()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }
}

trait SignCmp {
    fn sign_cmp(&self) -> Ordering;
}

impl SignCmp for BigInt {
    fn sign_cmp(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if i == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// Polynomial over the rationals, used internally for exact division.
#[derive(Clone, Debug, PartialEq)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl From<&IntPolynomial> for RatPoly {
    fn from(p: &IntPolynomial) -> Self {
        RatPoly { coeffs: p.coeffs.iter().cloned().map(BigRational::from_integer).collect() }
    }
}

impl RatPoly {
    fn trim(mut self) -> Self {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let Some(lead) = divisor.coeffs.last() else {
            return Err(Error::ZeroPolynomial);
        };
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((RatPoly { coeffs: Vec::new() }, RatPoly { coeffs: rem }.trim()));
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / lead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((RatPoly { coeffs: quot }.trim(), RatPoly { coeffs: rem }.trim()))
    }

    /// Clears denominators with a positive multiplier, then removes content.
    pub fn to_integer(&self) -> IntPolynomial {
        let lcm = self.coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        IntPolynomial::new(
            self.coeffs.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect(),
        )
        .positive_normalized()
    }
}

/// Parses `"p/q"`, `"p"`, or a plain decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(digits, den));
    }
    let p: BigInt = s.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(p))
}

/// Formats as `"p/q"` (denominator always present).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn arithmetic_and_display() {
        let a = p(&[-2, -3, 0, 1]);
        assert_eq!(a.to_string(), "x^3 - 3x - 2");
        assert_eq!(&p(&[-2, 1]) * &(&p(&[1, 1]) * &p(&[1, 1])), a);
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(a.derivative(), p(&[-3, 0, 3]));
        assert_eq!(p(&[1, 2, 3]).reflect(), p(&[1, -2, 3]));
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }

    #[test]
    fn divisibility() {
        let tri = p(&[-2, -3, 0, 1]);
        assert!(p(&[-2, 1]).divides(&tri).unwrap());
        assert!(p(&[-2, 0, 1]).divides(&p(&[0, -2, 0, 1])).unwrap());
        assert!(!p(&[-2, 0, 1]).divides(&p(&[-1, 0, 1])).unwrap());
        assert!(matches!(IntPolynomial::zero().divides(&tri), Err(Error::ZeroPolynomial)));
        // non-monic divisor over Q
        assert!(p(&[-1, 2]).divides(&p(&[-1, 0, 4])).unwrap());
    }

    #[test]
    fn gcd_and_squarefree() {
        let tri = p(&[-2, -3, 0, 1]);
        assert_eq!(tri.gcd(&tri.derivative()), p(&[1, 1]));
        assert_eq!(tri.squarefree_part(), p(&[-2, -1, 1]));
        assert!(!tri.is_squarefree());
        assert!(p(&[-2, 0, 1]).is_squarefree());
        assert_eq!(p(&[-6, -4]).primitive(), p(&[3, 2]));
    }

    #[test]
    fn signs() {
        let q = p(&[-2, 0, 1]);
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(q.sign_at(&r(3, 2)), Ordering::Greater);
        assert_eq!(q.sign_at(&r(7, 5)), Ordering::Less);
        assert_eq!(p(&[-4, 0, 1]).sign_at(&r(2, 1)), Ordering::Equal);
        assert_eq!(p(&[0, -1]).sign_at_infinity(false), Ordering::Greater);
        assert_eq!(p(&[1, 0, -1]).sign_at_infinity(false), Ordering::Less);
    }

    #[test]
    fn mobius_transport() {
        // alpha = 1/3 root of 3x - 1 -> lambda poly sum c_i (2x+1)^{d-i} = 2 - 2x
        let m = p(&[-1, 3]).mobius(0, 1, 2, 1);
        assert_eq!(m.primitive(), p(&[-1, 1]));
    }

    #[test]
    fn rational_parsing() {
        let r = parse_rational("3/6").unwrap();
        assert_eq!(format_rational(&r), "1/2");
        assert_eq!(format_rational(&parse_rational("-0.25").unwrap()), "-1/4");
        assert_eq!(format_rational(&parse_rational("7").unwrap()), "7/1");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
