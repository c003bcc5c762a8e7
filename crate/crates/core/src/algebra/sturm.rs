use std::cmp::Ordering;

use num_rational::BigRational;

use super::poly::{IntPolynomial, RatPoly};

/// Sturm chain `p, p', -rem(p, p'), ...`, each term scaled by a positive
/// constant to stay integral.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<IntPolynomial>,
}

/// An endpoint for root counting; `None` stands for ±∞ depending on side.
pub type Bound<'a> = Option<&'a BigRational>;

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Self {
        let mut chain = vec![p.clone()];
        if p.is_zero() {
            return SturmSequence { chain };
        }
        let mut prev = p.clone();
        let mut cur = p.derivative().positive_normalized();
        while !cur.is_zero() {
            chain.push(cur.clone());
            let (_, r) = RatPoly::from(&prev).div_rem(&RatPoly::from(&cur)).expect("nonzero");
            let next = -r.to_integer();
            prev = cur;
            cur = next;
        }
        SturmSequence { chain }
    }

    fn variations(signs: impl Iterator<Item = Ordering>) -> usize {
        let mut last = Ordering::Equal;
        let mut count = 0;
        for s in signs {
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn variations_at(&self, x: Bound<'_>, upper: bool) -> usize {
        match x {
            Some(x) => Self::variations(self.chain.iter().map(|p| p.sign_at(x))),
            None => Self::variations(self.chain.iter().map(|p| p.sign_at_infinity(upper))),
        }
    }

    /// Number of distinct real roots in `(lo, hi]`; `None` bounds are
    /// `-∞` and `+∞` respectively.
    pub fn count_roots(&self, lo: Bound<'_>, hi: Bound<'_>) -> usize {
        let a = self.variations_at(lo, false);
        let b = self.variations_at(hi, true);
        a.saturating_sub(b)
    }

    pub fn count_real_roots(&self) -> usize {
        self.count_roots(None, None)
    }
}
