use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::IntPolynomial;
use crate::graph::Graph;

/// Exact characteristic polynomial `det(xI - A_G)` by Faddeev–LeVerrier.
///
/// With `M_1 = I` and `M_{k+1} = A M_k + c_{n-k} I`, the coefficients are
/// `c_{n-k} = -tr(A M_k) / k`; every division is exact over the integers.
/// Products with `A` are neighbourhood sums, so no dense integer matrix
/// multiplication is needed.
pub fn char_poly(g: &Graph) -> IntPolynomial {
    let n = g.n();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::from(1);
    if n == 0 {
        return IntPolynomial::new(coeffs);
    }
    let neighbors: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    // M_1 = I
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| (0..n).map(|j| BigInt::from(u8::from(i == j))).collect()).collect();
    for k in 1..=n {
        // AM = A · M_k
        let am: Vec<Vec<BigInt>> = neighbors
            .iter()
            .map(|nb| {
                let mut row = vec![BigInt::zero(); n];
                for &w in nb {
                    for (r, x) in row.iter_mut().zip(&m[w]) {
                        *r += x;
                    }
                }
                row
            })
            .collect();
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let c = -trace / BigInt::from(k);
        coeffs[n - k] = c.clone();
        if k < n {
            m = am;
            for (i, row) in m.iter_mut().enumerate() {
                row[i] += &c;
            }
        }
    }
    IntPolynomial::new(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        assert_eq!(char_poly(&Graph::path(2)), IntPolynomial::from_i64s(&[-1, 0, 1]));
        assert_eq!(char_poly(&Graph::complete(3)), IntPolynomial::from_i64s(&[-2, -3, 0, 1]));
        assert_eq!(char_poly(&Graph::path(3)), IntPolynomial::from_i64s(&[0, -2, 0, 1]));
        assert_eq!(char_poly(&Graph::new(0)), IntPolynomial::one());
        assert_eq!(char_poly(&Graph::new(2)), IntPolynomial::from_i64s(&[0, 0, 1]));
    }

    #[test]
    fn four_cycle() {
        // C4: eigenvalues 2, 0, 0, -2 → x^4 - 4x^2
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(char_poly(&c4), IntPolynomial::from_i64s(&[0, 0, -4, 0, 1]));
    }
}
