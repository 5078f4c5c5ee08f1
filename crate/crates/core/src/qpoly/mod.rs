//! Exact arithmetic in `q`: Laurent polynomials, rational functions and
//! power series in `t` with polynomial-in-`a` coefficients.

mod laurent;
mod rational;
mod series;

pub use laurent::LaurentPoly;
pub use rational::RationalFn;
pub use series::{apoly_term, has_unit_constant_term, series_ops, APoly, SeriesContext, TruncatedSeries};

use crate::exactnum::BigInt;

/// `[j]_q = 1 + q + ... + q^(j-1)`.
pub fn q_integer(j: usize) -> LaurentPoly {
    LaurentPoly::new(0, vec![BigInt::from(1); j])
}

/// `[j]_q! = [1]_q [2]_q ... [j]_q`.
pub fn q_factorial(j: usize) -> LaurentPoly {
    (1..=j).map(q_integer).product()
}

/// Gaussian binomial coefficient, by the recurrence
/// `[i, j] = [i-1, j-1] + q^j [i-1, j]`. Zero outside `0 <= j <= i`.
pub fn gaussian_binomial(i: i64, j: i64) -> LaurentPoly {
    if i < 0 || j < 0 || j > i {
        return LaurentPoly::zero();
    }
    let (i, j) = (i as usize, j as usize);
    let mut row = vec![LaurentPoly::one()];
    for m in 1..=i {
        let mut next = Vec::with_capacity(m + 1);
        for r in 0..=m.min(j) {
            let left = if r > 0 { row[r - 1].clone() } else { LaurentPoly::zero() };
            let right = row.get(r).map(|p| p.shift(r as i64)).unwrap_or_default();
            next.push(left + right);
        }
        row = next;
    }
    row.swap_remove(j)
}

/// `(1 - q)^m`.
pub fn one_minus_q_pow(m: u32) -> LaurentPoly {
    LaurentPoly::from_coeffs(&[1, -1]).pow(m)
}

/// Exact quotient `a / b`; a nonzero remainder is a
/// [`NotDivisible`](crate::Error::NotDivisible) error.
pub fn exact_div(a: &LaurentPoly, b: &LaurentPoly) -> crate::Result<LaurentPoly> {
    a.exact_div(b)
}
