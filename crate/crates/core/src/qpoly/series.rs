use std::collections::BTreeMap;
use std::fmt;

use super::laurent::LaurentPoly;
use crate::error::{Error, Result};
use crate::exactnum::BigInt;

/// A polynomial in `a` with Laurent-polynomial-in-`q` coefficients, stored
/// sparsely by `a`-degree. Zero coefficients are never stored.
pub type APoly = BTreeMap<usize, LaurentPoly>;

/// A power series in `t`, truncated after `t^order`.
///
/// `coeffs[m]` is the coefficient of `t^m`, itself a polynomial in `a`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    order: usize,
    coeffs: Vec<APoly>,
}

fn apoly_add_into(acc: &mut APoly, rhs: &APoly, cap: Option<usize>) {
    for (&d, c) in rhs {
        if cap.is_some_and(|cap| d > cap) {
            continue;
        }
        let slot = acc.entry(d).or_default();
        *slot += c;
        if slot.is_zero() {
            acc.remove(&d);
        }
    }
}

fn apoly_mul(x: &APoly, y: &APoly, cap: Option<usize>) -> APoly {
    let mut out = APoly::new();
    for (&dx, cx) in x {
        for (&dy, cy) in y {
            let d = dx + dy;
            if cap.is_some_and(|cap| d > cap) {
                break;
            }
            let slot = out.entry(d).or_default();
            *slot += cx * cy;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            order,
            coeffs: vec![APoly::new(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, 0, LaurentPoly::one())
    }

    /// `c * a^a_deg * t^t_deg` (zero if `t_deg` exceeds the order).
    pub fn monomial(order: usize, t_deg: usize, a_deg: usize, c: LaurentPoly) -> Self {
        let mut s = Self::zero(order);
        if t_deg <= order && !c.is_zero() {
            s.coeffs[t_deg].insert(a_deg, c);
        }
        s
    }

    /// Builds a series from `(t_deg, a_deg, coefficient)` terms, summing repeats.
    pub fn from_terms(order: usize, terms: impl IntoIterator<Item = (usize, usize, LaurentPoly)>) -> Self {
        let mut s = Self::zero(order);
        for (t, a, c) in terms {
            if t <= order {
                let mut single = APoly::new();
                single.insert(a, c);
                apoly_add_into(&mut s.coeffs[t], &single, None);
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of `t^m` as a polynomial in `a`.
    pub fn t_coeff(&self, m: usize) -> Option<&APoly> {
        self.coeffs.get(m)
    }

    /// Coefficient of `a^k t^n`.
    pub fn coeff(&self, n: usize, k: usize) -> LaurentPoly {
        self.coeffs
            .get(n)
            .and_then(|c| c.get(&k))
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(BTreeMap::is_empty)
    }

    /// Multiplies every coefficient by the Laurent polynomial `c`.
    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|ap| {
                ap.iter()
                    .map(|(&d, x)| (d, x * c))
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        TruncatedSeries { order: self.order, coeffs }
    }

    /// Multiplies by `a^a_shift * t^t_shift`, dropping what falls past the order.
    pub fn shift(&self, t_shift: usize, a_shift: usize) -> Self {
        let mut out = Self::zero(self.order);
        for m in 0..=self.order {
            if m + t_shift > self.order {
                break;
            }
            out.coeffs[m + t_shift] = self.coeffs[m].iter().map(|(&d, c)| (d + a_shift, c.clone())).collect();
        }
        out
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[order {}](", self.order)?;
        let mut first = true;
        for (m, ap) in self.coeffs.iter().enumerate() {
            for (d, c) in ap {
                if !first {
                    f.write_str(" + ")?;
                }
                first = false;
                write!(f, "({c}) a^{d} t^{m}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        f.write_str(")")
    }
}

/// Arithmetic on [`TruncatedSeries`] at a fixed order, with an optional cap
/// on the `a`-degree (terms above the cap are discarded as they appear).
#[derive(Clone, Copy, Debug)]
pub struct SeriesContext {
    pub order: usize,
    pub a_cap: Option<usize>,
}

pub fn series_ops(order: usize) -> SeriesContext {
    SeriesContext { order, a_cap: None }
}

impl SeriesContext {
    pub fn with_a_cap(self, cap: usize) -> Self {
        SeriesContext {
            a_cap: Some(cap),
            ..self
        }
    }

    fn check(&self, s: &TruncatedSeries) -> Result<()> {
        if s.order != self.order {
            return Err(Error::invalid(format!(
                "series of order {} used in a context of order {}",
                s.order, self.order
            )));
        }
        Ok(())
    }

    pub fn zero(&self) -> TruncatedSeries {
        TruncatedSeries::zero(self.order)
    }

    pub fn one(&self) -> TruncatedSeries {
        TruncatedSeries::one(self.order)
    }

    pub fn add(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(x)?;
        self.check(y)?;
        let mut out = x.clone();
        for (acc, rhs) in out.coeffs.iter_mut().zip(&y.coeffs) {
            apoly_add_into(acc, rhs, self.a_cap);
        }
        if let Some(cap) = self.a_cap {
            for ap in &mut out.coeffs {
                ap.retain(|&d, _| d <= cap);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(x, &y.scale(&LaurentPoly::constant(-1)))
    }

    pub fn mul(&self, x: &TruncatedSeries, y: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(x)?;
        self.check(y)?;
        let mut out = self.zero();
        for i in 0..=self.order {
            if x.coeffs[i].is_empty() {
                continue;
            }
            for j in 0..=self.order - i {
                if y.coeffs[j].is_empty() {
                    continue;
                }
                let prod = apoly_mul(&x.coeffs[i], &y.coeffs[j], self.a_cap);
                apoly_add_into(&mut out.coeffs[i + j], &prod, None);
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse. The constant term must be `±q^e` (no `a`).
    pub fn reciprocal(&self, x: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check(x)?;
        let c0 = &x.coeffs[0];
        let unit = match c0.get(&0) {
            Some(u) if c0.len() == 1 && u.is_unit_monomial() => u,
            _ => {
                return Err(Error::invalid(
                    "reciprocal needs a constant term of the form ±q^e with no a",
                ))
            }
        };
        // u^-1 for u = s q^e is s q^-e.
        let inv = LaurentPoly::monomial(unit.coeffs()[0].clone(), -unit.min_exp());
        let neg_inv = -&inv;
        let mut out = self.zero();
        out.coeffs[0].insert(0, inv);
        for m in 1..=self.order {
            let mut acc = APoly::new();
            for j in 1..=m {
                if x.coeffs[j].is_empty() || out.coeffs[m - j].is_empty() {
                    continue;
                }
                let prod = apoly_mul(&x.coeffs[j], &out.coeffs[m - j], self.a_cap);
                apoly_add_into(&mut acc, &prod, None);
            }
            out.coeffs[m] = acc
                .into_iter()
                .map(|(d, c)| (d, &c * &neg_inv))
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
        Ok(out)
    }

    /// `1 / (1 - c t)` where `c` is a polynomial in `a`, by the geometric series.
    pub fn geometric(&self, c: &APoly) -> TruncatedSeries {
        let mut out = self.one();
        for m in 1..=self.order {
            out.coeffs[m] = apoly_mul(&out.coeffs[m - 1], c, self.a_cap);
        }
        out
    }

    /// `x / (1 - c t)` without forming the geometric series:
    /// `y_m = x_m + c y_{m-1}`.
    pub fn div_linear(&self, x: &TruncatedSeries, c: &APoly) -> Result<TruncatedSeries> {
        self.check(x)?;
        let mut out = x.clone();
        for m in 1..=self.order {
            let carry = apoly_mul(&out.coeffs[m - 1], c, self.a_cap);
            apoly_add_into(&mut out.coeffs[m], &carry, None);
        }
        Ok(out)
    }

    /// Integer constant `c` as a series.
    pub fn constant(&self, c: i64) -> TruncatedSeries {
        TruncatedSeries::monomial(self.order, 0, 0, LaurentPoly::constant(BigInt::from(c)))
    }

    pub fn pow(&self, x: &TruncatedSeries, e: u32) -> Result<TruncatedSeries> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }
}

/// `a^d` with coefficient `c`.
pub fn apoly_term(d: usize, c: LaurentPoly) -> APoly {
    let mut m = APoly::new();
    if !c.is_zero() {
        m.insert(d, c);
    }
    m
}

/// True when `x` has an invertible constant term (`±q^e`, no `a`).
pub fn has_unit_constant_term(x: &TruncatedSeries) -> bool {
    let c0 = &x.coeffs[0];
    c0.len() == 1 && c0.get(&0).is_some_and(LaurentPoly::is_unit_monomial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::q_integer;

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    #[test]
    fn geometric_one_minus_t() {
        let ctx = series_ops(3);
        let one_minus_t = TruncatedSeries::from_terms(3, [(0, 0, lp(&[1])), (1, 0, lp(&[-1]))]);
        let r = ctx.reciprocal(&one_minus_t).unwrap();
        for m in 0..=3 {
            assert_eq!(r.coeff(m, 0), lp(&[1]));
        }
        assert_eq!(ctx.mul(&r, &one_minus_t).unwrap(), ctx.one());
    }

    #[test]
    fn product_of_linear_factors() {
        let ctx = series_ops(3);
        let x = TruncatedSeries::from_terms(3, [(0, 0, lp(&[1])), (1, 1, lp(&[1]))]);
        let y = TruncatedSeries::from_terms(3, [(0, 0, lp(&[1])), (1, 0, lp(&[0, 1]))]);
        let p = ctx.mul(&x, &y).unwrap();
        let expected = TruncatedSeries::from_terms(
            3,
            [
                (0, 0, lp(&[1])),
                (1, 1, lp(&[1])),
                (1, 0, lp(&[0, 1])),
                (2, 1, lp(&[0, 1])),
            ],
        );
        assert_eq!(p, expected);
    }

    #[test]
    fn reciprocal_of_q_integer_factor() {
        let ctx = series_ops(2);
        let f = TruncatedSeries::from_terms(2, [(0, 0, lp(&[1])), (1, 0, -q_integer(2))]);
        let r = ctx.reciprocal(&f).unwrap();
        assert_eq!(r.coeff(0, 0), lp(&[1]));
        assert_eq!(r.coeff(1, 0), lp(&[1, 1]));
        assert_eq!(r.coeff(2, 0), lp(&[1, 2, 1]));
        assert_eq!(r, ctx.geometric(&apoly_term(0, q_integer(2))));
        assert_eq!(ctx.div_linear(&ctx.one(), &apoly_term(0, q_integer(2))).unwrap(), r);
    }

    #[test]
    fn reciprocal_rejects_non_units() {
        let ctx = series_ops(2);
        assert!(ctx.reciprocal(&ctx.constant(2)).is_err());
        let with_a = TruncatedSeries::from_terms(2, [(0, 0, lp(&[1])), (0, 1, lp(&[1]))]);
        assert!(ctx.reciprocal(&with_a).is_err());
        assert!(!has_unit_constant_term(&with_a));
        let qunit = TruncatedSeries::monomial(2, 0, 0, LaurentPoly::monomial(-1, 3));
        let r = ctx.reciprocal(&qunit).unwrap();
        assert_eq!(r.coeff(0, 0), LaurentPoly::monomial(-1, -3));
    }

    #[test]
    fn a_cap_and_order_truncate() {
        let ctx = series_ops(2).with_a_cap(1);
        let x = TruncatedSeries::from_terms(2, [(1, 1, lp(&[1]))]);
        let sq = ctx.mul(&x, &x).unwrap();
        assert!(sq.is_zero());
        let shifted = x.shift(2, 0);
        assert!(shifted.is_zero());
        assert!(ctx.add(&x, &TruncatedSeries::zero(3)).is_err());
    }
}
