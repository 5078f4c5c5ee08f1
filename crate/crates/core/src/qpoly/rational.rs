use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{Signed, Zero};

use super::laurent::{poly_gcd, LaurentPoly};
use crate::error::{Error, Result};

/// A quotient of Laurent polynomials kept in lowest terms.
///
/// The denominator is an ordinary polynomial with nonzero constant term and
/// positive leading coefficient; every monomial factor lives in the
/// numerator, and numerator and denominator share no nonunit factor over
/// `Z[q]`. Two equal fractions therefore have identical fields.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("rational function with zero denominator"));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return RationalFn {
                num,
                den: LaurentPoly::one(),
            };
        }
        let e = num.min_exp() - den.min_exp();
        let n0 = num.shift(-num.min_exp());
        let d0 = den.shift(-den.min_exp());
        let g = poly_gcd(&n0, &d0);
        let (mut n1, mut d1) = if g.is_one() {
            (n0, d0)
        } else {
            (
                n0.exact_div(&g).expect("gcd divides numerator"),
                d0.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        if d1.leading_coeff().is_negative() {
            n1 = -n1;
            d1 = -d1;
        }
        RationalFn { num: n1.shift(e), den: d1 }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFn {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The Laurent polynomial this fraction equals, if it is one.
    pub fn into_poly(self) -> Result<LaurentPoly> {
        if self.is_poly() {
            Ok(self.num)
        } else {
            Err(Error::NotDivisible(format!(
                "({}) / ({}) is not a Laurent polynomial",
                self.num, self.den
            )))
        }
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        // Powers of coprime polynomials stay coprime.
        RationalFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_poly() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn({self})")
    }
}

impl From<LaurentPoly> for RationalFn {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalFn::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &self.num * &rhs.den + &rhs.num * &self.den;
        RationalFn::normalized(num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFn {
    type Output = RationalFn;
    fn neg(self) -> RationalFn {
        RationalFn {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn sub(self, rhs: &RationalFn) -> RationalFn {
        self + &(-rhs)
    }
}

impl Mul<&RationalFn> for &RationalFn {
    type Output = RationalFn;
    fn mul(self, rhs: &RationalFn) -> RationalFn {
        if self.is_zero() || rhs.is_zero() {
            return RationalFn::zero();
        }
        RationalFn::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RationalFn> for &RationalFn {
    type Output = Result<RationalFn>;
    fn div(self, rhs: &RationalFn) -> Result<RationalFn> {
        if rhs.is_zero() {
            return Err(Error::invalid("division by the zero rational function"));
        }
        Ok(RationalFn::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }
}

impl std::iter::Sum for RationalFn {
    fn sum<I: Iterator<Item = RationalFn>>(iter: I) -> Self {
        iter.fold(RationalFn::zero(), |acc, x| &acc + &x)
    }
}

impl Zero for RationalFn {
    fn zero() -> Self {
        RationalFn::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for RationalFn {
    type Output = RationalFn;
    fn add(self, rhs: RationalFn) -> RationalFn {
        &self + &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::{q_factorial, q_integer};

    fn lp(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_coeffs(c)
    }

    #[test]
    fn canonical_form() {
        let a = RationalFn::new(lp(&[1, 0, -1]), lp(&[1, -1])).unwrap();
        assert!(a.is_poly());
        assert_eq!(a.num(), &lp(&[1, 1]));

        let b = RationalFn::new(lp(&[2, 2]), lp(&[-4, -4, 0, 0]).shift(3)).unwrap();
        assert_eq!(b.num(), &LaurentPoly::monomial(-1, -3));
        assert_eq!(b.den(), &lp(&[2]));

        let x = RationalFn::new(lp(&[1, 2]), lp(&[3, 1])).unwrap();
        let y = RationalFn::new(lp(&[2, 4]).shift(1), lp(&[6, 2]).shift(1)).unwrap();
        assert_eq!(x, y);
        assert!(RationalFn::new(lp(&[1]), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn field_operations() {
        let f3 = RationalFn::from_poly(q_factorial(3));
        let inv = RationalFn::from_poly(q_factorial(2)).recip().unwrap();
        assert_eq!((&f3 * &inv).into_poly().unwrap(), q_integer(3));

        let half = RationalFn::new(lp(&[1]), lp(&[2])).unwrap();
        assert_eq!((&half + &half), RationalFn::one());
        assert!((&half - &half).is_zero());
        assert_eq!((&half / &half).unwrap(), RationalFn::one());

        let r = RationalFn::new(lp(&[1]), lp(&[1, -1])).unwrap();
        let s = &r * &RationalFn::from_poly(lp(&[1, -1]));
        assert_eq!(s, RationalFn::one());
        assert!(r.into_poly().is_err());
    }
}
