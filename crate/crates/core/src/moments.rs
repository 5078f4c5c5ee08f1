//! Exact means, variances and second factorial moments of `X_{n,k}`,
//! `Y_{n,k}`, `X_n` and `Y_n`, in closed form and by two independent routes.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::crossings::Statistic;
use crate::distribution::{t_poly_brute_stat, t_poly_global, t_poly_jr, Method};
use crate::error::{Error, Result};
use crate::exactnum::{
    bell, bell_power_sum, binomial, rat, rat_int, rational_json, stirling2, BigInt, BigRational,
};
use crate::partitions::enumerate_all;
use crate::qpoly::LaurentPoly;

fn s(n: i64, k: i64) -> BigRational {
    rat_int(stirling2(n, k))
}

fn r(v: i64) -> BigRational {
    rat_int(v)
}

fn check_nk(n: usize, k: usize) -> Result<(i64, i64, BigRational)> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok((n as i64, k as i64, s(n as i64, k as i64)))
}

/// `E(X_{n,k})` in closed form.
pub fn mean_block_linear(n: usize, k: usize) -> Result<BigRational> {
    let (n, k, snk) = check_nk(n, k)?;
    Ok(rat(n * (k - 1), 2) - rat(5 * k * (k - 1), 4) + rat(3 * (n + 1 - k), 2) * s(n, k - 1) / snk)
}

/// `E(Y_{n,k})` in closed form:
/// `n(k-1)/2 - n(4n-5k+1)/2 r_{1,1} - 2 C(n,2) r_{2,2} + C(n,4) r_{4,2}` with
/// `r_{i,j} = S_{n-i,k-j} / S_{n,k}`.
pub fn mean_block_circular(n: usize, k: usize) -> Result<BigRational> {
    let (n, k, snk) = check_nk(n, k)?;
    let c2 = rat_int(binomial(n, 2));
    let c4 = rat_int(binomial(n, 4));
    Ok(rat(n * (k - 1), 2) - rat(n * (4 * n - 5 * k + 1), 2) * s(n - 1, k - 1) / &snk
        - r(2) * c2 * s(n - 2, k - 2) / &snk
        + c4 * s(n - 4, k - 2) / &snk)
}

/// `Var(X_{n,k})` in closed form.
pub fn var_block_linear(n: usize, k: usize) -> Result<BigRational> {
    let (n, k, snk) = check_nk(n, k)?;
    let r1 = s(n, k - 1) / &snk;
    let r2 = s(n, k - 2) / &snk;
    Ok(rat((k * k - 1) * n, 12) - rat(k * (k - 1) * (2 * k + 5), 72)
        + rat(-15 * n * n + (56 * k - 43) * n - 2 * (k - 1) * (14 * k - 1), 12) * &r1
        + rat((n - k + 2) * (27 * n - 27 * k + 1), 12) * r2
        - rat(9 * (n + 1 - k) * (n + 1 - k), 4) * &r1 * &r1)
}

/// `E(X_{n,k}(X_{n,k} - 1)) = T''_{n,k}(1) / S_{n,k}` in closed form.
pub fn second_factorial_block(n: usize, k: usize) -> Result<BigRational> {
    let (n, k, snk) = check_nk(n, k)?;
    let r1 = s(n, k - 1) / &snk;
    let r2 = s(n, k - 2) / &snk;
    Ok(rat((k - 1) * (k - 1) * n * n, 4) - rat((k - 1) * (15 * k * k - 16 * k + 5) * n, 12)
        + rat(k * (k - 1) * (225 * k * k - 229 * k + 170), 144)
        + rat(
            (18 * k - 33) * n * n - (63 * k * k - 137 * k + 79) * n + (k - 1) * (45 * k * k - 73 * k + 20),
            12,
        ) * r1
        + rat(27 * n * n - (54 * k - 55) * n + (k - 2) * (27 * k - 1), 12) * r2)
}

fn bell_ratio(n: usize, shift: usize) -> BigRational {
    BigRational::new(bell(n + shift), bell(n))
}

fn check_n(n: usize) -> Result<i64> {
    if n == 0 {
        return Err(Error::invalid("need n >= 1"));
    }
    Ok(n as i64)
}

/// `E(X_n)` from Bell-number ratios.
pub fn mean_global_linear(n: usize) -> Result<BigRational> {
    let ni = check_n(n)?;
    Ok(rat(-5, 4) * bell_ratio(n, 2) + rat(2 * ni + 9, 4) * bell_ratio(n, 1) + rat(2 * ni + 1, 4))
}

/// `E(X_n^2 - X_n)` from Bell-number ratios.
pub fn second_factorial_global(n: usize) -> Result<BigRational> {
    let n2 = check_n(n)?;
    let n = n2 as usize;
    let nn = n2 * n2;
    Ok(rat(25, 16) * bell_ratio(n, 4) - rat(90 * n2 + 407, 72) * bell_ratio(n, 3)
        + rat(12 * nn + 52 * n2 + 223, 48) * bell_ratio(n, 2)
        + rat(36 * nn - 292, 72) * bell_ratio(n, 1)
        + rat(36 * nn - 48 * n2 - 59, 144))
}

/// `Var(X_n) = E(X_n^2 - X_n) + E(X_n) - E(X_n)^2`.
pub fn var_global_linear(n: usize) -> Result<BigRational> {
    let m = mean_global_linear(n)?;
    Ok(second_factorial_global(n)? + &m - &m * &m)
}

/// `E(Y_n)` by averaging the closed-form block means with weights `S_{n,k}`.
pub fn mean_global_circular(n: usize) -> Result<BigRational> {
    check_n(n)?;
    let mut acc = BigRational::zero();
    for k in 1..=n {
        acc += s(n as i64, k as i64) * mean_block_circular(n, k)?;
    }
    Ok(acc / rat_int(bell(n)))
}

/// `E(Y_{n,k} - X_{n,k})` in closed form.
pub fn mean_diff_circular(n: usize, k: usize) -> Result<BigRational> {
    let (n, k, snk) = check_nk(n, k)?;
    let c2 = rat_int(binomial(n, 2));
    let c4 = rat_int(binomial(n, 4));
    Ok(rat(5 * k * (k - 1), 4) - rat(3 * (n + 1 - k), 2) * s(n, k - 1) / &snk
        - rat(n * (4 * n - 5 * k + 1), 2) * s(n - 1, k - 1) / &snk
        - r(2) * c2 * s(n - 2, k - 2) / &snk
        + c4 * s(n - 4, k - 2) / &snk)
}

/// The upper bound
/// `(5/2 B^(4)_n + 5 n B^(3)_{n-1} + 2 C(n,4) B^(2)_{n-4}) / B_n`
/// on `Var(Y_n - X_n)`, where `B^(r)_m = sum_k k^r S_{m,k}`.
pub fn var_diff_bound(n: usize) -> Result<BigRational> {
    let ni = check_n(n)?;
    let total = rat(5, 2) * rat_int(bell_power_sum(ni, 4))
        + r(5 * ni) * rat_int(bell_power_sum(ni - 1, 3))
        + r(2) * rat_int(binomial(ni, 4)) * rat_int(bell_power_sum(ni - 4, 2));
    Ok(total / rat_int(bell(n)))
}

/// Route by which a [`MomentReport`] was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MomentMethod {
    ClosedForm,
    FromPoly,
    Brute,
}

impl MomentMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            MomentMethod::ClosedForm => "closed_form",
            MomentMethod::FromPoly => "from_poly",
            MomentMethod::Brute => "brute",
        }
    }
}

impl fmt::Display for MomentMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for MomentMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed_form" | "closed" => Ok(MomentMethod::ClosedForm),
            "from_poly" | "poly" => Ok(MomentMethod::FromPoly),
            "brute" => Ok(MomentMethod::Brute),
            _ => Err(Error::Parse {
                input: s.into(),
                reason: "expected closed_form, from_poly or brute".into(),
            }),
        }
    }
}

/// Mean, variance and second factorial moment of one statistic, either on
/// `Π_n^k` (`k` present) or on all of `Π_n`. Fields without a closed form
/// (the circular variance) are `None` for the closed-form route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MomentReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub stat: Statistic,
    #[serde(with = "rational_json")]
    pub mean: BigRational,
    #[serde(with = "rational_json::option", default)]
    pub variance: Option<BigRational>,
    #[serde(with = "rational_json::option", default)]
    pub second_factorial: Option<BigRational>,
    pub method: MomentMethod,
}

impl MomentReport {
    fn from_counts(n: usize, k: Option<usize>, stat: Statistic, method: MomentMethod, poly: &LaurentPoly) -> Self {
        let total = rat_int(poly.eval_one());
        let mean = rat_int(poly.derivative_at_one(1)) / &total;
        let second = rat_int(poly.derivative_at_one(2)) / &total;
        let variance = &second + &mean - &mean * &mean;
        MomentReport {
            n,
            k,
            stat,
            mean,
            variance: Some(variance),
            second_factorial: Some(second),
            method,
        }
    }
}

/// Computes a [`MomentReport`] by the requested route.
///
/// `FromPoly` differentiates `T(q)` at `q = 1` and needs the linear
/// statistic; `Brute` enumerates partitions.
pub fn moment_report(n: usize, k: Option<usize>, stat: Statistic, method: MomentMethod) -> Result<MomentReport> {
    if let Some(k) = k {
        check_nk(n, k)?;
    } else {
        check_n(n)?;
    }
    match method {
        MomentMethod::ClosedForm => {
            let (mean, variance, second_factorial) = match (stat, k) {
                (Statistic::Linear, Some(k)) => (
                    mean_block_linear(n, k)?,
                    Some(var_block_linear(n, k)?),
                    Some(second_factorial_block(n, k)?),
                ),
                (Statistic::Linear, None) => (
                    mean_global_linear(n)?,
                    Some(var_global_linear(n)?),
                    Some(second_factorial_global(n)?),
                ),
                (Statistic::Circular, Some(k)) => (mean_block_circular(n, k)?, None, None),
                (Statistic::Circular, None) => (mean_global_circular(n)?, None, None),
            };
            Ok(MomentReport {
                n,
                k,
                stat,
                mean,
                variance,
                second_factorial,
                method,
            })
        }
        MomentMethod::FromPoly => {
            if stat == Statistic::Circular {
                return Err(Error::Domain {
                    what: "from_poly moments",
                    reason: "no distribution polynomial formula for the circular statistic".into(),
                });
            }
            let poly = match k {
                Some(k) => t_poly_jr(n, k)?.poly,
                None => t_poly_global(n, stat, Method::Jr)?,
            };
            Ok(MomentReport::from_counts(n, k, stat, method, &poly))
        }
        MomentMethod::Brute => {
            let poly = match k {
                Some(k) => t_poly_brute_stat(n, k, stat)?.poly,
                None => t_poly_global(n, stat, Method::Brute)?,
            };
            Ok(MomentReport::from_counts(n, k, stat, method, &poly))
        }
    }
}

/// Exact moments of `Y - X` over `Π_n^k` (or `Π_n`), by enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiffMoments {
    pub mean: BigRational,
    pub variance: BigRational,
    pub min: u64,
    pub max: u64,
}

/// Moments of `cr_circular - cr_linear` over partitions of `[n]`, restricted
/// to `k` blocks when `k` is given.
pub fn diff_moments_brute(n: usize, k: Option<usize>) -> Result<DiffMoments> {
    check_n(n)?;
    let mut count = BigInt::zero();
    let mut sum = BigInt::zero();
    let mut sum_sq = BigInt::zero();
    let (mut min, mut max) = (u64::MAX, 0);
    for p in enumerate_all(n)? {
        if k.is_some_and(|k| p.k() != k) {
            continue;
        }
        let (x, y) = (Statistic::Linear.of(&p), Statistic::Circular.of(&p));
        if y < x {
            return Err(Error::verification(format!("cr_circular < cr_linear on {p}")));
        }
        let d = y - x;
        min = min.min(d);
        max = max.max(d);
        count += 1u32;
        sum += d;
        sum_sq += d * d;
    }
    if count.is_zero() {
        return Err(Error::invalid(format!("no partitions of [{n}] with the requested block count")));
    }
    let c = rat_int(count);
    let mean = rat_int(sum) / &c;
    let variance = rat_int(sum_sq) / &c - &mean * &mean;
    Ok(DiffMoments { mean, variance, min, max })
}

/// `(1/B_n) sum_k S_{n,k} m(n,k)`, the law of total expectation.
pub fn total_expectation(n: usize, m: impl Fn(usize, usize) -> Result<BigRational>) -> Result<BigRational> {
    check_n(n)?;
    let mut acc = BigRational::zero();
    for k in 1..=n {
        acc += s(n as i64, k as i64) * m(n, k)?;
    }
    Ok(acc / rat_int(bell(n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        assert_eq!(mean_block_linear(4, 2).unwrap(), rat(1, 7));
        assert_eq!(mean_block_circular(4, 2).unwrap(), rat(1, 7));
        assert_eq!(var_block_linear(4, 2).unwrap(), rat(6, 49));
        assert_eq!(second_factorial_block(4, 2).unwrap(), rat(0, 1));
        assert_eq!(mean_global_linear(4).unwrap(), rat(1, 15));
        assert_eq!(second_factorial_global(4).unwrap(), rat(0, 1));
        assert_eq!(var_global_linear(4).unwrap(), rat(14, 225));
        assert_eq!(mean_diff_circular(4, 2).unwrap(), rat(0, 1));
        for n in 1..=8 {
            assert!(mean_block_linear(n, 1).unwrap().is_zero());
            assert!(mean_block_linear(n, n).unwrap().is_zero());
            assert!(var_block_linear(n, 1).unwrap().is_zero());
            assert!(var_block_linear(n, n).unwrap().is_zero());
            assert!(mean_block_circular(n, 1).unwrap().is_zero());
            assert!(mean_diff_circular(n, 1).unwrap().is_zero());
            assert!(second_factorial_block(n, 1).unwrap().is_zero());
        }
        for n in 1..=3 {
            assert!(mean_global_linear(n).unwrap().is_zero());
        }
        assert!(var_global_linear(1).unwrap().is_zero());
    }

    #[test]
    fn closed_forms_match_polynomials() {
        for n in 1..=14 {
            for k in 1..=n {
                let poly = moment_report(n, Some(k), Statistic::Linear, MomentMethod::FromPoly).unwrap();
                let closed = moment_report(n, Some(k), Statistic::Linear, MomentMethod::ClosedForm).unwrap();
                assert_eq!(poly, MomentReport { method: MomentMethod::FromPoly, ..closed });
            }
            let poly = moment_report(n, None, Statistic::Linear, MomentMethod::FromPoly).unwrap();
            let closed = moment_report(n, None, Statistic::Linear, MomentMethod::ClosedForm).unwrap();
            assert_eq!(poly, MomentReport { method: MomentMethod::FromPoly, ..closed });
        }
    }

    #[test]
    fn circular_closed_form_matches_enumeration() {
        for n in 1..=8 {
            for k in 1..=n {
                let brute = moment_report(n, Some(k), Statistic::Circular, MomentMethod::Brute).unwrap();
                assert_eq!(brute.mean, mean_block_circular(n, k).unwrap(), "({n},{k})");
                let d = diff_moments_brute(n, Some(k)).unwrap();
                assert_eq!(d.mean, mean_diff_circular(n, k).unwrap());
            }
            let brute = moment_report(n, None, Statistic::Circular, MomentMethod::Brute).unwrap();
            assert_eq!(brute.mean, mean_global_circular(n).unwrap());
        }
    }

    #[test]
    fn total_expectation_law() {
        for n in 1..=20 {
            assert_eq!(total_expectation(n, mean_block_linear).unwrap(), mean_global_linear(n).unwrap());
            assert_eq!(
                total_expectation(n, second_factorial_block).unwrap(),
                second_factorial_global(n).unwrap()
            );
        }
    }

    #[test]
    fn report_json() {
        let rep = moment_report(4, Some(2), Statistic::Circular, MomentMethod::ClosedForm).unwrap();
        let v = serde_json::to_value(&rep).unwrap();
        assert_eq!(v["mean"], serde_json::json!({"num": "1", "den": "7"}));
        assert_eq!(v["variance"], serde_json::Value::Null);
        assert_eq!(v["method"], "closed_form");
        let back: MomentReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, rep);
        assert!(moment_report(4, Some(2), Statistic::Circular, MomentMethod::FromPoly).is_err());
        assert!(moment_report(4, Some(5), Statistic::Linear, MomentMethod::ClosedForm).is_err());
    }
}
