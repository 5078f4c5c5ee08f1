//! The distribution polynomial `T_{n,k}(q) = sum over partitions of [n] into
//! k blocks of q^cr`, computed four independent ways, and the probability
//! mass functions derived from it.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::crossings::Statistic;
use crate::error::{Error, Result};
use crate::exactnum::{bell, binomial, stirling2, BigInt, BigRational};
use crate::partitions::{enumerate_all, enumerate_k, SetPartition};
use crate::qpoly::{
    apoly_term, gaussian_binomial, one_minus_q_pow, q_factorial, q_integer, series_ops, LaurentPoly,
    RationalFn, TruncatedSeries,
};

/// Largest `n` accepted by the closed-form routes (`ksz`, `jr`).
pub const FORMULA_HARD_LIMIT: usize = 400;
/// Largest order accepted by [`t_table_series`].
pub const SERIES_HARD_LIMIT: usize = 60;

/// How a distribution polynomial was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ksz,
    Jr,
    Series,
    Brute,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Ksz, Method::Jr, Method::Series, Method::Brute];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Ksz => "ksz",
            Method::Jr => "jr",
            Method::Series => "series",
            Method::Brute => "brute",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: "expected one of ksz, jr, series, brute".into(),
            })
    }
}

/// `T_{n,k}(q)` for one statistic, tagged with the route that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistPoly {
    pub n: usize,
    pub k: usize,
    pub stat: Statistic,
    pub method: Method,
    pub poly: LaurentPoly,
}

impl DistPoly {
    /// Checks the polynomial is genuine, has nonnegative coefficients and
    /// sums to `S_{n,k}`.
    pub fn validate(&self) -> Result<()> {
        if !self.poly.is_zero() && self.poly.min_exp() < 0 {
            return Err(Error::verification(format!(
                "T({},{}) via {} has a negative power of q: {}",
                self.n, self.k, self.method, self.poly
            )));
        }
        if self.poly.coeffs().iter().any(Signed::is_negative) {
            return Err(Error::verification(format!(
                "T({},{}) via {} has a negative coefficient: {}",
                self.n, self.k, self.method, self.poly
            )));
        }
        let s = stirling2(self.n as i64, self.k as i64);
        if self.poly.eval_one() != s {
            return Err(Error::verification(format!(
                "T({},{})(1) via {} is {}, expected S = {s}",
                self.n,
                self.k,
                self.method,
                self.poly.eval_one()
            )));
        }
        Ok(())
    }

    /// Coefficients of `q^0, q^1, ...`.
    pub fn coeffs(&self) -> Vec<BigInt> {
        self.poly.dense_from_zero().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly.degree().map(|d| d as usize)
    }

    pub fn to_json(&self) -> DistPolyJson {
        DistPolyJson {
            n: self.n,
            k: Some(self.k),
            stat: self.stat,
            method: self.method,
            coeffs: self.coeffs().iter().map(ToString::to_string).collect(),
        }
    }
}

/// Wire form: `{"n", "k", "stat", "method", "coeffs"}` with decimal-string
/// coefficients of `q^i` at index `i`. `k` is absent for the sum over all `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistPolyJson {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub stat: Statistic,
    pub method: Method,
    pub coeffs: Vec<String>,
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

fn finish(n: usize, k: usize, stat: Statistic, method: Method, poly: LaurentPoly) -> Result<DistPoly> {
    let d = DistPoly {
        n,
        k,
        stat,
        method,
        poly,
    };
    d.validate()?;
    Ok(d)
}

/// `T_{n,k}(q)` from the alternating sum with `[j]_q^n / [j]_q!` terms,
/// carried out in exact rational-function arithmetic.
pub fn t_poly_ksz(n: usize, k: usize) -> Result<DistPoly> {
    check_nk(n, k)?;
    Error::capacity_check("n", n, FORMULA_HARD_LIMIT)?;
    let one_minus_q = LaurentPoly::from_coeffs(&[1, -1]);
    let mut total = RationalFn::zero();
    for j in 1..=k {
        let m = k - j;
        // B_{n,k,j} * [m]_q!, a polynomial since [m - i]_q! divides [m]_q!.
        let fm = q_factorial(m);
        let mut b_scaled = LaurentPoly::zero();
        let mut pow_one_minus_q = LaurentPoly::one();
        for i in 0..=m {
            let r = m - i;
            let ratio = fm.exact_div(&q_factorial(r))?;
            let tail = LaurentPoly::monomial(binomial(n as i64, i as i64), j as i64)
                + LaurentPoly::constant(binomial(n as i64, i as i64 - 1));
            let term = &(&pow_one_minus_q * &ratio) * &tail;
            b_scaled += term.shift((r * (r + 1) / 2) as i64);
            pow_one_minus_q = &pow_one_minus_q * &one_minus_q;
        }
        let mut num = q_integer(j).pow(n as u32) * b_scaled;
        num = num.shift(-((k * j) as i64));
        if (k - j) % 2 == 1 {
            num = -num;
        }
        let den = q_factorial(j) * fm;
        total = &total + &RationalFn::new(num, den)?;
    }
    let poly = total.into_poly().map_err(|e| {
        Error::verification(format!("T({n},{k}) via ksz did not reduce to a polynomial: {e}"))
    })?;
    finish(n, k, Statistic::Linear, Method::Ksz, poly)
}

/// `T_{n,k}(q)` from the double sum of binomial-weighted Gaussian
/// coefficients, divided exactly by `(1 - q)^(n-k)`.
pub fn t_poly_jr(n: usize, k: usize) -> Result<DistPoly> {
    check_nk(n, k)?;
    Error::capacity_check("n", n, FORMULA_HARD_LIMIT)?;
    let (ni, ki) = (n as i64, k as i64);
    let mut sum = LaurentPoly::zero();
    for j in 0..=k {
        let ji = j as i64;
        for i in j..=n - k {
            let ii = i as i64;
            let mut c = binomial(ni, ki + ii) * binomial(ni, ki - ji)
                - binomial(ni, ki + ii + 1) * binomial(ni, ki - ji - 1);
            if c.is_zero() {
                continue;
            }
            if i % 2 == 1 {
                c = -c;
            }
            sum += gaussian_binomial(ii, ji).scale(&c).shift(ji * (ji + 1) / 2);
        }
    }
    let poly = sum.exact_div(&one_minus_q_pow((n - k) as u32))?;
    finish(n, k, Statistic::Linear, Method::Jr, poly)
}

/// Every `T_{n,k}(q)` with `0 <= k <= n <= nmax`, read off the bivariate
/// generating function in `a` (blocks) and `t` (size).
///
/// The result is indexed `[n][k]`.
pub fn t_table_series(nmax: usize) -> Result<Vec<Vec<DistPoly>>> {
    Error::capacity_check("nmax", nmax, SERIES_HARD_LIMIT)?;
    let ctx = series_ops(nmax).with_a_cap(nmax);
    let mut total = ctx.one();
    let mut prod = ctx.one();
    for k in 1..=nmax {
        // (1 - q^-k) as the a-coefficient of c_k.
        let mut c = apoly_term(0, q_integer(k));
        let a_part = LaurentPoly::one() - LaurentPoly::monomial(1, -(k as i64));
        c.extend(apoly_term(1, a_part));
        prod = ctx.div_linear(&prod, &c)?;
        let shift = k as i64 - (k * (k + 1) / 2) as i64;
        let term = prod.shift(k, k).scale(&LaurentPoly::monomial(1, shift));
        total = ctx.add(&total, &term)?;
    }
    let mut table = Vec::with_capacity(nmax + 1);
    for n in 0..=nmax {
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let poly = total.coeff(n, k);
            row.push(finish(n, k, Statistic::Linear, Method::Series, poly)?);
        }
        table.push(row);
    }
    Ok(table)
}

/// One cell of the series table.
pub fn t_poly_series(n: usize, k: usize) -> Result<DistPoly> {
    check_nk(n, k)?;
    let mut table = t_table_series(n)?;
    Ok(table.swap_remove(n).swap_remove(k))
}

fn histogram_poly<I: Iterator<Item = SetPartition>>(it: I, stat: Statistic) -> LaurentPoly {
    let mut counts: Vec<u64> = Vec::new();
    for p in it {
        let c = stat.of(&p) as usize;
        if counts.len() <= c {
            counts.resize(c + 1, 0);
        }
        counts[c] += 1;
    }
    LaurentPoly::new(0, counts.into_iter().map(BigInt::from).collect())
}

/// `T_{n,k}(q)` for the linear statistic by enumerating partitions.
pub fn t_poly_brute(n: usize, k: usize) -> Result<DistPoly> {
    t_poly_brute_stat(n, k, Statistic::Linear)
}

/// The circular analogue of `T_{n,k}(q)`, by enumeration.
pub fn t_poly_brute_circular(n: usize, k: usize) -> Result<DistPoly> {
    t_poly_brute_stat(n, k, Statistic::Circular)
}

pub fn t_poly_brute_stat(n: usize, k: usize, stat: Statistic) -> Result<DistPoly> {
    check_nk(n, k)?;
    let poly = histogram_poly(enumerate_k(n, k)?, stat);
    finish(n, k, stat, Method::Brute, poly)
}

/// `T_{n,k}(q)` for any supported `(stat, method)` pair. Only enumeration
/// is available for the circular statistic.
pub fn t_poly(n: usize, k: usize, stat: Statistic, method: Method) -> Result<DistPoly> {
    match (stat, method) {
        (Statistic::Linear, Method::Ksz) => t_poly_ksz(n, k),
        (Statistic::Linear, Method::Jr) => t_poly_jr(n, k),
        (Statistic::Linear, Method::Series) => t_poly_series(n, k),
        (_, Method::Brute) => t_poly_brute_stat(n, k, stat),
        (Statistic::Circular, m) => Err(Error::Domain {
            what: "circular distribution",
            reason: format!("no closed form; method {m} is unavailable, use brute"),
        }),
    }
}

/// `sum_k T_{n,k}(q)`, the distribution polynomial over all of `Π_n`.
pub fn t_poly_global(n: usize, stat: Statistic, method: Method) -> Result<LaurentPoly> {
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    match (stat, method) {
        (_, Method::Brute) => Ok(histogram_poly(enumerate_all(n)?, stat)),
        (Statistic::Linear, Method::Series) => {
            let table = t_table_series(n)?;
            Ok(table[n].iter().map(|d| d.poly.clone()).sum())
        }
        _ => (1..=n).map(|k| t_poly(n, k, stat, method).map(|d| d.poly)).sum(),
    }
}

/// A finite probability mass function on nonnegative integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pmf {
    pub support: Vec<u64>,
    #[serde(with = "rational_vec")]
    pub probs: Vec<BigRational>,
}

mod rational_vec {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::exactnum::BigRational;

    #[derive(Serialize, Deserialize)]
    struct R(#[serde(with = "crate::exactnum::rational_json")] BigRational);

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().cloned().map(R).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Ok(Vec::<R>::deserialize(d)?.into_iter().map(|r| r.0).collect())
    }
}

impl Pmf {
    /// Normalizes the coefficients of a counting polynomial by their sum.
    pub fn from_poly(poly: &LaurentPoly) -> Result<Self> {
        let total = poly.eval_one();
        if total.is_zero() {
            return Err(Error::invalid("cannot normalize an empty distribution"));
        }
        let mut support = Vec::new();
        let mut probs = Vec::new();
        for (i, c) in poly.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let x = poly.min_exp() + i as i64;
            if x < 0 || c.is_negative() {
                return Err(Error::invalid(format!("{poly} is not a counting polynomial")));
            }
            support.push(x as u64);
            probs.push(BigRational::new(c.clone(), total.clone()));
        }
        Ok(Pmf { support, probs })
    }

    pub fn point_mass(x: u64) -> Self {
        Pmf {
            support: vec![x],
            probs: vec![BigRational::one()],
        }
    }

    pub fn prob(&self, x: u64) -> BigRational {
        self.support
            .binary_search(&x)
            .map(|i| self.probs[i].clone())
            .unwrap_or_else(|_| BigRational::zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.support.iter().copied().zip(&self.probs)
    }

    /// `E(X^r)`.
    pub fn raw_moment(&self, r: u32) -> BigRational {
        self.iter()
            .map(|(x, p)| p * BigRational::from_integer(BigInt::from(x).pow(r)))
            .sum()
    }

    pub fn mean(&self) -> BigRational {
        self.raw_moment(1)
    }

    pub fn variance(&self) -> BigRational {
        let m = self.mean();
        self.raw_moment(2) - &m * &m
    }

    /// `E(X(X-1))`.
    pub fn second_factorial(&self) -> BigRational {
        self.raw_moment(2) - self.raw_moment(1)
    }

    pub fn total(&self) -> BigRational {
        self.probs.iter().sum()
    }

    /// `(x, Pr(X <= x))` at each support point.
    pub fn cdf(&self) -> Vec<(u64, BigRational)> {
        let mut acc = BigRational::zero();
        self.iter()
            .map(|(x, p)| {
                acc += p;
                (x, acc.clone())
            })
            .collect()
    }
}

/// Law of `X_{n,k}` (linear) or `Y_{n,k}` (circular) under the uniform
/// distribution on partitions of `[n]` with `k` blocks.
pub fn pmf_block(n: usize, k: usize, stat: Statistic) -> Result<Pmf> {
    let method = match stat {
        Statistic::Linear => Method::Jr,
        Statistic::Circular => Method::Brute,
    };
    Pmf::from_poly(&t_poly(n, k, stat, method)?.poly)
}

/// Law of the statistic over all partitions of `[n]`.
pub fn pmf_global(n: usize, stat: Statistic) -> Result<Pmf> {
    let method = match stat {
        Statistic::Linear => Method::Jr,
        Statistic::Circular => Method::Brute,
    };
    let poly = t_poly_global(n, stat, method)?;
    debug_assert_eq!(poly.eval_one(), bell(n));
    Pmf::from_poly(&poly)
}

/// Outcome of [`verify_stirling_series`]: how many coefficients were compared.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SeriesIdentityReport {
    pub order: usize,
    pub checked: usize,
}

/// Expands `C1 = sum a^k G_k`, `C2 = sum a^k G_k U_k` and
/// `C3 = sum a^k G_k (U_k^2 + V_k)`, with `G_k = t^k / prod (1 - i t)`,
/// `U_k = sum 1/(1 - i t)` and `V_k = sum 1/(1 - i t)^2`, and checks that
/// their `a^k t^n` coefficients are `S(n,k)`, `n S(n,k)` and
/// `n (n+1) S(n,k)` for every `n <= order`.
pub fn verify_stirling_series(order: usize) -> Result<SeriesIdentityReport> {
    Error::capacity_check("order", order, SERIES_HARD_LIMIT)?;
    let ctx = series_ops(order).with_a_cap(order);
    let mut c1 = ctx.zero();
    let mut c2 = ctx.zero();
    let mut c3 = ctx.zero();
    let mut prod = ctx.one();
    let mut u = ctx.zero();
    let mut v = ctx.zero();
    for k in 0..=order {
        if k > 0 {
            let ci = apoly_term(0, LaurentPoly::constant(k as i64));
            prod = ctx.div_linear(&prod, &ci)?;
            let geo = ctx.geometric(&ci);
            u = ctx.add(&u, &geo)?;
            v = ctx.add(&v, &ctx.mul(&geo, &geo)?)?;
        }
        let g = prod.shift(k, k);
        c1 = ctx.add(&c1, &g)?;
        c2 = ctx.add(&c2, &ctx.mul(&g, &u)?)?;
        let w = ctx.add(&ctx.mul(&u, &u)?, &v)?;
        c3 = ctx.add(&c3, &ctx.mul(&g, &w)?)?;
    }
    let mut checked = 0;
    let expect = |series: &TruncatedSeries, n: usize, k: usize, want: BigInt, name: &str| -> Result<()> {
        let got = series.coeff(n, k);
        if got != LaurentPoly::constant(want.clone()) {
            return Err(Error::verification(format!(
                "{name}: [a^{k} t^{n}] is {got}, expected {want}"
            )));
        }
        Ok(())
    };
    for n in 0..=order {
        for k in 0..=order {
            let s = stirling2(n as i64, k as i64);
            let nb = BigInt::from(n);
            expect(&c1, n, k, s.clone(), "C1")?;
            expect(&c2, n, k, &nb * &s, "C2")?;
            expect(&c3, n, k, &nb * (&nb + 1u32) * &s, "C3")?;
            checked += 3;
        }
    }
    Ok(SeriesIdentityReport { order, checked })
}

/// Counts, for a statistic, how many partitions of `[n]` with `k` blocks
/// take each value: the coefficient table of `T_{n,k}` keyed by value.
pub fn value_counts(d: &DistPoly) -> BTreeMap<u64, BigInt> {
    d.coeffs()
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u64, c))
        .collect()
}
