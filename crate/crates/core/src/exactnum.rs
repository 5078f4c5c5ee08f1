//! Exact integers and rationals, and the number sequences the closed forms
//! consume: Stirling numbers of the second kind, Bell numbers, power sums
//! `B^{(r)}_n = sum_k k^r S(n, k)`, Catalan and Narayana numbers.
//!
//! Stirling numbers live in a process-wide triangular table that grows on
//! demand up to [`STIRLING_TABLE_ROWS`] rows. Beyond that, `stirling2` falls
//! back to the alternating-sum formula. Every function here is total:
//! out-of-range indices evaluate to zero.

use std::sync::RwLock;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Rows kept in the memoized Stirling triangle.
pub const STIRLING_TABLE_ROWS: usize = 640;

static STIRLING: RwLock<Vec<Vec<BigInt>>> = RwLock::new(Vec::new());

struct BellCache {
    // last Stirling row computed by the rolling recurrence
    row: Vec<BigInt>,
    values: Vec<BigInt>,
}

static BELL: RwLock<BellCache> = RwLock::new(BellCache {
    row: Vec::new(),
    values: Vec::new(),
});

fn ensure_stirling_rows(n: usize) {
    if STIRLING.read().unwrap().len() > n {
        return;
    }
    let mut table = STIRLING.write().unwrap();
    while table.len() <= n {
        let m = table.len();
        let row = if m == 0 {
            vec![BigInt::one()]
        } else {
            next_stirling_row(&table[m - 1])
        };
        table.push(row);
    }
}

fn next_stirling_row(prev: &[BigInt]) -> Vec<BigInt> {
    let m = prev.len();
    let mut row = vec![BigInt::zero(); m + 1];
    for k in 1..=m {
        let mut v = prev[k - 1].clone();
        if k < m {
            v += &prev[k] * BigInt::from(k);
        }
        row[k] = v;
    }
    row
}

/// `S(n, k)`, the number of partitions of `[n]` into `k` blocks.
///
/// `S(0, 0) = 1`; the value is zero when `n < 0`, `k < 0`, `k > n`, or
/// `k = 0 < n`.
pub fn stirling2(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let (n, k) = (n as usize, k as usize);
    if n < STIRLING_TABLE_ROWS {
        ensure_stirling_rows(n);
        return STIRLING.read().unwrap()[n][k].clone();
    }
    stirling2_explicit(n, k)
}

/// `S(n, k) = (1/k!) sum_j (-1)^j C(k, j) (k - j)^n`.
fn stirling2_explicit(n: usize, k: usize) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=k {
        let term = binomial(k as i64, j as i64) * num_traits::pow(BigInt::from(k - j), n);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc / factorial(k)
}

/// Row `n` of the Stirling triangle, `[S(n, 0), ..., S(n, n)]`.
pub fn stirling_row(n: usize) -> Vec<BigInt> {
    if n < STIRLING_TABLE_ROWS {
        ensure_stirling_rows(n);
        STIRLING.read().unwrap()[n].clone()
    } else {
        (0..=n).map(|k| stirling2_explicit(n, k)).collect()
    }
}

/// The Bell number `B_n`.
pub fn bell(n: usize) -> BigInt {
    if let Some(v) = BELL.read().unwrap().values.get(n) {
        return v.clone();
    }
    let mut cache = BELL.write().unwrap();
    while cache.values.len() <= n {
        let row = if cache.row.is_empty() {
            vec![BigInt::one()]
        } else {
            next_stirling_row(&cache.row)
        };
        let sum = row.iter().sum();
        cache.values.push(sum);
        cache.row = row;
    }
    cache.values[n].clone()
}

/// Bell number with a signed index; zero for negative `n`.
pub fn bell_i(n: i64) -> BigInt {
    if n < 0 {
        BigInt::zero()
    } else {
        bell(n as usize)
    }
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Binomial coefficient; zero when `n < 0`, `k < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= BigInt::from(n - i);
        acc /= BigInt::from(i + 1);
    }
    acc
}

/// `B^{(r)}_n = sum_{k=0}^{n} k^r S(n, k)` (with `0^0 = 1`), by direct
/// summation over the Stirling row.
pub fn bell_power_sum(n: i64, r: u32) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    stirling_row(n as usize)
        .into_iter()
        .enumerate()
        .map(|(k, s)| s * num_traits::pow(BigInt::from(k), r as usize))
        .sum()
}

/// Coefficients `a_0, ..., a_r` with `B^{(r)}_n = sum_i a_i B_{n+i}`, from
/// `a^{(0)}_0 = 1` and `a^{(r+1)}_i = a^{(r)}_{i-1} - sum_{l=i}^{r} C(r, l) a^{(l)}_i`.
pub fn bell_power_coefficients(r: u32) -> Vec<BigInt> {
    let r = r as usize;
    // rows[l][i] = a^{(l)}_i
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for cur in 0..r {
        let mut next = vec![BigInt::zero(); cur + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            let mut v = if i >= 1 { rows[cur][i - 1].clone() } else { BigInt::zero() };
            for (l, row) in rows.iter().enumerate().skip(i) {
                v -= binomial(cur as i64, l as i64) * &row[i];
            }
            *slot = v;
        }
        rows.push(next);
    }
    rows.pop().unwrap()
}

/// `B^{(r)}_n` through the Bell-number combination.
pub fn bell_power_sum_via_bell(n: i64, r: u32) -> BigInt {
    if n < 0 {
        return BigInt::zero();
    }
    bell_power_coefficients(r)
        .iter()
        .enumerate()
        .map(|(i, a)| a * bell(n as usize + i))
        .sum()
}

pub fn catalan(n: usize) -> BigInt {
    binomial(2 * n as i64, n as i64) / BigInt::from(n + 1)
}

/// `N(n, k) = C(n, k) C(n, k-1) / n` for `1 <= k <= n`, else zero.
pub fn narayana(n: i64, k: i64) -> BigInt {
    if n < 1 || k < 1 || k > n {
        return BigInt::zero();
    }
    binomial(n, k) * binomial(n, k - 1) / BigInt::from(n)
}

/// `a / b` as a reduced rational. Panics when `b` is zero.
pub fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Decimal rendering of `r` in scientific notation with `sig` significant
/// digits, truncated toward zero (e.g. `"-1.2345e3"`).
pub fn rational_to_scientific(r: &BigRational, sig: usize) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let neg = r.is_negative();
    let num = r.numer().abs();
    let den = r.denom().clone();
    // estimate the decimal exponent, then correct it
    let mut exp = num.to_string().len() as i64 - den.to_string().len() as i64;
    let scaled = |e: i64| -> BigInt {
        // floor(num / den * 10^(sig - 1 - e))
        let shift = sig as i64 - 1 - e;
        if shift >= 0 {
            (&num * num_traits::pow(BigInt::from(10), shift as usize)).div_floor(&den)
        } else {
            num.div_floor(&(&den * num_traits::pow(BigInt::from(10), (-shift) as usize)))
        }
    };
    let lower = num_traits::pow(BigInt::from(10), sig - 1);
    let upper = &lower * BigInt::from(10);
    let mut digits = scaled(exp);
    while digits >= upper {
        exp += 1;
        digits = scaled(exp);
    }
    while digits < lower {
        exp -= 1;
        digits = scaled(exp);
    }
    let ds = digits.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(&ds[..1]);
    if ds.len() > 1 {
        out.push('.');
        out.push_str(&ds[1..]);
    }
    out.push_str(&format!("e{exp}"));
    out
}

/// Converts through a 40-significant-digit decimal expansion, so the result
/// is the correctly rounded `f64` of that expansion whatever the size of the
/// numerator and denominator.
pub fn rational_to_f64(r: &BigRational) -> f64 {
    rational_to_scientific(r, 40).parse().unwrap_or(f64::NAN)
}

pub fn bigint_to_f64(v: &BigInt) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

/// Serde adapter writing a rational as `{"num": "...", "den": "..."}`.
pub mod rational_json {
    use super::{BigInt, BigRational};
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Repr {
        num: String,
        den: String,
    }

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let repr = Repr::deserialize(d)?;
        let num: BigInt = repr.num.parse().map_err(serde::de::Error::custom)?;
        let den: BigInt = repr.den.parse().map_err(serde::de::Error::custom)?;
        if den == BigInt::from(0) {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(BigRational::new(num, den))
    }

    /// Same encoding for `Option<BigRational>` (`null` when absent).
    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
            match r {
                Some(r) => super::serialize(r, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
            let repr = Option::<Repr>::deserialize(d)?;
            repr.map(|repr| {
                let num: BigInt = repr.num.parse().map_err(serde::de::Error::custom)?;
                let den: BigInt = repr.den.parse().map_err(serde::de::Error::custom)?;
                Ok(BigRational::new(num, den))
            })
            .transpose()
        }
    }
}

/// Serde adapter writing a big integer as a decimal string.
pub mod bigint_string {
    use super::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}
