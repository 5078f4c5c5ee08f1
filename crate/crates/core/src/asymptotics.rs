//! Leading-term approximations with the exact values they approximate, and
//! Kolmogorov distances of standardized crossing laws to the normal law.
//!
//! Logarithms are natural. Every `o(1)` factor is replaced by its limit.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;
use statrs::function::gamma::ln_gamma;

use crate::crossings::Statistic;
use crate::distribution::{pmf_block, pmf_global, Pmf};
use crate::error::{Error, Result};
use crate::exactnum::{bell, rational_json, rational_to_f64, rational_to_scientific, ratio, stirling2, BigRational};
use crate::moments;

/// `k^n / k!`, evaluated in the log domain.
pub fn stirling_approx(n: usize, k: usize) -> f64 {
    if k <= 1 {
        return 1.0;
    }
    (n as f64 * (k as f64).ln() - ln_gamma(k as f64 + 1.0)).exp()
}

/// Leading terms of `E(X_{n,k})` and `E(Y_{n,k})`.
pub fn mean_block_approx(n: usize, k: usize, stat: Statistic) -> f64 {
    let (n, k) = (n as f64, k as f64);
    match stat {
        Statistic::Linear => (k - 1.0) * n / 2.0 - 1.25 * k * (k - 1.0),
        Statistic::Circular => (k - 1.0) * n / 2.0,
    }
}

/// Leading terms of `Var(X_{n,k})` and `Var(Y_{n,k})`.
pub fn var_block_approx(n: usize, k: usize, stat: Statistic) -> f64 {
    let (n, k) = (n as f64, k as f64);
    let lead = (k * k - 1.0) * n / 12.0;
    match stat {
        Statistic::Linear => lead - k * (k - 1.0) * (2.0 * k + 5.0) / 72.0,
        Statistic::Circular => lead,
    }
}

fn logs(n: usize) -> Result<(f64, f64)> {
    if n < 3 {
        return Err(Error::Domain {
            what: "global asymptotics",
            reason: format!("need n >= 3 so that log log n > 0, got {n}"),
        });
    }
    let l = (n as f64).ln();
    Ok((l, l.ln()))
}

/// `n^2 / (2 log n) (1 + log log n / log n)`.
pub fn mean_global_approx(n: usize) -> Result<f64> {
    let (l, ll) = logs(n)?;
    let n = n as f64;
    Ok(n * n / (2.0 * l) * (1.0 + ll / l))
}

/// `n^3 / (3 log^2 n) (1 + 2 log log n / log n)`.
pub fn var_global_approx(n: usize) -> Result<f64> {
    let (l, ll) = logs(n)?;
    let n = n as f64;
    Ok(n.powi(3) / (3.0 * l * l) * (1.0 + 2.0 * ll / l))
}

/// Approximation of `B_{n+s+t} / B_{n+s}`: `(n / log n)^t (1 + t log log n / log n)`.
pub fn bell_ratio_approx(n: usize, _s: usize, t: i64) -> Result<f64> {
    let (l, ll) = logs(n)?;
    let t = t as f64;
    Ok((n as f64 / l).powf(t) * (1.0 + t * ll / l))
}

/// Approximation of `B_{n+s+t}/B_{n+s} - B_{n+t}/B_n`.
pub fn bell_ratio_diff_approx(n: usize, s: usize, t: i64) -> Result<f64> {
    let (l, ll) = logs(n)?;
    let (s, t) = (s as f64, t as f64);
    Ok(s * t * (n as f64).powf(t - 1.0) / l.powf(t) * (1.0 + t * ll / l))
}

/// Approximation of `B_{n+u+2}/B_{n+u} - (B_{n+u+1}/B_{n+u})^2`.
pub fn bell_central_diff_approx(n: usize, _u: usize) -> Result<f64> {
    let (l, ll) = logs(n)?;
    Ok(n as f64 / (l * l) * (1.0 + 2.0 * ll / l))
}

/// Approximation of `B_{n+u+2}/B_{n+u+1} - B_{n+u+1}/B_{n+u}`.
pub fn bell_step_diff_approx(n: usize, _u: usize) -> Result<f64> {
    let (l, ll) = logs(n)?;
    Ok(1.0 / l * (1.0 + ll / l))
}

fn bell_q(top: i64, bottom: i64) -> Result<BigRational> {
    if top < 0 || bottom < 0 {
        return Err(Error::invalid(format!("Bell index out of range: B_{top} / B_{bottom}")));
    }
    Ok(ratio(bell(top as usize), bell(bottom as usize)))
}

/// Exact `B_{n+s+t} / B_{n+s}`.
pub fn bell_ratio_exact(n: usize, s: usize, t: i64) -> Result<BigRational> {
    let b = (n + s) as i64;
    bell_q(b + t, b)
}

/// Exact `B_{n+s+t}/B_{n+s} - B_{n+t}/B_n`.
pub fn bell_ratio_diff_exact(n: usize, s: usize, t: i64) -> Result<BigRational> {
    Ok(bell_ratio_exact(n, s, t)? - bell_ratio_exact(n, 0, t)?)
}

/// Exact `B_{n+u+2}/B_{n+u} - (B_{n+u+1}/B_{n+u})^2`.
pub fn bell_central_diff_exact(n: usize, u: usize) -> Result<BigRational> {
    let b = (n + u) as i64;
    let r1 = bell_q(b + 1, b)?;
    Ok(bell_q(b + 2, b)? - &r1 * &r1)
}

/// Exact `B_{n+u+2}/B_{n+u+1} - B_{n+u+1}/B_{n+u}`.
pub fn bell_step_diff_exact(n: usize, u: usize) -> Result<BigRational> {
    let b = (n + u) as i64;
    Ok(bell_q(b + 2, b + 1)? - bell_q(b + 1, b)?)
}

/// Which approximation an [`ApproxReport`] compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApproxFormula {
    Stirling,
    MeanBlock,
    VarBlock,
    MeanGlobal,
    VarGlobal,
    BellRatio,
    BellRatioDiff,
    BellCentralDiff,
    BellStepDiff,
}

impl ApproxFormula {
    pub const ALL: [ApproxFormula; 9] = [
        ApproxFormula::Stirling,
        ApproxFormula::MeanBlock,
        ApproxFormula::VarBlock,
        ApproxFormula::MeanGlobal,
        ApproxFormula::VarGlobal,
        ApproxFormula::BellRatio,
        ApproxFormula::BellRatioDiff,
        ApproxFormula::BellCentralDiff,
        ApproxFormula::BellStepDiff,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ApproxFormula::Stirling => "stirling",
            ApproxFormula::MeanBlock => "mean-block",
            ApproxFormula::VarBlock => "var-block",
            ApproxFormula::MeanGlobal => "mean-global",
            ApproxFormula::VarGlobal => "var-global",
            ApproxFormula::BellRatio => "bell-ratio",
            ApproxFormula::BellRatioDiff => "bell-ratio-diff",
            ApproxFormula::BellCentralDiff => "bell-central-diff",
            ApproxFormula::BellStepDiff => "bell-step-diff",
        }
    }

    /// Whether the formula is indexed by a block count `k`.
    pub fn needs_k(self) -> bool {
        matches!(self, ApproxFormula::Stirling | ApproxFormula::MeanBlock | ApproxFormula::VarBlock)
    }
}

impl fmt::Display for ApproxFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ApproxFormula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase().replace('_', "-");
        ApproxFormula::ALL
            .into_iter()
            .find(|f| f.as_str() == t)
            .ok_or_else(|| Error::Parse {
                input: s.to_string(),
                reason: format!(
                    "expected one of {}",
                    ApproxFormula::ALL.map(|f| f.as_str()).join(", ")
                ),
            })
    }
}

/// Parameters beyond `n` that some formulas take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApproxParams {
    pub k: Option<usize>,
    pub stat: Statistic,
    pub s: usize,
    pub t: i64,
    pub u: usize,
}

impl Default for ApproxParams {
    fn default() -> Self {
        ApproxParams {
            k: None,
            stat: Statistic::Linear,
            s: 1,
            t: 1,
            u: 0,
        }
    }
}

/// An exact value beside its approximation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ApproxReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub stat: Option<Statistic>,
    #[serde(with = "rational_json")]
    pub exact: BigRational,
    pub approx: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub formula: ApproxFormula,
}

impl ApproxReport {
    pub fn new(n: usize, k: Option<usize>, stat: Option<Statistic>, exact: BigRational, approx: f64, formula: ApproxFormula) -> Self {
        let e = rational_to_f64(&exact);
        let abs_err = (e - approx).abs();
        let rel_err = if e != 0.0 {
            abs_err / e.abs()
        } else if abs_err == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        ApproxReport {
            n,
            k,
            stat,
            exact,
            approx,
            abs_err,
            rel_err,
            formula,
        }
    }

    /// `exact / approx` in floating point.
    pub fn ratio(&self) -> f64 {
        rational_to_f64(&self.exact) / self.approx
    }

    pub const CSV_HEADER: &'static str = "n,k,stat,exact,approx,absErr,relErr,formulaTag";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:e},{:e},{:e},{}",
            self.n,
            self.k.map(|k| k.to_string()).unwrap_or_default(),
            self.stat.map(|s| s.as_str()).unwrap_or(""),
            rational_to_scientific(&self.exact, 30),
            self.approx,
            self.abs_err,
            self.rel_err,
            self.formula
        )
    }
}

fn need_k(n: usize, p: &ApproxParams, f: ApproxFormula) -> Result<usize> {
    let k = p.k.ok_or_else(|| Error::invalid(format!("formula {f} needs k")))?;
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok(k)
}

/// Computes one exact/approximate pair.
pub fn approx_report(formula: ApproxFormula, n: usize, p: &ApproxParams) -> Result<ApproxReport> {
    use ApproxFormula as F;
    let stat = p.stat;
    let (k, stat_field, exact, approx) = match formula {
        F::Stirling => {
            let k = need_k(n, p, formula)?;
            let e = BigRational::from_integer(stirling2(n as i64, k as i64));
            (Some(k), None, e, stirling_approx(n, k))
        }
        F::MeanBlock => {
            let k = need_k(n, p, formula)?;
            let e = match stat {
                Statistic::Linear => moments::mean_block_linear(n, k)?,
                Statistic::Circular => moments::mean_block_circular(n, k)?,
            };
            (Some(k), Some(stat), e, mean_block_approx(n, k, stat))
        }
        F::VarBlock => {
            let k = need_k(n, p, formula)?;
            let e = match stat {
                Statistic::Linear => moments::var_block_linear(n, k)?,
                Statistic::Circular => pmf_block(n, k, stat)?.variance(),
            };
            (Some(k), Some(stat), e, var_block_approx(n, k, stat))
        }
        F::MeanGlobal => {
            let a = mean_global_approx(n)?;
            let e = match stat {
                Statistic::Linear => moments::mean_global_linear(n)?,
                Statistic::Circular => moments::mean_global_circular(n)?,
            };
            (None, Some(stat), e, a)
        }
        F::VarGlobal => {
            let a = var_global_approx(n)?;
            let e = match stat {
                Statistic::Linear => moments::var_global_linear(n)?,
                Statistic::Circular => pmf_global(n, stat)?.variance(),
            };
            (None, Some(stat), e, a)
        }
        F::BellRatio => (None, None, bell_ratio_exact(n, p.s, p.t)?, bell_ratio_approx(n, p.s, p.t)?),
        F::BellRatioDiff => (
            None,
            None,
            bell_ratio_diff_exact(n, p.s, p.t)?,
            bell_ratio_diff_approx(n, p.s, p.t)?,
        ),
        F::BellCentralDiff => (None, None, bell_central_diff_exact(n, p.u)?, bell_central_diff_approx(n, p.u)?),
        F::BellStepDiff => (None, None, bell_step_diff_exact(n, p.u)?, bell_step_diff_approx(n, p.u)?),
    };
    Ok(ApproxReport::new(n, k, stat_field, exact, approx, formula))
}

/// Distance of a standardized law to `N(0, 1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GaussianDiagnostic {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub stat: Statistic,
    pub kolmogorov_distance: f64,
    pub standardized_mean: f64,
    pub standardized_var: f64,
}

/// Standard normal CDF through `erf`; absolute error below `1e-10`.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * (1.0 + erf(z / std::f64::consts::SQRT_2))
}

/// Kolmogorov distance of the standardized `pmf` to the normal law.
///
/// The supremum over a step function against a continuous CDF is attained
/// at an atom, from the left or from the right.
pub fn kolmogorov_to_normal(pmf: &Pmf) -> Result<(f64, f64, f64)> {
    let var = pmf.variance();
    if !var.is_positive() {
        return Err(Error::Domain {
            what: "gaussian distance",
            reason: "the distribution is degenerate (variance 0)".into(),
        });
    }
    let mean = pmf.mean();
    let sigma = rational_to_f64(&var).sqrt();
    let mut dist: f64 = 0.0;
    let mut below = BigRational::zero();
    let (mut zm, mut zv) = (0.0, 0.0);
    for (x, p) in pmf.iter() {
        let centred = BigRational::from_integer((x as i64).into()) - &mean;
        let z = rational_to_f64(&centred) / sigma;
        let pf = rational_to_f64(p);
        zm += pf * z;
        zv += pf * z * z;
        let phi = normal_cdf(z);
        let left = rational_to_f64(&below);
        below += p;
        let right = rational_to_f64(&below);
        dist = dist.max((left - phi).abs()).max((right - phi).abs());
    }
    Ok((dist.min(1.0), zm, zv - zm * zm))
}

/// Diagnostic for `X_{n,k}`/`Y_{n,k}` when `k` is given, else for `X_n`/`Y_n`.
pub fn gaussian_distance(n: usize, k: Option<usize>, stat: Statistic) -> Result<GaussianDiagnostic> {
    let pmf = match k {
        Some(k) => pmf_block(n, k, stat)?,
        None => pmf_global(n, stat)?,
    };
    let (d, m, v) = kolmogorov_to_normal(&pmf)?;
    Ok(GaussianDiagnostic {
        n,
        k,
        stat,
        kolmogorov_distance: d,
        standardized_mean: m,
        standardized_var: v,
    })
}
