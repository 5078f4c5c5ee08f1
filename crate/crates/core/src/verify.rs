//! Cross-method invariant suite behind `setcross verify`.
//!
//! Each check compares two independent routes to the same quantity and
//! reports the first disagreement it meets.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::crossings::{cr_circular, cr_linear, z_decompose, Statistic};
use crate::distribution::{t_poly, t_poly_brute_stat, t_poly_global, t_poly_jr, t_table_series, verify_stirling_series, Method, Pmf};
use crate::error::{Error, Result};
use crate::exactnum::{catalan, narayana, rat, rat_int, BigInt, BigRational};
use crate::extremal::{
    applicable_moves, brute_extremal, build_pi, g_sequence, lambda_star, max_block, max_global, max_pair,
    maximizer_count, maximizer_count_global, maximizer_shapes, move_delta, weight_circular, weight_linear, weights_rt,
};
use crate::moments::{
    diff_moments_brute, mean_block_circular, mean_block_linear, mean_global_linear, second_factorial_block,
    second_factorial_global, var_block_linear, var_diff_bound, var_global_linear,
};
use crate::partitions::{block_sizes, enumerate_all, IntegerPartition, SetPartition};
use crate::sampling::PartitionSampler;

/// How far each check reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    Quick,
    Full,
}

impl VerifyLevel {
    fn pick(self, quick: usize, full: usize) -> usize {
        match self {
            VerifyLevel::Quick => quick,
            VerifyLevel::Full => full,
        }
    }
}

impl fmt::Display for VerifyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerifyLevel::Quick => "quick",
            VerifyLevel::Full => "full",
        })
    }
}

impl FromStr for VerifyLevel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "quick" => Ok(VerifyLevel::Quick),
            "full" => Ok(VerifyLevel::Full),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected quick or full".into(),
            }),
        }
    }
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn fail(msg: String) -> Error {
    Error::Verification(msg)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg()))
    }
}

/// The partition drawn in the introductory figure, with its two values.
pub const FIGURE_PARTITION: &str = "1 10/2 3 7 9/4/5 6 12/8 11";

pub fn check_figure() -> Result<String> {
    let p: SetPartition = FIGURE_PARTITION.parse()?;
    let (l, c) = (cr_linear(&p), cr_circular(&p));
    ensure(l == 4 && c == 9, || format!("{FIGURE_PARTITION}: linear {l}, circular {c}, expected 4 and 9"))?;
    Ok(format!("{FIGURE_PARTITION}: linear 4, circular 9"))
}

/// KSZ, JR, series extraction and enumeration agree for `k <= n <= nmax`.
pub fn check_four_way(nmax: usize) -> Result<String> {
    let table = t_table_series(nmax)?;
    let mut cells = 0;
    for n in 1..=nmax {
        for k in 1..=n {
            let reference = t_poly(n, k, Statistic::Linear, Method::Brute)?.poly;
            for (m, p) in [
                (Method::Ksz, t_poly(n, k, Statistic::Linear, Method::Ksz)?.poly),
                (Method::Jr, t_poly_jr(n, k)?.poly),
                (Method::Series, table[n][k].poly.clone()),
            ] {
                ensure(p == reference, || format!("T_{{{n},{k}}}: {m} gives {p}, enumeration gives {reference}"))?;
            }
            cells += 1;
        }
    }
    Ok(format!("{cells} cells, n <= {nmax}"))
}

/// Constant terms are Narayana numbers; their row sums are Catalan numbers.
pub fn check_noncrossing(nmax: usize) -> Result<String> {
    for n in 1..=nmax {
        let mut row = BigInt::zero();
        for k in 1..=n {
            let c0 = t_poly_jr(n, k)?.poly.coeff(0);
            let nar = narayana(n as i64, k as i64);
            ensure(c0 == nar, || format!("[q^0] T_{{{n},{k}}} = {c0}, N({n},{k}) = {nar}"))?;
            row += c0;
        }
        ensure(row == catalan(n), || format!("noncrossing partitions of [{n}]: {row}"))?;
    }
    Ok(format!("n <= {nmax}"))
}

fn pmf_of(poly: &crate::qpoly::LaurentPoly) -> Result<Pmf> {
    Pmf::from_poly(poly)
}

/// Closed-form moments against enumeration (`n <= brute`) and against
/// derivatives of the JR polynomials (`n <= poly`).
pub fn check_moments(brute: usize, poly: usize) -> Result<String> {
    for n in 1..=brute {
        for k in 1..=n {
            let x = pmf_of(&t_poly_brute_stat(n, k, Statistic::Linear)?.poly)?;
            let y = pmf_of(&t_poly_brute_stat(n, k, Statistic::Circular)?.poly)?;
            ensure(mean_block_linear(n, k)? == x.mean(), || format!("E(X_{{{n},{k}}})"))?;
            ensure(var_block_linear(n, k)? == x.variance(), || format!("Var(X_{{{n},{k}}})"))?;
            ensure(second_factorial_block(n, k)? == x.second_factorial(), || format!("E(X(X-1)) at ({n},{k})"))?;
            ensure(mean_block_circular(n, k)? == y.mean(), || format!("E(Y_{{{n},{k}}})"))?;
        }
        let x = pmf_of(&t_poly_global(n, Statistic::Linear, Method::Brute)?)?;
        ensure(mean_global_linear(n)? == x.mean(), || format!("E(X_{n})"))?;
        ensure(second_factorial_global(n)? == x.second_factorial(), || format!("E(X_{n}^2 - X_{n})"))?;
        ensure(var_global_linear(n)? == x.variance(), || format!("Var(X_{n})"))?;
    }
    for n in 1..=poly {
        for k in 1..=n {
            let x = pmf_of(&t_poly_jr(n, k)?.poly)?;
            ensure(mean_block_linear(n, k)? == x.mean(), || format!("E(X_{{{n},{k}}}) vs T'(1)"))?;
            ensure(var_block_linear(n, k)? == x.variance(), || format!("Var(X_{{{n},{k}}}) vs T''(1)"))?;
            ensure(second_factorial_block(n, k)? == x.second_factorial(), || format!("T''_{{{n},{k}}}(1)"))?;
        }
        let x = pmf_of(&t_poly_global(n, Statistic::Linear, Method::Jr)?)?;
        ensure(mean_global_linear(n)? == x.mean(), || format!("E(X_{n}) vs jr"))?;
        ensure(var_global_linear(n)? == x.variance(), || format!("Var(X_{n}) vs jr"))?;
    }
    Ok(format!("enumeration n <= {brute}, polynomials n <= {poly}"))
}

pub fn check_worked_rationals() -> Result<String> {
    let x = pmf_of(&t_poly_brute_stat(4, 2, Statistic::Linear)?.poly)?;
    let y = pmf_of(&t_poly_brute_stat(4, 2, Statistic::Circular)?.poly)?;
    let g = pmf_of(&t_poly_global(4, Statistic::Linear, Method::Brute)?)?;
    let cases = [
        ("E(X_{4,2})", x.mean(), mean_block_linear(4, 2)?, rat(1, 7)),
        ("E(Y_{4,2})", y.mean(), mean_block_circular(4, 2)?, rat(1, 7)),
        ("Var(X_{4,2})", x.variance(), var_block_linear(4, 2)?, rat(6, 49)),
        ("E(X_4)", g.mean(), mean_global_linear(4)?, rat(1, 15)),
        ("Var(X_4)", g.variance(), var_global_linear(4)?, rat(14, 225)),
    ];
    for (name, brute, closed, want) in cases {
        ensure(brute == want && closed == want, || format!("{name}: enumeration {brute}, closed form {closed}, expected {want}"))?;
    }
    Ok("1/7, 1/7, 6/49, 1/15, 14/225".into())
}

/// `deg T_{n,k} = M^(l)_{n,k}`.
pub fn check_degree(nmax: usize) -> Result<String> {
    for n in 1..=nmax {
        for k in 1..=n {
            let d = t_poly_jr(n, k)?.degree().unwrap_or(0) as u64;
            let m = max_block(n, k, Statistic::Linear)?;
            ensure(d == m, || format!("deg T_{{{n},{k}}} = {d}, maximum {m}"))?;
        }
    }
    Ok(format!("n <= {nmax}"))
}

/// Closed-form maxima and linear maximizer counts against enumeration.
pub fn check_extremal_brute(nmax: usize) -> Result<String> {
    for n in 1..=nmax {
        let b = brute_extremal(n)?;
        for stat in Statistic::ALL {
            for k in 1..=n {
                let (got, want) = (b.max_block(k, stat), max_block(n, k, stat)?);
                ensure(got == want, || format!("{stat} max over ({n},{k}): enumeration {got}, formula {want}"))?;
            }
            let (got, want) = (b.max_global(stat), max_global(n, stat)?);
            ensure(got == want, || format!("{stat} max over [{n}]: enumeration {got}, formula {want}"))?;
        }
        for k in 1..=n {
            let got = BigInt::from(b.count_block(k, Statistic::Linear));
            let want = maximizer_count(n, k)?;
            ensure(got == want, || format!("maximizers of ({n},{k}): enumeration {got}, formula {want}"))?;
        }
        let got = BigInt::from(b.count_global(Statistic::Linear));
        let want = maximizer_count_global(n)?;
        ensure(got == want, || format!("global maximizers of [{n}]: enumeration {got}, formula {want}"))?;
    }
    Ok(format!("n <= {nmax}"))
}

/// `π(λ)` attains the maximum for every maximizing shape.
pub fn check_construction(nmax: usize) -> Result<String> {
    let mut built = 0;
    for n in 1..=nmax {
        for k in 1..=n {
            let pi = build_pi(&lambda_star(n, k)?);
            let m = max_block(n, k, Statistic::Linear)?;
            ensure(cr_linear(&pi) == m, || format!("linear π(λ*) at ({n},{k}) gives {}", cr_linear(&pi)))?;
            let m = max_block(n, k, Statistic::Circular)?;
            for l in maximizer_shapes(n, k, Statistic::Circular)? {
                let pi = build_pi(&l);
                ensure(cr_circular(&pi) == m && block_sizes(&pi) == l, || format!("circular π({l}) at ({n},{k})"))?;
                built += 1;
            }
        }
    }
    Ok(format!("n <= {nmax}, {built} circular witnesses"))
}

/// Structural identities on integer partitions.
pub fn check_weights(rt_n: usize, move_n: usize, g_n: usize) -> Result<String> {
    for n in 1..=rt_n {
        for l in IntegerPartition::all(n) {
            let rt = weights_rt(&l);
            ensure(rt.r - rt.t_linear == weight_linear(&l) as i64, || format!("M^(l) != R - T^(l) at {l}"))?;
            ensure(rt.r - rt.t_circular == weight_circular(&l) as i64, || format!("M^(c) != R - T^(c) at {l}"))?;
        }
    }
    let mut moves = 0;
    for n in 1..=move_n {
        for l in IntegerPartition::all(n) {
            let before = weights_rt(&l);
            for (u, v) in applicable_moves(&l) {
                let d = move_delta(&l, u, v)?;
                let after = weights_rt(&d.moved);
                ensure(
                    d.d_r == after.r - before.r
                        && d.d_t_linear == after.t_linear - before.t_linear
                        && d.d_t_circular == after.t_circular - before.t_circular,
                    || format!("move ({u},{v}) on {l}"),
                )?;
                let dl = weight_linear(&d.moved) as i64 - weight_linear(&l) as i64;
                let dc = weight_circular(&d.moved) as i64 - weight_circular(&l) as i64;
                ensure(dl >= 1, || format!("move ({u},{v}) on {l} does not raise M^(l)"))?;
                ensure((u, v) == (1, 3) || dc >= 2, || format!("move ({u},{v}) on {l} raises M^(c) by {dc}"))?;
                moves += 1;
            }
        }
    }
    for n in 1..=g_n {
        let g = g_sequence(n);
        ensure(g.windows(2).all(|w| w[0] < w[1]), || format!("g_{n} is not strictly increasing"))?;
    }
    Ok(format!("R - T for n <= {rt_n}, {moves} moves for n <= {move_n}, g_n for n <= {g_n}"))
}

/// `cr^(l) <= cr^(c) <= cr^(l) + 2k(k-1)` and the pairwise decomposition.
pub fn check_partitionwise(sandwich_n: usize, z_n: usize) -> Result<String> {
    let mut seen = 0u64;
    for n in 1..=sandwich_n.max(z_n) {
        for p in enumerate_all(n)? {
            let (l, c, k) = (cr_linear(&p), cr_circular(&p), p.k() as u64);
            if n <= sandwich_n {
                ensure(l <= c && c <= l + 2 * k * k.saturating_sub(1), || format!("sandwich fails at {p}"))?;
            }
            if n <= z_n {
                for stat in Statistic::ALL {
                    let parts = z_decompose(&p, stat);
                    let total: u64 = parts.values().sum();
                    ensure(total == stat.of(&p), || format!("{stat} pairwise sum at {p}"))?;
                    for (&(i, j), &v) in &parts {
                        let (a, b) = (p.blocks()[i - 1].len(), p.blocks()[j - 1].len());
                        ensure(v <= max_pair(a, b, stat), || format!("{stat} pair ({i},{j}) of {p} exceeds the pair maximum"))?;
                    }
                }
            }
            seen += 1;
        }
    }
    Ok(format!("{seen} partitions"))
}

pub fn check_series(order: usize) -> Result<String> {
    let rep = verify_stirling_series(order)?;
    Ok(format!("{} coefficients to order {order}", rep.checked))
}

/// The variance bound on `Y_n - X_n` and the range of `Y_{n,k} - X_{n,k}`.
pub fn check_bounds(nmax: usize) -> Result<String> {
    for n in 1..=nmax {
        let d = diff_moments_brute(n, None)?;
        let b = var_diff_bound(n)?;
        ensure(d.variance <= b, || format!("Var(Y_{n} - X_{n}) = {} exceeds {b}", d.variance))?;
        for k in 1..=n {
            let d = diff_moments_brute(n, Some(k))?;
            let hi = rat_int(2 * k * (k - 1));
            ensure(d.mean >= BigRational::zero() && d.mean <= hi, || format!("E(Y - X) at ({n},{k}) = {}", d.mean))?;
            let closed = crate::moments::mean_diff_circular(n, k)?;
            ensure(closed == d.mean, || format!("closed E(Y - X) at ({n},{k}) = {closed}, enumeration {}", d.mean))?;
        }
    }
    Ok(format!("n <= {nmax}"))
}

/// Seeded runs repeat and every draw is a valid partition of the right size.
pub fn check_sampler(n: usize, draws: usize) -> Result<String> {
    let s = PartitionSampler::new(n, None)?;
    let a: Vec<SetPartition> = s.samples(2024, draws).collect();
    let b: Vec<SetPartition> = s.samples(2024, draws).collect();
    ensure(a == b, || "seeded sampling is not reproducible".into())?;
    for p in &a {
        p.check_invariants()?;
        ensure(p.n() == n, || format!("sample {p} has the wrong size"))?;
    }
    Ok(format!("{draws} draws at n = {n}"))
}

/// Runs every check at the given level, in a fixed order.
pub fn run_suite(level: VerifyLevel) -> Vec<CheckResult> {
    let l = level;
    let checks: Vec<(&str, Box<dyn Fn() -> Result<String>>)> = vec![
        ("figure", Box::new(check_figure)),
        ("four-way distributions", Box::new(move || check_four_way(l.pick(6, 9)))),
        ("noncrossing counts", Box::new(move || check_noncrossing(l.pick(12, 30)))),
        ("moment closed forms", Box::new(move || check_moments(l.pick(6, 9), l.pick(12, 30)))),
        ("worked rationals", Box::new(check_worked_rationals)),
        ("degree law", Box::new(move || check_degree(l.pick(12, 30)))),
        ("extremal enumeration", Box::new(move || check_extremal_brute(l.pick(7, 10)))),
        ("construction", Box::new(move || check_construction(l.pick(12, 30)))),
        ("weights and moves", Box::new(move || check_weights(l.pick(12, 25), l.pick(10, 15), l.pick(50, 200)))),
        ("partitionwise", Box::new(move || check_partitionwise(l.pick(7, 9), l.pick(6, 8)))),
        ("series identities", Box::new(move || check_series(l.pick(6, 10)))),
        ("bounds", Box::new(move || check_bounds(l.pick(7, 9)))),
        ("sampler", Box::new(move || check_sampler(l.pick(8, 20), l.pick(200, 2000)))),
    ];
    checks
        .into_iter()
        .map(|(name, f)| match f() {
            Ok(detail) => CheckResult { name: name.into(), passed: true, detail },
            Err(e) => CheckResult { name: name.into(), passed: false, detail: e.to_string() },
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_suite_passes() {
        for r in run_suite(VerifyLevel::Quick) {
            assert!(r.passed, "{}: {}", r.name, r.detail);
        }
    }

    #[test]
    fn level_parsing() {
        assert_eq!("Quick".parse::<VerifyLevel>().unwrap(), VerifyLevel::Quick);
        assert_eq!(VerifyLevel::Full.to_string(), "full");
        assert!("medium".parse::<VerifyLevel>().is_err());
    }
}
