//! Maximum crossing numbers over `Π_n^k` and `Π_n`, the block-size shapes
//! that attain them, and an explicit witness partition for each.

use serde::{Deserialize, Serialize};

use crate::crossings::Statistic;
use crate::error::{Error, Result};
use crate::exactnum::{binomial, BigInt};
use crate::partitions::{enumerate_all, IntegerPartition, SetPartition};

fn c2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

fn chi(b: bool) -> u64 {
    u64::from(b)
}

/// Largest crossing number of a two-block partition with block sizes `a`
/// and `b` (in either order).
pub fn max_pair(a: usize, b: usize, stat: Statistic) -> u64 {
    let (a, b) = if a >= b { (a as u64, b as u64) } else { (b as u64, a as u64) };
    match b {
        0 | 1 => 0,
        2 if a == 2 => 1,
        2 => 2,
        _ => match stat {
            Statistic::Linear => 2 * (b - 1) - chi(a == b),
            Statistic::Circular => 2 * b,
        },
    }
}

/// `M^(ℓ)(λ)`, the largest linear crossing number among partitions with
/// block sizes `λ`, from the multiplicities `m_s`.
pub fn weight_linear(lambda: &IntegerPartition) -> u64 {
    let m: Vec<u64> = lambda.multiplicities().into_iter().map(|x| x as u64).collect();
    let r = m.len().saturating_sub(1);
    let mut total = 0;
    for s in 2..=r {
        total += (2 * s as u64 - 3) * c2(m[s]);
    }
    for s in 1..=r {
        for t in s + 1..=r {
            total += 2 * (s as u64 - 1) * m[s] * m[t];
        }
    }
    total
}

/// `M^(c)(λ)`, the circular counterpart of [`weight_linear`].
pub fn weight_circular(lambda: &IntegerPartition) -> u64 {
    let m: Vec<u64> = lambda.multiplicities().into_iter().map(|x| x as u64).collect();
    let r = m.len().saturating_sub(1);
    let mm = |s: usize| m.get(s).copied().unwrap_or(0);
    let mut total = c2(mm(2));
    for s in 3..=r {
        total += 2 * s as u64 * c2(m[s]);
    }
    total += 2 * mm(2) * (3..=r).map(|t| m[t]).sum::<u64>();
    for s in 3..=r {
        for t in s + 1..=r {
            total += 2 * s as u64 * m[s] * m[t];
        }
    }
    total
}

pub fn weight(lambda: &IntegerPartition, stat: Statistic) -> u64 {
    match stat {
        Statistic::Linear => weight_linear(lambda),
        Statistic::Circular => weight_circular(lambda),
    }
}

/// The auxiliary weights `R`, `T^(ℓ)` and `T^(c)`; `M^(u) = R - T^(u)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RtWeights {
    pub r: i64,
    pub t_linear: i64,
    pub t_circular: i64,
}

pub fn weights_rt(lambda: &IntegerPartition) -> RtWeights {
    let m = lambda.multiplicities();
    let mm = |s: usize| m.get(s).copied().unwrap_or(0) as i64;
    let c2i = |x: i64| x * (x - 1) / 2;
    let len = lambda.k() as i64;
    let r = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| 2 * i as i64 * p as i64)
        .sum();
    let t_linear = (2..m.len()).map(|s| c2i(mm(s))).sum::<i64>() + 2 * c2i(len);
    let m12 = mm(1) + mm(2);
    let t_circular = 2 * m12 * len - 2 * c2i(m12 + 1) + c2i(mm(2));
    RtWeights { r, t_linear, t_circular }
}

/// Result of moving one unit from the rightmost part `v` to the leftmost
/// part `u` of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveDelta {
    pub moved: IntegerPartition,
    pub d_r: i64,
    pub d_t_linear: i64,
    pub d_t_circular: i64,
}

fn check_move(lambda: &IntegerPartition, u: usize, v: usize) -> Result<()> {
    if v < u + 2 {
        return Err(Error::invalid(format!("need v - u >= 2, got u = {u}, v = {v}")));
    }
    if lambda.multiplicity(u) == 0 || lambda.multiplicity(v) == 0 {
        return Err(Error::invalid(format!("{lambda} must contain both {u} and {v}")));
    }
    Ok(())
}

/// The partition obtained by decreasing the rightmost part equal to `v` and
/// increasing the leftmost part equal to `u`.
pub fn apply_move(lambda: &IntegerPartition, u: usize, v: usize) -> Result<IntegerPartition> {
    check_move(lambda, u, v)?;
    let mut parts = lambda.parts().to_vec();
    let right_v = parts.iter().rposition(|&p| p == v).unwrap();
    let left_u = parts.iter().position(|&p| p == u).unwrap();
    parts[right_v] -= 1;
    parts[left_u] += 1;
    IntegerPartition::new(parts)
}

/// The moved partition together with the closed-form changes in `R`,
/// `T^(ℓ)` and `T^(c)`.
pub fn move_delta(lambda: &IntegerPartition, u: usize, v: usize) -> Result<MoveDelta> {
    let moved = apply_move(lambda, u, v)?;
    let m = lambda.multiplicities();
    let mm = |s: usize| m.get(s).copied().unwrap_or(0) as i64;
    let ind = |b: bool| i64::from(b);
    let d_r = 2 * (1 + (u + 1..v).map(mm).sum::<i64>());
    let d_t_linear = 2 - mm(u) + mm(u + 1) + mm(v - 1) - mm(v) + ind(u + 1 == v - 1) + (mm(u) - 1) * ind(u == 1);
    let len = lambda.k() as i64;
    let d_t_circular = match (u, v) {
        (1, 3) => 2 * (len - mm(1)) - 1,
        (1, _) => mm(2),
        (2, _) => -2 * (len - mm(1)) + mm(2) + 1,
        _ => 0,
    };
    Ok(MoveDelta {
        moved,
        d_r,
        d_t_linear,
        d_t_circular,
    })
}

/// Every `(u, v)` pair to which [`move_delta`] applies.
pub fn applicable_moves(lambda: &IntegerPartition) -> Vec<(usize, usize)> {
    let m = lambda.multiplicities();
    let present: Vec<usize> = (1..m.len()).filter(|&s| m[s] > 0).collect();
    let mut out = Vec::new();
    for &u in &present {
        for &v in &present {
            if v >= u + 2 {
                out.push((u, v));
            }
        }
    }
    out
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// Agreement check for overlapping case formulas.
fn agree(n: usize, k: usize, stat: Statistic, cases: &[(&str, u64)]) -> Result<u64> {
    let (first_tag, first) = *cases
        .first()
        .ok_or_else(|| Error::verification(format!("no case covers {stat} (n, k) = ({n}, {k})")))?;
    for &(tag, v) in &cases[1..] {
        if v != first {
            return Err(Error::verification(format!(
                "{stat} maximum at ({n}, {k}): case {first_tag} gives {first}, case {tag} gives {v}"
            )));
        }
    }
    Ok(first)
}

/// `M_{n,k}`: the maximum of the statistic over partitions of `[n]` into
/// `k` blocks.
pub fn max_block(n: usize, k: usize, stat: Statistic) -> Result<u64> {
    check_nk(n, k)?;
    let (nu, ku) = (n as u64, k as u64);
    let mut cases = Vec::new();
    match stat {
        Statistic::Linear => {
            if k <= n / 2 {
                cases.push(("1a", (ku - 1) * nu - 3 * c2(ku)));
            }
            if k >= n.div_ceil(2) {
                cases.push(("1b", c2(nu - ku)));
            }
        }
        Statistic::Circular => {
            let a = nu - ku;
            if 3 * k <= n {
                let r = nu % ku;
                cases.push(("2a", (ku - 1) * nu - r * (ku - r)));
            }
            if (3 * k >= n && 2 * k < n) || (2 * k >= n && k + 6 <= n) {
                let h = a / 2;
                cases.push(("2b", 6 * c2(h) + 2 * h * chi(a % 2 == 1)));
            }
            if k + 5 >= n && 2 * k >= n {
                cases.push(("2c", c2(a)));
            }
        }
    }
    agree(n, k, stat, &cases)
}

/// Maximum of the circular statistic over `Π_n` for `n < 5`, by enumeration.
const CIRCULAR_GLOBAL_SMALL: [u64; 5] = [0, 0, 0, 0, 1];

/// `M_n`: the maximum of the statistic over all partitions of `[n]`.
pub fn max_global(n: usize, stat: Statistic) -> Result<u64> {
    if n == 0 {
        return Err(Error::invalid("need n >= 1"));
    }
    let nu = n as u64;
    Ok(match stat {
        Statistic::Linear => c2(nu - 1) / 3,
        Statistic::Circular if n < 5 => CIRCULAR_GLOBAL_SMALL[n],
        Statistic::Circular if n % 3 == 0 => 2 * c2(nu - 1) / 3,
        Statistic::Circular => 2 * c2(nu - 2) / 3,
    })
}

/// `λ*_{n,k}`: the partition of `n` into `k` parts that differ by at most one.
pub fn lambda_star(n: usize, k: usize) -> Result<IntegerPartition> {
    check_nk(n, k)?;
    let (q, r) = (n / k, n % k);
    let mut parts = vec![q + 1; r];
    parts.extend(std::iter::repeat(q).take(k - r));
    IntegerPartition::new(parts)
}

fn shape(m1: usize, m2: usize, m3: usize) -> IntegerPartition {
    IntegerPartition::from_multiplicities(&[0, m1, m2, m3])
}

/// The block-size shapes `λ` of `n` into `k` parts maximizing `M^(u)(λ)`.
pub fn maximizer_shapes(n: usize, k: usize, stat: Statistic) -> Result<Vec<IntegerPartition>> {
    check_nk(n, k)?;
    if stat == Statistic::Linear {
        return Ok(vec![lambda_star(n, k)?]);
    }
    let mut cases: Vec<(&str, Vec<IntegerPartition>)> = Vec::new();
    if n >= 3 * k {
        cases.push(("2a", vec![lambda_star(n, k)?]));
    }
    if n <= 3 * k {
        let j = 3 * k - n;
        if j < k || (k <= j && j + 6 <= 2 * k) {
            let s = j / 2;
            cases.push(("2b", vec![shape(s, j - 2 * s, k + s - j)]));
        }
    }
    if n >= k {
        let j = n - k;
        if (4..=5).contains(&j) && k >= j {
            cases.push(("2c", vec![shape(k - j, j, 0), shape(k - j + 2, j - 4, 2)]));
        }
        if j <= 3 && k >= j {
            cases.push(("2d", vec![shape(k - j, j, 0)]));
        }
    }
    let (first_tag, first) = cases
        .first()
        .cloned()
        .ok_or_else(|| Error::verification(format!("no maximizer case covers circular (n, k) = ({n}, {k})")))?;
    for (tag, set) in &cases[1..] {
        if *set != first {
            return Err(Error::verification(format!(
                "circular maximizers at ({n}, {k}): case {first_tag} and case {tag} disagree"
            )));
        }
    }
    Ok(first)
}

/// `π(λ)`: fill the Ferrers diagram of `λ` with `1..n` column by column,
/// top to bottom, and take the rows as blocks.
pub fn build_pi(lambda: &IntegerPartition) -> SetPartition {
    let parts = lambda.parts();
    let mut blocks: Vec<Vec<usize>> = parts.iter().map(|&p| Vec::with_capacity(p)).collect();
    let mut next = 1;
    for col in 0..lambda.largest() {
        for (row, &len) in parts.iter().enumerate() {
            if len > col {
                blocks[row].push(next);
                next += 1;
            }
        }
    }
    SetPartition::from_blocks(blocks).expect("Ferrers filling is a partition")
}

/// Number of partitions of `[n]` into `k` blocks attaining the linear maximum.
pub fn maximizer_count(n: usize, k: usize) -> Result<BigInt> {
    check_nk(n, k)?;
    if k <= n / 2 {
        Ok(BigInt::from(1))
    } else {
        Ok(binomial(n as i64, 2 * (n - k) as i64))
    }
}

/// Linear global maximizer counts for `n < 4`, by enumeration.
const LINEAR_GLOBAL_COUNT_SMALL: [u64; 4] = [1, 1, 2, 5];

/// Number of partitions of `[n]` attaining the linear global maximum.
pub fn maximizer_count_global(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::invalid("need n >= 1"));
    }
    if n < 4 {
        return Ok(BigInt::from(LINEAR_GLOBAL_COUNT_SMALL[n]));
    }
    Ok(BigInt::from(if n % 3 == 0 { 2 } else { 1 }))
}

/// `g_n(k) = (k-1) n - r_k (k - r_k)` with `r_k = n mod k`, for `k = 1..=n`.
pub fn g_sequence(n: usize) -> Vec<i64> {
    let ni = n as i64;
    (1..=ni)
        .map(|k| {
            let r = ni % k;
            (k - 1) * ni - r * (k - r)
        })
        .collect()
}

/// Maximum value with its maximizing shapes and a witness partition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExtremalReport {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub stat: Statistic,
    pub max_value: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub maximizer_shapes: Option<Vec<IntegerPartition>>,
    pub witness: SetPartition,
    #[serde(skip_serializing_if = "Option::is_none", default, with = "opt_bigint")]
    pub maximizer_count: Option<BigInt>,
}

mod opt_bigint {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exactnum::BigInt;

    pub fn serialize<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl ExtremalReport {
    /// Checks the witness attains the maximum and has an admissible shape.
    pub fn validate(&self) -> Result<()> {
        let got = self.stat.of(&self.witness);
        if got != self.max_value {
            return Err(Error::verification(format!(
                "witness {} has {} crossing number {got}, expected {}",
                self.witness, self.stat, self.max_value
            )));
        }
        if let Some(shapes) = &self.maximizer_shapes {
            let bl = crate::partitions::block_sizes(&self.witness);
            if !shapes.contains(&bl) {
                return Err(Error::verification(format!(
                    "witness block sizes {bl} are not among the maximizer shapes"
                )));
            }
        }
        Ok(())
    }
}

/// Extremal report for `Π_n^k`.
pub fn report_block(n: usize, k: usize, stat: Statistic) -> Result<ExtremalReport> {
    let max_value = max_block(n, k, stat)?;
    let shapes = maximizer_shapes(n, k, stat)?;
    let witness = build_pi(&shapes[0]);
    let rep = ExtremalReport {
        n,
        k: Some(k),
        stat,
        max_value,
        maximizer_shapes: Some(shapes),
        witness,
        maximizer_count: match stat {
            Statistic::Linear => Some(maximizer_count(n, k)?),
            Statistic::Circular => None,
        },
    };
    rep.validate()?;
    Ok(rep)
}

/// Extremal report for `Π_n`. The witness comes from the smallest `k` whose
/// block maximum equals the global maximum.
pub fn report_global(n: usize, stat: Statistic) -> Result<ExtremalReport> {
    let max_value = max_global(n, stat)?;
    let mut found = None;
    for k in 1..=n {
        if max_block(n, k, stat)? == max_value {
            found = Some(k);
            break;
        }
    }
    let k = found.ok_or_else(|| {
        Error::verification(format!("no k attains the global {stat} maximum {max_value} for n = {n}"))
    })?;
    let shapes = maximizer_shapes(n, k, stat)?;
    let rep = ExtremalReport {
        n,
        k: None,
        stat,
        max_value,
        witness: build_pi(&shapes[0]),
        maximizer_shapes: None,
        maximizer_count: match stat {
            Statistic::Linear => Some(maximizer_count_global(n)?),
            Statistic::Circular => None,
        },
    };
    rep.validate()?;
    Ok(rep)
}

/// Per-block-count maxima and maximizer counts of both statistics, by
/// enumerating `Π_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteExtremal {
    pub n: usize,
    /// `max[k][s]` for `k = 0..=n`, `s` indexing [`Statistic::ALL`].
    pub max: Vec<[u64; 2]>,
    pub count: Vec<[u64; 2]>,
}

impl BruteExtremal {
    pub fn max_block(&self, k: usize, stat: Statistic) -> u64 {
        self.max[k][stat_index(stat)]
    }

    pub fn count_block(&self, k: usize, stat: Statistic) -> u64 {
        self.count[k][stat_index(stat)]
    }

    pub fn max_global(&self, stat: Statistic) -> u64 {
        (1..=self.n).map(|k| self.max_block(k, stat)).max().unwrap_or(0)
    }

    pub fn count_global(&self, stat: Statistic) -> u64 {
        let m = self.max_global(stat);
        (1..=self.n)
            .filter(|&k| self.max_block(k, stat) == m)
            .map(|k| self.count_block(k, stat))
            .sum()
    }
}

fn stat_index(stat: Statistic) -> usize {
    match stat {
        Statistic::Linear => 0,
        Statistic::Circular => 1,
    }
}

pub fn brute_extremal(n: usize) -> Result<BruteExtremal> {
    let mut max = vec![[0u64; 2]; n + 1];
    let mut count = vec![[0u64; 2]; n + 1];
    for p in enumerate_all(n)? {
        let k = p.k();
        for stat in Statistic::ALL {
            let i = stat_index(stat);
            let v = stat.of(&p);
            if count[k][i] == 0 || v > max[k][i] {
                max[k][i] = v;
                count[k][i] = 1;
            } else if v == max[k][i] {
                count[k][i] += 1;
            }
        }
    }
    Ok(BruteExtremal { n, max, count })
}

/// Shapes of `n` into `k` parts maximizing `M^(u)`, by scanning all of them.
pub fn maximizer_shapes_brute(n: usize, k: usize, stat: Statistic) -> Vec<IntegerPartition> {
    let all = IntegerPartition::with_parts(n, k);
    let best = all.iter().map(|l| weight(l, stat)).max().unwrap_or(0);
    let mut out: Vec<_> = all.into_iter().filter(|l| weight(l, stat) == best).collect();
    out.sort();
    out
}
