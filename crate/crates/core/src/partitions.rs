//! Set partitions of `[n] = {1, ..., n}` and integer partitions.
//!
//! A [`SetPartition`] is stored in two synchronized forms: the restricted
//! growth string (RGS) `r` with `r[0] = 0` and `r[i] <= 1 + max(r[..i])`, and
//! the list of blocks, each sorted ascending and ordered by minimum. Elements
//! are 1-based at every public interface; RGS values are 0-based block
//! indices.
//!
//! Enumeration walks restricted growth strings in lexicographic order, so the
//! output order is reproducible. A stream can be restricted to a fixed RGS
//! prefix, which gives a deterministic way to split the work between
//! independent consumers (see [`rgs_prefixes`]).

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest `n` accepted by the enumeration routines. `B_20` is about
/// `5.2e13`, so this is a hard ceiling rather than a practical one.
pub const ENUMERATION_HARD_LIMIT: usize = 20;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SetPartition {
    rgs: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    /// The partition of the empty set (zero blocks).
    pub fn empty() -> Self {
        SetPartition {
            rgs: Vec::new(),
            blocks: Vec::new(),
        }
    }

    /// Builds a partition from a canonical restricted growth string.
    pub fn from_rgs(rgs: Vec<usize>) -> Result<Self> {
        let mut max: Option<usize> = None;
        for (i, &r) in rgs.iter().enumerate() {
            let bound = max.map_or(0, |m| m + 1);
            if r > bound {
                return Err(Error::invalid(format!(
                    "rgs entry {r} at position {} exceeds {bound}",
                    i + 1
                )));
            }
            max = Some(max.map_or(r, |m| m.max(r)));
        }
        Ok(Self::from_rgs_unchecked(rgs))
    }

    pub(crate) fn from_rgs_unchecked(rgs: Vec<usize>) -> Self {
        let k = rgs.iter().map(|&r| r + 1).max().unwrap_or(0);
        let mut blocks = vec![Vec::new(); k];
        for (i, &r) in rgs.iter().enumerate() {
            blocks[r].push(i + 1);
        }
        let p = SetPartition { rgs, blocks };
        debug_assert!(p.check_invariants().is_ok());
        p
    }

    /// Builds a partition of `[n]` from blocks in any order. Blocks are
    /// sorted and reordered by minimum; they must cover `1..=n` exactly once.
    pub fn from_blocks(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(Vec::len).sum();
        let mut rgs = vec![usize::MAX; n];
        let mut blocks = blocks;
        for b in &mut blocks {
            if b.is_empty() {
                return Err(Error::invalid("empty block"));
            }
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        for (idx, b) in blocks.iter().enumerate() {
            for &e in b {
                if e == 0 || e > n {
                    return Err(Error::invalid(format!("element {e} is outside [1, {n}]")));
                }
                if rgs[e - 1] != usize::MAX {
                    return Err(Error::invalid(format!("element {e} appears twice")));
                }
                rgs[e - 1] = idx;
            }
        }
        Ok(SetPartition { rgs, blocks })
    }

    /// Ground-set size.
    pub fn n(&self) -> usize {
        self.rgs.len()
    }

    /// Number of blocks.
    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn rgs(&self) -> &[usize] {
        &self.rgs
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Index (0-based, ordered by minimum) of the block holding `element`.
    pub fn block_of(&self, element: usize) -> Option<usize> {
        element.checked_sub(1).and_then(|i| self.rgs.get(i).copied())
    }

    /// Standardized restriction to the union of two blocks (0-based indices).
    pub fn restrict_pair(&self, i: usize, j: usize) -> SetPartition {
        let mut elements: Vec<usize> = self.blocks[i]
            .iter()
            .chain(self.blocks[j].iter())
            .copied()
            .collect();
        elements.sort_unstable();
        let sub = [self.blocks[i].clone(), self.blocks[j].clone()];
        standardize(&elements, &sub).expect("blocks of a valid partition standardize")
    }

    /// Checks every structural invariant; used by debug assertions and tests.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n();
        let mut max: Option<usize> = None;
        for &r in &self.rgs {
            if r > max.map_or(0, |m| m + 1) {
                return Err(Error::verification("rgs is not a restricted growth string"));
            }
            max = Some(max.map_or(r, |m| m.max(r)));
        }
        let mut seen = vec![false; n];
        let mut prev_min = 0;
        for (idx, b) in self.blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::verification("empty block"));
            }
            if b[0] <= prev_min {
                return Err(Error::verification("blocks are not ordered by minimum"));
            }
            prev_min = b[0];
            if !b.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::verification("block is not strictly increasing"));
            }
            for &e in b {
                if e == 0 || e > n || seen[e - 1] || self.rgs[e - 1] != idx {
                    return Err(Error::verification("blocks and rgs disagree"));
                }
                seen[e - 1] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::verification("blocks do not cover [n]"));
        }
        Ok(())
    }
}

impl fmt::Display for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str("/")?;
            }
            for (j, e) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SetPartition({self})")
    }
}

impl FromStr for SetPartition {
    type Err = Error;

    /// Parses `"1 10/2 3 7 9/4"`. The empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(SetPartition::empty());
        }
        let parse_err = |reason: String| Error::Parse {
            input: s.to_string(),
            reason,
        };
        let blocks = s
            .split('/')
            .map(|blk| {
                blk.split_whitespace()
                    .map(|tok| {
                        tok.parse::<usize>()
                            .map_err(|e| parse_err(format!("bad element {tok:?}: {e}")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SetPartition::from_blocks(blocks).map_err(|e| parse_err(e.to_string()))
    }
}

impl Serialize for SetPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SetPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Order-preserving relabeling of a partition of `elements` onto `[|elements|]`.
///
/// `elements` must be strictly increasing and `blocks` must partition it
/// exactly.
pub fn standardize(elements: &[usize], blocks: &[Vec<usize>]) -> Result<SetPartition> {
    if !elements.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::invalid("element set must be strictly increasing"));
    }
    let rank: BTreeMap<usize, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, &e)| (e, i + 1))
        .collect();
    let relabeled = blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|e| {
                    rank.get(e)
                        .copied()
                        .ok_or_else(|| Error::invalid(format!("label {e} is not in the element set")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let total: usize = relabeled.iter().map(Vec::len).sum();
    if total != elements.len() {
        return Err(Error::invalid("blocks do not cover the element set exactly"));
    }
    SetPartition::from_blocks(relabeled)
}

/// Multiset of block sizes, as a nonincreasing integer partition.
pub fn block_sizes(p: &SetPartition) -> IntegerPartition {
    IntegerPartition::from_unsorted(p.blocks().iter().map(Vec::len).collect())
        .expect("blocks are nonempty")
}

/// Lexicographic walk over restricted growth strings of length `n`,
/// optionally with exactly `k` blocks and optionally below a frozen prefix.
#[derive(Debug, Clone)]
pub struct SetPartitions {
    n: usize,
    k: Option<usize>,
    frozen: usize,
    rgs: Vec<usize>,
    // prefix_max[i] = max(rgs[..=i])
    prefix_max: Vec<usize>,
    started: bool,
    done: bool,
}

impl SetPartitions {
    fn new(n: usize, k: Option<usize>, prefix: &[usize]) -> Result<Self> {
        Error::capacity_check("n", n, ENUMERATION_HARD_LIMIT)?;
        let mut it = SetPartitions {
            n,
            k,
            frozen: prefix.len(),
            rgs: Vec::with_capacity(n),
            prefix_max: Vec::with_capacity(n),
            started: false,
            done: false,
        };
        if prefix.len() > n {
            return Err(Error::invalid("prefix longer than n"));
        }
        for &r in prefix {
            let bound = it.prefix_max.last().map_or(0, |m| m + 1);
            if r > bound {
                return Err(Error::invalid("prefix is not a restricted growth string"));
            }
            let m = it.prefix_max.last().map_or(r, |&m| m.max(r));
            it.rgs.push(r);
            it.prefix_max.push(m);
        }
        // k = 0 only admits the empty partition; k > n admits nothing.
        if let Some(k) = k {
            if (k == 0 && n > 0) || k > n {
                it.done = true;
                return Ok(it);
            }
        }
        if !it.complete_from(prefix.len()) {
            it.done = true;
        }
        Ok(it)
    }

    /// Fills positions `from..n` with the lexicographically smallest valid
    /// completion. Returns false when no completion exists.
    fn complete_from(&mut self, from: usize) -> bool {
        self.rgs.truncate(from);
        self.prefix_max.truncate(from);
        let remaining = self.n - from;
        match self.k {
            None => {
                for _ in 0..remaining {
                    let m = self.prefix_max.last().copied().unwrap_or(0);
                    self.rgs.push(0);
                    self.prefix_max.push(m);
                }
                true
            }
            Some(k) => {
                // blocks opened so far
                let open = self.prefix_max.last().map_or(0, |m| m + 1);
                if open > k || k - open > remaining {
                    return false;
                }
                let zeros = remaining - (k - open);
                for _ in 0..zeros {
                    let m = self.prefix_max.last().copied().unwrap_or(0);
                    self.rgs.push(0);
                    self.prefix_max.push(m);
                }
                for b in open..k {
                    self.rgs.push(b);
                    self.prefix_max.push(b);
                }
                true
            }
        }
    }

    fn advance(&mut self) -> bool {
        let mut i = self.n;
        while i > self.frozen.max(1) {
            i -= 1;
            let bound = self.prefix_max[i - 1] + 1;
            let cap = self.k.map_or(bound, |k| bound.min(k - 1));
            let start = self.rgs[i] + 1;
            for v in start..=cap {
                let m = self.prefix_max[i - 1].max(v);
                self.rgs.truncate(i);
                self.prefix_max.truncate(i);
                self.rgs.push(v);
                self.prefix_max.push(m);
                if self.complete_from(i + 1) {
                    return true;
                }
                // keep the vectors full length so the scan can continue
                self.rgs.resize(self.n, 0);
                self.prefix_max.resize(self.n, m);
            }
        }
        false
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        if self.started {
            if !self.advance() {
                self.done = true;
                return None;
            }
        } else {
            self.started = true;
        }
        Some(SetPartition::from_rgs_unchecked(self.rgs.clone()))
    }
}

/// Every partition of `[n]`, in lexicographic RGS order. `n = 0` yields the
/// single empty partition.
pub fn enumerate_all(n: usize) -> Result<SetPartitions> {
    SetPartitions::new(n, None, &[])
}

/// Every partition of `[n]` into exactly `k` blocks, in lexicographic RGS
/// order. Yields nothing when `k > n` or `k = 0 < n`.
pub fn enumerate_k(n: usize, k: usize) -> Result<SetPartitions> {
    SetPartitions::new(n, Some(k), &[])
}

/// The partitions of `enumerate_all(n)` / `enumerate_k(n, k)` whose RGS
/// starts with `prefix`, in the same relative order.
pub fn enumerate_with_prefix(n: usize, k: Option<usize>, prefix: &[usize]) -> Result<SetPartitions> {
    SetPartitions::new(n, k, prefix)
}

/// All canonical RGS prefixes of length `depth` (clamped to `n`), in
/// lexicographic order. Concatenating the prefix streams in this order
/// reproduces the full enumeration exactly.
pub fn rgs_prefixes(n: usize, depth: usize) -> Result<Vec<Vec<usize>>> {
    let depth = depth.min(n);
    Ok(enumerate_all(depth)?.map(|p| p.rgs().to_vec()).collect())
}

/// A partition of an integer: a nonincreasing list of positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct IntegerPartition {
    parts: Vec<usize>,
}

impl IntegerPartition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("integer partition parts must be positive"));
        }
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::invalid("integer partition parts must be nonincreasing"));
        }
        Ok(IntegerPartition { parts })
    }

    pub fn from_unsorted(mut parts: Vec<usize>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// Builds `(1^{m_1} 2^{m_2} ...)` from `mults[s] = m_s` (index 0 ignored).
    pub fn from_multiplicities(mults: &[usize]) -> Self {
        let mut parts = Vec::new();
        for (s, &m) in mults.iter().enumerate().skip(1).rev() {
            parts.extend(std::iter::repeat(s).take(m));
        }
        IntegerPartition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of parts.
    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `m[s]` = number of parts equal to `s`, for `s` in `0..=largest`.
    pub fn multiplicities(&self) -> Vec<usize> {
        let mut m = vec![0; self.largest() + 1];
        for &p in &self.parts {
            m[p] += 1;
        }
        m
    }

    /// Multiplicity of part size `s` (zero when absent).
    pub fn multiplicity(&self, s: usize) -> usize {
        self.parts.iter().filter(|&&p| p == s).count()
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<IntegerPartition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        gen_partitions(n, n, None, &mut cur, &mut out);
        out
    }

    /// All partitions of `n` into exactly `k` parts.
    pub fn with_parts(n: usize, k: usize) -> Vec<IntegerPartition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        gen_partitions(n, n, Some(k), &mut cur, &mut out);
        out
    }
}

fn gen_partitions(
    rest: usize,
    max: usize,
    k: Option<usize>,
    cur: &mut Vec<usize>,
    out: &mut Vec<IntegerPartition>,
) {
    if rest == 0 {
        if k.map_or(true, |k| cur.len() == k) {
            out.push(IntegerPartition { parts: cur.clone() });
        }
        return;
    }
    if let Some(k) = k {
        let slots = k.saturating_sub(cur.len());
        if slots == 0 || rest > slots * max {
            return;
        }
    }
    for p in (1..=max.min(rest)).rev() {
        cur.push(p);
        gen_partitions(rest - p, p, k, cur, out);
        cur.pop();
    }
}

impl fmt::Display for IntegerPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for IntegerPartition {
    type Err = Error;

    /// Accepts `"4,2,1"` or `"(4,2,1)"`, in any order.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.trim().is_empty() {
            return Ok(IntegerPartition { parts: Vec::new() });
        }
        let parts = body
            .split(',')
            .map(|t| {
                t.trim().parse::<usize>().map_err(|e| Error::Parse {
                    input: s.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        IntegerPartition::from_unsorted(parts)
    }
}

impl Serialize for IntegerPartition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntegerPartition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(deserializer)?;
        IntegerPartition::new(parts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    #[test]
    fn counts_match_bell_and_stirling() {
        assert_eq!(enumerate_all(1).unwrap().count(), 1);
        assert_eq!(enumerate_all(4).unwrap().count(), 15);
        assert_eq!(enumerate_all(9).unwrap().count(), 21147);
        assert_eq!(enumerate_k(4, 2).unwrap().count(), 7);
        assert_eq!(enumerate_k(5, 3).unwrap().count(), 25);
        assert_eq!(enumerate_k(6, 6).unwrap().count(), 1);
    }

    #[test]
    fn degenerate_sizes() {
        let all0: Vec<_> = enumerate_all(0).unwrap().collect();
        assert_eq!(all0, vec![SetPartition::empty()]);
        assert_eq!(enumerate_k(0, 0).unwrap().count(), 1);
        assert_eq!(enumerate_k(4, 5).unwrap().count(), 0);
        assert_eq!(enumerate_k(4, 0).unwrap().count(), 0);
        assert!(matches!(
            enumerate_all(ENUMERATION_HARD_LIMIT + 1),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn lexicographic_order() {
        let rgs: Vec<Vec<usize>> = enumerate_all(4).unwrap().map(|p| p.rgs().to_vec()).collect();
        let mut sorted = rgs.clone();
        sorted.sort();
        assert_eq!(rgs, sorted);
        assert_eq!(rgs.first().unwrap(), &vec![0, 0, 0, 0]);
        assert_eq!(rgs.last().unwrap(), &vec![0, 1, 2, 3]);
        let rgs_k: Vec<Vec<usize>> = enumerate_k(5, 3).unwrap().map(|p| p.rgs().to_vec()).collect();
        let mut sorted = rgs_k.clone();
        sorted.sort();
        assert_eq!(rgs_k, sorted);
    }

    #[test]
    fn k_streams_partition_the_full_stream() {
        for n in 0..=9 {
            let total: usize = (0..=n).map(|k| enumerate_k(n, k).unwrap().count()).sum();
            assert_eq!(total, enumerate_all(n).unwrap().count());
            for k in 0..=n {
                assert!(enumerate_k(n, k).unwrap().all(|p| p.k() == k));
            }
        }
    }

    #[test]
    fn prefix_split_reproduces_enumeration() {
        for n in 0..=8 {
            for depth in 0..=3 {
                let full: Vec<_> = enumerate_all(n).unwrap().collect();
                let split: Vec<_> = rgs_prefixes(n, depth)
                    .unwrap()
                    .iter()
                    .flat_map(|pre| enumerate_with_prefix(n, None, pre).unwrap())
                    .collect();
                assert_eq!(full, split, "n={n} depth={depth}");
                for k in 1..=n {
                    let full: Vec<_> = enumerate_k(n, k).unwrap().collect();
                    let split: Vec<_> = rgs_prefixes(n, depth)
                        .unwrap()
                        .iter()
                        .flat_map(|pre| enumerate_with_prefix(n, Some(k), pre).unwrap())
                        .collect();
                    assert_eq!(full, split, "n={n} k={k} depth={depth}");
                }
            }
        }
    }

    #[test]
    fn invariants_hold_for_every_partition() {
        for n in 0..=8 {
            for q in enumerate_all(n).unwrap() {
                q.check_invariants().unwrap();
                assert_eq!(SetPartition::from_rgs(q.rgs().to_vec()).unwrap(), q);
                assert_eq!(SetPartition::from_blocks(q.blocks().to_vec()).unwrap(), q);
                assert_eq!(q.to_string().parse::<SetPartition>().unwrap(), q);
            }
        }
    }

    #[test]
    fn text_format() {
        let fig = p("1 10/2 3 7 9/4/5 6 12/8 11");
        assert_eq!(fig.n(), 12);
        assert_eq!(fig.k(), 5);
        assert_eq!(fig.to_string(), "1 10/2 3 7 9/4/5 6 12/8 11");
        // block order and element order are normalized
        assert_eq!(p("4 2/1 3").to_string(), "1 3/2 4");
        assert!("1 2/2 3".parse::<SetPartition>().is_err());
        assert!("1 3".parse::<SetPartition>().is_err());
        assert!("1 x".parse::<SetPartition>().is_err());
    }

    #[test]
    fn rejects_non_canonical_rgs() {
        assert!(SetPartition::from_rgs(vec![1, 0]).is_err());
        assert!(SetPartition::from_rgs(vec![0, 2]).is_err());
        assert!(SetPartition::from_rgs(vec![0, 1, 0, 2]).is_ok());
    }

    #[test]
    fn standardization() {
        let elements = [2, 4, 5, 7, 8, 9, 10, 11];
        let blocks = vec![vec![2, 9], vec![4, 10], vec![5], vec![7, 11], vec![8]];
        let st = standardize(&elements, &blocks).unwrap();
        assert_eq!(st.to_string(), "1 6/2 7/3/4 8/5");

        let id = p("1 3/2 4");
        assert_eq!(standardize(&[1, 2, 3, 4], id.blocks()).unwrap(), id);
        assert_eq!(
            standardize(&[3, 7], &[vec![3], vec![7]]).unwrap().to_string(),
            "1/2"
        );
        assert!(standardize(&[3, 7], &[vec![3], vec![8]]).is_err());
        assert!(standardize(&[3, 7, 9], &[vec![3], vec![7]]).is_err());
    }

    #[test]
    fn block_size_vectors() {
        assert_eq!(block_sizes(&p("1 7/2 3 8/4/5 6")).parts(), &[3, 2, 2, 1]);
        assert_eq!(block_sizes(&p("1/2/3/4/5")).parts(), &[1, 1, 1, 1, 1]);
        assert_eq!(
            block_sizes(&p("1 10/2 3 7 9/4/5 6 12/8 11")).parts(),
            &[4, 3, 2, 2, 1]
        );
    }

    #[test]
    fn integer_partitions() {
        assert_eq!(IntegerPartition::all(5).len(), 7);
        assert_eq!(IntegerPartition::all(25).len(), 1958);
        assert_eq!(IntegerPartition::with_parts(7, 3).len(), 4);
        assert!(IntegerPartition::with_parts(7, 3).iter().all(|l| l.k() == 3 && l.n() == 7));
        let l: IntegerPartition = "1,3,2,2".parse().unwrap();
        assert_eq!(l.parts(), &[3, 2, 2, 1]);
        assert_eq!(l.multiplicities(), vec![0, 1, 2, 1]);
        assert_eq!(IntegerPartition::from_multiplicities(&l.multiplicities()), l);
        assert!(IntegerPartition::new(vec![1, 2]).is_err());
        assert!(IntegerPartition::new(vec![2, 0]).is_err());
    }
}
