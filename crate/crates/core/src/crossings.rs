//! The two crossing statistics.
//!
//! In the linear representation each block `b_1 < ... < b_m` contributes the
//! arcs `(b_i, b_{i+1})`, and `cr_linear` counts arc pairs `a < c < b < d`.
//! In the circular representation each block is drawn as the convex polygon
//! on its points (a segment for two points, nothing for one), and
//! `cr_circular` counts chord pairs whose four endpoints interleave around
//! the circle. Both are plain pair counts; no geometry is involved.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::SetPartition;

/// Which crossing statistic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    Linear,
    Circular,
}

impl Statistic {
    pub const ALL: [Statistic; 2] = [Statistic::Linear, Statistic::Circular];

    pub fn as_str(self) -> &'static str {
        match self {
            Statistic::Linear => "linear",
            Statistic::Circular => "circular",
        }
    }

    /// Evaluates the statistic on `p`.
    pub fn of(self, p: &SetPartition) -> u64 {
        match self {
            Statistic::Linear => cr_linear(p),
            Statistic::Circular => cr_circular(p),
        }
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Statistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" | "l" => Ok(Statistic::Linear),
            "circular" | "c" => Ok(Statistic::Circular),
            _ => Err(Error::Parse {
                input: s.to_string(),
                reason: "expected `linear` or `circular`".into(),
            }),
        }
    }
}

/// An arc of the linear representation, `left < right`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub left: usize,
    pub right: usize,
}

/// A polygon edge of the circular representation, `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub a: usize,
    pub b: usize,
    /// Index of the owning block (0-based, blocks ordered by minimum).
    pub block: usize,
}

pub fn arcs(p: &SetPartition) -> Vec<Arc> {
    p.blocks()
        .iter()
        .flat_map(|b| b.windows(2).map(|w| Arc { left: w[0], right: w[1] }))
        .collect()
}

pub fn chords(p: &SetPartition) -> Vec<Chord> {
    let mut out = Vec::new();
    for (block, b) in p.blocks().iter().enumerate() {
        out.extend(b.windows(2).map(|w| Chord { a: w[0], b: w[1], block }));
        if b.len() >= 3 {
            out.push(Chord {
                a: b[0],
                b: b[b.len() - 1],
                block,
            });
        }
    }
    out
}

#[inline]
fn interleave(a: usize, b: usize, c: usize, d: usize) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Number of crossing arc pairs in the linear representation.
pub fn cr_linear(p: &SetPartition) -> u64 {
    let arcs = arcs(p);
    let mut count = 0;
    for (i, x) in arcs.iter().enumerate() {
        for y in &arcs[i + 1..] {
            if interleave(x.left, x.right, y.left, y.right) {
                count += 1;
            }
        }
    }
    count
}

/// Number of crossing chord pairs in the circular representation.
///
/// Chords sharing an endpoint never interleave, and two edges of one convex
/// polygon never interleave either, so only pairs from distinct blocks count.
pub fn cr_circular(p: &SetPartition) -> u64 {
    let chords = chords(p);
    let mut count = 0;
    for (i, x) in chords.iter().enumerate() {
        for y in &chords[i + 1..] {
            if interleave(x.a, x.b, y.a, y.b) {
                count += 1;
            }
        }
    }
    count
}

/// Splits a statistic over block pairs: entry `(i, j)` (1-based block
/// indices, `i < j`) is the statistic of the standardized two-block
/// restriction `B_i / B_j`. The entries sum to the statistic of `p`.
pub fn z_decompose(p: &SetPartition, stat: Statistic) -> BTreeMap<(usize, usize), u64> {
    let k = p.k();
    let mut out = BTreeMap::new();
    for i in 0..k {
        for j in i + 1..k {
            out.insert((i + 1, j + 1), stat.of(&p.restrict_pair(i, j)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_all;

    fn p(s: &str) -> SetPartition {
        s.parse().unwrap()
    }

    const FIG1: &str = "1 10/2 3 7 9/4/5 6 12/8 11";

    #[test]
    fn arcs_and_chords() {
        let a = arcs(&p("1 3 5/2 4"));
        assert_eq!(
            a,
            vec![
                Arc { left: 1, right: 3 },
                Arc { left: 3, right: 5 },
                Arc { left: 2, right: 4 }
            ]
        );
        assert!(arcs(&p("1/2/3")).is_empty());
        assert_eq!(arcs(&p(FIG1)).len(), 7);

        let c = chords(&p(FIG1));
        let block1: Vec<(usize, usize)> = c.iter().filter(|c| c.block == 1).map(|c| (c.a, c.b)).collect();
        assert_eq!(block1, vec![(2, 3), (3, 7), (7, 9), (2, 9)]);
        let block0: Vec<(usize, usize)> = c.iter().filter(|c| c.block == 0).map(|c| (c.a, c.b)).collect();
        assert_eq!(block0, vec![(1, 10)]);
        assert!(chords(&p("1/2/3")).is_empty());
    }

    #[test]
    fn figure_one_values() {
        assert_eq!(cr_linear(&p(FIG1)), 4);
        assert_eq!(cr_circular(&p(FIG1)), 9);
    }

    #[test]
    fn small_cases() {
        assert_eq!(cr_linear(&p("1 3/2 4")), 1);
        assert_eq!(cr_linear(&p("1 4/2 3")), 0);
        assert_eq!(cr_circular(&p("1 3/2 4")), 1);
        assert_eq!(cr_circular(&p("1 4/2 3")), 0);
        assert_eq!(cr_circular(&p("1 2 3 4 5 6")), 0);
    }

    #[test]
    fn z_decomposition() {
        assert!(z_decompose(&p("1 2 3"), Statistic::Linear).is_empty());
        let z = z_decompose(&p("1 3/2 4"), Statistic::Linear);
        assert_eq!(z.into_iter().collect::<Vec<_>>(), vec![((1, 2), 1)]);
        let z = z_decompose(&p(FIG1), Statistic::Circular);
        assert_eq!(z.values().sum::<u64>(), 9);
        let z = z_decompose(&p(FIG1), Statistic::Linear);
        assert_eq!(z.values().sum::<u64>(), 4);
    }

    #[test]
    fn same_block_chords_never_cross() {
        for n in 1..=8 {
            for q in enumerate_all(n).unwrap() {
                let cs = chords(&q);
                for (i, x) in cs.iter().enumerate() {
                    for y in &cs[i + 1..] {
                        if x.block == y.block {
                            assert!(!interleave(x.a, x.b, y.a, y.b), "{q}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn representation_independent() {
        let a = p(FIG1);
        let b = SetPartition::from_rgs(a.rgs().to_vec()).unwrap();
        let mut blocks = a.blocks().to_vec();
        blocks.reverse();
        let c = SetPartition::from_blocks(blocks).unwrap();
        for s in Statistic::ALL {
            assert_eq!(s.of(&a), s.of(&b));
            assert_eq!(s.of(&a), s.of(&c));
        }
    }

    #[test]
    fn statistic_parsing() {
        assert_eq!("linear".parse::<Statistic>().unwrap(), Statistic::Linear);
        assert_eq!("circular".parse::<Statistic>().unwrap(), Statistic::Circular);
        assert!("both".parse::<Statistic>().is_err());
    }
}
