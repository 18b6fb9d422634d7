//! Integer partitions, their statistics, reverse lexicographic order,
//! enumeration of partitions and of partition triples, and symmetric group
//! characters via Murnaghan–Nakayama.

mod characters;

pub use characters::{character, CharacterError};

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotPartition(Vec<u32>),
    #[error("partitions of different sizes {0} and {1} are not comparable")]
    SizeMismatch(u32, u32),
    #[error("cannot parse partition from {0:?}")]
    Parse(String),
}

/// Summary statistics of a partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionStats {
    pub size: u32,
    pub length: u32,
    pub n_mu: i64,
    pub kappa: i64,
    pub z: BigInt,
    pub conjugate: Partition,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(PartitionError::NotPartition(parts))
        }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// The one-row partition `(n)`; empty for `n = 0`.
    pub fn row(n: u32) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Partition { parts: vec![n] }
        }
    }

    /// The hook `(n-1, 1)` for `n ≥ 2`.
    pub fn hook(n: u32) -> Self {
        assert!(n >= 2);
        Partition { parts: vec![n - 1, 1] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `μ_i` with 1-based index, zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_row(&self) -> bool {
        self.parts.len() <= 1
    }

    /// `n(μ) = Σ (i-1) μ_i`.
    pub fn n_mu(&self) -> i64 {
        self.parts.iter().enumerate().map(|(i, &p)| i as i64 * p as i64).sum()
    }

    /// `κ_μ = Σ μ_i (μ_i - 2i + 1)`.
    pub fn kappa(&self) -> i64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                let p = p as i64;
                p * (p - 2 * (i as i64 + 1) + 1)
            })
            .sum()
    }

    /// `z_μ = ∏ m_i! ∏ μ_i`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        let mut run = 0u32;
        for (i, &p) in self.parts.iter().enumerate() {
            z *= p;
            if i > 0 && self.parts[i - 1] == p {
                run += 1;
            } else {
                run = 1;
            }
            z *= run;
        }
        z
    }

    pub fn conjugate(&self) -> Partition {
        let n = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=n)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Hook lengths of all cells, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.parts[j as usize] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    pub fn stats(&self) -> PartitionStats {
        PartitionStats {
            size: self.size(),
            length: self.len() as u32,
            n_mu: self.n_mu(),
            kappa: self.kappa(),
            z: self.z(),
            conjugate: self.conjugate(),
        }
    }

    /// Reverse lexicographic comparison of two partitions of the same size.
    pub fn revlex_cmp(&self, other: &Partition) -> Result<Ordering, PartitionError> {
        let (a, b) = (self.size(), other.size());
        if a != b {
            return Err(PartitionError::SizeMismatch(a, b));
        }
        let n = self.len().max(other.len());
        for i in 1..=n {
            match self.part(i).cmp(&other.part(i)) {
                Ordering::Equal => continue,
                o => return Ok(o),
            }
        }
        Ok(Ordering::Equal)
    }

    /// `self < other` in reverse lexicographic order.
    pub fn revlex_less(&self, other: &Partition) -> Result<bool, PartitionError> {
        Ok(self.revlex_cmp(other)? == Ordering::Less)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Partition {
    type Err = PartitionError;
    fn from_str(s: &str) -> Result<Self, PartitionError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Result<Vec<u32>, _> = t
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(str::parse)
            .collect();
        let parts = parts.map_err(|_| PartitionError::Parse(s.to_string()))?;
        Partition::new(parts)
    }
}

/// All partitions of `n`, largest first in reverse lexicographic order.
pub fn enumerate(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill(n, n, &mut cur, &mut out);
    out
}

fn fill(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition { parts: cur.clone() });
        return;
    }
    for p in (1..=rest.min(max)).rev() {
        cur.push(p);
        fill(rest - p, p, cur, out);
        cur.pop();
    }
}

/// Number of partitions of `n`.
pub fn partition_count(n: u32) -> BigInt {
    // Euler's pentagonal recurrence
    let n = n as usize;
    let mut p = vec![BigInt::from(0); n + 1];
    p[0] = BigInt::one();
    for m in 1..=n {
        let mut s = BigInt::from(0);
        for k in 1i64.. {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            s += &p[m - g1] * sign;
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                s += &p[m - g2] * sign;
            }
        }
        p[m] = s;
    }
    p[n].clone()
}

/// Ordered triples of partitions with total size `d`, produced lazily.
///
/// Size splits `(a, b, c)` are visited in lexicographic order and, inside a
/// split, each factor runs through [`enumerate`] order.
pub struct Triples {
    d: u32,
    by_size: Vec<Vec<Partition>>,
    split: (u32, u32),
    idx: [usize; 3],
    done: bool,
}

impl Triples {
    fn sizes(&self) -> [u32; 3] {
        let (a, b) = self.split;
        [a, b, self.d - a - b]
    }

    fn advance_split(&mut self) {
        let (a, b) = self.split;
        if a + b < self.d {
            self.split = (a, b + 1);
        } else if a < self.d {
            self.split = (a + 1, 0);
        } else {
            self.done = true;
        }
        self.idx = [0; 3];
    }
}

impl Iterator for Triples {
    type Item = (Partition, Partition, Partition);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let s = self.sizes();
        let lists = [
            &self.by_size[s[0] as usize],
            &self.by_size[s[1] as usize],
            &self.by_size[s[2] as usize],
        ];
        let item = (
            lists[0][self.idx[0]].clone(),
            lists[1][self.idx[1]].clone(),
            lists[2][self.idx[2]].clone(),
        );
        let lens = [lists[0].len(), lists[1].len(), lists[2].len()];
        let mut k = 2;
        loop {
            self.idx[k] += 1;
            if self.idx[k] < lens[k] {
                break;
            }
            self.idx[k] = 0;
            if k == 0 {
                self.advance_split();
                break;
            }
            k -= 1;
        }
        Some(item)
    }
}

/// Lazily enumerates all ordered triples `(μ¹, μ², μ³)` with `Σ|μ^i| = d`.
pub fn triples(d: u32) -> Triples {
    let by_size = (0..=d).map(enumerate).collect();
    Triples { d, by_size, split: (0, 0), idx: [0; 3], done: false }
}

/// Number of ordered triples of total size `d`, by convolution of `p(n)`.
pub fn triple_count(d: u32) -> BigInt {
    let p: Vec<BigInt> = (0..=d).map(partition_count).collect();
    let mut total = BigInt::from(0);
    for a in 0..=d {
        for b in 0..=d - a {
            total += &p[a as usize] * &p[b as usize] * &p[(d - a - b) as usize];
        }
    }
    total
}
