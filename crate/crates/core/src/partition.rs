//! Partitions in `P_{k,n}`: at most `k` parts, each at most `n - 1`.
//!
//! A partition always carries its `(k, n)` context. Parts are zero-padded to
//! length `k`, so `m_0` counts the padding zeros.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{alpha, TPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts {parts:?} are not weakly decreasing")]
    NotDecreasing { parts: Vec<usize> },
    #[error("partition {parts:?} has more than k={k} parts")]
    TooManyParts { parts: Vec<usize>, k: usize },
    #[error("partition {parts:?} has a part larger than n-1={max}")]
    PartTooLarge { parts: Vec<usize>, max: usize },
    #[error("n must be at least 1")]
    EmptyAlphabet,
    #[error("multiplicities {m:?} do not sum to k={k}")]
    BadMultiplicities { m: Vec<usize>, k: usize },
    #[error("cannot parse partition {0:?}")]
    Parse(String),
    #[error("{nu} / {lam} is not a horizontal strip")]
    NotHorizontalStrip { lam: String, nu: String },
    #[error("partitions live in different P_(k,n)")]
    ContextMismatch,
}

/// An element of `P_{k,n}`.
///
/// Ordering follows [`enumerate_pkn`]: decreasing lexicographic order of the
/// multiplicity vector `(m_0, ..., m_{n-1})`, so the empty partition is first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<usize>,
    mult: Vec<usize>,
}

impl Partition {
    /// Validates and zero-pads `parts` into `P_{k,n}`.
    pub fn new(parts: &[usize], k: usize, n: usize) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::EmptyAlphabet);
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing {
                parts: parts.to_vec(),
            });
        }
        let mut padded: Vec<usize> = parts.to_vec();
        while padded.len() > k && padded.last() == Some(&0) {
            padded.pop();
        }
        if padded.len() > k {
            return Err(PartitionError::TooManyParts {
                parts: parts.to_vec(),
                k,
            });
        }
        if padded.first().is_some_and(|&p| p > n - 1) {
            return Err(PartitionError::PartTooLarge {
                parts: parts.to_vec(),
                max: n - 1,
            });
        }
        padded.resize(k, 0);
        let mut mult = vec![0; n];
        for &p in &padded {
            mult[p] += 1;
        }
        Ok(Partition {
            parts: padded,
            mult,
        })
    }

    /// Inverse of [`Partition::multiplicities`]; `k` is the sum of `m`.
    pub fn from_multiplicities(m: &[usize]) -> Result<Self, PartitionError> {
        if m.is_empty() {
            return Err(PartitionError::EmptyAlphabet);
        }
        let mut parts = Vec::with_capacity(m.iter().sum());
        for (r, &c) in m.iter().enumerate().rev() {
            parts.extend(std::iter::repeat_n(r, c));
        }
        Ok(Partition {
            parts,
            mult: m.to_vec(),
        })
    }

    /// Parses `"3,2,1,1"`; an empty string or `"0"` is the empty partition.
    pub fn parse(text: &str, k: usize, n: usize) -> Result<Self, PartitionError> {
        let trimmed = text.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = if trimmed.trim().is_empty() {
            Vec::new()
        } else {
            trimmed
                .split(',')
                .map(|s| s.trim().parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| PartitionError::Parse(text.to_string()))?
        };
        Self::new(&parts, k, n)
    }

    pub fn empty(k: usize, n: usize) -> Self {
        Self::new(&[], k, n).expect("n >= 1")
    }

    /// The one-row partition `(r)`.
    pub fn row(r: usize, k: usize, n: usize) -> Result<Self, PartitionError> {
        Self::new(&[r], k, n)
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> usize {
        self.mult.len()
    }

    /// Zero-padded parts, length `k`.
    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// Parts with the zero padding removed.
    pub fn nonzero_parts(&self) -> &[usize] {
        let len = self.parts.iter().take_while(|&&p| p > 0).count();
        &self.parts[..len]
    }

    /// `m[r]` = number of parts equal to `r`, for `r = 0..n`.
    pub fn multiplicities(&self) -> &[usize] {
        &self.mult
    }

    pub fn m(&self, r: usize) -> usize {
        self.mult.get(r).copied().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|&p| p == 0)
    }

    /// Complement in the `k x (n-1)` rectangle; reverses the multiplicities.
    pub fn star(&self) -> Partition {
        let mut m = self.mult.clone();
        m.reverse();
        Partition::from_multiplicities(&m).expect("nonempty multiplicities")
    }

    /// `h_lambda = prod_r alpha(m_r)`.
    pub fn h_factor(&self) -> TPoly {
        self.mult.iter().map(|&m| alpha(m)).product()
    }

    pub fn same_context(&self, other: &Partition) -> bool {
        self.k() == other.k() && self.n() == other.n()
    }

    /// Componentwise containment of Young diagrams.
    pub fn contains(&self, other: &Partition) -> bool {
        self.parts.iter().zip(&other.parts).all(|(a, b)| a >= b)
    }

    pub fn to_json(&self) -> PartitionJson {
        PartitionJson {
            parts: self.nonzero_parts().to_vec(),
            k: self.k(),
            n: self.n(),
        }
    }
}

/// JSON form `{"parts": [...], "k": K, "n": N}`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PartitionJson {
    pub parts: Vec<usize>,
    pub k: usize,
    pub n: usize,
}

impl TryFrom<PartitionJson> for Partition {
    type Error = PartitionError;
    fn try_from(j: PartitionJson) -> Result<Self, Self::Error> {
        Partition::new(&j.parts, j.k, j.n)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PartitionJson::deserialize(d)?;
        Partition::try_from(j).map_err(serde::de::Error::custom)
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.k(), self.n())
            .cmp(&(other.k(), other.n()))
            .then_with(|| other.mult.cmp(&self.mult))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    /// `(3,2,1,1)`; the empty partition prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.nonzero_parts().iter().map(|p| p.to_string()).collect();
        write!(f, "({})", body.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[k={},n={}]", self.parts, self.k(), self.n())
    }
}

/// All of `P_{k,n}`, in decreasing lexicographic order of multiplicity vectors.
pub fn enumerate_pkn(k: usize, n: usize) -> Vec<Partition> {
    fn rec(slot: usize, left: usize, m: &mut Vec<usize>, out: &mut Vec<Partition>) {
        let n = m.len();
        if slot + 1 == n {
            m[slot] = left;
            out.push(Partition::from_multiplicities(m).expect("nonempty"));
            return;
        }
        for c in (0..=left).rev() {
            m[slot] = c;
            rec(slot + 1, left - c, m, out);
        }
        m[slot] = 0;
    }
    assert!(n >= 1, "n must be at least 1");
    let mut out = Vec::new();
    rec(0, k, &mut vec![0; n], &mut out);
    out
}

/// Number of elements of `P_{k,n}`, `C(k+n-1, n-1)`.
pub fn count_pkn(k: usize, n: usize) -> usize {
    let mut c: u128 = 1;
    for i in 0..(n - 1) as u128 {
        c = c * (k as u128 + i + 1) / (i + 1);
    }
    c as usize
}

/// All `nu` in `P_{k,n}` with `nu / lam` a horizontal strip of `r` boxes.
pub fn horizontal_strips(lam: &Partition, r: usize) -> Vec<Partition> {
    fn rec(
        row: usize,
        left: usize,
        lam: &[usize],
        cap: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if row == lam.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        // nu_row ranges over [lam_row, lam_{row-1}] (or the width cap on row 0).
        let upper = if row == 0 { cap } else { lam[row - 1] };
        let lo = lam[row];
        if upper < lo {
            return;
        }
        for add in 0..=(upper - lo).min(left) {
            cur.push(lo + add);
            rec(row + 1, left - add, lam, cap, cur, out);
            cur.pop();
        }
    }
    let mut raw = Vec::new();
    rec(0, r, lam.parts(), lam.n() - 1, &mut Vec::new(), &mut raw);
    let mut out: Vec<Partition> = raw
        .into_iter()
        .filter_map(|p| Partition::new(&p, lam.k(), lam.n()).ok())
        .collect();
    out.sort();
    out
}

/// True when `nu / lam` is a horizontal strip (possibly empty).
pub fn is_horizontal_strip(lam: &Partition, nu: &Partition) -> bool {
    lam.same_context(nu)
        && nu.contains(lam)
        && (1..lam.k()).all(|i| lam.parts()[i - 1] >= nu.parts()[i])
}

/// One maximal block of boxes in consecutive columns of a horizontal strip.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StripBlock {
    /// Column of the rightmost box (1-based).
    pub c: usize,
    /// Number of boxes.
    pub b: usize,
}

/// Blocks of `nu / lam`, top to bottom.
pub fn strip_blocks(lam: &Partition, nu: &Partition) -> Result<Vec<StripBlock>, PartitionError> {
    if !is_horizontal_strip(lam, nu) {
        return Err(PartitionError::NotHorizontalStrip {
            lam: lam.to_string(),
            nu: nu.to_string(),
        });
    }
    let mut cols: Vec<usize> = lam
        .parts()
        .iter()
        .zip(nu.parts())
        .flat_map(|(&l, &v)| (l + 1)..=v)
        .collect();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    let mut blocks: Vec<StripBlock> = Vec::new();
    for col in cols {
        match blocks.last_mut() {
            Some(last) if last.c - last.b == col => last.b += 1,
            _ => blocks.push(StripBlock { c: col, b: 1 }),
        }
    }
    Ok(blocks)
}

/// Pieri coefficient `(1/(1-t)) prod_{i in I} (1 - t^{m_i(nu)})`.
pub fn pieri_coefficient(lam: &Partition, nu: &Partition) -> Result<TPoly, PartitionError> {
    let blocks = strip_blocks(lam, nu)?;
    if blocks.is_empty() {
        return Err(PartitionError::NotHorizontalStrip {
            lam: lam.to_string(),
            nu: nu.to_string(),
        });
    }
    let prod: TPoly = blocks
        .iter()
        .map(|blk| TPoly::one_minus_t_pow(nu.m(blk.c)))
        .product();
    Ok(prod
        .exact_divide(&TPoly::one_minus_t_pow(1))
        .expect("nonempty strip gives a factor divisible by 1-t"))
}
