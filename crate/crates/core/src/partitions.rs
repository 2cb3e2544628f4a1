//! Integer partitions, bipartitions and rim hooks.

use std::fmt;
use std::str::FromStr;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing list of positive parts. Zero parts are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition(Vec<usize>);

impl Partition {
    /// Builds a partition, dropping zero parts. Panics if the nonzero parts
    /// are not weakly decreasing.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        assert!(parts.windows(2).all(|w| w[0] >= w[1]), "parts must be weakly decreasing: {parts:?}");
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Sorts arbitrary positive parts into a partition.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts `m`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|alpha|`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// `alpha_i` with 1-based `i`, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// `z_mu = prod_r r^{a_r} a_r!`, the centralizer order of a permutation
    /// of this cycle type.
    pub fn centralizer_order(&self) -> BigInt {
        let mut z = BigInt::from(1);
        let mut i = 0;
        while i < self.0.len() {
            let r = self.0[i];
            let a = self.0[i..].iter().take_while(|&&p| p == r).count();
            for k in 1..=a {
                z *= BigInt::from(r) * BigInt::from(k);
            }
            i += a;
        }
        z
    }

    /// Removes one part equal to `r`.
    pub fn without_part(&self, r: usize) -> Option<Partition> {
        let idx = self.0.iter().position(|&p| p == r)?;
        let mut parts = self.0.clone();
        parts.remove(idx);
        Some(Partition(parts))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `[3,1]`; the empty partition is `[]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("expected [..], got {s:?}") })?;
        let offset = s.find('[').unwrap_or(0) + 1;
        if inner.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut pos = offset;
        for tok in inner.split(',') {
            let v: usize = tok.trim().parse().map_err(|_| Error::Parse {
                pos,
                msg: format!("invalid part {:?}", tok.trim()),
            })?;
            if v == 0 {
                return Err(Error::Parse { pos, msg: "parts must be positive".into() });
            }
            parts.push(v);
            pos += tok.len() + 1;
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse { pos: offset, msg: "parts must be weakly decreasing".into() });
        }
        Ok(Partition(parts))
    }
}

/// An ordered pair of partitions labelling an irreducible of W(B_n).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BiPartition {
    pub alpha: Partition,
    pub beta: Partition,
}

impl BiPartition {
    pub fn new(alpha: Partition, beta: Partition) -> Self {
        BiPartition { alpha, beta }
    }

    pub fn size(&self) -> usize {
        self.alpha.size() + self.beta.size()
    }

    pub fn swapped(&self) -> BiPartition {
        BiPartition::new(self.beta.clone(), self.alpha.clone())
    }
}

impl fmt::Display for BiPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.alpha, self.beta)
    }
}

impl FromStr for BiPartition {
    type Err = Error;

    /// Parses `([2],[1,1])`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("expected ([..],[..]), got {s:?}") })?;
        let split = inner
            .find(']')
            .ok_or_else(|| Error::Parse { pos: 1, msg: "missing ']'".into() })?;
        let (a, rest) = inner.split_at(split + 1);
        let b = rest
            .trim_start()
            .strip_prefix(',')
            .ok_or_else(|| Error::Parse { pos: split + 2, msg: "expected ','".into() })?;
        Ok(BiPartition::new(a.parse()?, b.parse()?))
    }
}

/// All partitions of `n` in reverse-lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        for first in (1..=n.min(max)).rev() {
            prefix.push(first);
            go(n - first, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All ordered pairs with `|alpha| + |beta| = n`, by `|alpha|` descending.
pub fn bipartitions_of(n: usize) -> Vec<BiPartition> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        let betas = partitions_of(n - k);
        for alpha in partitions_of(k) {
            for beta in &betas {
                out.push(BiPartition::new(alpha.clone(), beta.clone()));
            }
        }
    }
    out
}

/// `lambda_i = alpha_i - i + pad` for `1 <= i <= pad`.
pub fn lambda_values(alpha: &Partition, pad: usize) -> Result<Vec<usize>> {
    if pad < alpha.len() {
        return Err(Error::PadTooSmall { pad, parts: alpha.len() });
    }
    Ok((1..=pad).map(|i| alpha.part(i) + pad - i).collect())
}

/// Every way to strip a connected border strip of `length` cells from
/// `alpha`, with the strip's leg length (rows spanned minus one).
///
/// Works on the beta-set `{alpha_i + m - i}`: a strip of length r is a bead
/// sliding from `b` to an empty `b - r`, and the leg length counts the beads
/// it jumps over.
pub fn rim_hooks(alpha: &Partition, length: usize) -> Vec<(Partition, usize)> {
    assert!(length >= 1, "rim hook length must be positive");
    let m = alpha.len();
    let beads = lambda_values(alpha, m).expect("pad equals part count");
    let mut out = Vec::new();
    for (idx, &b) in beads.iter().enumerate() {
        if b < length || beads.contains(&(b - length)) {
            continue;
        }
        let target = b - length;
        let leg = beads.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beads.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts = moved.iter().enumerate().map(|(i, &x)| x - (m - 1 - i)).collect();
        out.push((Partition::new(parts), leg));
    }
    out
}
