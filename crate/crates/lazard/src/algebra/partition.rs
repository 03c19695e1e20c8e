//! Integer partitions, used as monomial keys in ℤ[b] and ℤ[e].

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// A weakly decreasing list of positive integers.
///
/// Ordering is by weight first, then lexicographically by parts, which is
/// the stable output order for monomials.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    weight: u32,
    parts: Vec<u32>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition::default()
    }

    /// Sorts `parts` and drops zeros.
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let weight = parts.iter().sum();
        Partition { weight, parts }
    }

    /// Accepts `parts` only if already weakly decreasing and positive.
    pub fn try_from_parts(parts: Vec<u32>) -> Option<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        ok.then(|| Partition::new(parts))
    }

    pub fn single(n: u32) -> Self {
        Partition::new(vec![n])
    }

    /// The partition (1, …, 1) of weight `n`.
    pub fn ones(n: u32) -> Self {
        Partition::new(vec![1; n as usize])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Multiset union; the key of the product monomial.
    pub fn merge(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() && j < other.parts.len() {
            if self.parts[i] >= other.parts[j] {
                parts.push(self.parts[i]);
                i += 1;
            } else {
                parts.push(other.parts[j]);
                j += 1;
            }
        }
        parts.extend_from_slice(&self.parts[i..]);
        parts.extend_from_slice(&other.parts[j..]);
        Partition { weight: self.weight + other.weight, parts }
    }

    /// Multiplicity of each part size `1..=max`.
    pub fn multiplicities(&self) -> Vec<u32> {
        let max = self.parts.first().copied().unwrap_or(0) as usize;
        let mut m = vec![0; max + 1];
        for &p in &self.parts {
            m[p as usize] += 1;
        }
        m
    }

    /// The conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let max = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=max)
            .map(|k| self.parts.iter().filter(|&&p| p >= k).count() as u32)
            .collect();
        Partition::new(parts)
    }

    /// Every sub-multiset, each paired with its complement.
    pub fn splittings(&self) -> Vec<(Partition, Partition)> {
        let mult = self.multiplicities();
        let sizes: Vec<u32> = (1..mult.len() as u32).filter(|&s| mult[s as usize] > 0).collect();
        let mut out = Vec::new();
        let mut choice = vec![0u32; sizes.len()];
        loop {
            let mut left = Vec::new();
            let mut right = Vec::new();
            for (k, &s) in sizes.iter().enumerate() {
                let total = mult[s as usize];
                left.extend(std::iter::repeat(s).take(choice[k] as usize));
                right.extend(std::iter::repeat(s).take((total - choice[k]) as usize));
            }
            out.push((Partition::new(left), Partition::new(right)));
            let mut k = 0;
            loop {
                if k == sizes.len() {
                    return out;
                }
                if choice[k] < mult[sizes[k] as usize] {
                    choice[k] += 1;
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<u32>::deserialize(d)?;
        Partition::try_from_parts(parts)
            .ok_or_else(|| serde::de::Error::custom("parts must be positive and weakly decreasing"))
    }
}

/// All partitions of `n`, in the stable (lexicographic) order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition::new(prefix.clone()));
            return;
        }
        for p in 1..=max.min(n) {
            prefix.push(p);
            rec(n - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All partitions of weight at most `n`.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// The partition counting function p(n).
pub fn partition_count(n: u32) -> usize {
    let n = n as usize;
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p[n]
}
