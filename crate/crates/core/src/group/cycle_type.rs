//! Class-level arithmetic in symmetric groups, where conjugacy classes are
//! cycle types.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{gcd, lcm, Perm};

/// A partition of `n`, stored with parts in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable();
        CycleType(parts)
    }

    pub fn of(p: &Perm) -> Self {
        CycleType(p.cycle_type())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn order(&self) -> u64 {
        self.0.iter().fold(1, |acc, &k| lcm(acc, k as u64))
    }

    /// Odd as a permutation.
    pub fn is_odd(&self) -> bool {
        self.0.iter().filter(|&&k| k % 2 == 0).count() % 2 == 1
    }

    /// The type of `g^j`: an `L`-cycle splits into `gcd(L, j)` cycles of length `L / gcd(L, j)`.
    pub fn power(&self, j: u64) -> CycleType {
        let mut parts = Vec::new();
        for &l in &self.0 {
            let d = gcd(l as u64, j) as usize;
            parts.extend(std::iter::repeat_n(l / d, d));
        }
        CycleType::new(parts)
    }

    fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &k in &self.0 {
            *m.entry(k).or_default() += 1;
        }
        m
    }

    /// Number of permutations with this type, `n! / prod k^m_k m_k!`.
    pub fn class_size(&self) -> u128 {
        let mut size: u128 = (1..=self.degree() as u128).product();
        for (k, m) in self.multiplicities() {
            size /= (k as u128).pow(m as u32);
            size /= (1..=m as u128).product::<u128>();
        }
        size
    }

    /// A permutation of this type on `1..=degree`, cycles on consecutive points.
    pub fn representative(&self) -> Perm {
        let n = self.degree();
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for &l in &self.0 {
            for i in 0..l {
                images[start + i] = start + (i + 1) % l;
            }
            start += l;
        }
        Perm::from_images(images).expect("cycle type representative")
    }

    /// Whether `self = other^i` for some `i >= 1`. The type of a power only
    /// depends on `gcd(i, order)`, so divisors of the order suffice.
    pub fn is_power_of(&self, other: &CycleType) -> bool {
        let ord = other.order();
        if !ord.is_multiple_of(self.order()) {
            return false;
        }
        (1..=ord).filter(|d| ord.is_multiple_of(*d)).any(|d| other.power(d) == *self)
    }

    /// True iff no permutation of strictly larger order has a power of this type.
    pub fn is_maximal_cyclic(&self) -> bool {
        let own = self.order();
        !partitions(self.degree())
            .into_iter()
            .filter(|mu| mu.order() > own && mu.order() % own == 0)
            .any(|mu| self.is_power_of(&mu))
    }

    /// Parses `[1^2 4^1]`, `[1^2 4]` or `1 1 4`.
    pub fn parse(text: &str) -> Option<Self> {
        let inner = text.trim().trim_start_matches('[').trim_end_matches(']');
        let mut parts = Vec::new();
        for tok in inner.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.parse::<usize>().ok()?, e.parse::<usize>().ok()?),
                None => (tok.parse::<usize>().ok()?, 1),
            };
            if base == 0 {
                return None;
            }
            parts.extend(std::iter::repeat_n(base, exp));
        }
        (!parts.is_empty()).then(|| CycleType::new(parts))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.multiplicities().into_iter().map(|(k, m)| format!("{k}^{m}")).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl Serialize for CycleType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_string().serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycleType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        CycleType::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad cycle type {s}")))
    }
}

/// All partitions of `n`.
pub fn partitions(n: usize) -> Vec<CycleType> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<CycleType>) {
        if rest == 0 {
            out.push(CycleType::new(cur.clone()));
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(p: &[usize]) -> CycleType {
        CycleType::new(p.to_vec())
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions(5).len(), 7);
        assert_eq!(partitions(10).len(), 42);
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for n in 1..=10 {
            let total: u128 = partitions(n).iter().map(CycleType::class_size).sum();
            assert_eq!(total, (1..=n as u128).product::<u128>());
        }
    }

    #[test]
    fn powers() {
        assert_eq!(ct(&[4]).power(2), ct(&[2, 2]));
        assert_eq!(ct(&[6]).power(5), ct(&[6]));
        assert_eq!(ct(&[2, 3]).power(3), ct(&[1, 1, 1, 2]));
    }

    #[test]
    fn maximal_cyclic_examples() {
        assert!(!ct(&[1, 1, 1, 2]).is_maximal_cyclic());
        assert!(ct(&[6]).is_maximal_cyclic());
        assert!(ct(&[1, 1, 4]).is_maximal_cyclic());
        assert!(ct(&[1, 2, 3]).is_maximal_cyclic());
        assert!(!ct(&[3, 3]).is_maximal_cyclic());
    }

    #[test]
    fn formatting_round_trips() {
        let c = ct(&[1, 2, 3, 3]);
        assert_eq!(c.to_string(), "[1^1 2^1 3^2]");
        assert_eq!(CycleType::parse("[1^1 2^1 3^2]"), Some(c.clone()));
        assert_eq!(CycleType::parse("[3 1 2 3]"), Some(c));
        assert_eq!(CycleType::parse("[]"), None);
    }

    #[test]
    fn representative_has_the_type() {
        for mu in partitions(7) {
            assert_eq!(CycleType::of(&mu.representative()), mu);
        }
    }
}
