use std::fmt;

use serde::{Deserialize, Serialize};

use super::GroupError;

/// A permutation of `{0, .., degree-1}` stored as its image list.
///
/// Products compose left to right: `a.mul(&b)` maps `x` to `b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u16).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        if n > u16::MAX as usize {
            return Err(GroupError::InvalidDescriptor(format!("degree {n} too large")));
        }
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(GroupError::InvalidDescriptor(format!(
                    "image list {:?} is not a bijection",
                    images.iter().map(|x| x + 1).collect::<Vec<_>>()
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images.into_iter().map(|x| x as u16).collect()))
    }

    /// Builds a permutation from 1-based images.
    pub fn from_one_based(images: &[u32]) -> Result<Self, GroupError> {
        let zero: Result<Vec<usize>, GroupError> = images
            .iter()
            .map(|&x| {
                if x == 0 {
                    Err(GroupError::InvalidDescriptor("image lists are 1-based".into()))
                } else {
                    Ok(x as usize - 1)
                }
            })
            .collect();
        Self::from_images(zero?)
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `(1,2)` on `degree` points.
    pub fn from_cycles(text: &str, degree: usize) -> Result<Self, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut rest = text.trim();
        if rest == "()" || rest.is_empty() {
            return Self::from_images(images);
        }
        while !rest.is_empty() {
            let open = rest
                .strip_prefix('(')
                .ok_or_else(|| GroupError::InvalidDescriptor(format!("bad cycle notation: {text}")))?;
            let close =
                open.find(')').ok_or_else(|| GroupError::InvalidDescriptor(format!("unclosed cycle: {text}")))?;
            let points: Result<Vec<usize>, _> = open[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>())
                .collect();
            let points = points.map_err(|_| GroupError::InvalidDescriptor(format!("bad point in {text}")))?;
            for (i, &p) in points.iter().enumerate() {
                if p == 0 || p > degree {
                    return Err(GroupError::InvalidDescriptor(format!("point {p} outside 1..={degree}")));
                }
                let q = points[(i + 1) % points.len()];
                images[p - 1] = q - 1;
            }
            rest = open[close + 1..].trim_start();
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<u32> {
        self.0.iter().map(|&x| x as u32 + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Perm(inv)
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().mul(self).mul(g)
    }

    pub fn pow(&self, e: i64) -> Perm {
        let order = self.order() as i64;
        let e = e.rem_euclid(order);
        let mut out = Perm::identity(self.degree());
        let mut base = self.clone();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        out
    }

    /// Cycle lengths (including fixed points), sorted ascending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.apply(x);
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_type().into_iter().fold(1u64, |acc, l| lcm(acc, l as u64))
    }

    pub fn is_odd(&self) -> bool {
        self.cycle_type().iter().filter(|&&l| l % 2 == 0).count() % 2 == 1
    }

    /// Disjoint-cycle notation, 1-based, fixed points omitted.
    pub fn cycles_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(x + 1).to_string());
                first = false;
                x = self.apply(x);
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Places `self` on points `offset..offset+self.degree()` of a larger set.
    pub fn shifted(&self, offset: usize, degree: usize) -> Perm {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &x) in self.0.iter().enumerate() {
            images[offset + i] = x + offset as u16;
        }
        Perm(images)
    }

    /// Restriction to points `offset..offset+len`, which must be invariant.
    pub fn block(&self, offset: usize, len: usize) -> Perm {
        Perm(self.0[offset..offset + len].iter().map(|&x| x - offset as u16).collect())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycles_string())
    }
}

impl Serialize for Perm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let images = Vec::<u32>::deserialize(d)?;
        Perm::from_one_based(&images).map_err(serde::de::Error::custom)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycles_round_trip() {
        let p = Perm::from_cycles("(1 2 3)(4 5)", 6).unwrap();
        assert_eq!(p.cycles_string(), "(1 2 3)(4 5)");
        assert_eq!(p.order(), 6);
        assert!(p.is_odd());
        assert_eq!(p.cycle_type(), vec![1, 2, 3]);
    }

    #[test]
    fn composition_is_left_to_right() {
        let a = Perm::from_cycles("(1 2)", 3).unwrap();
        let b = Perm::from_cycles("(2 3)", 3).unwrap();
        // 1 -a-> 2 -b-> 3
        assert_eq!(a.mul(&b).apply(0), 2);
        assert_eq!(a.mul(&a.inverse()), Perm::identity(3));
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_one_based(&[1, 1, 2]).is_err());
        assert!(Perm::from_one_based(&[0, 1]).is_err());
    }

    #[test]
    fn power_of_transposition_product() {
        let g = Perm::from_cycles("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(g.pow(3), Perm::from_cycles("(4 5)", 5).unwrap());
        assert_eq!(g.pow(-1), g.inverse());
    }
}
