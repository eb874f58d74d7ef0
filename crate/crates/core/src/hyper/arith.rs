use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::HyperError;

pub type Rational = Ratio<i128>;

/// `max(|a|, |b|)` for `a/b` in lowest terms.
pub fn height(q: &Rational) -> i128 {
    q.numer().abs().max(q.denom().abs())
}

/// The square root of `n` when `n` is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 || !passes_residue_filter(n) {
        return None;
    }
    let r = if n < 1 << 52 { (n as f64).sqrt() as i128 } else { n.isqrt() };
    // the float root can be off by one
    (r.saturating_sub(1)..=r + 1).find(|&s| s >= 0 && s * s == n)
}

/// Bitmasks of the squares modulo 64, 63, 65 and 11.
const fn residue_mask(m: u32) -> u128 {
    let mut mask = 0u128;
    let mut x = 0;
    while x < m {
        mask |= 1 << ((x * x) % m);
        x += 1;
    }
    mask
}

const SQUARES_64: u128 = residue_mask(64);
const SQUARES_63: u128 = residue_mask(63);
const SQUARES_65: u128 = residue_mask(65);
const SQUARES_11: u128 = residue_mask(11);

fn passes_residue_filter(n: i128) -> bool {
    let hit = |mask: u128, m: i128| mask >> (n % m) & 1 == 1;
    hit(SQUARES_64, 64) && hit(SQUARES_63, 63) && hit(SQUARES_65, 65) && hit(SQUARES_11, 11)
}

/// Trial division bound for squarefree parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorLimits {
    pub trial_bound: u64,
}

impl Default for FactorLimits {
    fn default() -> Self {
        FactorLimits { trial_bound: 1_000_000 }
    }
}

/// A squarefree nonzero integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i128", into = "i128")]
pub struct SquarefreeD(i128);

impl SquarefreeD {
    pub fn new(value: i128) -> Result<Self, HyperError> {
        if value == 0 {
            return Err(HyperError::NotSquarefree(0));
        }
        let sf = squarefree_int(value.unsigned_abs(), &FactorLimits::default())?;
        if sf != value.unsigned_abs() {
            return Err(HyperError::NotSquarefree(value));
        }
        Ok(SquarefreeD(value))
    }

    pub fn value(self) -> i128 {
        self.0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }
}

impl TryFrom<i128> for SquarefreeD {
    type Error = HyperError;
    fn try_from(v: i128) -> Result<Self, Self::Error> {
        SquarefreeD::new(v)
    }
}

impl From<SquarefreeD> for i128 {
    fn from(d: SquarefreeD) -> i128 {
        d.0
    }
}

impl fmt::Display for SquarefreeD {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Squarefree part of a positive integer. Trial division runs up to the cube
/// root of the cofactor: what remains is then 1, p, p^2 or pq, and a square
/// test decides it.
fn squarefree_int(mut n: u128, limits: &FactorLimits) -> Result<u128, HyperError> {
    let original = n;
    let mut out = 1u128;
    let mut p = 2u128;
    let bound = limits.trial_bound.max(2) as u128;
    while p <= bound && p * p * p <= n {
        if n.is_multiple_of(p) {
            let mut odd = false;
            while n.is_multiple_of(p) {
                n /= p;
                odd = !odd;
            }
            if odd {
                out *= p;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if p * p * p <= n {
        return Err(HyperError::FactorizationTooLarge(original.to_string()));
    }
    let r = n.isqrt();
    Ok(if r * r == n { out } else { out * n })
}

/// The squarefree integer `d` with `q = d * r^2` for a rational `r`.
pub fn squarefree_part(q: &Rational) -> Result<SquarefreeD, HyperError> {
    squarefree_part_with(q, &FactorLimits::default())
}

pub fn squarefree_part_with(q: &Rational, limits: &FactorLimits) -> Result<SquarefreeD, HyperError> {
    if *q.numer() == 0 {
        return Err(HyperError::ZeroValue);
    }
    // a/b = ab / b^2
    let a = squarefree_int(q.numer().unsigned_abs(), limits)?;
    let b = squarefree_int(q.denom().unsigned_abs(), limits)?;
    let g = num_integer::gcd(a, b);
    let v = (a / g) * (b / g);
    let sign = if (*q.numer() < 0) != (*q.denom() < 0) { -1 } else { 1 };
    Ok(SquarefreeD(sign * v as i128))
}

/// Rationals as `"a/b"` strings, or `"a"` when integral.
pub(crate) mod rational_serde {
    use super::Rational;

    pub fn parse(text: &str) -> Result<Rational, String> {
        let t = text.trim();
        let (a, b) = match t.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (t, "1"),
        };
        let a: i128 = a.parse().map_err(|e| format!("bad numerator {a:?}: {e}"))?;
        let b: i128 = b.parse().map_err(|e| format!("bad denominator {b:?}: {e}"))?;
        if b == 0 {
            return Err("zero denominator".into());
        }
        Ok(Rational::new(a, b))
    }

    pub mod vec {
        use serde::ser::SerializeSeq;
        use serde::{de::Error, Deserialize, Deserializer, Serializer};

        use super::Rational;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for q in v {
                seq.serialize_element(&q.to_string())?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            Vec::<String>::deserialize(d)?.iter().map(|t| super::parse(t).map_err(D::Error::custom)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    #[test]
    fn examples() {
        assert_eq!(squarefree_part(&r(12, 1)).unwrap().value(), 3);
        assert_eq!(squarefree_part(&r(1, 1)).unwrap().value(), 1);
        assert_eq!(squarefree_part(&r(9, 2)).unwrap().value(), 2);
        assert_eq!(squarefree_part(&r(-18, 1)).unwrap().value(), -2);
        assert_eq!(squarefree_part(&r(6, 10)).unwrap().value(), 15);
        assert!(squarefree_part(&r(0, 1)).is_err());
    }

    #[test]
    fn large_cofactors() {
        let p: i128 = 1_000_003;
        let q: i128 = 1_000_033;
        assert_eq!(squarefree_part(&r(p * p * 7, 1)).unwrap().value(), 7);
        assert_eq!(squarefree_part(&r(p * q, 1)).unwrap().value(), p * q);
        let small = FactorLimits { trial_bound: 10 };
        assert!(matches!(
            squarefree_part_with(&r(p * q * 1_000_037, 1), &small),
            Err(HyperError::FactorizationTooLarge(_))
        ));
    }

    #[test]
    fn square_roots() {
        let squares: Vec<i128> = (0..2000).filter_map(exact_sqrt).collect();
        assert_eq!(squares, (0..45).collect::<Vec<_>>());
        let big: i128 = 3_000_000_007;
        assert_eq!(exact_sqrt(big * big), Some(big));
        assert_eq!(exact_sqrt(big * big + 1), None);
        assert_eq!(exact_sqrt((1 << 60) + 1), None);
        assert_eq!(exact_sqrt(-4), None);
    }

    #[test]
    fn squarefree_d() {
        assert!(SquarefreeD::new(12).is_err());
        assert!(SquarefreeD::new(0).is_err());
        assert_eq!(SquarefreeD::new(-30).unwrap().value(), -30);
    }
}
