use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::arith::Rational;
use super::HyperError;

/// An integer polynomial `a_0 + a_1 T + .. + a_n T^n` without repeated roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i128>", into = "Vec<i128>")]
pub struct SeparablePoly {
    coeffs: Vec<i128>,
}

fn overflow() -> HyperError {
    HyperError::Overflow
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn content(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &c| g.gcd(&c))
}

fn primitive(v: Vec<i128>) -> Vec<i128> {
    let c = content(&v);
    if c <= 1 {
        return v;
    }
    v.into_iter().map(|x| x / c).collect()
}

/// Pseudo-remainder of `a` by `b`, both nonzero with `deg a >= deg b`.
fn pseudo_rem(mut a: Vec<i128>, b: &[i128]) -> Result<Vec<i128>, HyperError> {
    let lb = *b.last().expect("nonzero divisor");
    while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
        let la = *a.last().expect("nonempty");
        let shift = a.len() - b.len();
        for x in a.iter_mut() {
            *x = x.checked_mul(lb).ok_or_else(overflow)?;
        }
        for (i, &c) in b.iter().enumerate() {
            let t = c.checked_mul(la).ok_or_else(overflow)?;
            a[shift + i] = a[shift + i].checked_sub(t).ok_or_else(overflow)?;
        }
        a.pop();
        a = primitive(trim(if a.is_empty() { vec![0] } else { a }));
    }
    Ok(a)
}

/// Degree of `gcd(a, b)` over Q.
fn gcd_degree(a: &[i128], b: &[i128]) -> Result<usize, HyperError> {
    let (mut a, mut b) = (primitive(a.to_vec()), primitive(b.to_vec()));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !(b.len() == 1 && b[0] == 0) {
        let r = pseudo_rem(a, &b)?;
        a = b;
        b = r;
    }
    Ok(a.len() - 1)
}

pub(crate) fn mul_poly(a: &[i128], b: &[i128]) -> Result<Vec<i128>, HyperError> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let t = x.checked_mul(y).ok_or_else(overflow)?;
            out[i + j] = out[i + j].checked_add(t).ok_or_else(overflow)?;
        }
    }
    Ok(out)
}

fn pow_poly(a: &[i128], e: usize) -> Result<Vec<i128>, HyperError> {
    (0..e).try_fold(vec![1i128], |acc, _| mul_poly(&acc, a))
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1i128;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl SeparablePoly {
    pub fn new(coeffs: Vec<i128>) -> Result<Self, HyperError> {
        let coeffs = trim(coeffs);
        if coeffs.len() < 2 {
            return Err(HyperError::InvalidPolynomial("degree must be at least 1".into()));
        }
        let derivative: Vec<i128> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c.checked_mul(i as i128).ok_or_else(overflow))
            .collect::<Result<_, _>>()?;
        if gcd_degree(&coeffs, &derivative)? > 0 {
            return Err(HyperError::NotSeparable);
        }
        Ok(SeparablePoly { coeffs })
    }

    /// Parses `T^3 - T`, `2*T^2 + 1` and the like, or a coefficient list `a0,a1,..`.
    pub fn parse(text: &str) -> Result<Self, HyperError> {
        let t = text.trim();
        if t.contains(',') {
            return Self::from_coeff_list(t);
        }
        Self::new(parse_expression(t)?)
    }

    pub fn from_coeff_list(text: &str) -> Result<Self, HyperError> {
        let coeffs = text
            .split(',')
            .map(|s| s.trim().parse::<i128>().map_err(|e| HyperError::Parse(format!("{s:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i128 {
        *self.coeffs.last().expect("degree >= 1")
    }

    /// `n/2` for even degree, `(n+1)/2` for odd degree.
    pub fn weight(&self) -> u32 {
        self.degree().div_ceil(2) as u32
    }

    /// `sum a_i t^i z^(n-i)`, by Horner's rule in `t`.
    fn homogeneous(&self, t: i128, z: i128) -> Result<i128, HyperError> {
        let mut acc = 0i128;
        let mut zp = 1i128;
        for (k, &a) in self.coeffs.iter().rev().enumerate() {
            if k > 0 {
                zp = zp.checked_mul(z).ok_or_else(overflow)?;
                acc = acc.checked_mul(t).ok_or_else(overflow)?;
            }
            acc = a.checked_mul(zp).and_then(|x| x.checked_add(acc)).ok_or_else(overflow)?;
        }
        Ok(acc)
    }

    /// `P(T, Z)` of even weight: the homogenization, times `Z` for odd degree.
    pub fn weighted(&self, t: i128, z: i128) -> Result<i128, HyperError> {
        let h = self.homogeneous(t, z)?;
        if self.degree() % 2 == 1 {
            h.checked_mul(z).ok_or_else(overflow)
        } else {
            Ok(h)
        }
    }

    pub fn eval(&self, t: &Rational) -> Result<Rational, HyperError> {
        let (a, b) = (*t.numer(), *t.denom());
        let num = self.homogeneous(a, b)?;
        let den = b.checked_pow(self.degree() as u32).ok_or_else(overflow)?;
        Ok(Rational::new(num, den))
    }

    /// The rational roots in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut roots = Vec::new();
        let lowest = self.coeffs.iter().position(|&c| c != 0).expect("nonzero");
        if lowest > 0 {
            roots.push(Rational::from_integer(0));
        }
        let a0 = self.coeffs[lowest];
        let an = self.leading();
        for p in divisors(a0) {
            for q in divisors(an) {
                for s in [p, -p] {
                    let r = Rational::new(s, q);
                    if *r.denom() == q && self.eval(&r).is_ok_and(|v| *v.numer() == 0) && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
        roots.sort();
        roots
    }

    /// Exact quotient by `(q T - p)` for a root `p/q`.
    fn deflate(coeffs: &[i128], root: &Rational) -> Vec<i128> {
        let (p, q) = (*root.numer(), *root.denom());
        let n = coeffs.len() - 1;
        let mut out = vec![0i128; n];
        let mut rem = coeffs.to_vec();
        for k in (0..n).rev() {
            let c = rem[k + 1] / q;
            out[k] = c;
            rem[k + 1] -= c * q;
            rem[k] += c * p;
        }
        out
    }

    pub fn branch_points(&self) -> BranchPoints {
        let rational = self.rational_roots();
        let mut rest = self.coeffs.clone();
        for r in &rational {
            rest = Self::deflate(&rest, r);
        }
        let nonrational = if rest.len() > 1 {
            let degree = rest.len() - 1;
            vec![NonRationalFactor {
                degree,
                coefficients: primitive(rest),
                irreducible: (degree <= 3).then_some(true),
            }]
        } else {
            vec![]
        };
        BranchPoints { rational, nonrational, infinity: self.degree() % 2 == 1 }
    }

    /// `(qU)^n P((pU + 1) / (qU))`: moves the rational root `p/q` to infinity.
    pub fn move_root_to_infinity(&self, root: &Rational) -> Result<SeparablePoly, HyperError> {
        let (p, q) = (*root.numer(), *root.denom());
        let n = self.degree();
        let mut out = vec![0i128; n + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let mut term = pow_poly(&[1, p], i)?;
            term = mul_poly(&term, &pow_poly(&[0, q], n - i)?)?;
            for (k, c) in term.into_iter().enumerate() {
                let c = c.checked_mul(a).ok_or_else(overflow)?;
                out[k] = out[k].checked_add(c).ok_or_else(overflow)?;
            }
        }
        SeparablePoly::new(out)
    }
}

impl TryFrom<Vec<i128>> for SeparablePoly {
    type Error = HyperError;
    fn try_from(v: Vec<i128>) -> Result<Self, Self::Error> {
        SeparablePoly::new(v)
    }
}

impl From<SeparablePoly> for Vec<i128> {
    fn from(p: SeparablePoly) -> Vec<i128> {
        p.coeffs
    }
}

impl fmt::Display for SeparablePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}*")?;
                    }
                    if i == 1 {
                        write!(f, "T")?;
                    } else {
                        write!(f, "T^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn parse_expression(text: &str) -> Result<Vec<i128>, HyperError> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(HyperError::Parse("empty polynomial".into()));
    }
    let bad = |why: &str| HyperError::Parse(format!("{why} in {text:?}"));
    let mut coeffs: Vec<i128> = Vec::new();
    let b = s.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let mut sign = 1i128;
        if b[i] == b'+' || b[i] == b'-' {
            if b[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return Err(bad("expected + or -"));
        }
        let start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let coeff =
            if i > start { s[start..i].parse::<i128>().map_err(|_| bad("coefficient out of range"))? } else { 1 };
        if i < b.len() && b[i] == b'*' {
            i += 1;
            if i >= b.len() || (b[i] != b'T' && b[i] != b't') {
                return Err(bad("expected T after *"));
            }
        }
        let mut exp = 0usize;
        if i < b.len() && (b[i] == b'T' || b[i] == b't') {
            i += 1;
            exp = 1;
            if i < b.len() && b[i] == b'^' {
                i += 1;
                let e0 = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                exp = s[e0..i].parse().map_err(|_| bad("bad exponent"))?;
            }
        } else if i == start {
            return Err(bad("empty term"));
        }
        if exp > 64 {
            return Err(bad("degree above 64"));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        let term = sign.checked_mul(coeff).ok_or_else(overflow)?;
        coeffs[exp] = coeffs[exp].checked_add(term).ok_or_else(overflow)?;
    }
    Ok(coeffs)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonRationalFactor {
    pub degree: usize,
    pub coefficients: Vec<i128>,
    /// Known irreducible over Q; always so in degree at most 3.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub irreducible: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchPoints {
    #[serde(with = "super::arith::rational_serde::vec")]
    pub rational: Vec<Rational>,
    /// The product of the linear factors removed, with no rational root left.
    pub nonrational: Vec<NonRationalFactor>,
    pub infinity: bool,
}

impl BranchPoints {
    pub fn count(&self) -> usize {
        self.rational.len() + self.nonrational.iter().map(|f| f.degree).sum::<usize>() + usize::from(self.infinity)
    }

    pub fn rational_count(&self) -> usize {
        self.rational.len() + usize::from(self.infinity)
    }
}
