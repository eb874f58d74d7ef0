use super::GroupError;

/// The field with `q = p^k` elements, encoded as integers `0..q` whose base-`p`
/// digits are coefficients modulo a fixed irreducible polynomial.
#[derive(Debug, Clone)]
pub struct FiniteField {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
}

/// `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn digits(x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    let mut x = x;
    for _ in 0..k {
        out.push(x % p);
        x /= p;
    }
    out
}

fn from_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo the monic polynomial `m` over F_p; coefficient
/// vectors are little-endian.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - (lead * c) % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    // no monic factor of degree 1..=deg/2
    for d in 1..=deg / 2 {
        for low in 0..p.pow(d as u32) {
            let mut f = digits(low, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    pub fn new(q: u32) -> Result<Self, GroupError> {
        let (p, k) =
            prime_power(q).ok_or_else(|| GroupError::InvalidDescriptor(format!("{q} is not a prime power")))?;
        let modulus = (0..p.pow(k))
            .map(|low| {
                let mut m = digits(low, p, k);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, p))
            .expect("irreducible polynomials exist in every degree");
        let n = q as usize;
        let mut add = vec![0; n * n];
        let mut mul = vec![0; n * n];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = from_digits(&s, p);
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, &x) in da.iter().enumerate() {
                    for (j, &y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let r = poly_rem(&prod, &modulus, p);
                mul[(a * q + b) as usize] = from_digits(&r, p);
            }
        }
        Ok(FiniteField { p, k, q, add, mul })
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize]
    }

    /// A generator of the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.q)
            .find(|&g| {
                let mut x = g;
                let mut ord = 1;
                while x != 1 {
                    x = self.mul(x, g);
                    ord += 1;
                }
                ord == self.q - 1
            })
            .expect("multiplicative group is cyclic")
    }

    /// Additive basis `1, x, x^2, ..` over the prime field.
    pub fn additive_basis(&self) -> Vec<u32> {
        (0..self.k).map(|i| self.p.pow(i)).collect()
    }
}
