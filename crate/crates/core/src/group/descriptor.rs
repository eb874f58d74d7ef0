use std::fmt;

use serde::{Deserialize, Serialize};

use super::finite_field::{prime_power, FiniteField};
use super::{GroupError, Limits, Perm, PermGroup};

/// A finite group by structured parameters or explicit permutations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupDescriptor {
    /// Invariant factors `d_1 | d_2 | .. | d_m`, each at least 2.
    Abelian(Vec<u64>),
    /// The dihedral group with `2n` elements.
    Dihedral(u64),
    Symmetric(u64),
    Alternating(u64),
    /// `GL_n(F_q)`.
    Gl(u32, u32),
    Perm(PermSpec),
    Product(Box<GroupDescriptor>, Box<GroupDescriptor>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermSpec {
    pub degree: usize,
    pub generators: Vec<GeneratorSpec>,
}

/// A generator as a 1-based image list or in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Images(Vec<u32>),
    Cycles(String),
}

impl PermSpec {
    pub fn from_group(g: &PermGroup) -> Self {
        PermSpec {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| GeneratorSpec::Images(p.one_based())).collect(),
        }
    }

    pub fn perms(&self) -> Result<Vec<Perm>, GroupError> {
        self.generators
            .iter()
            .map(|s| match s {
                GeneratorSpec::Images(v) => {
                    if v.len() != self.degree {
                        return Err(GroupError::InvalidDescriptor(format!(
                            "image list of length {} on {} points",
                            v.len(),
                            self.degree
                        )));
                    }
                    Perm::from_one_based(v)
                }
                GeneratorSpec::Cycles(c) => Perm::from_cycles(c, self.degree),
            })
            .collect()
    }
}

fn factorial(n: u64) -> Option<u128> {
    (1..=n as u128).try_fold(1u128, |acc, k| acc.checked_mul(k))
}

impl GroupDescriptor {
    /// Checks the structural invariants of the parameters.
    pub fn validate(&self) -> Result<(), GroupError> {
        match self {
            GroupDescriptor::Abelian(d) => {
                if d.iter().any(|&x| x < 2) {
                    return Err(GroupError::InvalidDescriptor("invariant factors must be at least 2".into()));
                }
                if d.windows(2).any(|w| w[1] % w[0] != 0) {
                    return Err(GroupError::InvalidDescriptor(format!("{d:?} is not a divisibility chain")));
                }
                Ok(())
            }
            GroupDescriptor::Dihedral(n) | GroupDescriptor::Symmetric(n) | GroupDescriptor::Alternating(n) => {
                if *n == 0 {
                    Err(GroupError::InvalidDescriptor("parameter must be positive".into()))
                } else {
                    Ok(())
                }
            }
            GroupDescriptor::Gl(n, q) => {
                if *n < 2 {
                    return Err(GroupError::InvalidDescriptor("GL needs n >= 2".into()));
                }
                prime_power(*q)
                    .map(|_| ())
                    .ok_or_else(|| GroupError::InvalidDescriptor(format!("{q} is not a prime power")))
            }
            GroupDescriptor::Perm(spec) => {
                if spec.degree == 0 {
                    return Err(GroupError::InvalidDescriptor("degree must be positive".into()));
                }
                spec.perms().map(|_| ())
            }
            GroupDescriptor::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
        }
    }

    /// The declared order, when it follows from the parameters alone.
    pub fn declared_order(&self) -> Option<u128> {
        match self {
            GroupDescriptor::Abelian(d) => d.iter().try_fold(1u128, |acc, &x| acc.checked_mul(x as u128)),
            GroupDescriptor::Dihedral(n) => Some(2 * *n as u128),
            GroupDescriptor::Symmetric(n) => factorial(*n),
            GroupDescriptor::Alternating(n) => {
                if *n <= 1 {
                    Some(1)
                } else {
                    factorial(*n).map(|f| f / 2)
                }
            }
            GroupDescriptor::Gl(n, q) => {
                let q = *q as u128;
                let qn = q.checked_pow(*n)?;
                (0..*n).try_fold(1u128, |acc, i| acc.checked_mul(qn - q.pow(i)))
            }
            GroupDescriptor::Perm(_) => None,
            GroupDescriptor::Product(a, b) => a.declared_order()?.checked_mul(b.declared_order()?),
        }
    }

    /// Abelian invariant factors, when the descriptor is visibly abelian.
    pub fn abelian_chain(&self) -> Option<Vec<u64>> {
        match self {
            GroupDescriptor::Abelian(d) => Some(d.clone()),
            GroupDescriptor::Dihedral(1) => Some(vec![2]),
            GroupDescriptor::Dihedral(2) => Some(vec![2, 2]),
            GroupDescriptor::Symmetric(n) if *n <= 1 => Some(vec![]),
            GroupDescriptor::Symmetric(2) => Some(vec![2]),
            GroupDescriptor::Alternating(n) if *n <= 2 => Some(vec![]),
            GroupDescriptor::Alternating(3) => Some(vec![3]),
            GroupDescriptor::Product(a, b) => {
                let mut all = a.abelian_chain()?;
                all.extend(b.abelian_chain()?);
                Some(chain_from_cyclic_orders(&all))
            }
            _ => None,
        }
    }
}

/// Invariant factors of a product of cyclic groups of the given orders.
pub fn chain_from_cyclic_orders(orders: &[u64]) -> Vec<u64> {
    use std::collections::BTreeMap;
    // prime power exponents per prime, largest first
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &n in orders {
        let mut n = n;
        let mut p = 2;
        while n > 1 {
            if p * p > n {
                p = n;
            }
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            if e > 0 {
                by_prime.entry(p).or_default().push(e);
            }
            p += 1;
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut chain = vec![1u64; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (i, e) in exps.into_iter().enumerate() {
            chain[len - 1 - i] *= p.pow(e);
        }
    }
    chain
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Abelian(d) if d.is_empty() => write!(f, "1"),
            GroupDescriptor::Abelian(d) => {
                let parts: Vec<String> = d.iter().map(|x| format!("Z/{x}")).collect();
                write!(f, "{}", parts.join(" x "))
            }
            GroupDescriptor::Dihedral(n) => write!(f, "D_{n}"),
            GroupDescriptor::Symmetric(n) => write!(f, "S_{n}"),
            GroupDescriptor::Alternating(n) => write!(f, "A_{n}"),
            GroupDescriptor::Gl(n, q) => write!(f, "GL({n},{q})"),
            GroupDescriptor::Perm(spec) => {
                write!(f, "<{} generators on {} points>", spec.generators.len(), spec.degree)
            }
            GroupDescriptor::Product(a, b) => write!(f, "({a}) x ({b})"),
        }
    }
}

/// A faithful permutation representation of `desc`.
pub fn materialize(desc: &GroupDescriptor, limits: &Limits) -> Result<PermGroup, GroupError> {
    desc.validate()?;
    if let Some(order) = desc.declared_order() {
        if order > limits.enumeration as u128 {
            return Err(GroupError::OrderTooLarge { bound: limits.enumeration });
        }
    } else if let GroupDescriptor::Product(..) = desc {
        // one factor is explicit; enumeration below enforces the bound
    }
    let g = build(desc)?;
    let order = g.order(limits)?;
    if let Some(declared) = desc.declared_order() {
        debug_assert_eq!(order as u128, declared, "materialized order of {desc}");
    }
    Ok(g)
}

fn cycle(points: &[usize], degree: usize) -> Perm {
    let mut images: Vec<usize> = (0..degree).collect();
    for (i, &p) in points.iter().enumerate() {
        images[p] = points[(i + 1) % points.len()];
    }
    Perm::from_images(images).expect("cycle is a permutation")
}

fn build(desc: &GroupDescriptor) -> Result<PermGroup, GroupError> {
    match desc {
        GroupDescriptor::Abelian(d) => {
            let degree: usize = d.iter().map(|&x| x as usize).sum::<usize>().max(1);
            let mut offset = 0;
            let mut gens = Vec::new();
            for &x in d {
                let pts: Vec<usize> = (offset..offset + x as usize).collect();
                gens.push(cycle(&pts, degree));
                offset += x as usize;
            }
            PermGroup::new(degree, gens)
        }
        GroupDescriptor::Dihedral(n) => match *n {
            1 => PermGroup::new(2, vec![cycle(&[0, 1], 2)]),
            2 => PermGroup::new(4, vec![Perm::from_cycles("(1 2)(3 4)", 4)?, Perm::from_cycles("(1 3)(2 4)", 4)?]),
            n => {
                let n = n as usize;
                let rot = cycle(&(0..n).collect::<Vec<_>>(), n);
                let refl = Perm::from_images((0..n).map(|i| (n - i) % n).collect())?;
                PermGroup::new(n, vec![rot, refl])
            }
        },
        GroupDescriptor::Symmetric(n) => {
            let n = *n as usize;
            if n <= 1 {
                return Ok(PermGroup::trivial());
            }
            PermGroup::new(n, vec![cycle(&[0, 1], n), cycle(&(0..n).collect::<Vec<_>>(), n)])
        }
        GroupDescriptor::Alternating(n) => {
            let n = *n as usize;
            if n <= 2 {
                return Ok(PermGroup::trivial());
            }
            PermGroup::new(n, (2..n).map(|k| cycle(&[0, 1, k], n)).collect())
        }
        GroupDescriptor::Gl(n, q) => gl_action(*n, *q),
        GroupDescriptor::Perm(spec) => PermGroup::new(spec.degree, spec.perms()?),
        GroupDescriptor::Product(a, b) => {
            let ga = build(a)?;
            let gb = build(b)?;
            let degree = ga.degree() + gb.degree();
            let mut gens: Vec<Perm> = ga.generators().iter().map(|p| p.shifted(0, degree)).collect();
            gens.extend(gb.generators().iter().map(|p| p.shifted(ga.degree(), degree)));
            PermGroup::new(degree, gens)
        }
    }
}

/// `GL_n(F_q)` acting on the nonzero column vectors of `F_q^n`, generated by
/// transvections over an additive basis together with `diag(w, 1, .., 1)`.
fn gl_action(n: u32, q: u32) -> Result<PermGroup, GroupError> {
    let f = FiniteField::new(q)?;
    let n = n as usize;
    let total = (q as usize).pow(n as u32);
    let to_vec = |mut x: usize| {
        let mut v = vec![0u32; n];
        for c in v.iter_mut() {
            *c = (x % q as usize) as u32;
            x /= q as usize;
        }
        v
    };
    let from_vec = |v: &[u32]| v.iter().rev().fold(0usize, |acc, &c| acc * q as usize + c as usize);
    let act = |m: &Vec<Vec<u32>>| -> Result<Perm, GroupError> {
        let images = (1..total)
            .map(|x| {
                let v = to_vec(x);
                let w: Vec<u32> = (0..n).map(|i| (0..n).fold(0, |acc, j| f.add(acc, f.mul(m[i][j], v[j])))).collect();
                from_vec(&w) - 1
            })
            .collect();
        Perm::from_images(images)
    };
    let identity =
        |n: usize| -> Vec<Vec<u32>> { (0..n).map(|i| (0..n).map(|j| u32::from(i == j)).collect()).collect() };
    let mut gens = Vec::new();
    let mut d = identity(n);
    d[0][0] = f.primitive_element();
    gens.push(act(&d)?);
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for &a in &f.additive_basis() {
                let mut t = identity(n);
                t[i][j] = a;
                gens.push(act(&t)?);
            }
        }
    }
    PermGroup::new(total - 1, gens)
}
