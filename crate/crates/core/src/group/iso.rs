use std::collections::HashMap;

use super::classes::class_table;
use super::descriptor::{materialize, GroupDescriptor};
use super::subgroups::{greedy_generators, is_abelian};
use super::{Elements, GroupError, Limits, PermGroup, Subset};

fn primes_of(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Invariant factors `d_1 | .. | d_m` of an abelian group, `None` if nonabelian.
pub fn abelian_invariants(g: &PermGroup, limits: &Limits) -> Result<Option<Vec<u64>>, GroupError> {
    let e = g.elements(limits)?;
    if !is_abelian(g) {
        return Ok(None);
    }
    Ok(Some(invariants_from_orders(e.len() as u64, (0..e.len() as u32).map(|i| e.order_of(i)))))
}

/// Invariant factors of the abelian group with the given element orders.
pub(crate) fn invariants_from_orders(n: u64, orders: impl Iterator<Item = u64> + Clone) -> Vec<u64> {
    let mut exps_by_prime: Vec<(u64, Vec<u32>)> = Vec::new();
    for p in primes_of(n) {
        let mut a = 0;
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
            a += 1;
        }
        // logs[k] = log_p #{x : x^(p^k) = 1}
        let mut logs = vec![0u32];
        while *logs.last().unwrap() < a {
            let pk = p.pow(logs.len() as u32);
            let mut count = orders.clone().filter(|o| pk % o == 0).count() as u64;
            let mut c = 0;
            while count > 1 {
                count /= p;
                c += 1;
            }
            logs.push(c);
        }
        // factors with exponent >= k number c_k - c_(k-1)
        let mut exps = Vec::new();
        for k in 1..logs.len() {
            let at_least_k = logs[k] - logs[k - 1];
            let at_least_next = if k + 1 < logs.len() { logs[k + 1] - logs[k] } else { 0 };
            for _ in 0..at_least_k.saturating_sub(at_least_next) {
                exps.push(k as u32);
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        exps_by_prime.push((p, exps));
    }
    let len = exps_by_prime.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
    let mut chain = vec![1u64; len];
    for (p, exps) in exps_by_prime {
        for (i, e) in exps.into_iter().enumerate() {
            chain[len - 1 - i] *= p.pow(e);
        }
    }
    chain
}

/// (element order, class size) for every element.
fn signatures(g: &PermGroup, e: &Elements) -> Vec<(u64, u64)> {
    let t = class_table(g, e);
    (0..e.len() as u32).map(|x| (e.order_of(x), t.classes[t.class_of[x as usize] as usize].size)).collect()
}

fn histogram(sig: &[(u64, u64)]) -> Vec<((u64, u64), usize)> {
    let mut h: HashMap<(u64, u64), usize> = HashMap::new();
    for &s in sig {
        *h.entry(s).or_default() += 1;
    }
    let mut v: Vec<_> = h.into_iter().collect();
    v.sort_unstable();
    v
}

struct Search<'a> {
    ea: &'a Elements,
    eb: &'a Elements,
    gens: Vec<u32>,
    /// right multiplication by each generator of A
    cols_a: Vec<Vec<u32>>,
    cols_b: HashMap<u32, Vec<u32>>,
    candidates: Vec<Vec<u32>>,
}

impl Search<'_> {
    fn col_b(&mut self, b: u32) -> Vec<u32> {
        let eb = self.eb;
        self.cols_b.entry(b).or_insert_with(|| (0..eb.len() as u32).map(|y| eb.mul(y, b)).collect()).clone()
    }

    /// Extends the assignment of the first `images.len()` generators to a map
    /// on the subgroup they generate; `None` unless it is an injective homomorphism.
    fn check(&mut self, images: &[u32]) -> Option<usize> {
        let k = images.len();
        let cols: Vec<Vec<u32>> = images.iter().map(|&b| self.col_b(b)).collect();
        let mut map = vec![u32::MAX; self.ea.len()];
        let mut used = vec![false; self.eb.len()];
        map[self.ea.identity() as usize] = self.eb.identity();
        used[self.eb.identity() as usize] = true;
        let mut queue = vec![self.ea.identity()];
        let mut size = 1;
        while let Some(x) = queue.pop() {
            let fx = map[x as usize];
            for (ca, cb) in self.cols_a.iter().zip(&cols).take(k) {
                let y = ca[x as usize];
                let fy = cb[fx as usize];
                if map[y as usize] == u32::MAX {
                    if used[fy as usize] {
                        return None;
                    }
                    map[y as usize] = fy;
                    used[fy as usize] = true;
                    size += 1;
                    queue.push(y);
                } else if map[y as usize] != fy {
                    return None;
                }
            }
        }
        Some(size)
    }

    fn extend(&mut self, images: &mut Vec<u32>) -> bool {
        let level = images.len();
        if level == self.gens.len() {
            return self.check(images) == Some(self.ea.len());
        }
        for c in self.candidates[level].clone() {
            images.push(c);
            if self.check(images).is_some() && self.extend(images) {
                return true;
            }
            images.pop();
        }
        false
    }
}

/// Exact isomorphism test for groups within the brute-force bound.
pub fn is_isomorphic(a: &PermGroup, b: &PermGroup, limits: &Limits) -> Result<bool, GroupError> {
    let ea = a.brute(limits)?;
    let eb = b.brute(limits)?;
    if ea.len() != eb.len() {
        return Ok(false);
    }
    let (ab_a, ab_b) = (is_abelian(a), is_abelian(b));
    if ab_a != ab_b {
        return Ok(false);
    }
    if ab_a {
        return Ok(abelian_invariants(a, limits)? == abelian_invariants(b, limits)?);
    }
    let sa = signatures(a, ea);
    let sb = signatures(b, eb);
    if histogram(&sa) != histogram(&sb) {
        return Ok(false);
    }
    let gens = greedy_generators(ea, &Subset::whole(ea));
    let tb = class_table(b, eb);
    let mut candidates = Vec::with_capacity(gens.len());
    for (level, &x) in gens.iter().enumerate() {
        let want = sa[x as usize];
        let pool: Vec<u32> = if level == 0 {
            // composing with inner automorphisms of B fixes the first image up to conjugacy
            tb.members.iter().map(|m| m.indices()[0]).filter(|&y| sb[y as usize] == want).collect()
        } else {
            (0..eb.len() as u32).filter(|&y| sb[y as usize] == want).collect()
        };
        candidates.push(pool);
    }
    let cols_a = gens.iter().map(|&s| (0..ea.len() as u32).map(|x| ea.mul(x, s)).collect()).collect();
    let mut search = Search { ea, eb, gens, cols_a, cols_b: HashMap::new(), candidates };
    Ok(search.extend(&mut Vec::new()))
}

/// A structured name for small groups of the common families, if one fits.
pub fn identify(g: &PermGroup, limits: &Limits) -> Result<Option<GroupDescriptor>, GroupError> {
    let n = g.order(limits)? as u64;
    if let Some(inv) = abelian_invariants(g, limits)? {
        return Ok(Some(GroupDescriptor::Abelian(inv)));
    }
    if n > limits.brute_force as u64 {
        return Ok(None);
    }
    let mut tries = Vec::new();
    if n.is_multiple_of(2) {
        tries.push(GroupDescriptor::Dihedral(n / 2));
    }
    let mut f = 1u64;
    for k in 1..=8u64 {
        f *= k;
        if f == n {
            tries.push(GroupDescriptor::Symmetric(k));
        }
        if f == 2 * n {
            tries.push(GroupDescriptor::Alternating(k));
        }
    }
    for d in tries {
        let h = materialize(&d, limits)?;
        if is_isomorphic(g, &h, limits)? {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(d: GroupDescriptor) -> PermGroup {
        materialize(&d, &Limits::default()).unwrap()
    }

    #[test]
    fn invariants_of_products() {
        let l = Limits::default();
        let g = mat(GroupDescriptor::Product(
            Box::new(GroupDescriptor::Abelian(vec![4])),
            Box::new(GroupDescriptor::Abelian(vec![6])),
        ));
        assert_eq!(abelian_invariants(&g, &l).unwrap(), Some(vec![2, 12]));
        let g = mat(GroupDescriptor::Abelian(vec![2, 2, 8]));
        assert_eq!(abelian_invariants(&g, &l).unwrap(), Some(vec![2, 2, 8]));
        let g = mat(GroupDescriptor::Abelian(vec![3, 9]));
        assert_eq!(abelian_invariants(&g, &l).unwrap(), Some(vec![3, 9]));
        let g = mat(GroupDescriptor::Abelian(vec![]));
        assert_eq!(abelian_invariants(&g, &l).unwrap(), Some(vec![]));
        assert_eq!(abelian_invariants(&mat(GroupDescriptor::Symmetric(3)), &l).unwrap(), None);
    }

    #[test]
    fn small_isomorphisms() {
        let l = Limits::default();
        let s3 = mat(GroupDescriptor::Symmetric(3));
        let d3 = mat(GroupDescriptor::Dihedral(3));
        assert!(is_isomorphic(&s3, &d3, &l).unwrap());
        let z6 = mat(GroupDescriptor::Abelian(vec![6]));
        assert!(!is_isomorphic(&s3, &z6, &l).unwrap());
        // D_6 = S_3 x Z/2, but D_12 is not S_4
        let d6 = mat(GroupDescriptor::Dihedral(6));
        let s3z2 = mat(GroupDescriptor::Product(
            Box::new(GroupDescriptor::Symmetric(3)),
            Box::new(GroupDescriptor::Abelian(vec![2])),
        ));
        assert!(is_isomorphic(&d6, &s3z2, &l).unwrap());
        let d12 = mat(GroupDescriptor::Dihedral(12));
        let s4 = mat(GroupDescriptor::Symmetric(4));
        assert!(!is_isomorphic(&d12, &s4, &l).unwrap());
        // D_4 and Q_8 share order statistics up to class sizes but differ
        let q8 = mat(GroupDescriptor::Perm(super::super::PermSpec {
            degree: 8,
            generators: vec![
                super::super::descriptor::GeneratorSpec::Cycles("(1 2 3 4)(5 6 7 8)".into()),
                super::super::descriptor::GeneratorSpec::Cycles("(1 5 3 7)(2 8 4 6)".into()),
            ],
        }));
        assert_eq!(q8.order(&l).unwrap(), 8);
        let d4 = mat(GroupDescriptor::Dihedral(4));
        assert!(!is_isomorphic(&q8, &d4, &l).unwrap());
        assert!(is_isomorphic(&q8, &q8.clone(), &l).unwrap());
    }

    #[test]
    fn gl23_is_not_s4_but_pgl25_is_s5() {
        let l = Limits::default();
        let gl23 = mat(GroupDescriptor::Gl(2, 3));
        assert!(!is_isomorphic(&gl23, &mat(GroupDescriptor::Symmetric(4)), &l).unwrap());
        let gl25 = mat(GroupDescriptor::Gl(2, 5));
        let z = super::super::center(&gl25, &l).unwrap();
        let pgl = super::super::quotient(&gl25, &z, &l).unwrap();
        assert_eq!(identify(&pgl, &l).unwrap(), Some(GroupDescriptor::Symmetric(5)));
    }

    #[test]
    fn identifies_families() {
        let l = Limits::default();
        assert_eq!(identify(&mat(GroupDescriptor::Dihedral(5)), &l).unwrap(), Some(GroupDescriptor::Dihedral(5)));
        assert_eq!(identify(&mat(GroupDescriptor::Alternating(4)), &l).unwrap(), Some(GroupDescriptor::Alternating(4)));
        assert_eq!(identify(&mat(GroupDescriptor::Gl(2, 3)), &l).unwrap(), None);
    }
}
