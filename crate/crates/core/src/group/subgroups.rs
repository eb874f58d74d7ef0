use std::collections::HashSet;

use super::classes::class_table;
use super::{gcd, Elements, GroupError, Limits, Perm, PermGroup, Subset};

#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct BitSet(Vec<u64>);

impl BitSet {
    pub fn new(n: usize) -> Self {
        BitSet(vec![0; n.div_ceil(64)])
    }

    #[inline]
    pub fn insert(&mut self, i: u32) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = self.0[w] & (1 << b) == 0;
        self.0[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: u32) -> bool {
        self.0[(i / 64) as usize] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(w, &bits)| (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| (w * 64 + b) as u32))
    }

    pub fn to_subset(&self) -> Subset {
        Subset(self.iter().collect())
    }
}

/// Closure of `start` (a subgroup, or just the identity) under right
/// multiplication by `gens`.
fn close(e: &Elements, start: &BitSet, gens: &[u32]) -> BitSet {
    let mut set = start.clone();
    let mut queue: Vec<u32> = start.iter().collect();
    while let Some(x) = queue.pop() {
        for &g in gens {
            let y = e.mul(x, g);
            if set.insert(y) {
                queue.push(y);
            }
        }
    }
    set
}

fn identity_set(e: &Elements) -> BitSet {
    let mut b = BitSet::new(e.len());
    b.insert(e.identity());
    b
}

pub(crate) fn generated(e: &Elements, gens: &[u32]) -> BitSet {
    close(e, &identity_set(e), gens)
}

/// A short generating list for the subgroup spanned by `set`, scanning
/// elements of larger order first.
pub(crate) fn greedy_generators(e: &Elements, set: &Subset) -> Vec<u32> {
    let mut order: Vec<u32> = set.indices().to_vec();
    order.sort_by_key(|&i| (std::cmp::Reverse(e.order_of(i)), i));
    let mut gens = Vec::new();
    let mut span = identity_set(e);
    for x in order {
        if !span.contains(x) {
            gens.push(x);
            span = close(e, &span, &gens);
        }
    }
    gens
}

pub fn subgroup_generated(g: &PermGroup, gens: &[Perm], limits: &Limits) -> Result<Subset, GroupError> {
    let e = g.elements(limits)?;
    let idx: Vec<u32> = gens
        .iter()
        .map(|p| {
            e.index_of(p).ok_or_else(|| GroupError::InvalidDescriptor(format!("{p} is not an element of the group")))
        })
        .collect::<Result<_, _>>()?;
    Ok(generated(e, &idx).to_subset())
}

pub fn is_subgroup(g: &PermGroup, h: &Subset, limits: &Limits) -> Result<bool, GroupError> {
    let e = g.elements(limits)?;
    if !h.contains(e.identity()) {
        return Ok(false);
    }
    let gens = greedy_generators(e, h);
    let span = generated(e, &gens);
    Ok(span.count() == h.len())
}

pub fn is_normal(g: &PermGroup, h: &Subset, limits: &Limits) -> Result<bool, GroupError> {
    if !is_subgroup(g, h, limits)? {
        return Ok(false);
    }
    let e = g.elements(limits)?;
    for s in g.generators() {
        let s = e.index_of(s).expect("generator in group");
        if !h.indices().iter().all(|&x| h.contains(e.conj(x, s))) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.mul(b) == b.mul(a)))
}

/// All normal subgroups, as unions of conjugacy classes closed under products.
///
/// Every normal subgroup is a join of normal closures of classes, so the
/// lattice is built by joining class closures until nothing new appears.
pub fn normal_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<Subset>, GroupError> {
    let e = g.brute(limits)?;
    let table = class_table(g, e);
    let mut closures: Vec<(BitSet, Vec<u32>)> = Vec::new();
    let mut seen: HashSet<BitSet> = HashSet::new();
    for members in &table.members {
        let ncl = generated(e, members.indices());
        if seen.insert(ncl.clone()) {
            let gens = greedy_generators(e, &ncl.to_subset());
            closures.push((ncl, gens));
        }
    }
    let mut found: Vec<BitSet> = closures.iter().map(|(b, _)| b.clone()).collect();
    let mut head = 0;
    while head < found.len() {
        let a = found[head].clone();
        head += 1;
        for (_, gens) in &closures {
            if gens.iter().all(|&x| a.contains(x)) {
                continue;
            }
            let join = close(e, &a, gens);
            if seen.insert(join.clone()) {
                if found.len() >= limits.max_normal_subgroups {
                    return Err(GroupError::TooManyNormalSubgroups { limit: limits.max_normal_subgroups });
                }
                found.push(join);
            }
        }
    }
    let mut out: Vec<Subset> = found.iter().map(BitSet::to_subset).collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

/// `G/H` acting on the cosets of `H`.
pub fn quotient(g: &PermGroup, h: &Subset, limits: &Limits) -> Result<PermGroup, GroupError> {
    if !is_normal(g, h, limits)? {
        return Err(GroupError::NotNormal);
    }
    let e = g.elements(limits)?;
    let n = e.len();
    let mut coset = vec![u32::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n as u32 {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &k in h.indices() {
            coset[e.mul(x, k) as usize] = id;
        }
    }
    let index = reps.len();
    let gens: Vec<Perm> = g
        .generators()
        .iter()
        .map(|s| {
            let s = e.index_of(s).expect("generator in group");
            let images = reps.iter().map(|&r| coset[e.mul(r, s) as usize] as usize).collect();
            Perm::from_images(images).expect("coset action is a permutation")
        })
        .collect();
    PermGroup::new(index, gens)
}

pub fn center(g: &PermGroup, limits: &Limits) -> Result<Subset, GroupError> {
    let e = g.elements(limits)?;
    let idx = (0..e.len() as u32)
        .filter(|&x| {
            let p = e.perm(x);
            g.generators().iter().all(|s| p.mul(s) == s.mul(p))
        })
        .collect();
    Ok(Subset(idx))
}

/// Commutator subgroup of the subgroup generated by `gens`, as a bitset.
fn derived_of(e: &Elements, gens: &[u32]) -> BitSet {
    let mut comm = Vec::new();
    for &a in gens {
        for &b in gens {
            // [a,b] = a^-1 b^-1 a b
            let c = e.mul(e.mul(e.inv(a), e.inv(b)), e.mul(a, b));
            if c != e.identity() {
                comm.push(c);
            }
        }
    }
    comm.sort_unstable();
    comm.dedup();
    // normal closure inside <gens>
    let mut set = generated(e, &comm);
    loop {
        let mut extra = Vec::new();
        for x in set.iter() {
            for &s in gens {
                let y = e.conj(x, s);
                if !set.contains(y) {
                    extra.push(y);
                }
            }
        }
        if extra.is_empty() {
            return set;
        }
        comm.extend(extra);
        comm.sort_unstable();
        comm.dedup();
        set = generated(e, &comm);
    }
}

pub fn derived_subgroup(g: &PermGroup, limits: &Limits) -> Result<Subset, GroupError> {
    let e = g.elements(limits)?;
    let gens: Vec<u32> = g.generators().iter().map(|p| e.index_of(p).unwrap()).collect();
    Ok(derived_of(e, &gens).to_subset())
}

/// Derived series terminates at the trivial group.
pub fn is_solvable(g: &PermGroup, limits: &Limits) -> Result<bool, GroupError> {
    let e = g.elements(limits)?;
    let mut gens: Vec<u32> = g.generators().iter().map(|p| e.index_of(p).unwrap()).collect();
    let mut size = e.len();
    loop {
        if size == 1 {
            return Ok(true);
        }
        let d = derived_of(e, &gens);
        let next = d.count();
        if next == size {
            return Ok(false);
        }
        size = next;
        gens = greedy_generators(e, &d.to_subset());
    }
}

/// Definitional test: no `h` in `G` has `<g>` strictly inside `<h>`.
pub fn generates_maximal_cyclic(g: &PermGroup, x: &Perm, limits: &Limits) -> Result<bool, GroupError> {
    let e = g.elements(limits)?;
    let target =
        e.index_of(x).ok_or_else(|| GroupError::InvalidDescriptor(format!("{x} is not an element of the group")))?;
    let ord = e.order_of(target);
    for h in 0..e.len() as u32 {
        let oh = e.order_of(h);
        if oh <= ord {
            continue;
        }
        let mut p = e.perm(h).clone();
        let step = e.perm(h);
        for _ in 1..oh {
            if &p == x {
                return Ok(false);
            }
            p = p.mul(step);
        }
    }
    Ok(true)
}

/// Flags for every element: true iff it generates a maximal cyclic subgroup.
pub(crate) fn maximal_cyclic_flags(e: &Elements) -> &[bool] {
    e.maximal_cyclic.get_or_init(|| {
        let mut flags = vec![true; e.len()];
        if e.len() == 1 {
            return flags;
        }
        for h in 0..e.len() as u32 {
            let oh = e.order_of(h);
            let step = e.perm(h);
            let mut p = Perm::identity(step.degree());
            for j in 0..oh {
                if gcd(j, oh) != 1 {
                    flags[e.index_of(&p).unwrap() as usize] = false;
                }
                p = p.mul(step);
            }
        }
        flags
    })
}

/// Subgroups of index two (each is automatically normal).
///
/// Each contains the subgroup `K` generated by all squares and commutators,
/// so they are the kernels of the nonzero maps from the elementary abelian
/// group `G/K` onto Z/2.
pub fn index_two_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<Subset>, GroupError> {
    let e = g.elements(limits)?;
    if e.len() % 2 != 0 {
        return Ok(Vec::new());
    }
    let gens: Vec<u32> = g.generators().iter().map(|p| e.index_of(p).unwrap()).collect();
    let mut start: Vec<u32> = derived_of(e, &gens).iter().collect();
    start.extend((0..e.len() as u32).map(|x| e.mul(x, x)));
    start.sort_unstable();
    start.dedup();
    let k = generated(e, &start).to_subset();
    let mut coset = vec![u32::MAX; e.len()];
    let mut reps = Vec::new();
    for x in 0..e.len() as u32 {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &kk in k.indices() {
            coset[e.mul(x, kk) as usize] = id;
        }
    }
    let m = reps.len();
    let cmul = |c: u32, s: u32| coset[e.mul(reps[c as usize], s) as usize];
    let id_coset = coset[e.identity() as usize];
    // greedy coset-level generators
    let mut qgens: Vec<u32> = Vec::new();
    let mut span = vec![false; m];
    span[id_coset as usize] = true;
    for c in 0..m as u32 {
        if span[c as usize] {
            continue;
        }
        qgens.push(reps[c as usize]);
        let mut queue: Vec<u32> = (0..m as u32).filter(|&x| span[x as usize]).collect();
        while let Some(x) = queue.pop() {
            for &s in &qgens {
                let y = cmul(x, s);
                if !span[y as usize] {
                    span[y as usize] = true;
                    queue.push(y);
                }
            }
        }
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << qgens.len()) {
        let mut label = vec![u8::MAX; m];
        label[id_coset as usize] = 0;
        let mut queue = vec![id_coset];
        let mut consistent = true;
        while let Some(x) = queue.pop() {
            for (bit, &s) in qgens.iter().enumerate() {
                let y = cmul(x, s);
                let l = label[x as usize] ^ ((mask >> bit) & 1) as u8;
                if label[y as usize] == u8::MAX {
                    label[y as usize] = l;
                    queue.push(y);
                } else if label[y as usize] != l {
                    consistent = false;
                }
            }
        }
        if consistent {
            let idx = (0..e.len() as u32).filter(|&x| label[coset[x as usize] as usize] == 0).collect();
            out.push(Subset(idx));
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}
