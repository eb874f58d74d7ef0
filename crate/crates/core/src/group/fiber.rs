use serde::Serialize;

use super::iso::is_isomorphic;
use super::subgroups::{greedy_generators, is_normal, quotient};
use super::{GroupError, Limits, Perm, PermGroup, Subset};

/// The fiber power `{(g_1, .., g_n) in G^n : g_1 H = .. = g_n H}` with its
/// distinguished normal subgroups `N = H^n` and `N_i = {x in N : x_i = 1}`.
#[derive(Debug, Clone, Serialize)]
pub struct FiberPower {
    #[serde(skip)]
    pub base: PermGroup,
    #[serde(skip)]
    pub kernel: PermGroup,
    pub exponent: usize,
    #[serde(skip)]
    pub product: PermGroup,
    pub base_order: usize,
    pub kernel_order: usize,
    pub product_order: usize,
    #[serde(skip)]
    pub n: Subset,
    #[serde(skip)]
    pub n_i: Vec<Subset>,
    pub n_order: usize,
    pub n_i_orders: Vec<usize>,
    /// `G_phi^n / N_i` is isomorphic to `G`, for each `i`.
    pub quotient_by_n_i_is_base: Vec<bool>,
    /// `G_phi^n / N` is isomorphic to `G / H`.
    pub quotient_by_n_is_base_mod_kernel: bool,
}

fn concat(parts: &[&Perm]) -> Perm {
    let mut images = Vec::new();
    let mut offset = 0;
    for p in parts {
        images.extend(p.images().iter().map(|&x| x as usize + offset));
        offset += p.degree();
    }
    Perm::from_images(images).expect("blocks are permutations")
}

pub fn fiber_power(g: &PermGroup, h: &Subset, n: usize, limits: &Limits) -> Result<FiberPower, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidDescriptor("fiber power exponent must be at least 1".into()));
    }
    let e = g.elements(limits)?;
    if !is_normal(g, h, limits)? {
        return Err(GroupError::NotNormal);
    }
    let expected = (e.len() as u128) * (h.len() as u128).pow(n as u32 - 1);
    if expected > limits.enumeration as u128 {
        return Err(GroupError::OrderTooLarge { bound: limits.enumeration });
    }
    let deg = g.degree();
    let id = Perm::identity(deg);
    let mut gens = Vec::new();
    for s in g.generators() {
        gens.push(concat(&vec![s; n]));
    }
    let hgens = greedy_generators(e, h);
    for i in 0..n {
        for &x in &hgens {
            let mut parts = vec![&id; n];
            parts[i] = e.perm(x);
            gens.push(concat(&parts));
        }
    }
    let product = PermGroup::new(deg * n, gens)?;
    let pe = product.elements(limits)?;
    debug_assert_eq!(pe.len() as u128, expected);
    let in_h = |p: &Perm| e.index_of(p).is_some_and(|x| h.contains(x));
    let mut n_idx = Vec::new();
    let mut n_i_idx = vec![Vec::new(); n];
    for (x, p) in pe.perms().iter().enumerate() {
        let blocks: Vec<Perm> = (0..n).map(|i| p.block(i * deg, deg)).collect();
        if blocks.iter().all(in_h) {
            n_idx.push(x as u32);
            for (i, b) in blocks.iter().enumerate() {
                if b.is_identity() {
                    n_i_idx[i].push(x as u32);
                }
            }
        }
    }
    let n_sub = Subset::from_indices(n_idx);
    let n_i: Vec<Subset> = n_i_idx.into_iter().map(Subset::from_indices).collect();
    let gh = quotient(g, h, limits)?;
    let by_n = quotient(&product, &n_sub, limits)?;
    let quotient_by_n_is_base_mod_kernel = is_isomorphic(&by_n, &gh, limits)?;
    let mut quotient_by_n_i_is_base = Vec::with_capacity(n);
    for ni in &n_i {
        let q = quotient(&product, ni, limits)?;
        quotient_by_n_i_is_base.push(is_isomorphic(&q, g, limits)?);
    }
    Ok(FiberPower {
        base: g.clone(),
        kernel: g.subgroup(h, limits)?,
        exponent: n,
        base_order: e.len(),
        kernel_order: h.len(),
        product_order: pe.len(),
        n_order: n_sub.len(),
        n_i_orders: n_i.iter().map(Subset::len).collect(),
        product,
        n: n_sub,
        n_i,
        quotient_by_n_i_is_base,
        quotient_by_n_is_base_mod_kernel,
    })
}

impl FiberPower {
    /// Checks the structural invariants and the recorded quotient isomorphisms.
    pub fn verify(&self, limits: &Limits) -> Result<bool, GroupError> {
        let order_ok = self.product_order as u128
            == self.base_order as u128 * (self.kernel_order as u128).pow(self.exponent as u32 - 1);
        let mut ok = order_ok && is_normal(&self.product, &self.n, limits)?;
        for ni in &self.n_i {
            ok &= is_normal(&self.product, ni, limits)? && ni.is_subset_of(&self.n);
        }
        Ok(ok && self.quotient_by_n_is_base_mod_kernel && self.quotient_by_n_i_is_base.iter().all(|&b| b))
    }
}
