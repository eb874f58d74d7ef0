//! Exact finite-group machinery over permutation representations.
//!
//! A [`PermGroup`] is given by generators and enumerated lazily. Subsets of
//! an enumerated group are sorted index lists into its element list, which
//! is itself sorted lexicographically so every derived output is
//! deterministic.

pub(crate) mod classes;
pub mod cycle_type;
mod descriptor;
mod fiber;
mod finite_field;
mod iso;
mod perm;
pub(crate) mod subgroups;

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub use classes::{class_power, conjugacy_classes, ConjClass};
pub use descriptor::{chain_from_cyclic_orders, materialize, GeneratorSpec, GroupDescriptor, PermSpec};
pub use fiber::{fiber_power, FiberPower};
pub use finite_field::FiniteField;
pub use iso::{abelian_invariants, identify, is_isomorphic};
pub use perm::{gcd, lcm, Perm};
pub use subgroups::{
    center, derived_subgroup, generates_maximal_cyclic, index_two_subgroups, is_abelian, is_normal, is_solvable,
    is_subgroup, normal_subgroups, quotient, subgroup_generated,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the bound {bound} for this operation")]
    OrderTooLarge { bound: usize },
    #[error("invalid group descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("subset is not a normal subgroup")]
    NotNormal,
    #[error("more than {limit} normal subgroups")]
    TooManyNormalSubgroups { limit: usize },
}

/// Size bounds for enumeration and brute-force searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Limits {
    /// Largest group that may be enumerated.
    pub enumeration: usize,
    /// Largest group for normal-subgroup and isomorphism brute force.
    pub brute_force: usize,
    /// Cap on the size of a normal subgroup lattice.
    pub max_normal_subgroups: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { enumeration: 10_000, brute_force: 2_000, max_normal_subgroups: 4_096 }
    }
}

/// Enumerated elements with fast lookup and lazily computed tables.
#[derive(Debug)]
pub struct Elements {
    list: Vec<Perm>,
    index: HashMap<Perm, u32>,
    orders: Vec<u64>,
    identity: u32,
    pub(crate) classes: OnceLock<classes::ClassTable>,
    pub(crate) maximal_cyclic: OnceLock<Vec<bool>>,
}

impl Elements {
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn perm(&self, i: u32) -> &Perm {
        &self.list[i as usize]
    }

    pub fn perms(&self) -> &[Perm] {
        &self.list
    }

    pub fn index_of(&self, p: &Perm) -> Option<u32> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn order_of(&self, i: u32) -> u64 {
        self.orders[i as usize]
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.index[&self.list[a as usize].mul(&self.list[b as usize])]
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.index[&self.list[a as usize].inverse()]
    }

    /// `g^-1 x g`.
    pub fn conj(&self, x: u32, g: u32) -> u32 {
        self.index[&self.list[x as usize].conjugate_by(&self.list[g as usize])]
    }

    pub fn pow(&self, a: u32, e: i64) -> u32 {
        self.index[&self.list[a as usize].pow(e)]
    }
}

/// A finite permutation group given by generators.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    cache: OnceLock<Arc<Elements>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let cache = OnceLock::new();
        if let Some(e) = self.cache.get() {
            let _ = cache.set(Arc::clone(e));
        }
        PermGroup { degree: self.degree, generators: self.generators.clone(), cache }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, GroupError> {
        let degree = degree.max(1);
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::InvalidDescriptor(format!(
                    "generator {g} acts on {} points, expected {degree}",
                    g.degree()
                )));
            }
        }
        let mut gens: Vec<Perm> = generators.into_iter().filter(|g| !g.is_identity()).collect();
        gens.dedup();
        Ok(PermGroup { degree, generators: gens, cache: OnceLock::new() })
    }

    pub fn trivial() -> Self {
        PermGroup { degree: 1, generators: Vec::new(), cache: OnceLock::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Enumerates the group, refusing beyond `limits.enumeration` elements.
    pub fn elements(&self, limits: &Limits) -> Result<&Elements, GroupError> {
        if let Some(e) = self.cache.get() {
            if e.len() > limits.enumeration {
                return Err(GroupError::OrderTooLarge { bound: limits.enumeration });
            }
            return Ok(e);
        }
        let e = enumerate(self.degree, &self.generators, limits.enumeration)?;
        let _ = self.cache.set(Arc::new(e));
        Ok(self.cache.get().expect("cache was just set"))
    }

    pub fn order(&self, limits: &Limits) -> Result<usize, GroupError> {
        Ok(self.elements(limits)?.len())
    }

    /// Enumerates only if the group fits the brute-force bound.
    pub fn brute(&self, limits: &Limits) -> Result<&Elements, GroupError> {
        let e = self.elements(limits)?;
        if e.len() > limits.brute_force {
            return Err(GroupError::OrderTooLarge { bound: limits.brute_force });
        }
        Ok(e)
    }

    /// The subgroup with the given elements as a standalone group.
    pub fn subgroup(&self, h: &Subset, limits: &Limits) -> Result<PermGroup, GroupError> {
        let e = self.elements(limits)?;
        let gens = subgroups::greedy_generators(e, h);
        PermGroup::new(self.degree, gens.iter().map(|&i| e.perm(i).clone()).collect())
    }
}

fn enumerate(degree: usize, gens: &[Perm], bound: usize) -> Result<Elements, GroupError> {
    let id = Perm::identity(degree);
    let mut seen: HashMap<Perm, ()> = HashMap::new();
    seen.insert(id.clone(), ());
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.mul(g);
            if !seen.contains_key(&y) {
                if seen.len() >= bound {
                    return Err(GroupError::OrderTooLarge { bound });
                }
                seen.insert(y.clone(), ());
                queue.push_back(y);
            }
        }
    }
    let mut list: Vec<Perm> = seen.into_keys().collect();
    list.sort_unstable();
    let index: HashMap<Perm, u32> = list.iter().enumerate().map(|(i, p)| (p.clone(), i as u32)).collect();
    let orders = list.iter().map(Perm::order).collect();
    let identity = index[&Perm::identity(degree)];
    Ok(Elements { list, index, orders, identity, classes: OnceLock::new(), maximal_cyclic: OnceLock::new() })
}

/// A subset of an enumerated group as sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(Vec<u32>);

impl Subset {
    pub fn from_indices(mut idx: Vec<u32>) -> Self {
        idx.sort_unstable();
        idx.dedup();
        Subset(idx)
    }

    pub fn from_perms<'a>(e: &Elements, perms: impl IntoIterator<Item = &'a Perm>) -> Option<Self> {
        let idx: Option<Vec<u32>> = perms.into_iter().map(|p| e.index_of(p)).collect();
        idx.map(Self::from_indices)
    }

    pub fn whole(e: &Elements) -> Self {
        Subset((0..e.len() as u32).collect())
    }

    pub fn trivial(e: &Elements) -> Self {
        Subset(vec![e.identity()])
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: u32) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn perms(&self, e: &Elements) -> Vec<Perm> {
        self.0.iter().map(|&i| e.perm(i).clone()).collect()
    }
}
