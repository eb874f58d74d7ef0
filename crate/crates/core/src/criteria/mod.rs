//! Hypothesis checkers for the non-parametricity criteria, producing
//! certificates that separate what was verified from what was assumed.

mod audit;
mod checks;
pub(crate) mod evidence;
mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::genus::{FieldContext, MinimalGenusVerdict, RamificationType};
use crate::group::{identify, GroupDescriptor, GroupError, Limits, Perm, PermGroup, Subset};

pub use audit::{audit, Attempt, AuditOutcome};
pub use checks::{check_t32, check_t32_with, check_t34, check_t36, check_t36_symmetric, check_t37, check_t38};
pub use evidence::{
    embedding_star_evidence, every_quadratic_embeds, gar_kernel_name, index_two_regular_sn, inertia_oracle,
};
pub use search::{class_witness, select_classes};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriteriaError {
    #[error("genus bound not certified: {0}")]
    GenusNotCertified(String),
    #[error("embedding condition not certified: {0}")]
    EmbeddingNotCertified(String),
    #[error("no embedding evidence: {0}")]
    NoEvidence(String),
    #[error("local ramification evidence is missing")]
    MissingLocalEvidence,
    #[error("class search failed: {0}")]
    ClassSearchFailed(String),
    #[error("no inertia oracle covers the classes: {0}")]
    OracleGap(String),
    #[error("{0} subgroups of index two, expected exactly one")]
    NonUniqueIndexTwo(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "T3.2")]
    T32,
    #[serde(rename = "T3.4")]
    T34,
    #[serde(rename = "T3.4addendum")]
    T34Addendum,
    #[serde(rename = "T3.6")]
    T36,
    #[serde(rename = "T3.7")]
    T37,
    #[serde(rename = "T3.8")]
    T38,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    NoFiniteOneParametricSet,
    NoParametricExtension,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EmbeddingRule {
    SolvableKernel,
    #[serde(rename = "GARKernel")]
    GarKernel,
    IndexTwoRegular,
    /// H is a direct factor of G.
    DirectFactor,
    UserAssertion,
}

/// Why the relevant group is taken to be a Galois group over k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Justification {
    SolvableByShafarevich,
    Symmetric,
    Alternating,
    Abelian,
    /// The conclusions concern non-empty sets of k-regular realizations, so
    /// G may be assumed to be a regular Galois group over k.
    NonEmptySetReduction,
    UserAsserted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingEvidence {
    pub rule: EmbeddingRule,
    pub citation: String,
    pub realizability_assumed: bool,
    /// "G" or "G/H".
    pub realizability_of: String,
    pub justification: Justification,
    /// True when the rule's group-theoretic hypothesis was checked by machine.
    pub verified: bool,
    pub details: String,
}

/// Externally established hypotheses for [`check_t32_with`].
#[derive(Debug, Clone)]
pub struct T32Evidence {
    pub genus: GenusEvidence,
    /// How the genus condition was checked, for the certificate.
    pub genus_check: String,
    pub assumptions: Vec<Assumption>,
    /// Replaces the search for condition (*) evidence.
    pub embedding: Option<(EmbeddingEvidence, Vec<Assumption>)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub tag: String,
    pub statement: String,
}

impl Assumption {
    pub fn new(tag: &str, statement: impl Into<String>) -> Self {
        Assumption { tag: tag.into(), statement: statement.into() }
    }
}

/// Infinitely many primes with a prescribed ramification index, as a
/// structured assertion carrying its construction rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalEvidence {
    pub rule: String,
    pub primes: String,
    /// Lower bound for the ramification index of G/H at those primes.
    pub ramification_index: u64,
    #[serde(default)]
    pub asserted: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InertiaRule {
    AbelianAllClasses,
    SymmetricOddClasses,
    UserAssertion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InertiaOracle {
    pub rule: InertiaRule,
    pub citation: String,
    pub scope: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassWitness {
    /// Cycle type for symmetric groups, otherwise the representative in cycle notation.
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub representative: Option<Perm>,
    pub element_order: u64,
    pub size: u128,
}

/// Classes chosen for one normal subgroup H' with G/H' isomorphic to G/H.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassSelection {
    pub kernel_order: u128,
    pub kernel: String,
    pub classes: Vec<ClassWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusEvidence {
    Verdict(MinimalGenusVerdict),
    /// A genus bound for the subextensions fixed by each H', from branch point counting.
    Subextension {
        argument: String,
        ramification: RamificationType,
        genus_at_least: i64,
    },
    Classes(Vec<ClassSelection>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupRef {
    pub name: String,
    pub order: u128,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<GroupDescriptor>,
}

impl GroupRef {
    pub fn of(g: &PermGroup, desc: Option<&GroupDescriptor>, limits: &Limits) -> Result<Self, GroupError> {
        let order = g.order(limits)? as u128;
        let descriptor = match desc {
            Some(d) => Some(d.clone()),
            None => identify(g, limits)?,
        };
        let name = descriptor.as_ref().map(|d| d.to_string()).unwrap_or_else(|| format!("group of order {order}"));
        Ok(GroupRef { name, order, descriptor })
    }

    pub fn named(desc: &GroupDescriptor) -> Self {
        GroupRef { name: desc.to_string(), order: desc.declared_order().unwrap_or(0), descriptor: Some(desc.clone()) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub order: u128,
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub descriptor: Option<GroupDescriptor>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Perm>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alternatives {
    pub enumerated: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub group: GroupRef,
    pub field: FieldContext,
    pub theorem: Theorem,
    pub witness: Witness,
    pub quotient: GroupRef,
    pub alternatives: Alternatives,
    pub embedding: EmbeddingEvidence,
    pub genus: GenusEvidence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub local_evidence: Option<LocalEvidence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inertia: Option<InertiaOracle>,
    pub conclusion: Conclusion,
    pub implied_conclusions: Vec<Conclusion>,
    /// The branch-point-bounded extension holds under the Uniformity Conjecture.
    pub uniformity_extension: bool,
    /// Hypotheses checked by machine.
    pub verified: Vec<String>,
    pub assumptions: Vec<Assumption>,
}

/// User-supplied assertions for hypotheses the tool cannot decide.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Assertions {
    /// G is a Galois group over k.
    #[serde(default)]
    pub galois_group: Option<String>,
    /// Condition (*) for the chosen kernel.
    #[serde(default)]
    pub embedding: Option<String>,
    /// Every quadratic extension of k embeds into a G-extension.
    #[serde(default)]
    pub every_quadratic_embeds: Option<String>,
    #[serde(default)]
    pub local_evidence: Option<LocalEvidence>,
    /// Every selected class lies in the inertia canonical invariant of some regular realization.
    #[serde(default)]
    pub inertia: Option<String>,
}

/// The group under test, with its descriptor when one is known.
#[derive(Debug, Clone, Copy)]
pub struct Subject<'a> {
    pub group: &'a PermGroup,
    pub descriptor: Option<&'a GroupDescriptor>,
}

impl<'a> Subject<'a> {
    pub fn new(group: &'a PermGroup, descriptor: Option<&'a GroupDescriptor>) -> Self {
        Subject { group, descriptor }
    }

    /// `n` when the group is given as a symmetric group.
    pub fn symmetric_degree(&self) -> Option<u64> {
        match self.descriptor {
            Some(GroupDescriptor::Symmetric(n)) => Some(*n),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Context<'a> {
    pub field: &'a FieldContext,
    pub limits: &'a Limits,
    pub assertions: &'a Assertions,
    /// Enumerate the normal subgroups H' with G/H' isomorphic to G/H for the record.
    pub scan_alternatives: bool,
}

pub(crate) fn witness_of(
    g: &PermGroup,
    h: &Subset,
    limits: &Limits,
    description: String,
) -> Result<Witness, GroupError> {
    let sub = g.subgroup(h, limits)?;
    let descriptor = if h.len() <= limits.brute_force { identify(&sub, limits)? } else { None };
    Ok(Witness { order: h.len() as u128, description, descriptor, generators: sub.generators().to_vec() })
}
