//! Dispatch of a group to the criterion that applies to its family, with the
//! standard witness constructions.

mod abelian;
mod dihedral;
mod linear;
mod symmetric;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::criteria::evidence::justify;
use crate::criteria::{
    check_t32, check_t32_with, Assertions, Certificate, Context, CriteriaError, EmbeddingEvidence, EmbeddingRule,
    GenusEvidence, GroupRef, Subject, T32Evidence,
};
use crate::genus::{dihedral_degree, is_prime, minimal_genus_for_descriptor, prime_factors, prime_set_s, FieldContext};
use crate::group::{
    abelian_invariants, center, derived_subgroup, is_abelian, is_solvable, materialize, normal_subgroups, quotient,
    subgroup_generated, GroupDescriptor, GroupError, Limits, PermGroup, Subset,
};

pub use abelian::{
    abelian_groups_of_order, abelian_suitable_quotient, exception_522, is_quotient, validate_chain, zz_name,
    AbelianQuotient,
};
pub use dihedral::{dihedral_analysis, dihedral_exception};
pub use linear::{gl_center_check, GlCenterCheck};
pub use symmetric::sn_select_classes;

use abelian::Model;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid invariant factor chain {0}")]
    InvalidChain(String),
    #[error("no {count} classes for S_{n}: {reason}")]
    NotEnoughClasses { n: u64, count: usize, reason: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
}

/// An entry of an exception list, e.g. item "(b)" of the over-Q abelian list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionTag {
    pub list: String,
    pub item: String,
    pub group: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyVerdict {
    pub group: GroupRef,
    pub field: FieldContext,
    /// No non-empty finite 1-parametric set.
    pub covered: bool,
    /// The first condition, in theorem order, that produced a certificate.
    pub matched_condition: Option<String>,
    pub also_matching: Vec<String>,
    pub certificate: Option<Certificate>,
    pub exception: Option<ExceptionTag>,
    pub diagnostics: Vec<String>,
}

pub(crate) enum Outcome {
    Certified(Box<Certificate>),
    Refused(String),
    Inapplicable,
}

pub(crate) fn outcome(r: Result<Certificate, CriteriaError>) -> Result<Outcome, FamilyError> {
    Ok(match r {
        Ok(c) => Outcome::Certified(Box::new(c)),
        Err(e) => Outcome::Refused(e.to_string()),
    })
}

#[derive(Default)]
pub(crate) struct Evaluation {
    certified: Vec<(String, Certificate)>,
    diagnostics: Vec<String>,
    exception: Option<ExceptionTag>,
}

impl Evaluation {
    fn record(&mut self, tag: &str, o: Outcome) {
        match o {
            Outcome::Certified(c) => self.certified.push((tag.to_string(), *c)),
            Outcome::Refused(why) => self.diagnostics.push(format!("{tag}: {why}")),
            Outcome::Inapplicable => {}
        }
    }

    fn except(&mut self, t: ExceptionTag) {
        self.diagnostics.push(format!("{} {}: {}", t.list, t.item, t.group));
        self.exception.get_or_insert(t);
    }
}

/// Conditions of the two main theorems give the strong conclusion; the
/// class-counting ones only rule out a parametric extension.
fn strong(tag: &str) -> bool {
    tag.starts_with("Thm 5.1") || tag.starts_with("Thm 5.2")
}

fn verdict_from(
    g: &PermGroup,
    desc: Option<&GroupDescriptor>,
    fc: &FieldContext,
    limits: &Limits,
    eval: Evaluation,
) -> Result<FamilyVerdict, FamilyError> {
    verdict_with(GroupRef::of(g, desc, limits)?, fc, eval)
}

fn verdict_with(group: GroupRef, fc: &FieldContext, eval: Evaluation) -> Result<FamilyVerdict, FamilyError> {
    let Evaluation { mut certified, diagnostics, exception } = eval;
    let pick = certified.iter().position(|(t, _)| strong(t)).or((!certified.is_empty()).then_some(0));
    let covered = pick.is_some_and(|i| strong(&certified[i].0));
    let chosen = pick.map(|i| certified.remove(i));
    let mut also_matching: Vec<String> = Vec::new();
    for (t, _) in certified {
        if chosen.as_ref().map(|c| &c.0) != Some(&t) && !also_matching.contains(&t) {
            also_matching.push(t);
        }
    }
    let (matched_condition, certificate) = match chosen {
        Some((t, c)) => (Some(t), Some(c)),
        None => (None, None),
    };
    Ok(FamilyVerdict {
        group,
        field: fc.clone(),
        covered,
        matched_condition,
        also_matching,
        certificate,
        exception: if covered { None } else { exception },
        diagnostics,
    })
}

/// Classification with no user assertions.
pub fn classify(desc: &GroupDescriptor, fc: &FieldContext, limits: &Limits) -> Result<FamilyVerdict, FamilyError> {
    classify_with(desc, fc, limits, &Assertions::default())
}

/// Tries every condition of the main theorems in order and reports the first
/// success together with every other condition that also applies.
pub fn classify_with(
    desc: &GroupDescriptor,
    fc: &FieldContext,
    limits: &Limits,
    assertions: &Assertions,
) -> Result<FamilyVerdict, FamilyError> {
    desc.validate()?;
    let ctx = Context { field: fc, limits, assertions, scan_alternatives: false };
    let rational = fc.is_rational();
    if let GroupDescriptor::Symmetric(n) = *desc {
        if n >= 8 {
            // beyond enumeration; the trivial center and the order rule out the other conditions
            let mut eval = Evaluation::default();
            eval.record("Thm 5.3(2)", symmetric::symmetric_route(n, &ctx)?);
            return verdict_with(GroupRef::named(desc), fc, eval);
        }
    }
    let g = materialize(desc, limits)?;
    let order = g.order(limits)? as u64;
    let mut eval = Evaluation::default();
    if order == 1 {
        eval.diagnostics.push("trivial group".into());
        return verdict_from(&g, Some(desc), fc, limits, eval);
    }
    let subject = Subject::new(&g, Some(desc));
    let chain = abelian_invariants(&g, limits)?;
    let model = chain.as_deref().map(|c| Model::new(c, limits)).transpose()?;

    if let GroupDescriptor::Product(a, b) = desc {
        eval.record("Thm 5.1(1)", direct_product_outcome(&g, desc, a, b, &ctx)?);
    }
    eval.record("Thm 5.1(2)", prime_set_condition(&subject, chain.is_some(), &ctx)?);
    let over_k = chain.as_deref().map(abelian::section_631);
    if let (Some(model), Some(r)) = (&model, &over_k) {
        match r {
            Ok((invariants, rule)) => {
                let q = AbelianQuotient::Suitable { invariants: invariants.clone(), rule: rule.to_string() };
                eval.record("Thm 5.1(3)", abelian::via_quotient(model, &q, &ctx)?);
            }
            Err(t) if !rational => eval.except(t.clone()),
            Err(t) => eval.diagnostics.push(format!("Thm 5.1(3): {} {} {}", t.list, t.item, t.group)),
        }
    }
    eval.record("Thm 5.1(4)", center_condition(&subject, &ctx, false)?);
    if rational {
        if chain.is_none() && order % 2 == 1 && order.is_multiple_of(3) {
            let o = odd_order_condition(&subject, &ctx, &mut eval)?;
            eval.record("Thm 5.2(1)", o);
        }
        if let (Some(model), Some(c)) = (&model, chain.as_deref()) {
            match exception_522(c) {
                Some(t) => eval.except(t),
                None => {
                    let q = abelian_suitable_quotient(c, fc)?;
                    eval.record("Thm 5.2(2)", abelian::via_quotient(model, &q, &ctx)?);
                }
            }
        }
        let n = match desc {
            GroupDescriptor::Dihedral(n) if *n >= 3 => Some(*n),
            _ if chain.is_none() => dihedral_degree(&g, limits)?,
            _ => None,
        };
        if let Some(n) = n {
            let d = GroupDescriptor::Dihedral(n);
            let dg = materialize(&d, limits)?;
            eval.record("Thm 5.2(3)", dihedral::dihedral_route(&dg, Some(&d), n, &ctx)?);
            if let Some(t) = dihedral_exception(n) {
                eval.except(t);
            }
        }
        eval.record("Thm 5.2(4)", center_condition(&subject, &ctx, true)?);
        if let Some(model) = &model {
            eval.record("Thm 5.3(1)", abelian::no_parametric(model, &ctx)?);
        }
    }
    if let GroupDescriptor::Symmetric(n) = *desc {
        eval.record("Thm 5.3(2)", symmetric::symmetric_route(n, &ctx)?);
    }
    verdict_from(&g, Some(desc), fc, limits, eval)
}

/// `|G|` composite with no prime factor in S: a kernel of prime order, or a
/// characteristic subgroup, leaves a quotient of order coprime to S.
fn prime_set_condition(subject: &Subject, abelian: bool, ctx: &Context) -> Result<Outcome, FamilyError> {
    let g = subject.group;
    let limits = ctx.limits;
    let order = g.order(limits)? as u64;
    let s = prime_set_s(ctx.field);
    if is_prime(order) || !s.avoided_by(order) {
        return Ok(Outcome::Inapplicable);
    }
    let h = if abelian {
        let p = prime_factors(order)[0];
        let x = g.elements(limits)?.perms().iter().find(|x| x.order() == p).cloned().expect("Cauchy");
        subgroup_generated(g, &[x], limits)?
    } else {
        let z = center(g, limits)?;
        if z.len() > 1 {
            z
        } else {
            derived_subgroup(g, limits)?
        }
    };
    outcome(check_t32(subject, &h, ctx))
}

/// `H = Z(G)` when `G/Z(G)` is large enough: non-solvable and not `A_5`
/// over any k, or over Q not solvable of even order.
fn center_condition(subject: &Subject, ctx: &Context, rational: bool) -> Result<Outcome, FamilyError> {
    let g = subject.group;
    let limits = ctx.limits;
    let order = g.order(limits)?;
    let z = center(g, limits)?;
    if z.len() == 1 || z.len() == order {
        return Ok(Outcome::Inapplicable);
    }
    let q = quotient(g, &z, limits)?;
    let qo = q.order(limits)?;
    let solvable = is_solvable(&q, limits)?;
    let applies = if rational { !(solvable && qo % 2 == 0) && qo > 3 } else { !solvable && qo != 60 };
    if !applies {
        return Ok(Outcome::Inapplicable);
    }
    outcome(check_t32(subject, &z, ctx))
}

/// `|G| = 3 p^k` with `p >= 5`, `k` in {1, 2} and an elementary abelian normal
/// subgroup of order `p^k`.
fn small_semidirect(g: &PermGroup, normals: &[Subset], limits: &Limits) -> Result<Option<ExceptionTag>, FamilyError> {
    let order = g.order(limits)? as u64;
    let m = order / 3;
    let ps = prime_factors(m);
    if !order.is_multiple_of(3) || ps.len() != 1 || ps[0] < 5 {
        return Ok(None);
    }
    let p = ps[0];
    let k = if m == p {
        1
    } else if m == p * p {
        2
    } else {
        return Ok(None);
    };
    for n in normals.iter().filter(|n| n.len() as u64 == m) {
        let sub = g.subgroup(n, limits)?;
        if is_abelian(&sub) && abelian_invariants(&sub, limits)?.is_some_and(|c| c.iter().all(|&d| d == p)) {
            let group = if k == 1 { format!("Z/{p}Z x| Z/3Z") } else { format!("(Z/{p}Z)^2 x| Z/3Z") };
            return Ok(Some(ExceptionTag {
                list: "Thm 5.2(1)".into(),
                item: "(Z/pZ)^k x| Z/3Z with k in {1,2}".into(),
                group,
            }));
        }
    }
    Ok(None)
}

/// Odd order divisible by 3, nonabelian, over Q: a normal subgroup whose
/// quotient is nontrivial and not `Z/3`.
fn odd_order_condition(subject: &Subject, ctx: &Context, eval: &mut Evaluation) -> Result<Outcome, FamilyError> {
    let g = subject.group;
    let limits = ctx.limits;
    let order = g.order(limits)?;
    let normals = normal_subgroups(g, limits)?;
    if let Some(t) = small_semidirect(g, &normals, limits)? {
        eval.except(t);
        return Ok(Outcome::Inapplicable);
    }
    // largest kernel first keeps the quotient small
    let mut cands: Vec<&Subset> =
        normals.iter().filter(|n| n.len() > 1 && n.len() < order && order / n.len() != 3).collect();
    cands.sort_by_key(|n| std::cmp::Reverse(n.len()));
    match cands.first() {
        Some(h) => outcome(check_t32(subject, h, ctx)),
        None => Ok(Outcome::Refused("every proper nontrivial quotient is Z/3".into())),
    }
}

/// The kernel of the projection of `G_1 x G_2` onto the factor on the given side.
fn factor_kernel(g: &PermGroup, first_degree: usize, keep_first: bool, limits: &Limits) -> Result<Subset, FamilyError> {
    let e = g.elements(limits)?;
    let degree = g.degree();
    let idx = (0..e.len() as u32)
        .filter(|&i| {
            let p = e.perm(i);
            if keep_first {
                p.block(0, first_degree).is_identity()
            } else {
                p.block(first_degree, degree - first_degree).is_identity()
            }
        })
        .collect();
    Ok(Subset::from_indices(idx))
}

fn direct_product_outcome(
    g: &PermGroup,
    desc: &GroupDescriptor,
    a: &GroupDescriptor,
    b: &GroupDescriptor,
    ctx: &Context,
) -> Result<Outcome, FamilyError> {
    let limits = ctx.limits;
    let first_degree = materialize(a, limits)?.degree();
    let subject = Subject::new(g, Some(desc));
    let mut refusals = Vec::new();
    for (keep_first, factor, other) in [(true, a, b), (false, b, a)] {
        let verdict = minimal_genus_for_descriptor(factor, ctx.field, limits)?;
        if !verdict.at_least_two() {
            refusals.push(format!("{factor}: {}", verdict.detail));
            continue;
        }
        let h = factor_kernel(g, first_degree, keep_first, limits)?;
        if h.len() == 1 {
            refusals.push(format!("{other} is trivial"));
            continue;
        }
        let (justification, assumptions) = justify(is_solvable(g, limits)?, is_abelian(g), Some(desc), ctx);
        let embedding = EmbeddingEvidence {
            rule: EmbeddingRule::DirectFactor,
            citation: "Sec 6.1".into(),
            realizability_assumed: true,
            realizability_of: "G".into(),
            justification,
            verified: true,
            details: format!("H = {other} is a direct factor with complement {factor}"),
        };
        let reason = verdict.reason.clone().unwrap_or_default();
        let input = T32Evidence {
            genus_check: format!("m_{{G/H,k}} >= 2 for G/H = {factor} by {reason}"),
            genus: GenusEvidence::Verdict(verdict),
            assumptions: vec![],
            embedding: Some((embedding, assumptions)),
        };
        return outcome(check_t32_with(&subject, &h, ctx, input));
    }
    Ok(Outcome::Refused(format!("no factor has minimal genus at least 2 ({})", refusals.join("; "))))
}

/// The direct product condition on its own.
pub fn direct_product_rule(
    a: &GroupDescriptor,
    b: &GroupDescriptor,
    fc: &FieldContext,
    limits: &Limits,
) -> Result<FamilyVerdict, FamilyError> {
    let desc = GroupDescriptor::Product(Box::new(a.clone()), Box::new(b.clone()));
    let g = materialize(&desc, limits)?;
    let assertions = Assertions::default();
    let ctx = Context { field: fc, limits, assertions: &assertions, scan_alternatives: false };
    let mut eval = Evaluation::default();
    eval.record("Thm 5.1(1)", direct_product_outcome(&g, &desc, a, b, &ctx)?);
    verdict_from(&g, Some(&desc), fc, limits, eval)
}
