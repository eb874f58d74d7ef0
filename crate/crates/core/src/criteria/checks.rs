use crate::genus::{minimal_genus_lower_bound, GenusBound};
use crate::group::cycle_type::CycleType;
use crate::group::{
    abelian_invariants, index_two_subgroups, is_isomorphic, is_normal, normal_subgroups, quotient, ConjClass,
    GroupDescriptor, PermGroup, Subset,
};

use super::evidence::{
    alternating_kernel_evidence, embedding_star_evidence, every_quadratic_embeds, index_two_regular_sn, inertia_oracle,
    symmetric_oracle,
};
use super::search::{class_witness, cycle_type_witness, is_power, select_classes, select_index_two};
use super::{
    witness_of, Alternatives, Assumption, Certificate, ClassSelection, Conclusion, Context, CriteriaError,
    EmbeddingEvidence, GenusEvidence, GroupRef, LocalEvidence, Subject, T32Evidence, Theorem, Witness,
};

fn require_kernel(g: &PermGroup, h: &Subset, ctx: &Context) -> Result<(), CriteriaError> {
    let order = g.order(ctx.limits)?;
    if h.len() <= 1 || h.len() >= order {
        return Err(CriteriaError::Precondition("H must be nontrivial and proper".into()));
    }
    if !is_normal(g, h, ctx.limits)? {
        return Err(CriteriaError::Precondition("H is not normal".into()));
    }
    Ok(())
}

/// All normal `H'` with `G/H'` isomorphic to `G/H`, or `None` past the brute-force bound.
fn same_quotient_kernels(g: &PermGroup, h: &Subset, ctx: &Context) -> Result<Option<Vec<Subset>>, CriteriaError> {
    let order = g.order(ctx.limits)?;
    if h.len() * 2 == order {
        return Ok(Some(index_two_subgroups(g, ctx.limits)?));
    }
    if order > ctx.limits.brute_force {
        return Ok(None);
    }
    let q = quotient(g, h, ctx.limits)?;
    let mut out = Vec::new();
    for k in normal_subgroups(g, ctx.limits)? {
        if k.len() == h.len() && is_isomorphic(&quotient(g, &k, ctx.limits)?, &q, ctx.limits)? {
            out.push(k);
        }
    }
    Ok(Some(out))
}

/// Condition (*), falling back on the index-two criterion for `A_n` in `S_n`.
fn star_evidence(
    subject: &Subject,
    h: &Subset,
    ctx: &Context,
) -> Result<(EmbeddingEvidence, Vec<Assumption>), CriteriaError> {
    match embedding_star_evidence(subject, h, ctx) {
        Err(CriteriaError::NoEvidence(why)) => {
            let index_two = h.len() * 2 == subject.group.order(ctx.limits)?;
            match subject.symmetric_degree() {
                Some(n) if index_two => index_two_regular_sn(n, ctx),
                _ => Err(CriteriaError::EmbeddingNotCertified(why)),
            }
        }
        other => other,
    }
}

struct Parts {
    theorem: Theorem,
    witness: Witness,
    quotient: GroupRef,
    alternatives: Alternatives,
    embedding: EmbeddingEvidence,
    genus: GenusEvidence,
    local_evidence: Option<LocalEvidence>,
    inertia: Option<super::InertiaOracle>,
    verified: Vec<String>,
    assumptions: Vec<Assumption>,
}

fn finish(subject: &Subject, ctx: &Context, p: Parts) -> Result<Certificate, CriteriaError> {
    let strong = matches!(p.theorem, Theorem::T32 | Theorem::T34 | Theorem::T34Addendum);
    let (conclusion, implied) = if strong {
        (Conclusion::NoFiniteOneParametricSet, vec![Conclusion::NoParametricExtension])
    } else {
        (Conclusion::NoParametricExtension, vec![])
    };
    Ok(Certificate {
        group: GroupRef::of(subject.group, subject.descriptor, ctx.limits)?,
        field: ctx.field.clone(),
        theorem: p.theorem,
        witness: p.witness,
        quotient: p.quotient,
        alternatives: p.alternatives,
        embedding: p.embedding,
        genus: p.genus,
        local_evidence: p.local_evidence,
        inertia: p.inertia,
        conclusion,
        implied_conclusions: implied,
        uniformity_extension: p.theorem == Theorem::T32,
        verified: p.verified,
        assumptions: p.assumptions,
    })
}

fn kernel_note(kernels: &[Subset]) -> String {
    format!("{} normal subgroup(s) with isomorphic quotient", kernels.len())
}

fn recorded_alternatives(
    g: &PermGroup,
    h: &Subset,
    ctx: &Context,
    minimum: Option<GenusBound>,
) -> Result<Alternatives, CriteriaError> {
    if !ctx.scan_alternatives {
        return Ok(Alternatives {
            enumerated: false,
            count: None,
            note: "not enumerated; every H' has an isomorphic quotient and hence the same genus bound".into(),
        });
    }
    let Some(kernels) = same_quotient_kernels(g, h, ctx)? else {
        return Ok(Alternatives {
            enumerated: false,
            count: None,
            note: "group too large for normal subgroup enumeration".into(),
        });
    };
    let Some(minimum) = minimum else {
        return Ok(Alternatives { enumerated: true, count: Some(kernels.len()), note: kernel_note(&kernels) });
    };
    for k in &kernels {
        let v = minimal_genus_lower_bound(&quotient(g, k, ctx.limits)?, ctx.field, ctx.limits)?;
        let ok = match minimum {
            GenusBound::AtLeastTwo => v.at_least_two(),
            _ => v.at_least_one(),
        };
        if !ok {
            return Err(CriteriaError::GenusNotCertified(format!(
                "quotient by an alternative kernel of order {}: {}",
                k.len(),
                v.detail
            )));
        }
    }
    Ok(Alternatives {
        enumerated: true,
        count: Some(kernels.len()),
        note: format!("{}, each re-checked", kernel_note(&kernels)),
    })
}

/// Minimal genus at least 2 for `G/H` plus condition (*).
pub fn check_t32(subject: &Subject, h: &Subset, ctx: &Context) -> Result<Certificate, CriteriaError> {
    let g = subject.group;
    require_kernel(g, h, ctx)?;
    let q = quotient(g, h, ctx.limits)?;
    let verdict = minimal_genus_lower_bound(&q, ctx.field, ctx.limits)?;
    if !verdict.at_least_two() {
        return Err(CriteriaError::GenusNotCertified(verdict.detail));
    }
    let reason = verdict.reason.clone().unwrap_or_default();
    let check = format!("m_{{G/H,k}} >= 2 by {reason}");
    check_t32_with(
        subject,
        h,
        ctx,
        T32Evidence {
            genus: GenusEvidence::Verdict(verdict),
            genus_check: check,
            assumptions: vec![],
            embedding: None,
        },
    )
}

/// Like [`check_t32`], with the genus condition, and optionally condition
/// (*), established outside the minimal genus rules.
pub fn check_t32_with(
    subject: &Subject,
    h: &Subset,
    ctx: &Context,
    input: T32Evidence,
) -> Result<Certificate, CriteriaError> {
    let g = subject.group;
    require_kernel(g, h, ctx)?;
    let q = quotient(g, h, ctx.limits)?;
    let (embedding, mut assumptions) = match input.embedding {
        Some(given) => given,
        None => match embedding_star_evidence(subject, h, ctx) {
            Err(CriteriaError::NoEvidence(why)) => return Err(CriteriaError::EmbeddingNotCertified(why)),
            other => other?,
        },
    };
    let recheck = matches!(input.genus, GenusEvidence::Verdict(_)) && input.assumptions.is_empty();
    assumptions.extend(input.assumptions);
    let alternatives = recorded_alternatives(g, h, ctx, recheck.then_some(GenusBound::AtLeastTwo))?;
    let verified = vec![
        "H is a nontrivial proper normal subgroup".to_string(),
        input.genus_check,
        format!("{} hypothesis: {}", embedding.citation, embedding.details),
    ];
    let parts = Parts {
        theorem: Theorem::T32,
        witness: witness_of(g, h, ctx.limits, format!("normal subgroup of order {}", h.len()))?,
        quotient: GroupRef::of(&q, None, ctx.limits)?,
        alternatives,
        embedding,
        genus: input.genus,
        local_evidence: None,
        inertia: None,
        verified,
        assumptions,
    };
    finish(subject, ctx, parts)
}

/// Minimal genus at least 1 for `G/H`, condition (*) and local ramification evidence.
pub fn check_t34(
    subject: &Subject,
    h: &Subset,
    ctx: &Context,
    local: Option<&LocalEvidence>,
) -> Result<Certificate, CriteriaError> {
    let g = subject.group;
    require_kernel(g, h, ctx)?;
    let q = quotient(g, h, ctx.limits)?;
    let verdict = minimal_genus_lower_bound(&q, ctx.field, ctx.limits)?;
    if !verdict.at_least_one() {
        return Err(CriteriaError::GenusNotCertified(verdict.detail));
    }
    let (embedding, mut assumptions) = match embedding_star_evidence(subject, h, ctx) {
        Err(CriteriaError::NoEvidence(why)) => return Err(CriteriaError::EmbeddingNotCertified(why)),
        other => other?,
    };
    let local = local.or(ctx.assertions.local_evidence.as_ref()).cloned().ok_or(CriteriaError::MissingLocalEvidence)?;
    let e = local.ramification_index;
    let theorem = if ctx.field.is_rational() {
        if e < 3 {
            return Err(CriteriaError::Precondition(format!("ramification index {e} is below 3")));
        }
        Theorem::T34Addendum
    } else {
        if matches!(e, 1..=4 | 6) {
            return Err(CriteriaError::Precondition(format!("ramification index {e} lies in {{1,2,3,4,6}}")));
        }
        assumptions.push(Assumption::new(
            "bad-primes",
            "infinitely many of the supplied primes are good for every subextension",
        ));
        Theorem::T34
    };
    assumptions.push(Assumption::new(
        &local.rule,
        format!(
            "for infinitely many primes ({}) some G/H-extension with ramification index >= {e} embeds into infinitely many G-extensions",
            local.primes
        ),
    ));
    let alternatives = recorded_alternatives(g, h, ctx, Some(GenusBound::AtLeastOne))?;
    let verified = vec![
        "H is a nontrivial proper normal subgroup".to_string(),
        format!("m_{{G/H,k}} >= 1 by {}", verdict.reason.clone().unwrap_or_default()),
        format!("{} hypothesis: {}", embedding.citation, embedding.details),
        format!("ramification index {e} meets the threshold"),
    ];
    let parts = Parts {
        theorem,
        witness: witness_of(g, h, ctx.limits, format!("normal subgroup of order {}", h.len()))?,
        quotient: GroupRef::of(&q, None, ctx.limits)?,
        alternatives,
        embedding,
        genus: GenusEvidence::Verdict(verdict),
        local_evidence: Some(local),
        inertia: None,
        verified,
        assumptions,
    };
    finish(subject, ctx, parts)
}

fn is_symmetric(subject: &Subject) -> bool {
    subject.symmetric_degree().is_some()
}

/// Locates the classes of the given cycle types in a materialized symmetric group.
fn classes_by_type(subject: &Subject, types: &[CycleType], ctx: &Context) -> Result<Vec<ConjClass>, CriteriaError> {
    let all = crate::group::conjugacy_classes(subject.group, ctx.limits)?;
    types
        .iter()
        .map(|t| {
            all.iter()
                .find(|c| CycleType::of(&c.representative) == *t)
                .cloned()
                .ok_or_else(|| CriteriaError::ClassSearchFailed(format!("no class of type {t}")))
        })
        .collect()
}

/// Rejects preferred classes that break (a), (b) or, with `non_power`, (c).
fn check_selection(
    subject: &Subject,
    h: &Subset,
    classes: &[ConjClass],
    non_power: bool,
    ctx: &Context,
) -> Result<(), CriteriaError> {
    let g = subject.group;
    let qualifying = super::search::qualifying_classes(g, h, ctx.limits)?;
    for c in classes {
        if !qualifying.iter().any(|q| q.position == c.position) {
            return Err(CriteriaError::ClassSearchFailed(format!(
                "class of {} lies in H' or is not maximal cyclic",
                c.representative
            )));
        }
    }
    for (i, a) in classes.iter().enumerate() {
        for b in &classes[i + 1..] {
            if a.position == b.position
                || (non_power && (is_power(g, a, b, ctx.limits)? || is_power(g, b, a, ctx.limits)?))
            {
                return Err(CriteriaError::ClassSearchFailed("selected classes are related".into()));
            }
        }
    }
    Ok(())
}

fn selection(subject: &Subject, kernel: &Subset, classes: &[ConjClass]) -> ClassSelection {
    ClassSelection {
        kernel_order: kernel.len() as u128,
        kernel: format!("normal subgroup of order {}", kernel.len()),
        classes: classes.iter().map(|c| class_witness(c, is_symmetric(subject))).collect(),
    }
}

/// Shared body of the two class-counting criteria.
fn class_criterion(
    subject: &Subject,
    h: &Subset,
    ctx: &Context,
    theorem: Theorem,
    preferred: Option<&[CycleType]>,
) -> Result<Certificate, CriteriaError> {
    let g = subject.group;
    let (count, non_power) = match theorem {
        Theorem::T36 => (5, true),
        _ => (3, false),
    };
    let (embedding, mut assumptions) = star_evidence(subject, h, ctx)?;
    let kernels = same_quotient_kernels(g, h, ctx)?
        .ok_or_else(|| CriteriaError::Precondition("normal subgroups cannot be enumerated at this order".into()))?;
    let mut selections = Vec::new();
    let mut reps = Vec::new();
    for k in &kernels {
        let classes = match preferred {
            Some(types) => {
                let cs = classes_by_type(subject, types, ctx)?;
                check_selection(subject, k, &cs, non_power, ctx)?;
                cs
            }
            None => select_classes(g, k, count, non_power, ctx.limits)?.ok_or_else(|| {
                CriteriaError::ClassSearchFailed(format!(
                    "fewer than {count} qualifying classes outside a kernel of order {}",
                    k.len()
                ))
            })?,
        };
        reps.extend(classes.iter().map(|c| c.representative.clone()));
        selections.push(selection(subject, k, &classes));
    }
    let (oracle, more) = inertia_oracle(subject, &reps, ctx)?;
    assumptions.extend(more);
    let q = quotient(g, h, ctx.limits)?;
    let mut verified = vec![
        "H is a nontrivial proper normal subgroup".to_string(),
        format!("{}; each has {count} classes outside it", kernel_note(&kernels)),
        "selected classes generate maximal cyclic subgroups".to_string(),
        format!("{} hypothesis: {}", embedding.citation, embedding.details),
    ];
    if non_power {
        verified.push("no selected class is a power of another".into());
    }
    let parts = Parts {
        theorem,
        witness: witness_of(g, h, ctx.limits, format!("normal subgroup of order {}", h.len()))?,
        quotient: GroupRef::of(&q, None, ctx.limits)?,
        alternatives: Alternatives { enumerated: true, count: Some(kernels.len()), note: kernel_note(&kernels) },
        embedding,
        genus: GenusEvidence::Classes(selections),
        local_evidence: None,
        inertia: Some(oracle),
        verified,
        assumptions,
    };
    finish(subject, ctx, parts)
}

/// Five classes per kernel outside it, maximal cyclic and pairwise non-power.
pub fn check_t36(
    subject: &Subject,
    h: &Subset,
    ctx: &Context,
    preferred: Option<&[CycleType]>,
) -> Result<Certificate, CriteriaError> {
    require_kernel(subject.group, h, ctx)?;
    class_criterion(subject, h, ctx, Theorem::T36, preferred)
}

/// Over Q with cyclic `G/H` of order at least 3: three classes per kernel.
pub fn check_t37(
    subject: &Subject,
    h: &Subset,
    ctx: &Context,
    preferred: Option<&[CycleType]>,
) -> Result<Certificate, CriteriaError> {
    let g = subject.group;
    require_kernel(g, h, ctx)?;
    if !ctx.field.is_rational() {
        return Err(CriteriaError::Precondition("this criterion is stated over Q".into()));
    }
    let q = quotient(g, h, ctx.limits)?;
    match abelian_invariants(&q, ctx.limits)?.as_deref() {
        Some([n]) if *n >= 3 => {}
        _ => return Err(CriteriaError::Precondition("G/H is not cyclic of order at least 3".into())),
    }
    class_criterion(subject, h, ctx, Theorem::T37, preferred)
}

/// Over Q, for a group with a unique subgroup of index two.
pub fn check_t38(
    subject: &Subject,
    ctx: &Context,
    preferred: Option<&[CycleType]>,
) -> Result<Certificate, CriteriaError> {
    let g = subject.group;
    if !ctx.field.is_rational() {
        return Err(CriteriaError::Precondition("this criterion is stated over Q".into()));
    }
    let index_two = index_two_subgroups(g, ctx.limits)?;
    if index_two.len() != 1 {
        return Err(CriteriaError::NonUniqueIndexTwo(index_two.len()));
    }
    let h = &index_two[0];
    let (quadratic, mut assumptions) = every_quadratic_embeds(subject, h, ctx)?;
    let (embedding, more) = star_evidence(subject, h, ctx)?;
    assumptions.extend(more);
    let classes = match preferred {
        Some(types) => {
            let cs = classes_by_type(subject, types, ctx)?;
            check_selection(subject, h, &cs, false, ctx)?;
            let related = cs.len() == 2 && is_power(g, &cs[1], &cs[0], ctx.limits)?;
            if cs.len() < 3 && !related {
                return Err(CriteriaError::ClassSearchFailed("condition (4)(a) fails".into()));
            }
            cs
        }
        None => select_index_two(g, h, ctx.limits)?.ok_or_else(|| {
            CriteriaError::ClassSearchFailed("fewer than three qualifying classes and no power-related pair".into())
        })?,
    };
    let reps: Vec<_> = classes.iter().map(|c| c.representative.clone()).collect();
    let (oracle, more) = inertia_oracle(subject, &reps, ctx)?;
    assumptions.extend(more);
    let q = quotient(g, h, ctx.limits)?;
    let mut verified = vec![
        "H is the unique subgroup of index 2".to_string(),
        format!("every quadratic extension embeds: {quadratic}"),
        format!("{} hypothesis: {}", embedding.citation, embedding.details),
        "selected classes lie outside H and generate maximal cyclic subgroups".to_string(),
    ];
    if classes.len() == 2 {
        verified.push("the second class is a power of the first".into());
    }
    let parts = Parts {
        theorem: Theorem::T38,
        witness: witness_of(g, h, ctx.limits, "unique subgroup of index 2".into())?,
        quotient: GroupRef::of(&q, None, ctx.limits)?,
        alternatives: Alternatives { enumerated: true, count: Some(1), note: "H is unique".into() },
        embedding,
        genus: GenusEvidence::Classes(vec![selection(subject, h, &classes)]),
        local_evidence: None,
        inertia: Some(oracle),
        verified,
        assumptions,
    };
    finish(subject, ctx, parts)
}

/// The five-class criterion for `S_n` with `H = A_n`, at the level of cycle types.
pub fn check_t36_symmetric(n: u64, types: &[CycleType], ctx: &Context) -> Result<Certificate, CriteriaError> {
    if n < 5 {
        return Err(CriteriaError::Precondition("needs n >= 5".into()));
    }
    if types.len() != 5 || types.iter().any(|t| t.degree() as u64 != n) {
        return Err(CriteriaError::ClassSearchFailed(format!("need five cycle types of degree {n}")));
    }
    for t in types {
        if !t.is_odd() || !t.is_maximal_cyclic() {
            return Err(CriteriaError::ClassSearchFailed(format!("{t} is not an odd maximal cyclic type")));
        }
    }
    for (i, a) in types.iter().enumerate() {
        for b in &types[i + 1..] {
            if a.is_power_of(b) || b.is_power_of(a) {
                return Err(CriteriaError::ClassSearchFailed(format!("{a} and {b} are power-related")));
            }
        }
    }
    let (embedding, mut assumptions) = alternating_kernel_evidence(n, ctx)?;
    if !ctx.field.is_rational() {
        assumptions.push(Assumption::new(
            "field-transfer",
            format!("a Q-regular realization stays regular over {} with the same inertia invariant", ctx.field),
        ));
    }
    let order: u128 = (1..=n as u128).product();
    let desc = GroupDescriptor::Symmetric(n);
    let verified = vec![
        format!("A_{n} is the only normal subgroup of S_{n} with quotient Z/2 (n >= 5)"),
        "each type is odd and maximal cyclic by the cycle-type oracle".to_string(),
        "no type is a power of another".to_string(),
        format!("{} hypothesis: {}", embedding.citation, embedding.details),
    ];
    Ok(Certificate {
        group: GroupRef::named(&desc),
        field: ctx.field.clone(),
        theorem: Theorem::T36,
        witness: Witness {
            order: order / 2,
            description: format!("A_{n}"),
            descriptor: Some(GroupDescriptor::Alternating(n)),
            generators: vec![],
        },
        quotient: GroupRef::named(&GroupDescriptor::Abelian(vec![2])),
        alternatives: Alternatives {
            enumerated: false,
            count: Some(1),
            note: "structural: the normal subgroups of S_n for n >= 5 are 1, A_n and S_n".into(),
        },
        embedding,
        genus: GenusEvidence::Classes(vec![ClassSelection {
            kernel_order: order / 2,
            kernel: format!("A_{n}"),
            classes: types.iter().map(cycle_type_witness).collect(),
        }]),
        local_evidence: None,
        inertia: Some(symmetric_oracle()),
        conclusion: Conclusion::NoParametricExtension,
        implied_conclusions: vec![],
        uniformity_extension: false,
        verified,
        assumptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::{Assertions, EmbeddingRule, InertiaRule};
    use crate::genus::FieldContext;
    use crate::group::{center, materialize, Limits};

    struct Env {
        l: Limits,
        q: FieldContext,
        a: Assertions,
    }

    impl Env {
        fn new() -> Self {
            Env { l: Limits::default(), q: FieldContext::Rational, a: Assertions::default() }
        }
        fn ctx(&self) -> Context<'_> {
            Context { field: &self.q, limits: &self.l, assertions: &self.a, scan_alternatives: true }
        }
    }

    fn kernel_of_order(g: &PermGroup, l: &Limits, order: usize) -> Subset {
        normal_subgroups(g, l).unwrap().into_iter().find(|s| s.len() == order).unwrap()
    }

    #[test]
    fn t32_on_z5_squared() {
        let env = Env::new();
        let d = GroupDescriptor::Abelian(vec![5, 5]);
        let g = materialize(&d, &env.l).unwrap();
        let h = kernel_of_order(&g, &env.l, 5);
        let cert = check_t32(&Subject::new(&g, Some(&d)), &h, &env.ctx()).unwrap();
        assert_eq!(cert.theorem, Theorem::T32);
        assert!(cert.uniformity_extension);
        assert_eq!(cert.implied_conclusions, vec![Conclusion::NoParametricExtension]);
        assert_eq!(cert.alternatives.count, Some(6));
        assert!(cert.assumptions.is_empty());
    }

    #[test]
    fn t32_on_gl25_with_center() {
        let env = Env::new();
        let d = GroupDescriptor::Gl(2, 5);
        let g = materialize(&d, &env.l).unwrap();
        let z = center(&g, &env.l).unwrap();
        let cert = check_t32(&Subject::new(&g, Some(&d)), &z, &env.ctx()).unwrap();
        assert_eq!(cert.quotient.order, 120);
        assert_eq!(cert.embedding.rule, EmbeddingRule::SolvableKernel);
        assert!(!cert.assumptions.is_empty());
    }

    #[test]
    fn t32_refuses_s3() {
        let env = Env::new();
        let d = GroupDescriptor::Symmetric(3);
        let g = materialize(&d, &env.l).unwrap();
        let h = kernel_of_order(&g, &env.l, 3);
        let err = check_t32(&Subject::new(&g, Some(&d)), &h, &env.ctx()).unwrap_err();
        assert!(matches!(err, CriteriaError::GenusNotCertified(_)));
    }

    fn dihedral_local(n: u64, p: u64) -> LocalEvidence {
        LocalEvidence {
            rule: "Lemma 6.5".into(),
            primes: format!("q = 1 mod {n}"),
            ramification_index: n / p,
            asserted: false,
        }
    }

    #[test]
    fn t34_on_dihedral() {
        let env = Env::new();
        for (n, p) in [(15, 3), (25, 5)] {
            let d = GroupDescriptor::Dihedral(n);
            let g = materialize(&d, &env.l).unwrap();
            let h = kernel_of_order(&g, &env.l, p as usize);
            let cert = check_t34(&Subject::new(&g, Some(&d)), &h, &env.ctx(), Some(&dihedral_local(n, p))).unwrap();
            assert_eq!(cert.theorem, Theorem::T34Addendum);
            assert_eq!(cert.quotient.name, "D_5");
        }
        let d = GroupDescriptor::Dihedral(15);
        let g = materialize(&d, &env.l).unwrap();
        let h = kernel_of_order(&g, &env.l, 3);
        let err = check_t34(&Subject::new(&g, Some(&d)), &h, &env.ctx(), None).unwrap_err();
        assert_eq!(err, CriteriaError::MissingLocalEvidence);
    }

    #[test]
    fn t36_on_z2_to_the_fourth() {
        let env = Env::new();
        let d = GroupDescriptor::Abelian(vec![2, 2, 2, 2]);
        let g = materialize(&d, &env.l).unwrap();
        let h = kernel_of_order(&g, &env.l, 2);
        let cert = check_t36(&Subject::new(&g, Some(&d)), &h, &env.ctx(), None).unwrap();
        assert_eq!(cert.inertia.unwrap().rule, InertiaRule::AbelianAllClasses);
        let GenusEvidence::Classes(sel) = cert.genus else { panic!() };
        // one selection for each of the 15 subgroups of order 2
        assert_eq!(sel.len(), 15);
        assert!(sel.iter().all(|s| s.classes.len() == 5));
    }

    #[test]
    fn t36_refuses_z4() {
        let env = Env::new();
        let d = GroupDescriptor::Abelian(vec![4]);
        let g = materialize(&d, &env.l).unwrap();
        let h = kernel_of_order(&g, &env.l, 2);
        let err = check_t36(&Subject::new(&g, Some(&d)), &h, &env.ctx(), None).unwrap_err();
        assert!(matches!(err, CriteriaError::ClassSearchFailed(_)));
    }

    #[test]
    fn t36_symmetric_nine() {
        let env = Env::new();
        let types: Vec<CycleType> =
            ["[1 8]", "[2 7]", "[3 6]", "[4 5]", "[1 2 3 3]"].iter().map(|s| CycleType::parse(s).unwrap()).collect();
        let cert = check_t36_symmetric(9, &types, &env.ctx()).unwrap();
        assert_eq!(cert.embedding.rule, EmbeddingRule::GarKernel);
        assert!(check_t36_symmetric(9, &types[..4], &env.ctx()).is_err());
    }

    #[test]
    fn t37_examples() {
        let env = Env::new();
        for (chain, h_order) in [(vec![12], 2), (vec![3, 3], 3), (vec![2, 4], 2), (vec![2, 6], 2)] {
            let d = GroupDescriptor::Abelian(chain);
            let g = materialize(&d, &env.l).unwrap();
            let h = normal_subgroups(&g, &env.l)
                .unwrap()
                .into_iter()
                .find(|s| {
                    s.len() == h_order
                        && abelian_invariants(&quotient(&g, s, &env.l).unwrap(), &env.l)
                            .unwrap()
                            .is_some_and(|c| c.len() == 1)
                })
                .unwrap();
            let cert = check_t37(&Subject::new(&g, Some(&d)), &h, &env.ctx(), None).unwrap();
            assert_eq!(cert.theorem, Theorem::T37);
        }
        let d = GroupDescriptor::Abelian(vec![6]);
        let g = materialize(&d, &env.l).unwrap();
        let h = kernel_of_order(&g, &env.l, 2);
        assert!(check_t37(&Subject::new(&g, Some(&d)), &h, &env.ctx(), None).is_err());
    }

    #[test]
    fn t38_examples() {
        let env = Env::new();
        let d = GroupDescriptor::Abelian(vec![6]);
        let g = materialize(&d, &env.l).unwrap();
        let cert = check_t38(&Subject::new(&g, Some(&d)), &env.ctx(), None).unwrap();
        let GenusEvidence::Classes(sel) = &cert.genus else { panic!() };
        assert_eq!(sel[0].classes.len(), 2);

        let d = GroupDescriptor::Symmetric(6);
        let g = materialize(&d, &env.l).unwrap();
        let cert = check_t38(&Subject::new(&g, Some(&d)), &env.ctx(), None).unwrap();
        assert_eq!(cert.embedding.rule, EmbeddingRule::IndexTwoRegular);

        let d = GroupDescriptor::Abelian(vec![2, 2]);
        let g = materialize(&d, &env.l).unwrap();
        let err = check_t38(&Subject::new(&g, Some(&d)), &env.ctx(), None).unwrap_err();
        assert_eq!(err, CriteriaError::NonUniqueIndexTwo(3));
    }
}
