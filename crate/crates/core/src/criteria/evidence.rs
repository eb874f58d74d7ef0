use crate::genus::{rh_genus, RamificationType};
use crate::group::cycle_type::CycleType;
use crate::group::subgroups::generated;
use crate::group::{
    conjugacy_classes, is_abelian, is_solvable, quotient, GroupDescriptor, Limits, Perm, PermGroup, Subset,
};

use super::{
    Assumption, Context, CriteriaError, EmbeddingEvidence, EmbeddingRule, InertiaOracle, InertiaRule, Justification,
    Subject,
};

/// Orders of the GAR-listed simple groups up to order 10000. Simple groups
/// in this range are determined by their order.
const GAR_ORDERS: [(usize, &str); 8] = [
    (60, "A_5"),
    (168, "PSL_2(7)"),
    (660, "PSL_2(11)"),
    (1092, "PSL_2(13)"),
    (2448, "PSL_2(17)"),
    (2520, "A_7"),
    (3420, "PSL_2(19)"),
    (7920, "M_11"),
];

fn is_nonabelian_simple(h: &PermGroup, limits: &Limits) -> Result<bool, CriteriaError> {
    if is_abelian(h) {
        return Ok(false);
    }
    let e = h.elements(limits)?;
    for c in conjugacy_classes(h, limits)? {
        if c.element_order == 1 {
            continue;
        }
        let members = c.members(h, limits)?;
        if generated(e, members.indices()).count() != e.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Name of `h` if it is one of the simple groups with a GAR-realization.
pub fn gar_kernel_name(h: &PermGroup, limits: &Limits) -> Result<Option<&'static str>, CriteriaError> {
    let order = h.order(limits)?;
    let Some(&(_, name)) = GAR_ORDERS.iter().find(|(o, _)| *o == order) else {
        return Ok(None);
    };
    Ok(is_nonabelian_simple(h, limits)?.then_some(name))
}

fn alternating_is_gar(n: u64) -> bool {
    n >= 5 && n != 6
}

/// How the realizability of `target` ("G" or "G/H") over k is justified.
pub(crate) fn justify(
    target_solvable: bool,
    target_abelian: bool,
    desc: Option<&GroupDescriptor>,
    ctx: &Context,
) -> (Justification, Vec<Assumption>) {
    if target_abelian {
        return (Justification::Abelian, vec![]);
    }
    if target_solvable {
        return (Justification::SolvableByShafarevich, vec![]);
    }
    match desc {
        Some(GroupDescriptor::Symmetric(_)) => return (Justification::Symmetric, vec![]),
        Some(GroupDescriptor::Alternating(_)) => return (Justification::Alternating, vec![]),
        _ => {}
    }
    if let Some(why) = &ctx.assertions.galois_group {
        return (
            Justification::UserAsserted,
            vec![Assumption::new("user-asserted", format!("G is a Galois group over k: {why}"))],
        );
    }
    (
        Justification::NonEmptySetReduction,
        vec![Assumption::new(
            "regular-realization",
            "G is a regular Galois group over k; otherwise no non-empty set of k-regular realizations exists and the conclusion holds vacuously",
        )],
    )
}

/// Evidence for condition (*): some G/H-extension of k embeds into infinitely many G-extensions.
pub fn embedding_star_evidence(
    subject: &Subject,
    h: &Subset,
    ctx: &Context,
) -> Result<(EmbeddingEvidence, Vec<Assumption>), CriteriaError> {
    let g = subject.group;
    let limits = ctx.limits;
    let e = g.elements(limits)?;
    if h.len() <= 1 {
        return Err(CriteriaError::Precondition("H must be nontrivial".into()));
    }
    let sub = g.subgroup(h, limits)?;
    if is_solvable(&sub, limits)? {
        let (justification, assumptions) = justify(is_solvable(g, limits)?, is_abelian(g), subject.descriptor, ctx);
        let evidence = EmbeddingEvidence {
            rule: EmbeddingRule::SolvableKernel,
            citation: "Prop 4.1(1)".into(),
            realizability_assumed: !assumptions.is_empty(),
            realizability_of: "G".into(),
            justification,
            verified: true,
            details: format!("kernel of order {} verified solvable", h.len()),
        };
        return Ok((evidence, assumptions));
    }
    let gar = match (subject.descriptor, h.len() * 2 == e.len()) {
        (Some(GroupDescriptor::Symmetric(n)), true) if alternating_is_gar(*n) => Some(format!("A_{n}")),
        _ => gar_kernel_name(&sub, limits)?.map(str::to_string),
    };
    if let Some(name) = gar {
        let q = quotient(g, h, limits)?;
        let (justification, assumptions) = justify(is_solvable(&q, limits)?, is_abelian(&q), None, ctx);
        let evidence = EmbeddingEvidence {
            rule: EmbeddingRule::GarKernel,
            citation: "Prop 4.3".into(),
            realizability_assumed: !assumptions.is_empty(),
            realizability_of: "G/H".into(),
            justification,
            verified: true,
            details: format!("kernel is the simple group {name}, which has a GAR-realization"),
        };
        return Ok((evidence, assumptions));
    }
    if let Some(why) = &ctx.assertions.embedding {
        return Ok(asserted_embedding(why));
    }
    Err(CriteriaError::NoEvidence(format!("kernel of order {} is neither solvable nor GAR-listed", h.len())))
}

fn asserted_embedding(why: &str) -> (EmbeddingEvidence, Vec<Assumption>) {
    let evidence = EmbeddingEvidence {
        rule: EmbeddingRule::UserAssertion,
        citation: "user-asserted".into(),
        realizability_assumed: true,
        realizability_of: "G".into(),
        justification: Justification::UserAsserted,
        verified: false,
        details: why.to_string(),
    };
    (evidence, vec![Assumption::new("user-asserted", format!("condition (*): {why}"))])
}

/// Condition (*) for `A_n` in `S_n` without enumerating the group.
pub(crate) fn alternating_kernel_evidence(
    n: u64,
    ctx: &Context,
) -> Result<(EmbeddingEvidence, Vec<Assumption>), CriteriaError> {
    if alternating_is_gar(n) {
        let evidence = EmbeddingEvidence {
            rule: EmbeddingRule::GarKernel,
            citation: "Prop 4.3".into(),
            realizability_assumed: false,
            realizability_of: "G/H".into(),
            justification: Justification::Abelian,
            verified: true,
            details: format!("kernel A_{n} has a GAR-realization; G/H = Z/2"),
        };
        return Ok((evidence, vec![]));
    }
    index_two_regular_sn(n, ctx)
}

/// The index-two criterion for `A_n` in `S_n`, through a realization with
/// inertia invariant `([1^{n-2} 2], [1 (n-1)], [n])`.
pub fn index_two_regular_sn(n: u64, ctx: &Context) -> Result<(EmbeddingEvidence, Vec<Assumption>), CriteriaError> {
    if !(5..=20).contains(&n) {
        return Err(CriteriaError::Precondition(format!(
            "index-two regular instance is prefilled for 5 <= n <= 20, got {n}"
        )));
    }
    let n_us = n as usize;
    let mut transposition = vec![1; n_us - 2];
    transposition.push(2);
    let types = [CycleType::new(transposition), CycleType::new(vec![1, n_us - 1]), CycleType::new(vec![n_us])];
    let even = types.iter().filter(|t| t.order() % 2 == 0).count();
    let order: u64 = (1..=n).product();
    let rt = RamificationType::new(order, types.iter().map(CycleType::order).collect())
        .map_err(|e| CriteriaError::Precondition(e.to_string()))?;
    let genus = rh_genus(&rt).map_err(|e| CriteriaError::Precondition(e.to_string()))?;
    if genus < 2 || !(2..=3).contains(&even) {
        return Err(CriteriaError::EmbeddingNotCertified(format!("genus {genus} with {even} even-order classes")));
    }
    let labels: Vec<String> = types.iter().map(ToString::to_string).collect();
    let mut assumptions = vec![Assumption::new(
        "Prop 4.4",
        format!("a Q-regular S_{n}-extension with inertia canonical invariant ({}) exists", labels.join(", ")),
    )];
    if !ctx.field.is_rational() {
        assumptions.push(Assumption::new(
            "field-transfer",
            format!(
                "the Q-regular realization stays regular over {} with the same invariant and rational branch points",
                ctx.field
            ),
        ));
    }
    let evidence = EmbeddingEvidence {
        rule: EmbeddingRule::IndexTwoRegular,
        citation: "Prop 4.4".into(),
        realizability_assumed: false,
        realizability_of: "G".into(),
        justification: Justification::Symmetric,
        verified: true,
        details: format!(
            "branch points rational since S_{n} classes are rational; genus {genus} >= 2; {even} even-order classes"
        ),
    };
    Ok((evidence, assumptions))
}

/// Condition (**) for index-two `H`: every quadratic extension embeds into a G-extension.
pub fn every_quadratic_embeds(
    subject: &Subject,
    h: &Subset,
    ctx: &Context,
) -> Result<(String, Vec<Assumption>), CriteriaError> {
    let g = subject.group;
    let limits = ctx.limits;
    let e = g.elements(limits)?;
    if h.len() * 2 != e.len() {
        return Err(CriteriaError::Precondition("H must have index 2".into()));
    }
    if subject.symmetric_degree().is_some() {
        return Ok(("Prop 4.5(2): A_n in S_n".into(), vec![]));
    }
    let sub = g.subgroup(h, limits)?;
    if let Some(name) = gar_kernel_name(&sub, limits)? {
        return Ok((format!("Prop 4.5(1): kernel {name} is GAR-listed"), vec![]));
    }
    if is_abelian(g) && e.len() % 4 == 2 {
        return Ok((
            "Remark 4.2: G = Z/2 x B with |B| odd; compose with a B-extension of coprime degree".into(),
            vec![],
        ));
    }
    if let Some(why) = &ctx.assertions.every_quadratic_embeds {
        return Ok(("user-asserted".into(), vec![Assumption::new("user-asserted", format!("condition (**): {why}"))]));
    }
    Err(CriteriaError::EmbeddingNotCertified("no rule shows that every quadratic extension embeds".into()))
}

/// The inertia realizability oracle for the given class representatives.
pub fn inertia_oracle(
    subject: &Subject,
    reps: &[Perm],
    ctx: &Context,
) -> Result<(InertiaOracle, Vec<Assumption>), CriteriaError> {
    let transfer = || {
        (!ctx.field.is_rational()).then(|| {
            Assumption::new(
                "field-transfer",
                format!("a Q-regular realization stays regular over {} with the same inertia invariant", ctx.field),
            )
        })
    };
    if is_abelian(subject.group) && reps.iter().all(|r| !r.is_identity()) {
        let oracle = InertiaOracle {
            rule: InertiaRule::AbelianAllClasses,
            citation: "Lemma 6.4".into(),
            scope: "every nonidentity class of an abelian group".into(),
        };
        return Ok((oracle, transfer().into_iter().collect()));
    }
    if subject.symmetric_degree().is_some() && reps.iter().all(Perm::is_odd) {
        return Ok((symmetric_oracle(), transfer().into_iter().collect()));
    }
    if let Some(why) = &ctx.assertions.inertia {
        let oracle = InertiaOracle {
            rule: InertiaRule::UserAssertion,
            citation: "user-asserted".into(),
            scope: "the selected classes".into(),
        };
        return Ok((oracle, vec![Assumption::new("user-asserted", format!("inertia: {why}"))]));
    }
    Err(CriteriaError::OracleGap(format!("{} selected classes are not covered by a proven instance", reps.len())))
}

pub(crate) fn symmetric_oracle() -> InertiaOracle {
    InertiaOracle {
        rule: InertiaRule::SymmetricOddClasses,
        citation: "Lemma 6.7".into(),
        scope: "every class of S_n outside A_n".into(),
    }
}
