use crate::criteria::{
    check_t32_with, check_t34, Assertions, Assumption, Context, GenusEvidence, LocalEvidence, Subject, T32Evidence,
};
use crate::genus::{is_prime, prime_factors, FieldContext, GenusBound, MinimalGenusVerdict};
use crate::group::{materialize, subgroup_generated, GroupDescriptor, Limits, PermGroup, Subset};

use super::{outcome, verdict_from, Evaluation, ExceptionTag, FamilyError, FamilyVerdict, Outcome};

/// `n` prime or in {1, 4, 6, 8, 9, 12}.
pub fn dihedral_exception(n: u64) -> Option<ExceptionTag> {
    let item = if is_prime(n) {
        "n prime"
    } else if matches!(n, 1 | 4 | 6 | 8 | 9 | 12) {
        "n in {1,4,6,8,9,12}"
    } else {
        return None;
    };
    Some(ExceptionTag { list: "Thm 5.2(3)".into(), item: item.into(), group: format!("D_{n}") })
}

/// The rotations of order `n / k` in the materialized `D_n`.
fn rotations(g: &PermGroup, k: u64, limits: &Limits) -> Result<Subset, FamilyError> {
    let r = g.generators()[0].pow(k as i64);
    Ok(subgroup_generated(g, &[r], limits)?)
}

/// The dihedral route over Q for `D_n` given as a materialized group whose
/// first generator is a rotation of order `n`.
pub(crate) fn dihedral_route(
    g: &PermGroup,
    desc: Option<&GroupDescriptor>,
    n: u64,
    ctx: &Context,
) -> Result<Outcome, FamilyError> {
    if !ctx.field.is_rational() {
        return Ok(Outcome::Inapplicable);
    }
    if let Some(t) = dihedral_exception(n) {
        return Ok(Outcome::Refused(format!("{} {}: {}", t.list, t.item, t.group)));
    }
    let subject = Subject::new(g, desc);
    let factors = prime_factors(n);
    if let Some(&p) = factors.iter().find(|&&p| p >= 11) {
        // kernel of D_n -> D_p
        let h = rotations(g, p, ctx.limits)?;
        let verdict = MinimalGenusVerdict {
            bound: GenusBound::AtLeastTwo,
            reason: Some("DF94 + RH".into()),
            detail: format!("D_{p} with p >= 11 has minimal genus at least 2 over Q"),
            field: ctx.field.clone(),
        };
        let input = T32Evidence {
            genus: GenusEvidence::Verdict(verdict),
            genus_check: format!("m_{{D_{p},Q}} >= 2 taken from the external genus bound"),
            assumptions: vec![Assumption::new(
                "external-genus-bound",
                format!("m_{{D_{p},Q}} >= 2 (external result DF94 + RH)"),
            )],
            embedding: None,
        };
        return outcome(check_t32_with(&subject, &h, ctx, input));
    }
    let p = factors[0];
    let h = rotations(g, n / p, ctx.limits)?;
    let local = LocalEvidence {
        rule: "Lemma 6.5".into(),
        primes: format!("primes q = 1 mod {n}"),
        ramification_index: n / p,
        asserted: false,
    };
    outcome(check_t34(&subject, &h, ctx, Some(&local)))
}

/// The dihedral group `D_n` of order `2n` on its own.
pub fn dihedral_analysis(n: u64, fc: &FieldContext, limits: &Limits) -> Result<FamilyVerdict, FamilyError> {
    let desc = GroupDescriptor::Dihedral(n);
    let g = materialize(&desc, limits)?;
    let assertions = Assertions::default();
    let ctx = Context { field: fc, limits, assertions: &assertions, scan_alternatives: false };
    let mut eval = Evaluation::default();
    if n >= 3 {
        eval.record("Thm 5.2(3)", dihedral_route(&g, Some(&desc), n, &ctx)?);
        if fc.is_rational() {
            eval.exception = dihedral_exception(n);
        }
    } else {
        eval.diagnostics.push(format!("D_{n} is abelian"));
    }
    if !fc.is_rational() {
        eval.diagnostics.push("the dihedral route is stated over Q".into());
    }
    verdict_from(&g, Some(&desc), fc, limits, eval)
}
