use serde::{Deserialize, Serialize};

use crate::criteria::{
    check_t32, check_t32_with, check_t36, check_t37, check_t38, Context, GenusEvidence, Subject, T32Evidence,
};
use crate::genus::{euler_phi, is_prime, prime_factors, rh_genus, FieldContext, RamificationType};
use crate::group::cycle_type::partitions;
use crate::group::{
    chain_from_cyclic_orders, materialize, subgroup_generated, GroupDescriptor, Limits, PermGroup, Subset,
};

use super::{outcome, ExceptionTag, FamilyError, Outcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AbelianQuotient {
    /// A proper quotient with minimal genus at least 2.
    Suitable {
        invariants: Vec<u64>,
        rule: String,
    },
    /// `Z/8` or `Z/9` over Q, handled through the branch cycle lemma.
    BranchCycle {
        order: u64,
    },
    Exception(ExceptionTag),
}

/// `Z/2Z x Z/4Z`, `(Z/2Z)^3`, `(Z/2Z)^2 x Z/4Z`.
pub fn zz_name(chain: &[u64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < chain.len() {
        let d = chain[i];
        let run = chain[i..].iter().take_while(|&&x| x == d).count();
        parts.push(if run == 1 { format!("Z/{d}Z") } else { format!("(Z/{d}Z)^{run}") });
        i += run;
    }
    parts.join(" x ")
}

/// Invariant factor chains of all abelian groups of order `n`, in increasing
/// lexicographic order. Order 1 gives the empty chain.
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
    for p in prime_factors(n) {
        let mut e = 0;
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
            e += 1;
        }
        per_prime.push(partitions(e).iter().map(|t| t.parts().iter().map(|&k| p.pow(k as u32)).collect()).collect());
    }
    let mut out: Vec<Vec<u64>> = vec![vec![]];
    for choices in per_prime {
        out = out.iter().flat_map(|acc| choices.iter().map(move |c| [acc.as_slice(), c].concat())).collect();
    }
    let mut chains: Vec<Vec<u64>> = out.iter().map(|o| chain_from_cyclic_orders(o)).collect();
    chains.sort();
    chains
}

pub fn validate_chain(chain: &[u64]) -> Result<(), FamilyError> {
    if chain.is_empty() || chain.iter().any(|&d| d < 2) || chain.windows(2).any(|w| w[1] % w[0] != 0) {
        return Err(FamilyError::InvalidChain(format!("{chain:?}")));
    }
    Ok(())
}

/// Whether `target` is isomorphic to a quotient of the group with invariants `chain`.
pub fn is_quotient(target: &[u64], chain: &[u64]) -> bool {
    target.len() <= chain.len() && target.iter().rev().zip(chain.iter().rev()).all(|(c, d)| d % c == 0)
}

fn exception(list: &str, item: &str, chain: &[u64]) -> ExceptionTag {
    ExceptionTag { list: list.into(), item: item.into(), group: zz_name(chain) }
}

fn exception_513(chain: &[u64]) -> ExceptionTag {
    let item = match chain {
        [_] => "(a)",
        [a, b] if a == b && is_prime(*a) => "(b)",
        [2, b] if is_prime(b / 2) => "(c)",
        [3, b] if is_prime(b / 3) => "(d)",
        _ => "(e)",
    };
    exception("Thm 5.1(3)", item, chain)
}

/// The case split that finds a quotient outside the genus <= 1 list over any k.
pub(crate) fn section_631(chain: &[u64]) -> Result<(Vec<u64>, &'static str), ExceptionTag> {
    let m = chain.len();
    let fail = || Err(exception_513(chain));
    match m {
        1 => fail(),
        2 => {
            let (d1, d2) = (chain[0], chain[1]);
            if d2 > d1 && d1 >= 4 {
                Ok((vec![d1, d1], "Sec 6.3.1 (m = 2, d2 > d1 >= 4)"))
            } else if d2 == d1 && d1 >= 4 {
                if is_prime(d1) || d1 == 4 {
                    return fail();
                }
                let r = crate::genus::prime_factors(d1)[0];
                Ok((vec![r, d2], "Sec 6.3.1 (m = 2, d1 = d2 >= 6)"))
            } else {
                // d1 <= 3 and d2 / d1 = r * s with r, s >= 2
                let t = d2 / d1;
                if t == 1 || is_prime(t) {
                    return fail();
                }
                let r = t / crate::genus::prime_factors(t)[0];
                if d1 == 2 && r == 2 {
                    return fail();
                }
                Ok((vec![d1, d1 * r], "Sec 6.3.1 (m = 2, d1 <= 3)"))
            }
        }
        3 => {
            let (d1, d2, d3) = (chain[0], chain[1], chain[2]);
            if d3 > d1 && d1 != 2 {
                Ok((vec![d1; 3], "Sec 6.3.1 (m = 3, d3 > d1 != 2)"))
            } else if d3 > d1 {
                if d2 == 2 && d3 == 4 {
                    return fail();
                }
                Ok((vec![d2, d3], "Sec 6.3.1 (m = 3, d3 > d1 = 2)"))
            } else {
                if d3 <= 3 {
                    return fail();
                }
                Ok((vec![d3, d3], "Sec 6.3.1 (m = 3, d1 = d2 = d3)"))
            }
        }
        _ => {
            if m == 4 && chain.iter().all(|&d| d == 2) {
                return fail();
            }
            Ok((chain[1..].to_vec(), "Sec 6.3.1 (m >= 4)"))
        }
    }
}

/// Membership in the over-Q exception list of abelian groups.
pub fn exception_522(chain: &[u64]) -> Option<ExceptionTag> {
    match chain {
        [p] if is_prime(*p) => Some(exception("Thm 5.2(2)", "(a)", chain)),
        [4] | [6] | [12] | [2, 2] | [2, 4] | [2, 6] | [3, 3] | [2, 2, 2] | [2, 2, 2, 2] => {
            Some(exception("Thm 5.2(2)", "(b)", chain))
        }
        _ => None,
    }
}

/// The additional analysis over Q for groups on the general exception list.
pub(crate) fn section_632(chain: &[u64]) -> AbelianQuotient {
    let last = *chain.last().expect("nonempty chain");
    if let Some(&p) = crate::genus::prime_factors(last).iter().find(|&&p| p >= 5) {
        return AbelianQuotient::Suitable { invariants: vec![p], rule: "Sec 6.3.2 (quotient Z/p with p >= 5)".into() };
    }
    let order: u64 = chain.iter().product();
    for target in [&[8][..], &[9], &[2, 4], &[3, 3]] {
        if is_quotient(target, chain) && target.iter().product::<u64>() < order {
            return AbelianQuotient::Suitable {
                invariants: target.to_vec(),
                rule: format!("Sec 6.3.2 (quotient {})", zz_name(target)),
            };
        }
    }
    match chain {
        [8] | [9] => AbelianQuotient::BranchCycle { order },
        _ => AbelianQuotient::Exception(exception("Sec 6.3.2", "unresolved", chain)),
    }
}

/// A suitable quotient of the abelian group with invariants `chain`, or the
/// exception list item it falls under.
pub fn abelian_suitable_quotient(chain: &[u64], fc: &FieldContext) -> Result<AbelianQuotient, FamilyError> {
    validate_chain(chain)?;
    Ok(match section_631(chain) {
        Ok((invariants, rule)) => AbelianQuotient::Suitable { invariants, rule: rule.into() },
        Err(_) if fc.is_rational() => match exception_522(chain) {
            Some(t) => AbelianQuotient::Exception(t),
            None => section_632(chain),
        },
        Err(tag) => AbelianQuotient::Exception(tag),
    })
}

/// The kernel of the projection of the canonical model of `chain` onto the
/// right-aligned quotient `target`.
pub(crate) fn quotient_kernel(
    g: &PermGroup,
    chain: &[u64],
    target: &[u64],
    limits: &Limits,
) -> Result<Subset, FamilyError> {
    let gens = g.generators();
    let (m, k) = (chain.len(), target.len());
    let mut hgens = gens[..m - k].to_vec();
    for (j, &c) in target.iter().enumerate() {
        hgens.push(gens[m - k + j].pow(c as i64));
    }
    Ok(subgroup_generated(g, &hgens, limits)?)
}

/// The canonical model: one cycle per invariant factor, in chain order.
pub(crate) struct Model {
    pub desc: GroupDescriptor,
    pub group: PermGroup,
    pub chain: Vec<u64>,
}

impl Model {
    pub fn new(chain: &[u64], limits: &Limits) -> Result<Self, FamilyError> {
        let desc = GroupDescriptor::Abelian(chain.to_vec());
        let group = materialize(&desc, limits)?;
        Ok(Model { desc, group, chain: chain.to_vec() })
    }

    fn subject(&self) -> Subject<'_> {
        Subject::new(&self.group, Some(&self.desc))
    }

    /// The subgroup generated by `gens[i]^e` for the given pairs.
    fn generated(&self, powers: &[(usize, u64)], limits: &Limits) -> Result<Subset, FamilyError> {
        let gens = self.group.generators();
        let hgens: Vec<_> = powers.iter().map(|&(i, e)| gens[i].pow(e as i64)).collect();
        Ok(subgroup_generated(&self.group, &hgens, limits)?)
    }
}

/// The minimal genus criterion through a suitable quotient.
pub(crate) fn via_quotient(model: &Model, q: &AbelianQuotient, ctx: &Context) -> Result<Outcome, FamilyError> {
    match q {
        AbelianQuotient::Suitable { invariants, .. } => {
            let h = quotient_kernel(&model.group, &model.chain, invariants, ctx.limits)?;
            outcome(check_t32(&model.subject(), &h, ctx))
        }
        AbelianQuotient::BranchCycle { order } => branch_cycle(model, *order, ctx),
        AbelianQuotient::Exception(t) => Ok(Outcome::Refused(format!("{} {}: {}", t.list, t.item, t.group))),
    }
}

/// `Z/8` and `Z/9` over Q: the generators give `phi(|G|)` totally ramified
/// branch points, so the subextension fixed by the order-p subgroup has genus >= 2.
fn branch_cycle(model: &Model, order: u64, ctx: &Context) -> Result<Outcome, FamilyError> {
    let p = crate::genus::prime_factors(order)[0];
    let h = model.generated(&[(0, order / p)], ctx.limits)?;
    let q = order / p;
    let points = euler_phi(order);
    let rt =
        RamificationType::new(q, vec![q; points as usize]).map_err(|e| FamilyError::InvalidChain(e.to_string()))?;
    let genus = rh_genus(&rt).map_err(|e| FamilyError::InvalidChain(e.to_string()))?;
    let evidence = GenusEvidence::Subextension {
        argument: format!(
            "by the branch cycle lemma a Q-regular Z/{order}Z-extension has at least phi({order}) = {points} totally ramified branch points; they stay totally ramified in the Z/{q}Z-subextension"
        ),
        ramification: rt,
        genus_at_least: genus,
    };
    let check = format!("Riemann-Hurwitz: Z/{q}Z-subextension has genus >= {genus}");
    let input = T32Evidence { genus: evidence, genus_check: check, assumptions: vec![], embedding: None };
    outcome(check_t32_with(&model.subject(), &h, ctx, input))
}

/// The three class-counting routes for the remaining abelian groups over Q.
pub(crate) fn no_parametric(model: &Model, ctx: &Context) -> Result<Outcome, FamilyError> {
    let subject = model.subject();
    let first = |e: u64| model.generated(&[(0, e)], ctx.limits);
    let result = match model.chain.as_slice() {
        [2, 2, 2] | [2, 2, 2, 2] => check_t36(&subject, &first(1)?, ctx, None),
        [12] => check_t37(&subject, &first(6)?, ctx, None),
        [2, 4] | [2, 6] | [3, 3] => check_t37(&subject, &first(1)?, ctx, None),
        [6] => check_t38(&subject, ctx, None),
        _ => return Ok(Outcome::Inapplicable),
    };
    outcome(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_of_order() {
        assert_eq!(abelian_groups_of_order(1), vec![Vec::<u64>::new()]);
        assert_eq!(abelian_groups_of_order(8), vec![vec![2, 2, 2], vec![2, 4], vec![8]]);
        assert_eq!(abelian_groups_of_order(36).len(), 4);
        assert_eq!(abelian_groups_of_order(256).len(), 22);
    }

    fn suitable(chain: &[u64], fc: &FieldContext) -> Option<Vec<u64>> {
        match abelian_suitable_quotient(chain, fc).unwrap() {
            AbelianQuotient::Suitable { invariants, .. } => Some(invariants),
            _ => None,
        }
    }

    #[test]
    fn examples() {
        let k = FieldContext::general(2, None);
        assert_eq!(suitable(&[4, 8], &k), Some(vec![4, 4]));
        assert_eq!(suitable(&[2, 2, 2, 2, 2], &k), Some(vec![2, 2, 2, 2]));
        match abelian_suitable_quotient(&[2, 8], &k).unwrap() {
            AbelianQuotient::Exception(t) => assert_eq!((t.item.as_str(), t.group.as_str()), ("(e)", "Z/2Z x Z/8Z")),
            other => panic!("{other:?}"),
        }
        let q = FieldContext::Rational;
        assert!(matches!(
            abelian_suitable_quotient(&[3, 9], &q).unwrap(),
            AbelianQuotient::Suitable { invariants, .. } if invariants == [9] || invariants == [3, 3]
        ));
        assert_eq!(abelian_suitable_quotient(&[8], &q).unwrap(), AbelianQuotient::BranchCycle { order: 8 });
        assert!(abelian_suitable_quotient(&[2, 3], &q).is_err());
    }

    #[test]
    fn names() {
        assert_eq!(zz_name(&[2, 2]), "(Z/2Z)^2");
        assert_eq!(zz_name(&[2, 2, 4]), "(Z/2Z)^2 x Z/4Z");
    }

    #[test]
    fn exception_items() {
        assert_eq!(exception_513(&[5, 5]).item, "(b)");
        assert_eq!(exception_513(&[2, 4]).item, "(c)");
        assert_eq!(exception_513(&[3, 9]).item, "(d)");
        assert_eq!(exception_513(&[4, 4]).item, "(e)");
        assert_eq!(exception_513(&[7]).item, "(a)");
    }
}
