use crate::criteria::{check_t36_symmetric, check_t38, Context, Subject};
use crate::group::cycle_type::CycleType;
use crate::group::{materialize, GroupDescriptor};

use super::{outcome, FamilyError, Outcome};

fn types(lists: &[&[usize]]) -> Vec<CycleType> {
    lists.iter().map(|p| CycleType::new(p.to_vec())).collect()
}

/// Odd, maximal cyclic and pairwise non-power cycle types of `S_n` for the
/// class-counting criteria: `count = 3` for the index-two criterion, 5 otherwise.
pub fn sn_select_classes(n: u64, count: usize) -> Result<Vec<CycleType>, FamilyError> {
    let refuse = |why: &str| Err(FamilyError::NotEnoughClasses { n, count, reason: why.into() });
    if n < 6 {
        return refuse("the class lists start at n = 6");
    }
    if count != 3 && count != 5 {
        return refuse("count must be 3 or 5");
    }
    if count == 5 && n < 8 {
        return refuse("five classes are only provided for n >= 8");
    }
    let n_us = n as usize;
    let all = match n {
        6 => types(&[&[6], &[1, 1, 4], &[1, 2, 3]]),
        7 => types(&[&[1, 6], &[2, 5], &[3, 4]]),
        8 => types(&[&[8], &[1, 1, 6], &[1, 2, 5], &[1, 3, 4], &[2, 3, 3]]),
        9 => types(&[&[1, 8], &[2, 7], &[3, 6], &[4, 5], &[1, 2, 3, 3]]),
        10 => types(&[&[10], &[1, 1, 8], &[1, 2, 7], &[1, 3, 6], &[1, 4, 5]]),
        _ if n % 2 == 1 => (1..=5).map(|m| CycleType::new(vec![m, n_us - m])).collect(),
        _ => (1..=5).map(|m| CycleType::new(vec![1, m, n_us - m - 1])).collect(),
    };
    let chosen: Vec<CycleType> = all.into_iter().take(count).collect();
    for t in &chosen {
        if !t.is_odd() || !t.is_maximal_cyclic() {
            return refuse(&format!("{t} fails the cycle-type oracle"));
        }
    }
    if count == 5 {
        for (i, a) in chosen.iter().enumerate() {
            if chosen[i + 1..].iter().any(|b| a.is_power_of(b) || b.is_power_of(a)) {
                return refuse(&format!("{a} is power-related to another type"));
            }
        }
    }
    Ok(chosen)
}

/// `S_6` and `S_7` over Q through the index-two criterion, `S_n` with
/// `n >= 8` through the five-class criterion at the level of cycle types.
pub(crate) fn symmetric_route(n: u64, ctx: &Context) -> Result<Outcome, FamilyError> {
    match n {
        6 | 7 if ctx.field.is_rational() => {
            let desc = GroupDescriptor::Symmetric(n);
            let g = materialize(&desc, ctx.limits)?;
            let preferred = sn_select_classes(n, 3)?;
            outcome(check_t38(&Subject::new(&g, Some(&desc)), ctx, Some(&preferred)))
        }
        n if n >= 8 => outcome(check_t36_symmetric(n, &sn_select_classes(n, 5)?, ctx)),
        _ => Ok(Outcome::Inapplicable),
    }
}
