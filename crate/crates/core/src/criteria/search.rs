use std::collections::BTreeSet;

use crate::group::classes::{class_table, ClassTable};
use crate::group::cycle_type::CycleType;
use crate::group::subgroups::maximal_cyclic_flags;
use crate::group::{ConjClass, Elements, GroupError, Limits, PermGroup, Subset};

use super::ClassWitness;

/// Classes outside `h` whose elements generate maximal cyclic subgroups,
/// by element order descending, then class order.
pub(crate) fn qualifying_classes(g: &PermGroup, h: &Subset, limits: &Limits) -> Result<Vec<ConjClass>, GroupError> {
    let e = g.elements(limits)?;
    let table = class_table(g, e);
    let flags = maximal_cyclic_flags(e);
    let mut out: Vec<ConjClass> = table
        .classes
        .iter()
        .filter(|c| {
            let x = e.index_of(&c.representative).expect("representative is an element");
            !h.contains(x) && flags[x as usize]
        })
        .cloned()
        .collect();
    out.sort_by_key(|c| (std::cmp::Reverse(c.element_order), c.position));
    Ok(out)
}

/// Positions of the classes `c^j`, `j >= 1`.
fn power_positions(e: &Elements, table: &ClassTable, c: &ConjClass) -> BTreeSet<usize> {
    let x = e.index_of(&c.representative).expect("representative is an element");
    (1..=c.element_order as i64).map(|j| table.class_of[e.pow(x, j) as usize] as usize).collect()
}

/// Whether class `a` is a power of class `b`.
pub(crate) fn is_power(g: &PermGroup, a: &ConjClass, b: &ConjClass, limits: &Limits) -> Result<bool, GroupError> {
    let e = g.elements(limits)?;
    Ok(power_positions(e, class_table(g, e), b).contains(&a.position))
}

/// First `count` qualifying classes in search order; with `non_power` the
/// search is exhaustive over tuples in which no class is a power of another.
pub fn select_classes(
    g: &PermGroup,
    h: &Subset,
    count: usize,
    non_power: bool,
    limits: &Limits,
) -> Result<Option<Vec<ConjClass>>, GroupError> {
    let cands = qualifying_classes(g, h, limits)?;
    if cands.len() < count {
        return Ok(None);
    }
    if !non_power {
        return Ok(Some(cands[..count].to_vec()));
    }
    let e = g.elements(limits)?;
    let table = class_table(g, e);
    let powers: Vec<BTreeSet<usize>> = cands.iter().map(|c| power_positions(e, table, c)).collect();
    let compatible =
        |a: usize, b: usize| !powers[a].contains(&cands[b].position) && !powers[b].contains(&cands[a].position);
    fn extend(
        start: usize,
        chosen: &mut Vec<usize>,
        count: usize,
        n: usize,
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        if chosen.len() == count {
            return true;
        }
        for i in start..n {
            if chosen.iter().all(|&j| ok(i, j)) {
                chosen.push(i);
                if extend(i + 1, chosen, count, n, ok) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    Ok(extend(0, &mut chosen, count, cands.len(), &compatible)
        .then(|| chosen.into_iter().map(|i| cands[i].clone()).collect()))
}

/// Condition (4) of the index-two criterion: three qualifying classes, or
/// two where the second is a power of the first.
pub(crate) fn select_index_two(
    g: &PermGroup,
    h: &Subset,
    limits: &Limits,
) -> Result<Option<Vec<ConjClass>>, GroupError> {
    let cands = qualifying_classes(g, h, limits)?;
    if cands.len() >= 3 {
        return Ok(Some(cands[..3].to_vec()));
    }
    if let [a, b] = cands.as_slice() {
        if is_power(g, b, a, limits)? {
            return Ok(Some(vec![a.clone(), b.clone()]));
        }
        if is_power(g, a, b, limits)? {
            return Ok(Some(vec![b.clone(), a.clone()]));
        }
    }
    Ok(None)
}

pub fn class_witness(c: &ConjClass, symmetric: bool) -> ClassWitness {
    let label = if symmetric { CycleType::of(&c.representative).to_string() } else { c.representative.cycles_string() };
    ClassWitness {
        label,
        representative: Some(c.representative.clone()),
        element_order: c.element_order,
        size: c.size as u128,
    }
}

pub(crate) fn cycle_type_witness(t: &CycleType) -> ClassWitness {
    ClassWitness {
        label: t.to_string(),
        representative: Some(t.representative()),
        element_order: t.order(),
        size: t.class_size(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{index_two_subgroups, materialize, normal_subgroups, GroupDescriptor};

    #[test]
    fn s6_outside_a6() {
        let l = Limits::default();
        let g = materialize(&GroupDescriptor::Symmetric(6), &l).unwrap();
        let h = index_two_subgroups(&g, &l).unwrap().remove(0);
        let sel = select_index_two(&g, &h, &l).unwrap().unwrap();
        let mut types: Vec<String> = sel.iter().map(|c| CycleType::of(&c.representative).to_string()).collect();
        types.sort();
        assert_eq!(types, ["[1^1 2^1 3^1]", "[1^2 4^1]", "[6^1]"]);
    }

    #[test]
    fn z6_uses_two_power_related_classes() {
        let l = Limits::default();
        let g = materialize(&GroupDescriptor::Abelian(vec![6]), &l).unwrap();
        let h = index_two_subgroups(&g, &l).unwrap().remove(0);
        let sel = select_index_two(&g, &h, &l).unwrap().unwrap();
        assert_eq!(sel.len(), 2);
        assert!(sel.iter().all(|c| c.element_order == 6));
    }

    #[test]
    fn z4_has_too_few_classes() {
        let l = Limits::default();
        let g = materialize(&GroupDescriptor::Abelian(vec![4]), &l).unwrap();
        let h = normal_subgroups(&g, &l).unwrap().into_iter().find(|s| s.len() == 2).unwrap();
        assert_eq!(select_classes(&g, &h, 5, true, &l).unwrap(), None);
    }
}
