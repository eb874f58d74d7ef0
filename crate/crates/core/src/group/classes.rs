use serde::{Deserialize, Serialize};

use super::{Elements, GroupError, Limits, Perm, PermGroup, Subset};

/// A conjugacy class of an enumerated group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub representative: Perm,
    pub size: u64,
    pub element_order: u64,
    pub parent_order: u64,
    /// Position in the deterministic class ordering of the parent group.
    pub position: usize,
}

#[derive(Debug)]
pub(crate) struct ClassTable {
    pub classes: Vec<ConjClass>,
    pub members: Vec<Subset>,
    pub class_of: Vec<u32>,
}

pub(crate) fn class_table<'a>(g: &PermGroup, e: &'a Elements) -> &'a ClassTable {
    e.classes.get_or_init(|| build_table(g, e))
}

fn build_table(g: &PermGroup, e: &Elements) -> ClassTable {
    let n = e.len();
    let gens: Vec<u32> = g.generators().iter().map(|p| e.index_of(p).expect("generator in group")).collect();
    let mut raw_id = vec![u32::MAX; n];
    let mut raw: Vec<Vec<u32>> = Vec::new();
    for start in 0..n as u32 {
        if raw_id[start as usize] != u32::MAX {
            continue;
        }
        let id = raw.len() as u32;
        let mut orbit = vec![start];
        raw_id[start as usize] = id;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &s in &gens {
                let y = e.conj(x, s);
                if raw_id[y as usize] == u32::MAX {
                    raw_id[y as usize] = id;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        raw.push(orbit);
    }
    // order by element order, class size, then representative
    let mut order: Vec<usize> = (0..raw.len()).collect();
    order.sort_by_key(|&c| (e.order_of(raw[c][0]), raw[c].len(), raw[c][0]));
    let mut class_of = vec![0u32; n];
    let mut classes = Vec::with_capacity(raw.len());
    let mut members = Vec::with_capacity(raw.len());
    for (pos, &c) in order.iter().enumerate() {
        for &x in &raw[c] {
            class_of[x as usize] = pos as u32;
        }
        classes.push(ConjClass {
            representative: e.perm(raw[c][0]).clone(),
            size: raw[c].len() as u64,
            element_order: e.order_of(raw[c][0]),
            parent_order: n as u64,
            position: pos,
        });
        members.push(Subset(raw[c].clone()));
    }
    ClassTable { classes, members, class_of }
}

/// All conjugacy classes, ordered by element order, class size, then representative.
pub fn conjugacy_classes(g: &PermGroup, limits: &Limits) -> Result<Vec<ConjClass>, GroupError> {
    let e = g.elements(limits)?;
    Ok(class_table(g, e).classes.clone())
}

/// The class of `rep^i`; well defined since powering commutes with conjugation.
pub fn class_power(c: &ConjClass, i: i64, g: &PermGroup, limits: &Limits) -> Result<ConjClass, GroupError> {
    let e = g.elements(limits)?;
    let t = class_table(g, e);
    let p = c.representative.pow(i);
    let idx = e
        .index_of(&p)
        .ok_or_else(|| GroupError::InvalidDescriptor("class representative is not in the group".into()))?;
    Ok(t.classes[t.class_of[idx as usize] as usize].clone())
}

impl ConjClass {
    /// The members of this class inside `g`.
    pub fn members(&self, g: &PermGroup, limits: &Limits) -> Result<Subset, GroupError> {
        let e = g.elements(limits)?;
        Ok(class_table(g, e).members[self.position].clone())
    }

    /// Whether `self` equals `other^i` for some `i >= 1`.
    pub fn is_power_of(&self, other: &ConjClass, g: &PermGroup, limits: &Limits) -> Result<bool, GroupError> {
        for i in 1..=other.element_order as i64 {
            if class_power(other, i, g, limits)?.position == self.position {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
