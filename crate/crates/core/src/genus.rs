//! Riemann-Hurwitz arithmetic and certified lower bounds on the minimal genus.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{
    abelian_invariants, is_isomorphic, is_solvable, materialize, GroupDescriptor, GroupError, Limits, PermGroup,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenusError {
    #[error("2g - 2 = {0} is odd; no cover has this ramification type")]
    NonIntegralGenus(i64),
    #[error("invalid ramification type: {0}")]
    InvalidType(String),
}

/// Group order together with the multiset of ramification indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RamificationType {
    pub group_order: u64,
    /// Sorted increasingly.
    pub indices: Vec<u64>,
}

impl RamificationType {
    pub fn new(group_order: u64, mut indices: Vec<u64>) -> Result<Self, GenusError> {
        if group_order == 0 {
            return Err(GenusError::InvalidType("group order must be positive".into()));
        }
        if let Some(e) = indices.iter().find(|&&e| e < 2 || !group_order.is_multiple_of(e)) {
            return Err(GenusError::InvalidType(format!("index {e} is not a divisor >= 2 of {group_order}")));
        }
        if indices.is_empty() && group_order > 1 {
            return Err(GenusError::InvalidType("a nontrivial cover has branch points".into()));
        }
        indices.sort_unstable();
        Ok(RamificationType { group_order, indices })
    }

    /// `2g - 2 = -2|G| + sum |G| (1 - 1/e_i)`.
    pub fn euler_characteristic_term(&self) -> i64 {
        let n = self.group_order as i64;
        -2 * n + self.indices.iter().map(|&e| n - n / e as i64).sum::<i64>()
    }
}

impl fmt::Display for RamificationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(u64::to_string).collect();
        write!(f, "|G|={} ({})", self.group_order, parts.join(","))
    }
}

/// The genus forced by Riemann-Hurwitz; negative means no such cover exists.
pub fn rh_genus(rt: &RamificationType) -> Result<i64, GenusError> {
    let chi = rt.euler_characteristic_term();
    if chi.rem_euclid(2) != 0 {
        return Err(GenusError::NonIntegralGenus(chi));
    }
    Ok(chi / 2 + 1)
}

/// All index multisets from `allowed` with `0 <= genus <= cap`.
///
/// The number of branch points is bounded by `2 + 2|G|`; in practice the
/// partial Riemann-Hurwitz sum cuts the search off at four or five.
pub fn enumerate_low_genus_types(order: u64, allowed: &[u64], cap: i64) -> Vec<RamificationType> {
    let mut orders: Vec<u64> = allowed.iter().copied().filter(|&e| e >= 2 && order.is_multiple_of(e)).collect();
    orders.sort_unstable();
    orders.dedup();
    let n = order as i64;
    let limit = 2 * cap - 2 + 2 * n;
    let max_r = 2 + 2 * order as usize;
    let mut out = Vec::new();
    let mut cur = Vec::new();
    #[allow(clippy::too_many_arguments)]
    fn go(
        start: usize,
        sum: i64,
        orders: &[u64],
        n: i64,
        limit: i64,
        max_r: usize,
        cur: &mut Vec<u64>,
        out: &mut Vec<RamificationType>,
    ) {
        if (sum - 2 * n) % 2 == 0 && sum - 2 * n >= -2 && (n == 1 || !cur.is_empty()) {
            out.push(RamificationType { group_order: n as u64, indices: cur.clone() });
        }
        if cur.len() == max_r {
            return;
        }
        for i in start..orders.len() {
            let term = n - n / orders[i] as i64;
            if sum + term > limit {
                break;
            }
            cur.push(orders[i]);
            go(i, sum + term, orders, n, limit, max_r, cur, out);
            cur.pop();
        }
    }
    go(0, 0, &orders, n, limit, max_r, &mut cur, &mut out);
    out.sort();
    out
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && prime_factors(n) == [n]
}

/// The base number field, described by coarse arithmetic features.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldContext {
    Rational,
    General {
        degree: u32,
        /// Rational primes ramified in k/Q, when known.
        ramified: Option<BTreeSet<u64>>,
        /// Whether k/Q may contain a nontrivial cyclic subextension.
        cyclic_subextension: bool,
        /// An asserted value of the prime set, replacing the derived bounds.
        prime_set: Option<BTreeSet<u64>>,
    },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneralRepr {
    degree: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    ramified: Option<BTreeSet<u64>>,
    #[serde(default = "yes")]
    cyclic_subextension: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    prime_set: Option<BTreeSet<u64>>,
}

fn yes() -> bool {
    true
}

impl FieldContext {
    pub fn general(degree: u32, ramified: Option<BTreeSet<u64>>) -> Self {
        FieldContext::General { degree, ramified, cyclic_subextension: true, prime_set: None }.normalized()
    }

    fn normalized(self) -> Self {
        match self {
            FieldContext::General { degree: 1, prime_set: None, .. } => FieldContext::Rational,
            other => other,
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldContext::Rational)
    }

    pub fn degree(&self) -> u32 {
        match self {
            FieldContext::Rational => 1,
            FieldContext::General { degree, .. } => *degree,
        }
    }

    /// Parses `Q` or a JSON object such as `{"degree":2,"ramified":[2,3,7]}`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let t = text.trim();
        if matches!(t, "Q" | "QQ" | "q" | "rational" | "\"Q\"") {
            return Ok(FieldContext::Rational);
        }
        let r: GeneralRepr = serde_json::from_str(t).map_err(|e| format!("bad field context: {e}"))?;
        if r.degree == 0 {
            return Err("field degree must be at least 1".into());
        }
        Ok(FieldContext::General {
            degree: r.degree,
            ramified: r.ramified,
            cyclic_subextension: r.cyclic_subextension,
            prime_set: r.prime_set,
        }
        .normalized())
    }
}

impl fmt::Display for FieldContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldContext::Rational => write!(f, "Q"),
            FieldContext::General { degree, .. } => write!(f, "number field of degree {degree}"),
        }
    }
}

impl Serialize for FieldContext {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            FieldContext::Rational => "Q".serialize(s),
            FieldContext::General { degree, ramified, cyclic_subextension, prime_set } => GeneralRepr {
                degree: *degree,
                ramified: ramified.clone(),
                cyclic_subextension: *cyclic_subextension,
                prime_set: prime_set.clone(),
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for FieldContext {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let text = match &v {
            serde_json::Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        FieldContext::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// The set S of primes p with [k(zeta_p):k] <= 2, or a certified superset.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeSet {
    pub primes: BTreeSet<u64>,
    /// False when `primes` is only known to contain S.
    pub exact: bool,
    pub rule: String,
}

impl PrimeSet {
    /// True when no prime factor of `n` can lie in S.
    pub fn avoided_by(&self, n: u64) -> bool {
        prime_factors(n).iter().all(|p| !self.primes.contains(p))
    }
}

pub fn prime_set_s(fc: &FieldContext) -> PrimeSet {
    let base: BTreeSet<u64> = [2, 3].into();
    match fc {
        FieldContext::Rational => PrimeSet { primes: base, exact: true, rule: "Prop 6.2(1)".into() },
        FieldContext::General { prime_set: Some(ps), .. } => {
            PrimeSet { primes: ps.union(&base).copied().collect(), exact: true, rule: "user-asserted".into() }
        }
        FieldContext::General { ramified: Some(r), .. } if r.iter().all(|p| *p == 2 || *p == 3) => {
            PrimeSet { primes: base, exact: true, rule: "Prop 6.2(2)".into() }
        }
        FieldContext::General { cyclic_subextension: false, .. } => {
            PrimeSet { primes: base, exact: true, rule: "Prop 6.2(3)".into() }
        }
        FieldContext::General { degree, ramified, .. } => {
            let bound = 2 * *degree as u64 + 1;
            let mut primes: BTreeSet<u64> = (2..=bound).filter(|&p| is_prime(p)).collect();
            let mut rule = "Prop 6.1(1)".to_string();
            if let Some(r) = ramified {
                primes.retain(|p| base.contains(p) || r.contains(p));
                rule = "Prop 6.1(1),(3)".into();
            }
            primes.extend(&base);
            let exact = primes == base;
            PrimeSet { primes, exact, rule }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GenusBound {
    AtLeastTwo,
    AtLeastOne,
    NoLowerBoundCertified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalGenusVerdict {
    pub bound: GenusBound,
    /// Which rule fired; `None` only for `NoLowerBoundCertified`.
    pub reason: Option<String>,
    pub detail: String,
    pub field: FieldContext,
}

impl MinimalGenusVerdict {
    fn fired(bound: GenusBound, reason: &str, detail: String, fc: &FieldContext) -> Self {
        MinimalGenusVerdict { bound, reason: Some(reason.into()), detail, field: fc.clone() }
    }

    pub fn at_least_two(&self) -> bool {
        self.bound == GenusBound::AtLeastTwo
    }

    pub fn at_least_one(&self) -> bool {
        self.bound != GenusBound::NoLowerBoundCertified
    }
}

/// Abelian invariant chains allowed in genus at most one.
fn abelian_low_genus(chain: &[u64], rational: bool) -> bool {
    if rational {
        matches!(chain, [2] | [3] | [4] | [6] | [2, 2] | [2, 2, 2])
    } else {
        chain.len() == 1 || matches!(chain, [2, 2] | [2, 4] | [3, 3] | [2, 2, 2])
    }
}

/// If `g` is dihedral of order `2n` with `n >= 3`, returns `n`.
pub fn dihedral_degree(g: &PermGroup, limits: &Limits) -> Result<Option<u64>, GroupError> {
    let e = g.elements(limits)?;
    let order = e.len() as u64;
    if order < 6 || !order.is_multiple_of(2) {
        return Ok(None);
    }
    let n = order / 2;
    let Some(r) = (0..e.len() as u32).find(|&x| e.order_of(x) == n) else {
        return Ok(None);
    };
    let rp = e.perm(r);
    let rinv = rp.inverse();
    let rotations: BTreeSet<u32> = (0..n as i64).map(|i| e.pow(r, i)).collect();
    // every element outside <r> must be an involution inverting r
    let ok = (0..e.len() as u32)
        .filter(|x| !rotations.contains(x))
        .all(|s| e.order_of(s) == 2 && rp.conjugate_by(e.perm(s)) == rinv);
    Ok(ok.then_some(n))
}

fn same_as(g: &PermGroup, d: GroupDescriptor, limits: &Limits) -> Result<bool, GroupError> {
    let h = materialize(&d, limits)?;
    if h.order(limits)? != g.order(limits)? {
        return Ok(false);
    }
    is_isomorphic(g, &h, limits)
}

/// Certified lower bound on the minimal genus of `g` over `fc`.
pub fn minimal_genus_lower_bound(
    g: &PermGroup,
    fc: &FieldContext,
    limits: &Limits,
) -> Result<MinimalGenusVerdict, GroupError> {
    let order = g.order(limits)? as u64;
    let q = fc.is_rational();
    let none = MinimalGenusVerdict {
        bound: GenusBound::NoLowerBoundCertified,
        reason: None,
        detail: String::new(),
        field: fc.clone(),
    };
    if order == 1 {
        return Ok(MinimalGenusVerdict { detail: "trivial group".into(), ..none });
    }
    use GenusBound::*;
    if let Some(chain) = abelian_invariants(g, limits)? {
        if !abelian_low_genus(&chain, q) {
            let tag = if q { "Prop 7.4(2)" } else { "Prop 7.4(1)" };
            let name = GroupDescriptor::Abelian(chain).to_string();
            return Ok(MinimalGenusVerdict::fired(
                AtLeastTwo,
                tag,
                format!("abelian group {name} is outside the genus <= 1 list"),
                fc,
            ));
        }
        // cyclic, on the list
        if chain.len() == 1 {
            let s = prime_set_s(fc);
            if s.avoided_by(order) {
                return Ok(MinimalGenusVerdict::fired(
                    AtLeastTwo,
                    "Sec 6.2.1",
                    format!(
                        "cyclic of order {order} with no prime factor in S = {:?}; the branch cycle lemma forces at least 3 branch points",
                        s.primes
                    ),
                    fc,
                ));
            }
        }
    }
    let solvable = is_solvable(g, limits)?;
    if q && !(solvable && order.is_multiple_of(2)) && !(order == 3) {
        return Ok(MinimalGenusVerdict::fired(
            AtLeastTwo,
            "Prop 7.3(2)",
            "over Q, genus <= 1 needs a solvable group of even order or Z/3".into(),
            fc,
        ));
    }
    if !solvable && order != 60 {
        // A_5 is the only non-solvable group of order 60
        return Ok(MinimalGenusVerdict::fired(AtLeastTwo, "Prop 7.3(1)", "non-solvable and not A_5".into(), fc));
    }
    if !order.is_multiple_of(2) && !order.is_multiple_of(3) {
        // genus 0 in odd order forces a cyclic group; genus 1 needs elements of order 2 or 3
        let cyclic = abelian_invariants(g, limits)?.is_some_and(|c| c.len() == 1);
        if !cyclic {
            return Ok(MinimalGenusVerdict::fired(
                AtLeastTwo,
                "Prop 7.1(1)+7.2(1)",
                format!("order {order} is coprime to 6 and the group is not cyclic"),
                fc,
            ));
        }
    }
    // genus 0 list
    let chain = abelian_invariants(g, limits)?;
    let genus_zero = if q {
        let ok_n = |n: u64| matches!(n, 2 | 3 | 4 | 6);
        match &chain {
            Some(c) if c.len() == 1 => ok_n(c[0]),
            Some(c) => c == &[2, 2],
            None => {
                dihedral_degree(g, limits)?.is_some_and(ok_n)
                    || (order == 12 && same_as(g, GroupDescriptor::Alternating(4), limits)?)
                    || (order == 24 && same_as(g, GroupDescriptor::Symmetric(4), limits)?)
            }
        }
    } else {
        match &chain {
            Some(c) => c.len() == 1 || c == &[2, 2],
            None => {
                dihedral_degree(g, limits)?.is_some()
                    || (order == 12 && same_as(g, GroupDescriptor::Alternating(4), limits)?)
                    || (order == 24 && same_as(g, GroupDescriptor::Symmetric(4), limits)?)
                    || (order == 60 && !solvable)
            }
        }
    };
    if !genus_zero {
        let tag = if q { "Prop 7.1(2)" } else { "Prop 7.1(1)" };
        return Ok(MinimalGenusVerdict::fired(AtLeastOne, tag, "not on the genus 0 list".into(), fc));
    }
    Ok(MinimalGenusVerdict { detail: "on the genus 0 list".into(), ..none })
}

/// Like [`minimal_genus_lower_bound`], with shortcuts for large symmetric,
/// alternating and linear groups that cannot be enumerated.
pub fn minimal_genus_for_descriptor(
    d: &GroupDescriptor,
    fc: &FieldContext,
    limits: &Limits,
) -> Result<MinimalGenusVerdict, GroupError> {
    let too_big = d.declared_order().is_some_and(|o| o > limits.enumeration as u128);
    let nonsolvable_big = match d {
        GroupDescriptor::Symmetric(n) => *n >= 5,
        GroupDescriptor::Alternating(n) => *n >= 6,
        GroupDescriptor::Gl(n, q) => !(*n == 2 && (*q == 2 || *q == 3)),
        _ => false,
    };
    if too_big && nonsolvable_big {
        let tag = if fc.is_rational() { "Prop 7.3(2)" } else { "Prop 7.3(1)" };
        return Ok(MinimalGenusVerdict::fired(
            GenusBound::AtLeastTwo,
            tag,
            format!("{d} is non-solvable and not A_5"),
            fc,
        ));
    }
    if too_big {
        if let Some(chain) = d.abelian_chain() {
            if !abelian_low_genus(&chain, fc.is_rational()) {
                let tag = if fc.is_rational() { "Prop 7.4(2)" } else { "Prop 7.4(1)" };
                return Ok(MinimalGenusVerdict::fired(
                    GenusBound::AtLeastTwo,
                    tag,
                    format!("abelian group {d} is outside the genus <= 1 list"),
                    fc,
                ));
            }
        }
    }
    minimal_genus_lower_bound(&materialize(d, limits)?, fc, limits)
}
