use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::arith::{exact_sqrt, squarefree_part_with, FactorLimits, Rational, SquarefreeD};
use super::poly::SeparablePoly;
use super::HyperError;

/// Heights handled per parallel batch in first-hit searches.
const BATCH: i128 = 32;

/// A specialization point: a rational number or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecPoint {
    Infinity,
    Finite(Rational),
}

impl fmt::Display for SpecPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecPoint::Infinity => write!(f, "infinity"),
            SpecPoint::Finite(q) => write!(f, "{q}"),
        }
    }
}

impl Serialize for SpecPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SpecPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        if text == "infinity" {
            return Ok(SpecPoint::Infinity);
        }
        super::rational_serde::parse(&text).map(SpecPoint::Finite).map_err(serde::de::Error::custom)
    }
}

/// `[y : t : z]` in weighted projective coordinates, normalized to
/// `gcd(t, z) = 1` with `z > 0`, or `(t, z) = (1, 0)`, and `y >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedPoint {
    pub y: i128,
    pub t: i128,
    pub z: i128,
    pub trivial: bool,
}

/// The twist `Y^2 = d P(T, Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HyperCurve {
    pub poly: SeparablePoly,
    pub d: SquarefreeD,
}

impl HyperCurve {
    pub fn new(poly: SeparablePoly, d: SquarefreeD) -> Self {
        HyperCurve { poly, d }
    }

    /// The weight of `Y`.
    pub fn weight(&self) -> u32 {
        self.poly.weight()
    }

    fn rhs(&self, t: i128, z: i128) -> Result<i128, HyperError> {
        self.poly.weighted(t, z)?.checked_mul(self.d.value()).ok_or(HyperError::Overflow)
    }

    fn point_at(&self, t: i128, z: i128) -> Result<Option<WeightedPoint>, HyperError> {
        Ok(exact_sqrt(self.rhs(t, z)?).map(|y| WeightedPoint { y, t, z, trivial: y == 0 }))
    }

    pub fn contains(&self, p: &WeightedPoint) -> bool {
        self.rhs(p.t, p.z).is_ok_and(|v| p.y.checked_mul(p.y) == Some(v))
    }

    /// Whether `(lambda^w y, lambda t, lambda z)` with `lambda = a/b` still
    /// satisfies the equation; clearing `b^(2w)` leaves `(a^w y)^2 = d P(a t, a z)`.
    pub fn contains_scaled(&self, p: &WeightedPoint, a: i128) -> Result<bool, HyperError> {
        let y = a.checked_pow(self.weight()).and_then(|s| s.checked_mul(p.y)).ok_or(HyperError::Overflow)?;
        let t = a.checked_mul(p.t).ok_or(HyperError::Overflow)?;
        let z = a.checked_mul(p.z).ok_or(HyperError::Overflow)?;
        Ok(y.checked_mul(y) == Some(self.rhs(t, z)?))
    }
}

/// Coprime pairs `(t, z)` with `z > 0` and `max(|t|, z) = h`, by numerator.
fn band(h: i128) -> Vec<(i128, i128)> {
    if h == 1 {
        return vec![(-1, 1), (0, 1), (1, 1)];
    }
    let hh = h as u64;
    let coprime = |x: i128| num_integer::gcd(x.unsigned_abs() as u64, hh) == 1;
    let side: Vec<i128> = (1..h).filter(|&z| coprime(z)).collect();
    let mut out: Vec<(i128, i128)> = side.iter().map(|&z| (-h, z)).collect();
    out.extend((1 - h..h).filter(|&t| coprime(t)).map(|t| (t, h)));
    out.extend(side.iter().map(|&z| (h, z)));
    out
}

fn check_bound(bound: i128) -> Result<(), HyperError> {
    if bound < 1 {
        Err(HyperError::InvalidBound)
    } else {
        Ok(())
    }
}

/// The first hit in sweep order: increasing height, then numerator.
fn first_in_sweep<T, F>(bound: i128, f: F) -> Result<Option<T>, HyperError>
where
    T: Send,
    F: Fn(i128, i128) -> Result<Option<T>, HyperError> + Sync,
{
    let mut lo = 1;
    while lo <= bound {
        let hi = (lo + BATCH - 1).min(bound);
        let hits = (lo..=hi)
            .into_par_iter()
            .map(|h| {
                for (t, z) in band(h) {
                    if let Some(x) = f(t, z)? {
                        return Ok(Some(x));
                    }
                }
                Ok(None)
            })
            .collect::<Result<Vec<Option<T>>, HyperError>>()?;
        if let Some(x) = hits.into_iter().flatten().next() {
            return Ok(Some(x));
        }
        lo = hi + 1;
    }
    Ok(None)
}

/// Every hit in sweep order.
fn all_in_sweep<T, F>(bound: i128, f: F) -> Result<Vec<T>, HyperError>
where
    T: Send,
    F: Fn(i128, i128) -> Result<Option<T>, HyperError> + Sync,
{
    let per_height = (1..=bound)
        .into_par_iter()
        .map(|h| band(h).into_iter().filter_map(|(t, z)| f(t, z).transpose()).collect())
        .collect::<Result<Vec<Vec<T>>, HyperError>>()?;
    Ok(per_height.into_iter().flatten().collect())
}

/// All points with `max(|t|, |z|) <= bound`, the point with `z = 0` first.
pub fn point_search(curve: &HyperCurve, bound: i128) -> Result<Vec<WeightedPoint>, HyperError> {
    check_bound(bound)?;
    let mut out: Vec<WeightedPoint> = curve.point_at(1, 0)?.into_iter().collect();
    out.extend(all_in_sweep(bound, |t, z| curve.point_at(t, z))?);
    Ok(out)
}

pub fn first_nontrivial_point(curve: &HyperCurve, bound: i128) -> Result<Option<WeightedPoint>, HyperError> {
    check_bound(bound)?;
    if let Some(p) = curve.point_at(1, 0)?.filter(|p| !p.trivial) {
        return Ok(Some(p));
    }
    first_in_sweep(bound, |t, z| Ok(curve.point_at(t, z)?.filter(|p| !p.trivial)))
}

/// Squarefree part of `P(t0)`; 1 means the specialized algebra is split.
pub fn specialize(p: &SeparablePoly, t0: &Rational) -> Result<SquarefreeD, HyperError> {
    specialize_with(p, t0, &FactorLimits::default())
}

pub fn specialize_with(p: &SeparablePoly, t0: &Rational, lim: &FactorLimits) -> Result<SquarefreeD, HyperError> {
    let v = p.eval(t0)?;
    if *v.numer() == 0 {
        return Err(HyperError::BranchPoint);
    }
    squarefree_part_with(&v, lim)
}

/// Squarefree part of the leading coefficient, for even degree.
pub fn specialize_infinity(p: &SeparablePoly) -> Result<SquarefreeD, HyperError> {
    infinity_with(p, &FactorLimits::default())
}

fn infinity_with(p: &SeparablePoly, lim: &FactorLimits) -> Result<SquarefreeD, HyperError> {
    if p.degree() % 2 == 1 {
        return Err(HyperError::OddDegree);
    }
    squarefree_part_with(&Rational::from_integer(p.leading()), lim)
}

pub fn specialize_at(p: &SeparablePoly, t0: &SpecPoint) -> Result<SquarefreeD, HyperError> {
    specialize_at_with(p, t0, &FactorLimits::default())
}

pub fn specialize_at_with(p: &SeparablePoly, t0: &SpecPoint, lim: &FactorLimits) -> Result<SquarefreeD, HyperError> {
    match t0 {
        SpecPoint::Infinity => infinity_with(p, lim),
        SpecPoint::Finite(q) => specialize_with(p, q, lim),
    }
}

fn specialize_pair(p: &SeparablePoly, t: i128, z: i128, lim: &FactorLimits) -> Result<Option<SquarefreeD>, HyperError> {
    match specialize_with(p, &Rational::new(t, z), lim) {
        Ok(d) => Ok(Some(d)),
        Err(HyperError::BranchPoint) => Ok(None),
        Err(e) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realized {
    pub d: SquarefreeD,
    /// The first specialization point in sweep order giving `d`.
    pub witness: SpecPoint,
    /// `d = 1`: the specialization is split, not a quadratic extension.
    pub degenerate: bool,
}

/// Every squarefree part of `P(t0)` over `t0` of height at most `bound`, and
/// infinity for even degree, in increasing order of `d`.
pub fn realized_discriminants(p: &SeparablePoly, bound: i128) -> Result<Vec<Realized>, HyperError> {
    realized_discriminants_with(p, bound, &FactorLimits::default())
}

pub fn realized_discriminants_with(
    p: &SeparablePoly,
    bound: i128,
    lim: &FactorLimits,
) -> Result<Vec<Realized>, HyperError> {
    check_bound(bound)?;
    let mut found: BTreeMap<SquarefreeD, SpecPoint> = BTreeMap::new();
    if p.degree().is_multiple_of(2) {
        found.insert(infinity_with(p, lim)?, SpecPoint::Infinity);
    }
    let hits = all_in_sweep(bound, |t, z| {
        Ok(specialize_pair(p, t, z, lim)?.map(|d| (d, SpecPoint::Finite(Rational::new(t, z)))))
    })?;
    for (d, w) in hits {
        found.entry(d).or_insert(w);
    }
    Ok(found.into_iter().map(|(d, witness)| Realized { d, witness, degenerate: d.is_one() }).collect())
}

/// The first `t0` in sweep order with `Q(sqrt(P(t0))) = Q(sqrt(d))`.
pub fn first_specialization(p: &SeparablePoly, d: SquarefreeD, bound: i128) -> Result<Option<SpecPoint>, HyperError> {
    first_specialization_with(p, d, bound, &FactorLimits::default())
}

fn first_specialization_with(
    p: &SeparablePoly,
    d: SquarefreeD,
    bound: i128,
    lim: &FactorLimits,
) -> Result<Option<SpecPoint>, HyperError> {
    check_bound(bound)?;
    if p.degree().is_multiple_of(2) && infinity_with(p, lim)? == d {
        return Ok(Some(SpecPoint::Infinity));
    }
    first_in_sweep(bound, |t, z| {
        Ok((specialize_pair(p, t, z, lim)? == Some(d)).then(|| SpecPoint::Finite(Rational::new(t, z))))
    })
}

/// The point `[y : t0 : 1]` scaled to integer coordinates, or `[y : 1 : 0]` at infinity.
fn point_from_specialization(curve: &HyperCurve, t0: &SpecPoint) -> Result<Option<WeightedPoint>, HyperError> {
    let (t, z) = match t0 {
        SpecPoint::Infinity => (1, 0),
        SpecPoint::Finite(q) => (*q.numer(), *q.denom()),
    };
    Ok(curve.point_at(t, z)?.filter(|p| !p.trivial))
}

fn specialization_from_point(p: &WeightedPoint) -> SpecPoint {
    if p.z == 0 {
        SpecPoint::Infinity
    } else {
        SpecPoint::Finite(Rational::new(p.t, p.z))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistReport {
    pub d: SquarefreeD,
    pub bound: i128,
    /// `Q(sqrt(d))` is a specialization at some `t0` of height at most `bound`.
    pub realized: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_t: Option<SpecPoint>,
    /// The twist has a non-trivial point of height at most `bound`.
    pub has_point: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_point: Option<WeightedPoint>,
    pub agree: bool,
    /// Each witness was carried to the other side and checked there.
    pub conversions_checked: bool,
    pub note: String,
}

/// Both sides of the specialization / twisted point correspondence at the same height bound.
pub fn twist_correspondence_check(p: &SeparablePoly, d: SquarefreeD, bound: i128) -> Result<TwistReport, HyperError> {
    twist_correspondence_check_with(p, d, bound, &FactorLimits::default())
}

pub fn twist_correspondence_check_with(
    p: &SeparablePoly,
    d: SquarefreeD,
    bound: i128,
    lim: &FactorLimits,
) -> Result<TwistReport, HyperError> {
    if d.is_one() {
        return Err(HyperError::TrivialTwist);
    }
    let curve = HyperCurve::new(p.clone(), d);
    let witness_t = first_specialization_with(p, d, bound, lim)?;
    let witness_point = first_nontrivial_point(&curve, bound)?;
    let mut conversions_checked = true;
    if let Some(t0) = &witness_t {
        conversions_checked &= point_from_specialization(&curve, t0)?.is_some_and(|q| curve.contains(&q));
    }
    if let Some(pt) = &witness_point {
        conversions_checked &= specialize_at_with(p, &specialization_from_point(pt), lim)? == d;
    }
    let (realized, has_point) = (witness_t.is_some(), witness_point.is_some());
    let note = match (realized, has_point) {
        (true, true) => format!(
            "Q(sqrt({d})) is the specialization at {} and the twist has a non-trivial point",
            witness_t.expect("realized")
        ),
        (false, false) => format!("no specialization and no non-trivial point of height <= {bound}"),
        _ => format!("the two sides disagree at height <= {bound}"),
    };
    Ok(TwistReport {
        d,
        bound,
        realized,
        witness_t,
        has_point,
        witness_point,
        agree: realized == has_point,
        conversions_checked,
        note,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skipped {
    pub d: i128,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistScan {
    pub polynomial: String,
    pub coefficients: SeparablePoly,
    pub bound: i128,
    pub records: Vec<TwistReport>,
    pub skipped: Vec<Skipped>,
}

/// The correspondence check for every squarefree `d != 1` in `ds`.
pub fn twist_scan(p: &SeparablePoly, ds: impl IntoIterator<Item = i128>, bound: i128) -> Result<TwistScan, HyperError> {
    twist_scan_with(p, ds, bound, &FactorLimits::default())
}

pub fn twist_scan_with(
    p: &SeparablePoly,
    ds: impl IntoIterator<Item = i128>,
    bound: i128,
    lim: &FactorLimits,
) -> Result<TwistScan, HyperError> {
    check_bound(bound)?;
    let mut todo = Vec::new();
    let mut skipped = Vec::new();
    for d in ds {
        match SquarefreeD::new(d) {
            Ok(sd) if sd.is_one() => skipped.push(Skipped { d, reason: "trivial twist".into() }),
            Ok(sd) => todo.push(sd),
            Err(_) => skipped.push(Skipped { d, reason: "not squarefree".into() }),
        }
    }
    let records = todo
        .into_par_iter()
        .map(|d| twist_correspondence_check_with(p, d, bound, lim))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TwistScan { polynomial: p.to_string(), coefficients: p.clone(), bound, records, skipped })
}
