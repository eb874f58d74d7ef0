use serde::{Deserialize, Serialize};

use super::poly::{BranchPoints, SeparablePoly};
use super::HyperError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Prop81Class {
    Parametric,
    NonParametric,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prop81Report {
    pub polynomial: String,
    pub degree: usize,
    pub branch_points: BranchPoints,
    pub classification: Prop81Class,
    pub route: String,
    /// The cubic obtained by sending a rational root to infinity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<SeparablePoly>,
    pub note: String,
}

/// Parametric iff there are exactly two branch points and both are rational.
pub fn prop81_classify(p: &SeparablePoly) -> Result<Prop81Report, HyperError> {
    let degree = p.degree();
    if degree > 4 {
        return Err(HyperError::DegreeTooHigh(degree));
    }
    let branch_points = p.branch_points();
    let parametric = branch_points.count() == 2 && branch_points.rational_count() == 2;
    let mut normalized = None;
    let (route, note) = match degree {
        _ if parametric => (
            "two rational branch points",
            "every quadratic extension of Q is a specialization (conic with a rational point)".to_string(),
        ),
        2 => (
            "degree-2 irrational",
            "the two branch points are conjugate; infinitely many quadratic fields are missed".to_string(),
        ),
        3 => ("elliptic", "four branch points; twists with no non-trivial point are missed".to_string()),
        4 => match branch_points.rational.first() {
            Some(root) => {
                let cubic = p.move_root_to_infinity(root)?;
                let note = format!("root {root} moved to infinity gives {cubic}; reduces to the cubic case");
                normalized = Some(cubic);
                ("elliptic", note)
            }
            None => (
                "twisted quartic",
                "no rational branch point; twists of the quartic with no non-trivial point are missed".to_string(),
            ),
        },
        _ => unreachable!("degree 1 has two rational branch points"),
    };
    Ok(Prop81Report {
        polynomial: p.to_string(),
        degree,
        branch_points,
        classification: if parametric { Prop81Class::Parametric } else { Prop81Class::NonParametric },
        route: route.to_string(),
        normalized,
        note,
    })
}
