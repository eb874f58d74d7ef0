use serde::Serialize;

use super::checks::{check_t32, check_t34, check_t36, check_t37, check_t38};
use super::{Certificate, Context, CriteriaError, Subject, Theorem};
use crate::group::{normal_subgroups, Subset};

/// One criterion tried against one kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attempt {
    pub theorem: Theorem,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_order: Option<usize>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum AuditOutcome {
    Certified { certificate: Box<Certificate> },
    Refused { attempts: Vec<Attempt> },
}

fn refusal(e: CriteriaError) -> Result<String, CriteriaError> {
    match e {
        CriteriaError::Group(g) => Err(CriteriaError::Group(g)),
        other => Ok(other.to_string()),
    }
}

/// Tries the genus criteria over the nontrivial proper normal subgroups by
/// increasing order, then the unique index-two criterion, then the class
/// criteria. The first certificate wins; otherwise every failed attempt is
/// reported.
pub fn audit(subject: &Subject, ctx: &Context) -> Result<AuditOutcome, CriteriaError> {
    let g = subject.group;
    let order = g.order(ctx.limits)?;
    let mut kernels: Vec<Subset> =
        normal_subgroups(g, ctx.limits)?.into_iter().filter(|h| h.len() > 1 && h.len() < order).collect();
    kernels.sort_by_key(|h| h.len());
    let mut attempts = Vec::new();

    type KernelCheck = fn(&Subject, &Subset, &Context) -> Result<Certificate, CriteriaError>;
    let t34: KernelCheck = |s, h, c| check_t34(s, h, c, c.assertions.local_evidence.as_ref());
    let t36: KernelCheck = |s, h, c| check_t36(s, h, c, None);
    let t37: KernelCheck = |s, h, c| check_t37(s, h, c, None);
    let per_kernel: [(Theorem, KernelCheck); 2] = [(Theorem::T32, check_t32), (Theorem::T34, t34)];
    let class_based: [(Theorem, KernelCheck); 2] = [(Theorem::T36, t36), (Theorem::T37, t37)];

    for (theorem, check) in per_kernel {
        for h in &kernels {
            match check(subject, h, ctx) {
                Ok(c) => return Ok(AuditOutcome::Certified { certificate: Box::new(c) }),
                Err(e) => attempts.push(Attempt { theorem, kernel_order: Some(h.len()), reason: refusal(e)? }),
            }
        }
    }
    match check_t38(subject, ctx, None) {
        Ok(c) => return Ok(AuditOutcome::Certified { certificate: Box::new(c) }),
        Err(e) => attempts.push(Attempt { theorem: Theorem::T38, kernel_order: None, reason: refusal(e)? }),
    }
    for (theorem, check) in class_based {
        for h in &kernels {
            match check(subject, h, ctx) {
                Ok(c) => return Ok(AuditOutcome::Certified { certificate: Box::new(c) }),
                Err(e) => attempts.push(Attempt { theorem, kernel_order: Some(h.len()), reason: refusal(e)? }),
            }
        }
    }
    if kernels.is_empty() {
        attempts.push(Attempt {
            theorem: Theorem::T32,
            kernel_order: None,
            reason: "no nontrivial proper normal subgroup".into(),
        });
    }
    Ok(AuditOutcome::Refused { attempts })
}
