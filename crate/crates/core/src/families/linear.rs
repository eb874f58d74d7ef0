use serde::{Deserialize, Serialize};

use crate::group::{center, is_solvable, materialize, quotient, GroupDescriptor, Limits};

/// The three center conditions for `GL_n(F_q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GlCenterCheck {
    /// The center (the scalars) is nontrivial.
    pub center_nontrivial: bool,
    /// `G/Z(G)` is non-solvable and not `A_5`.
    pub quotient_large: bool,
    /// The over-Q variant: `G/Z(G)` is neither solvable of even order nor of order at most 3.
    pub rational_variant: bool,
    /// Set when the closed forms were compared against the materialized group.
    pub brute_force: Option<bool>,
}

/// Closed forms: the center has order `q - 1`; `PGL_2(F_q)` is solvable for
/// `q <= 3` and `PGL_2(F_4)` is `A_5`.
pub fn gl_center_check(n: u32, q: u32, limits: &Limits) -> GlCenterCheck {
    let center_nontrivial = q >= 3;
    let quotient_large = !(n == 2 && (q == 2 || q == 3 || q == 4));
    let rational_variant = !(n == 2 && (q == 2 || q == 3));
    let mut out = GlCenterCheck { center_nontrivial, quotient_large, rational_variant, brute_force: None };
    let desc = GroupDescriptor::Gl(n, q);
    if let Ok(g) = materialize(&desc, limits) {
        out.brute_force = (|| {
            let z = center(&g, limits).ok()?;
            let pg = quotient(&g, &z, limits).ok()?;
            let solvable = is_solvable(&pg, limits).ok()?;
            let order = pg.order(limits).ok()?;
            let agrees = (z.len() > 1) == center_nontrivial
                && (!solvable && order != 60) == quotient_large
                && !(solvable && order % 2 == 0 || order <= 3) == rational_variant;
            Some(agrees)
        })();
    }
    out
}
