use serde::Serialize;

use crate::group::Limits;
use crate::hyper::FactorLimits;

/// Bounds read from a `key=value` file. Blank lines and `#` comments are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Config {
    pub limits: Limits,
    pub factor: FactorLimits,
    /// Default height bound for point and specialization sweeps.
    pub height: i128,
}

impl Default for Config {
    fn default() -> Self {
        Config { limits: Limits::default(), factor: FactorLimits::default(), height: 100 }
    }
}

impl Config {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut c = Config::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| format!("line {}: expected key=value", n + 1))?;
            let (key, value) = (key.trim(), value.trim().replace('_', ""));
            let bad = |e: std::num::ParseIntError| format!("line {}: {key}: {e}", n + 1);
            match key {
                "enumeration" => c.limits.enumeration = value.parse().map_err(bad)?,
                "brute_force" => c.limits.brute_force = value.parse().map_err(bad)?,
                "max_normal_subgroups" => c.limits.max_normal_subgroups = value.parse().map_err(bad)?,
                "height" => c.height = value.parse().map_err(bad)?,
                "factorization" | "trial_bound" => c.factor.trial_bound = value.parse().map_err(bad)?,
                other => return Err(format!("line {}: unknown key {other:?}", n + 1)),
            }
        }
        if c.height < 1 {
            return Err("height must be positive".into());
        }
        Ok(c)
    }
}
