//! Command-line front end. Every command prints one JSON document; exit code
//! 0 means success or a certificate, 2 an honest refusal, 1 an error.

mod config;

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

pub use config::Config;

use crate::criteria::{audit, Assertions, AuditOutcome, Context, Subject};
use crate::families::{
    abelian_groups_of_order, abelian_suitable_quotient, classify_with, sn_select_classes, validate_chain,
    AbelianQuotient, FamilyVerdict,
};
use crate::genus::{
    enumerate_low_genus_types, minimal_genus_for_descriptor, prime_set_s, rh_genus, FieldContext, RamificationType,
};
use crate::group::{
    fiber_power, materialize, normal_subgroups, subgroup_generated, GeneratorSpec, GroupDescriptor, PermSpec,
};
use crate::hyper::{prop81_classify, rational_serde, specialize_at_with, twist_scan_with, SeparablePoly, SpecPoint};

pub const VERSION: &str = concat!("nonparam ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Parser)]
#[command(name = "nonparam", version, about = "Non-parametricity certificates and quadratic twist search")]
struct Cli {
    /// key=value file with bounds: enumeration, brute_force, max_normal_subgroups, height, factorization.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GroupArgs {
    /// Group descriptor as JSON, e.g. '{"dihedral":15}' or '{"abelian":[2,4]}'.
    #[arg(long)]
    group: String,
    /// `Q` or a JSON field context such as '{"degree":2,"ramified":[2,3,7]}'.
    #[arg(long, default_value = "Q")]
    field: String,
    /// JSON file with assertions for hypotheses the tool cannot decide.
    #[arg(long = "assert")]
    assertions: Option<PathBuf>,
    /// Write the JSON report to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PolyArgs {
    /// Expression in T, e.g. "T^3-T".
    #[arg(long, conflicts_with = "coeffs", required_unless_present = "coeffs")]
    poly: Option<String>,
    /// Coefficients a0,a1,...,an.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Try every criterion against the normal subgroups of one group.
    Audit {
        #[command(flatten)]
        group: GroupArgs,
        /// Record every kernel with an isomorphic quotient in the certificate.
        #[arg(long)]
        scan_alternatives: bool,
    },
    /// Decide membership in the covered families.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Classify every listed group with order in a range such as 1..200.
    ClassifyAll {
        /// Inclusive order range, e.g. 1..200.
        #[arg(long)]
        orders: String,
        /// Skip the dihedral, symmetric and alternating groups.
        #[arg(long)]
        abelian_only: bool,
        #[arg(long, default_value = "Q")]
        field: String,
        /// Write the JSON report to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Genus of a ramification type, or the minimal genus bound of a group.
    Genus {
        #[arg(long, requires = "ram", conflicts_with = "group")]
        order: Option<u64>,
        /// Ramification indices, e.g. 2,2,2,2.
        #[arg(long)]
        ram: Option<String>,
        #[arg(long, required_unless_present = "order")]
        group: Option<String>,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// All ramification types of genus at most the cap.
    GenusTable {
        #[arg(long)]
        order: u64,
        /// Allowed ramification indices, comma separated.
        #[arg(long)]
        element_orders: String,
        #[arg(long, default_value_t = 1)]
        cap: i64,
    },
    /// The prime set S of a number field
    PrimeSet {
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Cycle types for the symmetric group class criterion.
    SnClasses {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 5)]
        count: usize,
    },
    /// Look for a suitable quotient of a finite abelian group
    AbelianQuotient {
        /// Invariant factors, e.g. 4,8.
        #[arg(long)]
        invariants: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Fiber power of G over G/H with its invariants checked.
    FiberPower {
        #[arg(long)]
        group: String,
        /// Use the first normal subgroup of this order.
        #[arg(long, conflicts_with = "kernel", required_unless_present = "kernel")]
        kernel_order: Option<usize>,
        /// Generators of H as a JSON list of image lists or cycle strings.
        #[arg(long)]
        kernel: Option<String>,
        /// Number of factors.
        #[arg(long)]
        n: usize,
        /// Write the JSON report to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Both sides of the specialization / twisted point correspondence for a range of d.
    TwistScan {
        #[command(flatten)]
        poly: PolyArgs,
        /// Range lo:hi, inclusive.
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        /// Height bound for both searches.
        #[arg(long)]
        height: Option<i128>,
        /// Write the JSON report to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Squarefree class of P(t0) for one value t0
    Specialize {
        #[command(flatten)]
        poly: PolyArgs,
        /// A rational a/b, or "infinity".
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Parametricity for at most four branch points.
    Prop81 {
        #[command(flatten)]
        poly: PolyArgs,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Runtime(String),
}

fn usage(e: impl Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn runtime(e: impl Display) -> Failure {
    Failure::Runtime(e.to_string())
}

/// A finished command: the JSON payload, where it goes, and the exit code.
struct Report {
    text: String,
    out: Option<PathBuf>,
    code: i32,
}

impl Report {
    fn ok(payload: impl Serialize) -> Result<Self, Failure> {
        Self::with(payload, None, 0)
    }

    fn with(payload: impl Serialize, out: Option<PathBuf>, code: i32) -> Result<Self, Failure> {
        let mut text = serde_json::to_string_pretty(&payload).map_err(runtime)?;
        text.push('\n');
        Ok(Report { text, out, code })
    }
}

#[derive(Serialize)]
struct BatchRecord {
    group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<FamilyVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

#[derive(Serialize, Default)]
struct Summary {
    covered: usize,
    exception: usize,
    not_covered: usize,
    errors: usize,
}

#[derive(Serialize)]
struct BatchReport {
    tool_version: &'static str,
    config: serde_json::Value,
    records: Vec<BatchRecord>,
    summary: Summary,
}

/// Runs the command line `argv` (program name first), writing to the given streams.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(stdout, "{text}");
            } else {
                let _ = writeln!(stderr, "{}", json!({"error": "usage", "message": text.trim_end()}));
            }
            return code;
        }
    };
    let result = load_config(cli.config.as_deref()).and_then(|cfg| execute(cli.command, &cfg));
    match result.and_then(|r| deliver(r, stdout)) {
        Ok(code) => code,
        Err(f) => {
            let (kind, message) = match f {
                Failure::Usage(m) => ("usage", m),
                Failure::Runtime(m) => ("runtime", m),
            };
            let _ = writeln!(stderr, "{}", json!({"error": kind, "message": message}));
            1
        }
    }
}

/// Runs against the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

fn deliver(r: Report, stdout: &mut dyn Write) -> Result<i32, Failure> {
    match &r.out {
        Some(path) => std::fs::write(path, &r.text).map_err(|e| runtime(format!("{}: {e}", path.display())))?,
        None => stdout.write_all(r.text.as_bytes()).map_err(runtime)?,
    }
    Ok(r.code)
}

fn load_config(path: Option<&Path>) -> Result<Config, Failure> {
    match path {
        None => Ok(Config::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            Config::parse(&text).map_err(usage)
        }
    }
}

fn parse_group(text: &str) -> Result<GroupDescriptor, Failure> {
    let d: GroupDescriptor = serde_json::from_str(text).map_err(|e| usage(format!("bad group descriptor: {e}")))?;
    d.validate().map_err(usage)?;
    Ok(d)
}

fn parse_list<T: std::str::FromStr>(text: &str) -> Result<Vec<T>, Failure>
where
    T::Err: Display,
{
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<T>().map_err(|e| usage(format!("bad list entry {s:?}: {e}"))))
        .collect()
}

fn parse_range(text: &str, sep: &str) -> Result<(i128, i128), Failure> {
    let (a, b) = text.split_once(sep).ok_or_else(|| usage(format!("expected lo{sep}hi, got {text:?}")))?;
    let lo: i128 = a.trim().parse().map_err(|e| usage(format!("bad range start: {e}")))?;
    let hi: i128 = b.trim().parse().map_err(|e| usage(format!("bad range end: {e}")))?;
    if lo > hi {
        return Err(usage(format!("empty range {text}")));
    }
    Ok((lo, hi))
}

fn parse_poly(p: &PolyArgs) -> Result<SeparablePoly, Failure> {
    match (&p.poly, &p.coeffs) {
        (Some(e), None) => SeparablePoly::parse(e).map_err(usage),
        (None, Some(c)) => SeparablePoly::from_coeff_list(c).map_err(usage),
        _ => Err(usage("give exactly one of --poly and --coeffs")),
    }
}

fn read_assertions(path: Option<&Path>) -> Result<Assertions, Failure> {
    match path {
        None => Ok(Assertions::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| usage(format!("bad assertions file: {e}")))
        }
    }
}

fn verdict_code(v: &FamilyVerdict) -> i32 {
    if v.covered {
        0
    } else {
        2
    }
}

/// Groups listed by `classify-all` for order `n`: the abelian groups, and
/// unless `abelian_only` the dihedral, symmetric and alternating groups of that order.
fn batch_groups(n: u64, abelian_only: bool) -> Vec<GroupDescriptor> {
    let mut out: Vec<GroupDescriptor> =
        abelian_groups_of_order(n).into_iter().filter(|c| !c.is_empty()).map(GroupDescriptor::Abelian).collect();
    if abelian_only {
        return out;
    }
    if n.is_multiple_of(2) && n >= 6 {
        out.push(GroupDescriptor::Dihedral(n / 2));
    }
    let mut f = 1u64;
    for m in 1..=20u64 {
        f = f.saturating_mul(m);
        if m >= 3 && f == n {
            out.push(GroupDescriptor::Symmetric(m));
        }
        if m >= 4 && f / 2 == n {
            out.push(GroupDescriptor::Alternating(m));
        }
    }
    out
}

fn execute(cmd: Command, cfg: &Config) -> Result<Report, Failure> {
    let limits = &cfg.limits;
    match cmd {
        Command::Audit { group, scan_alternatives } => {
            let desc = parse_group(&group.group)?;
            let fc = FieldContext::parse(&group.field).map_err(usage)?;
            let assertions = read_assertions(group.assertions.as_deref())?;
            let g = materialize(&desc, limits).map_err(runtime)?;
            let ctx = Context { field: &fc, limits, assertions: &assertions, scan_alternatives };
            let outcome = audit(&Subject::new(&g, Some(&desc)), &ctx).map_err(runtime)?;
            let code = match outcome {
                AuditOutcome::Certified { .. } => 0,
                AuditOutcome::Refused { .. } => 2,
            };
            Report::with(outcome, group.out, code)
        }
        Command::Classify { group } => {
            let desc = parse_group(&group.group)?;
            let fc = FieldContext::parse(&group.field).map_err(usage)?;
            let assertions = read_assertions(group.assertions.as_deref())?;
            let v = classify_with(&desc, &fc, limits, &assertions).map_err(runtime)?;
            let code = verdict_code(&v);
            Report::with(v, group.out, code)
        }
        Command::ClassifyAll { orders, abelian_only, field, out } => {
            let (lo, hi) = parse_range(&orders, "..")?;
            if lo < 1 || hi > u64::MAX as i128 {
                return Err(usage("orders must be positive"));
            }
            let fc = FieldContext::parse(&field).map_err(usage)?;
            let groups: Vec<GroupDescriptor> =
                (lo as u64..=hi as u64).flat_map(|n| batch_groups(n, abelian_only)).collect();
            let assertions = Assertions::default();
            let records: Vec<BatchRecord> = groups
                .par_iter()
                .map(|d| match classify_with(d, &fc, limits, &assertions) {
                    Ok(v) => BatchRecord { group: d.to_string(), verdict: Some(v), error: None },
                    Err(e) => BatchRecord { group: d.to_string(), verdict: None, error: Some(e.to_string()) },
                })
                .collect();
            let mut summary = Summary::default();
            for r in &records {
                match &r.verdict {
                    Some(v) if v.covered => summary.covered += 1,
                    Some(v) if v.exception.is_some() => summary.exception += 1,
                    Some(_) => summary.not_covered += 1,
                    None => summary.errors += 1,
                }
            }
            let config = json!({
                "orders": format!("{lo}..{hi}"),
                "abelian_only": abelian_only,
                "field": fc,
                "bounds": cfg,
            });
            Report::with(BatchReport { tool_version: VERSION, config, records, summary }, out, 0)
        }
        Command::Genus { order, ram, group, field } => match (order, ram, group) {
            (Some(order), Some(ram), None) => {
                let rt = RamificationType::new(order, parse_list(&ram)?).map_err(usage)?;
                Report::ok(rh_genus(&rt).map_err(runtime)?)
            }
            (None, None, Some(group)) => {
                let desc = parse_group(&group)?;
                let fc = FieldContext::parse(&field).map_err(usage)?;
                Report::ok(minimal_genus_for_descriptor(&desc, &fc, limits).map_err(runtime)?)
            }
            _ => Err(usage("give --order with --ram, or --group")),
        },
        Command::GenusTable { order, element_orders, cap } => {
            let allowed: Vec<u64> = parse_list(&element_orders)?;
            let rows: Vec<serde_json::Value> = enumerate_low_genus_types(order, &allowed, cap)
                .iter()
                .map(|rt| Ok(json!({"indices": rt.indices, "genus": rh_genus(rt).map_err(runtime)?})))
                .collect::<Result<_, Failure>>()?;
            Report::ok(json!({"order": order, "element_orders": allowed, "cap": cap, "types": rows}))
        }
        Command::PrimeSet { field } => {
            let fc = FieldContext::parse(&field).map_err(usage)?;
            Report::ok(prime_set_s(&fc))
        }
        Command::SnClasses { n, count } => {
            let types = sn_select_classes(n, count).map_err(runtime)?;
            Report::ok(json!({"n": n, "classes": types}))
        }
        Command::AbelianQuotient { invariants, field } => {
            let chain: Vec<u64> = parse_list(&invariants)?;
            validate_chain(&chain).map_err(usage)?;
            let fc = FieldContext::parse(&field).map_err(usage)?;
            let q = abelian_suitable_quotient(&chain, &fc).map_err(runtime)?;
            let code = if matches!(q, AbelianQuotient::Exception(_)) { 2 } else { 0 };
            Report::with(q, None, code)
        }
        Command::FiberPower { group, kernel_order, kernel, n, out } => {
            let desc = parse_group(&group)?;
            let g = materialize(&desc, limits).map_err(runtime)?;
            let h = match (kernel_order, kernel) {
                (Some(k), None) => normal_subgroups(&g, limits)
                    .map_err(runtime)?
                    .into_iter()
                    .find(|h| h.len() == k)
                    .ok_or_else(|| usage(format!("no normal subgroup of order {k}")))?,
                (None, Some(text)) => {
                    let generators: Vec<GeneratorSpec> =
                        serde_json::from_str(&text).map_err(|e| usage(format!("bad kernel generators: {e}")))?;
                    let perms = PermSpec { degree: g.degree(), generators }.perms().map_err(usage)?;
                    subgroup_generated(&g, &perms, limits).map_err(usage)?
                }
                _ => return Err(usage("give exactly one of --kernel-order and --kernel")),
            };
            let fp = fiber_power(&g, &h, n, limits).map_err(runtime)?;
            Report::with(json!({"group": desc.to_string(), "fiber_power": fp}), out, 0)
        }
        Command::TwistScan { poly, d, height, out } => {
            let p = parse_poly(&poly)?;
            let (lo, hi) = parse_range(&d, ":")?;
            let bound = height.unwrap_or(cfg.height);
            let scan = twist_scan_with(&p, lo..=hi, bound, &cfg.factor).map_err(runtime)?;
            Report::with(scan, out, 0)
        }
        Command::Specialize { poly, t } => {
            let p = parse_poly(&poly)?;
            let t0 = if t.trim() == "infinity" {
                SpecPoint::Infinity
            } else {
                SpecPoint::Finite(rational_serde::parse(&t).map_err(usage)?)
            };
            let d = specialize_at_with(&p, &t0, &cfg.factor).map_err(runtime)?;
            Report::ok(json!({
                "polynomial": p.to_string(),
                "t": t0,
                "d": d,
                "degenerate": d.is_one(),
            }))
        }
        Command::Prop81 { poly } => {
            let p = parse_poly(&poly)?;
            Report::ok(prop81_classify(&p).map_err(runtime)?)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("nonparam").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn batch_group_lists() {
        assert_eq!(batch_groups(6, false).len(), 3);
        assert_eq!(batch_groups(12, false).len(), 4);
        assert_eq!(batch_groups(8, true).len(), 3);
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _, err) = call(&["genus", "--order", "2"]);
        assert_eq!(code, 1);
        assert!(err.contains("\"usage\""));
        let (code, _, _) = call(&["classify", "--group", "{\"dihedral\":"]);
        assert_eq!(code, 1);
        assert_eq!(call(&["frobnicate"]).0, 1);
    }
}
