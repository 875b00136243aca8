use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use algolab::catalog::{
    catalog_csv, hereditary_report, replicated_oracle_dims, sweep, to_sorted_json, verify, write_atomic, SweepOptions,
    SweepSpec, SweepStatus, Verification, DEFAULT_BOUND,
};
use algolab::dynkin::{parse_quiver, HereditaryDescriptor, ValuedDynkinGraph};
use algolab::geigle_lenzing::{canonical_nu_formal_scan, GLData};
use algolab::nakayama::{
    kupisch_algebra_dims, serre_formal_class_nakayama, sgc_higher_auslander, sgc_kupisch, tnl_dims, KupischSeries,
};
use algolab::oracle::{
    compile_basic, recover_kupisch, serre_formal_check, sgc_truncation, BasicAlgebra, Oracle, Presentation,
    SerreVerdict,
};
use algolab::replicated::{ReplicatedBase, ReplicatedDescriptor};
use algolab::serre::hereditary_profile;
use algolab::{Dim, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

/// Homological invariants of finite-dimensional algebras.
///
/// Every command prints one JSON object with sorted keys. ALGOLAB_BOUND sets
/// the resolution bound (default 64).
#[derive(Parser)]
#[command(name = "algolab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimensions of T(n,l), or of any linear Kupisch series.
    Nakayama {
        #[arg(long, requires = "l", conflicts_with = "kupisch")]
        n: Option<usize>,
        #[arg(long)]
        l: Option<usize>,
        /// Kupisch series such as "[3,3,2,1]".
        #[arg(long)]
        kupisch: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Cartan and Coxeter data and the Serre profile of a path algebra.
    Hereditary {
        /// "A4", "D5:alternating", "1->2,3->2", "kronecker", ...
        #[arg(long)]
        quiver: String,
        #[arg(long, default_value_t = 8)]
        horizon: usize,
        #[arg(long)]
        json: bool,
    },
    /// Dimensions of the replicated algebra A^(m).
    Replicate {
        /// A quiver as for `hereditary`, or a Kupisch series "[...]".
        #[arg(long)]
        base: String,
        #[arg(long)]
        m: usize,
        /// Compare with the oracle on the constructed algebra.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// The m-th SGC extension of T(n,l).
    Sgc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        m: usize,
        /// Build the truncation with the oracle and read off its Kupisch series.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Bounded Serre-formality check by the module oracle.
    CheckSerreFormal {
        #[arg(long, conflicts_with_all = ["presentation", "quiver"])]
        kupisch: Option<String>,
        /// File in the bound-quiver text format.
        #[arg(long, conflicts_with = "quiver")]
        presentation: Option<PathBuf>,
        #[arg(long)]
        quiver: Option<String>,
        #[arg(long, default_value_t = 6)]
        horizon: usize,
        #[arg(long)]
        json: bool,
    },
    /// Geigle-Lenzing weights: torsion of ω and the canonical scan.
    Gl {
        /// Comma-separated weights, possibly empty.
        #[arg(long, default_value = "")]
        weights: String,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 25)]
        scan: i64,
        #[arg(long)]
        json: bool,
    },
    /// Grid sweep into a CSV (or JSON) catalog.
    Sweep {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// Ranges are "a..b" (inclusive) or a single value.
        #[arg(long, default_value = "2..10")]
        n: String,
        #[arg(long, default_value = "2..10")]
        l: String,
        #[arg(long, default_value = "0..4")]
        m: String,
        /// Dynkin types, comma-separated.
        #[arg(long, default_value = "A2,A3,A4")]
        types: String,
        #[arg(long)]
        all_orientations: bool,
        /// Weight tuples separated by ';', entries by ','.
        #[arg(long, default_value = "2,2,2,2;2,3,7;2,2,2")]
        weights: String,
        #[arg(long, default_value = "1..3")]
        d: String,
        #[arg(long, default_value_t = 25)]
        k: i64,
        /// Also run the oracle on rows above the size limit.
        #[arg(long)]
        verify_large: bool,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Output file, replaced atomically; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recompute a formula/oracle suite and report differences.
    Verify {
        #[arg(long)]
        target: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Nakayama,
    Dynkin,
    Gl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn bound() -> Result<usize, Failure> {
    match std::env::var("ALGOLAB_BOUND") {
        Ok(v) => v.trim().parse().map_err(|_| Failure::Usage(format!("ALGOLAB_BOUND must be a number, got {v:?}"))),
        Err(_) => Ok(DEFAULT_BOUND),
    }
}

fn range<T: FromStr + Copy>(s: &str) -> Result<RangeInclusive<T>, Failure> {
    let bad = || Failure::Usage(format!("bad range {s:?}, expected a..b or a single value"));
    let p = |t: &str| t.trim().parse::<T>().map_err(|_| bad());
    match s.split_once("..") {
        Some((a, b)) => Ok(p(a)?..=p(b.trim_start_matches('='))?),
        None => {
            let v = p(s)?;
            Ok(v..=v)
        }
    }
}

fn weight_list(s: &str) -> Result<Vec<u32>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Usage(format!("bad weight {t:?}"))))
        .collect()
}

fn dim_json(d: Dim) -> Value {
    serde_json::to_value(d).expect("dimension")
}

fn nakayama(n: Option<usize>, l: Option<usize>, kupisch: Option<String>) -> Outcome {
    let ks = match (n, l, kupisch) {
        (Some(n), Some(l), None) => KupischSeries::tnl(n, l)?,
        (None, None, Some(k)) => k.parse()?,
        _ => return Err(Failure::Usage("give --n and --l, or --kupisch".into())),
    };
    let class = serre_formal_class_nakayama(&ks);
    let mut out = json!({ "kupisch": ks.to_string(), "serre_formal": class.serre_formal, "d": class.d });
    match ks.as_tnl() {
        Some(l) if l >= 2 => {
            let t = tnl_dims(ks.n(), l)?;
            out["gldim"] = json!(t.gldim);
            out["domdim"] = json!(t.domdim);
            out["higher_auslander"] = json!(t.higher_auslander);
            out["corresponding_pair"] = json!(t.corresponding_pair.map(|p| p.to_string()));
        }
        _ => {
            let d = kupisch_algebra_dims(&ks, bound()?);
            out["gldim"] = dim_json(d.gldim);
            out["domdim"] = dim_json(d.domdim);
            out["idim"] = dim_json(d.idim);
            out["higher_auslander"] = json!(d.gldim.is_finite() && d.gldim == d.domdim);
        }
    }
    Ok(out.to_string())
}

fn hereditary(quiver: &str, horizon: usize) -> Outcome {
    let (q, graph) = parse_quiver(quiver)?;
    let desc = HereditaryDescriptor::new(q.clone())?;
    let profile = hereditary_profile(&desc, horizon)?;
    let v = json!({
        "quiver": q.to_string(),
        "dynkin_type": graph.map(|g| g.to_string()),
        "cartan": desc.cartan,
        "coxeter": desc.coxeter,
        "coxeter_number": graph.map(|g| g.coxeter_number()),
        "representation_finite": desc.representation_finite,
        "profile": serde_json::to_value(&profile).expect("profile"),
    });
    Ok(v.to_string())
}

fn replicate(base: &str, m: usize, check: bool) -> Outcome {
    let bound = bound()?;
    if base.trim_start().starts_with('[') {
        let ks: KupischSeries = base.parse()?;
        let alg = compile_basic(&Presentation::nakayama(&ks), ks.n() + 1)?;
        let d = ReplicatedDescriptor { base: ReplicatedBase::Algebra(alg.sca().clone()), m };
        let r = d.report(bound)?;
        let mut v = serde_json::to_value(&r).expect("report");
        let obj = v.as_object_mut().expect("object");
        obj.remove("stalks");
        let t = obj.remove("schedule_t").unwrap_or(Value::Null);
        v["schedule"] = json!({ "t": t });
        v["base"] = json!(ks.to_string());
        v["verified"] = json!(Verification::FormulaOnly.to_string());
        return Ok(v.to_string());
    }
    let (q, _) = parse_quiver(base)?;
    let (r, schedule) = hereditary_report(&q, m)?;
    let mut verified = Verification::FormulaOnly;
    let mut oracle = Value::Null;
    if check {
        let (dd, id, gd) = replicated_oracle_dims(&q, m, bound)?;
        let agree = dd == Dim::Finite(r.domdim as u32)
            && id == Dim::Finite(r.idim as u32)
            && r.gldim.is_some_and(|g| gd == Dim::Finite(g as u32));
        verified = if agree { Verification::OracleVerified } else { Verification::Mismatch };
        oracle = json!({ "domdim": dim_json(dd), "idim": dim_json(id), "gldim": dim_json(gd) });
    }
    let v = json!({
        "base": q.to_string(),
        "m": m,
        "domdim": r.domdim,
        "idim": r.idim,
        "gldim": r.gldim,
        "higher_auslander": r.higher_auslander,
        "minimal_ag": r.minimal_ag,
        "iwanaga_gorenstein": r.iwanaga_gorenstein,
        "schedule": {
            "periodic": schedule.periodic,
            "h": schedule.h,
            "c": schedule.c,
            "member": schedule.contains(m),
            "t": r.schedule_t,
        },
        "oracle": oracle,
        "verified": verified.to_string(),
    });
    if verified == Verification::Mismatch {
        return Err(Failure::Mismatch(v.to_string()));
    }
    Ok(v.to_string())
}

fn sgc(n: usize, l: usize, m: usize, check: bool) -> Outcome {
    let ks = sgc_kupisch(n, l, m)?;
    let t = tnl_dims(ks.n(), l)?;
    let ha = sgc_higher_auslander(n, l, m)?;
    let mut v = json!({
        "kupisch": ks.to_string(),
        "gldim": t.gldim,
        "domdim": t.domdim,
        "higher_auslander": ha,
        "corresponding_pair": t.corresponding_pair.map(|p| p.to_string()),
        "verified": Verification::FormulaOnly.to_string(),
    });
    if ha != t.higher_auslander {
        v["verified"] = json!(Verification::Mismatch.to_string());
        return Err(Failure::Mismatch(v.to_string()));
    }
    if check && m >= 1 {
        let base = compile_basic(&Presentation::nakayama(&KupischSeries::tnl(n, l)?), n + 1)?;
        let trunc = sgc_truncation(base.sca(), m)?;
        let found = recover_kupisch(&BasicAlgebra::from_sca(&trunc)?)?;
        v["oracle_kupisch"] = json!(found.to_string());
        let ok = found == ks;
        v["verified"] = json!(if ok { Verification::OracleVerified } else { Verification::Mismatch }.to_string());
        if !ok {
            return Err(Failure::Mismatch(v.to_string()));
        }
    }
    Ok(v.to_string())
}

fn check_serre_formal(
    kupisch: Option<String>,
    presentation: Option<PathBuf>,
    quiver: Option<String>,
    horizon: usize,
) -> Outcome {
    let bound = bound()?;
    let alg = match (kupisch, presentation, quiver) {
        (Some(k), None, None) => {
            let ks: KupischSeries = k.parse()?;
            compile_basic(&Presentation::nakayama(&ks), ks.n() + 1)?
        }
        (None, Some(path), None) => {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            compile_basic(&Presentation::parse(&text)?, bound)?
        }
        (None, None, Some(q)) => compile_basic(&Presentation::path_algebra(&parse_quiver(&q)?.0)?, bound)?,
        _ => return Err(Failure::Usage("give exactly one of --kupisch, --presentation, --quiver".into())),
    };
    let o = Oracle::new(alg);
    let v = match serre_formal_check(&o, horizon, bound) {
        SerreVerdict::SerreFormal { profile } => {
            json!({ "verdict": "serre_formal", "s_minus": profile.s_minus, "s_plus": profile.s_plus })
        }
        SerreVerdict::NotSerreFormal { x, step, degrees, injective_side } => json!({
            "verdict": "not_serre_formal",
            "vertex": x + 1,
            "step": step,
            "degrees": degrees,
            "side": if injective_side { "injective" } else { "projective" },
        }),
        SerreVerdict::Inconclusive { reason } => json!({ "verdict": "inconclusive", "reason": reason }),
    };
    Ok(v.to_string())
}

fn gl(weights: &str, d: u32, k: i64) -> Outcome {
    let data = GLData::new(weight_list(weights)?, d)?;
    let omega = data.omega();
    let scan = canonical_nu_formal_scan(&data, k);
    let v = json!({
        "weights": data.weights(),
        "d": d,
        "omega": omega.to_string(),
        "delta_omega": data.delta(&omega),
        "torsion": data.is_torsion(&omega),
        "interval_size": data.interval_zero_dc().len(),
        "scan": if scan.certified { "certified" } else { "failed" },
        "scan_checked": scan.checked,
        "counterexample": scan.counterexample.map(|(k, x)| json!({ "k": k, "x": x.to_string() })),
    });
    Ok(v.to_string())
}

#[allow(clippy::too_many_arguments)]
fn run_sweep(
    family: FamilyArg,
    n: &str,
    l: &str,
    m: &str,
    types: &str,
    all_orientations: bool,
    weights: &str,
    d: &str,
    k: i64,
    verify_large: bool,
    format: Format,
    out: Option<PathBuf>,
    cancel: &AtomicBool,
) -> Outcome {
    let spec = match family {
        FamilyArg::Nakayama => SweepSpec::Nakayama { n: range(n)?, l: range(l)?, m: range(m)? },
        FamilyArg::Dynkin => {
            let types = types
                .split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(ValuedDynkinGraph::from_str)
                .collect::<Result<Vec<_>, _>>()?;
            SweepSpec::Dynkin { types, all_orientations, m: range(m)? }
        }
        FamilyArg::Gl => {
            let weights = weights.split(';').map(weight_list).collect::<Result<Vec<_>, _>>()?;
            SweepSpec::Gl { weights, d: range(d)?, k }
        }
    };
    let opts = SweepOptions { verify_large, bound: bound()? };
    let outcome = sweep(&spec, &opts, cancel)?;
    let text = match format {
        Format::Csv => catalog_csv(&outcome)?,
        Format::Json => {
            let status = match &outcome.status {
                SweepStatus::Complete => json!({ "state": "complete" }),
                SweepStatus::Interrupted { done, total } => {
                    json!({ "state": "interrupted", "done": done, "total": total })
                }
                SweepStatus::Mismatch { id } => json!({ "state": "mismatch", "id": id }),
            };
            let rows = serde_json::to_value(&outcome.rows).expect("rows");
            format!("{}\n", json!({ "rows": rows, "status": status }))
        }
    };
    match &out {
        Some(path) => write_atomic(path, &text)?,
        None => print!("{text}"),
    }
    match outcome.status {
        SweepStatus::Mismatch { id } => Err(Failure::Mismatch(format!("verification mismatch at {id}"))),
        SweepStatus::Interrupted { done, total } => {
            Err(Failure::Usage(format!("interrupted after {done} of {total} rows")))
        }
        SweepStatus::Complete => Ok(String::new()),
    }
}

fn run_verify(target: &str) -> Outcome {
    let report = verify(target, bound()?)?;
    let text = to_sorted_json(&report);
    if report.passed {
        Ok(text)
    } else {
        Err(Failure::Mismatch(text))
    }
}

fn run(cli: Cli, cancel: &AtomicBool) -> Outcome {
    bound()?;
    match cli.command {
        Command::Nakayama { n, l, kupisch, .. } => nakayama(n, l, kupisch),
        Command::Hereditary { quiver, horizon, .. } => hereditary(&quiver, horizon),
        Command::Replicate { base, m, verify, .. } => replicate(&base, m, verify),
        Command::Sgc { n, l, m, verify, .. } => sgc(n, l, m, verify),
        Command::CheckSerreFormal { kupisch, presentation, quiver, horizon, .. } => {
            check_serre_formal(kupisch, presentation, quiver, horizon)
        }
        Command::Gl { weights, d, scan, .. } => gl(&weights, d, scan),
        Command::Sweep { family, n, l, m, types, all_orientations, weights, d, k, verify_large, format, out } => {
            run_sweep(family, &n, &l, &m, &types, all_orientations, &weights, &d, k, verify_large, format, out, cancel)
        }
        Command::Verify { target, .. } => run_verify(&target),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cancel = Arc::new(AtomicBool::new(false));
    let flag = Arc::clone(&cancel);
    let _ = ctrlc::set_handler(move || flag.store(true, Ordering::SeqCst));
    match run(cli, &cancel) {
        Ok(text) => {
            if !text.is_empty() {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch(text)) => {
            println!("{text}");
            ExitCode::from(2)
        }
    }
}
