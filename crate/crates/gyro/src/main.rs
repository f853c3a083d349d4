//! Command-line surface for the gyrogroup engine.
//!
//! Exit codes: 0 all requested checks passed, 1 a property failure or
//! mathematically interesting finding, 2 usage or input error. Reports are
//! UTF-8 JSON on stdout with stable key order; diagnostics go to stderr.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use gyro::axioms;
use gyro::mask::SubsetMask;
use gyro::models::{self, ModelKind};
use gyro::quotient;
use gyro::search;
use gyro::subgyro;
use gyro::table::{GyroTable, TableFormat};

#[derive(Parser)]
#[command(name = "gyro", version, about = "Finite and model gyrogroup engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Mobius,
    Einstein,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the gyrogroup axioms and run the identity suite on a table.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Classify one subset, or all enumerated subgyrogroups, in the
    /// L / strongly-L / normal-sufficient hierarchy.
    Classify {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        /// Comma-separated element list, e.g. 0,2
        #[arg(long, conflicts_with = "all")]
        subset: Option<String>,
        #[arg(long)]
        all: bool,
    },
    /// Build G/H and run every quotient check.
    Quotient {
        file: PathBuf,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
        #[arg(long)]
        subset: String,
        /// Random symmetric sets P for the intersection identity.
        #[arg(long, default_value_t = 50)]
        p_samples: usize,
        /// Random sets V for the saturation cross-check.
        #[arg(long, default_value_t = 100)]
        v_samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Run the seeded identity sampler on a continuous model.
    Models {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Search generated gyrogroups (plus a catalog) for an L-subgyrogroup
    /// that is not strongly-L.
    Search {
        #[arg(long, default_value_t = search::EXHAUSTIVE_BOUND)]
        max_order: usize,
        /// Directory of extra tables; surviving gyrogroups are written here.
        #[arg(long)]
        catalog: Option<PathBuf>,
        #[arg(long)]
        no_isomorph_reject: bool,
        /// 0 uses the library default.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// Permit orders above the exhaustive bound (up to 8).
        #[arg(long)]
        allow_large: bool,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn load_table(path: &PathBuf, format: Option<FormatArg>) -> Result<GyroTable, String> {
    let format = match format {
        Some(FormatArg::Json) => TableFormat::Json,
        Some(FormatArg::Text) => TableFormat::Text,
        None => match path.extension().and_then(|s| s.to_str()) {
            Some("json") => TableFormat::Json,
            _ => TableFormat::Text,
        },
    };
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    GyroTable::load(&bytes, format).map_err(|e| format!("{}: {e}", path.display()))
}

fn parse_subset(g: &GyroTable, spec: &str) -> Result<SubsetMask, String> {
    let mut mask = SubsetMask::empty(g.order());
    for part in spec.split(',') {
        let e: usize = part
            .trim()
            .parse()
            .map_err(|_| format!("invalid subset element '{part}'"))?;
        if e >= g.order() {
            return Err(format!("subset element {e} out of range for order {}", g.order()));
        }
        mask.insert(e);
    }
    Ok(mask)
}

fn emit<T: Serialize>(report: &T) {
    println!("{}", serde_json::to_string_pretty(report).expect("report serialization"));
}

#[derive(Serialize)]
struct ClassifyEntry {
    subset: Vec<usize>,
    flags: BTreeMap<&'static str, bool>,
    witnesses: BTreeMap<String, Vec<usize>>,
}

/// Classification entry plus whether it carries a finding (not a
/// subgyrogroup, or L-but-not-strongly-L).
fn classify_entry(g: &GyroTable, h: &SubsetMask) -> Result<(ClassifyEntry, bool), String> {
    let violation = subgyro::subgyrogroup_violation(g, h).map_err(|e| e.to_string())?;
    if let Some((prop, w)) = violation {
        let mut witnesses = BTreeMap::new();
        witnesses.insert(prop, w);
        let flags = BTreeMap::from([
            ("is_sub", false),
            ("is_l", false),
            ("is_strongly_l", false),
            ("is_normal_sufficient", false),
        ]);
        return Ok((ClassifyEntry { subset: h.elems(), flags, witnesses }, true));
    }
    let c = subgyro::classify_subset(g, h).map_err(|e| e.to_string())?;
    let finding = c.is_l && !c.is_strongly_l;
    let flags = BTreeMap::from([
        ("is_sub", c.is_sub),
        ("is_l", c.is_l),
        ("is_strongly_l", c.is_strongly_l),
        ("is_normal_sufficient", c.is_normal_sufficient),
    ]);
    Ok((
        ClassifyEntry { subset: h.elems(), flags, witnesses: c.witnesses },
        finding,
    ))
}

fn cmd_verify(file: PathBuf, format: Option<FormatArg>) -> ExitCode {
    let g = match load_table(&file, format) {
        Ok(g) => g,
        Err(e) => return usage_error(&e),
    };
    let report = axioms::VerifyReport {
        axioms: axioms::verify_axioms(&g),
        identities: axioms::check_identity_suite(&g),
    };
    emit(&report);
    if report.axioms.all_ok() && report.identities.all_ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn cmd_classify(
    file: PathBuf,
    format: Option<FormatArg>,
    subset: Option<String>,
    all: bool,
) -> ExitCode {
    let g = match load_table(&file, format) {
        Ok(g) => g,
        Err(e) => return usage_error(&e),
    };
    match (subset, all) {
        (Some(spec), false) => {
            let h = match parse_subset(&g, &spec) {
                Ok(h) => h,
                Err(e) => return usage_error(&e),
            };
            match classify_entry(&g, &h) {
                Ok((entry, finding)) => {
                    emit(&entry);
                    if finding { ExitCode::from(1) } else { ExitCode::SUCCESS }
                }
                Err(e) => usage_error(&e),
            }
        }
        (None, true) => {
            let enumeration = subgyro::enumerate_subgyrogroups(&g);
            if !enumeration.exhaustive {
                eprintln!(
                    "warning: order {} above full-scan bound; enumeration from generator pools may be incomplete",
                    g.order()
                );
            }
            let mut entries = Vec::new();
            let mut any_finding = false;
            for h in &enumeration.subgroups {
                match classify_entry(&g, h) {
                    Ok((entry, finding)) => {
                        any_finding |= finding;
                        entries.push(entry);
                    }
                    Err(e) => return usage_error(&e),
                }
            }
            emit(&json!({ "exhaustive": enumeration.exhaustive, "subgyrogroups": entries }));
            if any_finding { ExitCode::from(1) } else { ExitCode::SUCCESS }
        }
        _ => usage_error("classify requires exactly one of --subset or --all"),
    }
}

#[derive(Serialize)]
struct CheckJson {
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<serde_json::Value>,
}

fn random_symmetric_set(g: &GyroTable, rng: &mut ChaCha8Rng) -> SubsetMask {
    let n = g.order();
    let mut p = SubsetMask::singleton(n, 0);
    for x in 1..n {
        if !p.contains(x) && rng.gen_bool(0.5) {
            p.insert(x);
            p.insert(g.inv(x));
        }
    }
    p
}

fn cmd_quotient(
    file: PathBuf,
    format: Option<FormatArg>,
    subset: String,
    p_samples: usize,
    v_samples: usize,
    seed: u64,
) -> ExitCode {
    let g = match load_table(&file, format) {
        Ok(g) => g,
        Err(e) => return usage_error(&e),
    };
    let h = match parse_subset(&g, &subset) {
        Ok(h) => h,
        Err(e) => return usage_error(&e),
    };
    let mut checks: BTreeMap<&'static str, CheckJson> = BTreeMap::new();

    match subgyro::subgyrogroup_violation(&g, &h) {
        Err(e) => return usage_error(&e.to_string()),
        Ok(Some((prop, w))) => {
            checks.insert("subgyrogroup", CheckJson { ok: false, witness: Some(json!({ prop: w })) });
            emit(&json!({ "subgroup": h.elems(), "cosets": null, "projection": null, "checks": checks }));
            return ExitCode::from(1);
        }
        Ok(None) => {
            checks.insert("subgyrogroup", CheckJson { ok: true, witness: None });
        }
    }

    let partition = match quotient::build_quotient(&g, &h) {
        Err(e) => {
            checks.insert("partition", CheckJson { ok: false, witness: Some(json!(e.to_string())) });
            emit(&json!({ "subgroup": h.elems(), "cosets": null, "projection": null, "checks": checks }));
            return ExitCode::from(1);
        }
        Ok(p) => {
            checks.insert("partition", CheckJson { ok: true, witness: None });
            p
        }
    };

    let assoc = quotient::coset_assoc_check(&g, &h);
    checks.insert("coset_associativity", CheckJson {
        ok: assoc.ok,
        witness: assoc.witness.map(|w| json!(w)),
    });

    let mut translation_witness = None;
    for a in 0..g.order() {
        if let Err(e) = quotient::coset_translation(&partition, &g, a) {
            translation_witness = Some(json!(e.to_string()));
            break;
        }
    }
    checks.insert("translations_bijective", CheckJson {
        ok: translation_witness.is_none(),
        witness: translation_witness.clone(),
    });

    if translation_witness.is_none() {
        let hom = quotient::homogeneity_check(&partition, &g);
        checks.insert("homogeneity", CheckJson { ok: hom.ok, witness: hom.witness.map(|w| json!(w)) });
        let com = quotient::translation_commute_check(&partition, &g);
        checks.insert("translation_commute", CheckJson { ok: com.ok, witness: com.witness.map(|w| json!(w)) });
    }

    // Saturation cross-check on random subsets V: V⊕H = π⁻¹(π(V)).
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order();
    let mut sat_witness = None;
    for _ in 0..v_samples {
        let mut v = SubsetMask::empty(n);
        for x in 0..n {
            if rng.gen_bool(0.5) {
                v.insert(x);
            }
        }
        if v.is_empty() {
            continue;
        }
        let sat = quotient::saturate(&g, &h, &v);
        let mut preimage = SubsetMask::empty(n);
        for x in 0..n {
            if v.iter().any(|vv| partition.project(vv) == partition.project(x)) {
                preimage.insert(x);
            }
        }
        if sat != preimage {
            sat_witness = Some(json!(v.elems()));
            break;
        }
    }
    checks.insert("saturation", CheckJson { ok: sat_witness.is_none(), witness: sat_witness });

    // Intersection identity over all a and sampled symmetric P.
    let mut inter_witness = None;
    'outer: for _ in 0..p_samples {
        let p = random_symmetric_set(&g, &mut rng);
        for a in 0..n {
            match quotient::intersection_identity_check(&g, &h, &p, a) {
                Ok(r) if r.ok => {}
                _ => {
                    inter_witness = Some(json!({ "a": a, "p": p.elems() }));
                    break 'outer;
                }
            }
        }
    }
    checks.insert("intersection_identity", CheckJson { ok: inter_witness.is_none(), witness: inter_witness });

    let ok = checks.values().all(|c| c.ok);
    emit(&json!({
        "subgroup": h.elems(),
        "cosets": partition.cosets.iter().map(|c| c.elems()).collect::<Vec<_>>(),
        "projection": partition.projection,
        "checks": checks,
    }));
    if ok { ExitCode::SUCCESS } else { ExitCode::from(1) }
}

fn cmd_models(model: ModelArg, samples: usize, tol: f64, seed: u64) -> ExitCode {
    let kind = match model {
        ModelArg::Mobius => ModelKind::Mobius,
        ModelArg::Einstein => ModelKind::Einstein,
    };
    match models::model_identity_sampler(kind, samples, tol, seed) {
        Err(e) => usage_error(&e.to_string()),
        Ok(report) => {
            emit(&report);
            if report.all_ok() { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
    }
}

fn cmd_search(
    max_order: usize,
    catalog: Option<PathBuf>,
    no_isomorph_reject: bool,
    workers: usize,
    allow_large: bool,
) -> ExitCode {
    let config = search::SearchConfig {
        max_order,
        isomorph_reject: !no_isomorph_reject,
        worker_count: workers,
        catalog,
        allow_large,
    };
    match search::search_l_not_sl(&config) {
        Err(e) => usage_error(&e.to_string()),
        Ok(summary) => {
            let found = summary.witness.is_some();
            emit(&summary);
            if found { ExitCode::from(1) } else { ExitCode::SUCCESS }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match cli.command {
        Command::Verify { file, format } => cmd_verify(file, format),
        Command::Classify { file, format, subset, all } => cmd_classify(file, format, subset, all),
        Command::Quotient { file, format, subset, p_samples, v_samples, seed } => {
            cmd_quotient(file, format, subset, p_samples, v_samples, seed)
        }
        Command::Models { model, samples, tol, seed } => cmd_models(model, samples, tol, seed),
        Command::Search { max_order, catalog, no_isomorph_reject, workers, allow_large } => {
            cmd_search(max_order, catalog, no_isomorph_reject, workers, allow_large)
        }
    }
}
