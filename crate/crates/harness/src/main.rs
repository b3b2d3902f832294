use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use homcert::bounds::{best_bound, Strategy};
use homcert::closed::{compare_cross_powers_with, hom_kdd_from_images, hom_kdp1_exact, hom_kdp1_from_images};
use homcert::graph::to_graph6;
use homcert::hom::{hom_bruteforce_with, hom_dp_with, hom_inclusion_exclusion_with};
use homcert::qpoly::{threshold_q_with, Family, ThresholdOutcome};
use homcert::regular::{enumerate_regular_filtered, RegularFilter};
use homcert::structure::{classify_with, empirical_type, enumerate_images, profile_from_images};
use homcert::{BigCount, Limits};
use homcert_harness::input::{load_constraint, load_graph};
use homcert_harness::{resolve_limits, run_sweep, HarnessError, SweepConfig};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "homcert", version, about = "Exact homomorphism counts and extremal certificates for regular graphs")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Cap applied to every resource guard (overrides HOMCERT_GUARD_LIMIT).
    #[arg(long, global = true)]
    guard_limit: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// hom(G, H) from all three counters.
    Count { graph: String, constraint: String },
    /// Structural profile, type verdict and crossover table of H.
    Classify {
        constraint: String,
        #[arg(long, default_value_t = homcert::structure::DEFAULT_D_MAX)]
        d_max: usize,
    },
    /// Both closed forms at degree d and the cross-power comparison.
    Closed { constraint: String, d: usize },
    /// Counting polynomial of G in q, optionally with a threshold against a
    /// reference graph.
    Qpoly {
        graph: String,
        /// chromatic, deleted-loops:L or bipartite:RxS,...
        #[arg(long, default_value = "chromatic")]
        family: String,
        #[arg(long)]
        reference: Option<String>,
    },
    /// Best back-degree product bound over several orderings.
    Bound {
        graph: String,
        constraint: String,
        #[arg(long, default_value_t = 5)]
        trials: usize,
    },
    /// Run a sweep described by a JSON config.
    Sweep {
        config: PathBuf,
        /// Report directory (overrides the config).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// graph6 lines for every d-regular graph on n vertices.
    Generate {
        n: usize,
        d: usize,
        #[arg(long)]
        connected: bool,
        #[arg(long)]
        triangle_free: bool,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("homcert: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(json_mode: bool, value: &Value, text: impl FnOnce() -> String) {
    if json_mode {
        out(&(serde_json::to_string_pretty(value).expect("json value") + "\n"));
    } else {
        out(&text());
    }
}

fn count_value(r: &homcert::Result<BigCount>) -> Value {
    match r {
        Ok(c) => json!(c.to_string()),
        Err(e) => json!({ "skipped": e.to_string() }),
    }
}

fn count_text(r: &homcert::Result<BigCount>) -> String {
    match r {
        Ok(c) => c.to_string(),
        Err(e) => format!("skipped ({e})"),
    }
}

fn run(cli: Cli) -> Result<u8, HarnessError> {
    let limits = resolve_limits(cli.guard_limit, None)?;
    let seed = cli.seed.unwrap_or(0);
    match cli.command {
        Command::Count { graph, constraint } => count(cli.json, &graph, &constraint, &limits),
        Command::Classify { constraint, d_max } => classify(cli.json, &constraint, d_max),
        Command::Closed { constraint, d } => closed(cli.json, &constraint, d),
        Command::Qpoly { graph, family, reference } => qpoly(cli.json, &graph, &family, reference.as_deref(), &limits),
        Command::Bound { graph, constraint, trials } => {
            let g = load_graph(&graph)?;
            let (h, _) = load_constraint(&constraint)?;
            let all = [Strategy::Natural, Strategy::ReverseDegeneracy, Strategy::Heuristic];
            let cert = best_bound(&g, &h, &all, trials, seed, &limits)?;
            let value = json!({
                "graph": to_graph6(&g),
                "d": cert.d,
                "order": cert.order,
                "hom": cert.hom.to_string(),
                "lhs": cert.lhs.to_string(),
                "rhs": cert.rhs.to_string(),
                "holds": cert.holds,
            });
            emit(cli.json, &value, || {
                format!(
                    "hom = {}\nhom^{} = {}\nbound = {}\norder = {:?}\nholds = {}\n",
                    cert.hom, cert.d, cert.lhs, cert.rhs, cert.order, cert.holds
                )
            });
            Ok(if cert.holds { 0 } else { 2 })
        }
        Command::Sweep { config, output } => {
            let mut config = SweepConfig::load(&config)?;
            if let Some(w) = cli.workers {
                config.workers = Some(w);
            }
            if let Some(s) = cli.seed {
                config.seed = s;
            }
            if output.is_some() {
                config.output = output;
            }
            config.validate()?;
            let limits = resolve_limits(cli.guard_limit, config.guard_limit)?;
            let report = run_sweep(&config, &limits)?;
            let dir = config.output.clone().unwrap_or_else(|| PathBuf::from("homcert-report"));
            report.persist(&dir)?;
            if cli.json {
                out(&report.summary_json());
            } else {
                out(&report.summary_csv());
                out(&format!(
                    "{} violation(s), {} skipped, report in {}\n",
                    report.summary.violations,
                    report.summary.skipped,
                    dir.display()
                ));
                for r in report.violations() {
                    eprintln!("violation: {}", serde_json::to_string(r).expect("record serializes"));
                }
            }
            Ok(if report.has_violations() { 2 } else { 0 })
        }
        Command::Generate {
            n,
            d,
            connected,
            triangle_free,
        } => {
            let graphs = enumerate_regular_filtered(n, d, RegularFilter { connected, triangle_free })?;
            let lines: Vec<String> = graphs.iter().map(to_graph6).collect();
            emit(cli.json, &json!(lines), || lines.iter().map(|l| format!("{l}\n")).collect());
            Ok(0)
        }
    }
}

fn count(json_mode: bool, graph: &str, constraint: &str, limits: &Limits) -> Result<u8, HarnessError> {
    let g = load_graph(graph)?;
    let (h, _) = load_constraint(constraint)?;
    let engines = [
        ("hom_bruteforce", hom_bruteforce_with(&g, &h, limits)),
        ("hom_dp", hom_dp_with(&g, &h, limits)),
        ("hom_inclusion_exclusion", hom_inclusion_exclusion_with(&g, &h, limits)),
    ];
    let values: Vec<&BigCount> = engines.iter().filter_map(|(_, r)| r.as_ref().ok()).collect();
    if values.is_empty() {
        let (_, first) = &engines[0];
        return Err(first.clone().unwrap_err().into());
    }
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    let mut value = json!({ "graph": to_graph6(&g), "agree": agree });
    for (name, r) in &engines {
        value[*name] = count_value(r);
    }
    emit(json_mode, &value, || {
        let mut out: String = engines.iter().map(|(name, r)| format!("{name} = {}\n", count_text(r))).collect();
        if !agree {
            out.push_str("engines disagree\n");
        }
        out
    });
    Ok(if agree { 0 } else { 2 })
}

fn classify(json_mode: bool, constraint: &str, d_max: usize) -> Result<u8, HarnessError> {
    let (h, stripped) = load_constraint(constraint)?;
    let images = enumerate_images(&h);
    let profile = profile_from_images(&h, &images);
    let verdict = classify_with(&h, d_max)?;
    let report = empirical_type(&h, d_max);
    let table: Vec<Value> = report
        .table
        .iter()
        .map(|v| json!({ "d": v.d, "kdd": v.kdd.to_string(), "kdp1": v.kdp1.to_string(), "sign": v.sign }))
        .collect();
    let value = json!({
        "stripped": stripped,
        "profile": profile,
        "verdict": verdict,
        "table": table,
    });
    emit(json_mode, &value, || {
        let crossover = verdict.crossover_d.map_or("none".to_string(), |d| d.to_string());
        let mut out = format!("{}, {}, crossover d={crossover}\n", verdict.kind, verdict.condition);
        out.push_str(&format!(
            "eta={} m={} a={} b={} n={}\n",
            profile.eta, profile.m, profile.a, profile.b, profile.n
        ));
        if let Some(p) = &profile.primed {
            out.push_str(&format!("eta'={} m'={} a'={} b'={} n'={}\n", p.eta, p.m, p.a, p.b, p.n));
        }
        out.push_str("d\thom(K_dd)\thom(K_d+1)\tsign\n");
        for v in &report.table {
            out.push_str(&format!("{}\t{}\t{}\t{:?}\n", v.d, v.kdd, v.kdp1, v.sign));
        }
        out
    });
    Ok(0)
}

fn closed(json_mode: bool, constraint: &str, d: usize) -> Result<u8, HarnessError> {
    if d == 0 {
        return Err(HarnessError::Usage("d must be positive".into()));
    }
    let (h, _) = load_constraint(constraint)?;
    let images = enumerate_images(&h);
    let kdd = hom_kdd_from_images(&images, d);
    let kdp1 = hom_kdp1_from_images(&images, d);
    let exact = hom_kdp1_exact(&images, d);
    let cross = compare_cross_powers_with(&images, d);
    let value = json!({
        "d": d,
        "hom_kdd": kdd.to_string(),
        "hom_kdp1": { "value": kdp1.value.to_string(), "valid": kdp1.valid, "exact": exact.to_string() },
        "cross_power": { "left": cross.left.to_string(), "right": cross.right.to_string(), "sign": cross.sign },
    });
    emit(json_mode, &value, || {
        format!(
            "hom(K_{{{d},{d}}}, H) = {kdd}\nhom(K_{}, H) = {exact} (closed form {}, {})\nhom(K_dd)^{} vs hom(K_d+1)^{}: {:?}\n",
            d + 1,
            kdp1.value,
            if kdp1.valid { "valid" } else { "not valid at this d" },
            d + 1,
            2 * d,
            cross.sign
        )
    });
    Ok(0)
}

fn qpoly(
    json_mode: bool,
    graph: &str,
    family: &str,
    reference: Option<&str>,
    limits: &Limits,
) -> Result<u8, HarnessError> {
    let g = load_graph(graph)?;
    let family: Family = family.parse().map_err(|e: homcert::Error| HarnessError::Usage(e.to_string()))?;
    let poly = family.polynomial(&g, limits)?;
    let mut value = json!({ "graph": to_graph6(&g), "family": family.to_string(), "polynomial": poly.to_string() });
    let mut text = format!("{poly}\n");
    if let Some(r) = reference {
        let gr = load_graph(r)?;
        let report = threshold_q_with(&gr, &g, &family, limits)?;
        let outcome = match report.outcome {
            ThresholdOutcome::Threshold(q) => json!({ "threshold": q }),
            ThresholdOutcome::Never => json!("never"),
            ThresholdOutcome::Tie => json!("tie"),
        };
        value["reference"] = json!(to_graph6(&gr));
        value["difference"] = json!(report.difference.to_string());
        value["outcome"] = outcome;
        text.push_str(&format!("reference - graph = {}\n", report.difference));
        text.push_str(&match report.outcome {
            ThresholdOutcome::Threshold(q) => format!("reference exceeds graph for every q >= {q}\n"),
            ThresholdOutcome::Never => "reference never eventually exceeds graph\n".into(),
            ThresholdOutcome::Tie => "identical polynomials\n".into(),
        });
    }
    emit(json_mode, &value, || text);
    Ok(0)
}
