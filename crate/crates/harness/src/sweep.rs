//! Exhaustive sweeps over regular graphs and constraint graphs.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::time::{SystemTime, UNIX_EPOCH};

use homcert::bounds::{mt_bound_with, ordering_heuristic};
use homcert::canon::{all_constraint_graphs, are_isomorphic, constraint_canonical_form};
use homcert::closed::{conjecture_rhs_compare_with, ConjectureVerdict, Dominance};
use homcert::graph::catalog::{clique_union, constraint_catalog, kdd_union};
use homcert::graph::{count_c3, count_c4, count_p4, to_graph6};
use homcert::indep::{indep_profile, IndepProfile};
use homcert::regular::enumerate_regular;
use homcert::{BigInt, ConstraintGraph, Error, Graph, Limits, Rational};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::config::{Check, SweepConfig};
use crate::input::{constraint_id, load_constraint, load_graph6_file};
use crate::report::{tally, Record, Status, Summary, SweepReport, SCHEMA};
use crate::HarnessError;

/// Seeded orderings per `(G, H)` pair in the `mt-bound` check.
pub const MT_ORDERINGS: u64 = 5;

/// Fugacities for the `lambda-identity` check, as `(numerator, denominator)`.
pub const LAMBDAS: [(i64, i64); 4] = [(1, 4), (1, 2), (1, 1), (2, 1)];

/// The constraint graphs a config selects, deduplicated up to isomorphism
/// with the first name kept.
pub fn constraint_graphs(config: &SweepConfig) -> Result<Vec<(String, ConstraintGraph)>, HarnessError> {
    let mut named = Vec::new();
    for name in &config.h_names {
        named.push((name.clone(), load_constraint(name)?.0));
    }
    for path in &config.h_files {
        let spec = path.display().to_string();
        named.push((spec.clone(), load_constraint(&spec)?.0));
    }
    if let Some(k) = config.h_catalog_max_order {
        named.extend(constraint_catalog(k));
    }
    if let Some(k) = config.h_all_max_order {
        for order in 1..=k {
            named.extend(all_constraint_graphs(order).into_iter().map(|h| (constraint_id(&h), h)));
        }
    }
    let mut seen = BTreeSet::new();
    Ok(named
        .into_iter()
        .filter(|(_, h)| seen.insert(constraint_canonical_form(h).rows().to_vec()))
        .collect())
}

/// Every graph considered at `(n, d)`, from the generator or the graph6
/// files.
fn graphs_for(config: &SweepConfig, external: &[Graph], n: usize, d: usize) -> Result<Vec<Graph>, HarnessError> {
    if config.graph6_files.is_empty() {
        return Ok(enumerate_regular(n, d, false)?);
    }
    Ok(external
        .iter()
        .filter(|g| g.order() == n && g.regular_degree() == Some(d))
        .cloned()
        .collect())
}

struct Extremal {
    graph: Graph,
    value: BigInt,
}

struct PairData {
    n: usize,
    d: usize,
    graphs: Vec<Graph>,
    c4: Option<Extremal>,
    p4c4: Option<Extremal>,
    lambda: Option<(Graph, IndepProfile)>,
}

enum Item<'a> {
    Lemma(Check, &'a PairData, &'a Graph),
    Pair(Check, &'a PairData, &'a Graph, &'a (String, ConstraintGraph)),
}

pub fn run_sweep(config: &SweepConfig, limits: &Limits) -> Result<SweepReport, HarnessError> {
    config.validate()?;
    let hs = constraint_graphs(config)?;
    let mut external = Vec::new();
    for path in &config.graph6_files {
        external.extend(load_graph6_file(path)?);
    }
    if let Some(g) = external.iter().find(|g| g.regular_degree().is_none()) {
        return Err(HarnessError::Input(format!("graph6 input {} is not regular", to_graph6(g))));
    }
    let wants = |c: Check| config.checks.contains(&c);
    let mut data = Vec::new();
    for (n, d) in config.pairs() {
        let graphs = graphs_for(config, &external, n, d)?;
        let c4 = (wants(Check::LemmaC4) && Check::LemmaC4.applies(n, d))
            .then(|| kdd_union(d, n / (2 * d)))
            .transpose()?
            .map(|graph| Extremal {
                value: count_c4(&graph).into(),
                graph,
            });
        let p4c4 = (wants(Check::LemmaP4c4) && Check::LemmaP4c4.applies(n, d))
            .then(|| clique_union(d, n / (d + 1)))
            .transpose()?
            .map(|graph| Extremal {
                value: p4_minus_c4(&graph),
                graph,
            });
        let lambda = (wants(Check::LambdaIdentity) && Check::LambdaIdentity.applies(n, d))
            .then(|| kdd_union(d, n / (2 * d)))
            .transpose()?
            .map(|g| {
                let p = indep_profile(&g);
                (g, p)
            });
        data.push(PairData {
            n,
            d,
            graphs,
            c4,
            p4c4,
            lambda,
        });
    }

    let mut items = Vec::new();
    for pd in &data {
        for check in [Check::LemmaC4, Check::LemmaP4c4, Check::LambdaIdentity] {
            if wants(check) && check.applies(pd.n, pd.d) {
                for g in &pd.graphs {
                    if check != Check::LemmaC4 || count_c3(g) == 0u32.into() {
                        items.push(Item::Lemma(check, pd, g));
                    }
                }
            }
        }
        for g in pd.graphs.iter().filter(|g| !config.connected_only || g.is_connected()) {
            for h in &hs {
                for check in [Check::Conjecture, Check::MtBound] {
                    if wants(check) {
                        items.push(Item::Pair(check, pd, g, h));
                    }
                }
            }
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.unwrap_or(0))
        .build()
        .map_err(|e| HarnessError::Io(e.to_string()))?;
    let evaluated: Vec<Vec<Record>> =
        pool.install(|| items.par_iter().map(|item| evaluate(item, config.seed, limits)).collect::<Result<_, _>>())?;
    let records: Vec<Record> = evaluated.into_iter().flatten().collect();

    let (checks, equality_cases) = tally(&records, &config.checks);
    let graphs: BTreeSet<&str> = records.iter().map(|r| r.graph.as_str()).collect();
    let summary = Summary {
        schema: SCHEMA,
        version: env!("CARGO_PKG_VERSION"),
        seed: config.seed,
        timestamp: SystemTime::now().duration_since(UNIX_EPOCH).map(|t| t.as_secs()).unwrap_or(0),
        config: config.clone(),
        pairs: config.pairs(),
        graphs: graphs.len(),
        constraint_graphs: hs.iter().map(|(id, _)| id.clone()).collect(),
        violations: checks.values().map(|t| t.violations).sum(),
        skipped: checks.values().map(|t| t.skipped).sum(),
        checks,
        equality_cases,
    };
    Ok(SweepReport { records, summary })
}

fn p4_minus_c4(g: &Graph) -> BigInt {
    BigInt::from(count_p4(g)) - BigInt::from(count_c4(g))
}

fn sign_name(o: Ordering) -> &'static str {
    match o {
        Ordering::Less => "less",
        Ordering::Equal => "equal",
        Ordering::Greater => "greater",
    }
}

fn dominance_name(d: Dominance) -> &'static str {
    match d {
        Dominance::Left => "kdd",
        Dominance::Equal => "tie",
        Dominance::Right => "kdp1",
    }
}

fn base(check: Check, pd: &PairData, g: &Graph, h: Option<&str>) -> Record {
    Record {
        check,
        graph: to_graph6(g),
        n: pd.n,
        d: pd.d,
        h: h.map(str::to_owned),
        status: Status::Ok,
        reason: None,
        sign: None,
        equality: false,
        details: Value::Null,
    }
}

fn skipped(mut r: Record, e: Error) -> Result<Record, HarnessError> {
    match e {
        Error::Guard { guard, .. } => {
            r.status = Status::Skipped;
            r.reason = Some(format!("guard {guard}: {e}"));
            Ok(r)
        }
        other => Err(other.into()),
    }
}

fn evaluate(item: &Item<'_>, seed: u64, limits: &Limits) -> Result<Vec<Record>, HarnessError> {
    match *item {
        Item::Lemma(check, pd, g) => Ok(vec![lemma(check, pd, g)]),
        Item::Pair(Check::Conjecture, pd, g, (id, h)) => {
            let r = base(Check::Conjecture, pd, g, Some(id));
            Ok(vec![match conjecture_rhs_compare_with(g, h, limits) {
                Ok(v) => conjecture_record(r, pd, g, h, &v),
                Err(e) => skipped(r, e)?,
            }])
        }
        Item::Pair(_, pd, g, (id, h)) => (0..MT_ORDERINGS)
            .map(|i| {
                let s = seed.wrapping_add(i);
                let mut r = base(Check::MtBound, pd, g, Some(id));
                let order = ordering_heuristic(g, s).order;
                match mt_bound_with(g, h, &order, limits) {
                    Ok(cert) => {
                        let o = cert.lhs.cmp(&cert.rhs);
                        r.sign = Some(sign_name(o));
                        r.equality = o == Ordering::Equal;
                        if !cert.holds {
                            r.status = Status::Violation;
                            r.reason = Some("hom(G,H)^d exceeds the back-degree product".into());
                        }
                        r.details = json!({
                            "seed": s,
                            "order": cert.order,
                            "hom": cert.hom.to_string(),
                            "lhs": cert.lhs.to_string(),
                            "rhs": cert.rhs.to_string(),
                        });
                        Ok(r)
                    }
                    Err(e) => skipped(r, e),
                }
            })
            .collect(),
    }
}

/// Graphs for which `hom(G,H)` meets the larger bound: unions of the
/// dominant extremal graph, and every graph when `H` is a complete looped
/// graph.
pub fn expected_equality(g: &Graph, h: &ConstraintGraph, d: usize, dominant: Dominance) -> bool {
    let n = g.order();
    if h.is_complete_looped() {
        return true;
    }
    let is_union = |ext: Result<Graph, Error>| ext.map(|e| are_isomorphic(g, &e)).unwrap_or(false);
    let kdd = n % (2 * d) == 0 && dominant != Dominance::Right && is_union(kdd_union(d, n / (2 * d)));
    let kdp1 = n % (d + 1) == 0 && dominant != Dominance::Left && is_union(clique_union(d, n / (d + 1)));
    kdd || kdp1
}

fn conjecture_record(mut r: Record, pd: &PairData, g: &Graph, h: &ConstraintGraph, v: &ConjectureVerdict) -> Record {
    let against = match v.dominant {
        Dominance::Right => v.vs_kdp1,
        _ => v.vs_kdd,
    };
    let expected = expected_equality(g, h, pd.d, v.dominant);
    r.sign = Some(sign_name(against));
    r.equality = v.equality;
    if !v.satisfied {
        r.status = Status::Violation;
        r.reason = Some("hom(G,H) exceeds the larger bound".into());
    } else if v.equality != expected {
        r.status = Status::Violation;
        r.reason = Some(if v.equality {
            "equality outside the expected extremal graphs".into()
        } else {
            "expected extremal graph misses equality".into()
        });
    }
    r.details = json!({
        "hom": v.hom.to_string(),
        "hom_kdd": v.hom_kdd.to_string(),
        "hom_kdp1": v.hom_kdp1.to_string(),
        "vs_kdd": sign_name(v.vs_kdd),
        "vs_kdp1": sign_name(v.vs_kdp1),
        "dominant": dominance_name(v.dominant),
        "expected_equality": expected,
    });
    r
}

fn lemma(check: Check, pd: &PairData, g: &Graph) -> Record {
    let mut r = base(check, pd, g, None);
    match check {
        Check::LemmaC4 | Check::LemmaP4c4 => {
            let (ext, value, want) = match check {
                Check::LemmaC4 => (pd.c4.as_ref().expect("extremal prepared"), BigInt::from(count_c4(g)), Ordering::Less),
                _ => (pd.p4c4.as_ref().expect("extremal prepared"), p4_minus_c4(g), Ordering::Greater),
            };
            let o = value.cmp(&ext.value);
            let extremal = are_isomorphic(g, &ext.graph);
            r.sign = Some(sign_name(o));
            r.equality = o == Ordering::Equal;
            let ok = if extremal { o == Ordering::Equal } else { o == want };
            if !ok {
                r.status = Status::Violation;
                r.reason = Some(if o == Ordering::Equal {
                    "a second graph attains the extremal value".into()
                } else {
                    "the extremal union is beaten".into()
                });
            }
            r.details = json!({
                "value": value.to_string(),
                "extremal_value": ext.value.to_string(),
                "extremal_graph": to_graph6(&ext.graph),
                "is_extremal": extremal,
            });
        }
        _ => {
            let (ext, ext_profile) = pd.lambda.as_ref().expect("extremal prepared");
            let profile = indep_profile(g);
            let mut worst = Ordering::Less;
            let mut values = Vec::new();
            for (p, q) in LAMBDAS {
                let lambda = Rational::new(p.into(), q.into());
                let mine = profile.eval(&lambda);
                let theirs = ext_profile.eval(&lambda);
                worst = worst.max(mine.cmp(&theirs));
                values.push(json!({
                    "lambda": lambda.to_string(),
                    "value": mine.to_string(),
                    "extremal_value": theirs.to_string(),
                }));
            }
            r.sign = Some(sign_name(worst));
            r.equality = worst == Ordering::Equal;
            if worst == Ordering::Greater {
                r.status = Status::Violation;
                r.reason = Some("independence polynomial exceeds the extremal union".into());
            }
            r.details = json!({
                "counts": profile.counts,
                "extremal_graph": to_graph6(ext),
                "values": values,
            });
        }
    }
    r
}
