use std::path::Path;
use std::time::Instant;

use genset_core::arith::{self, format_sig6, Interval};
use genset_core::bounds::{analytic_union_bound, subset_union_bound};
use genset_core::format::{parse_family, parse_graph, write_family, write_graph};
use genset_core::kneser::turan::TuranParams;
use genset_core::*;
use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::{json, Value};

use crate::args::*;
use crate::config::RunConfig;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    PropertyFailed,
    Inconclusive,
}

/// What a subcommand prints, and how it should exit.
pub struct Output {
    pub text: String,
    pub status: Status,
}

impl Output {
    fn record(mut value: Value, status: Status, cfg: &RunConfig, started: Instant) -> Self {
        if cfg.meta {
            value["meta"] = json!({
                "elapsed_seconds": started.elapsed().as_secs_f64(),
                "version": env!("CARGO_PKG_VERSION"),
            });
        }
        Output {
            text: format!("{value}\n"),
            status,
        }
    }

    fn text(text: String) -> Self {
        Output {
            text,
            status: Status::Ok,
        }
    }
}

fn rational(r: &BigRational) -> Value {
    json!({ "value": arith::rational_string(r), "approx": arith::rational_to_f64(r) })
}

fn interval(v: &Interval) -> Value {
    let mut out = json!({
        "exact": v.is_exact(),
        "approx": v.approx(),
        "precision_bits": v.precision_bits,
    });
    if v.is_exact() {
        out["value"] = json!(arith::rational_string(&v.lower));
    } else {
        out["lower"] = json!(arith::rational_string(&v.lower));
        out["upper"] = json!(arith::rational_string(&v.upper));
    }
    out
}

fn big(v: &BigUint) -> Value {
    json!(v.to_string())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_family(path: &Path) -> Result<SetFamily, CliError> {
    parse_family(&read(path)?)
        .map(|(f, _)| f)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_graph(source: &GraphSource, limits: &Limits) -> Result<Graph, CliError> {
    if let Some(path) = &source.graph {
        let g = parse_graph(&read(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        if g.vertex_count() > limits.graph_m {
            return Err(CliError::Core(Error::CapExceeded {
                what: "graph vertices",
                value: g.vertex_count() as u64,
                cap: limits.graph_m as u64,
            }));
        }
        return Ok(g);
    }
    let path = source.family.as_ref().expect("clap enforces one source");
    Ok(disjointness_graph(&load_family(path)?, limits)?.into_graph())
}

fn parse_rational_arg(name: &str, s: &str) -> Result<BigRational, CliError> {
    arith::parse_rational(s).ok_or_else(|| CliError::Usage(format!("--{name}: '{s}' is not a rational number")))
}

fn holds_status(holds: bool) -> Status {
    if holds {
        Status::Ok
    } else {
        Status::PropertyFailed
    }
}

pub fn run(command: &Command, format: Option<Format>, cfg: &RunConfig) -> Result<Output, CliError> {
    let started = Instant::now();
    let limits = &cfg.limits;
    match command {
        Command::Construct { n, k, output } => {
            let f = canonical_generator(*n, *k)?;
            let out = match format.unwrap_or(Format::Text) {
                Format::Json => {
                    let sets: Vec<String> = f.iter().map(|x| x.to_string()).collect();
                    Output::record(json!({ "n": n, "k": k, "size": f.len(), "sets": sets }), Status::Ok, cfg, started)
                }
                _ => Output::text(write_family(&f)),
            };
            if let Some(path) = output {
                std::fs::write(path, &out.text)
                    .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
                return Ok(Output::text(String::new()));
            }
            Ok(out)
        }

        Command::Check { family, k, base, decompose: target } => {
            let f = load_family(family)?;
            if let Some(target) = target {
                let x: SubsetMask = target
                    .parse()
                    .map_err(|e| CliError::Usage(format!("--decompose: {e}")))?;
                let d = decompose(&f, *k, x, limits)?;
                let mut rec = json!({ "holds": d.is_some(), "target": x.to_string() });
                if let Some(d) = &d {
                    rec["parts"] = json!(d.parts.iter().map(|p| p.to_string()).collect::<Vec<_>>());
                }
                return Ok(Output::record(rec, holds_status(d.is_some()), cfg, started));
            }
            let v = if *base { is_k_base(&f, *k, limits)? } else { is_k_generator(&f, *k, limits)? };
            let mut rec = json!({ "holds": v.holds, "property": if *base { "base" } else { "generator" }, "k": k });
            if let Some(c) = v.counterexample {
                rec["counterexample"] = json!(c.to_string());
            }
            Ok(Output::record(rec, holds_status(v.holds), cfg, started))
        }

        Command::SearchMin { n, k, sweep, n_max, k_max } => {
            if *sweep {
                let reports = verify_conjecture_range(n_max.unwrap(), k_max.unwrap(), limits)?;
                let status = if reports.iter().any(|r| !r.conclusive) {
                    Status::Inconclusive
                } else if reports.iter().any(|r| r.conjecture_holds() == Some(false)) {
                    Status::PropertyFailed
                } else {
                    Status::Ok
                };
                let text = match format.unwrap_or(Format::Csv) {
                    Format::Json => reports
                        .iter()
                        .map(|r| format!("{}\n", search_json(r, cfg)))
                        .collect(),
                    _ => sweep_csv(&reports, cfg),
                };
                return Ok(Output { text, status });
            }
            let r = min_generator_size(n.unwrap(), k.unwrap(), limits)?;
            let status = match r.conjecture_holds() {
                None => Status::Inconclusive,
                Some(h) => holds_status(h),
            };
            if format == Some(Format::Csv) {
                return Ok(Output { text: sweep_csv(std::slice::from_ref(&r), cfg), status });
            }
            Ok(Output { text: format!("{}\n", search_json(&r, cfg)), status })
        }

        Command::Graph { source, cliques, density, emit_edges } => {
            let g = load_graph(source, limits)?;
            if *emit_edges {
                return Ok(Output::text(write_graph(&g)));
            }
            let mut rec = json!({ "vertices": g.vertex_count(), "edges": g.edge_count() });
            if let Some(r) = cliques {
                rec["cliques"] = json!({ "r": r, "count": count_cliques(&g, *r, limits)?.to_string() });
            }
            if let Some(r) = density {
                rec["density"] = json!({ "r": r, "density": rational(&clique_density(&g, *r, limits)?) });
            }
            Ok(Output::record(rec, Status::Ok, cfg, started))
        }

        Command::Turan { op } => match op {
            TuranOp::Eta { r, s } => {
                let eta = turan_eta(*r, *s)?;
                Ok(Output::record(json!({ "r": r, "s": s, "eta": rational(&eta) }), Status::Ok, cfg, started))
            }
            TuranOp::Graph { s, part_size } => Ok(Output::text(write_graph(&turan_blowup_graph(*s, *part_size, limits)?))),
            TuranOp::ClosedForm { s, part_size, r } => {
                let mut rec = json!({ "s": s, "T": part_size, "r": r, "count": big(&turan_clique_closed_form(*s, *part_size, *r)) });
                if let Ok(p) = TuranParams::new(*r, *s, *part_size) {
                    rec["density"] = rational(&p.density());
                    rec["eta"] = rational(&p.eta());
                }
                Ok(Output::record(rec, Status::Ok, cfg, started))
            }
            TuranOp::Erdos { l, s, r } => {
                let c = erdos_max_check(*l, *s, *r, limits)?;
                let rec = json!({
                    "l": c.l, "s": c.s, "r": c.r,
                    "max_count": c.max_count.to_string(),
                    "turan_count": c.turan_count.to_string(),
                    "attained_by_turan": c.attained_by_turan,
                    "free_graphs": c.free_graphs,
                });
                Ok(Output::record(rec, holds_status(c.attained_by_turan), cfg, started))
            }
        },

        Command::Blowup { source, a, t } => {
            let g = load_graph(source, limits)?;
            let spec = BlowupSpec::new(*a, *t)?;
            let found = find_blowup(&g, spec, limits)?;
            let rec = json!({ "a": a, "t": t, "found": found.is_some(), "classes": found });
            Ok(Output::record(rec, holds_status(found.is_some()), cfg, started))
        }

        Command::Bounds { op } => bounds(op, format, cfg, started),
        Command::Experiment { op } => experiment(op, cfg, started),
    }
}

fn search_json(r: &SearchReport, cfg: &RunConfig) -> Value {
    let mut rec = json!({
        "n": r.n,
        "k": r.k,
        "trivial_bound": r.trivial_bound,
        "canonical_size": r.canonical_size,
        "lower_bound": r.lower_bound,
        "minimum": r.minimum,
        "conclusive": r.conclusive,
        "conjecture_holds": r.conjecture_holds(),
        "nodes": r.nodes_explored,
        "witness": r.witness.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    });
    if cfg.meta {
        rec["meta"] = json!({ "elapsed_seconds": r.elapsed.as_secs_f64() });
    }
    rec
}

fn sweep_csv(reports: &[SearchReport], cfg: &RunConfig) -> String {
    let mut out = String::from("n,k,trivial_bound,canonical_size,minimum,conjecture_holds,nodes,seconds\n");
    for r in reports {
        let holds = match r.conjecture_holds() {
            Some(h) => h.to_string(),
            None => "inconclusive".into(),
        };
        let seconds = if cfg.meta { format!("{:.6}", r.elapsed.as_secs_f64()) } else { String::new() };
        out += &format!(
            "{},{},{},{},{},{},{},{}\n",
            r.n, r.k, r.trivial_bound, r.canonical_size, r.minimum, holds, r.nodes_explored, seconds
        );
    }
    out
}

fn sample_mode(trials: Option<u64>, cfg: &RunConfig, what: &str) -> Result<SampleMode, CliError> {
    Ok(match trials {
        None => SampleMode::Exact,
        Some(trials) => SampleMode::Sampled { seed: cfg.require_seed(what)?, trials },
    })
}

fn probability(p: &Probability) -> Value {
    match p {
        Probability::Exact(r) => json!({ "mode": "exact", "probability": rational(r) }),
        Probability::Sampled(e) => json!({
            "mode": "sampled",
            "estimate": e.estimate,
            "std_error": e.std_error,
            "hits": e.hits,
            "trials": e.trials,
        }),
    }
}

fn bounds(op: &BoundsOp, format: Option<Format>, cfg: &RunConfig, started: Instant) -> Result<Output, CliError> {
    let limits = &cfg.limits;
    match op {
        BoundsOp::Trivial { n, k } => {
            let b = trivial_lower_bound(*n, *k)?;
            if format == Some(Format::Text) {
                return Ok(Output::text(format!("{b}\n")));
            }
            Ok(Output::record(json!({ "n": n, "k": k, "trivial_bound": b }), Status::Ok, cfg, started))
        }
        BoundsOp::Lemma4 { n, k, m, delta, t } => {
            let p = match delta {
                Some(d) => BoundParams::new(*n, *k, *m, parse_rational_arg("delta", d)?, *t)?,
                None => BoundParams::from_power_of_two(*n, *k, *m, *t)?,
            };
            let v = lemma4_bound(&p)?;
            let rec = json!({
                "n": n, "k": k, "m": m, "t": t,
                "delta": rational(&p.delta),
                "in_regime": p.in_regime(),
                "bound": interval(&v),
            });
            Ok(Output::record(rec, Status::Ok, cfg, started))
        }
        BoundsOp::Analytic { n, k, m, t } => {
            let v = analytic_union_bound(*n, *k, *m, *t)?;
            Ok(Output::record(json!({ "n": n, "k": k, "m": m, "t": t, "bound": interval(&v) }), Status::Ok, cfg, started))
        }
        BoundsOp::UnionCheck { family, k, delta, t, trials } => {
            let f = load_family(family)?;
            let delta = parse_rational_arg("delta", delta)?;
            let mode = sample_mode(*trials, cfg, "sampled union check")?;
            let rep = union_bound_check(&f, *k, &delta, *t, mode, limits)?;
            let rec = json!({
                "n": rep.n, "k": rep.k, "m": rep.m, "t": rep.t,
                "threshold": rep.threshold,
                "in_regime": rep.in_regime,
                "probability": probability(&rep.probability),
                "subset_bound": rep.subset_bound.as_ref().map(rational),
                "analytic_bound": interval(&rep.analytic_bound),
                "bound_holds": rep.bound_holds,
            });
            Ok(Output::record(rec, holds_status(rep.bound_holds), cfg, started))
        }
        BoundsOp::Coverage { family, k, assume } => {
            let f = load_family(family)?;
            let rep = coverage_inequality_check(&f, *k, !assume, limits)?;
            let rec = json!({
                "tuples": big(&rep.tuples),
                "two_to_n": big(&rep.two_to_n),
                "holds": rep.holds,
                "generator_verified": rep.generator_verified,
            });
            Ok(Output::record(rec, holds_status(rep.holds), cfg, started))
        }
        BoundsOp::Table { n_min, n_max, k_min, k_max } => {
            let rows = bound_table(*n_min..=*n_max, *k_min..=*k_max)?;
            let text = match format.unwrap_or(Format::Csv) {
                Format::Json => rows
                    .iter()
                    .map(|r| {
                        format!(
                            "{}\n",
                            json!({
                                "n": r.n, "k": r.k,
                                "trivial_bound": r.trivial_bound,
                                "factorial_root_bound": format_sig6(r.factorial_root_bound),
                                "k_bound": format_sig6(r.k_bound),
                                "canonical_size": r.canonical_size,
                            })
                        )
                    })
                    .collect(),
                _ => {
                    let mut out = String::from("n,k,trivial_bound,factorial_root_bound,k_bound,canonical_size\n");
                    for r in &rows {
                        out += &format!(
                            "{},{},{},{},{},{}\n",
                            r.n,
                            r.k,
                            r.trivial_bound,
                            format_sig6(r.factorial_root_bound),
                            format_sig6(r.k_bound),
                            r.canonical_size
                        );
                    }
                    out
                }
            };
            Ok(Output::text(text))
        }
    }
}

fn experiment(op: &ExperimentOp, cfg: &RunConfig, started: Instant) -> Result<Output, CliError> {
    let limits = &cfg.limits;
    match op {
        ExperimentOp::DenseSubset { source, l, r, threshold, samples } => {
            let g = load_graph(source, limits)?;
            let threshold = parse_rational_arg("threshold", threshold)?;
            let mode = match samples {
                None => DenseMode::Exact,
                Some(samples) => DenseMode::Sampled { seed: cfg.require_seed("sampled dense-subset")?, samples: *samples },
            };
            let result = dense_subset_fraction(&g, *l, *r, &threshold, mode, limits)?;
            let body = match result {
                DenseFraction::Exact { dense, total, fraction } => json!({
                    "mode": "exact", "dense": big(&dense), "total": big(&total), "fraction": rational(&fraction),
                }),
                DenseFraction::Sampled { hits, samples, estimate, std_error } => json!({
                    "mode": "sampled", "hits": hits, "samples": samples, "estimate": estimate, "std_error": std_error,
                }),
            };
            let rec = json!({ "l": l, "r": r, "threshold": rational(&threshold), "result": body });
            Ok(Output::record(rec, Status::Ok, cfg, started))
        }
        ExperimentOp::UnionProb { family, t, threshold, trials } => {
            let f = load_family(family)?;
            let mode = sample_mode(*trials, cfg, "sampled union probability")?;
            let p = small_union_probability(&f, *t, *threshold, mode, limits)?;
            let mut rec = json!({ "t": t, "threshold": threshold, "m": f.len() });
            rec["result"] = probability(&p);
            if let Ok(b) = subset_union_bound(f.n(), f.len() as u64, *t, *threshold) {
                rec["subset_bound"] = rational(&b);
            }
            Ok(Output::record(rec, Status::Ok, cfg, started))
        }
    }
}
