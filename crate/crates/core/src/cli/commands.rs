use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::args::*;
use super::number::{fmt_num, fmt_value, round_json};
use super::CliError;
use crate::classes::{
    census, colouring_number, max_entropy_prediction, uniform_exact, uniform_mcmc, HereditaryClass, MAX_CENSUS_VERTICES,
};
use crate::cutmetrics::{
    cut_norm_exact, cut_norm_heuristic, d_box_witness, delta_box_upper_with, delta_graph_graphon_with, Kernel,
    SearchOptions,
};
use crate::experiments::{
    emit, render, run_ball_count, run_convergence, run_entropy_rate, run_growth, run_regularity, standard_corpus,
    ExperimentReport, Format,
};
use crate::graphons::{
    bar_k, binary_entropy, clipped_entropy, edge_density, entropy, p_induced, parse_graphon, sample, step, to_json,
    Partition, StepGraphon,
};
use crate::graphs::{canonical_form, graph6, hom_density, induced_density, Graph};
use crate::{rng, Error, Result};

type Outcome = std::result::Result<String, CliError>;

/// Runs one parsed command; seed echoes are appended to `notes`.
pub(super) fn execute(cli: &Cli, notes: &mut Vec<String>) -> Outcome {
    let json = cli.json;
    match &cli.command {
        Command::Entropy(a) => entropy_cmd(a, json),
        Command::Density(a) => density_cmd(a, json),
        Command::Cutnorm(a) => cutnorm_cmd(a, json, notes),
        Command::Cutdist(a) => cutdist_cmd(a, json, notes),
        Command::Step(a) => step_cmd(a),
        Command::Sample(a) => sample_cmd(a, json, notes),
        Command::Census(a) => census_cmd(a, json),
        Command::Growth(a) => {
            let start = Instant::now();
            let report = run_growth(&class(&a.class)?, a.n_max)?;
            report_out(report, &a.report, json, start)
        }
        Command::Colouring(a) => colouring_cmd(a, json),
        Command::Converge(a) => {
            let start = Instant::now();
            let seed = effective_seed(a.seed, notes);
            let report = run_convergence(&class(&a.class)?, &parse_graphon(&a.maximizer)?, &a.ns, a.samples, seed)?;
            report_out(report, &a.report, json, start)
        }
        Command::EntropyRate(a) => {
            let start = Instant::now();
            let report = run_entropy_rate(&parse_graphon(&a.graphon)?, a.n_max)?;
            report_out(report, &a.report, json, start)
        }
        Command::Balls(a) => {
            let start = Instant::now();
            let report = run_ball_count(&parse_graphon(&a.graphon)?, a.n, &a.deltas)?;
            report_out(report, &a.report, json, start)
        }
        Command::Regularity(a) => {
            let start = Instant::now();
            let seed = effective_seed(a.seed, notes);
            let subjects = if a.subject.is_empty() {
                standard_corpus(seed)
            } else {
                a.subject.clone()
            };
            let report = run_regularity(&subjects, &a.ks, seed)?;
            report_out(report, &a.report, json, start)
        }
        Command::Graphon(GraphonCommand::Make(a)) => {
            let w = parse_graphon(&a.literal)?;
            document_out(&w, a.output.as_deref())
        }
        Command::Graph6(a) => graph6_cmd(a, json),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn class(name: &str) -> Result<HereditaryClass> {
    name.parse()
}

fn graph(code: &str) -> Result<Graph> {
    graph6::decode(code)
}

fn effective_seed(seed: Option<u64>, notes: &mut Vec<String>) -> u64 {
    seed.unwrap_or_else(|| {
        let s = rand::random::<u64>();
        notes.push(format!("seed: {s}"));
        s
    })
}

fn json_text(v: &impl Serialize) -> String {
    let v = round_json(serde_json::to_value(v).expect("output serializes"));
    let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
    s.push('\n');
    s
}

fn scalar(name: &str, x: f64, json: bool) -> String {
    if json {
        json_text(&json!({ name: x }))
    } else {
        format!("{}\n", fmt_num(x))
    }
}

/// `key value` lines, or a JSON object with the same entries.
fn record(entries: &[(&str, Value)], json: bool) -> String {
    if json {
        let map: serde_json::Map<String, Value> = entries.iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
        return json_text(&Value::Object(map));
    }
    let mut out = String::new();
    for (k, v) in entries {
        let text = match v {
            Value::Array(items) => items.iter().map(fmt_value).collect::<Vec<_>>().join(" "),
            Value::Null => "none".into(),
            other => fmt_value(other),
        };
        out.push_str(&format!("{k} {text}\n"));
    }
    out
}

fn entropy_cmd(a: &EntropyArgs, json: bool) -> Outcome {
    match (&a.graphon, a.x) {
        (Some(lit), None) => {
            if a.clipped {
                return Err(usage("--clipped applies to --x only"));
            }
            Ok(scalar("entropy", entropy(&parse_graphon(lit)?), json))
        }
        (None, Some(x)) => {
            let h = if a.clipped { clipped_entropy(x)? } else { binary_entropy(x)? };
            Ok(scalar("h", h, json))
        }
        _ => Err(usage("give exactly one of --graphon and --x")),
    }
}

fn density_cmd(a: &DensityArgs, json: bool) -> Outcome {
    match (&a.graphon, &a.host) {
        (Some(lit), None) => {
            let w = parse_graphon(lit)?;
            if a.hom {
                return Err(usage("--hom needs a graph --host"));
            }
            match &a.pattern {
                None => Ok(scalar("edge_density", edge_density(&w), json)),
                Some(p) => Ok(scalar("p_induced", p_induced(&graph(p)?, &w)?, json)),
            }
        }
        (None, Some(host)) => {
            let pattern = a.pattern.as_deref().ok_or_else(|| usage("--host needs a --pattern"))?;
            let (h, g) = (graph(pattern)?, graph(host)?);
            let d = if a.hom { hom_density(&h, &g)? } else { induced_density(&h, &g)? };
            let name = if a.hom { "hom_density" } else { "induced_density" };
            if json {
                Ok(json_text(&json!({ name: d.value(), "count": d.count.to_string(), "total": d.total.to_string() })))
            } else {
                Ok(format!("{}\n", fmt_num(d.value())))
            }
        }
        _ => Err(usage("give exactly one of --graphon and --host")),
    }
}

fn kernel(lit: &str) -> Result<Kernel> {
    match lit.strip_prefix('@') {
        Some(path) => Kernel::load(path),
        None => Ok(Kernel::from(&parse_graphon(lit)?)),
    }
}

fn cutnorm_cmd(a: &CutnormArgs, json: bool, notes: &mut Vec<String>) -> Outcome {
    let kern = match (&a.kernel, &a.u, &a.v) {
        (Some(k), None, None) => kernel(k)?,
        (None, Some(u), Some(v)) => Kernel::difference(&parse_graphon(u)?, &parse_graphon(v)?),
        _ => return Err(usage("give --kernel, or both --u and --v")),
    };
    let result = if a.heuristic {
        let seed = effective_seed(a.seed, notes);
        cut_norm_heuristic(&kern, a.restarts, seed)
    } else {
        cut_norm_exact(&kern)?
    };
    if json {
        Ok(json_text(&result))
    } else {
        Ok(format!("{}\n", fmt_num(result.value)))
    }
}

fn cutdist_cmd(a: &CutdistArgs, json: bool, notes: &mut Vec<String>) -> Outcome {
    let mut opts = SearchOptions {
        seed: 0,
        iterations: a.iterations,
        restarts: a.restarts,
        max_assignments: a.max_assignments,
    };
    match (&a.u, &a.v, &a.graph, &a.graphon) {
        (Some(u), Some(v), None, None) => {
            let (u, v) = (parse_graphon(u)?, parse_graphon(v)?);
            match a.cells {
                None => {
                    let r = d_box_witness(&u, &v)?;
                    Ok(if json { json_text(&r) } else { format!("{}\n", fmt_num(r.value)) })
                }
                Some(m) => {
                    opts.seed = effective_seed(a.seed, notes);
                    let r = delta_box_upper_with(&u, &v, m, &opts)?;
                    Ok(if json { json_text(&r) } else { format!("{}\n", fmt_num(r.value)) })
                }
            }
        }
        (None, None, Some(g), Some(w)) => {
            if a.cells.is_some() {
                return Err(usage("--cells applies to --u/--v only"));
            }
            opts.seed = effective_seed(a.seed, notes);
            let r = delta_graph_graphon_with(&graph(g)?, &parse_graphon(w)?, &opts)?;
            Ok(if json { json_text(&r) } else { format!("{}\n", fmt_num(r.value)) })
        }
        _ => Err(usage("give both --u and --v, or both --graph and --graphon")),
    }
}

fn document_out(w: &StepGraphon, output: Option<&Path>) -> Outcome {
    let doc = to_json(w);
    match output {
        None => Ok(format!("{doc}\n")),
        Some(path) => {
            std::fs::write(path, format!("{doc}\n")).map_err(|e| Error::io(path, e))?;
            Ok(format!("wrote {}\n", path.display()))
        }
    }
}

fn step_cmd(a: &StepArgs) -> Outcome {
    let w = parse_graphon(&a.graphon)?;
    let stepped = match (a.k, a.groups.is_empty()) {
        (Some(k), true) => bar_k(&w, k)?,
        (None, false) => step(&w, &Partition::Groups(a.groups.clone()))?,
        _ => return Err(usage("give exactly one of --groups and --k")),
    };
    document_out(&stepped, a.output.as_deref())
}

fn sample_cmd(a: &SampleArgs, json: bool, notes: &mut Vec<String>) -> Outcome {
    if a.count == 0 {
        return Err(usage("--count must be at least 1"));
    }
    let seed = effective_seed(a.seed, notes);
    let seed_of = |i: usize| if i == 0 { seed } else { rng::mix(seed, i as u64) };
    let mut graphs = Vec::with_capacity(a.count);
    let mut mcmc = Vec::new();
    match (&a.graphon, &a.class) {
        (Some(lit), None) => {
            if a.steps.is_some() {
                return Err(usage("--steps applies to --class only"));
            }
            let w = parse_graphon(lit)?;
            for i in 0..a.count {
                graphs.push(sample(&w, a.n, seed_of(i))?);
            }
        }
        (None, Some(name)) => {
            let c = class(name)?;
            let chain = a.steps.is_some() || a.n > MAX_CENSUS_VERTICES;
            for i in 0..a.count {
                if chain {
                    let steps = a.steps.unwrap_or_else(|| 50 * (a.n * (a.n - 1) / 2).max(20) as u64);
                    let s = uniform_mcmc(&c, a.n, steps, seed_of(i))?;
                    graphs.push(s.graph.clone());
                    mcmc.push(s);
                } else {
                    graphs.push(uniform_exact(&c, a.n, seed_of(i))?);
                }
            }
            if chain {
                notes.push("quality: HEURISTIC (Metropolis chain, mixing not certified)".into());
            }
        }
        _ => return Err(usage("give exactly one of --graphon and --class")),
    }
    let codes: Vec<String> = graphs.iter().map(graph6::encode).collect();
    if json {
        let mut v = json!({ "seed": seed, "graphs": codes });
        if !mcmc.is_empty() {
            v["mcmc"] = serde_json::to_value(&mcmc).expect("samples serialize");
        }
        Ok(json_text(&v))
    } else {
        Ok(codes.iter().map(|c| format!("{c}\n")).collect())
    }
}

fn census_cmd(a: &CensusArgs, json: bool) -> Outcome {
    let c = class(&a.class)?;
    match (a.n, a.n_max) {
        (Some(n), None) => {
            let row = census(&c, n)?;
            if json {
                return Ok(json_text(&row));
            }
            Ok(record(
                &[
                    ("n", json!(row.n)),
                    ("labelled", json!(row.labelled)),
                    ("unlabelled", json!(row.unlabelled)),
                    ("exponent", json!(row.exponent)),
                ],
                false,
            ))
        }
        (None, Some(n_max)) => {
            let rows = (1..=n_max).map(|n| census(&c, n)).collect::<Result<Vec<_>>>()?;
            if json {
                return Ok(json_text(&json!({ "class": c.name(), "rows": rows })));
            }
            let mut out = String::from("n,labelled,unlabelled,exponent\n");
            for r in &rows {
                out.push_str(&format!("{},{},{},{}\n", r.n, r.labelled, r.unlabelled, fmt_num(r.exponent)));
            }
            Ok(out)
        }
        _ => Err(usage("give exactly one of --n and --n-max")),
    }
}

fn colouring_cmd(a: &ColouringArgs, json: bool) -> Outcome {
    let c = class(&a.class)?;
    let col = colouring_number(&c, a.t_max, a.n_check)?;
    let prediction = match max_entropy_prediction(&c, &col) {
        Ok(p) => json!(p),
        Err(Error::Inconclusive(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    if json {
        let mut v = serde_json::to_value(&col).expect("record serializes");
        v["class"] = json!(c.name());
        v["prediction"] = prediction;
        return Ok(json_text(&v));
    }
    let prediction = if prediction.is_null() { json!("inconclusive") } else { prediction };
    Ok(record(
        &[
            ("class", json!(c.name())),
            ("r_hat", json!(col.r_hat)),
            ("s_witness", json!(col.s_witness)),
            ("at_cap", json!(col.at_cap)),
            ("prediction", prediction),
        ],
        false,
    ))
}

fn graph6_cmd(a: &Graph6Args, json: bool) -> Outcome {
    let g = match (&a.code, a.n) {
        (Some(code), None) => {
            if !a.edges.is_empty() {
                return Err(usage("--edges applies to encoding with --n"));
            }
            graph(code)?
        }
        (None, Some(n)) => {
            let edges = a
                .edges
                .iter()
                .map(|e| {
                    let (u, v) = e.split_once('-').ok_or_else(|| usage(format!("edge `{e}` is not of the form u-v")))?;
                    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| usage(format!("bad vertex in edge `{e}`")));
                    Ok((parse(u)?, parse(v)?))
                })
                .collect::<std::result::Result<Vec<_>, CliError>>()?;
            Graph::from_edges(n, &edges)?
        }
        _ => return Err(usage("give a graph6 code, or --n with --edges")),
    };
    let canon = graph6::encode(&canonical_form(&g));
    if a.canonical {
        return Ok(if json {
            json_text(&json!({ "canonical": canon }))
        } else {
            format!("{canon}\n")
        });
    }
    let edges: Vec<Value> = g.edges().map(|(u, v)| json!(format!("{u}-{v}"))).collect();
    Ok(record(
        &[
            ("graph6", json!(graph6::encode(&g))),
            ("n", json!(g.n())),
            ("edges", Value::Array(edges)),
            ("canonical", json!(canon)),
        ],
        json,
    ))
}

fn report_out(mut report: ExperimentReport, a: &ReportArgs, json: bool, start: Instant) -> Outcome {
    if a.wall_clock {
        report.wall_clock_ms = Some(start.elapsed().as_millis() as u64);
    }
    let format = a.format.as_deref().map(str::parse::<Format>).transpose()?;
    if let Some(path) = &a.output {
        let format = format.or_else(|| format_from_extension(path)).unwrap_or(Format::Json);
        emit(&report, format, path)?;
        let status = flags_line(&report);
        return Ok(if json {
            json_text(&json!({ "wrote": path.display().to_string(), "format": format.to_string(), "flags": report.flags }))
        } else {
            format!("wrote {} ({format})\n{status}", path.display())
        });
    }
    match (format, json) {
        (Some(Format::Svg), _) => Ok(render(&report, Format::Svg)),
        (Some(Format::Json), _) | (None, true) => Ok(json_text(&report)),
        (Some(Format::Csv), _) | (None, false) => Ok(human_report(&report)),
    }
}

fn format_from_extension(path: &Path) -> Option<Format> {
    path.extension()?.to_str()?.parse().ok()
}

fn flags_line(report: &ExperimentReport) -> String {
    report
        .flags
        .iter()
        .map(|(k, v)| format!("flag {k} {v}\n"))
        .collect()
}

/// The report table as CSV with printed precision, then summary and flags.
fn human_report(report: &ExperimentReport) -> String {
    let quote = |s: &str| {
        if s.contains([',', '"', '\n']) {
            format!("\"{}\"", s.replace('"', "\"\""))
        } else {
            s.to_string()
        }
    };
    let mut out = report.columns.iter().map(|c| quote(c)).collect::<Vec<_>>().join(",");
    out.push('\n');
    for row in &report.rows {
        let cells: Vec<String> = row.iter().map(|v| quote(&fmt_value(v))).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    if let Some(a) = report.asymptote {
        out.push_str(&format!("asymptote {}\n", fmt_num(a)));
    }
    for (k, v) in &report.summary {
        out.push_str(&format!("summary {k} {}\n", if v.is_null() { "none".into() } else { fmt_value(v) }));
    }
    if let Some(ms) = report.wall_clock_ms {
        out.push_str(&format!("wall_clock_ms {ms}\n"));
    }
    out.push_str(&flags_line(report));
    out
}
