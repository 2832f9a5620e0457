use rayon::prelude::*;
use serde_json::{json, Value};

use super::{ExperimentReport, ExperimentSpec, Plot};
use crate::classes::{growth_series, uniform_exact, uniform_mcmc, HereditaryClass, MAX_CENSUS_VERTICES};
use crate::cutmetrics::{count_balls, delta_graph_graphon, weak_regularity_with, RegularityOptions};
use crate::graphons::{entropy, exact_rg_entropy, parse_graphon, sample, StepDocument, StepGraphon};
use crate::graphs::pairs;
use crate::{rng, Error, Result};

const SLACK: f64 = 1e-9;

/// Replays a stored spec.
pub fn run(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    let graphon = |doc: &StepDocument| doc.to_step_function((0.0, 1.0)).map(StepGraphon::from_step_function);
    match spec {
        ExperimentSpec::Growth { class, n_max } => run_growth(&class.parse()?, *n_max),
        ExperimentSpec::Convergence {
            class,
            maximizer,
            ns,
            samples,
            seed,
        } => run_convergence(&class.parse()?, &graphon(maximizer)?, ns, *samples, *seed),
        ExperimentSpec::EntropyRate { graphon: g, n_max } => run_entropy_rate(&graphon(g)?, *n_max),
        ExperimentSpec::BallCount { graphon: g, n, deltas } => run_ball_count(&graphon(g)?, *n, deltas),
        ExperimentSpec::Regularity { subjects, ks, seed } => run_regularity(subjects, ks, *seed),
    }
}

fn document(w: &StepGraphon) -> StepDocument {
    StepDocument::from_step_function(w.as_step_function())
}

fn non_increasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] <= w[0])
}

/// Exact census exponents `a_n` for `n = 2..=n_max` against `1 - 1/r`.
pub fn run_growth(c: &HereditaryClass, n_max: usize) -> Result<ExperimentReport> {
    let series = growth_series(c, n_max)?;
    let mut report = ExperimentReport::new(
        ExperimentSpec::Growth {
            class: c.name().to_string(),
            n_max,
        },
        &["n", "labelled", "unlabelled", "exponent"],
        Plot {
            x: "n".into(),
            y: vec!["exponent".into()],
            y_label: "log2 |Q^L_n| / C(n,2)".into(),
        },
    );
    for r in &series.rows {
        report.rows.push(vec![json!(r.n), json!(r.labelled), json!(r.unlabelled), json!(r.exponent)]);
    }
    report.asymptote = series.predicted;
    report.summary.insert("description".into(), json!(c.description()));
    if let Some(col) = &series.colouring {
        report.summary.insert("r_hat".into(), json!(col.r_hat));
        report.summary.insert("s_witness".into(), json!(col.s_witness));
        report.summary.insert("at_cap".into(), json!(col.at_cap));
    }
    let exps: Vec<f64> = series.rows.iter().map(|r| r.exponent).collect();
    report.flags.insert("non_increasing".into(), non_increasing(&exps));
    if let (Some(p), Some(last)) = (series.predicted, exps.last()) {
        report.flags.insert("above_prediction".into(), *last >= p);
    }
    Ok(report)
}

/// Linear-interpolation quantile of sorted data.
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let (lo, hi) = (pos.floor() as usize, pos.ceil() as usize);
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

/// Distances from uniformly random members of `c` to a maximizing graphon.
pub fn run_convergence(
    c: &HereditaryClass,
    maximizer: &StepGraphon,
    ns: &[usize],
    samples: usize,
    seed: u64,
) -> Result<ExperimentReport> {
    if samples == 0 {
        return Err(Error::domain("convergence needs at least one sample per n"));
    }
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut report = ExperimentReport::new(
        ExperimentSpec::Convergence {
            class: c.name().to_string(),
            maximizer: document(maximizer),
            ns: ns.clone(),
            samples,
            seed,
        },
        &["n", "samples", "median", "q1", "q3", "sampler", "quality", "seed", "certified"],
        Plot {
            x: "n".into(),
            y: vec!["median".into(), "q1".into(), "q3".into()],
            y_label: "cut distance upper bound".into(),
        },
    );
    let mut medians = Vec::new();
    for &n in &ns {
        let row_seed = rng::mix(seed, n as u64);
        let exact = n <= MAX_CENSUS_VERTICES;
        let steps = 50 * pairs(n).max(20) as u64;
        let draws: Vec<(f64, bool)> = (0..samples as u64)
            .into_par_iter()
            .map(|i| {
                let s = rng::mix(row_seed, i);
                let g = if exact { uniform_exact(c, n, s)? } else { uniform_mcmc(c, n, steps, s)?.graph };
                let d = delta_graph_graphon(&g, maximizer)?;
                Ok((d.value, d.certified))
            })
            .collect::<Result<_>>()?;
        let mut values: Vec<f64> = draws.iter().map(|d| d.0).collect();
        values.sort_by(f64::total_cmp);
        let median = quantile(&values, 0.5);
        medians.push(median);
        report.rows.push(vec![
            json!(n),
            json!(samples),
            json!(median),
            json!(quantile(&values, 0.25)),
            json!(quantile(&values, 0.75)),
            json!(if exact { "exact" } else { "mcmc" }),
            json!(if exact { "EXACT" } else { "HEURISTIC" }),
            json!(row_seed),
            json!(draws.iter().all(|d| d.1)),
        ]);
        if !exact {
            report.summary.insert(format!("mcmc_steps_n{n}"), json!(steps));
        }
    }
    if medians.len() >= 2 {
        report.flags.insert("non_increasing_medians".into(), non_increasing(&medians));
        report
            .flags
            .insert("last_below_first".into(), medians[medians.len() - 1] < medians[0]);
    }
    Ok(report)
}

/// Exact `H(G(n, W)) / C(n, 2)` for `n = 2..=n_max` against `Ent(W)`.
pub fn run_entropy_rate(w: &StepGraphon, n_max: usize) -> Result<ExperimentReport> {
    if n_max < 2 {
        return Err(Error::domain(format!("entropy rate needs n_max >= 2, got {n_max}")));
    }
    let ent = entropy(w);
    let mut report = ExperimentReport::new(
        ExperimentSpec::EntropyRate {
            graphon: document(w),
            n_max,
        },
        &["n", "entropy", "ratio", "lower_bound", "excess"],
        Plot {
            x: "n".into(),
            y: vec!["ratio".into()],
            y_label: "H(G(n,W)) / C(n,2)".into(),
        },
    );
    let mut excess = Vec::new();
    let mut holds = true;
    for n in 2..=n_max {
        let h = exact_rg_entropy(w, n)?;
        let m = pairs(n) as f64;
        let ratio = h / m;
        holds &= h >= m * ent - SLACK;
        excess.push((ratio - ent).abs());
        report.rows.push(vec![json!(n), json!(h), json!(ratio), json!(m * ent), json!((ratio - ent).abs())]);
    }
    report.asymptote = Some(ent);
    report.summary.insert("graphon_entropy".into(), json!(ent));
    report.flags.insert("lower_bound_holds".into(), holds);
    if excess.len() >= 2 {
        report.flags.insert("excess_shrinks".into(), excess[excess.len() - 1] < excess[0]);
    }
    Ok(report)
}

/// Ball counts around `w` on `n` vertices for each radius.
pub fn run_ball_count(w: &StepGraphon, n: usize, deltas: &[f64]) -> Result<ExperimentReport> {
    let mut deltas = deltas.to_vec();
    if deltas.iter().any(|d| !d.is_finite()) {
        return Err(Error::domain("deltas must be finite"));
    }
    deltas.sort_by(f64::total_cmp);
    deltas.dedup();
    let mut report = ExperimentReport::new(
        ExperimentSpec::BallCount {
            graphon: document(w),
            n,
            deltas: deltas.clone(),
        },
        &["delta", "n_hat", "n_full", "hat_exponent", "full_exponent", "certified"],
        Plot {
            x: "delta".into(),
            y: vec!["hat_exponent".into(), "full_exponent".into()],
            y_label: "log2 count / C(n,2)".into(),
        },
    );
    let exponent = |count: u64| -> Value {
        if count == 0 || n < 2 {
            Value::Null
        } else {
            json!((count as f64).log2() / pairs(n) as f64)
        }
    };
    let counts = deltas.iter().map(|&d| count_balls(n, d, w)).collect::<Result<Vec<_>>>()?;
    for c in &counts {
        report.rows.push(vec![
            json!(c.delta),
            json!(c.n_hat),
            json!(c.n_full),
            exponent(c.n_hat),
            exponent(c.n_full),
            json!(c.certified),
        ]);
    }
    report.asymptote = Some(entropy(w));
    report.summary.insert("n".into(), json!(n));
    report.summary.insert("total".into(), json!(1u64 << pairs(n)));
    report.summary.insert("n_full".into(), json!("lower bound: layout distances are upper bounds"));
    report.flags.insert("hat_le_full".into(), counts.iter().all(|c| c.n_hat <= c.n_full));
    report.flags.insert(
        "monotone".into(),
        counts.windows(2).all(|w| w[0].n_hat <= w[1].n_hat && w[0].n_full <= w[1].n_full),
    );
    Ok(report)
}

/// Weak regularity residuals for every subject and part count.
pub fn run_regularity(subjects: &[String], ks: &[usize], seed: u64) -> Result<ExperimentReport> {
    let mut ks = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let mut report = ExperimentReport::new(
        ExperimentSpec::Regularity {
            subjects: subjects.to_vec(),
            ks: ks.clone(),
            seed,
        },
        &[
            "subject",
            "k",
            "residual",
            "residual_upper",
            "exact",
            "bound",
            "subject_entropy",
            "stepped_entropy",
        ],
        Plot {
            x: "k".into(),
            y: vec!["residual_upper".into(), "bound".into()],
            y_label: "cut norm residual".into(),
        },
    );
    let graphons = subjects.iter().map(|s| parse_subject(s)).collect::<Result<Vec<_>>>()?;
    let results: Vec<Vec<_>> = graphons
        .par_iter()
        .enumerate()
        .map(|(i, w)| {
            let opts = RegularityOptions {
                seed: rng::mix(seed, i as u64),
                ..Default::default()
            };
            ks.iter().map(|&k| weak_regularity_with(w, k, &opts)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let (mut within, mut semicontinuous, mut monotone) = (true, true, true);
    for ((name, w), rows) in subjects.iter().zip(&graphons).zip(&results) {
        let ent = entropy(w);
        for r in rows {
            let stepped = entropy(&r.stepped);
            within &= r.residual_upper <= r.bound + SLACK;
            semicontinuous &= stepped >= ent - 1e-12;
            report.rows.push(vec![
                json!(name),
                json!(r.k),
                json!(r.residual),
                json!(r.residual_upper),
                json!(r.exact),
                json!(r.bound),
                json!(ent),
                json!(stepped),
            ]);
        }
        if let (Some(first), Some(last)) = (rows.first(), rows.last()) {
            monotone &= last.residual <= first.residual + SLACK;
        }
    }
    report.flags.insert("within_bound".into(), within);
    report.flags.insert("entropy_semicontinuity".into(), semicontinuous);
    report.flags.insert("residual_largest_k_below_smallest".into(), monotone);
    Ok(report)
}

/// A graphon literal, or `random:n,seed,<literal>` for `W_G` of a sample
/// `G = G(n, W)`.
pub fn parse_subject(s: &str) -> Result<StepGraphon> {
    let Some(rest) = s.strip_prefix("random:") else {
        return parse_graphon(s);
    };
    let mut parts = rest.splitn(3, ',');
    let (Some(n), Some(seed), Some(lit)) = (parts.next(), parts.next(), parts.next()) else {
        return Err(Error::domain(format!("`{s}` should read random:n,seed,<graphon>")));
    };
    let n: usize = n.trim().parse().map_err(|_| Error::domain(format!("bad vertex count in `{s}`")))?;
    let seed: u64 = seed.trim().parse().map_err(|_| Error::domain(format!("bad seed in `{s}`")))?;
    Ok(StepGraphon::from_graph(&sample(&parse_graphon(lit)?, n, seed)?))
}

/// Twenty regularity subjects: named graphons, small graphs and seeded
/// samples (the first is `G(64, 1/2)`).
pub fn standard_corpus(seed: u64) -> Vec<String> {
    let s = |i: u64| rng::mix(seed, i);
    let mut out = vec![format!("random:64,{},constant:0.5", s(0))];
    out.extend(
        [
            "turan:2",
            "turan:3",
            "wrs:2,0",
            "wrs:3,1",
            "wrs:4,2",
            "string:1/16",
            "string:1/8",
            "constant:0.3",
            "graph:Dhc",
            "graph:IheA@GUAo",
        ]
        .map(String::from),
    );
    out.extend([
        format!("random:48,{},wrs:2,0", s(1)),
        format!("random:40,{},wrs:3,1", s(2)),
        format!("random:32,{},string:1/8", s(3)),
        format!("random:64,{},constant:0.2", s(4)),
        format!("random:24,{},turan:3", s(5)),
        format!("random:16,{},constant:0.5", s(6)),
        format!("random:20,{},wrs:2,1", s(7)),
        format!("random:12,{},constant:0.7", s(8)),
        format!("random:56,{},wrs:4,0", s(9)),
    ]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphons::binary_entropy;

    #[test]
    fn quantiles() {
        let d = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&d, 0.5), 2.5);
        assert_eq!(quantile(&d, 0.0), 1.0);
        assert_eq!(quantile(&[7.0], 0.75), 7.0);
    }

    #[test]
    fn growth_of_all_graphs() {
        let r = run_growth(&HereditaryClass::all(), 5).unwrap();
        assert!(r.column("exponent").unwrap().iter().all(|e| *e == Some(1.0)));
        assert_eq!(r.asymptote, Some(1.0));
    }

    #[test]
    fn entropy_rate_examples() {
        let r = run_entropy_rate(&StepGraphon::constant(0.5).unwrap(), 5).unwrap();
        assert!(r.column("ratio").unwrap().iter().all(|x| (x.unwrap() - 1.0).abs() < 1e-12));
        let r = run_entropy_rate(&StepGraphon::wrs(2, 0).unwrap(), 3).unwrap();
        let first = r.column("ratio").unwrap()[0].unwrap();
        assert!((first - binary_entropy(0.25).unwrap()).abs() < 1e-12);
        assert_eq!(r.flags["lower_bound_holds"], true);
    }

    #[test]
    fn convergence_single_row() {
        let r = run_convergence(&HereditaryClass::all(), &StepGraphon::constant(0.5).unwrap(), &[5], 10, 1).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert!(r.flags.is_empty());
    }

    #[test]
    fn corpus_subjects_parse() {
        let corpus = standard_corpus(3);
        assert_eq!(corpus.len(), 20);
        for s in &corpus {
            parse_subject(s).unwrap();
        }
        assert!(parse_subject("random:4,x,turan:2").is_err());
    }

    #[test]
    fn regularity_turan() {
        let r = run_regularity(&["turan:3".to_string()], &[3], 0).unwrap();
        assert_eq!(r.column("residual").unwrap(), vec![Some(0.0)]);
    }
}
