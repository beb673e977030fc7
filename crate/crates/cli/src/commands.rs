use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;

use yesno_core::analysis::{
    expected_fp_count, f_e_single_no_filter, fp_prob_approx, fp_prob_exact, pr_e,
    pr_false_positive, pr_positive, FilterShape, MembershipPriors,
};
use yesno_core::simulate::{sweep, SweepConfig, SweepVar};
use yesno_core::topology::{
    aggregate_by_length, load_graph, run_topology_experiment, synthetic, write_aggregate_csv,
    write_topology_csv, ExperimentParams, Graph, GraphFormat, PathExperiment, TopologyOutcome,
};
use yesno_core::yesno::classify;
use yesno_core::{Sketcher, YesNoFilter, YesNoParams};

use crate::args::{
    AnalyzeArgs, Command, DemoArgs, FormatArg, GeometryMode, OutputArg, SweepArgs, TopologyArgs,
    VarArg,
};
use crate::CliError;

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Analyze(a) => analyze(a),
        Command::Sweep(a) => run_sweep(a),
        Command::Topology(a) => topology(a),
        Command::Demo(a) => demo(a),
    }
}

fn emit(out: &OutputArg, bytes: &[u8]) -> Result<()> {
    match &out.output {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| CliError::Data(format!("cannot write {}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| CliError::Data(format!("cannot write to stdout: {e}"))),
    }
}

fn yes_no_params(m: usize, q: usize, r: usize, k: usize, k_prime: usize) -> Result<YesNoParams> {
    let p = m.checked_sub(q * r).filter(|&p| p > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "m = {m} leaves no room for {r} no-filters of {q} bits"
        ))
    })?;
    Ok(YesNoParams::with_total(m, p, q, r, k, k_prime)?)
}

fn analyze(a: AnalyzeArgs) -> Result<()> {
    if a.m == 0 {
        return Err(CliError::Usage("--m must be >= 1".into()));
    }
    let priors = MembershipPriors::new(a.pr_s, a.pr_r)
        .ok_or_else(|| CliError::Usage("--pr-s and --pr-r must lie in [0, 1]".into()))?;
    let p = match a.p {
        Some(p) => p,
        None => a.m.saturating_sub(a.q * a.r),
    };
    if p == 0 || a.q == 0 {
        return Err(CliError::Usage(
            "yes-filter and no-filter lengths must be >= 1".into(),
        ));
    }
    let k_yes = a.k_yes.unwrap_or(a.k);
    let load = a.no_load.unwrap_or(a.n);

    let classic = FilterShape::new(a.m, a.k, a.n);
    let f_s = fp_prob_exact(classic);
    let f_yes = fp_prob_approx(FilterShape::new(p, k_yes, a.n));
    let f_r = fp_prob_approx(FilterShape::new(a.q, a.k_prime, load));
    let e = pr_e(priors.pr_s, f_yes, f_r, priors.pr_r);

    let rows: Vec<(&str, f64, String)> = vec![
        ("f_s_exact", f_s, "OK".into()),
        ("f_s_approx", fp_prob_approx(classic), "OK".into()),
        ("pr_positive", pr_positive(priors.pr_s, f_s), "OK".into()),
        ("pr_f", pr_false_positive(priors.pr_s, f_s), "OK".into()),
        ("f_yes", f_yes, "OK".into()),
        ("f_r", f_r, "OK".into()),
        ("pr_e", e.value, e.consistency.to_string()),
        (
            "f_e_single",
            f_e_single_no_filter(p, a.q, k_yes, a.k_prime, a.n, Some(load)),
            "OK".into(),
        ),
        ("fp_count_bf", expected_fp_count(a.t, f_s), "OK".into()),
    ];
    let mut buf = String::from("quantity,value,status\n");
    for (name, value, status) in rows {
        buf.push_str(&format!("{name},{value:.6},{status}\n"));
    }
    emit(&a.out, buf.as_bytes())
}

fn parse_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || CliError::Usage(format!("--range expects a:b with a <= b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

fn run_sweep(a: SweepArgs) -> Result<()> {
    let swept = match (a.var, a.mode) {
        (VarArg::K, _) => SweepVar::K,
        (VarArg::KPrime, _) => SweepVar::KPrime,
        (VarArg::N, _) => SweepVar::N,
        (VarArg::Q, GeometryMode::FixedM) => SweepVar::Q,
        (VarArg::Q, GeometryMode::FixedP) => SweepVar::QFixedP,
        (VarArg::R, GeometryMode::FixedM) => SweepVar::RFixedM,
        (VarArg::R, GeometryMode::FixedP) => SweepVar::RFixedP,
    };
    let config = SweepConfig {
        base: yes_no_params(a.m, a.q, a.r, a.k, a.k_prime)?,
        n: a.n,
        t: a.t,
        trials: a.trials,
        seed: a.seed,
        swept,
        range: match &a.range {
            Some(r) => parse_range(r)?,
            None => swept.default_range(),
        },
        k_bf: a.k_bf,
        step: a.step,
    };
    config.validate()?;
    let result = sweep(&config)?;
    let mut buf = Vec::new();
    result.write_csv(&mut buf)?;
    emit(&a.out, &buf)
}

fn topology(a: TopologyArgs) -> Result<()> {
    if a.allocations == 0 {
        return Err(CliError::Usage("--allocations must be >= 1".into()));
    }
    let params = ExperimentParams {
        yes_no: yes_no_params(a.m, a.q, a.r, a.k, a.k_prime)?,
        k_bf: a.k_bf,
        allocations: a.allocations,
        include_reverse: !a.exclude_reverse,
    };
    if params.k_bf == 0 {
        return Err(CliError::Usage("--k-bf must be >= 1".into()));
    }

    let mut inputs: Vec<(String, Graph)> = Vec::new();
    let mut failures = 0;
    for path in &a.files {
        let format = match a.format {
            FormatArg::Auto => GraphFormat::from_path(path),
            FormatArg::Graphml => GraphFormat::GraphMl,
            FormatArg::Edgelist => GraphFormat::EdgeList,
        };
        match load_graph(path, format) {
            Ok(g) => {
                let name = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().into_owned())
                    .unwrap_or_else(|| path.display().to_string());
                inputs.push((name, g));
            }
            Err(e) => {
                eprintln!("skipping {}: {e}", path.display());
                failures += 1;
            }
        }
    }
    if a.synthetic {
        inputs.extend(synthetic::corpus(a.seed));
    }

    let mut results: Vec<TopologyOutcome> = Vec::new();
    for (name, g) in &inputs {
        let outcome = PathExperiment::from_graph(name, g, a.path.clone(), params.clone())
            .and_then(|exp| run_topology_experiment(&exp, a.seed));
        match outcome {
            Ok(r) => results.push(r),
            Err(e) => {
                eprintln!("skipping {name}: {e}");
                failures += 1;
            }
        }
    }
    if results.is_empty() {
        return Err(CliError::Data(format!(
            "all {failures} topology inputs failed"
        )));
    }

    let mut buf = Vec::new();
    write_topology_csv(&results, &mut buf)?;
    emit(&a.out, &buf)?;
    if let Some(path) = &a.aggregate {
        let mut buf = Vec::new();
        write_aggregate_csv(&aggregate_by_length(&results), &mut buf)?;
        emit(
            &OutputArg {
                output: Some(path.clone()),
            },
            &buf,
        )?;
    }
    Ok(())
}

fn demo(a: DemoArgs) -> Result<()> {
    let params = YesNoParams::new(13, 2, 2, 3, 1)?;
    let sketcher = Sketcher::new(&params, a.seed)?;
    let s: Vec<u64> = vec![5705, 11];
    let t: Vec<u64> = (100..140).collect();
    let (filter, report) = YesNoFilter::build(&params, &sketcher, &s, &t)?;
    let c = classify(&filter, &s, &t);

    let mut out = String::new();
    out.push_str(&format!(
        "params: m={} p={} q={} r={} k={} k'={} seed={}\n",
        params.m(),
        params.p(),
        params.q(),
        params.r(),
        params.k(),
        params.k_prime(),
        a.seed
    ));
    for e in &s {
        let sk = sketcher.sketch(e);
        out.push_str(&format!(
            "member {e}: yes={} no={}\n",
            sk.yes_part.to_bit_string(),
            sk.no_part.to_bit_string()
        ));
    }
    out.push_str(&format!("yes-filter: {}\n", filter.yes_filter()));
    for (j, v) in filter.no_filters().iter().enumerate() {
        out.push_str(&format!("no-filter {j}: {v}\n"));
    }
    out.push_str(&format!("serialized: {}\n", filter.to_bit_string()));
    out.push_str(&format!(
        "|S|={} |T|={} |F|={} |R|={} |E|={} false negatives={}\n",
        report.n,
        report.t,
        report.f_count,
        report.r_count,
        c.fp_count(),
        c.false_negatives.len()
    ));
    for fp in &report.false_positives {
        let e = t[fp.t_index];
        out.push_str(&format!("query {e}: {:?}\n", filter.query(&e)));
    }
    emit(&OutputArg { output: None }, out.as_bytes())
}
