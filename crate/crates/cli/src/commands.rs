use std::path::Path;
use std::str::FromStr;

use gemo::inference::{asymptotic_ci, FitOptions};
use gemo::{
    fit, likelihood_ratio_test, BaselineKind, Dataset64, FitResult, FitSpec, Gemo64, GofReport,
    Reliability, DEFAULT_PERCENTILES,
};
use serde::Serialize;
use serde_json::Value;

use crate::args::{
    Command, Common, CompareArgs, EvalArgs, FitArgs, Fitting, Format, ReliabArgs, SampleArgs, TttArgs,
};
use crate::error::{CliError, CliResult};
use crate::output::{emit, json, sig7, Csv};

const LEVEL: f64 = 0.95;

pub fn run(cmd: Command) -> CliResult<()> {
    match cmd {
        Command::Fit(a) => cmd_fit(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Reliab(a) => cmd_reliab(a),
        Command::Ttt(a) => cmd_ttt(a),
        Command::Sample(a) => cmd_sample(a),
        Command::Eval(a) => cmd_eval(a),
    }
}

/// A bundled dataset name or a path to a text file.
pub fn load_data(arg: &str) -> CliResult<Dataset64> {
    let path = Path::new(arg);
    if path.is_file() {
        return Dataset64::from_path(path)
            .map_err(|e| CliError::Data(format!("cannot read {arg}: {e}")))?
            .map_err(|e| CliError::Data(format!("{arg}: {e}")));
    }
    Dataset64::bundled(arg).ok_or_else(|| {
        CliError::Data(format!(
            "{arg}: no such file or bundled dataset (bundled: {})",
            gemo::data::BUNDLED.join(", ")
        ))
    })
}

/// `gemo-<baseline>` frees all GEMO parameters; a bare baseline name fixes
/// `α = β = γ = 1`.
pub fn parse_model(name: &str, fixes: &[String]) -> CliResult<(String, FitSpec)> {
    let lower = name.trim().to_ascii_lowercase();
    let (gemo, base) = match lower.strip_prefix("gemo-").or_else(|| lower.strip_prefix("gemo_")) {
        Some(rest) => (true, rest),
        None => (false, lower.as_str()),
    };
    let kind = BaselineKind::from_str(base).map_err(|_| {
        CliError::Usage(format!(
            "unknown model '{name}' (expected a baseline such as weibull, or gemo-weibull)"
        ))
    })?;
    let mut spec = if gemo { FitSpec::gemo(kind) } else { FitSpec::classic(kind) };
    let mut label = if gemo { format!("gemo-{kind}") } else { kind.to_string() };
    for f in fixes {
        let (n, v) = f
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--fix expects NAME=VALUE, got '{f}'")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("--fix {n}: '{v}' is not a number")))?;
        spec = spec.fix(n.trim(), v)?;
        label.push_str(&format!(" {}={v}", n.trim()));
    }
    Ok((label, spec))
}

/// A parameter object, or any JSON object carrying one under `params`.
/// A leading `@` names a file to read it from.
pub fn parse_params(text: &str) -> CliResult<Gemo64> {
    let owned;
    let text = match text.strip_prefix('@') {
        Some(path) => {
            owned = std::fs::read_to_string(path)
                .map_err(|e| CliError::Data(format!("cannot read {path}: {e}")))?;
            owned.as_str()
        }
        None => text,
    };
    let mut v: Value =
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("--params is not valid JSON: {e}")))?;
    if let Some(inner) = v.get_mut("params") {
        v = inner.take();
    }
    serde_json::from_value(v).map_err(|e| CliError::Usage(format!("--params: {e}")))
}

fn fit_options(f: &Fitting) -> FitOptions {
    let mut o = FitOptions {
        starts: f.starts as usize,
        seed: f.seed,
        ..FitOptions::default()
    };
    o.bfgs.max_iter = f.max_iter;
    o
}

fn format_or(common: &Common, default: Format) -> Format {
    common.format.unwrap_or(default)
}

#[derive(Serialize)]
struct DataSummary {
    label: String,
    n: usize,
}

impl From<&Dataset64> for DataSummary {
    fn from(d: &Dataset64) -> Self {
        DataSummary {
            label: d.label().to_string(),
            n: d.len(),
        }
    }
}

#[derive(Serialize)]
struct Estimate {
    name: String,
    value: f64,
    fixed: bool,
    std_error: Option<f64>,
    ci_lower: Option<f64>,
    ci_upper: Option<f64>,
}

#[derive(Serialize)]
struct FitReport {
    model: String,
    data: DataSummary,
    params: Gemo64,
    estimates: Vec<Estimate>,
    ci_level: f64,
    loglik: f64,
    k: usize,
    aic: f64,
    ks: f64,
    ad: f64,
    ad_clamped: usize,
    converged: bool,
    gradient_norm: f64,
    iterations: usize,
    n_starts: usize,
    best_start: usize,
    condition_number: f64,
    near_singular: bool,
    ridge_warning: bool,
}

fn fit_report(model: &str, r: &FitResult, data: &Dataset64) -> FitReport {
    let gof = GofReport::from_fit(model, r, data);
    let cis = asymptotic_ci(r, LEVEL).unwrap_or_default();
    let estimates = r
        .names
        .iter()
        .zip(r.estimates())
        .enumerate()
        .map(|(i, (name, value))| {
            let ci = cis.iter().find(|c| &c.name == name);
            Estimate {
                name: name.clone(),
                value,
                fixed: !r.free[i],
                std_error: r.std_errors[i],
                ci_lower: ci.map(|c| c.lower),
                ci_upper: ci.map(|c| c.upper),
            }
        })
        .collect();
    FitReport {
        model: model.to_string(),
        data: data.into(),
        params: r.params,
        estimates,
        ci_level: LEVEL,
        loglik: r.loglik,
        k: r.k(),
        aic: gof.aic,
        ks: gof.ks,
        ad: gof.ad,
        ad_clamped: gof.ad_clamped,
        converged: r.converged,
        gradient_norm: r.gradient_norm,
        iterations: r.iterations,
        n_starts: r.n_starts,
        best_start: r.best_start,
        condition_number: r.condition_number,
        near_singular: r.near_singular,
        ridge_warning: r.ridge_warning,
    }
}

fn not_converged(model: &str, r: &FitResult) -> CliError {
    CliError::Numerical(format!(
        "{model}: fit did not converge (gradient norm {:.3e})",
        r.gradient_norm
    ))
}

fn cmd_fit(a: FitArgs) -> CliResult<()> {
    let data = load_data(&a.data)?;
    let (label, spec) = parse_model(&a.model, &a.fix)?;
    let r = fit(&data, &spec, &fit_options(&a.fitting))?;
    let report = fit_report(&label, &r, &data);
    let text = match format_or(&a.common, Format::Json) {
        Format::Json => json(&report)?,
        Format::Csv => {
            let mut c = Csv::new(&["name", "estimate", "fixed", "std_error", "ci_lower", "ci_upper"]);
            let opt = |v: Option<f64>| v.map(sig7).unwrap_or_default();
            for e in &report.estimates {
                c.row(&[
                    e.name.clone(),
                    sig7(e.value),
                    e.fixed.to_string(),
                    opt(e.std_error),
                    opt(e.ci_lower),
                    opt(e.ci_upper),
                ]);
            }
            c.section(&["loglik", "k", "aic", "ks", "ad", "converged", "ridge_warning"]);
            c.row(&[
                sig7(report.loglik),
                report.k.to_string(),
                sig7(report.aic),
                sig7(report.ks),
                sig7(report.ad),
                report.converged.to_string(),
                report.ridge_warning.to_string(),
            ]);
            c.finish()
        }
    };
    emit(&text, a.common.out.as_deref())?;
    if r.converged {
        Ok(())
    } else {
        Err(not_converged(&label, &r))
    }
}

#[derive(Serialize)]
struct CompareRow {
    rank: usize,
    model: String,
    k: usize,
    loglik: f64,
    aic: f64,
    ks: f64,
    ad: f64,
    converged: bool,
    ridge_warning: bool,
    params: Gemo64,
}

#[derive(Serialize)]
struct LrRow {
    full: String,
    restricted: String,
    statistic: f64,
    df: usize,
    p_value: f64,
}

#[derive(Serialize)]
struct Comparison {
    data: DataSummary,
    models: Vec<CompareRow>,
    lr_tests: Vec<LrRow>,
}

fn cmd_compare(a: CompareArgs) -> CliResult<()> {
    if a.models.len() < 2 {
        return Err(CliError::Usage("compare needs at least two models".into()));
    }
    let data = load_data(&a.data)?;
    let opts = fit_options(&a.fitting);
    let mut fits = Vec::new();
    for m in &a.models {
        let (label, spec) = parse_model(m, &[])?;
        let r = fit(&data, &spec, &opts)?;
        fits.push((label, r));
    }
    let mut order: Vec<usize> = (0..fits.len()).collect();
    let reports: Vec<GofReport> = fits.iter().map(|(l, r)| GofReport::from_fit(l, r, &data)).collect();
    order.sort_by(|&i, &j| reports[i].aic.total_cmp(&reports[j].aic));
    let models: Vec<CompareRow> = order
        .iter()
        .enumerate()
        .map(|(rank, &i)| CompareRow {
            rank: rank + 1,
            model: reports[i].model_name.clone(),
            k: reports[i].k,
            loglik: reports[i].loglik,
            aic: reports[i].aic,
            ks: reports[i].ks,
            ad: reports[i].ad,
            converged: fits[i].1.converged,
            ridge_warning: fits[i].1.ridge_warning,
            params: fits[i].1.params,
        })
        .collect();
    let mut lr_tests = Vec::new();
    for (i, (fl, full)) in fits.iter().enumerate() {
        for (j, (rl, restricted)) in fits.iter().enumerate() {
            if i == j || full.k() <= restricted.k() {
                continue;
            }
            match likelihood_ratio_test(full, restricted) {
                Ok(t) => lr_tests.push(LrRow {
                    full: fl.clone(),
                    restricted: rl.clone(),
                    statistic: t.statistic,
                    df: t.df,
                    p_value: t.p_value,
                }),
                Err(gemo::Error::NotNested(_)) => {}
                Err(e) => eprintln!("warning: LR test {fl} vs {rl} skipped: {e}"),
            }
        }
    }
    let cmp = Comparison {
        data: (&data).into(),
        models,
        lr_tests,
    };
    let text = match format_or(&a.common, Format::Json) {
        Format::Json => json(&cmp)?,
        Format::Csv => {
            let mut c = Csv::new(&["rank", "model", "k", "loglik", "aic", "ks", "ad", "converged"]);
            for m in &cmp.models {
                c.row(&[
                    m.rank.to_string(),
                    m.model.clone(),
                    m.k.to_string(),
                    sig7(m.loglik),
                    sig7(m.aic),
                    sig7(m.ks),
                    sig7(m.ad),
                    m.converged.to_string(),
                ]);
            }
            c.section(&["full", "restricted", "statistic", "df", "p_value"]);
            for t in &cmp.lr_tests {
                c.row(&[
                    t.full.clone(),
                    t.restricted.clone(),
                    sig7(t.statistic),
                    t.df.to_string(),
                    sig7(t.p_value),
                ]);
            }
            c.finish()
        }
    };
    emit(&text, a.common.out.as_deref())?;
    match fits.iter().find(|(_, r)| !r.converged) {
        Some((l, r)) => Err(not_converged(l, r)),
        None => Ok(()),
    }
}

fn cmd_reliab(a: ReliabArgs) -> CliResult<()> {
    let mut failure = None;
    let params = match (&a.params, &a.model, &a.data) {
        (Some(p), _, _) => parse_params(p)?,
        (None, Some(m), Some(d)) => {
            let data = load_data(d)?;
            let (label, spec) = parse_model(m, &a.fix)?;
            let r = fit(&data, &spec, &fit_options(&a.fitting))?;
            if !r.converged {
                failure = Some(not_converged(&label, &r));
            }
            r.params
        }
        _ => return Err(CliError::Usage("reliab needs --params, or --model with --data".into())),
    };
    let percentiles = if a.percentiles.is_empty() {
        DEFAULT_PERCENTILES.to_vec()
    } else {
        a.percentiles.clone()
    };
    if let Some(u) = percentiles.iter().find(|u| !(**u > 0.0 && **u < 1.0)) {
        return Err(CliError::Usage(format!("percentile {u} outside (0, 1)")));
    }
    let table = Reliability::new(params)?.table(&percentiles)?;
    let text = match format_or(&a.common, Format::Csv) {
        Format::Json => json(&table)?,
        Format::Csv => {
            let mut c = Csv::new(&["percentile", "time", "mrl", "mpl"]);
            for r in &table.rows {
                c.numbers(&[r.percentile, r.time, r.mrl, r.mpl]);
            }
            c.finish()
        }
    };
    emit(&text, a.common.out.as_deref())?;
    failure.map_or(Ok(()), Err)
}

fn cmd_ttt(a: TttArgs) -> CliResult<()> {
    let data = load_data(&a.data)?;
    let points = gemo::ttt_transform(&data);
    let text = match format_or(&a.common, Format::Csv) {
        Format::Json => {
            #[derive(Serialize)]
            struct Ttt {
                data: DataSummary,
                points: Vec<(f64, f64)>,
            }
            json(&Ttt {
                data: (&data).into(),
                points,
            })?
        }
        Format::Csv => {
            let mut c = Csv::new(&["i_over_n", "ttt"]);
            for (u, t) in points {
                c.numbers(&[u, t]);
            }
            c.finish()
        }
    };
    emit(&text, a.common.out.as_deref())
}

fn cmd_sample(a: SampleArgs) -> CliResult<()> {
    let params = parse_params(&a.params)?;
    let values = params.sample(a.n as usize, a.seed)?;
    let text = match format_or(&a.common, Format::Csv) {
        Format::Json => {
            #[derive(Serialize)]
            struct Sample {
                params: Gemo64,
                seed: u64,
                values: Vec<f64>,
            }
            json(&Sample {
                params,
                seed: a.seed,
                values,
            })?
        }
        Format::Csv => {
            let mut c = Csv::new(&["x"]);
            for v in values {
                c.numbers(&[v]);
            }
            c.finish()
        }
    };
    emit(&text, a.common.out.as_deref())
}

#[derive(Serialize)]
struct GridPoint {
    x: f64,
    pdf: f64,
    cdf: f64,
    sf: f64,
    hrf: f64,
}

fn cmd_eval(a: EvalArgs) -> CliResult<()> {
    let params = parse_params(&a.params)?;
    if let Some(d) = &a.data {
        let data = load_data(d)?;
        let k = a.k.unwrap_or(params.param_count());
        let report = GofReport::evaluate("supplied", &params, k, &data);
        let text = match format_or(&a.common, Format::Json) {
            Format::Json => json(&report)?,
            Format::Csv => {
                let mut c = Csv::new(&["k", "loglik", "aic", "ks", "ad"]);
                c.row(&[
                    report.k.to_string(),
                    sig7(report.loglik),
                    sig7(report.aic),
                    sig7(report.ks),
                    sig7(report.ad),
                ]);
                c.finish()
            }
        };
        return emit(&text, a.common.out.as_deref());
    }
    let lo = params.quantile(1e-4)?;
    let hi = params.quantile(1.0 - 1e-4)?;
    let m = a.grid as usize;
    let points: Vec<GridPoint> = (0..m)
        .map(|i| {
            let x = if i + 1 == m {
                hi
            } else {
                lo + (hi - lo) * i as f64 / (m - 1) as f64
            };
            GridPoint {
                x,
                pdf: params.pdf(x),
                cdf: params.cdf(x),
                sf: params.sf(x),
                hrf: params.hrf(x),
            }
        })
        .collect();
    let text = match format_or(&a.common, Format::Csv) {
        Format::Json => {
            #[derive(Serialize)]
            struct Grid {
                params: Gemo64,
                points: Vec<GridPoint>,
            }
            json(&Grid { params, points })?
        }
        Format::Csv => {
            let mut c = Csv::new(&["x", "pdf", "cdf", "sf", "hrf"]);
            for p in &points {
                c.numbers(&[p.x, p.pdf, p.cdf, p.sf, p.hrf]);
            }
            c.finish()
        }
    };
    emit(&text, a.common.out.as_deref())
}
