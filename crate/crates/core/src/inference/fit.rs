//! Multi-start maximum-likelihood fitting, Wald intervals and likelihood
//! ratio tests.

use nalgebra::{DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bfgs::{minimize, BfgsOptions, BfgsReport};
use super::likelihood::{log_likelihood_gradient, observed_information};
use crate::baselines::BaselineKind;
use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::gemo::{GemoParams, GEMO_PARAM_NAMES};
use crate::special::{chi_square_critical, chi_square_sf, ln_gamma, std_normal_quantile};

/// Information condition number above which a fit is flagged as lying on a
/// likelihood ridge.
pub const RIDGE_CONDITION: f64 = 1e8;

/// Which model to fit: a baseline kind plus any coordinates held fixed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitSpec {
    pub kind: BaselineKind,
    /// One entry per coordinate of `[α, β, γ, ξ…]`; `Some` marks a fixed value.
    pub fixed: Vec<Option<f64>>,
}

impl FitSpec {
    /// Every coordinate free.
    pub fn gemo(kind: BaselineKind) -> Self {
        FitSpec {
            kind,
            fixed: vec![None; 3 + kind.param_count()],
        }
    }

    /// The baseline alone: `α = β = γ = 1` fixed.
    pub fn classic(kind: BaselineKind) -> Self {
        let mut s = Self::gemo(kind);
        for v in &mut s.fixed[..3] {
            *v = Some(1.0);
        }
        s
    }

    pub fn names(&self) -> Vec<&'static str> {
        let mut v = GEMO_PARAM_NAMES.to_vec();
        v.extend_from_slice(self.kind.param_names());
        v
    }

    fn is_positive(&self, i: usize) -> bool {
        i < 3 || self.kind.is_positive(i - 3)
    }

    /// Holds the named coordinate at `value`.
    pub fn fix(mut self, name: &str, value: f64) -> Result<Self> {
        let names = self.names();
        let Some(i) = names.iter().position(|n| n.eq_ignore_ascii_case(name)) else {
            return Err(Error::Domain(format!(
                "unknown parameter '{name}' for {} (expected one of {})",
                self.kind,
                names.join(", ")
            )));
        };
        if !value.is_finite() || (self.is_positive(i) && value <= 0.0) {
            return Err(Error::Domain(format!(
                "cannot fix {name} at {value}: outside the parameter space"
            )));
        }
        self.fixed[i] = Some(value);
        Ok(self)
    }

    pub fn free_mask(&self) -> Vec<bool> {
        self.fixed.iter().map(Option::is_none).collect()
    }

    pub fn free_count(&self) -> usize {
        self.fixed.iter().filter(|v| v.is_none()).count()
    }
}

/// Coordinates the optimizer works in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameterization {
    /// Logarithms of positive parameters; LogNormal `μ` untransformed.
    Log,
    /// Raw parameters, with the parameter-space boundary acting as a barrier.
    Natural,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitOptions {
    /// Perturbed starts launched in addition to the unperturbed anchor.
    pub starts: usize,
    pub seed: u64,
    /// Perturbations are log-uniform within `×[1/spread, spread]`.
    pub spread: f64,
    pub bfgs: BfgsOptions,
    /// Scaled gradient norm below which the best run counts as converged.
    pub converged_tol: f64,
    pub parameterization: Parameterization,
    pub parallel: bool,
}

impl Default for FitOptions {
    fn default() -> Self {
        FitOptions {
            starts: 20,
            seed: 20_240_601,
            spread: 5.0,
            bfgs: BfgsOptions::default(),
            converged_tol: 1e-6,
            parameterization: Parameterization::Log,
            parallel: true,
        }
    }
}

/// Outcome of [`fit`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub params: GemoParams<f64>,
    pub names: Vec<String>,
    pub free: Vec<bool>,
    pub loglik: f64,
    /// Inverse observed information over the free coordinates, in the order
    /// they appear in `names`.
    pub covariance: Option<Vec<Vec<f64>>>,
    /// Standard error per coordinate; `None` for fixed ones.
    pub std_errors: Vec<Option<f64>>,
    pub converged: bool,
    pub n_starts: usize,
    pub best_start: usize,
    /// `‖∇(ℓ/n)‖_∞` in optimizer coordinates.
    pub gradient_norm: f64,
    pub iterations: usize,
    pub condition_number: f64,
    pub near_singular: bool,
    pub ridge_warning: bool,
    pub n_obs: usize,
}

impl FitResult {
    /// Number of estimated parameters.
    pub fn k(&self) -> usize {
        self.free.iter().filter(|&&f| f).count()
    }

    pub fn kind(&self) -> BaselineKind {
        self.params.kind()
    }

    pub fn estimates(&self) -> Vec<f64> {
        self.params.to_vector()
    }
}

/// Moment-based starting values for the baseline parameters.
pub fn initial_baseline(kind: BaselineKind, data: &Dataset<f64>) -> Vec<f64> {
    let n = data.len() as f64;
    let mean = data.mean();
    let var = data.values().iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let cv = var.sqrt() / mean;
    match kind {
        BaselineKind::Exponential => vec![1.0 / mean],
        BaselineKind::Weibull => {
            let k = cv.powf(-1.086).clamp(0.05, 50.0);
            vec![k, mean / ln_gamma(1.0 + 1.0 / k).exp()]
        }
        BaselineKind::Gamma => vec![mean * mean / var, mean / var],
        BaselineKind::Lomax => {
            let c2 = cv * cv;
            let shape = if c2 > 1.1 { 2.0 * c2 / (c2 - 1.0) } else { 3.0 };
            vec![mean * (shape - 1.0), shape]
        }
        BaselineKind::LogNormal => {
            let logs: Vec<f64> = data.values().iter().map(|x| x.ln()).collect();
            let m = logs.iter().sum::<f64>() / n;
            let s = (logs.iter().map(|l| (l - m).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
            vec![m, s.max(1e-3)]
        }
    }
}

struct Problem<'a> {
    spec: &'a FitSpec,
    data: &'a Dataset<f64>,
    free: Vec<usize>,
    log_coord: Vec<bool>,
}

impl<'a> Problem<'a> {
    fn new(spec: &'a FitSpec, data: &'a Dataset<f64>, free: Vec<usize>, pz: Parameterization) -> Self {
        let log_coord = free
            .iter()
            .map(|&i| pz == Parameterization::Log && spec.is_positive(i))
            .collect();
        Problem {
            spec,
            data,
            free,
            log_coord,
        }
    }

    fn to_internal(&self, theta: &[f64]) -> Vec<f64> {
        self.free
            .iter()
            .zip(&self.log_coord)
            .map(|(&i, &l)| if l { theta[i].ln() } else { theta[i] })
            .collect()
    }

    fn to_theta(&self, base: &[f64], z: &[f64]) -> Vec<f64> {
        let mut theta = base.to_vec();
        for (k, (&i, &l)) in self.free.iter().zip(&self.log_coord).enumerate() {
            theta[i] = if l { z[k].exp() } else { z[k] };
        }
        theta
    }

    /// `−ℓ/n` and its gradient in internal coordinates.
    fn objective(&self, base: &[f64], z: &[f64]) -> (f64, Vec<f64>) {
        let theta = self.to_theta(base, z);
        let bad = (f64::INFINITY, vec![f64::NAN; z.len()]);
        let Ok(p) = GemoParams::from_vector(self.spec.kind, &theta) else {
            return bad;
        };
        let (ll, g) = log_likelihood_gradient(&p, self.data);
        if !ll.is_finite() {
            return bad;
        }
        let n = self.data.len() as f64;
        let gz = self
            .free
            .iter()
            .zip(&self.log_coord)
            .map(|(&i, &l)| -g[i] / n * if l { theta[i] } else { 1.0 })
            .collect();
        (-ll / n, gz)
    }

    fn run(&self, base: &[f64], opts: &BfgsOptions) -> (Vec<f64>, BfgsReport) {
        let z0 = self.to_internal(base);
        let rep = minimize(|z| self.objective(base, z), &z0, opts);
        (self.to_theta(base, &rep.x), rep)
    }
}

/// Maximum-likelihood fit of `spec` to `data`.
///
/// The baseline is fitted first with `α, β, γ` at their fixed values (or 1);
/// that anchor and `opts.starts` log-uniform perturbations of it are then
/// refined independently. The run with the highest log-likelihood wins, ties
/// going to the lowest start index.
pub fn fit(data: &Dataset<f64>, spec: &FitSpec, opts: &FitOptions) -> Result<FitResult> {
    let m = spec.fixed.len();
    if m != 3 + spec.kind.param_count() {
        return Err(Error::Domain(format!(
            "fit specification has {m} coordinates, {} needs {}",
            spec.kind,
            3 + spec.kind.param_count()
        )));
    }
    let free: Vec<usize> = (0..m).filter(|&i| spec.fixed[i].is_none()).collect();
    if free.is_empty() {
        return Err(Error::Domain("at least one parameter must be free".into()));
    }
    let guess = initial_baseline(spec.kind, data);
    let mut anchor: Vec<f64> = (0..m)
        .map(|i| spec.fixed[i].unwrap_or(if i < 3 { 1.0 } else { guess[i - 3] }))
        .collect();

    let base_free: Vec<usize> = free.iter().copied().filter(|&i| i >= 3).collect();
    if !base_free.is_empty() {
        let stage = Problem::new(spec, data, base_free, opts.parameterization);
        let (theta, rep) = stage.run(&anchor, &opts.bfgs);
        if rep.f.is_finite() {
            anchor = theta;
        }
    }

    let problem = Problem::new(spec, data, free.clone(), opts.parameterization);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ln_spread = opts.spread.max(1.0).ln();
    let mut starts = vec![anchor.clone()];
    for _ in 0..opts.starts {
        let mut s = anchor.clone();
        for &i in &free {
            let e: f64 = rng.gen_range(-ln_spread..=ln_spread);
            if spec.is_positive(i) {
                s[i] *= e.exp();
            } else {
                s[i] += e;
            }
        }
        starts.push(s);
    }

    let run = |s: &Vec<f64>| problem.run(s, &opts.bfgs);
    let results: Vec<(Vec<f64>, BfgsReport)> = if opts.parallel {
        starts.par_iter().map(run).collect()
    } else {
        starts.iter().map(run).collect()
    };
    let mut best: Option<usize> = None;
    for (i, (_, rep)) in results.iter().enumerate() {
        if !rep.f.is_finite() {
            continue;
        }
        if best.map_or(true, |b| rep.f < results[b].1.f) {
            best = Some(i);
        }
    }
    let Some(b) = best else {
        return Err(Error::Convergence {
            method: "BFGS multistart",
            detail: format!(
                "all {} starts ended at a non-finite log-likelihood",
                starts.len()
            ),
        });
    };
    let (theta, rep) = &results[b];
    let params = GemoParams::from_vector(spec.kind, theta)?;
    let n = data.len();
    let loglik = -rep.f * n as f64;

    let mut result = FitResult {
        params,
        names: spec.names().iter().map(|s| s.to_string()).collect(),
        free: spec.free_mask(),
        loglik,
        covariance: None,
        std_errors: vec![None; m],
        converged: rep.grad_norm <= opts.converged_tol,
        n_starts: starts.len(),
        best_start: b,
        gradient_norm: rep.grad_norm,
        iterations: rep.iterations,
        condition_number: f64::INFINITY,
        near_singular: true,
        ridge_warning: true,
        n_obs: n,
    };
    if let Ok(info) = observed_information(&params, data) {
        let k = free.len();
        let sub = DMatrix::from_fn(k, k, |r, c| info[(free[r], free[c])]);
        let cov = invert_information(&sub);
        result.condition_number = cov.condition;
        result.near_singular = cov.near_singular;
        result.ridge_warning = cov.condition > RIDGE_CONDITION;
        for (r, &i) in free.iter().enumerate() {
            let v = cov.matrix[(r, r)];
            result.std_errors[i] = Some(if v >= 0.0 { v.sqrt() } else { f64::NAN });
        }
        result.covariance = Some(
            (0..k)
                .map(|r| (0..k).map(|c| cov.matrix[(r, c)]).collect())
                .collect(),
        );
    }
    Ok(result)
}

struct Inverse {
    matrix: DMatrix<f64>,
    condition: f64,
    near_singular: bool,
}

/// Inverse of a symmetric information matrix: Cholesky when positive
/// definite, eigenvalue pseudo-inverse otherwise.
fn invert_information(info: &DMatrix<f64>) -> Inverse {
    let eig = SymmetricEigen::new(info.clone());
    let max = eig.eigenvalues.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let min = eig.eigenvalues.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    let condition = if min > 0.0 { max / min } else { f64::INFINITY };
    if let Some(ch) = info.clone().cholesky() {
        if condition < 1.0 / f64::EPSILON {
            return Inverse {
                matrix: ch.inverse(),
                condition,
                near_singular: false,
            };
        }
    }
    let cut = max * info.nrows() as f64 * f64::EPSILON;
    let inv_vals = eig
        .eigenvalues
        .map(|v| if v.abs() > cut { 1.0 / v } else { 0.0 });
    let q = &eig.eigenvectors;
    Inverse {
        matrix: q * DMatrix::from_diagonal(&inv_vals) * q.transpose(),
        condition,
        near_singular: true,
    }
}

/// One Wald interval.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
    pub lower: f64,
    pub upper: f64,
    /// True when built on the log scale and mapped back.
    pub log_scale: bool,
}

fn ci_common(fit: &FitResult, level: f64) -> Result<f64> {
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Domain(format!("confidence level {level} outside (0, 1)")));
    }
    if fit.covariance.is_none() {
        return Err(Error::Domain("fit has no covariance matrix".into()));
    }
    std_normal_quantile(1.0 - (1.0 - level) / 2.0)
}

/// `θ̂_r ± z·SE_r` on the natural scale for every free coordinate.
pub fn asymptotic_ci(fit: &FitResult, level: f64) -> Result<Vec<ConfidenceInterval>> {
    let z = ci_common(fit, level)?;
    let est = fit.estimates();
    Ok(fit
        .std_errors
        .iter()
        .enumerate()
        .filter_map(|(i, se)| se.map(|se| (i, se)))
        .map(|(i, se)| ConfidenceInterval {
            name: fit.names[i].clone(),
            estimate: est[i],
            std_error: se,
            lower: est[i] - z * se,
            upper: est[i] + z * se,
            log_scale: false,
        })
        .collect())
}

/// Intervals for positive parameters built as `exp(ln θ̂ ± z·SE/θ̂)`; the
/// LogNormal location keeps its natural-scale interval.
pub fn asymptotic_ci_log(fit: &FitResult, level: f64) -> Result<Vec<ConfidenceInterval>> {
    let z = ci_common(fit, level)?;
    let spec = FitSpec::gemo(fit.kind());
    Ok(asymptotic_ci(fit, level)?
        .into_iter()
        .map(|mut ci| {
            let i = fit.names.iter().position(|n| *n == ci.name).unwrap();
            if spec.is_positive(i) {
                let w = z * ci.std_error / ci.estimate;
                ci.lower = ci.estimate * (-w).exp();
                ci.upper = ci.estimate * w.exp();
                ci.log_scale = true;
            }
            ci
        })
        .collect())
}

/// Likelihood ratio test of a restricted fit against a fuller one.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LrTest {
    pub statistic: f64,
    pub df: usize,
    pub p_value: f64,
}

impl LrTest {
    /// Whether the statistic exceeds the upper `a` point of `χ²_df`.
    pub fn rejects(&self, a: f64) -> Result<bool> {
        if self.df == 0 {
            return Ok(false);
        }
        Ok(self.statistic > chi_square_critical(a, self.df as f64)?)
    }
}

/// `2(ℓ_full − ℓ_restricted)` against `χ²` with as many degrees of freedom as
/// constrained coordinates.
pub fn likelihood_ratio_test(full: &FitResult, restricted: &FitResult) -> Result<LrTest> {
    if full.kind() != restricted.kind() {
        return Err(Error::NotNested(format!(
            "different baselines ({} vs {})",
            full.kind(),
            restricted.kind()
        )));
    }
    let ef = full.estimates();
    let er = restricted.estimates();
    for i in 0..full.free.len() {
        if restricted.free[i] && !full.free[i] {
            return Err(Error::NotNested(format!(
                "{} is free in the restricted model but fixed in the full one",
                full.names[i]
            )));
        }
        if !restricted.free[i] && !full.free[i] && (ef[i] - er[i]).abs() > 1e-12 * ef[i].abs().max(1.0) {
            return Err(Error::NotNested(format!(
                "{} is fixed at different values ({} vs {})",
                full.names[i], ef[i], er[i]
            )));
        }
    }
    let df = full.k() - restricted.k();
    let diff = full.loglik - restricted.loglik;
    if diff < -1e-6 {
        return Err(Error::Domain(format!(
            "full model log-likelihood {} is below the restricted one {}",
            full.loglik, restricted.loglik
        )));
    }
    let statistic = 2.0 * diff.max(0.0);
    let p_value = if df == 0 || statistic == 0.0 {
        1.0
    } else {
        chi_square_sf(statistic, df as f64)?
    };
    Ok(LrTest {
        statistic,
        df,
        p_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::Baseline;
    use crate::inference::likelihood::log_likelihood;

    fn cancer() -> Dataset<f64> {
        Dataset::bladder_cancer()
    }

    fn serial() -> FitOptions {
        FitOptions {
            parallel: false,
            ..Default::default()
        }
    }

    #[test]
    fn fit_spec_construction() {
        let s = FitSpec::classic(BaselineKind::Weibull);
        assert_eq!(s.free_mask(), vec![false, false, false, true, true]);
        assert_eq!(s.free_count(), 2);
        let s = FitSpec::gemo(BaselineKind::Exponential).fix("gamma", 1.0).unwrap();
        assert_eq!(s.free_mask(), vec![true, true, false, true]);
        assert!(FitSpec::gemo(BaselineKind::Exponential).fix("theta", 1.0).is_err());
        assert!(FitSpec::gemo(BaselineKind::Weibull).fix("alpha", -1.0).is_err());
        assert!(FitSpec::gemo(BaselineKind::LogNormal).fix("mu", -1.0).is_ok());
    }

    #[test]
    fn exponential_mle_is_closed_form() {
        let d = cancer();
        let f = fit(&d, &FitSpec::classic(BaselineKind::Exponential), &serial()).unwrap();
        let rate = f.estimates()[3];
        assert!((rate - 1.0 / d.mean()).abs() < 1e-9, "{rate} {:?}", f);
        // SE of the exponential rate MLE is rate/√n.
        let se = f.std_errors[3].unwrap();
        assert!((se - rate / (d.len() as f64).sqrt()).abs() < 1e-6 * se);
        assert!(f.converged);
        assert_eq!(f.k(), 1);
    }

    #[test]
    fn weibull_cancer_fit() {
        let f = fit(&cancer(), &FitSpec::classic(BaselineKind::Weibull), &serial()).unwrap();
        let e = f.estimates();
        assert!((f.loglik + 414.0869).abs() < 0.01);
        assert!((e[3] - 1.0477).abs() < 0.01 * 1.0477);
        assert!((e[4] - 9.5600).abs() < 0.01 * 9.56);
        assert!((f.std_errors[3].unwrap() - 0.0676).abs() < 0.1 * 0.0676);
        assert!((f.std_errors[4].unwrap() - 0.8529).abs() < 0.1 * 0.8529);
        assert!(!f.ridge_warning);
        assert!(f.converged);
        // First-order condition at the reported estimate.
        let g = log_likelihood_gradient(&f.params, &cancer()).1;
        assert!(g[3].abs() < 1e-5 && g[4].abs() < 1e-5);
    }

    #[test]
    fn log_and_natural_parameterizations_agree() {
        let d = cancer();
        let spec = FitSpec::classic(BaselineKind::Gamma);
        let a = fit(&d, &spec, &serial()).unwrap();
        let b = fit(
            &d,
            &spec,
            &FitOptions {
                parameterization: Parameterization::Natural,
                ..serial()
            },
        )
        .unwrap();
        assert!((a.loglik - b.loglik).abs() < 1e-6);
    }

    #[test]
    fn deterministic_and_parallel_safe() {
        let d = cancer();
        let spec = FitSpec::gemo(BaselineKind::Exponential).fix("gamma", 1.0).unwrap();
        let opts = FitOptions {
            starts: 6,
            ..Default::default()
        };
        let a = fit(&d, &spec, &opts).unwrap();
        let b = fit(&d, &spec, &FitOptions { parallel: false, ..opts }).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.n_starts, 7);
    }

    #[test]
    fn confidence_intervals() {
        let f = fit(&cancer(), &FitSpec::classic(BaselineKind::Weibull), &serial()).unwrap();
        let ci = asymptotic_ci(&f, 0.95).unwrap();
        assert_eq!(ci.len(), 2);
        let z: f64 = std_normal_quantile(0.975).unwrap();
        assert!((z - 1.959_964).abs() < 1e-6);
        for c in &ci {
            assert!(((c.upper - c.lower) - 2.0 * z * c.std_error).abs() < 1e-12);
            assert!(!c.log_scale);
        }
        let lg = asymptotic_ci_log(&f, 0.95).unwrap();
        for (c, l) in ci.iter().zip(&lg) {
            assert!(l.log_scale && l.lower > 0.0);
            assert!(((l.lower * l.upper).sqrt() - c.estimate).abs() < 1e-9 * c.estimate);
        }
        assert!(asymptotic_ci(&f, 1.0).is_err());
    }

    #[test]
    fn wald_interval_arithmetic() {
        // Interval built from fixed numbers: 1.0477 ± 1.96·0.0676.
        let z: f64 = std_normal_quantile(0.975).unwrap();
        let (lo, hi) = (1.0477 - z * 0.0676, 1.0477 + z * 0.0676);
        assert!((lo - 0.9152).abs() < 1e-4 && (hi - 1.1802).abs() < 1e-4);
    }

    #[test]
    fn lr_test_contract() {
        let d = cancer();
        let w = fit(&d, &FitSpec::classic(BaselineKind::Weibull), &serial()).unwrap();
        let same = likelihood_ratio_test(&w, &w).unwrap();
        assert_eq!(same.statistic, 0.0);
        assert_eq!(same.df, 0);
        assert_eq!(same.p_value, 1.0);
        let e = fit(&d, &FitSpec::classic(BaselineKind::Exponential), &serial()).unwrap();
        assert!(matches!(likelihood_ratio_test(&w, &e), Err(Error::NotNested(_))));
        let mo = fit(
            &d,
            &FitSpec::gemo(BaselineKind::Weibull).fix("beta", 1.0).unwrap().fix("gamma", 1.0).unwrap(),
            &serial(),
        )
        .unwrap();
        let t = likelihood_ratio_test(&mo, &w).unwrap();
        assert_eq!(t.df, 1);
        assert!(t.statistic >= 0.0);
        assert!((t.p_value - chi_square_sf(t.statistic, 1.0).unwrap()).abs() < 1e-15);
        assert!(matches!(likelihood_ratio_test(&w, &mo), Err(Error::NotNested(_))));
    }

    #[test]
    fn chi_square_reference() {
        assert!((chi_square_sf(9.4332_f64, 3.0).unwrap() - 0.024_052_7).abs() < 1e-6);
    }

    #[test]
    fn likelihood_at_reported_rows() {
        let d = cancer();
        let w = GemoParams::identity(Baseline::weibull(1.0477, 9.5600).unwrap()).unwrap();
        assert!((log_likelihood(&w, &d) + 414.0869).abs() < 0.01);
        let e = GemoParams::identity(Baseline::exponential(0.1068).unwrap()).unwrap();
        assert!((log_likelihood(&e, &d) + 414.3419).abs() < 0.01);
    }
}
