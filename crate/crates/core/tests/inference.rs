use gemo::inference::{log_likelihood, FitOptions, Parameterization};
use gemo::{fit, Baseline, BaselineKind, Dataset, FitResult, FitSpec, GemoParams};
use rayon::prelude::*;

fn cancer() -> Dataset<f64> {
    Dataset::bladder_cancer()
}

fn glass() -> Dataset<f64> {
    Dataset::glass_fibers()
}

fn assert_local_max(r: &FitResult, data: &Dataset<f64>) {
    assert!(r.converged, "{r:?}");
    let theta = r.estimates();
    let ll = log_likelihood(&r.params, data);
    assert!((ll - r.loglik).abs() < 1e-9);
    for i in (0..theta.len()).filter(|&i| r.free[i]) {
        for f in [0.99, 1.01] {
            let mut v = theta.clone();
            v[i] *= f;
            let Ok(q) = GemoParams::from_vector(r.kind(), &v) else {
                continue;
            };
            let moved = log_likelihood(&q, data);
            assert!(moved <= ll + 1e-8, "{}: ×{f} raises ℓ by {}", r.names[i], moved - ll);
        }
    }
}

#[test]
fn returned_optima_are_local_maxima() {
    let opts = FitOptions::default();
    for data in [cancer(), glass()] {
        for kind in [BaselineKind::Weibull, BaselineKind::Gamma, BaselineKind::Exponential] {
            let r = fit(&data, &FitSpec::classic(kind), &opts).unwrap();
            assert_local_max(&r, &data);
        }
        let r = fit(&data, &FitSpec::gemo(BaselineKind::Weibull), &opts).unwrap();
        assert_local_max(&r, &data);
    }
    let spec = FitSpec::gemo(BaselineKind::Exponential).fix("gamma", 1.0).unwrap();
    let r = fit(&cancer(), &spec, &opts).unwrap();
    assert_local_max(&r, &cancer());
    assert!(!r.ridge_warning);
}

#[test]
fn log_and_natural_coordinates_agree() {
    let data = cancer();
    let specs = [
        FitSpec::classic(BaselineKind::Weibull),
        FitSpec::classic(BaselineKind::Gamma),
        FitSpec::gemo(BaselineKind::Exponential).fix("gamma", 1.0).unwrap(),
        FitSpec::gemo(BaselineKind::Weibull),
    ];
    for spec in specs {
        let log = fit(&data, &spec, &FitOptions::default()).unwrap();
        let nat = fit(
            &data,
            &spec,
            &FitOptions {
                parameterization: Parameterization::Natural,
                ..FitOptions::default()
            },
        )
        .unwrap();
        assert!(
            (log.loglik - nat.loglik).abs() <= 1e-6,
            "{spec:?}: {} vs {}",
            log.loglik,
            nat.loglik
        );
    }
}

/// Marshall-Olkin Weibull: α free, β = γ = 1 fixed.
fn mo_weibull_spec() -> FitSpec {
    FitSpec::gemo(BaselineKind::Weibull)
        .fix("beta", 1.0)
        .unwrap()
        .fix("gamma", 1.0)
        .unwrap()
}

#[test]
fn simulated_fits_recover_truth() {
    let truth = GemoParams::new(2.0, 1.0, 1.0, Baseline::weibull(1.5, 1.0).unwrap()).unwrap();
    let want = truth.to_vector();
    let spec = mo_weibull_spec();
    let opts = FitOptions {
        starts: 4,
        parallel: false,
        ..FitOptions::default()
    };
    let covered: Vec<Vec<bool>> = (0..40u64)
        .into_par_iter()
        .map(|rep| {
            let data = Dataset::new("sim", truth.sample(5000, 1000 + rep).unwrap()).unwrap();
            let r = fit(&data, &spec, &opts).unwrap();
            assert!(r.converged && !r.ridge_warning, "rep {rep}: {r:?}");
            let est = r.estimates();
            (0..est.len())
                .filter(|&i| r.free[i])
                .map(|i| (est[i] - want[i]).abs() <= 3.0 * r.std_errors[i].unwrap())
                .collect()
        })
        .collect();
    for j in 0..covered[0].len() {
        let hits = covered.iter().filter(|c| c[j]).count();
        assert!(hits >= 38, "parameter {j}: {hits}/40 within 3 SE");
    }
}

#[test]
fn beta_and_scale_are_confounded_with_alpha_gamma_fixed() {
    // With α = γ = 1 the survival is exp(−β(x/θ)^λ): β and θ trade off exactly.
    let truth = GemoParams::new(1.0, 1.0, 1.0, Baseline::weibull(1.5, 1.0).unwrap()).unwrap();
    let data = Dataset::new("sim", truth.sample(2000, 3).unwrap()).unwrap();
    let spec = FitSpec::gemo(BaselineKind::Weibull)
        .fix("alpha", 1.0)
        .unwrap()
        .fix("gamma", 1.0)
        .unwrap();
    let r = fit(&data, &spec, &FitOptions::default()).unwrap();
    assert!(r.ridge_warning, "condition number {}", r.condition_number);
    let b = r.params.beta();
    let theta = r.estimates()[4];
    let shape = r.estimates()[3];
    for f in [0.5, 2.0] {
        let moved = GemoParams::new(1.0, b * f, 1.0, Baseline::weibull(shape, theta * f.powf(1.0 / shape)).unwrap())
            .unwrap();
        assert!((log_likelihood(&moved, &data) - r.loglik).abs() < 1e-8);
    }
}

#[test]
fn fits_are_deterministic() {
    let data = glass();
    let spec = FitSpec::gemo(BaselineKind::Weibull);
    let a = fit(&data, &spec, &FitOptions::default()).unwrap();
    let b = fit(&data, &spec, &FitOptions::default()).unwrap();
    assert_eq!(a, b);
}
