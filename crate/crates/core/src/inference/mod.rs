//! Maximum-likelihood inference for complete samples.

pub mod bfgs;
mod fit;
mod likelihood;

pub use fit::{
    asymptotic_ci, asymptotic_ci_log, fit, initial_baseline, likelihood_ratio_test,
    ConfidenceInterval, FitOptions, FitResult, FitSpec, LrTest, Parameterization, RIDGE_CONDITION,
};
pub use likelihood::{
    gemo_hessian_block, log_likelihood, log_likelihood_gradient, log_likelihood_hessian,
    observed_information, score_gemo,
};
