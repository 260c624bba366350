//! Generalized exponentiated Marshall-Olkin (GEMO) lifetime distributions.
//!
//! A baseline cdf `F` is mapped to
//! `G(x) = 1 − [α F̄(x)^γ / (1 − (1−α) F̄(x)^γ)]^β` with `α, β, γ > 0`.
//! The crate evaluates the family, computes reliability measures by
//! quadrature, fits it by maximum likelihood and scores fits with AIC, KS
//! and AD.
//!
//! Distribution and reliability code is generic over [`Scalar`] (`f32` or
//! `f64`); inference works in `f64`.
//!
//! ```
//! use gemo::{Baseline64, Gemo64};
//!
//! let p = Gemo64::new(2.0, 0.5, 1.5, Baseline64::weibull(1.2, 3.0).unwrap()).unwrap();
//! let x = p.quantile(0.5).unwrap();
//! assert!((p.cdf(x) - 0.5).abs() < 1e-12);
//! ```

pub mod baselines;
pub mod data;
pub mod error;
pub mod gemo;
pub mod gof;
pub mod inference;
pub mod quadrature;
pub mod reliability;
pub mod scalar;
pub mod special;

pub use baselines::{Baseline, BaselineKind};
pub use data::Dataset;
pub use error::{Error, Result};
pub use gemo::{GemoParams, SeriesWeights};
pub use gof::{
    ad_statistic, aic, anderson_darling, audit_aic, ks_statistic, ttt_transform, AicVerdict,
    GofReport,
};
pub use inference::{fit, likelihood_ratio_test, FitOptions, FitResult, FitSpec, LrTest};
pub use quadrature::Quadrature;
pub use reliability::{Reliability, ReliabilityTable, DEFAULT_PERCENTILES};
pub use scalar::Scalar;

pub type Gemo64 = GemoParams<f64>;
pub type Gemo32 = GemoParams<f32>;
pub type Baseline64 = Baseline<f64>;
pub type Baseline32 = Baseline<f32>;
pub type Dataset64 = Dataset<f64>;
pub type Dataset32 = Dataset<f32>;
pub type Reliability64 = Reliability<f64>;
pub type Reliability32 = Reliability<f32>;
