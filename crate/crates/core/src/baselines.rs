//! The five baseline lifetime distributions wrapped by the GEMO transform.
//!
//! Every density and survival function is available directly in log space.
//! Densities and distribution functions vanish for `x ≤ 0`, so integrals over
//! the real line can be taken without special casing the support.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::scalar::{lit, Scalar};
use crate::special::{
    digamma, inverse_erfc_ln, inverse_reg_upper_gamma_ln, ln_gamma, ln_one_minus_exp,
    ln_reg_gamma_pair, std_normal_ln_cdf, std_normal_ln_sf,
};

/// Which baseline family a [`Baseline`] belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaselineKind {
    Exponential,
    Weibull,
    Gamma,
    Lomax,
    #[serde(rename = "lognormal")]
    LogNormal,
}

impl BaselineKind {
    pub const ALL: [BaselineKind; 5] = [
        BaselineKind::Exponential,
        BaselineKind::Weibull,
        BaselineKind::Gamma,
        BaselineKind::Lomax,
        BaselineKind::LogNormal,
    ];

    /// Number of baseline parameters.
    pub fn param_count(self) -> usize {
        match self {
            BaselineKind::Exponential => 1,
            _ => 2,
        }
    }

    /// Parameter names in storage order.
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            BaselineKind::Exponential => &["lambda"],
            BaselineKind::LogNormal => &["mu", "sigma"],
            _ => &["lambda", "theta"],
        }
    }

    /// Whether parameter `index` is constrained to be strictly positive.
    pub fn is_positive(self, index: usize) -> bool {
        !(self == BaselineKind::LogNormal && index == 0)
    }

    pub fn name(self) -> &'static str {
        match self {
            BaselineKind::Exponential => "exponential",
            BaselineKind::Weibull => "weibull",
            BaselineKind::Gamma => "gamma",
            BaselineKind::Lomax => "lomax",
            BaselineKind::LogNormal => "lognormal",
        }
    }
}

impl fmt::Display for BaselineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BaselineKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "exponential" | "exp" | "e" => Ok(BaselineKind::Exponential),
            "weibull" | "w" => Ok(BaselineKind::Weibull),
            "gamma" | "g" => Ok(BaselineKind::Gamma),
            "lomax" | "l" => Ok(BaselineKind::Lomax),
            "lognormal" | "log-normal" | "ln" => Ok(BaselineKind::LogNormal),
            other => Err(Error::Domain(format!("unknown baseline '{other}'"))),
        }
    }
}

/// A baseline distribution together with its parameter vector.
///
/// | kind        | parameters                         |
/// |-------------|------------------------------------|
/// | Exponential | rate λ                             |
/// | Weibull     | shape λ, scale θ                   |
/// | Gamma       | shape λ, rate θ                    |
/// | Lomax       | scale λ, shape θ                   |
/// | LogNormal   | log-mean μ, log-standard-deviation σ |
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "BaselineRepr<T>",
    into = "BaselineRepr<T>",
    bound = "T: Scalar + Serialize + for<'a> Deserialize<'a>"
)]
pub enum Baseline<T> {
    Exponential { rate: T },
    Weibull { shape: T, scale: T },
    Gamma { shape: T, rate: T },
    Lomax { scale: T, shape: T },
    LogNormal { mu: T, sigma: T },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct BaselineRepr<T> {
    kind: BaselineKind,
    params: Vec<T>,
}

impl<T: Scalar> TryFrom<BaselineRepr<T>> for Baseline<T> {
    type Error = Error;

    fn try_from(repr: BaselineRepr<T>) -> Result<Self> {
        Baseline::new(repr.kind, &repr.params)
    }
}

impl<T: Scalar> From<Baseline<T>> for BaselineRepr<T> {
    fn from(b: Baseline<T>) -> Self {
        BaselineRepr {
            kind: b.kind(),
            params: b.params(),
        }
    }
}

pub(crate) fn check_positive<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, v.as_f64(), "must be positive and finite"))
    }
}

impl<T: Scalar> Baseline<T> {
    /// Builds a baseline from its kind and parameter vector, validating both.
    pub fn new(kind: BaselineKind, params: &[T]) -> Result<Self> {
        if params.len() != kind.param_count() {
            return Err(Error::Domain(format!(
                "{kind} takes {} parameter(s), got {}",
                kind.param_count(),
                params.len()
            )));
        }
        let b = match kind {
            BaselineKind::Exponential => Baseline::Exponential { rate: params[0] },
            BaselineKind::Weibull => Baseline::Weibull {
                shape: params[0],
                scale: params[1],
            },
            BaselineKind::Gamma => Baseline::Gamma {
                shape: params[0],
                rate: params[1],
            },
            BaselineKind::Lomax => Baseline::Lomax {
                scale: params[0],
                shape: params[1],
            },
            BaselineKind::LogNormal => Baseline::LogNormal {
                mu: params[0],
                sigma: params[1],
            },
        };
        b.validate()?;
        Ok(b)
    }

    pub fn exponential(rate: T) -> Result<Self> {
        Self::new(BaselineKind::Exponential, &[rate])
    }

    pub fn weibull(shape: T, scale: T) -> Result<Self> {
        Self::new(BaselineKind::Weibull, &[shape, scale])
    }

    pub fn gamma(shape: T, rate: T) -> Result<Self> {
        Self::new(BaselineKind::Gamma, &[shape, rate])
    }

    pub fn lomax(scale: T, shape: T) -> Result<Self> {
        Self::new(BaselineKind::Lomax, &[scale, shape])
    }

    pub fn log_normal(mu: T, sigma: T) -> Result<Self> {
        Self::new(BaselineKind::LogNormal, &[mu, sigma])
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Baseline::Exponential { rate } => check_positive("lambda", rate),
            Baseline::Weibull { shape, scale } => {
                check_positive("lambda", shape)?;
                check_positive("theta", scale)
            }
            Baseline::Gamma { shape, rate } => {
                check_positive("lambda", shape)?;
                check_positive("theta", rate)
            }
            Baseline::Lomax { scale, shape } => {
                check_positive("lambda", scale)?;
                check_positive("theta", shape)
            }
            Baseline::LogNormal { mu, sigma } => {
                if !mu.is_finite() {
                    return Err(invalid("mu", mu.as_f64(), "must be finite"));
                }
                check_positive("sigma", sigma)
            }
        }
    }

    pub fn kind(&self) -> BaselineKind {
        match self {
            Baseline::Exponential { .. } => BaselineKind::Exponential,
            Baseline::Weibull { .. } => BaselineKind::Weibull,
            Baseline::Gamma { .. } => BaselineKind::Gamma,
            Baseline::Lomax { .. } => BaselineKind::Lomax,
            Baseline::LogNormal { .. } => BaselineKind::LogNormal,
        }
    }

    pub fn param_count(&self) -> usize {
        self.kind().param_count()
    }

    /// Parameters in storage order (see the table on [`Baseline`]).
    pub fn params(&self) -> Vec<T> {
        match *self {
            Baseline::Exponential { rate } => vec![rate],
            Baseline::Weibull { shape, scale } => vec![shape, scale],
            Baseline::Gamma { shape, rate } => vec![shape, rate],
            Baseline::Lomax { scale, shape } => vec![scale, shape],
            Baseline::LogNormal { mu, sigma } => vec![mu, sigma],
        }
    }

    /// Log density; `−∞` outside the support.
    pub fn ln_pdf(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::neg_infinity();
        }
        if x == T::infinity() {
            return T::neg_infinity();
        }
        match *self {
            Baseline::Exponential { rate } => rate.ln() - rate * x,
            Baseline::Weibull { shape, scale } => {
                let z = x / scale;
                (shape / scale).ln() + (shape - T::one()) * z.ln() - z.powf(shape)
            }
            Baseline::Gamma { shape, rate } => {
                shape * rate.ln() + (shape - T::one()) * x.ln() - rate * x - ln_gamma(shape)
            }
            Baseline::Lomax { scale, shape } => {
                (shape / scale).ln() - (shape + T::one()) * (x / scale).ln_1p()
            }
            Baseline::LogNormal { mu, sigma } => {
                let z = (x.ln() - mu) / sigma;
                -lit::<T>(0.5) * z * z - sigma.ln() - x.ln() - lit::<T>(0.5) * (T::PI() + T::PI()).ln()
            }
        }
    }

    pub fn pdf(&self, x: T) -> T {
        self.ln_pdf(x).exp()
    }

    /// Log survival function `ln F̄(x)`; zero for `x ≤ 0`.
    pub fn ln_sf(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::zero();
        }
        match *self {
            Baseline::Exponential { rate } => -rate * x,
            Baseline::Weibull { shape, scale } => -(x / scale).powf(shape),
            Baseline::Gamma { shape, rate } => match ln_reg_gamma_pair(shape, rate * x) {
                Ok((_, ln_q)) => ln_q,
                Err(_) => T::nan(),
            },
            Baseline::Lomax { scale, shape } => -shape * (x / scale).ln_1p(),
            Baseline::LogNormal { mu, sigma } => std_normal_ln_sf((x.ln() - mu) / sigma),
        }
    }

    /// Log distribution function `ln F(x)`; `−∞` for `x ≤ 0`.
    pub fn ln_cdf(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::neg_infinity();
        }
        match *self {
            Baseline::Gamma { shape, rate } => match ln_reg_gamma_pair(shape, rate * x) {
                Ok((ln_p, _)) => ln_p,
                Err(_) => T::nan(),
            },
            Baseline::LogNormal { mu, sigma } => std_normal_ln_cdf((x.ln() - mu) / sigma),
            _ => ln_one_minus_exp(self.ln_sf(x)),
        }
    }

    pub fn sf(&self, x: T) -> T {
        self.ln_sf(x).exp()
    }

    pub fn cdf(&self, x: T) -> T {
        if !(x > T::zero()) {
            return T::zero();
        }
        match self {
            Baseline::Gamma { .. } | Baseline::LogNormal { .. } => self.ln_cdf(x).exp(),
            _ => -self.ln_sf(x).exp_m1(),
        }
    }

    /// Quantile function `F⁻¹(u)` for `0 < u < 1`.
    pub fn quantile(&self, u: T) -> Result<T> {
        if !(u > T::zero() && u < T::one()) {
            return Err(Error::Domain(format!(
                "probability {} outside (0, 1)",
                u.as_f64()
            )));
        }
        self.quantile_ln_sf((-u).ln_1p())
    }

    /// The point whose log survival probability is `ln_s` (`ln_s < 0`).
    ///
    /// Working from `ln F̄` keeps both tails accurate: upper-tail
    /// probabilities far below machine epsilon remain representable.
    pub fn quantile_ln_sf(&self, ln_s: T) -> Result<T> {
        if !(ln_s < T::zero()) {
            return Err(Error::Domain(format!(
                "log survival probability {} must be negative",
                ln_s.as_f64()
            )));
        }
        if ln_s == T::neg_infinity() {
            return Ok(T::infinity());
        }
        let h = -ln_s; // cumulative hazard at the quantile
        Ok(match *self {
            Baseline::Exponential { rate } => h / rate,
            Baseline::Weibull { shape, scale } => scale * h.powf(shape.recip()),
            Baseline::Gamma { shape, rate } => inverse_reg_upper_gamma_ln(shape, ln_s)? / rate,
            Baseline::Lomax { scale, shape } => scale * (h / shape).exp_m1(),
            Baseline::LogNormal { mu, sigma } => {
                // ln erfc(z/√2) = ln(2 F̄)
                let ln_c = ln_one_minus_exp(ln_s);
                let z = if ln_s < -T::LN_2() {
                    T::SQRT_2() * inverse_erfc_ln(ln_s + T::LN_2())
                } else {
                    -T::SQRT_2() * inverse_erfc_ln(ln_c + T::LN_2())
                };
                (mu + sigma * z).exp()
            }
        })
    }

    /// Gradients of `ln f(x)` and `ln F̄(x)` with respect to the baseline
    /// parameters, in storage order. Only the first `param_count()` entries
    /// are meaningful.
    pub fn ln_pdf_sf_gradient(&self, x: T) -> ([T; 2], [T; 2]) {
        let zero = T::zero();
        let one = T::one();
        match *self {
            Baseline::Exponential { rate } => ([rate.recip() - x, zero], [-x, zero]),
            Baseline::Weibull { shape, scale } => {
                let lz = (x / scale).ln();
                let u = (shape * lz).exp();
                (
                    [shape.recip() + lz - u * lz, shape / scale * (u - one)],
                    [-u * lz, u * shape / scale],
                )
            }
            Baseline::Gamma { shape, rate } => {
                let z = rate * x;
                let ln_q = match ln_reg_gamma_pair(shape, z) {
                    Ok((_, q)) => q,
                    Err(_) => T::nan(),
                };
                let ln_dens = (shape - one) * z.ln() - z - ln_gamma(shape);
                let d_rate_sf = -x * (ln_dens - ln_q).exp();
                // ∂ ln Q / ∂ shape has no convenient closed form; central difference.
                let h = lit::<T>(6e-6) * shape.max(one);
                let q_at = |s: T| {
                    ln_reg_gamma_pair(s, z)
                        .map(|(_, q)| q)
                        .unwrap_or_else(|_| T::nan())
                };
                let d_shape_sf = (q_at(shape + h) - q_at(shape - h)) / (h + h);
                (
                    [rate.ln() - digamma(shape) + x.ln(), shape / rate - x],
                    [d_shape_sf, d_rate_sf],
                )
            }
            Baseline::Lomax { scale, shape } => {
                let l1p = (x / scale).ln_1p();
                let r = x / (scale * (scale + x));
                (
                    [-scale.recip() + (shape + one) * r, shape.recip() - l1p],
                    [shape * r, -l1p],
                )
            }
            Baseline::LogNormal { mu, sigma } => {
                let z = (x.ln() - mu) / sigma;
                let ln_phi = -lit::<T>(0.5) * z * z - lit::<T>(0.5) * (T::PI() + T::PI()).ln();
                let mills = (ln_phi - std_normal_ln_sf(z)).exp();
                (
                    [z / sigma, (z * z - one) / sigma],
                    [mills / sigma, mills * z / sigma],
                )
            }
        }
    }
}
