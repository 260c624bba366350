//! Moments, residual-life measures, entropies and order statistics of a GEMO
//! distribution.
//!
//! Everything here is computed from defining integrals with adaptive
//! quadrature. Conditional quantities are formed as ratios in log space, so
//! conditioning on far-tail events stays accurate as long as `ln Ḡ(t)` is
//! finite.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gemo::GemoParams;
use crate::quadrature::Quadrature;
use crate::scalar::{lit, Scalar};
use crate::special::ln_beta;

/// Percentiles used for reliability tables when none are requested.
pub const DEFAULT_PERCENTILES: [f64; 7] = [0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99];

/// Integrals of a GEMO distribution under fixed quadrature settings.
#[derive(Clone, Copy, Debug)]
pub struct Reliability<T> {
    params: GemoParams<T>,
    quad: Quadrature<T>,
    median: T,
    spread: T,
}

/// One row of a [`ReliabilityTable`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReliabilityRow<T> {
    pub percentile: T,
    pub time: T,
    pub mrl: T,
    pub mpl: T,
}

/// Times, mean residual lives and mean past lifetimes at a set of percentiles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar + Serialize + for<'a> Deserialize<'a>")]
pub struct ReliabilityTable<T> {
    pub params: GemoParams<T>,
    pub rows: Vec<ReliabilityRow<T>>,
}

impl<T: Scalar> Reliability<T> {
    /// Uses [`Quadrature::from_env`] settings.
    pub fn new(params: GemoParams<T>) -> Result<Self> {
        Self::with_quadrature(params, Quadrature::from_env())
    }

    pub fn with_quadrature(params: GemoParams<T>, quad: Quadrature<T>) -> Result<Self> {
        let median = params.quantile(lit(0.5))?;
        let lo = params.quantile(lit(0.1))?;
        let hi = params.quantile(lit(0.9))?;
        let mut spread = hi - lo;
        if !(spread > T::zero() && spread.is_finite()) {
            spread = median;
        }
        Ok(Reliability {
            params,
            quad,
            median,
            spread,
        })
    }

    pub fn params(&self) -> &GemoParams<T> {
        &self.params
    }

    /// `∫₀^∞ exp(h(x)) dx` for a log-integrand `h`.
    fn integrate_ln<F: Fn(T) -> T>(&self, ln_f: F) -> Result<T> {
        let f = |x: T| {
            let v = ln_f(x);
            if v == T::neg_infinity() {
                T::zero()
            } else {
                v.exp()
            }
        };
        Ok(self.quad.integrate_half_line(f, self.median, self.spread)?.value)
    }

    /// `∫_t^∞ exp(h(x)) dx`; the decay length is taken from the hazard at `t`.
    fn integrate_ln_upper<F: Fn(T) -> T>(&self, ln_f: F, t: T) -> Result<T> {
        if t <= T::zero() {
            return self.integrate_ln(ln_f);
        }
        let h = self.params.hrf(t);
        let scale = if h > T::zero() && h.is_finite() {
            (T::one() / h).min(self.spread.max(t))
        } else {
            self.spread
        };
        let f = |x: T| {
            let v = ln_f(x);
            if v == T::neg_infinity() {
                T::zero()
            } else {
                v.exp()
            }
        };
        Ok(self.quad.integrate_upper(f, t, scale)?.value)
    }

    /// Raw moment `E[X^r]`.
    pub fn raw_moment(&self, r: u32) -> Result<T> {
        let rt = T::from_count(r as usize);
        let p = self.params;
        self.integrate_ln(move |x| rt * x.ln() + p.ln_pdf(x))
    }

    /// Raw moment from the term-by-term integrated power series of the density.
    /// Only defined for `|1−α| < 1`.
    pub fn raw_moment_series(&self, r: u32, tol: T) -> Result<T> {
        let p = self.params;
        let w = p.series_weights(tol)?;
        let base = *p.baseline();
        let (a, b, g) = (p.alpha(), p.beta(), p.gamma());
        let rt = T::from_count(r as usize);
        let pre = b.ln() + g.ln() + b * a.ln();
        let mut total = T::zero();
        for (j, &wj) in w.weights.iter().enumerate() {
            if wj == T::zero() {
                continue;
            }
            let expo = g * (b + T::from_count(j)) - T::one();
            let term = self.integrate_ln(move |x| {
                let ln_fbar = base.ln_sf(x);
                let fb = if ln_fbar == T::zero() {
                    T::zero()
                } else {
                    expo * ln_fbar
                };
                pre + rt * x.ln() + base.ln_pdf(x) + fb
            })?;
            total = total + wj * term;
        }
        Ok(total)
    }

    /// Moment generating function `E[e^{tX}]`. Fails with a quadrature
    /// error when the integral diverges.
    pub fn mgf(&self, t: T) -> Result<T> {
        let p = self.params;
        self.integrate_ln(move |x| t * x + p.ln_pdf(x))
    }

    /// Probability weighted moment `E[X^l G(X)^j Ḡ(X)^k]`.
    pub fn pwm(&self, l: u32, j: u32, k: u32) -> Result<T> {
        let p = self.params;
        let (lt, jt, kt) = (
            T::from_count(l as usize),
            T::from_count(j as usize),
            T::from_count(k as usize),
        );
        self.integrate_ln(move |x| {
            let mut v = p.ln_pdf(x);
            if l > 0 {
                v = v + lt * x.ln();
            }
            if j > 0 {
                v = v + jt * p.ln_cdf(x);
            }
            if k > 0 {
                v = v + kt * p.ln_sf(x);
            }
            v
        })
    }

    fn ln_sf_checked(&self, t: T) -> Result<T> {
        let ln_s = self.params.ln_sf(t);
        if ln_s.is_finite() {
            Ok(ln_s)
        } else {
            Err(Error::TailUnderflow { t: t.as_f64() })
        }
    }

    /// Mean residual life `E[X − t | X > t] = ∫_t^∞ Ḡ(x) dx / Ḡ(t)`.
    pub fn mean_residual_life(&self, t: T) -> Result<T> {
        if t < T::zero() || !t.is_finite() {
            return Err(Error::Domain(format!("time {} must be nonnegative", t.as_f64())));
        }
        let ln_st = self.ln_sf_checked(t)?;
        let p = self.params;
        self.integrate_ln_upper(move |x| p.ln_sf(x) - ln_st, t)
    }

    /// Mean past lifetime `E[t − X | X ≤ t] = ∫₀^t G(x) dx / G(t)`.
    pub fn mean_past_lifetime(&self, t: T) -> Result<T> {
        let ln_ct = self.params.ln_cdf(t);
        if !(t > T::zero()) || !ln_ct.is_finite() {
            return Err(Error::Domain(format!(
                "mean past lifetime needs G(t) > 0, got t = {}",
                t.as_f64()
            )));
        }
        let p = self.params;
        let f = move |x: T| {
            let v = p.ln_cdf(x) - ln_ct;
            if v == T::neg_infinity() {
                T::zero()
            } else {
                v.exp()
            }
        };
        Ok(self.quad.integrate_from_zero(f, t)?.value)
    }

    /// Conditional moment `E[X^n | X ≥ t]`.
    pub fn conditional_moment(&self, n: u32, t: T) -> Result<T> {
        if t < T::zero() || !t.is_finite() {
            return Err(Error::Domain(format!("time {} must be nonnegative", t.as_f64())));
        }
        let ln_st = self.ln_sf_checked(t)?;
        let p = self.params;
        let nt = T::from_count(n as usize);
        self.integrate_ln_upper(
            move |x| {
                let v = p.ln_pdf(x) - ln_st;
                if n == 0 {
                    v
                } else {
                    v + nt * x.ln()
                }
            },
            t,
        )
    }

    /// `∫ g(x)^c dx`.
    pub fn density_power_integral(&self, c: T) -> Result<T> {
        let p = self.params;
        self.integrate_ln(move |x| c * p.ln_pdf(x))
    }

    /// Varma entropy `ln(∫ g^{a+b−1}) / (b − a)` for `b ≥ 1`, `b−1 < a < b`.
    pub fn varma_entropy(&self, a: T, b: T) -> Result<T> {
        let one = T::one();
        let c = a + b - one;
        if !(b >= one && a > b - one && a < b) {
            return Err(Error::Domain(format!(
                "Varma entropy needs b >= 1 and b-1 < a < b, got a = {}, b = {}",
                a.as_f64(),
                b.as_f64()
            )));
        }
        if !(c > T::zero()) || c == one {
            return Err(Error::Domain(format!(
                "Varma entropy needs a + b - 1 positive and different from 1, got {}",
                c.as_f64()
            )));
        }
        Ok(self.density_power_integral(c)?.ln() / (b - a))
    }

    /// Shannon entropy `−∫ g ln g`.
    pub fn shannon_entropy(&self) -> Result<T> {
        let p = self.params;
        let f = move |x: T| {
            let lg = p.ln_pdf(x);
            if lg == T::neg_infinity() {
                T::zero()
            } else {
                -lg * lg.exp()
            }
        };
        Ok(self
            .quad
            .integrate_half_line(f, self.median, self.spread)?
            .value)
    }

    /// Quantile, MRL and MPL at each percentile (which must be increasing).
    pub fn table(&self, percentiles: &[T]) -> Result<ReliabilityTable<T>> {
        let mut rows = Vec::with_capacity(percentiles.len());
        for (i, &u) in percentiles.iter().enumerate() {
            if i > 0 && u <= percentiles[i - 1] {
                return Err(Error::Domain("percentiles must be strictly increasing".into()));
            }
            let t = self.params.quantile(u)?;
            rows.push(ReliabilityRow {
                percentile: u,
                time: t,
                mrl: self.mean_residual_life(t)?,
                mpl: self.mean_past_lifetime(t)?,
            });
        }
        Ok(ReliabilityTable {
            params: self.params,
            rows,
        })
    }
}

/// Density of the `r`-th smallest of `n` independent draws.
pub fn order_statistic_pdf<T: Scalar>(p: &GemoParams<T>, r: usize, n: usize, x: T) -> Result<T> {
    if r == 0 || r > n {
        return Err(Error::Domain(format!(
            "order statistic index r = {r} must lie in 1..={n}"
        )));
    }
    if x <= T::zero() {
        return Ok(T::zero());
    }
    let mut v = p.ln_pdf(x)
        - ln_beta(T::from_count(r), T::from_count(n - r + 1));
    if r > 1 {
        v = v + T::from_count(r - 1) * p.ln_cdf(x);
    }
    if n > r {
        v = v + T::from_count(n - r) * p.ln_sf(x);
    }
    Ok(v.exp())
}
