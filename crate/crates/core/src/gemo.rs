//! The GEMO transform of a baseline distribution.
//!
//! With `F̄` the baseline survival function and `D(x) = 1 − (1−α)F̄(x)^γ`,
//!
//! ```text
//! Ḡ(x) = [α F̄(x)^γ / D(x)]^β
//! g(x) = βγα^β f(x) F̄(x)^{βγ−1} D(x)^{−(β+1)}
//! ```
//!
//! Everything is evaluated in log space. `D` is formed as `(1 − F̄^γ) + αF̄^γ`,
//! a sum of two nonnegative terms, so it never suffers cancellation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::baselines::{check_positive, Baseline, BaselineKind};
use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};
use crate::special::{check_probability, ln_one_minus_exp};

/// Names of the GEMO shape parameters, in parameter-vector order.
pub const GEMO_PARAM_NAMES: [&str; 3] = ["alpha", "beta", "gamma"];

/// Full GEMO parameter set `(α, β, γ, ξ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(
    try_from = "GemoRepr<T>",
    into = "GemoRepr<T>",
    bound = "T: Scalar + Serialize + for<'a> Deserialize<'a>"
)]
pub struct GemoParams<T> {
    alpha: T,
    beta: T,
    gamma: T,
    baseline: Baseline<T>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Scalar + Serialize + for<'a> Deserialize<'a>")]
struct GemoRepr<T> {
    alpha: T,
    beta: T,
    gamma: T,
    baseline: Baseline<T>,
}

impl<T: Scalar> TryFrom<GemoRepr<T>> for GemoParams<T> {
    type Error = Error;

    fn try_from(r: GemoRepr<T>) -> Result<Self> {
        GemoParams::new(r.alpha, r.beta, r.gamma, r.baseline)
    }
}

impl<T: Scalar> From<GemoParams<T>> for GemoRepr<T> {
    fn from(p: GemoParams<T>) -> Self {
        GemoRepr {
            alpha: p.alpha,
            beta: p.beta,
            gamma: p.gamma,
            baseline: p.baseline,
        }
    }
}

/// Truncated weights of the power-series form of the density.
///
/// `g(x) = βγα^β f(x) Σ_j w_j F̄(x)^{γ(β+j)−1}` with
/// `w_j = Γ(β+j+1)/(Γ(β+1) j!) · (1−α)^j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesWeights<T> {
    pub weights: Vec<T>,
    /// Index `J` of the last retained weight.
    pub truncation_index: usize,
    /// Upper bound on `Σ_{j>J} |w_j|`, which also bounds the neglected part
    /// of the series sum since `F̄^γ ≤ 1`.
    pub tail_bound: T,
}

const MAX_SERIES_TERMS: usize = 1_000_000;

impl<T: Scalar> GemoParams<T> {
    pub fn new(alpha: T, beta: T, gamma: T, baseline: Baseline<T>) -> Result<Self> {
        check_positive("alpha", alpha)?;
        check_positive("beta", beta)?;
        check_positive("gamma", gamma)?;
        baseline.validate()?;
        Ok(GemoParams {
            alpha,
            beta,
            gamma,
            baseline,
        })
    }

    /// `α = β = γ = 1`, which reproduces the baseline exactly.
    pub fn identity(baseline: Baseline<T>) -> Result<Self> {
        Self::new(T::one(), T::one(), T::one(), baseline)
    }

    /// Builds parameters from the vector `[α, β, γ, ξ…]`.
    pub fn from_vector(kind: BaselineKind, v: &[T]) -> Result<Self> {
        if v.len() != 3 + kind.param_count() {
            return Err(Error::Domain(format!(
                "{} GEMO parameter vector needs {} entries, got {}",
                kind,
                3 + kind.param_count(),
                v.len()
            )));
        }
        Self::new(v[0], v[1], v[2], Baseline::new(kind, &v[3..])?)
    }

    /// Parameter vector `[α, β, γ, ξ…]`.
    pub fn to_vector(&self) -> Vec<T> {
        let mut v = vec![self.alpha, self.beta, self.gamma];
        v.extend(self.baseline.params());
        v
    }

    /// Names matching [`to_vector`](Self::to_vector).
    pub fn param_names(&self) -> Vec<&'static str> {
        let mut v = GEMO_PARAM_NAMES.to_vec();
        v.extend_from_slice(self.baseline.kind().param_names());
        v
    }

    /// Total number of parameters, `3 + p`.
    pub fn param_count(&self) -> usize {
        3 + self.baseline.param_count()
    }

    pub fn alpha(&self) -> T {
        self.alpha
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn gamma(&self) -> T {
        self.gamma
    }

    pub fn baseline(&self) -> &Baseline<T> {
        &self.baseline
    }

    pub fn kind(&self) -> BaselineKind {
        self.baseline.kind()
    }

    /// `(ln Ḡ, ln D)` from `ln F̄`.
    ///
    /// `ln Ḡ = β ln(αF̄^γ/D)` and `αF̄^γ/D = 1 − (1 − F̄^γ)/D`; the second form
    /// keeps `G` accurate near the origin and avoids the cancellation between
    /// `β ln α` and `β ln D` when both are large.
    #[inline]
    pub(crate) fn ln_sf_parts(&self, ln_fbar: T) -> (T, T) {
        let g_ln = self.gamma * ln_fbar;
        let one_minus_s = -g_ln.exp_m1();
        let d = one_minus_s + self.alpha * g_ln.exp();
        let ln_d = d.ln();
        let q = one_minus_s / d;
        let ln_ratio = if q < lit(0.5) {
            (-q).ln_1p()
        } else {
            self.alpha.ln() + g_ln - ln_d
        };
        (self.beta * ln_ratio, ln_d)
    }

    /// `ln Ḡ(x)`.
    pub fn ln_sf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        let ln_fbar = self.baseline.ln_sf(x);
        if ln_fbar == T::neg_infinity() {
            return T::neg_infinity();
        }
        self.ln_sf_parts(ln_fbar).0
    }

    /// Survival function `Ḡ(x)`.
    pub fn sf(&self, x: T) -> T {
        self.ln_sf(x).exp()
    }

    /// Distribution function `G(x)`.
    pub fn cdf(&self, x: T) -> T {
        -self.ln_sf(x).exp_m1()
    }

    /// `ln G(x)`.
    pub fn ln_cdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::neg_infinity();
        }
        ln_one_minus_exp(self.ln_sf(x))
    }

    /// `ln g(x)`; `−∞` outside the support.
    pub fn ln_pdf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::neg_infinity();
        }
        let ln_f = self.baseline.ln_pdf(x);
        let ln_fbar = self.baseline.ln_sf(x);
        self.ln_pdf_parts(ln_f, ln_fbar)
    }

    /// `ln g = ln(βγ) + ln f − ln F̄ − ln D + ln Ḡ`.
    pub(crate) fn ln_pdf_parts(&self, ln_f: T, ln_fbar: T) -> T {
        if ln_f == T::neg_infinity() || ln_fbar == T::neg_infinity() {
            return T::neg_infinity();
        }
        let (ln_s, ln_d) = self.ln_sf_parts(ln_fbar);
        (self.beta * self.gamma).ln() + ln_f - ln_fbar - ln_d + ln_s
    }

    /// Density `g(x)`.
    pub fn pdf(&self, x: T) -> T {
        self.ln_pdf(x).exp()
    }

    /// Hazard rate `g(x)/Ḡ(x)`, evaluated as `exp(ln g − ln Ḡ)`.
    ///
    /// Returns `+∞` when the survival function has underflowed to zero in
    /// log space as well (the baseline tail is exhausted).
    pub fn hrf(&self, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        let ln_s = self.ln_sf(x);
        if ln_s == T::neg_infinity() {
            return T::infinity();
        }
        (self.ln_pdf(x) - ln_s).exp()
    }

    /// Quantile `Q(u)`, inverting through the baseline quantile. Fails when
    /// the quantile lies beyond the largest representable value.
    pub fn quantile(&self, u: T) -> Result<T> {
        check_probability(u)?;
        let x = self.quantile_unchecked(u);
        if x.is_finite() {
            Ok(x)
        } else {
            Err(Error::Domain(format!(
                "quantile at u = {} is not representable (heavy tail)",
                u.as_f64()
            )))
        }
    }

    fn quantile_unchecked(&self, u: T) -> T {
        // v = (1−u)^{1/β}; target baseline survival w = [v/(α + (1−α)v)]^{1/γ}.
        let ln_v = (-u).ln_1p() / self.beta;
        let one_minus_v = -ln_v.exp_m1();
        let ln_den = (-(T::one() - self.alpha) * one_minus_v).ln_1p();
        let ln_w = (ln_v - ln_den) / self.gamma;
        self.baseline
            .quantile_ln_sf(ln_w.min(T::zero()))
            .unwrap_or(T::nan())
    }

    /// `n` inverse-transform draws from a ChaCha8 stream seeded with `seed`.
    /// Draws that would overflow are redrawn.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<T>> {
        if n == 0 {
            return Err(Error::Domain("sample size must be at least 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let u: f64 = rng.gen();
            if u <= 0.0 {
                continue;
            }
            let x = self.quantile_unchecked(lit(u));
            if x.is_finite() && x > T::zero() {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Series weights truncated once the tail bound falls below `tol`.
    ///
    /// Only available inside the radius of convergence `|1−α| < 1`.
    pub fn series_weights(&self, tol: T) -> Result<SeriesWeights<T>> {
        let one = T::one();
        let q = one - self.alpha;
        if q.abs() >= one {
            return Err(Error::Convergence {
                method: "series expansion",
                detail: format!(
                    "|1 - alpha| = {} is outside the unit radius of convergence",
                    q.abs()
                ),
            });
        }
        let mut weights = vec![one];
        if q == T::zero() {
            return Ok(SeriesWeights {
                weights,
                truncation_index: 0,
                tail_bound: T::zero(),
            });
        }
        let mut w = one;
        for j in 0..MAX_SERIES_TERMS {
            let jt = T::from_count(j);
            let next = w * (self.beta + jt + one) / (jt + one) * q;
            // Term ratios decrease monotonically towards |1−α| for β > 0,
            // so the geometric bound applies once the ratio is below one.
            let jn = jt + one;
            let ratio = (self.beta + jn + one) / (jn + one) * q.abs();
            if ratio < one {
                let bound = next.abs() / (one - ratio);
                if bound < tol {
                    return Ok(SeriesWeights {
                        truncation_index: weights.len() - 1,
                        weights,
                        tail_bound: bound,
                    });
                }
            }
            weights.push(next);
            w = next;
        }
        Err(Error::Convergence {
            method: "series expansion",
            detail: format!("tail bound above {tol} after {MAX_SERIES_TERMS} terms"),
        })
    }

    /// Density evaluated from the series form with the given weights.
    pub fn series_pdf(&self, weights: &SeriesWeights<T>, x: T) -> T {
        if x <= T::zero() {
            return T::zero();
        }
        let ln_f = self.baseline.ln_pdf(x);
        let ln_fbar = self.baseline.ln_sf(x);
        let s = (self.gamma * ln_fbar).exp();
        // Horner evaluation of Σ w_j s^j.
        let sum = weights
            .weights
            .iter()
            .rev()
            .fold(T::zero(), |acc, &w| acc * s + w);
        let ln_pre = self.beta.ln()
            + self.gamma.ln()
            + self.beta * self.alpha.ln()
            + ln_f
            + (self.gamma * self.beta - T::one()) * ln_fbar;
        ln_pre.exp() * sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Quadrature;
    use proptest::prelude::*;

    const E: f64 = std::f64::consts::E;

    fn exp1() -> Baseline<f64> {
        Baseline::exponential(1.0).unwrap()
    }

    fn all_baselines() -> Vec<Baseline<f64>> {
        vec![
            Baseline::exponential(0.8).unwrap(),
            Baseline::weibull(1.7, 2.5).unwrap(),
            Baseline::gamma(2.3, 0.9).unwrap(),
            Baseline::lomax(1.5, 3.0).unwrap(),
            Baseline::log_normal(0.3, 0.7).unwrap(),
        ]
    }

    fn gp(a: f64, b: f64, g: f64, base: Baseline<f64>) -> GemoParams<f64> {
        GemoParams::new(a, b, g, base).unwrap()
    }

    #[test]
    fn sf_examples() {
        let p = GemoParams::identity(exp1()).unwrap();
        assert!((p.sf(2.0_f64.ln()) - 0.5).abs() < 1e-15);
        let p = gp(2.0, 1.0, 1.0, exp1());
        assert!((p.sf(3.0_f64.ln()) - 0.5).abs() < 1e-15);
        assert!((p.cdf(3.0_f64.ln()) - 0.5).abs() < 1e-15);
        let p = gp(0.3, 2.2, 0.7, Baseline::weibull(1.3, 2.0).unwrap());
        assert_eq!(p.sf(0.0), 1.0);
        assert_eq!(p.cdf(-1.0), 0.0);
    }

    #[test]
    fn cdf_and_pdf_examples() {
        let p = GemoParams::identity(Baseline::weibull(1.0, 1.0).unwrap()).unwrap();
        assert!((p.cdf(1.0) - (1.0 - 1.0 / E)).abs() < 1e-15);
        let p = GemoParams::identity(exp1()).unwrap();
        assert!((p.ln_pdf(2.0) + 2.0).abs() < 1e-15);
        let p = gp(0.5, 2.0, 1.0, exp1());
        let want = 2.0 * 0.25 * (-2.0_f64).exp() * (1.0 - 0.5 / E).powi(-3);
        assert!((p.pdf(1.0) - want).abs() < 1e-15);
        assert!((want - 0.124_512_892_301_715).abs() < 1e-14);
        assert!((p.ln_pdf(1.0) + 2.083_346_015_814_359).abs() < 1e-13);
        assert_eq!(p.ln_pdf(0.0), f64::NEG_INFINITY);
        assert_eq!(p.pdf(-3.0), 0.0);
    }

    #[test]
    fn hazard_examples() {
        let p = GemoParams::identity(Baseline::exponential(3.0).unwrap()).unwrap();
        for x in [0.01_f64, 0.5, 4.0, 100.0] {
            assert!((p.hrf(x) - 3.0).abs() < 1e-12);
        }
        let p = gp(1.0, 2.0, 1.0, exp1());
        for x in [0.01_f64, 0.5, 4.0, 30.0] {
            assert!((p.hrf(x) - 2.0).abs() < 1e-12);
        }
        let p = gp(3.0, 0.4, 2.0, Baseline::lomax(2.0, 1.5).unwrap());
        for i in 1..200 {
            let x = i as f64 * 0.1;
            let direct = p.pdf(x) / p.sf(x);
            assert!(p.hrf(x) >= 0.0);
            assert!((p.hrf(x) - direct).abs() <= 1e-10 * direct);
        }
    }

    #[test]
    fn reduces_to_baseline() {
        for base in all_baselines() {
            let p = GemoParams::identity(base).unwrap();
            let lo = base.quantile(1e-6).unwrap();
            let hi = base.quantile(1.0 - 1e-6).unwrap();
            for i in 0..1000 {
                let x = lo + (hi - lo) * i as f64 / 999.0;
                assert!((p.cdf(x) - base.cdf(x)).abs() <= 1e-12, "{base:?} {x}");
            }
        }
    }

    #[test]
    fn cdf_accurate_near_origin() {
        let p = GemoParams::identity(exp1()).unwrap();
        let x: f64 = 1e-12;
        assert!((p.cdf(x) + (-x).exp_m1()).abs() <= 4e-16 * x);
        // Small-F expansion: G ≈ βγF/α.
        let p = gp(2.0, 3.0, 0.5, exp1());
        let g = p.cdf(1e-13);
        assert!((g - 0.75e-13).abs() <= 1e-6 * g);
        assert!(p.ln_cdf(1e-13).is_finite());
    }

    #[test]
    fn pdf_is_derivative_of_cdf() {
        for base in all_baselines() {
            let p = gp(2.7, 0.6, 1.8, base);
            for u in [0.05, 0.2, 0.5, 0.8, 0.95] {
                let x = p.quantile(u).unwrap();
                let h = 1e-5 * x;
                let num = (p.cdf(x + h) - p.cdf(x - h)) / (2.0 * h);
                let g = p.pdf(x);
                assert!((num - g).abs() <= 1e-6 * g, "{base:?} u={u}");
            }
        }
    }

    #[test]
    fn monotone_cdf_and_sf() {
        for base in all_baselines() {
            let p = gp(0.2, 3.0, 0.5, base);
            let hi = p.quantile(0.999).unwrap();
            let mut prev = (0.0, 1.0);
            for i in 1..=500 {
                let x = hi * i as f64 / 500.0;
                let (c, s) = (p.cdf(x), p.sf(x));
                assert!(c >= prev.0 && s <= prev.1);
                prev = (c, s);
            }
        }
    }

    #[test]
    fn densities_integrate_to_one() {
        let q = Quadrature::<f64>::default();
        for base in all_baselines() {
            for &(a, b, g) in &[(0.2, 0.3, 5.0), (5.0, 4.0, 0.25), (1.5, 1.0, 1.0)] {
                let p = gp(a, b, g, base);
                let m = p.quantile(0.5).unwrap();
                let r = q.integrate_half_line(|x| p.pdf(x), m, m).unwrap();
                assert!((r.value - 1.0).abs() < 1e-8, "{base:?} {a} {b} {g}: {}", r.value);
            }
        }
    }

    #[test]
    fn quantile_examples() {
        let p = GemoParams::identity(exp1()).unwrap();
        assert!((p.quantile(0.5).unwrap() - 2.0_f64.ln()).abs() < 1e-15);
        assert!(p.quantile(0.0).is_err());
        assert!(p.quantile(1.0).is_err());
        // Extreme shapes on both sides of the radius.
        let p = gp(40.0, 0.05, 9.0, Baseline::weibull(0.6, 14.0).unwrap());
        for u in [1e-9, 1e-4, 0.3, 0.999_999] {
            let x = p.quantile(u).unwrap();
            assert!((p.cdf(x) - u).abs() <= 1e-9 * u.max(1e-3));
        }
    }

    #[test]
    fn sampling_contract() {
        let p = GemoParams::identity(exp1()).unwrap();
        assert!(p.sample(0, 1).is_err());
        let one = p.sample(1, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert!(one[0] > 0.0);
        assert_eq!(p.sample(50, 7).unwrap(), p.sample(50, 7).unwrap());
        assert_ne!(p.sample(50, 7).unwrap(), p.sample(50, 8).unwrap());
        let xs = p.sample(200_000, 11).unwrap();
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        // 5 standard errors of the mean of Exp(1).
        assert!((mean - 1.0).abs() < 5.0 / (xs.len() as f64).sqrt());
    }

    #[test]
    fn series_weight_examples() {
        let p = gp(1.0, 2.7, 1.3, exp1());
        let w = p.series_weights(1e-12).unwrap();
        assert_eq!(w.weights, vec![1.0]);
        let p = gp(0.5, 1.0, 1.0, exp1());
        let w = p.series_weights(1e-12).unwrap();
        for (j, want) in [1.0, 1.0, 0.75, 0.5, 0.3125].iter().enumerate() {
            assert!((w.weights[j] - want).abs() < 1e-15);
        }
        // α > 1 alternates in sign.
        let p = gp(1.5, 1.0, 1.0, exp1());
        let w = p.series_weights(1e-12).unwrap();
        assert!((w.weights[1] + 1.0).abs() < 1e-15);
        assert!((w.weights[2] - 0.75).abs() < 1e-15);
        assert!(gp(2.0, 1.0, 1.0, exp1()).series_weights(1e-12).is_err());
        assert!(gp(0.0001, 1.0, 1.0, exp1()).series_weights(1e-12).is_ok());
    }

    #[test]
    fn series_weights_match_gamma_function_form() {
        use crate::special::ln_gamma;
        let p = gp(0.35, 2.4, 1.0, exp1());
        let w = p.series_weights(1e-14).unwrap();
        for j in 0..40 {
            let jf = j as f64;
            let ln_c = ln_gamma(2.4 + jf + 1.0) - ln_gamma(3.4) - ln_gamma(jf + 1.0);
            let want = ln_c.exp() * 0.65_f64.powi(j);
            assert!((w.weights[j as usize] - want).abs() <= 1e-12 * want);
        }
    }

    #[test]
    fn series_matches_closed_form() {
        for base in all_baselines() {
            for &(a, b, g) in &[(0.5, 1.0, 1.0), (0.1, 2.5, 0.7), (1.9, 0.4, 3.0)] {
                let p = gp(a, b, g, base);
                let w = p.series_weights(1e-13).unwrap();
                for u in [0.01, 0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
                    let x = p.quantile(u).unwrap();
                    assert!((p.series_pdf(&w, x) - p.pdf(x)).abs() < 1e-8);
                }
            }
        }
    }

    #[test]
    fn serde_roundtrip_validates() {
        let p = gp(2.0, 0.5, 1.5, Baseline::weibull(1.2, 3.0).unwrap());
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"{"alpha":2.0,"beta":0.5,"gamma":1.5,"baseline":{"kind":"weibull","params":[1.2,3.0]}}"#
        );
        assert_eq!(serde_json::from_str::<GemoParams<f64>>(&json).unwrap(), p);
        let bad = json.replace("\"alpha\":2.0", "\"alpha\":-2.0");
        assert!(serde_json::from_str::<GemoParams<f64>>(&bad).is_err());
    }

    #[test]
    fn vector_roundtrip() {
        let p = gp(2.0, 0.5, 1.5, Baseline::log_normal(-0.4, 0.8).unwrap());
        let v = p.to_vector();
        assert_eq!(v, vec![2.0, 0.5, 1.5, -0.4, 0.8]);
        assert_eq!(GemoParams::from_vector(BaselineKind::LogNormal, &v).unwrap(), p);
        assert_eq!(p.param_names(), ["alpha", "beta", "gamma", "mu", "sigma"]);
        assert!(GemoParams::from_vector(BaselineKind::Exponential, &v).is_err());
    }

    #[test]
    fn single_precision_tracks_double() {
        let p64 = gp(2.5, 0.7, 1.4, Baseline::weibull(1.3, 2.0).unwrap());
        let p32 = GemoParams::<f32>::new(2.5, 0.7, 1.4, Baseline::weibull(1.3, 2.0).unwrap())
            .unwrap();
        for x in [0.1_f32, 0.5, 1.0, 2.0, 4.0] {
            assert!((p32.cdf(x) as f64 - p64.cdf(x as f64)).abs() < 1e-5);
            let q = p32.quantile(0.4).unwrap() as f64;
            assert!((q - p64.quantile(0.4).unwrap()).abs() < 1e-4 * q);
        }
    }

    fn arb_params() -> impl Strategy<Value = GemoParams<f64>> {
        (0.2f64..5.0, 0.2f64..5.0, 0.2f64..5.0, 0usize..5, 0.5f64..3.0, 0.5f64..3.0).prop_map(
            |(a, b, g, k, p1, p2)| {
                let kind = BaselineKind::ALL[k];
                let base = match kind {
                    BaselineKind::Exponential => Baseline::new(kind, &[p1]),
                    BaselineKind::LogNormal => Baseline::new(kind, &[p1 - 1.5, p2 * 0.5]),
                    _ => Baseline::new(kind, &[p1, p2]),
                }
                .unwrap();
                GemoParams::new(a, b, g, base).unwrap()
            },
        )
    }

    proptest! {
        #[test]
        fn quantile_roundtrip(p in arb_params(), u in 1e-6f64..0.999_999) {
            let x = p.quantile(u).unwrap();
            prop_assert!((p.cdf(x) - u).abs() <= 1e-9, "u={} x={} cdf={}", u, x, p.cdf(x));
        }

        #[test]
        fn hazard_nonnegative(p in arb_params(), u in 1e-6f64..0.999_999) {
            let x = p.quantile(u).unwrap();
            prop_assert!(p.hrf(x) >= 0.0);
        }
    }
}
