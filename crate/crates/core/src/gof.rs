//! Model selection and goodness-of-fit statistics: AIC, plug-in
//! Kolmogorov-Smirnov and Anderson-Darling, and the scaled TTT transform.

use serde::{Deserialize, Serialize};

use crate::data::Dataset;
use crate::gemo::GemoParams;
use crate::inference::{log_likelihood, FitResult};
use crate::scalar::Scalar;

/// Probabilities are kept at least this far from 0 and 1 before taking logs
/// in the Anderson-Darling sum.
pub const AD_CLAMP: f64 = 1e-15;

/// `2k − 2ℓ`, with `k` the number of estimated parameters.
pub fn aic<T: Scalar>(loglik: T, k: usize) -> T {
    T::lit(2.0) * T::from_count(k) - T::lit(2.0) * loglik
}

/// Kolmogorov-Smirnov distance between the empirical cdf of `u` and the
/// uniform cdf on `[0, 1]`. `u` need not be sorted.
pub fn ks_from_probabilities<T: Scalar>(u: &[T]) -> T {
    let mut u = u.to_vec();
    u.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ks_sorted(&u)
}

fn ks_sorted<T: Scalar>(u: &[T]) -> T {
    let n = T::from_count(u.len());
    u.iter().enumerate().fold(T::zero(), |d, (i, &g)| {
        let above = T::from_count(i + 1) / n - g;
        let below = g - T::from_count(i) / n;
        d.max(above).max(below)
    })
}

/// Plug-in KS statistic of `data` against the cdf of `p`.
pub fn ks_statistic<T: Scalar>(p: &GemoParams<T>, data: &Dataset<T>) -> T {
    let u: Vec<T> = data.sorted().iter().map(|&x| p.cdf(x)).collect();
    ks_sorted(&u)
}

/// Anderson-Darling `A²` together with how many logarithms needed clamping.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AndersonDarling<T> {
    pub statistic: T,
    pub clamped: usize,
}

fn ad_from_logs<T: Scalar>(ln_cdf: &[T], ln_sf: &[T], clamped: usize) -> AndersonDarling<T> {
    let n = ln_cdf.len();
    let sum = (0..n).fold(T::zero(), |s, i| {
        let w = T::from_count(2 * i + 1);
        s + w * (ln_cdf[i] + ln_sf[n - 1 - i])
    });
    let nt = T::from_count(n);
    AndersonDarling {
        statistic: -nt - sum / nt,
        clamped,
    }
}

fn clamp_ln<T: Scalar>(ln_v: T, clamped: &mut usize) -> T {
    let floor = T::lit(AD_CLAMP).ln();
    if ln_v < floor || ln_v.is_nan() {
        *clamped += 1;
        floor
    } else {
        ln_v
    }
}

/// `A²` for probabilities `u` tested against the uniform distribution.
pub fn ad_from_probabilities<T: Scalar>(u: &[T]) -> AndersonDarling<T> {
    let mut u = u.to_vec();
    u.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut clamped = 0;
    let lc: Vec<T> = u.iter().map(|&g| clamp_ln(g.ln(), &mut clamped)).collect();
    let ls: Vec<T> = u.iter().map(|&g| clamp_ln((-g).ln_1p(), &mut clamped)).collect();
    ad_from_logs(&lc, &ls, clamped)
}

/// Plug-in `A²` of `data` against `p`. Logs of `G` and `1 − G` come from the
/// model's log-cdf and log-survival directly, so only genuinely extreme
/// probabilities are clamped.
pub fn anderson_darling<T: Scalar>(p: &GemoParams<T>, data: &Dataset<T>) -> AndersonDarling<T> {
    let mut clamped = 0;
    let xs = data.sorted();
    let lc: Vec<T> = xs.iter().map(|&x| clamp_ln(p.ln_cdf(x), &mut clamped)).collect();
    let ls: Vec<T> = xs.iter().map(|&x| clamp_ln(p.ln_sf(x), &mut clamped)).collect();
    ad_from_logs(&lc, &ls, clamped)
}

/// `A²` value only; see [`anderson_darling`].
pub fn ad_statistic<T: Scalar>(p: &GemoParams<T>, data: &Dataset<T>) -> T {
    anderson_darling(p, data).statistic
}

/// Scaled total time on test: `(i/n, T_i)` for `i = 0..=n`, where
/// `T_i = [Σ_{j≤i} x_(j) + (n−i)x_(i)] / Σ x`. Starts at `(0, 0)` and ends
/// at `(1, 1)`.
pub fn ttt_transform<T: Scalar>(data: &Dataset<T>) -> Vec<(T, T)> {
    let xs = data.sorted();
    let n = xs.len();
    let nt = T::from_count(n);
    let total = xs.iter().fold(T::zero(), |s, &x| s + x);
    let mut out = Vec::with_capacity(n + 1);
    out.push((T::zero(), T::zero()));
    let mut partial = T::zero();
    for (idx, &x) in xs.iter().enumerate() {
        let i = idx + 1;
        partial = partial + x;
        let t = if i == n {
            T::one()
        } else {
            (partial + T::from_count(n - i) * x) / total
        };
        out.push((T::from_count(i) / nt, t));
    }
    out
}

/// One model's row of a comparison table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GofReport {
    pub model_name: String,
    pub k: usize,
    pub loglik: f64,
    pub aic: f64,
    pub ks: f64,
    pub ad: f64,
    /// Logs clamped while computing `ad`.
    pub ad_clamped: usize,
}

impl GofReport {
    /// Evaluates every statistic at `p` with `k` estimated parameters.
    pub fn evaluate<T: Scalar>(
        model_name: impl Into<String>,
        p: &GemoParams<T>,
        k: usize,
        data: &Dataset<T>,
    ) -> Self {
        let loglik = log_likelihood(p, data).as_f64();
        let ad = anderson_darling(p, data);
        GofReport {
            model_name: model_name.into(),
            k,
            loglik,
            aic: aic(loglik, k),
            ks: ks_statistic(p, data).as_f64(),
            ad: ad.statistic.as_f64(),
            ad_clamped: ad.clamped,
        }
    }

    /// Report for a fitted model. `loglik` is taken from the fit.
    pub fn from_fit(model_name: impl Into<String>, fit: &FitResult, data: &Dataset<f64>) -> Self {
        let mut r = Self::evaluate(model_name, &fit.params, fit.k(), data);
        r.loglik = fit.loglik;
        r.aic = aic(fit.loglik, r.k);
        r
    }
}

/// How a printed AIC compares with `2k − 2ℓ` recomputed from its own row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AicVerdict {
    /// Agrees up to rounding of four-decimal figures.
    Consistent,
    /// Off by less than [`AIC_INCONSISTENT`].
    Minor,
    Inconsistent,
}

/// Largest difference explained by rounding `ℓ` and AIC to four decimals.
pub const AIC_ROUNDING: f64 = 2e-4;
/// Differences at or above this are flagged as inconsistent.
pub const AIC_INCONSISTENT: f64 = 0.01;

/// A reported `(ℓ, k, AIC)` triple.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportedAic {
    pub label: String,
    pub k: usize,
    pub loglik: f64,
    pub aic: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AicAuditRow {
    pub label: String,
    pub k: usize,
    pub loglik: f64,
    pub printed: f64,
    pub computed: f64,
    /// `computed − printed`
    pub difference: f64,
    pub verdict: AicVerdict,
}

/// Recomputes each reported AIC from its own `ℓ` and `k`.
pub fn audit_aic(rows: &[ReportedAic]) -> Vec<AicAuditRow> {
    rows.iter()
        .map(|r| {
            let computed = aic(r.loglik, r.k);
            let difference = computed - r.aic;
            let verdict = if difference.abs() <= AIC_ROUNDING {
                AicVerdict::Consistent
            } else if difference.abs() < AIC_INCONSISTENT {
                AicVerdict::Minor
            } else {
                AicVerdict::Inconsistent
            };
            AicAuditRow {
                label: r.label.clone(),
                k: r.k,
                loglik: r.loglik,
                printed: r.aic,
                computed,
                difference,
                verdict,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::baselines::Baseline;
    use proptest::prelude::*;

    fn ds(v: &[f64]) -> Dataset<f64> {
        Dataset::new("t", v.to_vec()).unwrap()
    }

    #[test]
    fn aic_examples() {
        assert_eq!(aic(-414.0869_f64, 2), 832.1738);
        assert_eq!(aic(-414.3419_f64, 1), 830.6838);
        assert_eq!(aic(0.0_f64, 1), 2.0);
    }

    #[test]
    fn ks_by_hand() {
        // Uniform(0,1) via exponential rate 1 is awkward; use probabilities directly.
        let d = ks_from_probabilities(&[0.1_f64, 0.5, 0.8]);
        // i/n − u: 0.2333, 0.1667, 0.2; u − (i−1)/n: 0.1, 0.1667, 0.1333
        assert!((d - (1.0 / 3.0 - 0.1)).abs() < 1e-15);
        assert_eq!(ks_from_probabilities(&[0.5_f64]), 0.5);
    }

    #[test]
    fn ad_by_hand() {
        let u = [0.2_f64, 0.6];
        let want = -2.0
            - 0.5 * ((0.2_f64.ln() + 0.4_f64.ln()) + 3.0 * (0.6_f64.ln() + 0.8_f64.ln()));
        let got = ad_from_probabilities(&u);
        assert!((got.statistic - want).abs() < 1e-14);
        assert_eq!(got.clamped, 0);
    }

    #[test]
    fn ad_clamps_extremes() {
        let got = ad_from_probabilities(&[0.0_f64, 0.5, 1.0]);
        assert!(got.statistic.is_finite());
        assert_eq!(got.clamped, 2);
    }

    #[test]
    fn ad_uniform_spacings_are_minimal() {
        for n in [3usize, 7, 20] {
            let u: Vec<f64> = (1..=n).map(|i| (i as f64 - 0.5) / n as f64).collect();
            let base = ad_from_probabilities(&u).statistic;
            // Direct evaluation without sorting: a swap changes the pairing.
            let direct = |v: &[f64]| {
                let lc: Vec<f64> = v.iter().map(|g| g.ln()).collect();
                let ls: Vec<f64> = v.iter().map(|g| (-g).ln_1p()).collect();
                ad_from_logs(&lc, &ls, 0).statistic
            };
            assert!((direct(&u) - base).abs() < 1e-14);
            for a in 0..n {
                for b in a + 1..n {
                    let mut w = u.clone();
                    w.swap(a, b);
                    assert!(direct(&w) > base, "n={n} swap {a},{b}");
                }
            }
            // Moving any point away from its spacing raises A² as well.
            for i in 0..n {
                let mut w = u.clone();
                w[i] += 0.1 / n as f64;
                assert!(ad_from_probabilities(&w).statistic > base);
            }
        }
    }

    #[test]
    fn ttt_examples() {
        let t = ttt_transform(&ds(&[3.0, 1.0, 2.0]));
        let want = [(0.0, 0.0), (1.0 / 3.0, 0.5), (2.0 / 3.0, 5.0 / 6.0), (1.0, 1.0)];
        assert_eq!(t.len(), 4);
        for (g, w) in t.iter().zip(want) {
            assert!((g.0 - w.0).abs() < 1e-15 && (g.1 - w.1).abs() < 1e-15);
        }
        let c = ttt_transform(&ds(&[4.2, 4.2, 4.2]));
        for &(_, v) in &c[1..] {
            assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn glass_ttt_is_concave() {
        let t = ttt_transform(&Dataset::<f64>::glass_fibers());
        assert!(t.iter().all(|&(u, v)| v >= u));
        assert_eq!(*t.last().unwrap(), (1.0, 1.0));
    }

    #[test]
    fn fixed_parameter_statistics() {
        let cancer = Dataset::<f64>::bladder_cancer();
        let w = GemoParams::identity(Baseline::weibull(1.0477, 9.5600).unwrap()).unwrap();
        assert!((ks_statistic(&w, &cancer) - 0.0700).abs() <= 0.003);
        assert!((ad_statistic(&w, &cancer) - 0.9578).abs() <= 0.05);
        let glass = Dataset::<f64>::glass_fibers();
        let e = GemoParams::identity(Baseline::exponential(0.6689).unwrap()).unwrap();
        assert!((ks_statistic(&e, &glass) - 0.4185).abs() <= 0.005);
        assert!((ad_statistic(&e, &glass) - 18.3791).abs() <= 0.2);
        let g = GemoParams::identity(Baseline::gamma(18.0670, 12.0849).unwrap()).unwrap();
        assert!((ad_statistic(&g, &glass) - 3.3871).abs() <= 0.1);
    }

    #[test]
    fn report_satisfies_aic_identity() {
        let cancer = Dataset::<f64>::bladder_cancer();
        let p = GemoParams::identity(Baseline::exponential(0.1068).unwrap()).unwrap();
        let r = GofReport::evaluate("exponential", &p, 1, &cancer);
        assert_eq!(r.aic, 2.0 * 1.0 - 2.0 * r.loglik);
        assert!((0.0..=1.0).contains(&r.ks) && r.ad >= 0.0);
    }

    #[test]
    fn audit_classifies() {
        let row = |label: &str, k, loglik, aic| ReportedAic {
            label: label.into(),
            k,
            loglik,
            aic,
        };
        let rows = audit_aic(&[
            row("a", 2, -414.0869, 832.1738),
            row("b", 5, -409.3703, 828.7479),
            row("c", 5, -6.2412, 20.4824),
        ]);
        assert_eq!(rows[0].verdict, AicVerdict::Consistent);
        assert_eq!(rows[1].verdict, AicVerdict::Minor);
        assert_eq!(rows[2].verdict, AicVerdict::Inconsistent);
        assert!((rows[2].computed - 22.4824).abs() < 1e-9);
    }

    fn params_strategy() -> impl Strategy<Value = GemoParams<f64>> {
        (0.2..5.0f64, 0.2..5.0f64, 0.2..5.0f64, 0.3..3.0f64, 0.3..3.0f64).prop_map(
            |(a, b, c, k, l)| GemoParams::new(a, b, c, Baseline::weibull(k, l).unwrap()).unwrap(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn statistics_invariant_under_pit(p in params_strategy(), seed in any::<u64>()) {
            let other = GemoParams::new(1.3, 0.7, 1.1, Baseline::weibull(1.2, 1.0).unwrap()).unwrap();
            let data = Dataset::new("s", other.sample(50, seed).unwrap()).unwrap();
            let u: Vec<f64> = data.values().iter().map(|&x| p.cdf(x)).collect();
            prop_assert!((ks_from_probabilities(&u) - ks_statistic(&p, &data)).abs() <= 1e-12);
            let a = ad_from_probabilities(&u);
            let b = anderson_darling(&p, &data);
            // Near 1, `ln(1 − u)` from a rounded `u` loses digits the model's log-survival keeps.
            let interior = u.iter().all(|&g| g > 1e-6 && g < 1.0 - 1e-6);
            if interior && a.clamped == 0 && b.clamped == 0 {
                prop_assert!((a.statistic - b.statistic).abs() <= 1e-9 * b.statistic.abs().max(1.0));
            }
            let ks = ks_statistic(&p, &data);
            prop_assert!((0.0..=1.0).contains(&ks));
        }

        #[test]
        fn ttt_scale_invariant(
            v in prop::collection::vec(0.01..100.0f64, 2..40),
            e in -20i32..20,
            c in 0.001..1000.0f64,
        ) {
            let d = Dataset::new("t", v).unwrap();
            let base = ttt_transform(&d);
            // Power-of-two factors scale every partial sum exactly.
            let exact = ttt_transform(&d.scaled(2f64.powi(e)).unwrap());
            prop_assert_eq!(&base, &exact);
            let general = ttt_transform(&d.scaled(c).unwrap());
            for (g, b) in general.iter().zip(&base) {
                prop_assert_eq!(g.0, b.0);
                prop_assert!((g.1 - b.1).abs() <= 1e-13);
            }
            for w in base.windows(2) {
                prop_assert!(w[1].1 >= w[0].1);
            }
        }
    }
}
