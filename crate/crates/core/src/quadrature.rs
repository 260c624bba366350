//! Globally adaptive Gauss-Kronrod (7/15) quadrature with interval
//! transformations for the half-line.
//!
//! Endpoint singularities at zero are removed by integrating in `ln x`, and
//! infinite upper limits are mapped onto `[0, 1)`. Nodes are never placed on
//! the interval ends, so integrands only need to be finite in the interior.

use crate::error::{Error, Result};
use crate::scalar::{lit, Scalar};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// Environment variable that overrides the default relative tolerance.
pub const TOLERANCE_ENV: &str = "GEMO_QUAD_TOL";

/// Tolerances and limits for adaptive integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature<T> {
    pub rel_tol: T,
    pub abs_tol: T,
    pub max_intervals: usize,
}

impl<T: Scalar> Default for Quadrature<T> {
    fn default() -> Self {
        // Single precision cannot reach 1e-10; settle for a few hundred ulps.
        Quadrature {
            rel_tol: lit::<T>(1e-10).max(T::epsilon() * lit(128.0)),
            abs_tol: lit(1e-12),
            max_intervals: 4000,
        }
    }
}

/// Result of an integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: T,
    pub intervals: usize,
}

#[derive(Clone, Copy)]
struct Segment<T> {
    a: T,
    b: T,
    value: T,
    error: T,
    splittable: bool,
}

fn kronrod<T: Scalar, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> (T, T) {
    let half: T = lit(0.5);
    let center = half * (a + b);
    let half_len = half * (b - a);
    let fc = f(center);
    let mut res_g = fc * lit(WG[3]);
    let mut res_k = fc * lit(WGK[7]);
    let mut res_abs = res_k.abs();
    let mut fv1 = [T::zero(); 7];
    let mut fv2 = [T::zero(); 7];
    for j in 0..7 {
        let dx = half_len * lit(XGK[j]);
        let f1 = f(center - dx);
        let f2 = f(center + dx);
        fv1[j] = f1;
        fv2[j] = f2;
        let w: T = lit(WGK[j]);
        res_k = res_k + w * (f1 + f2);
        res_abs = res_abs + w * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g = res_g + lit::<T>(WG[j / 2]) * (f1 + f2);
        }
    }
    let mean = res_k * half;
    let mut res_asc = lit::<T>(WGK[7]) * (fc - mean).abs();
    for j in 0..7 {
        res_asc = res_asc + lit::<T>(WGK[j]) * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half_len;
    let res_abs = res_abs * half_len.abs();
    let res_asc = res_asc * half_len.abs();
    let mut err = ((res_k - res_g) * half_len).abs();
    if res_asc != T::zero() && err != T::zero() {
        let scale = (lit::<T>(200.0) * err / res_asc).powf(lit(1.5));
        err = res_asc * scale.min(T::one());
    }
    let floor = lit::<T>(50.0) * T::epsilon() * res_abs;
    if res_abs > T::min_positive_value() / (lit::<T>(50.0) * T::epsilon()) {
        err = err.max(floor);
    }
    (value, err)
}

impl<T: Scalar> Quadrature<T> {
    pub fn new(rel_tol: T, abs_tol: T) -> Self {
        Quadrature {
            rel_tol,
            abs_tol,
            ..Default::default()
        }
    }

    /// Defaults, with the relative tolerance taken from `GEMO_QUAD_TOL` when set.
    pub fn from_env() -> Self {
        let mut q = Self::default();
        if let Some(tol) = std::env::var(TOLERANCE_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<f64>().ok())
            .filter(|v| *v > 0.0 && v.is_finite())
        {
            q.rel_tol = lit(tol);
        }
        q
    }

    /// `∫_a^b f(x) dx` over a finite interval.
    pub fn integrate<F: FnMut(T) -> T>(&self, mut f: F, a: T, b: T) -> Result<Estimate<T>> {
        if a == b {
            return Ok(Estimate {
                value: T::zero(),
                error: T::zero(),
                intervals: 0,
            });
        }
        let (v, e) = kronrod(&mut f, a, b);
        let mut segments = vec![Segment {
            a,
            b,
            value: v,
            error: e,
            splittable: true,
        }];
        loop {
            let total: T = segments.iter().fold(T::zero(), |s, g| s + g.value);
            let err: T = segments.iter().fold(T::zero(), |s, g| s + g.error);
            if !total.is_finite() || !err.is_finite() {
                return Err(self.failure(a, b, total, err, segments.len()));
            }
            if err <= self.abs_tol.max(self.rel_tol * total.abs()) {
                return Ok(Estimate {
                    value: total,
                    error: err,
                    intervals: segments.len(),
                });
            }
            let worst = segments
                .iter()
                .enumerate()
                .filter(|(_, g)| g.splittable)
                .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap())
                .map(|(i, _)| i);
            let Some(i) = worst else {
                return Err(self.failure(a, b, total, err, segments.len()));
            };
            if segments.len() >= self.max_intervals {
                return Err(self.failure(a, b, total, err, segments.len()));
            }
            let seg = segments[i];
            let mid = lit::<T>(0.5) * (seg.a + seg.b);
            let tiny = lit::<T>(100.0) * T::epsilon() * mid.abs().max(T::min_positive_value());
            if !(mid > seg.a.min(seg.b) && mid < seg.a.max(seg.b)) || (seg.b - seg.a).abs() < tiny
            {
                segments[i].splittable = false;
                continue;
            }
            let (v1, e1) = kronrod(&mut f, seg.a, mid);
            let (v2, e2) = kronrod(&mut f, mid, seg.b);
            segments[i] = Segment {
                a: seg.a,
                b: mid,
                value: v1,
                error: e1,
                splittable: true,
            };
            segments.push(Segment {
                a: mid,
                b: seg.b,
                value: v2,
                error: e2,
                splittable: true,
            });
        }
    }

    /// `∫_a^∞ f(x) dx` via `x = a + scale·(e^s − 1)`, `s = t/(1−t)`. Near `a`
    /// steps are about `scale` long; far out the map is logarithmic, so
    /// power-law tails decay exponentially in `s`.
    pub fn integrate_upper<F: FnMut(T) -> T>(
        &self,
        mut f: F,
        a: T,
        scale: T,
    ) -> Result<Estimate<T>> {
        let one = T::one();
        let est = self
            .integrate(
                |t: T| {
                    let u = one - t;
                    let s = t / u;
                    let x = a + scale * s.exp_m1();
                    if !x.is_finite() {
                        return T::zero();
                    }
                    let fx = f(x);
                    if fx == T::zero() {
                        T::zero()
                    } else {
                        fx * scale * s.exp() / (u * u)
                    }
                },
                T::zero(),
                one,
            )
            .map_err(|e| relabel(e, a, T::infinity()))?;
        // Beyond the overflow point the map contributes nothing; the
        // integrand per unit of `s` there bounds what was dropped.
        let x_cut = T::max_value() / lit(16.0);
        let dropped = if x_cut > a { f(x_cut).abs() * (x_cut - a + scale) } else { T::zero() };
        if !(dropped <= self.abs_tol.max(self.rel_tol * est.value.abs())) {
            return Err(self.failure(a, T::infinity(), est.value, dropped, est.intervals));
        }
        Ok(est)
    }

    /// `∫_0^b f(x) dx` integrated in `s = ln(b/x)`, which turns integrable
    /// power-law singularities at zero into exponential decay.
    pub fn integrate_from_zero<F: FnMut(T) -> T>(&self, mut f: F, b: T) -> Result<Estimate<T>> {
        let one = T::one();
        self.integrate(
            |t: T| {
                let u = one - t;
                let s = t / u;
                let x = b * (-s).exp();
                if x == T::zero() {
                    return T::zero();
                }
                let fx = f(x);
                if fx == T::zero() {
                    T::zero()
                } else {
                    fx * x / (u * u)
                }
            },
            T::zero(),
            one,
        )
        .map_err(|e| relabel(e, T::zero(), b))
    }

    /// `∫_0^∞ f(x) dx`, split at `split` (typically a median) into the two
    /// transformed pieces.
    pub fn integrate_half_line<F: FnMut(T) -> T>(
        &self,
        mut f: F,
        split: T,
        scale: T,
    ) -> Result<Estimate<T>> {
        let lower = self.integrate_from_zero(&mut f, split)?;
        let upper = self.integrate_upper(&mut f, split, scale)?;
        Ok(Estimate {
            value: lower.value + upper.value,
            error: lower.error + upper.error,
            intervals: lower.intervals + upper.intervals,
        })
    }

    fn failure(&self, a: T, b: T, value: T, error: T, intervals: usize) -> Error {
        Error::Quadrature {
            lower: a.as_f64(),
            upper: b.as_f64(),
            estimate: value.as_f64(),
            error: error.as_f64(),
            intervals,
        }
    }
}

fn relabel<T: Scalar>(e: Error, a: T, b: T) -> Error {
    match e {
        Error::Quadrature {
            estimate,
            error,
            intervals,
            ..
        } => Error::Quadrature {
            lower: a.as_f64(),
            upper: b.as_f64(),
            estimate,
            error,
            intervals,
        },
        other => other,
    }
}
