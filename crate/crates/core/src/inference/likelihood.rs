//! Log-likelihood, score and information for complete (uncensored) samples.

use nalgebra::DMatrix;

use crate::data::Dataset;
use crate::error::{Error, Result};
use crate::gemo::GemoParams;
use crate::scalar::Scalar;

/// `ℓ(θ) = Σ ln g(x_i)`. Returns `−∞` rather than failing when some
/// observation has zero density.
pub fn log_likelihood<T: Scalar>(p: &GemoParams<T>, data: &Dataset<T>) -> T {
    data.values()
        .iter()
        .fold(T::zero(), |acc, &x| acc + p.ln_pdf(x))
}

/// Per-observation quantities shared by the score and the Hessian block.
struct Terms<T> {
    ln_fbar: T,
    s: T,
    /// `1 − F̄^γ`
    one_minus_s: T,
    d: T,
    /// `ln(αF̄^γ/D)`
    ln_ratio: T,
}

fn terms<T: Scalar>(p: &GemoParams<T>, x: T) -> Terms<T> {
    let ln_fbar = p.baseline().ln_sf(x);
    let g_ln = p.gamma() * ln_fbar;
    let s = g_ln.exp();
    let one_minus_s = -g_ln.exp_m1();
    let d = one_minus_s + p.alpha() * s;
    let (ln_sf, _) = p.ln_sf_parts(ln_fbar);
    Terms {
        ln_fbar,
        s,
        one_minus_s,
        d,
        ln_ratio: ln_sf / p.beta(),
    }
}

/// Analytic `(∂ℓ/∂α, ∂ℓ/∂β, ∂ℓ/∂γ)`.
pub fn score_gemo<T: Scalar>(p: &GemoParams<T>, data: &Dataset<T>) -> [T; 3] {
    let g = log_likelihood_gradient(p, data).1;
    [g[0], g[1], g[2]]
}

/// `ℓ` together with its gradient in the order `[α, β, γ, ξ…]`.
pub fn log_likelihood_gradient<T: Scalar>(p: &GemoParams<T>, data: &Dataset<T>) -> (T, Vec<T>) {
    let one = T::one();
    let (a, b, c) = (p.alpha(), p.beta(), p.gamma());
    let k = p.baseline().param_count();
    let mut grad = vec![T::zero(); 3 + k];
    let mut ll = T::zero();
    for &x in data.values() {
        let ln_f = p.baseline().ln_pdf(x);
        let t = terms(p, x);
        ll = ll + p.ln_pdf_parts(ln_f, t.ln_fbar);
        // Rearranged so that no term grows with α or β only to cancel:
        // β/α − (β+1)F̄^γ/D = [β(1−F̄^γ) − αF̄^γ]/(αD) and (α−1)F̄^γ/D = 1 − 1/D.
        let e = (b + one) / t.d - one;
        grad[0] = grad[0] + (b * t.one_minus_s - a * t.s) / (a * t.d);
        grad[1] = grad[1] + b.recip() + t.ln_ratio;
        grad[2] = grad[2] + c.recip() + t.ln_fbar * e;
        let (dlf, dls) = p.baseline().ln_pdf_sf_gradient(x);
        let w = c * e - one;
        for j in 0..k {
            grad[3 + j] = grad[3 + j] + dlf[j] + w * dls[j];
        }
    }
    (ll, grad)
}

/// Analytic second derivatives of `ℓ` in `(α, β, γ)`, as a row-major 3×3
/// matrix. These are raw Hessian entries, not their negation.
pub fn gemo_hessian_block<T: Scalar>(p: &GemoParams<T>, data: &Dataset<T>) -> [[T; 3]; 3] {
    let one = T::one();
    let (a, b, c) = (p.alpha(), p.beta(), p.gamma());
    let n = T::from_count(data.len());
    let mut s_sd2 = T::zero();
    let mut s_sd = T::zero();
    let mut s_l = T::zero();
    let mut s_sdl = T::zero();
    let mut s_sd2l = T::zero();
    let mut s_sd2l2d = T::zero();
    for &x in data.values() {
        let t = terms(p, x);
        let sd = t.s / t.d;
        s_sd2 = s_sd2 + sd * sd;
        s_sd = s_sd + sd;
        s_l = s_l + t.ln_fbar;
        s_sdl = s_sdl + sd * t.ln_fbar;
        s_sd2l = s_sd2l + t.s * t.ln_fbar / (t.d * t.d);
        s_sd2l2d = s_sd2l2d + t.s * t.ln_fbar * t.ln_fbar / (t.d * t.d);
    }
    let h_aa = -n * b / (a * a) + (b + one) * s_sd2;
    let h_bb = -n / (b * b);
    let h_ab = n / a - s_sd;
    let h_cc = -n / (c * c) - (b + one) * (a - one) * s_sd2l2d;
    let h_ac = -(b + one) * s_sd2l;
    let h_bc = s_l - (a - one) * s_sdl;
    [[h_aa, h_ab, h_ac], [h_ab, h_bb, h_bc], [h_ac, h_bc, h_cc]]
}

/// Hessian of `ℓ` by central differences of the analytic gradient, with
/// step `h_r = ε^{1/3}·max(1, |θ_r|)`, symmetrized.
pub fn log_likelihood_hessian(p: &GemoParams<f64>, data: &Dataset<f64>) -> Result<DMatrix<f64>> {
    let theta = p.to_vector();
    let m = theta.len();
    let kind = p.kind();
    let mut h = DMatrix::<f64>::zeros(m, m);
    for r in 0..m {
        let step = f64::EPSILON.cbrt() * theta[r].abs().max(1.0);
        let shifted = |sign: f64| -> Result<Vec<f64>> {
            let mut v = theta.clone();
            v[r] += sign * step;
            let q = GemoParams::from_vector(kind, &v).map_err(|_| Error::NonFinite {
                context: "observed information (step leaves parameter space)",
                coordinate: r,
            })?;
            Ok(log_likelihood_gradient(&q, data).1)
        };
        let gp = shifted(1.0)?;
        let gm = shifted(-1.0)?;
        for c in 0..m {
            h[(c, r)] = (gp[c] - gm[c]) / (2.0 * step);
        }
    }
    let sym = (&h + h.transpose()) * 0.5;
    for r in 0..m {
        for c in 0..m {
            if !sym[(r, c)].is_finite() {
                return Err(Error::NonFinite {
                    context: "observed information",
                    coordinate: r,
                });
            }
        }
    }
    Ok(sym)
}

/// Observed information `−∇²ℓ` over all `3 + p` parameters.
pub fn observed_information(p: &GemoParams<f64>, data: &Dataset<f64>) -> Result<DMatrix<f64>> {
    Ok(-log_likelihood_hessian(p, data)?)
}
