//! Quasi-Newton minimization with a strong-Wolfe line search.
//!
//! Objectives may return non-finite values outside their domain; those are
//! treated as `+∞`, which makes the line search back off.

use nalgebra::{DMatrix, DVector};

/// Stopping rules.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BfgsOptions {
    /// Stop once `‖∇f‖_∞` falls to this value.
    pub grad_tol: f64,
    pub max_iter: usize,
    /// Largest allowed change of any coordinate in one step.
    pub max_step: f64,
}

impl Default for BfgsOptions {
    fn default() -> Self {
        BfgsOptions {
            grad_tol: 1e-8,
            max_iter: 500,
            max_step: 10.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BfgsReport {
    pub x: Vec<f64>,
    pub f: f64,
    pub grad: Vec<f64>,
    pub grad_norm: f64,
    pub iterations: usize,
    /// True when the gradient tolerance was met.
    pub converged: bool,
}

const C1: f64 = 1e-4;
const C2: f64 = 0.9;

fn sanitize(f: f64) -> f64 {
    if f.is_finite() {
        f
    } else {
        f64::INFINITY
    }
}

/// Near a minimum, function differences drown in rounding before the
/// gradient does; allow that much noise in the decrease tests.
fn rounding_slack(f: f64) -> f64 {
    8.0 * f64::EPSILON * f.abs().max(1.0)
}

fn inf_norm(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
}

struct Point {
    x: DVector<f64>,
    f: f64,
    g: DVector<f64>,
}

fn eval<F>(obj: &mut F, x: &DVector<f64>) -> Point
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let (f, g) = obj(x.as_slice());
    let f = sanitize(f);
    let g = DVector::from_vec(g);
    let f = if g.iter().all(|v| v.is_finite()) {
        f
    } else {
        f64::INFINITY
    };
    Point { x: x.clone(), f, g }
}

/// Minimizer of the cubic through `(a, fa, da)` and `(b, fb, db)`, if it lies
/// strictly inside the bracket.
fn cubic_min(a: f64, fa: f64, da: f64, b: f64, fb: f64, db: f64) -> Option<f64> {
    let d1 = da + db - 3.0 * (fa - fb) / (a - b);
    let disc = d1 * d1 - da * db;
    if !(disc >= 0.0) {
        return None;
    }
    let d2 = (b - a).signum() * disc.sqrt();
    let t = b - (b - a) * (db + d2 - d1) / (db - da + 2.0 * d2);
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    let margin = 0.05 * (hi - lo);
    (t.is_finite() && t > lo + margin && t < hi - margin).then_some(t)
}

/// Strong-Wolfe line search (bracketing followed by zoom).
fn line_search<F>(obj: &mut F, x0: &Point, dir: &DVector<f64>, step0: f64) -> Option<(f64, Point)>
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let d0 = x0.g.dot(dir);
    if !(d0 < 0.0) {
        return None;
    }
    let slack = rounding_slack(x0.f);
    let at = |obj: &mut F, a: f64| {
        let p = eval(obj, &(&x0.x + dir * a));
        let d = if p.f.is_finite() { p.g.dot(dir) } else { f64::NAN };
        (p, d)
    };
    let mut a_prev = 0.0;
    let mut f_prev = x0.f;
    let mut d_prev = d0;
    let mut a = step0;
    for i in 0..40 {
        let (p, d) = at(obj, a);
        if !p.f.is_finite() || p.f > x0.f + C1 * a * d0 + slack || (i > 0 && p.f > f_prev + slack)
        {
            return zoom(obj, x0, dir, d0, (a_prev, f_prev, d_prev), (a, p.f, d));
        }
        if d.abs() <= -C2 * d0 {
            return Some((a, p));
        }
        if d >= 0.0 {
            return zoom(obj, x0, dir, d0, (a, p.f, d), (a_prev, f_prev, d_prev));
        }
        a_prev = a;
        f_prev = p.f;
        d_prev = d;
        a *= 2.0;
    }
    None
}

fn zoom<F>(
    obj: &mut F,
    x0: &Point,
    dir: &DVector<f64>,
    d0: f64,
    mut lo: (f64, f64, f64),
    mut hi: (f64, f64, f64),
) -> Option<(f64, Point)>
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let slack = rounding_slack(x0.f);
    let mut best: Option<(f64, Point)> = None;
    for _ in 0..60 {
        let a = if hi.1.is_finite() && hi.2.is_finite() {
            cubic_min(lo.0, lo.1, lo.2, hi.0, hi.1, hi.2).unwrap_or(0.5 * (lo.0 + hi.0))
        } else {
            0.5 * (lo.0 + hi.0)
        };
        let p = eval(obj, &(&x0.x + dir * a));
        let d = if p.f.is_finite() { p.g.dot(dir) } else { f64::NAN };
        if !p.f.is_finite() || p.f > x0.f + C1 * a * d0 + slack || p.f > lo.1 + slack {
            hi = (a, p.f, d);
        } else {
            if d.abs() <= -C2 * d0 {
                return Some((a, p));
            }
            if d * (hi.0 - lo.0) >= 0.0 {
                hi = lo;
            }
            lo = (a, p.f, d);
            best = Some((a, p));
        }
        if (hi.0 - lo.0).abs() <= 1e-16 * lo.0.abs().max(1e-300) {
            break;
        }
    }
    // Accept a sufficient-decrease point even if curvature was not reached.
    best.filter(|(_, p)| p.f <= x0.f + slack)
}

/// Minimizes `obj`, which returns the value and gradient at a point.
pub fn minimize<F>(mut obj: F, x0: &[f64], opts: &BfgsOptions) -> BfgsReport
where
    F: FnMut(&[f64]) -> (f64, Vec<f64>),
{
    let n = x0.len();
    let mut cur = eval(&mut obj, &DVector::from_column_slice(x0));
    let mut h = DMatrix::<f64>::identity(n, n);
    let mut fresh = true;
    let mut iterations = 0;
    while iterations < opts.max_iter && cur.f.is_finite() {
        if inf_norm(&cur.g) <= opts.grad_tol {
            break;
        }
        let mut dir = -(&h * &cur.g);
        if !(dir.dot(&cur.g) < 0.0) {
            h = DMatrix::identity(n, n);
            fresh = true;
            dir = -cur.g.clone();
        }
        let longest = inf_norm(&dir);
        // Without curvature information, aim for a unit change in the largest coordinate.
        let step0 = if fresh { 1.0 / longest } else { 1.0 }.min(opts.max_step / longest);
        let found = line_search(&mut obj, &cur, &dir, step0);
        let Some((_, next)) = found else {
            if fresh {
                break;
            }
            h = DMatrix::identity(n, n);
            fresh = true;
            continue;
        };
        iterations += 1;
        let s = &next.x - &cur.x;
        let y = &next.g - &cur.g;
        let sy = s.dot(&y);
        if sy > 1e-12 * s.norm() * y.norm() {
            if fresh {
                h = DMatrix::identity(n, n) * (sy / y.dot(&y));
            }
            let rho = 1.0 / sy;
            let hy = &h * &y;
            let yhy = y.dot(&hy);
            h += (&s * s.transpose()) * (rho * rho * yhy + rho)
                - (&hy * s.transpose() + &s * hy.transpose()) * rho;
            fresh = false;
        }
        cur = next;
    }
    let grad_norm = inf_norm(&cur.g);
    BfgsReport {
        x: cur.x.as_slice().to_vec(),
        f: cur.f,
        grad: cur.g.as_slice().to_vec(),
        grad_norm,
        iterations,
        converged: cur.f.is_finite() && grad_norm <= opts.grad_tol,
    }
}
