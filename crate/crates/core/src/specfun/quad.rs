//! Deterministic quadrature rules: adaptive 64-point Gauss-Legendre panels and
//! tanh-sinh for integrands with endpoint singularities.

use crate::error::{Error, Result};
use crate::scalar::Real;
use std::sync::OnceLock;

const GL_ORDER: usize = 64;

fn gauss_legendre_table() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = GL_ORDER;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0_f64, x);
                for j in 2..=n {
                    let jf = j as f64;
                    let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
        }
        out
    })
}

/// One fixed 64-point Gauss-Legendre panel on [a, b].
pub fn gauss_legendre_panel<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> T {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    gauss_legendre_table()
        .iter()
        .map(|&(x, w)| T::lit(w) * f(mid + half * T::lit(x)))
        .sum::<T>()
        * half
}

/// Adaptive Gauss-Legendre: starts from `panels` equal panels and bisects any
/// panel whose two-half estimate differs from the whole by more than `tol`
/// (scaled to the panel width).
pub fn adaptive_gauss_legendre<T: Real, F: Fn(T) -> T>(
    f: &F,
    a: T,
    b: T,
    panels: usize,
    tol: T,
) -> Result<T> {
    let panels = panels.max(1);
    let width = (b - a) / T::from_count(panels);
    let mut total = T::zero();
    let mut comp = T::zero();
    for p in 0..panels {
        let lo = a + width * T::from_count(p);
        let hi = if p + 1 == panels { b } else { lo + width };
        let v = refine(f, lo, hi, gauss_legendre_panel(f, lo, hi), tol / T::from_count(panels), 0)?;
        let y = v - comp;
        let t = total + y;
        comp = (t - total) - y;
        total = t;
    }
    Ok(total)
}

fn refine<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, whole: T, tol: T, depth: usize) -> Result<T> {
    let mid = (a + b) * T::lit(0.5);
    let left = gauss_legendre_panel(f, a, mid);
    let right = gauss_legendre_panel(f, mid, b);
    let split = left + right;
    let floor = T::epsilon() * T::lit(64.0) * split.abs();
    if (split - whole).abs() <= tol.max(floor) {
        return Ok(split);
    }
    if depth >= 40 {
        return Err(Error::Convergence("adaptive Gauss-Legendre exceeded depth 40".into()));
    }
    let half_tol = tol * T::lit(0.5);
    Ok(refine(f, a, mid, left, half_tol, depth + 1)? + refine(f, mid, b, right, half_tol, depth + 1)?)
}

/// Tanh-sinh (double exponential) quadrature on [a, b].
///
/// The integrand receives `(x, x - a, b - x)` so it can evaluate factors that
/// vanish at the endpoints without cancellation. Levels are refined until two
/// successive estimates agree to `tol`.
pub fn tanh_sinh<T: Real, F: Fn(T, T, T) -> T>(f: &F, a: T, b: T, tol: T) -> Result<T> {
    let half = (b - a) * T::lit(0.5);
    let pi2 = T::FRAC_PI_2();
    let tmax = T::lit(4.0);
    let eval = |t: T| -> T {
        // abscissa u = tanh(pi/2 sinh t), weight pi/2 cosh t / cosh^2(pi/2 sinh t)
        let sh = pi2 * t.sinh();
        let ch = sh.cosh();
        let w = pi2 * t.cosh() / (ch * ch);
        // 1 - u and 1 + u computed without cancellation
        let e = (-(sh.abs()) * T::lit(2.0)).exp();
        let one_minus_abs = T::lit(2.0) * e / (T::one() + e);
        let (da, db) = if t >= T::zero() {
            (half * (T::lit(2.0) - one_minus_abs), half * one_minus_abs)
        } else {
            (half * one_minus_abs, half * (T::lit(2.0) - one_minus_abs))
        };
        if da <= T::zero() || db <= T::zero() {
            return T::zero();
        }
        let x = if t >= T::zero() { b - db } else { a + da };
        let v = f(x, da, db) * w;
        if v.is_finite() {
            v
        } else {
            T::zero()
        }
    };
    let mut step = T::lit(0.5);
    let mut sum = eval(T::zero());
    let mut n = (tmax / step).to_usize().unwrap_or(8);
    for j in 1..=n {
        let t = step * T::from_count(j);
        sum += eval(t) + eval(-t);
    }
    let mut estimate = sum * step * half;
    for _level in 0..12 {
        step *= T::lit(0.5);
        n *= 2;
        let mut add = T::zero();
        for j in (1..=n).step_by(2) {
            let t = step * T::from_count(j);
            add += eval(t) + eval(-t);
        }
        sum += add;
        let next = sum * step * half;
        let floor = T::epsilon() * T::lit(256.0) * next.abs();
        if (next - estimate).abs() <= tol.max(floor) {
            return Ok(next);
        }
        estimate = next;
    }
    Err(Error::Convergence("tanh-sinh did not reach tolerance in 12 levels".into()))
}
