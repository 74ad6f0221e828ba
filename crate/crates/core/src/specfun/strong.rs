//! Discrete couplings of the strongly long-range chain (decay exponent below 1).
//!
//! With c = (1 - alpha) 2^(1 - alpha) and integer n,
//! t_n = c int_0^{1/2} cos(2 pi n s) s^-alpha ds and the pairing analogue with sin.
//! Both come from one complex integral that reduces to a lower incomplete gamma
//! function at imaginary argument; a continued fraction evaluates it in O(1)
//! per mode. The substituted Gauss-Legendre quadrature is kept as an
//! independent evaluation.

use super::gamma::gamma;
use super::quad::adaptive_gauss_legendre;
use crate::error::{Error, Result};
use crate::scalar::Real;
use num_complex::Complex;

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if !(alpha >= T::zero() && alpha < T::one()) {
        return Err(Error::Domain(format!("strong-range exponent must lie in [0,1), got {alpha}")));
    }
    Ok(())
}

/// (t_n, Delta_n) for the strong regime, via the incomplete gamma function.
pub fn strong_range_couplings<T: Real>(alpha: T, n: i64) -> Result<(T, T)> {
    check_alpha(alpha)?;
    if n == 0 {
        return Ok((T::one(), T::zero()));
    }
    let m = n.unsigned_abs();
    let sign = if n < 0 { -T::one() } else { T::one() };
    if alpha == T::zero() {
        let d = if m % 2 == 1 { T::lit(2.0) / (T::PI() * T::from_int(m as i64)) } else { T::zero() };
        return Ok((T::zero(), sign * d));
    }
    let (t, d) = positive_mode(alpha.to_f64_lossy(), m)?;
    Ok((T::lit(t), sign * T::lit(d)))
}

fn positive_mode(alpha: f64, m: u64) -> Result<(f64, f64)> {
    let a = 1.0 - alpha;
    let x = std::f64::consts::PI * m as f64;
    let parity = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    // i^a gamma(a, -ix) = e^{i pi a/2} Gamma(a) - (-1)^m x^a h, where
    // Gamma(a, -ix) = (-1)^m x^a e^{-i pi a/2} h and h is the continued fraction.
    let h = upper_gamma_fraction(a, Complex::new(0.0, -x))?;
    let lead = Complex::from_polar(gamma(a), std::f64::consts::FRAC_PI_2 * a);
    let val = lead - h * (parity * x.powf(a));
    let scale = (1.0 - alpha) * 2f64.powf(1.0 - alpha) * (std::f64::consts::TAU * m as f64).powf(alpha - 1.0);
    Ok((scale * val.re, scale * val.im))
}

/// Continued fraction h(a, z) with Gamma(a, z) = e^{-z} z^a h (modified Lentz).
fn upper_gamma_fraction(a: f64, z: Complex<f64>) -> Result<Complex<f64>> {
    let tiny = 1e-300;
    let mut b = z + 1.0 - a;
    let mut c = Complex::new(1.0 / tiny, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 1..10_000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = b + d * an;
        if d.norm() < tiny {
            d = Complex::new(tiny, 0.0);
        }
        c = b + c.inv() * an;
        if c.norm() < tiny {
            c = Complex::new(tiny, 0.0);
        }
        d = d.inv();
        let del = d * c;
        h *= del;
        if (del - 1.0).norm() < 1e-16 {
            return Ok(h);
        }
    }
    Err(Error::Convergence("incomplete gamma continued fraction".into()))
}

/// t_n = c_alpha int_0^{1/2} cos(2 pi n s) s^-alpha ds.
///
/// ```
/// let t = lrkitaev::specfun::strong_range_hopping_integral(0.0_f64, 0).unwrap();
/// assert!((t - 1.0).abs() < 1e-15);
/// ```
pub fn strong_range_hopping_integral<T: Real>(alpha: T, n: i64) -> Result<T> {
    Ok(strong_range_couplings(alpha, n)?.0)
}

/// Delta_n = c_alpha int_0^{1/2} sin(2 pi n s) s^-alpha ds.
pub fn strong_range_pairing_integral<T: Real>(alpha: T, n: i64) -> Result<T> {
    Ok(strong_range_couplings(alpha, n)?.1)
}

/// The same pair by direct quadrature after the substitution u = s^(1-alpha),
/// which turns the integrable endpoint singularity into a smooth integrand:
/// t_n + i Delta_n = 2^(1-alpha) int_0^{2^(alpha-1)} exp(2 pi i n u^(1/(1-alpha))) du.
pub fn strong_range_couplings_quadrature<T: Real>(alpha: T, n: i64, tol: T) -> Result<(T, T)> {
    check_alpha(alpha)?;
    let one = T::one();
    let p = one / (one - alpha);
    let upper = T::lit(0.5).powf(one - alpha);
    let freq = T::TAU() * T::from_int(n);
    let panels = 4 + 2 * n.unsigned_abs() as usize;
    let pref = T::lit(2.0).powf(one - alpha);
    let c = adaptive_gauss_legendre(&|u: T| (freq * u.powf(p)).cos(), T::zero(), upper, panels, tol)?;
    let s = adaptive_gauss_legendre(&|u: T| (freq * u.powf(p)).sin(), T::zero(), upper, panels, tol)?;
    Ok((pref * c, pref * s))
}
