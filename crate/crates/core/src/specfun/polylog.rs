//! Polylogarithm Li_s(e^{ik}) on the unit circle for real s > 1.
//!
//! A single expansion about e^0 = 1 covers the whole circle because
//! |ik| <= pi is inside its radius of convergence (2 pi):
//!
//! Li_s(e^mu) = Gamma(1-s) (-mu)^(s-1) + sum_m zeta(s-m) mu^m / m!
//!
//! At integer s the two singular pieces merge into a logarithm, and close to an
//! integer the value is interpolated in s from well-separated nodes.

use super::gamma::{factorial, gamma, harmonic};
use super::zeta::zeta_real;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Value of Li_s(e^{ik}) together with an estimate of its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylogValue<T> {
    pub real_part: T,
    pub imag_part: T,
    pub abs_err_estimate: T,
}

const MAX_TERMS: usize = 160;
const NEAR_INTEGER: f64 = 1e-3;
const NODE_SPACING: f64 = 2e-3;
const NODE_OFFSETS: [i32; 6] = [-3, -2, -1, 1, 2, 3];

#[derive(Debug, Clone)]
enum Form {
    /// Non-integer exponent: Gamma(1-s) prefactor of the branch term.
    Generic { branch_coef: f64 },
    /// Integer exponent n: coefficient of mu^(n-1) log term and its harmonic shift.
    Integer { n: usize, log_coef: f64, harmonic: f64 },
    /// Close to an integer: Lagrange interpolation through neighbouring kernels.
    Interpolated { nodes: Vec<(f64, PolylogKernel)>, s: f64 },
}

/// Precomputed expansion for one exponent; evaluate at many angles with [`PolylogKernel::eval`].
#[derive(Debug, Clone)]
pub struct PolylogKernel {
    s: f64,
    /// zeta(s-m)/m!, m = 0..len; the integer form stores 0 at m = n-1.
    coefs: Vec<f64>,
    form: Form,
}

impl PolylogKernel {
    pub fn new(s: f64) -> Result<Self> {
        if !(s > 1.0) || !s.is_finite() {
            return Err(Error::Domain(format!("polylog exponent must exceed 1, got {s}")));
        }
        let nearest = s.round();
        if s == nearest {
            return Ok(Self::integer(nearest as usize));
        }
        if (s - nearest).abs() < NEAR_INTEGER && nearest >= 2.0 {
            let mut nodes = vec![(nearest, Self::integer(nearest as usize))];
            for &j in &NODE_OFFSETS {
                let sj = nearest + f64::from(j) * NODE_SPACING;
                nodes.push((sj, Self::generic(sj)));
            }
            return Ok(Self { s, coefs: Vec::new(), form: Form::Interpolated { nodes, s } });
        }
        Ok(Self::generic(s))
    }

    pub fn exponent(&self) -> f64 {
        self.s
    }

    fn generic(s: f64) -> Self {
        let coefs = series_coefs(s, None);
        Self { s, coefs, form: Form::Generic { branch_coef: gamma(1.0 - s) } }
    }

    fn integer(n: usize) -> Self {
        let s = n as f64;
        let coefs = series_coefs(s, Some(n - 1));
        let log_coef = 1.0 / factorial::<f64>(n - 1);
        Self { s, coefs, form: Form::Integer { n, log_coef, harmonic: harmonic(n - 1) } }
    }

    /// Li_s(e^{ik}) for k in [-pi, pi].
    pub fn eval<T: Real>(&self, k: T) -> Result<PolylogValue<T>> {
        let k = k.to_f64_lossy();
        if !(k.abs() <= std::f64::consts::PI * (1.0 + 1e-12)) {
            return Err(Error::Domain(format!("angle {k} outside [-pi, pi]")));
        }
        let (re, im, err) = match &self.form {
            Form::Interpolated { nodes, s } => interpolate(nodes, *s, k)?,
            _ => self.eval_series(k)?,
        };
        Ok(PolylogValue { real_part: T::lit(re), imag_part: T::lit(im), abs_err_estimate: T::lit(err) })
    }

    fn eval_series(&self, k: f64) -> Result<(f64, f64, f64)> {
        let (mut re, mut im, err) = power_series(&self.coefs, k)?;
        let ak = k.abs();
        let sg = k.signum();
        match &self.form {
            Form::Generic { branch_coef } => {
                if ak > 0.0 {
                    // (-ik)^(s-1) = |k|^(s-1) exp(-i pi (s-1) sgn(k) / 2)
                    let mag = branch_coef * ak.powf(self.s - 1.0);
                    let ang = -std::f64::consts::FRAC_PI_2 * (self.s - 1.0) * sg;
                    re += mag * ang.cos();
                    im += mag * ang.sin();
                }
            }
            Form::Integer { n, log_coef, harmonic } => {
                if ak > 0.0 {
                    // mu^(n-1)/(n-1)! [H_{n-1} - ln(-mu)], mu = ik, ln(-ik) = ln|k| - i pi sgn(k)/2
                    let m = n - 1;
                    let (pr, pi_) = i_power(m);
                    let kp = ak.powi(m as i32) * if m % 2 == 1 { sg } else { 1.0 };
                    let (lr, li) = (harmonic - ak.ln(), std::f64::consts::FRAC_PI_2 * sg);
                    // (pr + i pi_) * kp * (lr + i li) * log_coef
                    re += log_coef * kp * (pr * lr - pi_ * li);
                    im += log_coef * kp * (pr * li + pi_ * lr);
                }
            }
            Form::Interpolated { .. } => unreachable!(),
        }
        Ok((re, im, err))
    }
}

/// i^m as (re, im).
fn i_power(m: usize) -> (f64, f64) {
    match m % 4 {
        0 => (1.0, 0.0),
        1 => (0.0, 1.0),
        2 => (-1.0, 0.0),
        _ => (0.0, -1.0),
    }
}

fn series_coefs(s: f64, skip: Option<usize>) -> Vec<f64> {
    let mut coefs = Vec::with_capacity(MAX_TERMS);
    let mut fact = 1.0_f64;
    for m in 0..MAX_TERMS {
        if m > 0 {
            fact *= m as f64;
        }
        let c = if Some(m) == skip { 0.0 } else { zeta_real(s - m as f64) / fact };
        coefs.push(c);
        // |zeta(s-m)| / m! ~ 2 (2 pi)^(s-1) m^-s (2 pi)^-m for large m; many
        // coefficients vanish exactly (trivial zeros), so test the envelope
        let envelope = 2.0 * std::f64::consts::TAU.powf(s - 1.0) * (m as f64).powf(-s) * 0.5f64.powi(m as i32);
        if m > 8 && envelope < 1e-19 {
            break;
        }
    }
    coefs
}

/// sum_m c_m (ik)^m, with a truncation/roundoff error estimate.
fn power_series(coefs: &[f64], k: f64) -> Result<(f64, f64, f64)> {
    let mut re = 0.0;
    let mut im = 0.0;
    let mut absum = 0.0;
    let mut kp = 1.0;
    let mut last = 0.0_f64;
    for (m, &c) in coefs.iter().enumerate() {
        let t = c * kp;
        let (pr, pi_) = i_power(m);
        re += pr * t;
        im += pi_ * t;
        absum += t.abs();
        last = t.abs();
        kp *= k;
    }
    if coefs.len() == MAX_TERMS && last > 1e-14 * absum.max(1.0) {
        return Err(Error::Convergence(format!("polylog series exhausted {MAX_TERMS} terms")));
    }
    Ok((re, im, last + 8.0 * f64::EPSILON * absum))
}

fn interpolate(nodes: &[(f64, PolylogKernel)], s: f64, k: f64) -> Result<(f64, f64, f64)> {
    let mut re = 0.0;
    let mut im = 0.0;
    let mut err = 0.0;
    let mut lebesgue = 0.0;
    for (i, (si, ker)) in nodes.iter().enumerate() {
        let mut w = 1.0;
        for (j, (sj, _)) in nodes.iter().enumerate() {
            if i != j {
                w *= (s - sj) / (si - sj);
            }
        }
        let (r, m, e) = ker.eval_series(k)?;
        re += w * r;
        im += w * m;
        err += w.abs() * e;
        lebesgue += w.abs();
    }
    // roundoff of the nodes is amplified by the Lebesgue sum; interpolation
    // error of a degree-6 polynomial on a 0.012-wide stencil is far below it
    let cancel = 1e-15 / NODE_SPACING * (re.abs() + im.abs()).max(1.0);
    Ok((re, im, err + lebesgue * cancel))
}

/// Convenience wrapper: Li_s(e^{ik}) for a single angle.
pub fn polylog_unit_circle<T: Real>(s: T, k: T) -> Result<PolylogValue<T>> {
    PolylogKernel::new(s.to_f64_lossy())?.eval(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn direct(s: f64, k: f64, terms: usize) -> (f64, f64) {
        // partial sum plus an Euler-Maclaurin style tail of e^{ikr} r^{-s}
        // summed pairwise in blocks of a full period is not needed: the tail is
        // bounded by the integral of r^{-s} and we keep enough terms.
        let mut re = 0.0;
        let mut im = 0.0;
        for r in (1..=terms).rev() {
            let rf = r as f64;
            let w = rf.powf(-s);
            re += w * (k * rf).cos();
            im += w * (k * rf).sin();
        }
        (re, im)
    }

    #[test]
    fn value_at_one_is_zeta() {
        let v = polylog_unit_circle(2.0_f64, 0.0).unwrap();
        assert!((v.real_part - PI * PI / 6.0).abs() < 1e-14);
        assert_eq!(v.imag_part, 0.0);
        let v = polylog_unit_circle(1.5_f64, 0.0).unwrap();
        assert!((v.real_part - 2.612_375_348_685_488).abs() < 1e-13);
    }

    #[test]
    fn value_at_minus_one() {
        let v = polylog_unit_circle(2.0_f64, PI).unwrap();
        assert!((v.real_part + PI * PI / 12.0).abs() < 1e-13);
        assert!(v.imag_part.abs() < 1e-13, "{:e}", v.imag_part);
        for &s in &[1.3_f64, 1.5, 1.8, 2.5, 3.0] {
            let v = polylog_unit_circle(s, PI).unwrap();
            let expect = -(1.0 - 2f64.powf(1.0 - s)) * zeta_real(s);
            assert!((v.real_part - expect).abs() < 1e-12, "s={s}");
        }
    }

    #[test]
    fn matches_long_partial_sum() {
        let s = 1.5;
        let k = 0.7;
        let m = 10_000_000usize;
        let (mut re, mut im) = direct(s, k, m);
        // tail sum_{r>M} e^{ikr} r^{-s} ~ e^{ik(M+1/2)} M^{-s} / (-2i sin(k/2)) to leading order
        let mf = m as f64 + 0.5;
        let amp = mf.powf(-s) / (2.0 * (k / 2.0).sin());
        let ph = k * mf;
        re += -amp * ph.sin();
        im += amp * ph.cos();
        let v = polylog_unit_circle(s, k).unwrap();
        assert!((v.real_part - re).abs() < 1e-9, "{} vs {re}", v.real_part);
        assert!((v.imag_part - im).abs() < 1e-9, "{} vs {im}", v.imag_part);
        assert!(v.abs_err_estimate < 1e-10);
    }

    #[test]
    fn dilog_closed_form_on_circle() {
        // Re Li_2(e^{ik}) = pi^2/6 - pi|k|/2 + k^2/4
        for &k in &[-3.0_f64, -1.0, -0.05, 1e-6, 0.3, 2.9] {
            let v = polylog_unit_circle(2.0, k).unwrap();
            let expect = PI * PI / 6.0 - PI * k.abs() / 2.0 + k * k / 4.0;
            assert!((v.real_part - expect).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn trilog_imaginary_closed_form() {
        // Im Li_3(e^{ik}) = (pi^2 k)/6 - pi k|k|/4 + k^3/12 for |k| <= pi (Clausen-type polynomial)
        for &k in &[-2.0_f64, 0.4, 1.7] {
            let v = polylog_unit_circle(3.0, k).unwrap();
            let expect = PI * PI * k / 6.0 - PI * k * k.abs() / 4.0 + k.powi(3) / 12.0;
            assert!((v.imag_part - expect).abs() < 1e-13, "k={k}");
        }
    }

    #[test]
    fn near_integer_is_continuous() {
        for &k in &[0.01_f64, 0.5, 3.0] {
            let at = polylog_unit_circle(2.0, k).unwrap();
            let below = polylog_unit_circle(2.0 - 1e-7, k).unwrap();
            let above = polylog_unit_circle(2.0 + 4e-4, k).unwrap();
            let far = polylog_unit_circle(2.0 + 4e-3, k).unwrap();
            assert!((at.real_part - below.real_part).abs() < 1e-6);
            // smooth in s: the jump across the interpolation boundary is tiny
            let slope1 = (above.real_part - at.real_part) / 4e-4;
            let slope2 = (far.real_part - at.real_part) / 4e-3;
            assert!((slope1 - slope2).abs() < 0.05 * slope2.abs().max(1.0), "k={k}");
            assert!(above.abs_err_estimate < 1e-10);
        }
    }

    #[test]
    fn rejects_bad_exponent() {
        assert!(PolylogKernel::new(1.0).is_err());
        assert!(PolylogKernel::new(0.5).is_err());
    }
}
