//! Fisher-Hartwig coefficients of the logarithmic term.
//!
//! A jump of the symbol angle by `delta_phi`, with weight `a` and shift `b`,
//! contributes a coefficient that for integer orders is a finite sum over the
//! poles of the Renyi kernel, and for any order is an integral along the
//! branch cuts of the jump function inside [-1, 1].

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::quad::tanh_sinh;
use crate::specfun::{gamma, strong_range_couplings};
use num_complex::Complex;
use rayon::prelude::*;

/// Where a jump sits: a momentum on the circle or between mode `n` and `n + 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum JumpLocation<T> {
    Momentum(T),
    Mode(i64),
}

/// One discontinuity of the symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discontinuity<T> {
    pub location: JumpLocation<T>,
    pub a: T,
    pub b: T,
    /// Wrapped to (-pi, pi].
    pub delta_phi: T,
}

/// Maps an angle to (-pi, pi].
pub fn wrap_angle<T: Real>(x: T) -> T {
    let tau = T::TAU();
    let mut y = x - tau * (x / tau).round();
    if y <= -T::PI() {
        y += tau;
    } else if y > T::PI() {
        y -= tau;
    }
    y
}

impl<T: Real> Discontinuity<T> {
    pub fn new(location: JumpLocation<T>, a: T, b: T, delta_phi: T) -> Result<Self> {
        let tol = T::lit(1e-12);
        if !((b + a).abs() <= T::one() + tol && (b - a).abs() <= T::one() + tol) {
            return Err(Error::Domain(format!("symbol eigenvalues b +- a = {}, {} outside [-1,1]", b + a, b - a)));
        }
        if !delta_phi.is_finite() {
            return Err(Error::Domain("non-finite angle jump".into()));
        }
        Ok(Self { location, a, b, delta_phi: wrap_angle(delta_phi) })
    }

    /// A jump of the pure-state (vacuum) symbol, `a = 1`, `b = 0`.
    pub fn vacuum(location: JumpLocation<T>, delta_phi: T) -> Self {
        Self { location, a: T::one(), b: T::zero(), delta_phi: wrap_angle(delta_phi) }
    }

    fn is_trivial(&self) -> bool {
        self.a == T::zero() || self.delta_phi == T::zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FHMethod {
    ResidueSum,
    BranchCutNumeric,
    ClosedForm,
}

/// Coefficient of the logarithmic term, with its per-jump breakdown.
///
/// Jumps with `b = 0` always contribute positively; a shifted spectrum
/// (`b != 0`) can give small negative contributions at orders >= 3.
#[derive(Debug, Clone, PartialEq)]
pub struct FHCoefficient<T> {
    pub nu: T,
    pub total_b: T,
    pub per_jump: Vec<(JumpLocation<T>, T)>,
    pub method: FHMethod,
}

impl<T: Real> FHCoefficient<T> {
    fn from_jumps(nu: T, per_jump: Vec<(JumpLocation<T>, T)>, method: FHMethod) -> Self {
        let total_b = per_jump.iter().map(|&(_, v)| v).sum();
        Self { nu, total_b, per_jump, method }
    }
}

fn pole<T: Real>(l: u32, nu: u32) -> T {
    (T::PI() * T::from_count((2 * l - 1) as usize) / T::from_count((2 * nu) as usize)).tan()
}

/// `w sqrt(1 - m / w^2)` with the principal square root.
fn cut_root<T: Real>(w: Complex<T>, m: T) -> Complex<T> {
    w * (Complex::new(T::one(), T::zero()) - (w * w).inv() * m).sqrt()
}

/// Jump coefficient from the pole sum of the integer-order kernel.
///
/// ```
/// use lrkitaev::asymptotics::{jump_coefficient_residues, Discontinuity, JumpLocation};
/// let d = Discontinuity::vacuum(JumpLocation::Momentum(0.0), std::f64::consts::PI);
/// assert!((jump_coefficient_residues(&d, 2).unwrap() - 0.125).abs() < 1e-14);
/// ```
pub fn jump_coefficient_residues<T: Real>(d: &Discontinuity<T>, nu: u32) -> Result<T> {
    if nu < 2 {
        return Err(Error::Domain(format!("pole sum needs an integer order >= 2, got {nu}; use the branch-cut path")));
    }
    if d.is_trivial() {
        return Ok(T::zero());
    }
    let (s, c) = (d.delta_phi * T::lit(0.5)).sin_cos();
    let a2 = d.a * d.a;
    let mut acc = T::zero();
    for l in 1..=nu {
        if 2 * l == nu + 1 {
            continue;
        }
        let w = Complex::new(-d.b, pole::<T>(l, nu));
        let r = (cut_root(w, a2 * c * c) + d.a * s) / cut_root(w, a2);
        let lr = r.ln();
        acc += (lr * lr).re;
    }
    let b = -acc / (T::PI() * T::PI() * T::from_count((nu - 1) as usize));
    Ok(if b < T::zero() && b > -T::lit(1e-15) { T::zero() } else { b })
}

/// Derivative in `y` of the Renyi kernel `ln[((x0+y)/2)^nu + ((x0-y)/2)^nu] / (1-nu)`
/// (the binary entropy at nu = 1), given `p = (x0+y)/2`, `q = (x0-y)/2`.
fn kernel_slope<T: Real>(p: T, q: T, nu: T) -> T {
    let half = T::lit(0.5);
    if nu == T::one() {
        half * (q / p).ln()
    } else {
        let num = p.powf(nu - T::one()) - q.powf(nu - T::one());
        let den = p.powf(nu) + q.powf(nu);
        nu * half * num / den / (T::one() - nu)
    }
}

fn branch_cut_integral<T: Real>(d: &Discontinuity<T>, nu: T, eps: T, tol: T) -> Result<T> {
    let (s, c) = (d.delta_phi * T::lit(0.5)).sin_cos();
    let (a, beta) = (d.a, d.b);
    let inner = a * c.abs();
    let x0 = T::one() + eps;
    let half = T::lit(0.5);
    let mut total = T::zero();
    for side in [T::one(), -T::one()] {
        let (lo, hi) = if side > T::zero() { (beta + inner, beta + a) } else { (beta - a, beta - inner) };
        if hi <= lo {
            continue;
        }
        // distances to the inner (|w| = a|c|) and outer (|w| = a) cut ends
        let f = |_x: T, da: T, db: T| -> T {
            let (to_inner, to_outer) = if side > T::zero() { (da, db) } else { (db, da) };
            let abs_w = inner + to_inner;
            let num = side * (to_inner * (abs_w + inner)).sqrt() + a * s;
            let den = (to_outer * (a + abs_w)).sqrt();
            let p_val = num / den;
            let p = ((x0 + lo) + da) * half;
            let q = ((x0 - hi) + db) * half;
            let g = kernel_slope(p, q, nu);
            g * p_val.signum() * p_val.abs().ln()
        };
        total += tanh_sinh(&f, lo, hi, tol)?;
    }
    Ok(-total / (T::PI() * T::PI()))
}

/// Jump coefficient from the integral along the branch cuts, for any order `nu >= 1`.
///
/// The limit of the kernel argument `1 + eps` is taken at `eps = 0` directly.
/// A Richardson extrapolation over `eps` in {1e-3, 1e-4, 1e-5} is compared
/// against it whenever the integrand is regular at the ends of [-1, 1].
pub fn jump_coefficient_branch_cut<T: Real>(d: &Discontinuity<T>, nu: T) -> Result<T> {
    if !(nu >= T::one()) {
        return Err(Error::Domain(format!("Renyi order must be >= 1, got {nu}")));
    }
    if d.is_trivial() {
        return Ok(T::zero());
    }
    let tol = T::lit(1e-10).max(T::epsilon() * T::lit(64.0));
    let direct = branch_cut_integral(d, nu, T::zero(), tol)?;
    let reaches_edge = d.b.abs() + d.a >= T::one() - T::lit(1e-12);
    if nu > T::one() || !reaches_edge {
        let at = |e: f64| branch_cut_integral(d, nu, T::lit(e), tol);
        let (i3, i4, i5) = (at(1e-3)?, at(1e-4)?, at(1e-5)?);
        let ten = T::lit(10.0);
        let r1 = (ten * i4 - i3) / T::lit(9.0);
        let r2 = (ten * i5 - i4) / T::lit(9.0);
        let extrapolated = (T::lit(100.0) * r2 - r1) / T::lit(99.0);
        let limit = T::lit(1e-6).max(T::epsilon().sqrt());
        if (extrapolated - direct).abs() > limit {
            return Err(Error::Convergence(format!(
                "epsilon extrapolation {extrapolated} disagrees with the direct limit {direct}"
            )));
        }
    }
    Ok(if direct < T::zero() && direct > -T::lit(1e-15) { T::zero() } else { direct })
}

/// Jump coefficient of a single vacuum jump: pole sum for integer orders >= 2,
/// branch-cut integral at order 1.
fn vacuum_jump<T: Real>(location: JumpLocation<T>, delta_phi: T, nu: u32) -> Result<T> {
    let d = Discontinuity::vacuum(location, delta_phi);
    if nu >= 2 {
        jump_coefficient_residues(&d, nu)
    } else {
        jump_coefficient_branch_cut(&d, T::one())
    }
}

fn method_for(nu: u32) -> FHMethod {
    if nu >= 2 {
        FHMethod::ResidueSum
    } else {
        FHMethod::BranchCutNumeric
    }
}

fn check_order(nu: u32) -> Result<()> {
    if nu == 0 {
        return Err(Error::Domain("Renyi order must be >= 1".into()));
    }
    Ok(())
}

/// Coefficient at the k = 0 critical point with equal exponents:
/// a single vacuum jump of `pi (1 - alpha)`.
pub fn equal_exponent_coefficient<T: Real>(nu: u32, alpha: T) -> Result<T> {
    check_order(nu)?;
    vacuum_jump(JumpLocation::Momentum(T::zero()), T::PI() * (T::one() - alpha), nu)
}

/// Weak-regime coefficient (both exponents in [1, 2]).
///
/// Gapped fields give 0. At `h = 1` the k = 0 jump is absent when the hopping
/// decays faster than the pairing, a full `pi` jump when slower, and
/// `pi (1 - alpha)` when equal. At `h = 2^(1 - alpha1) - 1` the k = pi point
/// always carries a `pi` jump.
#[allow(non_snake_case)]
pub fn weak_regime_B<T: Real>(nu: u32, alpha1: T, alpha2: T, h: T) -> Result<FHCoefficient<T>> {
    check_order(nu)?;
    let inside = |x: T| x >= T::one() && x <= T::lit(2.0);
    if !inside(alpha1) || !inside(alpha2) {
        return Err(Error::Domain(format!("weak regime needs exponents in [1,2], got {alpha1}, {alpha2}")));
    }
    let tol = T::lit(1e-12);
    let nu_t = T::from_count(nu as usize);
    let h_pi = T::lit(2.0).powf(T::one() - alpha1) - T::one();
    let zero = T::zero();
    if (h - T::one()).abs() <= tol {
        let jumps = if alpha1 < alpha2 {
            vec![(JumpLocation::Momentum(zero), zero)]
        } else if alpha1 > alpha2 {
            vec![(JumpLocation::Momentum(zero), vacuum_jump(JumpLocation::Momentum(zero), T::PI(), nu)?)]
        } else {
            vec![(JumpLocation::Momentum(zero), equal_exponent_coefficient(nu, alpha1)?)]
        };
        let method = if alpha1 == alpha2 { method_for(nu) } else { FHMethod::ClosedForm };
        return Ok(FHCoefficient::from_jumps(nu_t, jumps, method));
    }
    if (h - h_pi).abs() <= tol {
        let v = vacuum_jump(JumpLocation::Momentum(T::PI()), T::PI(), nu)?;
        return Ok(FHCoefficient::from_jumps(nu_t, vec![(JumpLocation::Momentum(T::PI()), v)], FHMethod::ClosedForm));
    }
    Ok(FHCoefficient::from_jumps(nu_t, Vec::new(), FHMethod::ClosedForm))
}

/// `6 nu B / (nu + 1)` for the equal-exponent critical coefficient.
pub fn effective_central_charge<T: Real>(nu: u32, alpha: T) -> Result<T> {
    let nu_t = T::from_count(nu as usize);
    Ok(T::lit(6.0) * nu_t * equal_exponent_coefficient(nu, alpha)? / (nu_t + T::one()))
}

/// Half energy and angle of the infinite strong-regime chain at mode n.
fn strong_mode<T: Real>(alpha1: T, alpha2: T, h: T, n: i64) -> Result<(T, T, T, T)> {
    let t = strong_range_couplings(alpha1, n)?.0;
    let d = strong_range_couplings(alpha2, n)?.1;
    let x = h - t;
    let eps = x.hypot(d);
    if eps <= T::zero_energy_floor() {
        return Err(Error::Critical(format!("mode {n} has zero energy at h = {h}")));
    }
    Ok((x, d, eps, -d.atan2(x)))
}

fn check_strong<T: Real>(alpha1: T, alpha2: T) -> Result<()> {
    let inside = |x: T| x >= T::zero() && x < T::one();
    if !inside(alpha1) || !inside(alpha2) {
        return Err(Error::Domain(format!("strong regime needs exponents in [0,1), got {alpha1}, {alpha2}")));
    }
    Ok(())
}

/// Sum of the vacuum jumps between consecutive modes of the infinite
/// strong-regime chain, `n = -N/2+1 .. N/2` (jump from n to n+1).
///
/// For `nu = 2` every term is also evaluated from the energies directly,
/// `(2/pi^2) arctan^2 sqrt((1 - cos d)/(3 + cos d))` with
/// `cos d = (x_n x_{n+1} + D_n D_{n+1}) / (e_n e_{n+1})`, and must agree to 1e-10.
#[allow(non_snake_case)]
pub fn strong_regime_B<T: Real>(nu: u32, alpha1: T, alpha2: T, h: T, n_sites: usize) -> Result<FHCoefficient<T>> {
    check_order(nu)?;
    check_strong(alpha1, alpha2)?;
    if n_sites < 2 || !n_sites.is_multiple_of(2) {
        return Err(Error::Domain(format!("number of sites must be even and >= 2, got {n_sites}")));
    }
    let half = (n_sites / 2) as i64;
    let modes: Vec<(T, T, T, T)> =
        ((1 - half)..=(half + 1)).into_par_iter().map(|n| strong_mode(alpha1, alpha2, h, n)).collect::<Result<_>>()?;
    let per_jump: Vec<(JumpLocation<T>, T)> = (0..n_sites)
        .into_par_iter()
        .map(|i| {
            let n = i as i64 + 1 - half;
            let (x0, d0, e0, p0) = modes[i];
            let (x1, d1, e1, p1) = modes[i + 1];
            let loc = JumpLocation::Mode(n);
            let v = vacuum_jump(loc, p1 - p0, nu)?;
            if nu == 2 {
                let cosd = ((x0 * x1 + d0 * d1) / (e0 * e1)).max(-T::one()).min(T::one());
                let r = ((T::one() - cosd) / (T::lit(3.0) + cosd)).sqrt().atan();
                let explicit = T::lit(2.0) * r * r / (T::PI() * T::PI());
                if (explicit - v).abs() > T::lit(1e-10).max(T::epsilon() * T::lit(1e3)) {
                    return Err(Error::Convergence(format!(
                        "jump {n}: pole sum {v} disagrees with explicit form {explicit}"
                    )));
                }
            }
            Ok((loc, v))
        })
        .collect::<Result<_>>()?;
    Ok(FHCoefficient::from_jumps(T::from_count(nu as usize), per_jump, method_for(nu)))
}

/// Two jumps adjacent to the zero mode only (`2 B^(0)`), with the zero-mode
/// angle fixed to `pi` below `h = 1` and `0` above.
pub fn single_discontinuity_approx<T: Real>(nu: u32, alpha: T, h: T) -> Result<T> {
    check_order(nu)?;
    check_strong(alpha, alpha)?;
    if h == T::one() {
        return Err(Error::Critical("zero mode is gapless at h = 1".into()));
    }
    let phi0 = if h < T::one() { T::PI() } else { T::zero() };
    let (_, _, _, phi1) = strong_mode(alpha, alpha, h, 1)?;
    Ok(T::lit(2.0) * vacuum_jump(JumpLocation::Mode(0), phi1 - phi0, nu)?)
}

/// Large-n expansion of the strong-regime couplings at the alternating modes.
///
/// The even- and odd-mode amplitudes behave as `(cos_amp, sin_amp) n^(alpha-1)`
/// plus `first_order` corrections, and the product of half energies as
/// `(sin_amp^2 + cos_amp^2) n^(2 alpha - 2) + inverse_square n^-2 + O(n^(2 alpha - 3))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlternatingExpansion<T> {
    pub sin_amp: T,
    pub cos_amp: T,
    pub first_order: T,
    pub inverse_square: T,
}

impl<T: Real> AlternatingExpansion<T> {
    pub fn new(alpha: T) -> Result<Self> {
        if !(alpha > T::zero() && alpha < T::one()) {
            return Err(Error::Domain(format!("exponent must lie in (0,1), got {alpha}")));
        }
        let scale = gamma(T::lit(2.0) - alpha) * T::TAU().powf(alpha - T::one());
        let (s, c) = (alpha * T::FRAC_PI_2()).sin_cos();
        let first_order = (T::one() - alpha) / T::TAU();
        Ok(Self {
            sin_amp: s * scale,
            cos_amp: c * scale,
            first_order,
            inverse_square: -first_order * first_order * (alpha * T::PI()).cos(),
        })
    }

    /// `e_{2n+1} e_{2n} - (s^2 + c^2) n^(2 alpha - 2) - inverse_square n^-2` at `h = 0`.
    pub fn product_residual(&self, alpha: T, n: i64) -> Result<T> {
        let half_energy = |m: i64| -> Result<T> {
            let (t, d) = strong_range_couplings(alpha, m)?;
            Ok(t.hypot(d))
        };
        let nt = T::from_int(n);
        let lead = (self.sin_amp * self.sin_amp + self.cos_amp * self.cos_amp) * nt.powf(T::lit(2.0) * alpha - T::lit(2.0));
        Ok(half_energy(2 * n + 1)? * half_energy(2 * n)? - lead - self.inverse_square / (nt * nt))
    }
}

/// Growth exponent of the h = 0 coefficient with subsystem size:
/// `1 - 2 alpha` below one half, 0 above.
pub fn h0_scaling_exponent<T: Real>(alpha: T) -> Result<T> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::Domain(format!("exponent must lie in (0,1), got {alpha}")));
    }
    let half = T::lit(0.5);
    if alpha == half {
        return Err(Error::Marginal("alpha = 1/2 separates the two growth laws".into()));
    }
    Ok(if alpha < half { T::one() - T::lit(2.0) * alpha } else { T::zero() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn vac(dphi: f64) -> Discontinuity<f64> {
        Discontinuity::vacuum(JumpLocation::Momentum(0.0), dphi)
    }

    fn arctan_form(dphi: f64, nu: u32) -> f64 {
        let (s, c) = (dphi / 2.0).sin_cos();
        let mut acc = 0.0;
        for l in 1..=nu {
            if 2 * l == nu + 1 {
                continue;
            }
            let z2 = pole::<f64>(l, nu).powi(2);
            acc += (s / (z2 + c * c).sqrt()).atan().powi(2);
        }
        acc / (PI * PI * (nu - 1) as f64)
    }

    #[test]
    fn residue_examples() {
        assert_eq!(jump_coefficient_residues(&vac(0.0), 2).unwrap(), 0.0);
        for nu in 2..6u32 {
            let want = (nu + 1) as f64 / (12.0 * nu as f64);
            assert!((jump_coefficient_residues(&vac(PI), nu).unwrap() - want).abs() < 1e-13);
        }
        let zero_weight = Discontinuity::new(JumpLocation::Mode(3), 0.0, 0.0, 1.0).unwrap();
        assert_eq!(jump_coefficient_residues(&zero_weight, 3).unwrap(), 0.0);
        assert!(jump_coefficient_residues(&vac(1.0), 1).is_err());
    }

    #[test]
    fn residues_reduce_to_arctan_form() {
        for nu in 2..7u32 {
            for j in 1..20 {
                let dphi = -PI + 2.0 * PI * j as f64 / 20.0;
                let r = jump_coefficient_residues(&vac(dphi), nu).unwrap();
                assert!((r - arctan_form(dphi, nu)).abs() < 1e-13);
                assert!((r - jump_coefficient_residues(&vac(-dphi), nu).unwrap()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn branch_cut_matches_residues() {
        let pairs = [(1.0, 0.0), (0.8, 0.1), (0.5, -0.3), (0.3, 0.6), (0.9, -0.05)];
        for &(a, b) in &pairs {
            for j in 0..5 {
                let dphi = 0.3 + (PI - 0.3) * j as f64 / 4.0;
                let d = Discontinuity::new(JumpLocation::Momentum(0.0), a, b, dphi).unwrap();
                for nu in [2u32, 3] {
                    let r = jump_coefficient_residues(&d, nu).unwrap();
                    let c = jump_coefficient_branch_cut(&d, nu as f64).unwrap();
                    assert!(r >= 0.0);
                    assert!((r - c).abs() < 1e-6, "a={a} b={b} dphi={dphi} nu={nu}: {r} vs {c}");
                }
            }
        }
    }

    #[test]
    fn von_neumann_pi_jump() {
        let v = jump_coefficient_branch_cut(&vac(PI), 1.0).unwrap();
        assert!((v - 1.0 / 6.0).abs() < 1e-8, "{v}");
        assert_eq!(jump_coefficient_branch_cut(&vac(0.0), 1.0).unwrap(), 0.0);
        let inside = Discontinuity::new(JumpLocation::Momentum(0.0), 0.6, 0.1, 2.0).unwrap();
        assert!(jump_coefficient_branch_cut(&inside, 1.0).unwrap() > 0.0);
    }

    #[test]
    fn weak_regime_table() {
        let b = |nu, a1, a2, h| weak_regime_B::<f64>(nu, a1, a2, h).unwrap().total_b;
        assert!(b(2, 1.0, 1.0, 1.0).abs() < 1e-15);
        assert!((b(2, 2.0, 2.0, 1.0) - 0.125).abs() < 1e-13);
        assert!((b(2, 1.5, 1.5, 1.0) - 1.0 / 18.0).abs() < 1e-13);
        assert_eq!(b(2, 1.3, 1.7, 1.0), 0.0);
        assert!((b(3, 1.7, 1.3, 1.0) - 4.0 / 36.0).abs() < 1e-13);
        assert!((b(2, 1.5, 1.2, 2f64.powf(-0.5) - 1.0) - 0.125).abs() < 1e-13);
        assert_eq!(b(2, 1.5, 1.5, 0.3), 0.0);
        assert!(weak_regime_B(2, 0.5, 1.5, 1.0).is_err());
        assert!((b(1, 1.5, 1.3, 2f64.powf(-0.5) - 1.0) - 1.0 / 6.0).abs() < 1e-8);
    }

    #[test]
    fn closed_forms_for_orders_two_and_three() {
        for j in 0..=20 {
            let alpha = 1.0 + j as f64 / 20.0;
            let (s, c) = (alpha * PI / 2.0).sin_cos();
            let b2 = 2.0 / (PI * PI) * (c / (s * s + 1.0).sqrt()).atan().powi(2);
            let b3 = 1.0 / (PI * PI) * (c / (s * s + 1.0 / 3.0).sqrt()).atan().powi(2);
            assert!((equal_exponent_coefficient(2, alpha).unwrap() - b2).abs() < 1e-12);
            assert!((equal_exponent_coefficient(3, alpha).unwrap() - b3).abs() < 1e-12);
        }
    }

    #[test]
    fn effective_central_charge_values() {
        assert!(effective_central_charge(2, 1.0_f64).unwrap().abs() < 1e-14);
        assert!((effective_central_charge(2, 2.0_f64).unwrap() - 0.5).abs() < 1e-13);
        assert!((effective_central_charge(1, 2.0_f64).unwrap() - 0.5).abs() < 1e-7);
        let c2 = effective_central_charge(2, 1.5_f64).unwrap();
        let c3 = effective_central_charge(3, 1.5_f64).unwrap();
        assert!((c2 - c3).abs() > 1e-3);
    }

    #[test]
    fn strong_regime_structure() {
        let (_, _, _, phi0) = strong_mode::<f64>(0.75, 0.75, 0.5, 0).unwrap();
        assert!((phi0.abs() - PI).abs() < 1e-15);
        for n in 1..30 {
            let p = strong_mode::<f64>(0.75, 0.75, 0.5, n).unwrap().3;
            let m = strong_mode::<f64>(0.75, 0.75, 0.5, -n).unwrap().3;
            assert!((p + m).abs() < 1e-13);
        }
        let full = strong_regime_B::<f64>(2, 0.75, 0.75, 0.5, 64).unwrap();
        assert_eq!(full.per_jump.len(), 64);
        let at = |n: i64| full.per_jump.iter().find(|(l, _)| *l == JumpLocation::Mode(n)).unwrap().1;
        for n in 1..20 {
            assert!((at(n) - at(-n - 1)).abs() < 1e-14);
        }
        let sum: f64 = full.per_jump.iter().map(|x| x.1).sum();
        assert!((sum - full.total_b).abs() < 1e-12);
    }

    #[test]
    fn strong_regime_converges_for_nonzero_field() {
        let b512 = strong_regime_B::<f64>(2, 0.75, 0.75, 0.5, 512).unwrap().total_b;
        let b1024 = strong_regime_B::<f64>(2, 0.75, 0.75, 0.5, 1024).unwrap().total_b;
        assert!(((b1024 - b512) / b1024).abs() < 0.01);
        let approx = single_discontinuity_approx::<f64>(2, 0.75, 0.5).unwrap();
        assert!(((approx - b1024) / b1024).abs() < 0.25);
    }

    #[test]
    fn strong_regime_critical_points() {
        assert!(matches!(strong_regime_B::<f64>(2, 0.5, 0.5, 1.0, 64), Err(Error::Critical(_))));
        assert!(matches!(single_discontinuity_approx::<f64>(2, 0.5, 1.0), Err(Error::Critical(_))));
        assert!(matches!(strong_regime_B::<f64>(2, 0.0, 0.0, 0.0, 16), Err(Error::Critical(_))));
        let below = single_discontinuity_approx::<f64>(2, 0.5, 0.999).unwrap();
        let above = single_discontinuity_approx::<f64>(2, 0.5, 1.001).unwrap();
        assert!((below - above).abs() > 1e-2);
        assert!(single_discontinuity_approx::<f64>(2, 0.5, 1e6).unwrap() < 1e-9);
    }

    #[test]
    fn scaling_exponent() {
        assert_eq!(h0_scaling_exponent::<f64>(0.25).unwrap(), 0.5);
        assert_eq!(h0_scaling_exponent::<f64>(0.75).unwrap(), 0.0);
        assert!(matches!(h0_scaling_exponent::<f64>(0.5), Err(Error::Marginal(_))));
    }

    #[test]
    fn alternating_expansion_residual_decays() {
        for alpha in [0.25, 0.75] {
            let e = AlternatingExpansion::<f64>::new(alpha).unwrap();
            let r1 = e.product_residual(alpha, 100).unwrap().abs();
            let r2 = e.product_residual(alpha, 1000).unwrap().abs();
            let slope = (r2 / r1).ln() / 10f64.ln();
            assert!((slope - (2.0 * alpha - 3.0)).abs() < 0.3, "alpha={alpha} slope={slope}");
        }
    }

    #[test]
    fn wrapping() {
        assert!((wrap_angle(3.0 * PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(-PI) - PI).abs() < 1e-15);
        assert!((wrap_angle(0.5_f64) - 0.5).abs() < 1e-15);
        assert!(Discontinuity::new(JumpLocation::Mode(0), 0.8, 0.5, 1.0).is_err());
    }
}
