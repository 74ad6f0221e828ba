//! The long-range Kitaev ring: couplings in momentum space, the quasiparticle
//! spectrum, Bogoliubov and symbol angles, and the topological invariants.
//!
//! Conventions (hopping and pairing amplitudes both set to 1):
//! `t(k) = sum_r cos(k r) r^-a1 / norm(a1)`, `Delta(k) = sum_r sin(k r) r^-a2 / norm(a2)`,
//! `omega = 2 sqrt((h - t)^2 + Delta^2)`, Bogoliubov angle `theta = atan2(Delta, h - t)`
//! and symbol angle `phi = -theta`. On a ring of N sites the range sums and the
//! normalization both run over r = 1..N/2-1, so `t(0) = 1` exactly.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::specfun::{riemann_zeta, strong_range_couplings, zeta_real, gamma, PolylogKernel};
use rayon::prelude::*;

/// Model definition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainParams<T> {
    /// Number of sites (even, at least 4).
    pub n_sites: usize,
    /// Hopping decay exponent.
    pub alpha1: T,
    /// Pairing decay exponent.
    pub alpha2: T,
    /// Chemical potential.
    pub h: T,
    /// Use infinite-chain couplings sampled on the N-mode grid.
    pub thermodynamic: bool,
}

impl<T: Real> ChainParams<T> {
    pub fn new(n_sites: usize, alpha1: T, alpha2: T, h: T, thermodynamic: bool) -> Result<Self> {
        let p = Self { n_sites, alpha1, alpha2, h, thermodynamic };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 4 || !self.n_sites.is_multiple_of(2) {
            return Err(Error::Config(format!("N must be even and >= 4, got {}", self.n_sites)));
        }
        for (name, a) in [("alpha1", self.alpha1), ("alpha2", self.alpha2)] {
            if !(a >= T::zero()) || !a.is_finite() {
                return Err(Error::Config(format!("{name} must be finite and >= 0, got {a}")));
            }
            if self.thermodynamic && a == T::one() {
                return Err(Error::Config(format!("{name} = 1 is marginal; no infinite-chain form")));
            }
        }
        if !self.h.is_finite() {
            return Err(Error::Config("h must be finite".into()));
        }
        Ok(())
    }

    pub fn with_h(&self, h: T) -> Self {
        Self { h, ..*self }
    }

    /// Momentum of mode index n.
    pub fn momentum(&self, n: i64) -> T {
        T::TAU() * T::from_int(n) / T::from_count(self.n_sites)
    }

    /// Mode indices in (-N/2, N/2], ascending.
    pub fn mode_indices(&self) -> std::ops::RangeInclusive<i64> {
        let half = (self.n_sites / 2) as i64;
        (1 - half)..=half
    }
}

/// Per-momentum data of the quasiparticle problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeData<T> {
    pub index_n: i64,
    pub k: T,
    pub t_tilde: T,
    pub delta_tilde: T,
    pub omega: T,
    pub theta: T,
    pub phi: T,
    /// Bogoliubov population, 0 in the vacuum.
    pub f: T,
}

impl<T: Real> ModeData<T> {
    fn from_amplitudes(index_n: i64, k: T, t: T, d: T, h: T) -> Self {
        let x = h - t;
        let omega = T::lit(2.0) * x.hypot(d);
        let theta = d.atan2(x);
        Self { index_n, k, t_tilde: t, delta_tilde: d, omega, theta, phi: -theta, f: T::zero() }
    }

    /// True when the quasiparticle energy is zero to rounding.
    pub fn is_gapless(&self) -> bool {
        self.omega <= T::zero_energy_floor()
    }
}

/// Exact cos/sin of 2 pi j / N for integer j, symmetric under the reflections
/// of the circle (so sin(pi) and cos(pi/2) are exactly zero).
#[derive(Debug, Clone)]
pub struct TrigTable<T> {
    n: usize,
    cos: Vec<T>,
    sin: Vec<T>,
}

impl<T: Real> TrigTable<T> {
    /// Table for an even ring size `n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2 && n.is_multiple_of(2), "trig table needs an even size");
        let cos = (0..n).map(|j| Self::cos_exact(j, n)).collect();
        let sin = (0..n).map(|j| Self::sin_exact(j, n)).collect();
        Self { n, cos, sin }
    }

    fn angle(m: usize, n: usize) -> T {
        T::TAU() * T::from_count(m) / T::from_count(n)
    }

    fn cos_exact(j: usize, n: usize) -> T {
        let r = if 2 * j > n { n - j } else { j };
        if 4 * r == n {
            T::zero()
        } else if 4 * r < n {
            Self::angle(r, n).cos()
        } else {
            -Self::angle(n / 2 - r, n).cos()
        }
    }

    fn sin_exact(j: usize, n: usize) -> T {
        let (r, sign) = if 2 * j > n { (n - j, -T::one()) } else { (j, T::one()) };
        sign * Self::angle(r.min(n / 2 - r), n).sin()
    }

    #[inline]
    pub fn cos(&self, j: i64) -> T {
        self.cos[j.rem_euclid(self.n as i64) as usize]
    }

    #[inline]
    pub fn sin(&self, j: i64) -> T {
        self.sin[j.rem_euclid(self.n as i64) as usize]
    }
}

/// Kac normalization sum_{r=1}^{N/2} r^-alpha.
///
/// ```
/// assert_eq!(lrkitaev::model::kac_norm(0.0_f64, 8), 4.0);
/// ```
pub fn kac_norm<T: Real>(alpha: T, n_sites: usize) -> T {
    power_sum(alpha, n_sites / 2)
}

/// The normalization used by the finite ring: sum_{r=1}^{N/2-1} r^-alpha.
pub fn kac_norm_truncated<T: Real>(alpha: T, n_sites: usize) -> T {
    power_sum(alpha, (n_sites / 2).saturating_sub(1))
}

fn power_sum<T: Real>(alpha: T, upto: usize) -> T {
    (1..=upto).rev().map(|r| T::from_count(r).powf(-alpha)).sum()
}

#[derive(Debug, Clone)]
enum Source<T> {
    /// Finite ring: amplitudes indexed by |n| = 0..=N/2, plus the weights r^-a / norm.
    Finite { by_mode: Vec<T>, weights: Vec<T> },
    /// Infinite chain, exponent above 1: polylog / zeta.
    Polylog { kernel: PolylogKernel, zeta: T },
    /// Infinite chain, exponent below 1: discrete in the mode index.
    Discrete { alpha: T },
}

/// Momentum-space amplitudes for one parameter set.
#[derive(Debug, Clone)]
pub struct Couplings<T> {
    params: ChainParams<T>,
    hop: Source<T>,
    pair: Source<T>,
}

impl<T: Real> Couplings<T> {
    pub fn new(params: &ChainParams<T>) -> Result<Self> {
        params.validate()?;
        let n = params.n_sites;
        let build = |alpha: T, even: bool| -> Result<Source<T>> {
            if params.thermodynamic {
                if alpha > T::one() {
                    let kernel = PolylogKernel::new(alpha.to_f64_lossy())?;
                    return Ok(Source::Polylog { kernel, zeta: riemann_zeta(alpha)? });
                }
                return Ok(Source::Discrete { alpha });
            }
            let norm = kac_norm_truncated(alpha, n);
            let weights: Vec<T> = (1..n / 2).map(|r| T::from_count(r).powf(-alpha) / norm).collect();
            let trig = TrigTable::<T>::new(n);
            let by_mode: Vec<T> = (0..=(n / 2) as i64)
                .into_par_iter()
                .map(|m| {
                    let mut acc = T::zero();
                    for (i, &w) in weights.iter().enumerate().rev() {
                        let j = m * (i as i64 + 1);
                        acc += w * if even { trig.cos(j) } else { trig.sin(j) };
                    }
                    acc
                })
                .collect();
            Ok(Source::Finite { by_mode, weights })
        };
        Ok(Self { params: *params, hop: build(params.alpha1, true)?, pair: build(params.alpha2, false)? })
    }

    pub fn params(&self) -> &ChainParams<T> {
        &self.params
    }

    fn amplitude(src: &Source<T>, n: i64, k: T, even: bool) -> Result<T> {
        let sign = if even || n >= 0 { T::one() } else { -T::one() };
        match src {
            Source::Finite { by_mode, .. } => Ok(sign * by_mode[n.unsigned_abs() as usize]),
            Source::Polylog { kernel, zeta } => {
                let v = kernel.eval(k)?;
                Ok(if even { v.real_part } else { v.imag_part } / *zeta)
            }
            Source::Discrete { alpha } => {
                let (t, d) = strong_range_couplings(*alpha, n)?;
                Ok(if even { t } else { d })
            }
        }
    }

    /// (t, Delta) at mode index n in (-N/2, N/2].
    pub fn amplitudes(&self, n: i64) -> Result<(T, T)> {
        let half = (self.params.n_sites / 2) as i64;
        if n <= -half || n > half {
            return Err(Error::Domain(format!("mode index {n} outside (-{half}, {half}]")));
        }
        self.amplitudes_unchecked(n)
    }

    /// Amplitudes at any integer index: infinite-chain discrete couplings keep
    /// their n-dependence beyond N/2, the other sources are periodic in n.
    pub fn amplitudes_unchecked(&self, n: i64) -> Result<(T, T)> {
        let nn = self.params.n_sites as i64;
        let wrapped = (n + nn / 2 - 1).rem_euclid(nn) - nn / 2 + 1;
        let idx = |src: &Source<T>| if matches!(src, Source::Discrete { .. }) { n } else { wrapped };
        let hn = idx(&self.hop);
        let pn = idx(&self.pair);
        Ok((
            Self::amplitude(&self.hop, hn, self.params.momentum(hn), true)?,
            Self::amplitude(&self.pair, pn, self.params.momentum(pn), false)?,
        ))
    }

    /// (t, Delta) at an arbitrary momentum in [-pi, pi]; unavailable for the
    /// discrete infinite-chain couplings.
    pub fn amplitudes_at_momentum(&self, k: T) -> Result<(T, T)> {
        let eval = |src: &Source<T>, even: bool| -> Result<T> {
            match src {
                Source::Finite { weights, .. } => Ok(weights
                    .iter()
                    .enumerate()
                    .rev()
                    .map(|(i, &w)| {
                        let x = k * T::from_count(i + 1);
                        w * if even { x.cos() } else { x.sin() }
                    })
                    .sum()),
                Source::Polylog { .. } => Self::amplitude(src, 0, k, even),
                Source::Discrete { .. } => Err(Error::Domain(
                    "strong-range infinite-chain couplings are only defined on integer modes".into(),
                )),
            }
        };
        Ok((eval(&self.hop, true)?, eval(&self.pair, false)?))
    }

    pub fn mode(&self, n: i64) -> Result<ModeData<T>> {
        let (t, d) = self.amplitudes(n)?;
        Ok(ModeData::from_amplitudes(n, self.params.momentum(n), t, d, self.params.h))
    }

    /// Mode data at any integer index (see [`Couplings::amplitudes_unchecked`]).
    pub fn mode_unchecked(&self, n: i64) -> Result<ModeData<T>> {
        let (t, d) = self.amplitudes_unchecked(n)?;
        Ok(ModeData::from_amplitudes(n, self.params.momentum(n), t, d, self.params.h))
    }

    /// All modes, ordered by index from -N/2+1 to N/2.
    pub fn modes(&self) -> Result<Vec<ModeData<T>>> {
        let idx: Vec<i64> = self.params.mode_indices().collect();
        idx.into_par_iter().map(|n| self.mode(n)).collect()
    }

    /// Critical field of the k = 0 mode.
    pub fn t_zero(&self) -> Result<T> {
        Ok(self.amplitudes(0)?.0)
    }

    /// Critical field of the k = pi mode: t at n = N/2 on a finite ring,
    /// -1 + 2^(1-alpha1) for the infinite weak chain, and the large-n limit 0
    /// of the discrete couplings.
    pub fn t_pi(&self) -> Result<T> {
        match &self.hop {
            Source::Finite { by_mode, .. } => Ok(*by_mode.last().expect("non-empty")),
            Source::Polylog { .. } => Ok(T::lit(2.0).powf(T::one() - self.params.alpha1) - T::one()),
            Source::Discrete { .. } => Ok(T::zero()),
        }
    }
}

/// Mode data for one index (builds the coupling table; prefer [`Couplings`] for many modes).
pub fn couplings_at_mode<T: Real>(params: &ChainParams<T>, n: i64) -> Result<ModeData<T>> {
    Couplings::new(params)?.mode(n)
}

/// Critical fields (t at k = 0, t at k = pi) for the given size and exponents.
pub fn critical_fields<T: Real>(params: &ChainParams<T>) -> Result<(T, T)> {
    let c = Couplings::new(params)?;
    Ok((c.t_zero()?, c.t_pi()?))
}

/// Topological labels of a parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseDiagnostics<T> {
    /// Winding number; only defined for the weak regime.
    pub winding_w: Option<u32>,
    pub q_sign: i32,
    pub h_c_zero: T,
    pub h_c_pi: T,
}

const WINDING_START: u32 = 12;
const WINDING_MAX: u32 = 20;

/// Winding of the Bogoliubov angle over the Brillouin zone (weak regime).
pub fn winding_number<T: Real>(params: &ChainParams<T>) -> Result<u32> {
    if !(params.alpha1 > T::one() && params.alpha2 > T::one()) {
        return Err(Error::Domain("winding number requires both exponents above 1".into()));
    }
    let c = Couplings::new(params)?;
    let (t0, tpi) = (c.t_zero()?, c.t_pi()?);
    let gap_floor = T::lit(1e-8);
    if (params.h - t0).abs() * T::lit(2.0) < gap_floor || (params.h - tpi).abs() * T::lit(2.0) < gap_floor {
        return Err(Error::Gapless(format!("h = {} sits on a critical line", params.h)));
    }
    let mut previous: Option<T> = None;
    let mut last = T::nan();
    for level in WINDING_START..=WINDING_MAX {
        let m = 1usize << level;
        let samples: Vec<(T, T)> = (0..=m)
            .into_par_iter()
            .map(|j| -> Result<(T, T)> {
                let k = -T::PI() + T::TAU() * T::from_count(j) / T::from_count(m);
                let k = k.min(T::PI());
                let (t, d) = c.amplitudes_at_momentum(k)?;
                let x = params.h - t;
                Ok((d.atan2(x), T::lit(2.0) * x.hypot(d)))
            })
            .collect::<Result<_>>()?;
        let min_omega = samples.iter().map(|s| s.1).fold(T::infinity(), T::min);
        if min_omega < gap_floor {
            return Err(Error::Gapless(format!("minimum energy {min_omega} on the sampling grid")));
        }
        let mut total = T::zero();
        for w in samples.windows(2) {
            let mut dth = w[1].0 - w[0].0;
            while dth > T::PI() {
                dth -= T::TAU();
            }
            while dth <= -T::PI() {
                dth += T::TAU();
            }
            total += dth;
        }
        let winding = total / T::TAU();
        last = winding;
        if let Some(prev) = previous {
            if (winding - prev).abs() < T::lit(1e-6) && (winding - winding.round()).abs() < T::lit(1e-6) {
                return Ok(winding.round().abs().to_u32().unwrap_or(0));
            }
        }
        previous = Some(winding);
    }
    if (last - last.round()).abs() < T::lit(1e-3) {
        return Ok(last.round().abs().to_u32().unwrap_or(0));
    }
    Err(Error::NotQuantized(format!("accumulated winding {last}")))
}

/// q = sign[(h - t0)(h - t_pi)].
pub fn q_invariant<T: Real>(params: &ChainParams<T>) -> Result<i32> {
    let (t0, tpi) = critical_fields(params)?;
    let (a, b) = (params.h - t0, params.h - tpi);
    let tol = T::lit(1e-12);
    if a.abs() < tol || b.abs() < tol {
        return Err(Error::Critical(format!("h = {} is a critical field", params.h)));
    }
    Ok(if a * b > T::zero() { 1 } else { -1 })
}

pub fn phase_diagnostics<T: Real>(params: &ChainParams<T>) -> Result<PhaseDiagnostics<T>> {
    let (t0, tpi) = critical_fields(params)?;
    let winding_w = if params.alpha1 > T::one() && params.alpha2 > T::one() {
        Some(winding_number(params)?)
    } else {
        None
    };
    Ok(PhaseDiagnostics { winding_w, q_sign: q_invariant(params)?, h_c_zero: t0, h_c_pi: tpi })
}

/// Small-momentum prefactors of the critical dispersion in the weak regime:
/// `C` for `omega/2 ~ C |k|^(a-1)` at h = 1 (a = min exponent) and `K` for
/// `omega/2 ~ K |pi - k|` at the k = pi critical field.
pub fn dispersion_prefactors<T: Real>(alpha1: T, alpha2: T) -> Result<(T, T)> {
    let inside = |a: T| a > T::one() && a < T::lit(2.0);
    if !inside(alpha1) || !inside(alpha2) {
        return Err(Error::Domain("dispersion prefactors need 1 < alpha1, alpha2 < 2".into()));
    }
    let one = T::one();
    let half_pi = T::FRAC_PI_2();
    let c = if alpha1 < alpha2 {
        ((alpha1 * half_pi).sin() * gamma(one - alpha1) / riemann_zeta(alpha1)?).abs()
    } else if alpha1 == alpha2 {
        (gamma(one - alpha1) / riemann_zeta(alpha1)?).abs()
    } else {
        ((alpha2 * half_pi).cos() * gamma(one - alpha2) / riemann_zeta(alpha2)?).abs()
    };
    let k = (one - T::lit(2.0).powf(T::lit(2.0) - alpha2)) * zeta_real(alpha2 - one) / riemann_zeta(alpha2)?;
    Ok((c, k))
}

/// Spectrum of the flat-coupling chain (both exponents zero).
pub fn mean_field_spectrum<T: Real>(n: i64, h: T) -> T {
    let two = T::lit(2.0);
    if n == 0 {
        two * (h - T::one()).abs()
    } else if n % 2 == 0 {
        two * h.abs()
    } else {
        let d = two / (T::PI() * T::from_int(n));
        two * (h * h + d * d).sqrt()
    }
}

/// Logarithm of the ground-state degeneracy 2^N0 for N0 zero modes.
pub fn ground_degeneracy_log<T: Real>(zero_modes: usize) -> T {
    T::from_count(zero_modes) * T::LN_2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn finite(n: usize, a1: f64, a2: f64, h: f64) -> ChainParams<f64> {
        ChainParams::new(n, a1, a2, h, false).unwrap()
    }

    fn thermo(n: usize, a1: f64, a2: f64, h: f64) -> ChainParams<f64> {
        ChainParams::new(n, a1, a2, h, true).unwrap()
    }

    #[test]
    fn validation() {
        assert!(ChainParams::new(7, 1.5, 1.5, 0.0, false).is_err());
        assert!(ChainParams::new(2, 1.5, 1.5, 0.0, false).is_err());
        assert!(ChainParams::new(8, -0.5, 1.5, 0.0, false).is_err());
        assert!(ChainParams::new(8, 1.0, 1.5, 0.0, true).is_err());
        assert!(ChainParams::new(8, 1.0, 1.5, 0.0, false).is_ok());
    }

    #[test]
    fn kac_examples() {
        assert_eq!(kac_norm(0.0_f64, 8), 4.0);
        assert!((kac_norm(50.0_f64, 8) - 1.0).abs() < 1e-15);
        let k = kac_norm(1.5_f64, 1024);
        let z = riemann_zeta(1.5_f64).unwrap();
        assert!(k < z && z - k < 2.0 / 512f64.sqrt() + 1e-12);
        assert_eq!(kac_norm_truncated(0.0_f64, 8), 3.0);
    }

    #[test]
    fn trig_table_is_exact_at_symmetric_points() {
        for &n in &[6usize, 8, 10, 12, 1024] {
            let t = TrigTable::<f64>::new(n);
            assert_eq!(t.sin((n / 2) as i64), 0.0);
            assert_eq!(t.cos((n / 2) as i64), -1.0);
            for j in 0..n as i64 {
                let a = 2.0 * PI * j as f64 / n as f64;
                assert!((t.cos(j) - a.cos()).abs() < 1e-15 && (t.sin(j) - a.sin()).abs() < 1e-15);
                assert_eq!(t.cos(j), t.cos(-j));
                assert_eq!(t.sin(j), -t.sin(-j));
            }
        }
    }

    #[test]
    fn thermodynamic_anchor_values() {
        let p = thermo(64, 1.5, 1.5, 0.3);
        let c = Couplings::new(&p).unwrap();
        assert!((c.mode(0).unwrap().t_tilde - 1.0).abs() < 1e-13);
        let tpi = c.mode(32).unwrap().t_tilde;
        assert!((tpi - (-1.0 + 2f64.powf(-0.5))).abs() < 1e-13);
        assert!((c.t_pi().unwrap() - tpi).abs() < 1e-13);
    }

    #[test]
    fn mean_field_zero_modes() {
        let p = thermo(16, 0.0, 0.0, 0.0);
        let c = Couplings::new(&p).unwrap();
        for m in c.modes().unwrap() {
            let expect = mean_field_spectrum(m.index_n, 0.0);
            assert!((m.omega - expect).abs() < 1e-14, "n={}", m.index_n);
            if m.index_n != 0 && m.index_n % 2 == 0 {
                assert!(m.is_gapless());
            }
        }
        assert_eq!(mean_field_spectrum(0, 0.0_f64), 2.0);
        assert_eq!(mean_field_spectrum(2, 0.0_f64), 0.0);
        assert!((mean_field_spectrum(1, 0.0_f64) - 4.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn mode_invariants() {
        for p in [finite(12, 1.5, 0.7, 0.4), thermo(12, 1.5, 0.7, 0.4), thermo(12, 0.3, 2.5, -0.2)] {
            let c = Couplings::new(&p).unwrap();
            for m in c.modes().unwrap() {
                assert!((m.omega - 2.0 * ((p.h - m.t_tilde).powi(2) + m.delta_tilde.powi(2)).sqrt()).abs() < 1e-12);
                assert!((m.phi.cos() * m.omega - 2.0 * (p.h - m.t_tilde)).abs() < 1e-12);
                assert!((m.phi.sin() * m.omega + 2.0 * m.delta_tilde).abs() < 1e-12);
                if m.index_n.abs() < 6 {
                    let neg = c.mode(-m.index_n).unwrap();
                    assert_eq!(neg.t_tilde, m.t_tilde);
                    assert_eq!(neg.delta_tilde, -m.delta_tilde);
                }
            }
        }
    }

    #[test]
    fn finite_ring_normalization() {
        let c = Couplings::new(&finite(32, 0.6, 1.7, 0.0)).unwrap();
        assert_eq!(c.t_zero().unwrap(), 1.0);
        assert_eq!(c.mode(16).unwrap().delta_tilde, 0.0);
    }

    #[test]
    fn finite_ring_approaches_polylog() {
        // the truncated normalization differs from zeta(alpha) by O(N^(1-alpha)),
        // below 1e-4 at N = 2^16 once alpha >= 2
        let n = 1 << 16;
        let fin = Couplings::new(&finite(n, 2.0, 2.5, 0.0)).unwrap();
        let inf = Couplings::new(&thermo(n, 2.0, 2.5, 0.0)).unwrap();
        for &m in &[1024i64, 5000, 20000, 32768] {
            let a = fin.mode(m).unwrap();
            let b = inf.mode(m).unwrap();
            assert!((a.t_tilde - b.t_tilde).abs() < 1e-4 && (a.delta_tilde - b.delta_tilde).abs() < 1e-4, "m={m}");
        }
    }

    #[test]
    fn critical_points_close_the_gap() {
        let p = finite(64, 1.5, 1.5, 0.0);
        let (t0, tpi) = critical_fields(&p).unwrap();
        for (h, gapless) in [(t0, true), (tpi, true), (0.5 * (t0 + tpi), false), (t0 + 0.3, false)] {
            let modes = Couplings::new(&p.with_h(h)).unwrap().modes().unwrap();
            let min = modes.iter().map(|m| m.omega).fold(f64::INFINITY, f64::min);
            assert_eq!(min < 1e-6, gapless, "h={h}, min={min}");
        }
    }

    #[test]
    fn winding_examples() {
        assert_eq!(winding_number(&thermo(64, 1.5, 1.5, 0.0)).unwrap(), 1);
        assert_eq!(winding_number(&thermo(64, 1.5, 1.5, 2.0)).unwrap(), 0);
        assert_eq!(winding_number(&thermo(64, 3.0, 3.0, -2.0)).unwrap(), 0);
        assert_eq!(winding_number(&finite(32, 2.0, 2.0, 0.2)).unwrap(), 1);
        assert!(matches!(winding_number(&thermo(64, 1.5, 1.5, 1.0)), Err(Error::Gapless(_))));
        assert!(winding_number(&thermo(64, 0.5, 1.5, 0.0)).is_err());
    }

    #[test]
    fn q_examples() {
        assert_eq!(q_invariant(&thermo(64, 0.5, 0.5, 0.5)).unwrap(), -1);
        assert_eq!(q_invariant(&thermo(64, 0.5, 0.5, 2.0)).unwrap(), 1);
        assert_eq!(q_invariant(&thermo(64, 1.5, 1.5, -0.9)).unwrap(), 1);
        assert!(matches!(q_invariant(&thermo(64, 1.5, 1.5, 1.0)), Err(Error::Critical(_))));
    }

    #[test]
    fn invariants_agree_in_weak_regime() {
        for &h in &[-1.5, -0.5, 0.0, 0.6, 1.4] {
            let d = phase_diagnostics(&thermo(64, 1.7, 1.3, h)).unwrap();
            assert_eq!(d.winding_w == Some(1), d.q_sign == -1, "h={h}");
        }
    }

    #[test]
    fn dispersion_prefactor_examples() {
        let (c, _) = dispersion_prefactors(1.5_f64, 1.8).unwrap();
        let expect = ((0.75 * PI).sin() * gamma(-0.5_f64) / riemann_zeta(1.5_f64).unwrap()).abs();
        assert!((c - expect).abs() < 1e-14);
        let (c, _) = dispersion_prefactors(1.5_f64, 1.5).unwrap();
        assert!((c - (gamma(-0.5_f64) / riemann_zeta(1.5_f64).unwrap()).abs()).abs() < 1e-14);
        assert!(dispersion_prefactors(0.5_f64, 1.5).is_err());
    }

    #[test]
    fn dispersion_prefactors_describe_the_critical_spectrum() {
        for &(a1, a2) in &[(1.5_f64, 1.5), (1.5, 1.8), (1.8, 1.4)] {
            let (c, kpi) = dispersion_prefactors(a1, a2).unwrap();
            let a = a1.min(a2);
            let cp = Couplings::new(&thermo(64, a1, a2, 1.0)).unwrap();
            let ratio = |k: f64| {
                let (t, d) = cp.amplitudes_at_momentum(k).unwrap();
                ((1.0 - t).hypot(d)) / (c * k.powf(a - 1.0))
            };
            let (r3, r4) = (ratio(1e-3), ratio(1e-4));
            assert!((r4 - 1.0).abs() < 0.02 && (r4 - 1.0).abs() <= (r3 - 1.0).abs() + 1e-12, "{a1},{a2}: {r3} {r4}");
            let hpi = 2f64.powf(1.0 - a1) - 1.0;
            let cq = Couplings::new(&thermo(64, a1, a2, hpi)).unwrap();
            for &q in &[1e-3, 1e-4] {
                let (t, d) = cq.amplitudes_at_momentum(PI - q).unwrap();
                assert!(((hpi - t).hypot(d) / (kpi * q) - 1.0).abs() < 1e-3);
            }
        }
    }

    #[test]
    fn degeneracy_log() {
        assert_eq!(ground_degeneracy_log::<f64>(0), 0.0);
        assert!((ground_degeneracy_log::<f64>(1) - 2f64.ln()).abs() < 1e-16);
        let brute: f64 = (0..=10u32).map(|k| (1..=k).fold(1.0, |acc, i| acc * (10 - i + 1) as f64 / i as f64)).sum();
        assert!((ground_degeneracy_log::<f64>(10) - brute.ln()).abs() < 1e-13);
    }
}
