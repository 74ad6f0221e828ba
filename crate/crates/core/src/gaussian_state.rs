//! Correlation matrix of a fermionic Gaussian state built from its 2x2
//! momentum-space symbol, and Renyi entropies from its spectrum.
//!
//! The symbol of mode k is `a (cos phi sz + sin phi sy) + b 1` with
//! `a = 1 - (f_k + f_-k)` and `b = f_-k - f_k`. For a subsystem of L sites the
//! 2x2 block coupling sites i and j is `(1/N) sum_k G_k e^{ik(i-j)}`; in the
//! arrangement (first components of all sites, then second components) the
//! matrix reads `[[A + iD, B], [-B, -A + iD]]` with Toeplitz blocks
//! `A_d = <a cos phi cos kd>`, `B_d = <a sin phi sin kd>`, `D_d = <b sin kd>`.
//! When every `b` vanishes the spectrum is `+-` the singular values of `A - B`.

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, SquareMatrix};
use crate::model::{ChainParams, Couplings, ModeData, TrigTable};
use crate::scalar::Real;
use num_complex::Complex;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::sync::OnceLock;

const CLAMP_TOLERANCE: f64 = 1e-9;

/// Bogoliubov populations by mode index; unspecified modes are empty.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Populations<T> {
    map: BTreeMap<i64, T>,
}

impl<T: Real> Populations<T> {
    pub fn vacuum() -> Self {
        Self { map: BTreeMap::new() }
    }

    pub fn set(&mut self, n: i64, f: T) -> Result<()> {
        if !(f >= T::zero() && f <= T::one()) {
            return Err(Error::Domain(format!("population {f} of mode {n} outside [0,1]")));
        }
        self.map.insert(n, f);
        Ok(())
    }

    pub fn with(mut self, n: i64, f: T) -> Result<Self> {
        self.set(n, f)?;
        Ok(self)
    }

    pub fn get(&self, n: i64) -> T {
        self.map.get(&n).copied().unwrap_or_else(T::zero)
    }

    pub fn is_set(&self, n: i64) -> bool {
        self.map.contains_key(&n)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, T)> + '_ {
        self.map.iter().map(|(&n, &f)| (n, f))
    }

    /// Sets `f` on every gapless mode of the table.
    pub fn fill_gapless(modes: &[ModeData<T>], f: T) -> Result<Self> {
        let mut p = Self::vacuum();
        for m in modes.iter().filter(|m| m.is_gapless()) {
            p.set(m.index_n, f)?;
        }
        Ok(p)
    }
}

/// The 2x2 symbol of one +-k pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymbolValue<T> {
    pub a: T,
    pub b: T,
    pub phi: T,
}

impl<T: Real> SymbolValue<T> {
    /// `a (cos phi sz + sin phi sy) + b 1` as a complex 2x2 matrix.
    pub fn matrix(&self) -> [[Complex<T>; 2]; 2] {
        let (s, c) = self.phi.sin_cos();
        let z = T::zero();
        [
            [Complex::new(self.a * c + self.b, z), Complex::new(z, -self.a * s)],
            [Complex::new(z, self.a * s), Complex::new(-self.a * c + self.b, z)],
        ]
    }

    /// Eigenvalues `b - a`, `b + a`.
    pub fn eigenvalues(&self) -> (T, T) {
        (self.b - self.a, self.b + self.a)
    }
}

/// Symbol of mode k from the mode and its partner -k.
///
/// A gapless mode has no angle of its own; it needs an explicit population,
/// and then the angle on the h > h_c side of the gap closing (phi = 0) is used.
pub fn build_symbol<T: Real>(
    mode: &ModeData<T>,
    mode_neg: &ModeData<T>,
    populations: &Populations<T>,
) -> Result<SymbolValue<T>> {
    for m in [mode, mode_neg] {
        if m.is_gapless() && !populations.is_set(m.index_n) {
            return Err(Error::Gapless(format!(
                "mode {} has zero energy; supply its population",
                m.index_n
            )));
        }
    }
    let fk = populations.get(mode.index_n);
    let fm = populations.get(mode_neg.index_n);
    let phi = if mode.is_gapless() { T::zero() } else { mode.phi };
    Ok(SymbolValue { a: T::one() - (fk + fm), b: fm - fk, phi })
}

/// Block-Toeplitz correlation matrix of an L-site interval.
#[derive(Debug)]
pub struct CorrelationMatrix<T> {
    l: usize,
    /// lag d stored at index d + L - 1
    a: Vec<T>,
    b: Vec<T>,
    d: Option<Vec<T>>,
    spectrum: OnceLock<std::result::Result<Vec<T>, Error>>,
}

impl<T: Real> Clone for CorrelationMatrix<T> {
    fn clone(&self) -> Self {
        Self { l: self.l, a: self.a.clone(), b: self.b.clone(), d: self.d.clone(), spectrum: OnceLock::new() }
    }
}

impl<T: Real> CorrelationMatrix<T> {
    /// Assembles the lags from symbols given for every mode index of an N-site ring.
    ///
    /// Symbols must have the parity of population-derived ones: `a` even,
    /// `phi` and `b` odd under `n -> -n`.
    pub fn from_symbols(n_sites: usize, l: usize, symbols: &[(i64, SymbolValue<T>)]) -> Result<Self> {
        if l == 0 || l > n_sites {
            return Err(Error::Dimension(format!("subsystem {l} not in 1..={n_sites}")));
        }
        if symbols.len() != n_sites {
            return Err(Error::Dimension(format!("{} symbols for {n_sites} modes", symbols.len())));
        }
        let trig = TrigTable::<T>::new(n_sites);
        let inv_n = T::one() / T::from_count(n_sites);
        let has_b = symbols.iter().any(|(_, s)| s.b != T::zero());
        let ca: Vec<(i64, T, T, T)> =
            symbols.iter().map(|&(n, s)| (n, s.a * s.phi.cos(), s.a * s.phi.sin(), s.b)).collect();
        let lags: Vec<(T, T, T)> = (0..l as i64)
            .into_par_iter()
            .map(|lag| {
                let (mut sa, mut sb, mut sd) = (T::zero(), T::zero(), T::zero());
                for &(n, ac, as_, b) in &ca {
                    let j = n * lag;
                    let (c, s) = (trig.cos(j), trig.sin(j));
                    sa += ac * c;
                    sb += as_ * s;
                    sd += b * s;
                }
                (sa * inv_n, sb * inv_n, sd * inv_n)
            })
            .collect();
        let width = 2 * l - 1;
        let mut a = vec![T::zero(); width];
        let mut b = vec![T::zero(); width];
        let mut d = vec![T::zero(); width];
        for (lag, &(x, y, z)) in lags.iter().enumerate() {
            a[l - 1 + lag] = x;
            a[l - 1 - lag] = x;
            b[l - 1 + lag] = y;
            b[l - 1 - lag] = -y;
            d[l - 1 + lag] = z;
            d[l - 1 - lag] = -z;
        }
        Ok(Self { l, a, b, d: has_b.then_some(d), spectrum: OnceLock::new() })
    }

    pub fn subsystem(&self) -> usize {
        self.l
    }

    fn lag(&self, i: usize, j: usize) -> usize {
        i + self.l - 1 - j
    }

    /// The 2x2 block coupling sites i and j.
    pub fn block(&self, i: usize, j: usize) -> [[Complex<T>; 2]; 2] {
        let x = self.lag(i, j);
        let im = self.d.as_ref().map_or(T::zero(), |d| d[x]);
        let z = T::zero();
        [
            [Complex::new(self.a[x], im), Complex::new(self.b[x], z)],
            [Complex::new(-self.b[x], z), Complex::new(-self.a[x], im)],
        ]
    }

    /// Entry in site-major ordering (index 2 i + component).
    pub fn entry(&self, p: usize, q: usize) -> Complex<T> {
        self.block(p / 2, q / 2)[p % 2][q % 2]
    }

    /// Dense 2L x 2L real and imaginary parts in site-major ordering.
    pub fn dense(&self) -> (SquareMatrix<T>, SquareMatrix<T>) {
        let n = 2 * self.l;
        (SquareMatrix::from_fn(n, |p, q| self.entry(p, q).re), SquareMatrix::from_fn(n, |p, q| self.entry(p, q).im))
    }

    /// True when the populations break the +-k balance (complex Hermitian matrix).
    pub fn is_complex(&self) -> bool {
        self.d.is_some()
    }

    /// Perturbs one lag of the cos-block; exists so verification tooling can
    /// demonstrate that a corrupted matrix is detected.
    pub fn with_perturbed_lag(&self, lag: usize, delta: T) -> Self {
        let mut out = self.clone();
        let x = self.l - 1 + lag;
        out.a[x] += delta;
        if lag != 0 {
            out.a[self.l - 1 - lag] += delta;
        }
        out
    }

    /// Eigenvalues in ascending order (2L values), clamped into [-1, 1].
    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        self.spectrum.get_or_init(|| self.compute_spectrum()).clone()
    }

    fn compute_spectrum(&self) -> std::result::Result<Vec<T>, Error> {
        let l = self.l;
        let raw = match &self.d {
            None => {
                let m = SquareMatrix::from_fn(l, |i, j| {
                    let x = self.lag(i, j);
                    self.a[x] - self.b[x]
                });
                let sq = symmetric_eigenvalues(&m.gram())?;
                let mut v = Vec::with_capacity(2 * l);
                for &x in &sq {
                    let s = x.max(T::zero()).sqrt();
                    v.push(s);
                    v.push(-s);
                }
                v
            }
            Some(d) => {
                // real embedding [[Re, -Im], [Im, Re]] doubles every eigenvalue
                let n = 2 * l;
                let re = |p: usize, q: usize| -> T {
                    let (cp, cq) = (p / l, q / l);
                    let x = self.lag(p % l, q % l);
                    match (cp, cq) {
                        (0, 0) => self.a[x],
                        (1, 1) => -self.a[x],
                        (0, 1) => self.b[x],
                        _ => -self.b[x],
                    }
                };
                let im = |p: usize, q: usize| -> T {
                    if p / l == q / l {
                        d[self.lag(p % l, q % l)]
                    } else {
                        T::zero()
                    }
                };
                let big = SquareMatrix::from_fn(2 * n, |p, q| match (p / n, q / n) {
                    (0, 0) | (1, 1) => re(p % n, q % n),
                    (0, 1) => -im(p % n, q % n),
                    _ => im(p % n, q % n),
                });
                let ev = symmetric_eigenvalues(&big)?;
                ev.iter().step_by(2).copied().collect()
            }
        };
        let tol = T::lit(CLAMP_TOLERANCE);
        let mut out = Vec::with_capacity(raw.len());
        for v in raw {
            if v.abs() > T::one() + tol {
                return Err(Error::EigenvalueRange(format!("{v}")));
            }
            out.push(v.max(-T::one()).min(T::one()));
        }
        out.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        Ok(out)
    }
}

/// Symbols of every mode of the parameter set, in mode-index order.
pub fn symbols_for<T: Real>(
    params: &ChainParams<T>,
    populations: &Populations<T>,
) -> Result<Vec<(i64, SymbolValue<T>)>> {
    let couplings = Couplings::new(params)?;
    let modes = couplings.modes()?;
    symbols_from_modes(params.n_sites, &modes, populations)
}

/// Symbols from a precomputed mode table ordered from -N/2+1 to N/2.
pub fn symbols_from_modes<T: Real>(
    n_sites: usize,
    modes: &[ModeData<T>],
    populations: &Populations<T>,
) -> Result<Vec<(i64, SymbolValue<T>)>> {
    let half = (n_sites / 2) as i64;
    let at = |n: i64| &modes[(n + half - 1) as usize];
    modes
        .iter()
        .map(|m| {
            let partner = if m.index_n == half { half } else { -m.index_n };
            Ok((m.index_n, build_symbol(m, at(partner), populations)?))
        })
        .collect()
}

/// Correlation matrix of the first L sites of the ring in the given state.
pub fn build_correlation_matrix<T: Real>(
    params: &ChainParams<T>,
    l: usize,
    populations: &Populations<T>,
) -> Result<CorrelationMatrix<T>> {
    if l == 0 || l > params.n_sites {
        return Err(Error::Dimension(format!("subsystem {l} not in 1..={}", params.n_sites)));
    }
    CorrelationMatrix::from_symbols(params.n_sites, l, &symbols_for(params, populations)?)
}

/// A Renyi entropy in nats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyResult<T> {
    pub l: usize,
    pub nu: T,
    pub value: T,
}

/// Entropy contribution of one eigenvalue pair `+-v`.
pub fn pair_entropy<T: Real>(v: T, nu: T) -> T {
    let half = T::lit(0.5);
    let p = (T::one() + v) * half;
    let q = (T::one() - v) * half;
    if nu == T::one() {
        let xlx = |x: T| if x > T::zero() { -x * x.ln() } else { T::zero() };
        xlx(p) + xlx(q)
    } else {
        (p.powf(nu) + q.powf(nu)).ln() / (T::one() - nu)
    }
}

/// S_nu = (1/2) sum_j s_nu(v_j) over the 2L eigenvalues.
pub fn renyi_entropy<T: Real>(corr: &CorrelationMatrix<T>, nu: T) -> Result<EntropyResult<T>> {
    if !(nu >= T::one()) {
        return Err(Error::Domain(format!("Renyi order must be >= 1, got {nu}")));
    }
    let ev = corr.eigenvalues()?;
    let value = ev.iter().map(|&v| pair_entropy(v, nu)).sum::<T>() * T::lit(0.5);
    Ok(EntropyResult { l: corr.subsystem(), nu, value: value.max(T::zero()) })
}

/// Entropies of the first L sites for several orders.
pub fn entanglement_entropies<T: Real>(
    params: &ChainParams<T>,
    l: usize,
    populations: &Populations<T>,
    orders: &[T],
) -> Result<Vec<EntropyResult<T>>> {
    let corr = build_correlation_matrix(params, l, populations)?;
    orders.iter().map(|&nu| renyi_entropy(&corr, nu)).collect()
}

/// Leading (volume) term of the asymptotic expansion:
/// `(1/(1-nu)) sum_k ln[(1-f_k)^nu + f_k^nu]` (binary entropy at nu = 1).
pub fn fh_volume_term<T: Real>(populations: impl IntoIterator<Item = T>, nu: T) -> Result<T> {
    if !(nu >= T::one()) {
        return Err(Error::Domain(format!("Renyi order must be >= 1, got {nu}")));
    }
    let mut acc = T::zero();
    for f in populations {
        if !(f >= T::zero() && f <= T::one()) {
            return Err(Error::Domain(format!("population {f} outside [0,1]")));
        }
        acc += pair_entropy(T::one() - T::lit(2.0) * f, nu);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, a1: f64, a2: f64, h: f64) -> ChainParams<f64> {
        ChainParams::new(n, a1, a2, h, false).unwrap()
    }

    #[test]
    fn symbol_examples() {
        let p = params(8, 1.5, 1.5, 0.5);
        let c = Couplings::new(&p).unwrap();
        let (m, mn) = (c.mode(1).unwrap(), c.mode(-1).unwrap());
        let vac = build_symbol(&m, &mn, &Populations::vacuum()).unwrap();
        assert_eq!((vac.a, vac.b), (1.0, 0.0));
        let half = Populations::vacuum().with(1, 0.5).unwrap().with(-1, 0.5).unwrap();
        let s = build_symbol(&m, &mn, &half).unwrap();
        assert_eq!((s.a, s.b), (0.0, 0.0));
        let one = Populations::vacuum().with(1, 1.0).unwrap();
        let s = build_symbol(&m, &mn, &one).unwrap();
        assert_eq!((s.a, s.b), (0.0, -1.0));
        let (lo, hi) = vac.eigenvalues();
        assert_eq!((lo, hi), (-1.0, 1.0));
    }

    #[test]
    fn symbol_matrix_reconstruction() {
        let s = SymbolValue { a: 0.6_f64, b: 0.2, phi: 0.7 };
        let m = s.matrix();
        let tr = m[0][0] + m[1][1];
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let (lo, hi) = s.eigenvalues();
        assert!((tr.re - (lo + hi)).abs() < 1e-15 && (det.re - lo * hi).abs() < 1e-15);
    }

    #[test]
    fn gapless_mode_needs_population() {
        let p = ChainParams::new(16, 0.0, 0.0, 0.0, true).unwrap();
        assert!(matches!(build_correlation_matrix(&p, 4, &Populations::vacuum()), Err(Error::Gapless(_))));
        let modes = Couplings::new(&p).unwrap().modes().unwrap();
        let pops = Populations::fill_gapless(&modes, 0.5).unwrap();
        assert!(build_correlation_matrix(&p, 4, &pops).is_ok());
    }

    #[test]
    fn single_site_block() {
        let p = params(10, 1.5, 1.2, 0.3);
        let corr = build_correlation_matrix(&p, 1, &Populations::vacuum()).unwrap();
        let modes = Couplings::new(&p).unwrap().modes().unwrap();
        let expect: f64 = modes.iter().map(|m| 2.0 * (p.h - m.t_tilde) / m.omega).sum::<f64>() / 10.0;
        let blk = corr.block(0, 0);
        assert!((blk[0][0].re - expect).abs() < 1e-14 && (blk[1][1].re + expect).abs() < 1e-14);
    }

    #[test]
    fn blocks_match_direct_fourier_sum() {
        let p = params(12, 1.3, 0.8, -0.4);
        let pops = Populations::vacuum().with(2, 0.3).unwrap().with(5, 0.9).unwrap();
        let symbols = symbols_for(&p, &pops).unwrap();
        let corr = CorrelationMatrix::from_symbols(12, 5, &symbols).unwrap();
        assert!(corr.is_complex());
        for i in 0..5 {
            for j in 0..5 {
                let mut sum = [[Complex::new(0.0, 0.0); 2]; 2];
                for (n, s) in &symbols {
                    let k = p.momentum(*n);
                    let ph = Complex::from_polar(1.0, k * (i as f64 - j as f64));
                    let g = s.matrix();
                    for x in 0..2 {
                        for y in 0..2 {
                            sum[x][y] += g[x][y] * ph / 12.0;
                        }
                    }
                }
                let blk = corr.block(i, j);
                for x in 0..2 {
                    for y in 0..2 {
                        assert!((blk[x][y] - sum[x][y]).norm() < 1e-13);
                    }
                }
            }
        }
    }

    #[test]
    fn fast_spectrum_matches_dense_eigensolver() {
        let p = params(40, 1.4, 1.7, 0.6);
        let corr = build_correlation_matrix(&p, 13, &Populations::vacuum()).unwrap();
        let (re, im) = corr.dense();
        assert!(re.asymmetry() < 1e-14);
        assert!((0..26).all(|i| (0..26).all(|j| im.get(i, j) == 0.0)));
        let dense = symmetric_eigenvalues(&re).unwrap();
        let fast = corr.eigenvalues().unwrap();
        for (x, y) in dense.iter().zip(&fast) {
            assert!((x - y).abs() < 1e-12);
        }
        for j in 0..26 {
            assert!((fast[j] + fast[25 - j]).abs() < 1e-10);
        }
    }

    #[test]
    fn whole_ring_is_pure() {
        let p = params(8, 1.5, 1.5, 0.5);
        let corr = build_correlation_matrix(&p, 8, &Populations::vacuum()).unwrap();
        for v in corr.eigenvalues().unwrap() {
            assert!((v.abs() - 1.0).abs() < 1e-12);
        }
        assert!(renyi_entropy(&corr, 2.0).unwrap().value < 1e-12);
    }

    #[test]
    fn complementarity_and_ordering() {
        let p = params(8, 1.5, 1.5, 0.5);
        for l in 1..8 {
            let s = entanglement_entropies(&p, l, &Populations::vacuum(), &[1.0, 2.0, 3.0]).unwrap();
            let c = entanglement_entropies(&p, 8 - l, &Populations::vacuum(), &[1.0, 2.0, 3.0]).unwrap();
            for (x, y) in s.iter().zip(&c) {
                assert!((x.value - y.value).abs() < 1e-10);
            }
            assert!(s[0].value >= s[1].value && s[1].value >= s[2].value);
            assert!(s[0].value <= l as f64 * 2f64.ln());
        }
    }

    #[test]
    fn maximally_mixed_pair() {
        let corr = CorrelationMatrix::<f64> {
            l: 1,
            a: vec![0.0],
            b: vec![0.0],
            d: None,
            spectrum: OnceLock::new(),
        };
        let s = renyi_entropy(&corr, 2.0).unwrap();
        assert!((s.value - 2f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn clamp_tolerance() {
        let mk = |x: f64| CorrelationMatrix::<f64> { l: 1, a: vec![x], b: vec![0.0], d: None, spectrum: OnceLock::new() };
        let s = renyi_entropy(&mk(1.0 + 5e-10), 1.0).unwrap();
        assert!(s.value.is_finite() && s.value >= 0.0);
        assert!(matches!(renyi_entropy(&mk(1.0 + 1e-6), 1.0), Err(Error::EigenvalueRange(_))));
    }

    #[test]
    fn volume_term_examples() {
        assert_eq!(fh_volume_term(vec![0.0_f64; 5], 2.0).unwrap(), 0.0);
        for &nu in &[1.0, 2.0, 3.5] {
            let v = fh_volume_term(vec![0.5_f64; 7], nu).unwrap();
            assert!((v - 7.0 * 2f64.ln()).abs() < 1e-14);
        }
        let v = fh_volume_term(vec![0.0, 0.25, 0.5], 2.0_f64).unwrap();
        let brute = -((0.75f64.powi(2) + 0.25f64.powi(2)).ln() + (0.5f64.powi(2) * 2.0).ln());
        assert!((v - brute).abs() < 1e-15);
    }

    #[test]
    fn dimension_checks() {
        let p = params(8, 1.5, 1.5, 0.5);
        assert!(matches!(build_correlation_matrix(&p, 9, &Populations::vacuum()), Err(Error::Dimension(_))));
        assert!(build_correlation_matrix(&p, 0, &Populations::vacuum()).is_err());
    }
}
