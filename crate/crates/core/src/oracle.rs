//! Brute-force many-body reference: the Bogoliubov vacuum as an explicit
//! vector in the 2^N occupation basis and its exact reduced density matrix.
//!
//! Basis index bit j holds the occupation of site j; creation operators carry
//! the Jordan-Wigner sign `(-1)^(occupied sites below j)`. With the interval
//! placed on the lowest sites the partial trace needs no further signs.

use crate::error::{Error, Result};
use crate::linalg::{symmetric_eigenvalues, SquareMatrix};
use crate::model::{ChainParams, Couplings, ModeData};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const MAX_SITES: usize = 14;

const GAP_FLOOR: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct FockState {
    pub n_sites: usize,
    pub amplitudes: Vec<Complex64>,
}

impl FockState {
    pub fn from_amplitudes(n_sites: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_size(n_sites)?;
        if amplitudes.len() != 1 << n_sites {
            return Err(Error::Dimension(format!("{} amplitudes for {n_sites} sites", amplitudes.len())));
        }
        Ok(Self { n_sites, amplitudes })
    }

    pub fn empty(n_sites: usize) -> Result<Self> {
        check_size(n_sites)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << n_sites];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_sites, amplitudes })
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    fn normalize(&mut self) {
        let s = self.norm_sqr().sqrt();
        self.amplitudes.iter_mut().for_each(|a| *a /= s);
    }
}

fn check_size(n: usize) -> Result<()> {
    if n == 0 || n > MAX_SITES {
        return Err(Error::Size(format!("Fock space limited to 1..={MAX_SITES} sites, got {n}")));
    }
    Ok(())
}

fn jw_sign(state: usize, site: usize) -> f64 {
    if (state & ((1 << site) - 1)).count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// `sum_j u_j c_j^dagger` applied to a vector.
fn create(u: &[Complex64], psi: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
    for (s, &amp) in psi.iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &uj) in u.iter().enumerate() {
            if s & (1 << j) == 0 {
                out[s | (1 << j)] += uj * amp * jw_sign(s, j);
            }
        }
    }
    out
}

/// `sum_j conj(u_j) c_j` applied to a vector.
fn annihilate(u: &[Complex64], psi: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); psi.len()];
    for (s, &amp) in psi.iter().enumerate() {
        if amp == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &uj) in u.iter().enumerate() {
            if s & (1 << j) != 0 {
                out[s ^ (1 << j)] += uj.conj() * amp * jw_sign(s, j);
            }
        }
    }
    out
}

/// Site amplitudes of the plane-wave creation operator `c_k^dagger`.
fn plane_wave(n_sites: usize, k: f64) -> Vec<Complex64> {
    let norm = 1.0 / (n_sites as f64).sqrt();
    (0..n_sites).map(|j| Complex64::from_polar(norm, k * j as f64)).collect()
}

fn gapped_modes(params: &ChainParams<f64>) -> Result<Vec<ModeData<f64>>> {
    check_size(params.n_sites)?;
    let modes = Couplings::new(params)?.modes()?;
    if let Some(m) = modes.iter().find(|m| m.omega <= GAP_FLOOR) {
        return Err(Error::Gapless(format!("mode {} has energy {}", m.index_n, m.omega)));
    }
    Ok(modes)
}

/// Product of pair factors `cos(theta/2) + sin(theta/2) c_k^dag c_-k^dag`
/// over 0 < k < pi, with the unpaired k = 0 and k = pi modes filled when
/// their angle is pi.
pub fn build_bcs_vacuum(params: &ChainParams<f64>) -> Result<FockState> {
    let modes = gapped_modes(params)?;
    let n = params.n_sites;
    let mut state = FockState::empty(n)?;
    for m in &modes {
        let paired = m.index_n > 0 && 2 * m.index_n < n as i64;
        let unpaired = m.index_n == 0 || 2 * m.index_n == n as i64;
        if paired {
            let (s, c) = (m.theta / 2.0).sin_cos();
            let pair = create(&plane_wave(n, m.k), &create(&plane_wave(n, -m.k), &state.amplitudes));
            for (a, p) in state.amplitudes.iter_mut().zip(pair) {
                *a = *a * c + p * s;
            }
        } else if unpaired && m.theta.abs() > PI / 2.0 {
            state.amplitudes = create(&plane_wave(n, m.k), &state.amplitudes);
        }
    }
    state.normalize();
    Ok(state)
}

/// Largest `||gamma_k psi||` over all modes, with
/// `gamma_k = cos(theta_k/2) c_k - sin(theta_k/2) c_-k^dag`.
pub fn vacuum_residual(state: &FockState, params: &ChainParams<f64>) -> Result<f64> {
    let modes = gapped_modes(params)?;
    let n = params.n_sites;
    if state.n_sites != n {
        return Err(Error::Dimension(format!("state has {} sites, params {n}", state.n_sites)));
    }
    let mut worst = 0.0_f64;
    for m in &modes {
        let (s, c) = (m.theta / 2.0).sin_cos();
        let down = annihilate(&plane_wave(n, m.k), &state.amplitudes);
        let up = create(&plane_wave(n, -m.k), &state.amplitudes);
        let r: f64 = down.iter().zip(&up).map(|(d, u)| (d * c - u * s).norm_sqr()).sum();
        worst = worst.max(r.sqrt());
    }
    Ok(worst)
}

/// Reduced density matrix of the first `l` sites, `2^l x 2^l`.
pub fn reduced_density_matrix(state: &FockState, l: usize) -> Result<Vec<Vec<Complex64>>> {
    if l == 0 || l > state.n_sites {
        return Err(Error::Dimension(format!("subsystem {l} not in 1..={}", state.n_sites)));
    }
    Ok(partial_trace(state, l, true))
}

/// `keep_low`: keep the lowest `l` sites, else keep the complementary high sites.
fn partial_trace(state: &FockState, l: usize, keep_low: bool) -> Vec<Vec<Complex64>> {
    let low = 1usize << l;
    let high = 1usize << (state.n_sites - l);
    let psi = &state.amplitudes;
    let (dim, traced) = if keep_low { (low, high) } else { (high, low) };
    let idx = |kept: usize, t: usize| if keep_low { kept + low * t } else { t + low * kept };
    let mut rho = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
    for (a, row) in rho.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = (0..traced).map(|t| psi[idx(a, t)] * psi[idx(b, t)].conj()).sum();
        }
    }
    rho
}

fn hermitian_eigenvalues(rho: &[Vec<Complex64>]) -> Result<Vec<f64>> {
    let n = rho.len();
    let big = SquareMatrix::from_fn(2 * n, |p, q| {
        let z = rho[p % n][q % n];
        match (p / n, q / n) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    });
    Ok(symmetric_eigenvalues(&big)?.into_iter().step_by(2).collect())
}

/// Renyi entropy of the first `l` sites from the exact reduced density matrix.
/// For `l > N/2` the complementary block is diagonalized instead.
pub fn exact_entropy(state: &FockState, l: usize, nu: f64) -> Result<f64> {
    if l == 0 || l >= state.n_sites {
        return Err(Error::Dimension(format!("subsystem {l} not in 1..{}", state.n_sites)));
    }
    if !(nu >= 1.0) {
        return Err(Error::Domain(format!("Renyi order must be >= 1, got {nu}")));
    }
    let rho = partial_trace(state, l, 2 * l <= state.n_sites);
    let trace: f64 = (0..rho.len()).map(|i| rho[i][i].re).sum();
    if (trace - 1.0).abs() > 1e-10 {
        return Err(Error::NonUnitTrace(trace));
    }
    let p = hermitian_eigenvalues(&rho)?;
    if let Some(&min) = p.first() {
        if min < -1e-12 {
            return Err(Error::EigenvalueRange(format!("density matrix eigenvalue {min}")));
        }
    }
    let p = p.into_iter().map(|x| x.max(0.0));
    let s = if nu == 1.0 {
        p.filter(|&x| x > 0.0).map(|x| -x * x.ln()).sum::<f64>()
    } else {
        p.map(|x| x.powf(nu)).sum::<f64>().ln() / (1.0 - nu)
    };
    Ok(s.max(0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian_state::{build_correlation_matrix, renyi_entropy, Populations};

    fn params(n: usize, a1: f64, a2: f64, h: f64) -> ChainParams<f64> {
        ChainParams::new(n, a1, a2, h, false).unwrap()
    }

    #[test]
    fn product_state_has_no_entanglement() {
        let st = FockState::empty(6).unwrap();
        for l in 1..6 {
            assert_eq!(exact_entropy(&st, l, 2.0).unwrap(), 0.0);
        }
        let mut filled = vec![Complex64::new(0.0, 0.0); 64];
        filled[0b101101] = Complex64::new(1.0, 0.0);
        let st = FockState::from_amplitudes(6, filled).unwrap();
        assert_eq!(exact_entropy(&st, 3, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn bell_pair_across_cut() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        for amps in [
            vec![z, Complex64::new(r, 0.0), Complex64::new(0.0, r), z],
            vec![Complex64::new(r, 0.0), z, z, Complex64::new(-r, 0.0)],
        ] {
            let st = FockState::from_amplitudes(2, amps).unwrap();
            for nu in [1.0, 2.0, 3.0] {
                assert!((exact_entropy(&st, 1, nu).unwrap() - 2f64.ln()).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn trivial_angles_give_empty_lattice() {
        let p = ChainParams::new(6, 1.5, 1.5, 50.0, false).unwrap();
        let st = build_bcs_vacuum(&p).unwrap();
        assert!((st.amplitudes[0].norm() - 1.0).abs() < 1e-3);
        let p = ChainParams::new(6, 1.5, 1.5, 1e9, false).unwrap();
        let st = build_bcs_vacuum(&p).unwrap();
        assert!((st.amplitudes[0].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn vacuum_condition_holds() {
        for p in [params(4, 40.0, 40.0, 2.0), params(8, 1.5, 1.5, 0.5), params(10, 0.5, 0.5, 0.3), params(8, 3.0, 3.0, -0.9)] {
            let st = build_bcs_vacuum(&p).unwrap();
            assert!((st.norm_sqr() - 1.0).abs() < 1e-12);
            assert!(vacuum_residual(&st, &p).unwrap() < 1e-10);
        }
    }

    #[test]
    fn rdm_is_hermitian_unit_trace() {
        let st = build_bcs_vacuum(&params(8, 1.5, 1.5, 0.5)).unwrap();
        let rho = reduced_density_matrix(&st, 3).unwrap();
        let tr: f64 = (0..8).map(|i| rho[i][i].re).sum();
        assert!((tr - 1.0).abs() < 1e-12);
        for i in 0..8 {
            for j in 0..8 {
                assert!((rho[i][j] - rho[j][i].conj()).norm() < 1e-14);
            }
        }
        assert!(hermitian_eigenvalues(&rho).unwrap()[0] > -1e-12);
    }

    #[test]
    fn complementary_entropies_agree() {
        let st = build_bcs_vacuum(&params(8, 1.5, 1.5, 0.5)).unwrap();
        for l in 1..8 {
            let direct = partial_trace(&st, l, true);
            let p = hermitian_eigenvalues(&direct).unwrap();
            let s2 = -p.iter().map(|x| x * x).sum::<f64>().ln();
            assert!((s2 - exact_entropy(&st, 8 - l, 2.0).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn matches_correlation_matrix() {
        for p in [params(8, 1.5, 1.5, 0.5), params(8, 3.0, 3.0, 2.0), params(8, 0.5, 0.5, 0.3), params(8, 1.8, 1.5, 1.2)] {
            let st = build_bcs_vacuum(&p).unwrap();
            for l in 1..=4 {
                let corr = build_correlation_matrix(&p, l, &Populations::vacuum()).unwrap();
                for nu in [1.0, 2.0, 3.0] {
                    let g = renyi_entropy(&corr, nu).unwrap().value;
                    let o = exact_entropy(&st, l, nu).unwrap();
                    assert!((g - o).abs() < 1e-8, "l={l} nu={nu}: {g} vs {o}");
                }
            }
        }
    }

    #[test]
    fn size_and_gap_errors() {
        assert!(matches!(build_bcs_vacuum(&params(16, 1.5, 1.5, 0.5)), Err(Error::Size(_))));
        let crit = params(8, 1.5, 1.5, 0.5);
        let h = Couplings::new(&crit).unwrap().t_zero().unwrap();
        assert!(matches!(build_bcs_vacuum(&crit.with_h(h)), Err(Error::Gapless(_))));
        let st = FockState::empty(4).unwrap();
        assert!(exact_entropy(&st, 4, 2.0).is_err());
        let bad = FockState { n_sites: 2, amplitudes: vec![Complex64::new(2.0, 0.0); 4] };
        assert!(matches!(exact_entropy(&bad, 1, 2.0), Err(Error::NonUnitTrace(_))));
    }
}
