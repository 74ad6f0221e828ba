//! Fits of entropy curves and parameter sweeps.

use crate::asymptotics::{strong_regime_B, weak_regime_B};
use crate::error::{Error, Result};
use crate::gaussian_state::{entanglement_entropies, Populations};
use crate::linalg::{symmetric_eigenvalues, SquareMatrix};
use crate::model::{phase_diagnostics, ChainParams, Couplings};
use crate::scalar::Real;
use rayon::prelude::*;
use std::io::Write;

/// `S(L) = log_coef ln L + offset + correction_amp L^(-correction_exp)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalingFit<T> {
    pub log_coef: T,
    pub offset: T,
    pub correction_amp: T,
    pub correction_exp: T,
    pub rms_residual: T,
    pub l_range: (T, T),
    pub points_used: usize,
}

impl<T: Real> ScalingFit<T> {
    /// `1.5 rms / ln L_max`, a scale for how far the log coefficient can move.
    pub fn uncertainty_proxy(&self) -> T {
        T::lit(1.5) * self.rms_residual / self.l_range.1.ln()
    }

    pub fn predict(&self, l: T) -> T {
        self.log_coef * l.ln() + self.offset + self.correction_amp * l.powf(-self.correction_exp)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions<T> {
    pub exp_min: T,
    pub exp_max: T,
    /// Points with smaller L are dropped.
    pub min_l: T,
    pub coarse_points: usize,
    pub max_condition: T,
}

impl<T: Real> Default for FitOptions<T> {
    fn default() -> Self {
        Self {
            exp_min: T::lit(0.5),
            exp_max: T::lit(3.0),
            min_l: T::lit(32.0),
            coarse_points: 64,
            max_condition: T::lit(1e12),
        }
    }
}

/// Least squares by twice-applied modified Gram-Schmidt. Returns the
/// coefficients and the residual sum of squares.
fn least_squares<T: Real>(cols: &[Vec<T>], y: &[T]) -> Result<(Vec<T>, T)> {
    let p = cols.len();
    let mut q: Vec<Vec<T>> = cols.to_vec();
    let mut r = vec![vec![T::zero(); p]; p];
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).map(|(&x, &y)| x * y).sum::<T>();
    for j in 0..p {
        for _pass in 0..2 {
            for i in 0..j {
                let proj = dot(&q[i], &q[j]);
                r[i][j] += proj;
                let qi = q[i].clone();
                q[j].iter_mut().zip(&qi).for_each(|(x, &u)| *x -= proj * u);
            }
        }
        let norm = dot(&q[j], &q[j]).sqrt();
        if norm == T::zero() {
            return Err(Error::IllConditioned(f64::INFINITY));
        }
        r[j][j] = norm;
        q[j].iter_mut().for_each(|x| *x /= norm);
    }
    let mut rhs: Vec<T> = (0..p).map(|j| dot(&q[j], y)).collect();
    let mut resid = y.to_vec();
    for j in 0..p {
        resid.iter_mut().zip(&q[j]).for_each(|(x, &u)| *x -= rhs[j] * u);
    }
    for j in (0..p).rev() {
        for i in j + 1..p {
            let t = r[j][i] * rhs[i];
            rhs[j] -= t;
        }
        rhs[j] /= r[j][j];
    }
    Ok((rhs, dot(&resid, &resid)))
}

/// Condition number of the design matrix after scaling columns to unit norm.
fn condition_number<T: Real>(cols: &[Vec<T>]) -> Result<T> {
    let p = cols.len();
    let norms: Vec<T> = cols.iter().map(|c| c.iter().map(|&x| x * x).sum::<T>().sqrt()).collect();
    let g = SquareMatrix::from_fn(p, |i, j| {
        cols[i].iter().zip(&cols[j]).map(|(&a, &b)| a * b).sum::<T>() / (norms[i] * norms[j])
    });
    let ev = symmetric_eigenvalues(&g)?;
    let (lo, hi) = (ev[0], ev[p - 1]);
    if lo <= T::zero() {
        return Ok(T::infinity());
    }
    Ok((hi / lo).sqrt())
}

struct Window<T> {
    l: Vec<T>,
    s: Vec<T>,
}

fn window<T: Real>(points: &[(T, T)], min_l: T, needed: usize) -> Result<Window<T>> {
    if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
        return Err(Error::Domain("subsystem sizes must be strictly increasing".into()));
    }
    let kept: Vec<(T, T)> = points.iter().copied().filter(|&(l, _)| l >= min_l).collect();
    if kept.len() < needed {
        return Err(Error::Domain(format!("need at least {needed} points with L >= {min_l}, got {}", kept.len())));
    }
    if kept.iter().any(|&(l, s)| !(l > T::zero()) || !s.is_finite()) {
        return Err(Error::Domain("sizes must be positive and entropies finite".into()));
    }
    Ok(Window { l: kept.iter().map(|p| p.0).collect(), s: kept.iter().map(|p| p.1).collect() })
}

fn design<T: Real>(w: &Window<T>, exponent: T, free_log: bool) -> Vec<Vec<T>> {
    let mut cols = Vec::with_capacity(3);
    if free_log {
        cols.push(w.l.iter().map(|l| l.ln()).collect());
    }
    cols.push(vec![T::one(); w.l.len()]);
    cols.push(w.l.iter().map(|&l| l.powf(-exponent)).collect());
    cols
}

/// Fits `S = B ln L + c1 + c2 L^(-c3)` (or the same with `B` held fixed).
///
/// The exponent is located by a log-spaced scan followed by golden-section
/// refinement; the remaining coefficients come from linear least squares.
pub fn fit_log_plus_subleading<T: Real>(
    points: &[(T, T)],
    log_coef_fixed: Option<T>,
    options: &FitOptions<T>,
) -> Result<ScalingFit<T>> {
    let w = window(points, options.min_l, 6)?;
    let free = log_coef_fixed.is_none();
    let y: Vec<T> = match log_coef_fixed {
        Some(b) => w.l.iter().zip(&w.s).map(|(&l, &s)| s - b * l.ln()).collect(),
        None => w.s.clone(),
    };
    let rss = |e: T| -> T { least_squares(&design(&w, e, free), &y).map(|r| r.1).unwrap_or_else(|_| T::infinity()) };

    let (lo, hi) = (options.exp_min, options.exp_max);
    if !(lo > T::zero() && hi > lo) {
        return Err(Error::Config(format!("exponent range [{lo}, {hi}] invalid")));
    }
    let m = options.coarse_points.max(3);
    let ratio = (hi / lo).ln() / T::from_count(m - 1);
    let grid: Vec<T> = (0..m).map(|i| lo * (ratio * T::from_count(i)).exp()).collect();
    let values: Vec<T> = grid.iter().map(|&e| rss(e)).collect();
    let best = (0..m).fold(0, |b, i| if values[i] < values[b] { i } else { b });
    let (mut a, mut b) = (grid[best.saturating_sub(1)], grid[(best + 1).min(m - 1)]);
    let g = T::lit(0.5) * (T::lit(5.0).sqrt() - T::one());
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (rss(x1), rss(x2));
    for _ in 0..200 {
        if (b - a) <= T::lit(1e-12) * (a.abs() + b.abs()) {
            break;
        }
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = rss(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = rss(x2);
        }
    }
    let mut exponent = if f1 <= f2 { x1 } else { x2 };
    if values[best] < rss(exponent) {
        exponent = grid[best];
    }

    let cols = design(&w, exponent, free);
    let cond = condition_number(&cols)?;
    if !(cond <= options.max_condition) {
        return Err(Error::IllConditioned(cond.to_f64_lossy()));
    }
    let (coef, sse) = least_squares(&cols, &y)?;
    let (log_coef, rest) = match log_coef_fixed {
        Some(b) => (b, &coef[..]),
        None => (coef[0], &coef[1..]),
    };
    let n = w.l.len();
    Ok(ScalingFit {
        log_coef,
        offset: rest[0],
        correction_amp: rest[1],
        correction_exp: exponent,
        rms_residual: (sse / T::from_count(n)).sqrt(),
        l_range: (w.l[0], w.l[n - 1]),
        points_used: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit<T> {
    pub exponent: T,
    pub amplitude: T,
}

/// Ordinary least squares of `ln y` against `ln L`.
///
/// ```
/// let pts: Vec<(f64, f64)> = (1..=6).map(|i| { let l = (16 * i) as f64; (l, 7.0 * l.sqrt()) }).collect();
/// let fit = lrkitaev::analysis::fit_power_law_exponent(&pts).unwrap();
/// assert!((fit.exponent - 0.5).abs() < 1e-12 && (fit.amplitude - 7.0).abs() < 1e-10);
/// ```
pub fn fit_power_law_exponent<T: Real>(points: &[(T, T)]) -> Result<PowerLawFit<T>> {
    if points.len() < 5 {
        return Err(Error::Domain(format!("need at least 5 points, got {}", points.len())));
    }
    if let Some(&(l, y)) = points.iter().find(|&&(l, y)| !(l > T::zero() && y > T::zero())) {
        return Err(Error::NonPositive(format!("point ({l}, {y})")));
    }
    let xs: Vec<T> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<T> = points.iter().map(|p| p.1.ln()).collect();
    let (coef, _) = least_squares(&[vec![T::one(); xs.len()], xs], &ys)?;
    Ok(PowerLawFit { exponent: coef[1], amplitude: coef[0].exp() })
}

/// Ordinary least squares of `y` against `ln L`: returns (slope, intercept).
pub fn fit_log_slope<T: Real>(points: &[(T, T)]) -> Result<(T, T)> {
    if points.len() < 2 {
        return Err(Error::Domain(format!("need at least 2 points, got {}", points.len())));
    }
    if let Some(&(l, _)) = points.iter().find(|&&(l, _)| !(l > T::zero())) {
        return Err(Error::NonPositive(format!("size {l}")));
    }
    let xs: Vec<T> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<T> = points.iter().map(|p| p.1).collect();
    let (coef, _) = least_squares(&[vec![T::one(); xs.len()], xs], &ys)?;
    Ok((coef[1], coef[0]))
}

/// One parameter set of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint<T> {
    pub n_sites: usize,
    pub alpha1: T,
    pub alpha2: T,
    pub h: T,
    pub l: usize,
    pub nu: T,
    pub thermodynamic: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTask {
    /// Renyi entropy of the first `l` sites in the vacuum; gapless modes are left empty.
    Entropy,
    /// Logarithmic coefficient from the weak- or strong-regime machinery.
    FhCoeff,
    /// Winding number, sign invariant and critical fields.
    Phase,
}

impl SweepTask {
    pub fn columns(&self) -> &'static [&'static str] {
        match self {
            SweepTask::Entropy => &["S"],
            SweepTask::FhCoeff => &["B"],
            SweepTask::Phase => &["winding", "q_sign", "h_c0", "h_cpi"],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub point: GridPoint<T>,
    pub outcome: std::result::Result<Vec<T>, Error>,
}

fn integer_order<T: Real>(nu: T) -> Result<u32> {
    let r = nu.round();
    if r != nu || r < T::one() {
        return Err(Error::Domain(format!("coefficient sums need an integer order >= 1, got {nu}")));
    }
    Ok(r.to_u32().unwrap_or(u32::MAX))
}

fn evaluate<T: Real>(p: &GridPoint<T>, task: SweepTask) -> Result<Vec<T>> {
    match task {
        SweepTask::Entropy => {
            let params = ChainParams::new(p.n_sites, p.alpha1, p.alpha2, p.h, p.thermodynamic)?;
            let modes = Couplings::new(&params)?.modes()?;
            let pops = Populations::fill_gapless(&modes, T::zero())?;
            Ok(vec![entanglement_entropies(&params, p.l, &pops, &[p.nu])?[0].value])
        }
        SweepTask::FhCoeff => {
            let nu = integer_order(p.nu)?;
            let weak = |a: T| a >= T::one() && a <= T::lit(2.0);
            let strong = |a: T| a >= T::zero() && a < T::one();
            let c = if weak(p.alpha1) && weak(p.alpha2) {
                weak_regime_B(nu, p.alpha1, p.alpha2, p.h)?
            } else if strong(p.alpha1) && strong(p.alpha2) {
                strong_regime_B(nu, p.alpha1, p.alpha2, p.h, p.n_sites)?
            } else {
                return Err(Error::Domain(format!(
                    "no coefficient formula for exponents {}, {}",
                    p.alpha1, p.alpha2
                )));
            };
            Ok(vec![c.total_b])
        }
        SweepTask::Phase => {
            let params = ChainParams::new(p.n_sites, p.alpha1, p.alpha2, p.h, p.thermodynamic)?;
            let d = phase_diagnostics(&params)?;
            let w = d.winding_w.map_or(T::nan(), |w| T::from_count(w as usize));
            Ok(vec![w, T::from_int(d.q_sign as i64), d.h_c_zero, d.h_c_pi])
        }
    }
}

/// Evaluates the task at every point in parallel; rows keep input order and
/// failures stay attached to their row.
pub fn sweep<T: Real>(grid: &[GridPoint<T>], task: SweepTask) -> Vec<SweepRow<T>> {
    grid.par_iter().map(|p| SweepRow { point: *p, outcome: evaluate(p, task) }).collect()
}

/// A number with 17 significant digits.
pub fn format_sig17<T: Real>(x: T) -> String {
    let v = x.to_f64_lossy();
    if v.is_nan() {
        "nan".into()
    } else {
        format!("{v:.16e}")
    }
}

/// Writes sweep rows as CSV with a header and an error marker column.
pub fn write_sweep_csv<T: Real, W: Write>(rows: &[SweepRow<T>], task: SweepTask, out: &mut W) -> Result<()> {
    let cols = task.columns();
    writeln!(out, "n_sites,alpha1,alpha2,h,L,nu,{},status", cols.join(","))?;
    for r in rows {
        let p = &r.point;
        write!(
            out,
            "{},{},{},{},{},{},",
            p.n_sites,
            format_sig17(p.alpha1),
            format_sig17(p.alpha2),
            format_sig17(p.h),
            p.l,
            format_sig17(p.nu)
        )?;
        match &r.outcome {
            Ok(v) => {
                let vals: Vec<String> = v.iter().map(|&x| format_sig17(x)).collect();
                writeln!(out, "{},ok", vals.join(","))?;
            }
            Err(e) => {
                let blanks = vec![""; cols.len()].join(",");
                let msg = e.to_string().replace([',', '\n', '"'], " ");
                writeln!(out, "{blanks},error: {msg}")?;
            }
        }
    }
    Ok(())
}
