use crate::config::{FieldSpec, RunConfig};
use crate::table::{status, Cell, Table};
use lrkitaev::asymptotics::{single_discontinuity_approx, JumpLocation};
use lrkitaev::gaussian_state::entanglement_entropies;
use lrkitaev::oracle::{build_bcs_vacuum, exact_entropy, MAX_SITES};
use lrkitaev::{
    build_correlation_matrix, fit_log_plus_subleading, renyi_entropy, strong_regime_B, weak_regime_B, ChainParams,
    Couplings, FHCoefficient, FitOptions, Populations,
};
use rayon::prelude::*;
use std::io::Write;
use std::path::Path;

#[derive(Debug)]
pub enum CliError {
    Validation(String),
    Computation(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Computation(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "invalid configuration: {m}"),
            CliError::Computation(m) => write!(f, "computation failed: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub fn invalid<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Validation(e.to_string())
}

pub fn failed(e: lrkitaev::Error) -> CliError {
    match e {
        lrkitaev::Error::Io(m) => CliError::Io(m),
        other => CliError::Computation(other.to_string()),
    }
}

fn regime(a1: f64, a2: f64) -> Option<bool> {
    let weak = |a: f64| (1.0..=2.0).contains(&a);
    let strong = |a: f64| (0.0..1.0).contains(&a);
    if weak(a1) && weak(a2) {
        Some(true)
    } else if strong(a1) && strong(a2) {
        Some(false)
    } else {
        None
    }
}

pub fn spectrum(cfg: &RunConfig) -> Result<(), CliError> {
    let pairs = cfg.exponent_pairs().map_err(invalid)?;
    if pairs.len() != 1 {
        return Err(invalid("spectrum takes a single exponent pair"));
    }
    let (a1, a2) = pairs[0];
    let n = cfg.n_sites.ok_or_else(|| invalid("spectrum needs n_sites"))?;
    let field = cfg.single_field().map_err(invalid)?;
    let base = ChainParams::new(n, a1, a2, 0.0, cfg.thermodynamic).map_err(invalid)?;
    let h = field.resolve_on(n, a1, a2, cfg.thermodynamic).map_err(failed)?;
    let modes = Couplings::new(&base.with_h(h)).and_then(|c| c.modes()).map_err(failed)?;
    let mut t = Table::new(&["n", "k", "t_tilde", "delta_tilde", "omega", "theta", "phi"]);
    for m in modes {
        t.push(vec![
            Cell::from(m.index_n),
            m.k.into(),
            m.t_tilde.into(),
            m.delta_tilde.into(),
            m.omega.into(),
            m.theta.into(),
            m.phi.into(),
        ]);
    }
    t.emit(cfg.out.as_deref())?;
    Ok(())
}

/// Ring length for a subsystem of `l` sites: twice as long, and at least 4 sites.
pub fn default_ring(l: usize) -> usize {
    (2 * l).max(4)
}

/// Entropies of the first `l` sites for several orders; gapless modes stay empty.
pub fn entropy_point(
    n: usize,
    a1: f64,
    a2: f64,
    field: FieldSpec,
    thermodynamic: bool,
    l: usize,
    orders: &[f64],
) -> lrkitaev::Result<(f64, Vec<f64>)> {
    let h = field.resolve_on(n, a1, a2, thermodynamic)?;
    let params = ChainParams::new(n, a1, a2, h, thermodynamic)?;
    let modes = Couplings::new(&params)?.modes()?;
    let pops = Populations::fill_gapless(&modes, 0.0)?;
    let s = entanglement_entropies(&params, l, &pops, orders)?;
    Ok((h, s.into_iter().map(|e| e.value).collect()))
}

/// Analytic coefficient for an infinite chain, when one of the regimes applies.
pub fn analytic_coefficient(a1: f64, a2: f64, field: FieldSpec, nu: f64, n: usize) -> Option<f64> {
    if nu.fract() != 0.0 {
        return None;
    }
    let h = field.resolve_infinite(a1);
    match regime(a1, a2)? {
        true => weak_regime_B(nu as u32, a1, a2, h).ok().map(|c| c.total_b),
        false => strong_regime_B(nu as u32, a1, a2, h, n).ok().map(|c| c.total_b),
    }
}

struct ScanPoint {
    a1: f64,
    a2: f64,
    field: FieldSpec,
    l: usize,
    n: usize,
}

pub fn entropy_scan(cfg: &RunConfig) -> Result<(), CliError> {
    let pairs = cfg.exponent_pairs().map_err(invalid)?;
    let fields = cfg.fields().map_err(invalid)?;
    let sizes = cfg.sizes().map_err(invalid)?;
    let orders = cfg.orders(&[1.0]).map_err(invalid)?;
    let mut points = Vec::new();
    for &(a1, a2) in &pairs {
        for &field in &fields {
            for &l in &sizes {
                let n = cfg.n_sites.unwrap_or(default_ring(l));
                ChainParams::new(n, a1, a2, 0.0, cfg.thermodynamic).map_err(invalid)?;
                if l > n {
                    return Err(invalid(format!("subsystem {l} exceeds n_sites {n}")));
                }
                points.push(ScanPoint { a1, a2, field, l, n });
            }
        }
    }
    let results: Vec<lrkitaev::Result<(f64, Vec<f64>)>> = points
        .par_iter()
        .map(|p| entropy_point(p.n, p.a1, p.a2, p.field, cfg.thermodynamic, p.l, &orders))
        .collect();

    let mut header = vec!["alpha1", "alpha2", "h", "L", "n_sites", "nu", "S_numeric"];
    if cfg.with_prediction {
        header.extend(["B_analytic", "S_fh_prediction"]);
    }
    header.push("status");
    let mut t = Table::new(&header);
    for (gi, chunk) in points.chunks(sizes.len()).enumerate() {
        let res = &results[gi * sizes.len()..(gi + 1) * sizes.len()];
        for (oi, &nu) in orders.iter().enumerate() {
            let prediction = if cfg.with_prediction { Some(predictions(chunk, res, oi, nu)) } else { None };
            for (pi, (p, r)) in chunk.iter().zip(res).enumerate() {
                let mut row = vec![Cell::from(p.a1), p.a2.into()];
                match r {
                    Ok((h, s)) => row.extend([Cell::from(*h), p.l.into(), p.n.into(), nu.into(), s[oi].into()]),
                    Err(_) => row.extend([
                        Cell::Text(p.field.to_string()),
                        p.l.into(),
                        p.n.into(),
                        nu.into(),
                        Cell::Empty,
                    ]),
                }
                if let Some(pred) = &prediction {
                    row.push(pred[pi].0.into());
                    row.push(pred[pi].1.into());
                }
                row.push(status(&r.as_ref().map(|_| ())));
                t.push(row);
            }
        }
    }
    t.emit(cfg.out.as_deref())?;
    Ok(())
}

/// Analytic coefficient per row and `B ln L` plus a fitted non-logarithmic part
/// (when enough points are available for the fit, weak regime only).
fn predictions(
    group: &[ScanPoint],
    res: &[lrkitaev::Result<(f64, Vec<f64>)>],
    order: usize,
    nu: f64,
) -> Vec<(Option<f64>, Option<f64>)> {
    let coef: Vec<Option<f64>> = group.iter().map(|p| analytic_coefficient(p.a1, p.a2, p.field, nu, p.n)).collect();
    let weak = group.first().and_then(|p| regime(p.a1, p.a2)) == Some(true);
    let fit = match (weak, coef.first().copied().flatten()) {
        (true, Some(b)) => {
            let pts: Vec<(f64, f64)> = group
                .iter()
                .zip(res)
                .filter_map(|(p, r)| r.as_ref().ok().map(|(_, s)| (p.l as f64, s[order])))
                .collect();
            fit_log_plus_subleading(&pts, Some(b), &FitOptions::default()).ok()
        }
        _ => None,
    };
    group
        .iter()
        .zip(&coef)
        .map(|(p, &b)| {
            let l = p.l as f64;
            let pred = match (fit, b) {
                (Some(f), _) => Some(f.predict(l)),
                (None, Some(b)) => Some(b * l.ln()),
                _ => None,
            };
            (b, pred)
        })
        .collect()
}

struct CoeffPoint {
    a1: f64,
    a2: f64,
    h: f64,
    nu: u32,
    n: usize,
}

pub fn fh_coeff(cfg: &RunConfig) -> Result<(), CliError> {
    let pairs = cfg.exponent_pairs().map_err(invalid)?;
    let fields = cfg.fields().map_err(invalid)?;
    let orders = cfg.integer_orders(&[2.0]).map_err(invalid)?;
    let n = cfg.n_sites.unwrap_or(1024);
    let mut points = Vec::new();
    for &(a1, a2) in &pairs {
        if regime(a1, a2).is_none() {
            return Err(invalid(format!(
                "exponents ({a1}, {a2}) must both lie in [1,2] or both in [0,1)"
            )));
        }
        if regime(a1, a2) == Some(false) && (n < 2 || !n.is_multiple_of(2)) {
            return Err(invalid(format!("n_sites must be even, got {n}")));
        }
        for &field in &fields {
            for &nu in &orders {
                points.push(CoeffPoint { a1, a2, h: field.resolve_infinite(a1), nu, n });
            }
        }
    }
    let results: Vec<lrkitaev::Result<FHCoefficient<f64>>> = points
        .par_iter()
        .map(|p| {
            if regime(p.a1, p.a2) == Some(true) {
                weak_regime_B(p.nu, p.a1, p.a2, p.h)
            } else {
                strong_regime_B(p.nu, p.a1, p.a2, p.h, p.n)
            }
        })
        .collect();
    let singles: Vec<Option<f64>> = points
        .par_iter()
        .map(|p| {
            (regime(p.a1, p.a2) == Some(false) && p.a1 == p.a2)
                .then(|| single_discontinuity_approx(p.nu, p.a1, p.h).ok())
                .flatten()
        })
        .collect();
    let mut t = Table::new(&["alpha1", "alpha2", "h", "nu", "n_sites", "B_total", "c_eff", "B_single", "status"]);
    for ((p, r), single) in points.iter().zip(&results).zip(&singles) {
        let strong = regime(p.a1, p.a2) == Some(false);
        let b = r.as_ref().ok().map(|c| c.total_b);
        let nu = p.nu as f64;
        t.push(vec![
            p.a1.into(),
            p.a2.into(),
            p.h.into(),
            Cell::Int(p.nu as i64),
            if strong { Cell::from(p.n) } else { Cell::Empty },
            b.into(),
            b.map(|b| 6.0 * nu * b / (nu + 1.0)).into(),
            (*single).into(),
            status(&r.as_ref().map(|_| ())),
        ]);
    }
    t.emit(cfg.out.as_deref())?;
    if let Some(path) = &cfg.breakdown_out {
        let mut bt = Table::new(&["alpha1", "alpha2", "h", "nu", "location_kind", "location", "contribution"]);
        for (p, r) in points.iter().zip(&results) {
            if let Ok(c) = r {
                for &(loc, v) in &c.per_jump {
                    let (kind, at) = match loc {
                        JumpLocation::Momentum(k) => ("k", Cell::from(k)),
                        JumpLocation::Mode(m) => ("n", Cell::from(m)),
                    };
                    bt.push(vec![p.a1.into(), p.a2.into(), p.h.into(), Cell::Int(p.nu as i64), kind.into(), at, v.into()]);
                }
            }
        }
        bt.emit(Some(path))?;
    }
    Ok(())
}

pub const VERIFY_TOLERANCE: f64 = 1e-8;

pub fn default_verify_sets() -> Vec<(usize, f64, f64, f64)> {
    let sets = [(1.5, 1.5, 0.5), (1.5, 1.5, 2.0), (0.5, 0.5, 0.5), (1.8, 1.5, 1.2)];
    [8usize, 10].iter().flat_map(|&n| sets.iter().map(move |&(a1, a2, h)| (n, a1, a2, h))).collect()
}

pub fn verify(cfg: &RunConfig) -> Result<bool, CliError> {
    let custom = cfg.alpha1.is_some() || cfg.alpha2.is_some() || cfg.alpha_list.is_some() || cfg.h.is_some();
    let sets: Vec<(usize, f64, f64, f64)> = if custom {
        let pairs = cfg.exponent_pairs().map_err(invalid)?;
        let fields = cfg.fields().map_err(invalid)?;
        let sizes: Vec<usize> = cfg.n_sites.map_or_else(|| vec![8, 10], |n| vec![n]);
        let mut v = Vec::new();
        for &n in &sizes {
            for &(a1, a2) in &pairs {
                for f in &fields {
                    let h = f.resolve_on(n.min(MAX_SITES), a1, a2, cfg.thermodynamic).map_err(invalid)?;
                    v.push((n, a1, a2, h));
                }
            }
        }
        v
    } else {
        let n_override = cfg.n_sites;
        default_verify_sets().into_iter().map(|(n, a1, a2, h)| (n_override.unwrap_or(n), a1, a2, h)).collect()
    };
    let orders = cfg.orders(&[1.0, 2.0, 3.0]).map_err(invalid)?;
    for &(n, a1, a2, h) in &sets {
        if n > MAX_SITES {
            return Err(invalid(format!("system too large: verification is limited to {MAX_SITES} sites, got {n}")));
        }
        ChainParams::new(n, a1, a2, h, cfg.thermodynamic).map_err(invalid)?;
    }

    let reports: Vec<Result<f64, lrkitaev::Error>> = sets
        .par_iter()
        .map(|&(n, a1, a2, h)| {
            let params = ChainParams::new(n, a1, a2, h, cfg.thermodynamic)?;
            let state = build_bcs_vacuum(&params)?;
            let mut worst = 0.0_f64;
            for l in 1..=n / 2 {
                let mut corr = build_correlation_matrix(&params, l, &Populations::vacuum())?;
                if cfg.corrupt_entry {
                    corr = corr.with_perturbed_lag(0, 1e-3);
                }
                for &nu in &orders {
                    let g = renyi_entropy(&corr, nu)?.value;
                    let o = exact_entropy(&state, l, nu)?;
                    worst = worst.max((g - o).abs());
                }
            }
            Ok(worst)
        })
        .collect();

    let mut text = String::new();
    let mut all_ok = true;
    for (&(n, a1, a2, h), r) in sets.iter().zip(&reports) {
        let line = match r {
            Ok(w) => {
                let ok = *w < VERIFY_TOLERANCE;
                all_ok &= ok;
                format!(
                    "N={n} alpha1={a1} alpha2={a2} h={h}: max |S_gaussian - S_oracle| = {w:.3e} {}",
                    if ok { "PASS" } else { "FAIL" }
                )
            }
            Err(e) => {
                all_ok = false;
                format!("N={n} alpha1={a1} alpha2={a2} h={h}: ERROR {e}")
            }
        };
        text.push_str(&line);
        text.push('\n');
    }
    let failing = reports.iter().filter(|r| !matches!(r, Ok(w) if *w < VERIFY_TOLERANCE)).count();
    text.push_str(&format!(
        "verify: {} of {} parameter sets within {VERIFY_TOLERANCE:e}\n",
        sets.len() - failing,
        sets.len()
    ));
    write_text(cfg.out.as_deref(), &text)?;
    Ok(all_ok)
}

pub fn write_text(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}
