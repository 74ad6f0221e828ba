//! Figure data sets: each writes `fig_<id>.csv` and a gnuplot script that reads it.

use crate::commands::{analytic_coefficient, default_ring, entropy_point, invalid, CliError};
use crate::config::{FieldSpec, RunConfig};
use crate::table::{status, Cell, Table};
use lrkitaev::{
    effective_central_charge, fit_log_plus_subleading, single_discontinuity_approx, strong_regime_B, weak_regime_B,
    FitOptions,
};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    F3a,
    F3b,
    F3c,
    F4a,
    F4b,
    F4c,
    F5a,
    F5b,
    F6a,
    F6b,
    F7,
}

pub const ALL_FIGURES: [&str; 11] = ["3a", "3b", "3c", "4a", "4b", "4c", "5a", "5b", "6a", "6b", "7"];

impl FromStr for FigureId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        use FigureId::*;
        Ok(match s.trim() {
            "3a" => F3a,
            "3b" => F3b,
            "3c" => F3c,
            "4a" => F4a,
            "4b" => F4b,
            "4c" => F4c,
            "5a" => F5a,
            "5b" => F5b,
            "6a" => F6a,
            "6b" => F6b,
            "7" => F7,
            other => return Err(format!("unknown figure '{other}', expected one of {}", ALL_FIGURES.join(" "))),
        })
    }
}

impl FigureId {
    pub fn tag(self) -> &'static str {
        use FigureId::*;
        match self {
            F3a => "3a",
            F3b => "3b",
            F3c => "3c",
            F4a => "4a",
            F4b => "4b",
            F4c => "4c",
            F5a => "5a",
            F5b => "5b",
            F6a => "6a",
            F6b => "6b",
            F7 => "7",
        }
    }
}

struct Plot {
    x: &'static str,
    ys: Vec<&'static str>,
    group: Option<(&'static str, Vec<f64>)>,
    xlabel: &'static str,
    ylabel: &'static str,
}

impl Plot {
    fn script(&self, csv: &str) -> String {
        let mut s = format!(
            "set datafile separator ','\nset key autotitle columnhead\nset xlabel '{}'\nset ylabel '{}'\nplot \\\n",
            self.xlabel, self.ylabel
        );
        let mut series = Vec::new();
        for y in &self.ys {
            match &self.group {
                Some((col, values)) => {
                    for v in values {
                        series.push(format!(
                            "  '{csv}' using (column('{x}')):(abs(column('{col}') - {v}) < 1e-9 ? column('{y}') : 1/0) with linespoints title '{y} {col}={v}'",
                            x = self.x
                        ));
                    }
                }
                None => series.push(format!(
                    "  '{csv}' using (column('{x}')):(column('{y}')) with linespoints title '{y}'",
                    x = self.x
                )),
            }
        }
        s.push_str(&series.join(", \\\n"));
        s.push('\n');
        s
    }
}

/// Subsystem sizes to use; the finite ring is always twice as long.
fn sizes(cfg: &RunConfig) -> Result<Vec<usize>, CliError> {
    cfg.sizes().map_err(invalid)
}

fn h_grid() -> Vec<f64> {
    (0..=100).map(|i| (i as f64 - 20.0) / 40.0).collect()
}

fn critical_scan(cfg: &RunConfig, a1: f64, a2: f64, field: FieldSpec, nu: f64) -> Result<(Table, Plot), CliError> {
    let ls = sizes(cfg)?;
    let b = analytic_coefficient(a1, a2, field, nu, 0).unwrap_or(0.0);
    let raw: Vec<lrkitaev::Result<(f64, Vec<f64>)>> =
        ls.par_iter().map(|&l| entropy_point(default_ring(l), a1, a2, field, false, l, &[nu])).collect();
    let pts: Vec<(f64, f64)> =
        ls.iter().zip(&raw).filter_map(|(&l, r)| r.as_ref().ok().map(|(_, s)| (l as f64, s[0]))).collect();
    let opts = FitOptions { min_l: ls.iter().copied().min().unwrap_or(1).min(32) as f64, ..FitOptions::default() };
    let fit = fit_log_plus_subleading(&pts, Some(b), &opts).ok();
    let mut t = Table::new(&[
        "L",
        "lnL",
        "S_numeric",
        "B_analytic",
        "B_lnL",
        "fit_c1",
        "fit_c2",
        "fit_c3",
        "S_fit",
        "S_minus_subleading",
        "status",
    ]);
    for (&l, r) in ls.iter().zip(&raw) {
        let lf = l as f64;
        let s = r.as_ref().ok().map(|(_, s)| s[0]);
        let sub = fit.map(|f| f.offset + f.correction_amp * lf.powf(-f.correction_exp));
        t.push(vec![
            l.into(),
            lf.ln().into(),
            s.into(),
            b.into(),
            (b * lf.ln()).into(),
            fit.map(|f| f.offset).into(),
            fit.map(|f| f.correction_amp).into(),
            fit.map(|f| f.correction_exp).into(),
            fit.map(|f| f.predict(lf)).into(),
            s.zip(sub).map(|(s, c)| s - c).into(),
            status(&r.as_ref().map(|_| ())),
        ]);
    }
    let plot = Plot {
        x: "lnL",
        ys: vec!["S_numeric", "S_fit", "S_minus_subleading", "B_lnL"],
        group: None,
        xlabel: "ln L",
        ylabel: "S",
    };
    Ok((t, plot))
}

fn strong_field_sweep(cfg: &RunConfig, with_single: bool) -> Result<(Table, Plot), CliError> {
    let n = cfg.n_sites.unwrap_or(1024);
    let alphas = cfg.alpha_list.clone().unwrap_or_else(|| vec![0.25, 0.5, 0.75]);
    let fields: Vec<f64> = match &cfg.h {
        Some(h) => h.iter().map(|f| f.resolve_infinite(0.0)).collect(),
        None => h_grid(),
    };
    if n < 2 || !n.is_multiple_of(2) {
        return Err(invalid(format!("n_sites must be even, got {n}")));
    }
    if alphas.iter().any(|a| !(0.0..1.0).contains(a)) {
        return Err(invalid("exponents must lie in [0,1)"));
    }
    let jobs: Vec<(f64, f64)> = alphas.iter().flat_map(|&a| fields.iter().map(move |&h| (a, h))).collect();
    let rows: Vec<(lrkitaev::Result<f64>, Option<f64>)> = jobs
        .par_iter()
        .map(|&(a, h)| {
            let b = strong_regime_B(2, a, a, h, n).map(|c| c.total_b);
            let single = if with_single { single_discontinuity_approx(2, a, h).ok() } else { None };
            (b, single)
        })
        .collect();
    let mut header = vec!["alpha", "h", "n_sites", "B2"];
    if with_single {
        header.push("B2_single");
    }
    header.push("status");
    let mut t = Table::new(&header);
    for (&(a, h), (b, single)) in jobs.iter().zip(&rows) {
        let mut row = vec![Cell::from(a), h.into(), n.into(), b.as_ref().ok().copied().into()];
        if with_single {
            row.push((*single).into());
        }
        row.push(status(&b.as_ref().map(|_| ())));
        t.push(row);
    }
    let ys = if with_single { vec!["B2", "B2_single"] } else { vec!["B2"] };
    Ok((t, Plot { x: "h", ys, group: Some(("alpha", alphas)), xlabel: "h", ylabel: "B_2" }))
}

fn zero_field_scan(cfg: &RunConfig) -> Result<(Table, Plot), CliError> {
    let ls = sizes(cfg)?;
    let alphas = cfg.alpha_list.clone().unwrap_or_else(|| vec![0.1, 0.25, 0.4]);
    if alphas.iter().any(|a| !(0.0..1.0).contains(a)) {
        return Err(invalid("exponents must lie in [0,1)"));
    }
    let jobs: Vec<(f64, usize)> = alphas.iter().flat_map(|&a| ls.iter().map(move |&l| (a, l))).collect();
    let rows: Vec<lrkitaev::Result<(f64, f64)>> = jobs
        .par_iter()
        .map(|&(a, l)| {
            let (_, s) = entropy_point(default_ring(l), a, a, FieldSpec::Value(0.0), false, l, &[2.0])?;
            let b = strong_regime_B(2, a, a, 0.0, default_ring(l))?.total_b;
            Ok((s[0], b))
        })
        .collect();
    let mut t = Table::new(&["alpha", "L", "lnL", "S_numeric", "B2", "B2_lnL", "status"]);
    for (&(a, l), r) in jobs.iter().zip(&rows) {
        let lnl = (l as f64).ln();
        let ok = r.as_ref().ok();
        t.push(vec![
            a.into(),
            l.into(),
            lnl.into(),
            ok.map(|v| v.0).into(),
            ok.map(|v| v.1).into(),
            ok.map(|v| v.1 * lnl).into(),
            status(&r.as_ref().map(|_| ())),
        ]);
    }
    Ok((
        t,
        Plot { x: "lnL", ys: vec!["S_numeric", "B2_lnL"], group: Some(("alpha", alphas)), xlabel: "ln L", ylabel: "S_2" },
    ))
}

fn weak_alpha_grid(cfg: &RunConfig) -> Result<Vec<f64>, CliError> {
    let alphas = cfg.alpha_list.clone().unwrap_or_else(|| (0..=50).map(|i| 1.0 + i as f64 / 50.0).collect());
    if alphas.iter().any(|a| !(1.0..=2.0).contains(a)) {
        return Err(invalid("exponents must lie in [1,2]"));
    }
    Ok(alphas)
}

fn weak_coefficients(cfg: &RunConfig, central_charge: bool) -> Result<(Table, Plot), CliError> {
    let alphas = weak_alpha_grid(cfg)?;
    let short = |nu: f64| (nu + 1.0) / (12.0 * nu);
    let (s2, s3) = (short(2.0), short(3.0));
    let rows: Vec<lrkitaev::Result<(f64, f64)>> = alphas
        .par_iter()
        .map(|&a| Ok((weak_regime_B(2, a, a, 1.0)?.total_b, weak_regime_B(3, a, a, 1.0)?.total_b)))
        .collect();
    let (mut t, plot) = if central_charge {
        (
            Table::new(&["alpha", "c_eff_2", "c_eff_3", "c_short_range", "status"]),
            Plot { x: "alpha", ys: vec!["c_eff_2", "c_eff_3", "c_short_range"], group: None, xlabel: "alpha", ylabel: "c_eff" },
        )
    } else {
        (
            Table::new(&["alpha", "B2", "B3", "B2_short_range", "B3_short_range", "status"]),
            Plot {
                x: "alpha",
                ys: vec!["B2", "B3", "B2_short_range", "B3_short_range"],
                group: None,
                xlabel: "alpha",
                ylabel: "B",
            },
        )
    };
    for (&a, r) in alphas.iter().zip(&rows) {
        let ok = r.as_ref().ok();
        let st = status(&r.as_ref().map(|_| ()));
        if central_charge {
            t.push(vec![
                a.into(),
                ok.and_then(|v| effective_central_charge(2, v.0).ok()).into(),
                ok.and_then(|v| effective_central_charge(3, v.1).ok()).into(),
                0.5.into(),
                st,
            ]);
        } else {
            t.push(vec![a.into(), ok.map(|v| v.0).into(), ok.map(|v| v.1).into(), s2.into(), s3.into(), st]);
        }
    }
    Ok((t, plot))
}

/// Computes one figure and writes its CSV and plot script into `dir`.
pub fn reproduce(cfg: &RunConfig, figure: &str) -> Result<Vec<PathBuf>, CliError> {
    let id: FigureId = figure.parse().map_err(invalid)?;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    if dir.exists() && !dir.is_dir() {
        return Err(invalid(format!("{} is not a directory", dir.display())));
    }
    use FigureId::*;
    let (table, plot) = match id {
        F3a => critical_scan(cfg, 1.5, 1.8, FieldSpec::CritZero, 1.0)?,
        F3b => critical_scan(cfg, 1.8, 1.5, FieldSpec::CritZero, 1.0)?,
        F3c => critical_scan(cfg, 1.5, 1.5, FieldSpec::CritZero, 2.0)?,
        F4a => critical_scan(cfg, 1.5, 1.8, FieldSpec::CritPi, 1.0)?,
        F4b => critical_scan(cfg, 1.8, 1.5, FieldSpec::CritPi, 1.0)?,
        F4c => critical_scan(cfg, 1.5, 1.5, FieldSpec::CritPi, 1.0)?,
        F5a => strong_field_sweep(cfg, false)?,
        F5b => zero_field_scan(cfg)?,
        F6a => weak_coefficients(cfg, false)?,
        F6b => weak_coefficients(cfg, true)?,
        F7 => strong_field_sweep(cfg, true)?,
    };
    std::fs::create_dir_all(&dir)?;
    let csv_name = format!("fig_{}.csv", id.tag());
    let csv = dir.join(&csv_name);
    let gp = dir.join(format!("fig_{}.gp", id.tag()));
    table.emit(Some(&csv))?;
    std::fs::write(&gp, plot.script(&csv_name))?;
    Ok(vec![csv, gp])
}

pub fn describe(paths: &[PathBuf]) -> String {
    paths.iter().map(|p: &PathBuf| Path::display(p).to_string()).collect::<Vec<_>>().join("\n") + "\n"
}
