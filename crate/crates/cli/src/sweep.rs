#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::fmt;
use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use osc_ops::reference::{DerivativeCase, QuadratureCase};
use osc_ops::Scheme;

use crate::error::CliError;

/// Envelope constant of the quadrature error, `±C/ω`.
pub const ENVELOPE: f64 = 0.0025;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "d1_2pt")]
    D1TwoPoint,
    #[value(name = "d1_4pt")]
    D1FourPoint,
    #[value(name = "d2_3pt")]
    D2ThreePoint,
    Quad,
}

impl Target {
    pub fn scheme(self) -> Option<Scheme> {
        match self {
            Target::D1TwoPoint => Some(Scheme::D1TwoPoint),
            Target::D1FourPoint => Some(Scheme::D1FourPoint),
            Target::D2ThreePoint => Some(Scheme::D2ThreePoint),
            Target::Quad => None,
        }
    }

    pub fn name(self) -> &'static str {
        self.scheme().map_or("quad", Scheme::name)
    }

    pub fn default_omega_max(self) -> f64 {
        match self {
            Target::Quad => 500.0,
            _ => 80.0,
        }
    }

    pub fn default_scaling(self) -> Scaling {
        match self {
            Target::Quad => Scaling::None,
            _ => Scaling::Linear,
        }
    }

    pub fn header(self) -> [&'static str; 4] {
        let last = if self == Target::Quad { "envelope" } else { "bound" };
        ["omega", "abs_error", "scaled_error", last]
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Scaling {
    None,
    Linear,
    Quadratic,
}

impl Scaling {
    /// Divide by `ω` or `ω²` once `|ω| > 1`.
    pub fn apply(self, omega: f64, value: f64) -> f64 {
        if omega.abs() <= 1.0 {
            return value;
        }
        match self {
            Scaling::None => value,
            Scaling::Linear => value / omega,
            Scaling::Quadratic => value / (omega * omega),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub target: Target,
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_step: f64,
    pub scaling: Scaling,
    pub output_path: PathBuf,
    pub emit_gnuplot: bool,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        let (lo, hi, step) = (self.omega_min, self.omega_max, self.omega_step);
        if !lo.is_finite() || !hi.is_finite() || lo > hi {
            return Err(CliError::Usage(format!("need finite omega-min <= omega-max, got [{lo}, {hi}]")));
        }
        if !(step > 0.0) || !step.is_finite() {
            return Err(CliError::Usage(format!("omega-step must be positive, got {step}")));
        }
        if self.target == Target::Quad && self.scaling == Scaling::Quadratic {
            return Err(CliError::Usage("quadratic scaling is not defined for target quad".into()));
        }
        Ok(())
    }

    /// `ω_k = omega_min + k·step` up to `omega_max`.
    pub fn omegas(&self) -> Vec<f64> {
        let n = ((self.omega_max - self.omega_min) / self.omega_step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.omega_min + k as f64 * self.omega_step).collect()
    }

    pub fn gnuplot_path(&self) -> PathBuf {
        self.output_path.with_extension("gp")
    }
}

/// One CSV row. `extra` is the bound for derivatives and the envelope for quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub omega: f64,
    pub abs_error: f64,
    pub scaled_error: f64,
    pub extra: Option<f64>,
}

pub fn compute_row(target: Target, scaling: Scaling, omega: f64) -> Result<Row, CliError> {
    let (abs_error, extra) = match target.scheme() {
        Some(scheme) => {
            let (e, report) = DerivativeCase::error(scheme, omega)?;
            (e, Some(report.absolute_error_bound))
        }
        None => {
            let (d, _) = QuadratureCase::error(omega)?;
            (d, (omega.abs() > 1.0).then(|| ENVELOPE / omega.abs()))
        }
    };
    Ok(Row { omega, abs_error, scaled_error: scaling.apply(omega, abs_error), extra })
}

pub fn compute(cfg: &SweepConfig) -> Result<Vec<Row>, CliError> {
    cfg.omegas().into_iter().map(|w| compute_row(cfg.target, cfg.scaling, w)).collect()
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv(path: &Path, target: Target, rows: &[Row]) -> Result<(), CliError> {
    let csv_err = |source| CliError::Csv { path: path.display().to_string(), source };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(path)
        .map_err(csv_err)?;
    w.write_record(target.header()).map_err(csv_err)?;
    for r in rows {
        let extra = r.extra.map(num).unwrap_or_default();
        w.write_record([num(r.omega), num(r.abs_error), num(r.scaled_error), extra])
            .map_err(csv_err)?;
    }
    w.flush().map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

pub fn gnuplot_script(cfg: &SweepConfig) -> String {
    let data = cfg.output_path.display();
    let png = cfg.output_path.with_extension("png");
    let ylabel = match cfg.scaling {
        Scaling::None => "error",
        Scaling::Linear => "error / omega",
        Scaling::Quadratic => "error / omega^2",
    };
    let mut s = String::new();
    s.push_str("set terminal pngcairo size 900,600\n");
    s.push_str(&format!("set output '{}'\n", png.display()));
    s.push_str("set datafile separator ','\n");
    s.push_str("set key top right\n");
    s.push_str(&format!("set title '{} error sweep'\n", cfg.target));
    s.push_str("set xlabel 'omega'\n");
    s.push_str(&format!("set ylabel '{ylabel}'\n"));
    s.push_str(&format!("set xrange [{}:{}]\n", cfg.omega_min, cfg.omega_max));
    match cfg.target {
        Target::Quad => s.push_str(&format!(
            "plot '{data}' using 1:3 with lines title 'Delta', \\\n     '{data}' using 1:4 with lines dt 2 lc 'black' title '+0.0025/omega', \\\n     '{data}' using 1:(-$4) with lines dt 2 lc 'black' notitle\n"
        )),
        _ if cfg.scaling == Scaling::None => s.push_str(&format!(
            "plot '{data}' using 1:3 with lines title 'error', \\\n     '{data}' using 1:4 with lines dt 2 lc 'black' title 'bound', \\\n     '{data}' using 1:(-$4) with lines dt 2 lc 'black' notitle\n"
        )),
        _ => s.push_str(&format!("plot '{data}' using 1:3 with lines title 'scaled error'\n")),
    }
    s
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<usize, CliError> {
    cfg.validate()?;
    let rows = compute(cfg)?;
    write_csv(&cfg.output_path, cfg.target, &rows)?;
    if cfg.emit_gnuplot {
        let path = cfg.gnuplot_path();
        let io_err = |source| CliError::Io { path: path.display().to_string(), source };
        File::create(&path)
            .and_then(|mut f| f.write_all(gnuplot_script(cfg).as_bytes()))
            .map_err(io_err)?;
    }
    Ok(rows.len())
}
