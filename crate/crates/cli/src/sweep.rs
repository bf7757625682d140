use std::f64::consts::TAU;
use std::path::PathBuf;

use clap::ValueEnum;
use pizza_core::bounds::bound_g;
use pizza_core::fourier::{g_series, TruncationPolicy};
use pizza_core::geometry::{inequity_direct, InequityMethod, PizzaConfig};
use pizza_core::PizzaError;
use rayon::prelude::*;

use crate::commands::sci;
use crate::error::CliError;

pub const HEADER: [&str; 8] = [
    "alpha", "a", "n", "g_series", "g_direct", "trunc_bound", "abs_diff", "bound_g",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    Alpha,
    A,
}

#[derive(Debug, Clone)]
pub struct SweepSpec {
    pub param: SweepParam,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    /// Value of whichever of alpha / a is not swept.
    pub fixed: f64,
    pub n: u32,
    pub output_path: PathBuf,
}

impl SweepSpec {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        param: SweepParam,
        start: f64,
        stop: f64,
        steps: usize,
        alpha: Option<f64>,
        a: Option<f64>,
        n: u32,
        output_path: PathBuf,
    ) -> Result<Self, CliError> {
        let fixed = match param {
            SweepParam::Alpha => a.ok_or_else(|| CliError::Usage("sweeping alpha needs --a".into()))?,
            SweepParam::A => {
                alpha.ok_or_else(|| CliError::Usage("sweeping a needs --alpha".into()))?
            }
        };
        let spec = Self {
            param,
            start,
            stop,
            steps,
            fixed,
            n,
            output_path,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if !(self.start < self.stop) {
            return Err(CliError::Usage(format!(
                "sweep needs start < stop, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.steps < 2 {
            return Err(CliError::Usage("sweep needs at least 2 steps".into()));
        }
        let in_range = match self.param {
            SweepParam::Alpha => self.start >= 0.0 && self.stop <= TAU,
            SweepParam::A => self.start > 0.0 && self.stop < 1.0,
        };
        if !in_range {
            return Err(CliError::Usage(format!(
                "sweep range [{}, {}] outside the domain of {:?}",
                self.start, self.stop, self.param
            )));
        }
        Ok(())
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(move |i| {
            if i == self.steps - 1 {
                self.stop
            } else {
                self.start + (self.stop - self.start) * i as f64 / last
            }
        })
    }

    fn point(&self, x: f64) -> (f64, f64) {
        match self.param {
            SweepParam::Alpha => (x, self.fixed),
            SweepParam::A => (self.fixed, x),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub a: f64,
    pub n: u32,
    pub g_series: f64,
    pub g_direct: f64,
    pub trunc_bound: f64,
    pub abs_diff: f64,
    pub bound_g: f64,
}

impl SweepRow {
    fn record(&self) -> [String; 8] {
        [
            sci(self.alpha),
            sci(self.a),
            self.n.to_string(),
            sci(self.g_series),
            sci(self.g_direct),
            sci(self.trunc_bound),
            sci(self.abs_diff),
            sci(self.bound_g),
        ]
    }
}

fn compute_row(alpha: f64, a: f64, n: u32, policy: &TruncationPolicy) -> Result<SweepRow, PizzaError> {
    let cfg = PizzaConfig::new(alpha, a, n)?;
    let g = g_series(&cfg, policy)?;
    let direct = inequity_direct(&cfg, InequityMethod::ClosedForm)?;
    Ok(SweepRow {
        alpha,
        a,
        n,
        g_series: g.value,
        g_direct: direct,
        trunc_bound: g.truncation_bound,
        abs_diff: (g.value - direct).abs(),
        bound_g: bound_g(a, n)?,
    })
}

/// Rows in sweep order; computed concurrently.
pub fn compute_sweep(spec: &SweepSpec, policy: &TruncationPolicy) -> Result<Vec<SweepRow>, CliError> {
    let points: Vec<(f64, f64)> = spec.values().map(|x| spec.point(x)).collect();
    points
        .par_iter()
        .enumerate()
        .map(|(i, &(alpha, a))| {
            compute_row(alpha, a, spec.n, policy).map_err(|source| CliError::Row {
                context: format!("row {} (alpha={alpha}, a={a}, n={})", i + 1, spec.n),
                source,
            })
        })
        .collect()
}

pub fn write_sweep(spec: &SweepSpec, policy: &TruncationPolicy) -> Result<usize, CliError> {
    let rows = compute_sweep(spec, policy)?;
    let mut w = csv::Writer::from_path(&spec.output_path)?;
    w.write_record(HEADER)?;
    for row in &rows {
        w.write_record(row.record())?;
    }
    w.flush()?;
    Ok(rows.len())
}
