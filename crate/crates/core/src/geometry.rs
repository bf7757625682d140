//! The off-center pizza: a unit circle centred at `(a, 0)`, cut by `2n` rays
//! from the origin at angles `alpha + k*pi/n`.
//!
//! Slices are numbered counterclockwise from 1, slice `k` spanning
//! `[alpha + (k-1)*pi/n, alpha + k*pi/n]`. The inequity is the total area of
//! the even-numbered slices minus that of the odd-numbered ones.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{PizzaError, Result};
use crate::quadrature::{integrate_fn, DEFAULT_ABS_TOL};

/// Geometry of one slicing: first-ray angle, offset of the cut point from the
/// centre, and half the number of slices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PizzaConfig {
    alpha: f64,
    a: f64,
    n: u32,
}

impl PizzaConfig {
    /// Builds a configuration, reducing `alpha` into `[0, 2pi)`.
    ///
    /// `a = 0` (centred cuts) and even `n` are accepted here; the series
    /// routines reject them separately.
    pub fn new(alpha: f64, a: f64, n: u32) -> Result<Self> {
        if !alpha.is_finite() {
            return Err(PizzaError::InvalidAngle(alpha));
        }
        check_offset(a)?;
        if n == 0 {
            return Err(PizzaError::InvalidSliceCount(n));
        }
        Ok(Self {
            alpha: normalize_angle(alpha),
            a,
            n,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn slice_count(&self) -> u32 {
        2 * self.n
    }

    /// Angular width `pi/n` of one slice as seen from the cut point.
    pub fn slice_angle(&self) -> f64 {
        PI / f64::from(self.n)
    }

    /// Angular interval `[theta1, theta2]` of slice `k` (1-based), unreduced.
    pub fn slice_bounds(&self, k: u32) -> Result<(f64, f64)> {
        if k == 0 || k > self.slice_count() {
            return Err(PizzaError::InvalidSliceIndex {
                k,
                max: self.slice_count(),
            });
        }
        let w = self.slice_angle();
        Ok((
            self.alpha + f64::from(k - 1) * w,
            self.alpha + f64::from(k) * w,
        ))
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(alpha, self.a, self.n)
    }
}

fn normalize_angle(alpha: f64) -> f64 {
    let r = alpha.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs.
    if r >= TAU {
        0.0
    } else {
        r
    }
}

pub(crate) fn check_offset(a: f64) -> Result<()> {
    if (0.0..1.0).contains(&a) {
        Ok(())
    } else {
        Err(PizzaError::InvalidOffset(a))
    }
}

/// Distance from the cut point to the crust along direction `theta`.
pub fn radius(theta: f64, a: f64) -> Result<f64> {
    check_offset(a)?;
    Ok(radius_unchecked(theta, a))
}

fn radius_unchecked(theta: f64, a: f64) -> f64 {
    let s = theta.sin();
    a * theta.cos() + (1.0 - a * a * s * s).sqrt()
}

/// Antiderivative of `r(theta)^2`.
///
/// `|a sin theta| < 1` for every admissible `a`, so `asin` stays on its
/// principal branch and `F` is continuous in `theta` without unwrapping.
pub fn area_antiderivative(theta: f64, a: f64) -> f64 {
    let s = theta.sin();
    let root = (1.0 - a * a * s * s).sqrt();
    theta + 0.5 * a * a * (2.0 * theta).sin() + a * s * root + (a * s).asin()
}

/// Area of slice `k` from the closed-form antiderivative.
pub fn slice_area_closed_form(cfg: &PizzaConfig, k: u32) -> Result<f64> {
    let (t1, t2) = cfg.slice_bounds(k)?;
    Ok(0.5 * (area_antiderivative(t2, cfg.a) - area_antiderivative(t1, cfg.a)))
}

/// Area of slice `k` by adaptive quadrature of `r^2 / 2`.
pub fn slice_area_quadrature(cfg: &PizzaConfig, k: u32) -> Result<f64> {
    slice_area_quadrature_tol(cfg, k, DEFAULT_ABS_TOL)
}

pub fn slice_area_quadrature_tol(cfg: &PizzaConfig, k: u32, abs_tol: f64) -> Result<f64> {
    let (t1, t2) = cfg.slice_bounds(k)?;
    let a = cfg.a;
    let r = integrate_fn(
        |t| {
            let r = radius_unchecked(t, a);
            r * r
        },
        t1,
        t2,
        2.0 * abs_tol,
    )?;
    Ok(0.5 * r.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InequityMethod {
    Quadrature,
    ClosedForm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SliceAreaReport {
    /// `areas[k - 1]` is the area of slice `k`.
    pub areas: Vec<f64>,
    pub even_total: f64,
    pub odd_total: f64,
    pub inequity: f64,
}

impl SliceAreaReport {
    pub fn total(&self) -> f64 {
        self.areas.iter().sum()
    }
}

pub fn slice_areas(cfg: &PizzaConfig, method: InequityMethod) -> Result<SliceAreaReport> {
    let areas = (1..=cfg.slice_count())
        .map(|k| match method {
            InequityMethod::Quadrature => slice_area_quadrature(cfg, k),
            InequityMethod::ClosedForm => slice_area_closed_form(cfg, k),
        })
        .collect::<Result<Vec<_>>>()?;
    let even_total: f64 = areas.iter().skip(1).step_by(2).sum();
    let odd_total: f64 = areas.iter().step_by(2).sum();
    Ok(SliceAreaReport {
        areas,
        even_total,
        odd_total,
        inequity: even_total - odd_total,
    })
}

/// Even-slice area minus odd-slice area, computed directly from the slices.
pub fn inequity_direct(cfg: &PizzaConfig, method: InequityMethod) -> Result<f64> {
    Ok(slice_areas(cfg, method)?.inequity)
}

/// `+1` on even-numbered intervals, `-1` on odd ones. At an endpoint the
/// value of the interval starting there is returned.
pub fn step_function(theta: f64, cfg: &PizzaConfig) -> i8 {
    let offset = normalize_angle(theta - cfg.alpha);
    let idx = (offset / cfg.slice_angle()).floor() as u32;
    // idx is 0-based, so an odd idx is an even-numbered slice.
    if idx.min(cfg.slice_count() - 1) % 2 == 1 {
        1
    } else {
        -1
    }
}

/// `int_0^{2pi} s(theta) e^{-i m theta} dtheta`, summed exactly interval by
/// interval from the antiderivative `i e^{-i m theta} / m`.
pub fn step_fourier_coefficient_numeric(m: i64, cfg: &PizzaConfig) -> Result<Complex64> {
    if m == 0 {
        return Err(PizzaError::ZeroFrequency);
    }
    let mf = m as f64;
    let factor = Complex64::new(0.0, 1.0 / mf);
    let cis = |t: f64| Complex64::from_polar(1.0, -mf * t);
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..=cfg.slice_count() {
        let (t1, t2) = cfg.slice_bounds(k)?;
        let piece = factor * (cis(t2) - cis(t1));
        if k % 2 == 0 {
            acc += piece;
        } else {
            acc -= piece;
        }
    }
    Ok(acc)
}

/// Closed form of the step-function coefficient: `(-4n / (m i)) e^{-i m alpha}`
/// when `m` is an odd multiple of `n`, zero otherwise.
pub fn step_fourier_coefficient_closed_form(m: i64, cfg: &PizzaConfig) -> Result<Complex64> {
    if m == 0 {
        return Err(PizzaError::ZeroFrequency);
    }
    let n = i64::from(cfg.n);
    if m % n != 0 || (m / n) % 2 == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mf = m as f64;
    // -4n/(m i) = 4n i / m
    let scale = Complex64::new(0.0, 4.0 * n as f64 / mf);
    Ok(scale * Complex64::from_polar(1.0, -mf * cfg.alpha))
}
