//! Extremum of `f_a(alpha) = f(alpha, a, n)` over the cut angle and the
//! closed-form upper bounds on it and on `|g|`.
//!
//! `M_a = sum_m (4n / (pi m)) |P_m(a)|` is attained at `alpha = pi/2n`
//! (with sign `+` for `n = 3 mod 4`, `-` for `n = 1 mod 4`) and with the
//! opposite sign at `-pi/2n`.

use std::f64::consts::{PI, TAU};

use crate::error::{PizzaError, Result};
use crate::fourier::series::{
    check_series_n, combined_bound, frequency_terms, terms_used, FrequencyTerm,
};
use crate::fourier::{SeriesResult, TruncationPolicy};
use crate::summation::CompensatedSum;

/// Slack on comparisons whose exact form is a strict inequality.
pub const COMPARISON_MARGIN: f64 = 1e-15;

/// Samples per period `2pi/n` in the extremum scan.
pub const SCAN_POINTS: usize = 720;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremumReport {
    pub a: f64,
    pub n: u32,
    pub m_a: SeriesResult,
    /// `pi / 2n`.
    pub argmax_alpha: f64,
    pub sign_at_argmax: i8,
    pub f_at_argmax: SeriesResult,
    pub f_at_neg_argmax: SeriesResult,
    /// `a^(n-1) / (2 (1 - a^2)(1 - a^(2n)))`, the upper bound on `M_a`.
    pub bound_m: f64,
    /// `a * bound_m`, the upper bound on `|g|`.
    pub bound_g: f64,
    pub scan_max_abs: f64,
    pub scan_argmax_alpha: f64,
}

impl ExtremumReport {
    fn tolerance(&self, f: &SeriesResult) -> f64 {
        f.truncation_bound + self.m_a.truncation_bound + COMPARISON_MARGIN
    }

    /// `f(pi/2n) = sign * M_a` and `f(-pi/2n) = -sign * M_a` within the truncation bounds.
    pub fn argmax_certified(&self) -> bool {
        let s = f64::from(self.sign_at_argmax);
        (self.f_at_argmax.value - s * self.m_a.value).abs() <= self.tolerance(&self.f_at_argmax)
            && (self.f_at_neg_argmax.value + s * self.m_a.value).abs()
                <= self.tolerance(&self.f_at_neg_argmax)
    }

    /// No scanned `|f|` exceeds `M_a` beyond the truncation bounds.
    pub fn scan_within_extremum(&self) -> bool {
        self.scan_max_abs <= self.m_a.value + self.tolerance(&self.f_at_argmax)
    }

    /// The scan maximum lies within one grid step of `pi/2n` or `-pi/2n` (mod the period).
    pub fn scan_argmax_near_extremum(&self) -> bool {
        let period = TAU / f64::from(self.n);
        let step = period / SCAN_POINTS as f64;
        [self.argmax_alpha, period - self.argmax_alpha]
            .iter()
            .any(|&t| (self.scan_argmax_alpha - t).abs() <= step * (1.0 + 1e-9))
    }

    pub fn bound_holds(&self) -> bool {
        self.m_a.value > 0.0 && self.m_a.value <= self.bound_m - COMPARISON_MARGIN
    }

    pub fn certified(&self) -> bool {
        self.argmax_certified()
            && self.scan_within_extremum()
            && self.scan_argmax_near_extremum()
            && self.bound_holds()
    }
}

fn check_bound_domain(a: f64, n: u32) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(PizzaError::InvalidOffset(a));
    }
    check_series_n(n)
}

/// `a^(n-1) / (2 (1 - a^2)(1 - a^(2n)))`.
pub fn bound_m(a: f64, n: u32) -> Result<f64> {
    check_bound_domain(a, n)?;
    let nf = f64::from(n);
    Ok(a.powf(nf - 1.0) / (2.0 * (1.0 - a * a) * (1.0 - a.powf(2.0 * nf))))
}

/// `a^n / (2 (1 - a^2)(1 - a^(2n)))`, the uniform bound on `|g(alpha, a, n)|`.
pub fn bound_g(a: f64, n: u32) -> Result<f64> {
    Ok(a * bound_m(a, n)?)
}

/// Sign of `f` at `pi/2n`: `+1` for `n = 3 mod 4`, `-1` for `n = 1 mod 4`.
pub fn sign_at_argmax(n: u32) -> Result<i8> {
    check_series_n(n)?;
    Ok(if n % 4 == 3 { 1 } else { -1 })
}

fn m_a_from_terms(terms: &[FrequencyTerm], m_tail: f64) -> SeriesResult {
    let sum: CompensatedSum = terms.iter().map(|t| t.weight * t.p.abs()).collect();
    SeriesResult {
        value: sum.value(),
        truncation_bound: combined_bound(terms, m_tail),
        terms: terms_used(terms),
    }
}

fn f_from_terms(terms: &[FrequencyTerm], m_tail: f64, alpha: f64) -> SeriesResult {
    let sum: CompensatedSum = terms
        .iter()
        .map(|t| t.weight * t.p * (t.m as f64 * alpha).sin())
        .collect();
    SeriesResult {
        value: sum.value(),
        truncation_bound: combined_bound(terms, m_tail),
        terms: terms_used(terms),
    }
}

/// `M_a = sum_m (4n / (pi m)) |P_m(a)|`.
pub fn m_a(a: f64, n: u32, policy: &TruncationPolicy) -> Result<SeriesResult> {
    let (terms, m_tail) = frequency_terms(a, n, policy)?;
    Ok(m_a_from_terms(&terms, m_tail))
}

/// Computes `M_a`, evaluates `f` at `+-pi/2n`, and scans one period of `f`.
pub fn extremum(a: f64, n: u32, policy: &TruncationPolicy) -> Result<ExtremumReport> {
    let (terms, m_tail) = frequency_terms(a, n, policy)?;
    let m = m_a_from_terms(&terms, m_tail);
    let argmax_alpha = PI / (2.0 * f64::from(n));
    let period = TAU / f64::from(n);

    let mut scan_max_abs = 0.0;
    let mut scan_argmax_alpha = 0.0;
    for i in 0..SCAN_POINTS {
        let alpha = period * i as f64 / SCAN_POINTS as f64;
        let v = f_from_terms(&terms, m_tail, alpha).value.abs();
        if v > scan_max_abs {
            scan_max_abs = v;
            scan_argmax_alpha = alpha;
        }
    }

    Ok(ExtremumReport {
        a,
        n,
        argmax_alpha,
        sign_at_argmax: sign_at_argmax(n)?,
        f_at_argmax: f_from_terms(&terms, m_tail, argmax_alpha),
        f_at_neg_argmax: f_from_terms(&terms, m_tail, -argmax_alpha),
        bound_m: bound_m(a, n)?,
        bound_g: bound_g(a, n)?,
        m_a: m,
        scan_max_abs,
        scan_argmax_alpha,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::f_series_at;

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    #[test]
    fn bound_g_reference_value() {
        // 0.125 / (2 * 0.75 * (1 - 0.015625))
        let expected = 0.125 / (1.5 * 0.984_375);
        assert!((bound_g(0.5, 3).unwrap() - expected).abs() < 1e-16);
        assert!((bound_g(0.5, 3).unwrap() - 0.084_656_084_656).abs() < 1e-12);
        assert!((bound_m(0.5, 3).unwrap() - 0.169_312_169_312).abs() < 1e-12);
        assert!(bound_g(0.999, 3).unwrap() > bound_g(0.9, 3).unwrap());
        assert_eq!(bound_g(1.0, 3), Err(PizzaError::InvalidOffset(1.0)));
        assert_eq!(bound_g(0.0, 3), Err(PizzaError::InvalidOffset(0.0)));
        assert_eq!(bound_g(0.5, 4), Err(PizzaError::EvenN(4)));
    }

    #[test]
    fn signs_by_residue() {
        assert_eq!(sign_at_argmax(3).unwrap(), 1);
        assert_eq!(sign_at_argmax(5).unwrap(), -1);
        assert_eq!(sign_at_argmax(7).unwrap(), 1);
        assert_eq!(sign_at_argmax(9).unwrap(), -1);
    }

    #[test]
    fn m_a_below_bound_and_positive() {
        for n in [3, 5, 7, 9] {
            for i in 1..=19 {
                let a = 0.05 * f64::from(i);
                let m = m_a(a, n, &policy()).unwrap();
                assert!(m.value > 0.0);
                assert!(m.value <= bound_m(a, n).unwrap() - COMPARISON_MARGIN, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn m_a_monotone_in_offset() {
        let values: Vec<f64> = (1..=9)
            .map(|i| m_a(0.1 * f64::from(i), 3, &policy()).unwrap().value)
            .collect();
        assert!(values.windows(2).all(|w| w[0] < w[1]), "{values:?}");
    }

    #[test]
    fn m_a_equals_f_at_extremum() {
        let m = m_a(0.5, 3, &policy()).unwrap();
        let f = f_series_at(PI / 6.0, 0.5, 3, &policy()).unwrap();
        assert!((f.value - m.value).abs() <= f.truncation_bound + m.truncation_bound);
    }

    #[test]
    fn extremum_reports_certify() {
        for n in [3, 5, 7, 9] {
            for a in [0.3, 0.5, 0.7, 0.9] {
                let r = extremum(a, n, &policy()).unwrap();
                assert!(r.argmax_certified(), "a={a} n={n}");
                assert!(r.scan_within_extremum(), "a={a} n={n}");
                assert!(r.scan_argmax_near_extremum(), "a={a} n={n} at {}", r.scan_argmax_alpha);
                assert!(r.bound_holds(), "a={a} n={n}");
                assert_eq!(r.bound_g, a * r.bound_m);
            }
        }
    }
}
