//! Series evaluation of `P_m(a)`, `f(alpha, a, n)` and `g = a f` with
//! rigorous bounds on the omitted tails.
//!
//! Tail bounds rest on `|c_{2j}(m)| <= pi/8` and `c_{2j}(m) = 0` for
//! `2j < m - 1`:
//!
//! * `P_m` truncated after `x^{2J}`: tail `<= (pi/8) a^{2J+2} / (1 - a^2)`.
//! * `f` truncated before frequency `m*`: tail
//!   `<= (n / 2m*) a^{m*-1} / ((1 - a^2)(1 - a^{2n}))`, a geometric series
//!   in `a^{2n}`.
//!
//! Half of the target error goes to the frequency tail. The other half is
//! split evenly across the retained frequencies, each `P_m` receiving an
//! allotment scaled by the inverse of its weight `4n / (pi m)`.

use std::f64::consts::PI;

use super::coefficients::{check_odd_multiple, coefficient_row};
use crate::error::{PizzaError, Result};
use crate::geometry::PizzaConfig;
use crate::summation::CompensatedSum;

/// Offsets at or above this are rejected: every tail bound degenerates as a -> 1.
pub const NEAR_SINGULAR_OFFSET: f64 = 0.999;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationPolicy {
    pub target_abs_error: f64,
    pub max_j_per_m: usize,
    pub max_m_terms: usize,
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        Self {
            target_abs_error: 1e-12,
            max_j_per_m: 10_000,
            max_m_terms: 1_000,
        }
    }
}

impl TruncationPolicy {
    pub fn with_target(target_abs_error: f64) -> Result<Self> {
        let p = Self {
            target_abs_error,
            ..Self::default()
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.target_abs_error > 0.0 && self.target_abs_error.is_finite() {
            Ok(())
        } else {
            Err(PizzaError::InvalidTolerance(self.target_abs_error))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesResult {
    pub value: f64,
    /// Upper bound on the magnitude of every omitted term, summed.
    pub truncation_bound: f64,
    pub terms: TermsUsed,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TermsUsed {
    /// `(m, number of j-terms summed for P_m)`, ascending in `m`.
    pub per_frequency: Vec<(u64, usize)>,
}

impl TermsUsed {
    pub fn frequencies(&self) -> usize {
        self.per_frequency.len()
    }

    pub fn total_j_terms(&self) -> usize {
        self.per_frequency.iter().map(|&(_, j)| j).sum()
    }
}

pub(crate) fn check_series_offset(a: f64) -> Result<()> {
    if !(a > 0.0 && a < 1.0) {
        return Err(PizzaError::InvalidOffset(a));
    }
    if a >= NEAR_SINGULAR_OFFSET {
        return Err(PizzaError::NearSingular(a));
    }
    Ok(())
}

pub(crate) fn check_series_n(n: u32) -> Result<()> {
    match n {
        1 => Err(PizzaError::NEqualsOne),
        n if n % 2 == 0 => Err(PizzaError::EvenN(n)),
        _ => Ok(()),
    }
}

/// Bound on `sum_{j > J} |c_{2j}(m)| a^{2j}` given the last included power `2J`.
fn j_tail_bound(a: f64, last_j: u64) -> f64 {
    PI / 8.0 * a.powf(2.0 * last_j as f64 + 2.0) / (1.0 - a * a)
}

/// Bound on the contribution of all frequencies `m >= first_omitted` to `f`.
pub(crate) fn m_tail_bound(a: f64, n: u32, first_omitted: u64) -> f64 {
    let nf = f64::from(n);
    let mf = first_omitted as f64;
    nf / (2.0 * mf) * a.powf(mf - 1.0) / ((1.0 - a * a) * (1.0 - a.powf(2.0 * nf)))
}

fn weight(n: u32, m: u64) -> f64 {
    4.0 * f64::from(n) / (PI * m as f64)
}

#[derive(Debug, Clone, Copy)]
struct PartialSeries {
    value: f64,
    tail: f64,
    j_terms: usize,
}

/// Sums `P_m(a)` from the leading term until the tail bound is at most `allotment`.
fn sum_p_m(a: f64, m: u64, allotment: f64, max_j: usize) -> Result<PartialSeries> {
    let lead = (m - 1) / 2;
    let a2 = a * a;
    let mut j_terms = 1usize;
    while j_tail_bound(a, lead + j_terms as u64 - 1) > allotment {
        j_terms += 1;
        if j_terms > max_j {
            return Err(PizzaError::BudgetExhausted(format!(
                "P_{m}({a}) needs more than {max_j} terms for tail {allotment:e}"
            )));
        }
    }
    let coeffs = coefficient_row(m, j_terms);
    let mut power = a.powf(2.0 * lead as f64);
    let mut sum = CompensatedSum::new();
    for c in coeffs {
        sum.add(c * power);
        power *= a2;
    }
    Ok(PartialSeries {
        value: sum.value(),
        tail: j_tail_bound(a, lead + j_terms as u64 - 1),
        j_terms,
    })
}

/// `P_m(a) = sum_j c_{2j}(m) a^{2j}` with the whole target error allotted to its tail.
pub fn p_m(a: f64, m: u64, policy: &TruncationPolicy) -> Result<SeriesResult> {
    policy.validate()?;
    check_series_offset(a)?;
    if m < 3 || m % 2 == 0 {
        return Err(PizzaError::InvalidCoefficientKey { m, j: 1 });
    }
    let s = sum_p_m(a, m, policy.target_abs_error, policy.max_j_per_m)?;
    Ok(SeriesResult {
        value: s.value,
        truncation_bound: s.tail,
        terms: TermsUsed {
            per_frequency: vec![(m, s.j_terms)],
        },
    })
}

/// [`p_m`] with `m` checked to be an odd multiple of `n`.
pub fn p_m_for(a: f64, m: u64, n: u32, policy: &TruncationPolicy) -> Result<SeriesResult> {
    check_series_n(n)?;
    check_odd_multiple(m, n)?;
    p_m(a, m, policy)
}

/// One evaluated frequency of the `f` expansion.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FrequencyTerm {
    pub m: u64,
    pub weight: f64,
    pub p: f64,
    pub p_tail: f64,
    pub j_terms: usize,
}

/// Frequency terms `m = n, 3n, ...` and the frequency-tail bound, meeting `policy`.
pub(crate) fn frequency_terms(
    a: f64,
    n: u32,
    policy: &TruncationPolicy,
) -> Result<(Vec<FrequencyTerm>, f64)> {
    policy.validate()?;
    check_series_n(n)?;
    check_series_offset(a)?;

    let half_target = 0.5 * policy.target_abs_error;
    let n64 = u64::from(n);
    let mut count = 1usize;
    while m_tail_bound(a, n, (2 * count as u64 + 1) * n64) > half_target {
        count += 1;
        if count > policy.max_m_terms {
            return Err(PizzaError::BudgetExhausted(format!(
                "more than {} frequencies needed at a = {a}, n = {n}",
                policy.max_m_terms
            )));
        }
    }
    let m_tail = m_tail_bound(a, n, (2 * count as u64 + 1) * n64);

    let mut terms = Vec::with_capacity(count);
    for i in 0..count as u64 {
        let m = (2 * i + 1) * n64;
        let w = weight(n, m);
        let allotment = half_target / (count as f64 * w);
        let s = sum_p_m(a, m, allotment, policy.max_j_per_m)?;
        terms.push(FrequencyTerm {
            m,
            weight: w,
            p: s.value,
            p_tail: s.tail,
            j_terms: s.j_terms,
        });
    }
    Ok((terms, m_tail))
}

pub(crate) fn combined_bound(terms: &[FrequencyTerm], m_tail: f64) -> f64 {
    m_tail + terms.iter().map(|t| t.weight * t.p_tail).sum::<f64>()
}

pub(crate) fn terms_used(terms: &[FrequencyTerm]) -> TermsUsed {
    TermsUsed {
        per_frequency: terms.iter().map(|t| (t.m, t.j_terms)).collect(),
    }
}

/// `f(alpha, a, n) = sum_m (4n / (pi m)) P_m(a) sin(m alpha)`.
pub fn f_series(cfg: &PizzaConfig, policy: &TruncationPolicy) -> Result<SeriesResult> {
    f_series_at(cfg.alpha(), cfg.a(), cfg.n(), policy)
}

/// `f` at a raw angle, skipping the reduction into `[0, 2pi)`.
///
/// Used where the sign symmetry `f(-alpha) = -f(alpha)` is checked term by term.
pub fn f_series_at(alpha: f64, a: f64, n: u32, policy: &TruncationPolicy) -> Result<SeriesResult> {
    if !alpha.is_finite() {
        return Err(PizzaError::InvalidAngle(alpha));
    }
    let (terms, m_tail) = frequency_terms(a, n, policy)?;
    let value: CompensatedSum = terms
        .iter()
        .map(|t| t.weight * t.p * (t.m as f64 * alpha).sin())
        .collect();
    Ok(SeriesResult {
        value: value.value(),
        truncation_bound: combined_bound(&terms, m_tail),
        terms: terms_used(&terms),
    })
}

/// The inequity `g = a f` with the bound scaled accordingly.
pub fn g_series(cfg: &PizzaConfig, policy: &TruncationPolicy) -> Result<SeriesResult> {
    let f = f_series(cfg, policy)?;
    Ok(SeriesResult {
        value: cfg.a() * f.value,
        truncation_bound: cfg.a() * f.truncation_bound,
        terms: f.terms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::coefficients::{coefficient_numeric, frequency_sign, CoefficientKey};
    use crate::geometry::{inequity_direct, InequityMethod};

    fn policy() -> TruncationPolicy {
        TruncationPolicy::default()
    }

    fn cfg(alpha: f64, a: f64, n: u32) -> PizzaConfig {
        PizzaConfig::new(alpha, a, n).unwrap()
    }

    #[test]
    fn p3_leading_behaviour() {
        for a in [1e-2, 1e-3, 1e-4] {
            let p = p_m(a, 3, &policy()).unwrap();
            assert!((p.value / (a * a) - PI / 8.0).abs() < 2.0 * a * a);
        }
    }

    #[test]
    fn p_m_sign_and_bound() {
        for m in [3u64, 5, 7, 9, 15, 21, 27] {
            for i in 1..20 {
                let a = 0.05 * f64::from(i);
                let p = p_m(a, m, &policy()).unwrap();
                let s = if p.value > 0.0 { 1 } else { -1 };
                assert_eq!(s, frequency_sign(m), "m={m} a={a}");
                assert!(p.truncation_bound <= 1e-12);
                let bound = PI / 8.0 * a.powf(m as f64 - 1.0) / (1.0 - a * a);
                assert!(p.value.abs() <= bound, "m={m} a={a}");
            }
        }
    }

    #[test]
    fn p_m_matches_numeric_coefficients() {
        // Oracle: coefficients from quadrature, summed over the same index range.
        let a: f64 = 0.5;
        let p = p_m(a, 3, &policy()).unwrap();
        let j_terms = p.terms.per_frequency[0].1 as u64;
        let mut oracle = 0.0;
        for j in 1..=j_terms {
            let c = coefficient_numeric(CoefficientKey::new(3, j).unwrap(), 1e-15).unwrap();
            oracle += c * a.powi(2 * j as i32);
        }
        assert!((p.value - oracle).abs() < 1e-11, "{} vs {oracle}", p.value);
    }

    #[test]
    fn domain_errors() {
        assert_eq!(p_m(0.0, 3, &policy()), Err(PizzaError::InvalidOffset(0.0)));
        assert_eq!(p_m(0.9995, 3, &policy()), Err(PizzaError::NearSingular(0.9995)));
        assert_eq!(f_series(&cfg(0.1, 0.5, 4), &policy()), Err(PizzaError::EvenN(4)));
        assert_eq!(f_series(&cfg(0.1, 0.5, 1), &policy()), Err(PizzaError::NEqualsOne));
        assert_eq!(
            f_series(&cfg(0.1, 0.0, 3), &policy()),
            Err(PizzaError::InvalidOffset(0.0))
        );
        assert!(p_m_for(0.5, 5, 3, &policy()).is_err());
        assert!(p_m_for(0.5, 10, 5, &policy()).is_err());
        assert!(p_m_for(0.5, 15, 5, &policy()).is_ok());
        assert!(TruncationPolicy::with_target(0.0).is_err());
    }

    #[test]
    fn budget_exhaustion() {
        let tight = TruncationPolicy {
            max_j_per_m: 5,
            ..policy()
        };
        assert!(matches!(p_m(0.9, 3, &tight), Err(PizzaError::BudgetExhausted(_))));
        let few = TruncationPolicy {
            max_m_terms: 2,
            ..policy()
        };
        assert!(matches!(
            f_series(&cfg(0.3, 0.9, 3), &few),
            Err(PizzaError::BudgetExhausted(_))
        ));
    }

    #[test]
    fn zero_at_zero_angle() {
        let r = f_series(&cfg(0.0, 0.7, 5), &policy()).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn bounds_respect_target() {
        for a in [0.1, 0.5, 0.9, 0.95] {
            for n in [3, 5, 9] {
                let r = f_series(&cfg(0.3, a, n), &policy()).unwrap();
                assert!(r.truncation_bound <= 1e-12, "a={a} n={n}");
            }
        }
    }

    #[test]
    fn matches_geometry_oracle() {
        let r = f_series(&cfg(0.7, 0.4, 5), &policy()).unwrap();
        let direct = inequity_direct(&cfg(0.7, 0.4, 5), InequityMethod::Quadrature).unwrap();
        assert!((r.value - direct / 0.4).abs() < 1e-9);

        let g = g_series(&cfg(0.7, 0.5, 3), &policy()).unwrap();
        let direct = inequity_direct(&cfg(0.7, 0.5, 3), InequityMethod::ClosedForm).unwrap();
        assert!((g.value - direct).abs() <= g.truncation_bound + 1e-9);
    }

    #[test]
    fn half_period_antisymmetry_and_period() {
        let n = 3;
        let p = policy();
        for i in 0..20 {
            let alpha = 0.31 * f64::from(i);
            let g0 = g_series(&cfg(alpha, 0.6, n), &p).unwrap();
            let g1 = g_series(&cfg(alpha + PI / 3.0, 0.6, n), &p).unwrap();
            let g2 = g_series(&cfg(alpha + 2.0 * PI / 3.0, 0.6, n), &p).unwrap();
            let tol = 2.0 * g0.truncation_bound;
            assert!((g1.value + g0.value).abs() <= tol);
            assert!((g2.value - g0.value).abs() <= tol);
        }
    }
}
