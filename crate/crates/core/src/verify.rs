//! Grid and random-sample cross-checks of every module against its
//! independent oracle.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bounds::{self, COMPARISON_MARGIN};
use crate::error::Result;
use crate::fourier::{
    coefficient_closed_form, coefficient_numeric, f_series_at, frequency_sign, g_series,
    CoefficientKey, TruncationPolicy,
};
use crate::geometry::{
    inequity_direct, step_fourier_coefficient_closed_form, step_fourier_coefficient_numeric,
    InequityMethod, PizzaConfig,
};

const SEED: u64 = 0x5eed_1e55;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyLevel {
    Quick,
    Full,
}

type CoefficientFn = dyn Fn(CoefficientKey) -> f64 + Sync;

/// Knobs for a verification run.
pub struct VerifyOptions {
    pub policy: TruncationPolicy,
    /// Replaces the closed-form coefficient in the agreement suite. Test hook.
    pub coefficient_override: Option<Box<CoefficientFn>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            policy: TruncationPolicy::default(),
            coefficient_override: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SuiteSummary {
    pub name: &'static str,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
    pub elapsed: Duration,
}

impl SuiteSummary {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<24} {:>6} checks  {:>4} failed  {:>8.2?}  {}",
            self.name,
            self.checks,
            self.failures,
            self.elapsed,
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub suites: Vec<SuiteSummary>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteSummary::passed)
    }

    pub fn first_failure(&self) -> Option<(&'static str, &str)> {
        self.suites
            .iter()
            .find_map(|s| s.first_failure.as_deref().map(|msg| (s.name, msg)))
    }
}

/// Outcome of one check: `Ok(())` on pass, `Err(description)` on failure.
type Check = std::result::Result<(), String>;

fn check(ok: bool, describe: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(describe())
    }
}

fn from_result<T>(r: Result<T>, context: impl FnOnce() -> String) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{}: {e}", context()))
}

fn summarize(name: &'static str, started: Instant, results: Vec<Check>) -> SuiteSummary {
    let checks = results.len();
    let mut failures = 0;
    let mut first_failure = None;
    for r in results {
        if let Err(msg) = r {
            failures += 1;
            first_failure.get_or_insert(msg);
        }
    }
    SuiteSummary {
        name,
        checks,
        failures,
        first_failure,
        elapsed: started.elapsed(),
    }
}

fn offsets(level: VerifyLevel) -> Vec<f64> {
    match level {
        VerifyLevel::Quick => vec![0.2, 0.5, 0.8],
        VerifyLevel::Full => (1..=9).map(|i| f64::from(i) / 10.0).collect(),
    }
}

fn odd_ns(level: VerifyLevel) -> Vec<u32> {
    match level {
        VerifyLevel::Quick => vec![3, 5],
        VerifyLevel::Full => vec![3, 5, 7, 9],
    }
}

fn alphas(level: VerifyLevel) -> Vec<f64> {
    let count = match level {
        VerifyLevel::Quick => 4,
        VerifyLevel::Full => 16,
    };
    // Offset by a quarter step so no sample sits on a zero of every sin(m alpha).
    (0..count)
        .map(|i| TAU * (f64::from(i) + 0.25) / f64::from(count))
        .collect()
}

/// Closed-form vs quadrature coefficients, plus the sign, vanishing, and pi/8 structure.
pub fn coefficient_suite(level: VerifyLevel, opts: &VerifyOptions) -> SuiteSummary {
    let started = Instant::now();
    let (ms, j_max): (Vec<u64>, u64) = match level {
        VerifyLevel::Quick => (vec![3, 5, 7, 9, 15], 8),
        VerifyLevel::Full => (vec![3, 5, 7, 9, 15, 21, 25, 35], 12),
    };
    let keys: Vec<CoefficientKey> = ms
        .iter()
        .flat_map(|&m| (1..=j_max).map(move |j| CoefficientKey::new(m, j).expect("valid key")))
        .collect();
    let results = keys
        .par_iter()
        .map(|&key| {
            let closed = coefficient_closed_form(key);
            let value = match &opts.coefficient_override {
                Some(f) => f(key),
                None => closed.value,
            };
            let (m, j) = (key.m(), key.j());
            let numeric = from_result(coefficient_numeric(key, 1e-14), || {
                format!("coefficient_numeric(m={m}, j={j})")
            })?;
            check((value - numeric).abs() < 1e-10, || {
                format!("c_{}({m}): closed form {value:e} vs quadrature {numeric:e}", 2 * j)
            })?;
            check(value.abs() <= PI / 8.0, || {
                format!("|c_{}({m})| = {value:e} exceeds pi/8", 2 * j)
            })?;
            if 2 * j < m - 1 {
                check(value == 0.0, || {
                    format!("c_{}({m}) = {value:e} should vanish below the leading term", 2 * j)
                })
            } else {
                let s = if value > 0.0 { 1 } else { -1 };
                check(s == frequency_sign(m), || {
                    format!("c_{}({m}) = {value:e} has the wrong sign", 2 * j)
                })
            }
        })
        .collect();
    summarize("coefficient agreement", started, results)
}

/// Exact step-function Fourier coefficients against their closed form.
pub fn step_coefficient_suite(level: VerifyLevel) -> SuiteSummary {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut results = Vec::new();
    for n in odd_ns(level) {
        for _ in 0..8 {
            let alpha = rng.random_range(0.0..TAU);
            let cfg = PizzaConfig::new(alpha, 0.5, n).expect("valid config");
            for m in 1..=10 * i64::from(n) {
                let r = (|| {
                    let numeric = from_result(step_fourier_coefficient_numeric(m, &cfg), || {
                        format!("step coefficient m={m}")
                    })?;
                    let closed = from_result(step_fourier_coefficient_closed_form(m, &cfg), || {
                        format!("step closed form m={m}")
                    })?;
                    check((numeric - closed).norm() < 1e-12, || {
                        format!("n={n} alpha={alpha} m={m}: {numeric} vs {closed}")
                    })
                })();
                results.push(r);
            }
        }
    }
    summarize("step coefficients", started, results)
}

/// Series inequity against both direct-geometry oracles.
pub fn oracle_suite(level: VerifyLevel, opts: &VerifyOptions) -> SuiteSummary {
    let started = Instant::now();
    let points: Vec<(f64, u32, f64)> = offsets(level)
        .into_iter()
        .flat_map(|a| {
            odd_ns(level)
                .into_iter()
                .flat_map(move |n| alphas(level).into_iter().map(move |al| (a, n, al)))
        })
        .collect();
    let results = points
        .par_iter()
        .map(|&(a, n, alpha)| {
            let ctx = || format!("alpha={alpha} a={a} n={n}");
            let cfg = from_result(PizzaConfig::new(alpha, a, n), ctx)?;
            let g = from_result(g_series(&cfg, &opts.policy), ctx)?;
            for method in [InequityMethod::Quadrature, InequityMethod::ClosedForm] {
                let direct = from_result(inequity_direct(&cfg, method), ctx)?;
                check((g.value - direct).abs() <= g.truncation_bound + 1e-9, || {
                    format!("{}: series {} vs {method:?} {direct}", ctx(), g.value)
                })?;
            }
            Ok(())
        })
        .collect();
    summarize("oracle equivalence", started, results)
}

/// Headline bounds and extremum certification.
pub fn bound_suite(level: VerifyLevel, opts: &VerifyOptions) -> SuiteSummary {
    let started = Instant::now();
    let mut results = Vec::new();

    let extremum_offsets: Vec<f64> = match level {
        VerifyLevel::Quick => vec![0.3, 0.7],
        VerifyLevel::Full => vec![0.3, 0.5, 0.7, 0.9],
    };
    for &a in &extremum_offsets {
        for n in odd_ns(level) {
            results.push((|| {
                let ctx = || format!("a={a} n={n}");
                let r = from_result(bounds::extremum(a, n, &opts.policy), ctx)?;
                check(r.argmax_certified(), || {
                    format!("{}: f(pi/2n) = {} but M_a = {}", ctx(), r.f_at_argmax.value, r.m_a.value)
                })?;
                check(r.scan_within_extremum(), || {
                    format!("{}: scan max {} above M_a {}", ctx(), r.scan_max_abs, r.m_a.value)
                })?;
                check(r.scan_argmax_near_extremum(), || {
                    format!("{}: scan max at alpha = {}", ctx(), r.scan_argmax_alpha)
                })?;
                check(r.bound_holds(), || {
                    format!("{}: M_a = {} not below {}", ctx(), r.m_a.value, r.bound_m)
                })
            })());
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let samples = match level {
        VerifyLevel::Quick => 100,
        VerifyLevel::Full => 1000,
    };
    let cases: Vec<(f64, f64, u32)> = (0..samples)
        .map(|_| {
            let n = [3, 5, 7][rng.random_range(0..3)];
            (rng.random_range(0.0..TAU), rng.random_range(0.01..0.99), n)
        })
        .collect();
    results.par_extend(cases.par_iter().map(|&(alpha, a, n)| {
        let ctx = || format!("alpha={alpha} a={a} n={n}");
        let cfg = from_result(PizzaConfig::new(alpha, a, n), ctx)?;
        let g = from_result(inequity_direct(&cfg, InequityMethod::ClosedForm), ctx)?;
        let bound = from_result(bounds::bound_g(a, n), ctx)?;
        check(g.abs() < bound, || format!("{}: |g| = {} not below {bound}", ctx(), g.abs()))
    }));
    summarize("bounds", started, results)
}

/// Oddness and periodicity of the series; half-period antisymmetry of the inequity.
pub fn symmetry_suite(level: VerifyLevel, opts: &VerifyOptions) -> SuiteSummary {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let count = match level {
        VerifyLevel::Quick => 40,
        VerifyLevel::Full => 200,
    };
    let cases: Vec<(f64, f64, u32)> = (0..count)
        .map(|_| {
            let n = [3, 5, 7, 9][rng.random_range(0..4)];
            (rng.random_range(0.0..TAU), rng.random_range(0.05..0.95), n)
        })
        .collect();
    let results = cases
        .par_iter()
        .map(|&(alpha, a, n)| symmetry_case(alpha, a, n, &opts.policy))
        .collect();
    summarize("symmetry", started, results)
}

/// The three symmetry relations at one point.
pub fn symmetry_case(alpha: f64, a: f64, n: u32, policy: &TruncationPolicy) -> Check {
    let ctx = || format!("alpha={alpha} a={a} n={n}");
    let period = TAU / f64::from(n);
    let f0 = from_result(f_series_at(alpha, a, n, policy), ctx)?;
    let f_neg = from_result(f_series_at(-alpha, a, n, policy), ctx)?;
    let f_shift = from_result(f_series_at(alpha + period, a, n, policy), ctx)?;
    let tol = 2.0 * f0.truncation_bound + COMPARISON_MARGIN;
    check((f_neg.value + f0.value).abs() <= tol, || {
        format!("{}: f(-alpha) = {} vs -f(alpha) = {}", ctx(), f_neg.value, -f0.value)
    })?;
    check((f_shift.value - f0.value).abs() <= tol, || {
        format!("{}: f(alpha + 2pi/n) = {} vs {}", ctx(), f_shift.value, f0.value)
    })?;
    let cfg = from_result(PizzaConfig::new(alpha, a, n), ctx)?;
    let g0 = from_result(g_series(&cfg, policy), ctx)?;
    let g_half = from_result(
        g_series(&from_result(cfg.with_alpha(alpha + period / 2.0), ctx)?, policy),
        ctx,
    )?;
    check(
        (g_half.value + g0.value).abs() <= 2.0 * g0.truncation_bound + COMPARISON_MARGIN,
        || format!("{}: g(alpha + pi/n) = {} vs -g(alpha) = {}", ctx(), g_half.value, -g0.value),
    )
}

/// Equal areas whenever the slice count is a multiple of four.
pub fn pizza_theorem_suite(level: VerifyLevel) -> SuiteSummary {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let per_n = match level {
        VerifyLevel::Quick => 10,
        VerifyLevel::Full => 50,
    };
    let mut results = Vec::new();
    for n in [4u32, 6, 8] {
        for _ in 0..per_n {
            let alpha = rng.random_range(0.0..TAU);
            let a = rng.random_range(0.0..0.99);
            results.push((|| {
                let ctx = || format!("alpha={alpha} a={a} n={n}");
                let cfg = from_result(PizzaConfig::new(alpha, a, n), ctx)?;
                for method in [InequityMethod::Quadrature, InequityMethod::ClosedForm] {
                    let g = from_result(inequity_direct(&cfg, method), ctx)?;
                    check(g.abs() < 1e-10, || format!("{}: {method:?} inequity {g}", ctx()))?;
                }
                Ok(())
            })());
        }
    }
    summarize("pizza theorem", started, results)
}

pub fn run(level: VerifyLevel, opts: &VerifyOptions) -> VerifyReport {
    VerifyReport {
        suites: vec![
            coefficient_suite(level, opts),
            step_coefficient_suite(level),
            oracle_suite(level, opts),
            bound_suite(level, opts),
            symmetry_suite(level, opts),
            pizza_theorem_suite(level),
        ],
    }
}
