use std::io::Write;

use pizza_core::bounds;
use pizza_core::fourier::{coefficient_closed_form, g_series, CoefficientKey, TruncationPolicy};
use pizza_core::geometry::{inequity_direct, InequityMethod, PizzaConfig};
use pizza_core::verify::{self, VerifyLevel, VerifyOptions};

use crate::error::CliError;

/// 17 significant digits; round-trips through `f64` parsing.
pub fn sci(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn policy(tol: f64) -> Result<TruncationPolicy, CliError> {
    Ok(TruncationPolicy::with_target(tol)?)
}

pub fn coeff(out: &mut impl Write, m: u64, j_max: u64, n: Option<u32>) -> Result<(), CliError> {
    if j_max == 0 {
        return Err(CliError::Usage("--j-max must be at least 1".into()));
    }
    let check = match n {
        Some(n) => CoefficientKey::for_slicing(m, 1, n),
        None => CoefficientKey::new(m, 1),
    };
    check.map_err(|e| CliError::Usage(e.to_string()))?;

    writeln!(out, "{:>4}  {:>28}  {:>24}  {:>4}  leading", "j", "c/pi", "c", "sign")?;
    for j in 1..=j_max {
        let c = coefficient_closed_form(CoefficientKey::new(m, j)?);
        writeln!(
            out,
            "{:>4}  {:>28}  {:>24}  {:>4}  {}",
            j,
            c.pi_multiple.to_string(),
            sci(c.value),
            match c.sign {
                0 => "0".to_string(),
                s => format!("{s:+}"),
            },
            if c.is_leading { "*" } else { "" }
        )?;
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Series,
    Quadrature,
    ClosedForm,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Series, Method::Quadrature, Method::ClosedForm];

    fn label(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Quadrature => "quadrature",
            Method::ClosedForm => "closed-form",
        }
    }
}

pub fn inequity(
    out: &mut impl Write,
    alpha: f64,
    a: f64,
    n: u32,
    methods: &[Method],
    policy: &TruncationPolicy,
) -> Result<(), CliError> {
    let cfg = PizzaConfig::new(alpha, a, n)?;
    let mut values = Vec::with_capacity(methods.len());
    for &method in methods {
        let value = match method {
            Method::Series => {
                let g = g_series(&cfg, policy)?;
                writeln!(
                    out,
                    "{:<12} g = {}  truncation_bound = {}",
                    method.label(),
                    sci(g.value),
                    sci(g.truncation_bound)
                )?;
                g.value
            }
            Method::Quadrature | Method::ClosedForm => {
                let m = if method == Method::Quadrature {
                    InequityMethod::Quadrature
                } else {
                    InequityMethod::ClosedForm
                };
                let g = inequity_direct(&cfg, m)?;
                writeln!(out, "{:<12} g = {}", method.label(), sci(g))?;
                g
            }
        };
        values.push((method, value));
    }
    for (i, &(mi, vi)) in values.iter().enumerate() {
        for &(mj, vj) in &values[i + 1..] {
            writeln!(
                out,
                "|{} - {}| = {}",
                mi.label(),
                mj.label(),
                sci((vi - vj).abs())
            )?;
        }
    }
    Ok(())
}

fn status(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn extremum(
    out: &mut impl Write,
    a: f64,
    n: u32,
    policy: &TruncationPolicy,
) -> Result<(), CliError> {
    let r = bounds::extremum(a, n, policy)?;
    writeln!(out, "M_a              = {}  (truncation bound {})", sci(r.m_a.value), sci(r.m_a.truncation_bound))?;
    writeln!(out, "argmax alpha     = {}  (pi/2n)", sci(r.argmax_alpha))?;
    writeln!(out, "sign at argmax   = {:+}", r.sign_at_argmax)?;
    writeln!(out, "f(pi/2n)         = {}", sci(r.f_at_argmax.value))?;
    writeln!(out, "f(-pi/2n)        = {}", sci(r.f_at_neg_argmax.value))?;
    writeln!(out, "scan max |f|     = {}  at alpha = {}", sci(r.scan_max_abs), sci(r.scan_argmax_alpha))?;
    writeln!(out, "bound on M_a     = {}", sci(r.bound_m))?;
    writeln!(out, "bound on |g|     = {}", sci(r.bound_g))?;
    writeln!(out, "extremum at pi/2n: {}", status(r.argmax_certified()))?;
    writeln!(out, "scan within M_a:   {}", status(r.scan_within_extremum() && r.scan_argmax_near_extremum()))?;
    writeln!(out, "M_a < bound:       {}", status(r.bound_holds()))?;
    if !r.bound_holds() {
        return Err(CliError::BoundViolated {
            m_a: r.m_a.value,
            bound: r.bound_m,
        });
    }
    if !(r.argmax_certified() && r.scan_within_extremum()) {
        return Err(CliError::Verification {
            suite: "extremum".into(),
            detail: format!("a={a} n={n}"),
        });
    }
    Ok(())
}

pub fn bound(
    out: &mut impl Write,
    a: f64,
    n: u32,
    policy: &TruncationPolicy,
) -> Result<(), CliError> {
    let bound_m = bounds::bound_m(a, n)?;
    let bound_g = bounds::bound_g(a, n)?;
    let m = bounds::m_a(a, n, policy)?;
    let sign = bounds::sign_at_argmax(n)?;
    let ok = m.value > 0.0 && m.value <= bound_m - bounds::COMPARISON_MARGIN;
    writeln!(out, "M_a            = {}", sci(m.value))?;
    writeln!(out, "argmax alpha   = {}", sci(std::f64::consts::PI / (2.0 * f64::from(n))))?;
    writeln!(out, "sign at argmax = {sign:+}")?;
    writeln!(out, "bound on M_a   = {}  a^(n-1) / (2 (1-a^2)(1-a^2n))", sci(bound_m))?;
    writeln!(out, "bound on |g|   = {}  a^n / (2 (1-a^2)(1-a^2n))", sci(bound_g))?;
    writeln!(out, "M_a < bound:     {}", status(ok))?;
    if ok {
        Ok(())
    } else {
        Err(CliError::BoundViolated {
            m_a: m.value,
            bound: bound_m,
        })
    }
}

pub fn verify(
    out: &mut impl Write,
    level: VerifyLevel,
    opts: &VerifyOptions,
) -> Result<(), CliError> {
    let report = verify::run(level, opts);
    for suite in &report.suites {
        writeln!(out, "{suite}")?;
    }
    match report.first_failure() {
        None => {
            writeln!(out, "all suites passed")?;
            Ok(())
        }
        Some((suite, detail)) => Err(CliError::Verification {
            suite: suite.to_string(),
            detail: detail.to_string(),
        }),
    }
}
