//! Power-series coefficients `c_{2j}(m)` of `P_m`.
//!
//! Each coefficient is `pi` times an exact rational:
//!
//! ```text
//! c_{2j}(m) = (-1)^((m+1)/2) (pi / 4^j) |C(1/2, j)| [C(2j, (2j-m+1)/2) - C(2j, (2j-m-1)/2)]
//! ```
//!
//! It is zero below the leading index `2j = m - 1` and otherwise carries the
//! sign `(-1)^((m+1)/2)`.

use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::binomial::{binomial, half_binomial};
use crate::error::{PizzaError, Result};
use crate::quadrature::integrate_fn;

/// Index of `c_{2j}(m)`: the `x^{2j}` term of `P_m`, `m` an odd frequency `>= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoefficientKey {
    m: u64,
    j: u64,
}

impl CoefficientKey {
    pub fn new(m: u64, j: u64) -> Result<Self> {
        if m < 3 || m % 2 == 0 || j == 0 {
            return Err(PizzaError::InvalidCoefficientKey { m, j });
        }
        Ok(Self { m, j })
    }

    /// Key for frequency `m`, which must be an odd multiple of `n`.
    pub fn for_slicing(m: u64, j: u64, n: u32) -> Result<Self> {
        check_odd_multiple(m, n)?;
        Self::new(m, j)
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn is_leading(&self) -> bool {
        2 * self.j == self.m - 1
    }
}

pub(crate) fn check_odd_multiple(m: u64, n: u32) -> Result<()> {
    let n64 = u64::from(n);
    if n64 == 0 || m == 0 || m % n64 != 0 || (m / n64) % 2 == 0 {
        return Err(PizzaError::NotOddMultiple { m, n });
    }
    Ok(())
}

/// Sign `(-1)^((m+1)/2)` shared by all nonzero coefficients of `P_m`.
pub fn frequency_sign(m: u64) -> i8 {
    if ((m + 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientValue {
    pub key: CoefficientKey,
    /// Exact rational `q` with `c_{2j}(m) = q * pi`.
    pub pi_multiple: BigRational,
    pub value: f64,
    pub sign: i8,
    pub is_leading: bool,
}

impl fmt::Display for CoefficientValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pi_multiple.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}*pi", self.pi_multiple)
        }
    }
}

fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Exact closed-form coefficient.
pub fn coefficient_closed_form(key: CoefficientKey) -> CoefficientValue {
    let CoefficientKey { m, j } = key;
    let two_j = 2 * j;
    // (2j - m +/- 1) / 2 are integers since m is odd.
    let upper = (two_j as i64 - m as i64 + 1) / 2;
    let lower = upper - 1;
    let diff = BigInt::from(binomial(two_j, upper)) - BigInt::from(binomial(two_j, lower));

    let magnitude = half_binomial(j).abs() / BigRational::from_integer(BigInt::from(4).pow(j as u32));
    let mut pi_multiple = magnitude * BigRational::from_integer(diff);
    if frequency_sign(m) < 0 {
        pi_multiple = -pi_multiple;
    }

    let sign = if pi_multiple.is_zero() {
        0
    } else if pi_multiple.is_positive() {
        1
    } else {
        -1
    };
    CoefficientValue {
        key,
        value: rational_to_f64(&pi_multiple) * PI,
        pi_multiple,
        sign,
        is_leading: key.is_leading(),
    }
}

/// Leading coefficient `c_{m-1}(m) = (-1)^((m+1)/2) (pi / 2^(m-1)) |C(1/2, (m-1)/2)|`,
/// evaluated from its own formula rather than the general one.
pub fn leading_coefficient(m: u64) -> Result<CoefficientValue> {
    let key = CoefficientKey::new(m, (m - 1) / 2)?;
    let half = (m - 1) / 2;
    let mut pi_multiple = half_binomial(half).abs()
        / BigRational::from_integer(BigInt::from(2).pow((m - 1) as u32));
    if frequency_sign(m) < 0 {
        pi_multiple = -pi_multiple;
    }
    Ok(CoefficientValue {
        key,
        value: rational_to_f64(&pi_multiple) * PI,
        pi_multiple,
        sign: frequency_sign(m),
        is_leading: true,
    })
}

/// `(-1)^j C(1/2, j) int_0^{2pi} cos(t) cos(m t) sin^{2j}(t) dt` by adaptive
/// quadrature. Cross-check only; series evaluation never uses this.
pub fn coefficient_numeric(key: CoefficientKey, abs_tol: f64) -> Result<f64> {
    let CoefficientKey { m, j } = key;
    let mf = m as f64;
    let power = j as i32 * 2;
    let integral = integrate_fn(
        |t: f64| t.cos() * (mf * t).cos() * t.sin().powi(power),
        0.0,
        TAU,
        abs_tol,
    )?
    .value;
    let mut weight = rational_to_f64(&half_binomial(j));
    if j % 2 == 1 {
        weight = -weight;
    }
    Ok(weight * integral)
}

fn row_cache() -> &'static Mutex<HashMap<u64, Vec<f64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<f64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Floating-point coefficients of `P_m` starting at the leading index:
/// element `i` is `c_{2(h+i)}(m)` with `h = (m-1)/2`. Rows are memoized and
/// extended on demand from the exact closed form.
pub(crate) fn coefficient_row(m: u64, len: usize) -> Vec<f64> {
    let mut cache = row_cache().lock().expect("coefficient cache poisoned");
    let row = cache.entry(m).or_default();
    let lead = (m - 1) / 2;
    while row.len() < len {
        let j = lead + row.len() as u64;
        let key = CoefficientKey { m, j };
        row.push(coefficient_closed_form(key).value);
    }
    row[..len].to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn key(m: u64, j: u64) -> CoefficientKey {
        CoefficientKey::new(m, j).unwrap()
    }

    #[test]
    fn reference_values() {
        let c = coefficient_closed_form(key(3, 1));
        assert_eq!(c.pi_multiple, q(1, 8));
        assert_eq!(c.sign, 1);
        assert!(c.is_leading);
        assert_eq!(c.value, PI / 8.0);

        let c = coefficient_closed_form(key(3, 2));
        assert_eq!(c.pi_multiple, q(3, 128));
        assert!(!c.is_leading);

        let c = coefficient_closed_form(key(5, 2));
        assert_eq!(c.pi_multiple, q(-1, 128));
        assert_eq!(c.sign, -1);
        assert!(c.is_leading);

        let c = coefficient_closed_form(key(5, 1));
        assert!(c.pi_multiple.is_zero());
        assert_eq!(c.sign, 0);
        assert!(!c.is_leading);
    }

    #[test]
    fn key_validation() {
        assert!(CoefficientKey::new(4, 1).is_err());
        assert!(CoefficientKey::new(1, 1).is_err());
        assert!(CoefficientKey::new(3, 0).is_err());
        assert!(CoefficientKey::for_slicing(9, 1, 3).is_ok());
        assert!(CoefficientKey::for_slicing(10, 1, 5).is_err());
        assert!(CoefficientKey::for_slicing(15, 1, 3).is_ok());
        assert!(CoefficientKey::for_slicing(7, 1, 3).is_err());
    }

    #[test]
    fn leading_matches_general_formula() {
        for m in (3..80).step_by(2) {
            let lead = leading_coefficient(m).unwrap();
            let general = coefficient_closed_form(key(m, (m - 1) / 2));
            assert_eq!(lead.pi_multiple, general.pi_multiple, "m = {m}");
            assert_eq!(lead.sign, general.sign);
        }
        assert_eq!(leading_coefficient(3).unwrap().pi_multiple, q(1, 8));
        assert_eq!(leading_coefficient(5).unwrap().pi_multiple, q(-1, 128));
        assert_eq!(leading_coefficient(7).unwrap().sign, 1);
    }

    #[test]
    fn numeric_cross_check() {
        let v = coefficient_numeric(key(3, 1), 1e-14).unwrap();
        assert!((v - PI / 8.0).abs() < 1e-12);
        for (m, j, tol) in [(9, 4, 1e-11), (3, 10, 1e-10)] {
            let k = key(m, j);
            let num = coefficient_numeric(k, 1e-14).unwrap();
            assert!((num - coefficient_closed_form(k).value).abs() < tol, "({m},{j})");
        }
    }

    #[test]
    fn structure_over_grid() {
        for m in (3..120).step_by(2) {
            let s = frequency_sign(m);
            for j in 1..80 {
                let c = coefficient_closed_form(key(m, j));
                if 2 * j < m - 1 {
                    assert_eq!(c.sign, 0, "({m},{j})");
                } else {
                    assert_eq!(c.sign, s, "({m},{j})");
                }
                assert!(c.value.abs() <= PI / 8.0);
            }
        }
    }

    #[test]
    fn row_cache_matches_closed_form() {
        let row = coefficient_row(15, 20);
        for (i, v) in row.iter().enumerate() {
            let c = coefficient_closed_form(key(15, 7 + i as u64));
            assert_eq!(*v, c.value);
        }
        assert_eq!(coefficient_row(15, 5), row[..5]);
    }

    #[test]
    fn display_shows_pi_multiple() {
        assert_eq!(coefficient_closed_form(key(5, 2)).to_string(), "-1/128*pi");
        assert_eq!(coefficient_closed_form(key(5, 1)).to_string(), "0");
    }
}
