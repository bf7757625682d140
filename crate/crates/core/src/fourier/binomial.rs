//! Exact binomial coefficients `C(t, u)` for integer `t` and the half-integer
//! family `C(1/2, j)`.

use std::sync::{Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `C(t, u)`, zero when `u < 0` or `u > t`.
pub fn binomial(t: u64, u: i64) -> BigUint {
    if u < 0 || u as u64 > t {
        return BigUint::zero();
    }
    let u = (u as u64).min(t - u as u64);
    let mut acc = BigUint::one();
    for i in 0..u {
        // acc = C(t, i) here, so the division is exact.
        acc *= t - i;
        acc /= i + 1;
    }
    acc
}

fn half_binomial_table() -> &'static Mutex<Vec<BigRational>> {
    static TABLE: OnceLock<Mutex<Vec<BigRational>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![BigRational::one()]))
}

/// `C(1/2, j)` as an exact rational, from
/// `C(1/2, j + 1) = C(1/2, j) (1/2 - j) / (j + 1)`.
pub fn half_binomial(j: u64) -> BigRational {
    let mut table = half_binomial_table().lock().expect("half-binomial table poisoned");
    while table.len() as u64 <= j {
        let i = table.len() as u64 - 1;
        // (1/2 - i) / (i + 1) = (1 - 2i) / (2i + 2)
        let step = BigRational::new(
            BigInt::from(1) - BigInt::from(2 * i),
            BigInt::from(2 * i + 2),
        );
        let next = &table[i as usize] * step;
        table.push(next);
    }
    table[j as usize].clone()
}
