//! Fourier-series machinery for the inequity: exact coefficients of the
//! per-frequency power series and bounded evaluation of the full expansion.

pub mod binomial;
pub mod coefficients;
pub mod series;

pub use binomial::{binomial, half_binomial};
pub use coefficients::{
    coefficient_closed_form, coefficient_numeric, frequency_sign, leading_coefficient,
    CoefficientKey, CoefficientValue,
};
pub use series::{
    f_series, f_series_at, g_series, p_m, p_m_for, SeriesResult, TermsUsed, TruncationPolicy,
    NEAR_SINGULAR_OFFSET,
};
