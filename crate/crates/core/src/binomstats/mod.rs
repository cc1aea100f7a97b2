//! Binomial masses `phi_q(k, n)`, their maximum, the normal approximation
//! and power sums, in exact rational and floating-point forms.

mod pdf;
mod power_sum;
mod rational;

pub use pdf::{
    binom_max, binom_pdf_exact, binom_pdf_log, binomial, binomial_row, demoivre_approx,
    BinomialMax, BinomialWeights,
};
pub use power_sum::{
    log_sum_exp, pairwise_sum, power_sum_asymptotic, power_sum_exact, power_sum_float,
    power_sum_ln,
};
pub use rational::{
    decimal_string, from_biguint_ratio, ln_rational, parse_rational, rational, round_sig, to_f64,
    ExactRational, QParam,
};
pub(crate) use rational::{check_open_unit, check_open_unit_exact, split_probability};
