//! Integer polynomials, cyclotomic polynomials and exact singularity tests
//! for circulant first rows.

mod arith;
mod circulant;
mod cyclotomic;
mod poly;
mod tester;

pub use arith::{divisors, factorize, is_prime, prime_power, smallest_prime, totient, DivisorProfile};
pub use circulant::{
    dft_eigenvalues, eigen_cross_check, fold, singular_divisors, EigenCrossCheck, FirstRow,
    EIGEN_ZERO_TOLERANCE,
};
pub use cyclotomic::{cyclotomic, reduce_mod_cyclotomic};
pub use poly::IntPolynomial;
pub use tester::SingularityTester;
