use num_bigint::BigInt;
use num_traits::One;

use super::arith::factorize;
use super::poly::IntPolynomial;

/// The `d`-th cyclotomic polynomial.
///
/// Built on the squarefree kernel `k = p1 p2 ... ps` of `d`: starting from
/// `Phi_1 = x - 1`, each new prime applies `Phi_{kp}(x) = Phi_k(x^p) / Phi_k(x)`
/// (exact division), and the remaining prime powers are absorbed by
/// `Phi_d(x) = Phi_k(x^{d/k})`.
///
/// # Panics
///
/// Panics if `d == 0`.
pub fn cyclotomic(d: usize) -> IntPolynomial {
    assert!(d >= 1, "cyclotomic: d must be positive");
    let mut phi = IntPolynomial::from_coeffs(vec![-BigInt::one(), BigInt::one()]);
    let mut kernel = 1;
    for (p, _) in factorize(d) {
        phi = phi
            .substitute_power(p)
            .exact_div(&phi)
            .expect("Phi_k(x) divides Phi_k(x^p) when p does not divide k");
        kernel *= p;
    }
    phi.substitute_power(d / kernel)
}

/// Remainder of `f` modulo the monic `Phi_d`; zero iff `Phi_d | f` in `Z[x]`.
pub fn reduce_mod_cyclotomic(f: &IntPolynomial, d: usize) -> IntPolynomial {
    f.rem_monic(&cyclotomic(d))
        .expect("cyclotomic polynomials are monic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycyc::arith::totient;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(2), p(&[1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
        assert_eq!(cyclotomic(9), p(&[1, 0, 0, 1, 0, 0, 1]));
        assert_eq!(cyclotomic(12), p(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn first_coefficient_outside_unit_range() {
        // Phi_105 is the smallest with a coefficient of absolute value 2.
        let phi = cyclotomic(105);
        assert_eq!(phi.degree(), Some(totient(105)));
        assert!(phi.coeffs().iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn reductions() {
        assert!(reduce_mod_cyclotomic(&p(&[1, 1, 1, 1]), 2).is_zero());
        assert!(reduce_mod_cyclotomic(&p(&[1, 0, 1]), 4).is_zero());
        assert_eq!(reduce_mod_cyclotomic(&p(&[1, 1]), 4), p(&[1, 1]));
        assert!(reduce_mod_cyclotomic(&IntPolynomial::zero(), 7).is_zero());
    }

    #[test]
    #[should_panic]
    fn zero_order_rejected() {
        cyclotomic(0);
    }
}
