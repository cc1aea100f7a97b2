use std::collections::BTreeMap;

use serde::Serialize;

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest prime divisor, `None` for `n < 2`.
pub fn smallest_prime(n: usize) -> Option<usize> {
    if n < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return Some(p);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Some(n)
}

pub fn is_prime(n: usize) -> bool {
    smallest_prime(n) == Some(n)
}

/// All divisors of `n >= 1`, ascending.
pub fn divisors(n: usize) -> Vec<usize> {
    assert!(n >= 1, "divisors: n must be positive");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// `p^m` with `p` prime and `m >= 1`, if `n` has that shape.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    match factorize(n).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

/// `n` with its divisors, smallest prime and per-divisor totients.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DivisorProfile {
    pub n: usize,
    pub divisors: Vec<usize>,
    pub smallest_prime: Option<usize>,
    pub totients: BTreeMap<usize, usize>,
}

impl DivisorProfile {
    pub fn new(n: usize) -> Self {
        let divisors = divisors(n);
        let totients = divisors.iter().map(|&d| (d, totient(d))).collect();
        DivisorProfile {
            n,
            smallest_prime: smallest_prime(n),
            divisors,
            totients,
        }
    }

    pub fn totient(&self, d: usize) -> Option<usize> {
        self.totients.get(&d).copied()
    }
}
