//! Acceptance criteria. Each test writes one `PASS`/`FAIL` line to stderr
//! (bypassing output capture) and then asserts.

use std::f64::consts::PI;
use std::io::Write;
use std::time::Instant;

use circsing::asym::approx_main;
use circsing::binomstats::{
    binom_pdf_exact, binomial, demoivre_approx, power_sum_asymptotic, power_sum_exact, rational,
    to_f64, ExactRational, QParam,
};
use circsing::mcsim::sample_singularity;
use circsing::polycyc::{
    cyclotomic, divisors, is_prime, prime_power, reduce_mod_cyclotomic, totient, IntPolynomial,
};
use circsing::singexact::{
    evaluate_weight_histogram, prob_bounds, prob_divisor_general, prob_divisor_prime,
    prob_divisor_prime_power, prob_union_bruteforce, prob_union_closed_form,
    signed_intersection_1_2, singular_weight_histogram, UnionClosedForm,
};
use circsing::{Budgets, Model};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

const ENUM: u64 = Budgets::DEFAULT_ENUMERATION;
const BRUTE: u64 = Budgets::DEFAULT_BRUTE_FORCE;

fn report(id: u32, ok: bool, start: Instant, detail: &str) {
    let line = format!(
        "criterion {id:>2}: {} ({:.2}s) {detail}\n",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn qs() -> [ExactRational; 2] {
    [rational(1, 2), rational(1, 3)]
}

#[test]
fn criterion_01_cyclotomic_identities() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=128 {
        let prod = divisors(n)
            .into_iter()
            .fold(IntPolynomial::one(), |acc, d| &acc * &cyclotomic(d));
        if prod != IntPolynomial::x_pow_minus_one(n) {
            bad.push(format!("product n={n}"));
        }
    }
    for d in 2..=128 {
        let phi = cyclotomic(d);
        if !(phi.is_monic() && phi.degree() == Some(totient(d)) && phi.coeff(0).is_one()) {
            bad.push(format!("Phi_{d}"));
        }
    }
    let ok = bad.is_empty() && t.elapsed().as_secs() < 10;
    report(1, ok, t, &format!("failures: {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_02_reduction_mod_p() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for p in [2usize, 3, 5, 7, 11, 13] {
        let pb = BigInt::from(p);
        for n in 1..=50 {
            let r = reduce_mod_cyclotomic(&cyclotomic(n * p), n);
            if !r.coeffs().iter().all(|c| (c % &pb).is_zero()) {
                bad.push((p, n));
            }
        }
    }
    let ok = bad.is_empty() && t.elapsed().as_secs() < 10;
    report(2, ok, t, &format!("failures: {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_03_union_closed_forms_vs_brute_force() {
    let t = Instant::now();
    let mut bad = Vec::new();
    for n in [2, 3, 4, 5, 6, 7, 9, 10, 14, 15, 21, 22, 25] {
        // One enumeration serves both values of q.
        let hist = singular_weight_histogram(n, Model::Binary, BRUTE).unwrap();
        for q in qs() {
            let brute = evaluate_weight_histogram(&hist, &q).unwrap();
            if prob_union_closed_form(n, &q).unwrap() != UnionClosedForm::Value(brute.clone()) {
                bad.push(format!("n={n} q={q}"));
            }
        }
    }
    let h = rational(1, 2);
    let spot = prob_union_bruteforce(4, &h, Model::Binary, BRUTE).unwrap() == rational(1, 2)
        && prob_union_bruteforce(6, &h, Model::Binary, BRUTE).unwrap() == rational(7, 16);
    let ok = bad.is_empty() && spot && t.elapsed().as_secs() < 600;
    report(3, ok, t, &format!("mismatches: {bad:?}, P(4)=1/2 and P(6)=7/16: {spot}"));
    assert!(ok);
}

#[test]
fn criterion_04_enumeration_vs_closed_forms() {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for q in qs() {
        for n in 2..=32 {
            for d in divisors(n).into_iter().filter(|&d| (2..=16).contains(&d)) {
                let Some((p, m)) = prime_power(d) else { continue };
                let general = prob_divisor_general(d, n, &q, ENUM).unwrap();
                let closed = if m == 1 {
                    prob_divisor_prime(p, n, &q).unwrap()
                } else {
                    prob_divisor_prime_power(p, m, n, &q).unwrap()
                };
                checked += 1;
                if general != closed {
                    bad.push(format!("d={d} n={n} q={q}"));
                }
            }
        }
    }
    let six = prob_divisor_general(6, 6, &rational(1, 2), ENUM).unwrap();
    // Count of 0/1 rows of length 6 divisible by Phi_6, by brute force.
    let count = (0u64..64)
        .filter(|&m| {
            let f = IntPolynomial::from_i64s(&(0..6).map(|i| (m >> i & 1) as i64).collect::<Vec<_>>());
            reduce_mod_cyclotomic(&f, 6).is_zero()
        })
        .count();
    let six_ok = six == rational(5, 32) && six == rational(count as i64, 64);
    let ok = bad.is_empty() && six_ok && t.elapsed().as_secs() < 30;
    report(4, ok, t, &format!("{checked} pairs, mismatches {bad:?}; P(6,6)={six}, count {count}/64"));
    assert!(ok);
}

#[test]
fn criterion_05_bounds() {
    let t = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for q in qs() {
        for n in 2..=30 {
            for d in divisors(n).into_iter().filter(|&d| d >= 2) {
                let v = match prob_divisor_general(d, n, &q, ENUM) {
                    Ok(v) => v,
                    Err(e) if e.is_budget() => continue,
                    Err(e) => panic!("{e}"),
                };
                let b = prob_bounds(d, n, &q).unwrap();
                checked += 1;
                let lower_ok = b.lower.as_ref().is_none_or(|l| *l <= v);
                if !(lower_ok && v <= b.upper) || (is_prime(d) != b.lower.is_some()) {
                    bad.push(format!("d={d} n={n} q={q}"));
                }
            }
        }
    }
    let ok = bad.is_empty() && t.elapsed().as_secs() < 60;
    report(5, ok, t, &format!("{checked} (d, n, q) triples, violations {bad:?}"));
    assert!(ok);
}

#[test]
fn criterion_06_power_sum_asymptotics() {
    let t = Instant::now();
    let h = rational(1, 2);
    let exact = power_sum_exact(1000, 2, &h, u64::MAX).unwrap();
    let vandermonde = BigRational::new(binomial(2000, 1000).into(), Pow::pow(BigInt::from(4), 1000u32));
    let rel = to_f64(&exact) / (PI * 1000.0).sqrt().recip() - 1.0;
    let mut detail = format!("n=1000 m=2 rel {rel:.3e};");
    let mut ok = exact == vandermonde && rel.abs() <= 2e-3;
    for m in [2usize, 3, 5] {
        let mut prev = f64::INFINITY;
        for n in [100usize, 400, 1600] {
            let r = to_f64(&power_sum_exact(n, m, &h, u64::MAX).unwrap())
                / power_sum_asymptotic(n as u64, m as u64, 0.5).unwrap();
            detail += &format!(" m={m},n={n}:{r:.6}");
            ok &= (0.8..=1.2).contains(&r) && (r - 1.0).abs() < prev;
            prev = (r - 1.0).abs();
        }
    }
    ok &= t.elapsed().as_secs() < 60;
    report(6, ok, t, &detail);
    assert!(ok);
}

#[test]
fn criterion_07_main_approximation_trend() {
    let t = Instant::now();
    let h = rational(1, 2);
    let qh = QParam::one_half();
    let mut primes_ok = true;
    for n in (2..=23).filter(|&n| is_prime(n)) {
        let exact = prob_union_bruteforce(n, &h, Model::Binary, BRUTE).unwrap();
        let approx = approx_main(n, &qh).unwrap().exact.unwrap();
        primes_ok &= exact == approx;
    }
    let mut ratios = Vec::new();
    for n in [4usize, 6, 8, 10, 12, 14, 16, 20, 22] {
        let exact = prob_union_bruteforce(n, &h, Model::Binary, BRUTE).unwrap();
        let approx = approx_main(n, &qh).unwrap().exact.unwrap();
        ratios.push((n, to_f64(&(exact / approx))));
    }
    let decreasing = ratios.windows(2).all(|w| w[1].1 < w[0].1);
    let ok = primes_ok && decreasing && t.elapsed().as_secs() < 300;
    let shown: Vec<String> = ratios.iter().map(|(n, r)| format!("{n}:{r:.5}")).collect();
    report(
        7,
        ok,
        t,
        &format!("prime equality {primes_ok}; ratios {} strictly decreasing: {decreasing}", shown.join(" ")),
    );
    assert!(ok);
}

#[test]
fn criterion_08_signed_asymptotic_trend() {
    let t = Instant::now();
    let h = rational(1, 2);
    let mut ratios = Vec::new();
    for n in [8usize, 12, 16, 20] {
        let exact = to_f64(&prob_union_bruteforce(n, &h, Model::Signed, BRUTE).unwrap());
        ratios.push((n, exact / (2.0 * 2f64.sqrt() / (PI * n as f64).sqrt())));
    }
    let towards_one = ratios
        .windows(2)
        .all(|w| (w[1].1 - 1.0).abs() < (w[0].1 - 1.0).abs());
    let inter = signed_intersection_1_2(4, &h).unwrap() == rational(1, 4);
    let ok = towards_one && inter && t.elapsed().as_secs() < 300;
    let shown: Vec<String> = ratios.iter().map(|(n, r)| format!("{n}:{r:.5}")).collect();
    report(
        8,
        ok,
        t,
        &format!("ratios {} approaching 1 monotonically: {towards_one}; intersection(4)=1/4: {inter}", shown.join(" ")),
    );
    assert!(ok);
}

#[test]
fn criterion_09_monte_carlo() {
    let t = Instant::now();
    let h = QParam::one_half();
    let mut ok = true;
    let mut detail = String::new();
    for (n, exact) in [(4usize, 0.5), (6, 7.0 / 16.0)] {
        let e = sample_singularity(n, &h, 1_000_000, 20260101, Model::Binary, 4).unwrap();
        let z = (e.p_hat - exact) / e.stderr;
        let again = sample_singularity(n, &h, 1_000_000, 20260101, Model::Binary, 4).unwrap();
        let counts: Vec<u64> = [1, 16]
            .into_iter()
            .map(|s| sample_singularity(n, &h, 1_000_000, 20260101, Model::Binary, s).unwrap().singular_count)
            .collect();
        let invariant = counts.iter().all(|&c| c == e.singular_count);
        ok &= z.abs() <= 4.0 && again == e && invariant;
        detail += &format!(" n={n}: p_hat={:.5} z={z:.2} rerun={} shards={invariant};", e.p_hat, again == e);
    }
    ok &= t.elapsed().as_secs() < 60;
    report(9, ok, t, &detail);
    assert!(ok);
}

#[test]
fn criterion_10_de_moivre_laplace() {
    let t = Instant::now();
    let h = rational(1, 2);
    let centre = demoivre_approx(500, 1000, 0.5).unwrap() / to_f64(&binom_pdf_exact(500, 1000, &h).unwrap()) - 1.0;
    let reach = (2.0 * 1000f64.sqrt()).floor() as i64;
    let worst = (500 - reach..=500 + reach)
        .map(|k| {
            let exact = to_f64(&binom_pdf_exact(k as usize, 1000, &h).unwrap());
            (demoivre_approx(k, 1000, 0.5).unwrap() / exact - 1.0).abs()
        })
        .fold(0.0, f64::max);
    let ok = centre.abs() <= 2e-3 && worst <= 0.05 && t.elapsed().as_secs() < 10;
    report(10, ok, t, &format!("centre rel {centre:.3e}; worst over |k-500|<={reach}: {worst:.4}"));
    assert!(ok);
}
