//! Invariant suites behind `circsing verify`.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::asym::{approx_closed, approx_main};
use crate::binomstats::{
    binom_max, binom_pdf_exact, binomial, demoivre_approx, power_sum_asymptotic, power_sum_exact,
    rational, to_f64, ExactRational, QParam,
};
use crate::mcsim::sample_singularity;
use crate::polycyc::{
    cyclotomic, divisors, fold, is_prime, prime_power, reduce_mod_cyclotomic, singular_divisors,
    totient, FirstRow, IntPolynomial, SingularityTester,
};
use crate::singexact::{
    prob_bounds, prob_divisor_general, prob_divisor_prime_power, prob_union_bruteforce,
    prob_union_closed_form, report, UnionClosedForm,
};
use crate::{Budgets, Error, Model, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    Bounds,
    ClosedForms,
    Asymptotics,
    Mc,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Algebra,
        Suite::Bounds,
        Suite::ClosedForms,
        Suite::Asymptotics,
        Suite::Mc,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Bounds => "bounds",
            Suite::ClosedForms => "closed-forms",
            Suite::Asymptotics => "asymptotics",
            Suite::Mc => "mc",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.passed() {
            format!("{}: ok ({} checks)", self.suite, self.checks)
        } else {
            format!("{}: FAILED {} of {} checks", self.suite, self.failures.len(), self.checks)
        }
    }
}

struct Checker {
    checks: usize,
    failures: Vec<String>,
}

impl Checker {
    fn new() -> Self {
        Checker {
            checks: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn finish(self, suite: Suite) -> SuiteOutcome {
        SuiteOutcome {
            suite,
            checks: self.checks,
            failures: self.failures,
        }
    }
}

pub fn run_suite(suite: Suite, budgets: &Budgets) -> Result<SuiteOutcome> {
    let mut c = Checker::new();
    match suite {
        Suite::Algebra => algebra(&mut c),
        Suite::Bounds => bounds(&mut c, budgets)?,
        Suite::ClosedForms => closed_forms(&mut c, budgets)?,
        Suite::Asymptotics => asymptotics(&mut c)?,
        Suite::Mc => mc(&mut c)?,
    }
    Ok(c.finish(suite))
}

fn algebra(c: &mut Checker) {
    for n in 1..=128 {
        let prod = divisors(n)
            .into_iter()
            .fold(IntPolynomial::one(), |acc, d| &acc * &cyclotomic(d));
        c.check(prod == IntPolynomial::x_pow_minus_one(n), || {
            format!("product of Phi_d over d | {n} is not x^{n} - 1")
        });
    }
    for d in 2..=128 {
        let phi = cyclotomic(d);
        let ok = phi.is_monic() && phi.degree() == Some(totient(d)) && phi.coeff(0).is_one();
        c.check(ok, || format!("Phi_{d} = {phi} is not monic of degree {} with constant 1", totient(d)));
    }
    for p in [2usize, 3, 5, 7, 11, 13] {
        for n in 1..=50 {
            let r = reduce_mod_cyclotomic(&cyclotomic(n * p), n);
            let p_big = num_bigint::BigInt::from(p);
            let ok = r.coeffs().iter().all(|x| (x % &p_big).is_zero());
            c.check(ok, || format!("Phi_{} mod Phi_{n} = {r} is not 0 mod {p}", n * p));
        }
    }
    for n in 1..=10usize {
        let tester = SingularityTester::new(n, Model::Binary);
        for mask in 0..(1u64 << n) {
            let row = FirstRow::from_mask(n, mask).expect("n <= 64");
            let f = row.polynomial(Model::Binary);
            let got = singular_divisors(&row, Model::Binary);
            for d in divisors(n) {
                let folded = fold(&f, n, d).expect("d | n");
                let direct = reduce_mod_cyclotomic(&f, d).is_zero();
                let via_fold = reduce_mod_cyclotomic(&folded, d).is_zero();
                c.check(direct == via_fold && direct == got.contains(&d), || {
                    format!("fold disagreement at n={n} row={mask:b} d={d}")
                });
            }
            c.check(tester.is_singular_word(mask) == !got.is_empty(), || {
                format!("fast tester disagrees at n={n} row={mask:b}")
            });
        }
    }
}

fn halves_thirds() -> [ExactRational; 2] {
    [rational(1, 2), rational(1, 3)]
}

fn bounds(c: &mut Checker, budgets: &Budgets) -> Result<()> {
    for q in halves_thirds() {
        for n in 2..=30 {
            for d in divisors(n).into_iter().filter(|&d| d >= 2) {
                let v = match prob_divisor_general(d, n, &q, budgets.enumeration) {
                    Ok(v) => v,
                    Err(e) if e.is_budget() => continue,
                    Err(e) => return Err(e),
                };
                let b = prob_bounds(d, n, &q)?;
                let ok = v <= b.upper && b.lower.as_ref().is_none_or(|l| *l <= v);
                c.check(ok, || format!("bounds fail at d={d} n={n} q={q}: {v} vs {b:?}"));
            }
        }
        for n in 1..=16 {
            for model in [Model::Binary, Model::Signed] {
                let r = report(n, &q, model, budgets)?;
                c.check(r.sandwich_holds() == Some(true), || {
                    format!("union sandwich fails at n={n} q={q} {model}")
                });
            }
        }
    }
    Ok(())
}

/// `n` values whose union has a closed form, checked against brute force.
pub const CLOSED_FORM_NS: [usize; 13] = [2, 3, 4, 5, 6, 7, 9, 10, 14, 15, 21, 22, 25];

fn closed_forms(c: &mut Checker, budgets: &Budgets) -> Result<()> {
    for q in halves_thirds() {
        for n in CLOSED_FORM_NS {
            let closed = prob_union_closed_form(n, &q)?;
            let brute = prob_union_bruteforce(n, &q, Model::Binary, budgets.brute_force)?;
            c.check(closed == UnionClosedForm::Value(brute.clone()), || {
                format!("closed form {closed:?} != brute force {brute} at n={n} q={q}")
            });
        }
        for n in 2..=32 {
            for d in divisors(n).into_iter().filter(|&d| d <= 16) {
                let Some((p, m)) = prime_power(d) else { continue };
                let closed = prob_divisor_prime_power(p, m, n, &q)?;
                let lattice = prob_divisor_general(d, n, &q, budgets.enumeration)?;
                c.check(closed == lattice, || {
                    format!("prime-power closed form {closed} != enumeration {lattice} at d={d} n={n}")
                });
            }
        }
        for n in 1..=16 {
            let binary = report(n, &q, Model::Binary, budgets)?;
            let signed = report(n, &q, Model::Signed, budgets)?;
            for (b, s) in binary.per_divisor.iter().zip(&signed.per_divisor).filter(|(b, _)| b.d != 1) {
                c.check(b.value == s.value, || format!("signed/binary differ at d={} n={n}", b.d));
            }
        }
    }
    Ok(())
}

fn asymptotics(c: &mut Checker) -> Result<()> {
    let half = rational(1, 2);
    for n in (2..=23).filter(|&n| is_prime(n)) {
        for q in halves_thirds() {
            let main = approx_main(n, &QParam::exact(q.clone())?)?.exact;
            let exact = prob_union_closed_form(n, &q)?.value();
            c.check(main.is_some() && main == exact, || format!("prime equality fails at n={n} q={q}"));
        }
    }
    for m in [2usize, 3, 5] {
        let mut prev = f64::INFINITY;
        for n in [100usize, 400, 1600] {
            let exact = to_f64(&power_sum_exact(n, m, &half, u64::MAX)?);
            let ratio = exact / power_sum_asymptotic(n as u64, m as u64, 0.5)?;
            let dev = (ratio - 1.0).abs();
            c.check((0.8..=1.2).contains(&ratio) && dev < prev, || {
                format!("power sum ratio {ratio} at n={n} m={m}")
            });
            prev = dev;
        }
    }
    let exact = to_f64(&power_sum_exact(1000, 2, &half, u64::MAX)?);
    let vandermonde = to_f64(&BigRational::new(binomial(2000, 1000).into(), Pow::pow(num_bigint::BigInt::from(4), 1000u32)));
    c.check(exact == vandermonde, || "Vandermonde identity fails at n=1000".into());
    let rel = exact / (std::f64::consts::PI * 1000.0).sqrt().recip() - 1.0;
    c.check(rel.abs() <= 2e-3, || format!("sum phi^2 at n=1000 off by {rel}"));
    let mut prev = f64::INFINITY;
    for n in [1usize << 6, 1 << 8, 1 << 10] {
        let q = QParam::one_half();
        let dev = (approx_main(n, &q)?.value / approx_closed(n, 0.5)?.value - 1.0).abs();
        c.check(dev <= 0.05 && dev < prev, || format!("main/closed deviation {dev} at n={n}"));
        prev = dev;
    }
    let center = to_f64(&binom_pdf_exact(500, 1000, &half)?);
    let rel = demoivre_approx(500, 1000, 0.5)? / center - 1.0;
    c.check(rel.abs() <= 2e-3, || format!("de Moivre centre error {rel}"));
    let reach = (2.0 * 1000f64.sqrt()).floor() as i64;
    for k in 500 - reach..=500 + reach {
        let exact = to_f64(&binom_pdf_exact(k as usize, 1000, &half)?);
        let rel = demoivre_approx(k, 1000, 0.5)? / exact - 1.0;
        c.check(rel.abs() <= 0.05, || format!("de Moivre error {rel} at k={k}"));
    }
    for q in halves_thirds() {
        let qf = to_f64(&q);
        let mut prev = f64::INFINITY;
        for n in [100usize, 1000, 10_000] {
            let m = to_f64(&binom_max(n, &q)?.value);
            let scaled = m * (2.0 * std::f64::consts::PI * n as f64 * qf * (1.0 - qf)).sqrt();
            let dev = (scaled - 1.0).abs();
            c.check((0.9..=1.1).contains(&scaled) && dev < prev, || {
                format!("M(q,n) sqrt(2 pi n q(1-q)) = {scaled} at n={n} q={q}")
            });
            prev = dev;
        }
    }
    Ok(())
}

fn mc(c: &mut Checker) -> Result<()> {
    let half = QParam::one_half();
    for (n, exact) in [(4, 0.5), (6, 7.0 / 16.0)] {
        let e = sample_singularity(n, &half, 200_000, 2024, Model::Binary, 4)?;
        c.check(e.covers(exact, 4.0), || format!("estimate {e:?} misses {exact}"));
        let again = sample_singularity(n, &half, 200_000, 2024, Model::Binary, 4)?;
        c.check(again == e, || format!("rerun differs at n={n}"));
        for shards in [1, 16] {
            let other = sample_singularity(n, &half, 200_000, 2024, Model::Binary, shards)?;
            c.check(other.singular_count == e.singular_count, || {
                format!("shard count {shards} changes the count at n={n}")
            });
        }
    }
    let e = sample_singularity(3, &half, 100_000, 5, Model::Signed, 2)?;
    c.check(e.covers(0.25, 4.0), || format!("signed n=3 estimate {e:?} misses 1/4"));
    Ok(())
}
