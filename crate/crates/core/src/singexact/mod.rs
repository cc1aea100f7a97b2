//! Exact singularity probabilities: per divisor, bounds, and the union.

mod divisor;
mod lattice;
mod report;
mod union;

pub use divisor::{
    divisor_probability, prob_bounds, prob_divisor_enumerated, prob_divisor_general,
    prob_divisor_one, prob_divisor_prime, prob_divisor_prime_power, signed_prob_divisor,
    signed_prob_one, DivisorBounds, DivisorProbability, Method,
};
pub use lattice::{box_size, enumerate_box, hnf_basis, BoxCount, EnumerationStats, LatticeBasis};
pub use report::{report, ProbabilityReport, Provenance, Unresolved};
pub use union::{
    evaluate_weight_histogram, prob_union_bruteforce, prob_union_closed_form,
    signed_intersection_1_2, signed_union_closed_form, singular_weight_histogram,
    union_closed_form, UnionClosedForm, UnionShape,
};
