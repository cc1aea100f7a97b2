use circsing::binomstats::QParam;
use circsing::mcsim::sample_singularity;
use circsing::Model;

#[test]
fn reruns_are_identical() {
    let h = QParam::one_half();
    let a = sample_singularity(8, &h, 100_000, 42, Model::Signed, 4).unwrap();
    let b = sample_singularity(8, &h, 100_000, 42, Model::Signed, 4).unwrap();
    assert_eq!(a, b);
}

#[test]
fn shard_counts_agree() {
    let h = QParam::one_half();
    let counts: Vec<u64> = [1, 4, 16]
        .into_iter()
        .map(|s| sample_singularity(6, &h, 300_000, 3, Model::Binary, s).unwrap().singular_count)
        .collect();
    assert!(counts.windows(2).all(|w| w[0] == w[1]), "{counts:?}");
}

#[test]
fn coverage_over_seeds() {
    let h = QParam::one_half();
    let covered = (0..20)
        .filter(|&seed| {
            let e = sample_singularity(4, &h, 100_000, seed, Model::Binary, 1).unwrap();
            e.covers(0.5, 2.0)
        })
        .count();
    assert!(covered >= 17, "{covered} of 20");
}

#[test]
fn invariants_of_the_estimate() {
    let e = sample_singularity(5, &QParam::float(0.3).unwrap(), 50_000, 9, Model::Binary, 2).unwrap();
    assert_eq!(e.p_hat, e.singular_count as f64 / e.samples as f64);
    assert_eq!(e.stderr, (e.p_hat * (1.0 - e.p_hat) / e.samples as f64).sqrt());
    // Prime n: singular iff all entries equal, 0.3^5 + 0.7^5.
    assert!(e.covers(0.3f64.powi(5) + 0.7f64.powi(5), 4.0), "{e:?}");
}

#[test]
fn different_seeds_differ() {
    let h = QParam::one_half();
    let a = sample_singularity(10, &h, 50_000, 1, Model::Binary, 1).unwrap();
    let b = sample_singularity(10, &h, 50_000, 2, Model::Binary, 1).unwrap();
    assert_ne!(a.singular_count, b.singular_count);
}
