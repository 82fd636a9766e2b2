mod common;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use plancherel::partitions::{self, dim_sym, dim_sym_with, dim_un, from_config, hat, ln_dim_sym, to_config};
use plancherel::{MeasureSpec, Param, Partition};
use proptest::prelude::*;

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

#[test]
fn frobenius_matches_tableau_count() {
    for n in 0..=8 {
        for parts in common::partitions(n) {
            let lambda = Partition::new(parts.clone()).unwrap();
            assert_eq!(dim_sym(&lambda), common::syt_count(&parts), "{parts:?}");
        }
    }
}

#[test]
fn frobenius_is_independent_of_particle_count() {
    let lambda: Partition = "4,2,2,1".parse().unwrap();
    let d = dim_sym(&lambda);
    for n in 4..10 {
        assert_eq!(dim_sym_with(&lambda, n).unwrap(), d);
    }
    assert!(dim_sym_with(&lambda, 3).is_err());
}

#[test]
fn burnside() {
    for n in 0..=10 {
        let sum = partitions::partitions_of(n)
            .iter()
            .map(|l| {
                let d = dim_sym(l);
                &d * &d
            })
            .fold(BigUint::zero(), |a, b| a + b);
        assert_eq!(sum, factorial(n), "n = {n}");
    }
}

#[test]
fn schur_weyl_is_a_probability() {
    for n in 0..=8 {
        for rows in 1..=4 {
            let m = MeasureSpec::SchurWeyl { n, rows };
            let total = m
                .support(n)
                .iter()
                .map(|l| m.exact_weight(l).unwrap())
                .fold(BigRational::zero(), |a, b| a + b);
            assert!(total.is_one(), "n={n} N={rows}: {total}");
        }
    }
}

#[test]
fn rectangle_and_mixture_are_probabilities() {
    for (rows, cols) in [(2usize, 3usize), (3, 3), (4, 2)] {
        for n in 0..=rows * cols {
            let m = MeasureSpec::Rectangle { n, rows, cols };
            let total = m
                .support(n)
                .iter()
                .map(|l| m.exact_weight(l).unwrap())
                .fold(BigRational::zero(), |a, b| a + b);
            assert!(total.is_one(), "({rows}x{cols}) n={n}");
        }
    }
    let m = MeasureSpec::MixKrawtchouk {
        p: Param::ratio(2, 7),
        rows: 3,
    };
    let total = m
        .support(0)
        .iter()
        .map(|l| m.exact_weight(l).unwrap())
        .fold(BigRational::zero(), |a, b| a + b);
    assert!(total.is_one());
}

#[test]
fn weyl_dimension_small_cases() {
    // Dim_N of a single row is C(N + k − 1, k)
    for n in 1..6usize {
        for k in 0..6usize {
            let row = Partition::new(vec![k]).unwrap();
            let expect = (0..k).fold(BigUint::one(), |acc, i| acc * (n + i)) / factorial(k);
            assert_eq!(dim_un(&row, n).unwrap(), expect);
        }
    }
    let column = Partition::new(vec![1, 1, 1]).unwrap();
    assert_eq!(dim_un(&column, 5).unwrap(), BigUint::from(10u32));
    assert!(dim_un(&column, 2).is_err());
}

#[test]
fn floating_weights_track_exact_ones() {
    let m = MeasureSpec::PoissonSchurWeyl {
        nu: Param::ratio(7, 2),
        rows: 3,
    };
    let z = (-3.5f64).exp();
    for lambda in m.support(9) {
        let exact = common::to_f64(&m.exact_weight(&lambda).unwrap()) * z;
        let float = m.weight(&lambda).unwrap();
        assert!(
            (exact - float).abs() <= 1e-12 * exact.max(1e-300) + 1e-300,
            "{lambda:?}"
        );
    }
}

fn partition_strategy() -> impl Strategy<Value = Partition> {
    prop::collection::vec(0usize..9, 0..7).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

proptest! {
    #[test]
    fn conjugation_is_an_involution_preserving_dim(lambda in partition_strategy()) {
        let c = lambda.conjugate();
        prop_assert_eq!(c.size(), lambda.size());
        prop_assert_eq!(c.conjugate(), lambda.clone());
        prop_assert_eq!(dim_sym(&c), dim_sym(&lambda));
    }

    #[test]
    fn particle_encoding_round_trips(lambda in partition_strategy(), extra in 0usize..4) {
        let n = lambda.len() + extra;
        prop_assume!(n > 0);
        let cfg = to_config(&lambda, n).unwrap();
        prop_assert_eq!(cfg.len(), n);
        prop_assert!(cfg.points().windows(2).all(|w| w[0] > w[1]));
        prop_assert_eq!(from_config(&cfg).unwrap(), lambda);
    }

    #[test]
    fn hat_is_an_involution(lambda in partition_strategy()) {
        let (rows, cols) = (7, 9);
        let h = hat(&lambda, rows, cols).unwrap();
        prop_assert_eq!(h.size(), rows * cols - lambda.size());
        prop_assert_eq!(hat(&h, rows, cols).unwrap(), lambda);
    }

    #[test]
    fn log_dimension_is_accurate(lambda in partition_strategy()) {
        let exact: f64 = dim_sym(&lambda).to_string().parse().unwrap();
        prop_assert!((ln_dim_sym(&lambda) - exact.ln()).abs() < 1e-10);
    }

    #[test]
    fn display_parses_back(lambda in partition_strategy()) {
        let text = lambda.to_string();
        prop_assert_eq!(text.parse::<Partition>().unwrap(), lambda);
    }
}
