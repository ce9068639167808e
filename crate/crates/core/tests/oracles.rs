mod common;

use common::{
    family_table, first_doubling_failure, op_sequence_agrees, slow_condition_holds, slow_decode,
};
use nscode_core::gf2poly::DensePoly;
use nscode_core::nscode::decode;
use nscode_core::recurrences::{check_doubling, collect_terms, verify_condition, verify_doubling};
use nscode_core::report::Location;
use nscode_core::wcode::{pk_from_families, pk_from_recurrence, PK_SEEDS};
use nscode_core::{Condition, Family, OddPoly, WPoly};

#[test]
fn windowed_generator_matches_full_table() {
    for family in Family::ALL {
        let fast = collect_terms(&family.spec(), 1501).unwrap();
        let slow = family_table(family, 1501);
        assert_eq!(fast.len(), slow.len());
        for (i, (f, s)) in fast.iter().zip(&slow).enumerate() {
            assert_eq!(f.support(), s.support(), "{family} n={}", 2 * i + 1);
        }
    }
}

#[test]
fn fast_and_slow_decode_agree() {
    for n in (1..200_001).step_by(2) {
        let p = decode(n).unwrap();
        assert_eq!((p.a, p.b), slow_decode(n));
    }
}

#[test]
fn condition_checker_matches_definitions() {
    // Every family against every condition: the fast verdict and the slow one
    // must agree term by term, including on the failures.
    for family in Family::ALL {
        let terms = collect_terms(&family.spec(), 801).unwrap();
        for cond in Condition::ALL {
            for (i, p) in terms.iter().enumerate() {
                let n = 2 * i as u64 + 1;
                let fast = nscode_core::recurrences::classify(p, n, cond);
                assert_eq!(
                    fast,
                    slow_condition_holds(&p.support(), n, cond.tag()),
                    "{family} {cond} n={n}"
                );
            }
        }
    }
}

#[test]
fn corrupted_seed_fails_at_first_bad_term() {
    let mut visible = 0;
    for (family, n, extra) in [
        (Family::Alpha, 3, 3),
        (Family::Alpha, 7, 1),
        (Family::Beta, 5, 9),
        (Family::Gamma, 1, 1),
        (Family::Delta, 7, 5),
        (Family::Cor42, 11, 5),
    ] {
        let control = (family, n) == (Family::Alpha, 3);
        let spec = family.spec();
        let seed = spec.seed(n).unwrap().clone() + OddPoly::monomial(extra).unwrap();
        let bad = spec.with_seed(n, seed).unwrap();
        let cond = family.condition();
        let want = collect_terms(&bad, 2001)
            .unwrap()
            .iter()
            .enumerate()
            .find(|(i, p)| !slow_condition_holds(&p.support(), 2 * *i as u64 + 1, cond.tag()))
            .map(|(i, _)| 2 * i as u64 + 1);
        let report = verify_condition(&bad, cond, 2001).unwrap();
        // Some corruptions only add earlier monomials and stay legal.
        assert_eq!(
            report.failure.as_ref().map(|c| c.at),
            want.map(Location::N),
            "{family} corrupted at {n}"
        );
        if let Some(want) = want {
            assert_eq!(report.checked, want.div_ceil(2));
        }
        if control {
            assert_eq!(want, Some(3));
        }
        visible += want.is_some() as usize;
    }
    assert!(visible >= 4, "only {visible} corruptions detected");
}

#[test]
fn corrupted_term_breaks_doubling_at_first_affected_n() {
    let terms = collect_terms(&Family::Alpha.spec(), 4095).unwrap();
    for (victim, extra) in [(40usize, 1u64), (101, 7), (700, 3), (2000, 1)] {
        let mut bad = terms.clone();
        bad[victim] = bad[victim].clone() + OddPoly::monomial(extra).unwrap();
        let dense: Vec<DensePoly> = bad
            .iter()
            .map(|p| DensePoly::from_exponents(p.terms()))
            .collect();
        let want = first_doubling_failure(&dense, 1).expect("corruption must be visible");
        let report = check_doubling(&bad, 1).unwrap();
        assert_eq!(
            report.failure.unwrap().at,
            Location::N(want),
            "victim index {victim}"
        );
    }
}

#[test]
fn uncorrupted_families_double_cleanly() {
    for family in Family::STAR {
        assert!(verify_doubling(&family.spec(), 2047).unwrap().passed());
        assert_eq!(first_doubling_failure(&family_table(family, 2047), 1), None);
    }
    assert!(verify_doubling(&Family::Cor42.spec(), 101).is_err());
}

#[test]
fn dense_oracle_agrees_on_random_sequences() {
    for seed in 0..300 {
        assert!(op_sequence_agrees(seed, 4096), "seed {seed}");
    }
}

#[test]
fn pk_constructions_agree_on_seeds() {
    let table = pk_from_recurrence(80).unwrap();
    for (k, exps) in PK_SEEDS {
        let want = WPoly::from_exponents(exps.iter().copied()).unwrap();
        assert_eq!(pk_from_families(k).unwrap(), want, "P_{k}");
        assert_eq!(table.get(k), Some(&want));
    }
}
