use std::collections::BTreeMap;

use casimir_core::catalog::{catalog_entries, catalog_lookup, Params};
use casimir_core::format::parse_polynomial;
use casimir_core::invariants::{is_invariant, num_invariants};
use casimir_core::rational::{frac, int};
use casimir_core::semidirect::{semidirect_sum, validate_levi};

fn sample_params() -> Vec<Params> {
    [int(-3), int(-1), frac(1, 2), int(1), int(2)]
        .into_iter()
        .map(|p| BTreeMap::from([("p".to_string(), p)]))
        .collect()
}

#[test]
fn every_entry_satisfies_jacobi() {
    for e in catalog_entries() {
        let sets = if e.params.iter().any(|(k, _)| *k == "p") { sample_params() } else { vec![Params::new()] };
        for params in sets {
            let inst = e.instantiate(&params).unwrap();
            assert!(inst.algebra.satisfies_jacobi(), "{}", inst.name);
        }
    }
    for n in 2..=4 {
        let params = BTreeMap::from([("n".to_string(), int(n))]);
        let inst = catalog_lookup("sa_n").unwrap().instantiate(&params).unwrap();
        assert!(inst.algebra.satisfies_jacobi());
    }
}

#[test]
fn known_invariants_verify() {
    for e in catalog_entries() {
        let alg = e.algebra();
        for text in e.known_invariants {
            let p = parse_polynomial(text, alg.basis()).unwrap();
            assert!(is_invariant(&alg, &p).unwrap(), "{}: {text}", e.name);
        }
    }
}

#[test]
fn expected_counts_over_three_seeds() {
    for e in catalog_entries() {
        let sets = if e.params.iter().any(|(k, _)| *k == "p") { sample_params() } else { vec![Params::new()] };
        for params in sets {
            let Some(expected) = e.expected_n_at(&params) else { continue };
            let inst = e.instantiate(&params).unwrap();
            for seed in [0, 1, 2] {
                assert_eq!(num_invariants(&inst.algebra, 5, seed), expected, "{} seed {seed}", inst.name);
            }
        }
    }
}

#[test]
fn levi_metadata_splits_back() {
    for e in catalog_entries() {
        let inst = e.instantiate(&Params::new()).unwrap();
        let Some(pair) = inst.levi_pair() else { continue };
        let pair = pair.unwrap();
        assert_eq!(semidirect_sum(&pair).unwrap(), inst.algebra, "{}", e.name);
        let report = validate_levi(&pair);
        assert!(report.rep_ok && report.module_ok, "{}", e.name);
    }
}

#[test]
fn t1_2_ignores_p() {
    let params = BTreeMap::from([("p".to_string(), int(1))]);
    let inst = catalog_lookup("T1_2").unwrap().instantiate(&params).unwrap();
    assert_eq!(inst.algebra.dim(), 8);
    assert_eq!(num_invariants(&inst.algebra, 5, 0), 0);
}

#[test]
fn exceptional_parameters_carry_their_invariant() {
    for e in catalog_entries() {
        for (value, text) in e.exceptional {
            let params = BTreeMap::from([("p".to_string(), int(*value))]);
            let inst = e.instantiate(&params).unwrap();
            assert!(!inst.warnings.is_empty());
            let p = parse_polynomial(text, inst.algebra.basis()).unwrap();
            assert!(is_invariant(&inst.algebra, &p).unwrap(), "{}: {text}", inst.name);
            assert!(num_invariants(&inst.algebra, 5, 0) > 0);
        }
    }
}
