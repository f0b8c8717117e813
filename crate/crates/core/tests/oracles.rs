mod common;

use common::*;
use mta_core::heisenberg::{pairing, strong_identity, Mode, UElement};
use mta_core::lattice::EvenLattice;
use mta_core::partitions::{enumerate_labeled_partitions, labeled_partition_count, symmetry_factor, LabeledPartition};
use mta_core::rational::{frac, q, Rational};
use mta_core::zhu::heisenberg_block_sizes;
use num_bigint::BigUint;

fn slot_modes(sigma: &LabeledPartition) -> Vec<(usize, u32)> {
    sigma
        .slots()
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.parts().iter().map(move |&l| (i + 1, l)))
        .collect()
}

fn slots(sigma: &LabeledPartition) -> Vec<Vec<u32>> {
    sigma.slots().iter().map(|p| p.parts().to_vec()).collect()
}

#[test]
fn partition_counts_match_recursion() {
    for n in 1..=4 {
        for m in 0..=14u32 {
            let expected = brute_labeled(n, m);
            assert_eq!(
                labeled_partition_count(n, m as usize),
                BigUint::from(expected),
                "n={n} m={m}"
            );
            assert_eq!(enumerate_labeled_partitions(n, m).len() as u64, expected);
        }
    }
    assert_eq!(heisenberg_block_sizes(1, 5).unwrap(), vec![1, 1, 2, 3, 5, 7]);
    assert_eq!(heisenberg_block_sizes(2, 3).unwrap(), vec![1, 2, 5, 10]);
}

#[test]
fn pairing_matches_wick_matching() {
    for n in 1..=2 {
        for d in 0..=5u32 {
            let basis = enumerate_labeled_partitions(n, d);
            for s in &basis {
                for t in &basis {
                    let wick = wick_pairing(&slot_modes(s), &slot_modes(t));
                    let p = pairing(s, t).unwrap();
                    assert!(p.is_constant(), "{s:?} {t:?}");
                    assert_eq!(p.constant_term(), q(wick as i64), "{s:?} {t:?}");
                }
                assert_eq!(symmetry_factor(s), BigUint::from(closed_form_factor(&slots(s))));
                assert_eq!(
                    wick_pairing(&slot_modes(s), &slot_modes(s)),
                    closed_form_factor(&slots(s))
                );
            }
        }
    }
}

#[test]
fn pairing_matches_fock_vacuum() {
    let h = [frac(3, 7), q(-2)];
    for d in 0..=4u32 {
        let basis = enumerate_labeled_partitions(2, d);
        for s in &basis {
            for t in &basis {
                let modes: Vec<Mode> = slot_modes(s)
                    .iter()
                    .map(|&(i, l)| Mode::new(i, i64::from(l)))
                    .chain(slot_modes(t).iter().map(|&(i, l)| Mode::new(i, -i64::from(l))))
                    .collect();
                let out = apply_modes(&modes, &vacuum(), &h);
                let vev = out.get(&vec![]).cloned().unwrap_or_else(|| q(0));
                assert!(out.len() <= 1);
                assert_eq!(pairing(s, t).unwrap().evaluate(&h).unwrap(), vev);
            }
        }
    }
}

#[test]
fn identity_coefficients_invert_norms() {
    for d in 0..=5 {
        for term in strong_identity(2, d).terms {
            let norm = closed_form_factor(&slots(&term.partition));
            assert_eq!(term.coeff * q(norm as i64), q(1));
        }
    }
}

#[test]
fn normal_ordering_matches_fock_action() {
    let h = [frac(5, 3), frac(-1, 2)];
    let words: Vec<Vec<Mode>> = vec![
        vec![Mode::new(1, 2), Mode::new(1, -2)],
        vec![Mode::new(1, 1), Mode::new(2, -1), Mode::new(1, -1), Mode::new(1, 0)],
        vec![
            Mode::new(2, 3),
            Mode::new(1, 1),
            Mode::new(2, -1),
            Mode::new(2, -2),
            Mode::new(1, -1),
        ],
        vec![Mode::new(1, 1), Mode::new(1, 1), Mode::new(1, -1), Mode::new(1, -1)],
        vec![Mode::new(2, 0), Mode::new(2, 2), Mode::new(2, -1), Mode::new(2, -1)],
    ];
    let probes: Vec<Fock> = vec![
        vacuum(),
        apply_modes(&[Mode::new(1, -1), Mode::new(1, -1), Mode::new(2, -2)], &vacuum(), &h),
        apply_modes(
            &[Mode::new(2, -1), Mode::new(1, -2), Mode::new(2, -3), Mode::new(1, -1)],
            &vacuum(),
            &h,
        ),
    ];
    for w in &words {
        let u = UElement::from_modes(2, w).unwrap();
        for f in &probes {
            assert_eq!(apply_element(&u, f, &h), apply_modes(w, f, &h), "{w:?}");
        }
    }
}

fn brute_min_norm(gram: &[Vec<i64>], lambda: &[Rational]) -> Rational {
    box_norms(gram, lambda, 4).into_iter().min().unwrap()
}

#[test]
fn conformal_weights_match_box_search() {
    let grams = vec![
        vec![vec![8]],
        vec![vec![2, -1], vec![-1, 2]],
        vec![vec![4, 1], vec![1, 6]],
        vec![vec![2, 0, 0], vec![0, 4, 2], vec![0, 2, 4]],
    ];
    for g in grams {
        let lat = EvenLattice::new(g.clone()).unwrap();
        let cosets = lat.dual_cosets().unwrap();
        let det: i64 = lat.determinant().try_into().unwrap();
        assert_eq!(cosets.len() as i64, det);
        for (a, ca) in cosets.iter().enumerate() {
            assert!(lat.is_dual(&ca.lambda));
            assert_eq!(
                lat.conformal_weight(&ca.lambda).unwrap(),
                brute_min_norm(&g, &ca.lambda)
            );
            for cb in &cosets[..a] {
                let diff: Vec<Rational> = ca.lambda.iter().zip(&cb.lambda).map(|(x, y)| x - y).collect();
                assert!(
                    !diff.iter().all(|x| x.is_integer()),
                    "cosets {a} and {} coincide",
                    cb.index
                );
            }
        }
    }
}

#[test]
fn graded_dims_match_theta_times_partitions() {
    let g = vec![vec![2, 1], vec![1, 4]];
    let lat = EvenLattice::new(g.clone()).unwrap();
    let max = 4usize;
    for c in lat.dual_cosets().unwrap() {
        let h = lat.conformal_weight(&c.lambda).unwrap();
        let norms = box_norms(&g, &c.lambda, 8);
        let theta: Vec<u64> = (0..=max)
            .map(|k| norms.iter().filter(|x| **x == &h + q(k as i64)).count() as u64)
            .collect();
        let p: Vec<u64> = (0..=max as u32).map(|m| brute_labeled(2, m)).collect();
        let expected: Vec<u64> = (0..=max).map(|m| (0..=m).map(|k| theta[k] * p[m - k]).sum()).collect();
        assert_eq!(lat.graded_dims(&c.lambda, max).unwrap(), expected, "coset {}", c.index);
    }
}
