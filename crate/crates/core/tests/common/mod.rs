#![allow(dead_code)]

use std::collections::BTreeMap;

use mta_core::heisenberg::{Mode, UElement};
use mta_core::rational::{q, Rational};
use num_traits::Zero;

/// Polynomials in `x_{i,a}` (generator `i`, level `a ≥ 1`), keyed by the
/// sorted list of `(i, a, power)` with nonzero power.
pub type Fock = BTreeMap<Vec<(usize, i64, u32)>, Rational>;

pub fn vacuum() -> Fock {
    let mut f = Fock::new();
    f.insert(vec![], q(1));
    f
}

fn add_into(out: &mut Fock, key: Vec<(usize, i64, u32)>, c: Rational) {
    let slot = out.entry(key.clone()).or_insert_with(Rational::zero);
    *slot += c;
    if slot.is_zero() {
        out.remove(&key);
    }
}

/// `H_i t^{-a}` multiplies by `x_{i,a}`, `H_i t^{a}` acts as `a ∂/∂x_{i,a}`
/// and `H_i t^0` as the scalar `h[i-1]`.
pub fn apply_mode(m: Mode, f: &Fock, h: &[Rational]) -> Fock {
    let (i, e) = (m.generator, m.exponent);
    let mut out = Fock::new();
    for (mono, c) in f {
        if e == 0 {
            add_into(&mut out, mono.clone(), c * &h[i - 1]);
        } else if e < 0 {
            let mut k = mono.clone();
            match k.iter_mut().find(|(g, a, _)| *g == i && *a == -e) {
                Some(entry) => entry.2 += 1,
                None => {
                    k.push((i, -e, 1));
                    k.sort();
                }
            }
            add_into(&mut out, k, c.clone());
        } else if let Some(pos) = mono.iter().position(|(g, a, _)| *g == i && *a == e) {
            let mut k = mono.clone();
            let p = k[pos].2;
            if p == 1 {
                k.remove(pos);
            } else {
                k[pos].2 -= 1;
            }
            add_into(&mut out, k, c * q(e) * q(i64::from(p)));
        }
    }
    out
}

/// Applies `m_1 m_2 ... m_k` (rightmost first).
pub fn apply_modes(modes: &[Mode], f: &Fock, h: &[Rational]) -> Fock {
    modes.iter().rev().fold(f.clone(), |acc, m| apply_mode(*m, &acc, h))
}

pub fn apply_element(u: &UElement, f: &Fock, h: &[Rational]) -> Fock {
    let mut out = Fock::new();
    for (word, c) in u.terms() {
        let modes: Vec<Mode> = word.modes().collect();
        for (k, v) in apply_modes(&modes, f, h) {
            add_into(&mut out, k, c * v);
        }
    }
    out
}

/// Sum over all bijections between annihilators and creators of the product
/// of contraction values; zero unless every matched pair is `H_i t^l`,
/// `H_i t^{-l}`.
pub fn wick_pairing(annihilators: &[(usize, u32)], creators: &[(usize, u32)]) -> u64 {
    if annihilators.len() != creators.len() {
        return 0;
    }
    let mut total = 0;
    let mut perm: Vec<usize> = (0..creators.len()).collect();
    permutations(&mut perm, 0, &mut |p| {
        let mut prod = 1u64;
        for (k, &j) in p.iter().enumerate() {
            if annihilators[k] != creators[j] {
                return;
            }
            prod *= u64::from(annihilators[k].1);
        }
        total += prod;
    });
    total
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

/// `∏_ℓ ℓ^{m_ℓ} m_ℓ!` straight from multiplicities.
pub fn closed_form_factor(slots: &[Vec<u32>]) -> u64 {
    let mut total = 1u64;
    for parts in slots {
        let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
        for &p in parts {
            *mult.entry(p).or_default() += 1;
        }
        for (l, m) in mult {
            total *= u64::from(l).pow(m as u32) * (1..=m).product::<u64>();
        }
    }
    total
}

/// Partitions of `m` with parts at most `max`, counted by recursion.
pub fn brute_partitions(m: u32, max: u32) -> u64 {
    if m == 0 {
        return 1;
    }
    (1..=max.min(m)).map(|k| brute_partitions(m - k, k)).sum()
}

/// `p^n_m` as a sum over weight compositions.
pub fn brute_labeled(n: usize, m: u32) -> u64 {
    if n == 0 {
        return u64::from(m == 0);
    }
    (0..=m)
        .map(|w| brute_partitions(w, w) * brute_labeled(n - 1, m - w))
        .sum()
}

/// `Q(α + λ)` over the box `|α_i| ≤ r`.
pub fn box_norms(gram: &[Vec<i64>], lambda: &[Rational], r: i64) -> Vec<Rational> {
    let n = gram.len();
    let mut out = Vec::new();
    let mut alpha = vec![-r; n];
    loop {
        let y: Vec<Rational> = alpha.iter().zip(lambda).map(|(&a, l)| q(a) + l).collect();
        let mut acc = Rational::zero();
        for i in 0..n {
            for j in 0..n {
                acc += &y[i] * &y[j] * q(gram[i][j]);
            }
        }
        out.push(acc / q(2));
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            alpha[k] += 1;
            if alpha[k] <= r {
                break;
            }
            alpha[k] = -r;
            k += 1;
        }
    }
}
