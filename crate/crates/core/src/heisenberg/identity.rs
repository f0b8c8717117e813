//! The basis words `u_σ`, `ū_σ`, their pairing into `A`, and the strong
//! identity `1_d = Σ_σ (1/‖σ‖) u_σ ⊗ ū_σ`.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::{APoly, Mode, NormalWord, UElement};
use crate::error::{Error, Result};
use crate::partitions::{enumerate_labeled_partitions, symmetry_factor, LabeledPartition};
use crate::rational::Rational;

fn word_for(sigma: &LabeledPartition, sign: i64) -> NormalWord {
    let modes: Vec<Mode> = sigma
        .slots()
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.parts().iter().map(move |&l| Mode::new(i + 1, sign * i64::from(l))))
        .collect();
    if sign < 0 {
        NormalWord::new(modes, vec![], vec![]).expect("negative exponents")
    } else {
        NormalWord::new(vec![], vec![], modes).expect("positive exponents")
    }
}

/// `u_σ = ∏_i ∏_l H_i t^{-l}`, of degree `|σ|`.
pub fn u_element(sigma: &LabeledPartition) -> UElement {
    UElement::from_word(sigma.rank(), word_for(sigma, -1))
}

/// `ū_σ = ∏_i ∏_l H_i t^{l}`, of degree `-|σ|`.
pub fn ubar_element(sigma: &LabeledPartition) -> UElement {
    UElement::from_word(sigma.rank(), word_for(sigma, 1))
}

/// `⋆(ū_σ · u_τ) ∈ A`.
pub fn pairing(sigma: &LabeledPartition, tau: &LabeledPartition) -> Result<APoly> {
    if sigma.rank() != tau.rank() {
        return Err(Error::RankMismatch {
            expected: sigma.rank(),
            found: tau.rank(),
        });
    }
    if sigma.weight() != tau.weight() {
        return Err(Error::WeightMismatch {
            left: sigma.weight(),
            right: tau.weight(),
        });
    }
    ubar_element(sigma).multiply(&u_element(tau))?.star_to_a()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityTerm {
    pub partition: LabeledPartition,
    #[serde(with = "crate::rational::serde_str")]
    pub coeff: Rational,
}

/// `1_d` as coefficiented pairs `(σ, 1/‖σ‖)`; serializes as the bare list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct StrongIdentity {
    pub terms: Vec<IdentityTerm>,
}

pub fn strong_identity(n: usize, d: u32) -> StrongIdentity {
    let terms = enumerate_labeled_partitions(n, d)
        .into_iter()
        .map(|sigma| {
            let norm = BigInt::from(symmetry_factor(&sigma));
            IdentityTerm {
                partition: sigma,
                coeff: Rational::new(BigInt::from(1), norm),
            }
        })
        .collect();
    StrongIdentity { terms }
}

#[derive(Debug, Clone, Serialize)]
pub struct StrongIdentityReport {
    pub rank: usize,
    pub degree: u32,
    pub passed: bool,
    pub basis: Vec<LabeledPartition>,
    /// Closed-form `‖σ‖` for each basis element.
    pub expected_diagonal: Vec<String>,
    /// `matrix[a][b] = ⋆(ū_{σ_a} · u_{σ_b})`.
    pub matrix: Vec<Vec<APoly>>,
    /// Entries `(a, b)` where the matrix differs from `diag(‖σ‖)`.
    pub mismatches: Vec<(usize, usize)>,
}

impl StrongIdentityReport {
    /// Diagonal entries, when they are constants.
    pub fn diagonal(&self) -> Vec<Option<Rational>> {
        self.matrix
            .iter()
            .enumerate()
            .map(|(i, row)| row[i].is_constant().then(|| row[i].constant_term()))
            .collect()
    }
}

/// Computes the full pairing matrix over `P^n_d` and compares it with
/// `diag(‖σ‖)`. Rows are evaluated in parallel and assembled in order.
pub fn verify_strong_identity(n: usize, d: u32) -> Result<StrongIdentityReport> {
    let basis = enumerate_labeled_partitions(n, d);
    let ubars: Vec<UElement> = basis.iter().map(ubar_element).collect();
    let us: Vec<UElement> = basis.iter().map(u_element).collect();
    let matrix: Vec<Vec<APoly>> = ubars
        .par_iter()
        .map(|ub| {
            us.iter()
                .map(|u| ub.multiply(u).and_then(|p| p.star_to_a()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let norms: Vec<BigUint> = basis.iter().map(symmetry_factor).collect();
    let mut mismatches = Vec::new();
    for (a, row) in matrix.iter().enumerate() {
        for (b, entry) in row.iter().enumerate() {
            let ok = if a == b {
                *entry == APoly::constant(n, Rational::from_integer(BigInt::from(norms[a].clone())))
            } else {
                entry.is_zero()
            };
            if !ok {
                mismatches.push((a, b));
            }
        }
    }
    Ok(StrongIdentityReport {
        rank: n,
        degree: d,
        passed: mismatches.is_empty(),
        basis,
        expected_diagonal: norms.iter().map(|x| x.to_string()).collect(),
        matrix,
        mismatches,
    })
}

/// `p^n_d` together with evidence that `{u_σ ⊗ 1}` is A-linearly
/// independent: the pairing matrix is diagonal with nonzero constant entries.
#[derive(Debug, Clone, Serialize)]
pub struct RankCertificate {
    pub rank: usize,
    pub degree: u32,
    pub dimension: usize,
    #[serde(with = "crate::rational::serde_vec")]
    pub diagonal: Vec<Rational>,
    pub nondegenerate: bool,
}

pub fn phil_rank_certificate(n: usize, d: u32) -> Result<RankCertificate> {
    let report = verify_strong_identity(n, d)?;
    let diagonal: Vec<Rational> = report
        .diagonal()
        .into_iter()
        .map(|x| x.unwrap_or_else(Rational::zero))
        .collect();
    let off_diagonal_zero = report
        .matrix
        .iter()
        .enumerate()
        .all(|(a, row)| row.iter().enumerate().all(|(b, e)| a == b || e.is_zero()));
    let diag_ok = report.diagonal().iter().all(|x| matches!(x, Some(v) if !v.is_zero()));
    Ok(RankCertificate {
        rank: n,
        degree: d,
        dimension: report.basis.len(),
        diagonal,
        nondegenerate: off_diagonal_zero && diag_ok,
    })
}
