use num_traits::Zero;
use serde::Serialize;

use super::FdAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{self, SparseVec, Subspace};
use crate::rational::Rational;

/// `A = I ⊕ I'` for an ideal `I` with unit `ε`, where `I' = A(1 - ε)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealSplit {
    #[serde(with = "crate::rational::serde_vec")]
    pub epsilon: Vec<Rational>,
    #[serde(with = "crate::rational::serde_vec")]
    pub complement_unit: Vec<Rational>,
    #[serde(with = "crate::rational::serde_mat")]
    pub complement_basis: Vec<Vec<Rational>>,
    pub idempotent: bool,
    pub central: bool,
    /// `I·I' = I'·I = 0` and `I + I' = A` directly.
    pub block_diagonal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub ideal_dim: usize,
    /// `I² = I`.
    pub idempotent_ideal: bool,
    pub split: Option<IdealSplit>,
}

impl FdAlgebra {
    fn span_mul(&self, x: &[Rational], y: &[Rational]) -> SparseVec {
        linalg::sparse_from_dense(&self.mul(x, y))
    }

    /// Checks that `ideal` is a two-sided ideal, then looks for a unit of
    /// the ideal and the resulting block decomposition of the algebra.
    pub fn ideal_unit_and_split(&self, ideal: &Subspace) -> Result<IdealReport> {
        let unit = self
            .unit
            .clone()
            .ok_or_else(|| Error::Precondition("the ambient algebra has no unit".into()))?;
        if ideal.ambient() != self.dim {
            return Err(Error::NotAnIdeal(format!(
                "subspace of Q^{} in an algebra of dimension {}",
                ideal.ambient(),
                self.dim
            )));
        }
        let basis = ideal.basis();
        for z in &basis {
            for a in 0..self.dim {
                let e = linalg::unit_vector(self.dim, a);
                if !ideal.contains(&self.span_mul(&e, z)) || !ideal.contains(&self.span_mul(z, &e)) {
                    return Err(Error::NotAnIdeal(format!(
                        "basis element {a} moves a vector out of the subspace"
                    )));
                }
            }
        }
        let square = Subspace::spanned_by(
            self.dim,
            basis
                .iter()
                .flat_map(|x| basis.iter().map(move |y| (x, y)))
                .map(|(x, y)| self.span_mul(x, y)),
        );
        let idempotent_ideal = square.same_span(ideal);

        // ε = Σ c_k z_k with ε z_l = z_l = z_l ε
        let k = basis.len();
        let mut equations = Vec::new();
        for zl in &basis {
            let lefts: Vec<Vec<Rational>> = basis.iter().map(|zk| self.mul(zk, zl)).collect();
            let rights: Vec<Vec<Rational>> = basis.iter().map(|zk| self.mul(zl, zk)).collect();
            for prods in [&lefts, &rights] {
                for (c, target) in zl.iter().enumerate() {
                    let row: SparseVec = prods
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| !p[c].is_zero())
                        .map(|(t, p)| (t, p[c].clone()))
                        .collect();
                    equations.push((row, target.clone()));
                }
            }
        }
        let split = linalg::solve(k, &equations).map(|coeffs| {
            let mut epsilon = vec![Rational::zero(); self.dim];
            for (c, z) in coeffs.iter().zip(&basis) {
                linalg::add_scaled(&mut epsilon, c, z);
            }
            self.split_at(ideal, &basis, &unit, epsilon)
        });
        Ok(IdealReport {
            ideal_dim: k,
            idempotent_ideal,
            split,
        })
    }

    fn split_at(
        &self,
        ideal: &Subspace,
        basis: &[Vec<Rational>],
        unit: &[Rational],
        epsilon: Vec<Rational>,
    ) -> IdealSplit {
        let complement_unit: Vec<Rational> = unit.iter().zip(&epsilon).map(|(u, e)| u - e).collect();
        let idempotent = self.mul(&epsilon, &epsilon) == epsilon;
        let central = (0..self.dim).all(|a| {
            let e = linalg::unit_vector(self.dim, a);
            self.mul(&epsilon, &e) == self.mul(&e, &epsilon)
        });
        let complement = Subspace::spanned_by(
            self.dim,
            (0..self.dim).map(|a| self.span_mul(&linalg::unit_vector(self.dim, a), &complement_unit)),
        );
        let complement_basis = complement.basis();
        let orthogonal = basis.iter().all(|x| {
            complement_basis
                .iter()
                .all(|y| linalg::is_zero_vec(&self.mul(x, y)) && linalg::is_zero_vec(&self.mul(y, x)))
        });
        let mut sum = ideal.clone();
        for y in &complement_basis {
            sum.insert(linalg::sparse_from_dense(y));
        }
        let direct = sum.dim() == self.dim && ideal.dim() + complement.dim() == self.dim;
        IdealSplit {
            epsilon,
            complement_unit,
            complement_basis,
            idempotent,
            central,
            block_diagonal: orthogonal && direct,
        }
    }
}

impl IdealSplit {
    pub fn passed(&self) -> bool {
        self.idempotent && self.central && self.block_diagonal
    }
}

impl IdealReport {
    pub fn passed(&self) -> bool {
        self.idempotent_ideal && self.split.as_ref().is_some_and(IdealSplit::passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::peirce::Bilinear;
    use crate::rational::q;

    /// `Q × Q[x]/(x²)` with basis `e, f, x` (f the unit of the second factor).
    fn algebra() -> FdAlgebra {
        let mut p = Bilinear::zero(3, 3, 3);
        p.set(0, 0, 0, q(1));
        p.set(1, 1, 1, q(1));
        p.set(1, 2, 2, q(1));
        p.set(2, 1, 2, q(1));
        FdAlgebra {
            dim: 3,
            product: p,
            unit: Some(vec![q(1), q(1), q(0)]),
        }
    }

    #[test]
    fn unital_ideal_splits() {
        let a = algebra();
        assert!(a.is_associative());
        let i = Subspace::from_dense(3, &[vec![q(1), q(0), q(0)]]);
        let r = a.ideal_unit_and_split(&i).unwrap();
        assert!(r.passed());
        let s = r.split.unwrap();
        assert_eq!(s.epsilon, vec![q(1), q(0), q(0)]);
        assert_eq!(s.complement_basis.len(), 2);
    }

    #[test]
    fn nilpotent_ideal_has_no_unit() {
        let a = algebra();
        let i = Subspace::from_dense(3, &[vec![q(0), q(0), q(1)]]);
        let r = a.ideal_unit_and_split(&i).unwrap();
        assert!(!r.idempotent_ideal);
        assert!(r.split.is_none());
    }

    #[test]
    fn non_ideal_rejected() {
        let a = algebra();
        let i = Subspace::from_dense(3, &[vec![q(1), q(1), q(0)]]);
        assert!(matches!(a.ideal_unit_and_split(&i), Err(Error::NotAnIdeal(_))));
        let no_unit = FdAlgebra {
            unit: None,
            ..algebra()
        };
        assert!(matches!(no_unit.ideal_unit_and_split(&i), Err(Error::Precondition(_))));
    }
}
