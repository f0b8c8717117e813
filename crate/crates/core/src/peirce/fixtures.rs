//! Concrete Peirce algebras: block matrix models, truncated Heisenberg
//! algebras evaluated at a point, and small counterexamples.

use num_traits::{One, Zero};

use super::{ModuleRep, PeirceAlgebra, Side};
use crate::error::{Error, Result};
use crate::heisenberg::verify_strong_identity;
use crate::linalg;
use crate::partitions::labeled_partition_count;
use crate::rational::Rational;

/// `𝔄_{i,-j} = ⊕_b Mat_{D^b_i × D^b_j}` with matrix multiplication.
///
/// Basis of `𝔄_{i,-j}`: block-major, then row-major matrix units `E^b_{r,s}`.
#[derive(Debug, Clone)]
pub struct MatrixModel {
    blocks: Vec<Vec<usize>>,
    algebra: PeirceAlgebra,
}

impl MatrixModel {
    /// `sizes[b][i] = D^b_i`; shorter lists are padded with zeros.
    pub fn new(sizes: &[Vec<usize>]) -> Result<Self> {
        let len = sizes.iter().map(Vec::len).max().unwrap_or(1).max(1);
        let blocks: Vec<Vec<usize>> = sizes
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.resize(len, 0);
                s
            })
            .collect();
        for (b, s) in blocks.iter().enumerate() {
            if s[0] == 0 && s.iter().any(|&x| x > 0) {
                return Err(Error::MalformedAlgebra(format!(
                    "block {b} has no degree-0 component but a nonzero component in higher degree"
                )));
            }
        }
        let max_degree = len - 1;
        let n = len;
        let dims: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| blocks.iter().map(|s| s[i] * s[j]).sum()).collect())
            .collect();
        let mut algebra = PeirceAlgebra::zero(max_degree, dims)?;
        let mut model = Self {
            blocks,
            algebra: algebra.clone(),
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for (b, s) in model.blocks.iter().enumerate() {
                        for r in 0..s[i] {
                            for m in 0..s[j] {
                                for t in 0..s[k] {
                                    let x = model.offset(b, i, j) + r * s[j] + m;
                                    let y = model.offset(b, j, k) + m * s[k] + t;
                                    let z = model.offset(b, i, k) + r * s[k] + t;
                                    algebra.set_structure_constant((i, j, k), (x, y, z), Rational::one())?;
                                }
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![Rational::zero(); algebra.dim(0, 0)];
        for (b, s) in model.blocks.iter().enumerate() {
            for r in 0..s[0] {
                unit[model.offset(b, 0, 0) + r * s[0] + r] = Rational::one();
            }
        }
        algebra.set_unit0(unit)?;
        model.algebra = algebra;
        Ok(model)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn algebra(&self) -> &PeirceAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> PeirceAlgebra {
        self.algebra
    }

    /// Index of `E^b_{0,0}` in the basis of `𝔄_{i,-j}`.
    pub fn offset(&self, block: usize, i: usize, j: usize) -> usize {
        self.blocks[..block].iter().map(|s| s[i] * s[j]).sum()
    }

    /// Identity matrix of block `b` inside `𝔄_d`.
    pub fn block_identity(&self, block: usize, d: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.algebra.dim(d, d)];
        let s = &self.blocks[block];
        for r in 0..s[d] {
            v[self.offset(block, d, d) + r * s[d] + r] = Rational::one();
        }
        v
    }

    /// Blocks with a nonzero degree-`d` component.
    pub fn support(&self, d: usize) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&b| self.blocks[b][d] > 0).collect()
    }

    /// `Q^{D^b_d}` as a left `𝔄_d`-module through block `b`.
    pub fn column_module(&self, block: usize, d: usize) -> ModuleRep {
        let dim = self.blocks[block][d];
        let alg_dim = self.algebra.dim(d, d);
        let mut action = vec![linalg::zeros(dim, dim); alg_dim];
        for r in 0..dim {
            for s in 0..dim {
                action[self.offset(block, d, d) + r * dim + s][r][s] = Rational::one();
            }
        }
        ModuleRep {
            label: format!("col(b{block},d{d})"),
            side: Side::Left,
            algebra_dim: alg_dim,
            dim,
            action,
        }
    }
}

pub fn matrix_model(sizes: &[Vec<usize>]) -> Result<PeirceAlgebra> {
    MatrixModel::new(sizes).map(MatrixModel::into_algebra)
}

/// Truncation at `max_degree` of the rank-`n` Heisenberg Peirce algebra with
/// `A` evaluated at `h_i = point[i-1]`. Basis of `𝔄_{i,-j}`: pairs `(σ, τ)`
/// with `σ ∈ P^n_i`, `τ ∈ P^n_j`, index `σ·p^n_j + τ`, standing for
/// `u_σ ⊗ ū_τ`.
pub fn heisenberg_truncation(n: usize, max_degree: usize, point: &[Rational]) -> Result<PeirceAlgebra> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if point.len() != n {
        return Err(Error::RankMismatch {
            expected: n,
            found: point.len(),
        });
    }
    let deg = |d: usize| u32::try_from(d).map_err(|_| Error::Overflow("degree"));
    let counts: Vec<usize> = (0..=max_degree)
        .map(|d| {
            let c = labeled_partition_count(n, d);
            usize::try_from(c).map_err(|_| Error::Overflow("partition count"))
        })
        .collect::<Result<_>>()?;
    let gram: Vec<Vec<Vec<Rational>>> = (0..=max_degree)
        .map(|d| {
            let r = verify_strong_identity(n, deg(d)?)?;
            r.matrix
                .iter()
                .map(|row| row.iter().map(|p| p.evaluate(point)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let dims: Vec<Vec<usize>> = counts
        .iter()
        .map(|&a| counts.iter().map(|&b| a * b).collect())
        .collect();
    let mut p = PeirceAlgebra::zero(max_degree, dims)?;
    let range = 0..=max_degree;
    for i in range.clone() {
        for j in range.clone() {
            for k in range.clone() {
                let (pi, pj, pk) = (counts[i], counts[j], counts[k]);
                for s in 0..pi {
                    for t in 0..pj {
                        for s2 in 0..pj {
                            let g = &gram[j][t][s2];
                            if g.is_zero() {
                                continue;
                            }
                            for t2 in 0..pk {
                                p.set_structure_constant(
                                    (i, j, k),
                                    (s * pj + t, s2 * pk + t2, s * pk + t2),
                                    g.clone(),
                                )?;
                            }
                        }
                    }
                }
            }
        }
    }
    let g0 = gram[0][0][0].clone();
    p.set_unit0(vec![Rational::one() / g0])?;
    Ok(p)
}

/// `D = 1`, every component one-dimensional, `b ⋆ a = e` the only nonzero
/// product involving degree 1. Passes the Peirce axioms but has no strong
/// identity in degree 1.
pub fn degenerate_pairing() -> PeirceAlgebra {
    let mut p = PeirceAlgebra::zero(1, vec![vec![1, 1], vec![1, 1]]).expect("square dims");
    let one = Rational::one;
    let set = |p: &mut PeirceAlgebra, t| p.set_structure_constant(t, (0, 0, 0), one()).expect("in range");
    set(&mut p, (0, 0, 0));
    set(&mut p, (1, 0, 0));
    set(&mut p, (0, 0, 1));
    set(&mut p, (1, 0, 1));
    p.set_unit0(vec![one()]).expect("dim A = 1");
    p
}

/// `A = Q` and every other component zero.
pub fn scalar_algebra(max_degree: usize) -> PeirceAlgebra {
    let n = max_degree + 1;
    let mut dims = vec![vec![0; n]; n];
    dims[0][0] = 1;
    let mut p = PeirceAlgebra::zero(max_degree, dims).expect("square dims");
    p.set_structure_constant((0, 0, 0), (0, 0, 0), Rational::one())
        .expect("in range");
    p.set_unit0(vec![Rational::one()]).expect("dim A = 1");
    p
}
