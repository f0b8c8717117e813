use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{Bilinear, FdAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, sparse_axpy, Matrix, SparseVec, Subspace};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// A finite-dimensional module given by one action matrix per algebra basis
/// element. `action[x][row][col]` is the coefficient of `e_row` in `e_x · e_col`
/// (or `e_col · e_x` for right modules).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "ModuleRepJson", try_from = "ModuleRepJson")]
pub struct ModuleRep {
    pub label: String,
    pub side: Side,
    pub algebra_dim: usize,
    pub dim: usize,
    pub action: Vec<Matrix>,
}

impl ModuleRep {
    pub fn new(
        label: impl Into<String>,
        side: Side,
        algebra_dim: usize,
        dim: usize,
        action: Vec<Matrix>,
    ) -> Result<Self> {
        let label = label.into();
        let shape_ok = action.len() == algebra_dim
            && action
                .iter()
                .all(|m| m.len() == dim && m.iter().all(|r| r.len() == dim));
        if !shape_ok {
            return Err(Error::MalformedModule(format!(
                "{label}: expected {algebra_dim} action matrices of size {dim}x{dim}"
            )));
        }
        Ok(Self {
            label,
            side,
            algebra_dim,
            dim,
            action,
        })
    }

    /// The module is the left factor of `b`, the algebra the right factor.
    pub fn from_right_product(label: impl Into<String>, b: &Bilinear) -> Self {
        let (dim, algebra_dim, _) = b.dims();
        let mut action = vec![linalg::zeros(dim, dim); algebra_dim];
        for (m, x, row, v) in b.nonzero_entries() {
            action[x][row][m] = v.clone();
        }
        Self {
            label: label.into(),
            side: Side::Right,
            algebra_dim,
            dim,
            action,
        }
    }

    /// The algebra is the left factor of `b`, the module the right factor.
    pub fn from_left_product(label: impl Into<String>, b: &Bilinear) -> Self {
        let (algebra_dim, dim, _) = b.dims();
        let mut action = vec![linalg::zeros(dim, dim); algebra_dim];
        for (x, m, row, v) in b.nonzero_entries() {
            action[x][row][m] = v.clone();
        }
        Self {
            label: label.into(),
            side: Side::Left,
            algebra_dim,
            dim,
            action,
        }
    }

    /// The algebra acting on itself.
    pub fn regular(label: impl Into<String>, algebra: &FdAlgebra, side: Side) -> Self {
        match side {
            Side::Left => Self::from_left_product(label, &algebra.product),
            Side::Right => Self::from_right_product(label, &algebra.product),
        }
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn action_of(&self, x: &[Rational]) -> Matrix {
        let mut out = linalg::zeros(self.dim, self.dim);
        for (t, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (row, src) in out.iter_mut().zip(&self.action[t]) {
                linalg::add_scaled(row, c, src);
            }
        }
        out
    }

    pub fn act(&self, x: &[Rational], v: &[Rational]) -> Vec<Rational> {
        linalg::mat_vec(&self.action_of(x), v)
    }

    /// `e_x` applied to `e_col`, as a sparse vector.
    pub fn act_basis(&self, x: usize, col: usize) -> SparseVec {
        self.action[x]
            .iter()
            .enumerate()
            .filter(|(_, r)| !r[col].is_zero())
            .map(|(row, r)| (row, r[col].clone()))
            .collect()
    }

    /// Checks `ρ(x)ρ(y) = ρ(xy)` (left) or `ρ(y)ρ(x) = ρ(xy)` (right) on
    /// basis elements, and that the unit acts trivially when present.
    pub fn is_representation_of(&self, algebra: &FdAlgebra) -> bool {
        if self.algebra_dim != algebra.dim {
            return false;
        }
        let n = algebra.dim;
        for x in 0..n {
            for y in 0..n {
                let xy = linalg::dense_from_sparse(algebra.product.get(x, y), n);
                let composed = match self.side {
                    Side::Left => linalg::mat_mul(&self.action[x], &self.action[y], self.dim, self.dim),
                    Side::Right => linalg::mat_mul(&self.action[y], &self.action[x], self.dim, self.dim),
                };
                if composed != self.action_of(&xy) {
                    return false;
                }
            }
        }
        match &algebra.unit {
            Some(u) => self.is_unital(u),
            None => true,
        }
    }

    pub fn is_unital(&self, unit: &[Rational]) -> bool {
        self.action_of(unit) == linalg::identity(self.dim)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ActionEntry {
    x: usize,
    row: usize,
    col: usize,
    #[serde(with = "crate::rational::serde_str")]
    coeff: Rational,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ModuleRepJson {
    label: String,
    side: Side,
    algebra_dim: usize,
    dim: usize,
    entries: Vec<ActionEntry>,
}

impl From<ModuleRep> for ModuleRepJson {
    fn from(m: ModuleRep) -> Self {
        let mut entries = Vec::new();
        for (x, mat) in m.action.iter().enumerate() {
            for (row, r) in mat.iter().enumerate() {
                for (col, v) in r.iter().enumerate() {
                    if !v.is_zero() {
                        entries.push(ActionEntry {
                            x,
                            row,
                            col,
                            coeff: v.clone(),
                        });
                    }
                }
            }
        }
        Self {
            label: m.label,
            side: m.side,
            algebra_dim: m.algebra_dim,
            dim: m.dim,
            entries,
        }
    }
}

impl TryFrom<ModuleRepJson> for ModuleRep {
    type Error = Error;

    fn try_from(j: ModuleRepJson) -> Result<Self> {
        let mut action = vec![linalg::zeros(j.dim, j.dim); j.algebra_dim];
        for e in j.entries {
            if e.x >= j.algebra_dim || e.row >= j.dim || e.col >= j.dim {
                return Err(Error::MalformedModule(format!(
                    "entry ({}, {}, {}) out of range",
                    e.x, e.row, e.col
                )));
            }
            action[e.x][e.row][e.col] = e.coeff;
        }
        ModuleRep::new(j.label, j.side, j.algebra_dim, j.dim, action)
    }
}

/// `M ⊗_B N` for a right `B`-module `M` and a left `B`-module `N`, realised
/// as `(M ⊗ N) / R` with `R` spanned by `m·x ⊗ n - m ⊗ x·n`.
///
/// Flat index of `e_i ⊗ e_j` is `i * right_dim + j`. The quotient basis is the
/// set of free columns of `R` in RREF, so each basis vector is the image of an
/// elementary tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedTensor {
    pub left_dim: usize,
    pub right_dim: usize,
    pub relations: Subspace,
    pub basis: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl BalancedTensor {
    fn from_relations(left_dim: usize, right_dim: usize, relations: Subspace) -> Self {
        let basis = relations.free_columns();
        let mut position = vec![None; left_dim * right_dim];
        for (k, &p) in basis.iter().enumerate() {
            position[p] = Some(k);
        }
        Self {
            left_dim,
            right_dim,
            relations,
            basis,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn flat(&self, i: usize, j: usize) -> usize {
        i * self.right_dim + j
    }

    /// `(i, j)` with `e_i ⊗ e_j` mapping to quotient basis vector `k`, or
    /// the pair for a flat index.
    pub fn lift(&self, flat: usize) -> (usize, usize) {
        (flat / self.right_dim, flat % self.right_dim)
    }

    pub fn lift_basis(&self, k: usize) -> (usize, usize) {
        self.lift(self.basis[k])
    }

    /// Quotient coordinates of a tensor given in flat coordinates.
    pub fn project(&self, v: &[(usize, Rational)]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (p, x) in self.relations.reduce(v) {
            let k = self.position[p].expect("reduced vectors live on free columns");
            out[k] = x;
        }
        out
    }

    pub fn project_pair(&self, i: usize, j: usize) -> Vec<Rational> {
        self.project(&[(self.flat(i, j), Rational::one())])
    }

    /// Projects `Σ_i u_i e_i ⊗ Σ_j v_j e_j`.
    pub fn project_product(&self, u: &[(usize, Rational)], v: &[(usize, Rational)]) -> Vec<Rational> {
        let mut flat = SparseVec::new();
        for (i, a) in u {
            let row: SparseVec = v.iter().map(|(j, b)| (self.flat(*i, *j), a * b)).collect();
            flat = sparse_axpy(&flat, &Rational::one(), &row);
        }
        self.project(&flat)
    }

    /// Whether the linear extension of `f` on elementary tensors annihilates
    /// every relation. `is_zero` decides vanishing in the target.
    pub fn relations_vanish<F, Z>(&self, f: F, is_zero: Z) -> bool
    where
        F: Fn(usize, usize) -> SparseVec,
        Z: Fn(&SparseVec) -> bool,
    {
        self.relations.rows().all(|r| {
            let mut acc = SparseVec::new();
            for (p, c) in r {
                let (i, j) = self.lift(*p);
                acc = sparse_axpy(&acc, c, &f(i, j));
            }
            is_zero(&acc)
        })
    }
}

pub fn balanced_tensor(m: &ModuleRep, n: &ModuleRep) -> Result<BalancedTensor> {
    if m.side != Side::Right || n.side != Side::Left {
        return Err(Error::MalformedModule(format!(
            "balanced tensor needs a right module and a left module, got {} ({:?}) and {} ({:?})",
            m.label, m.side, n.label, n.side
        )));
    }
    if m.algebra_dim != n.algebra_dim {
        return Err(Error::MalformedModule(format!(
            "{} and {} are modules over algebras of different dimension",
            m.label, n.label
        )));
    }
    let (dm, dn) = (m.dim, n.dim);
    let ambient = dm * dn;
    let mut relations = Subspace::new(ambient);
    'outer: for x in 0..m.algebra_dim {
        let mx: Vec<SparseVec> = (0..dm).map(|i| m.act_basis(x, i)).collect();
        let nx: Vec<SparseVec> = (0..dn).map(|j| n.act_basis(x, j)).collect();
        for (i, mxi) in mx.iter().enumerate() {
            for (j, nxj) in nx.iter().enumerate() {
                let left: SparseVec = mxi.iter().map(|(a, c)| (a * dn + j, c.clone())).collect();
                let right: SparseVec = nxj.iter().map(|(b, c)| (i * dn + b, c.clone())).collect();
                let rel = sparse_axpy(&left, &-Rational::one(), &right);
                if !rel.is_empty() {
                    relations.insert(linalg::sparse_collect(rel));
                    if relations.dim() == ambient {
                        break 'outer;
                    }
                }
            }
        }
    }
    Ok(BalancedTensor::from_relations(dm, dn, relations))
}
