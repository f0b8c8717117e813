//! The zig-zag algebra `𝒵_d = 𝔄_{0,-d} ⊗_{𝔄_d} 𝔄_{d,0}` with product
//! `(a1⊗a2)∘(b1⊗b2) = a1 ⊗ (a2⋆b1⋆b2)` and the map `⋆: 𝒵_d → A`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{balanced_tensor, BalancedTensor, Bilinear, PeirceAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, SparseVec, Subspace};
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct ZigZag {
    pub degree: usize,
    pub tensor: BalancedTensor,
    pub product: Bilinear,
    /// `star[k] = ⋆(basis_k) ∈ A`.
    pub star: Vec<Vec<Rational>>,
    /// `left_action[x]` is `𝔷 ↦ e_x ⋆□ 𝔷` in the quotient basis.
    pub left_action: Vec<Matrix>,
    pub right_action: Vec<Matrix>,
    pub well_defined: bool,
    a_dim: usize,
    a_product: Bilinear,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionCheck {
    pub passed: bool,
    pub checked: usize,
    /// Basis pairs `(k1, k2)` where `𝔞∘𝔟`, `𝔞 ⋆□ ⋆(𝔟)` and `⋆(𝔞) ⋆□ 𝔟` disagree.
    pub failures: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZigZagLaws {
    pub degree: usize,
    pub dim: usize,
    /// Elementary tensors `(a, b)` whose images form the basis.
    pub basis: Vec<(usize, usize)>,
    pub zd_dim: usize,
    pub well_defined: bool,
    pub associative: bool,
    pub star_homomorphism: bool,
    pub star_injective: bool,
    /// `𝒵_d ∘ 𝒵_d = 𝒵_d`.
    pub square_spans: bool,
    /// `Z_d ⋆ Z_d = Z_d` inside `A`.
    pub zd_idempotent: bool,
    pub action_through_a: ActionCheck,
}

impl ZigZagLaws {
    pub fn passed(&self) -> bool {
        self.well_defined
            && self.associative
            && self.star_homomorphism
            && self.star_injective
            && self.square_spans
            && self.zd_idempotent
            && self.action_through_a.passed
    }
}

fn pair_flat(t: &BalancedTensor, a: usize, v: &[(usize, Rational)]) -> SparseVec {
    v.iter().map(|(b, c)| (t.flat(a, *b), c.clone())).collect()
}

fn flat_left(t: &BalancedTensor, v: &[(usize, Rational)], b: usize) -> SparseVec {
    v.iter().map(|(a, c)| (t.flat(*a, b), c.clone())).collect()
}

pub fn zigzag(p: &PeirceAlgebra, d: usize) -> Result<ZigZag> {
    if d > p.max_degree() {
        return Err(Error::DegreeOutOfRange {
            degree: d,
            max: p.max_degree(),
        });
    }
    let m = p.right_module(0, d);
    let n = p.left_module(d, 0);
    let t = balanced_tensor(&m, &n)?;
    let a_dim = p.dim(0, 0);
    let (star_p, mid, back) = (p.product(0, d, 0), p.product(d, 0, d), p.product(d, d, 0));
    let (act_l, act_r) = (p.product(0, 0, d), p.product(d, 0, 0));

    let circ_flat = |a1: usize, a2: usize, b1: usize, b2: usize| -> SparseVec {
        let y = mid.get(a2, b1);
        let z = back.apply_sparse(y, &[(b2, Rational::one())]);
        pair_flat(&t, a1, &z)
    };
    let left_flat = |x: usize, a: usize, b: usize| flat_left(&t, act_l.get(x, a), b);
    let right_flat = |x: usize, a: usize, b: usize| pair_flat(&t, a, act_r.get(b, x));

    let mn = t.left_dim * t.right_dim;
    let in_relations = |v: &SparseVec| t.relations.contains(v);
    let mut well_defined = t.relations_vanish(|a, b| star_p.get(a, b).clone(), |v| v.is_empty());
    for x in 0..a_dim {
        well_defined = well_defined
            && t.relations_vanish(|a, b| left_flat(x, a, b), in_relations)
            && t.relations_vanish(|a, b| right_flat(x, a, b), in_relations);
    }
    for q in 0..mn {
        let (b1, b2) = t.lift(q);
        well_defined = well_defined
            && t.relations_vanish(|a1, a2| circ_flat(a1, a2, b1, b2), in_relations)
            && t.relations_vanish(|a1, a2| circ_flat(b1, b2, a1, a2), in_relations);
        if !well_defined {
            break;
        }
    }

    let dim = t.dim();
    let lifts: Vec<(usize, usize)> = (0..dim).map(|k| t.lift_basis(k)).collect();
    let mut product = Bilinear::zero(dim, dim, dim);
    for (k1, &(a1, a2)) in lifts.iter().enumerate() {
        for (k2, &(b1, b2)) in lifts.iter().enumerate() {
            for (c, v) in t.project(&circ_flat(a1, a2, b1, b2)).into_iter().enumerate() {
                product.set(k1, k2, c, v);
            }
        }
    }
    let star = lifts
        .iter()
        .map(|&(a, b)| linalg::dense_from_sparse(star_p.get(a, b), a_dim))
        .collect();
    let action_matrices = |f: &dyn Fn(usize, usize, usize) -> SparseVec| -> Vec<Matrix> {
        (0..a_dim)
            .map(|x| {
                let mut mat = linalg::zeros(dim, dim);
                for (col, &(a, b)) in lifts.iter().enumerate() {
                    for (row, v) in t.project(&f(x, a, b)).into_iter().enumerate() {
                        mat[row][col] = v;
                    }
                }
                mat
            })
            .collect()
    };
    let left_action = action_matrices(&left_flat);
    let right_action = action_matrices(&right_flat);
    Ok(ZigZag {
        degree: d,
        tensor: t.clone(),
        product,
        star,
        left_action,
        right_action,
        well_defined,
        a_dim,
        a_product: p.product(0, 0, 0).clone(),
    })
}

impl ZigZag {
    pub fn dim(&self) -> usize {
        self.tensor.dim()
    }

    pub fn compose(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.product.apply(x, y)
    }

    pub fn star_of(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.a_dim];
        for (c, s) in x.iter().zip(&self.star) {
            linalg::add_scaled(&mut out, c, s);
        }
        out
    }

    /// `Z_d = ⋆(𝒵_d) ⊆ A`.
    pub fn star_image(&self) -> Subspace {
        Subspace::from_dense(self.a_dim, &self.star)
    }

    fn apply_action(&self, mats: &[Matrix], a: &[Rational], z: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (c, m) in a.iter().zip(mats) {
            if !c.is_zero() {
                linalg::add_scaled(&mut out, c, &linalg::mat_vec(m, z));
            }
        }
        out
    }

    /// `a ⋆□ 𝔷` for `a ∈ A`.
    pub fn act_left(&self, a: &[Rational], z: &[Rational]) -> Vec<Rational> {
        self.apply_action(&self.left_action, a, z)
    }

    /// `𝔷 ⋆□ a` for `a ∈ A`.
    pub fn act_right(&self, z: &[Rational], a: &[Rational]) -> Vec<Rational> {
        self.apply_action(&self.right_action, a, z)
    }

    fn basis(&self, k: usize) -> Vec<Rational> {
        linalg::unit_vector(self.dim(), k)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let xy = self.product.get(x, y);
                (0..n).all(|z| {
                    let l = self.product.apply_sparse(xy, &[(z, Rational::one())]);
                    let r = self
                        .product
                        .apply_sparse(&[(x, Rational::one())], self.product.get(y, z));
                    l == r
                })
            })
        })
    }

    pub fn star_is_homomorphism(&self) -> bool {
        let n = self.dim();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let lhs = self.star_of(&self.compose(&self.basis(x), &self.basis(y)));
                let rhs = self.a_product.apply(&self.star[x], &self.star[y]);
                lhs == rhs
            })
        })
    }

    pub fn star_is_injective(&self) -> bool {
        self.star_image().dim() == self.dim()
    }

    pub fn square_spans(&self) -> bool {
        let n = self.dim();
        let sq = Subspace::spanned_by(
            n,
            (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .map(|(x, y)| self.product.get(x, y).clone()),
        );
        sq.dim() == n
    }

    pub fn zd_is_idempotent(&self) -> bool {
        let zd = self.star_image();
        let basis = zd.basis();
        let sq = Subspace::spanned_by(
            self.a_dim,
            basis
                .iter()
                .flat_map(|x| basis.iter().map(move |y| (x, y)))
                .map(|(x, y)| linalg::sparse_from_dense(&self.a_product.apply(x, y))),
        );
        sq.same_span(&zd)
    }

    pub fn laws(&self) -> ZigZagLaws {
        ZigZagLaws {
            degree: self.degree,
            dim: self.dim(),
            basis: (0..self.dim()).map(|k| self.tensor.lift_basis(k)).collect(),
            zd_dim: self.star_image().dim(),
            well_defined: self.well_defined,
            associative: self.is_associative(),
            star_homomorphism: self.star_is_homomorphism(),
            star_injective: self.star_is_injective(),
            square_spans: self.square_spans(),
            zd_idempotent: self.zd_is_idempotent(),
            action_through_a: action_through_a_check(self),
        }
    }
}

/// Checks `𝔞∘𝔟 = 𝔞 ⋆□ ⋆(𝔟) = ⋆(𝔞) ⋆□ 𝔟` on all basis pairs.
pub fn action_through_a_check(z: &ZigZag) -> ActionCheck {
    let n = z.dim();
    let mut failures = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (ex, ey) = (z.basis(x), z.basis(y));
            let circ = z.compose(&ex, &ey);
            let right = z.act_right(&ex, &z.star[y]);
            let left = z.act_left(&z.star[x], &ey);
            if circ != right || circ != left {
                failures.push((x, y));
            }
        }
    }
    ActionCheck {
        passed: failures.is_empty(),
        checked: n * n,
        failures,
    }
}
