//! Finite-dimensional Peirce algebras over the rationals.
//!
//! A Peirce algebra is bigraded, `𝔄 = ⊕ 𝔄_{i,-j}`, with products
//! `𝔄_{i,-j} × 𝔄_{j,-k} → 𝔄_{i,-k}` and all other products zero. We store one
//! structure-constant tensor per composable triple `(i, j, k)` with
//! `0 <= i, j, k <= max_degree`, so the grading rule holds by construction.
//! `A = 𝔄_{0,0}` carries the unit `unit0`; `𝔄_d = 𝔄_{d,-d}`.

mod fixtures;
mod ideal;
mod json;
mod module;
mod morita;
mod zigzag;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, sparse_axpy, SparseVec, Subspace};
use crate::rational::Rational;

pub use fixtures::{degenerate_pairing, heisenberg_truncation, matrix_model, scalar_algebra, MatrixModel};
pub use ideal::{IdealReport, IdealSplit};
pub use json::{PeirceAlgebraJson, ProductEntry};
pub use module::{balanced_tensor, BalancedTensor, ModuleRep, Side};
pub use morita::{
    morita_backward, morita_context, morita_forward, verify_roundtrip, verify_roundtrip_zd, InducedModule,
    MoritaContext, RoundtripReport,
};
pub use zigzag::{action_through_a_check, zigzag, ActionCheck, ZigZag, ZigZagLaws};

/// Structure constants of a bilinear map `Q^left × Q^right → Q^out`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bilinear {
    left: usize,
    right: usize,
    out: usize,
    entries: Vec<SparseVec>,
}

impl Bilinear {
    pub fn zero(left: usize, right: usize, out: usize) -> Self {
        Self {
            left,
            right,
            out,
            entries: vec![Vec::new(); left * right],
        }
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }

    /// `e_a · e_b` as a sparse vector.
    pub fn get(&self, a: usize, b: usize) -> &SparseVec {
        &self.entries[a * self.right + b]
    }

    pub fn entry(&self, a: usize, b: usize, c: usize) -> Rational {
        self.get(a, b)
            .iter()
            .find(|(i, _)| *i == c)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, value: Rational) {
        let slot = &mut self.entries[a * self.right + b];
        slot.retain(|(i, _)| *i != c);
        if !value.is_zero() {
            let pos = slot.partition_point(|(i, _)| *i < c);
            slot.insert(pos, (c, value));
        }
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        self.entries.iter().enumerate().flat_map(move |(ab, v)| {
            let (a, b) = (ab / self.right, ab % self.right);
            v.iter().map(move |(c, x)| (a, b, *c, x))
        })
    }

    pub fn apply_sparse(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> SparseVec {
        let mut acc = SparseVec::new();
        for (a, xa) in x {
            for (b, yb) in y {
                let e = self.get(*a, *b);
                if !e.is_empty() {
                    acc = sparse_axpy(&acc, &(xa * yb), e);
                }
            }
        }
        acc
    }

    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let v = self.apply_sparse(&linalg::sparse_from_dense(x), &linalg::sparse_from_dense(y));
        linalg::dense_from_sparse(&v, self.out)
    }
}

/// A finite-dimensional algebra given by structure constants, with an
/// optional unit. Used for `A`, the corners `𝔄_d` and ideals of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FdAlgebra {
    pub dim: usize,
    pub product: Bilinear,
    pub unit: Option<Vec<Rational>>,
}

impl FdAlgebra {
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.product.apply(x, y)
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim;
        (0..n).all(|a| {
            (0..n).all(|b| {
                let ab = self.product.get(a, b);
                (0..n).all(|c| {
                    let left = self.product.apply_sparse(ab, &[(c, Rational::one())]);
                    let bc = self.product.get(b, c);
                    let right = self.product.apply_sparse(&[(a, Rational::one())], bc);
                    left == right
                })
            })
        })
    }

    /// Whether `e` is a two-sided identity.
    pub fn is_identity(&self, e: &[Rational]) -> bool {
        (0..self.dim).all(|a| {
            let x = linalg::unit_vector(self.dim, a);
            self.mul(e, &x) == x && self.mul(&x, e) == x
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axiom {
    /// Products respect the bigrading and tensor shapes match `dims`.
    Grading,
    /// `A = 𝔄_{0,0}` is unital with unit `unit0`.
    UnitalCorner,
    /// `𝔄_{i,0}` is a unital right and `𝔄_{0,-j}` a unital left `A`-module.
    UnitalModules,
    Associativity,
    /// `𝔄_{d,0} ⊗_A 𝔄_{0,-d} → 𝔄_{d,-d}` is bijective for every `d`.
    Factorization,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeirceReport {
    pub passed: bool,
    pub first_failure: Option<Axiom>,
    pub checks: Vec<AxiomCheck>,
}

/// A Peirce algebra truncated at `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeirceAlgebra {
    max_degree: usize,
    dims: Vec<Vec<usize>>,
    products: Vec<Bilinear>,
    unit0: Vec<Rational>,
}

impl PeirceAlgebra {
    /// An algebra with the given component dimensions and all products zero.
    pub fn zero(max_degree: usize, dims: Vec<Vec<usize>>) -> Result<Self> {
        let n = max_degree + 1;
        if dims.len() != n || dims.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedAlgebra(format!("dims must be {n}x{n}")));
        }
        let mut products = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    products.push(Bilinear::zero(dims[i][j], dims[j][k], dims[i][k]));
                }
            }
        }
        let unit0 = vec![Rational::zero(); dims[0][0]];
        Ok(Self {
            max_degree,
            dims,
            products,
            unit0,
        })
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        let n = self.max_degree + 1;
        (i * n + j) * n + k
    }

    fn check_triple(&self, i: usize, j: usize, k: usize) -> Result<()> {
        let max = self.max_degree;
        for x in [i, j, k] {
            if x > max {
                return Err(Error::DegreeOutOfRange { degree: x, max });
            }
        }
        Ok(())
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dims(&self) -> &[Vec<usize>] {
        &self.dims
    }

    /// Dimension of `𝔄_{i,-j}`.
    pub fn dim(&self, i: usize, j: usize) -> usize {
        self.dims[i][j]
    }

    pub fn unit0(&self) -> &[Rational] {
        &self.unit0
    }

    pub fn set_unit0(&mut self, unit: Vec<Rational>) -> Result<()> {
        if unit.len() != self.dims[0][0] {
            return Err(Error::MalformedAlgebra("unit0 length differs from dim A".into()));
        }
        self.unit0 = unit;
        Ok(())
    }

    /// Structure constants for `𝔄_{i,-j} × 𝔄_{j,-k} → 𝔄_{i,-k}`.
    pub fn product(&self, i: usize, j: usize, k: usize) -> &Bilinear {
        &self.products[self.index(i, j, k)]
    }

    /// Sets the coefficient of `e_c` in `e_a ⋆ e_b` for `(i, j, k)`.
    pub fn set_structure_constant(
        &mut self,
        (i, j, k): (usize, usize, usize),
        (a, b, c): (usize, usize, usize),
        value: Rational,
    ) -> Result<()> {
        self.check_triple(i, j, k)?;
        let (l, r, o) = (self.dims[i][j], self.dims[j][k], self.dims[i][k]);
        if a >= l || b >= r || c >= o {
            return Err(Error::MalformedAlgebra(format!(
                "basis index ({a},{b},{c}) out of range for ({i},{j},{k}) with dims ({l},{r},{o})"
            )));
        }
        let idx = self.index(i, j, k);
        self.products[idx].set(a, b, c, value);
        Ok(())
    }

    pub fn mul(&self, (i, j, k): (usize, usize, usize), x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.product(i, j, k).apply(x, y)
    }

    /// `A = 𝔄_{0,0}` with its unit.
    pub fn zhu_algebra(&self) -> FdAlgebra {
        FdAlgebra {
            dim: self.dims[0][0],
            product: self.product(0, 0, 0).clone(),
            unit: Some(self.unit0.clone()),
        }
    }

    /// The corner `𝔄_d`, without a designated unit.
    pub fn corner(&self, d: usize) -> FdAlgebra {
        FdAlgebra {
            dim: self.dims[d][d],
            product: self.product(d, d, d).clone(),
            unit: None,
        }
    }

    /// Degrees `d` with `𝔄_{d,0} = 0`.
    pub fn exceptional_degrees(&self) -> Vec<usize> {
        (0..=self.max_degree).filter(|&d| self.dims[d][0] == 0).collect()
    }

    /// `𝔄_{i,-j}` as a right module over `𝔄_j`.
    pub fn right_module(&self, i: usize, j: usize) -> ModuleRep {
        ModuleRep::from_right_product(format!("A_{{{i},-{j}}}"), self.product(i, j, j))
    }

    /// `𝔄_{i,-j}` as a left module over `𝔄_i`.
    pub fn left_module(&self, i: usize, j: usize) -> ModuleRep {
        ModuleRep::from_left_product(format!("A_{{{i},-{j}}}"), self.product(i, i, j))
    }

    /// Checks the four Peirce axioms plus associativity exhaustively on
    /// basis elements.
    pub fn validate(&self) -> PeirceReport {
        let checks = vec![
            self.check_grading(),
            self.check_unital_corner(),
            self.check_unital_modules(),
            self.check_associativity(),
            self.check_factorization(),
        ];
        let first_failure = checks.iter().find(|c| !c.passed).map(|c| c.axiom);
        PeirceReport {
            passed: first_failure.is_none(),
            first_failure,
            checks,
        }
    }

    fn check_grading(&self) -> AxiomCheck {
        let n = self.max_degree + 1;
        let mut detail = None;
        'outer: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let p = self.product(i, j, k);
                    let want = (self.dims[i][j], self.dims[j][k], self.dims[i][k]);
                    if p.dims() != want || p.nonzero_entries().any(|(_, _, c, _)| c >= want.2) {
                        detail = Some(format!(
                            "tensor ({i},{j},{k}) has shape {:?}, expected {want:?}",
                            p.dims()
                        ));
                        break 'outer;
                    }
                }
            }
        }
        if detail.is_none() && self.unit0.len() != self.dims[0][0] {
            detail = Some("unit0 length differs from dim A".into());
        }
        AxiomCheck {
            axiom: Axiom::Grading,
            passed: detail.is_none(),
            detail,
        }
    }

    fn check_unital_corner(&self) -> AxiomCheck {
        let a = self.zhu_algebra();
        let passed = a.is_identity(&self.unit0);
        AxiomCheck {
            axiom: Axiom::UnitalCorner,
            passed,
            detail: (!passed).then(|| "unit0 is not a two-sided identity of A".into()),
        }
    }

    fn check_unital_modules(&self) -> AxiomCheck {
        for i in 0..=self.max_degree {
            for m in 0..self.dims[i][0] {
                let e = linalg::unit_vector(self.dims[i][0], m);
                if self.mul((i, 0, 0), &e, &self.unit0) != e {
                    return AxiomCheck {
                        axiom: Axiom::UnitalModules,
                        passed: false,
                        detail: Some(format!("unit0 does not fix basis vector {m} of A_{{{i},0}}")),
                    };
                }
            }
            for m in 0..self.dims[0][i] {
                let e = linalg::unit_vector(self.dims[0][i], m);
                if self.mul((0, 0, i), &self.unit0, &e) != e {
                    return AxiomCheck {
                        axiom: Axiom::UnitalModules,
                        passed: false,
                        detail: Some(format!("unit0 does not fix basis vector {m} of A_{{0,-{i}}}")),
                    };
                }
            }
        }
        AxiomCheck {
            axiom: Axiom::UnitalModules,
            passed: true,
            detail: None,
        }
    }

    /// First failing `((i,j,k,l), (x,y,z))`, if any.
    pub fn associativity_failure(&self) -> Option<((usize, usize, usize, usize), (usize, usize, usize))> {
        let n = self.max_degree + 1;
        let quads: Vec<(usize, usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| (i, j, k, l)))))
            .collect();
        quads
            .par_iter()
            .map(|&(i, j, k, l)| {
                let (xy, yz) = (self.product(i, j, k), self.product(j, k, l));
                let (xy_z, x_yz) = (self.product(i, k, l), self.product(i, j, l));
                for x in 0..self.dims[i][j] {
                    for y in 0..self.dims[j][k] {
                        let p = xy.get(x, y);
                        for z in 0..self.dims[k][l] {
                            let left = xy_z.apply_sparse(p, &[(z, Rational::one())]);
                            let right = x_yz.apply_sparse(&[(x, Rational::one())], yz.get(y, z));
                            if left != right {
                                return Some(((i, j, k, l), (x, y, z)));
                            }
                        }
                    }
                }
                None
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .next()
    }

    fn check_associativity(&self) -> AxiomCheck {
        let failure = self.associativity_failure();
        AxiomCheck {
            axiom: Axiom::Associativity,
            passed: failure.is_none(),
            detail: failure.map(|(q, b)| format!("(x*y)*z != x*(y*z) for components {q:?}, basis {b:?}")),
        }
    }

    /// Whether `𝔄_{d,0} ⊗_A 𝔄_{0,-d} → 𝔄_d` is a well-defined bijection.
    pub fn factorization_holds(&self, d: usize) -> std::result::Result<(), String> {
        let m = self.right_module(d, 0);
        let n = self.left_module(0, d);
        let t = balanced_tensor(&m, &n).map_err(|e| e.to_string())?;
        let target = self.dims[d][d];
        let prod = self.product(d, 0, d);
        let well_defined = t.relations_vanish(|a, b| prod.get(a, b).clone(), |v| v.is_empty());
        if !well_defined {
            return Err(format!(
                "degree {d}: product does not factor through the balanced tensor"
            ));
        }
        if t.dim() != target {
            return Err(format!(
                "degree {d}: dim of tensor product is {}, dim A_{d} is {target}",
                t.dim()
            ));
        }
        let image = Subspace::spanned_by(
            target,
            t.basis.iter().map(|&p| {
                let (a, b) = t.lift(p);
                prod.get(a, b).clone()
            }),
        );
        if image.dim() != target {
            return Err(format!("degree {d}: induced map has rank {} < {target}", image.dim()));
        }
        Ok(())
    }

    fn check_factorization(&self) -> AxiomCheck {
        let detail = (0..=self.max_degree).find_map(|d| self.factorization_holds(d).err());
        AxiomCheck {
            axiom: Axiom::Factorization,
            passed: detail.is_none(),
            detail,
        }
    }

    /// Searches for `1_d ∈ 𝔄_d` with `a ⋆ 1_d = a` on `𝔄_{0,-d}` and
    /// `1_d ⋆ b = b` on `𝔄_{d,0}`.
    pub fn find_strong_identity(&self, d: usize) -> Result<StrongIdentitySearch> {
        if d > self.max_degree {
            return Err(Error::DegreeOutOfRange {
                degree: d,
                max: self.max_degree,
            });
        }
        let k = self.dims[d][d];
        let mut equations = Vec::new();
        let right = self.product(0, d, d);
        for a in 0..self.dims[0][d] {
            // coefficient of e_c in e_a ⋆ x
            let mut rows: Vec<SparseVec> = vec![Vec::new(); self.dims[0][d]];
            for t in 0..k {
                for (c, v) in right.get(a, t) {
                    rows[*c].push((t, v.clone()));
                }
            }
            for (c, row) in rows.into_iter().enumerate() {
                let rhs = if c == a { Rational::one() } else { Rational::zero() };
                equations.push((row, rhs));
            }
        }
        let left = self.product(d, d, 0);
        for b in 0..self.dims[d][0] {
            let mut rows: Vec<SparseVec> = vec![Vec::new(); self.dims[d][0]];
            for t in 0..k {
                for (c, v) in left.get(t, b) {
                    rows[*c].push((t, v.clone()));
                }
            }
            for (c, row) in rows.into_iter().enumerate() {
                let rhs = if c == b { Rational::one() } else { Rational::zero() };
                equations.push((row, rhs));
            }
        }
        let element = linalg::solve(k, &equations);
        let corner_unital = element.as_ref().map(|e| self.corner(d).is_identity(e)).unwrap_or(false);
        Ok(StrongIdentitySearch {
            degree: d,
            element,
            corner_unital,
        })
    }
}

/// Dimensions attached to one degree; at exceptional degrees all of them
/// vanish.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    /// `𝔄_{d,0} = 0`.
    pub exceptional: bool,
    pub corner_dim: usize,
    pub zigzag_dim: usize,
    pub zd_dim: usize,
    pub strong_identity_zero: bool,
}

impl DegreeReport {
    pub fn zero_rings(&self) -> bool {
        self.corner_dim == 0 && self.zigzag_dim == 0 && self.zd_dim == 0 && self.strong_identity_zero
    }
}

impl PeirceAlgebra {
    pub fn degree_report(&self, d: usize) -> Result<DegreeReport> {
        let z = zigzag(self, d)?;
        let s = self.find_strong_identity(d)?;
        Ok(DegreeReport {
            degree: d,
            exceptional: self.dims[d][0] == 0,
            corner_dim: self.dims[d][d],
            zigzag_dim: z.dim(),
            zd_dim: z.star_image().dim(),
            strong_identity_zero: s.element.is_some_and(|e| linalg::is_zero_vec(&e)),
        })
    }
}

/// Outcome of [`PeirceAlgebra::find_strong_identity`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StrongIdentitySearch {
    pub degree: usize,
    #[serde(serialize_with = "serialize_opt_vec")]
    pub element: Option<Vec<Rational>>,
    /// The element is also a two-sided identity of `𝔄_d`, so
    /// `𝔄_0 ⊕ 𝔄_{0,-d} ⊕ 𝔄_{d,0} ⊕ 𝔄_d` is unital.
    pub corner_unital: bool,
}

impl StrongIdentitySearch {
    pub fn found(&self) -> bool {
        self.element.is_some()
    }
}

fn serialize_opt_vec<S: serde::Serializer>(v: &Option<Vec<Rational>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(v) => s.collect_seq(v.iter().map(|x| x.to_string())),
    }
}
