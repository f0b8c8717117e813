//! The functors `F(W) = 𝔄_{0,-d} ⊗_{𝔄_d} W` and `G(W0) = 𝔄_{d,0} ⊗_{Z_d} W0`
//! between left `𝔄_d`-modules and left `Z_d`-modules, and the evaluation maps
//! that witness `G∘F ≅ id` and `F∘G ≅ id`.

use num_traits::{One, Zero};
use serde::Serialize;

use super::{balanced_tensor, zigzag, BalancedTensor, FdAlgebra, IdealSplit, ModuleRep, PeirceAlgebra, Side, ZigZag};
use crate::error::{Error, Result};
use crate::linalg::{self, sparse_axpy, Matrix, SparseVec, Subspace};
use crate::rational::Rational;

/// Everything the Morita functors at degree `d` need, gathered once.
#[derive(Debug, Clone)]
pub struct MoritaContext {
    pub degree: usize,
    pub algebra: PeirceAlgebra,
    pub strong_identity: Vec<Rational>,
    pub zigzag: ZigZag,
    /// `Z_d ⊆ A`, with basis `zd.basis()`.
    pub zd: Subspace,
    /// `Z_d` in the coordinates of `zd.basis()`, unit `ε`.
    pub zd_algebra: FdAlgebra,
    pub split: IdealSplit,
}

#[derive(Debug, Clone)]
pub struct InducedModule {
    pub module: ModuleRep,
    pub tensor: BalancedTensor,
    /// The action on the quotient does not depend on representatives.
    pub well_defined: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundtripReport {
    pub degree: usize,
    pub input_dim: usize,
    pub intermediate_dim: usize,
    pub output_dim: usize,
    pub well_defined: bool,
    pub equivariant: bool,
    pub bijective: bool,
    pub passed: bool,
}

pub fn morita_context(p: &PeirceAlgebra, d: usize) -> Result<MoritaContext> {
    let search = p.find_strong_identity(d)?;
    let strong_identity = match (search.element, search.corner_unital) {
        (Some(e), true) => e,
        (Some(_), false) => {
            return Err(Error::Precondition(format!(
                "degree {d}: the strong identity is not a unit of A_{d}"
            )))
        }
        (None, _) => return Err(Error::Precondition(format!("degree {d}: no strong identity"))),
    };
    let z = zigzag(p, d)?;
    if !z.well_defined {
        return Err(Error::Precondition(format!(
            "degree {d}: zig-zag product is not well defined"
        )));
    }
    let zd = z.star_image();
    let a = p.zhu_algebra();
    let report = a.ideal_unit_and_split(&zd)?;
    let split = match report.split {
        Some(s) if s.passed() => s,
        _ => {
            return Err(Error::Precondition(format!(
                "degree {d}: Z_{d} is not a unital direct factor of A"
            )))
        }
    };
    let basis = zd.basis();
    let k = basis.len();
    let mut product = super::Bilinear::zero(k, k, k);
    for (x, bx) in basis.iter().enumerate() {
        for (y, by) in basis.iter().enumerate() {
            let coords = zd
                .coordinates(&a.mul(bx, by))
                .ok_or_else(|| Error::Precondition(format!("degree {d}: Z_{d} is not closed under the product")))?;
            for (c, v) in coords.into_iter().enumerate() {
                product.set(x, y, c, v);
            }
        }
    }
    let unit = zd.coordinates(&split.epsilon).expect("ε lies in the ideal");
    Ok(MoritaContext {
        degree: d,
        algebra: p.clone(),
        strong_identity,
        zigzag: z,
        zd,
        zd_algebra: FdAlgebra {
            dim: k,
            product,
            unit: Some(unit),
        },
        split,
    })
}

fn action_from<F>(label: String, algebra_dim: usize, t: &BalancedTensor, f: F) -> (ModuleRep, bool)
where
    F: Fn(usize, usize, usize) -> SparseVec,
{
    let dim = t.dim();
    let mut action: Vec<Matrix> = vec![linalg::zeros(dim, dim); algebra_dim];
    let mut well_defined = true;
    for (x, mat) in action.iter_mut().enumerate() {
        for k in 0..dim {
            let (i, j) = t.lift_basis(k);
            for (row, v) in t.project(&f(x, i, j)).into_iter().enumerate() {
                mat[row][k] = v;
            }
        }
        well_defined &= t.relations_vanish(|i, j| f(x, i, j), |v| t.relations.contains(v));
    }
    let module = ModuleRep {
        label,
        side: Side::Left,
        algebra_dim,
        dim,
        action,
    };
    (module, well_defined)
}

fn column(w: &ModuleRep, y: &[(usize, Rational)], col: usize) -> SparseVec {
    let mut acc = SparseVec::new();
    for (s, c) in y {
        acc = sparse_axpy(&acc, c, &w.act_basis(*s, col));
    }
    acc
}

impl MoritaContext {
    fn corner_with_unit(&self) -> FdAlgebra {
        FdAlgebra {
            unit: Some(self.strong_identity.clone()),
            ..self.algebra.corner(self.degree)
        }
    }

    /// A left `A`-module viewed as a `Z_d`-module in the `zd.basis()` coordinates.
    pub fn restrict_to_zd(&self, w: &ModuleRep) -> Result<ModuleRep> {
        if w.algebra_dim != self.algebra.dim(0, 0) {
            return Err(Error::MalformedModule(format!("{} is not a module over A", w.label)));
        }
        let action = self.zd.basis().iter().map(|z| w.action_of(z)).collect();
        ModuleRep::new(w.label.clone(), w.side, self.zd.dim(), w.dim, action)
    }

    fn zd_vector(&self, k: usize) -> SparseVec {
        linalg::sparse_from_dense(&self.zd.basis()[k])
    }

    /// `F(W) = 𝔄_{0,-d} ⊗_{𝔄_d} W` with `Z_d` acting on the left factor.
    pub fn forward(&self, w: &ModuleRep) -> Result<InducedModule> {
        let d = self.degree;
        if w.side != Side::Left || !w.is_representation_of(&self.corner_with_unit()) {
            return Err(Error::Precondition(format!(
                "{} is not a unital left A_{d}-module",
                w.label
            )));
        }
        let t = balanced_tensor(&self.algebra.right_module(0, d), w)?;
        let act = self.algebra.product(0, 0, d);
        let zs: Vec<SparseVec> = (0..self.zd.dim()).map(|k| self.zd_vector(k)).collect();
        let (module, well_defined) = action_from(format!("F({})", w.label), zs.len(), &t, |x, a, j| {
            let za = act.apply_sparse(&zs[x], &[(a, Rational::one())]);
            za.iter().map(|(a2, c)| (t.flat(*a2, j), c.clone())).collect()
        });
        Ok(InducedModule {
            module,
            tensor: t,
            well_defined,
        })
    }

    /// `G(W0) = 𝔄_{d,0} ⊗_{Z_d} W0` with `𝔄_d` acting on the left factor.
    pub fn backward(&self, w0: &ModuleRep) -> Result<InducedModule> {
        let d = self.degree;
        if w0.side != Side::Left || !w0.is_representation_of(&self.zd_algebra) {
            return Err(Error::Precondition(format!(
                "{} is not a unital left Z_{d}-module",
                w0.label
            )));
        }
        let right = self.algebra.product(d, 0, 0);
        let dm = self.algebra.dim(d, 0);
        let action = (0..self.zd.dim())
            .map(|k| {
                let z = self.zd_vector(k);
                let mut mat = linalg::zeros(dm, dm);
                for m in 0..dm {
                    for (row, v) in right.apply_sparse(&[(m, Rational::one())], &z) {
                        mat[row][m] = v;
                    }
                }
                mat
            })
            .collect();
        let m = ModuleRep::new(format!("A_{{{d},0}}"), Side::Right, self.zd.dim(), dm, action)?;
        let t = balanced_tensor(&m, w0)?;
        let act = self.algebra.product(d, d, 0);
        let (module, well_defined) = action_from(format!("G({})", w0.label), self.algebra.dim(d, d), &t, |y, b, j| {
            act.get(y, b)
                .iter()
                .map(|(b2, c)| (t.flat(*b2, j), c.clone()))
                .collect()
        });
        Ok(InducedModule {
            module,
            tensor: t,
            well_defined,
        })
    }

    /// Checks `G(F(W)) → W`, `b ⊗ (a ⊗ w) ↦ (b⋆a)·w`.
    pub fn roundtrip(&self, w: &ModuleRep) -> Result<RoundtripReport> {
        let d = self.degree;
        let f = self.forward(w)?;
        let g = self.backward(&f.module)?;
        let mid = self.algebra.product(d, 0, d);
        let inner = |b: usize, a: usize, j: usize| column(w, mid.get(b, a), j);
        let ev_flat = |b: usize, t: usize| {
            let (a, j) = f.tensor.lift_basis(t);
            inner(b, a, j)
        };
        let inner_ok =
            (0..self.algebra.dim(d, 0)).all(|b| f.tensor.relations_vanish(|a, j| inner(b, a, j), |v| v.is_empty()));
        let outer_ok = g.tensor.relations_vanish(ev_flat, |v| v.is_empty());
        let columns: Vec<SparseVec> = (0..g.tensor.dim())
            .map(|k| {
                let (b, t) = g.tensor.lift_basis(k);
                ev_flat(b, t)
            })
            .collect();
        let corner_dim = self.algebra.dim(d, d);
        let equivariant = equivariance(&g.module, w, &columns, corner_dim);
        Ok(report(
            d,
            w.dim,
            f.module.dim,
            &columns,
            w.dim,
            inner_ok && outer_ok && f.well_defined && g.well_defined,
            equivariant,
        ))
    }

    /// Checks `F(G(W0)) → W0`, `a ⊗ (b ⊗ w) ↦ (a⋆b)·w`.
    pub fn roundtrip_zd(&self, w0: &ModuleRep) -> Result<RoundtripReport> {
        let d = self.degree;
        let g = self.backward(w0)?;
        let f = self.forward(&g.module)?;
        let star = self.algebra.product(0, d, 0);
        let a_dim = self.algebra.dim(0, 0);
        let inner = |a: usize, b: usize, j: usize| -> Option<SparseVec> {
            let x = linalg::dense_from_sparse(star.get(a, b), a_dim);
            let coords = self.zd.coordinates(&x)?;
            Some(column(w0, &linalg::sparse_from_dense(&coords), j))
        };
        let mut in_zd = true;
        let mut inner_total = |a: usize, b: usize, j: usize| {
            inner(a, b, j).unwrap_or_else(|| {
                in_zd = false;
                SparseVec::new()
            })
        };
        let columns: Vec<SparseVec> = (0..f.tensor.dim())
            .map(|k| {
                let (a, t) = f.tensor.lift_basis(k);
                let (b, j) = g.tensor.lift_basis(t);
                inner_total(a, b, j)
            })
            .collect();
        let safe = |a: usize, b: usize, j: usize| inner(a, b, j).unwrap_or_default();
        let inner_ok =
            (0..self.algebra.dim(0, d)).all(|a| g.tensor.relations_vanish(|b, j| safe(a, b, j), |v| v.is_empty()));
        let outer_ok = f.tensor.relations_vanish(
            |a, t| {
                let (b, j) = g.tensor.lift_basis(t);
                safe(a, b, j)
            },
            |v| v.is_empty(),
        );
        let equivariant = equivariance(&f.module, w0, &columns, self.zd.dim());
        let well_defined = in_zd && inner_ok && outer_ok && f.well_defined && g.well_defined;
        Ok(report(
            d,
            w0.dim,
            g.module.dim,
            &columns,
            w0.dim,
            well_defined,
            equivariant,
        ))
    }
}

/// `ev(x·v) = x·ev(v)` for every algebra basis element and quotient basis vector.
fn equivariance(source: &ModuleRep, target: &ModuleRep, columns: &[SparseVec], algebra_dim: usize) -> bool {
    let ev = |v: &[Rational]| {
        let mut acc = SparseVec::new();
        for (c, col) in v.iter().zip(columns) {
            if !c.is_zero() {
                acc = sparse_axpy(&acc, c, col);
            }
        }
        acc
    };
    (0..algebra_dim).all(|x| {
        (0..source.dim).all(|k| {
            let moved = linalg::dense_from_sparse(&source.act_basis(x, k), source.dim);
            let lhs = ev(&moved);
            let img = linalg::dense_from_sparse(&columns[k], target.dim);
            let rhs = linalg::sparse_from_dense(&linalg::mat_vec(&target.action[x], &img));
            lhs == rhs
        })
    })
}

fn report(
    degree: usize,
    input_dim: usize,
    intermediate_dim: usize,
    columns: &[SparseVec],
    target_dim: usize,
    well_defined: bool,
    equivariant: bool,
) -> RoundtripReport {
    let rank = Subspace::spanned_by(target_dim, columns.iter().cloned()).dim();
    let bijective = columns.len() == target_dim && rank == target_dim;
    RoundtripReport {
        degree,
        input_dim,
        intermediate_dim,
        output_dim: columns.len(),
        well_defined,
        equivariant,
        bijective,
        passed: well_defined && equivariant && bijective,
    }
}

pub fn morita_forward(p: &PeirceAlgebra, d: usize, w: &ModuleRep) -> Result<InducedModule> {
    morita_context(p, d)?.forward(w)
}

pub fn morita_backward(p: &PeirceAlgebra, d: usize, w0: &ModuleRep) -> Result<InducedModule> {
    morita_context(p, d)?.backward(w0)
}

pub fn verify_roundtrip(p: &PeirceAlgebra, d: usize, w: &ModuleRep) -> Result<RoundtripReport> {
    morita_context(p, d)?.roundtrip(w)
}

pub fn verify_roundtrip_zd(p: &PeirceAlgebra, d: usize, w0: &ModuleRep) -> Result<RoundtripReport> {
    morita_context(p, d)?.roundtrip_zd(w0)
}
