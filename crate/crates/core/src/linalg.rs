//! Exact linear algebra over the rationals.
//!
//! Everything here is sparse-first: relation spaces for balanced tensor
//! products have many generators with one or two nonzero entries each, so
//! [`Subspace`] keeps its basis as sparse rows in reduced row echelon form.
//! Pivot ties are resolved by lowest column index, which makes every derived
//! basis (quotient bases in particular) reproducible.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::rational::Rational;

/// Sorted `(index, value)` pairs with no explicit zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Dense row-major matrix.
pub type Matrix = Vec<Vec<Rational>>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &[(usize, Rational)], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Builds a sparse vector from unsorted entries, summing duplicates.
pub fn sparse_collect<I: IntoIterator<Item = (usize, Rational)>>(entries: I) -> SparseVec {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (i, x) in entries {
        if x.is_zero() {
            continue;
        }
        let slot = acc.entry(i).or_insert_with(Rational::zero);
        *slot += x;
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// `a + c * b` on sparse vectors.
pub fn sparse_axpy(a: &[(usize, Rational)], c: &Rational, b: &[(usize, Rational)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let x = &a[i].1 + c * &b[j].1;
            if !x.is_zero() {
                out.push((a[i].0, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale(v: &[(usize, Rational)], c: &Rational) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn add_scaled(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    if c.is_zero() {
        return;
    }
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a += c * x;
        }
    }
}

pub fn unit_vector(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| unit_vector(n, i)).collect()
}

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn mat_vec(m: &Matrix, v: &[Rational]) -> Vec<Rational> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix, inner: usize, cols: usize) -> Matrix {
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate().take(inner) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

/// Rank of the column space of a matrix given as rows.
pub fn rank_of_rows(rows: &[Vec<Rational>], ncols: usize) -> usize {
    Subspace::spanned_by(ncols, rows.iter().map(|r| sparse_from_dense(r))).dim()
}

/// A linear subspace of `Q^ambient` held in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: BTreeMap<usize, SparseVec>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Self {
            ambient,
            rows: BTreeMap::new(),
        }
    }

    pub fn spanned_by<I: IntoIterator<Item = SparseVec>>(ambient: usize, gens: I) -> Self {
        let mut s = Self::new(ambient);
        for g in gens {
            s.insert(g);
        }
        s
    }

    pub fn from_dense<'a, I: IntoIterator<Item = &'a Vec<Rational>>>(ambient: usize, gens: I) -> Self {
        Self::spanned_by(ambient, gens.into_iter().map(|v| sparse_from_dense(v)))
    }

    pub fn full(ambient: usize) -> Self {
        Self::spanned_by(ambient, (0..ambient).map(|i| vec![(i, Rational::one())]))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Columns without a pivot, ascending. They index a basis of the quotient.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.rows.contains_key(c)).collect()
    }

    /// Sparse basis rows in pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    pub fn basis(&self) -> Vec<Vec<Rational>> {
        self.rows.values().map(|r| dense_from_sparse(r, self.ambient)).collect()
    }

    /// Remainder of `v` modulo the subspace; zero at every pivot column.
    pub fn reduce(&self, v: &[(usize, Rational)]) -> SparseVec {
        let mut out: SparseVec = v.to_vec();
        for (col, coeff) in v {
            if let Some(row) = self.rows.get(col) {
                out = sparse_axpy(&out, &-coeff.clone(), row);
            }
        }
        out
    }

    pub fn reduce_dense(&self, v: &[Rational]) -> SparseVec {
        self.reduce(&sparse_from_dense(v))
    }

    /// Adds `v` to the spanning set; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(&v);
        let Some((pivot, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = Rational::one() / lead;
        let r = sparse_scale(&r, &inv);
        for row in self.rows.values_mut() {
            if let Ok(pos) = row.binary_search_by_key(&pivot, |(i, _)| *i) {
                let c = -row[pos].1.clone();
                *row = sparse_axpy(row, &c, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }

    pub fn contains(&self, v: &[(usize, Rational)]) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_dense(&self, v: &[Rational]) -> bool {
        self.contains(&sparse_from_dense(v))
    }

    /// Coordinates of `v` in the basis returned by [`Subspace::basis`].
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if !self.contains_dense(v) {
            return None;
        }
        Some(self.rows.keys().map(|&p| v[p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.rows.values().all(|r| other.contains(r))
    }

    /// Exact span equality; RREF makes this structural.
    pub fn same_span(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows == other.rows
    }
}

/// Solves `A x = b` for a system given as `(row coefficients, rhs)` pairs over
/// `unknowns` variables. Free variables are set to zero.
pub fn solve(unknowns: usize, equations: &[(SparseVec, Rational)]) -> Option<Vec<Rational>> {
    let aug = Subspace::spanned_by(
        unknowns + 1,
        equations.iter().map(|(row, rhs)| {
            let mut r = row.clone();
            if !rhs.is_zero() {
                r.push((unknowns, rhs.clone()));
            }
            r
        }),
    );
    if aug.rows.contains_key(&unknowns) {
        return None;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (&p, row) in &aug.rows {
        if let Some((_, b)) = row.iter().find(|(i, _)| *i == unknowns) {
            x[p] = b.clone();
        }
    }
    Some(x)
}
