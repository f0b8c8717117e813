//! Positive-definite even lattices `L = Z^d` with Gram matrix `G`, the
//! quadratic form `Q(x) = xᵀGx / 2`, the discriminant group `L′/L` and the
//! graded dimensions of the lattice VOA modules `V_{λ+L}`.

mod snf;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::labeled_partition_counts;
use crate::rational::Rational;

pub use snf::{smith, Smith};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvenLattice {
    gram: Vec<Vec<i64>>,
    #[serde(skip)]
    ldl: Ldl,
}

/// `G = L·diag(D)·Lᵀ` with `L` unit lower triangular.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
struct Ldl {
    lower: Vec<Vec<Rational>>,
    diag: Vec<Rational>,
}

fn ldl(gram: &[Vec<i64>]) -> Ldl {
    let n = gram.len();
    let g = |i: usize, j: usize| Rational::from_integer(BigInt::from(gram[i][j]));
    let mut lower = vec![vec![Rational::zero(); n]; n];
    let mut diag = vec![Rational::zero(); n];
    for j in 0..n {
        let mut dj = g(j, j);
        for k in 0..j {
            dj -= &lower[j][k] * &lower[j][k] * &diag[k];
        }
        diag[j] = dj;
        lower[j][j] = Rational::one();
        for i in j + 1..n {
            let mut v = g(i, j);
            for k in 0..j {
                v -= &lower[i][k] * &lower[j][k] * &diag[k];
            }
            lower[i][j] = if diag[j].is_zero() {
                Rational::zero()
            } else {
                v / &diag[j]
            };
        }
    }
    Ldl { lower, diag }
}

impl EvenLattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::InvalidLattice("rank 0".into()));
        }
        if gram.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidLattice("gram matrix is not square".into()));
        }
        for i in 0..n {
            if gram[i][i] % 2 != 0 {
                return Err(Error::InvalidLattice(format!("odd diagonal entry at {i}")));
            }
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice(format!("gram matrix not symmetric at ({i},{j})")));
                }
            }
        }
        let ldl = ldl(&gram);
        if ldl.diag.iter().any(|d| !d.is_positive()) {
            return Err(Error::InvalidLattice("gram matrix is not positive definite".into()));
        }
        Ok(Self { gram, ldl })
    }

    /// First non-comment line is the rank, then one Gram row per line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let rank: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty lattice file".into()))?
            .parse()
            .map_err(|e| Error::Parse(format!("rank: {e}")))?;
        let gram = (0..rank)
            .map(|i| {
                let line = lines
                    .next()
                    .ok_or_else(|| Error::Parse(format!("missing gram row {i}")))?;
                let row = line
                    .split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("gram row {i}: {e}"))))
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != rank {
                    return Err(Error::Parse(format!(
                        "gram row {i} has {} entries, expected {rank}",
                        row.len()
                    )));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after gram rows".into()));
        }
        Self::new(gram)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// `det G = |L′/L|`.
    pub fn determinant(&self) -> BigInt {
        let p: Rational = self.ldl.diag.iter().product();
        p.to_integer()
    }

    /// `q(x, y) = xᵀGy`.
    pub fn bilinear(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.gram[i][j] != 0 {
                    acc += xi * yj * Rational::from_integer(BigInt::from(self.gram[i][j]));
                }
            }
        }
        acc
    }

    /// `Q(x) = q(x, x) / 2`.
    pub fn norm(&self, x: &[Rational]) -> Rational {
        self.bilinear(x, x) / Rational::from_integer(BigInt::from(2))
    }

    fn check_vector(&self, lambda: &[Rational]) -> Result<()> {
        if lambda.len() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: lambda.len(),
            });
        }
        Ok(())
    }

    /// Whether `q(λ, e) ∈ Z` for every basis vector `e`.
    pub fn is_dual(&self, lambda: &[Rational]) -> bool {
        (0..self.rank()).all(|i| {
            let e: Vec<Rational> = (0..self.rank())
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect();
            self.bilinear(lambda, &e).is_integer()
        })
    }

    /// All `α ∈ Z^d` with `Q(α + λ) ≤ bound`, with their norms, in
    /// lexicographic order of `α`.
    pub fn short_vectors(&self, lambda: &[Rational], bound: &Rational) -> Result<Vec<(Vec<i64>, Rational)>> {
        self.check_vector(lambda)?;
        let n = self.rank();
        let two_bound = bound * Rational::from_integer(BigInt::from(2));
        let mut out = Vec::new();
        let mut alpha = vec![0i64; n];
        if !two_bound.is_negative() {
            self.descend(lambda, n, &two_bound, &mut alpha, &mut out)?;
        }
        out.sort();
        Ok(out)
    }

    /// `Σ_i D_i (y_i + Σ_{j>i} L_{ji} y_j)² ≤ budget` with `y = α + λ`,
    /// fixing coordinates from the last one down.
    fn descend(
        &self,
        lambda: &[Rational],
        level: usize,
        budget: &Rational,
        alpha: &mut Vec<i64>,
        out: &mut Vec<(Vec<i64>, Rational)>,
    ) -> Result<()> {
        if level == 0 {
            let y: Vec<Rational> = alpha
                .iter()
                .zip(lambda)
                .map(|(&a, l)| Rational::from_integer(BigInt::from(a)) + l)
                .collect();
            out.push((alpha.clone(), self.norm(&y)));
            return Ok(());
        }
        let i = level - 1;
        let mut shift = lambda[i].clone();
        for j in level..self.rank() {
            shift += &self.ldl.lower[j][i] * (Rational::from_integer(BigInt::from(alpha[j])) + &lambda[j]);
        }
        let d = &self.ldl.diag[i];
        let cost = |a: i64| {
            let t = Rational::from_integer(BigInt::from(a)) + &shift;
            d * &t * &t
        };
        let start = (-&shift)
            .floor()
            .to_integer()
            .to_i64()
            .ok_or(Error::Overflow("lattice coordinate"))?;
        for dir in [1i64, -1] {
            let mut a = if dir == 1 { start } else { start - 1 };
            loop {
                let c = cost(a);
                if &c > budget {
                    // the quadratic is convex, so only the far side of its
                    // vertex can terminate the walk
                    let vertex_side = Rational::from_integer(BigInt::from(a)) + &shift;
                    if (dir == 1 && vertex_side.is_positive()) || (dir == -1 && vertex_side.is_negative()) {
                        break;
                    }
                } else {
                    alpha[i] = a;
                    self.descend(lambda, i, &(budget - c), alpha, out)?;
                }
                a = a.checked_add(dir).ok_or(Error::Overflow("lattice coordinate"))?;
            }
        }
        alpha[i] = 0;
        Ok(())
    }

    /// Representatives of `L′/L`, one per element of `⊕ Z/d_i` from the
    /// Smith form, reduced into `[0,1)^d`; the class of 0 comes first.
    pub fn dual_cosets(&self) -> Result<Vec<CosetRep>> {
        let s = smith(&self.gram)?;
        let n = self.rank();
        let moduli: Vec<i128> = s.invariants.clone();
        let total: i128 = moduli.iter().product();
        let inverse = self.gram_inverse();
        let mut reps = Vec::with_capacity(usize::try_from(total).map_err(|_| Error::Overflow("coset count"))?);
        let mut residues = vec![0i128; n];
        for index in 0..total {
            let mut rem = index;
            for k in (0..n).rev() {
                residues[k] = rem % moduli[k];
                rem /= moduli[k];
            }
            // k = U⁻¹ r, λ = G⁻¹ k
            let kvec: Vec<Rational> = (0..n)
                .map(|i| {
                    let v: i128 = (0..n).map(|j| s.row_inverse[i][j] * residues[j]).sum();
                    Rational::from_integer(BigInt::from(v))
                })
                .collect();
            let lambda: Vec<Rational> = (0..n)
                .map(|i| {
                    let x: Rational = (0..n).map(|j| &inverse[i][j] * &kvec[j]).sum();
                    &x - x.floor()
                })
                .collect();
            reps.push(CosetRep {
                index: usize::try_from(index).map_err(|_| Error::Overflow("coset index"))?,
                residues: residues.iter().map(|&r| r as i64).collect(),
                lambda,
            });
        }
        Ok(reps)
    }

    fn gram_inverse(&self) -> Vec<Vec<Rational>> {
        let n = self.rank();
        let mut a: Vec<Vec<Rational>> = self
            .gram
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<Rational> = r.iter().map(|&x| Rational::from_integer(BigInt::from(x))).collect();
                row.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
                row
            })
            .collect();
        for c in 0..n {
            let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("positive definite");
            a.swap(c, p);
            let inv = Rational::one() / &a[c][c];
            for x in &mut a[c] {
                *x *= &inv;
            }
            for r in 0..n {
                if r != c && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    let pivot = a[c].clone();
                    for (x, y) in a[r].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
        }
        a.into_iter().map(|r| r[n..].to_vec()).collect()
    }

    /// `a_λ = min_{α ∈ L} Q(α + λ)`.
    pub fn conformal_weight(&self, lambda: &[Rational]) -> Result<Rational> {
        self.check_vector(lambda)?;
        let start = self.norm(lambda);
        let v = self.short_vectors(lambda, &start)?;
        Ok(v.into_iter().map(|(_, q)| q).min().unwrap_or(start))
    }

    /// `|{α ∈ L : Q(α + λ) = j}|`.
    pub fn count_norm_layer(&self, lambda: &[Rational], j: &Rational) -> Result<u64> {
        let v = self.short_vectors(lambda, j)?;
        Ok(v.iter().filter(|(_, q)| q == j).count() as u64)
    }

    /// `c_k = |L^λ_{a_λ + k}|` for `k = 0..=max`.
    pub fn layer_counts(&self, lambda: &[Rational], max: usize) -> Result<Vec<u64>> {
        let a = self.conformal_weight(lambda)?;
        let bound = &a + Rational::from_integer(BigInt::from(max));
        let mut counts = vec![0u64; max + 1];
        for (_, q) in self.short_vectors(lambda, &bound)? {
            let shifted = q - &a;
            if !shifted.is_integer() {
                return Err(Error::InvalidLattice(format!("{lambda:?} is not in the dual lattice")));
            }
            let k = shifted.to_integer().to_usize().ok_or(Error::Overflow("layer index"))?;
            counts[k] += 1;
        }
        Ok(counts)
    }

    /// `dim V^λ_n` for `n = 0..=max`: coefficients of
    /// `q^{-a_λ} (Σ_j |L^λ_j| q^j) (Σ_m p_m q^m)^d`.
    pub fn graded_dims(&self, lambda: &[Rational], max: usize) -> Result<Vec<u64>> {
        if !self.is_dual(lambda) {
            return Err(Error::InvalidLattice("vector is not in the dual lattice".into()));
        }
        let layers = self.layer_counts(lambda, max)?;
        let oscillators = labeled_partition_counts(self.rank(), max);
        let mut dims = vec![0u64; max + 1];
        for (k, &c) in layers.iter().enumerate() {
            for (m, p) in oscillators.iter().enumerate().take(max + 1 - k) {
                let p = p.to_u64().ok_or(Error::Overflow("partition count"))?;
                let term = c.checked_mul(p).ok_or(Error::Overflow("graded dimension"))?;
                dims[k + m] = dims[k + m]
                    .checked_add(term)
                    .ok_or(Error::Overflow("graded dimension"))?;
            }
        }
        Ok(dims)
    }

    /// Conformal weight and graded dimensions for every coset, computed in
    /// parallel and returned in coset order.
    pub fn coset_table(&self, max: usize) -> Result<Vec<CosetSummary>> {
        self.dual_cosets()?
            .into_par_iter()
            .map(|c| {
                Ok(CosetSummary {
                    conformal_weight: self.conformal_weight(&c.lambda)?,
                    dims: self.graded_dims(&c.lambda, max)?,
                    coset: c.index,
                    lambda: c.lambda,
                })
            })
            .collect()
    }
}

/// A representative `λ ∈ L′` of a class in `L′/L`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetRep {
    pub index: usize,
    /// Coordinates in `⊕ Z/d_i`.
    pub residues: Vec<i64>,
    #[serde(with = "crate::rational::serde_vec")]
    pub lambda: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetSummary {
    pub coset: usize,
    #[serde(with = "crate::rational::serde_vec")]
    pub lambda: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub conformal_weight: Rational,
    pub dims: Vec<u64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, q};

    fn z8() -> EvenLattice {
        EvenLattice::new(vec![vec![8]]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(EvenLattice::new(vec![vec![3]]).is_err());
        assert!(EvenLattice::new(vec![vec![2, 1], vec![0, 2]]).is_err());
        assert!(EvenLattice::new(vec![vec![2, 3], vec![3, 2]]).is_err());
        assert!(EvenLattice::new(vec![vec![0]]).is_err());
        assert!(EvenLattice::new(vec![]).is_err());
        let a2 = EvenLattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.determinant(), BigInt::from(3));
    }

    #[test]
    fn parse_file_format() {
        let l = EvenLattice::parse("1\n8\n").unwrap();
        assert_eq!(l, z8());
        let l = EvenLattice::parse("# A2\n2\n2 -1\n-1 2\n").unwrap();
        assert_eq!(l.rank(), 2);
        assert!(EvenLattice::parse("2\n2 0\n").is_err());
        assert!(EvenLattice::parse("1\n8 1\n").is_err());
        assert!(EvenLattice::parse("x").is_err());
    }

    #[test]
    fn z8_cosets() {
        let c = z8().dual_cosets().unwrap();
        let lambdas: Vec<Rational> = c.iter().map(|r| r.lambda[0].clone()).collect();
        assert_eq!(lambdas, (0..8).map(|k| frac(k, 8)).collect::<Vec<_>>());
        let two = EvenLattice::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(two.dual_cosets().unwrap().len(), 4);
        let e8_like = EvenLattice::new(vec![vec![2, 1], vec![1, 2]]).unwrap();
        assert_eq!(e8_like.dual_cosets().unwrap().len(), 3);
    }

    #[test]
    fn z8_weights_and_layers() {
        let l = z8();
        assert_eq!(l.conformal_weight(&[q(0)]).unwrap(), q(0));
        assert_eq!(l.conformal_weight(&[frac(1, 8)]).unwrap(), frac(1, 16));
        assert_eq!(l.conformal_weight(&[frac(4, 8)]).unwrap(), q(1));
        assert_eq!(l.count_norm_layer(&[frac(1, 2)], &q(1)).unwrap(), 2);
        assert_eq!(l.count_norm_layer(&[q(0)], &q(0)).unwrap(), 1);
        assert_eq!(l.count_norm_layer(&[q(0)], &q(1)).unwrap(), 0);
        let v = l.short_vectors(&[frac(1, 2)], &q(1)).unwrap();
        let alphas: Vec<Vec<i64>> = v.into_iter().map(|(a, _)| a).collect();
        assert_eq!(alphas, vec![vec![-1], vec![0]]);
    }

    #[test]
    fn z8_graded_dims() {
        let l = z8();
        assert_eq!(l.graded_dims(&[frac(1, 8)], 0).unwrap(), vec![1]);
        assert_eq!(l.graded_dims(&[frac(1, 2)], 0).unwrap(), vec![2]);
        assert_eq!(l.graded_dims(&[q(0)], 1).unwrap(), vec![1, 1]);
        assert!(l.graded_dims(&[frac(1, 16)], 1).is_err());
    }

    #[test]
    fn a2_vacuum() {
        // six roots of norm 1
        let a2 = EvenLattice::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.count_norm_layer(&[q(0), q(0)], &q(1)).unwrap(), 6);
        assert_eq!(a2.graded_dims(&[q(0), q(0)], 1).unwrap(), vec![1, 8]);
    }
}
