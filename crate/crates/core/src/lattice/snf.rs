//! Smith normal form over `i128`, tracking the inverse of the row transform.

use crate::error::{Error, Result};

/// `U · A · V = diag(invariants)`; only `U⁻¹` is kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Smith {
    pub invariants: Vec<i128>,
    pub row_inverse: Vec<Vec<i128>>,
}

fn checked(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow("smith normal form"))
}

struct Work {
    a: Vec<Vec<i128>>,
    u_inv: Vec<Vec<i128>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap(i, j);
        for row in &mut self.u_inv {
            row.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in &mut self.a {
            row.swap(i, j);
        }
    }

    /// `row_i += c · row_j`
    fn add_row(&mut self, i: usize, j: usize, c: i128) -> Result<()> {
        for k in 0..self.a[i].len() {
            let v = checked(self.a[j][k].checked_mul(c))?;
            self.a[i][k] = checked(self.a[i][k].checked_add(v))?;
        }
        // U⁻¹ ← U⁻¹ (I - c e_i e_jᵀ): column j -= c · column i
        for row in &mut self.u_inv {
            let v = checked(row[i].checked_mul(c))?;
            row[j] = checked(row[j].checked_sub(v))?;
        }
        Ok(())
    }

    /// `col_i += c · col_j`
    fn add_col(&mut self, i: usize, j: usize, c: i128) -> Result<()> {
        for row in &mut self.a {
            let v = checked(row[j].checked_mul(c))?;
            row[i] = checked(row[i].checked_add(v))?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.a[i] {
            *x = -*x;
        }
        for row in &mut self.u_inv {
            row[i] = -row[i];
        }
    }
}

/// Smith normal form of a square nonsingular integer matrix.
pub fn smith(m: &[Vec<i64>]) -> Result<Smith> {
    let n = m.len();
    let mut w = Work {
        a: m.iter().map(|r| r.iter().map(|&x| i128::from(x)).collect()).collect(),
        u_inv: (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect(),
    };
    for t in 0..n {
        loop {
            let pivot = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| w.a[i][j] != 0)
                .min_by_key(|&(i, j)| w.a[i][j].unsigned_abs());
            let Some((pi, pj)) = pivot else {
                return Err(Error::InvalidLattice("singular gram matrix".into()));
            };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);
            let p = w.a[t][t];
            let mut clean = true;
            for i in t + 1..n {
                let q = w.a[i][t].div_euclid(p);
                if q != 0 {
                    w.add_row(i, t, -q)?;
                }
                clean &= w.a[i][t] == 0;
            }
            for j in t + 1..n {
                let q = w.a[t][j].div_euclid(p);
                if q != 0 {
                    w.add_col(j, t, -q)?;
                }
                clean &= w.a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility: fold any offending row into row t and repeat
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| w.a[i][j] % p != 0));
            match bad {
                Some(i) => w.add_row(t, i, 1)?,
                None => break,
            }
        }
        if w.a[t][t] < 0 {
            w.negate_row(t);
        }
    }
    Ok(Smith {
        invariants: (0..n).map(|i| w.a[i][i]).collect(),
        row_inverse: w.u_inv,
    })
}
