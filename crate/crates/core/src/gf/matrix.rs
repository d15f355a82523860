use serde::{Deserialize, Serialize};

use super::{Field, FieldElem};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field. The field is passed to every
/// arithmetic method rather than stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MatrixFq {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElem>,
}

impl MatrixFq {
    pub fn new(rows: usize, cols: usize, entries: Vec<FieldElem>) -> Result<MatrixFq> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(MatrixFq { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> MatrixFq {
        MatrixFq {
            rows,
            cols,
            entries: vec![FieldElem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> MatrixFq {
        let mut m = MatrixFq::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElem::ONE);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<FieldElem>]) -> Result<MatrixFq> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|row| row.len() != c) {
            return Err(Error::DimensionMismatch { expected: c, got: bad.len() });
        }
        Ok(MatrixFq {
            rows: r,
            cols: c,
            entries: rows.concat(),
        })
    }

    /// Builds a matrix from raw integer encodings.
    pub fn from_u32(rows: usize, cols: usize, values: &[u32]) -> Result<MatrixFq> {
        MatrixFq::new(rows, cols, values.iter().map(|&v| FieldElem(v)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElem {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElem] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> MatrixFq {
        let mut t = MatrixFq::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn add(&self, f: &Field, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(MatrixFq { entries, ..*self })
    }

    pub fn sub(&self, f: &Field, other: &MatrixFq) -> Result<MatrixFq> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(MatrixFq { entries, ..*self })
    }

    pub fn scale(&self, f: &Field, a: FieldElem) -> MatrixFq {
        MatrixFq {
            entries: self.entries.iter().map(|&x| f.mul(a, x)).collect(),
            ..*self
        }
    }

    pub fn mul(&self, f: &Field, other: &MatrixFq) -> Result<MatrixFq> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: other.rows,
            });
        }
        let mut out = MatrixFq::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(l, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, f: &Field, x: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                got: x.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(FieldElem::ZERO, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn trace(&self, f: &Field) -> FieldElem {
        (0..self.rows.min(self.cols)).fold(FieldElem::ZERO, |acc, i| f.add(acc, self.get(i, i)))
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self, f: &Field) -> (MatrixFq, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(inv, m.get(r, j));
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i == r || factor.is_zero() {
                    continue;
                }
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.rref(f).1.len()
    }

    /// Basis of the right nullspace `{x : Mx = 0}`.
    pub fn nullspace(&self, f: &Field) -> Vec<Vec<FieldElem>> {
        let (r, pivots) = self.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![FieldElem::ZERO; self.cols];
                v[fc] = FieldElem::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    pub fn det(&self, f: &Field) -> Result<FieldElem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = FieldElem::ONE;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(FieldElem::ZERO);
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = f.neg(det);
            }
            let piv = m.get(c, c);
            det = f.mul(det, piv);
            let inv = f.inv(piv)?;
            for i in c + 1..n {
                let factor = f.mul(m.get(i, c), inv);
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    /// One solution of `Mx = b`.
    pub fn solve(&self, f: &Field, b: &[FieldElem]) -> Result<Vec<FieldElem>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let mut aug = MatrixFq::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![FieldElem::ZERO; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Ok(x)
    }

    pub fn inverse(&self, f: &Field) -> Option<MatrixFq> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = MatrixFq::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, FieldElem::ONE);
        }
        let (r, pivots) = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = MatrixFq::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j));
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn check_same_shape(&self, other: &MatrixFq) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, v: &[u32]) -> MatrixFq {
        MatrixFq::from_u32(rows, cols, v).unwrap()
    }

    #[test]
    fn small_ranks_and_dets() {
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(MatrixFq::zeros(3, 3).rank(&f2), 0);
        let swap = m(2, 2, &[0, 1, 1, 0]);
        assert_eq!(swap.rank(&f2), 2);
        assert_eq!(swap.det(&f2).unwrap(), FieldElem::ONE);
        assert_eq!(m(2, 2, &[1, 1, 1, 1]).rank(&f2), 1);
    }

    #[test]
    fn det_over_f5() {
        let f5 = Field::new(5, 1).unwrap();
        // det [[1,2],[3,4]] = -2 = 3
        assert_eq!(m(2, 2, &[1, 2, 3, 4]).det(&f5).unwrap(), FieldElem(3));
        assert!(m(2, 3, &[0; 6]).det(&f5).is_err());
    }

    #[test]
    fn solve_and_inconsistency() {
        let f3 = Field::new(3, 1).unwrap();
        let a = m(2, 2, &[1, 1, 1, 2]);
        let x = a.solve(&f3, &[FieldElem(2), FieldElem(0)]).unwrap();
        assert_eq!(a.mul_vec(&f3, &x).unwrap(), vec![FieldElem(2), FieldElem(0)]);
        let sing = m(2, 2, &[1, 1, 1, 1]);
        assert_eq!(sing.solve(&f3, &[FieldElem(0), FieldElem(1)]), Err(Error::Inconsistent));
    }

    #[test]
    fn nullspace_annihilates() {
        let f4 = Field::new(2, 2).unwrap();
        let a = m(2, 4, &[1, 2, 3, 0, 2, 3, 1, 1]);
        let ns = a.nullspace(&f4);
        assert_eq!(ns.len() + a.rank(&f4), 4);
        for v in &ns {
            assert!(a.mul_vec(&f4, v).unwrap().iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let f7 = Field::new(7, 1).unwrap();
        let a = m(3, 3, &[1, 2, 0, 0, 1, 3, 4, 0, 1]);
        let inv = a.inverse(&f7).unwrap();
        assert_eq!(a.mul(&f7, &inv).unwrap(), MatrixFq::identity(3));
        assert!(m(2, 2, &[1, 2, 2, 4]).inverse(&f7).is_none());
    }
}
