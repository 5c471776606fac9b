//! Exact dense linear algebra over a field: nullspace and linear solve
//! by fraction-free (Bareiss-style) elimination.

use super::field::{Field, FieldElem};
use super::AlgebraError;

/// A dense matrix of field elements, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FieldElem>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElem>>) -> Result<Matrix, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        if rows.iter().any(|x| x.len() != c) {
            return Err(AlgebraError::ShapeMismatch);
        }
        if rows.iter().flatten().any(|e| e.field() != field) {
            return Err(AlgebraError::FieldMismatch { left: field, right: field });
        }
        Ok(Matrix { field, rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn at(&self, i: usize, j: usize) -> &FieldElem {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.data[i * self.cols + j] = v;
    }

    /// Reduced row echelon form in place; returns the pivot column per pivot row.
    ///
    /// Elimination uses the Bareiss two-step update (all divisions exact),
    /// followed by a pivot normalization pass.
    fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut prev = self.field.one();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(pr) = (row..self.rows).find(|&r| !self.at(r, col).is_zero()) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    self.data.swap(row * self.cols + j, pr * self.cols + j);
                }
            }
            let pivot = self.at(row, col).clone();
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.at(r, col).clone();
                if factor.is_zero() && prev.is_one() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self
                        .at(r, j)
                        .mul(&pivot)
                        .sub(&factor.mul(self.at(row, j)))
                        .div(&prev)
                        .expect("Bareiss division is exact");
                    self.set(r, j, v);
                }
            }
            prev = pivot;
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        // normalize pivot rows
        for (r, &c) in pivots.clone().iter().enumerate() {
            let inv = self.at(r, c).inv().expect("pivot nonzero");
            for j in 0..self.cols {
                let v = self.at(r, j).mul(&inv);
                self.set(r, j, v);
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// An exact basis of the right nullspace.
    pub fn nullspace(&self) -> Vec<Vec<FieldElem>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![self.field.zero(); self.cols];
            v[fc] = self.field.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = m.at(r, fc).neg();
            }
            basis.push(v);
        }
        basis
    }

    /// Solves M x = b exactly; None when inconsistent. Free variables are set to zero.
    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::new(self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // pivot in the augmented column
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for j in 0..self.cols {
                    acc = acc.add(&self.at(i, j).mul(&v[j]));
                }
                acc
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> FieldElem {
        Field::Rational.from_i64(n)
    }

    #[test]
    fn identity_has_empty_nullspace() {
        let mut m = Matrix::new(Field::Rational, 3, 3);
        for i in 0..3 {
            m.set(i, i, q(1));
        }
        assert!(m.nullspace().is_empty());
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn one_by_two() {
        let m = Matrix::from_rows(Field::Rational, vec![vec![q(1), q(1)]]).unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![q(-1), q(1)]);
    }

    #[test]
    fn rank_plus_nullity() {
        let m = Matrix::from_rows(
            Field::Rational,
            vec![
                vec![q(1), q(2), q(3), q(4)],
                vec![q(2), q(4), q(6), q(8)],
                vec![q(0), q(1), q(1), q(0)],
            ],
        )
        .unwrap();
        let ns = m.nullspace();
        assert_eq!(m.rank() + ns.len(), 4);
        for v in &ns {
            assert!(m.apply(v).iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_rows(Field::Rational, vec![vec![q(2), q(0)], vec![q(0), q(4)]]).unwrap();
        assert_eq!(m.solve(&[q(6), q(8)]).unwrap(), vec![q(3), q(2)]);
        let singular =
            Matrix::from_rows(Field::Rational, vec![vec![q(1), q(1)], vec![q(1), q(1)]]).unwrap();
        assert!(singular.solve(&[q(0), q(1)]).is_none());
    }

    #[test]
    fn nullspace_over_prime_field() {
        let f5 = Field::prime(5).unwrap();
        let m = Matrix::from_rows(
            f5,
            vec![vec![f5.from_i64(1), f5.from_i64(2)], vec![f5.from_i64(3), f5.from_i64(6)]],
        )
        .unwrap();
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(m.apply(&ns[0]).iter().all(|e| e.is_zero()));
    }
}
