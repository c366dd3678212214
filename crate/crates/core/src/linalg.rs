//! Dense matrices over cyclotomic fields with exact elimination.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{hyp, Result};
use crate::exact_arith::CyclotomicNumber;
use crate::intmath::lcm;

/// Row-major matrix of cyclotomic numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<CyclotomicNumber>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: (0..rows * cols).map(|_| CyclotomicNumber::zero(1)).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, CyclotomicNumber::one(1));
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CyclotomicNumber>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return hyp("ragged matrix rows");
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_columns(cols: Vec<Vec<CyclotomicNumber>>) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CyclotomicNumber {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CyclotomicNumber) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[CyclotomicNumber] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<CyclotomicNumber> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// Submatrix on the given row and column indices.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows.iter().flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone())).collect();
        Matrix { rows: rows.len(), cols: cols.len(), data }
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return hyp("matrix dimensions do not match");
        }
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = CyclotomicNumber::zero(1);
                for l in 0..self.cols {
                    let (a, b) = (self.get(i, l), o.get(l, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u64) -> Result<Matrix> {
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            base = base.mul(&base)?;
            e >>= 1;
        }
        Ok(result)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(CyclotomicNumber::is_zero)
    }

    /// Least common order of all entries.
    pub fn common_order(&self) -> u32 {
        self.data.iter().fold(1u64, |a, x| lcm(a, u64::from(x.order()))) as u32
    }

    /// Exact rank by Gaussian elimination in the common cyclotomic field.
    pub fn rank(&self) -> usize {
        let order = self.common_order();
        let mut m: Vec<Vec<CyclotomicNumber>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.promote(order).expect("common order")).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !m[i][col].is_zero()) else { continue };
            m.swap(rank, p);
            let inv = m[rank][col].inverse().expect("non-zero pivot");
            let pivot_row: Vec<CyclotomicNumber> = m[rank].iter().map(|x| x * &inv).collect();
            for row in m.iter_mut().skip(rank + 1) {
                if row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if !y.is_zero() {
                        *x = &*x - &(&f * y);
                    }
                }
            }
            m[rank] = pivot_row;
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<alloc::string::String> = self.row(i).iter().map(|x| alloc::format!("{x}")).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(n: i64) -> CyclotomicNumber {
        CyclotomicNumber::from_integer(1, n)
    }

    #[test]
    fn rank_and_products() {
        let m = Matrix::from_rows(vec![vec![c(1), c(2)], vec![c(2), c(4)]]).unwrap();
        assert_eq!(m.rank(), 1);
        let i = CyclotomicNumber::root_of_unity(4, 1);
        let m = Matrix::from_rows(vec![vec![c(1), i.clone()], vec![i.clone(), c(-1)]]).unwrap();
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_rows(vec![vec![c(1), i.clone()], vec![i, c(1)]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.mul(&Matrix::identity(2)).unwrap(), m);
        assert_eq!(Matrix::zeros(3, 2).rank(), 0);
    }
}
