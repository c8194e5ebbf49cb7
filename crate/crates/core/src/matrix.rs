use std::fmt;

use crate::error::{Error, Result};
use crate::word::Word;

/// A 0/1 matrix. Rows are numbered from 1 at the bottom, columns from 1 at the left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl BinaryMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BinaryMatrix { rows, cols, cells: vec![false; rows * cols] }
    }

    /// Builds a matrix from `(row, col)` 1-cells, both 1-based.
    pub fn from_ones(rows: usize, cols: usize, ones: &[(usize, usize)]) -> Result<Self> {
        let mut m = Self::zeros(rows, cols);
        for &(i, j) in ones {
            if i == 0 || j == 0 || i > rows || j > cols {
                return Err(Error::Invalid(format!("cell ({i},{j}) outside {rows}x{cols}")));
            }
            m.set(i, j, true);
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[(row - 1) * self.cols + (col - 1)]
    }

    pub fn set(&mut self, row: usize, col: usize, v: bool) {
        self.cells[(row - 1) * self.cols + (col - 1)] = v;
    }

    /// 1-cells as `(row, col)` pairs, column-major.
    pub fn ones(&self) -> Vec<(usize, usize)> {
        let mut v = Vec::new();
        for j in 1..=self.cols {
            for i in 1..=self.rows {
                if self.get(i, j) {
                    v.push((i, j));
                }
            }
        }
        v
    }

    pub fn row_sums(&self) -> Vec<usize> {
        (1..=self.rows).map(|i| (1..=self.cols).filter(|&j| self.get(i, j)).count()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        (1..=self.cols).map(|j| (1..=self.rows).filter(|&i| self.get(i, j)).count()).collect()
    }
}

/// `M(σ)`: entry `(i, j)` is 1 iff `σ_j = i`.
pub fn word_to_matrix(w: &Word) -> Result<BinaryMatrix> {
    if w.is_empty() {
        return Err(Error::Empty);
    }
    if !w.is_reduced() {
        return Err(Error::NotReduced(w.to_string()));
    }
    let mut m = BinaryMatrix::zeros(w.height() as usize, w.len());
    for (j, &x) in w.letters().iter().enumerate() {
        m.set(x as usize, j + 1, true);
    }
    Ok(m)
}

impl fmt::Display for BinaryMatrix {
    /// Top row first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in (1..=self.rows).rev() {
            for j in 1..=self.cols {
                f.write_str(if self.get(i, j) { "1" } else { "0" })?;
            }
            if i > 1 {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_of_31321() {
        let m = word_to_matrix(&"31321".parse().unwrap()).unwrap();
        assert_eq!(m.to_string(), "10100\n00010\n01001");
        assert_eq!(m.col_sums(), vec![1; 5]);
        assert_eq!(m.row_sums(), vec![2, 1, 2]);
    }

    #[test]
    fn small_matrices() {
        let m = word_to_matrix(&"1".parse().unwrap()).unwrap();
        assert_eq!(m.to_string(), "1");
        let m = word_to_matrix(&"12".parse().unwrap()).unwrap();
        assert!(m.get(1, 1) && m.get(2, 2) && !m.get(1, 2) && !m.get(2, 1));
        assert!(matches!(word_to_matrix(&"13".parse().unwrap()), Err(Error::NotReduced(_))));
    }
}
