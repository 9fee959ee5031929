//! Banded LU with partial pivoting for complex systems.

use num_complex::Complex64;

use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Pivots below this magnitude are treated as zero.
pub const PIVOT_FLOOR: f64 = 1e-300;

/// Square matrix with `lower` sub- and `upper` super-diagonals.
///
/// Row `i` stores columns `i - lower ..= i + lower + upper`; the extra
/// `lower` slots on the right absorb fill-in from row interchanges.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    lower: usize,
    upper: usize,
    width: usize,
    data: Vec<Complex64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, lower: usize, upper: usize) -> Self {
        let width = 2 * lower + upper + 1;
        Self {
            n,
            lower,
            upper,
            width,
            data: vec![ZERO; n * width],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    fn slot(&self, row: usize, col: usize) -> Option<usize> {
        let offset = col as isize - row as isize + self.lower as isize;
        (0..self.width as isize)
            .contains(&offset)
            .then(|| row * self.width + offset as usize)
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.slot(row, col).map_or(ZERO, |k| self.data[k])
    }

    /// Panics if `(row, col)` is outside the declared band.
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        let within = col + self.lower >= row && col <= row + self.upper;
        assert!(
            within && row < self.n && col < self.n,
            "({row}, {col}) outside the band"
        );
        let k = self.slot(row, col).expect("inside band");
        self.data[k] = value;
    }

    /// `self * x`.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|i| {
                let lo = i.saturating_sub(self.lower);
                let hi = (i + self.upper).min(self.n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }

    /// Solves `self * x = rhs` by Gaussian elimination with partial
    /// pivoting, consuming the matrix.
    pub fn solve(mut self, rhs: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        assert_eq!(rhs.len(), n, "right-hand side length");
        let mut b = rhs.to_vec();
        let reach = self.lower + self.upper;
        for k in 0..n {
            let last_row = (k + self.lower).min(n - 1);
            let (pivot_row, pivot_abs) =
                (k..=last_row)
                    .map(|i| (i, self.get(i, k).norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if !(pivot_abs >= PIVOT_FLOOR) {
                return Err(Error::SingularSystem {
                    row: k,
                    pivot: pivot_abs,
                });
            }
            let last_col = (k + reach).min(n - 1);
            if pivot_row != k {
                for j in k..=last_col {
                    let (a, c) = (self.slot(k, j).unwrap(), self.slot(pivot_row, j).unwrap());
                    self.data.swap(a, c);
                }
                b.swap(k, pivot_row);
            }
            let pivot = self.get(k, k);
            for i in (k + 1)..=last_row {
                let factor = self.get(i, k) / pivot;
                if factor == ZERO {
                    continue;
                }
                for j in k..=last_col {
                    let update = factor * self.get(k, j);
                    let s = self.slot(i, j).unwrap();
                    self.data[s] -= update;
                }
                b[i] = b[i] - factor * b[k];
            }
        }
        for k in (0..n).rev() {
            let last_col = (k + reach).min(n - 1);
            let tail: Complex64 = ((k + 1)..=last_col).map(|j| self.get(k, j) * b[j]).sum();
            b[k] = (b[k] - tail) / self.get(k, k);
        }
        Ok(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, DVector};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_band(n: usize, lower: usize, upper: usize, rng: &mut impl Rng) -> BandMatrix {
        let mut a = BandMatrix::zeros(n, lower, upper);
        for i in 0..n {
            for j in i.saturating_sub(lower)..=(i + upper).min(n - 1) {
                a.set(
                    i,
                    j,
                    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
                );
            }
        }
        a
    }

    #[test]
    fn agrees_with_dense_lu() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for (n, lower, upper) in [(1, 0, 0), (5, 1, 1), (12, 3, 3), (40, 2, 5), (33, 4, 0)] {
            let a = random_band(n, lower, upper, &mut rng);
            let rhs: Vec<Complex64> = (0..n)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            let dense = DMatrix::from_fn(n, n, |i, j| a.get(i, j));
            let expected = dense.lu().solve(&DVector::from_vec(rhs.clone())).unwrap();
            let got = a.solve(&rhs).unwrap();
            for (x, y) in got.iter().zip(expected.iter()) {
                assert!((x - y).norm() < 1e-9 * (1.0 + y.norm()), "n={n}");
            }
        }
    }

    #[test]
    fn needs_pivoting() {
        // zero on the diagonal forces a row interchange
        let mut a = BandMatrix::zeros(2, 1, 1);
        a.set(0, 1, Complex64::new(1.0, 0.0));
        a.set(1, 0, Complex64::new(2.0, 0.0));
        let x = a
            .solve(&[Complex64::new(3.0, 0.0), Complex64::new(4.0, 0.0)])
            .unwrap();
        assert_eq!(x, vec![Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)]);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let mut a = BandMatrix::zeros(3, 1, 1);
        a.set(0, 0, Complex64::new(1.0, 0.0));
        a.set(2, 2, Complex64::new(1.0, 0.0));
        assert!(matches!(
            a.solve(&[ZERO; 3]),
            Err(Error::SingularSystem { row: 1, .. })
        ));
    }

    #[test]
    fn residual_is_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_band(200, 3, 3, &mut rng);
        let rhs: Vec<Complex64> = (0..200).map(|i| Complex64::new(i as f64, 1.0)).collect();
        let x = a.clone().solve(&rhs).unwrap();
        let back = a.mul_vec(&x);
        let worst = back
            .iter()
            .zip(&rhs)
            .map(|(p, q)| (p - q).norm())
            .fold(0.0, f64::max);
        assert!(worst < 1e-8, "residual {worst}");
    }
}
