//! Dense square complex matrices in row-major storage.

use num_complex::Complex64;

pub type C64 = Complex64;

/// Dense n×n complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat {
    dim: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![C64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_vec(dim: usize, data: Vec<C64>) -> Self {
        assert_eq!(data.len(), dim * dim);
        Self { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[C64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [C64] {
        &mut self.data
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.data[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    /// Plain matrix trace (not normalized).
    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    /// Normalized trace τ(X) = Tr(X)/n, the tracial state of the matrix
    /// algebra.
    pub fn normalized_trace(&self) -> C64 {
        self.trace() / self.dim as f64
    }

    pub fn dagger(&self) -> CMat {
        let mut out = CMat::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self.at(j, i).conj();
            }
        }
        out
    }

    pub fn matmul(&self, other: &CMat) -> CMat {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                let row_out = &mut out.data[i * n..(i + 1) * n];
                let row_b = &other.data[k * n..(k + 1) * n];
                for j in 0..n {
                    row_out[j] += a * row_b[j];
                }
            }
        }
        out
    }

    pub fn add(&self, other: &CMat) -> CMat {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &CMat) -> CMat {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, s: C64) -> CMat {
        CMat {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    fn zip(&self, other: &CMat, f: impl Fn(C64, C64) -> C64) -> CMat {
        assert_eq!(self.dim, other.dim);
        CMat {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max entry modulus of X - X†.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in i..self.dim {
                let d = (self.at(i, j) - self.at(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Rank-one update X += s·v·w†.
    pub fn add_outer(&mut self, s: C64, v: &[C64], w: &[C64]) {
        let n = self.dim;
        for i in 0..n {
            let a = s * v[i];
            if a.norm_sqr() == 0.0 {
                continue;
            }
            let row = &mut self.data[i * n..(i + 1) * n];
            for j in 0..n {
                row[j] += a * w[j].conj();
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for CMat {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        &mut self.data[i * self.dim + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_identity() {
        let mut a = CMat::zeros(3);
        a[(0, 1)] = C64::new(2.0, -1.0);
        a[(2, 2)] = C64::new(0.0, 3.0);
        let id = CMat::identity(3);
        assert_eq!(a.matmul(&id), a);
        assert_eq!(id.matmul(&a), a);
    }

    #[test]
    fn dagger_involution() {
        let mut a = CMat::zeros(2);
        a[(0, 1)] = C64::new(1.0, 2.0);
        a[(1, 0)] = C64::new(-3.0, 0.5);
        assert_eq!(a.dagger().dagger(), a);
    }

    #[test]
    fn hermiticity_defect_detects() {
        let mut a = CMat::identity(2);
        assert_eq!(a.hermiticity_defect(), 0.0);
        a[(0, 1)] = C64::new(0.0, 1.0);
        a[(1, 0)] = C64::new(0.0, 1.0); // should be -i for Hermitian
        assert!(a.hermiticity_defect() > 1.9);
    }
}
