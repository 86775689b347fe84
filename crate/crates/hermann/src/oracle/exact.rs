//! Small dense matrices over exact rationals, just enough for bracket
//! tables: multiply, commutator, conjugation.

use num_traits::Zero;

use crate::Rational;

#[derive(Clone, PartialEq, Eq)]
pub(crate) struct QMat {
    n: usize,
    a: Vec<Rational>,
}

impl QMat {
    pub fn zeros(n: usize) -> Self {
        QMat { n, a: vec![Rational::zero(); n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.a[i * self.n + j] = v;
    }

    pub fn set_int(&mut self, i: usize, j: usize, v: i64) {
        self.set(i, j, Rational::new(v, 1));
    }

    pub fn mul(&self, rhs: &QMat) -> QMat {
        debug_assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = QMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let bkj = rhs.get(k, j);
                    if !bkj.is_zero() {
                        out.a[i * n + j] += aik * bkj;
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &QMat) -> QMat {
        let mut ab = self.mul(rhs);
        let ba = rhs.mul(self);
        for (x, y) in ab.a.iter_mut().zip(&ba.a) {
            *x -= *y;
        }
        ab
    }

    /// `D · self · D` for a diagonal sign matrix given by `signs`.
    pub fn conjugate_by_signs(&self, signs: &[i64]) -> QMat {
        debug_assert_eq!(signs.len(), self.n);
        let n = self.n;
        let mut out = QMat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let v = self.get(i, j);
                if !v.is_zero() {
                    out.set(i, j, v * Rational::new(signs[i] * signs[j], 1));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Rational::is_zero)
    }

    /// `self − Σ c_w · basis_w`, for reconstruction checks.
    pub fn minus_combination(&self, coeffs: &[Rational], basis: &[QMat]) -> QMat {
        let mut out = self.clone();
        for (c, b) in coeffs.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.a.iter_mut().zip(&b.a) {
                *x -= *c * *y;
            }
        }
        out
    }

    #[cfg(test)]
    pub fn trace(&self) -> Rational {
        (0..self.n).map(|i| self.get(i, i)).fold(Rational::zero(), |acc, v| acc + v)
    }
}
