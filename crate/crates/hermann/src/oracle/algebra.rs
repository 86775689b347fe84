//! Matrix Lie algebras with exact bracket tables and the Killing form
//! computed from structure constants.
//!
//! The Killing form is assembled as `K(X,Y) = tr(ad X ∘ ad Y)` from the
//! bracket table alone — no per-algebra trace shortcuts — so the oracle
//! shares no formula with the closed-form solver it is checking.

use std::collections::BTreeMap;

use num_traits::{ToPrimitive, Zero};

use super::exact::QMat;
use crate::{Error, Rational, Result};

pub(crate) type SparseVec = Vec<(usize, Rational)>;

/// Structure constants `[e_u, e_v] = Σ_w c^w_{uv} e_w`, stored sparsely.
pub(crate) struct BracketTable {
    dim: usize,
    pub(crate) entries: Vec<SparseVec>,
}

impl BracketTable {
    pub fn coeffs(&self, u: usize, v: usize) -> &[(usize, Rational)] {
        &self.entries[u * self.dim + v]
    }

    /// Coefficient of `e_w` in `[e_u, e_v]`.
    pub fn coeff(&self, u: usize, v: usize, w: usize) -> Rational {
        self.coeffs(u, v)
            .iter()
            .find(|&&(i, _)| i == w)
            .map(|&(_, c)| c)
            .unwrap_or_else(Rational::zero)
    }

    /// Exact bracket of sparse coefficient vectors.
    pub fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for &(u, cu) in x {
            for &(v, cv) in y {
                let scale = cu * cv;
                if scale.is_zero() {
                    continue;
                }
                for &(w, c) in self.coeffs(u, v) {
                    let e = acc.entry(w).or_insert_with(Rational::zero);
                    *e += scale * c;
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// A compact matrix Lie algebra: explicit basis, exact bracket table, and
/// the Killing form of the bracket table.
pub struct MatrixLieAlgebra {
    pub(crate) name: String,
    pub(crate) matrix_dim: usize,
    pub(crate) basis: Vec<QMat>,
    pub(crate) bracket: BracketTable,
    /// `K(e_u, e_v)`, row-major `dim × dim`, exact.
    pub(crate) killing: Vec<Rational>,
}

impl MatrixLieAlgebra {
    /// Number of basis elements.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Size of the square matrices realizing the algebra.
    pub fn matrix_dim(&self) -> usize {
        self.matrix_dim
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn killing(&self, u: usize, v: usize) -> Rational {
        self.killing[u * self.dim() + v]
    }

    /// `⟨e_u, e_v⟩ = −K(e_u, e_v)`, the positive-definite inner product.
    pub fn gram(&self, u: usize, v: usize) -> Rational {
        -self.killing(u, v)
    }

    pub(crate) fn bracket(&self) -> &BracketTable {
        &self.bracket
    }

    /// Builds the table by expanding exact commutators of basis matrices,
    /// verifying that each bracket reconstructs exactly, then computes the
    /// Killing form and checks it is symmetric and negative definite.
    pub(crate) fn from_basis(
        name: &str,
        basis: Vec<QMat>,
        expand: &dyn Fn(&QMat) -> Result<Vec<Rational>>,
    ) -> Result<Self> {
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::InvalidArgument("empty basis".into()));
        }
        let matrix_dim = basis[0].n();

        let mut entries: Vec<SparseVec> = vec![Vec::new(); dim * dim];
        for u in 0..dim {
            for v in u + 1..dim {
                let m = basis[u].commutator(&basis[v]);
                let coeffs = expand(&m).map_err(|e| {
                    Error::Structural(format!("{name}: bracket [{u},{v}] does not expand: {e}"))
                })?;
                if !m.minus_combination(&coeffs, &basis).is_zero() {
                    return Err(Error::Structural(format!(
                        "{name}: bracket [{u},{v}] is not reconstructed by its expansion; \
                         the basis does not close under the bracket"
                    )));
                }
                let sparse: SparseVec =
                    coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (w, *c)).collect();
                entries[v * dim + u] = sparse.iter().map(|&(w, c)| (w, -c)).collect();
                entries[u * dim + v] = sparse;
            }
        }
        let bracket = BracketTable { dim, entries };

        // K(u,v) = tr(ad_u ∘ ad_v) = Σ_a Σ_b c^b_{va} c^a_{ub}
        let mut killing = vec![Rational::zero(); dim * dim];
        for u in 0..dim {
            for v in u..dim {
                let mut acc = Rational::zero();
                for a in 0..dim {
                    for &(b, cva) in bracket.coeffs(v, a) {
                        let cub = bracket.coeff(u, b, a);
                        if !cub.is_zero() {
                            acc += cva * cub;
                        }
                    }
                }
                killing[u * dim + v] = acc;
                killing[v * dim + u] = acc;
            }
        }

        let alg = MatrixLieAlgebra { name: name.into(), matrix_dim, basis, bracket, killing };
        alg.check_gram_positive_definite()?;
        Ok(alg)
    }

    fn check_gram_positive_definite(&self) -> Result<()> {
        let dim = self.dim();
        let mut g = nalgebra::DMatrix::<f64>::zeros(dim, dim);
        for u in 0..dim {
            for v in 0..dim {
                g[(u, v)] = self.gram(u, v).to_f64().unwrap();
            }
        }
        let eig = g.symmetric_eigenvalues();
        let min = eig.iter().cloned().fold(f64::INFINITY, f64::min);
        if min <= 0.0 {
            return Err(Error::Structural(format!(
                "{}: −Killing is not positive definite (min eigenvalue {min:.3e}); \
                 the algebra is not of compact type",
                self.name
            )));
        }
        Ok(())
    }

    /// Exact Jacobi residue `[[u,v],w] + [[v,w],u] + [[w,u],v]` on basis
    /// indices; empty means zero.
    pub fn jacobi_residue(&self, u: usize, v: usize, w: usize) -> Vec<(usize, Rational)> {
        let e = |i: usize| vec![(i, Rational::new(1, 1))];
        let t = self.bracket();
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for (x, y, z) in [(u, v, w), (v, w, u), (w, u, v)] {
            let inner: SparseVec = t.coeffs(x, y).to_vec();
            for &(i, c) in &t.bracket_sparse(&inner, &e(z)) {
                let entry = acc.entry(i).or_insert_with(Rational::zero);
                *entry += c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// An involutive automorphism given by its exact action on the basis.
pub struct Involution {
    pub(crate) name: String,
    /// Image of `e_u` as a sparse coefficient vector.
    pub(crate) map: Vec<SparseVec>,
}

impl Involution {
    /// Conjugation `X ↦ D X D` by a diagonal sign matrix.
    pub(crate) fn from_sign_conjugator(
        name: &str,
        alg: &MatrixLieAlgebra,
        signs: &[i64],
        expand: &dyn Fn(&QMat) -> Result<Vec<Rational>>,
    ) -> Result<Self> {
        let mut map = Vec::with_capacity(alg.dim());
        for (u, b) in alg.basis.iter().enumerate() {
            let image = b.conjugate_by_signs(signs);
            let coeffs = expand(&image).map_err(|e| {
                Error::Structural(format!("{name}: image of basis {u} does not expand: {e}"))
            })?;
            if !image.minus_combination(&coeffs, &alg.basis).is_zero() {
                return Err(Error::Structural(format!(
                    "{name}: conjugation image of basis {u} leaves the algebra"
                )));
            }
            map.push(
                coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(w, c)| (w, *c)).collect(),
            );
        }
        Ok(Involution { name: name.into(), map })
    }

    pub(crate) fn apply_sparse(&self, x: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
        for &(u, cu) in x {
            for &(w, c) in &self.map[u] {
                let e = acc.entry(w).or_insert_with(Rational::zero);
                *e += cu * c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Exact checks: `θ² = id`, `θ[X,Y] = [θX, θY]` on all basis pairs, and
    /// commutation with a companion involution.
    pub(crate) fn verify(&self, alg: &MatrixLieAlgebra, companion: &Involution) -> Result<()> {
        let dim = alg.dim();
        let e = |u: usize| vec![(u, Rational::new(1, 1))];
        for u in 0..dim {
            if self.apply_sparse(&self.map[u]) != e(u) {
                return Err(Error::Structural(format!("{} does not square to id", self.name)));
            }
        }
        for u in 0..dim {
            for v in u + 1..dim {
                let lhs = self.apply_sparse(&alg.bracket().coeffs(u, v).to_vec());
                let rhs = alg.bracket().bracket_sparse(&self.map[u], &self.map[v]);
                if lhs != rhs {
                    return Err(Error::Structural(format!(
                        "{} is not a bracket automorphism at [{u},{v}]",
                        self.name
                    )));
                }
            }
        }
        for u in 0..dim {
            let a = self.apply_sparse(&companion.map[u]);
            let b = companion.apply_sparse(&self.map[u]);
            if a != b {
                return Err(Error::Structural(format!(
                    "{} and {} do not commute",
                    self.name, companion.name
                )));
            }
        }
        Ok(())
    }
}
