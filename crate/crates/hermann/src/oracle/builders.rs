//! Explicit constructions of `so(1+b+c)` and `su(1+b+c)` with the two
//! commuting involutions `θ₁ = conj by I'_{1+b}`, `θ₂ = conj by I'_1`,
//! where `I'_l` negates the first `l` coordinates.
//!
//! The `su` case is realified: each complex matrix `X + iY` is stored as
//! the real `2n × 2n` matrix `[[X, −Y], [Y, X]]`, and the basis of the real
//! Lie algebra `su(n)` contributes `A_{jk} = E_{jk} − E_{kj}`,
//! `B_{jk} = i(E_{jk} + E_{kj})` and the diagonal `D_k = i(E_kk − E_{k+1,k+1})`.

use num_traits::Zero;

use super::algebra::{Involution, MatrixLieAlgebra};
use super::exact::QMat;
use crate::{Error, Rational, Result};

/// Default cap on `1 + b + c`; exact bracket tables stay small below it.
pub const DEFAULT_SIZE_CAP: u32 = 10;

/// A matrix Lie algebra with two commuting involutions and the generator of
/// the one-dimensional section.
pub struct HermannTriple {
    pub algebra: MatrixLieAlgebra,
    pub theta1: Involution,
    pub theta2: Involution,
    /// Basis index of `Ĥ`, the matrix `H(1) = E_{1,n} − E_{n,1}`.
    pub(crate) h_index: usize,
    pub case_name: &'static str,
    pub b: u32,
    pub c: u32,
}

impl HermannTriple {
    /// Multiplicities `(m₁, m₂, n₁, n₂)` this case must recover.
    pub fn expected_multiplicities(&self) -> (u32, u32, u32, u32) {
        match self.case_name {
            "so" => (self.c - 1, 0, self.b, 0),
            "su" => (2 * (self.c - 1), 1, 2 * self.b, 0),
            other => unreachable!("unknown case {other}"),
        }
    }
}

fn check_size(b: u32, c: u32, b_min: u32, size_cap: u32) -> Result<usize> {
    if b < b_min || c < 2 {
        return Err(Error::InvalidArgument(format!(
            "need b ≥ {b_min} and c ≥ 2, got b = {b}, c = {c}"
        )));
    }
    let n = 1 + b + c;
    if n > size_cap {
        return Err(Error::ResourceLimit(format!(
            "1 + b + c = {n} exceeds the size cap {size_cap}"
        )));
    }
    Ok(n as usize)
}

fn sign_vector(n: usize, l: usize) -> Vec<i64> {
    (0..n).map(|i| if i < l { -1 } else { 1 }).collect()
}

/// `so(1+b+c)` with the involutions of the real Grassmannian family.
pub fn build_so_triad(b: u32, c: u32, size_cap: u32) -> Result<HermannTriple> {
    let n = check_size(b, c, 1, size_cap)?;

    // Basis A_{ij} = E_{ij} − E_{ji} for i < j, ordered lexicographically.
    let mut basis = Vec::new();
    let mut index = vec![vec![usize::MAX; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let mut m = QMat::zeros(n);
            m.set_int(i, j, 1);
            m.set_int(j, i, -1);
            index[i][j] = basis.len();
            basis.push(m);
        }
    }

    let idx = index.clone();
    let so_dim = n * (n - 1) / 2;
    let expand = move |m: &QMat| -> Result<Vec<Rational>> {
        let mut coeffs = vec![Rational::zero(); so_dim];
        for i in 0..m.n() {
            if !m.get(i, i).is_zero() {
                return Err(Error::Structural("matrix is not antisymmetric".into()));
            }
            for j in i + 1..m.n() {
                if m.get(j, i) != -m.get(i, j) {
                    return Err(Error::Structural("matrix is not antisymmetric".into()));
                }
                coeffs[idx[i][j]] = m.get(i, j);
            }
        }
        Ok(coeffs)
    };

    let algebra = MatrixLieAlgebra::from_basis(&format!("so({n})"), basis, &expand)?;
    let theta1 = Involution::from_sign_conjugator(
        "theta1",
        &algebra,
        &sign_vector(n, (1 + b) as usize),
        &expand,
    )?;
    let theta2 =
        Involution::from_sign_conjugator("theta2", &algebra, &sign_vector(n, 1), &expand)?;
    theta1.verify(&algebra, &theta2)?;
    theta2.verify(&algebra, &theta1)?;

    Ok(HermannTriple {
        algebra,
        theta1,
        theta2,
        h_index: index[0][n - 1],
        case_name: "so",
        b,
        c,
    })
}

/// Layout of the realified `su(n)` basis.
struct SuLayout {
    n: usize,
    a_index: Vec<Vec<usize>>,
    b_index: Vec<Vec<usize>>,
    d_start: usize,
    dim: usize,
}

impl SuLayout {
    fn new(n: usize) -> Self {
        let mut a_index = vec![vec![usize::MAX; n]; n];
        let mut b_index = vec![vec![usize::MAX; n]; n];
        let mut next = 0;
        for i in 0..n {
            for j in i + 1..n {
                a_index[i][j] = next;
                next += 1;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                b_index[i][j] = next;
                next += 1;
            }
        }
        let d_start = next;
        SuLayout { n, a_index, b_index, d_start, dim: d_start + n - 1 }
    }

    /// Realified basis matrix: `X + iY ↦ [[X, −Y], [Y, X]]`.
    fn realified(&self, x_entries: &[(usize, usize, i64)], y_entries: &[(usize, usize, i64)]) -> QMat {
        let n = self.n;
        let mut m = QMat::zeros(2 * n);
        for &(i, j, v) in x_entries {
            m.set_int(i, j, v);
            m.set_int(n + i, n + j, v);
        }
        for &(i, j, v) in y_entries {
            m.set_int(i, n + j, -v);
            m.set_int(n + i, j, v);
        }
        m
    }

    fn basis(&self) -> Vec<QMat> {
        let n = self.n;
        let mut out = Vec::with_capacity(self.dim);
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.realified(&[(i, j, 1), (j, i, -1)], &[]));
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                out.push(self.realified(&[], &[(i, j, 1), (j, i, 1)]));
            }
        }
        for k in 0..n - 1 {
            out.push(self.realified(&[], &[(k, k, 1), (k + 1, k + 1, -1)]));
        }
        out
    }

    /// Expands a realified trace-free anti-Hermitian matrix over the basis.
    fn expand(&self, m: &QMat) -> Result<Vec<Rational>> {
        let n = self.n;
        if m.n() != 2 * n {
            return Err(Error::Structural("wrong realified size".into()));
        }
        // Read off X and Y and confirm the realified block structure.
        let x = |i: usize, j: usize| m.get(i, j);
        let y = |i: usize, j: usize| m.get(n + i, j);
        for i in 0..n {
            for j in 0..n {
                if m.get(i, n + j) != -y(i, j) || m.get(n + i, n + j) != x(i, j) {
                    return Err(Error::Structural("matrix is not a realified complex matrix".into()));
                }
                if x(i, j) != -x(j, i) || y(i, j) != y(j, i) {
                    return Err(Error::Structural("matrix is not anti-Hermitian".into()));
                }
            }
        }
        let mut coeffs = vec![Rational::zero(); self.dim];
        for i in 0..n {
            for j in i + 1..n {
                coeffs[self.a_index[i][j]] = x(i, j);
                coeffs[self.b_index[i][j]] = y(i, j);
            }
        }
        // Diagonal iY part: t_k = y(k,k), Σ t_k = 0; prefix sums give the
        // coefficients over D_k = i(E_kk − E_{k+1,k+1}).
        let mut total = Rational::zero();
        for k in 0..n {
            total += y(k, k);
        }
        if !total.is_zero() {
            return Err(Error::Structural("matrix is not trace-free".into()));
        }
        let mut prefix = Rational::zero();
        for k in 0..n - 1 {
            prefix += y(k, k);
            coeffs[self.d_start + k] = prefix;
        }
        Ok(coeffs)
    }
}

/// Realified `su(1+b+c)` with the involutions of the complex Grassmannian
/// family; `b = 0` makes the two involutions coincide (isotropy case).
pub fn build_su_triad(b: u32, c: u32, size_cap: u32) -> Result<HermannTriple> {
    let n = check_size(b, c, 0, size_cap)?;
    let layout = SuLayout::new(n);
    let basis = layout.basis();
    let h_index = layout.a_index[0][n - 1];

    let layout_for_expand = SuLayout::new(n);
    let expand = move |m: &QMat| layout_for_expand.expand(m);

    let algebra = MatrixLieAlgebra::from_basis(&format!("su({n})"), basis, &expand)?;

    // Realified conjugator: diag(I'_l, I'_l).
    let realified_signs = |l: usize| -> Vec<i64> {
        let s = sign_vector(n, l);
        s.iter().chain(s.iter()).cloned().collect()
    };
    let theta1 = Involution::from_sign_conjugator(
        "theta1",
        &algebra,
        &realified_signs((1 + b) as usize),
        &expand,
    )?;
    let theta2 =
        Involution::from_sign_conjugator("theta2", &algebra, &realified_signs(1), &expand)?;
    theta1.verify(&algebra, &theta2)?;
    theta2.verify(&algebra, &theta1)?;

    Ok(HermannTriple { algebra, theta1, theta2, h_index, case_name: "su", b, c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use rand::{Rng, SeedableRng};

    #[test]
    fn so4_killing_matches_trace_shortcut() {
        // Cross-check only: K(X,Y) for so(n) equals (n−2)·tr(XY).
        let t = build_so_triad(1, 2, DEFAULT_SIZE_CAP).unwrap();
        let alg = &t.algebra;
        assert_eq!(alg.dim(), 6);
        for u in 0..alg.dim() {
            for v in 0..alg.dim() {
                let shortcut = alg.basis[u].mul(&alg.basis[v]).trace() * Rational::new(2, 1);
                assert_eq!(alg.killing(u, v), shortcut, "K({u},{v})");
            }
        }
        // K(A_12, A_12) = −4 in so(4)
        assert_eq!(alg.killing(0, 0), Rational::new(-4, 1));
    }

    #[test]
    fn su_killing_matches_trace_shortcut() {
        // K(X,Y) for su(n) equals 2n·tr_C(XY); the complex trace of a
        // realified product is half the real trace.
        let t = build_su_triad(1, 2, DEFAULT_SIZE_CAP).unwrap();
        let alg = &t.algebra;
        assert_eq!(alg.dim(), 15);
        assert_eq!(alg.matrix_dim(), 8);
        // tr_real of a realified product is twice the complex trace, so
        // K = 2n·tr_C(XY) = n·tr_real, with n = 4 here.
        for u in 0..alg.dim() {
            for v in 0..alg.dim() {
                let real_trace = alg.basis[u].mul(&alg.basis[v]).trace();
                assert_eq!(alg.killing(u, v), real_trace * Rational::new(4, 1), "K({u},{v})");
            }
        }
    }

    #[test]
    fn jacobi_identity_on_random_triples() {
        let cases = [
            build_so_triad(2, 2, DEFAULT_SIZE_CAP).unwrap(),
            build_su_triad(1, 2, DEFAULT_SIZE_CAP).unwrap(),
        ];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for t in &cases {
            let dim = t.algebra.dim();
            for _ in 0..200 {
                let u = rng.gen_range(0..dim);
                let v = rng.gen_range(0..dim);
                let w = rng.gen_range(0..dim);
                assert!(
                    t.algebra.jacobi_residue(u, v, w).is_empty(),
                    "Jacobi fails at ({u},{v},{w}) in {}",
                    t.algebra.name()
                );
            }
        }
    }

    #[test]
    fn killing_is_theta_invariant() {
        let t = build_so_triad(1, 2, DEFAULT_SIZE_CAP).unwrap();
        let alg = &t.algebra;
        // θ diagonal on this basis: K(θX, θY) = K(X,Y) on all pairs.
        for theta in [&t.theta1, &t.theta2] {
            for u in 0..alg.dim() {
                for v in 0..alg.dim() {
                    let iu = &theta.map[u];
                    let iv = &theta.map[v];
                    let mut k = Rational::zero();
                    for &(a, ca) in iu {
                        for &(b2, cb) in iv {
                            k += ca * cb * alg.killing(a, b2);
                        }
                    }
                    assert_eq!(k, alg.killing(u, v));
                }
            }
        }
    }

    #[test]
    fn h_bracket_pairing_matches_example() {
        // [H(1), A_1^j] = −A_n^j, i.e. the bracket sends the first-row
        // basis elements to the last-row ones (0-indexed: [e_H, A_{0,j}]
        // has coefficient −1 on A_{j,n−1} after orientation).
        let t = build_so_triad(1, 2, DEFAULT_SIZE_CAP).unwrap();
        let n = 4;
        let pair = |i: usize, j: usize| -> usize {
            // lexicographic index of (i,j), i < j, in n = 4
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if (a, b) == (i, j) {
                        return k;
                    }
                    k += 1;
                }
            }
            unreachable!()
        };
        let h = t.h_index;
        assert_eq!(h, pair(0, 3));
        for j in 1..3 {
            let coeffs = t.algebra.bracket().coeffs(h, pair(0, j));
            // [A_{0,3}, A_{0,j}] = −A_{3,j} = A_{j,3}
            assert_eq!(coeffs, &[(pair(j, 3), Rational::new(1, 1))]);
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        assert!(matches!(
            build_so_triad(5, 6, DEFAULT_SIZE_CAP),
            Err(Error::ResourceLimit(_))
        ));
        assert!(build_so_triad(0, 2, DEFAULT_SIZE_CAP).is_err());
        assert!(build_su_triad(0, 2, DEFAULT_SIZE_CAP).is_ok());
    }

    #[test]
    fn gram_is_positive_definite_numerically() {
        let t = build_su_triad(0, 2, DEFAULT_SIZE_CAP).unwrap();
        for u in 0..t.algebra.dim() {
            assert!(t.algebra.gram(u, u).to_f64().unwrap() > 0.0);
        }
    }
}
