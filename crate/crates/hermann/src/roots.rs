//! Root systems over an exact-rational inner product space.
//!
//! Everything here is rank-general and used for axiom validation; the solver
//! itself only ever sees the rank-one triad types of [`crate::triad`].

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::{Error, Rational, Result};

/// Finite dimensional inner product space with an exact positive-definite
/// Gram matrix.  Roots are stored as coordinate vectors against this space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientSpace {
    gram: Vec<Vec<Rational>>,
}

impl AmbientSpace {
    /// Builds the space, checking symmetry and positive definiteness
    /// (exact leading principal minors).
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 || gram.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument("Gram matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidArgument("Gram matrix must be symmetric".into()));
                }
            }
        }
        for k in 1..=n {
            if leading_minor(&gram, k) <= Rational::zero() {
                return Err(Error::InvalidArgument(
                    "Gram matrix must be positive definite".into(),
                ));
            }
        }
        Ok(AmbientSpace { gram })
    }

    /// Euclidean space of the given dimension.
    pub fn standard(dim: usize) -> Self {
        let gram = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { Rational::new(1, 1) } else { Rational::zero() })
                    .collect()
            })
            .collect();
        AmbientSpace { gram }
    }

    /// One-dimensional space with `⟨e, e⟩ = norm_sq`.
    pub fn line(norm_sq: Rational) -> Result<Self> {
        Self::new(vec![vec![norm_sq]])
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn inner(&self, a: &RootVector, b: &RootVector) -> Rational {
        debug_assert_eq!(a.dim(), self.dim());
        debug_assert_eq!(b.dim(), self.dim());
        let mut acc = Rational::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if !bj.is_zero() {
                    acc += *ai * self.gram[i][j] * *bj;
                }
            }
        }
        acc
    }

    pub fn norm_sq(&self, a: &RootVector) -> Rational {
        self.inner(a, a)
    }
}

fn leading_minor(gram: &[Vec<Rational>], k: usize) -> Rational {
    // exact determinant by Gaussian elimination with rational pivots
    let mut m: Vec<Vec<Rational>> = (0..k).map(|i| gram[i][..k].to_vec()).collect();
    let mut det = Rational::new(1, 1);
    for col in 0..k {
        let pivot_row = match (col..k).find(|&r| !m[r][col].is_zero()) {
            Some(r) => r,
            None => return Rational::zero(),
        };
        if pivot_row != col {
            m.swap(pivot_row, col);
            det = -det;
        }
        let pivot = m[col][col];
        det *= pivot;
        for r in col + 1..k {
            let factor = m[r][col] / pivot;
            if factor.is_zero() {
                continue;
            }
            for c in col..k {
                let sub = factor * m[col][c];
                m[r][c] -= sub;
            }
        }
    }
    det
}

/// Vector of exact rationals; an element of an [`AmbientSpace`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector {
    coords: Vec<Rational>,
}

impl RootVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        RootVector { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        RootVector { coords: coords.iter().map(|&c| Rational::new(c, 1)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    pub fn negated(&self) -> Self {
        RootVector { coords: self.coords.iter().map(|c| -*c).collect() }
    }

    pub fn scaled(&self, k: Rational) -> Self {
        RootVector { coords: self.coords.iter().map(|c| *c * k).collect() }
    }

    fn sub(&self, other: &Self) -> Self {
        RootVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl fmt::Debug for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Reflection `s_α(H) = H − (2⟨α,H⟩/⟨α,α⟩)·α`, exact.
///
/// Errors on `α = 0`.
pub fn reflect(space: &AmbientSpace, alpha: &RootVector, h: &RootVector) -> Result<RootVector> {
    if alpha.is_zero() {
        return Err(Error::InvalidArgument("cannot reflect in a zero vector".into()));
    }
    let coeff = Rational::new(2, 1) * space.inner(alpha, h) / space.norm_sq(alpha);
    Ok(h.sub(&alpha.scaled(coeff)))
}

/// Outcome of one named axiom check, with the first violating witness.
#[derive(Clone, Debug, Serialize)]
pub struct ConditionCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl ConditionCheck {
    pub fn pass(name: &str) -> Self {
        ConditionCheck { name: name.into(), passed: true, witness: None }
    }

    pub fn fail(name: &str, witness: String) -> Self {
        ConditionCheck { name: name.into(), passed: false, witness: Some(witness) }
    }
}

/// Per-condition validation outcome; failures are report entries, not errors.
#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ConditionCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn failure_names(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            write!(f, "{status}  {}", c.name)?;
            if let Some(w) = &c.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Finite set of nonzero roots in an ambient space.
#[derive(Clone, Debug)]
pub struct RootSystem {
    space: AmbientSpace,
    roots: Vec<RootVector>,
}

impl RootSystem {
    /// Deduplicates the root set; errors on an empty set, a zero root, or a
    /// dimension mismatch.
    pub fn new(space: AmbientSpace, roots: Vec<RootVector>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidArgument("root set must be nonempty".into()));
        }
        let mut set = BTreeSet::new();
        for r in &roots {
            if r.dim() != space.dim() {
                return Err(Error::InvalidArgument(format!(
                    "root {r:?} has dimension {} in a space of dimension {}",
                    r.dim(),
                    space.dim()
                )));
            }
            if r.is_zero() {
                return Err(Error::InvalidArgument("roots must be nonzero".into()));
            }
            set.insert(r.clone());
        }
        Ok(RootSystem { space, roots: set.into_iter().collect() })
    }

    pub fn space(&self) -> &AmbientSpace {
        &self.space
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn contains(&self, v: &RootVector) -> bool {
        self.roots.binary_search(v).is_ok()
    }

    /// Checks the root-system axioms: span, closure under reflections, and
    /// integrality of `2⟨α,β⟩/⟨α,α⟩`.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();

        let rank = rank_of(&self.roots, self.space.dim());
        checks.push(if rank == self.space.dim() {
            ConditionCheck::pass("span")
        } else {
            ConditionCheck::fail(
                "span",
                format!("roots span a subspace of dimension {rank} < {}", self.space.dim()),
            )
        });

        let mut closure = ConditionCheck::pass("reflection-closure");
        'outer: for a in &self.roots {
            for b in &self.roots {
                let image = reflect(&self.space, a, b).expect("roots are nonzero");
                if !self.contains(&image) {
                    closure = ConditionCheck::fail(
                        "reflection-closure",
                        format!("s_{a:?}({b:?}) = {image:?} is not a root"),
                    );
                    break 'outer;
                }
            }
        }
        checks.push(closure);

        let mut integrality = ConditionCheck::pass("integrality");
        'outer2: for a in &self.roots {
            for b in &self.roots {
                let c = Rational::new(2, 1) * self.space.inner(a, b) / self.space.norm_sq(a);
                if !c.is_integer() {
                    integrality = ConditionCheck::fail(
                        "integrality",
                        format!("2⟨{a:?},{b:?}⟩/⟨{a:?},{a:?}⟩ = {c} is not an integer"),
                    );
                    break 'outer2;
                }
            }
        }
        checks.push(integrality);

        ValidationReport { checks }
    }

    /// Whether the root set cannot be split into two nonempty mutually
    /// orthogonal subsets.  Computed, never asserted.
    pub fn is_irreducible(&self) -> bool {
        let n = self.roots.len();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] && !self.space.inner(&self.roots[i], &self.roots[j]).is_zero() {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

fn rank_of(vectors: &[RootVector], dim: usize) -> usize {
    let mut rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coords.clone()).collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_val = rows[rank][col];
        for r in rank + 1..rows.len() {
            let factor = rows[r][col] / pivot_val;
            if factor.is_zero() {
                continue;
            }
            for c in col..dim {
                let sub = factor * rows[rank][c];
                rows[r][c] -= sub;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn line() -> AmbientSpace {
        AmbientSpace::line(Rational::new(1, 4)).unwrap()
    }

    #[test]
    fn reflect_negates_axis_and_fixes_hyperplane() {
        let space = AmbientSpace::standard(2);
        let alpha = RootVector::from_ints(&[1, 0]);
        let perp = RootVector::from_ints(&[0, 3]);
        assert_eq!(reflect(&space, &alpha, &alpha).unwrap(), alpha.negated());
        assert_eq!(reflect(&space, &alpha, &perp).unwrap(), perp);
        let double = alpha.scaled(Rational::new(2, 1));
        assert_eq!(reflect(&space, &alpha, &double).unwrap(), double.negated());
    }

    #[test]
    fn reflect_rejects_zero_axis() {
        let space = AmbientSpace::standard(1);
        let zero = RootVector::from_ints(&[0]);
        let h = RootVector::from_ints(&[1]);
        assert!(reflect(&space, &zero, &h).is_err());
    }

    #[test]
    fn rank_one_systems_validate() {
        let rs = RootSystem::new(
            line(),
            vec![RootVector::from_ints(&[1]), RootVector::from_ints(&[-1])],
        )
        .unwrap();
        assert!(rs.validate().passed());
        assert!(rs.is_irreducible());

        let bc1 = RootSystem::new(
            line(),
            [1i64, 2, -1, -2].iter().map(|&k| RootVector::from_ints(&[k])).collect(),
        )
        .unwrap();
        assert!(bc1.validate().passed());
    }

    #[test]
    fn missing_negative_root_fails_closure() {
        let rs = RootSystem::new(line(), vec![RootVector::from_ints(&[1])]).unwrap();
        let report = rs.validate();
        assert!(!report.passed());
        assert_eq!(report.first_failure().unwrap().name, "reflection-closure");
    }

    #[test]
    fn non_spanning_set_fails_span() {
        let rs = RootSystem::new(
            AmbientSpace::standard(2),
            vec![RootVector::from_ints(&[1, 0]), RootVector::from_ints(&[-1, 0])],
        )
        .unwrap();
        let report = rs.validate();
        assert_eq!(report.first_failure().unwrap().name, "span");
    }

    #[test]
    fn a1_times_a1_is_reducible() {
        let roots = vec![
            RootVector::from_ints(&[1, 0]),
            RootVector::from_ints(&[-1, 0]),
            RootVector::from_ints(&[0, 1]),
            RootVector::from_ints(&[0, -1]),
        ];
        let rs = RootSystem::new(AmbientSpace::standard(2), roots).unwrap();
        assert!(rs.validate().passed());
        assert!(!rs.is_irreducible());
    }

    proptest! {
        #[test]
        fn reflection_is_an_involution(
            a in -6i64..=6, b in -6i64..=6,
            hx in -9i64..=9, hy in -9i64..=9,
        ) {
            prop_assume!(a != 0 || b != 0);
            let space = AmbientSpace::standard(2);
            let alpha = RootVector::from_ints(&[a, b]);
            let h = RootVector::from_ints(&[hx, hy]);
            let once = reflect(&space, &alpha, &h).unwrap();
            let twice = reflect(&space, &alpha, &once).unwrap();
            prop_assert_eq!(twice, h);
        }
    }
}
