//! Closed forms for the orbit geometry and the exact harmonic/biharmonic
//! solver.
//!
//! For a regular orbit through `exp H` the squared norm of the second
//! fundamental form and the tension field are
//!
//! ```text
//! ‖B_H‖²      = Σ_{λ∈Σ⁺} m(λ)·cot²⟨λ,H⟩·⟨λ,λ⟩ + Σ_{β∈W⁺} n(β)·tan²⟨β,H⟩·⟨β,β⟩
//! dL⁻¹(τ_H)   = −Σ_{λ∈Σ⁺} m(λ)·cot⟨λ,H⟩·λ   + Σ_{β∈W⁺} n(β)·tan⟨β,H⟩·β
//! ```
//!
//! with `⟨α,α⟩ = 1/(2(m₁ + 4m₂ + n₁ + 4n₂))` under the −Killing metric.
//! An orbit with nonzero constant mean curvature is biharmonic exactly when
//! `‖B_H‖² = 1/2`, which in the variable `u = tan²ϑ` (`ϑ = ⟨α̃,H⟩`) is an
//! integer quadratic — solved here in exact surd arithmetic.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::catalog::{instantiate_all, CaseGroup, CatalogRow};
use crate::surd::QuadraticSurd;
use crate::triad::{Triad1, TriadKind};
use crate::{Error, Rational, Result};

/// `⟨α,α⟩ = 1/(2(m₁ + 4m₂ + n₁ + 4n₂))`, exact.
///
/// Errors when all multiplicities vanish.
pub fn norm_alpha_sq(t: &Triad1) -> Result<Rational> {
    let total = t.total_weighted_multiplicity();
    if total == 0 {
        return Err(Error::InvalidArgument(
            "norm_alpha_sq needs a positive total multiplicity".into(),
        ));
    }
    Ok(Rational::new(1, 2 * total as i64))
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

fn require_regular(t: &Triad1, s: f64) -> Result<()> {
    match t.singular_wall(s) {
        None => Ok(()),
        Some(wall) => Err(Error::SingularAngle { s, wall }),
    }
}

/// `‖B_H‖²` at `s = ⟨α,H⟩`, in the −Killing metric.
pub fn b_norm_sq(t: &Triad1, s: f64) -> Result<f64> {
    require_regular(t, s)?;
    let aa = rational_to_f64(norm_alpha_sq(t)?);
    let (m1, m2, n1, n2) = t.mults();
    let mut total = 0.0;
    if m1 > 0 {
        total += m1 as f64 * cot(s).powi(2) * aa;
    }
    if m2 > 0 {
        total += m2 as f64 * cot(2.0 * s).powi(2) * 4.0 * aa;
    }
    if n1 > 0 {
        total += n1 as f64 * s.tan().powi(2) * aa;
    }
    if n2 > 0 {
        total += n2 as f64 * (2.0 * s).tan().powi(2) * 4.0 * aa;
    }
    Ok(total)
}

/// Coefficient `k` with `dL⁻¹(τ_H) = k·α`:
/// `k = −m₁·cot s − 2m₂·cot 2s + n₁·tan s + 2n₂·tan 2s`.
pub fn tension_coeff(t: &Triad1, s: f64) -> Result<f64> {
    require_regular(t, s)?;
    let (m1, m2, n1, n2) = t.mults();
    let mut k = 0.0;
    if m1 > 0 {
        k -= m1 as f64 * cot(s);
    }
    if m2 > 0 {
        k -= 2.0 * m2 as f64 * cot(2.0 * s);
    }
    if n1 > 0 {
        k += n1 as f64 * s.tan();
    }
    if n2 > 0 {
        k += 2.0 * n2 as f64 * (2.0 * s).tan();
    }
    Ok(k)
}

fn rational_to_f64(x: Rational) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Pointwise geometry of a regular orbit, for curve exports.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GeometryReport {
    pub s: f64,
    pub b_norm_sq: f64,
    pub tension_coeff: f64,
    pub is_regular: bool,
}

pub fn evaluate_geometry(t: &Triad1, s: f64) -> Result<GeometryReport> {
    Ok(GeometryReport {
        s,
        b_norm_sq: b_norm_sq(t, s)?,
        tension_coeff: tension_coeff(t, s)?,
        is_regular: true,
    })
}

/// Which exact variable a solution value is expressed in.
///
/// The types whose highest root is `α̃ = α` or `2α` report `u = tan²ϑ` with
/// `ϑ = ⟨α̃,H⟩`; the isotropy kinds report `v = cot²s` with `s = ⟨α,H⟩`
/// (for ISO-A1 the harmonic orbit sits at `s = π/2` where `tan²` has a
/// pole, so `cot²s = 0` keeps the value finite and exactly comparable).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionVariable {
    #[serde(rename = "tan2_theta")]
    TanSqTheta,
    #[serde(rename = "cot2_s")]
    CotSqS,
}

pub fn solution_variable(kind: TriadKind) -> SolutionVariable {
    if kind.is_isotropy() {
        SolutionVariable::CotSqS
    } else {
        SolutionVariable::TanSqTheta
    }
}

/// The unique solution of `τ_H = 0` in the cell, as an exact value of the
/// type's solution variable.
pub fn solve_harmonic(t: &Triad1) -> QuadraticSurd {
    let (m1, m2, n1, n2) = t.mults();
    let (m1, m2, n1, n2) = (m1 as i64, m2 as i64, n1 as i64, n2 as i64);
    let q = |num: i64, den: i64| QuadraticSurd::rational(num, den).expect("positive denominator");
    match t.kind() {
        TriadKind::IiiB1 => q(m1, n1),
        TriadKind::IBc1 => q(m1 + m2, n1 + m2),
        TriadKind::IiBc1 => q(m1, n2),
        TriadKind::IiiBc1 => q(m1 + m2, n2),
        TriadKind::IsoA1 => QuadraticSurd::zero(),
        TriadKind::IsoBc1 => q(m2, m1 + m2),
    }
}

/// All solutions of `‖B_H‖² = 1/2` in the cell, as exact values of the
/// type's solution variable, increasing.  Complex roots are dropped and a
/// double root appears once.
pub fn solve_biharmonic(t: &Triad1) -> Vec<QuadraticSurd> {
    let (m1, m2, n1, n2) = t.mults();
    let (m1, m2, n1, n2) = (m1 as i64, m2 as i64, n1 as i64, n2 as i64);
    let roots = |a: i64, b: i64, c: i64| {
        QuadraticSurd::quadratic_roots(a, b, c).expect("nonzero leading coefficient")
    };
    let roots = match t.kind() {
        // cot²ϑ + (n/m)·tan²ϑ = (m+n)/m: roots 1 and m/n
        TriadKind::IiiB1 => roots(n1, -(m1 + n1), m1),
        TriadKind::IBc1 => roots(n1 + m2, -(m1 + n1 + 6 * m2), m1 + m2),
        TriadKind::IiBc1 => roots(n2, -n2, m1),
        TriadKind::IiiBc1 => roots(n2, -(m2 + n2), m1 + m2),
        TriadKind::IsoA1 => vec![QuadraticSurd::one()],
        TriadKind::IsoBc1 => roots(m1 + m2, -(m1 + 6 * m2), m2),
    };
    roots.into_iter().filter(QuadraticSurd::is_positive).collect()
}

/// Angles `s = ⟨α,H⟩` in the fundamental cell at which the solution
/// variable takes the value `v`.  One angle for the `tan²ϑ` types, one for
/// ISO-BC1, and both preimages in `(0, π)` for ISO-A1.
pub fn angles_in_cell(t: &Triad1, v: &QuadraticSurd) -> Vec<f64> {
    let x = v.to_f64();
    debug_assert!(x >= 0.0);
    match solution_variable(t.kind()) {
        SolutionVariable::TanSqTheta => {
            let theta = x.sqrt().atan();
            vec![theta / t.kind().alpha_tilde_ratio() as f64]
        }
        SolutionVariable::CotSqS => {
            if v.is_zero() {
                return vec![PI / 2.0];
            }
            let s = (1.0 / x.sqrt()).atan();
            if t.kind() == TriadKind::IsoA1 {
                vec![s, PI - s]
            } else {
                vec![s]
            }
        }
    }
}

/// Full classification of a triad's regular orbits.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub kind: TriadKind,
    pub m1: u32,
    pub m2: u32,
    pub n1: u32,
    pub n2: u32,
    pub variable: SolutionVariable,
    /// Value of the solution variable at the unique harmonic regular orbit.
    pub harmonic: QuadraticSurd,
    /// Solutions of `‖B‖² = 1/2`, increasing.
    pub biharmonic: Vec<QuadraticSurd>,
    /// Biharmonic solutions that are not the harmonic orbit.
    pub proper: Vec<QuadraticSurd>,
    /// Number of proper biharmonic orbits: `harmonic-only`, `unique-proper`
    /// or `two-proper`.
    pub case: CaseGroup,
    /// Angle `s = ⟨α,H⟩` of the harmonic orbit.
    pub harmonic_angle_rad: f64,
    /// Angles `s = ⟨α,H⟩` of the proper biharmonic orbits, parallel to
    /// `proper` (ISO-A1 contributes both preimages of its single value).
    pub angles_rad: Vec<f64>,
}

/// Solves both conditions and takes the exact set difference.
pub fn classify(t: &Triad1) -> Classification {
    let harmonic = solve_harmonic(t);
    let biharmonic = solve_biharmonic(t);
    let proper: Vec<QuadraticSurd> =
        biharmonic.iter().filter(|v| **v != harmonic).cloned().collect();

    let mut angles_rad = Vec::new();
    for v in &proper {
        angles_rad.extend(angles_in_cell(t, v));
    }
    let case = match angles_rad.len() {
        0 => CaseGroup::HarmonicOnly,
        1 => CaseGroup::UniqueProper,
        2 => CaseGroup::TwoProper,
        n => unreachable!("a rank-one triad has at most two proper biharmonic orbits, got {n}"),
    };

    Classification {
        kind: t.kind(),
        m1: t.m1(),
        m2: t.m2(),
        n1: t.n1(),
        n2: t.n2(),
        variable: solution_variable(t.kind()),
        harmonic_angle_rad: angles_in_cell(t, &harmonic)[0],
        harmonic,
        biharmonic,
        proper,
        case,
        angles_rad,
    }
}

/// One classified catalog instance compared against its expected case.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogInstance {
    #[serde(flatten)]
    pub row: CatalogRow,
    pub classification: Classification,
    pub expected_group: CaseGroup,
    pub matches: bool,
}

/// Catalog-wide classification report.
#[derive(Clone, Debug, Serialize)]
pub struct CatalogReport {
    pub max_param: u32,
    pub instances: Vec<CatalogInstance>,
    /// Distinct case labels seen, keyed by outcome class.
    pub families_by_group: BTreeMap<String, Vec<String>>,
    pub family_count: usize,
    pub mismatches: usize,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.mismatches == 0
    }

    /// Sizes of the three groups by distinct case label.
    pub fn group_sizes(&self) -> (usize, usize, usize) {
        let count = |g: CaseGroup| self.families_by_group.get(g.label()).map_or(0, Vec::len);
        (
            count(CaseGroup::UniqueProper),
            count(CaseGroup::TwoProper),
            count(CaseGroup::HarmonicOnly),
        )
    }
}

/// Classifies every catalog instantiation with parameters `≤ max_param` and
/// cross-checks each outcome against the stored case label.
pub fn classify_catalog(max_param: u32) -> Result<CatalogReport> {
    let mut instances = Vec::new();
    let mut by_group: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut mismatches = 0;
    for (row, triad) in instantiate_all(max_param)? {
        let classification = classify(&triad);
        let expected_group = row_group(&row);
        let matches = classification.case == expected_group;
        if !matches {
            mismatches += 1;
        }
        let labels = by_group.entry(expected_group.label().to_string()).or_default();
        if !labels.contains(&row.theorem_case) {
            labels.push(row.theorem_case.clone());
        }
        instances.push(CatalogInstance { row, classification, expected_group, matches });
    }
    for labels in by_group.values_mut() {
        labels.sort();
    }
    let family_count = by_group.values().map(Vec::len).sum();
    Ok(CatalogReport { max_param, instances, families_by_group: by_group, family_count, mismatches })
}

fn row_group(row: &CatalogRow) -> CaseGroup {
    match row.theorem_case.as_bytes()[1] {
        b'1' => CaseGroup::UniqueProper,
        b'2' => CaseGroup::TwoProper,
        _ => CaseGroup::HarmonicOnly,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triad::TriadKind;
    use approx::assert_relative_eq;

    fn triad(kind: TriadKind, m1: u32, m2: u32, n1: u32, n2: u32) -> Triad1 {
        Triad1::new(kind, m1, m2, n1, n2).unwrap()
    }

    fn surd(p: i64, q: i64, d: i64, r: i64) -> QuadraticSurd {
        QuadraticSurd::new(p, q, d, r).unwrap()
    }

    #[test]
    fn norm_alpha_sq_values() {
        assert_eq!(
            norm_alpha_sq(&triad(TriadKind::IsoBc1, 8, 7, 0, 0)).unwrap(),
            Rational::new(1, 72)
        );
        assert_eq!(
            norm_alpha_sq(&triad(TriadKind::IiiB1, 1, 0, 1, 0)).unwrap(),
            Rational::new(1, 4)
        );
        // (c−1, b) = (2, 1): 1/(2(b+c−1)) with b = 1, c = 3
        assert_eq!(
            norm_alpha_sq(&triad(TriadKind::IiiB1, 2, 0, 1, 0)).unwrap(),
            Rational::new(1, 6)
        );
    }

    #[test]
    fn b_norm_sq_examples() {
        // ISO-BC1 (8,7) at s = π/4: cot(π/2) = 0 leaves (1/18)·2·1 = 1/9.
        let op2 = triad(TriadKind::IsoBc1, 8, 7, 0, 0);
        assert_relative_eq!(b_norm_sq(&op2, PI / 4.0).unwrap(), 1.0 / 9.0, epsilon = 1e-14);

        // III-B1 (1,1) at s = π/4 sits exactly at the threshold 1/2.
        let sphere_pair = triad(TriadKind::IiiB1, 1, 0, 1, 0);
        assert_relative_eq!(b_norm_sq(&sphere_pair, PI / 4.0).unwrap(), 0.5, epsilon = 1e-14);

        // cot pole at the cell wall
        let t = triad(TriadKind::IiiB1, 1, 0, 2, 0);
        assert!(matches!(b_norm_sq(&t, 0.0), Err(Error::SingularAngle { .. })));
        assert!(b_norm_sq(&t, 1e-6).unwrap() > 1e6 * rational_to_f64(norm_alpha_sq(&t).unwrap()));
    }

    #[test]
    fn tension_examples() {
        // III-B1 (m,n): zero exactly at tan s = √(m/n)
        let t = triad(TriadKind::IiiB1, 3, 0, 1, 0);
        let s = (3.0f64.sqrt()).atan();
        assert_relative_eq!(tension_coeff(&t, s).unwrap(), 0.0, epsilon = 1e-12);

        let t12 = triad(TriadKind::IiiB1, 1, 0, 2, 0);
        assert_relative_eq!(tension_coeff(&t12, PI / 4.0).unwrap(), 1.0, epsilon = 1e-12);

        let iso = triad(TriadKind::IsoA1, 5, 0, 0, 0);
        assert_relative_eq!(tension_coeff(&iso, PI / 2.0).unwrap(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn harmonic_solutions_per_type() {
        assert_eq!(solve_harmonic(&triad(TriadKind::IBc1, 4, 1, 1, 0)), surd(5, 0, 0, 2));
        assert_eq!(solve_harmonic(&triad(TriadKind::IiiB1, 2, 0, 2, 0)), QuadraticSurd::one());
        assert_eq!(solve_harmonic(&triad(TriadKind::IsoBc1, 8, 7, 0, 0)), surd(7, 0, 0, 15));
        assert_eq!(solve_harmonic(&triad(TriadKind::IsoA1, 7, 0, 0, 0)), QuadraticSurd::zero());
    }

    #[test]
    fn biharmonic_solutions_per_type() {
        // I-BC1 (4,1,1): 2u² − 11u + 5 = 0 → {1/2, 5}
        let roots = solve_biharmonic(&triad(TriadKind::IBc1, 4, 1, 1, 0));
        assert_eq!(roots, vec![surd(1, 0, 0, 2), surd(5, 0, 0, 1)]);

        // III-BC1 (8,3,8,5): discriminant (3−5)² − 4·5·8 = −156 < 0
        assert!(solve_biharmonic(&triad(TriadKind::IiiBc1, 8, 3, 8, 5)).is_empty());

        // ISO-BC1 (8,7): (25 ± 2√130)/15
        let oct = solve_biharmonic(&triad(TriadKind::IsoBc1, 8, 7, 0, 0));
        assert_eq!(oct, vec![surd(25, -2, 130, 15), surd(25, 2, 130, 15)]);
    }

    #[test]
    fn classify_examples() {
        // (Sp(2), U(2), Sp(1)×Sp(1)): unique proper orbit at ϑ = π/4
        let c = classify(&triad(TriadKind::IiiB1, 1, 0, 2, 0));
        assert_eq!(c.case, CaseGroup::UniqueProper);
        assert_eq!(c.proper, vec![QuadraticSurd::one()]);
        assert_relative_eq!(c.angles_rad[0], PI / 4.0, epsilon = 1e-14);

        // (SO(6), U(3), SO(3)×SO(3)): n₂ = 1 < 4m₁ = 8, harmonic only
        let c = classify(&triad(TriadKind::IiBc1, 2, 0, 2, 1));
        assert_eq!(c.case, CaseGroup::HarmonicOnly);
        assert!(c.proper.is_empty());

        // (E6, SO(10)·U(1), F4): u² − 8u + 15 → {3, 5}
        let c = classify(&triad(TriadKind::IiiBc1, 8, 7, 8, 1));
        assert_eq!(c.case, CaseGroup::TwoProper);
        assert_eq!(c.proper, vec![surd(3, 0, 0, 1), surd(5, 0, 0, 1)]);

        // ISO-A1: one solution value, two orbits
        let c = classify(&triad(TriadKind::IsoA1, 3, 0, 0, 0));
        assert_eq!(c.case, CaseGroup::TwoProper);
        assert_eq!(c.angles_rad.len(), 2);
        assert_relative_eq!(c.angles_rad[0], PI / 4.0, epsilon = 1e-14);
        assert_relative_eq!(c.angles_rad[1], 3.0 * PI / 4.0, epsilon = 1e-14);
        assert_relative_eq!(c.harmonic_angle_rad, PI / 2.0, epsilon = 1e-14);
    }

    #[test]
    fn double_root_counts_once() {
        // II-BC1 with n₂ = 4m₁: single proper orbit at tan²ϑ = 1/2
        let c = classify(&triad(TriadKind::IiBc1, 1, 0, 1, 4));
        assert_eq!(c.case, CaseGroup::UniqueProper);
        assert_eq!(c.proper, vec![surd(1, 0, 0, 2)]);
    }

    #[test]
    fn catalog_report_is_clean_at_small_bounds() {
        let report = classify_catalog(6).unwrap();
        assert!(report.passed());
        assert_eq!(report.group_sizes(), (3, 7, 8));
        assert_eq!(report.family_count, 18);
    }

    #[test]
    fn harmonic_identity_over_random_mults() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let any = |rng: &mut rand_chacha::ChaCha8Rng| rng.gen_range(1u32..=50);
        for _ in 0..200 {
            for t in [
                triad(TriadKind::IiiB1, any(&mut rng), 0, any(&mut rng), 0),
                triad(TriadKind::IBc1, any(&mut rng), any(&mut rng), any(&mut rng), 0),
                {
                    let m1 = any(&mut rng);
                    triad(TriadKind::IiBc1, m1, 0, m1, any(&mut rng))
                },
                {
                    let m1 = any(&mut rng);
                    triad(TriadKind::IiiBc1, m1, any(&mut rng), m1, any(&mut rng))
                },
                triad(TriadKind::IsoA1, any(&mut rng), 0, 0, 0),
                triad(TriadKind::IsoBc1, any(&mut rng), any(&mut rng), 0, 0),
            ] {
                let s = angles_in_cell(&t, &solve_harmonic(&t))[0];
                let k = tension_coeff(&t, s).unwrap();
                assert!(k.abs() <= 1e-12, "{t}: tension {k:.2e} at the harmonic angle");
            }
        }
    }

    #[test]
    fn wall_blowup() {
        // ‖B‖² diverges at both cell walls for every type
        for t in [
            triad(TriadKind::IiiB1, 2, 0, 3, 0),
            triad(TriadKind::IBc1, 4, 1, 1, 0),
            triad(TriadKind::IiBc1, 2, 0, 2, 1),
            triad(TriadKind::IiiBc1, 8, 7, 8, 1),
            triad(TriadKind::IsoA1, 4, 0, 0, 0),
            triad(TriadKind::IsoBc1, 8, 7, 0, 0),
        ] {
            let (lo, hi) = t.fundamental_cell();
            let eps = 1e-7 * (hi - lo);
            assert!(b_norm_sq(&t, lo + eps).unwrap() > 1e8);
            assert!(b_norm_sq(&t, hi - eps).unwrap() > 1e8);
        }
    }
}
