//! Brute-force evaluation of the orbit's second fundamental form from the
//! bracket table, and the cross-checks against the closed forms.
//!
//! At a regular point the normal space of the orbit is `𝔞` itself, and the
//! second fundamental form on the tangent basis `{T_{λ,i}} ∪ {Y_{β,j}} ∪
//! V(𝔪₁∩𝔨₂)` is assembled case by case:
//!
//! ```text
//! B(·,   T_{μ,j}) =  cot⟨μ,H⟩ · [·, S_{μ,j}]^⊥
//! B(·,   Y_{β,j}) = −tan⟨β,H⟩ · [·, X_{β,j}]^⊥
//! B(·,   V)       =  0
//! ```
//!
//! with `⊥` the projection onto `𝔞`.  The vanishing entries are verified,
//! not assumed.

use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::builders::HermannTriple;
use super::decomp::Decomposition;
use crate::{solver, Error, Result};

/// One evaluation of the second fundamental form at an angle.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SecondFormEval {
    /// `s = ⟨α, H⟩`.
    pub s: f64,
    /// `‖B_H‖²` in the −Killing metric.
    pub b_norm_sq: f64,
    /// Coefficient of the tension vector along the unit vector `Ĥ/|Ĥ|`.
    pub tension_unit_coeff: f64,
    /// Largest `|[tangent, V]^⊥|`-type entry that the vanishing cases say
    /// must be zero.
    pub max_vanishing: f64,
    /// Largest asymmetry `|B(e_u,e_v) − B(e_v,e_u)|` across the assembly.
    pub max_asymmetry: f64,
}

enum Slot<'a> {
    /// Tangent vector with a trig-paired partner: (ratio, partner, is_w).
    Paired { ratio: u32, partner: &'a DVector<f64>, is_w: bool },
    /// Tangent vector from `V(𝔪₁∩𝔨₂)`; all its entries vanish.
    Fixed,
}

/// Assembles `B_H` on the full tangent basis at `s = ⟨α,H⟩` and returns its
/// Frobenius norm and trace.
pub fn second_fundamental_form(d: &Decomposition, s: f64) -> Result<SecondFormEval> {
    let triad = d.recovered_triad()?;
    if let Some(wall) = triad.singular_wall(s) {
        return Err(Error::SingularAngle { s, wall });
    }

    // Tangent orthonormal basis with the data needed per slot.
    let mut tangents: Vec<(&DVector<f64>, Slot)> = Vec::new();
    for block in &d.sigma {
        for (t, p) in block.tangent.iter().zip(&block.partner) {
            tangents.push((t, Slot::Paired { ratio: block.ratio, partner: p, is_w: false }));
        }
    }
    for block in &d.w {
        for (y, x) in block.tangent.iter().zip(&block.partner) {
            tangents.push((y, Slot::Paired { ratio: block.ratio, partner: x, is_w: true }));
        }
    }
    for v in &d.v_mk {
        tangents.push((v, Slot::Fixed));
    }

    let h_norm = d.hh.sqrt();
    let proj = |vec: &DVector<f64>| d.ip(vec, d.h()) / h_norm;

    let m = tangents.len();
    let mut coeffs = vec![0.0; m * m];
    let mut max_vanishing = 0.0f64;
    for col in 0..m {
        let col_vec = tangents[col].0;
        match &tangents[col].1 {
            Slot::Paired { ratio, partner, is_w } => {
                let angle = *ratio as f64 * s;
                let factor = if *is_w { -angle.tan() } else { angle.cos() / angle.sin() };
                for (row, (t_row, _)) in tangents.iter().enumerate() {
                    coeffs[row * m + col] = factor * proj(&d.bra(t_row, partner));
                }
            }
            Slot::Fixed => {
                for (row, (t_row, _)) in tangents.iter().enumerate() {
                    max_vanishing = max_vanishing.max(proj(&d.bra(t_row, col_vec)).abs());
                    coeffs[row * m + col] = 0.0;
                }
            }
        }
    }

    let mut b_norm_sq = 0.0;
    let mut tension = 0.0;
    let mut max_asymmetry = 0.0f64;
    for u in 0..m {
        tension += coeffs[u * m + u];
        for v in 0..m {
            b_norm_sq += coeffs[u * m + v] * coeffs[u * m + v];
            max_asymmetry = max_asymmetry.max((coeffs[u * m + v] - coeffs[v * m + u]).abs());
        }
    }

    Ok(SecondFormEval { s, b_norm_sq, tension_unit_coeff: tension, max_vanishing, max_asymmetry })
}

/// Relative deviation with an absolute floor, stable near zeros and poles.
fn rel_dev(a: f64, b: f64) -> f64 {
    (a - b).abs() / 1f64.max(a.abs()).max(b.abs())
}

/// Outcome of the closed-form cross-check for one built case.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub case: String,
    pub b: u32,
    pub c: u32,
    pub recovered_mults: (u32, u32, u32, u32),
    pub catalog_mults: (u32, u32, u32, u32),
    pub recovered_norm_alpha_sq: f64,
    pub expected_norm_alpha_sq: f64,
    pub samples: usize,
    pub max_rel_dev_b_norm: f64,
    pub max_rel_dev_tension: f64,
    pub max_rel_dev: f64,
    pub max_vanishing: f64,
    pub pass: bool,
}

/// Samples regular angles uniformly in the cell and compares the numeric
/// `‖B_H‖²` and tension against the closed forms evaluated with the
/// recovered multiplicities.
pub fn verify_closed_forms(
    triple: &HermannTriple,
    samples: usize,
    seed: u64,
    tolerance: f64,
) -> Result<OracleReport> {
    let d = Decomposition::new(triple, false)?;
    let triad = d.recovered_triad()?;
    let recovered = d.multiplicities();
    let expected = triple.expected_multiplicities();

    let expected_aa = solver::norm_alpha_sq(&triad)?;
    let expected_aa = *expected_aa.numer() as f64 / *expected_aa.denom() as f64;
    let alpha_ok = (d.alpha_norm_sq() - expected_aa).abs() <= 1e-9 * expected_aa.max(1.0);

    let (lo, hi) = triad.fundamental_cell();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_b = 0.0f64;
    let mut max_t = 0.0f64;
    let mut max_vanishing = 0.0f64;
    let mut drawn = 0;
    while drawn < samples {
        let s = lo + rng.gen::<f64>() * (hi - lo);
        if !triad.is_regular_point(s) {
            continue;
        }
        drawn += 1;
        let eval = second_fundamental_form(&d, s)?;
        let closed_b = solver::b_norm_sq(&triad, s)?;
        let closed_t = solver::tension_coeff(&triad, s)? * expected_aa.sqrt();
        max_b = max_b.max(rel_dev(eval.b_norm_sq, closed_b));
        max_t = max_t.max(rel_dev(eval.tension_unit_coeff, closed_t));
        max_vanishing = max_vanishing.max(eval.max_vanishing).max(eval.max_asymmetry);
    }

    let pass = recovered == expected && alpha_ok && max_b <= tolerance && max_t <= tolerance
        && max_vanishing <= 1e-10;
    Ok(OracleReport {
        case: triple.case_name.to_string(),
        b: triple.b,
        c: triple.c,
        recovered_mults: recovered,
        catalog_mults: expected,
        recovered_norm_alpha_sq: d.alpha_norm_sq(),
        expected_norm_alpha_sq: expected_aa,
        samples,
        max_rel_dev_b_norm: max_b,
        max_rel_dev_tension: max_t,
        max_rel_dev: max_b.max(max_t),
        max_vanishing,
        pass,
    })
}

/// Deviations between an orbit and its dual at one angle.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DualityReport {
    pub s: f64,
    /// `|‖B'_H‖² − ‖B_H‖²|`.
    pub b_norm_dev: f64,
    /// Norm of the difference of the two tension vectors.
    pub tension_dev: f64,
}

/// Computes the second fundamental form of the dual orbit by rerunning the
/// whole pipeline with the two involutions exchanged, and compares.
pub fn verify_duality(triple: &HermannTriple, s: f64) -> Result<DualityReport> {
    let d1 = Decomposition::new(triple, false)?;
    let d2 = Decomposition::new(triple, true)?;
    let e1 = second_fundamental_form(&d1, s)?;
    let e2 = second_fundamental_form(&d2, s)?;
    Ok(DualityReport {
        s,
        b_norm_dev: (e1.b_norm_sq - e2.b_norm_sq).abs(),
        tension_dev: (e1.tension_unit_coeff - e2.tension_unit_coeff).abs(),
    })
}

/// Deterministic sample angles strictly inside the cell.
pub fn sample_angles(triad_cell: (f64, f64), count: usize) -> Vec<f64> {
    let (lo, hi) = triad_cell;
    (1..=count).map(|i| lo + (hi - lo) * i as f64 / (count + 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::oracle::builders::{build_so_triad, build_su_triad, DEFAULT_SIZE_CAP};
    use crate::triad::TriadKind;
    use approx::assert_relative_eq;

    #[test]
    fn so_1_1_2_recovers_type_and_threshold_point() {
        let triple = build_so_triad(1, 2, DEFAULT_SIZE_CAP).unwrap();
        let d = Decomposition::new(&triple, false).unwrap();
        assert_eq!(d.multiplicities(), (1, 0, 1, 0));
        let triad = d.recovered_triad().unwrap();
        assert_eq!(triad.kind(), TriadKind::IiiB1);
        // ⟨α,α⟩ = 1/(2(b+c−1)) = 1/4
        assert_relative_eq!(d.alpha_norm_sq(), 0.25, epsilon = 1e-12);
        // the (1,1) triad sits at the threshold at s = π/4
        let eval = second_fundamental_form(&d, PI / 4.0).unwrap();
        assert_relative_eq!(eval.b_norm_sq, 0.5, epsilon = 1e-9);
        assert!(eval.max_vanishing <= 1e-10);
        assert!(eval.tension_unit_coeff.abs() <= 1e-10); // harmonic there too
    }

    #[test]
    fn su_1_1_2_has_double_root_block() {
        let triple = build_su_triad(1, 2, DEFAULT_SIZE_CAP).unwrap();
        let d = Decomposition::new(&triple, false).unwrap();
        assert_eq!(d.multiplicities(), (2, 1, 2, 0));
        // eigenvalue pattern must include the 2α cluster
        assert!(d.sigma.iter().any(|b| b.ratio == 2));
        assert_relative_eq!(d.alpha_norm_sq(), 1.0 / 16.0, epsilon = 1e-12);
    }

    #[test]
    fn su_b0_collapses_to_isotropy() {
        let triple = build_su_triad(0, 2, DEFAULT_SIZE_CAP).unwrap();
        let d = Decomposition::new(&triple, false).unwrap();
        assert_eq!(d.multiplicities(), (2, 1, 0, 0));
        assert_eq!(d.recovered_triad().unwrap().kind(), TriadKind::IsoBc1);
    }

    #[test]
    fn closed_forms_agree_for_small_cases() {
        for triple in [
            build_so_triad(1, 3, DEFAULT_SIZE_CAP).unwrap(),
            build_su_triad(1, 2, DEFAULT_SIZE_CAP).unwrap(),
        ] {
            let report = verify_closed_forms(&triple, 20, 42, 1e-9).unwrap();
            assert!(report.pass, "{report:?}");
        }
    }

    #[test]
    fn rotation_formulas_hold() {
        let triple = build_so_triad(2, 2, DEFAULT_SIZE_CAP).unwrap();
        let d = Decomposition::new(&triple, false).unwrap();
        assert!(d.rotation_deviation() <= 1e-10);
    }

    #[test]
    fn perp_projection_identity() {
        // [T_{λ,i}, S_{μ,j}]^⊥ = −δ_{λμ}δ_{ij}·μ, checked through the
        // projection coefficients.
        let triple = build_su_triad(1, 2, DEFAULT_SIZE_CAP).unwrap();
        let d = Decomposition::new(&triple, false).unwrap();
        let h_norm = d.hh.sqrt();
        for bi in &d.sigma {
            for (i, t) in bi.tangent.iter().enumerate() {
                for bj in &d.sigma {
                    for (j, s) in bj.partner.iter().enumerate() {
                        let got = d.ip(&d.bra(t, s), d.h()) / d.hh;
                        let same = std::ptr::eq(bi, bj) && i == j;
                        // coefficient of Ĥ in −μ is −⟨μ,Ĥ⟩/⟨Ĥ,Ĥ⟩
                        let expected = if same { -bj.lam_h / d.hh } else { 0.0 };
                        assert!(
                            (got - expected).abs() <= 1e-10 * (1.0 + 1.0 / h_norm),
                            "projection identity fails: got {got}, expected {expected}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn duality_swap_exchanges_blocks_and_agrees() {
        let triple = build_so_triad(2, 2, DEFAULT_SIZE_CAP).unwrap();
        let d1 = Decomposition::new(&triple, false).unwrap();
        let d2 = Decomposition::new(&triple, true).unwrap();
        // swapping the involutions exchanges 𝔨₁∩𝔪₂ with 𝔪₁∩𝔨₂
        assert_eq!(d1.block_dims[0], d2.block_dims[0]);
        assert_eq!(d1.block_dims[1], d2.block_dims[1]);
        assert_eq!(d1.block_dims[2], d2.block_dims[3]);
        assert_eq!(d1.block_dims[3], d2.block_dims[2]);

        let rep = verify_duality(&triple, PI / 6.0).unwrap();
        assert!(rep.b_norm_dev <= 1e-10, "{rep:?}");
        assert!(rep.tension_dev <= 1e-10, "{rep:?}");

        let so112 = build_so_triad(1, 2, DEFAULT_SIZE_CAP).unwrap();
        let rep = verify_duality(&so112, PI / 6.0).unwrap();
        assert!(rep.b_norm_dev <= 1e-10 && rep.tension_dev <= 1e-10, "{rep:?}");
        let su112 = build_su_triad(1, 2, DEFAULT_SIZE_CAP).unwrap();
        let rep = verify_duality(&su112, PI / 5.0).unwrap();
        assert!(rep.b_norm_dev <= 1e-10 && rep.tension_dev <= 1e-10, "{rep:?}");
    }

    #[test]
    fn corrupted_bracket_table_is_detected() {
        let mut triple = build_so_triad(1, 2, DEFAULT_SIZE_CAP).unwrap();
        // scale one structure constant: [Ĥ, e_v] for some v in the α-block
        let dim = triple.algebra.dim();
        let h = triple.h_index;
        let mut hit = false;
        for v in 0..dim {
            if v == h {
                continue;
            }
            let idx = h * dim + v;
            if !triple.algebra.bracket.entries[idx].is_empty() {
                for entry in triple.algebra.bracket.entries[idx].iter_mut() {
                    entry.1 *= crate::Rational::new(2, 1);
                }
                hit = true;
                break;
            }
        }
        assert!(hit);
        let outcome = verify_closed_forms(&triple, 5, 1, 1e-9);
        match outcome {
            Err(_) => {}
            Ok(report) => assert!(!report.pass, "corruption must not verify: {report:?}"),
        }
    }
}
