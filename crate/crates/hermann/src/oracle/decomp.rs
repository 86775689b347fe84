//! Joint-involution splitting, restricted-root recovery, and adapted bases.
//!
//! Starting from an exact bracket table the pipeline is numeric: split the
//! basis by the signs of the two involutions, diagonalize `(ad Ĥ)²` on each
//! of the four blocks, cluster the eigenvalues into the `{0, −a², −4a²}`
//! pattern, and build the paired orthonormal bases
//! `T = [Ĥ, S]/⟨λ,Ĥ⟩`, `Y = [Ĥ, X]/⟨β,Ĥ⟩` whose bracket relations are
//! verified to `1e-10`.

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;

use super::builders::HermannTriple;
use crate::triad::Triad1;
use crate::{Error, Result};

/// Clustering tolerance for eigenvalues of `(ad Ĥ)²` after normalizing
/// `⟨Ĥ,Ĥ⟩ = 1`; the spectra here are `{0, −a², −4a²}` with `a² ≥ 1/200`.
const CLUSTER_TOL: f64 = 1e-8;
/// Tolerance for the adapted-basis bracket relations.
const ONB_TOL: f64 = 1e-10;

/// Adapted orthonormal pair bases attached to one root `λ = ratio·α`.
///
/// For a Σ-root the `partner` basis spans the `𝔨₁∩𝔨₂` eigenspace (the `S`
/// vectors) and `tangent` spans its `𝔪₁∩𝔪₂` mirror (the `T` vectors); for
/// a W-root they are the `X` (in `𝔨₁∩𝔪₂`) and `Y` (in `𝔪₁∩𝔨₂`) vectors.
pub struct RootBlock {
    pub ratio: u32,
    /// `⟨λ, Ĥ⟩`.
    pub lam_h: f64,
    pub partner: Vec<DVector<f64>>,
    pub tangent: Vec<DVector<f64>>,
}

/// The full decomposition of the algebra relative to `(θ₁, θ₂, 𝔞)`.
pub struct Decomposition {
    dim: usize,
    gram: DMatrix<f64>,
    /// Sparse bracket table in f64: `bracket[u·dim + v] = [(w, c), …]`.
    bracket: Vec<Vec<(usize, f64)>>,
    /// Ĥ as a coefficient vector (a single basis element for our builders).
    h: DVector<f64>,
    /// `⟨Ĥ, Ĥ⟩`.
    pub hh: f64,
    /// `a = ⟨α, Ĥ⟩ > 0` recovered from the base eigenvalue cluster.
    pub alpha_h: f64,
    pub sigma: Vec<RootBlock>,
    pub w: Vec<RootBlock>,
    pub k0: Vec<DVector<f64>>,
    pub v_km: Vec<DVector<f64>>,
    pub v_mk: Vec<DVector<f64>>,
    /// Sizes of the four sign blocks `[𝔨₁∩𝔨₂, 𝔪₁∩𝔪₂, 𝔨₁∩𝔪₂, 𝔪₁∩𝔨₂]`.
    pub block_dims: [usize; 4],
    /// Largest violation seen while checking the pair-basis relations.
    pub max_onb_violation: f64,
}

impl Decomposition {
    /// Decomposes the triple; with `swap` the roles of the two involutions
    /// are exchanged, which computes the dual-orbit data.
    pub fn new(triple: &HermannTriple, swap: bool) -> Result<Self> {
        let alg = &triple.algebra;
        let dim = alg.dim();

        let mut gram = DMatrix::<f64>::zeros(dim, dim);
        for u in 0..dim {
            for v in 0..dim {
                gram[(u, v)] = alg.gram(u, v).to_f64().unwrap();
            }
        }
        let mut bracket = vec![Vec::new(); dim * dim];
        for u in 0..dim {
            for v in 0..dim {
                bracket[u * dim + v] = alg
                    .bracket()
                    .coeffs(u, v)
                    .iter()
                    .map(|&(w, c)| (w, c.to_f64().unwrap()))
                    .collect();
            }
        }

        // Diagonal signs of the involutions on the basis.
        let (ta, tb) = if swap { (&triple.theta2, &triple.theta1) } else { (&triple.theta1, &triple.theta2) };
        let signs_of = |theta: &super::algebra::Involution| -> Result<Vec<f64>> {
            (0..dim)
                .map(|u| match theta.map[u].as_slice() {
                    [(w, c)] if *w == u && (*c.numer() == 1 || *c.numer() == -1) && *c.denom() == 1 => {
                        Ok(c.to_f64().unwrap())
                    }
                    _ => Err(Error::Structural(format!(
                        "involution is not diagonal on basis element {u}"
                    ))),
                })
                .collect()
        };
        let s1 = signs_of(ta)?;
        let s2 = signs_of(tb)?;

        let mut blocks: [Vec<usize>; 4] = Default::default();
        for u in 0..dim {
            let slot = match (s1[u] > 0.0, s2[u] > 0.0) {
                (true, true) => 0,   // 𝔨₁∩𝔨₂
                (false, false) => 1, // 𝔪₁∩𝔪₂
                (true, false) => 2,  // 𝔨₁∩𝔪₂
                (false, true) => 3,  // 𝔪₁∩𝔨₂
            };
            blocks[slot].push(u);
        }
        let block_dims = [blocks[0].len(), blocks[1].len(), blocks[2].len(), blocks[3].len()];

        let mut h = DVector::zeros(dim);
        h[triple.h_index] = 1.0;
        if !blocks[1].contains(&triple.h_index) {
            return Err(Error::Structural("Ĥ does not lie in 𝔪₁ ∩ 𝔪₂".into()));
        }

        let mut d = Decomposition {
            dim,
            gram,
            bracket,
            h: h.clone(),
            hh: 0.0,
            alpha_h: 0.0,
            sigma: Vec::new(),
            w: Vec::new(),
            k0: Vec::new(),
            v_km: Vec::new(),
            v_mk: Vec::new(),
            block_dims,
            max_onb_violation: 0.0,
        };
        d.hh = d.ip(&h, &h);

        // Eigen-split each block under (ad Ĥ)².
        let mut split = Vec::new();
        for idxs in &blocks {
            split.push(d.eigen_split(idxs)?);
        }

        // Collect nonzero normalized eigenvalue clusters across blocks and
        // match them to the {a², 4a²} pattern.
        let mut centers: Vec<f64> = Vec::new();
        for bs in &split {
            for (val, _) in &bs.nonzero {
                if !centers.iter().any(|c| (c - val).abs() < 10.0 * CLUSTER_TOL) {
                    centers.push(*val);
                }
            }
        }
        centers.sort_by(|x, y| x.partial_cmp(y).unwrap());
        if centers.is_empty() || centers.len() > 2 {
            return Err(Error::Structural(format!(
                "eigenvalue clusters {centers:?} do not match an A1/BC1 root pattern"
            )));
        }
        if centers.len() == 2 && (centers[1] / centers[0] - 4.0).abs() > 1e-6 {
            return Err(Error::Structural(format!(
                "eigenvalue clusters {centers:?} are not in ratio 1:4"
            )));
        }
        let base = centers[0]; // ⟨α, Ĥ_unit⟩²
        d.alpha_h = (base * d.hh).sqrt();

        // 𝔞 maximal abelian: the zero eigenspace of (ad Ĥ)² on 𝔪₁∩𝔪₂ must
        // be Ĥ itself and nothing more.
        let mm_zero = &split[1].zero;
        if mm_zero.len() != 1 {
            return Err(Error::Structural(format!(
                "centralizer of 𝔞 in 𝔪₁∩𝔪₂ has dimension {}; 𝔞 is not maximal abelian",
                mm_zero.len()
            )));
        }
        let overlap = d.ip(&mm_zero[0], &h).abs() / d.hh.sqrt();
        if (overlap - 1.0).abs() > 1e-8 {
            return Err(Error::Structural("zero eigenspace of 𝔪₁∩𝔪₂ is not spanned by Ĥ".into()));
        }

        // Adapted pair bases: Σ-roots pair 𝔨₁∩𝔨₂ with 𝔪₁∩𝔪₂, W-roots pair
        // 𝔨₁∩𝔪₂ with 𝔪₁∩𝔨₂.
        for (cluster_idx, &center) in centers.iter().enumerate() {
            let ratio = if cluster_idx == 0 { 1 } else { 2 };
            let lam_h = (center * d.hh).sqrt();

            let find = |bs: &BlockSplit| -> Vec<DVector<f64>> {
                bs.nonzero
                    .iter()
                    .find(|(val, _)| (val - center).abs() < 10.0 * CLUSTER_TOL)
                    .map(|(_, vecs)| vecs.clone())
                    .unwrap_or_default()
            };
            let s_vecs = find(&split[0]);
            let t_mirror = find(&split[1]);
            if !s_vecs.is_empty() || !t_mirror.is_empty() {
                if s_vecs.len() != t_mirror.len() {
                    return Err(Error::Structural(format!(
                        "dim 𝔨_λ = {} but dim 𝔪_λ = {} at λ = {ratio}α",
                        s_vecs.len(),
                        t_mirror.len()
                    )));
                }
                let block = d.build_pair_block(ratio, lam_h, s_vecs, &[-1.0, -1.0], &s1, &s2)?;
                d.sigma.push(block);
            }

            let x_vecs = find(&split[2]);
            let y_mirror = find(&split[3]);
            if !x_vecs.is_empty() || !y_mirror.is_empty() {
                if x_vecs.len() != y_mirror.len() {
                    return Err(Error::Structural(format!(
                        "dim V⊥({ratio}α, 𝔨₁∩𝔪₂) = {} but dim V⊥({ratio}α, 𝔪₁∩𝔨₂) = {}",
                        x_vecs.len(),
                        y_mirror.len()
                    )));
                }
                let block = d.build_pair_block(ratio, lam_h, x_vecs, &[-1.0, 1.0], &s1, &s2)?;
                d.w.push(block);
            }
        }

        d.k0 = split[0].zero.clone();
        d.v_km = split[2].zero.clone();
        d.v_mk = split[3].zero.clone();

        // Direct-sum bookkeeping: every basis vector is accounted for.
        let total = d.k0.len()
            + d.v_km.len()
            + d.v_mk.len()
            + 1
            + 2 * d.sigma.iter().map(|b| b.partner.len()).sum::<usize>()
            + 2 * d.w.iter().map(|b| b.partner.len()).sum::<usize>();
        if total != dim {
            return Err(Error::Structural(format!(
                "block dimensions sum to {total} ≠ dim 𝔤 = {dim}"
            )));
        }

        Ok(d)
    }

    /// `⟨x, y⟩ = −Killing(x, y)` on coefficient vectors.
    pub fn ip(&self, x: &DVector<f64>, y: &DVector<f64>) -> f64 {
        (x.transpose() * &self.gram * y)[(0, 0)]
    }

    /// `[x, y]` on coefficient vectors via the structure constants.
    pub fn bra(&self, x: &DVector<f64>, y: &DVector<f64>) -> DVector<f64> {
        let mut out = DVector::zeros(self.dim);
        for u in 0..self.dim {
            let xu = x[u];
            if xu == 0.0 {
                continue;
            }
            for v in 0..self.dim {
                let yv = y[v];
                if yv == 0.0 {
                    continue;
                }
                for &(w, c) in &self.bracket[u * self.dim + v] {
                    out[w] += xu * yv * c;
                }
            }
        }
        out
    }

    pub fn h(&self) -> &DVector<f64> {
        &self.h
    }

    /// Recovered `⟨α, α⟩ = a²/⟨Ĥ,Ĥ⟩`.
    pub fn alpha_norm_sq(&self) -> f64 {
        self.alpha_h * self.alpha_h / self.hh
    }

    /// Recovered multiplicities `(m₁, m₂, n₁, n₂)`.
    pub fn multiplicities(&self) -> (u32, u32, u32, u32) {
        let find = |blocks: &[RootBlock], ratio: u32| -> u32 {
            blocks
                .iter()
                .find(|b| b.ratio == ratio)
                .map(|b| b.partner.len() as u32)
                .unwrap_or(0)
        };
        (
            find(&self.sigma, 1),
            find(&self.sigma, 2),
            find(&self.w, 1),
            find(&self.w, 2),
        )
    }

    /// The rank-one triad type with the recovered multiplicities.
    pub fn recovered_triad(&self) -> Result<Triad1> {
        let (m1, m2, n1, n2) = self.multiplicities();
        Triad1::reducing(m1, m2, n1, n2)
    }

    /// Gram–Schmidt split of one sign block into the kernel and the
    /// eigenspaces of `(ad Ĥ)²`.
    fn eigen_split(&self, indices: &[usize]) -> Result<BlockSplit> {
        let k = indices.len();
        if k == 0 {
            return Ok(BlockSplit { zero: Vec::new(), nonzero: Vec::new() });
        }
        // Orthonormal basis of the block w.r.t. the Gram inner product.
        let mut basis: Vec<DVector<f64>> = Vec::with_capacity(k);
        for &u in indices {
            let mut v = DVector::zeros(self.dim);
            v[u] = 1.0;
            for b in &basis {
                let c = self.ip(&v, b);
                v -= b * c;
            }
            let norm = self.ip(&v, &v).sqrt();
            if norm < 1e-12 {
                return Err(Error::Structural("degenerate block basis".into()));
            }
            basis.push(v / norm);
        }

        // Operator matrix of (ad Ĥ)² in this orthonormal basis.
        let images: Vec<DVector<f64>> =
            basis.iter().map(|v| self.bra(&self.h, &self.bra(&self.h, v))).collect();
        let mut op = DMatrix::<f64>::zeros(k, k);
        for j in 0..k {
            for i in 0..k {
                op[(i, j)] = self.ip(&basis[i], &images[j]);
            }
        }
        let asym = (&op - op.transpose()).amax();
        if asym > 1e-9 {
            return Err(Error::Structural(format!(
                "(ad Ĥ)² is not symmetric on a block (deviation {asym:.2e})"
            )));
        }
        op = (&op + op.transpose()) * 0.5;

        let eig = op.symmetric_eigen();
        let mut zero = Vec::new();
        let mut groups: Vec<(f64, Vec<DVector<f64>>)> = Vec::new();
        for (col, &mu) in eig.eigenvalues.iter().enumerate() {
            let normalized = -mu / self.hh;
            let mut vec = DVector::zeros(self.dim);
            for i in 0..k {
                vec += &basis[i] * eig.eigenvectors[(i, col)];
            }
            if normalized.abs() < CLUSTER_TOL {
                zero.push(vec);
            } else if normalized < 0.0 {
                return Err(Error::Structural(format!(
                    "(ad Ĥ)² has a positive eigenvalue {mu:.3e}"
                )));
            } else if let Some((_, vecs)) =
                groups.iter_mut().find(|(c, _)| (c - normalized).abs() < 10.0 * CLUSTER_TOL)
            {
                vecs.push(vec);
            } else {
                groups.push((normalized, vec![vec]));
            }
        }
        Ok(BlockSplit { zero, nonzero: groups })
    }

    /// Builds the `(partner, tangent)` pair basis from one eigenspace and
    /// verifies the bracket relations of the adapted bases.
    fn build_pair_block(
        &mut self,
        ratio: u32,
        lam_h: f64,
        partners: Vec<DVector<f64>>,
        tangent_signs: &[f64; 2],
        s1: &[f64],
        s2: &[f64],
    ) -> Result<RootBlock> {
        let mut tangent: Vec<DVector<f64>> = Vec::with_capacity(partners.len());
        let mut violation: f64 = 0.0;
        for s in &partners {
            let mut t = self.bra(&self.h, s) / lam_h;
            // tangent vectors must carry the mirrored involution signs
            for u in 0..self.dim {
                let dev1 = (s1[u] - tangent_signs[0]).abs();
                let dev2 = (s2[u] - tangent_signs[1]).abs();
                if (dev1 > 0.5 || dev2 > 0.5) && t[u].abs() > ONB_TOL {
                    return Err(Error::Structural(
                        "pair partner leaves its involution block".into(),
                    ));
                }
            }
            // [Ĥ, T] = −⟨λ,Ĥ⟩·S
            let back = self.bra(&self.h, &t) / lam_h;
            let mut dev = 0.0f64;
            for u in 0..self.dim {
                dev = dev.max((back[u] + s[u]).abs());
            }
            violation = violation.max(dev);
            // re-orthonormalize against the previous tangents
            for prev in &tangent {
                let c = self.ip(&t, prev);
                violation = violation.max(c.abs());
                t -= prev * c;
            }
            let norm = self.ip(&t, &t).sqrt();
            violation = violation.max((norm - 1.0).abs());
            tangent.push(t / norm);
        }
        // [S_i, T_i] = λ = (⟨λ,Ĥ⟩/⟨Ĥ,Ĥ⟩)·Ĥ
        for (s, t) in partners.iter().zip(&tangent) {
            let lam_vec = self.bra(s, t);
            let expected = &self.h * (lam_h / self.hh);
            let dev = (&lam_vec - &expected).amax();
            violation = violation.max(dev);
        }
        if violation > ONB_TOL {
            return Err(Error::Structural(format!(
                "adapted pair basis violates the bracket relations by {violation:.2e}"
            )));
        }
        self.max_onb_violation = self.max_onb_violation.max(violation);
        Ok(RootBlock { ratio, lam_h, partner: partners, tangent })
    }

    /// Largest deviation of `Ad(exp Ĥ)` from the rotation formulas
    /// `cos⟨λ,Ĥ⟩·S + sin⟨λ,Ĥ⟩·T` over all adapted pairs, with the matrix
    /// exponential of `ad Ĥ` computed on the full space.
    pub fn rotation_deviation(&self) -> f64 {
        let mut ad_h = DMatrix::<f64>::zeros(self.dim, self.dim);
        for v in 0..self.dim {
            let mut e = DVector::zeros(self.dim);
            e[v] = 1.0;
            let col = self.bra(&self.h, &e);
            for u in 0..self.dim {
                ad_h[(u, v)] = col[u];
            }
        }
        let exp = matrix_exp(&ad_h);
        let mut max_dev: f64 = 0.0;
        for block in self.sigma.iter().chain(&self.w) {
            let (cos, sin) = (block.lam_h.cos(), block.lam_h.sin());
            for (s, t) in block.partner.iter().zip(&block.tangent) {
                let rotated = &exp * s;
                let expected = s * cos + t * sin;
                max_dev = max_dev.max((rotated - expected).amax());
            }
        }
        max_dev
    }
}

struct BlockSplit {
    zero: Vec<DVector<f64>>,
    nonzero: Vec<(f64, Vec<DVector<f64>>)>,
}

/// Scaling-and-squaring matrix exponential (Taylor core), accurate to
/// machine precision for the small skew matrices used here.
fn matrix_exp(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let norm = a.amax() * n as f64;
    let squarings = norm.log2().ceil().max(0.0) as u32 + 1;
    let scaled = a / 2f64.powi(squarings as i32);
    let mut term = DMatrix::<f64>::identity(n, n);
    let mut sum = DMatrix::<f64>::identity(n, n);
    for k in 1..=24 {
        term = (&term * &scaled) / k as f64;
        sum += &term;
    }
    let mut result = sum;
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}
