//! Symmetric triads, multiplicity axioms, and the rank-one triad types.
//!
//! A symmetric triad `(Σ̃, Σ, W)` is the combinatorial datum of a commutative
//! Hermann action: `Σ̃` is an irreducible root system, `Σ` records where
//! `𝔨_λ ≠ 0`, and `W` records where `V⊥_α(𝔨₁∩𝔪₂) ≠ 0`.  The isotropy cases
//! (`θ₁ = θ₂`) carry `W = ∅` and are not symmetric triads in the strict
//! sense; they are modeled here as two extra rank-one kinds so the solver
//! treats them uniformly.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::roots::{reflect, AmbientSpace, ConditionCheck, RootSystem, RootVector, ValidationReport};
use crate::{Error, Rational, Result};

/// The triple `(Σ̃, Σ, W)` over a common ambient space; `Σ̃` is kept as a
/// full [`RootSystem`] while `Σ` and `W` are plain deduplicated sets.
#[derive(Clone, Debug)]
pub struct SymmetricTriadData {
    sigma_tilde: RootSystem,
    sigma: Vec<RootVector>,
    w: Vec<RootVector>,
}

impl SymmetricTriadData {
    pub fn new(sigma_tilde: RootSystem, sigma: Vec<RootVector>, w: Vec<RootVector>) -> Result<Self> {
        let dim = sigma_tilde.space().dim();
        let dedup = |mut v: Vec<RootVector>| -> Result<Vec<RootVector>> {
            for r in &v {
                if r.dim() != dim {
                    return Err(Error::InvalidArgument("dimension mismatch in triad sets".into()));
                }
                if r.is_zero() {
                    return Err(Error::InvalidArgument("triad sets must not contain 0".into()));
                }
            }
            v.sort();
            v.dedup();
            Ok(v)
        };
        Ok(SymmetricTriadData { sigma_tilde, sigma: dedup(sigma)?, w: dedup(w)? })
    }

    pub fn sigma_tilde(&self) -> &RootSystem {
        &self.sigma_tilde
    }

    pub fn sigma(&self) -> &[RootVector] {
        &self.sigma
    }

    pub fn w(&self) -> &[RootVector] {
        &self.w
    }

    fn space(&self) -> &AmbientSpace {
        self.sigma_tilde.space()
    }

    fn in_sigma(&self, v: &RootVector) -> bool {
        self.sigma.binary_search(v).is_ok()
    }

    fn in_w(&self, v: &RootVector) -> bool {
        self.w.binary_search(v).is_ok()
    }

    /// Checks the six symmetric-triad conditions, one report entry each.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let space = self.space();

        // (1) Σ̃ is an irreducible root system.
        let rs_report = self.sigma_tilde.validate();
        checks.push(if rs_report.passed() && self.sigma_tilde.is_irreducible() {
            ConditionCheck::pass("sigma-tilde-irreducible-root-system")
        } else if !rs_report.passed() {
            let first = rs_report.first_failure().unwrap();
            ConditionCheck::fail(
                "sigma-tilde-irreducible-root-system",
                format!("{}: {}", first.name, first.witness.clone().unwrap_or_default()),
            )
        } else {
            ConditionCheck::fail("sigma-tilde-irreducible-root-system", "Σ̃ is reducible".into())
        });

        // (2) Σ is a root system of the same space.
        checks.push(match RootSystem::new(space.clone(), self.sigma.clone()) {
            Ok(rs) => {
                let rep = rs.validate();
                if rep.passed() {
                    ConditionCheck::pass("sigma-root-system")
                } else {
                    let first = rep.first_failure().unwrap();
                    ConditionCheck::fail(
                        "sigma-root-system",
                        format!("{}: {}", first.name, first.witness.clone().unwrap_or_default()),
                    )
                }
            }
            Err(e) => ConditionCheck::fail("sigma-root-system", e.to_string()),
        });

        // (3) (−1)W = W and Σ̃ = Σ ∪ W.
        let mut c3 = ConditionCheck::pass("w-symmetric-and-union");
        for a in &self.w {
            if !self.in_w(&a.negated()) {
                c3 = ConditionCheck::fail("w-symmetric-and-union", format!("−{a:?} ∉ W"));
            }
        }
        if c3.passed {
            let mut union: Vec<RootVector> = self.sigma.iter().chain(&self.w).cloned().collect();
            union.sort();
            union.dedup();
            let mut tilde: Vec<RootVector> = self.sigma_tilde.roots().to_vec();
            tilde.sort();
            if union != tilde {
                c3 = ConditionCheck::fail("w-symmetric-and-union", "Σ̃ ≠ Σ ∪ W".into());
            }
        }
        checks.push(c3);

        // (4) Σ ∩ W nonempty and equal to the short-norm slice of Σ̃.
        let intersection: Vec<&RootVector> =
            self.sigma.iter().filter(|v| self.in_w(v)).collect();
        checks.push(if intersection.is_empty() {
            ConditionCheck::fail("intersection-norm-slice", "Σ ∩ W = ∅".into())
        } else {
            let l = intersection.iter().map(|v| space.norm_sq(v)).max().unwrap();
            let slice: Vec<&RootVector> =
                self.sigma_tilde.roots().iter().filter(|v| space.norm_sq(v) <= l).collect();
            let mut inter_sorted: Vec<&RootVector> = intersection.clone();
            inter_sorted.sort();
            let mut slice_sorted = slice;
            slice_sorted.sort();
            if inter_sorted == slice_sorted {
                ConditionCheck::pass("intersection-norm-slice")
            } else {
                ConditionCheck::fail(
                    "intersection-norm-slice",
                    "Σ ∩ W differs from {α ∈ Σ̃ : ‖α‖ ≤ l}".into(),
                )
            }
        });

        // (5) and (6): odd-integrality coupling between Σ and W.
        checks.push(self.odd_condition(
            "odd-coupling-sigma-minus-w",
            self.sigma.iter().filter(|v| !self.in_w(v)),
            |s, img| s.in_w(img) && !s.in_sigma(img),
        ));
        checks.push(self.odd_condition(
            "odd-coupling-w-minus-sigma",
            self.w.iter().filter(|v| !self.in_sigma(v)),
            |s, img| s.in_sigma(img) && !s.in_w(img),
        ));

        ValidationReport { checks }
    }

    fn odd_condition<'a>(
        &self,
        name: &str,
        lambdas: impl Iterator<Item = &'a RootVector>,
        target: impl Fn(&Self, &RootVector) -> bool,
    ) -> ConditionCheck {
        let space = self.space();
        let lambdas: Vec<&RootVector> = lambdas.collect();
        for alpha in &self.w {
            for lambda in &lambdas {
                let c = Rational::new(2, 1) * space.inner(alpha, lambda) / space.norm_sq(alpha);
                if !c.is_integer() {
                    return ConditionCheck::fail(
                        name,
                        format!("2⟨{alpha:?},{lambda:?}⟩/⟨{alpha:?},{alpha:?}⟩ = {c} ∉ ℤ"),
                    );
                }
                let odd = c.numer().abs() % 2 == 1;
                let image = reflect(space, alpha, lambda).expect("w roots nonzero");
                if odd != target(self, &image) {
                    return ConditionCheck::fail(
                        name,
                        format!(
                            "α = {alpha:?}, λ = {lambda:?}: parity {} but s_α(λ) = {image:?}",
                            if odd { "odd" } else { "even" }
                        ),
                    );
                }
            }
        }
        ConditionCheck::pass(name)
    }
}

/// Multiplicity maps `m, n : Σ̃ → ℕ` attached to a symmetric triad.
#[derive(Clone, Debug, Default)]
pub struct MultiplicityMap {
    entries: BTreeMap<RootVector, (u32, u32)>,
}

impl MultiplicityMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, root: RootVector, m: u32, n: u32) {
        self.entries.insert(root, (m, n));
    }

    pub fn m(&self, root: &RootVector) -> Option<u32> {
        self.entries.get(root).map(|&(m, _)| m)
    }

    pub fn n(&self, root: &RootVector) -> Option<u32> {
        self.entries.get(root).map(|&(_, n)| n)
    }
}

/// Checks the four multiplicity conditions against a triad whose own
/// validation is assumed to have passed.
pub fn validate_multiplicities(
    triad: &SymmetricTriadData,
    mm: &MultiplicityMap,
) -> ValidationReport {
    let space = triad.space();
    let mut checks = Vec::new();

    // (0) both maps defined on all of Σ̃.
    let missing: Vec<&RootVector> = triad
        .sigma_tilde
        .roots()
        .iter()
        .filter(|r| mm.m(r).is_none())
        .collect();
    checks.push(if missing.is_empty() {
        ConditionCheck::pass("domain-covers-triad")
    } else {
        ConditionCheck::fail("domain-covers-triad", format!("no entry for {:?}", missing[0]))
    });
    if !checks[0].passed {
        return ValidationReport { checks };
    }

    // (1) evenness symmetry and support.
    let mut c1 = ConditionCheck::pass("symmetry-and-support");
    for r in triad.sigma_tilde.roots() {
        let neg = r.negated();
        if mm.m(r) != mm.m(&neg) || mm.n(r) != mm.n(&neg) {
            c1 = ConditionCheck::fail("symmetry-and-support", format!("m/n differ at ±{r:?}"));
            break;
        }
        if (mm.m(r).unwrap() > 0) != triad.in_sigma(r) {
            c1 = ConditionCheck::fail(
                "symmetry-and-support",
                format!("m({r:?}) > 0 must hold exactly when {r:?} ∈ Σ"),
            );
            break;
        }
        if (mm.n(r).unwrap() > 0) != triad.in_w(r) {
            c1 = ConditionCheck::fail(
                "symmetry-and-support",
                format!("n({r:?}) > 0 must hold exactly when {r:?} ∈ W"),
            );
            break;
        }
    }
    checks.push(c1);

    // (2) invariance under the Weyl group of Σ (checked on its generators).
    let mut c2 = ConditionCheck::pass("weyl-invariance-sigma");
    'c2: for mu in &triad.sigma {
        for lambda in &triad.sigma {
            let image = reflect(space, mu, lambda).expect("nonzero");
            if mm.m(lambda) != mm.m(&image) {
                c2 = ConditionCheck::fail(
                    "weyl-invariance-sigma",
                    format!("m({lambda:?}) ≠ m(s_{mu:?}({lambda:?}))"),
                );
                break 'c2;
            }
        }
        for alpha in &triad.w {
            let image = reflect(space, mu, alpha).expect("nonzero");
            if mm.n(alpha) != mm.n(&image) {
                c2 = ConditionCheck::fail(
                    "weyl-invariance-sigma",
                    format!("n({alpha:?}) ≠ n(s_{mu:?}({alpha:?}))"),
                );
                break 'c2;
            }
        }
    }
    checks.push(c2);

    // (3) m + n invariant under the Weyl group of Σ̃ (generators).
    let mut c3 = ConditionCheck::pass("weyl-invariance-total");
    'c3: for mu in triad.sigma_tilde.roots() {
        for lambda in triad.sigma_tilde.roots() {
            let image = reflect(space, mu, lambda).expect("nonzero");
            let total = |r: &RootVector| mm.m(r).map(|m| m + mm.n(r).unwrap_or(0));
            if total(lambda) != total(&image) {
                c3 = ConditionCheck::fail(
                    "weyl-invariance-total",
                    format!("m+n not invariant at λ = {lambda:?}, σ = s_{mu:?}"),
                );
                break 'c3;
            }
        }
    }
    checks.push(c3);

    // (4) parity coupling on Σ ∩ W.
    let mut c4 = ConditionCheck::pass("parity-coupling");
    'c4: for lambda in triad.sigma.iter().filter(|v| triad.in_w(v)) {
        for alpha in &triad.w {
            let c = Rational::new(2, 1) * space.inner(alpha, lambda) / space.norm_sq(alpha);
            if !c.is_integer() {
                c4 = ConditionCheck::fail("parity-coupling", format!("nonintegral pairing {c}"));
                break 'c4;
            }
            let image = reflect(space, alpha, lambda).expect("nonzero");
            let odd = c.numer().abs() % 2 == 1;
            let expected = if odd { mm.n(&image) } else { mm.m(&image) };
            if mm.m(lambda) != expected {
                c4 = ConditionCheck::fail(
                    "parity-coupling",
                    format!(
                        "λ = {lambda:?}, α = {alpha:?} ({} pairing): m(λ) = {:?} but {}(s_α(λ)) = {:?}",
                        if odd { "odd" } else { "even" },
                        mm.m(lambda),
                        if odd { "n" } else { "m" },
                        expected
                    ),
                );
                break 'c4;
            }
        }
    }
    checks.push(c4);

    ValidationReport { checks }
}

/// The six rank-one triad kinds.  The first four are the symmetric-triad
/// types; the two `Iso*` kinds model isotropy actions (`W = ∅`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriadKind {
    #[serde(rename = "III-B1")]
    IiiB1,
    #[serde(rename = "I-BC1")]
    IBc1,
    #[serde(rename = "II-BC1")]
    IiBc1,
    #[serde(rename = "III-BC1")]
    IiiBc1,
    #[serde(rename = "ISO-A1")]
    IsoA1,
    #[serde(rename = "ISO-BC1")]
    IsoBc1,
}

impl TriadKind {
    pub fn label(&self) -> &'static str {
        match self {
            TriadKind::IiiB1 => "III-B1",
            TriadKind::IBc1 => "I-BC1",
            TriadKind::IiBc1 => "II-BC1",
            TriadKind::IiiBc1 => "III-BC1",
            TriadKind::IsoA1 => "ISO-A1",
            TriadKind::IsoBc1 => "ISO-BC1",
        }
    }

    /// `(α ∈ Σ⁺, 2α ∈ Σ⁺, α ∈ W⁺, 2α ∈ W⁺)`
    pub fn pattern(&self) -> (bool, bool, bool, bool) {
        match self {
            TriadKind::IiiB1 => (true, false, true, false),
            TriadKind::IBc1 => (true, true, true, false),
            TriadKind::IiBc1 => (true, false, true, true),
            TriadKind::IiiBc1 => (true, true, true, true),
            TriadKind::IsoA1 => (true, false, false, false),
            TriadKind::IsoBc1 => (true, true, false, false),
        }
    }

    /// Ratio `α̃ : α` — the highest contributing root is `α` or `2α`.
    pub fn alpha_tilde_ratio(&self) -> u32 {
        match self {
            TriadKind::IiiB1 | TriadKind::IBc1 | TriadKind::IsoA1 => 1,
            TriadKind::IiBc1 | TriadKind::IiiBc1 | TriadKind::IsoBc1 => 2,
        }
    }

    pub fn is_isotropy(&self) -> bool {
        matches!(self, TriadKind::IsoA1 | TriadKind::IsoBc1)
    }
}

impl fmt::Display for TriadKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A rank-one triad type with multiplicities
/// `(m₁, m₂, n₁, n₂) = (m(α), m(2α), n(α), n(2α))`.
///
/// Entries attached to roots absent from the kind's pattern are forced to
/// zero at construction, and `II-BC1`/`III-BC1` enforce `m(α) = n(α)` (the
/// parity-coupling consequence of `2α ∈ W⁺`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Triad1 {
    kind: TriadKind,
    m1: u32,
    m2: u32,
    n1: u32,
    n2: u32,
}

/// Largest accepted multiplicity.  Eigenspace dimensions of compact simple
/// algebras are far below this; the bound keeps the squarefree reduction of
/// solution discriminants fast and same-radicand surd comparisons free of
/// i128 overflow.
pub const MAX_MULTIPLICITY: u32 = 100_000;

impl Triad1 {
    /// Strict constructor: multiplicities must match the kind's pattern
    /// exactly (positive on present roots, zero elsewhere).
    pub fn new(kind: TriadKind, m1: u32, m2: u32, n1: u32, n2: u32) -> Result<Self> {
        if [m1, m2, n1, n2].iter().any(|&m| m > MAX_MULTIPLICITY) {
            return Err(Error::ResourceLimit(format!(
                "multiplicities are capped at {MAX_MULTIPLICITY}"
            )));
        }
        let (sa, s2, wa, w2) = kind.pattern();
        let want = |present: bool, value: u32, name: &str| -> Result<()> {
            if present && value == 0 {
                Err(Error::InvalidTriad(format!("{kind}: {name} must be positive")))
            } else if !present && value != 0 {
                Err(Error::InvalidTriad(format!("{kind}: {name} must be zero")))
            } else {
                Ok(())
            }
        };
        want(sa, m1, "m1")?;
        want(s2, m2, "m2")?;
        want(wa, n1, "n1")?;
        want(w2, n2, "n2")?;
        if w2 && m1 != n1 {
            return Err(Error::InvalidTriad(format!(
                "{kind}: 2α ∈ W⁺ forces m(α) = n(α), got m1 = {m1}, n1 = {n1}"
            )));
        }
        Ok(Triad1 { kind, m1, m2, n1, n2 })
    }

    /// Derives the kind from the positivity pattern of the multiplicities.
    /// This is the entry point for families that degenerate at boundary
    /// parameters, e.g. `I-BC1` with `n(α) = 0` reduces to `ISO-BC1`.
    pub fn reducing(m1: u32, m2: u32, n1: u32, n2: u32) -> Result<Self> {
        let kind = match (m1 > 0, m2 > 0, n1 > 0, n2 > 0) {
            (true, false, true, false) => TriadKind::IiiB1,
            (true, true, true, false) => TriadKind::IBc1,
            (true, false, true, true) => TriadKind::IiBc1,
            (true, true, true, true) => TriadKind::IiiBc1,
            (true, false, false, false) => TriadKind::IsoA1,
            (true, true, false, false) => TriadKind::IsoBc1,
            pattern => {
                return Err(Error::InvalidTriad(format!(
                    "multiplicity pattern {pattern:?} matches no rank-one triad kind"
                )))
            }
        };
        Self::new(kind, m1, m2, n1, n2)
    }

    /// Reduction constrained by a declared kind: entries the kind forces to
    /// zero must be zero, while required-positive entries may vanish and
    /// trigger a kind reduction.
    pub fn from_kind_reducing(kind: TriadKind, m1: u32, m2: u32, n1: u32, n2: u32) -> Result<Self> {
        let (sa, s2, wa, w2) = kind.pattern();
        for (present, value, name) in
            [(sa, m1, "m1"), (s2, m2, "m2"), (wa, n1, "n1"), (w2, n2, "n2")]
        {
            if !present && value != 0 {
                return Err(Error::InvalidTriad(format!("{kind}: {name} must be zero")));
            }
        }
        Self::reducing(m1, m2, n1, n2)
    }

    pub fn kind(&self) -> TriadKind {
        self.kind
    }
    pub fn m1(&self) -> u32 {
        self.m1
    }
    pub fn m2(&self) -> u32 {
        self.m2
    }
    pub fn n1(&self) -> u32 {
        self.n1
    }
    pub fn n2(&self) -> u32 {
        self.n2
    }

    pub fn mults(&self) -> (u32, u32, u32, u32) {
        (self.m1, self.m2, self.n1, self.n2)
    }

    /// `m(α) + 4m(2α) + n(α) + 4n(2α)`, the weight in `⟨α,α⟩`.
    pub fn total_weighted_multiplicity(&self) -> u32 {
        self.m1 + 4 * self.m2 + self.n1 + 4 * self.n2
    }

    /// Upper wall of the fundamental cell as a fraction of π, in the
    /// canonical parameter `s = ⟨α, H⟩`.  The lower wall is always 0.
    ///
    /// The walls come from `⟨λ,H⟩ ∈ πℤ` for `λ ∈ Σ⁺` and
    /// `⟨β,H⟩ ∈ π/2 + πℤ` for `β ∈ W⁺`.
    pub fn cell_upper_over_pi(&self) -> Rational {
        match self.kind {
            TriadKind::IiiB1 | TriadKind::IBc1 | TriadKind::IsoBc1 => Rational::new(1, 2),
            TriadKind::IiBc1 | TriadKind::IiiBc1 => Rational::new(1, 4),
            TriadKind::IsoA1 => Rational::new(1, 1),
        }
    }

    /// Fundamental cell `(0, upper)` in radians for `s = ⟨α, H⟩`.
    pub fn fundamental_cell(&self) -> (f64, f64) {
        let upper = self.cell_upper_over_pi();
        (0.0, PI * *upper.numer() as f64 / *upper.denom() as f64)
    }

    /// Exact regularity test for `s = (s_over_pi)·π`.
    pub fn is_regular_rational(&self, s_over_pi: Rational) -> bool {
        let (sa, s2, wa, w2) = self.kind.pattern();
        let two = Rational::new(2, 1);
        let half = Rational::new(1, 2);
        let in_z = |x: Rational| x.is_integer();
        if sa && in_z(s_over_pi) {
            return false;
        }
        if s2 && in_z(two * s_over_pi) {
            return false;
        }
        if wa && in_z(s_over_pi - half) {
            return false;
        }
        if w2 && in_z(two * s_over_pi - half) {
            return false;
        }
        true
    }

    /// Floating regularity test; points within `1e-9·π` of a wall count as
    /// singular.
    pub fn is_regular_point(&self, s: f64) -> bool {
        self.singular_wall(s).is_none()
    }

    /// Names the violated wall at a singular angle, if any.
    pub fn singular_wall(&self, s: f64) -> Option<String> {
        const EPS: f64 = 1e-9;
        let (sa, s2, wa, w2) = self.kind.pattern();
        let x = s / PI;
        let near_int = |v: f64| (v - v.round()).abs() < EPS;
        if sa && near_int(x) {
            return Some("⟨α,H⟩ ∈ πℤ".into());
        }
        if s2 && near_int(2.0 * x) {
            return Some("⟨2α,H⟩ ∈ πℤ".into());
        }
        if wa && near_int(x - 0.5) {
            return Some("⟨α,H⟩ ∈ π/2 + πℤ".into());
        }
        if w2 && near_int(2.0 * x - 0.5) {
            return Some("⟨2α,H⟩ ∈ π/2 + πℤ".into());
        }
        None
    }

    /// Expands this rank-one type into explicit `(Σ̃, Σ, W)` data with its
    /// multiplicity map (the gram entry is the exact `⟨α,α⟩` of the type).
    /// Isotropy kinds have `W = ∅` and are rejected: they are not symmetric
    /// triads.
    pub fn to_triad_data(&self) -> Result<(SymmetricTriadData, MultiplicityMap)> {
        if self.kind.is_isotropy() {
            return Err(Error::InvalidTriad(format!(
                "{}: isotropy kinds have W = ∅ and do not form a symmetric triad",
                self.kind
            )));
        }
        let space = AmbientSpace::line(crate::solver::norm_alpha_sq(self)?)?;
        let (sa, s2, wa, w2) = self.kind.pattern();
        let pm = |k: i64| [RootVector::from_ints(&[k]), RootVector::from_ints(&[-k])];

        let mut tilde = Vec::new();
        let mut sigma = Vec::new();
        let mut w = Vec::new();
        if sa || wa {
            tilde.extend(pm(1));
        }
        if s2 || w2 {
            tilde.extend(pm(2));
        }
        if sa {
            sigma.extend(pm(1));
        }
        if s2 {
            sigma.extend(pm(2));
        }
        if wa {
            w.extend(pm(1));
        }
        if w2 {
            w.extend(pm(2));
        }

        let mut mm = MultiplicityMap::new();
        for v in pm(1) {
            mm.set(v, self.m1, self.n1);
        }
        if s2 || w2 {
            for v in pm(2) {
                mm.set(v, self.m2, self.n2);
            }
        }

        let sigma_tilde = RootSystem::new(space, tilde)?;
        Ok((SymmetricTriadData::new(sigma_tilde, sigma, w)?, mm))
    }
}

impl fmt::Display for Triad1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({},{},{},{})", self.kind, self.m1, self.m2, self.n1, self.n2)
    }
}

/// JSON document form of a triad, e.g.
/// `{"kind": "III-BC1", "m1": 8, "m2": 7, "n1": 8, "n2": 1}`.
/// Unknown fields are rejected.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriadDoc {
    pub kind: TriadKind,
    #[serde(default)]
    pub m1: u32,
    #[serde(default)]
    pub m2: u32,
    #[serde(default)]
    pub n1: u32,
    #[serde(default)]
    pub n2: u32,
}

impl TriadDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("malformed triad document: {e}")))
    }

    /// Builds the triad, reducing the kind when required-positive entries
    /// are zero.
    pub fn to_triad(&self) -> Result<Triad1> {
        Triad1::from_kind_reducing(self.kind, self.m1, self.m2, self.n1, self.n2)
    }
}

impl From<&Triad1> for TriadDoc {
    fn from(t: &Triad1) -> Self {
        TriadDoc { kind: t.kind(), m1: t.m1(), m2: t.m2(), n1: t.n1(), n2: t.n2() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line_space() -> AmbientSpace {
        AmbientSpace::line(Rational::new(1, 8)).unwrap()
    }

    fn pm(ks: &[i64]) -> Vec<RootVector> {
        ks.iter().flat_map(|&k| [RootVector::from_ints(&[k]), RootVector::from_ints(&[-k])]).collect()
    }

    #[test]
    fn iii_b1_shape_is_a_symmetric_triad() {
        let tilde = RootSystem::new(line_space(), pm(&[1])).unwrap();
        let data = SymmetricTriadData::new(tilde, pm(&[1]), pm(&[1])).unwrap();
        assert!(data.validate().passed(), "{}", data.validate());
    }

    #[test]
    fn ii_bc1_shape_is_a_symmetric_triad() {
        let tilde = RootSystem::new(line_space(), pm(&[1, 2])).unwrap();
        let data = SymmetricTriadData::new(tilde, pm(&[1]), pm(&[1, 2])).unwrap();
        assert!(data.validate().passed(), "{}", data.validate());
    }

    #[test]
    fn empty_intersection_fails_condition_4() {
        let tilde = RootSystem::new(line_space(), pm(&[1, 2])).unwrap();
        let data = SymmetricTriadData::new(tilde, pm(&[2]), pm(&[1])).unwrap();
        let report = data.validate();
        assert!(!report.passed());
        assert!(report.failure_names().contains(&"intersection-norm-slice"));
    }

    #[test]
    fn ii_bc1_multiplicities_pass_and_fail() {
        let tilde = RootSystem::new(line_space(), pm(&[1, 2])).unwrap();
        let data = SymmetricTriadData::new(tilde, pm(&[1]), pm(&[1, 2])).unwrap();

        // (2, 2, 1): the SO(6) row of the II-BC1 table.
        let mut good = MultiplicityMap::new();
        for v in pm(&[1]) {
            good.set(v, 2, 2);
        }
        for v in pm(&[2]) {
            good.set(v, 0, 1);
        }
        assert!(validate_multiplicities(&data, &good).passed());

        // m(α) = 3 ≠ n(α) = 2 must fail the parity coupling: the pairing
        // 2⟨2α,α⟩/⟨2α,2α⟩ = 1 is odd and s_2α(α) = −α.
        let mut bad = MultiplicityMap::new();
        for v in pm(&[1]) {
            bad.set(v, 3, 2);
        }
        for v in pm(&[2]) {
            bad.set(v, 0, 1);
        }
        let report = validate_multiplicities(&data, &bad);
        assert!(!report.passed());
        assert!(report.failure_names().contains(&"parity-coupling"));
    }

    #[test]
    fn zero_multiplicity_on_sigma_fails_support() {
        let tilde = RootSystem::new(line_space(), pm(&[1])).unwrap();
        let data = SymmetricTriadData::new(tilde, pm(&[1]), pm(&[1])).unwrap();
        let mut mm = MultiplicityMap::new();
        for v in pm(&[1]) {
            mm.set(v, 0, 1);
        }
        let report = validate_multiplicities(&data, &mm);
        assert!(report.failure_names().contains(&"symmetry-and-support"));
    }

    #[test]
    fn kind_invariants_are_enforced() {
        assert!(Triad1::new(TriadKind::IiiB1, 1, 0, 2, 0).is_ok());
        assert!(Triad1::new(TriadKind::IiiB1, 1, 1, 2, 0).is_err());
        assert!(Triad1::new(TriadKind::IiBc1, 2, 0, 3, 1).is_err()); // m1 ≠ n1
        assert!(Triad1::new(TriadKind::IiiBc1, 8, 7, 8, 1).is_ok());
        assert!(Triad1::new(TriadKind::IsoBc1, 8, 7, 0, 0).is_ok());
        assert!(Triad1::new(TriadKind::IsoA1, 0, 0, 0, 0).is_err());
    }

    #[test]
    fn reduction_from_boundary_parameters() {
        // I-BC1 with n1 = 0 reduces to ISO-BC1.
        let t = Triad1::from_kind_reducing(TriadKind::IBc1, 2, 1, 0, 0).unwrap();
        assert_eq!(t.kind(), TriadKind::IsoBc1);
        // entries that must be zero stay rejected even when reducing
        assert!(Triad1::from_kind_reducing(TriadKind::IiiB1, 1, 3, 1, 0).is_err());
        // a W⁺ = {2α}-only pattern matches no kind
        assert!(Triad1::reducing(1, 0, 0, 1).is_err());
    }

    #[test]
    fn regularity_matches_cell_translates() {
        // The singular set in s/π is exactly the multiples of the cell
        // width, so regular ⟺ s/π ∉ width·ℤ.
        for (kind, mults) in [
            (TriadKind::IiiB1, (1, 0, 2, 0)),
            (TriadKind::IBc1, (4, 1, 1, 0)),
            (TriadKind::IiBc1, (2, 0, 2, 1)),
            (TriadKind::IiiBc1, (8, 7, 8, 1)),
            (TriadKind::IsoA1, (3, 0, 0, 0)),
            (TriadKind::IsoBc1, (8, 7, 0, 0)),
        ] {
            let t = Triad1::new(kind, mults.0, mults.1, mults.2, mults.3).unwrap();
            let width = t.cell_upper_over_pi();
            let denom = 24i64;
            for k in -2 * denom..=4 * denom {
                let x = Rational::new(k, denom);
                let expected = !(x / width).is_integer();
                assert_eq!(
                    t.is_regular_rational(x),
                    expected,
                    "{kind} at s/π = {x}"
                );
            }
        }
    }

    #[test]
    fn float_regularity_examples() {
        let iii_bc1 = Triad1::new(TriadKind::IiiBc1, 8, 7, 8, 1).unwrap();
        assert!(iii_bc1.is_regular_point(PI / 8.0));
        let iii_b1 = Triad1::new(TriadKind::IiiB1, 1, 0, 1, 0).unwrap();
        assert!(!iii_b1.is_regular_point(PI / 2.0));
        let iso = Triad1::new(TriadKind::IsoA1, 4, 0, 0, 0).unwrap();
        assert!(iso.is_regular_point(PI / 2.0));
        assert!(!iso.is_regular_point(PI));
    }

    #[test]
    fn triad_doc_round_trip_and_unknown_fields() {
        let doc = TriadDoc::from_json(r#"{"kind": "III-BC1", "m1": 8, "m2": 7, "n1": 8, "n2": 1}"#)
            .unwrap();
        let t = doc.to_triad().unwrap();
        assert_eq!(t.mults(), (8, 7, 8, 1));
        assert!(TriadDoc::from_json(r#"{"kind": "III-B1", "m1": 1, "n1": 1, "extra": 3}"#).is_err());
    }

    #[test]
    fn four_table_shapes_expand_and_validate() {
        for t in [
            Triad1::new(TriadKind::IiiB1, 2, 0, 2, 0).unwrap(),
            Triad1::new(TriadKind::IBc1, 4, 1, 1, 0).unwrap(),
            Triad1::new(TriadKind::IiBc1, 2, 0, 2, 1).unwrap(),
            Triad1::new(TriadKind::IiiBc1, 4, 3, 4, 4).unwrap(),
        ] {
            let (data, mm) = t.to_triad_data().unwrap();
            let tr = data.validate();
            assert!(tr.passed(), "{t}: {tr}");
            let mr = validate_multiplicities(&data, &mm);
            assert!(mr.passed(), "{t}: {mr}");
        }
    }
}
