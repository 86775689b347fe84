//! Exact arithmetic on quadratic surds `(p + q√d)/r`.
//!
//! Solution values of the harmonic and biharmonic conditions are roots of
//! integer quadratics, so they live in real quadratic fields.  Representing
//! them exactly lets the classifier subtract the harmonic root from the
//! biharmonic solution set without any floating-point equality fudge.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Rational, Result};

/// A real number `(p + q√d)/r` with integers `p`, `q`, squarefree `d ≥ 0`
/// and `r > 0`.
///
/// Values are kept in a canonical form: `d` squarefree (with `d = 0` and
/// `q = 0` for rationals), `gcd(p, q, r) = 1`, `r > 0`.  Canonical form is
/// unique, so the derived equality and hash agree with numeric equality,
/// and [`Ord`] compares by real value.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSurd", into = "RawSurd")]
pub struct QuadraticSurd {
    p: i64,
    q: i64,
    d: i64,
    r: i64,
}

/// Wire form of a surd; normalized on deserialization.
#[derive(Serialize, Deserialize)]
struct RawSurd {
    p: i64,
    q: i64,
    d: i64,
    r: i64,
}

impl From<QuadraticSurd> for RawSurd {
    fn from(s: QuadraticSurd) -> Self {
        RawSurd { p: s.p, q: s.q, d: s.d, r: s.r }
    }
}

impl TryFrom<RawSurd> for QuadraticSurd {
    type Error = Error;
    fn try_from(raw: RawSurd) -> Result<Self> {
        QuadraticSurd::new(raw.p, raw.q, raw.d, raw.r)
    }
}

/// Splits `d = k²·d'` with `d'` squarefree, by trial division.
fn extract_square(d: i128) -> (i128, i128) {
    debug_assert!(d > 0);
    let mut rest = d;
    let mut k = 1i128;
    let mut f = 2i128;
    while f * f <= rest {
        while rest % (f * f) == 0 {
            rest /= f * f;
            k *= f;
        }
        f += 1;
    }
    (k, rest)
}

fn gcd3(a: i128, b: i128, c: i128) -> i128 {
    a.abs().gcd(&b.abs()).gcd(&c.abs())
}

/// Sign of `a + b√d` with `d ≥ 0`, exact.
fn sign_a_plus_b_sqrt(a: i128, b: i128, d: i128) -> i32 {
    if b == 0 || d == 0 {
        return sign(a);
    }
    if a == 0 {
        return sign(b);
    }
    if a > 0 && b > 0 {
        return 1;
    }
    if a < 0 && b < 0 {
        return -1;
    }
    // Opposite signs: compare a² with b²d on the side of the positive term.
    let aa = a.checked_mul(a).expect("overflow comparing surds");
    let bbd = b
        .checked_mul(b)
        .and_then(|bb| bb.checked_mul(d))
        .expect("overflow comparing surds");
    if a > 0 {
        sign(aa - bbd)
    } else {
        sign(bbd - aa)
    }
}

fn sign(x: i128) -> i32 {
    match x.cmp(&0) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Sign of `a + b√d1 + c√d2`, exact (`d1, d2 ≥ 0`).
fn sign_two_radicals(a: i128, b: i128, d1: i128, c: i128, d2: i128) -> i32 {
    // Collapse degenerate radicals first.
    if b == 0 || d1 == 0 {
        return sign_a_plus_b_sqrt(a, c, d2);
    }
    if c == 0 || d2 == 0 {
        return sign_a_plus_b_sqrt(a, b, d1);
    }
    // t := b√d1 + c√d2.
    let t_sign = if b > 0 && c > 0 {
        1
    } else if b < 0 && c < 0 {
        -1
    } else {
        let lhs = b.checked_mul(b).and_then(|x| x.checked_mul(d1));
        let rhs = c.checked_mul(c).and_then(|x| x.checked_mul(d2));
        let (lhs, rhs) = (lhs.expect("overflow"), rhs.expect("overflow"));
        match lhs.cmp(&rhs) {
            Ordering::Equal => 0,
            Ordering::Greater => sign(b),
            Ordering::Less => sign(c),
        }
    };
    if t_sign == 0 {
        return sign(a);
    }
    if a == 0 || sign(a) == t_sign {
        return if a == 0 { t_sign } else { sign(a) };
    }
    // a and t have opposite signs; compare a² with
    // t² = b²d1 + c²d2 + 2bc√(d1·d2).
    let a2 = a.checked_mul(a).expect("overflow comparing surds");
    let b2d1 = b * b * d1;
    let c2d2 = c * c * d2;
    let lin = a2 - b2d1 - c2d2;
    let rad = 2 * b * c;
    let dd = d1.checked_mul(d2).expect("overflow comparing surds");
    let diff_sign = sign_a_plus_b_sqrt(lin, -rad, dd); // sign of a² − t²
    match diff_sign {
        0 => 0,
        s if s > 0 => sign(a),
        _ => t_sign,
    }
}

impl QuadraticSurd {
    /// Builds `(p + q√d)/r` in canonical form.
    ///
    /// Errors on `r = 0` or `d < 0`; overflow while normalizing reports
    /// [`Error::Overflow`].
    pub fn new(p: i64, q: i64, d: i64, r: i64) -> Result<Self> {
        Self::normalize(p as i128, q as i128, d as i128, r as i128)
    }

    fn normalize(mut p: i128, mut q: i128, mut d: i128, mut r: i128) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("surd denominator r = 0".into()));
        }
        if d < 0 {
            return Err(Error::InvalidArgument(format!(
                "negative radicand d = {d}; only real surds are supported"
            )));
        }
        if q == 0 {
            d = 0;
        }
        if d == 0 {
            q = 0;
        } else {
            let (k, rest) = extract_square(d);
            q *= k;
            d = rest;
            if d == 1 {
                p += q;
                q = 0;
                d = 0;
            }
        }
        if r < 0 {
            p = -p;
            q = -q;
            r = -r;
        }
        let g = gcd3(p, q, r);
        if g > 1 {
            p /= g;
            q /= g;
            r /= g;
        }
        let to64 = |x: i128| i64::try_from(x).map_err(|_| Error::Overflow("surd normalization"));
        Ok(QuadraticSurd { p: to64(p)?, q: to64(q)?, d: to64(d)?, r: to64(r)? })
    }

    pub fn zero() -> Self {
        QuadraticSurd { p: 0, q: 0, d: 0, r: 1 }
    }

    pub fn one() -> Self {
        QuadraticSurd { p: 1, q: 0, d: 0, r: 1 }
    }

    pub fn from_integer(n: i64) -> Self {
        QuadraticSurd { p: n, q: 0, d: 0, r: 1 }
    }

    /// Exact rational `num/den` as a surd.
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        Self::new(num, 0, 0, den)
    }

    pub fn from_rational(x: Rational) -> Self {
        QuadraticSurd::new(*x.numer(), 0, 0, *x.denom()).expect("rational always normalizes")
    }

    pub fn p(&self) -> i64 {
        self.p
    }
    pub fn q(&self) -> i64 {
        self.q
    }
    pub fn d(&self) -> i64 {
        self.d
    }
    pub fn r(&self) -> i64 {
        self.r
    }

    pub fn is_rational(&self) -> bool {
        self.q == 0
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| Rational::new(self.p, self.r))
    }

    pub fn to_f64(&self) -> f64 {
        (self.p as f64 + self.q as f64 * (self.d as f64).sqrt()) / self.r as f64
    }

    /// Exact sign: −1, 0 or +1.
    pub fn signum(&self) -> i32 {
        sign_a_plus_b_sqrt(self.p as i128, self.q as i128, self.d as i128)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn conjugate(&self) -> Self {
        QuadraticSurd { p: self.p, q: -self.q, d: self.d, r: self.r }
    }

    pub fn neg(&self) -> Self {
        QuadraticSurd { p: -self.p, q: -self.q, d: self.d, r: self.r }
    }

    /// Exact reciprocal; errors on zero.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("reciprocal of zero surd".into()));
        }
        // r / (p + q√d) = r(p − q√d) / (p² − q²d)
        let p = self.p as i128;
        let q = self.q as i128;
        let d = self.d as i128;
        let r = self.r as i128;
        let norm = p * p - q * q * d;
        debug_assert!(norm != 0, "nonzero surd with zero field norm");
        Self::normalize(r * p, -r * q, d, norm)
    }

    fn compatible_radicand(&self, other: &Self) -> Result<i64> {
        match (self.d, other.d) {
            (0, d) | (d, 0) => Ok(d),
            (a, b) if a == b => Ok(a),
            (a, b) => Err(Error::IncompatibleRadicands(a, b)),
        }
    }

    /// Exact sum; errors when the radicands differ and neither side is rational.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let d = self.compatible_radicand(other)? as i128;
        let (p1, q1, r1) = (self.p as i128, self.q as i128, self.r as i128);
        let (p2, q2, r2) = (other.p as i128, other.q as i128, other.r as i128);
        Self::normalize(p1 * r2 + p2 * r1, q1 * r2 + q2 * r1, d, r1 * r2)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&other.neg())
    }

    /// Exact product; errors when the radicands differ and neither side is rational.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        let d = self.compatible_radicand(other)? as i128;
        let (p1, q1, r1) = (self.p as i128, self.q as i128, self.r as i128);
        let (p2, q2, r2) = (other.p as i128, other.q as i128, other.r as i128);
        Self::normalize(p1 * p2 + q1 * q2 * d, p1 * q2 + q1 * p2, d, r1 * r2)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.recip()?)
    }

    /// All real solutions of `a·u² + b·u + c = 0` (`a ≠ 0`) as exact surds,
    /// in increasing order; a double root is returned once and complex roots
    /// yield an empty list.
    pub fn quadratic_roots(a: i64, b: i64, c: i64) -> Result<Vec<Self>> {
        if a == 0 {
            return Err(Error::InvalidArgument(
                "quadratic_roots requires a nonzero leading coefficient".into(),
            ));
        }
        let (a, b, c) = if a < 0 { (-a, -b, -c) } else { (a, b, c) };
        let (ai, bi, ci) = (a as i128, b as i128, c as i128);
        let disc = bi * bi - 4 * ai * ci;
        if disc < 0 {
            return Ok(Vec::new());
        }
        if disc == 0 {
            return Ok(vec![Self::normalize(-bi, 0, 0, 2 * ai)?]);
        }
        Ok(vec![
            Self::normalize(-bi, -1, disc, 2 * ai)?,
            Self::normalize(-bi, 1, disc, 2 * ai)?,
        ])
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        // sign of self − other; r1, r2 > 0 so clearing denominators is safe.
        let (p1, q1, d1, r1) = (self.p as i128, self.q as i128, self.d as i128, self.r as i128);
        let (p2, q2, d2, r2) =
            (other.p as i128, other.q as i128, other.d as i128, other.r as i128);
        let a = p1 * r2 - p2 * r1;
        match sign_two_radicals(a, q1 * r2, d1, -q2 * r1, d2) {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            if self.r == 1 {
                return write!(f, "{}", self.p);
            }
            return write!(f, "{}/{}", self.p, self.r);
        }
        let radical = if self.q == 1 {
            format!("√{}", self.d)
        } else if self.q == -1 {
            format!("-√{}", self.d)
        } else {
            format!("{}√{}", self.q, self.d)
        };
        let body = if self.p == 0 {
            radical
        } else if self.q > 0 {
            format!("{}+{}", self.p, radical)
        } else {
            format!("{}{}", self.p, radical)
        };
        if self.r == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.r)
        }
    }
}

impl fmt::Debug for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
