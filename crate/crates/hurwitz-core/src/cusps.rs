//! Cusps of X_0(M), their Gamma_0(M)-equivalence, generalized Atkin-Lehner
//! involutions, and normalizer decision procedures.
//!
//! Cusps are stratified by the divisor n = gcd(denominator, M); the stratum
//! of n carries phi(gcd(n, M/n)) classes. Every class also has a scaled
//! representative m/M with 0 <= m < M (i-infinity is the class of 1/M).

use std::fmt;

use crate::arith::{bezout, divisors, gcd, gcd3, squarefree_decompose};
use crate::qform::IntMatrix2;
use crate::{Error, Result};

/// A point of P^1(Q): numer/denom in lowest terms, denom >= 0, with
/// infinity represented as 1/0.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cusp {
    pub numer: i64,
    pub denom: i64,
}

impl Cusp {
    pub fn infinity() -> Self {
        Cusp { numer: 1, denom: 0 }
    }

    pub fn zero() -> Self {
        Cusp { numer: 0, denom: 1 }
    }

    /// Reduces numer/denom to lowest terms with a non-negative denominator.
    pub fn new(numer: i64, denom: i64) -> Self {
        if denom == 0 {
            return Self::infinity();
        }
        let (mut numer, mut denom) = (numer, denom);
        if denom < 0 {
            numer = -numer;
            denom = -denom;
        }
        let g = gcd(numer, denom).max(1);
        Cusp {
            numer: numer / g,
            denom: denom / g,
        }
    }

    pub fn is_infinity(&self) -> bool {
        self.denom == 0
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

impl fmt::Debug for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Gamma_0(m)-equivalence of two cusps l/n and l'/n': some d coprime to m
/// must satisfy n' = d n mod m and d l' = l mod gcd(m, n).
pub fn cusp_equivalent(m: i64, s: Cusp, s_other: Cusp) -> bool {
    debug_assert!(m >= 1);
    let modulus = gcd(m, s.denom).max(1);
    (1..=m).filter(|d| gcd(*d, m) == 1).any(|d| {
        (s_other.denom - d * s.denom).rem_euclid(m) == 0
            && (d * s_other.numer - s.numer).rem_euclid(modulus) == 0
    })
}

/// One Gamma_0(level)-class of cusps with its canonical data.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CuspClass {
    pub level: i64,
    /// Denominator stratum: a positive divisor of the level.
    pub n: i64,
    /// Representative of the class in (Z/gcd(n, level/n))^*.
    pub l_residue: i64,
    /// Canonical lowest-terms numerator: smallest l >= 1 in the residue
    /// class with gcd(l, n) = 1.
    pub l: i64,
    /// Scaled representative: smallest m in [0, level) with m/level in the
    /// class; i-infinity is keyed by its equivalent 1/level.
    pub m_scaled: i64,
}

impl CuspClass {
    pub fn lowest_terms(&self) -> Cusp {
        Cusp::new(self.l, self.n)
    }

    pub fn is_infinity(&self) -> bool {
        self.n == self.level
    }

    /// gcd(level, m) for the scaled representative; pairs of cusps on a
    /// correspondence must share this.
    pub fn stratum_gcd(&self) -> i64 {
        gcd(self.level, self.m_scaled)
    }
}

impl fmt::Display for CuspClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinity() {
            write!(f, "inf")
        } else if self.n == 1 {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.l, self.n)
        }
    }
}

/// All cusp classes of X_0(m): one per stratum-and-residue, ordered with
/// i-infinity first, then 0, then by (n, l).
pub fn cusps(m: i64) -> Vec<CuspClass> {
    debug_assert!(m >= 1);
    let mut classes = Vec::new();
    for n in divisors(m) {
        let e = gcd(n, m / n);
        for residue in (1..=e).filter(|r| gcd(*r, e) == 1) {
            let l = (0..)
                .map(|k| residue + k * e)
                .find(|l| gcd(*l, n) == 1)
                .expect("coprime representative exists");
            let rep = Cusp::new(l, n);
            let m_scaled = (0..m)
                .find(|k| cusp_equivalent(m, Cusp::new(*k, m), rep))
                .expect("every cusp class contains some k/m");
            classes.push(CuspClass {
                level: m,
                n,
                l_residue: residue,
                l,
                m_scaled,
            });
        }
    }
    classes.sort_by_key(|c| {
        let family = if c.is_infinity() {
            0
        } else if c.n == 1 {
            1
        } else {
            2
        };
        (family, c.n, c.l)
    });
    classes
}

/// An integer matrix together with a positive scale D, denoting the real
/// matrix mat / sqrt(D); det(mat) = D makes the scaled matrix unimodular.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScaledMatrix {
    pub mat: IntMatrix2,
    pub scale: i64,
}

impl ScaledMatrix {
    /// The cusp hit by i-infinity: the ratio of the first column.
    pub fn image_of_infinity(&self) -> Cusp {
        Cusp::new(self.mat.p, self.mat.r)
    }
}

impl fmt::Display for ScaledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(1/sqrt({})) [{} {}; {} {}]",
            self.scale, self.mat.p, self.mat.q, self.mat.r, self.mat.s
        )
    }
}

/// The generalized Atkin-Lehner involution W_m for the cusp m/M.
///
/// Sets D = gcd(M, m^2) and solves gcd(M, m) m v - M u = D; the result is
/// (m, u; M, gcd(M,m) v) with determinant D. Any valid Bezout pair is fine;
/// for m = 0 the construction yields (0, -1; M, 0) with scale M.
pub fn gen_atkin_lehner(level: i64, m: i64) -> Result<ScaledMatrix> {
    if m < 0 || m >= level {
        return Err(Error::InvolutionIndexOutOfRange { level, m });
    }
    let gm = gcd(level, m);
    let scale = gcd(level, m * m);
    let (g, x, y) = bezout(gm * m, level)?;
    debug_assert_eq!(g, scale);
    let (v, u) = (x, -y);
    let mat = IntMatrix2::new(m, u, level, gm * v);
    debug_assert_eq!(mat.det(), scale);
    Ok(ScaledMatrix { mat, scale })
}

/// epsilon(M) = gcd(M, 24) and e(M) = gcd(M, 2): the gcds of a - d over
/// matrices (a * ; * d) in Gamma_0(M) resp. G_0(M) and M_2(Z).
pub fn epsilon_e(m: i64) -> (i64, i64) {
    (gcd(m, 24), gcd(m, 2))
}

/// Membership of W_m in the group Gamma_0^{*,h}(M) of scaled matrices
/// (1/sqrt(e)) (ep, q/h; Mr/h, es) with e | M/h^2.
///
/// Matching shapes for W = (1/sqrt(D)) (alpha, beta; M, delta) forces
/// sqrt(D/e) = h/r, which reduces membership to an integer search:
/// some r >= 1 with D r^2 | M, D r | alpha h and D r | delta h.
fn gamma_star_contains(level: i64, w: &ScaledMatrix, h: i64) -> bool {
    debug_assert_eq!(w.mat.r, level);
    let d = w.scale;
    let (alpha, delta) = (w.mat.p, w.mat.s);
    let mut r = 1;
    while d * r * r <= level {
        if level % (d * r * r) == 0 && (alpha * h) % (d * r) == 0 && (delta * h) % (d * r) == 0 {
            return true;
        }
        r += 1;
    }
    false
}

/// Does W_m normalize Gamma_0(M)? The normalizer is Gamma_0^{*,(f,24)}(M)
/// where M = f^2 M_0 with M_0 square-free.
pub fn normalizes_gamma0(level: i64, m: i64) -> Result<bool> {
    let w = gen_atkin_lehner(level, m)?;
    let (f, _) = squarefree_decompose(level);
    Ok(gamma_star_contains(level, &w, gcd(f, 24)))
}

/// Does W_m normalize G_0(M)? The normalizer is Gamma_0^{*,(f,2)}(M).
pub fn normalizes_g0(level: i64, m: i64) -> Result<bool> {
    let w = gen_atkin_lehner(level, m)?;
    let (f, _) = squarefree_decompose(level);
    Ok(gamma_star_contains(level, &w, gcd(f, 2)))
}

/// Does W_m normalize the congruence subgroup of Gamma_0(M) whose diagonal
/// entries agree mod M'? The normalizer is Gamma_0^{*,(f, M', 2M/M')}(M).
pub fn normalizes_gamma0_mprime(level: i64, m_prime: i64, m: i64) -> Result<bool> {
    if m_prime <= 0 || level % m_prime != 0 {
        return Err(Error::NonPositive {
            what: "diagonal congruence modulus",
            value: m_prime,
        });
    }
    let w = gen_atkin_lehner(level, m)?;
    let (f, _) = squarefree_decompose(level);
    Ok(gamma_star_contains(
        level,
        &w,
        gcd3(f, m_prime, 2 * level / m_prime),
    ))
}

/// The three-way classification of cusps by which groups some matrix
/// sending i-infinity to them normalizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspPartition {
    /// C''_0: cusps reachable from a normalizer of both Gamma_0 and G_0.
    pub in_both: Vec<CuspClass>,
    /// C'_0 minus C''_0: normalizer of Gamma_0 only.
    pub gamma0_only: Vec<CuspClass>,
    /// C_0 minus C'_0.
    pub outside: Vec<CuspClass>,
}

/// Partitions cusps(m) by the stratum conditions: stratum n lies in C'_0
/// iff gcd(n, M/n) | gcd(f, 24), and in C''_0 iff gcd(n, M/n) | gcd(f, 2).
pub fn classify_cusps(m: i64) -> CuspPartition {
    let (f, _) = squarefree_decompose(m);
    let mut partition = CuspPartition {
        in_both: Vec::new(),
        gamma0_only: Vec::new(),
        outside: Vec::new(),
    };
    for class in cusps(m) {
        let width = gcd(class.n, m / class.n);
        if gcd(f, 2) % width == 0 {
            partition.in_both.push(class);
        } else if gcd(f, 24) % width == 0 {
            partition.gamma0_only.push(class);
        } else {
            partition.outside.push(class);
        }
    }
    partition
}
