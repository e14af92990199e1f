//! Integer and exact-rational primitives shared by every other module.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Greatest common divisor, always non-negative; gcd(0, 0) = 0.
pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    gcd(gcd(a, b), c)
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        0
    } else {
        (a / gcd(a, b)).abs() * b.abs()
    }
}

/// Extended Euclid: returns (g, x, y) with a*x + b*y = g = gcd(a, b).
///
/// The coefficients are the ones produced by the classical recursion;
/// callers must only rely on the defining equation.
pub fn bezout(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::BezoutBothZero);
    }
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1i64, 0i64);
    let (mut y0, mut y1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (r0, x0, y0) = (-r0, -x0, -y0);
    }
    Ok((r0, x0, y0))
}

/// Kronecker symbol (a|n), the completely multiplicative extension of the
/// Legendre symbol with (a|2) = 0, +1, -1 for a even, a = +-1, a = +-3 mod 8.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut acc = 1i64;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            acc = -acc;
        }
    }
    let mut a = a;
    while n % 2 == 0 {
        n /= 2;
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if r == 3 || r == 5 {
            acc = -acc;
        }
    }
    // Jacobi symbol for odd n > 0.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n.rem_euclid(8);
            if r == 3 || r == 5 {
                acc = -acc;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            acc = -acc;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        acc
    } else {
        0
    }
}

/// All ordered pairs (a, d) of positive integers with a*d = n, sorted by a.
pub fn divisor_pairs(n: i64) -> Result<Vec<(i64, i64)>> {
    if n <= 0 {
        return Err(Error::NonPositive {
            what: "divisor_pairs argument",
            value: n,
        });
    }
    let mut pairs = Vec::new();
    for a in divisors(n) {
        pairs.push((a, n / a));
    }
    Ok(pairs)
}

/// Positive divisors of n in increasing order.
pub fn divisors(n: i64) -> Vec<i64> {
    debug_assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Sum of the positive divisors of n.
pub fn sigma(n: i64) -> Result<i64> {
    if n <= 0 {
        return Err(Error::NonPositive {
            what: "sigma argument",
            value: n,
        });
    }
    Ok(divisors(n).into_iter().sum())
}

/// Prime factorization as (p, multiplicity) pairs, p increasing.
pub fn prime_factors(n: i64) -> Vec<(i64, u32)> {
    debug_assert!(n > 0);
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// The index [SL_2(Z) : Gamma_0(M)] = M * prod_{p | M} (1 + 1/p).
pub fn sl2_index(m: i64) -> i64 {
    debug_assert!(m > 0);
    let mut index = m;
    for (p, _) in prime_factors(m) {
        index = index / p * (p + 1);
    }
    index
}

/// Euler's totient.
pub fn euler_phi(n: i64) -> i64 {
    debug_assert!(n > 0);
    let mut phi = n;
    for (p, _) in prime_factors(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Writes m = f^2 * m0 with m0 square-free and returns (f, m0).
pub fn squarefree_decompose(m: i64) -> (i64, i64) {
    debug_assert!(m > 0);
    let mut f = 1;
    let mut m0 = 1;
    for (p, e) in prime_factors(m) {
        f *= p.pow(e / 2);
        if e % 2 == 1 {
            m0 *= p;
        }
    }
    (f, m0)
}

/// Floor of the square root of a non-negative integer.
pub fn isqrt(n: i64) -> i64 {
    debug_assert!(n >= 0);
    (n as u64).isqrt() as i64
}

pub fn isqrt_i128(n: i128) -> i128 {
    debug_assert!(n >= 0);
    (n as u128).isqrt() as i128
}

/// Returns Some(sqrt) when n is a perfect square.
pub fn exact_sqrt(n: i64) -> Option<i64> {
    if n < 0 {
        return None;
    }
    let r = isqrt(n);
    (r * r == n).then_some(r)
}

pub fn is_square(n: i64) -> bool {
    exact_sqrt(n).is_some()
}

/// An exact rational, kept reduced with a positive denominator.
///
/// Every class-number value in this crate has denominator dividing 12, but
/// the representation does not rely on that.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(numerator: i64, denominator: i64) -> Result<Self> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self(BigRational::new(
            BigInt::from(numerator),
            BigInt::from(denominator),
        )))
    }

    pub fn from_integer(n: i64) -> Self {
        Self(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The integer value, when the denominator is 1 and it fits in i64.
    pub fn to_integer(&self) -> Option<i64> {
        self.0.is_integer().then(|| self.0.numer().to_i64())?
    }

    /// Numerator and denominator as i64, for table/CSV interchange.
    pub fn to_pair(&self) -> Option<(i64, i64)> {
        Some((self.0.numer().to_i64()?, self.0.denom().to_i64()?))
    }

    pub fn scaled_by(&self, k: i64) -> Self {
        Self(&self.0 * BigRational::from_integer(BigInt::from(k)))
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a ExactRational> for ExactRational {
    type Output = ExactRational;
    fn add(self, rhs: &'a Self) -> Self {
        Self(self.0 + &rhs.0)
    }
}

impl AddAssign for ExactRational {
    fn add_assign(&mut self, rhs: Self) {
        self.0 += rhs.0;
    }
}

impl Sub for ExactRational {
    type Output = ExactRational;
    fn sub(self, rhs: Self) -> Self {
        Self(self.0 - rhs.0)
    }
}

impl Mul for ExactRational {
    type Output = ExactRational;
    fn mul(self, rhs: Self) -> Self {
        Self(self.0 * rhs.0)
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> Self {
        Self(-self.0)
    }
}

impl Sum for ExactRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}
