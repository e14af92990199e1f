//! Class-number evaluation: classical H(D), level H^M(D) for the genus-zero
//! levels, the H^M(0) convention, and the prime-level formula.
//!
//! Prime levels route through [`choi_kim`]; composite levels are summed over
//! the representative sets of [`crate::qform::representatives`]. Identity
//! sums re-query small discriminants heavily, so values are memoized behind
//! a mutex; inserts are idempotent and safe under concurrent callers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::arith::{kronecker, sl2_index, ExactRational};
use crate::qform::{automorph_order, representatives};
use crate::{is_genus_zero_level, Error, Result, PRIME_LEVELS};

fn cache() -> &'static Mutex<HashMap<(i64, i64), ExactRational>> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64), ExactRational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The classical Hurwitz class number H(D), with H(0) = -1/12 and
/// H(D) = 0 for D = 1, 2 mod 4.
pub fn hurwitz_classical(d: i64) -> Result<ExactRational> {
    hurwitz_level(1, d)
}

/// The level Hurwitz class number H^M(D).
///
/// H^M(0) = -[SL_2(Z) : Gamma_0(M)]/12; discriminants 1, 2 mod 4 give 0 so
/// that identity sums over 4N - x^2 can call this uniformly.
pub fn hurwitz_level(m: i64, d: i64) -> Result<ExactRational> {
    if !is_genus_zero_level(m) {
        return Err(Error::UnsupportedLevel(m));
    }
    if d < 0 {
        return Err(Error::NegativeDiscriminant(d));
    }
    if d == 0 {
        return Ok(ExactRational::new(-sl2_index(m), 12).expect("nonzero denominator"));
    }
    if d % 4 == 1 || d % 4 == 2 {
        return Ok(ExactRational::zero());
    }
    if let Some(value) = cache().lock().expect("cache poisoned").get(&(m, d)) {
        return Ok(value.clone());
    }
    let value = if m == 1 {
        weighted_class_count(1, d)?
    } else if PRIME_LEVELS.contains(&m) {
        choi_kim(m, d)?
    } else {
        weighted_class_count(m, d)?
    };
    cache()
        .lock()
        .expect("cache poisoned")
        .insert((m, d), value.clone());
    Ok(value)
}

/// Sum of 2 / #stabilizer over the representative set for (m, d).
fn weighted_class_count(m: i64, d: i64) -> Result<ExactRational> {
    let mut sum = ExactRational::zero();
    for form in representatives(m, d)? {
        let order = automorph_order(&form, m)?;
        sum += ExactRational::new(2, order)?;
    }
    Ok(sum)
}

/// H^p(D) = (1 + (-D|p)) (H(D) + p H(D/p^2)) for the prime levels
/// p in {2, 3, 5, 7, 13}, with H(D/p^2) = 0 when p^2 does not divide D.
pub fn choi_kim(p: i64, d: i64) -> Result<ExactRational> {
    if !PRIME_LEVELS.contains(&p) {
        return Err(Error::UnsupportedPrime(p));
    }
    if d <= 0 {
        return Err(Error::NonPositive {
            what: "discriminant",
            value: d,
        });
    }
    let factor = 1 + kronecker(-d, p);
    if factor == 0 {
        return Ok(ExactRational::zero());
    }
    let mut inner = hurwitz_classical(d)?;
    if d % (p * p) == 0 {
        inner += hurwitz_classical(d / (p * p))?.scaled_by(p);
    }
    Ok(inner.scaled_by(factor))
}
