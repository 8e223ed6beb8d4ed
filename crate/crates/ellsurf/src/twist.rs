//! Quadratic twists within the family coordinates.
//!
//! Twisting by d sends `(A, B)` to `(d^2 A, d^3 B)` in the same frame; the
//! discriminant scales by `d^6`, so U-membership, the j-invariant and the
//! configuration of singular fibers are all preserved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{Poly, Rat};
use crate::weierstrass::WeierstrassPair;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// A class in Q*/(Q*)^2, canonicalized to its squarefree integer
/// representative (1 is the trivial class).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistClass {
    pub d: BigInt,
}

/// Result of twist detection; `ambiguous` is set when B = 0 leaves the sign
/// of d undetermined (the positive solution is returned).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistDetection {
    pub class: TwistClass,
    pub ambiguous: bool,
}

/// `(d^2 A, d^3 B)` with the frame unchanged.
pub fn twist(pair: &WeierstrassPair, d: &Rat) -> Result<WeierstrassPair> {
    if d.is_zero() {
        return Err(Error::ZeroTwist);
    }
    let d2 = d * d;
    let d3 = &d2 * d;
    WeierstrassPair::new(
        pair.a().scale(&d2),
        pair.b().scale(&d3),
        pair.m(),
        pair.n(),
    )
}

/// Squarefree representative of the class of d in Q*/(Q*)^2.
///
/// Trial division up to 10^6; a leftover cofactor is accepted as prime when
/// it is below the square of the limit and dropped when it is a perfect
/// square, otherwise canonicalization fails honestly.
pub fn squarefree_class(d: &Rat) -> Result<BigInt> {
    if d.is_zero() {
        return Err(Error::ZeroTwist);
    }
    // d = p/q ~ p q mod squares
    let mut rem = (d.numer() * d.denom()).abs();
    let negative = d.is_negative();
    let mut out = BigInt::one();
    let mut i = BigInt::from(2u32);
    let limit = BigInt::from(TRIAL_DIVISION_LIMIT);
    while &i * &i <= rem && i <= limit {
        if rem.is_multiple_of(&i) {
            let mut e = 0u32;
            while rem.is_multiple_of(&i) {
                rem /= &i;
                e += 1;
            }
            if e % 2 == 1 {
                out *= &i;
            }
        }
        i += 1;
    }
    if !rem.is_one() {
        if &i * &i > rem {
            out *= &rem; // leftover is prime
        } else {
            let s = rem.sqrt();
            if &s * &s == rem {
                // perfect square: contributes nothing mod squares
            } else {
                return Err(Error::FactorLimitExceeded);
            }
        }
    }
    if negative {
        out = -out;
    }
    Ok(out)
}

/// Constant c with `g = c * f`, when one exists (f nonzero).
fn constant_ratio(f: &Poly, g: &Poly) -> Option<Rat> {
    debug_assert!(!f.is_zero());
    if g.is_zero() {
        return Some(Rat::zero());
    }
    if f.degree() != g.degree() {
        return None;
    }
    let c = g.lc() / f.lc();
    if &f.scale(&c) == g {
        Some(c)
    } else {
        None
    }
}

/// Exact n-th root of a nonnegative rational, if one exists.
fn nth_root_rat(r: &Rat, n: u32) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let num = r.numer().nth_root(n);
    let den = r.denom().nth_root(n);
    let cand = Rat::new(num, den);
    let mut acc = Rat::one();
    for _ in 0..n {
        acc = &acc * &cand;
    }
    if &acc == r {
        Some(cand)
    } else {
        None
    }
}

/// Exact cube root of a rational (cube roots are unique over Q, so signs
/// carry through).
fn cbrt_rat(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        nth_root_rat(&(-r), 3).map(|v| -v)
    } else {
        nth_root_rat(r, 3)
    }
}

/// Recovers the twist class when `(A2, B2) = (d^2 A1, d^3 B1)` for some
/// nonzero rational d; `None` when no such d exists.
///
/// With B = 0 only d^2 is visible, so d is determined up to sign; the
/// positive solution is returned with the `ambiguous` flag set. With A = 0,
/// d is the (unique) rational cube root of the B-ratio.
pub fn detect_twist(
    p1: &WeierstrassPair,
    p2: &WeierstrassPair,
) -> Result<Option<TwistDetection>> {
    if p1.a().is_zero() != p2.a().is_zero() || p1.b().is_zero() != p2.b().is_zero() {
        return Ok(None);
    }
    let d = if !p1.a().is_zero() && !p1.b().is_zero() {
        let r2 = match constant_ratio(p1.a(), p2.a()) {
            Some(r) if !r.is_zero() => r,
            _ => return Ok(None),
        };
        let r3 = match constant_ratio(p1.b(), p2.b()) {
            Some(r) if !r.is_zero() => r,
            _ => return Ok(None),
        };
        let d = &r3 / &r2;
        if &d * &d != r2 || &(&d * &d) * &d != r3 {
            return Ok(None);
        }
        d
    } else if !p1.b().is_zero() {
        // A = 0: d^3 determines d uniquely
        let r3 = match constant_ratio(p1.b(), p2.b()) {
            Some(r) if !r.is_zero() => r,
            _ => return Ok(None),
        };
        match cbrt_rat(&r3) {
            Some(d) => d,
            None => return Ok(None),
        }
    } else if !p1.a().is_zero() {
        // B = 0: only d^2 is visible
        let r2 = match constant_ratio(p1.a(), p2.a()) {
            Some(r) if !r.is_zero() => r,
            _ => return Ok(None),
        };
        let d = match nth_root_rat(&r2, 2) {
            Some(d) => d,
            None => return Ok(None),
        };
        return Ok(Some(TwistDetection {
            class: TwistClass { d: squarefree_class(&d)? },
            ambiguous: true,
        }));
    } else {
        return Ok(None); // A = B = 0 on both sides: not in S
    };
    Ok(Some(TwistDetection {
        class: TwistClass { d: squarefree_class(&d)? },
        ambiguous: false,
    }))
}

/// One row of a twist probe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwProbeEntry {
    pub d: i64,
    pub in_u: bool,
    pub isomorphic: bool,
}

/// Tests whether `p2 = (u^4 A1, u^6 B1)` for some nonzero rational u
/// (constant Weierstrass isomorphism).
pub fn isomorphic_constant_scaling(p1: &WeierstrassPair, p2: &WeierstrassPair) -> bool {
    if p1.a().is_zero() != p2.a().is_zero() || p1.b().is_zero() != p2.b().is_zero() {
        return false;
    }
    match (!p1.a().is_zero(), !p1.b().is_zero()) {
        (true, true) => {
            let r4 = match constant_ratio(p1.a(), p2.a()) {
                Some(r) if !r.is_zero() => r,
                _ => return false,
            };
            let r6 = match constant_ratio(p1.b(), p2.b()) {
                Some(r) if !r.is_zero() => r,
                _ => return false,
            };
            // v = u^2 satisfies v^2 = r4, v^3 = r6
            let v = &r6 / &r4;
            if &v * &v != r4 || &(&v * &v) * &v != r6 {
                return false;
            }
            nth_root_rat(&v, 2).is_some()
        }
        (true, false) => match constant_ratio(p1.a(), p2.a()) {
            Some(r4) if !r4.is_zero() => nth_root_rat(&r4, 4).is_some(),
            _ => false,
        },
        (false, true) => match constant_ratio(p1.b(), p2.b()) {
            Some(r6) if !r6.is_zero() => nth_root_rat(&r6, 6).is_some(),
            _ => false,
        },
        (false, false) => false,
    }
}

/// Twists a U-member by each d, rechecking U-membership and testing
/// isomorphism over Q.
pub fn tw_probe(pair: &WeierstrassPair, ds: &[i64]) -> Result<Vec<TwProbeEntry>> {
    if !pair.classify_membership().is_u() {
        return Err(Error::NotInU);
    }
    let mut out = Vec::with_capacity(ds.len());
    for &d in ds {
        if d == 0 {
            return Err(Error::ZeroTwist);
        }
        let dr = Rat::from_integer(d.into());
        let twisted = twist(pair, &dr)?;
        out.push(TwProbeEntry {
            d,
            in_u: twisted.classify_membership().is_u(),
            isomorphic: isomorphic_constant_scaling(pair, &twisted),
        });
    }
    Ok(out)
}
