//! Trivial-lattice arithmetic, Shioda-Tate rank bounds, the height pairing
//! for explicit sections, and torsion bounds via specialization plus
//! finite-field point counting.
//!
//! Heights follow `h(P) = 2 chi + 2 (P.O) - sum contr_v(P)`. Local
//! contributions are pinned exactly where the non-identity component carries
//! a single candidate value; for `I_n` (n >= 2) and `I_n^*` the component
//! index is not computed and the result is a certified interval over the
//! candidate set. A positive lower bound certifies infinite order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kodaira::{configuration, Configuration, FiberType, PlaceLocation, RootLattice};
use crate::poly::{gcd_monic, mod_inverse, reverse_pad, squarefree_decompose, Poly, Rat};
use crate::weierstrass::WeierstrassPair;

/// The lattice spanned by the zero section, a fiber, and the non-identity
/// fiber components. `rank = 2 + sum rank(Lambda_p)`; the hyperbolic-plane
/// part has determinant -1, so `det_abs` is the product of the root-lattice
/// determinants. `chi` enters only the Gram data of the rank-2 part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialLattice {
    pub rank: u32,
    pub det_abs: u64,
    pub chi: u32,
    pub summands: BTreeMap<RootLattice, u32>,
}

/// Assembles the trivial lattice of a configuration; the Euler number must
/// equal `12 * chi`.
pub fn trivial_lattice(config: &Configuration, chi: u32) -> Result<TrivialLattice> {
    let euler = config.euler_number();
    if euler != 12 * chi {
        return Err(Error::EulerMismatch { euler, expected: 12 * chi });
    }
    let mut summands: BTreeMap<RootLattice, u32> = BTreeMap::new();
    for e in &config.entries {
        if let Some(lat) = e.fiber.root_lattice() {
            *summands.entry(lat).or_insert(0) += e.multiplicity;
        }
    }
    let mut rank = 2u32;
    let mut det_abs = 1u64;
    for (lat, mult) in &summands {
        rank += lat.rank() * mult;
        det_abs *= (lat.det() as u64).pow(*mult);
    }
    Ok(TrivialLattice { rank, det_abs, chi, summands })
}

/// chi(O_X) recovered from the configuration (euler = 12 chi). For
/// U-members this must agree with the frame k; a mismatch is an error.
fn chi_of(pair: &WeierstrassPair, config: &Configuration) -> Result<u32> {
    let euler = config.euler_number();
    if euler % 12 != 0 {
        return Err(Error::EulerNotMultipleOf12 { euler });
    }
    let chi = euler / 12;
    if pair.classify_membership().is_u() && chi != pair.frame().k {
        return Err(Error::ChiMismatch { chi, k: pair.frame().k });
    }
    Ok(chi)
}

/// Shioda-Tate rank bound `10 chi - 2 - sum rank(Lambda_p)`.
///
/// Requires a nontrivial S-member; bookkeeping that would go negative is an
/// error rather than a clamp.
pub fn rank_bound(pair: &WeierstrassPair) -> Result<u32> {
    if pair.detect_trivial().is_some() {
        return Err(Error::ShiodaTateInapplicable);
    }
    let config = configuration(pair)?;
    let chi = chi_of(pair, &config)?;
    let lattice = trivial_lattice(&config, chi)?;
    let budget = 10 * chi;
    let used = lattice.rank; // 2 + root ranks
    if used > budget {
        return Err(Error::RankBookkeeping { chi, lattice_rank: used - 2 });
    }
    Ok(budget - used)
}

/// A rational section `(x, y)` of the Weierstrass model, stored as reduced
/// fractions with monic denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub x_num: Poly,
    pub x_den: Poly,
    pub y_num: Poly,
    pub y_den: Poly,
}

impl Section {
    pub fn new(x_num: Poly, x_den: Poly, y_num: Poly, y_den: Poly) -> Result<Section> {
        if x_den.is_zero() || y_den.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (xn, xd) = reduce_fraction(x_num, x_den);
        let (yn, yd) = reduce_fraction(y_num, y_den);
        Ok(Section { x_num: xn, x_den: xd, y_num: yn, y_den: yd })
    }

    pub fn from_polys(x: Poly, y: Poly) -> Section {
        Section { x_num: x, x_den: Poly::one(), y_num: y, y_den: Poly::one() }
    }

    /// The section with the same x and negated y.
    pub fn negate(&self) -> Section {
        Section {
            x_num: self.x_num.clone(),
            x_den: self.x_den.clone(),
            y_num: -&self.y_num,
            y_den: self.y_den.clone(),
        }
    }

    /// Checks `y^2 = x^3 + A x + B` identically in Q(t).
    pub fn on_curve(&self, pair: &WeierstrassPair) -> bool {
        let xd2 = &self.x_den * &self.x_den;
        let xd3 = &xd2 * &self.x_den;
        let lhs = &(&self.y_num * &self.y_num) * &xd3;
        let rhs_core = &(&self.x_num.pow(3) + &(pair.a() * &(&self.x_num * &xd2)))
            + &(pair.b() * &xd3);
        let rhs = &(&self.y_den * &self.y_den) * &rhs_core;
        lhs == rhs
    }
}

fn reduce_fraction(num: Poly, den: Poly) -> (Poly, Poly) {
    if num.is_zero() {
        return (Poly::zero(), Poly::one());
    }
    let g = gcd_monic(&num, &den);
    let (num, den) = if g.is_constant() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
    let lc = den.lc();
    (num.scale(&lc.recip()), den.monic())
}

/// Per-place height contribution: `points_nonidentity` geometric points meet
/// a non-identity component, each contributing a value in
/// `[contr_lower, contr_upper]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContributionRecord {
    pub location: PlaceLocation,
    pub fiber: FiberType,
    pub points_total: u32,
    pub points_nonidentity: u32,
    pub lower: Rat,
    pub upper: Rat,
}

/// Height of a section: exact when every local contribution is pinned,
/// otherwise a certified interval. `lower > 0` proves infinite order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightResult {
    pub lower: Rat,
    pub upper: Rat,
    pub exact: bool,
    pub po_intersection: u32,
    pub chi: u32,
    pub contributions: Vec<ContributionRecord>,
}

/// Candidate contribution range for a point on a non-identity component.
fn contribution_range(fiber: FiberType) -> (Rat, Rat) {
    let q = |n: i64, d: i64| Rat::new(n.into(), d.into());
    match fiber {
        FiberType::I(0) | FiberType::I(1) | FiberType::II | FiberType::IIStar => {
            (Rat::zero(), Rat::zero())
        }
        FiberType::III => (q(1, 2), q(1, 2)),
        FiberType::IV => (q(2, 3), q(2, 3)),
        FiberType::IStar(0) => (Rat::one(), Rat::one()),
        FiberType::IVStar => (q(4, 3), q(4, 3)),
        FiberType::IIIStar => (q(3, 2), q(3, 2)),
        FiberType::I(n) => {
            // candidates i(n - i)/n for i = 1..n-1
            let n = n as i64;
            let mut lo = q(n - 1, n);
            let mut hi = Rat::zero();
            for i in 1..n {
                let c = q(i * (n - i), n);
                if c < lo {
                    lo = c.clone();
                }
                if c > hi {
                    hi = c;
                }
            }
            (lo, hi)
        }
        FiberType::IStar(n) => (Rat::one(), Rat::one() + q(n as i64, 4)),
    }
}

/// Shioda height of a section.
pub fn height(pair: &WeierstrassPair, section: &Section) -> Result<HeightResult> {
    pair.invariants()?;
    if pair.detect_trivial().is_some() {
        return Err(Error::ShiodaTateInapplicable);
    }
    if !section.on_curve(pair) {
        return Err(Error::NotOnCurve);
    }
    let config = configuration(pair)?;
    let chi = chi_of(pair, &config)?;
    let k = pair.frame().k as i64;

    // (P.O) over finite places: every pole of x has even order, and the
    // total pole degree is deg(x_den)
    let mut po2 = 0i64; // twice the intersection number
    if !section.x_num.is_zero() {
        for (_, mult) in squarefree_decompose(&section.x_den)? {
            if mult % 2 != 0 {
                return Err(Error::InconsistentSection);
            }
        }
        po2 += section.x_den.degree().unwrap_or(0) as i64;
        // pole at infinity: v_s(s^{2k} x(1/s)) = 2k - deg x_num + deg x_den
        let e = 2 * k - section.x_num.degree().unwrap_or(0) as i64
            + section.x_den.degree().unwrap_or(0) as i64;
        if e < 0 {
            if e % 2 != 0 {
                return Err(Error::InconsistentSection);
            }
            po2 += -e;
        }
    }
    let po = (po2 / 2) as u32;

    let mut contributions = Vec::new();
    for place in crate::kodaira::refine_places(pair)? {
        let fiber = place.fiber()?;
        if fiber.is_smooth() {
            continue;
        }
        let (lo1, hi1) = contribution_range(fiber);
        let points_total = place.residue_degree();
        let nonid = if lo1.is_zero() && hi1.is_zero() {
            0
        } else {
            match &place.location {
                PlaceLocation::Finite(pi) => nonidentity_points_finite(pair, section, pi)?,
                PlaceLocation::Infinity => nonidentity_points_infinity(pair, section)?,
            }
        };
        let scale = Rat::from_integer(BigInt::from(nonid));
        contributions.push(ContributionRecord {
            location: place.location,
            fiber,
            points_total,
            points_nonidentity: nonid,
            lower: &lo1 * &scale,
            upper: &hi1 * &scale,
        });
    }

    let base = Rat::from_integer(BigInt::from(2 * chi as i64 + 2 * po as i64));
    let sum_lo: Rat = contributions.iter().map(|c| c.lower.clone()).sum();
    let sum_hi: Rat = contributions.iter().map(|c| c.upper.clone()).sum();
    let mut lower = &base - &sum_hi;
    let upper = &base - &sum_lo;
    if lower.is_negative() {
        // the canonical height is nonnegative; clamp the certified bound
        lower = Rat::zero();
    }
    let exact = lower == upper;
    Ok(HeightResult { lower, upper, exact, po_intersection: po, chi, contributions })
}

/// Number of geometric points of the cluster `pi` where the section reduces
/// to the singular point of the Weierstrass cubic (hence meets a
/// non-identity component).
fn nonidentity_points_finite(
    pair: &WeierstrassPair,
    section: &Section,
    pi: &Poly,
) -> Result<u32> {
    // poles of x meet the zero section, which passes through the identity
    // component; split them off
    let pole_part = gcd_monic(pi, &section.x_den);
    let live = if pole_part.is_constant() {
        pi.clone()
    } else {
        pi.exact_div(&pole_part)
    };
    if live.is_constant() {
        return Ok(0);
    }
    if !gcd_monic(&live, &section.y_den).is_constant() {
        // a pole of y without a pole of x cannot happen on the curve
        return Err(Error::InconsistentSection);
    }
    let x_bar = reduce_mod(&section.x_num, &section.x_den, &live)?;
    let y_bar = reduce_mod(&section.y_num, &section.y_den, &live)?;
    // singular locus of the reduced cubic: y = 0 and 3x^2 + A = 0
    let locus_y = gcd_monic(&live, &y_bar);
    if locus_y.is_constant() {
        return Ok(0);
    }
    let a_bar = pair.a().divrem(&live).1;
    let slope = &(&x_bar * &x_bar).scale(&Rat::from_integer(3.into())) + &a_bar;
    let slope = slope.divrem(&live).1;
    let locus = gcd_monic(&locus_y, &slope);
    Ok(locus.degree().unwrap_or(0) as u32)
}

fn reduce_mod(num: &Poly, den: &Poly, modulus: &Poly) -> Result<Poly> {
    if num.is_zero() {
        return Ok(Poly::zero());
    }
    let den_red = den.divrem(modulus).1;
    let inv = mod_inverse(&den_red, modulus).ok_or(Error::InconsistentSection)?;
    Ok((&num.divrem(modulus).1 * &inv).divrem(modulus).1)
}

/// Same test at the infinity place, in the `s = 1/t` chart.
fn nonidentity_points_infinity(pair: &WeierstrassPair, section: &Section) -> Result<u32> {
    let k = pair.frame().k as i64;
    let (a_inf, _) = pair.infinity_model();
    let x0 = match chart_value_at_zero(&section.x_num, &section.x_den, 2 * k)? {
        Some(v) => v,
        None => return Ok(0), // pole: the section meets the zero section
    };
    let y0 = match chart_value_at_zero(&section.y_num, &section.y_den, 3 * k)? {
        Some(v) => v,
        None => return Ok(0),
    };
    if !y0.is_zero() {
        return Ok(0);
    }
    let slope = Rat::from_integer(3.into()) * &x0 * &x0 + a_inf.coeff(0);
    Ok(if slope.is_zero() { 1 } else { 0 })
}

/// Value of `s^{w} f(1/s)` at s = 0 for a reduced fraction f = num/den;
/// `None` when the chart function has a pole there.
fn chart_value_at_zero(num: &Poly, den: &Poly, w: i64) -> Result<Option<Rat>> {
    if num.is_zero() {
        return Ok(Some(Rat::zero()));
    }
    let dn = num.degree().unwrap() as i64;
    let dd = den.degree().unwrap_or(0) as i64;
    let e = w - dn + dd;
    let rev_n = reverse_pad(num, dn as usize).expect("exact window");
    let rev_d = reverse_pad(den, dd as usize).expect("exact window");
    // rev_d(0) = lc(den) != 0
    if e > 0 {
        return Ok(Some(Rat::zero()));
    }
    if e < 0 {
        return Ok(None);
    }
    Ok(Some(rev_n.coeff(0) / rev_d.coeff(0)))
}

/// Evaluates the pair at `t0`; errors when the discriminant vanishes there.
pub fn specialize(pair: &WeierstrassPair, t0: &Rat) -> Result<(Rat, Rat)> {
    if pair.d_poly().eval(t0).is_zero() {
        return Err(Error::BadSpecialization);
    }
    Ok((pair.a().eval(t0), pair.b().eval(t0)))
}

pub const PRIME_CAP: u64 = 10_000;

/// Bound on the torsion order of `E(Q(t))`: gcd over usable odd primes p of
/// `#E(F_p)` for the specialization at `t0`. Torsion injects under
/// specialization and good reduction, so the group order divides the result.
pub fn torsion_bound(pair: &WeierstrassPair, t0: &Rat, primes: &[u64]) -> Result<u64> {
    let (a, b) = specialize(pair, t0)?;
    let mut bound: Option<u64> = None;
    for &p in primes {
        if p > PRIME_CAP {
            return Err(Error::PrimeTooLarge { p });
        }
        if p < 3 || p % 2 == 0 || !is_prime_u64(p) {
            return Err(Error::NotAnOddPrime { p });
        }
        let (ar, br) = match (rat_mod_p(&a, p), rat_mod_p(&b, p)) {
            (Some(ar), Some(br)) => (ar, br),
            _ => continue, // denominator divisible by p: unusable
        };
        // good reduction: 4a^3 + 27b^2 != 0 mod p
        let disc = (4 * pow_mod(ar, 3, p) + 27 * mul_mod(br, br, p)) % p;
        if disc == 0 {
            continue;
        }
        let count = count_points_fp(ar, br, p);
        bound = Some(match bound {
            None => count,
            Some(g) => g.gcd(&count),
        });
    }
    bound.ok_or(Error::NoUsablePrime)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn rat_mod_p(r: &Rat, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = r.numer().mod_floor(&pb);
    let num = num.to_u64_digits().1.first().copied().unwrap_or(0);
    let den = den.to_u64_digits().1.first().copied().unwrap_or(0);
    // Fermat inverse; p is prime and den != 0 mod p
    Some(mul_mod(num % p, pow_mod(den, p - 2, p), p))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// `#E(F_p)` for `y^2 = x^3 + ax + b` by exhaustive counting:
/// `p + 1 + sum_x chi(x^3 + ax + b)` with chi the quadratic character.
pub fn count_points_fp(a: u64, b: u64, p: u64) -> u64 {
    let mut is_square = vec![false; p as usize];
    let mut y = 0u64;
    while y <= p / 2 {
        is_square[mul_mod(y, y, p) as usize] = true;
        y += 1;
    }
    let mut sum: i64 = 0;
    for x in 0..p {
        let v = (pow_mod(x, 3, p) + mul_mod(a, x, p) + b) % p;
        if v == 0 {
            continue; // chi(0) = 0
        }
        sum += if is_square[v as usize] { 1 } else { -1 };
    }
    // infinity plus the chi-sum baseline
    ((p + 1) as i64 + sum) as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kodaira::configuration;
    use crate::poly::{parse_poly, parse_rat};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn pair(a: &str, b: &str, m: u32, n: u32) -> WeierstrassPair {
        WeierstrassPair::new(p(a), p(b), m, n).unwrap()
    }

    #[test]
    fn trivial_lattice_examples() {
        let tl = trivial_lattice(&configuration(&pair("t^4", "1", 4, 6)).unwrap(), 1).unwrap();
        assert_eq!((tl.rank, tl.det_abs), (2, 1));

        let tl = trivial_lattice(&configuration(&pair("t", "1", 1, 1)).unwrap(), 1).unwrap();
        assert_eq!((tl.rank, tl.det_abs), (9, 2));
        assert_eq!(tl.summands.get(&RootLattice::E7), Some(&1));

        let tl =
            trivial_lattice(&configuration(&pair("0", "-7*t^6 + 2*t^3 + 1", 4, 6)).unwrap(), 1)
                .unwrap();
        assert_eq!((tl.rank, tl.det_abs), (2, 1));

        // Euler mismatch is rejected
        assert!(matches!(
            trivial_lattice(&configuration(&pair("t", "1", 1, 1)).unwrap(), 2),
            Err(Error::EulerMismatch { .. })
        ));
    }

    #[test]
    fn rank_bound_examples() {
        assert_eq!(rank_bound(&pair("t^4", "1", 4, 6)).unwrap(), 8);
        assert_eq!(rank_bound(&pair("t", "1", 1, 1)).unwrap(), 1);
        assert_eq!(rank_bound(&pair("t", "0", 1, 1)).unwrap(), 0);
        assert!(matches!(
            rank_bound(&pair("3", "5", 1, 1)),
            Err(Error::ShiodaTateInapplicable)
        ));
    }

    #[test]
    fn rank_bound_plus_lattice_rank_is_10k() {
        for (a, b, m, n) in [
            ("t^4", "1", 4, 6),
            ("t", "1", 1, 1),
            ("t", "0", 1, 1),
            ("t^2 - 1", "t^3 + 2*t", 2, 3),
            ("1", "t", 1, 1),
        ] {
            let w = pair(a, b, m, n);
            let config = configuration(&w).unwrap();
            let chi = config.euler_number() / 12;
            let tl = trivial_lattice(&config, chi).unwrap();
            let rb = rank_bound(&w).unwrap();
            assert_eq!(tl.rank + rb, 10 * chi, "bookkeeping identity for ({a}, {b})");
        }
    }

    #[test]
    fn height_of_example_family_point_is_two() {
        let w = pair("0", "-7*t^6 + 2*t^3 + 1", 4, 6);
        let s = Section::from_polys(p("2*t^2"), p("t^3 + 1"));
        let h = height(&w, &s).unwrap();
        assert!(h.exact);
        assert_eq!(h.lower, Rat::from_integer(2.into()));
        assert_eq!(h.po_intersection, 0);
    }

    #[test]
    fn two_torsion_point_has_height_zero() {
        let w = pair("t", "0", 1, 1);
        let s = Section::from_polys(Poly::zero(), Poly::zero());
        let h = height(&w, &s).unwrap();
        assert!(h.exact);
        assert!(h.lower.is_zero() && h.upper.is_zero());
        // contributions are 1/2 at the III place and 3/2 at the III* place
        let vals: Vec<String> =
            h.contributions.iter().map(|c| crate::poly::rat_to_string(&c.lower)).collect();
        assert_eq!(vals, vec!["1/2".to_string(), "3/2".to_string()]);
    }

    #[test]
    fn height_is_invariant_under_negation() {
        let w = pair("0", "-7*t^6 + 2*t^3 + 1", 4, 6);
        let s = Section::from_polys(p("2*t^2"), p("t^3 + 1"));
        let h1 = height(&w, &s).unwrap();
        let h2 = height(&w, &s.negate()).unwrap();
        assert_eq!(h1.lower, h2.lower);
        assert_eq!(h1.upper, h2.upper);
    }

    #[test]
    fn off_curve_sections_are_rejected() {
        let w = pair("t", "1", 1, 1);
        let s = Section::from_polys(p("1"), p("1"));
        assert!(matches!(height(&w, &s), Err(Error::NotOnCurve)));
    }

    #[test]
    fn two_torsion_on_twisted_constant_curve() {
        // (x, y) = (t, 0) is 2-torsion on y^2 = x^3 - t^2 x; both I_0*
        // fibers contribute 1 and the height is exactly zero
        let w = WeierstrassPair::new(p("-1*t^2"), Poly::zero(), 2, 3).unwrap();
        let s = Section::from_polys(p("t"), Poly::zero());
        let h = height(&w, &s).unwrap();
        assert!(h.exact);
        assert!(h.lower.is_zero() && h.upper.is_zero());
        assert_eq!(h.contributions.len(), 2);
    }

    #[test]
    fn specialize_examples() {
        let w = pair("t", "1", 1, 1);
        let one = Rat::one();
        assert_eq!(specialize(&w, &one).unwrap(), (Rat::one(), Rat::one()));
        let half = parse_rat("1/2").unwrap();
        assert_eq!(specialize(&w, &half).unwrap(), (half.clone(), Rat::one()));
        let w = pair("-3", "2 + t^2", 1, 2);
        assert!(matches!(
            specialize(&w, &Rat::zero()),
            Err(Error::BadSpecialization)
        ));
    }

    #[test]
    fn point_counts_small_curves() {
        // y^2 = x^3 + x over F_3 and F_5: 4 points each (incl. infinity)
        assert_eq!(count_points_fp(1, 0, 3), 4);
        assert_eq!(count_points_fp(1, 0, 5), 4);
        // y^2 = x^3 - 4: 6 points over F_5, 13 over F_7
        assert_eq!(count_points_fp(0, 1, 5), 6); // -4 = 1 mod 5
        assert_eq!(count_points_fp(0, 3, 7), 13); // -4 = 3 mod 7
    }

    #[test]
    fn torsion_bound_examples() {
        let w = pair("t", "0", 1, 1);
        assert_eq!(torsion_bound(&w, &Rat::one(), &[3, 5]).unwrap(), 4);

        let w = pair("0", "-7*t^6 + 2*t^3 + 1", 4, 6);
        assert_eq!(torsion_bound(&w, &Rat::one(), &[5, 7, 11, 13]).unwrap(), 1);

        // single prime: the bound is that curve's point count
        let w = pair("t", "0", 1, 1);
        assert_eq!(torsion_bound(&w, &Rat::one(), &[5]).unwrap(), 4);

        assert!(matches!(
            torsion_bound(&w, &Rat::one(), &[9]),
            Err(Error::NotAnOddPrime { p: 9 })
        ));
        assert!(matches!(
            torsion_bound(&w, &Rat::one(), &[10_007]),
            Err(Error::PrimeTooLarge { .. })
        ));
    }

    #[test]
    fn torsion_bound_is_monotone_under_more_primes() {
        let w = pair("t", "0", 1, 1);
        let b1 = torsion_bound(&w, &Rat::one(), &[3]).unwrap();
        let b2 = torsion_bound(&w, &Rat::one(), &[3, 5]).unwrap();
        let b3 = torsion_bound(&w, &Rat::one(), &[3, 5, 7, 11]).unwrap();
        assert!(b2 <= b1 && b3 <= b2);
        assert_eq!(b1 % b2, 0);
        assert_eq!(b2 % b3, 0);
    }
}
