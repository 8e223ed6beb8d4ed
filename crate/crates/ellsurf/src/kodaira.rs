//! Local fiber classification at the places of Q(t).
//!
//! Places are Galois-stable clusters: monic squarefree factors of the
//! discriminant refined until the valuations of c4, c6 and the discriminant
//! are constant across the cluster's geometric roots, plus the point at
//! infinity. Irreducible factorization is never needed.
//!
//! Classification is the characteristic-0 specialization of Tate's algorithm:
//! the fiber type is a function of the (minimality-reduced) valuation triple
//! `(v(c4), v(c6), v(disc))`; residue characteristic 0 admits no wild cases.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::poly::{cmp_polys, gcd_monic, squarefree_decompose, Poly, Valuation};
use crate::weierstrass::{Frame, WeierstrassPair};

/// Kodaira type of a fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FiberType {
    /// I_n, n >= 0 (I_0 is the smooth fiber).
    I(u32),
    II,
    III,
    IV,
    /// I_n^*, n >= 0.
    IStar(u32),
    IVStar,
    IIIStar,
    IIStar,
}

/// A-D-E root lattice label carried by a singular fiber.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RootLattice {
    A(u32),
    D(u32),
    E6,
    E7,
    E8,
}

impl RootLattice {
    pub fn rank(self) -> u32 {
        match self {
            RootLattice::A(r) | RootLattice::D(r) => r,
            RootLattice::E6 => 6,
            RootLattice::E7 => 7,
            RootLattice::E8 => 8,
        }
    }

    /// Absolute value of the lattice determinant.
    pub fn det(self) -> u32 {
        match self {
            RootLattice::A(r) => r + 1,
            RootLattice::D(_) => 4,
            RootLattice::E6 => 3,
            RootLattice::E7 => 2,
            RootLattice::E8 => 1,
        }
    }
}

impl fmt::Display for RootLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootLattice::A(r) => write!(f, "A{r}"),
            RootLattice::D(r) => write!(f, "D{r}"),
            RootLattice::E6 => write!(f, "E6"),
            RootLattice::E7 => write!(f, "E7"),
            RootLattice::E8 => write!(f, "E8"),
        }
    }
}

impl FiberType {
    /// Root lattice spanned by the non-identity components, if any.
    pub fn root_lattice(self) -> Option<RootLattice> {
        match self {
            FiberType::I(0) | FiberType::I(1) | FiberType::II => None,
            FiberType::I(n) => Some(RootLattice::A(n - 1)),
            FiberType::III => Some(RootLattice::A(1)),
            FiberType::IV => Some(RootLattice::A(2)),
            FiberType::IStar(n) => Some(RootLattice::D(4 + n)),
            FiberType::IVStar => Some(RootLattice::E6),
            FiberType::IIIStar => Some(RootLattice::E7),
            FiberType::IIStar => Some(RootLattice::E8),
        }
    }

    pub fn lattice_rank(self) -> u32 {
        self.root_lattice().map_or(0, |l| l.rank())
    }

    /// Local Euler number.
    pub fn euler(self) -> u32 {
        match self {
            FiberType::I(n) => n,
            FiberType::II => 2,
            FiberType::III => 3,
            FiberType::IV => 4,
            FiberType::IStar(n) => 6 + n,
            FiberType::IVStar => 8,
            FiberType::IIIStar => 9,
            FiberType::IIStar => 10,
        }
    }

    /// Number of irreducible components of the fiber.
    pub fn component_count(self) -> u32 {
        match self {
            FiberType::I(0) | FiberType::I(1) | FiberType::II => 1,
            FiberType::I(n) => n,
            FiberType::III => 2,
            FiberType::IV => 3,
            FiberType::IStar(n) => 5 + n,
            FiberType::IVStar => 7,
            FiberType::IIIStar => 8,
            FiberType::IIStar => 9,
        }
    }

    pub fn is_smooth(self) -> bool {
        self == FiberType::I(0)
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberType::I(n) => write!(f, "I{n}"),
            FiberType::II => write!(f, "II"),
            FiberType::III => write!(f, "III"),
            FiberType::IV => write!(f, "IV"),
            FiberType::IStar(n) => write!(f, "I{n}*"),
            FiberType::IVStar => write!(f, "IV*"),
            FiberType::IIIStar => write!(f, "III*"),
            FiberType::IIStar => write!(f, "II*"),
        }
    }
}

/// Location of a place of Q(t): a monic squarefree cluster of conjugate
/// finite points, or the point at infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlaceLocation {
    Finite(Poly),
    Infinity,
}

impl PlaceLocation {
    pub fn residue_degree(&self) -> u32 {
        match self {
            PlaceLocation::Finite(pi) => pi.degree().unwrap_or(0) as u32,
            PlaceLocation::Infinity => 1,
        }
    }
}

impl fmt::Display for PlaceLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceLocation::Finite(pi) => write!(f, "{pi}"),
            PlaceLocation::Infinity => write!(f, "inf"),
        }
    }
}

/// Place ordering: finite places by degree then lexicographic coefficients,
/// the infinity place last.
pub fn cmp_locations(a: &PlaceLocation, b: &PlaceLocation) -> Ordering {
    match (a, b) {
        (PlaceLocation::Finite(pa), PlaceLocation::Finite(pb)) => cmp_polys(pa, pb),
        (PlaceLocation::Finite(_), PlaceLocation::Infinity) => Ordering::Less,
        (PlaceLocation::Infinity, PlaceLocation::Finite(_)) => Ordering::Greater,
        (PlaceLocation::Infinity, PlaceLocation::Infinity) => Ordering::Equal,
    }
}

/// A place together with its constant local valuation data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Place {
    pub location: PlaceLocation,
    pub v_c4: Valuation,
    pub v_c6: Valuation,
    pub v_disc: u32,
}

impl Place {
    pub fn residue_degree(&self) -> u32 {
        self.location.residue_degree()
    }

    pub fn fiber(&self) -> Result<FiberType> {
        classify_valuations(self.v_c4, self.v_c6, self.v_disc)
    }
}

/// Splits a monic squarefree `g` into pieces on which the valuation of `f`
/// is constant. Roots with `v(f) >= i+1` are exactly the roots of
/// `gcd(..gcd(g, f).., f^(i))`, so successive derivative gcds peel the
/// valuation layers.
fn valuation_split(g: &Poly, f: &Poly) -> Vec<(Poly, Valuation)> {
    if f.is_zero() {
        return vec![(g.clone(), Valuation::Infinite)];
    }
    let mut out = Vec::new();
    let mut layer = g.clone(); // roots with v >= i
    let mut deriv = f.clone();
    let mut i = 0u32;
    while !layer.is_constant() {
        let next = gcd_monic(&layer, &deriv);
        let piece = layer.exact_div(&next);
        if !piece.is_constant() {
            out.push((piece, Valuation::Finite(i)));
        }
        layer = next;
        deriv = deriv.derivative();
        i += 1;
    }
    out
}

/// Refines the discriminant locus into places with constant local data.
///
/// The finite places partition the roots of `D = 4A^3 + 27B^2`: the product
/// over places of `pi^{v_disc}` equals the monic part of D. The infinity
/// place (valuations from the infinity chart) is included only when it is
/// singular, i.e. `v_disc(inf) >= 1`.
pub fn refine_places(pair: &WeierstrassPair) -> Result<Vec<Place>> {
    let inv = pair.invariants()?;
    let mut places = Vec::new();
    for (g, mult) in squarefree_decompose(&inv.d)? {
        for (g4, v4) in valuation_split(&g, &inv.c4) {
            for (g46, v6) in valuation_split(&g4, &inv.c6) {
                places.push(Place {
                    location: PlaceLocation::Finite(g46),
                    v_c4: v4,
                    v_c6: v6,
                    v_disc: mult,
                });
            }
        }
    }

    let (a_inf, b_inf) = pair.infinity_model();
    let d_inf = {
        let a3 = a_inf.pow(3);
        let b2 = &b_inf * &b_inf;
        &a3.scale(&crate::poly::Rat::from_integer(4.into()))
            + &b2.scale(&crate::poly::Rat::from_integer(27.into()))
    };
    let v_disc_inf = match d_inf.order_at_zero() {
        Valuation::Finite(v) => v,
        // D != 0 implies D_inf != 0
        Valuation::Infinite => unreachable!("infinity chart discriminant vanished"),
    };
    if v_disc_inf >= 1 {
        places.push(Place {
            location: PlaceLocation::Infinity,
            v_c4: a_inf.order_at_zero(),
            v_c6: b_inf.order_at_zero(),
            v_disc: v_disc_inf,
        });
    }
    places.sort_by(|x, y| cmp_locations(&x.location, &y.location));
    Ok(places)
}

/// Kodaira type from a local valuation triple.
///
/// Applies minimality reduction first: while `v(c4) >= 4`, `v(c6) >= 6` and
/// `v(disc) >= 12`, subtract `(4, 6, 12)`. A triple outside the table is an
/// explicit error, never a silent default.
pub fn classify_valuations(v_c4: Valuation, v_c6: Valuation, v_disc: u32) -> Result<FiberType> {
    let mut v4 = v_c4;
    let mut v6 = v_c6;
    let mut vd = v_disc;
    while v4 >= 4 && v6 >= 6 && vd >= 12 {
        v4 = v4.minus(4);
        v6 = v6.minus(6);
        vd -= 12;
    }
    if vd == 0 {
        return Ok(FiberType::I(0));
    }
    if v4 == 0u32 {
        return Ok(FiberType::I(vd));
    }
    let ty = if v6 == 1u32 && vd == 2 {
        FiberType::II
    } else if v4 == 1u32 && v6 >= 2 && vd == 3 {
        FiberType::III
    } else if v4 >= 2 && v6 == 2u32 && vd == 4 {
        FiberType::IV
    } else if v4 >= 2 && v6 >= 3 && vd == 6 {
        FiberType::IStar(0)
    } else if v4 == 2u32 && v6 == 3u32 && vd > 6 {
        FiberType::IStar(vd - 6)
    } else if v4 >= 3 && v6 == 4u32 && vd == 8 {
        FiberType::IVStar
    } else if v4 == 3u32 && v6 >= 5 && vd == 9 {
        FiberType::IIIStar
    } else if v4 >= 4 && v6 == 5u32 && vd == 10 {
        FiberType::IIStar
    } else {
        return Err(Error::InconsistentLocalData {
            v_c4: v_c4.to_string(),
            v_c6: v_c6.to_string(),
            v_disc,
        });
    };
    Ok(ty)
}

/// One entry of the configuration: a classified place with its geometric
/// multiplicity (the residue degree).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEntry {
    pub fiber: FiberType,
    pub multiplicity: u32,
    pub location: PlaceLocation,
}

/// The configuration of singular fibers over the algebraic closure.
/// Smooth (`I_0`) entries are omitted; entries are sorted canonically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Configuration {
    pub entries: Vec<ConfigEntry>,
}

impl Configuration {
    /// Multiset over geometric points: fiber type -> total multiplicity.
    pub fn multiset(&self) -> BTreeMap<FiberType, u32> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.fiber).or_insert(0) += e.multiplicity;
        }
        out
    }

    /// Sum of local Euler numbers weighted by multiplicity.
    pub fn euler_number(&self) -> u32 {
        self.entries
            .iter()
            .map(|e| e.fiber.euler() * e.multiplicity)
            .sum()
    }

    /// Canonical one-line rendering of the multiset, e.g. "I1 x3 + III* x1".
    pub fn multiset_string(&self) -> String {
        let ms = self.multiset();
        if ms.is_empty() {
            return "empty".to_string();
        }
        ms.iter()
            .map(|(ty, mult)| format!("{ty} x{mult}"))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.multiset_string())
    }
}

/// Classifies every refined place of the pair.
pub fn configuration(pair: &WeierstrassPair) -> Result<Configuration> {
    let mut entries = Vec::new();
    for place in refine_places(pair)? {
        let fiber = place.fiber()?;
        if fiber.is_smooth() {
            continue;
        }
        entries.push(ConfigEntry {
            fiber,
            multiplicity: place.residue_degree(),
            location: place.location,
        });
    }
    Ok(Configuration { entries })
}

/// Fiber at infinity for a U-member, read off the `(alpha, beta)` table.
pub fn infinity_fiber_from_table(frame: &Frame) -> Result<FiberType> {
    let a = frame.alpha;
    let b = frame.beta;
    let ty = if a == 0 || b == 0 {
        FiberType::I(0)
    } else if b == 1 {
        FiberType::II
    } else if a == 1 {
        FiberType::III
    } else if b == 2 {
        FiberType::IV
    } else if a == 2 || b == 3 {
        FiberType::IStar(0)
    } else if b == 4 {
        FiberType::IVStar
    } else if a == 3 {
        FiberType::IIIStar
    } else if b == 5 {
        FiberType::IIStar
    } else {
        // unreachable while the frame invariant (alpha < 4 or beta < 6) holds
        return Err(Error::InconsistentLocalData {
            v_c4: a.to_string(),
            v_c6: b.to_string(),
            v_disc: 0,
        });
    };
    Ok(ty)
}

/// Sum of Euler numbers of a configuration.
pub fn euler_number(c: &Configuration) -> u32 {
    c.euler_number()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, valuation, Rat};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn pair(a: &str, b: &str, m: u32, n: u32) -> WeierstrassPair {
        WeierstrassPair::new(p(a), p(b), m, n).unwrap()
    }

    fn fin(v: u32) -> Valuation {
        Valuation::Finite(v)
    }

    #[test]
    fn classify_table_rows() {
        assert_eq!(classify_valuations(fin(0), fin(0), 5).unwrap(), FiberType::I(5));
        assert_eq!(classify_valuations(fin(1), fin(1), 2).unwrap(), FiberType::II);
        assert_eq!(classify_valuations(fin(2), fin(3), 6).unwrap(), FiberType::IStar(0));
        assert_eq!(classify_valuations(fin(3), fin(5), 9).unwrap(), FiberType::IIIStar);
        assert_eq!(classify_valuations(fin(1), fin(2), 3).unwrap(), FiberType::III);
        assert_eq!(classify_valuations(fin(2), fin(2), 4).unwrap(), FiberType::IV);
        assert_eq!(classify_valuations(fin(2), fin(3), 7).unwrap(), FiberType::IStar(1));
        assert_eq!(classify_valuations(fin(3), fin(4), 8).unwrap(), FiberType::IVStar);
        assert_eq!(classify_valuations(fin(4), fin(5), 10).unwrap(), FiberType::IIStar);
        // c4 = 0 surfaces carry the infinity sentinel
        assert_eq!(
            classify_valuations(Valuation::Infinite, fin(1), 2).unwrap(),
            FiberType::II
        );
    }

    #[test]
    fn classify_reduces_non_minimal_data() {
        assert_eq!(classify_valuations(fin(4), fin(6), 12).unwrap(), FiberType::I(0));
        // invariance under adding (4, 6, 12)
        for (v4, v6, vd, expect) in [
            (fin(0), fin(0), 5, FiberType::I(5)),
            (fin(1), fin(1), 2, FiberType::II),
            (fin(3), fin(5), 9, FiberType::IIIStar),
        ] {
            let shifted = classify_valuations(
                match v4 {
                    Valuation::Finite(v) => fin(v + 4),
                    Valuation::Infinite => Valuation::Infinite,
                },
                match v6 {
                    Valuation::Finite(v) => fin(v + 6),
                    Valuation::Infinite => Valuation::Infinite,
                },
                vd + 12,
            )
            .unwrap();
            assert_eq!(shifted, expect);
        }
    }

    #[test]
    fn classify_rejects_impossible_triples() {
        assert!(classify_valuations(fin(1), fin(1), 5).is_err());
        assert!(classify_valuations(Valuation::Infinite, Valuation::Infinite, 3).is_err());
    }

    #[test]
    fn refine_places_cubic_example() {
        // (t, 1): one finite cluster of degree 3, plus III* data at infinity
        let places = refine_places(&pair("t", "1", 1, 1)).unwrap();
        assert_eq!(places.len(), 2);
        assert_eq!(
            places[0].location,
            PlaceLocation::Finite(p("t^3 + 27/4"))
        );
        assert_eq!((places[0].v_c4, places[0].v_c6, places[0].v_disc), (fin(0), fin(0), 1));
        assert_eq!(places[1].location, PlaceLocation::Infinity);
        assert_eq!((places[1].v_c4, places[1].v_c6, places[1].v_disc), (fin(3), fin(6), 9));
    }

    #[test]
    fn refine_places_splits_valuation_layers() {
        // D = 27 t^2 (t^2 + 4); the t-cluster carries (0, 0, 2)
        let w = pair("-3", "2 + t^2", 1, 2);
        let places = refine_places(&w).unwrap();
        assert_eq!(places.len(), 3);
        assert_eq!(places[0].location, PlaceLocation::Finite(p("t")));
        assert_eq!((places[0].v_c4, places[0].v_c6, places[0].v_disc), (fin(0), fin(0), 2));
        assert_eq!(places[1].location, PlaceLocation::Finite(p("t^2 + 4")));
        assert_eq!((places[1].v_c4, places[1].v_c6, places[1].v_disc), (fin(0), fin(0), 1));
        assert_eq!(places[2].location, PlaceLocation::Infinity);
        assert_eq!((places[2].v_c4, places[2].v_c6, places[2].v_disc), (fin(4), fin(4), 8));
    }

    #[test]
    fn refine_places_with_identically_zero_c4() {
        // B = -7t^6 + 2t^3 + 1 squarefree: single degree-6 place, no
        // singular infinity place
        let w = pair("0", "-7*t^6 + 2*t^3 + 1", 4, 6);
        let places = refine_places(&w).unwrap();
        assert_eq!(places.len(), 1);
        assert_eq!(places[0].residue_degree(), 6);
        assert_eq!(
            (places[0].v_c4, places[0].v_c6, places[0].v_disc),
            (Valuation::Infinite, fin(1), 2)
        );
    }

    #[test]
    fn refinement_reconstructs_monic_discriminant_and_is_maximal() {
        for (a, b, m, n) in [
            ("t", "1", 1, 1),
            ("-3", "2 + t^2", 1, 2),
            ("t^2 - 1", "t^3 + 2*t", 2, 3),
            ("0", "-7*t^6 + 2*t^3 + 1", 4, 6),
        ] {
            let w = pair(a, b, m, n);
            let inv = w.invariants().unwrap();
            let mut prod = Poly::one();
            for place in refine_places(&w).unwrap() {
                let pi = match &place.location {
                    PlaceLocation::Finite(pi) => pi,
                    PlaceLocation::Infinity => continue,
                };
                prod = &prod * &pi.pow(place.v_disc);
                // data really is constant: pi^v || c4 and the quotient is coprime to pi
                if let Valuation::Finite(v) = place.v_c4 {
                    assert_eq!(valuation(&inv.c4, pi).unwrap(), fin(v));
                    let quot = inv.c4.exact_div(&pi.pow(v));
                    assert_eq!(gcd_monic(pi, &quot), Poly::one());
                }
                if let Valuation::Finite(v) = place.v_c6 {
                    assert_eq!(valuation(&inv.c6, pi).unwrap(), fin(v));
                    let quot = inv.c6.exact_div(&pi.pow(v));
                    assert_eq!(gcd_monic(pi, &quot), Poly::one());
                }
            }
            assert_eq!(prod, inv.d.monic(), "reconstruction failed for ({a}, {b})");
        }
    }

    #[test]
    fn configuration_examples() {
        let c = configuration(&pair("t", "1", 1, 1)).unwrap();
        let ms = c.multiset();
        assert_eq!(ms.get(&FiberType::I(1)), Some(&3));
        assert_eq!(ms.get(&FiberType::IIIStar), Some(&1));
        assert_eq!(c.euler_number(), 12);

        let c = configuration(&pair("t^4", "1", 4, 6)).unwrap();
        assert_eq!(c.multiset().get(&FiberType::I(1)), Some(&12));
        assert_eq!(c.euler_number(), 12);

        let c = configuration(&pair("0", "-7*t^6 + 2*t^3 + 1", 4, 6)).unwrap();
        assert_eq!(c.multiset().get(&FiberType::II), Some(&6));
        assert_eq!(c.euler_number(), 12);

        // the (-3, 2 + t^2) example: e = 2 + 2 + 8 = 12
        let c = configuration(&pair("-3", "2 + t^2", 1, 2)).unwrap();
        assert_eq!(c.multiset().get(&FiberType::I(2)), Some(&1));
        assert_eq!(c.multiset().get(&FiberType::I(1)), Some(&2));
        assert_eq!(c.multiset().get(&FiberType::IVStar), Some(&1));
        assert_eq!(c.euler_number(), 12);
    }

    #[test]
    fn non_minimal_finite_place_collapses_to_smooth() {
        // (t^4, t^6): v = (4, 6, 12) at t reduces to I_0 and drops out
        let w = pair("t^4", "t^6", 4, 6);
        let c = configuration(&w).unwrap();
        assert!(!c.entries.iter().any(
            |e| matches!(&e.location, PlaceLocation::Finite(pi) if *pi == p("t"))
        ));
    }

    #[test]
    fn infinity_table_columns() {
        let frame = |alpha, beta| Frame { k: 1, alpha, beta, s_tr: 0 };
        assert_eq!(infinity_fiber_from_table(&frame(0, 3)).unwrap(), FiberType::I(0));
        assert_eq!(infinity_fiber_from_table(&frame(2, 0)).unwrap(), FiberType::I(0));
        assert_eq!(infinity_fiber_from_table(&frame(2, 3)).unwrap(), FiberType::IStar(0));
        assert_eq!(infinity_fiber_from_table(&frame(3, 5)).unwrap(), FiberType::IIIStar);
    }

    #[test]
    fn euler_number_examples() {
        let c = configuration(&pair("t^4", "1", 4, 6)).unwrap();
        assert_eq!(euler_number(&c), 12);
        assert_eq!(FiberType::IIIStar.euler(), 9);
        assert_eq!(FiberType::IVStar.euler(), 8);
    }

    #[test]
    fn twist_preserves_configuration() {
        let w = pair("t^2 - 1", "t^3 + 2*t", 2, 3);
        let d = Rat::from_integer(3.into());
        let tw = WeierstrassPair::new(
            w.a().scale(&(&d * &d)),
            w.b().scale(&(&d * &d * &d)),
            2,
            3,
        )
        .unwrap();
        assert_eq!(configuration(&w).unwrap(), configuration(&tw).unwrap());
    }
}
