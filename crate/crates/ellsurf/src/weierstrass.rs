//! Weierstrass pairs `(A, B)` in a declared degree frame `(m, n)`.
//!
//! The frame is part of the input: the families under study are defined by
//! box degrees, and the infinity data `(k, alpha, beta)` depends on the box,
//! not on the actual degrees of A and B.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{gcd_monic, reverse_pad, squarefree_decompose, Poly, Rat};

/// `y^2 = x^3 + A(t)x + B(t)` with declared bounds `deg A <= m`, `deg B <= n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeierstrassPair {
    a: Poly,
    b: Poly,
    m: u32,
    n: u32,
}

/// Infinity-chart frame data derived from `(m, n)`.
///
/// `k = ceil(max(m/4, n/6))`, `alpha = 4k - m`, `beta = 6k - n`; the frame
/// invariant guarantees `alpha < 4` or `beta < 6`. `s_tr` is the degree cap
/// for trivializing substitutions, `floor(min(m/4, n/6))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Frame {
    pub k: u32,
    pub alpha: u32,
    pub beta: u32,
    pub s_tr: u32,
}

/// The standard invariants of the short Weierstrass equation:
/// `c4 = -48A`, `c6 = -864B`, `D = 4A^3 + 27B^2`, `disc = -16 D`, and the
/// j-invariant `6912 A^3 / D` as a reduced fraction of polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invariants {
    pub c4: Poly,
    pub c6: Poly,
    pub d: Poly,
    pub disc: Poly,
    pub j_num: Poly,
    pub j_den: Poly,
}

/// Why a pair in S failed the U-membership conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UFailure {
    /// `deg(4A^3 + 27B^2)` fell short of `max(3m, 2n)`.
    DegreeDeficit { got: Option<usize>, want: usize },
    /// `4A^3 + 27B^2` has a repeated factor.
    NotSquarefree,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// `4A^3 + 27B^2 = 0`.
    NotInS,
    /// In S but not in U; lists every failed condition.
    SOnly(Vec<UFailure>),
    U,
}

impl Membership {
    pub fn is_u(&self) -> bool {
        matches!(self, Membership::U)
    }

    pub fn in_s(&self) -> bool {
        !matches!(self, Membership::NotInS)
    }
}

/// Witness that the surface is trivial: `A = lambda u^4`, `B = mu u^6` with
/// `4 lambda^3 + 27 mu^2 != 0`, `u` monic of degree at most `s_tr`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialWitness {
    pub lambda: Rat,
    pub mu: Rat,
    pub u: Poly,
}

impl WeierstrassPair {
    pub fn new(a: Poly, b: Poly, m: u32, n: u32) -> Result<WeierstrassPair> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidFrame);
        }
        if let Some(d) = a.degree() {
            if d > m as usize {
                return Err(Error::DegreeBound { which: 'A', degree: d, bound: m });
            }
        }
        if let Some(d) = b.degree() {
            if d > n as usize {
                return Err(Error::DegreeBound { which: 'B', degree: d, bound: n });
            }
        }
        Ok(WeierstrassPair { a, b, m, n })
    }

    pub fn a(&self) -> &Poly {
        &self.a
    }

    pub fn b(&self) -> &Poly {
        &self.b
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `4A^3 + 27B^2`.
    pub fn d_poly(&self) -> Poly {
        let a3 = self.a.pow(3);
        let b2 = &self.b * &self.b;
        &a3.scale(&Rat::from_integer(4.into())) + &b2.scale(&Rat::from_integer(27.into()))
    }

    pub fn frame(&self) -> Frame {
        let k = ((self.m + 3) / 4).max((self.n + 5) / 6);
        Frame {
            k,
            alpha: 4 * k - self.m,
            beta: 6 * k - self.n,
            s_tr: (self.m / 4).min(self.n / 6),
        }
    }

    /// Standard invariants; errors with `NotAnEllipticSurface` when D = 0.
    pub fn invariants(&self) -> Result<Invariants> {
        let d = self.d_poly();
        if d.is_zero() {
            return Err(Error::NotAnEllipticSurface);
        }
        let c4 = self.a.scale(&Rat::from_integer((-48).into()));
        let c6 = self.b.scale(&Rat::from_integer((-864).into()));
        let disc = d.scale(&Rat::from_integer((-16).into()));
        let (j_num, j_den) = reduced_j(&self.a, &d);
        Ok(Invariants { c4, c6, d, disc, j_num, j_den })
    }

    /// Total classification into not_in_S / S_only / U.
    pub fn classify_membership(&self) -> Membership {
        let d = self.d_poly();
        if d.is_zero() {
            return Membership::NotInS;
        }
        let want = (3 * self.m).max(2 * self.n) as usize;
        let mut failures = Vec::new();
        if d.degree() != Some(want) {
            failures.push(UFailure::DegreeDeficit { got: d.degree(), want });
        }
        if !gcd_monic(&d, &d.derivative()).is_constant() {
            failures.push(UFailure::NotSquarefree);
        }
        if failures.is_empty() {
            Membership::U
        } else {
            Membership::SOnly(failures)
        }
    }

    /// Detects membership in the trivializing locus: `(A, B) = (l u^4, m u^6)`.
    ///
    /// `u` is canonicalized monic (leading coefficients fold into the
    /// scalars); one of the scalars may be zero but not both.
    pub fn detect_trivial(&self) -> Option<TrivialWitness> {
        let s_tr = self.frame().s_tr as usize;
        let (lambda, mu, u) = if self.a.is_zero() && self.b.is_zero() {
            return None; // D = 0, excluded by 4l^3 + 27m^2 != 0
        } else if self.a.is_zero() {
            let u = perfect_power_root(&self.b, 6)?;
            (Rat::zero(), self.b.lc(), u)
        } else if self.b.is_zero() {
            let u = perfect_power_root(&self.a, 4)?;
            (self.a.lc(), Rat::zero(), u)
        } else {
            let ua = perfect_power_root(&self.a, 4)?;
            let ub = perfect_power_root(&self.b, 6)?;
            if ua != ub {
                return None;
            }
            (self.a.lc(), self.b.lc(), ua)
        };
        if u.degree().unwrap_or(0) > s_tr {
            return None;
        }
        let four_l3 = lambda.pow(3) * Rat::from_integer(4.into());
        let twenty7_m2 = mu.pow(2) * Rat::from_integer(27.into());
        if (four_l3 + twenty7_m2).is_zero() {
            return None;
        }
        Some(TrivialWitness { lambda, mu, u })
    }

    /// The Weierstrass data in the chart at infinity (`t = 1/s`, scaled by
    /// `s^{4k}` and `s^{6k}`).
    pub fn infinity_model(&self) -> (Poly, Poly) {
        let k = self.frame().k as usize;
        // deg A <= m <= 4k and deg B <= n <= 6k by construction
        let a_inf = reverse_pad(&self.a, 4 * k).expect("deg A <= 4k");
        let b_inf = reverse_pad(&self.b, 6 * k).expect("deg B <= 6k");
        (a_inf, b_inf)
    }
}

/// `6912 A^3 / D` reduced by the monic gcd, then scaled so the denominator is
/// a primitive integer polynomial with positive leading coefficient.
fn reduced_j(a: &Poly, d: &Poly) -> (Poly, Poly) {
    if a.is_zero() {
        return (Poly::zero(), Poly::one());
    }
    let a3 = a.pow(3);
    let g = gcd_monic(&a3, d);
    let num = a3.exact_div(&g).scale(&Rat::from_integer(6912.into()));
    let den = d.exact_div(&g);
    let (den_prim, sigma) = den.primitive_scale();
    (num.scale(&sigma.recip()), den_prim)
}

/// Monic e-th root of `f` up to its leading coefficient: `Some(u)` iff
/// `f = lc(f) * u^e` exactly.
fn perfect_power_root(f: &Poly, e: u32) -> Option<Poly> {
    let parts = squarefree_decompose(f).ok()?;
    let mut u = Poly::one();
    for (g, mult) in parts {
        if mult % e != 0 {
            return None;
        }
        u = &u * &g.pow(mult / e);
    }
    Some(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use num_traits::{One, Zero};

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    fn pair(a: &str, b: &str, m: u32, n: u32) -> WeierstrassPair {
        WeierstrassPair::new(p(a), p(b), m, n).unwrap()
    }

    #[test]
    fn frame_examples() {
        let f = pair("t", "1", 1, 1).frame();
        assert_eq!((f.k, f.alpha, f.beta), (1, 3, 5));
        let f = pair("t^4", "1", 4, 6).frame();
        assert_eq!((f.k, f.alpha, f.beta), (1, 0, 0));
        let f = pair("t^2", "1", 9, 2).frame();
        assert_eq!((f.k, f.alpha, f.beta), (3, 3, 16));
    }

    #[test]
    fn degree_bounds_enforced() {
        assert!(WeierstrassPair::new(p("t^2"), p("1"), 1, 1).is_err());
        assert!(WeierstrassPair::new(p("t"), p("1"), 0, 1).is_err());
    }

    #[test]
    fn invariants_direct_formulas() {
        let inv = pair("0", "1", 1, 1).invariants().unwrap();
        assert!(inv.c4.is_zero());
        assert_eq!(inv.c6, p("-864"));
        assert_eq!(inv.disc, p("-432"));
        assert!(inv.j_num.is_zero());
        assert_eq!(inv.j_den, Poly::one());

        // D = 4(-27) + 27*4 = 0
        assert!(matches!(
            pair("-3", "2", 1, 1).invariants(),
            Err(Error::NotAnEllipticSurface)
        ));

        let inv = pair("t", "1", 1, 1).invariants().unwrap();
        assert_eq!(inv.disc, p("-64*t^3 - 432"));
        assert_eq!(inv.j_num, p("6912*t^3"));
        assert_eq!(inv.j_den, p("4*t^3 + 27"));
    }

    #[test]
    fn invariants_satisfy_1728_disc_identity() {
        for (a, b, m, n) in [("t", "1", 1, 1), ("t^2 - 3", "t + 5", 2, 2), ("0", "t^3 + 1", 2, 3)] {
            let inv = pair(a, b, m, n).invariants().unwrap();
            let lhs = inv.disc.scale(&Rat::from_integer(1728.into()));
            let rhs = &inv.c4.pow(3) - &(&inv.c6 * &inv.c6);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn membership_examples() {
        assert!(pair("t", "1", 1, 1).classify_membership().is_u());
        match pair("1", "t", 1, 1).classify_membership() {
            Membership::SOnly(fails) => {
                // oracle: D = 27t^2 + 4 has degree 2 < max(3, 2) = 3
                assert_eq!(
                    fails,
                    vec![UFailure::DegreeDeficit { got: Some(2), want: 3 }]
                );
            }
            other => panic!("expected S_only, got {other:?}"),
        }
        assert_eq!(pair("-3", "2", 1, 1).classify_membership(), Membership::NotInS);
    }

    #[test]
    fn nonemptiness_witnesses_over_grid() {
        // (t^m, 1) lands in U when 2n < 3m; (1, t^n) when 2n >= 3m
        for m in 1..=8u32 {
            for n in 1..=10u32 {
                let (a, b) = if 2 * n < 3 * m {
                    (Poly::monomial(Rat::one(), m as usize), Poly::one())
                } else {
                    (Poly::one(), Poly::monomial(Rat::one(), n as usize))
                };
                let w = WeierstrassPair::new(a, b, m, n).unwrap();
                assert!(
                    w.classify_membership().is_u(),
                    "witness failed at (m, n) = ({m}, {n})"
                );
            }
        }
    }

    #[test]
    fn detect_trivial_witnesses() {
        let u4 = p("t + 1").pow(4);
        let u6 = p("t + 1").pow(6);
        let w = WeierstrassPair::new(u4, u6, 4, 6).unwrap();
        let wit = w.detect_trivial().unwrap();
        assert_eq!(wit.lambda, Rat::one());
        assert_eq!(wit.mu, Rat::one());
        assert_eq!(wit.u, p("t + 1"));
        // reconstruction is exact
        assert_eq!(&wit.u.pow(4).scale(&wit.lambda), w.a());
        assert_eq!(&wit.u.pow(6).scale(&wit.mu), w.b());

        assert!(pair("t^4", "1", 4, 6).detect_trivial().is_none());

        let wit = pair("0", "t^6", 4, 6).detect_trivial().unwrap();
        assert!(wit.lambda.is_zero());
        assert_eq!(wit.mu, Rat::one());
        assert_eq!(wit.u, p("t"));
    }

    #[test]
    fn detect_trivial_folds_leading_coefficients() {
        // A = 3 (2t)^4? no: A = 48 t^4 = 48 * t^4, B = -2 t^6
        let w = pair("48*t^4", "-2*t^6", 4, 6);
        let wit = w.detect_trivial().unwrap();
        assert_eq!(wit.u, p("t"));
        assert_eq!(wit.lambda, Rat::from_integer(48.into()));
        assert_eq!(wit.mu, Rat::from_integer((-2).into()));
    }

    #[test]
    fn detect_trivial_rejects_degenerate_scalars() {
        // (lambda, mu) = (-3, 2) has 4l^3 + 27m^2 = 0
        assert!(pair("-3", "2", 1, 1).detect_trivial().is_none());
    }

    #[test]
    fn infinity_model_examples() {
        let (ai, bi) = pair("t", "1", 1, 1).infinity_model();
        assert_eq!(ai, p("t^3"));
        assert_eq!(bi, p("t^6"));
        let (ai, bi) = pair("t^4", "1", 4, 6).infinity_model();
        assert_eq!(ai, Poly::one());
        assert_eq!(bi, p("t^6"));
        // (1, t^n) with 2n >= 3m: (s^{4k}, s^{6k-n}); checked at n = 3, m = 2
        let (ai, bi) = pair("1", "t^3", 2, 3).infinity_model();
        assert_eq!(ai, p("t^4"));
        assert_eq!(bi, p("t^3"));
    }

    #[test]
    fn u_members_have_predicted_infinity_discriminant_order() {
        // v_s(D_inf) = 12k - max(3m, 2n) = min(3 alpha, 2 beta)
        for (a, b, m, n) in [("t", "1", 1, 1), ("1", "t^3", 2, 3), ("t^4", "1", 4, 6)] {
            let w = pair(a, b, m, n);
            assert!(w.classify_membership().is_u());
            let f = w.frame();
            let d_inf = reverse_pad(&w.d_poly(), 12 * f.k as usize).unwrap();
            let expected = (12 * f.k) - (3 * m).max(2 * n);
            assert_eq!(d_inf.order_at_zero(), crate::poly::Valuation::Finite(expected));
            assert_eq!(expected, (3 * f.alpha).min(2 * f.beta));
        }
    }
}
