//! Mahler measure of rational polynomials via simultaneous root iteration.
//!
//! The measure is `|lc(f)| * prod max(1, |z|)` over the complex roots z.
//! Roots come from an Aberth-Ehrlich iteration with deterministic initial
//! points on a circle of radius `1 + H(f)/|lc(f)|`; convergence is judged by
//! the backward residual `|f(z)| / sum |c_i||z|^i`, so multiple roots do not
//! stall the stopping test.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::{naive_height, squarefree_decompose, Poly};

pub const ITERATION_CAP: u32 = 10_000;
pub const DEFAULT_TOL: f64 = 1e-10;

/// Mahler measure approximation with the tolerance it was computed to and a
/// heuristic bound on the propagated error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MahlerEstimate {
    pub value: f64,
    pub tol: f64,
    pub error_bound: f64,
}

/// `|lc| * prod max(1, |root|)` with each root found to backward residual
/// below `tol`. Errors on the zero polynomial and on non-convergence.
///
/// The polynomial is squarefree-decomposed exactly first, so the iteration
/// only ever sees simple roots; a repeated root (where the residual test
/// would certify far less than `tol` of root accuracy) enters through its
/// multiplicity instead.
pub fn mahler_measure(f: &Poly, tol: f64) -> Result<MahlerEstimate> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidTolerance);
    }
    let lc_abs = f
        .lc()
        .abs()
        .to_f64()
        .filter(|v| v.is_finite())
        .ok_or(Error::CoefficientOverflow)?;

    let mut value = lc_abs;
    let mut total_degree = 0u32;
    for (g, mult) in squarefree_decompose(f)? {
        let coeffs: Vec<Complex64> = g
            .coeffs()
            .iter()
            .map(|c| {
                c.to_f64()
                    .filter(|v| v.is_finite())
                    .map(|v| Complex64::new(v, 0.0))
                    .ok_or(Error::CoefficientOverflow)
            })
            .collect::<Result<_>>()?;
        let height = naive_height(&g)
            .to_f64()
            .filter(|v| v.is_finite())
            .ok_or(Error::CoefficientOverflow)?;
        let radius = 1.0 + height; // g is monic
        let roots = aberth_roots(&coeffs, radius, tol, ITERATION_CAP)?;
        for z in &roots {
            value *= z.norm().max(1.0).powi(mult as i32);
        }
        total_degree += mult * roots.len() as u32;
    }
    // crude propagation: each root carries ~tol relative backward error
    let error_bound = value * (total_degree as f64) * tol * 10.0;
    Ok(MahlerEstimate { value, tol, error_bound })
}

fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Backward residual scale: sum |c_i| |z|^i.
fn residual_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let az = z.norm();
    let mut acc = 0.0;
    for c in coeffs.iter().rev() {
        acc = acc * az + c.norm();
    }
    acc.max(f64::MIN_POSITIVE)
}

/// Aberth-Ehrlich iteration with deterministic starting points.
fn aberth_roots(
    coeffs: &[Complex64],
    radius: f64,
    tol: f64,
    cap: u32,
) -> Result<Vec<Complex64>> {
    let degree = coeffs.len() - 1;
    let deriv: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * (i as f64))
        .collect();

    // fixed angular offset breaks symmetry traps on real-coefficient input
    let mut roots: Vec<Complex64> = (0..degree)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64) / (degree as f64) + 0.7;
            Complex64::from_polar(radius, theta)
        })
        .collect();

    let mut worst = f64::INFINITY;
    for _ in 0..cap {
        worst = 0.0f64;
        for k in 0..degree {
            let z = roots[k];
            let pv = horner(coeffs, z);
            worst = worst.max(pv.norm() / residual_scale(coeffs, z));
        }
        if worst < tol {
            return Ok(roots);
        }
        for k in 0..degree {
            let z = roots[k];
            let pv = horner(coeffs, z);
            if pv.norm() == 0.0 {
                continue;
            }
            let dv = horner(&deriv, z);
            let newton = if dv.norm() == 0.0 {
                // flat spot: nudge deterministically
                Complex64::new(tol.max(1e-12), tol.max(1e-12))
            } else {
                pv / dv
            };
            let mut repulse = Complex64::zero();
            for (j, &w) in roots.iter().enumerate() {
                if j != k {
                    let d = z - w;
                    if d.norm() > 0.0 {
                        repulse += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulse;
            let step = if denom.norm() == 0.0 { newton } else { newton / denom };
            if step.is_finite() {
                roots[k] = z - step;
            }
        }
    }
    Err(Error::RootFindingDidNotConverge { residual: worst })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn p(s: &str) -> Poly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn measure_of_t_is_one() {
        let m = mahler_measure(&p("t"), DEFAULT_TOL).unwrap();
        assert!((m.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn measure_of_t2_minus_2() {
        // roots +-sqrt(2), both outside the unit circle: measure 2 exactly
        let m = mahler_measure(&p("t^2 - 2"), DEFAULT_TOL).unwrap();
        assert!((m.value - 2.0).abs() < 1e-9, "got {}", m.value);
    }

    #[test]
    fn measure_of_2t_plus_4() {
        // |lc| = 2, root -2: 2 * max(1, 2) = 4
        let m = mahler_measure(&p("2*t + 4"), DEFAULT_TOL).unwrap();
        assert!((m.value - 4.0).abs() < 1e-9, "got {}", m.value);
    }

    #[test]
    fn zero_polynomial_rejected() {
        assert!(matches!(
            mahler_measure(&Poly::zero(), DEFAULT_TOL),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn cyclotomic_measure_is_one() {
        let m = mahler_measure(&p("t^4 + t^3 + t^2 + t + 1"), DEFAULT_TOL).unwrap();
        assert!((m.value - 1.0).abs() < 1e-9, "got {}", m.value);
    }

    #[test]
    fn lehmer_polynomial_value() {
        // smallest known Salem number; measure ~ 1.17628081825991
        let f = p("t^10 + t^9 - t^7 - t^6 - t^5 - t^4 - t^3 + t + 1");
        let m = mahler_measure(&f, DEFAULT_TOL).unwrap();
        assert!((m.value - 1.17628081825991).abs() < 1e-8, "got {}", m.value);
    }

    #[test]
    fn scalar_homogeneity() {
        let f = p("3*t^2 - t + 7");
        let a = mahler_measure(&f, DEFAULT_TOL).unwrap().value;
        let b = mahler_measure(&f.scale(&crate::poly::parse_rat("-5/2").unwrap()), DEFAULT_TOL)
            .unwrap()
            .value;
        assert!((b - 2.5 * a).abs() < 1e-8 * a.max(1.0));
    }

    #[test]
    fn multiplicativity_on_random_products() {
        let mut state = 0xdead_beef_u64;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 11) as i64 - 5
        };
        let mut checked = 0;
        while checked < 25 {
            let f = Poly::from_ints(&[next(), next(), next(), next(), 1]);
            let g = Poly::from_ints(&[next(), next(), next(), 1]);
            if f.is_zero() || g.is_zero() {
                continue;
            }
            let mf = mahler_measure(&f, DEFAULT_TOL).unwrap().value;
            let mg = mahler_measure(&g, DEFAULT_TOL).unwrap().value;
            let mfg = mahler_measure(&(&f * &g), DEFAULT_TOL).unwrap().value;
            let rel = (mfg - mf * mg).abs() / (mf * mg);
            assert!(rel < 1e-8, "relative gap {rel} on ({f}) * ({g})");
            checked += 1;
        }
    }
}
