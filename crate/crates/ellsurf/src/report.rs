//! Report documents emitted by the command-line surface.
//!
//! Exact rationals serialize as "p/q" strings (never floats); polynomials as
//! low-to-high coefficient lists. Places are sorted canonically before
//! emission, so `--json` output is stable under re-ordering of internal
//! computation.

use num_traits::One;
use serde::Serialize;

use crate::error::Result;
use crate::kodaira::{configuration, refine_places, PlaceLocation};
use crate::mwlattice::{height, trivial_lattice, HeightResult, Section};
use crate::poly::{rat_to_string, Poly, Valuation};
use crate::twist::TwProbeEntry;
use crate::weierstrass::{Membership, UFailure, WeierstrassPair};

fn poly_coeffs(f: &Poly) -> Vec<String> {
    f.coeffs().iter().map(rat_to_string).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub a: String,
    pub a_coeffs: Vec<String>,
    pub b: String,
    pub b_coeffs: Vec<String>,
    pub m: u32,
    pub n: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct FrameReport {
    pub k: u32,
    pub alpha: u32,
    pub beta: u32,
    pub s_tr: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrivialWitnessReport {
    pub lambda: String,
    pub mu: String,
    pub u: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub class: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failed: Vec<String>,
    pub trivial: Option<TrivialWitnessReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantsReport {
    pub c4: Vec<String>,
    pub c6: Vec<String>,
    pub disc: Vec<String>,
    pub d: Vec<String>,
    pub j_num: Vec<String>,
    pub j_den: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaceReport {
    pub place: serde_json::Value,
    pub residue_degree: u32,
    pub v_c4: serde_json::Value,
    pub v_c6: serde_json::Value,
    pub v_disc: u32,
    pub fiber: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEntryReport {
    #[serde(rename = "type")]
    pub fiber_type: String,
    pub multiplicity: u32,
    pub place: serde_json::Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct TrivialLatticeReport {
    pub rank: u32,
    pub det: u64,
    pub chi: u32,
    pub summands: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ContributionReport {
    pub place: serde_json::Value,
    pub fiber: String,
    pub points_nonidentity: u32,
    pub lower: String,
    pub upper: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct HeightReport {
    pub x: String,
    pub y: String,
    pub lower: String,
    pub upper: String,
    pub exact: bool,
    pub po_intersection: u32,
    pub chi: u32,
    pub contributions: Vec<ContributionReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TorsionReport {
    pub t0: String,
    pub primes: Vec<u64>,
    pub bound: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwistEntryReport {
    pub d: i64,
    pub in_u: bool,
    pub isomorphic: bool,
    pub a: String,
    pub b: String,
}

/// Full analysis record; every numeric field is reproducible by re-running
/// the library operations on the echoed input.
#[derive(Debug, Clone, Serialize)]
pub struct SurfaceReport {
    pub input: InputEcho,
    pub frame: FrameReport,
    pub membership: MembershipReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariants: Option<InvariantsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub places: Option<Vec<PlaceReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub configuration: Option<Vec<ConfigEntryReport>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trivial_lattice: Option<TrivialLatticeReport>,
    pub rank_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub height: Option<HeightReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torsion: Option<TorsionReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub twists: Option<Vec<TwistEntryReport>>,
}

fn location_value(loc: &PlaceLocation) -> serde_json::Value {
    match loc {
        PlaceLocation::Finite(pi) => serde_json::json!(poly_coeffs(pi)),
        PlaceLocation::Infinity => serde_json::json!("inf"),
    }
}

fn valuation_value(v: Valuation) -> serde_json::Value {
    match v {
        Valuation::Finite(n) => serde_json::json!(n),
        Valuation::Infinite => serde_json::json!("inf"),
    }
}

impl SurfaceReport {
    /// Builds the analysis sections that apply to the pair. `not_in_S`
    /// inputs still produce a report (the caller decides how to surface the
    /// error); trivial pairs carry no lattice or rank data.
    pub fn build(pair: &WeierstrassPair) -> Result<SurfaceReport> {
        let frame = pair.frame();
        let membership = pair.classify_membership();
        let trivial = pair.detect_trivial();

        let membership_report = MembershipReport {
            class: match &membership {
                Membership::NotInS => "not_in_S".to_string(),
                Membership::SOnly(_) => "S_only".to_string(),
                Membership::U => "U".to_string(),
            },
            failed: match &membership {
                Membership::SOnly(fails) => fails
                    .iter()
                    .map(|f| match f {
                        UFailure::DegreeDeficit { got, want } => format!(
                            "deg D = {} < {want}",
                            got.map(|d| d.to_string()).unwrap_or_else(|| "-inf".into())
                        ),
                        UFailure::NotSquarefree => "D not squarefree".to_string(),
                    })
                    .collect(),
                _ => Vec::new(),
            },
            trivial: trivial.as_ref().map(|w| TrivialWitnessReport {
                lambda: rat_to_string(&w.lambda),
                mu: rat_to_string(&w.mu),
                u: w.u.to_string(),
            }),
        };

        let mut report = SurfaceReport {
            input: InputEcho {
                a: pair.a().to_string(),
                a_coeffs: poly_coeffs(pair.a()),
                b: pair.b().to_string(),
                b_coeffs: poly_coeffs(pair.b()),
                m: pair.m(),
                n: pair.n(),
            },
            frame: FrameReport {
                k: frame.k,
                alpha: frame.alpha,
                beta: frame.beta,
                s_tr: frame.s_tr,
            },
            membership: membership_report,
            invariants: None,
            places: None,
            configuration: None,
            trivial_lattice: None,
            rank_bound: None,
            height: None,
            torsion: None,
            twists: None,
        };

        if !membership.in_s() {
            return Ok(report);
        }

        let inv = pair.invariants()?;
        report.invariants = Some(InvariantsReport {
            c4: poly_coeffs(&inv.c4),
            c6: poly_coeffs(&inv.c6),
            disc: poly_coeffs(&inv.disc),
            d: poly_coeffs(&inv.d),
            j_num: poly_coeffs(&inv.j_num),
            j_den: poly_coeffs(&inv.j_den),
        });

        let places = refine_places(pair)?;
        let mut place_reports = Vec::new();
        for place in &places {
            place_reports.push(PlaceReport {
                place: location_value(&place.location),
                residue_degree: place.residue_degree(),
                v_c4: valuation_value(place.v_c4),
                v_c6: valuation_value(place.v_c6),
                v_disc: place.v_disc,
                fiber: place.fiber()?.to_string(),
            });
        }
        report.places = Some(place_reports);

        let config = configuration(pair)?;
        report.configuration = Some(
            config
                .entries
                .iter()
                .map(|e| ConfigEntryReport {
                    fiber_type: e.fiber.to_string(),
                    multiplicity: e.multiplicity,
                    place: location_value(&e.location),
                })
                .collect(),
        );

        if trivial.is_none() {
            let euler = config.euler_number();
            if euler % 12 == 0 {
                let chi = euler / 12;
                if let Ok(tl) = trivial_lattice(&config, chi) {
                    report.trivial_lattice = Some(TrivialLatticeReport {
                        rank: tl.rank,
                        det: tl.det_abs,
                        chi: tl.chi,
                        summands: tl
                            .summands
                            .iter()
                            .flat_map(|(lat, mult)| {
                                std::iter::repeat(lat.to_string()).take(*mult as usize)
                            })
                            .collect(),
                    });
                }
            }
            report.rank_bound = crate::mwlattice::rank_bound(pair).ok();
        }
        Ok(report)
    }

    pub fn with_height(mut self, pair: &WeierstrassPair, section: &Section) -> Result<Self> {
        let h: HeightResult = height(pair, section)?;
        self.height = Some(HeightReport {
            x: fraction_string(&section.x_num, &section.x_den),
            y: fraction_string(&section.y_num, &section.y_den),
            lower: rat_to_string(&h.lower),
            upper: rat_to_string(&h.upper),
            exact: h.exact,
            po_intersection: h.po_intersection,
            chi: h.chi,
            contributions: h
                .contributions
                .iter()
                .map(|c| ContributionReport {
                    place: location_value(&c.location),
                    fiber: c.fiber.to_string(),
                    points_nonidentity: c.points_nonidentity,
                    lower: rat_to_string(&c.lower),
                    upper: rat_to_string(&c.upper),
                })
                .collect(),
        });
        Ok(self)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }

    /// Human-readable rendering.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: String| {
            out.push_str(&line);
            out.push('\n');
        };
        push(&mut out, format!("A = {}", self.input.a));
        push(&mut out, format!("B = {}", self.input.b));
        push(&mut out, format!("frame: (m, n) = ({}, {})", self.input.m, self.input.n));
        push(
            &mut out,
            format!(
                "       k = {}, alpha = {}, beta = {}, s_tr = {}",
                self.frame.k, self.frame.alpha, self.frame.beta, self.frame.s_tr
            ),
        );
        let mut class = format!("membership: {}", self.membership.class);
        if !self.membership.failed.is_empty() {
            class.push_str(&format!(" (failed: {})", self.membership.failed.join("; ")));
        }
        push(&mut out, class);
        if let Some(w) = &self.membership.trivial {
            push(
                &mut out,
                format!("trivial: (lambda, mu, u) = ({}, {}, {})", w.lambda, w.mu, w.u),
            );
        }
        if let Some(places) = &self.places {
            push(&mut out, "places:".to_string());
            for p in places {
                let loc = match &p.place {
                    serde_json::Value::String(s) => s.clone(),
                    v => v.to_string(),
                };
                push(
                    &mut out,
                    format!(
                        "  {} deg {}: (v_c4, v_c6, v_disc) = ({}, {}, {}) -> {}",
                        loc, p.residue_degree, p.v_c4, p.v_c6, p.v_disc, p.fiber
                    ),
                );
            }
        }
        if let Some(config) = &self.configuration {
            let entries: Vec<String> = config
                .iter()
                .map(|e| format!("{} x{}", e.fiber_type, e.multiplicity))
                .collect();
            push(&mut out, format!("configuration: {{{}}}", entries.join(", ")));
        }
        if let Some(tl) = &self.trivial_lattice {
            push(
                &mut out,
                format!(
                    "trivial lattice: rank {}, |det| {}, summands [{}], chi {}",
                    tl.rank,
                    tl.det,
                    tl.summands.join(", "),
                    tl.chi
                ),
            );
        }
        if let Some(rb) = self.rank_bound {
            push(&mut out, format!("rank bound: {rb}"));
        }
        if let Some(h) = &self.height {
            push(
                &mut out,
                format!(
                    "height of ({}, {}): [{}, {}]{} with (P.O) = {}",
                    h.x,
                    h.y,
                    h.lower,
                    h.upper,
                    if h.exact { " (exact)" } else { "" },
                    h.po_intersection
                ),
            );
            for c in &h.contributions {
                let loc = match &c.place {
                    serde_json::Value::String(s) => s.clone(),
                    v => v.to_string(),
                };
                push(
                    &mut out,
                    format!(
                        "  contr at {} ({}): [{}, {}] over {} point(s)",
                        loc, c.fiber, c.lower, c.upper, c.points_nonidentity
                    ),
                );
            }
        }
        if let Some(t) = &self.torsion {
            push(
                &mut out,
                format!(
                    "torsion bound at t0 = {}: {} (primes {:?})",
                    t.t0, t.bound, t.primes
                ),
            );
        }
        if let Some(tws) = &self.twists {
            push(&mut out, "twists:".to_string());
            for tw in tws {
                push(
                    &mut out,
                    format!(
                        "  d = {}: in_U = {}, isomorphic = {}, (A', B') = ({}, {})",
                        tw.d, tw.in_u, tw.isomorphic, tw.a, tw.b
                    ),
                );
            }
        }
        out
    }
}

pub fn fraction_string(num: &Poly, den: &Poly) -> String {
    if den.is_constant() && den.coeff(0).is_one() {
        num.to_string()
    } else {
        format!("({})/({})", num, den)
    }
}

pub fn twist_entries(pair: &WeierstrassPair, entries: &[TwProbeEntry]) -> Vec<TwistEntryReport> {
    entries
        .iter()
        .map(|e| {
            let d = crate::poly::Rat::from_integer(e.d.into());
            let tw = crate::twist::twist(pair, &d).expect("nonzero d");
            TwistEntryReport {
                d: e.d,
                in_u: e.in_u,
                isomorphic: e.isomorphic,
                a: tw.a().to_string(),
                b: tw.b().to_string(),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    #[test]
    fn analyze_report_round_trips_coefficients() {
        let pair = WeierstrassPair::new(
            parse_poly("t").unwrap(),
            parse_poly("1").unwrap(),
            1,
            1,
        )
        .unwrap();
        let report = SurfaceReport::build(&pair).unwrap();
        // parsing the echoed string reproduces the input exactly
        assert_eq!(parse_poly(&report.input.a).unwrap(), *pair.a());
        assert_eq!(parse_poly(&report.input.b).unwrap(), *pair.b());
        assert_eq!(report.rank_bound, Some(1));
        let json = report.to_json();
        assert!(json.starts_with("{\"input\""));
        // canonical key order: input before frame before membership
        let i1 = json.find("\"input\"").unwrap();
        let i2 = json.find("\"frame\"").unwrap();
        let i3 = json.find("\"membership\"").unwrap();
        assert!(i1 < i2 && i2 < i3);
    }

    #[test]
    fn not_in_s_report_is_minimal() {
        let pair = WeierstrassPair::new(
            parse_poly("-3").unwrap(),
            parse_poly("2").unwrap(),
            1,
            1,
        )
        .unwrap();
        let report = SurfaceReport::build(&pair).unwrap();
        assert_eq!(report.membership.class, "not_in_S");
        assert!(report.invariants.is_none());
        assert!(report.rank_bound.is_none());
    }
}
