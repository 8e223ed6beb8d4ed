//! Command-line surface.
//!
//! One verb per capability: `analyze`, `twist`, `twist-detect`, `height`,
//! `torsion-bound`, `sample`, `mahler`. Exit code 0 on success, 1 on domain
//! errors (with a one-line machine-parsable error record on stdout), 2 on
//! usage errors.

use std::collections::BTreeMap;
use std::io::Write;

use crate::error::{Error, Result};
use crate::family::{BoxSpec, Measure, Mode};
use crate::mahler::{mahler_measure, DEFAULT_TOL};
use crate::mwlattice::{torsion_bound, Section};
use crate::poly::{parse_poly, parse_rat, rat_to_string, Poly};
use crate::report::{SurfaceReport, TorsionReport};
use crate::twist::{detect_twist, tw_probe, twist};
use crate::weierstrass::WeierstrassPair;

const USAGE: &str = "usage: ellsurf <command> [flags]

commands:
  analyze       --A <poly> --B <poly> --m <int> --n <int> [--json]
  twist         --A <poly> --B <poly> --m <int> --n <int> --d <rat>
                [--probe d1,d2,...] [--json]
  twist-detect  --A1 <poly> --B1 <poly> --A2 <poly> --B2 <poly>
                --m <int> --n <int> [--json]
  height        --A <poly> --B <poly> --m <int> --n <int>
                --x <poly or (num)/(den)> --y <poly or (num)/(den)> [--json]
  torsion-bound --A <poly> --B <poly> --m <int> --n <int>
                --t0 <rat> --primes p1,p2,... [--json]
  sample        --m <int> --n <int> --bound <rat> [--measure naive|mahler]
                [--mode sample|exhaustive] [--count <int>] [--seed <int>]
                [--workers <int>] [--analysis] [--out <file>] [--json]
  mahler        --poly <poly> [--tol <float>] [--json]

polynomials use the grammar: poly := term ((\"+\"|\"-\") term)*,
term := coeff (\"*\" mono)? | mono, mono := \"t\" (\"^\" uint)?,
coeff := int (\"/\" uint)?  (e.g. \"4*t^3 + 27\", \"1/2*t^2 - 3\")";

const BOOL_FLAGS: &[&str] = &["json", "analysis"];

struct Flags {
    values: BTreeMap<String, String>,
    bools: Vec<String>,
}

impl Flags {
    fn parse(args: &[String]) -> std::result::Result<Flags, String> {
        let mut values = BTreeMap::new();
        let mut bools = Vec::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let key = arg
                .strip_prefix("--")
                .ok_or_else(|| format!("unexpected argument '{arg}'"))?;
            if let Some((k, v)) = key.split_once('=') {
                values.insert(k.to_string(), v.to_string());
                i += 1;
                continue;
            }
            if BOOL_FLAGS.contains(&key) {
                bools.push(key.to_string());
                i += 1;
                continue;
            }
            let value = args
                .get(i + 1)
                .ok_or_else(|| format!("flag --{key} needs a value"))?;
            values.insert(key.to_string(), value.clone());
            i += 2;
        }
        Ok(Flags { values, bools })
    }

    fn get(&self, key: &str) -> std::result::Result<&str, String> {
        self.values
            .get(key)
            .map(|s| s.as_str())
            .ok_or_else(|| format!("missing required flag --{key}"))
    }

    fn get_opt(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    fn has(&self, key: &str) -> bool {
        self.bools.iter().any(|b| b == key)
    }
}

fn error_code(err: &Error) -> &'static str {
    match err {
        Error::Syntax { .. } | Error::ExponentOverflow { .. } => "parse_error",
        Error::NotAnEllipticSurface => "not_in_S",
        Error::ShiodaTateInapplicable => "trivial_surface",
        Error::NotOnCurve => "not_on_curve",
        Error::InconsistentSection => "inconsistent_section",
        Error::BadSpecialization => "bad_specialization",
        Error::NoUsablePrime => "no_usable_prime",
        Error::PrimeTooLarge { .. } | Error::NotAnOddPrime { .. } => "bad_prime",
        Error::ZeroTwist => "zero_twist",
        Error::FactorLimitExceeded => "factor_limit",
        Error::NotInU => "not_in_U",
        Error::BoxTooLarge { .. } | Error::NonIntegerBound => "bad_box",
        Error::RootFindingDidNotConverge { .. } => "no_convergence",
        Error::ZeroPolynomial => "zero_polynomial",
        _ => "domain_error",
    }
}

fn emit_error(out: &mut dyn Write, err: &Error) -> i32 {
    let record = serde_json::json!({
        "error": error_code(err),
        "detail": err.to_string(),
    });
    let _ = writeln!(out, "{record}");
    1
}

fn usage_error(out: &mut dyn Write, detail: &str) -> i32 {
    let record = serde_json::json!({ "error": "usage", "detail": detail });
    let _ = writeln!(out, "{record}");
    let _ = writeln!(out, "{USAGE}");
    2
}

fn parse_pair(flags: &Flags) -> std::result::Result<Result<WeierstrassPair>, String> {
    let a = flags.get("A")?;
    let b = flags.get("B")?;
    let m: u32 = flags.get("m")?.parse().map_err(|_| "bad --m".to_string())?;
    let n: u32 = flags.get("n")?.parse().map_err(|_| "bad --n".to_string())?;
    Ok(build_pair(a, b, m, n))
}

fn build_pair(a: &str, b: &str, m: u32, n: u32) -> Result<WeierstrassPair> {
    WeierstrassPair::new(parse_poly(a)?, parse_poly(b)?, m, n)
}

/// Section coordinates: a plain polynomial, or "(num)/(den)".
fn parse_section_coord(text: &str) -> Result<(Poly, Poly)> {
    let s = text.trim();
    if let Some(rest) = s.strip_prefix('(') {
        if let Some((num, den)) = rest.split_once(")/(") {
            let den = den.strip_suffix(')').ok_or(Error::Syntax {
                offset: s.len(),
                message: "expected ')' at end of fraction".to_string(),
            })?;
            return Ok((parse_poly(num)?, parse_poly(den)?));
        }
    }
    Ok((parse_poly(s)?, Poly::one()))
}

fn emit_report(out: &mut dyn Write, report: &SurfaceReport, json: bool) {
    if json {
        let _ = writeln!(out, "{}", report.to_json());
    } else {
        let _ = write!(out, "{}", report.render_text());
    }
}

pub fn run(args: &[String], out: &mut dyn Write) -> i32 {
    let Some(command) = args.first() else {
        return usage_error(out, "no command given");
    };
    let flags = match Flags::parse(&args[1..]) {
        Ok(f) => f,
        Err(e) => return usage_error(out, &e),
    };
    let json = flags.has("json");

    match command.as_str() {
        "analyze" => {
            let pair = match parse_pair(&flags) {
                Ok(p) => p,
                Err(e) => return usage_error(out, &e),
            };
            match pair.and_then(|p| analyze(&p)) {
                Ok(report) => {
                    emit_report(out, &report, json);
                    0
                }
                Err(err) => emit_error(out, &err),
            }
        }
        "twist" => {
            let pair = match parse_pair(&flags) {
                Ok(p) => p,
                Err(e) => return usage_error(out, &e),
            };
            let d = match flags.get("d") {
                Ok(d) => d.to_string(),
                Err(e) => return usage_error(out, &e),
            };
            let probe = flags.get_opt("probe").map(|s| s.to_string());
            match pair.and_then(|p| run_twist(&p, &d, probe.as_deref())) {
                Ok(report) => {
                    emit_report(out, &report, json);
                    0
                }
                Err(err) => emit_error(out, &err),
            }
        }
        "twist-detect" => {
            let parsed = (|| -> std::result::Result<_, String> {
                let m: u32 = flags.get("m")?.parse().map_err(|_| "bad --m".to_string())?;
                let n: u32 = flags.get("n")?.parse().map_err(|_| "bad --n".to_string())?;
                Ok((
                    flags.get("A1")?.to_string(),
                    flags.get("B1")?.to_string(),
                    flags.get("A2")?.to_string(),
                    flags.get("B2")?.to_string(),
                    m,
                    n,
                ))
            })();
            let (a1, b1, a2, b2, m, n) = match parsed {
                Ok(v) => v,
                Err(e) => return usage_error(out, &e),
            };
            let result = (|| -> Result<serde_json::Value> {
                let p1 = build_pair(&a1, &b1, m, n)?;
                let p2 = build_pair(&a2, &b2, m, n)?;
                Ok(match detect_twist(&p1, &p2)? {
                    Some(det) => serde_json::json!({
                        "class": det.class.d.to_string(),
                        "ambiguous": det.ambiguous,
                    }),
                    None => serde_json::json!({ "class": null }),
                })
            })();
            match result {
                Ok(value) => {
                    let _ = writeln!(out, "{value}");
                    0
                }
                Err(err) => emit_error(out, &err),
            }
        }
        "height" => {
            let pair = match parse_pair(&flags) {
                Ok(p) => p,
                Err(e) => return usage_error(out, &e),
            };
            let (x, y) = match (flags.get("x"), flags.get("y")) {
                (Ok(x), Ok(y)) => (x.to_string(), y.to_string()),
                (Err(e), _) | (_, Err(e)) => return usage_error(out, &e),
            };
            let result = pair.and_then(|p| {
                let (xn, xd) = parse_section_coord(&x)?;
                let (yn, yd) = parse_section_coord(&y)?;
                let section = Section::new(xn, xd, yn, yd)?;
                let report = analyze(&p)?;
                report.with_height(&p, &section)
            });
            match result {
                Ok(report) => {
                    emit_report(out, &report, json);
                    0
                }
                Err(err) => emit_error(out, &err),
            }
        }
        "torsion-bound" => {
            let pair = match parse_pair(&flags) {
                Ok(p) => p,
                Err(e) => return usage_error(out, &e),
            };
            let t0 = match flags.get("t0") {
                Ok(v) => v.to_string(),
                Err(e) => return usage_error(out, &e),
            };
            let primes_text = match flags.get("primes") {
                Ok(v) => v.to_string(),
                Err(e) => return usage_error(out, &e),
            };
            let primes: std::result::Result<Vec<u64>, _> =
                primes_text.split(',').map(|s| s.trim().parse::<u64>()).collect();
            let Ok(primes) = primes else {
                return usage_error(out, "bad --primes (expect comma-separated integers)");
            };
            let result = pair.and_then(|p| {
                let t0 = parse_rat(&t0)?;
                let bound = torsion_bound(&p, &t0, &primes)?;
                let mut report = analyze(&p)?;
                report.torsion = Some(TorsionReport {
                    t0: rat_to_string(&t0),
                    primes: primes.clone(),
                    bound,
                });
                Ok(report)
            });
            match result {
                Ok(report) => {
                    emit_report(out, &report, json);
                    0
                }
                Err(err) => emit_error(out, &err),
            }
        }
        "sample" => run_sample(&flags, out, json),
        "mahler" => {
            let poly_text = match flags.get("poly") {
                Ok(v) => v.to_string(),
                Err(e) => return usage_error(out, &e),
            };
            let tol = match flags.get_opt("tol") {
                Some(t) => match t.parse::<f64>() {
                    Ok(v) => v,
                    Err(_) => return usage_error(out, "bad --tol"),
                },
                None => DEFAULT_TOL,
            };
            let result = parse_poly(&poly_text).and_then(|f| mahler_measure(&f, tol));
            match result {
                Ok(est) => {
                    let value = serde_json::json!({
                        "value": est.value,
                        "tol": est.tol,
                        "error_bound": est.error_bound,
                    });
                    let _ = writeln!(out, "{value}");
                    0
                }
                Err(err) => emit_error(out, &err),
            }
        }
        other => usage_error(out, &format!("unknown command '{other}'")),
    }
}

fn analyze(pair: &WeierstrassPair) -> Result<SurfaceReport> {
    if !pair.classify_membership().in_s() {
        return Err(Error::NotAnEllipticSurface);
    }
    SurfaceReport::build(pair)
}

fn run_twist(pair: &WeierstrassPair, d: &str, probe: Option<&str>) -> Result<SurfaceReport> {
    let d = parse_rat(d)?;
    let twisted = twist(pair, &d)?;
    let mut report = SurfaceReport::build(pair)?;
    let mut entries = vec![crate::report::TwistEntryReport {
        d: 0, // placeholder replaced below when d is integral
        in_u: twisted.classify_membership().is_u(),
        isomorphic: crate::twist::isomorphic_constant_scaling(pair, &twisted),
        a: twisted.a().to_string(),
        b: twisted.b().to_string(),
    }];
    if d.is_integer() {
        entries[0].d = num_traits::ToPrimitive::to_i64(d.numer()).unwrap_or(0);
    }
    if let Some(list) = probe {
        let ds: std::result::Result<Vec<i64>, _> =
            list.split(',').map(|s| s.trim().parse::<i64>()).collect();
        let ds = ds.map_err(|_| Error::ZeroTwist)?;
        let rows = tw_probe(pair, &ds)?;
        entries.extend(crate::report::twist_entries(pair, &rows));
    }
    report.twists = Some(entries);
    Ok(report)
}

fn run_sample(flags: &Flags, out: &mut dyn Write, json: bool) -> i32 {
    let parsed = (|| -> std::result::Result<
        (BoxSpec, usize, Option<String>, bool),
        String,
    > {
        let m: u32 = flags.get("m")?.parse().map_err(|_| "bad --m".to_string())?;
        let n: u32 = flags.get("n")?.parse().map_err(|_| "bad --n".to_string())?;
        let bound = flags.get("bound")?.to_string();
        let measure = match flags.get_opt("measure").unwrap_or("naive") {
            "naive" => Measure::Naive,
            "mahler" => Measure::Mahler,
            other => return Err(format!("bad --measure '{other}'")),
        };
        let mode = match flags.get_opt("mode").unwrap_or("sample") {
            "sample" => {
                let count: u64 = flags
                    .get_opt("count")
                    .unwrap_or("1000")
                    .parse()
                    .map_err(|_| "bad --count".to_string())?;
                let seed: u64 = flags
                    .get_opt("seed")
                    .unwrap_or("0")
                    .parse()
                    .map_err(|_| "bad --seed".to_string())?;
                Mode::Sample { count, seed }
            }
            "exhaustive" => Mode::Exhaustive,
            other => return Err(format!("bad --mode '{other}'")),
        };
        let workers: usize = flags
            .get_opt("workers")
            .unwrap_or("1")
            .parse()
            .map_err(|_| "bad --workers".to_string())?;
        let bound = parse_rat(&bound).map_err(|e| e.to_string())?;
        let spec = BoxSpec { m, n, bound, measure, mode };
        Ok((
            spec,
            workers,
            flags.get_opt("out").map(|s| s.to_string()),
            flags.has("analysis"),
        ))
    })();
    let (spec, workers, out_path, with_analysis) = match parsed {
        Ok(v) => v,
        Err(e) => return usage_error(out, &e),
    };
    let keep = out_path.is_some();
    match crate::family::run_box(&spec, with_analysis, workers, keep) {
        Ok((report, records)) => {
            if let (Some(path), Some(records)) = (out_path, records) {
                let mut body = records.join("\n");
                if !body.is_empty() {
                    body.push('\n');
                }
                if let Err(e) = std::fs::write(&path, body) {
                    let _ = writeln!(
                        out,
                        "{}",
                        serde_json::json!({ "error": "io", "detail": e.to_string() })
                    );
                    return 1;
                }
            }
            let doc = if json {
                serde_json::to_string(&report).expect("report serialization")
            } else {
                serde_json::to_string_pretty(&report).expect("report serialization")
            };
            let _ = writeln!(out, "{doc}");
            0
        }
        Err(err) => emit_error(out, &err),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String) {
        let args: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        let mut buf = Vec::new();
        let code = run(&args, &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn analyze_reports_config_and_rank_bound() {
        let (code, out) =
            run_capture(&["analyze", "--A", "t", "--B", "1", "--m", "1", "--n", "1", "--json"]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(doc["rank_bound"], 1);
        assert_eq!(doc["membership"]["class"], "U");
        let config = doc["configuration"].as_array().unwrap();
        let types: Vec<&str> = config.iter().map(|e| e["type"].as_str().unwrap()).collect();
        assert!(types.contains(&"I1") && types.contains(&"III*"));
    }

    #[test]
    fn analyze_not_in_s_exits_1_with_record() {
        let (code, out) =
            run_capture(&["analyze", "--A", "-3", "--B", "2", "--m", "1", "--n", "1"]);
        assert_eq!(code, 1);
        let doc: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(doc["error"], "not_in_S");
    }

    #[test]
    fn twist_subcommand_matches_formula() {
        let (code, out) = run_capture(&[
            "twist", "--A", "t", "--B", "1", "--m", "1", "--n", "1", "--d", "2", "--json",
        ]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        let tw = &doc["twists"][0];
        assert_eq!(tw["a"], "4*t");
        assert_eq!(tw["b"], "8");
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _) = run_capture(&["analyze", "--A", "t"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&["frobnicate"]);
        assert_eq!(code, 2);
        let (code, _) = run_capture(&[]);
        assert_eq!(code, 2);
    }

    #[test]
    fn height_subcommand_certifies_example_point() {
        let (code, out) = run_capture(&[
            "height", "--A", "0", "--B", "-7*t^6 + 2*t^3 + 1", "--m", "4", "--n", "6", "--x",
            "2*t^2", "--y", "t^3 + 1", "--json",
        ]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(doc["height"]["lower"], "2");
        assert_eq!(doc["height"]["exact"], true);
    }

    #[test]
    fn torsion_subcommand() {
        let (code, out) = run_capture(&[
            "torsion-bound", "--A", "t", "--B", "0", "--m", "1", "--n", "1", "--t0", "1",
            "--primes", "3,5", "--json",
        ]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(doc["torsion"]["bound"], 4);
    }

    #[test]
    fn mahler_subcommand() {
        let (code, out) = run_capture(&["mahler", "--poly", "t^2 - 2"]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        let v = doc["value"].as_f64().unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn twist_detect_subcommand() {
        let (code, out) = run_capture(&[
            "twist-detect", "--A1", "t", "--B1", "1", "--A2", "4*t", "--B2", "8", "--m", "1",
            "--n", "1",
        ]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(doc["class"], "2");
    }

    #[test]
    fn sample_subcommand_summary() {
        let (code, out) = run_capture(&[
            "sample", "--m", "1", "--n", "1", "--bound", "1", "--mode", "exhaustive", "--json",
        ]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(doc["total"], 81);
        let not_in_s = doc["not_in_s"].as_u64().unwrap();
        let s_only = doc["s_only"].as_u64().unwrap();
        let in_u = doc["in_u"].as_u64().unwrap();
        assert_eq!(not_in_s + s_only + in_u, 81);
    }
}
