//! Command implementations. Each builds an [`OutputRecord`]; errors are
//! split into usage problems (exit 2) and method failures (exit 3).

use std::collections::BTreeMap;

use regsum::binomial_endpoint::{
    binomial_partial_sum, endpoint_value, remainder, remainder_identity_check,
    series_coefficient_polynomial, RemainderQuery,
};
use regsum::exactnum::Rational;
use regsum::hyperseries::{
    classify_endpoint, classify_radius, Endpoint, HypergeometricParams, RadiusRule, Verdict,
};
use regsum::sumreg::{
    abel_sum, cesaro_sum, euler_transform_sum, generalized_limit, RegularizedValue, SequenceSpec,
    SumConfig,
};
use regsum::zline::{
    direct_sum, resolve_range, sum_over_range, GeneratingFunction, RangeResolution,
};
use regsum::Error as LibError;

use crate::descriptor;
use crate::output::{OutputRecord, RemainderRow, ResultEntry};

/// Errors carrying the exit-code contract: usage/parameter problems exit 2,
/// method failures exit 3, I/O failures exit 1.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    MethodFailure(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::MethodFailure(_) => 3,
            CliError::Io(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::MethodFailure(m) | CliError::Io(m) => m,
        }
    }
}

fn usage(e: impl ToString) -> CliError {
    CliError::Usage(e.to_string())
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.parse::<Rational>().map_err(usage)
}

fn parse_rational_list(s: &str) -> Result<Vec<Rational>, CliError> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(|p| parse_rational(p.trim())).collect()
}

fn regularized_entry(name: &str, v: &RegularizedValue) -> ResultEntry {
    let mut entry = ResultEntry::named(name)
        .with_method(v.method.to_string())
        .with_value(v.value)
        .with_error(v.error_estimate);
    if let Some(exact) = &v.exact {
        entry = entry.with_exact(exact.to_string());
    }
    entry
}

pub fn cmd_classify(upper: &str, lower: &str, x: &str) -> Result<OutputRecord, CliError> {
    let upper_list = parse_rational_list(upper)?;
    let lower_list = parse_rational_list(lower)?;
    let x_value = parse_rational(x)?;
    let params =
        HypergeometricParams::new(upper_list.clone(), lower_list.clone()).map_err(usage)?;
    let inputs = BTreeMap::from([
        ("upper".to_string(), join_rationals(&upper_list)),
        ("lower".to_string(), join_rationals(&lower_list)),
        ("x".to_string(), x_value.to_string()),
    ]);
    let s = params.parameter_excess();
    let one = Rational::one();
    let endpoint = if x_value == one {
        Some(Endpoint::PlusOne)
    } else if x_value == -&one {
        Some(Endpoint::MinusOne)
    } else {
        None
    };
    let radius = classify_radius(params.p(), params.q());
    let (verdict, rule): (String, String) = match endpoint {
        Some(ep) if params.p() == params.q() + 1 => match classify_endpoint(&params, ep) {
            Ok(v) => (v.verdict.to_string(), v.branch.to_string()),
            Err(LibError::TerminatingSeries { param }) => (
                Verdict::AbsolutelyConvergent.to_string(),
                format!("terminating series (upper parameter {param}), finite sum"),
            ),
            Err(e) => return Err(usage(e)),
        },
        _ => {
            // Inside the disk (or beyond it) only the radius rule speaks.
            let inside = x_value.abs() < one;
            let verdict = match radius {
                RadiusRule::ConvergesAllX => Verdict::AbsolutelyConvergent,
                RadiusRule::ConvergesUnitDisk if inside => Verdict::AbsolutelyConvergent,
                RadiusRule::ConvergesOnlyAtZero if x_value.is_zero() => {
                    Verdict::AbsolutelyConvergent
                }
                _ if x_value.is_zero() => Verdict::AbsolutelyConvergent,
                _ => Verdict::Divergent,
            };
            (verdict.to_string(), radius.to_string())
        }
    };
    Ok(OutputRecord {
        command: "classify".into(),
        inputs,
        results: vec![
            ResultEntry::named("verdict").with_note(verdict),
            ResultEntry::named("rule").with_note(rule),
            ResultEntry::named("parameter_excess")
                .with_exact(s.to_string())
                .with_value(s.to_f64()),
        ],
        rows: None,
    })
}

fn join_rationals(list: &[Rational]) -> String {
    list.iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

pub fn cmd_endpoint(a: i64, x: &str, cfg: &SumConfig) -> Result<OutputRecord, CliError> {
    let x_value = parse_rational(x)?;
    let value = endpoint_value(a, &x_value).map_err(usage)?;
    let inputs = BTreeMap::from([
        ("a".to_string(), a.to_string()),
        ("x".to_string(), x_value.to_string()),
    ]);
    let mut results = vec![ResultEntry::named("endpoint_value")
        .with_exact(value.to_string())
        .with_value(value.to_f64())];
    if a < 0 && x_value == Rational::one() {
        // Regularized cross-checks on the divergent series itself.
        let m = u32::try_from(-a).map_err(usage)?;
        let series =
            SequenceSpec::alternating_polynomial(series_coefficient_polynomial(m));
        match abel_sum(&series, cfg) {
            Ok(v) => results.push(regularized_entry("abel_cross_check", &v)),
            Err(e) => {
                results.push(ResultEntry::named("abel_cross_check").with_note(format!("failed: {e}")))
            }
        }
        match euler_transform_sum(&series, cfg) {
            Ok(v) => results.push(regularized_entry("euler_cross_check", &v)),
            Err(e) => results
                .push(ResultEntry::named("euler_cross_check").with_note(format!("failed: {e}"))),
        }
    }
    Ok(OutputRecord {
        command: "endpoint".into(),
        inputs,
        results,
        rows: None,
    })
}

pub struct RemainderArgs<'a> {
    pub m: u32,
    pub k_max: u32,
    pub x: &'a str,
    pub plot: Option<&'a std::path::Path>,
}

pub fn cmd_remainder(args: &RemainderArgs<'_>) -> Result<OutputRecord, CliError> {
    let x_value = parse_rational(args.x)?;
    // Validate once up front; the pole at x = -1 and m = 0 land here.
    RemainderQuery::new(args.m, 0, x_value.clone()).map_err(usage)?;
    let mut rows = Vec::with_capacity(args.k_max as usize + 1);
    for k in 0..=args.k_max {
        let q = RemainderQuery::new(args.m, k, x_value.clone()).map_err(usage)?;
        rows.push(RemainderRow {
            k,
            partial_sum: binomial_partial_sum(&q).to_string(),
            remainder: remainder(&q).to_string(),
            identity_ok: remainder_identity_check(&q),
        });
    }
    let target = (Rational::one() + &x_value).pow(-(args.m as i32));
    let record = OutputRecord {
        command: "remainder".into(),
        inputs: BTreeMap::from([
            ("m".to_string(), args.m.to_string()),
            ("k_max".to_string(), args.k_max.to_string()),
            ("x".to_string(), x_value.to_string()),
        ]),
        results: vec![ResultEntry::named("target")
            .with_exact(target.to_string())
            .with_value(target.to_f64())
            .with_note("(1+x)^(-m), the value split as partial_sum + remainder")],
        rows: Some(rows),
    };
    if let Some(path) = args.plot {
        write_plot(path, &record, args.m, &x_value)?;
    }
    Ok(record)
}

fn write_plot(
    path: &std::path::Path,
    record: &OutputRecord,
    m: u32,
    x: &Rational,
) -> Result<(), CliError> {
    use std::fmt::Write as _;
    let mut data = String::from("# k abs_remainder\n");
    for row in record.rows.as_deref().unwrap_or_default() {
        let q = RemainderQuery::new(m, row.k, x.clone()).expect("validated above");
        let _ = writeln!(data, "{} {:e}", row.k, remainder(&q).abs().to_f64());
    }
    std::fs::write(path, data).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let meta = serde_json::json!({
        "command": record.command,
        "inputs": record.inputs,
        "columns": ["k", "abs_remainder"],
    });
    let meta_path = path.with_extension(match path.extension() {
        Some(ext) => format!("{}.meta.json", ext.to_string_lossy()),
        None => "meta.json".to_string(),
    });
    std::fs::write(&meta_path, format!("{meta:#}\n"))
        .map_err(|e| CliError::Io(format!("{}: {e}", meta_path.display())))?;
    Ok(())
}

pub struct SumArgs<'a> {
    pub alt_poly: Option<&'a str>,
    pub terms: Option<&'a str>,
    pub trig: Option<&'a str>,
    pub methods: &'a str,
}

pub fn cmd_sum(args: &SumArgs<'_>, cfg: &SumConfig) -> Result<OutputRecord, CliError> {
    let mut inputs = BTreeMap::new();
    let spec = match (args.alt_poly, args.terms, args.trig) {
        (Some(expr), None, None) => {
            inputs.insert("alt_poly".to_string(), expr.to_string());
            let parsed = descriptor::parse_expr(expr).map_err(usage)?;
            let form = descriptor::to_poly_form(&parsed)
                .ok_or_else(|| usage("--alt-poly needs a polynomial expression in n"))?;
            if form.alternating {
                return Err(usage(
                    "--alt-poly takes the unsigned polynomial; the alternating sign is implied",
                ));
            }
            SequenceSpec::alternating_polynomial(form.poly)
        }
        (None, Some(list), None) => {
            inputs.insert("terms".to_string(), list.to_string());
            descriptor::parse_terms(list).map_err(usage)?
        }
        (None, None, Some(desc)) => {
            inputs.insert("trig".to_string(), desc.to_string());
            let (m, theta) = descriptor::parse_trig(desc).map_err(usage)?;
            SequenceSpec::alternating_trig(m, theta).map_err(usage)?
        }
        _ => {
            return Err(usage(
                "exactly one of --alt-poly, --terms, --trig must be given",
            ))
        }
    };
    inputs.insert("methods".to_string(), args.methods.to_string());
    let mut results = Vec::new();
    let mut failures = 0usize;
    let mut requested = 0usize;
    for method in args.methods.split(',') {
        requested += 1;
        let method = method.trim();
        let outcome = match method {
            "abel" => abel_sum(&spec, cfg),
            "euler" => euler_transform_sum(&spec, cfg),
            "cesaro" => cesaro_sum(&spec, 1, cfg),
            other => return Err(usage(format!("unknown method {other:?}"))),
        };
        match outcome {
            Ok(v) => results.push(regularized_entry(method, &v)),
            Err(e) => {
                failures += 1;
                results.push(ResultEntry::named(method).with_note(format!("failed: {e}")));
            }
        }
    }
    if requested == 0 || failures == requested {
        return Err(CliError::MethodFailure(
            "every requested method failed".into(),
        ));
    }
    Ok(OutputRecord {
        command: "sum".into(),
        inputs,
        results,
        rows: None,
    })
}

pub fn cmd_limit(seq: &str, cfg: &SumConfig) -> Result<OutputRecord, CliError> {
    let spec = descriptor::parse_sequence(seq, 1).map_err(usage)?;
    let inputs = BTreeMap::from([("seq".to_string(), seq.to_string())]);
    match generalized_limit(&spec, cfg) {
        Ok(v) => Ok(OutputRecord {
            command: "limit".into(),
            inputs,
            results: vec![regularized_entry("limit", &v)],
            rows: None,
        }),
        Err(e @ (LibError::NoStableLimit(_) | LibError::CesaroNotSettling { .. })) => {
            Err(CliError::MethodFailure(e.to_string()))
        }
        Err(e) => Err(usage(e)),
    }
}

pub fn cmd_zsum(family: &str, a: i64, b: i64) -> Result<OutputRecord, CliError> {
    const BOUND: i64 = 1 << 40;
    if a.abs() > BOUND || b.abs() > BOUND {
        return Err(usage(format!(
            "range endpoints must lie within +/-{BOUND}"
        )));
    }
    let g = builtin_family(family)?;
    let range = resolve_range(a, b);
    let total = sum_over_range(&g, a, b);
    let inputs = BTreeMap::from([
        ("f".to_string(), family.to_string()),
        ("a".to_string(), a.to_string()),
        ("b".to_string(), b.to_string()),
    ]);
    let mut results = vec![ResultEntry::named("sum")
        .with_exact(total.to_string())
        .with_value(total.to_f64())];
    match &range.resolution {
        RangeResolution::Finite(members) => {
            let rendered = members
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(",");
            results.push(ResultEntry::named("range").with_note(format!("{{{rendered}}}")));
            let direct = direct_sum(&g, members);
            let note = if direct == total {
                "ok (matches the assigned sum)".to_string()
            } else {
                format!("MISMATCH: direct sum {direct}")
            };
            results.push(ResultEntry::named("direct_sum_check").with_note(note));
        }
        RangeResolution::Infinite { description } => {
            results.push(ResultEntry::named("range").with_note(description.clone()));
        }
    }
    Ok(OutputRecord {
        command: "zsum".into(),
        inputs,
        results,
        rows: None,
    })
}

fn builtin_family(name: &str) -> Result<GeneratingFunction, CliError> {
    match name {
        "identity" => Ok(GeneratingFunction::identity()),
        "one" => Ok(GeneratingFunction::one()),
        "square" => Ok(GeneratingFunction::square()),
        "cube" => Ok(GeneratingFunction::cube()),
        "alternating" => Ok(GeneratingFunction::alternating()),
        other => {
            if let Some(expr) = other.strip_prefix("poly:") {
                let parsed = descriptor::parse_expr(expr).map_err(usage)?;
                let form = descriptor::to_poly_form(&parsed)
                    .filter(|f| !f.alternating)
                    .ok_or_else(|| usage("poly: family needs a plain polynomial in n"))?;
                Ok(GeneratingFunction::from_polynomial(form.poly))
            } else {
                Err(usage(format!(
                    "unknown family {other:?} (expected identity, one, square, cube, alternating, or poly:<expr>)"
                )))
            }
        }
    }
}
