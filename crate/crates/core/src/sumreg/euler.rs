//! Euler transform of series.
//!
//! For raw terms `c_0 + c_1 + c_2 + ...` the transform reads
//! `sum_k 2^(-(k+1)) sum_m C(k,m) c_m`; writing `c_n = (-1)^n a_n` this is
//! the classical `sum_k D^k a_0 / 2^(k+1)` with the alternating difference
//! `D a = a_0 - a_1`. For alternating-polynomial terms the differences
//! terminate and the value is exact.

use num_bigint::BigInt;

use crate::exactnum::Rational;
use crate::{Error, Result};

use super::{Method, RegularizedValue, SequenceSpec, SumConfig};

pub(crate) fn euler_sum(spec: &SequenceSpec, cfg: &SumConfig) -> Result<RegularizedValue> {
    match spec {
        SequenceSpec::AlternatingPolynomial(p) => {
            // D^k a_0 = (-1)^k * (forward difference)^k p(0): the transform
            // terminates at deg p.
            let diffs = p.forward_differences_at_zero();
            let mut acc = Rational::zero();
            let mut denom = Rational::new(1, 2);
            for (k, d) in diffs.iter().enumerate() {
                let term = d * &denom;
                if k % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
                denom *= Rational::new(1, 2);
            }
            Ok(exact_value(acc))
        }
        SequenceSpec::AlternatingTrig { .. } => Err(Error::UnsupportedSequence {
            operation: "euler_transform_sum",
        }),
        _ => numeric_transform(spec, cfg),
    }
}

fn exact_value(exact: Rational) -> RegularizedValue {
    let value = exact.to_f64();
    let error_estimate = if exact.is_zero() {
        0.0
    } else {
        f64::EPSILON * (1.0 + value.abs())
    };
    RegularizedValue {
        value,
        method: Method::EulerTransform,
        error_estimate,
        exact: Some(exact),
    }
}

/// Exact binomial-transform partial sums with numeric settling detection.
fn numeric_transform(spec: &SequenceSpec, cfg: &SumConfig) -> Result<RegularizedValue> {
    let tol = cfg.series_tolerance;
    let mut terms: Vec<Rational> = Vec::new();
    let mut pascal: Vec<BigInt> = vec![BigInt::from(1)];
    let mut partial = Rational::zero();
    let mut recent: Vec<f64> = Vec::new();
    let mut quiet = 0u32;
    for k in 0..cfg.euler_max_depth {
        if k > 0 {
            // Next Pascal row C(k, .) in place.
            pascal.push(BigInt::from(1));
            for m in (1..pascal.len() - 1).rev() {
                let left = pascal[m - 1].clone();
                pascal[m] += left;
            }
        }
        let term_k = spec.exact_term(u64::from(k)).ok_or(Error::UnsupportedSequence {
            operation: "euler_transform_sum",
        })?;
        terms.push(term_k);
        let mut transformed = Rational::zero();
        for (m, c) in pascal.iter().enumerate() {
            transformed += Rational::from(c.clone()) * &terms[m];
        }
        let entry = transformed / Rational::from_int(2).pow(k as i32 + 1);
        partial += &entry;
        let mag = entry.to_f64().abs();
        recent.push(mag);
        if recent.len() > 6 {
            recent.remove(0);
        }
        let scale = 1.0 + partial.to_f64().abs();
        if mag <= 0.25 * tol * scale {
            quiet += 1;
            if quiet >= 4 {
                // Geometric tail bound from the observed decay ratio.
                let ratio = decay_ratio(&recent).min(0.9);
                let tail = recent.last().unwrap() * (ratio / (1.0 - ratio)).max(1.0) * 2.0;
                let value = partial.to_f64();
                return Ok(RegularizedValue {
                    value,
                    method: Method::EulerTransform,
                    error_estimate: tail + f64::EPSILON * scale,
                    exact: None,
                });
            }
        } else {
            quiet = 0;
        }
        // Transformed terms racing away will not come back within budget.
        if mag > 1e9 * scale {
            break;
        }
    }
    Err(Error::TransformNotSettling {
        depth: cfg.euler_max_depth,
    })
}

fn decay_ratio(recent: &[f64]) -> f64 {
    let mut ratio: f64 = 0.0;
    for w in recent.windows(2) {
        if w[0] > 0.0 {
            ratio = ratio.max(w[1] / w[0]);
        }
    }
    if ratio == 0.0 {
        0.5
    } else {
        ratio
    }
}
