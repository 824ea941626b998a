//! Abel-mean evaluation on the dyadic grid `x_j = 1 - 2^(-j)` with
//! Richardson extrapolation.
//!
//! Structured kinds are evaluated at each grid point through exact closed
//! forms built on Newton's form: with `d_i` the forward differences of `p`
//! at 0, `sum_{n>=0} p(n) t^n = sum_i d_i t^i / (1-t)^(i+1)`. Summing a
//! divergent alternating series term by term in floating point would lose
//! everything to cancellation on the fine end of the grid; the closed forms
//! are exact rationals (or a short complex expression for the trig family).
//! Explicitly given series fall back to adaptive truncated summation with a
//! recorded noise floor and a per-node term budget.

use num_complex::Complex64;

use crate::exactnum::{Polynomial, Rational};
use crate::{Error, Result};

use super::{SequenceSpec, SumConfig};

#[derive(Clone, Copy, Debug)]
pub(crate) struct NodeEval {
    pub value: f64,
    pub noise: f64,
}

fn grid_point(j: u32) -> Rational {
    Rational::one() - Rational::from_int(2).pow(-(j as i32))
}

/// `sum_{n>=0} p(n) t^n` in closed form: `sum_i d_i t^i / (1-t)^(i+1)`.
fn poly_power_series(p: &Polynomial, t: &Rational) -> Rational {
    let diffs = p.forward_differences_at_zero();
    let one_minus_t = Rational::one() - t;
    let mut acc = Rational::zero();
    let mut t_pow = Rational::one();
    for (i, d) in diffs.iter().enumerate() {
        acc += d * &t_pow * one_minus_t.pow(-(i as i32 + 1));
        t_pow *= t;
    }
    acc
}

/// `sum_{n>=1} (-1)^(n-1) n^(2m-1) sin(n theta) x^n`
/// `= -Im sum_{n>=0} n^(2m-1) t^n` with `t = -x e^(i theta)`.
fn alt_trig_power_series(order: u32, theta: f64, x: f64) -> f64 {
    let exponent = (2 * order - 1) as usize;
    let diffs = Polynomial::monomial(Rational::one(), exponent).forward_differences_at_zero();
    let t = -Complex64::from_polar(x, theta);
    let one_minus_t = Complex64::new(1.0, 0.0) - t;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut t_pow = Complex64::new(1.0, 0.0);
    for (i, d) in diffs.iter().enumerate() {
        acc += d.to_f64() * t_pow / one_minus_t.powi(i as i32 + 1);
        t_pow *= t;
    }
    -acc.im
}

/// Adaptive truncated `sum_{n>=start} f(n) x^n` in f64 with Kahan
/// compensation. `None` when the term budget runs out before the tail falls
/// below the cutoff.
fn explicit_power_series(
    f: &super::ExplicitFn,
    start: u64,
    x: f64,
    max_terms: u64,
) -> Option<NodeEval> {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut sum_abs = 0.0f64;
    let mut x_pow = x.powi(start as i32);
    let mut quiet = 0u32;
    let mut n = start;
    loop {
        if n - start >= max_terms {
            return None;
        }
        let term = f(n).to_f64() * x_pow;
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        sum_abs += term.abs();
        if term.abs() < 1e-18 * (1.0 + sum.abs()) {
            quiet += 1;
            if quiet >= 12 {
                break;
            }
        } else {
            quiet = 0;
        }
        x_pow *= x;
        n += 1;
    }
    Some(NodeEval {
        value: sum,
        noise: 4.0 * f64::EPSILON * sum_abs,
    })
}

/// Abel function of the series `sum spec(n) x^n` at the j-th grid point.
fn series_node(spec: &SequenceSpec, j: u32, cfg: &SumConfig) -> Option<NodeEval> {
    match spec {
        SequenceSpec::AlternatingPolynomial(p) => {
            let x = grid_point(j);
            let v = poly_power_series(p, &-&x);
            Some(exact_node(v))
        }
        SequenceSpec::Even(mu) => {
            let x = grid_point(j);
            let v = poly_power_series(mu, &x);
            Some(exact_node(v))
        }
        SequenceSpec::AlternatingTrig { order, theta } => {
            let x = grid_point(j).to_f64();
            let v = alt_trig_power_series(*order, *theta, x);
            Some(NodeEval {
                value: v,
                noise: 64.0 * f64::EPSILON * (1.0 + v.abs()),
            })
        }
        SequenceSpec::Explicit(f) => {
            explicit_power_series(f, 0, grid_point(j).to_f64(), cfg.abel_max_terms)
        }
    }
}

/// `(1-x) * sum_{n>=1} spec(n) x^n` at the j-th grid point (the Abel mean of
/// the sequence).
fn mean_node(spec: &SequenceSpec, j: u32, cfg: &SumConfig) -> Option<NodeEval> {
    let weight = Rational::from_int(2).pow(-(j as i32)); // 1 - x_j
    match spec {
        SequenceSpec::AlternatingPolynomial(p) => {
            let x = grid_point(j);
            let v = (poly_power_series(p, &-&x) - p.eval_int(0)) * weight;
            Some(exact_node(v))
        }
        SequenceSpec::Even(mu) => {
            let x = grid_point(j);
            let v = (poly_power_series(mu, &x) - mu.eval_int(0)) * weight;
            Some(exact_node(v))
        }
        SequenceSpec::AlternatingTrig { order, theta } => {
            let x = grid_point(j).to_f64();
            let v = alt_trig_power_series(*order, *theta, x) * weight.to_f64();
            Some(NodeEval {
                value: v,
                noise: 64.0 * f64::EPSILON * (1.0 + v.abs()),
            })
        }
        SequenceSpec::Explicit(f) => {
            explicit_power_series(f, 1, grid_point(j).to_f64(), cfg.abel_max_terms).map(|n| {
                NodeEval {
                    value: n.value * weight.to_f64(),
                    noise: n.noise * weight.to_f64() + f64::EPSILON,
                }
            })
        }
    }
}

fn exact_node(v: Rational) -> NodeEval {
    let value = v.to_f64();
    NodeEval {
        value,
        noise: 2.0 * f64::EPSILON * (1.0 + value.abs()),
    }
}

/// Richardson extrapolation in `h = 2^(-j)` over nodes ordered by ascending
/// `j`, eliminating `h, h^2, ..., h^order`. Each power is eliminated with a
/// doubled pass: the first application turns an `h^p ln h` term into a pure
/// `h^p` term and the second removes it, so logarithmic endpoint behavior
/// (Abel means of slowly convergent sequences) extrapolates cleanly too.
/// Returns the extrapolated value and an error estimate built from the last
/// increment and the node noise.
pub(crate) fn richardson(nodes: &[NodeEval], order: u32) -> (f64, f64) {
    let n = nodes.len();
    debug_assert!(n >= 3);
    let factors: Vec<f64> = (1..=order)
        .flat_map(|p| {
            let f = (1u64 << p) as f64;
            [f, f]
        })
        .collect();
    let levels = factors.len().min(n - 2);
    let mut table: Vec<Vec<f64>> = vec![nodes.iter().map(|e| e.value).collect()];
    for (l, factor) in factors.iter().take(levels).enumerate() {
        let prev = &table[l];
        let row: Vec<f64> = (1..prev.len())
            .map(|i| (factor * prev[i] - prev[i - 1]) / (factor - 1.0))
            .collect();
        table.push(row);
    }
    let last_row = &table[levels];
    let value = *last_row.last().expect("nonempty by construction");
    let increment = (value - last_row[last_row.len() - 2]).abs();
    let max_noise = nodes.iter().map(|e| e.noise).fold(0.0f64, f64::max);
    // Noise passes through the table amplified by at most
    // prod (factor+1)/(factor-1) over the levels, about 53 for the full
    // doubled-pass ladder; 64 covers it.
    let err = 6.0 * increment + 64.0 * max_noise + 8.0 * f64::EPSILON * (1.0 + value.abs());
    (value, err)
}

fn extrapolate(
    mut node_at: impl FnMut(u32) -> Option<NodeEval>,
    cfg: &SumConfig,
    tolerance: f64,
    what: &str,
) -> Result<(f64, f64)> {
    let mut nodes = Vec::new();
    for j in cfg.abel_grid_min..=cfg.abel_grid_max {
        match node_at(j) {
            Some(node) if node.value.is_finite() => nodes.push(node),
            // Budget exhausted or overflow: extrapolate from what we have.
            _ => break,
        }
    }
    if nodes.len() < 4 {
        return Err(Error::NoStableLimit(format!(
            "{what}: only {} usable grid nodes within the term budget",
            nodes.len()
        )));
    }
    let (value, err) = richardson(&nodes, cfg.richardson_order);
    if !value.is_finite() || !err.is_finite() || err > tolerance {
        return Err(Error::NoStableLimit(format!(
            "{what}: extrapolants do not settle (error estimate {err:.3e} vs tolerance {tolerance:.3e})"
        )));
    }
    Ok((value, err))
}

pub(crate) fn series_limit(spec: &SequenceSpec, cfg: &SumConfig) -> Result<(f64, f64)> {
    extrapolate(
        |j| series_node(spec, j, cfg),
        cfg,
        cfg.series_tolerance,
        "abel sum",
    )
}

pub(crate) fn mean_limit(spec: &SequenceSpec, cfg: &SumConfig) -> Result<(f64, f64)> {
    extrapolate(
        |j| mean_node(spec, j, cfg),
        cfg,
        cfg.limit_tolerance,
        "abel mean",
    )
}
