//! Iterated Cesàro means of partial sums, with parity-split extrapolation.
//!
//! Means are sampled at counts `2^j` and `2^j + 1` and each parity class is
//! Richardson-extrapolated in `1/N` separately. Convergent means agree
//! across the classes; oscillating means (the signature of a series that is
//! not summable at this order) land on different parity limits and are
//! reported as not settling. Sampling a single parity would be fooled: the
//! even-count means of `1 - 2 + 3 - ...` are identically zero.

use crate::{Error, Result};

use super::abel::richardson;
use super::{Method, RegularizedValue, SequenceSpec, SumConfig};

pub(crate) fn cesaro_sum(
    spec: &SequenceSpec,
    order: u32,
    cfg: &SumConfig,
) -> Result<RegularizedValue> {
    if order == 0 || order > 4 {
        return Err(Error::InvalidParameters(format!(
            "Cesaro order must be in 1..=4, got {order}"
        )));
    }
    let term = spec.term_f64_fn();
    let j_min = 6u32;
    let j_max = cfg.cesaro_max_log2.max(j_min + 4);
    let total = (1u64 << j_max) + 1;

    let mut partial = 0.0f64;
    let mut level_sums = vec![0.0f64; order as usize];
    let mut even_nodes = Vec::new();
    let mut odd_nodes = Vec::new();
    // Once the terms have underflowed f64 for a stretch, the tail cannot
    // move the partial sum again; stop paying for exact-arithmetic term
    // construction and feed zeros.
    let mut zero_run = 0u32;
    for n in 0..total {
        if zero_run < 32 {
            let t = term(n);
            if t == 0.0 {
                zero_run += 1;
            } else {
                zero_run = 0;
            }
            partial += t;
        }
        let mut mean = partial;
        let count = (n + 1) as f64;
        for level in level_sums.iter_mut() {
            *level += mean;
            mean = *level / count;
        }
        let count_u = n + 1;
        if count_u >= (1 << j_min) {
            if count_u.is_power_of_two() {
                even_nodes.push(node(mean, count_u));
            } else if (count_u - 1).is_power_of_two() {
                odd_nodes.push(node(mean, count_u));
            }
        }
    }
    let (even_value, even_err) = richardson(&even_nodes, 3);
    let (odd_value, odd_err) = richardson(&odd_nodes, 3);
    let parity_gap = (even_value - odd_value).abs();
    let value = 0.5 * (even_value + odd_value);
    let error_estimate = 2.0 * parity_gap + even_err + odd_err;
    if !value.is_finite() || error_estimate > cfg.series_tolerance {
        return Err(Error::CesaroNotSettling { terms: total });
    }
    Ok(RegularizedValue {
        value,
        method: Method::Cesaro,
        error_estimate,
        exact: None,
    })
}

fn node(mean: f64, count: u64) -> super::abel::NodeEval {
    super::abel::NodeEval {
        value: mean,
        noise: f64::EPSILON * (count as f64).sqrt() * (1.0 + mean.abs()),
    }
}
