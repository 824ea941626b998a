//! Telescoper construction: closed forms `F` whose forward difference
//! reproduces a given alternating term family.
//!
//! - Polynomial: for `F(n) = (-1)^n q(n)` the identity
//!   `F(n+1) - F(n) = (-1)^n p(n)` reduces to `-q(n+1) - q(n) = p(n)`, a
//!   triangular linear system on the coefficients of `q` (always uniquely
//!   solvable, exactly, with `deg q = deg p`).
//! - Trigonometric: the ansatz
//!   `F(n) = (-1)^n (sum beta_u (n-1/2)^(2u-1) sin((n-1/2)theta)
//!          + sum betabar_u (n-1/2)^(2u) cos((n-1/2)theta))`
//!   matched against `F(n+1) - F(n) = (-1)^(n-1) n^(2m-1) sin(n theta)`
//!   yields a 2m x 2m system, solved in floating point since theta is
//!   irrational in general.

use crate::exactnum::{generalized_binomial, Polynomial, Rational};
use crate::{Error, Result};

/// Exact-rational `q` with `-q(n+1) - q(n) = p(n)`, so that
/// `F(n) = (-1)^n q(n)` satisfies `F(n+1) - F(n) = (-1)^n p(n)`.
pub fn find_alternating_telescoper(p: &Polynomial) -> Polynomial {
    if p.is_zero() {
        return Polynomial::zero();
    }
    let d = p.degree().expect("nonzero");
    let mut q = vec![Rational::zero(); d + 1];
    // Coefficient of n^j in q(n+1) + q(n): 2 q_j + sum_{i>j} C(i,j) q_i.
    for j in (0..=d).rev() {
        let mut tail = Rational::zero();
        for (i, qi) in q.iter().enumerate().skip(j + 1) {
            tail += qi * binom(i, j);
        }
        q[j] = (-(p.coeff(j)) - tail) / Rational::from_int(2);
    }
    let q = Polynomial::new(q);
    // Defining identity at 2*deg + 4 probe points; failure is a bug.
    for n in 0..(2 * d as i64 + 4) {
        let lhs = -(q.eval_int(n + 1)) - q.eval_int(n);
        assert_eq!(lhs, p.eval_int(n), "telescoper identity failed at n = {n}");
    }
    q
}

fn binom(n: usize, k: usize) -> Rational {
    generalized_binomial(&Rational::from_int(n as i64), k as u32)
}

/// Telescoper for the alternating trig family: coefficient lists
/// `beta_1..beta_m` and `betabar_0..betabar_(m-1)` such that
/// `F(n+1) - F(n) = (-1)^(n-1) n^(2m-1) sin(n theta)`.
#[derive(Clone, Debug)]
pub struct TrigTelescoper {
    order: u32,
    theta: f64,
    beta: Vec<f64>,
    beta_bar: Vec<f64>,
}

impl TrigTelescoper {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `beta_1..beta_m`.
    pub fn beta(&self) -> &[f64] {
        &self.beta
    }

    /// `betabar_0..betabar_(m-1)`.
    pub fn beta_bar(&self) -> &[f64] {
        &self.beta_bar
    }

    /// Evaluates the closed form `F(n)`.
    pub fn eval(&self, n: i64) -> f64 {
        let half = n as f64 - 0.5;
        let (sin_h, cos_h) = (half * self.theta).sin_cos();
        let mut acc = 0.0;
        for (u, b) in self.beta.iter().enumerate() {
            acc += b * half.powi(2 * (u as i32 + 1) - 1) * sin_h;
        }
        for (u, bb) in self.beta_bar.iter().enumerate() {
            acc += bb * half.powi(2 * u as i32) * cos_h;
        }
        if n.rem_euclid(2) == 0 {
            acc
        } else {
            -acc
        }
    }

    /// The target term `(-1)^(n-1) n^(2m-1) sin(n theta)`.
    pub fn target(&self, n: i64) -> f64 {
        let nf = n as f64;
        let v = nf.powi(2 * self.order as i32 - 1) * (nf * self.theta).sin();
        if n.rem_euclid(2) == 1 {
            v
        } else {
            -v
        }
    }

    /// `|F(n+1) - F(n) - target(n)|` at `n = 0..count`.
    pub fn residuals(&self, count: usize) -> Vec<f64> {
        (0..count as i64)
            .map(|n| (self.eval(n + 1) - self.eval(n) - self.target(n)).abs())
            .collect()
    }
}

/// Solves the 2m x 2m matching system for the trig telescoper.
/// `theta` must be nonzero and inside `(-pi, pi)`.
pub fn find_trig_telescoper(order: u32, theta: f64) -> Result<TrigTelescoper> {
    if order == 0 {
        return Err(Error::InvalidParameters("order must be >= 1".into()));
    }
    if theta == 0.0 || !(theta > -std::f64::consts::PI && theta < std::f64::consts::PI) {
        return Err(Error::InvalidParameters(format!(
            "theta = {theta} outside the open interval (-pi, pi) minus 0"
        )));
    }
    let m = order as usize;
    let half = Rational::new(1, 2);
    let plus = Polynomial::new(vec![half.clone(), Rational::one()]); // n + 1/2
    let minus = Polynomial::new(vec![-&half, Rational::one()]); // n - 1/2
    let (sin_h, cos_h) = (theta / 2.0).sin_cos();

    // Unknowns: [beta_1..beta_m, betabar_0..betabar_(m-1)].
    let dim = 2 * m;
    let mut a = vec![vec![0.0f64; dim]; dim];
    let mut rhs = vec![0.0f64; dim];

    // Rows 0..m: the sin(n theta) component must equal n^(2m-1); its
    // coefficient polynomial is odd, matched at powers 1, 3, ..., 2m-1.
    for (row, rp) in (0..m).enumerate() {
        let power = 2 * rp + 1;
        for u in 1..=m {
            let sum_odd = plus.pow((2 * u - 1) as u32) + minus.pow((2 * u - 1) as u32);
            a[row][u - 1] = cos_h * sum_odd.coeff(power).to_f64();
        }
        for u in 0..m {
            let diff_even = minus.pow((2 * u) as u32) - plus.pow((2 * u) as u32);
            a[row][m + u] = sin_h * diff_even.coeff(power).to_f64();
        }
        rhs[row] = if power == 2 * m - 1 { 1.0 } else { 0.0 };
    }
    // Rows m..2m: the cos(n theta) component must vanish; even powers
    // 0, 2, ..., 2m-2.
    for (offset, rp) in (0..m).enumerate() {
        let row = m + offset;
        let power = 2 * rp;
        for u in 1..=m {
            let diff_odd = plus.pow((2 * u - 1) as u32) - minus.pow((2 * u - 1) as u32);
            a[row][u - 1] = sin_h * diff_odd.coeff(power).to_f64();
        }
        for u in 0..m {
            let sum_even = plus.pow((2 * u) as u32) + minus.pow((2 * u) as u32);
            a[row][m + u] = cos_h * sum_even.coeff(power).to_f64();
        }
        rhs[row] = 0.0;
    }

    let solution = solve_with_refinement(&a, &rhs)?;
    let telescoper = TrigTelescoper {
        order,
        theta,
        beta: solution[..m].to_vec(),
        beta_bar: solution[m..].to_vec(),
    };
    // Bug trap: the defining identity must hold tightly at the probes
    // (NaN residuals count as failure).
    if telescoper
        .residuals(16)
        .iter()
        .any(|r| r.is_nan() || *r > 1e-9)
    {
        return Err(Error::SingularSystem);
    }
    Ok(telescoper)
}

/// Gaussian elimination with partial pivoting plus one step of iterative
/// refinement.
fn solve_with_refinement(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let mut x = gauss_solve(a, b)?;
    // One refinement pass: solve A * delta = b - A*x.
    let n = b.len();
    let mut residual = vec![0.0; n];
    for i in 0..n {
        let mut acc = b[i];
        for j in 0..n {
            acc -= a[i][j] * x[j];
        }
        residual[i] = acc;
    }
    if let Ok(delta) = gauss_solve(a, &residual) {
        for i in 0..n {
            x[i] += delta[i];
        }
    }
    Ok(x)
}

fn gauss_solve(a: &[Vec<f64>], b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .expect("nonempty range");
        if m[pivot_row][col].abs() < 1e-13 {
            return Err(Error::SingularSystem);
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let pivot = m[col].clone();
        for row in col + 1..n {
            let factor = m[row][col] / pivot[col];
            if factor == 0.0 {
                continue;
            }
            for (k, pv) in pivot.iter().enumerate().skip(col) {
                m[row][k] -= factor * pv;
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in row + 1..n {
            acc -= m[row][k] * x[k];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}
