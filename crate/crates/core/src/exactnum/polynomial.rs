use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::Rational;

/// Dense polynomial with exact rational coefficients, ascending by degree.
///
/// The coefficient list never ends in a zero; the zero polynomial is the
/// empty list.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// Convenience for tests and small builders: ascending integer coefficients.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Rational::from_int(c)).collect())
    }

    /// `c * x^degree`.
    pub fn monomial(c: Rational, degree: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluation at a machine integer.
    pub fn eval_int(&self, n: i64) -> Rational {
        self.eval(&Rational::from_int(n))
    }

    /// Floating-point Horner evaluation.
    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64();
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Composition with a shifted argument: returns `q` with `q(x) = p(x + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        // Horner in the shifted variable: fold highest coefficients first,
        // multiplying by (x + c) at each step.
        let mut acc = Polynomial::zero();
        for a in self.coeffs.iter().rev() {
            acc = acc.mul_linear(&Rational::one(), c) + Polynomial::constant(a.clone());
        }
        acc
    }

    /// Multiplies by the linear factor `a*x + b`.
    fn mul_linear(&self, a: &Rational, b: &Rational) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c * a;
            out[i] += c * b;
        }
        Polynomial::new(out)
    }

    /// Small exact power.
    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Polynomial::constant(Rational::one());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Forward differences at zero: `d[i]` is the i-th forward difference of
    /// the value sequence `p(0), p(1), ...`, so that `p(n) = sum d[i]*C(n,i)`
    /// (Newton's forward form). Exactly `degree + 1` entries; all later
    /// differences vanish identically.
    pub fn forward_differences_at_zero(&self) -> Vec<Rational> {
        let len = self.coeffs.len();
        if len == 0 {
            return Vec::new();
        }
        let mut row: Vec<Rational> = (0..len as i64).map(|n| self.eval_int(n)).collect();
        let mut out = Vec::with_capacity(len);
        for i in 0..len {
            out.push(row[0].clone());
            for j in 0..len - 1 - i {
                row[j] = &row[j + 1] - &row[j];
            }
        }
        out
    }

    /// The indefinite sum `F` with `F(x+1) - F(x) = p(x)` and `F(0) = 0`,
    /// valid as a polynomial identity at every integer. Built from Newton's
    /// form via `ΔC(x, i+1) = C(x, i)`.
    pub fn indefinite_sum(&self) -> Self {
        let diffs = self.forward_differences_at_zero();
        let mut acc = Polynomial::zero();
        for (i, d) in diffs.into_iter().enumerate() {
            acc = acc + binomial_basis(i + 1).scale(&d);
        }
        acc
    }

    /// Unique interpolating polynomial of degree < points.len() through the
    /// given (x, y) pairs. The abscissas must be pairwise distinct.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        // Newton divided differences, then expansion onto the monomial basis.
        let n = points.len();
        let mut coef: Vec<Rational> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..n {
            for i in (level..n).rev() {
                let dx = &points[i].0 - &points[i - level].0;
                assert!(!dx.is_zero(), "interpolation nodes must be distinct");
                coef[i] = (&coef[i] - &coef[i - 1]) / dx;
            }
        }
        let mut acc = Polynomial::zero();
        for i in (0..n).rev() {
            acc = acc.mul_linear(&Rational::one(), &-&points[i].0)
                + Polynomial::constant(coef[i].clone());
        }
        acc
    }

    /// Deterministic rendering with the given variable name, descending
    /// powers, e.g. `2*k + 3` or `-n^2/2 + 1/4`.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else if c.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            let var_part = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            use num_traits::One;
            if i == 0 {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&var_part);
            } else if mag.is_integer() {
                out.push_str(&format!("{}*{var_part}", mag.numer()));
            } else if mag.numer().is_one() {
                out.push_str(&format!("{var_part}/{}", mag.denom()));
            } else {
                out.push_str(&format!("{}*{var_part}/{}", mag.numer(), mag.denom()));
            }
        }
        out
    }
}

/// The binomial-coefficient polynomial `C(x, j) = x(x-1)...(x-j+1)/j!`.
pub fn binomial_basis(j: usize) -> Polynomial {
    let mut acc = Polynomial::constant(Rational::one());
    for t in 0..j as i64 {
        acc = acc.mul_linear(&Rational::one(), &Rational::from_int(-t));
    }
    let mut j_fact = Rational::one();
    for t in 1..=j as i64 {
        j_fact *= Rational::from_int(t);
    }
    acc.scale(&j_fact.recip())
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] += c;
        }
        Polynomial::new(long)
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        self + (-rhs)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Polynomial::new(out)
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        (&self) * (&rhs)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("n"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("n"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_examples() {
        assert_eq!(
            Polynomial::zero().eval(&Rational::from_int(5)),
            Rational::zero()
        );
        let x_squared = Polynomial::from_ints(&[0, 0, 1]);
        assert_eq!(
            x_squared.eval(&Rational::new(3, 2)),
            Rational::new(9, 4)
        );
        let line = Polynomial::from_ints(&[1, 2]); // 2x + 1
        assert_eq!(line.eval(&Rational::new(-1, 2)), Rational::zero());
    }

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = Polynomial::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(Polynomial::from_ints(&[0, 0]).is_zero());
        assert_eq!(Polynomial::zero().degree(), None);
    }

    #[test]
    fn shift_matches_pointwise() {
        let p = Polynomial::from_ints(&[3, -1, 0, 2]); // 2x^3 - x + 3
        let shifted = p.shift(&Rational::new(5, 2));
        for n in -4..4 {
            let x = Rational::from_int(n);
            assert_eq!(shifted.eval(&x), p.eval(&(&x + &Rational::new(5, 2))));
        }
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = Polynomial::from_ints(&[1, 0, -2, 1]);
        let pts: Vec<_> = (0..4)
            .map(|k| (Rational::from_int(k), p.eval_int(k)))
            .collect();
        assert_eq!(Polynomial::interpolate(&pts), p);
    }

    #[test]
    fn indefinite_sum_telescopes() {
        for p in [
            Polynomial::from_ints(&[0, 1]),        // x -> F = C(x,2)
            Polynomial::from_ints(&[0, 0, 1]),     // x^2
            Polynomial::from_ints(&[2, -3, 0, 5]), // mixed
        ] {
            let f_sum = p.indefinite_sum();
            assert_eq!(f_sum.eval_int(0), Rational::zero());
            for n in -10..10 {
                assert_eq!(
                    f_sum.eval_int(n + 1) - f_sum.eval_int(n),
                    p.eval_int(n),
                    "difference identity fails at {n}"
                );
            }
        }
        // f(u) = u gives the classical triangular closed form u(u-1)/2.
        let f_sum = Polynomial::from_ints(&[0, 1]).indefinite_sum();
        assert_eq!(f_sum.eval_int(5), Rational::from_int(10));
        assert_eq!(f_sum.eval_int(-2), Rational::from_int(3));
    }

    #[test]
    fn forward_differences_newton_form() {
        let p = Polynomial::from_ints(&[1, 0, 1]); // n^2 + 1
        let d = p.forward_differences_at_zero();
        assert_eq!(
            d,
            vec![
                Rational::from_int(1),
                Rational::from_int(1),
                Rational::from_int(2)
            ]
        );
        // Reconstruct p(n) = sum d_i C(n, i) at a few points.
        for n in 0..8i64 {
            let mut acc = Rational::zero();
            for (i, di) in d.iter().enumerate() {
                acc += di * binomial_basis(i).eval_int(n);
            }
            assert_eq!(acc, p.eval_int(n));
        }
    }

    #[test]
    fn display_formats() {
        assert_eq!(Polynomial::from_ints(&[3, 2]).display_with("k"), "2*k + 3");
        assert_eq!(
            Polynomial::new(vec![Rational::new(1, 4), Rational::new(-1, 2)])
                .display_with("n"),
            "-n/2 + 1/4"
        );
        assert_eq!(Polynomial::zero().display_with("n"), "0");
        assert_eq!(Polynomial::from_ints(&[0, 0, 1]).display_with("n"), "n^2");
    }
}
