use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Polynomial with arbitrary-precision integer coefficients, lowest power
/// first. The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        IntPolynomial { coeffs }
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^j` (zero beyond the degree).
    pub fn coeff(&self, j: usize) -> BigInt {
        self.coeffs.get(j).cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|j| self.coeff(j) - other.coeff(j)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs }
    }

    /// `self(inner(x))`, by Horner's rule.
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&Self::new(vec![c.clone()]));
        }
        acc
    }

    /// `p(x^2)`.
    pub fn in_square(&self) -> Self {
        let mut coeffs = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (j, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * j] = c.clone();
        }
        Self::new(coeffs)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients modulo the prime `2^61 - 1`.
    fn residues(&self) -> Vec<i128> {
        let p = BigInt::from(MOD_P);
        self.coeffs
            .iter()
            .map(|c| (c % &p).to_i128().unwrap().rem_euclid(MOD_P))
            .collect()
    }

    /// Quotient and remainder on division by a monic polynomial.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[k + dd]);
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// First index `j` with a nonzero coefficient whose codegree
    /// `degree - j` is odd. Characteristic polynomials of bipartite graphs
    /// have none.
    pub fn odd_codegree_violation(&self) -> Option<usize> {
        let n = self.degree()?;
        (0..=n).find(|&j| (n - j) % 2 == 1 && !self.coeffs[j].is_zero())
    }

    /// Power sum `sum lambda_i^2` of the roots of a monic polynomial, by
    /// Newton's identities.
    pub fn root_square_sum(&self) -> BigInt {
        let n = self.degree().unwrap_or(0);
        if n < 2 {
            return self.coeffs.first().map(|c| c * c).unwrap_or_default();
        }
        let e1 = -self.coeff(n - 1);
        let e2 = self.coeff(n - 2);
        &e1 * &e1 - BigInt::from(2) * e2
    }

    /// `[c0, c1, ..., cn]`.
    pub fn coefficient_list(&self) -> String {
        let items: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", items.join(", "))
    }

    /// Splits off factors `x`, `x - a` and `x^2 - a` by trial division.
    /// Candidates are screened by evaluation modulo a large prime and
    /// confirmed by exact division.
    pub fn factor(&self) -> Factorization {
        let mut rest = self.clone();
        let mut factors = Vec::new();
        let Some(n) = self.degree() else {
            return Factorization { factors, rest };
        };
        // roots of a characteristic polynomial of a graph lie in [-n, n]
        let bound = n as i64;
        let mut res = rest.residues();
        let mut push = |rest: &mut IntPolynomial, res: &mut Vec<i128>, f: Factor| {
            let d = f.polynomial();
            let mut mult = 0;
            loop {
                let (q, r) = rest.div_rem_monic(&d);
                if !r.is_zero() {
                    break;
                }
                *rest = q;
                mult += 1;
            }
            if mult > 0 {
                factors.push((f, mult));
                *res = rest.residues();
            }
        };
        push(&mut rest, &mut res, Factor::X);
        for a in 1..=bound {
            for root in [a, -a] {
                if eval_mod(res.iter(), root) == 0 {
                    push(&mut rest, &mut res, Factor::Linear(root));
                }
            }
        }
        for a in 2..=bound * bound {
            if res.len() < 3 {
                break;
            }
            let root = a.sqrt();
            if root * root == a {
                continue;
            }
            if quadratic_root_mod(&res, a) {
                push(&mut rest, &mut res, Factor::Quadratic(a));
            }
        }
        Factorization { factors, rest }
    }
}

const MOD_P: i128 = (1 << 61) - 1;

/// Horner evaluation of residues at `x`, modulo `MOD_P`.
fn eval_mod<'a>(res: impl DoubleEndedIterator<Item = &'a i128>, x: i64) -> i128 {
    let x = (x as i128).rem_euclid(MOD_P);
    res.rev().fold(0, |acc, &c| (acc * x % MOD_P + c) % MOD_P)
}

/// Whether `x^2 - a` annihilates the polynomial modulo `MOD_P`: both its
/// even and odd parts vanish at `a`.
fn quadratic_root_mod(res: &[i128], a: i64) -> bool {
    eval_mod(res.iter().step_by(2), a) == 0 && eval_mod(res.iter().skip(1).step_by(2), a) == 0
}

/// Highest power first, e.g. `x^6 - 6x^4 + 9x^2 - 4`.
impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            if j == 0 || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            match j {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{j}")?,
            }
        }
        Ok(())
    }
}

/// A factor found by trial division.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    X,
    /// `x - a`.
    Linear(i64),
    /// `x^2 - a` with `a` not a square.
    Quadratic(i64),
}

impl Factor {
    pub fn polynomial(&self) -> IntPolynomial {
        match *self {
            Factor::X => IntPolynomial::monomial(1),
            Factor::Linear(a) => IntPolynomial::from_i64(&[-a, 1]),
            Factor::Quadratic(a) => IntPolynomial::from_i64(&[-a, 0, 1]),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Factor::X => f.write_str("x"),
            Factor::Linear(a) if a < 0 => write!(f, "(x + {})", -a),
            Factor::Linear(a) => write!(f, "(x - {a})"),
            Factor::Quadratic(a) => write!(f, "(x^2 - {a})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(Factor, usize)>,
    /// Part with no factor of the supported shapes.
    pub rest: IntPolynomial,
}

impl Factorization {
    /// Eigenvalues with multiplicities, e.g. `{3, -3, ±√2^6, 0^2}`; any
    /// unfactored part is listed as the roots of its polynomial.
    pub fn spectrum_string(&self) -> String {
        let mut items: Vec<String> = self
            .factors
            .iter()
            .map(|&(f, m)| {
                let base = match f {
                    Factor::X => "0".to_string(),
                    Factor::Linear(a) => a.to_string(),
                    Factor::Quadratic(a) => format!("±√{a}"),
                };
                if m == 1 {
                    base
                } else {
                    format!("{base}^{m}")
                }
            })
            .collect();
        if self.rest.degree().is_some_and(|d| d > 0) {
            items.push(format!("roots of {}", self.rest));
        }
        format!("{{{}}}", items.join(", "))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(fac, m)| {
                if m == 1 {
                    fac.to_string()
                } else {
                    format!("{fac}^{m}")
                }
            })
            .collect();
        match self.rest.degree() {
            Some(0) if self.rest.coeff(0).is_one() && !parts.is_empty() => {}
            Some(0) => parts.insert(0, self.rest.to_string()),
            _ => parts.push(format!("({})", self.rest)),
        }
        f.write_str(&parts.join(" "))
    }
}
