use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Polynomial in `q` with integer coefficients, ascending powers.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QPoly {
    coeffs: Vec<i64>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        QPoly::new(vec![c])
    }

    /// `c·q^k`.
    pub fn monomial(c: i64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        QPoly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    /// `[k]_q = 1 + q + ⋯ + q^{k-1}`.
    pub fn q_integer(k: usize) -> Self {
        QPoly::new(vec![1; k])
    }

    /// `[k]!_q`.
    pub fn q_factorial(k: usize) -> Self {
        (1..=k).fold(QPoly::one(), |acc, i| &acc * &QPoly::q_integer(i))
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// The constant term if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<i64> {
        match self.coeffs.len() {
            0 => Some(0),
            1 => Some(self.coeffs[0]),
            _ => None,
        }
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn scale(&self, k: i64) -> Self {
        QPoly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        QPoly { coeffs }
    }

    /// Exact division; `None` if `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &QPoly) -> Option<QPoly> {
        let d = divisor.degree()?;
        let lead = divisor.coeffs[d];
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return self.is_zero().then(QPoly::zero);
        }
        let mut quot = vec![0; rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d];
            if c % lead != 0 {
                return None;
            }
            let f = c / lead;
            quot[k] = f;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= f * dc;
            }
        }
        rem.iter().all(|&c| c == 0).then(|| QPoly::new(quot))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if first { "" } else { "+" };
            let a = c.unsigned_abs();
            let body = match (k, a) {
                (0, _) => a.to_string(),
                (1, 1) => "q".to_string(),
                (1, _) => format!("{a}q"),
                (_, 1) => format!("q^{k}"),
                _ => format!("{a}q^{k}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl From<i64> for QPoly {
    fn from(c: i64) -> Self {
        QPoly::constant(c)
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new(
            (0..len)
                .map(|k| self.coeffs.get(k).unwrap_or(&0) + rhs.coeffs.get(k).unwrap_or(&0))
                .collect(),
        )
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        *self = &*self + rhs;
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        self.scale(-1)
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        self + &(-rhs)
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QPoly::new(coeffs)
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_division() {
        assert_eq!(QPoly::q_factorial(3).coeffs(), &[1, 2, 2, 1]);
        let q4 = QPoly::q_factorial(4);
        let q2 = QPoly::q_factorial(2);
        let binom = q4.div_exact(&(&q2 * &q2)).unwrap();
        assert_eq!(binom.coeffs(), &[1, 1, 2, 1, 1]);
        assert!(QPoly::q_integer(3).div_exact(&QPoly::q_integer(2)).is_none());
        assert_eq!(binom.eval(1), 6);
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::new(vec![1, -1, 0, 3]).to_string(), "1-q+3q^3");
        assert_eq!(QPoly::zero().to_string(), "0");
        assert_eq!(QPoly::monomial(1, 2).to_string(), "q^2");
    }
}
