//! Univariate polynomials in `q` and the q-analogues built from them.
//!
//! Coefficients are dense and indexed by the exponent of `q`, lowest first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        QPoly::from_coeffs(vec![c.into()])
    }

    /// `c * q^d`
    pub fn monomial(c: impl Into<BigInt>, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c.into();
        QPoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        let mut p = QPoly { coeffs: coeffs.into_iter().map(Into::into).collect() };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^d` (zero past the degree).
    pub fn coeff(&self, d: usize) -> BigInt {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    pub fn eval_i64(&self, q: i64) -> BigInt {
        self.eval(&BigInt::from(q))
    }

    /// Substitute `q -> q^e`.
    pub fn subs_power(&self, e: usize) -> QPoly {
        if e == 0 {
            return QPoly::constant(self.eval_i64(1));
        }
        let mut out = vec![BigInt::zero(); (self.coeffs.len().max(1) - 1) * e + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * e] = c.clone();
        }
        QPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact division; fails on a nonzero remainder or non-integral quotient.
    pub fn div_exact(&self, d: &QPoly) -> Result<QPoly> {
        let dd = d.degree().ok_or_else(|| Error::Inexact("division by zero polynomial".into()))?;
        let lead = &d.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() {
                Ok(QPoly::zero())
            } else {
                Err(Error::Inexact(format!("{self} / {d}")))
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (qc, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(Error::Inexact(format!("{self} / {d}")));
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &qc * dc;
            }
            quot[i] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Inexact(format!("{self} / {d}")));
        }
        Ok(QPoly::from_coeffs(quot))
    }

    /// Coefficients as machine integers, when they fit.
    pub fn to_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        QPoly::from_coeffs::<BigInt>(v)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let v = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        QPoly::from_coeffs::<BigInt>(v)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        QPoly::from_coeffs(v)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QPoly {
            type Output = QPoly;
            fn $m(self, rhs: QPoly) -> QPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match d {
                0 => write!(f, "{abs}")?,
                1 if unit => write!(f, "q")?,
                1 => write!(f, "{abs}q")?,
                _ if unit => write!(f, "q^{d}")?,
                _ => write!(f, "{abs}q^{d}")?,
            }
        }
        Ok(())
    }
}

/// JSON integer, or a decimal string when it does not fit in 64 bits.
pub(crate) struct JsonInt<'a>(pub &'a BigInt);

impl Serialize for JsonInt<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(&JsonInt(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<serde_json::Value> = Vec::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for v in raw {
            let c = match &v {
                serde_json::Value::Number(n) => n.to_string().parse::<BigInt>().ok(),
                serde_json::Value::String(s) => s.parse::<BigInt>().ok(),
                _ => None,
            };
            coeffs.push(c.ok_or_else(|| serde::de::Error::custom(format!("bad coefficient {v}")))?);
        }
        Ok(QPoly::from_coeffs(coeffs))
    }
}

/// `[n]_q = 1 + q + ... + q^{n-1}`
pub fn q_int(n: usize) -> QPoly {
    QPoly::from_coeffs(vec![1; n])
}

/// `[n]!_q`
pub fn q_factorial(n: usize) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, i| &acc * &q_int(i))
}

/// Gaussian binomial; zero when `b > a`, `a < 0` or `b < 0`.
pub fn q_binomial(a: i64, b: i64) -> QPoly {
    if a < 0 || b < 0 || b > a {
        return QPoly::zero();
    }
    let (a, b) = (a as usize, b as usize);
    let den = &q_factorial(b) * &q_factorial(a - b);
    q_factorial(a).div_exact(&den).expect("q-binomial division is exact")
}

/// `[k]!_q / ([m_1]!_q [m_2]!_q ...)`
pub fn q_multinomial(k: usize, mults: &[usize]) -> Result<QPoly> {
    let total: usize = mults.iter().sum();
    if total != k {
        return Err(Error::Param(format!("multiplicities sum to {total}, expected {k}")));
    }
    let den = mults.iter().fold(QPoly::one(), |acc, &m| &acc * &q_factorial(m));
    q_factorial(k).div_exact(&den)
}

fn stirling_table() -> &'static Mutex<Vec<Vec<QPoly>>> {
    static TABLE: OnceLock<Mutex<Vec<Vec<QPoly>>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![vec![QPoly::one()]]))
}

/// q-Stirling numbers of the second kind, via
/// `Stir_q(n,k) = Stir_q(n-1,k-1) + [k]_q Stir_q(n-1,k)`.
pub fn q_stirling(n: usize, k: usize) -> QPoly {
    if k > n {
        return QPoly::zero();
    }
    let mut table = stirling_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() <= n {
        let prev = table.last().expect("row 0 present").clone();
        let m = table.len();
        let row: Vec<QPoly> = (0..=m)
            .map(|j| {
                let mut v = QPoly::zero();
                if j >= 1 {
                    v = &v + &prev[j - 1];
                }
                if j < prev.len() {
                    v = &v + &(&q_int(j) * &prev[j]);
                }
                v
            })
            .collect();
        table.push(row);
    }
    table[n][k].clone()
}

/// Coefficient reversal relative to `degree` (default: the degree of `p`).
pub fn rev_q(p: &QPoly, degree: Option<usize>) -> Result<QPoly> {
    let Some(dp) = p.degree() else {
        return Ok(QPoly::zero());
    };
    let d = degree.unwrap_or(dp);
    if d < dp {
        return Err(Error::Param(format!("reversal degree {d} below polynomial degree {dp}")));
    }
    Ok(QPoly::from_coeffs((0..=d).map(|i| p.coeff(d - i)).collect::<Vec<_>>()))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Ordinary Stirling numbers of the second kind.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    q_stirling(n, k).eval_i64(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reversal_example() {
        let p = QPoly::from_coeffs(vec![-1, 2, 0, 1]);
        assert_eq!(rev_q(&p, None).unwrap(), QPoly::from_coeffs(vec![1, 0, 2, -1]));
        assert!(rev_q(&p, Some(2)).is_err());
        assert_eq!(rev_q(&QPoly::from_coeffs(vec![1, 2]), Some(3)).unwrap(), QPoly::from_coeffs(vec![0, 0, 2, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::from_coeffs(vec![1, -3, 0, 1]).to_string(), "1 - 3q + q^3");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn json_round_trip() {
        let p = QPoly::from_coeffs(vec![1, 3, 2]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, "[1,3,2]");
        assert_eq!(serde_json::from_str::<QPoly>(&s).unwrap(), p);
    }

    #[test]
    fn div_exact_rejects_remainder() {
        assert!(q_int(3).div_exact(&q_int(2)).is_err());
        assert_eq!(q_factorial(3).div_exact(&q_int(3)).unwrap(), q_int(2));
    }
}
