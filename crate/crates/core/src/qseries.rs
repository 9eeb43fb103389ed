//! Truncated q-expansions of eta quotients.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_TERMS: usize = 50;

/// `q^{leading_exponent}·Σ_{n<T} c_n qⁿ` with `c_0 = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    leading_exponent: Ratio<i64>,
    coefficients: Vec<BigInt>,
}

impl QSeries {
    /// Expand `∏_d η(dz)^{e_d} = q^{Σ d·e_d/24}·∏_d ∏_{n≥1}(1 − q^{dn})^{e_d}`.
    pub fn of_eta_quotient(pairs: &[(u64, i64)], terms: usize) -> Result<Self> {
        if terms == 0 {
            return Err(Error::InvalidArgument("term count must be positive".into()));
        }
        let mut c = vec![BigInt::zero(); terms];
        c[0] = BigInt::one();
        let mut shift = 0i64;
        for &(d, e) in pairs {
            shift += d as i64 * e;
            let d = d as usize;
            let mut s = d;
            while s < terms {
                if e > 0 {
                    for _ in 0..e {
                        for i in (s..terms).rev() {
                            let t = c[i - s].clone();
                            c[i] -= t;
                        }
                    }
                } else {
                    // 1/(1 − q^s) = Σ q^{js}
                    for _ in 0..-e {
                        for i in s..terms {
                            let t = c[i - s].clone();
                            c[i] += t;
                        }
                    }
                }
                s += d;
            }
        }
        Ok(QSeries {
            leading_exponent: Ratio::new(shift, 24),
            coefficients: c,
        })
    }

    pub fn leading_exponent(&self) -> Ratio<i64> {
        self.leading_exponent
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }
}

#[derive(Serialize)]
struct QSeriesJson {
    leading_exponent: String,
    coefficients: Vec<String>,
}

impl Serialize for QSeries {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QSeriesJson {
            leading_exponent: self.leading_exponent.to_string(),
            coefficients: self.coefficients.iter().map(BigInt::to_string).collect(),
        }
        .serialize(s)
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({})·(", self.leading_exponent)?;
        let mut first = true;
        for (n, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (n, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}q")?,
                (_, true) => write!(f, "q^{n}")?,
                (_, false) => write!(f, "{mag}q^{n}")?,
            }
        }
        write!(f, " + O(q^{}))", self.coefficients.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries) -> Vec<i64> {
        s.coefficients().iter().map(|c| c.to_string().parse().unwrap()).collect()
    }

    #[test]
    fn eta_expansion() {
        // Euler's pentagonal theorem
        let s = QSeries::of_eta_quotient(&[(1, 1)], 16).unwrap();
        assert_eq!(s.leading_exponent(), Ratio::new(1, 24));
        assert_eq!(ints(&s), vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1]);
    }

    #[test]
    fn delta_expansion() {
        let s = QSeries::of_eta_quotient(&[(1, 24)], 6).unwrap();
        assert_eq!(s.leading_exponent(), Ratio::from_integer(1));
        assert_eq!(ints(&s), vec![1, -24, 252, -1472, 4830, -6048]);
    }

    #[test]
    fn inverse_of_eta_is_partitions() {
        let s = QSeries::of_eta_quotient(&[(1, -1)], 10).unwrap();
        assert_eq!(ints(&s), vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn leading_exponent_of_balanced_quotient() {
        let s = QSeries::of_eta_quotient(&[(1, 2), (2, -1)], 5).unwrap();
        assert_eq!(s.leading_exponent(), Ratio::from_integer(0));
        // η²/η₂ = Σ (−1)ⁿ q^{n²} over n ∈ ℤ
        assert_eq!(ints(&s), vec![1, -2, 0, 0, 2]);
        assert!(QSeries::of_eta_quotient(&[(1, 1)], 0).is_err());
    }

    #[test]
    fn display() {
        let s = QSeries::of_eta_quotient(&[(1, 1)], 3).unwrap();
        assert_eq!(s.to_string(), "q^(1/24)·(1 - q - q^2 + O(q^3))");
    }
}
