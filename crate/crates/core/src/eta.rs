//! Eta quotients `η^X = ∏ η_d^{X_d}` over the divisors of an ambient modulus.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_integer::Integer;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrices;
use crate::numtheory::{factorize, DivisorBasis};
use crate::qseries::QSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    basis: Arc<DivisorBasis>,
    exponents: Vec<i64>,
}

/// 24-scaled orders of an eta quotient at the cusps `1/t`, `t | N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderVector {
    #[serde(skip)]
    basis: Arc<DivisorBasis>,
    scaled_orders: Vec<i64>,
}

impl OrderVector {
    pub fn scaled_orders(&self) -> &[i64] {
        &self.scaled_orders
    }

    pub fn at(&self, t: u64) -> Option<i64> {
        Some(self.scaled_orders[self.basis.index_of(t)?])
    }

    pub fn is_nonnegative(&self) -> bool {
        self.scaled_orders.iter().all(|&v| v >= 0)
    }

    /// 24 times the order at infinity.
    pub fn at_infinity(&self) -> i64 {
        *self.scaled_orders.last().expect("divisor basis is never empty")
    }
}

fn basis_for(modulus: u64) -> Result<Arc<DivisorBasis>> {
    let f = factorize(modulus as i64)?;
    Ok(Arc::new(DivisorBasis::new(f)))
}

impl EtaQuotient {
    pub fn new(basis: Arc<DivisorBasis>, exponents: Vec<i64>) -> Result<Self> {
        if exponents.len() != basis.len() {
            return Err(Error::Dimension {
                expected: basis.len(),
                got: exponents.len(),
            });
        }
        Ok(EtaQuotient { basis, exponents })
    }

    /// Build from `(d, X_d)` pairs over Γ₀(modulus). Repeated divisors add up.
    pub fn from_pairs(modulus: u64, pairs: &[(u64, i64)]) -> Result<Self> {
        let basis = basis_for(modulus)?;
        let mut exponents = vec![0; basis.len()];
        for &(d, e) in pairs {
            let i = basis.index_of(d).ok_or(Error::NotADivisor { divisor: d, modulus })?;
            exponents[i] += e;
        }
        Ok(EtaQuotient { basis, exponents })
    }

    pub fn constant(modulus: u64) -> Result<Self> {
        Self::from_pairs(modulus, &[])
    }

    /// `η_d^e` on Γ₀(modulus).
    pub fn eta_power(modulus: u64, d: u64, e: i64) -> Result<Self> {
        Self::from_pairs(modulus, &[(d, e)])
    }

    pub fn basis(&self) -> &Arc<DivisorBasis> {
        &self.basis
    }

    pub fn modulus(&self) -> u64 {
        self.basis.modulus().value()
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn exponent(&self, d: u64) -> i64 {
        self.basis.index_of(d).map_or(0, |i| self.exponents[i])
    }

    /// `(d, X_d)` for the nonzero exponents, in basis order.
    pub fn support(&self) -> Vec<(u64, i64)> {
        self.basis
            .divisors()
            .iter()
            .zip(&self.exponents)
            .filter(|(_, &e)| e != 0)
            .map(|(&d, &e)| (d, e))
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `k = σ(X)`; the weight is `k/2`.
    pub fn weight_numerator(&self) -> i64 {
        self.exponents.iter().sum()
    }

    /// `lcm` of the support.
    pub fn level(&self) -> Result<u64> {
        let s = self.support();
        if s.is_empty() {
            return Err(Error::Constant);
        }
        Ok(s.iter().fold(1, |acc, &(d, _)| acc.lcm(&d)))
    }

    /// `gcd` of the support is 1.
    pub fn is_primitive(&self) -> Result<bool> {
        let s = self.support();
        if s.is_empty() {
            return Err(Error::Constant);
        }
        Ok(s.iter().fold(0, |acc, &(d, _)| acc.gcd(&d)) == 1)
    }

    pub fn order_vector(&self) -> OrderVector {
        let n = self.modulus();
        let scaled_orders = self
            .basis
            .divisors()
            .iter()
            .map(|&t| {
                let tt = (t * t).gcd(&n);
                self.basis
                    .divisors()
                    .iter()
                    .zip(&self.exponents)
                    .filter(|(_, &e)| e != 0)
                    .map(|(&d, &e)| {
                        let g = d.gcd(&t);
                        e * (n * g * g / (d * tt)) as i64
                    })
                    .sum()
            })
            .collect();
        OrderVector {
            basis: self.basis.clone(),
            scaled_orders,
        }
    }

    pub fn is_holomorphic(&self) -> bool {
        self.order_vector().is_nonnegative()
    }

    /// The same quotient over Γ₀(new_modulus), `modulus | new_modulus`.
    pub fn embed(&self, new_modulus: u64) -> Result<Self> {
        if new_modulus == 0 || !new_modulus.is_multiple_of(self.modulus()) {
            return Err(Error::NotADivisor {
                divisor: self.modulus(),
                modulus: new_modulus,
            });
        }
        if new_modulus == self.modulus() {
            return Ok(self.clone());
        }
        Self::from_pairs(new_modulus, &self.support())
    }

    /// The same quotient over Γ₀(M) for any `M` divisible by its level.
    pub fn with_modulus(&self, new_modulus: u64) -> Result<Self> {
        let level = self.level().unwrap_or(1);
        if new_modulus == 0 || !new_modulus.is_multiple_of(level) {
            return Err(Error::NotADivisor {
                divisor: level,
                modulus: new_modulus,
            });
        }
        Self::from_pairs(new_modulus, &self.support())
    }

    /// The same quotient over Γ₀(level).
    pub fn restrict_to_level(&self) -> Result<Self> {
        self.with_modulus(self.level()?)
    }

    /// `z ↦ f(νz)` over Γ₀(new_modulus).
    pub fn rescale(&self, nu: u64, new_modulus: u64) -> Result<Self> {
        if nu == 0 {
            return Err(Error::NonPositive(0));
        }
        let level = self.level().unwrap_or(1);
        if new_modulus == 0 || !new_modulus.is_multiple_of(nu * level) {
            return Err(Error::NotADivisor {
                divisor: nu * level,
                modulus: new_modulus,
            });
        }
        let pairs: Vec<(u64, i64)> = self.support().iter().map(|&(d, e)| (nu * d, e)).collect();
        Self::from_pairs(new_modulus, &pairs)
    }

    fn common_pair(&self, other: &Self) -> Result<(Self, Self)> {
        let m = self.modulus().lcm(&other.modulus());
        Ok((self.embed(m)?, other.embed(m)?))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_pair(other)?;
        let exponents = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x + y).collect();
        Ok(EtaQuotient { basis: a.basis, exponents })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.common_pair(other)?;
        let exponents = a.exponents.iter().zip(&b.exponents).map(|(x, y)| x - y).collect();
        Ok(EtaQuotient { basis: a.basis, exponents })
    }

    /// `g | f`: `f/g` is holomorphic on Γ₀ of the common modulus.
    pub fn divides(g: &Self, f: &Self) -> Result<bool> {
        Ok(f.div(g)?.is_holomorphic())
    }

    /// `Σ_t φ(gcd(t,N/t))·A_N(X)_t = k·ψ(N)`.
    pub fn valence_check(&self) -> bool {
        let orders = self.order_vector();
        let weights = self.basis.cusp_multiplicities();
        let lhs: i64 = orders
            .scaled_orders
            .iter()
            .zip(&weights)
            .map(|(&o, &w)| o * w as i64)
            .sum();
        lhs == self.weight_numerator() * self.basis.modulus().psi() as i64
    }

    /// First `terms` coefficients of the q-expansion at infinity.
    pub fn q_expansion(&self, terms: usize) -> Result<QSeries> {
        QSeries::of_eta_quotient(&self.support(), terms)
    }

    /// Parse the `d^e` syntax over Γ₀(modulus), or over the level of the
    /// listed divisors when `modulus` is `None`.
    pub fn parse_with_modulus(text: &str, modulus: Option<u64>) -> Result<Self> {
        let pairs = parse_pairs(text)?;
        let m = match modulus {
            Some(m) => m,
            None => pairs.iter().fold(1, |acc, &(d, _)| acc.lcm(&d)),
        };
        Self::from_pairs(m, &pairs)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("eta quotient serializes")
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("JSON eta quotient: {what}"));
        let modulus = value
            .get("modulus")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing positive integer \"modulus\""))?;
        let map = value
            .get("exponents")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("missing object \"exponents\""))?;
        let mut pairs = Vec::with_capacity(map.len());
        for (k, v) in map {
            let d: u64 = k.parse().map_err(|_| bad(&format!("divisor key {k:?}")))?;
            let e = v.as_i64().ok_or_else(|| bad(&format!("exponent of {d}")))?;
            pairs.push((d, e));
        }
        Self::from_pairs(modulus, &pairs)
    }
}

fn parse_pairs(text: &str) -> Result<Vec<(u64, i64)>> {
    let mut pairs = Vec::new();
    for tok in text.split_whitespace() {
        let (d, e) = match tok.split_once('^') {
            Some((d, e)) => (d, e),
            None => (tok, "1"),
        };
        let d: u64 = d
            .parse()
            .map_err(|_| Error::Parse(format!("bad divisor in {tok:?}")))?;
        if d == 0 {
            return Err(Error::Parse(format!("divisor must be positive in {tok:?}")));
        }
        let e: i64 = e
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
        pairs.push((d, e));
    }
    if pairs.is_empty() {
        return Err(Error::Parse("empty eta quotient".into()));
    }
    Ok(pairs)
}

impl FromStr for EtaQuotient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_modulus(s, None)
    }
}

/// `d^e` terms separated by spaces; the constant is written `1^0`.
impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.support();
        if s.is_empty() {
            return write!(f, "1^0");
        }
        for (i, (d, e)) in s.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{d}^{e}")?;
        }
        Ok(())
    }
}

impl Serialize for EtaQuotient {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        struct Exponents<'a>(&'a EtaQuotient);
        impl Serialize for Exponents<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let support = self.0.support();
                let mut map = s.serialize_map(Some(support.len()))?;
                for (d, e) in support {
                    map.serialize_entry(&d.to_string(), &e)?;
                }
                map.end()
            }
        }
        let mut map = s.serialize_map(Some(2))?;
        map.serialize_entry("modulus", &self.modulus())?;
        map.serialize_entry("exponents", &Exponents(self))?;
        map.end()
    }
}

/// `F_N = ∏_t η^{B_N(·,t)}`.
pub fn extremal_quotient(level: u64) -> Result<EtaQuotient> {
    let f = factorize(level as i64)?;
    let b = matrices::b_matrix(&f);
    let exponents = (0..b.dim()).map(|i| b.row(i).iter().sum()).collect();
    EtaQuotient::new(b.basis().clone(), exponents)
}

/// `η^{B_N(·,t)}` for every `t | N`, in basis order.
pub fn column_quotient_list(level: u64) -> Result<Vec<EtaQuotient>> {
    let f = factorize(level as i64)?;
    let b = matrices::b_matrix(&f);
    (0..b.dim())
        .map(|j| EtaQuotient::new(b.basis().clone(), b.column(j)))
        .collect()
}

/// `(t, φ(gcd(t, N/t)))` for `t | N`.
pub fn cusp_classes(level: u64) -> Result<Vec<(u64, u64)>> {
    let basis = basis_for(level)?;
    Ok(basis
        .divisors()
        .iter()
        .copied()
        .zip(basis.cusp_multiplicities())
        .collect())
}
