//! Multiplicative arithmetic on levels.
//!
//! Every level is carried as a [`FactoredInt`] so the multiplicative
//! functions (φ, rad, ψ, κ and the lattice-count bounds) read the prime
//! factorization directly instead of re-deriving it.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A positive integer together with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FactoredInt {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl FactoredInt {
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly ascending primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Exponent of `p` in the factorization (0 if `p` does not divide).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// Euler's totient.
    pub fn phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }

    /// Product of the distinct prime divisors.
    pub fn rad(&self) -> u64 {
        self.primes().product()
    }

    pub fn num_divisors(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// Number of distinct prime divisors.
    pub fn omega_count(&self) -> u32 {
        self.factors.len() as u32
    }

    /// Whether `d` exactly divides the value, i.e. `d | N` and `gcd(d, N/d) = 1`.
    pub fn exactly_divides(&self, d: u64) -> Result<bool> {
        if d == 0 || !self.value.is_multiple_of(d) {
            return Err(Error::NotADivisor {
                divisor: d,
                modulus: self.value,
            });
        }
        Ok(d.gcd(&(self.value / d)) == 1)
    }

    /// Index of Γ₀(N) in SL₂(ℤ): `N·∏(1 + 1/p)`.
    pub fn psi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p + 1) * p.pow(e - 1))
            .product()
    }

    /// `κ(N) = φ(rad N)·∏_{pⁿ‖N} ((n−1)(p−1) + 2)`.
    pub fn kappa(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, n)| (p - 1) * ((u64::from(n) - 1) * (p - 1) + 2))
            .product()
    }

    /// The cofactor `N / pⁿ` for the prime power `pⁿ ‖ N`.
    fn cofactor_divisors(&self, p: u64) -> u64 {
        self.factors
            .iter()
            .filter(|&&(q, _)| q != p)
            .map(|&(_, e)| u64::from(e) + 1)
            .product()
    }

    /// Lattice-point count of a fundamental parallelepiped of `B_N`:
    /// `∏_{pⁿ‖N} p^{2d(N)}·((p²−1)/p⁴)^{d(N/pⁿ)}`.
    pub fn omega_prime_bound(&self) -> BoundValue {
        let d = self.num_divisors() as u32;
        let mut acc = BigRational::one();
        for &(p, _) in &self.factors {
            let pb = BigInt::from(p);
            let base = BigRational::new(&pb * &pb - 1u32, pb.pow(4));
            acc *= BigRational::from_integer(pb.pow(2 * d));
            acc *= pow_rational(&base, self.cofactor_divisors(p) as u32);
        }
        let bound = BoundValue(acc);
        assert!(bound.is_integer(), "parallelepiped count must be integral");
        bound
    }

    /// `det(C_N) = ∏_{pⁿ‖N} (p²−1)^{d(N)} / (p+1)^{2d(N/pⁿ)}`.
    pub fn corner_determinant(&self) -> BigRational {
        let d = self.num_divisors() as u32;
        let mut acc = BigRational::one();
        for &(p, _) in &self.factors {
            let pb = BigInt::from(p);
            let num = (&pb * &pb - 1u32).pow(d);
            let den = (&pb + 1u32).pow(2 * self.cofactor_divisors(p) as u32);
            acc *= BigRational::new(num, den);
        }
        acc
    }

    /// Number of divisors `t` with `rad(N) ∤ gcd(t, N/t)`, i.e.
    /// `d(N) − ∏_{pⁿ‖N}(n − 1)`.
    pub fn rad_nondividing_count(&self) -> i64 {
        let inner: i64 = self.factors.iter().map(|&(_, n)| i64::from(n) - 1).product();
        self.num_divisors() as i64 - inner
    }

    /// The expression `2·Σ_{pⁿ‖N} d(N/pⁿ) − 2^{ω(N)}(ω(N) − 1)` that enters
    /// Ω″ and Ω. It equals [`rad_nondividing_count`](Self::rad_nondividing_count)
    /// when `ω(N) ≤ 2` and exceeds it for some `N` with three or more primes.
    pub fn rad_nondividing_formula(&self) -> i64 {
        let w = i64::from(self.omega_count());
        let s: i64 = self
            .primes()
            .map(|p| self.cofactor_divisors(p) as i64)
            .sum();
        2 * s - (1i64 << w) * (w - 1)
    }

    /// Lower bound on nonnegative, off-unit-sphere lattice points of the
    /// fundamental parallelepiped:
    /// `det(C_N)/d(N)! + 2Σ d(N/pⁿ) − 2^{ω}(ω−1) − d(N)`.
    pub fn omega_dprime_bound(&self) -> BoundValue {
        let d = self.num_divisors();
        let simplex = self.corner_determinant() / BigRational::from_integer(factorial(d));
        let rest = self.rad_nondividing_formula() - d as i64;
        BoundValue(simplex + BigRational::from_integer(BigInt::from(rest)))
    }

    /// Upper bound on the number of nonconstant holomorphic eta quotients on
    /// Γ₀(N) that are not factorizable on Γ₀(N).
    ///
    /// Evaluated term by term as
    /// `Ω′(N) − det(C_N)/d(N)! + 2(d(N) − Σ d(N/pⁿ)) + 2^{ω}(ω−1)`,
    /// which equals `d(N) + Ω′(N) − Ω″(N)`. `Ω(1) = 1`.
    pub fn omega_bound(&self) -> BoundValue {
        if self.value == 1 {
            return BoundValue::from_integer(1);
        }
        let d = self.num_divisors();
        let w = i64::from(self.omega_count());
        let s: i64 = self
            .primes()
            .map(|p| self.cofactor_divisors(p) as i64)
            .sum();
        let simplex = self.corner_determinant() / BigRational::from_integer(factorial(d));
        let tail = 2 * (d as i64 - s) + (1i64 << w) * (w - 1);
        BoundValue(
            self.omega_prime_bound().0 - simplex + BigRational::from_integer(BigInt::from(tail)),
        )
    }

    /// `Ω₀(N) = Ω(N) − 2d(N) + 2^{ω(N)} + 1`, with `Ω₀(1) = 1`.
    pub fn omega_zero_bound(&self) -> BoundValue {
        if self.value == 1 {
            return BoundValue::from_integer(1);
        }
        let d = self.num_divisors() as i64;
        let shift = -2 * d + (1i64 << self.omega_count()) + 1;
        BoundValue(self.omega_bound().0 + BigRational::from_integer(BigInt::from(shift)))
    }
}

impl fmt::Display for FactoredInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}

fn pow_rational(base: &BigRational, exp: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Exact value of one of the Ω-family bounds or κ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoundValue(pub BigRational);

impl BoundValue {
    pub fn from_integer(n: i64) -> Self {
        BoundValue(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Whether `count ≤ self`.
    pub fn admits(&self, count: u64) -> bool {
        BigRational::from_integer(BigInt::from(count)) <= self.0
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(m)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Factorize by trial division; each prime found is confirmed by Miller–Rabin.
pub fn factorize(n: i64) -> Result<FactoredInt> {
    if n <= 0 {
        return Err(Error::NonPositive(n));
    }
    let value = n as u64;
    let mut rest = value;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    debug_assert!(factors.iter().all(|&(p, _)| is_prime(p)));
    Ok(FactoredInt { value, factors })
}

/// Factorize a known-positive integer.
pub fn factored(n: u64) -> FactoredInt {
    factorize(i64::try_from(n).expect("level fits in i64")).expect("positive")
}

/// The divisors of `N` in the fixed order used to index every vector and
/// matrix over `D_N`.
///
/// The exponent vectors over ascending primes are ranked in mixed radix
/// with the smallest prime varying fastest, so for `N = 12` the order is
/// `1, 2, 4, 3, 6, 12`. Position 0 holds 1 and the last position holds `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorBasis {
    modulus: FactoredInt,
    divisors: Vec<u64>,
    index: HashMap<u64, usize>,
}

impl DivisorBasis {
    pub fn new(modulus: FactoredInt) -> Self {
        let mut divisors = vec![1u64];
        for &(p, e) in modulus.factors() {
            let block = divisors.clone();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                divisors.extend(block.iter().map(|d| d * pk));
            }
        }
        let index = divisors.iter().enumerate().map(|(i, &d)| (d, i)).collect();
        DivisorBasis {
            modulus,
            divisors,
            index,
        }
    }

    pub fn for_level(n: u64) -> Self {
        DivisorBasis::new(factored(n))
    }

    pub fn modulus(&self) -> &FactoredInt {
        &self.modulus
    }

    pub fn level(&self) -> u64 {
        self.modulus.value()
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn len(&self) -> usize {
        self.divisors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn index_of(&self, d: u64) -> Option<usize> {
        self.index.get(&d).copied()
    }

    /// `φ(gcd(t, N/t))` for each `t`, the number of inequivalent cusps with
    /// denominator `t`.
    pub fn cusp_multiplicities(&self) -> Vec<u64> {
        let n = self.level();
        self.divisors
            .iter()
            .map(|&t| factored(t.gcd(&(n / t))).phi())
            .collect()
    }
}

impl Serialize for DivisorBasis {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.divisors.serialize(s)
    }
}
