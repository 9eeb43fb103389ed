//! Order matrices over the divisor lattice.
//!
//! `A_N(t, d)` is 24 times the order of `η_d` at the cusp `1/t` of Γ₀(N).
//! All matrices here factor as Kronecker products of prime-power blocks,
//! assembled in [`DivisorBasis`] order (largest prime most significant).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg;
use crate::numtheory::{factored, is_prime, DivisorBasis, FactoredInt};

/// Square integer matrix indexed by `D_N × D_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    basis: Arc<DivisorBasis>,
    entries: Vec<i64>,
}

/// Square matrix of reduced exact rationals indexed by `D_N × D_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    basis: Arc<DivisorBasis>,
    entries: Vec<BigRational>,
}

impl IntegerMatrix {
    pub fn new(basis: Arc<DivisorBasis>, entries: Vec<i64>) -> Result<Self> {
        let n = basis.len();
        if entries.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: entries.len(),
            });
        }
        Ok(IntegerMatrix { basis, entries })
    }

    pub fn basis(&self) -> &Arc<DivisorBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    /// Entry by position in the basis.
    pub fn at(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.dim() + col]
    }

    /// Entry by divisor labels.
    pub fn entry(&self, t: u64, d: u64) -> Option<i64> {
        Some(self.at(self.basis.index_of(t)?, self.basis.index_of(d)?))
    }

    pub fn row(&self, i: usize) -> &[i64] {
        let n = self.dim();
        &self.entries[i * n..(i + 1) * n]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.dim()).map(|i| self.at(i, j)).collect()
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        (0..self.dim())
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            basis: self.basis.clone(),
            entries: self
                .entries
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let rows: Vec<Value> = (0..n).map(|i| json!(self.row(i))).collect();
        json!({ "level": self.basis.level(), "basis": self.basis.divisors(), "rows": rows })
    }
}

impl RationalMatrix {
    pub fn basis(&self) -> &Arc<DivisorBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn at(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.dim() + col]
    }

    pub fn entry(&self, t: u64, d: u64) -> Option<&BigRational> {
        Some(self.at(self.basis.index_of(t)?, self.basis.index_of(d)?))
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        RationalMatrix {
            basis: self.basis.clone(),
            entries: linalg::matmul(&self.entries, &other.entries, self.dim()),
        }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        self.entries.iter().enumerate().all(|(k, v)| {
            if k / n == k % n {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    }

    /// Common denominator of every entry.
    pub fn denominator_lcm(&self) -> BigInt {
        self.entries
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }

    pub fn to_json(&self) -> Value {
        let n = self.dim();
        let rows: Vec<Value> = (0..n)
            .map(|i| {
                Value::Array(
                    (0..n)
                        .map(|j| Value::String(fraction_string(self.at(i, j))))
                        .collect(),
                )
            })
            .collect();
        json!({ "level": self.basis.level(), "basis": self.basis.divisors(), "rows": rows })
    }
}

fn fraction_string(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn write_table(f: &mut fmt::Formatter<'_>, basis: &DivisorBasis, cells: Vec<String>) -> fmt::Result {
    let n = basis.len();
    let labels: Vec<String> = basis.divisors().iter().map(u64::to_string).collect();
    let label_w = labels.iter().map(String::len).max().unwrap_or(1);
    let mut widths = vec![0usize; n];
    for (k, c) in cells.iter().enumerate() {
        widths[k % n] = widths[k % n].max(c.len());
    }
    for (j, l) in labels.iter().enumerate() {
        widths[j] = widths[j].max(l.len());
    }
    write!(f, "{:>w$} |", "", w = label_w)?;
    for (j, l) in labels.iter().enumerate() {
        write!(f, " {:>w$}", l, w = widths[j])?;
    }
    writeln!(f)?;
    for i in 0..n {
        write!(f, "{:>w$} |", labels[i], w = label_w)?;
        for j in 0..n {
            write!(f, " {:>w$}", cells[i * n + j], w = widths[j])?;
        }
        writeln!(f)?;
    }
    Ok(())
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(f, &self.basis, self.entries.iter().map(i64::to_string).collect())
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_table(f, &self.basis, self.entries.iter().map(fraction_string).collect())
    }
}

fn check_prime_power(p: u64, n: u32) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("prime-power exponent must be positive".into()));
    }
    Ok(())
}

fn prime_power_basis(p: u64, n: u32) -> Arc<DivisorBasis> {
    Arc::new(DivisorBasis::for_level(p.pow(n)))
}

/// Assemble `⊗_{pⁿ‖N} block(p, n)` in divisor-basis order.
fn kron_over_primes<T>(level: &FactoredInt, block: impl Fn(u64, u32) -> Vec<T>) -> Vec<T>
where
    T: Clone + One + std::ops::Mul<Output = T>,
{
    let mut acc = vec![T::one()];
    let mut dim = 1;
    for &(p, n) in level.factors() {
        let b = block(p, n);
        let bn = n as usize + 1;
        acc = linalg::kron(&b, bn, &acc, dim);
        dim *= bn;
    }
    acc
}

fn a_block(p: u64, n: u32) -> Vec<i64> {
    let size = n as usize + 1;
    let mut out = Vec::with_capacity(size * size);
    for i in 0..=n {
        for j in 0..=n {
            // pⁿ·gcd(pʲ,pⁱ)² / (pʲ·gcd(p²ⁱ,pⁿ))
            let e = n + 2 * i.min(j) - j - (2 * i).min(n);
            out.push(p.pow(e) as i64);
        }
    }
    out
}

/// `A_{pⁿ}` from the cusp-order formula.
pub fn order_matrix_prime_power(p: u64, n: u32) -> Result<IntegerMatrix> {
    check_prime_power(p, n)?;
    IntegerMatrix::new(prime_power_basis(p, n), a_block(p, n))
}

/// `A_N` as the Kronecker product of its prime-power blocks.
pub fn order_matrix(level: &FactoredInt) -> IntegerMatrix {
    let entries = kron_over_primes(level, a_block);
    IntegerMatrix {
        basis: Arc::new(DivisorBasis::new(level.clone())),
        entries,
    }
}

/// `A_N(t, d) = N·gcd(d,t)² / (d·gcd(t²,N))` evaluated entry by entry.
pub fn order_matrix_direct(level: &FactoredInt) -> IntegerMatrix {
    let basis = Arc::new(DivisorBasis::new(level.clone()));
    let n = level.value();
    let mut entries = Vec::with_capacity(basis.len() * basis.len());
    for &t in basis.divisors() {
        for &d in basis.divisors() {
            let g = d.gcd(&t);
            let num = n * g * g;
            let den = d * (t * t).gcd(&n);
            debug_assert_eq!(num % den, 0);
            entries.push((num / den) as i64);
        }
    }
    IntegerMatrix { basis, entries }
}

fn a_inverse_block(p: u64, n: u32) -> Vec<BigRational> {
    let pb = BigInt::from(p);
    let prefactor = BigRational::new(
        BigInt::one(),
        pb.pow(n - 1) * (&pb * &pb - 1u32),
    );
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let v: BigInt = if i == j && (i == 0 || i == n) {
                pb.clone()
            } else if i.abs_diff(j) == 1 {
                -pb.pow(j.min(n - j))
            } else if i == j {
                pb.pow((j - 1).min(n - j - 1)) * (&pb * &pb + 1u32)
            } else {
                BigInt::zero()
            };
            out.push(&prefactor * BigRational::from_integer(v));
        }
    }
    out
}

/// Closed-form tridiagonal `A_{pⁿ}⁻¹`.
pub fn order_inverse_prime_power(p: u64, n: u32) -> Result<RationalMatrix> {
    check_prime_power(p, n)?;
    Ok(RationalMatrix {
        basis: prime_power_basis(p, n),
        entries: a_inverse_block(p, n),
    })
}

/// `A_N⁻¹` assembled from the prime-power closed forms.
///
/// In debug builds the product `A_N·A_N⁻¹` is checked against the identity.
pub fn order_matrix_inverse(level: &FactoredInt) -> RationalMatrix {
    let inv = RationalMatrix {
        basis: Arc::new(DivisorBasis::new(level.clone())),
        entries: kron_over_primes(level, a_inverse_block),
    };
    debug_assert!(
        order_matrix(level).to_rational().mul(&inv).is_identity(),
        "closed-form inverse failed for N = {}",
        level.value()
    );
    inv
}

/// Smallest `m_{t,N} > 0` with `m_{t,N}·A_N⁻¹(·,t)` integral, for every `t`.
pub fn denominators(level: &FactoredInt) -> Vec<u64> {
    let inv = order_matrix_inverse(level);
    let n = inv.dim();
    (0..n)
        .map(|j| {
            let m = (0..n).fold(BigInt::one(), |acc, i| acc.lcm(inv.at(i, j).denom()));
            u64::try_from(m).expect("column denominator fits in u64")
        })
        .collect()
}

/// `m_{t,N}` for a single divisor `t`.
pub fn denominator_clearer(level: &FactoredInt, t: u64) -> Result<u64> {
    let basis = DivisorBasis::new(level.clone());
    let idx = basis.index_of(t).ok_or(Error::NotADivisor {
        divisor: t,
        modulus: level.value(),
    })?;
    Ok(denominators(level)[idx])
}

/// `B_N(·,t) = m_{t,N}·A_N⁻¹(·,t)`.
pub fn b_matrix(level: &FactoredInt) -> IntegerMatrix {
    let inv = order_matrix_inverse(level);
    let m = denominators(level);
    let n = inv.dim();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for (j, &mj) in m.iter().enumerate() {
            let v = inv.at(i, j) * BigRational::from_integer(mj.into());
            debug_assert!(v.is_integer());
            entries.push(i64::try_from(v.to_integer()).expect("B_N entry fits in i64"));
        }
    }
    IntegerMatrix {
        basis: inv.basis.clone(),
        entries,
    }
}

fn b_inverse_block(p: u64, n: u32) -> Vec<BigRational> {
    let pb = BigInt::from(p);
    let prefactor = BigRational::new(BigInt::one(), pb.pow(n - 1) * (&pb * &pb - 1u32));
    let mut out = Vec::new();
    for i in 0..=n {
        for j in 0..=n {
            let e = if i == 0 {
                n - j
            } else if i == n {
                j
            } else {
                n - 1 - i.abs_diff(j)
            };
            out.push(&prefactor * BigRational::from_integer(pb.pow(e)));
        }
    }
    out
}

/// Closed-form `B_{pⁿ}⁻¹`.
pub fn b_inverse_prime_power(p: u64, n: u32) -> Result<RationalMatrix> {
    check_prime_power(p, n)?;
    Ok(RationalMatrix {
        basis: prime_power_basis(p, n),
        entries: b_inverse_block(p, n),
    })
}

/// `B_N⁻¹` as the Kronecker product of the prime-power closed forms.
pub fn b_matrix_inverse(level: &FactoredInt) -> RationalMatrix {
    RationalMatrix {
        basis: Arc::new(DivisorBasis::new(level.clone())),
        entries: kron_over_primes(level, b_inverse_block),
    }
}

/// `C_N = ⊗ diag(p−1, p²−1, …, p²−1, p−1)`.
pub fn c_matrix(level: &FactoredInt) -> IntegerMatrix {
    let entries = kron_over_primes(level, |p, n| {
        let size = n as usize + 1;
        let mut b = vec![0i64; size * size];
        for i in 0..size {
            let v = if i == 0 || i == size - 1 { p - 1 } else { p * p - 1 };
            b[i * size + i] = v as i64;
        }
        b
    });
    IntegerMatrix {
        basis: Arc::new(DivisorBasis::new(level.clone())),
        entries,
    }
}

/// Exact determinant by Bareiss elimination.
pub fn determinant(m: &IntegerMatrix) -> BigInt {
    let big: Vec<BigInt> = m.entries.iter().map(|&v| BigInt::from(v)).collect();
    linalg::bareiss_determinant(&big, m.dim())
}

/// `det(B_N)` via `det(A⊗B) = det(A)^{dim B}·det(B)^{dim A}` over the
/// prime-power blocks.
pub fn b_determinant_by_blocks(level: &FactoredInt) -> Result<BigInt> {
    let mut det = BigInt::one();
    let mut dim = 1u32;
    for &(p, n) in level.factors() {
        let block = b_matrix(&factored(p.pow(n)));
        let bd = determinant(&block);
        let bn = n + 1;
        det = det.pow(bn) * bd.pow(dim);
        dim *= bn;
    }
    Ok(det)
}
