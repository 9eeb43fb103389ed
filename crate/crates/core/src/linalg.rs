//! Dense exact linear algebra on small square matrices stored row-major:
//! Kronecker products, Bareiss determinants, diagonalization (Smith form
//! without the divisibility chain) and lower-triangular Hermite bases.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Kronecker product `a ⊗ b` of square matrices of sizes `an` and `bn`.
///
/// Row `(i, k)` of the result is stored at `i·bn + k`, so `a` is the more
/// significant index.
pub fn kron<T>(a: &[T], an: usize, b: &[T], bn: usize) -> Vec<T>
where
    T: Clone + std::ops::Mul<Output = T>,
{
    debug_assert_eq!(a.len(), an * an);
    debug_assert_eq!(b.len(), bn * bn);
    let n = an * bn;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..an {
        for k in 0..bn {
            for j in 0..an {
                for l in 0..bn {
                    out.push(a[i * an + j].clone() * b[k * bn + l].clone());
                }
            }
        }
    }
    out
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(m: &[BigInt], n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r * n + k].is_zero()) else {
                return BigInt::zero();
            };
            for j in 0..n {
                a.swap(k * n + j, r * n + j);
            }
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                a[i * n + j] = v / &prev;
            }
            a[i * n + k] = BigInt::zero();
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// A diagonalization `U·M·V = diag(d)` with `U`, `V` unimodular.
///
/// Only `U⁻¹` is kept: it maps a coefficient vector `c` with `0 ≤ cᵢ < dᵢ`
/// to a representative of the matching class of `ℤⁿ / M·ℤⁿ`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub diagonal: Vec<BigInt>,
    pub u_inverse: Vec<BigInt>,
}

pub fn diagonalize(m: &[BigInt], n: usize) -> Diagonalization {
    let mut a = m.to_vec();
    let mut uinv: Vec<BigInt> = (0..n * n)
        .map(|i| if i / n == i % n { BigInt::one() } else { BigInt::zero() })
        .collect();

    for k in 0..n {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut pivot: Option<(usize, usize)> = None;
            for i in k..n {
                for j in k..n {
                    let v = &a[i * n + j];
                    if !v.is_zero()
                        && pivot.is_none_or(|(pi, pj)| v.abs() < a[pi * n + pj].abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break };
            if pi != k {
                for j in 0..n {
                    a.swap(k * n + j, pi * n + j);
                }
                for i in 0..n {
                    uinv.swap(i * n + k, i * n + pi);
                }
            }
            if pj != k {
                for i in 0..n {
                    a.swap(i * n + k, i * n + pj);
                }
            }
            let p = a[k * n + k].clone();
            let mut clean = true;
            for i in k + 1..n {
                let q = a[i * n + k].div_floor(&p);
                if !q.is_zero() {
                    for j in k..n {
                        let t = &q * &a[k * n + j];
                        a[i * n + j] -= t;
                    }
                    // row_i -= q·row_k  ⇒  col_k(U⁻¹) += q·col_i(U⁻¹)
                    for r in 0..n {
                        let t = &q * &uinv[r * n + i];
                        uinv[r * n + k] += t;
                    }
                }
                clean &= a[i * n + k].is_zero();
            }
            for j in k + 1..n {
                let q = a[k * n + j].div_floor(&p);
                if !q.is_zero() {
                    for i in k..n {
                        let t = &q * &a[i * n + k];
                        a[i * n + j] -= t;
                    }
                }
                clean &= a[k * n + j].is_zero();
            }
            if clean {
                break;
            }
        }
        if a[k * n + k].is_negative() {
            for j in 0..n {
                a[k * n + j] = -a[k * n + j].clone();
            }
            for i in 0..n {
                uinv[i * n + k] = -uinv[i * n + k].clone();
            }
        }
    }
    Diagonalization {
        diagonal: (0..n).map(|k| a[k * n + k].clone()).collect(),
        u_inverse: uinv,
    }
}

/// Lower-triangular basis `H` of the lattice spanned by the columns of `m`,
/// with positive diagonal and `0 ≤ H[t][j] < H[t][t]` for `j < t`.
///
/// With this basis the coordinates of a lattice point are fixed one at a
/// time: once `x₀ … x_{t−1}` are chosen, `x_t` ranges over a single residue
/// class modulo `H[t][t]`.
pub fn lower_hermite_basis(m: &[i64], n: usize) -> Result<Vec<i64>> {
    let mut a: Vec<BigInt> = m.iter().map(|&v| BigInt::from(v)).collect();
    for t in 0..n {
        loop {
            let mut best: Option<usize> = None;
            for j in t..n {
                let v = &a[t * n + j];
                if !v.is_zero() && best.is_none_or(|b| v.abs() < a[t * n + b].abs()) {
                    best = Some(j);
                }
            }
            let Some(b) = best else {
                return Err(Error::InvalidArgument("lattice basis is singular".into()));
            };
            if b != t {
                for i in 0..n {
                    a.swap(i * n + t, i * n + b);
                }
            }
            let p = a[t * n + t].clone();
            let mut done = true;
            for j in t + 1..n {
                let q = a[t * n + j].div_floor(&p);
                if !q.is_zero() {
                    for i in t..n {
                        let s = &q * &a[i * n + t];
                        a[i * n + j] -= s;
                    }
                }
                done &= a[t * n + j].is_zero();
            }
            if done {
                break;
            }
        }
        if a[t * n + t].is_negative() {
            for i in t..n {
                a[i * n + t] = -a[i * n + t].clone();
            }
        }
        let p = a[t * n + t].clone();
        for j in 0..t {
            let q = a[t * n + j].div_floor(&p);
            if !q.is_zero() {
                for i in t..n {
                    let s = &q * &a[i * n + t];
                    a[i * n + j] -= s;
                }
            }
        }
    }
    a.iter()
        .map(|v| v.to_i64().ok_or(Error::Overflow("Hermite basis")))
        .collect()
}

pub fn identity<T: Zero + One + Clone>(n: usize) -> Vec<T> {
    (0..n * n)
        .map(|i| if i / n == i % n { T::one() } else { T::zero() })
        .collect()
}

pub fn matmul<T>(a: &[T], b: &[T], n: usize) -> Vec<T>
where
    T: Zero + Clone,
    for<'x> &'x T: std::ops::Mul<&'x T, Output = T>,
{
    let mut out = vec![T::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = out[i * n + j].clone() + aik * &b[k * n + j];
            }
        }
    }
    out
}
