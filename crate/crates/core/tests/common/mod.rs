//! Independent reference implementations used by the integration tests.
//! Nothing here calls into the library's matrix or search code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Trial-division factorization into `(p, e)` pairs.
pub fn prime_powers(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

pub fn rad(n: u64) -> u64 {
    prime_powers(n).iter().map(|&(p, _)| p).product()
}

/// `φ(rad N)·∏ ((n−1)(p−1)+2)`.
pub fn kappa(n: u64) -> u64 {
    let pp = prime_powers(n);
    let phi_rad: u64 = pp.iter().map(|&(p, _)| p - 1).product();
    phi_rad * pp.iter().map(|&(p, e)| (e as u64 - 1) * (p - 1) + 2).product::<u64>()
}

/// 24 times the order of `η(dz)` at the cusp `1/t` of Γ₀(N).
pub fn order_entry(n: u64, t: u64, d: u64) -> i64 {
    let g = d.gcd(&t);
    (n * g * g / (d * (t * t).gcd(&n))) as i64
}

/// `A_N` with rows and columns in the given divisor order.
pub fn order_matrix(n: u64, order: &[u64]) -> Vec<Vec<i64>> {
    order
        .iter()
        .map(|&t| order.iter().map(|&d| order_entry(n, t, d)).collect())
        .collect()
}

pub fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Gauss–Jordan inverse over ℚ.
pub fn rational_inverse(m: &[Vec<i64>]) -> Vec<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&v| rat(v)).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero()).expect("singular matrix");
        a.swap(c, p);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pivot = a[c].clone();
                for (x, y) in a[r].iter_mut().zip(pivot) {
                    *x -= &f * y;
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn apply(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter().map(|r| r.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

/// Every `X ∈ [−bound, bound]^D` with `σ(X) = k` and `A_N X ≥ 0`, exponents
/// indexed by `order`.
pub fn brute_holomorphic(n: u64, order: &[u64], k: i64, bound: i64) -> BTreeSet<Vec<i64>> {
    let a = order_matrix(n, order);
    let dim = order.len();
    let mut out = BTreeSet::new();
    let mut x = vec![-bound; dim];
    loop {
        // the last coordinate is fixed by the weight
        let head: i64 = x[..dim - 1].iter().sum();
        let last = k - head;
        if (-bound..=bound).contains(&last) {
            x[dim - 1] = last;
            if apply(&a, &x).iter().all(|&v| v >= 0) {
                out.insert(x.clone());
            }
        }
        let mut i = 0;
        loop {
            if i + 1 >= dim {
                return out;
            }
            x[i] += 1;
            if x[i] <= bound {
                break;
            }
            x[i] = -bound;
            i += 1;
        }
    }
}

/// Nonconstant holomorphic quotients of weight below `κ(N)/2` with no split
/// into two nonconstant holomorphic quotients on Γ₀(N), by exhaustion.
pub fn brute_nonfactorizable(n: u64, order: &[u64], bound: i64) -> BTreeSet<Vec<i64>> {
    let a = order_matrix(n, order);
    let layers: Vec<BTreeSet<Vec<i64>>> = (0..kappa(n) as i64)
        .map(|k| brute_holomorphic(n, order, k, bound))
        .collect();
    let mut out = BTreeSet::new();
    for k in 1..layers.len() {
        for f in &layers[k] {
            let splits = (1..k).any(|j| {
                layers[j].iter().any(|g| {
                    let h: Vec<i64> = f.iter().zip(g).map(|(a, b)| a - b).collect();
                    apply(&a, &h).iter().all(|&v| v >= 0)
                })
            });
            if !splits {
                out.insert(f.clone());
            }
        }
    }
    out
}

/// `∏_{n≥1}(1 − qⁿ)` to `terms` coefficients via the pentagonal number theorem.
pub fn euler_product(terms: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); terms];
    let mut j: i64 = 0;
    loop {
        let mut any = false;
        for g in [j * (3 * j - 1) / 2, j * (3 * j + 1) / 2] {
            if (g as usize) < terms {
                any = true;
                let sign = if j % 2 == 0 { 1 } else { -1 };
                c[g as usize] = BigInt::from(sign);
            }
        }
        if !any {
            return c;
        }
        j += 1;
    }
}

pub fn series_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    let mut out = vec![BigInt::zero(); n];
    for i in 0..n {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..n - i {
            out[i + j] += &a[i] * &b[j];
        }
    }
    out
}

/// Inverse of a series with constant term 1.
pub fn series_inverse(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len();
    let mut out = vec![BigInt::zero(); n];
    out[0] = BigInt::one();
    for i in 1..n {
        let s: BigInt = (1..=i).map(|j| &a[j] * &out[i - j]).sum();
        out[i] = -s;
    }
    out
}

/// Coefficients of `∏ η(dz)^{e_d}` after removing the leading power of q.
pub fn eta_series(pairs: &[(u64, i64)], terms: usize) -> Vec<BigInt> {
    let base = euler_product(terms);
    let mut out = vec![BigInt::zero(); terms];
    out[0] = BigInt::one();
    for &(d, e) in pairs {
        let mut scaled = vec![BigInt::zero(); terms];
        for (i, c) in base.iter().enumerate() {
            if i * d as usize >= terms {
                break;
            }
            scaled[i * d as usize] = c.clone();
        }
        let factor = if e < 0 { series_inverse(&scaled) } else { scaled };
        for _ in 0..e.abs() {
            out = series_mul(&out, &factor);
        }
    }
    out
}
