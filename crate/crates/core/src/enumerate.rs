//! Complete enumerations over Γ₀(N): holomorphic quotients of a given
//! weight, lattice points of the fundamental parallelepiped of `B_N`, and the
//! counts that bound the number of non-factorizable quotients.

use std::ops::ControlFlow;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::eta::EtaQuotient;
use crate::lattice::LevelContext;
use crate::linalg;
use crate::numtheory::{DivisorBasis, FactoredInt};

/// Holomorphic quotients of weight `k/2` on Γ₀(N), in lexicographic order of
/// their scaled order vectors.
pub fn enumerate_by_weight(level: &FactoredInt, k: i64) -> Result<Vec<EtaQuotient>> {
    let ctx = LevelContext::new(level)?;
    enumerate_in(&ctx, k)
}

pub fn enumerate_in(ctx: &LevelContext, k: i64) -> Result<Vec<EtaQuotient>> {
    if k < 0 {
        return Err(Error::InvalidArgument(format!("weight numerator {k} is negative")));
    }
    ctx.collect_points(&ctx.weight_region(k))
        .into_iter()
        .map(|y| quotient_from_orders(ctx, &y, k))
        .collect()
}

/// Stream the same set as [`enumerate_in`] without materializing it.
pub fn for_each_by_weight<F>(ctx: &LevelContext, k: i64, mut visit: F) -> Result<()>
where
    F: FnMut(EtaQuotient, &[i64]) -> ControlFlow<()>,
{
    if k < 0 {
        return Err(Error::InvalidArgument(format!("weight numerator {k} is negative")));
    }
    let mut failure = None;
    let _ = ctx.for_each_point(&ctx.weight_region(k), |y| match quotient_from_orders(ctx, y, k) {
        Ok(f) => visit(f, y),
        Err(e) => {
            failure = Some(e);
            ControlFlow::Break(())
        }
    });
    failure.map_or(Ok(()), Err)
}

fn quotient_from_orders(ctx: &LevelContext, y: &[i64], k: i64) -> Result<EtaQuotient> {
    let x = ctx
        .exponents(y)
        .ok_or(Error::Overflow("order vector outside the lattice"))?;
    let f = EtaQuotient::new(ctx.basis().clone(), x)?;
    assert_eq!(f.weight_numerator(), k, "valence identity broken for {f}");
    Ok(f)
}

/// `0 ≤ (A_N X)_t < m_{t,N}` for all `t`, i.e. `B_N⁻¹X ∈ [0,1)^{D_N}`.
pub fn in_parallelepiped(ctx: &LevelContext, exponents: &[i64]) -> bool {
    ctx.orders(exponents)
        .iter()
        .zip(ctx.denominators())
        .all(|(&y, &m)| 0 <= y && y < m as i64)
}

/// Visit every `X ∈ ℤ^{D_N}` with `B_N⁻¹X ∈ [0,1)^{D_N}`.
///
/// Residue classes of `ℤ^{D_N}/B_N ℤ^{D_N}` come from a diagonalization of
/// `B_N`; each representative `r` is moved to `r − B_N⌊B_N⁻¹r⌋`.
pub fn for_each_parallelepiped_point<F>(ctx: &LevelContext, mut visit: F) -> Result<()>
where
    F: FnMut(&[i64]) -> ControlFlow<()>,
{
    let n = ctx.dim();
    let b = ctx.b_matrix();
    let big: Vec<BigInt> = b.entries().iter().map(|&v| BigInt::from(v)).collect();
    let diag = linalg::diagonalize(&big, n);
    let sizes: Vec<u64> = diag
        .diagonal
        .iter()
        .map(|d| d.to_u64().ok_or(Error::Overflow("parallelepiped size")))
        .collect::<Result<_>>()?;
    let uinv: Vec<i128> = diag
        .u_inverse
        .iter()
        .map(|v| v.to_i128().ok_or(Error::Overflow("unimodular transform")))
        .collect::<Result<_>>()?;
    let m: Vec<i128> = ctx.denominators().iter().map(|&v| v as i128).collect();
    let a = ctx.order_matrix();

    let mut c = vec![0u64; n];
    let mut r = vec![0i128; n];
    let mut x = vec![0i64; n];
    loop {
        for (i, ri) in r.iter_mut().enumerate() {
            *ri = (0..n).map(|j| uinv[i * n + j] * c[j] as i128).sum();
        }
        let q: Vec<i128> = (0..n)
            .map(|t| {
                let y: i128 = a.row(t).iter().zip(&r).map(|(&a, &r)| a as i128 * r).sum();
                Integer::div_floor(&y, &m[t])
            })
            .collect();
        for d in 0..n {
            let shift: i128 = b.row(d).iter().zip(&q).map(|(&b, &q)| b as i128 * q).sum();
            x[d] = i64::try_from(r[d] - shift).map_err(|_| Error::Overflow("parallelepiped point"))?;
        }
        debug_assert!(in_parallelepiped(ctx, &x));
        if visit(&x).is_break() {
            return Ok(());
        }
        // mixed-radix increment over the diagonal
        let mut i = 0;
        loop {
            if i == n {
                return Ok(());
            }
            c[i] += 1;
            if c[i] < sizes[i] {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// All parallelepiped points, sorted lexicographically by exponent vector.
pub fn parallelepiped_points(level: &FactoredInt) -> Result<Vec<Vec<i64>>> {
    let ctx = LevelContext::new(level)?;
    let mut out = Vec::new();
    for_each_parallelepiped_point(&ctx, |x| {
        out.push(x.to_vec());
        ControlFlow::Continue(())
    })?;
    out.sort();
    Ok(out)
}

/// Parallelepiped points with nonnegative coordinates that are not unit
/// vectors (the origin included).
pub fn nonneg_offsphere_count(level: &FactoredInt) -> Result<u64> {
    let ctx = LevelContext::new(level)?;
    let mut count = 0;
    for_each_parallelepiped_point(&ctx, |x| {
        let square_sum: i64 = x.iter().map(|v| v * v).sum();
        if x.iter().all(|&v| v >= 0) && square_sum != 1 {
            count += 1;
        }
        ControlFlow::Continue(())
    })?;
    Ok(count)
}

/// `#{t | N : rad(N) ∤ gcd(t, N/t)}` counted directly.
pub fn count_rad_nondividing_divisors(level: &FactoredInt) -> u64 {
    let n = level.value();
    let rad = level.rad();
    let count = DivisorBasis::new(level.clone())
        .divisors()
        .iter()
        .filter(|&&t| t.gcd(&(n / t)) % rad != 0)
        .count() as u64;
    debug_assert_eq!(count as i64, level.rad_nondividing_count());
    count
}

/// Lattice points of `conv(0, columns of C_N)`: `x ≥ 0` with
/// `Σ x_t / c_t ≤ 1` for the diagonal `c` of `C_N`.
pub fn simplex_points(level: &FactoredInt) -> Result<Vec<Vec<i64>>> {
    let d = level.num_divisors() as usize;
    if d > 6 {
        return Err(Error::Guard(format!(
            "simplex enumeration needs d(N) <= 6, got {d}"
        )));
    }
    let c = crate::matrices::c_matrix(level);
    let diag: Vec<i64> = (0..d).map(|i| c.at(i, i)).collect();
    let l = diag.iter().fold(1i64, |acc, v| acc.lcm(v));
    let w: Vec<i64> = diag.iter().map(|v| l / v).collect();
    let mut out = Vec::new();
    let mut x = vec![0i64; d];
    fn rec(t: usize, room: i64, w: &[i64], x: &mut [i64], out: &mut Vec<Vec<i64>>) {
        if t == w.len() {
            out.push(x.to_vec());
            return;
        }
        for v in 0..=room / w[t] {
            x[t] = v;
            rec(t + 1, room - v * w[t], w, x, out);
        }
        x[t] = 0;
    }
    rec(0, l, &w, &mut x, &mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::factored;

    fn texts(v: &[EtaQuotient]) -> Vec<String> {
        v.iter().map(ToString::to_string).collect()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(texts(&enumerate_by_weight(&factored(1), 1).unwrap()), vec!["1^1"]);
        let mut two = texts(&enumerate_by_weight(&factored(2), 1).unwrap());
        two.sort();
        assert_eq!(two, vec!["1^-1 2^2", "1^1", "1^2 2^-1", "2^1"]);
        let zero = enumerate_by_weight(&factored(2), 0).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_constant());
        assert!(enumerate_by_weight(&factored(2), -1).is_err());
    }

    #[test]
    fn streaming_matches_collected() {
        let ctx = LevelContext::new(&factored(6)).unwrap();
        let mut streamed = Vec::new();
        for_each_by_weight(&ctx, 2, |f, _| {
            streamed.push(f);
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(streamed, enumerate_in(&ctx, 2).unwrap());
    }

    #[test]
    fn parallelepiped_counts() {
        for (n, det) in [(2u64, 3usize), (4, 12), (6, 576)] {
            let pts = parallelepiped_points(&factored(n)).unwrap();
            assert_eq!(pts.len(), det, "N = {n}");
            let mut dedup = pts.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), det);
        }
        let two = parallelepiped_points(&factored(2)).unwrap();
        assert_eq!(two, vec![vec![0, 0], vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn offsphere_counts_meet_lower_bound() {
        for n in [2u64, 3, 4, 5, 6, 8, 9] {
            let f = factored(n);
            let count = nonneg_offsphere_count(&f).unwrap();
            assert!(
                num_rational::BigRational::from_integer(count.into()) >= f.omega_dprime_bound().0,
                "N = {n}: {count} < {}",
                f.omega_dprime_bound()
            );
        }
    }

    #[test]
    fn rad_nondividing_examples() {
        assert_eq!(count_rad_nondividing_divisors(&factored(4)), 2);
        assert_eq!(count_rad_nondividing_divisors(&factored(6)), 4);
        assert_eq!(count_rad_nondividing_divisors(&factored(36)), 8);
    }

    #[test]
    fn simplex_examples() {
        assert_eq!(simplex_points(&factored(2)).unwrap().len(), 3);
        assert_eq!(simplex_points(&factored(3)).unwrap().len(), 6);
        let four = simplex_points(&factored(4)).unwrap();
        assert_eq!(four.len(), 6);
        assert!(simplex_points(&factored(720)).is_err());
    }
}
