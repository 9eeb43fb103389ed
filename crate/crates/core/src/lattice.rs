//! The lattice `A_N·ℤ^{D_N}` of 24-scaled order vectors and bounded
//! enumeration of its points.
//!
//! A holomorphic eta quotient on Γ₀(N) is the same thing as a point of this
//! lattice with nonnegative coordinates, so every search in the crate runs
//! here, in order space, and maps back to exponents at the end.

use std::ops::ControlFlow;
use std::sync::Arc;

use num_integer::Integer;
use rayon::prelude::*;

use crate::error::Result;
use crate::linalg;
use crate::matrices::{self, IntegerMatrix};
use crate::numtheory::{DivisorBasis, FactoredInt};

/// Everything about Γ₀(N) that the searches need, computed once.
#[derive(Clone, Debug)]
pub struct LevelContext {
    level: FactoredInt,
    basis: Arc<DivisorBasis>,
    a: IntegerMatrix,
    b: IntegerMatrix,
    m: Vec<u64>,
    cusp_weights: Vec<i64>,
    psi: i64,
    hermite: Vec<i64>,
    m_lcm: i128,
}

/// Per-coordinate upper bounds (inclusive, lower bound is 0) and an optional
/// exact value for the cusp-weighted sum `Σ φ(gcd(t,N/t))·x_t`.
#[derive(Clone, Debug)]
pub struct Region {
    pub upper: Vec<i64>,
    pub weighted_sum: Option<i64>,
}

impl LevelContext {
    pub fn new(level: &FactoredInt) -> Result<Self> {
        let a = matrices::order_matrix(level);
        let b = matrices::b_matrix(level);
        let m = matrices::denominators(level);
        let basis = a.basis().clone();
        let n = basis.len();
        let hermite = linalg::lower_hermite_basis(a.entries(), n)?;
        let m_lcm = m.iter().fold(1u64, |acc, v| acc.lcm(v)) as i128;
        let cusp_weights = basis.cusp_multiplicities().iter().map(|&v| v as i64).collect();
        Ok(LevelContext {
            level: level.clone(),
            psi: level.psi() as i64,
            basis,
            a,
            b,
            m,
            cusp_weights,
            hermite,
            m_lcm,
        })
    }

    pub fn level(&self) -> &FactoredInt {
        &self.level
    }

    pub fn basis(&self) -> &Arc<DivisorBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn order_matrix(&self) -> &IntegerMatrix {
        &self.a
    }

    pub fn b_matrix(&self) -> &IntegerMatrix {
        &self.b
    }

    /// `m_{t,N}` in basis order.
    pub fn denominators(&self) -> &[u64] {
        &self.m
    }

    /// `φ(gcd(t, N/t))` in basis order.
    pub fn cusp_weights(&self) -> &[i64] {
        &self.cusp_weights
    }

    pub fn psi(&self) -> i64 {
        self.psi
    }

    /// `A_N·X`.
    pub fn orders(&self, exponents: &[i64]) -> Vec<i64> {
        self.a.apply(exponents)
    }

    /// `A_N⁻¹·y` when it is integral.
    ///
    /// Uses `A_N⁻¹ = B_N·diag(1/m)` over the common denominator `lcm(m)`.
    pub fn exponents(&self, orders: &[i64]) -> Option<Vec<i64>> {
        let n = self.dim();
        let scaled: Vec<i128> = orders
            .iter()
            .zip(&self.m)
            .map(|(&y, &m)| y as i128 * (self.m_lcm / m as i128))
            .collect();
        let mut out = Vec::with_capacity(n);
        for d in 0..n {
            let s: i128 = self.b.row(d).iter().zip(&scaled).map(|(&b, &y)| b as i128 * y).sum();
            if s % self.m_lcm != 0 {
                return None;
            }
            out.push(i64::try_from(s / self.m_lcm).ok()?);
        }
        Some(out)
    }

    pub fn contains(&self, orders: &[i64]) -> bool {
        self.exponents(orders).is_some()
    }

    /// `Σ φ(gcd(t,N/t))·y_t / ψ(N)`, the weight numerator of the quotient
    /// whose scaled order vector is `y`, when the division is exact.
    pub fn degree(&self, orders: &[i64]) -> Option<i64> {
        let s = self.valence_sum(orders);
        (s % self.psi == 0).then_some(s / self.psi)
    }

    pub fn valence_sum(&self, orders: &[i64]) -> i64 {
        orders.iter().zip(&self.cusp_weights).map(|(y, w)| y * w).sum()
    }

    /// Region of holomorphic quotients of weight `k/2`.
    pub fn weight_region(&self, k: i64) -> Region {
        let total = k * self.psi;
        Region {
            upper: self.cusp_weights.iter().map(|w| total / w).collect(),
            weighted_sum: Some(total),
        }
    }

    /// Region `0 ≤ y ≤ bound`, optionally on a fixed weight.
    pub fn box_region(&self, bound: &[i64], k: Option<i64>) -> Region {
        Region {
            upper: bound.to_vec(),
            weighted_sum: k.map(|k| k * self.psi),
        }
    }

    /// Visit the lattice points of `region` in lexicographic order.
    pub fn for_each_point<F>(&self, region: &Region, mut visit: F) -> ControlFlow<()>
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        let n = self.dim();
        debug_assert_eq!(region.upper.len(), n);
        let search = Search::new(self, region);
        let mut x = vec![0; n];
        let mut c = vec![0; n];
        search.descend(0, 0, &mut x, &mut c, &mut visit)
    }

    /// Lattice points of `region` in lexicographic order, split across the
    /// rayon pool by the value of the first coordinate.
    pub fn collect_points(&self, region: &Region) -> Vec<Vec<i64>> {
        let n = self.dim();
        let search = Search::new(self, region);
        let firsts: Vec<i64> = search.range(0, &[0; 0], 0).collect();
        let chunks: Vec<Vec<Vec<i64>>> = firsts
            .into_par_iter()
            .map(|x0| {
                let s = &search;
                let mut x = vec![0; n];
                let mut c = vec![0; n];
                let mut out = Vec::new();
                x[0] = x0;
                c[0] = x0 / self.hermite[0];
                let used = x0 * s.weights[0];
                let _ = s.descend(1, used, &mut x, &mut c, &mut |p: &[i64]| {
                    out.push(p.to_vec());
                    ControlFlow::Continue(())
                });
                out
            })
            .collect();
        chunks.into_iter().flatten().collect()
    }
}

struct Search<'a> {
    ctx: &'a LevelContext,
    upper: &'a [i64],
    weights: &'a [i64],
    target: Option<i64>,
    /// `Σ_{j ≥ t} w_j·upper_j`, the most weight coordinates `t..` can absorb.
    reach: Vec<i64>,
}

impl<'a> Search<'a> {
    fn new(ctx: &'a LevelContext, region: &'a Region) -> Self {
        let n = ctx.dim();
        let weights = &ctx.cusp_weights[..];
        let mut reach = vec![0i64; n + 1];
        for t in (0..n).rev() {
            reach[t] = reach[t + 1].saturating_add(weights[t].saturating_mul(region.upper[t]));
        }
        Search {
            ctx,
            upper: &region.upper,
            weights,
            target: region.weighted_sum,
            reach,
        }
    }

    /// Admissible values of coordinate `t` given the coefficients of the
    /// earlier Hermite columns.
    fn range(&self, t: usize, c: &[i64], used: i64) -> impl Iterator<Item = i64> {
        let n = self.ctx.dim();
        let h = &self.ctx.hermite;
        let step = h[t * n + t];
        let offset: i64 = (0..t).map(|j| h[t * n + j] * c[j]).sum();
        let start = offset.rem_euclid(step);
        let mut hi = self.upper[t];
        let mut lo = 0;
        if let Some(total) = self.target {
            let room = total - used;
            hi = hi.min(room.div_euclid(self.weights[t]));
            // the remaining coordinates must be able to absorb what is left
            let rest = self.reach[t + 1];
            let need = room - rest;
            if need > 0 {
                lo = Integer::div_ceil(&need, &self.weights[t]);
            }
        }
        let first = if lo <= start { start } else { start + Integer::div_ceil(&(lo - start), &step) * step };
        (first..=hi.max(first - 1)).step_by(step as usize)
    }

    fn descend<F>(
        &self,
        t: usize,
        used: i64,
        x: &mut [i64],
        c: &mut [i64],
        visit: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[i64]) -> ControlFlow<()>,
    {
        let n = self.ctx.dim();
        if t == n {
            if self.target.is_none_or(|s| s == used) {
                return visit(x);
            }
            return ControlFlow::Continue(());
        }
        let h = &self.ctx.hermite;
        let step = h[t * n + t];
        let offset: i64 = (0..t).map(|j| h[t * n + j] * c[j]).sum();
        for v in self.range(t, c, used) {
            x[t] = v;
            c[t] = (v - offset) / step;
            self.descend(t + 1, used + v * self.weights[t], x, c, visit)?;
        }
        ControlFlow::Continue(())
    }
}
