//! Factorization of holomorphic eta quotients into holomorphic eta quotients.
//!
//! On Γ₀(N) the holomorphic quotients form the monoid of lattice points of
//! `A_N·ℤ^{D_N}` with nonnegative coordinates, so `f` factors on Γ₀(N)
//! exactly when some lattice point `y ≠ 0, A_N X_f` satisfies
//! `0 ≤ y ≤ A_N X_f`.

use std::collections::HashMap;
use std::ops::ControlFlow;

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumerate;
use crate::error::{Error, Result};
use crate::eta::{self, EtaQuotient};
use crate::guards::Guards;
use crate::lattice::LevelContext;
use crate::numtheory::{factorize, BoundValue, FactoredInt};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorizationWitness {
    pub left: EtaQuotient,
    pub right: EtaQuotient,
}

impl FactorizationWitness {
    /// Both factors nonconstant and holomorphic, product equal to `target`.
    pub fn validate(&self, target: &EtaQuotient) -> Result<()> {
        let broken = |why: &str| Err(Error::InvalidArgument(format!("invalid witness for {target}: {why}")));
        if self.left.is_constant() || self.right.is_constant() {
            return broken("constant factor");
        }
        if !self.left.is_holomorphic() || !self.right.is_holomorphic() {
            return broken("factor is not holomorphic");
        }
        let product = self.left.mul(&self.right)?;
        if product.support() != target.support() {
            return broken("exponents do not add up");
        }
        Ok(())
    }
}

fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn level_context(modulus: u64) -> Result<LevelContext> {
    LevelContext::new(&factorize(modulus as i64)?)
}

/// `f` over the modulus of `ctx` with its scaled order vector, after the
/// preconditions of a factorization search.
fn prepare(ctx: &LevelContext, f: &EtaQuotient) -> Result<(EtaQuotient, Vec<i64>)> {
    if f.is_constant() {
        return Err(Error::Constant);
    }
    let g = f.with_modulus(ctx.level().value())?;
    let orders = ctx.orders(g.exponents());
    if orders.iter().any(|&v| v < 0) {
        return Err(Error::NotHolomorphic(ctx.level().value()));
    }
    Ok((g, orders))
}

/// A factorization of `f` on Γ₀(modulus), or `None` when none exists.
///
/// The left factor is the first order vector in lexicographic order, so the
/// witness is deterministic.
pub fn factorizable_on(f: &EtaQuotient, modulus: u64) -> Result<Option<FactorizationWitness>> {
    factorizable_in(&level_context(modulus)?, f)
}

pub fn factorizable_in(ctx: &LevelContext, f: &EtaQuotient) -> Result<Option<FactorizationWitness>> {
    let (g, x) = prepare(ctx, f)?;
    let mut hit = None;
    let _ = ctx.for_each_point(&ctx.box_region(&x, None), |y| {
        if y.iter().any(|&v| v != 0) && y != x.as_slice() {
            hit = Some(y.to_vec());
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    let Some(y) = hit else { return Ok(None) };
    let exps = ctx.exponents(&y).expect("lattice point has integral exponents");
    let left = EtaQuotient::new(ctx.basis().clone(), exps)?;
    let right = g.div(&left)?;
    let w = FactorizationWitness { left, right };
    w.validate(&g)?;
    Ok(Some(w))
}

/// Not factorizable on Γ₀(level(f)).
pub fn is_quasi_irreducible(f: &EtaQuotient) -> Result<bool> {
    let level = f.level()?;
    Ok(factorizable_on(f, level)?.is_none())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusSource {
    ParallelepipedPoint,
    BColumn(u64),
}

impl std::fmt::Display for CensusSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CensusSource::ParallelepipedPoint => write!(f, "parallelepiped"),
            CensusSource::BColumn(t) => write!(f, "B-column {t}"),
        }
    }
}

impl Serialize for CensusSource {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub quotient: EtaQuotient,
    pub source: CensusSource,
    pub level: u64,
    pub k: i64,
    pub quasi_irreducible: bool,
}

/// All nonconstant holomorphic eta quotients on Γ₀(N) that are not
/// factorizable on Γ₀(N).
#[derive(Clone, Debug)]
pub struct Census {
    level: FactoredInt,
    entries: Vec<CensusEntry>,
}

impl Census {
    pub fn level(&self) -> &FactoredInt {
        &self.level
    }

    /// Sorted by `k`, then by scaled order vector.
    pub fn entries(&self) -> &[CensusEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn level_exact(&self) -> impl Iterator<Item = &CensusEntry> {
        let n = self.level.value();
        self.entries.iter().filter(move |e| e.level == n)
    }

    /// Largest `k` among entries of level exactly N.
    pub fn k_max(&self) -> Option<i64> {
        self.level_exact().map(|e| e.k).max()
    }

    /// `|census| ≤ Ω(N)` and `|level-N entries| ≤ Ω₀(N)`.
    pub fn within_bounds(&self) -> bool {
        self.level.omega_bound().admits(self.len() as u64)
            && self.level.omega_zero_bound().admits(self.level_exact().count() as u64)
    }

    pub fn omega_bound(&self) -> BoundValue {
        self.level.omega_bound()
    }

    pub fn omega_zero_bound(&self) -> BoundValue {
        self.level.omega_zero_bound()
    }
}

/// Irreducible elements of the monoid of holomorphic quotients on Γ₀(N).
///
/// Candidates are the order vectors `0 ≤ y < m` (the fundamental
/// parallelepiped of `B_N`) plus the rays `m_t·e_t` (the columns of `B_N`).
/// They are processed by increasing weight; a candidate is irreducible when
/// no irreducible of smaller weight lies below it.
pub fn nonfactorizable_census(level: &FactoredInt, guards: &Guards) -> Result<Census> {
    guards.check_parallelepiped(level)?;
    let ctx = LevelContext::new(level)?;
    let n = ctx.dim();
    let psi = ctx.psi();
    let w = ctx.cusp_weights().to_vec();
    let m: Vec<i64> = ctx.denominators().iter().map(|&v| v as i64).collect();
    let upper: Vec<i64> = m.iter().map(|v| v - 1).collect();

    let box_top = upper.iter().zip(&w).map(|(u, w)| u * w).sum::<i64>() / psi;
    let rays: Vec<(usize, i64)> = (0..n).map(|t| (t, w[t] * m[t] / psi)).collect();
    let top = rays.iter().map(|r| r.1).max().unwrap_or(0).max(box_top);

    let mut irreducible: Vec<Vec<i64>> = Vec::new();
    let mut found: Vec<(Vec<i64>, CensusSource, i64)> = Vec::new();
    for k in 1..=top {
        let candidates = ctx.collect_points(&ctx.box_region(&upper, Some(k)));
        let keep: Vec<bool> = candidates
            .par_iter()
            .map(|y| !irreducible.iter().any(|h| leq(h, y)))
            .collect();
        let mut fresh = Vec::new();
        for (y, keep) in candidates.into_iter().zip(keep) {
            if keep {
                found.push((y.clone(), CensusSource::ParallelepipedPoint, k));
                fresh.push(y);
            }
        }
        for &(t, deg) in rays.iter().filter(|r| r.1 == k) {
            let mut y = vec![0; n];
            y[t] = m[t];
            debug_assert!(!irreducible.iter().any(|h| leq(h, &y)));
            found.push((y, CensusSource::BColumn(ctx.basis().divisors()[t]), deg));
        }
        irreducible.extend(fresh);
    }
    found.sort_by(|a, b| (a.2, &a.0).cmp(&(b.2, &b.0)));

    let sublevels: HashMap<u64, LevelContext> = ctx
        .basis()
        .divisors()
        .iter()
        .filter(|&&d| d != level.value())
        .map(|&d| Ok((d, level_context(d)?)))
        .collect::<Result<_>>()?;

    let entries = found
        .par_iter()
        .map(|(y, source, k)| {
            let x = ctx.exponents(y).expect("census point lies in the lattice");
            let quotient = EtaQuotient::new(ctx.basis().clone(), x)?;
            debug_assert_eq!(quotient.weight_numerator(), *k);
            let lvl = quotient.level()?;
            let quasi_irreducible = match sublevels.get(&lvl) {
                None => true,
                Some(sub) => factorizable_in(sub, &quotient)?.is_none(),
            };
            Ok(CensusEntry {
                quotient,
                source: *source,
                level: lvl,
                k: *k,
                quasi_irreducible,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Census {
        level: level.clone(),
        entries,
    })
}

/// Largest weight numerator of a level-N quotient not factorizable on Γ₀(N).
pub fn k_max(level: &FactoredInt, guards: &Guards) -> Result<Option<i64>> {
    Ok(nonfactorizable_census(level, guards)?.k_max())
}

/// Smallest `k ≤ cap` for which a primitive, quasi-irreducible holomorphic
/// eta quotient of level exactly N and weight `k/2` exists. `cap` defaults
/// to `κ(N)`.
pub fn k_min(level: &FactoredInt, cap: Option<i64>, guards: &Guards) -> Result<Option<i64>> {
    guards.check_divisors(level)?;
    let cap = cap.unwrap_or(level.kappa() as i64);
    let ctx = LevelContext::new(level)?;
    let n = level.value();
    for k in 1..=cap {
        guards.check_k(k)?;
        let candidates: Vec<EtaQuotient> = enumerate::enumerate_in(&ctx, k)?
            .into_iter()
            .filter(|f| f.level() == Ok(n) && f.is_primitive() == Ok(true))
            .collect();
        let hit = candidates
            .par_iter()
            .map(|f| factorizable_in(&ctx, f).map(|w| w.is_none()))
            .collect::<Result<Vec<bool>>>()?;
        if hit.into_iter().any(|b| b) {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremalReport {
    pub level: u64,
    /// `σ(F_N) = κ(N)`.
    pub weight_matches: bool,
    /// Every census entry divides `F_N`.
    pub divisible_by_all: bool,
    /// Whether the minimality direction was searched exhaustively.
    pub minimality_checked: bool,
    /// No holomorphic quotient of weight below `κ(N)/2` is divisible by
    /// every census entry.
    pub minimal: bool,
}

impl ExtremalReport {
    pub fn passed(&self) -> bool {
        self.weight_matches && self.divisible_by_all && self.minimal
    }
}

/// `F_N` is divisible by every non-factorizable quotient on Γ₀(N) and, for
/// `κ(N) ≤ 8`, nothing of smaller weight is.
pub fn verify_extremal_divisibility(level: &FactoredInt, guards: &Guards) -> Result<ExtremalReport> {
    let n = level.value();
    let f = eta::extremal_quotient(n)?;
    let kappa = level.kappa() as i64;
    let census = nonfactorizable_census(level, guards)?;
    let divisible_by_all = census
        .entries()
        .iter()
        .map(|e| EtaQuotient::divides(&e.quotient, &f))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    let minimality_checked = kappa <= 8;
    let mut minimal = true;
    if minimality_checked {
        let ctx = LevelContext::new(level)?;
        let tops: Vec<Vec<i64>> = census
            .entries()
            .iter()
            .map(|e| ctx.orders(e.quotient.exponents()))
            .collect();
        for k in 0..kappa {
            for y in ctx.collect_points(&ctx.weight_region(k)) {
                if tops.iter().all(|t| leq(t, &y)) {
                    minimal = false;
                }
            }
        }
    }
    Ok(ExtremalReport {
        level: n,
        weight_matches: f.weight_numerator() == kappa,
        divisible_by_all,
        minimality_checked,
        minimal,
    })
}

/// `η^{B_N(·,t)}` for every `t | N`.
pub fn column_quotients(level: u64) -> Result<Vec<EtaQuotient>> {
    eta::column_quotient_list(level)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMember {
    pub t: u64,
    pub quotient: EtaQuotient,
    pub k: i64,
}

/// `η^{B_N(·,t)}` for `t | N/rad(N)`, with `k = φ(rad N)·φ(rad gcd(t, N/t))`.
pub fn irreducible_family(level: &FactoredInt) -> Result<Vec<FamilyMember>> {
    let n = level.value();
    let inner = n / level.rad();
    let phi_rad_n = factorize(level.rad() as i64)?.phi();
    let columns = column_quotients(n)?;
    let mut out = Vec::new();
    for (&t, q) in level_divisors(level).iter().zip(columns) {
        if !inner.is_multiple_of(t) {
            continue;
        }
        let g = t.gcd(&(n / t));
        let k = phi_rad_n * factorize(factorize(g as i64)?.rad() as i64)?.phi();
        debug_assert_eq!(q.weight_numerator(), k as i64);
        out.push(FamilyMember { t, quotient: q, k: k as i64 });
    }
    Ok(out)
}

fn level_divisors(level: &FactoredInt) -> Vec<u64> {
    crate::numtheory::DivisorBasis::new(level.clone()).divisors().to_vec()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum IrreducibilityVerdict {
    RefutedWithWitness {
        modulus: u64,
        witness: FactorizationWitness,
    },
    UnrefutedUpToBound {
        largest_modulus: u64,
    },
}

/// Search for a factorization on Γ₀(N·rad(N)^j), `j = 1..=j_max`, where N is
/// the level of `f`. Finding none proves nothing beyond that bound.
pub fn is_irreducible_up_to(f: &EtaQuotient, j_max: u32) -> Result<IrreducibilityVerdict> {
    if !is_quasi_irreducible(f)? {
        return Err(Error::NotQuasiIrreducible(f.level()?));
    }
    let level = f.level()?;
    let rad = factorize(level as i64)?.rad();
    let mut modulus = level;
    for _ in 0..j_max {
        modulus *= rad;
        if let Some(witness) = factorizable_on(f, modulus)? {
            return Ok(IrreducibilityVerdict::RefutedWithWitness { modulus, witness });
        }
    }
    Ok(IrreducibilityVerdict::UnrefutedUpToBound {
        largest_modulus: modulus,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture1Row {
    pub level: u64,
    pub k_min: i64,
    /// `max n·p` over `pⁿ ‖ N`.
    pub max_np: u64,
    pub holds: bool,
}

/// `4·k_min(N)² ≥ max_{pⁿ‖N} n·p` for each `(N, k_min(N))`.
pub fn check_conjecture_1(rows: &[(u64, i64)]) -> Result<Vec<Conjecture1Row>> {
    rows.iter()
        .map(|&(n, k)| {
            let f = factorize(n as i64)?;
            let max_np = f
                .factors()
                .iter()
                .map(|&(p, e)| p * u64::from(e))
                .max()
                .unwrap_or(0);
            Ok(Conjecture1Row {
                level: n,
                k_min: k,
                max_np,
                holds: 4 * (k as i128) * (k as i128) >= max_np as i128,
            })
        })
        .collect()
}

/// `(n−1)(p−1)² − 2^{n mod 2}(⌊n/2⌋(p−1) − 1)` for an odd prime `p`, `n > 3`.
pub fn conjecture_2_value(p: u64, n: u32) -> Result<i64> {
    if !crate::numtheory::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p == 2 {
        return Err(Error::InvalidArgument("the prime-power formula is stated for odd primes".into()));
    }
    if n <= 3 {
        return Err(Error::InvalidArgument(format!("exponent must exceed 3, got {n}")));
    }
    let (p, n) = (p as i64, i64::from(n));
    let r = n % 2;
    Ok((n - 1) * (p - 1) * (p - 1) - (1 << r) * ((n / 2) * (p - 1) - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Conjecture2Report {
    pub p: u64,
    pub n: u32,
    pub predicted: i64,
    pub computed: Option<i64>,
    pub mismatch: bool,
}

/// Compare the prime-power formula with `k_max(pⁿ)` from the census.
pub fn check_conjecture_2(p: u64, n: u32, guards: &Guards) -> Result<Conjecture2Report> {
    let predicted = conjecture_2_value(p, n)?;
    let level = factorize(p.checked_pow(n).ok_or(Error::Overflow("prime power"))? as i64)?;
    let computed = k_max(&level, guards)?;
    Ok(Conjecture2Report {
        p,
        n,
        predicted,
        computed,
        mismatch: computed != Some(predicted),
    })
}
