//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;

use etaforge::enumerate::{self, enumerate_by_weight, in_parallelepiped, parallelepiped_points};
use etaforge::eta::{self, EtaQuotient};
use etaforge::factor::{self, IrreducibilityVerdict};
use etaforge::guards::Guards;
use etaforge::lattice::LevelContext;
use etaforge::matrices;
use etaforge::tables;
use etaforge::{factored, DivisorBasis};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn matrix_identities() -> Outcome {
    for n in 1..=120u64 {
        let f = factored(n);
        let a = matrices::order_matrix(&f);
        ensure(a == matrices::order_matrix_direct(&f), || format!("N = {n}: Kronecker and direct A differ"))?;
        let ai = matrices::order_matrix_inverse(&f);
        ensure(a.to_rational().mul(&ai).is_identity(), || format!("N = {n}: A·A⁻¹ ≠ I"))?;
        let b = matrices::b_matrix(&f).to_rational();
        ensure(b.mul(&matrices::b_matrix_inverse(&f)).is_identity(), || format!("N = {n}: B·B⁻¹ ≠ I"))?;
    }
    Ok("N ≤ 120".into())
}

fn kappa_table() -> Outcome {
    for &(n, _, kappa) in tables::K_MAX_KAPPA {
        ensure(factored(n).kappa() == kappa, || format!("κ({n}) = {} ≠ {kappa}", factored(n).kappa()))?;
    }
    Ok(format!("{} rows", tables::K_MAX_KAPPA.len()))
}

fn lattice_count() -> Outcome {
    let mut total = 0;
    for n in [2u64, 3, 4, 5, 6, 8, 9, 12] {
        let f = factored(n);
        let count = parallelepiped_points(&f).map_err(err)?.len();
        let det = matrices::determinant(&matrices::b_matrix(&f));
        ensure(BigInt::from(count) == det, || format!("N = {n}: {count} points, det {det}"))?;
        ensure(BigRational::from_integer(det.clone()) == f.omega_prime_bound().0, || {
            format!("N = {n}: det {det} ≠ Ω′ {}", f.omega_prime_bound())
        })?;
        total += count;
    }
    Ok(format!("{total} points"))
}

fn prime_levels() -> Outcome {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let census = factor::nonfactorizable_census(&factored(p), &Guards::default()).map_err(err)?;
        let top: BTreeSet<String> = census.level_exact().map(|e| e.quotient.to_string()).collect();
        let want: BTreeSet<String> = [format!("{p}^1"), format!("1^{p} {p}^-1"), format!("1^-1 {p}^{p}")]
            .into_iter()
            .collect();
        ensure(top == want, || format!("p = {p}: level-p entries {top:?}"))?;
        let lower: Vec<String> = census
            .entries()
            .iter()
            .filter(|e| e.level != p)
            .map(|e| e.quotient.to_string())
            .collect();
        ensure(lower == ["1^1"], || format!("p = {p}: lower-level entries {lower:?}"))?;
    }
    Ok("p ∈ {2,3,5,7,11,13}".into())
}

fn k_max_slice() -> Outcome {
    // 25 and 27 are absent from the table: k_max(p²) = (p−1)², and 4 for 3³.
    let extra = [(25u64, 16i64), (27, 4)];
    let guards = Guards::default();
    let mut bad = Vec::new();
    for n in [6u64, 10, 12, 14, 15, 16, 18, 20, 24, 25, 27, 32] {
        let want = tables::k_max_reference(n)
            .map(|r| r.0)
            .or_else(|| extra.iter().find(|e| e.0 == n).map(|e| e.1))
            .expect("reference value");
        let got = factor::k_max(&factored(n), &guards).map_err(err)?;
        if got != Some(want) {
            bad.push(format!("N = {n}: {got:?} ≠ {want}"));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("12 levels".into())
}

fn k_min_slice() -> Outcome {
    let guards = Guards::default();
    let mut bad = Vec::new();
    for n in [6u64, 10, 12, 14, 15, 16, 18, 20, 21, 22, 24, 26, 28, 30] {
        let want = tables::k_min_reference(n).expect("table row");
        let got = factor::k_min(&factored(n), None, &guards).map_err(err)?;
        if got != Some(want) {
            bad.push(format!("N = {n}: {got:?} ≠ {want}"));
        }
    }
    ensure(bad.is_empty(), || bad.join("; "))?;
    Ok("14 levels".into())
}

fn extremal_divisibility() -> Outcome {
    for n in [1u64, 2, 3, 4, 6] {
        let f = factored(n);
        let report = factor::verify_extremal_divisibility(&f, &Guards::default()).map_err(err)?;
        ensure(report.passed(), || format!("N = {n}: {report:?}"))?;
        let fn_weight = eta::extremal_quotient(n).map_err(err)?.weight_numerator();
        ensure(fn_weight == f.kappa() as i64, || format!("N = {n}: 2·weight(F_N) = {fn_weight}"))?;
    }
    Ok("N ∈ {1,2,3,4,6}".into())
}

fn bounds() -> Outcome {
    for n in [2u64, 3, 4, 6, 8, 9] {
        let c = factor::nonfactorizable_census(&factored(n), &Guards::default()).map_err(err)?;
        ensure(c.omega_bound().admits(c.len() as u64), || format!("N = {n}: {} > Ω", c.len()))?;
        let exact = c.level_exact().count() as u64;
        ensure(c.omega_zero_bound().admits(exact), || format!("N = {n}: {exact} > Ω₀"))?;
    }
    for n in 1..=1000u64 {
        let f = factored(n);
        let omega = f.omega_bound().0;
        let cap = BigInt::from(f.rad()).pow(2 * f.num_divisors() as u32);
        ensure(omega <= BigRational::from_integer(cap), || format!("N = {n}: Ω above rad^(2d)"))?;
        let rhs = BigRational::from_integer(BigInt::from(f.num_divisors())) + f.omega_prime_bound().0
            - f.omega_dprime_bound().0;
        ensure(omega == rhs, || format!("N = {n}: Ω ≠ d + Ω′ − Ω″"))?;
    }
    Ok("census bounds on 6 levels, identities for N ≤ 1000".into())
}

fn irreducible_family() -> Outcome {
    let mut members = 0;
    for n in [4u64, 8, 9, 12, 16, 27] {
        let f = factored(n);
        let phi_rad = common::phi(common::rad(n));
        for m in factor::irreducible_family(&f).map_err(err)? {
            let g = num_integer::Integer::gcd(&m.t, &(n / m.t));
            let want = (phi_rad * common::phi(common::rad(g))) as i64;
            ensure(m.k == want && m.quotient.weight_numerator() == want, || {
                format!("N = {n}, t = {}: k = {}", m.t, m.k)
            })?;
            ensure(factor::is_quasi_irreducible(&m.quotient).map_err(err)?, || {
                format!("N = {n}, t = {}: factorizable", m.t)
            })?;
            let verdict = factor::is_irreducible_up_to(&m.quotient, 1).map_err(err)?;
            ensure(matches!(verdict, IrreducibilityVerdict::UnrefutedUpToBound { .. }), || {
                format!("N = {n}, t = {}: {verdict:?}", m.t)
            })?;
            members += 1;
        }
    }
    Ok(format!("{members} family members"))
}

fn oracle_equivalence() -> Outcome {
    for n in 1..=4u64 {
        let order = DivisorBasis::for_level(n).divisors().to_vec();
        for k in 0..=4 {
            let got: BTreeSet<Vec<i64>> = enumerate_by_weight(&factored(n), k)
                .map_err(err)?
                .into_iter()
                .map(|f| f.exponents().to_vec())
                .collect();
            ensure(got == common::brute_holomorphic(n, &order, k, 24), || format!("N = {n}, k = {k}"))?;
        }
    }
    for n in 1..=8u64 {
        let f = factored(n);
        let ctx = LevelContext::new(&f).map_err(err)?;
        let mut generated = BTreeSet::new();
        enumerate::for_each_parallelepiped_point(&ctx, |x| {
            generated.insert(x.to_vec());
            ControlFlow::Continue(())
        })
        .map_err(err)?;
        ensure(generated.iter().all(|x| in_parallelepiped(&ctx, x)), || format!("N = {n}: generated point fails"))?;
        let b = ctx.b_matrix();
        let radius: i64 = (0..b.dim()).map(|i| b.row(i).iter().map(|v| v.abs()).sum::<i64>()).max().unwrap_or(0);
        let mut inside = 0usize;
        let mut x = vec![-radius; ctx.dim()];
        loop {
            if in_parallelepiped(&ctx, &x) {
                inside += 1;
                ensure(generated.contains(&x), || format!("N = {n}: {x:?} missed by generator"))?;
            }
            let mut i = 0;
            loop {
                if i == x.len() {
                    break;
                }
                x[i] += 1;
                if x[i] <= radius {
                    break;
                }
                x[i] = -radius;
                i += 1;
            }
            if i == x.len() {
                break;
            }
        }
        ensure(inside == generated.len(), || format!("N = {n}: box has {inside}, generator {}", generated.len()))?;
    }
    Ok("enumeration N ≤ 4, k ≤ 4; parallelepiped N ≤ 8".into())
}

fn delta_factorization() -> Outcome {
    let delta: EtaQuotient = "1^24".parse().map_err(err)?;
    for m in [2u64, 1] {
        let w = factor::factorizable_on(&delta, m)
            .map_err(err)?
            .ok_or_else(|| format!("no witness on Γ₀({m})"))?;
        w.validate(&delta.with_modulus(m).map_err(err)?).map_err(err)?;
        ensure(w.left.modulus() == m && w.right.modulus() == m, || format!("witness modulus ≠ {m}"))?;
    }
    Ok("witnesses on Γ₀(2) and Γ₀(1)".into())
}

fn conjectures() -> Outcome {
    let rows = factor::check_conjecture_1(tables::K_MIN).map_err(err)?;
    let failing: Vec<u64> = rows.iter().filter(|r| !r.holds).map(|r| r.level).collect();
    let first = if failing.is_empty() {
        format!("4k² ≥ max np on all {} rows", rows.len())
    } else {
        format!("4k² ≥ max np mismatch at {failing:?}")
    };
    let second = match factor::check_conjecture_2(3, 4, &Guards::default()) {
        Ok(r) if r.mismatch => format!("3⁴ mismatch: formula {} vs {:?}", r.predicted, r.computed),
        Ok(r) => format!("3⁴ formula {} agrees", r.predicted),
        Err(etaforge::Error::Guard(msg)) => format!("3⁴ skipped by guard ({msg})"),
        Err(e) => return Err(e.to_string()),
    };
    Ok(format!("{first}; {second}"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("matrix identities", Duration::from_secs(30), matrix_identities),
        ("κ reproduction", Duration::from_secs(1), kappa_table),
        ("lattice point count", Duration::from_secs(120), lattice_count),
        ("prime-level classification", Duration::from_secs(60), prime_levels),
        ("k_max slice", Duration::from_secs(1800), k_max_slice),
        ("k_min slice", Duration::from_secs(1800), k_min_slice),
        ("F_N divisibility", Duration::from_secs(300), extremal_divisibility),
        ("bound checks", Duration::from_secs(60), bounds),
        ("irreducible family", Duration::from_secs(600), irreducible_family),
        ("oracle equivalence", Duration::from_secs(300), oracle_equivalence),
        ("Δ factorization", Duration::from_secs(1), delta_factorization),
        ("conjecture reports", Duration::from_secs(1800), conjectures),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= *limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over time limit")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status}  {name}: {detail} ({:.2} s, limit {} s)",
            i + 1,
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
