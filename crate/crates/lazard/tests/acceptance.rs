//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use common::*;
use lazard::algebra::{partition_count, BRing, Integers, Ring};
use lazard::chow::{euler_number_model, fundamental_class_l, VarietySpec};
use lazard::cobordism::{binomial_gcd, decomposable_by_lattice, decomposable_test, is_p_power_minus_one, lazard_basis, p_typical_chern_check};
use lazard::fgl::{cha_closed_form, cha_fgl, chx_closed_form, chx_fgl, chx_mult_closed_form, universal_fgl, universal_fgl_mod_p};
use lazard::fixedpoint::{catalog, factorwise_p1n, verify_additive, verify_euler, verify_ks_all, verify_l2, verify_lmod2, BuiltAction, Builtin};
use lazard::report::{CheckRecord, Status};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use proptest::test_runner::TestRunner;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

type Outcome = Result<String, String>;

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {:.1?}, limit {:?}", t, limit))
}

fn build(b: &Builtin) -> Result<BuiltAction, String> {
    b.action().and_then(|a| a.build()).map_err(|e| format!("{}: {}", b.name(), e))
}

/// The actions named by the relation criteria.
fn relation_catalog() -> Vec<Builtin> {
    let mut out = Vec::new();
    for n in 1..=6 {
        for a in 0..n {
            out.push(Builtin::LinearPn { n, a });
        }
    }
    for n in 1..=5 {
        out.push(Builtin::FactorwiseP1n { n });
    }
    for n in 1..=3 {
        out.push(Builtin::SwapSquare { spec: VarietySpec::projective(n) });
    }
    out
}

fn all_pass(name: &str, rs: &[CheckRecord]) -> Result<usize, String> {
    match rs.iter().find(|r| r.status != Status::Pass) {
        Some(r) => Err(format!("{}: {} is {:?} ({:?})", name, r.id, r.status, r.note)),
        None => Ok(rs.len()),
    }
}

fn no_failures(name: &str, rs: &[CheckRecord]) -> Result<usize, String> {
    match rs.iter().find(|r| r.status == Status::Fail) {
        Some(r) => Err(format!("{}: {} failed ({:?} vs {:?}, {:?})", name, r.id, r.lhs, r.rhs, r.note)),
        None => Ok(rs.iter().filter(|r| r.status == Status::Pass).count()),
    }
}

fn status_of(rs: &[CheckRecord], id: &str) -> Option<Status> {
    rs.iter().find(|r| r.id == id).map(|r| r.status)
}

fn fgl_closed_forms() -> Outcome {
    let start = Instant::now();
    ensure(chx_fgl(12).map_err(|e| e.to_string())?.law == chx_closed_form(12).law, || "CHX law differs from its closed form".into())?;
    ensure(cha_fgl(12).map_err(|e| e.to_string())?.law == cha_closed_form(12).law, || "CHA law differs from its closed form".into())?;
    within(start, Duration::from_secs(5))?;
    Ok("CHX and CHA laws equal their closed forms at order 12".into())
}

fn formal_multiplication() -> Outcome {
    let f = chx_fgl(12).map_err(|e| e.to_string())?;
    for a in -3..=5 {
        ensure(f.formal_mult(a) == chx_mult_closed_form(a, 12), || format!("[{}](x) differs", a))?;
    }
    for p in [2u64, 3, 5] {
        let g = universal_fgl_mod_p(12, p).map_err(|e| e.to_string())?;
        ensure(g.formal_mult(p as i64).is_empty(), || format!("[{}](x) ≠ 0 over F_{}[b]", p, p))?;
    }
    Ok("[a](x) for a = -3..5 and [p](x) = 0 for p = 2, 3, 5 at order 12".into())
}

/// `Some(p)` when `m = p^q` with `p` prime and `q ≥ 1`, by trial division.
fn prime_power(m: u64) -> Option<u64> {
    let p = (2..=m).find(|d| m % d == 0)?;
    let mut r = m;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

fn binomial_gcds() -> Outcome {
    for n in 1..=64u64 {
        let m = n + 1;
        let mut c = BigInt::one();
        let mut g = BigInt::zero();
        for i in 1..m {
            c = c * (m - i + 1) / i;
            g = g.gcd(&c);
        }
        let expected = BigInt::from(prime_power(m).unwrap_or(1));
        ensure(g == expected, || format!("n = {}: gcd {} but expected {}", n, g, expected))?;
        ensure(binomial_gcd(m) == g, || format!("n = {}: library gcd {}", n, binomial_gcd(m)))?;
        if let Some(p) = prime_power(m) {
            ensure(is_p_power_minus_one(n, p), || format!("n = {} not recognised as {}^q − 1", n, p))?;
        }
    }
    Ok("gcd of C(n+1, i) is p exactly when n = p^q − 1, for n ≤ 64".into())
}

fn lazard_lattice() -> Outcome {
    let start = Instant::now();
    let e = |e: lazard::Error| e.to_string();
    for n in 0..=8u32 {
        let piece = lazard_basis(n, n + 2).map_err(e)?;
        ensure(piece.rank() == partition_count(n), || format!("rank of degree {} is {}", n, piece.rank()))?;
        let pn = fundamental_class_l(&VarietySpec::projective(n).build().map_err(e)?);
        ensure(piece.contains(&pn).map_err(e)?, || format!("[P^{}] is not in the lattice", n))?;
    }
    let b = BRing::new(Integers);
    let l1 = lazard_basis(1, 3).map_err(e)?;
    let two_b1 = b.scale(&b.b(1), &BigInt::from(2));
    ensure(l1.rank() == 1 && l1.contains(&two_b1).map_err(e)? && !l1.contains(&b.b(1)).map_err(e)?, || "degree 1 is not 2b₁ℤ".into())?;
    let a11 = universal_fgl(3).map_err(e)?.coefficient(1, 1);
    let p1 = fundamental_class_l(&VarietySpec::projective(1).build().map_err(e)?);
    ensure(p1 == b.neg(&a11), || "[P^1] ≠ −a₁₁".into())?;
    within(start, Duration::from_secs(60))?;
    Ok("ranks p(n) and [P^n] membership for n ≤ 8, degree 1 is 2b₁ℤ, [P^1] = −a₁₁".into())
}

fn l2_relations() -> Outcome {
    let mut checks = 0;
    for b in relation_catalog() {
        let a = build(&b)?;
        let rs = verify_l2(&a, None).map_err(|e| e.to_string())?;
        ensure(rs.len() == 2 * (a.dim as usize + 1), || format!("{}: wrong number of records", b.name()))?;
        checks += all_pass(&b.name(), &rs)?;
    }
    Ok(format!("{} checks over {} actions, every m from 0 to dim X", checks, relation_catalog().len()))
}

fn fixed_point_formula() -> Outcome {
    let mut checks = 0;
    for b in relation_catalog() {
        let a = build(&b)?;
        checks += all_pass(&b.name(), &verify_ks_all(&a).map_err(|e| e.to_string())?)?;
    }
    Ok(format!("{} partition and polynomial checks mod 2", checks))
}

fn euler_congruences() -> Outcome {
    let mut odd = 0;
    for b in catalog() {
        let a = build(&b)?;
        let rs = verify_euler(&a);
        no_failures(&b.name(), &rs)?;
        ensure(status_of(&rs, "euler.mod2") == Some(Status::Pass), || format!("{}: mod 2", b.name()))?;
        if a.dim % 2 == 1 {
            odd += 1;
            ensure(status_of(&rs, "euler.mod4") == Some(Status::Pass), || format!("{}: mod 4", b.name()))?;
        }
    }
    for n in 2..=5 {
        let a = factorwise_p1n(n).and_then(|x| x.build()).map_err(|e| e.to_string())?;
        let chi: BigInt = a.components.iter().map(|c| euler_number_model(&c.model)).sum();
        ensure(chi == BigInt::from(1u64 << n), || format!("χ(fix) = {} for n = {}", chi, n))?;
        ensure(status_of(&verify_euler(&a), "euler.fix4") == Some(Status::Pass), || format!("4 ∤ χ(fix) for n = {}", n))?;
    }
    Ok(format!("mod 2 on {} actions, mod 4 on {} odd-dimensional ones, 4 | 2^n for n = 2..5", catalog().len(), odd))
}

fn lmod2_relations() -> Outcome {
    let start = Instant::now();
    let mut actions = Vec::new();
    for n in 1..=4 {
        for a in 0..n {
            actions.push(Builtin::LinearPn { n, a });
        }
    }
    for n in 1..=3 {
        actions.push(Builtin::FactorwiseP1n { n });
    }
    let mut checks = 0;
    for b in &actions {
        let a = build(b)?;
        let rs = verify_lmod2(&a, None, 4).map_err(|e| e.to_string())?;
        ensure(rs.len() == 2 * (a.dim as usize + 1), || format!("{}: wrong number of records", b.name()))?;
        checks += all_pass(&b.name(), &rs)?;
    }
    within(start, Duration::from_secs(120))?;
    Ok(format!("{} checks over {} actions", checks, actions.len()))
}

fn additive_numbers() -> Outcome {
    let e = |e: lazard::Error| e.to_string();
    let mut checks = 0;
    for b in catalog() {
        let a = build(&b)?;
        checks += no_failures(&b.name(), &verify_additive(&a).map_err(e)?)?;
    }
    let proj = |dims: Vec<u32>| VarietySpec::MultiProj { dims };
    let d = decomposable_test(&proj(vec![1]), 2).map_err(e)?;
    ensure(!d.in_lmodp_decomposable && d.in_lp_decomposable, || "P^1 verdict".into())?;
    let d = decomposable_test(&proj(vec![2]), 2).map_err(e)?;
    ensure(!d.in_lmodp_decomposable && !d.in_lp_decomposable, || "P^2 verdict".into())?;
    for dims in [vec![1, 1], vec![1, 2], vec![1, 1, 1]] {
        for p in [2, 3] {
            let d = decomposable_test(&proj(dims.clone()), p).map_err(e)?;
            ensure(d.in_lmodp_decomposable && d.in_lp_decomposable, || format!("{:?} p = {} not decomposable", dims, p))?;
        }
    }
    for (dims, p) in [(vec![1], 2), (vec![2], 2), (vec![1, 1], 2), (vec![1, 2], 3)] {
        let n: u32 = dims.iter().sum();
        let spec = proj(dims.clone());
        let d = decomposable_test(&spec, p).map_err(e)?;
        let lattice = decomposable_by_lattice(&fundamental_class_l(&spec.build().map_err(e)?), n, p).map_err(e)?;
        ensure(lattice == (d.in_lp_decomposable, d.in_lmodp_decomposable), || format!("{:?} p = {}: lattice disagrees", dims, p))?;
    }
    let mut entries = 0;
    for b in catalog() {
        let action = b.action().map_err(e)?;
        let v = action.ambient.build().map_err(e)?;
        if v.components.len() != 1 || v.components[0].dim > 4 || v.components[0].dim == 0 {
            continue;
        }
        for p in [2, 3] {
            let r = p_typical_chern_check(&action.ambient, p).map_err(e)?;
            ensure(r.pass(), || format!("{} p = {}: divisibility fails", b.name(), p))?;
            entries += r.entries.len();
        }
    }
    Ok(format!("{} additive checks, decomposability verdicts, {} divisibility entries", checks, entries))
}

fn property_suites() -> Outcome {
    let run = |name: &str, r: Result<(), String>| r.map_err(|e| format!("{}: {}", name, e));
    let mut runner = TestRunner::new(config());
    run("formal group law axioms", runner.run(&bvals(), |bs| check_fgl_axioms(&bs)).map_err(|e| e.to_string()))?;
    let mut runner = TestRunner::new(config());
    run("reversion", runner.run(&random_series(), |(l, r)| check_reversion(l, &r)).map_err(|e| e.to_string()))?;
    let mut runner = TestRunner::new(config());
    run("P(E)P(−E) = 1", runner.run(&model_and_bundle(), |(d, e)| check_p_inverse(&d, &e)).map_err(|e| e.to_string()))?;
    let mut runner = TestRunner::new(config());
    run("λ-inversion", runner.run(&(model_and_bundle(), 0usize..64), |((d, e), k)| check_lambda_inversion(&d, &e, k)).map_err(|e| e.to_string()))?;
    let mut runner = TestRunner::new(config());
    run("pushforward of trivial bundles", runner.run(&(small_dims(), 1u32..=3, 0u32..=6), |(d, r, m)| check_quillen_trivial(&d, r, m)).map_err(|e| e.to_string()))?;
    Ok(format!("5 suites × {} cases", CASES))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("formal group law closed forms", fgl_closed_forms),
        ("formal multiplication", formal_multiplication),
        ("binomial gcd arithmetic", binomial_gcds),
        ("Lazard lattice", lazard_lattice),
        ("relations in L₂", l2_relations),
        ("fixed-point Chern number formula mod 2", fixed_point_formula),
        ("Euler number congruences", euler_congruences),
        ("relations modulo 2L", lmod2_relations),
        ("additive Chern number and decomposability", additive_numbers),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {}: {} [{} ms]", i + 1, name, detail, ms),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {}: {} [{} ms]", i + 1, name, why, ms);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
