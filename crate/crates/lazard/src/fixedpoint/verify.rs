//! Verifiers for the fixed-point relations. Each check computes both sides
//! from the action data and compares them; nothing is taken for granted.

use super::action::BuiltAction;
use crate::algebra::{partitions_up_to, BElem, BRing, Dyadic, DyadicRing, DomainElem, DomainRing, IntMod, Integers, Partition, Ring, SeriesRing, TruncatedSeries};
use crate::chow::{
    additive_chern_number_model, euler_number_model, exp_coeffs, fundamental_class_l, fundamental_class_model, specialize_class, twisted_pushforwards, ChowRing, QuillenData, Theory, Variety, VarietySpec,
};
use crate::cobordism::{decomposable_by_lattice, decomposable_test, is_p_power_minus_one, lattice_member_mod, lazard_basis, p_typical_chern_check};
use crate::error::{Error, Result};
use crate::fgl::universal_fgl;
use crate::report::CheckRecord;
use crate::symmfunc::{b_coefficient, chern_total, eval_epoly, power_sum_class, tangent_bundle, total_p, total_p_deformed, EPoly, VirtualSplitBundle};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

const L2_ROUTES: &str = "twisted pushforward of c₁(O(1))^m along ℙ(N⊕1): residue formula agrees with the bundle model";
const L2_CLASS: &str = "⟦ℙ(N⊕1)⟧ = ⟦X⟧ in L₂";
const L2_POWERS: &str = "⟦c₁(O_{ℙ(N⊕1)}(1))^m⟧ = 0 in L₂ for m ≥ 1";
const TN_HYP: &str = "fixed locus has no component of X and c_i(N) is even for i > 0";
const TN_X: &str = "every Chern number of X is even";
const TN_F: &str = "every Chern number of the fixed stratum of codimension r is even";
const TN_CONS: &str = "⟦c₁(O(1))^m⟧ over ℙ(N⊕1) equals Σ_r ⟦ℙ^{r−m}⟧⟦F^r⟧ in L₂ when c(N) is even";
const KS_ALPHA: &str = "c_α(X) = deg(c(−N)·c_α(−N{1} − T_F)) mod 2";
const KS_POLY: &str = "deg f(c(T_X)) = deg(c(−N)·f(c(N{1} + T_F))) mod 2";
const LM_ROUTES: &str = "⟦g(ζ)⟧ over ℙ(N⊕1), ζ = c₁(O(−1)): bundle model agrees with residue pushforwards through [−1]";
const LM_CLASS: &str = "⟦2v(ζ)⟧ is integral and congruent to ⟦X⟧ modulo 2L, where v(x)·[2](x) = x";
const LM_POWERS: &str = "⟦ζ^m v(ζ)⟧ lies in L for m ≥ 1";
const EU_2: &str = "χ(X) ≡ χ(X^μ₂) mod 2";
const EU_4: &str = "χ(X) ≡ χ(X^μ₂) mod 4 when dim X is odd";
const EU_DIV: &str = "4 divides χ(X^μ₂) when 2·dim X^μ₂ < dim X − 1";
const EU_ODD: &str = "χ(X) odd forces 2·dim X^μ₂ ≥ dim X";
const EU_ODD_N: &str = "dim X odd and 4 ∤ χ(X) force 2·dim X^μ₂ + 1 ≥ dim X";
const AD_I: &str = "c_(n)(X) ≡ c_(n)(ℙ(N⊕1)) mod 2";
const AD_VAN: &str = "deg(ξ^j c_(n−j)(T_{ℙ(N⊕1)})) ≡ 0 mod 2 for 0 < j ≤ n, ξ = c₁(O(1))";
const AD_II: &str = "c_(n)(X) ≡ c_(n)(ℙ(N⊕1)) + deg(ξ^j c_(n−j)(T_{ℙ(N⊕1)})) mod 4 when n+1 and n−j+1 are powers of two";
const AD_EVEN: &str = "c_(n)(X) is even when 2·dim X^μ₂ < n − 1";
const AD_FOUR: &str = "c_(n)(X) is divisible by 4 when 2·dim X^μ₂ < n − 1 and n = 2^q − 1";
const DEC_SMALL: &str = "⟦X⟧ is decomposable in L/2 when 2·dim X^μ₂ < dim X − 1 (decided on the lattice)";
const DEC_CRIT: &str = "decomposability in L/p and L_p read off c_(n)(X) agrees with the lattice computation";
const DEC_PTYP: &str = "p | c_α(X) when every α_i + 1 is a power of p, and p² | c_α(X) when ⟦X⟧ is decomposable in L/p";

fn lclass(a: &BElem<BigInt>) -> DomainElem {
    specialize_class(Theory::L, a)
}

fn mod2(a: &BElem<BigInt>) -> DomainElem {
    specialize_class(Theory::Lp(2), a)
}

fn residue(n: &BigInt, m: u64) -> DomainElem {
    let f = IntMod::new(m);
    f.to_domain(&f.reduce(n))
}

fn ambient_class(a: &BuiltAction) -> BElem<BigInt> {
    fundamental_class_l(&Variety { components: a.ambient.clone() })
}

/// The relations in `L₂` for `m = 0..=max_m`, with the residue route checked
/// against the bundle model first.
pub fn verify_l2(a: &BuiltAction, max_m: Option<u32>) -> Result<Vec<CheckRecord>> {
    let n = a.dim;
    let top = max_m.unwrap_or(n).min(n);
    let b = BRing::new(Integers);
    let x = ambient_class(a);
    let mut quillen = vec![b.zero(); top as usize + 1];
    let mut direct = vec![b.zero(); top as usize + 1];
    for c in &a.components {
        let q = QuillenData::new(&c.model, &c.data.normal_plus_one())?;
        let d = twisted_pushforwards(&c.completion, top);
        for m in 0..=top as usize {
            quillen[m] = b.add(&quillen[m], &q.pushforward(m as u32));
            direct[m] = b.add(&direct[m], &d[m]);
        }
    }
    let mut out = Vec::new();
    for m in 0..=top as usize {
        out.push(CheckRecord::equal(format!("l2.routes.m{}", m), L2_ROUTES, lclass(&quillen[m]), lclass(&direct[m])));
        let (target, reference) = if m == 0 { (x.clone(), L2_CLASS) } else { (b.zero(), L2_POWERS) };
        out.push(CheckRecord::equal(format!("l2.m{}", m), reference, mod2(&quillen[m]), mod2(&target)));
    }
    Ok(out)
}

/// Evenness of all Chern numbers under an even normal bundle, plus the
/// stratified form of the `L₂` relations the conclusion rests on.
pub fn verify_trivial_normal(a: &BuiltAction) -> Result<Vec<CheckRecord>> {
    if a.has_codim_zero() {
        return Ok(vec![CheckRecord::not_met("trivial-normal.hypothesis", TN_HYP, "a fixed component is a component of X")]);
    }
    for (k, c) in a.components.iter().enumerate() {
        let cr = c.model.int_ring();
        let cn = chern_total(&cr, &c.normal());
        if !crate::chow::model::positive_codim_divisible(&c.model, &cn, 2) {
            return Ok(vec![CheckRecord::not_met("trivial-normal.hypothesis", TN_HYP, format!("c(N) is not even on component {}", k))]);
        }
    }
    let b = BRing::new(Integers);
    let n = a.dim;
    let zero2 = mod2(&b.zero());
    let mut out = vec![CheckRecord::equal("trivial-normal.X", TN_X, mod2(&ambient_class(a)), zero2.clone())];
    let mut strata: BTreeMap<u32, BElem<BigInt>> = BTreeMap::new();
    for c in &a.components {
        let e = strata.entry(c.data.codim).or_insert_with(|| b.zero());
        *e = b.add(e, &fundamental_class_model(&c.model));
    }
    for (r, f) in &strata {
        out.push(CheckRecord::equal(format!("trivial-normal.F{}", r), TN_F, mod2(f), zero2.clone()));
    }
    let proj = |k: u32| fundamental_class_model(&VarietySpec::projective(k).build_connected().expect("projective spaces build"));
    let data = a.components.iter().map(|c| QuillenData::new(&c.model, &c.data.normal_plus_one())).collect::<Result<Vec<_>>>()?;
    for m in 0..=n {
        let lhs = data.iter().fold(b.zero(), |acc, q| b.add(&acc, &q.pushforward(m)));
        let mut rhs = b.zero();
        for (&r, f) in strata.range(m..) {
            rhs = b.add(&rhs, &b.mul(&proj(r - m), f));
        }
        out.push(CheckRecord::equal(format!("trivial-normal.strata.m{}", m), TN_CONS, mod2(&lhs), mod2(&rhs)));
    }
    Ok(out)
}

/// Per-component data for the Kosniowski–Stong checks.
struct KsComponent<'a> {
    model: &'a crate::chow::ChowModel,
    normal: VirtualSplitBundle,
    c_minus_n: Vec<BigInt>,
    /// `y`-coefficients of `P(−N{y})·P(−T_F)`.
    deformed: Vec<Vec<BElem<BigInt>>>,
}

fn ks_components(a: &BuiltAction) -> Vec<KsComponent<'_>> {
    let n = a.dim;
    a.components
        .iter()
        .map(|c| {
            let normal = c.normal();
            let cr = c.model.ring(BRing::with_cap(Integers, n));
            let (sr, p) = total_p_deformed(&cr, &normal.negate(), &tangent_bundle(&c.model).negate(), n + 1);
            KsComponent { model: &c.model, c_minus_n: chern_total(&c.model.int_ring(), &normal.negate()), deformed: sr.coeffs(&p), normal }
        })
        .collect()
}

/// Both sides of the partition form as exact integers.
pub fn ks_alpha_sides(a: &BuiltAction, alpha: &Partition) -> Result<(BigInt, BigInt)> {
    if alpha.weight() > a.dim {
        return Err(Error::DegreeViolation(format!("|{}| exceeds dim X = {}", alpha, a.dim)));
    }
    let x = ambient_class(a);
    let lhs = x.get(alpha).cloned().unwrap_or_default();
    Ok((lhs, ks_rhs(&ks_components(a), alpha)))
}

fn ks_rhs(comps: &[KsComponent<'_>], alpha: &Partition) -> BigInt {
    let mut rhs = BigInt::zero();
    for c in comps {
        let cr = c.model.int_ring();
        // y ↦ 1 on the b_α coefficient
        let class = c.deformed.iter().fold(cr.zero(), |acc, k| cr.add(&acc, &b_coefficient(k, alpha)));
        rhs += cr.degree(&cr.mul(&c.c_minus_n, &class));
    }
    rhs
}

/// The partition form for one `α` with `|α| ≤ dim X`.
pub fn verify_ks_alpha(a: &BuiltAction, alpha: &Partition) -> Result<CheckRecord> {
    let (l, r) = ks_alpha_sides(a, alpha)?;
    Ok(CheckRecord::equal(format!("ks.alpha{}", alpha), KS_ALPHA, residue(&l, 2), residue(&r, 2)))
}

/// `Π (1 + ρu)` over the roots `ρ` of `E`, shifted by `1` when `shift`.
fn chern_series<'m>(su: &SeriesRing<ChowRing<'m, Integers>>, e: &VirtualSplitBundle, shift: bool) -> TruncatedSeries<Vec<BigInt>> {
    let cr = &su.base;
    let u = su.var(0);
    let root = |l: &[i64]| {
        let r = cr.linear(l);
        if shift {
            cr.add(&r, &cr.one())
        } else {
            r
        }
    };
    let factor = |r: Vec<BigInt>| su.add(&su.one(), &su.mul(&su.constant(r), &u));
    let mut acc = su.one();
    for l in &e.plus_lines {
        acc = su.mul(&acc, &factor(root(l)));
    }
    for l in &e.minus_lines {
        acc = su.mul(&acc, &su.inverse(&factor(root(l))).expect("constant term 1"));
    }
    if shift {
        let t = e.trivial_rank();
        let one_plus_u = su.add(&su.one(), &u);
        let f = if t >= 0 { one_plus_u } else { su.inverse(&one_plus_u).expect("constant term 1") };
        acc = su.mul(&acc, &su.pow(&f, t.unsigned_abs() as u32));
    }
    acc
}

/// Both sides of the polynomial form; `f` is written in `e_i ↔ y_i`.
pub fn ks_poly_sides(a: &BuiltAction, f: &EPoly) -> Result<(BigInt, BigInt)> {
    let n = a.dim;
    if let Some(mu) = f.keys().find(|mu| mu.weight() > n) {
        return Err(Error::DegreeViolation(format!("monomial y_{} has weighted degree above dim X = {}", mu, n)));
    }
    let mut lhs = BigInt::zero();
    for m in &a.ambient {
        let cr = m.int_ring();
        let total = chern_total(&cr, &tangent_bundle(m));
        let cs: Vec<Vec<BigInt>> = (1..=n).map(|i| cr.codim_part(&total, i)).collect();
        lhs += cr.degree(&eval_epoly(&cr, f, &cs));
    }
    let mut rhs = BigInt::zero();
    for c in ks_components(a) {
        let cr = c.model.int_ring();
        let su = SeriesRing::univariate(cr.clone(), "u", n + 1);
        let cu = su.mul(&chern_series(&su, &c.normal, true), &chern_series(&su, &tangent_bundle(c.model), false));
        let cs: Vec<Vec<BigInt>> = (1..=n).map(|i| su.coeff(&cu, &[i])).collect();
        rhs += cr.degree(&cr.mul(&c.c_minus_n, &eval_epoly(&cr, f, &cs)));
    }
    Ok((lhs, rhs))
}

pub fn verify_ks_poly(a: &BuiltAction, f: &EPoly) -> Result<CheckRecord> {
    let (l, r) = ks_poly_sides(a, f)?;
    let name: Vec<String> = f.iter().map(|(mu, c)| format!("{}*y{}", c, mu)).collect();
    Ok(CheckRecord::equal(format!("ks.poly[{}]", name.join("+")), KS_POLY, residue(&l, 2), residue(&r, 2)))
}

/// Every partition `|α| ≤ n` in partition form, and every monomial
/// `y_μ` with `|μ| ≤ n` in polynomial form.
pub fn verify_ks_all(a: &BuiltAction) -> Result<Vec<CheckRecord>> {
    let x = ambient_class(a);
    let comps = ks_components(a);
    let mut out = Vec::new();
    for alpha in partitions_up_to(a.dim) {
        let l = x.get(&alpha).cloned().unwrap_or_default();
        let r = ks_rhs(&comps, &alpha);
        out.push(CheckRecord::equal(format!("ks.alpha{}", alpha), KS_ALPHA, residue(&l, 2), residue(&r, 2)));
    }
    for mu in partitions_up_to(a.dim) {
        let f: EPoly = [(mu, BigInt::from(1))].into_iter().collect();
        out.push(verify_ks_poly(a, &f)?);
    }
    Ok(out)
}

/// Default dimension bound for the `L/2` verifier.
pub const LMOD2_MAX_DIM: u32 = 4;

/// `⟦2v(ζ)⟧` and `⟦ζ^m v(ζ)⟧` over `ℤ[1/2][b]`, computed on the bundle models
/// and through `ζ̃ = [−1](ξ̃)` with residue pushforwards, then tested for
/// integrality and lattice membership.
pub fn verify_lmod2(a: &BuiltAction, order: Option<u32>, max_dim: u32) -> Result<Vec<CheckRecord>> {
    let n = a.dim;
    if n > max_dim {
        return Err(Error::InvalidArgument(format!("dimension {} exceeds the configured bound {}", n, max_dim)));
    }
    let order = order.unwrap_or(n + 3);
    if order < n + 2 {
        return Err(Error::InsufficientOrder { needed: n + 2, have: order });
    }
    let f = universal_fgl(order)?;
    let zb = BRing::new(Integers);
    let db = BRing::with_cap(DyadicRing, n);
    let to_dyadic = |c: &BElem<BigInt>| db.truncate(&zb.map_coeffs(&db, c, |z| Dyadic::integer(z.clone())), n);
    let sd = SeriesRing::univariate(db.clone(), "x", n + 2);
    let fu = f.univariate();
    let two = fu.map_coeffs(&sd, &f.formal_mult(2), to_dyadic);
    let v = sd.divide(&sd.var(0), &two, 0)?;
    let sx = sd.with_order(n + 1);
    let x = sx.var(0);
    let gs: Vec<TruncatedSeries<BElem<Dyadic>>> =
        (0..=n).map(|m| if m == 0 { sx.scalar_mul(&db.from_i64(2), &v) } else { sx.mul(&sx.pow(&x, m), &v) }).map(|g| sx.truncate(&g, n + 1)).collect();

    // Bundle models: ζ̃ = exp(ζ) with ζ the stored generator.
    let mut direct = vec![db.zero(); n as usize + 1];
    for c in &a.components {
        let total = &c.completion;
        let cr = total.ring(db.clone());
        let mut z = vec![0; total.ngens()];
        z[total.zeta_gen(total.layers.len() - 1)] = 1;
        let zt = cr.eval_poly(&exp_coeffs(&db, n + 1), &cr.linear(&z));
        let p = total_p(&cr, &tangent_bundle(total).negate());
        for (m, g) in gs.iter().enumerate() {
            let val = cr.degree(&cr.mul(&cr.eval_poly(&sx.coeffs(g), &zt), &p));
            direct[m] = db.add(&direct[m], &val);
        }
    }

    // Residues: g(ζ̃) = (g ∘ [−1])(ξ̃).
    let inv = fu.map_coeffs(&sx, &f.formal_inverse(), to_dyadic);
    let mut xi_push = vec![db.zero(); n as usize + 1];
    for c in &a.components {
        let q = QuillenData::new(&c.model, &c.data.normal_plus_one())?;
        for (l, slot) in xi_push.iter_mut().enumerate() {
            *slot = db.add(slot, &to_dyadic(&q.pushforward(l as u32)));
        }
    }
    let mut quillen = Vec::new();
    for g in &gs {
        let h = sx.compose(&sx, g, &inv)?;
        let val = (0..=n).fold(db.zero(), |acc, l| db.add(&acc, &db.mul(&sx.coeff(&h, &[l]), &xi_push[l as usize])));
        quillen.push(val);
    }

    let x_class = ambient_class(a);
    let mut out = Vec::new();
    for m in 0..=n as usize {
        out.push(CheckRecord::equal(format!("lmod2.routes.m{}", m), LM_ROUTES, db.to_domain(&quillen[m]), db.to_domain(&direct[m])));
        let val = &quillen[m];
        let integral: Option<BElem<BigInt>> = val.iter().map(|(k, c)| c.to_integer().map(|z| (k.clone(), z))).collect();
        let reference = if m == 0 { LM_CLASS } else { LM_POWERS };
        let Some(vi) = integral else {
            out.push(CheckRecord::flag(format!("lmod2.m{}", m), reference, false, format!("value {} has a denominator", db.to_domain(val))));
            continue;
        };
        if m == 0 {
            let diff = zb.sub(&vi, &x_class);
            let ok = lattice_member_mod(&*lazard_basis(n, n + 2)?, &diff, 2).unwrap_or(false);
            out.push(CheckRecord::compare("lmod2.m0", reference, ok, lclass(&vi), lclass(&x_class)).with_note("difference tested for membership in 2L"));
        } else {
            let d = n - m as u32;
            let ok = lattice_member_mod(&*lazard_basis(d, d + 2)?, &vi, 0).unwrap_or(false);
            let mut r = CheckRecord::compare(format!("lmod2.m{}", m), reference, ok, lclass(&vi), lclass(&vi)).with_note("membership in L");
            r.rhs = None;
            out.push(r);
        }
    }
    Ok(out)
}

fn signed_fixed_dim(a: &BuiltAction) -> i64 {
    a.fixed_dim().map(|d| d as i64).unwrap_or(-1)
}

/// The Euler-number congruences and their dimension-bound consequences.
pub fn verify_euler(a: &BuiltAction) -> Vec<CheckRecord> {
    let n = a.dim as i64;
    let chi_x: BigInt = a.ambient.iter().map(euler_number_model).sum();
    let chi_f: BigInt = a.components.iter().map(|c| euler_number_model(&c.model)).sum();
    let d = signed_fixed_dim(a);
    let mut out = vec![CheckRecord::equal("euler.mod2", EU_2, residue(&chi_x, 2), residue(&chi_f, 2))];
    if n % 2 == 1 {
        out.push(CheckRecord::equal("euler.mod4", EU_4, residue(&chi_x, 4), residue(&chi_f, 4)));
    } else {
        out.push(CheckRecord::not_met("euler.mod4", EU_4, "dim X is even"));
    }
    if a.small_fixed_locus() {
        out.push(CheckRecord::equal("euler.fix4", EU_DIV, residue(&chi_f, 4), residue(&BigInt::zero(), 4)));
    } else {
        out.push(CheckRecord::not_met("euler.fix4", EU_DIV, format!("dim X^μ₂ = {}", d)));
    }
    if chi_x.is_odd() {
        out.push(CheckRecord::flag("euler.dim-odd", EU_ODD, 2 * d >= n, format!("χ(X) = {}, dim X^μ₂ = {}", chi_x, d)));
    } else {
        out.push(CheckRecord::not_met("euler.dim-odd", EU_ODD, format!("χ(X) = {} is even", chi_x)));
    }
    if n % 2 == 1 && !chi_x.is_multiple_of(&BigInt::from(4)) {
        out.push(CheckRecord::flag("euler.dim-mod4", EU_ODD_N, 2 * d + 1 >= n, format!("χ(X) = {}, dim X^μ₂ = {}", chi_x, d)));
    } else {
        out.push(CheckRecord::not_met("euler.dim-mod4", EU_ODD_N, format!("dim X = {}, χ(X) = {}", n, chi_x)));
    }
    out
}

/// The additive Chern number relations on the models of `ℙ(N⊕1)`.
pub fn verify_additive(a: &BuiltAction) -> Result<Vec<CheckRecord>> {
    let n = a.dim;
    let cx: BigInt = a.ambient.iter().map(additive_chern_number_model).sum();
    let cp: BigInt = a.components.iter().map(|c| additive_chern_number_model(&c.completion)).sum();
    // deg(ξ^j c_(n−j)(T_P)) summed over components, j = 0..=n.
    let mut terms = vec![BigInt::zero(); n as usize + 1];
    for c in &a.components {
        let total = &c.completion;
        let cr = total.int_ring();
        let mut xi = vec![0; total.ngens()];
        xi[total.zeta_gen(total.layers.len() - 1)] = -1;
        let xi = cr.linear(&xi);
        let t = tangent_bundle(total);
        for j in 0..=n {
            let cls = cr.mul(&cr.pow(&xi, j), &power_sum_class(&cr, &t, n - j));
            terms[j as usize] += cr.degree(&cls);
        }
    }
    let mut out = vec![CheckRecord::equal("additive.total", AD_I, residue(&cx, 2), residue(&cp, 2))];
    for j in 1..=n {
        out.push(CheckRecord::equal(format!("additive.vanish.j{}", j), AD_VAN, residue(&terms[j as usize], 2), residue(&BigInt::zero(), 2)));
    }
    let mut any = false;
    for j in 1..=n {
        if (n as u64 + 1).is_power_of_two() && ((n - j) as u64 + 1).is_power_of_two() {
            any = true;
            let rhs = &cp + &terms[j as usize];
            out.push(CheckRecord::equal(format!("additive.mod4.j{}", j), AD_II, residue(&cx, 4), residue(&rhs, 4)));
        }
    }
    if !any {
        out.push(CheckRecord::not_met("additive.mod4", AD_II, format!("no admissible j for n = {}", n)));
    }
    if a.small_fixed_locus() {
        out.push(CheckRecord::equal("additive.even", AD_EVEN, residue(&cx, 2), residue(&BigInt::zero(), 2)));
        if is_p_power_minus_one(n as u64, 2) {
            out.push(CheckRecord::equal("additive.four", AD_FOUR, residue(&cx, 4), residue(&BigInt::zero(), 4)));
        } else {
            out.push(CheckRecord::not_met("additive.four", AD_FOUR, format!("n = {} is not 2^q − 1", n)));
        }
    } else {
        let why = format!("dim X^μ₂ = {}", signed_fixed_dim(a));
        out.push(CheckRecord::not_met("additive.even", AD_EVEN, why.clone()));
        out.push(CheckRecord::not_met("additive.four", AD_FOUR, why));
    }
    out.push(small_locus_decomposable(a)?);
    Ok(out)
}

fn small_locus_decomposable(a: &BuiltAction) -> Result<CheckRecord> {
    let n = a.dim;
    if !a.small_fixed_locus() {
        return Ok(CheckRecord::not_met("decomposable.small-locus", DEC_SMALL, format!("dim X^μ₂ = {}", signed_fixed_dim(a))));
    }
    if a.ambient.len() != 1 || n == 0 {
        return Ok(CheckRecord::not_met("decomposable.small-locus", DEC_SMALL, "X must be connected of positive dimension"));
    }
    let (_, lmod2) = decomposable_by_lattice(&ambient_class(a), n, 2)?;
    Ok(CheckRecord::flag("decomposable.small-locus", DEC_SMALL, lmod2, format!("decomposable in L/2: {}", lmod2)))
}

/// Decomposability of `⟦X⟧` by the Chern-number criterion against the
/// lattice, and the `p`-typical divisibility of Chern numbers.
pub fn verify_decomposable(a: &BuiltAction, primes: &[u64]) -> Result<Vec<CheckRecord>> {
    let n = a.dim;
    if a.ambient.len() != 1 || n == 0 {
        return Ok(vec![CheckRecord::not_met("decomposable", DEC_CRIT, "X must be connected of positive dimension")]);
    }
    let spec = &a.action.ambient;
    let x = ambient_class(a);
    let mut out = Vec::new();
    for &p in primes {
        let d = decomposable_test(spec, p)?;
        let (lp, lmodp) = decomposable_by_lattice(&x, n, p)?;
        let ok = d.in_lp_decomposable == lp && d.in_lmodp_decomposable == lmodp;
        out.push(CheckRecord::flag(
            format!("decomposable.criterion.p{}", p),
            DEC_CRIT,
            ok,
            format!("c_(n) = {}; L/p: {} (lattice {}), L_p: {} (lattice {})", d.additive_chern_number, d.in_lmodp_decomposable, lmodp, d.in_lp_decomposable, lp),
        ));
        let r = p_typical_chern_check(spec, p)?;
        for e in &r.entries {
            out.push(CheckRecord::flag(format!("decomposable.p{}.alpha{}", p, e.alpha), DEC_PTYP, e.pass(), format!("c_α = {}, decomposable in L/p: {}", e.value, r.decomposable)));
        }
        if r.entries.is_empty() {
            out.push(CheckRecord::not_met(format!("decomposable.p{}.alpha", p), DEC_PTYP, "no qualifying partition"));
        }
    }
    out.push(small_locus_decomposable(a)?);
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    L2,
    TrivialNormal,
    Ks,
    Lmod2,
    Euler,
    Additive,
    Decomposable,
}

impl Theorem {
    pub const ALL: [Theorem; 7] = [Theorem::L2, Theorem::TrivialNormal, Theorem::Ks, Theorem::Lmod2, Theorem::Euler, Theorem::Additive, Theorem::Decomposable];

    pub fn parse(s: &str) -> Result<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.to_string() == s).ok_or_else(|| Error::InvalidArgument(format!("unknown theorem {:?}", s)))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Theorem::L2 => "l2",
            Theorem::TrivialNormal => "trivial-normal",
            Theorem::Ks => "ks",
            Theorem::Lmod2 => "lmod2",
            Theorem::Euler => "euler",
            Theorem::Additive => "additive",
            Theorem::Decomposable => "decomposable",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub order: Option<u32>,
    pub max_m: Option<u32>,
    pub alpha: Option<Partition>,
    pub poly: Option<EPoly>,
    pub lmod2_max_dim: u32,
    pub primes: Vec<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { order: None, max_m: None, alpha: None, poly: None, lmod2_max_dim: LMOD2_MAX_DIM, primes: vec![2, 3] }
    }
}

/// Runs one verifier. For `ks`, a given `α` or polynomial restricts the run.
pub fn verify(a: &BuiltAction, theorem: Theorem, opts: &VerifyOptions) -> Result<Vec<CheckRecord>> {
    match theorem {
        Theorem::L2 => verify_l2(a, opts.max_m),
        Theorem::TrivialNormal => verify_trivial_normal(a),
        Theorem::Ks => match (&opts.alpha, &opts.poly) {
            (None, None) => verify_ks_all(a),
            (alpha, poly) => {
                let mut out = Vec::new();
                if let Some(al) = alpha {
                    out.push(verify_ks_alpha(a, al)?);
                }
                if let Some(f) = poly {
                    out.push(verify_ks_poly(a, f)?);
                }
                Ok(out)
            }
        },
        Theorem::Lmod2 => verify_lmod2(a, opts.order, opts.lmod2_max_dim),
        Theorem::Euler => Ok(verify_euler(a)),
        Theorem::Additive => verify_additive(a),
        Theorem::Decomposable => verify_decomposable(a, &opts.primes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixedpoint::{catalog, linear_pn};
    use crate::report::Status;

    fn failures(rs: &[CheckRecord]) -> Vec<String> {
        rs.iter().filter(|r| r.status == Status::Fail).map(|r| format!("{} {:?} {:?} {:?}", r.id, r.lhs, r.rhs, r.note)).collect()
    }

    #[test]
    fn catalog_passes_every_verifier() {
        for b in catalog() {
            let a = b.action().unwrap().build().unwrap();
            for t in Theorem::ALL {
                if t == Theorem::Lmod2 && a.dim > LMOD2_MAX_DIM {
                    continue;
                }
                let rs = verify(&a, t, &VerifyOptions::default()).unwrap();
                assert!(failures(&rs).is_empty(), "{} / {}: {:?}", b.name(), t, failures(&rs));
            }
        }
    }

    #[test]
    fn ks_alpha_sides_on_p2() {
        // ℙ²: ⟦ℙ²⟧ = deg (1 + b₁h + b₂h²)^{−3}, whose b₁² coefficient is 6.
        let a = linear_pn(2, 0).unwrap().build().unwrap();
        let (l, r) = ks_alpha_sides(&a, &Partition::new(vec![1, 1])).unwrap();
        assert_eq!(l, BigInt::from(6));
        assert!((l - r).is_even());
        assert!(ks_alpha_sides(&a, &Partition::new(vec![3])).is_err());
    }

    #[test]
    fn lmod2_rejects_short_order_and_large_dim() {
        let a = linear_pn(2, 0).unwrap().build().unwrap();
        assert!(matches!(verify_lmod2(&a, Some(3), 4), Err(Error::InsufficientOrder { .. })));
        assert!(verify_lmod2(&a, None, 1).is_err());
    }

    #[test]
    fn theorem_names_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::parse(&t.to_string()).unwrap(), t);
        }
        assert!(Theorem::parse("nope").is_err());
    }
}
