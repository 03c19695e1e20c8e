//! Strategies and property checks shared by the property suites and the
//! acceptance run.
#![allow(dead_code)]

use lazard::algebra::{partitions_up_to, BRing, Integers, Ring, SeriesRing};
use lazard::chow::{fundamental_class_model, quillen_pushforward, twisted_pushforward_direct, ChowModel, LinearForm, VarietySpec};
use lazard::fgl::{universal_fgl, BSubstitution, FormalGroupLaw, ZbRing};
use lazard::symmfunc::{cf_class, lambda_coeffs, total_p, VirtualSplitBundle};
use num_bigint::BigInt;
use proptest::prelude::*;
use std::sync::OnceLock;

pub const CASES: u32 = 256;

pub fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() }
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub const LAW_ORDER: u32 = 6;

fn universal() -> &'static FormalGroupLaw<ZbRing> {
    static F: OnceLock<FormalGroupLaw<ZbRing>> = OnceLock::new();
    F.get_or_init(|| universal_fgl(LAW_ORDER).unwrap())
}

/// The universal law pushed along `b_i ↦ bs[i-1]` into ℤ.
pub fn integer_law(bs: &[i64]) -> FormalGroupLaw<Integers> {
    let f = universal();
    let mut sub = BSubstitution::new(&Integers, LAW_ORDER, |i| big(bs[i as usize - 1]));
    let ring = SeriesRing::new(Integers, &["x", "y"], LAW_ORDER);
    let law = f.ring.map_coeffs(&ring, &f.law, |c| sub.apply(c));
    FormalGroupLaw { ring, law }
}

pub fn bvals() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-3i64..=3, LAW_ORDER as usize)
}

/// A product of projective spaces of dimension at most 3.
pub fn small_dims() -> impl Strategy<Value = Vec<u32>> {
    prop_oneof![Just(vec![]), Just(vec![1]), Just(vec![2]), Just(vec![3]), Just(vec![1, 1]), Just(vec![1, 2])]
}

pub fn line(k: usize) -> impl Strategy<Value = LinearForm> {
    prop::collection::vec(-2i64..=2, k)
}

/// A model together with a split virtual bundle on it.
pub fn model_and_bundle() -> impl Strategy<Value = (Vec<u32>, VirtualSplitBundle)> {
    small_dims().prop_flat_map(|dims| {
        let k = dims.len();
        let plus = prop::collection::vec(line(k), 0..=3);
        let minus = prop::collection::vec(line(k), 0..=2);
        (Just(dims), plus, minus, 0u32..=2, 0u32..=2).prop_map(|(d, p, m, pt, mt)| {
            (d, VirtualSplitBundle { plus_lines: p, minus_lines: m, plus_trivial: pt, minus_trivial: mt })
        })
    })
}

pub fn random_series() -> impl Strategy<Value = (i64, Vec<i64>)> {
    (prop_oneof![Just(1i64), Just(-1i64)], prop::collection::vec(-5i64..=5, 6))
}

pub fn check_fgl_axioms(bs: &[i64]) -> Result<(), TestCaseError> {
    let f = integer_law(bs);
    prop_assert!(f.is_formal_group_law(LAW_ORDER));
    // F(x, ι(x)) = 0
    let u = f.univariate();
    let inv = f.formal_inverse();
    prop_assert!(f.apply(&u, &u.var(0), &inv).is_empty());
    Ok(())
}

pub fn check_reversion(lead: i64, rest: &[i64]) -> Result<(), TestCaseError> {
    let u = SeriesRing::univariate(Integers, "x", 7);
    let mut coeffs = vec![big(0), big(lead)];
    coeffs.extend(rest.iter().take(5).map(|&c| big(c)));
    let f = u.from_coeffs(coeffs);
    let g = u.reversion(&f).unwrap();
    prop_assert_eq!(u.compose(&u, &f, &g).unwrap(), u.var(0));
    prop_assert_eq!(u.compose(&u, &g, &f).unwrap(), u.var(0));
    Ok(())
}

pub fn check_p_inverse(dims: &[u32], e: &VirtualSplitBundle) -> Result<(), TestCaseError> {
    let model = ChowModel::multiproj(dims);
    let cr = model.ring(BRing::with_cap(Integers, model.dim));
    let prod = cr.mul(&total_p(&cr, e), &total_p(&cr, &e.negate()));
    prop_assert_eq!(prod, cr.one());
    Ok(())
}

pub fn check_lambda_inversion(dims: &[u32], e: &VirtualSplitBundle, pick: usize) -> Result<(), TestCaseError> {
    let model = ChowModel::multiproj(dims);
    let alphas = partitions_up_to(model.dim.min(4));
    let alpha = &alphas[pick % alphas.len()];
    let cr = model.int_ring();
    let lhs = cf_class(&model, e, alpha);
    let mut rhs = cr.zero();
    for (beta, l) in lambda_coeffs(alpha) {
        rhs = cr.add(&rhs, &cr.scale(&cf_class(&model, &e.negate(), &beta), &l));
    }
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

/// Residue route against the bundle model, and both against `⟦ℙ^{r−1−m}⟧·⟦S⟧`.
pub fn check_quillen_trivial(dims: &[u32], r: u32, m: u32) -> Result<(), TestCaseError> {
    let base = ChowModel::multiproj(dims);
    let lines = vec![vec![0; base.ngens()]; r as usize];
    let q = quillen_pushforward(&base, &VirtualSplitBundle::trivial(r), m).unwrap();
    prop_assert_eq!(&q, &twisted_pushforward_direct(&base, &lines, m).unwrap());
    let b = BRing::new(Integers);
    let expected = if m < r {
        b.mul(&fundamental_class_model(&VarietySpec::projective(r - 1 - m).build_connected().unwrap()), &fundamental_class_model(&base))
    } else {
        b.zero()
    };
    prop_assert_eq!(q, expected);
    Ok(())
}
