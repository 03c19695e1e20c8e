//! Randomized identities. Every suite runs at least 256 cases.

mod common;

use lazard::algebra::{BElem, BRing, DomainRing, Dyadic, DyadicRing, IntMod, Integers, IntegerLattice, Partition, Ring, SeriesRing, TEpsRing, TRing};
use lazard::chow::{quillen_pushforward, specialize_class, twisted_pushforward_direct, ChowModel, LinearForm, Theory};
use lazard::symmfunc::{total_p, total_p_deformed, VirtualSplitBundle};
use num_bigint::BigInt;
use common::*;
use proptest::prelude::*;

fn belem() -> impl Strategy<Value = BElem<BigInt>> {
    let parts = prop::collection::vec(1u32..=3, 0..=3);
    prop::collection::vec((parts, -20i64..=20), 0..=4).prop_map(|terms| {
        let b = BRing::new(Integers);
        terms.into_iter().fold(b.zero(), |acc, (p, c)| b.add(&acc, &b.monomial(Partition::new(p), big(c))))
    })
}

fn tpoly() -> impl Strategy<Value = Vec<BigInt>> {
    prop::collection::vec((-9i64..=9, 0usize..=4), 0..=4).prop_map(|ts| ts.into_iter().fold(TRing.zero(), |acc, (c, k)| TRing.add(&acc, &TRing.monomial(big(c), k))))
}

fn tepoly() -> impl Strategy<Value = <TEpsRing as Ring>::Elem> {
    prop::collection::vec((-9i64..=9, 0usize..=4, 0u8..=1), 0..=4)
        .prop_map(|ts| ts.into_iter().fold(TEpsRing.zero(), |acc, (c, k, e)| TEpsRing.add(&acc, &TEpsRing.monomial(big(c), k, e))))
}

fn dyadic() -> impl Strategy<Value = Dyadic> {
    (-1000i64..=1000, 0u32..=5).prop_map(|(n, e)| Dyadic::new(big(n), e))
}

fn ring_axioms<R: DomainRing>(r: &R, a: &R::Elem, b: &R::Elem, c: &R::Elem) -> std::result::Result<(), TestCaseError>
where
    R::Elem: PartialEq + std::fmt::Debug,
{
    prop_assert_eq!(r.add(&r.add(a, b), c), r.add(a, &r.add(b, c)));
    prop_assert_eq!(r.mul(&r.mul(a, b), c), r.mul(a, &r.mul(b, c)));
    prop_assert_eq!(r.mul(a, &r.add(b, c)), r.add(&r.mul(a, b), &r.mul(a, c)));
    prop_assert_eq!(r.mul(a, b), r.mul(b, a));
    prop_assert!(r.is_zero(&r.add(a, &r.neg(a))));
    prop_assert_eq!(r.mul(a, &r.one()), a.clone());
    prop_assert_eq!(r.from_domain(&r.to_domain(a)).unwrap(), a.clone());
    Ok(())
}

fn honest_bundle() -> impl Strategy<Value = (Vec<u32>, Vec<LinearForm>)> {
    small_dims().prop_flat_map(|dims| {
        let k = dims.len();
        (Just(dims), prop::collection::vec(line(k), 1..=3))
    })
}

/// Rank larger than `dim S + m`.
fn wide_bundle() -> impl Strategy<Value = (Vec<u32>, u32, Vec<LinearForm>)> {
    (small_dims(), 0u32..=3).prop_flat_map(|(dims, m)| {
        let k = dims.len();
        let d: u32 = dims.iter().sum();
        let lo = (d + m + 1) as usize;
        (Just(dims), Just(m), prop::collection::vec(line(k), lo..=lo + 1))
    })
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn fgl_axioms_after_specialization(bs in bvals()) {
        check_fgl_axioms(&bs)?;
    }

    #[test]
    fn formal_multiples_add(bs in bvals(), a in -5i64..=5, b in -5i64..=5) {
        let f = integer_law(&bs);
        let u = f.univariate();
        let lhs = f.formal_mult(a + b);
        let rhs = f.apply(&u, &f.formal_mult(a), &f.formal_mult(b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn ring_axioms_integers(a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000) {
        ring_axioms(&Integers, &big(a), &big(b), &big(c))?;
    }

    #[test]
    fn ring_axioms_int_mod(m in 2u64..=30, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let r = IntMod::new(m);
        ring_axioms(&r, &r.reduce(&big(a as i64)), &r.reduce(&big(b as i64)), &r.reduce(&big(c as i64)))?;
    }

    #[test]
    fn ring_axioms_dyadic(a in dyadic(), b in dyadic(), c in dyadic()) {
        ring_axioms(&DyadicRing, &a, &b, &c)?;
    }

    #[test]
    fn ring_axioms_b_ring(a in belem(), b in belem(), c in belem()) {
        ring_axioms(&BRing::new(Integers), &a, &b, &c)?;
    }

    #[test]
    fn ring_axioms_t_rings(a in tpoly(), b in tpoly(), c in tpoly(), d in tepoly(), e in tepoly(), f in tepoly()) {
        ring_axioms(&TRing, &a, &b, &c)?;
        ring_axioms(&TEpsRing, &d, &e, &f)?;
    }

    #[test]
    fn reversion_round_trip((lead, rest) in random_series()) {
        check_reversion(lead, &rest)?;
    }

    #[test]
    fn divide_undoes_mul(k in 0u32..=3, (lead, gs) in random_series(), hs in prop::collection::vec(-7i64..=7, 8)) {
        let order = 8;
        let u = SeriesRing::univariate(Integers, "x", order);
        let mut gc = vec![big(0); k as usize];
        gc.push(big(lead));
        gc.extend(gs.iter().map(|&c| big(c)));
        gc.truncate(order as usize);
        let g = u.from_coeffs(gc);
        let h = u.from_coeffs(hs.iter().map(|&c| big(c)).collect());
        let q = u.divide(&u.mul(&g, &h), &g, 0).unwrap();
        prop_assert_eq!(q, u.truncate(&h, order - k));
    }

    #[test]
    fn lattice_membership_is_basis_free(
        gens in prop::collection::vec(prop::collection::vec(-6i64..=6, 4), 1..=4),
        ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..=6),
        v in prop::collection::vec(-12i64..=12, 4),
    ) {
        let to_big = |r: &Vec<i64>| r.iter().map(|&x| big(x)).collect::<Vec<_>>();
        let rows: Vec<Vec<BigInt>> = gens.iter().map(to_big).collect();
        let l = IntegerLattice::new(rows.clone(), 4);
        for r in &rows {
            prop_assert!(l.member(r));
        }
        // elementary row operations keep the span
        let mut moved = rows.clone();
        for (i, j, c) in ops {
            let (i, j) = (i % moved.len(), j % moved.len());
            if i != j {
                let add: Vec<BigInt> = moved[j].iter().map(|x| x * c).collect();
                for (a, b) in moved[i].iter_mut().zip(add) {
                    *a += b;
                }
            } else {
                let last = moved.len() - 1;
                moved.swap(i, last);
            }
        }
        let l2 = IntegerLattice::new(moved, 4);
        prop_assert_eq!(l.member(&to_big(&v)), l2.member(&to_big(&v)));
        prop_assert_eq!(l.rank(), l2.rank());
    }

    #[test]
    fn total_p_of_bundle_and_negative((dims, e) in model_and_bundle()) {
        check_p_inverse(&dims, &e)?;
    }

    #[test]
    fn lambda_inversion((dims, e) in model_and_bundle(), pick in 0usize..64) {
        check_lambda_inversion(&dims, &e, pick)?;
    }

    #[test]
    fn deformation_is_twisting((dims, e) in model_and_bundle(), l in line(2)) {
        let model = ChowModel::multiproj(&dims);
        let k = model.ngens();
        let l: LinearForm = l.into_iter().take(k).collect();
        let cr = model.ring(BRing::with_cap(Integers, model.dim));
        let (sr, p) = total_p_deformed(&cr, &e, &VirtualSplitBundle::default(), model.dim + 1);
        let lc = cr.linear(&l);
        let substituted = sr.coeffs(&p).iter().enumerate().fold(cr.zero(), |acc, (i, c)| cr.add(&acc, &cr.mul(c, &cr.pow(&lc, i as u32))));
        let shift = |ls: &[LinearForm], t: u32| -> Vec<LinearForm> {
            ls.iter().map(|m| m.iter().zip(&l).map(|(a, b)| a + b).collect()).chain((0..t).map(|_| l.clone())).collect()
        };
        let twisted = VirtualSplitBundle {
            plus_lines: shift(&e.plus_lines, e.plus_trivial),
            minus_lines: shift(&e.minus_lines, e.minus_trivial),
            plus_trivial: 0,
            minus_trivial: 0,
        };
        prop_assert_eq!(substituted, total_p(&cr, &twisted));
    }

    #[test]
    fn quillen_matches_bundle_model_trivial(dims in small_dims(), r in 1u32..=3, m in 0u32..=6) {
        check_quillen_trivial(&dims, r, m)?;
    }

    #[test]
    fn quillen_matches_bundle_model_split((dims, lines) in honest_bundle(), m in 0u32..=6) {
        let base = ChowModel::multiproj(&dims);
        let q = quillen_pushforward(&base, &VirtualSplitBundle::from_lines(lines.clone()), m).unwrap();
        prop_assert_eq!(q, twisted_pushforward_direct(&base, &lines, m).unwrap());
    }

    #[test]
    fn euler_specialization_of_pushforward((dims, m, lines) in wide_bundle()) {
        let base = ChowModel::multiproj(&dims);
        let r = lines.len() as u32;
        prop_assert!(r > base.dim + m);
        let q = quillen_pushforward(&base, &VirtualSplitBundle::from_lines(lines), m).unwrap();
        let chi: BigInt = dims.iter().map(|&d| big(d as i64 + 1)).product();
        let expected = TRing.monomial(big((r - m) as i64) * chi, (r - 1 - m + base.dim) as usize);
        prop_assert_eq!(specialize_class(Theory::Chx, &q), TRing.to_domain(&expected));
    }
}

