//! Formal group laws: the universal law over ℤ[b] obtained by twisting the
//! additive law with `exp(x) = x·π(x)`, its specializations, formal inverse
//! and formal multiplication.

use crate::algebra::{BElem, BRing, Graded, IntMod, Integers, Partition, Ring, SeriesRing, TEps, TEpsRing, TRing, TruncatedSeries};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use std::collections::HashMap;

/// Default truncation order for bare law expansions.
pub const DEFAULT_ORDER: u32 = 12;

/// Default order for the trivariate associativity check.
pub const ASSOCIATIVITY_ORDER: u32 = 9;

pub type ZbRing = BRing<Integers>;
pub type FpbRing = BRing<IntMod>;

#[derive(Clone, Debug)]
pub struct FormalGroupLaw<R: Ring> {
    /// The bivariate series ring in `x, y`.
    pub ring: SeriesRing<R>,
    pub law: TruncatedSeries<R::Elem>,
}

impl<R: Ring> FormalGroupLaw<R> {
    pub fn base(&self) -> &R {
        &self.ring.base
    }

    pub fn order(&self) -> u32 {
        self.ring.order
    }

    /// The coefficient `a_{i,j}` of `x^i y^j`.
    pub fn coefficient(&self, i: u32, j: u32) -> R::Elem {
        self.ring.coeff(&self.law, &[i, j])
    }

    pub fn univariate(&self) -> SeriesRing<R> {
        SeriesRing::univariate(self.base().clone(), "x", self.order())
    }

    /// `F(u, v)` evaluated in a series ring over the same base.
    pub fn apply(&self, target: &SeriesRing<R>, u: &TruncatedSeries<R::Elem>, v: &TruncatedSeries<R::Elem>) -> TruncatedSeries<R::Elem> {
        let t = target.with_order(target.order.min(self.order()));
        self.ring.substitute(&self.law, &t, &[u.clone(), v.clone()], |c| t.constant(c.clone()))
    }

    /// The series `m(x)` with `F(x, m(x)) = x`, solved degree by degree from
    /// `m = -x - Σ_{i+j≥2} a_{ij} x^i m^j`.
    pub fn formal_inverse(&self) -> TruncatedSeries<R::Elem> {
        let u = self.univariate();
        let x = u.var(0);
        let xy = self.ring.add(&self.ring.var(0), &self.ring.var(1));
        let higher = self.ring.sub(&self.law, &xy);
        let mut m = u.neg(&x);
        for _ in 0..self.order() {
            let next = u.sub(&u.neg(&x), &self.ring.substitute(&higher, &u, &[x.clone(), m.clone()], |c| u.constant(c.clone())));
            if next == m {
                break;
            }
            m = next;
        }
        m
    }

    /// `[a](x)`: `[0] = 0`, `[a] = F([a-1](x), x)` for `a > 0` and
    /// `[a] = [-1] ∘ [-a]` for `a < 0`.
    pub fn formal_mult(&self, a: i64) -> TruncatedSeries<R::Elem> {
        let u = self.univariate();
        if a < 0 {
            let inv = self.formal_inverse();
            let pos = self.formal_mult(-a);
            return u.compose(&u, &inv, &pos).expect("positive multiple has no constant term");
        }
        let x = u.var(0);
        let mut acc = u.zero();
        for _ in 0..a {
            acc = self.apply(&u, &acc, &x);
        }
        acc
    }

    pub fn is_commutative(&self) -> bool {
        let swapped = self.ring.substitute(&self.law, &self.ring, &[self.ring.var(1), self.ring.var(0)], |c| self.ring.constant(c.clone()));
        swapped == self.law
    }

    pub fn is_unital(&self) -> bool {
        let u = self.univariate();
        let fx0 = self.apply(&u, &u.var(0), &u.zero());
        fx0 == u.var(0)
    }

    /// `F(x, F(y, z)) = F(F(x, y), z)` modulo total degree `order`.
    pub fn is_associative(&self, order: u32) -> bool {
        let t = SeriesRing::new(self.base().clone(), &["x", "y", "z"], order.min(self.order()));
        let (x, y, z) = (t.var(0), t.var(1), t.var(2));
        let yz = self.apply(&t, &y, &z);
        let xy = self.apply(&t, &x, &y);
        self.apply(&t, &x, &yz) == self.apply(&t, &xy, &z)
    }

    pub fn is_formal_group_law(&self, assoc_order: u32) -> bool {
        self.is_commutative() && self.is_unital() && self.is_associative(assoc_order)
    }
}

impl<R: Graded> FormalGroupLaw<R> {
    /// Every `a_{i,j}` lies in degree `1 - i - j`.
    pub fn has_graded_coefficients(&self) -> bool {
        self.law.iter().all(|(m, c)| self.base().homogeneous_degree(c) == Some(1 - m.degree() as i64))
    }
}

/// The additive law `x + y` over any ring.
pub fn additive_fgl<R: Ring>(base: R, order: u32) -> FormalGroupLaw<R> {
    let ring = SeriesRing::new(base, &["x", "y"], order);
    let law = ring.add(&ring.var(0), &ring.var(1));
    FormalGroupLaw { ring, law }
}

/// `exp(x) = Σ_{i≥0} b_i x^{i+1}` with `b_0 = 1`.
pub fn exp_series(order: u32) -> (SeriesRing<ZbRing>, TruncatedSeries<BElem<BigInt>>) {
    let zb = BRing::new(Integers);
    let u = SeriesRing::univariate(zb.clone(), "x", order);
    let coeffs = std::iter::once(zb.zero()).chain((0..order.saturating_sub(1)).map(|i| if i == 0 { zb.one() } else { zb.b(i) })).collect();
    let exp = u.from_coeffs(coeffs);
    (u, exp)
}

/// `π(x) = Σ_{i≥0} b_i x^i` with `b_0 = 1`.
pub fn pi_series(order: u32) -> (SeriesRing<ZbRing>, TruncatedSeries<BElem<BigInt>>) {
    let zb = BRing::new(Integers);
    let u = SeriesRing::univariate(zb.clone(), "x", order);
    let coeffs = (0..order).map(|i| if i == 0 { zb.one() } else { zb.b(i) }).collect();
    let pi = u.from_coeffs(coeffs);
    (u, pi)
}

/// The universal law `exp(exp⁻¹(x) + exp⁻¹(y))` over ℤ[b], truncated at `order`.
pub fn universal_fgl(order: u32) -> Result<FormalGroupLaw<ZbRing>> {
    if order < 2 {
        return Err(Error::InvalidArgument("order must be at least 2".into()));
    }
    let (u, exp) = exp_series(order);
    let log = u.reversion(&exp)?;
    let ring = SeriesRing::new(u.base.clone(), &["x", "y"], order);
    let lx = ring.compose(&u, &log, &ring.var(0))?;
    let ly = ring.compose(&u, &log, &ring.var(1))?;
    let law = ring.compose(&u, &exp, &ring.add(&lx, &ly))?;
    Ok(FormalGroupLaw { ring, law })
}

/// The universal law with coefficients reduced into 𝔽_p[b].
pub fn universal_fgl_mod_p(order: u32, p: u64) -> Result<FormalGroupLaw<FpbRing>> {
    let f = universal_fgl(order)?;
    let fp = IntMod::new(p);
    Ok(reduce_mod(&f, &fp))
}

/// Reduces a law over ℤ[b] to one over (ℤ/m)[b].
pub fn reduce_mod(f: &FormalGroupLaw<ZbRing>, m: &IntMod) -> FormalGroupLaw<FpbRing> {
    let target = BRing::new(*m);
    let ring = SeriesRing::new(target.clone(), &["x", "y"], f.order());
    let law = f.ring.map_coeffs(&ring, &f.law, |c| f.base().map_coeffs(&target, c, |n| m.reduce(n)));
    FormalGroupLaw { ring, law }
}

/// Applies a ring map ℤ[b] → T determined by the images of the `b_i`.
pub struct BSubstitution<'a, T: Ring> {
    pub target: &'a T,
    images: Vec<T::Elem>,
    cache: HashMap<Partition, T::Elem>,
}

impl<'a, T: Ring> BSubstitution<'a, T> {
    pub fn new(target: &'a T, max_index: u32, image: impl Fn(u32) -> T::Elem) -> Self {
        let images = (0..=max_index).map(|i| if i == 0 { target.one() } else { image(i) }).collect();
        BSubstitution { target, images, cache: HashMap::new() }
    }

    fn monomial(&mut self, alpha: &Partition) -> T::Elem {
        if let Some(v) = self.cache.get(alpha) {
            return v.clone();
        }
        let mut acc = self.target.one();
        for &i in alpha.parts() {
            acc = self.target.mul(&acc, &self.images[i as usize]);
        }
        self.cache.insert(alpha.clone(), acc.clone());
        acc
    }

    pub fn apply(&mut self, a: &BElem<BigInt>) -> T::Elem {
        let mut acc = self.target.zero();
        for (alpha, c) in a {
            let m = self.monomial(alpha);
            let t = self.target.scale(&m, c);
            self.target.add_assign(&mut acc, &t);
        }
        acc
    }
}

/// Specializes a law over ℤ[b] along `b_i ↦ image(i)`, rejecting images
/// that are not zero or homogeneous of degree `-i`.
pub fn specialize<T: Graded>(f: &FormalGroupLaw<ZbRing>, target: T, image: impl Fn(u32) -> T::Elem) -> Result<FormalGroupLaw<T>> {
    let max = f.order();
    for i in 1..=max {
        let v = image(i);
        if !target.is_zero(&v) && target.homogeneous_degree(&v) != Some(-(i as i64)) {
            return Err(Error::DegreeViolation(format!("image of b{} is not of degree -{}", i, i)));
        }
    }
    let mut sub = BSubstitution::new(&target, max, image);
    let ring = SeriesRing::new(target.clone(), &["x", "y"], f.order());
    let law = f.ring.map_coeffs(&ring, &f.law, |c| sub.apply(c));
    Ok(FormalGroupLaw { ring, law })
}

/// `b_i ↦ (-1)^i t^i`.
pub fn chx_image(i: u32) -> Vec<BigInt> {
    TRing.monomial(BigInt::from(if i % 2 == 0 { 1 } else { -1 }), i as usize)
}

/// `b_i ↦ ε t^i`.
pub fn cha_image(i: u32) -> TEps {
    TEpsRing.monomial(BigInt::from(1), i as usize, 1)
}

pub fn chx_fgl(order: u32) -> Result<FormalGroupLaw<TRing>> {
    specialize(&universal_fgl(order)?, TRing, chx_image)
}

pub fn cha_fgl(order: u32) -> Result<FormalGroupLaw<TEpsRing>> {
    specialize(&universal_fgl(order)?, TEpsRing, cha_image)
}

/// `(x + y - 2txy) / (1 - t²xy)` expanded directly.
pub fn chx_closed_form(order: u32) -> FormalGroupLaw<TRing> {
    let ring = SeriesRing::new(TRing, &["x", "y"], order);
    let t = |c: i64, k: usize| TRing.monomial(BigInt::from(c), k);
    let num = ring.sum(&[ring.var(0), ring.var(1), ring.term(vec![1, 1], t(-2, 1))]);
    let mut geom = ring.zero();
    for k in 0..order {
        ring.add_assign(&mut geom, &ring.term(vec![k, k], t(1, 2 * k as usize)));
    }
    FormalGroupLaw { law: ring.mul(&num, &geom), ring }
}

/// `x + y + ε Σ_{i≥1} ((x+y)^{i+1} - x^{i+1} - y^{i+1}) t^i` expanded directly.
pub fn cha_closed_form(order: u32) -> FormalGroupLaw<TEpsRing> {
    let ring = SeriesRing::new(TEpsRing, &["x", "y"], order);
    let (x, y) = (ring.var(0), ring.var(1));
    let s = ring.add(&x, &y);
    let mut law = s.clone();
    for i in 1..order {
        let bracket = ring.sub(&ring.sub(&ring.pow(&s, i + 1), &ring.pow(&x, i + 1)), &ring.pow(&y, i + 1));
        let c = TEpsRing.monomial(BigInt::from(1), i as usize, 1);
        ring.add_assign(&mut law, &ring.scalar_mul(&c, &bracket));
    }
    FormalGroupLaw { ring, law }
}

/// `a·x / (1 + (a-1)·t·x)` expanded directly.
pub fn chx_mult_closed_form(a: i64, order: u32) -> TruncatedSeries<Vec<BigInt>> {
    let u = SeriesRing::univariate(TRing, "x", order);
    let mut coeffs = vec![TRing.zero()];
    let r = BigInt::from(1 - a);
    for k in 1..order {
        // a·(1-a)^{k-1} t^{k-1}
        let c = BigInt::from(a) * num_traits::pow(r.clone(), (k - 1) as usize);
        coeffs.push(TRing.monomial(c, (k - 1) as usize));
    }
    u.from_coeffs(coeffs)
}
