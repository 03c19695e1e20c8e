//! Polynomial rings S[b₁, b₂, …] over a scalar ring, keyed by partitions.
//!
//! `b_i` has degree `-i`. An optional weight cap turns the ring into the
//! quotient by all monomials of weight above the cap; the quotient map is a
//! ring map, so capped arithmetic is exact on the weights it keeps.

use super::partition::Partition;
use super::ring::{Graded, Ring};
use num_bigint::BigInt;
use std::collections::BTreeMap;

pub type BElem<E> = BTreeMap<Partition, E>;

#[derive(Clone, Debug, PartialEq)]
pub struct BRing<S: Ring> {
    pub base: S,
    pub cap: Option<u32>,
}

impl<S: Ring> BRing<S> {
    pub fn new(base: S) -> Self {
        BRing { base, cap: None }
    }

    pub fn with_cap(base: S, cap: u32) -> Self {
        BRing { base, cap: Some(cap) }
    }

    fn keeps(&self, w: u32) -> bool {
        self.cap.map_or(true, |c| w <= c)
    }

    /// `c · b_α`.
    pub fn monomial(&self, alpha: Partition, c: S::Elem) -> BElem<S::Elem> {
        let mut m = BTreeMap::new();
        if !self.base.is_zero(&c) && self.keeps(alpha.weight()) {
            m.insert(alpha, c);
        }
        m
    }

    /// The generator `b_i` (with `b_0 = 1`).
    pub fn b(&self, i: u32) -> BElem<S::Elem> {
        self.monomial(Partition::new(vec![i]), self.base.one())
    }

    pub fn constant(&self, c: S::Elem) -> BElem<S::Elem> {
        self.monomial(Partition::empty(), c)
    }

    pub fn coeff(&self, a: &BElem<S::Elem>, alpha: &Partition) -> S::Elem {
        a.get(alpha).cloned().unwrap_or_else(|| self.base.zero())
    }

    /// The weight-`w` component.
    pub fn homogeneous_part(&self, a: &BElem<S::Elem>, w: u32) -> BElem<S::Elem> {
        a.iter().filter(|(p, _)| p.weight() == w).map(|(p, c)| (p.clone(), c.clone())).collect()
    }

    pub fn truncate(&self, a: &BElem<S::Elem>, max_weight: u32) -> BElem<S::Elem> {
        a.iter().filter(|(p, _)| p.weight() <= max_weight).map(|(p, c)| (p.clone(), c.clone())).collect()
    }

    pub fn scalar_mul(&self, c: &S::Elem, a: &BElem<S::Elem>) -> BElem<S::Elem> {
        let mut out = BTreeMap::new();
        for (p, x) in a {
            let y = self.base.mul(c, x);
            if !self.base.is_zero(&y) {
                out.insert(p.clone(), y);
            }
        }
        out
    }

    /// Applies a coefficient map into another scalar ring.
    pub fn map_coeffs<T: Ring>(&self, target: &BRing<T>, a: &BElem<S::Elem>, f: impl Fn(&S::Elem) -> T::Elem) -> BElem<T::Elem> {
        let mut out = BTreeMap::new();
        for (p, c) in a {
            let y = f(c);
            if !target.base.is_zero(&y) && target.keeps(p.weight()) {
                out.insert(p.clone(), y);
            }
        }
        out
    }
}

impl<S: Ring> Ring for BRing<S> {
    type Elem = BElem<S::Elem>;

    fn zero(&self) -> Self::Elem {
        BTreeMap::new()
    }
    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out = a.clone();
        self.add_assign(&mut out, b);
        out
    }
    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        for (p, c) in b {
            match a.get_mut(p) {
                Some(x) => {
                    self.base.add_assign(x, c);
                    if self.base.is_zero(x) {
                        a.remove(p);
                    }
                }
                None => {
                    a.insert(p.clone(), c.clone());
                }
            }
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|(p, c)| (p.clone(), self.base.neg(c))).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut out: BTreeMap<Partition, S::Elem> = BTreeMap::new();
        for (p, x) in a {
            for (q, y) in b {
                if !self.keeps(p.weight() + q.weight()) {
                    continue;
                }
                let c = self.base.mul(x, y);
                let key = p.merge(q);
                match out.get_mut(&key) {
                    Some(acc) => self.base.add_assign(acc, &c),
                    None => {
                        out.insert(key, c);
                    }
                }
            }
        }
        out.retain(|_, c| !self.base.is_zero(c));
        out
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.constant(self.base.from_int(n))
    }
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem> {
        // Units of a polynomial ring over a reduced ring are the constant
        // units; nilpotent coefficients do not occur in our scalar rings.
        if a.len() == 1 {
            let (p, c) = a.iter().next().unwrap();
            if p.is_empty() {
                return self.base.inverse(c).map(|u| self.constant(u));
            }
        }
        None
    }
    fn scale(&self, a: &Self::Elem, k: &BigInt) -> Self::Elem {
        self.scalar_mul(&self.base.from_int(k), a)
    }
}

impl<S: Graded> Graded for BRing<S> {
    fn homogeneous_degree(&self, a: &Self::Elem) -> Option<i64> {
        let mut deg = None;
        for (p, c) in a {
            let d = self.base.homogeneous_degree(c)? - p.weight() as i64;
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalars::{IntMod, Integers};

    #[test]
    fn b1_squared() {
        let r = BRing::new(Integers);
        let b1 = r.b(1);
        let sq = r.mul(&b1, &b1);
        assert_eq!(sq.len(), 1);
        assert_eq!(r.coeff(&sq, &Partition::new(vec![1, 1])), BigInt::from(1));
        assert_eq!(r.homogeneous_degree(&sq), Some(-2));
        assert_eq!(r.homogeneous_degree(&r.add(&b1, &sq)), None);
    }

    #[test]
    fn cap_truncates() {
        let r = BRing::with_cap(Integers, 2);
        let b1 = r.b(1);
        let cube = r.pow(&b1, 3);
        assert!(r.is_zero(&cube));
        assert!(!r.is_zero(&r.pow(&b1, 2)));
    }

    #[test]
    fn mod_two_cancels() {
        let r = BRing::new(IntMod::new(2));
        let x = r.add(&r.b(2), &r.b(2));
        assert!(r.is_zero(&x));
    }
}
