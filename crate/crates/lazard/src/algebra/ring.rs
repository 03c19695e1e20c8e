//! Parent-style ring interface.
//!
//! A ring is a value (it may carry a modulus, a Chow model, a truncation
//! order) and its elements are plain data. All operations go through the
//! parent, so the same element type can live in differently configured rings.

use num_bigint::BigInt;
use std::fmt::Debug;

pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_int(&self, n: &BigInt) -> Self::Elem;

    /// Multiplicative inverse, if `a` is a unit.
    fn inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn scale(&self, a: &Self::Elem, k: &BigInt) -> Self::Elem {
        self.mul(&self.from_int(k), a)
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        let mut acc = self.zero();
        for x in items {
            self.add_assign(&mut acc, x);
        }
        acc
    }
}

/// Rings whose elements carry a grading; used to reject substitutions that
/// do not respect degrees.
pub trait Graded: Ring {
    /// The degree of a nonzero homogeneous element, `None` for zero or
    /// inhomogeneous elements.
    fn homogeneous_degree(&self, a: &Self::Elem) -> Option<i64>;
}
