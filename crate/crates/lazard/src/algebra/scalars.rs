//! Scalar rings: ℤ, ℤ/m and ℤ[1/2].

use super::ring::{Graded, Ring};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn inverse(&self, a: &BigInt) -> Option<BigInt> {
        if a.abs().is_one() {
            Some(a.clone())
        } else {
            None
        }
    }
    fn add_assign(&self, a: &mut BigInt, b: &BigInt) {
        *a += b;
    }
    fn scale(&self, a: &BigInt, k: &BigInt) -> BigInt {
        a * k
    }
}

impl Graded for Integers {
    fn homogeneous_degree(&self, a: &BigInt) -> Option<i64> {
        (!a.is_zero()).then_some(0)
    }
}

/// ℤ/m for a modulus `m ≥ 2`. Elements are canonical residues in `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntMod {
    m: u64,
}

impl IntMod {
    pub fn new(m: u64) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        assert!(m < (1 << 32), "modulus must fit in 32 bits");
        IntMod { m }
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn reduce(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.m)).to_u64().unwrap()
    }

    /// The representative in `(-m/2, m/2]`, handy for printing and lifting.
    pub fn lift(&self, a: u64) -> BigInt {
        if a > self.m / 2 {
            BigInt::from(a) - BigInt::from(self.m)
        } else {
            BigInt::from(a)
        }
    }
}

impl Ring for IntMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.m
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.m - a) % self.m
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        self.reduce(n)
    }
    fn inverse(&self, a: &u64) -> Option<u64> {
        let e = BigInt::from(*a).extended_gcd(&BigInt::from(self.m));
        if e.gcd.is_one() {
            Some(self.reduce(&e.x))
        } else {
            None
        }
    }
}

impl Graded for IntMod {
    fn homogeneous_degree(&self, a: &u64) -> Option<i64> {
        (*a != 0).then_some(0)
    }
}

/// An element `num / 2^exp` of ℤ[1/2], normalized so that `num` is odd
/// whenever `exp > 0`, and `exp = 0` when `num = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dyadic {
    pub num: BigInt,
    pub exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn integer(n: BigInt) -> Self {
        Dyadic { num: n, exp: 0 }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num.is_even() {
            self.num >>= 1;
            self.exp -= 1;
        }
    }

    pub fn is_integral(&self) -> bool {
        self.exp == 0
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integral().then(|| self.num.clone())
    }

    fn aligned(a: &Dyadic, b: &Dyadic) -> (BigInt, BigInt, u32) {
        let e = a.exp.max(b.exp);
        (&a.num << (e - a.exp), &b.num << (e - b.exp), e)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

/// The ring ℤ[1/2].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DyadicRing;

impl Ring for DyadicRing {
    type Elem = Dyadic;

    fn zero(&self) -> Dyadic {
        Dyadic::integer(BigInt::zero())
    }
    fn one(&self) -> Dyadic {
        Dyadic::integer(BigInt::one())
    }
    fn is_zero(&self, a: &Dyadic) -> bool {
        a.num.is_zero()
    }
    fn add(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        let (x, y, e) = Dyadic::aligned(a, b);
        Dyadic::new(x + y, e)
    }
    fn neg(&self, a: &Dyadic) -> Dyadic {
        Dyadic { num: -&a.num, exp: a.exp }
    }
    fn mul(&self, a: &Dyadic, b: &Dyadic) -> Dyadic {
        Dyadic::new(&a.num * &b.num, a.exp + b.exp)
    }
    fn from_int(&self, n: &BigInt) -> Dyadic {
        Dyadic::new(n.clone(), 0)
    }
    fn inverse(&self, a: &Dyadic) -> Option<Dyadic> {
        if a.num.is_zero() {
            return None;
        }
        let tz = a.num.trailing_zeros().unwrap_or(0) as u32;
        let odd = &a.num >> tz;
        if !odd.abs().is_one() {
            return None;
        }
        // (±2^tz / 2^exp)^{-1} = ±2^exp / 2^tz
        Some(Dyadic::new(odd << a.exp, tz))
    }
}

impl Graded for DyadicRing {
    fn homogeneous_degree(&self, a: &Dyadic) -> Option<i64> {
        (!a.num.is_zero()).then_some(0)
    }
}
