//! Type-erased coefficient-domain elements, for reports, JSON and the CLI.
//!
//! Every supported domain embeds its elements as sums of monomials
//! `coeff · b_α · t^k · ε^e`, which is also the wire format.

use super::bpoly::{BElem, BRing};
use super::partition::Partition;
use super::ring::Ring;
use super::scalars::{Dyadic, DyadicRing, IntMod, Integers};
use super::series::{SeriesRing, TruncatedSeries};
use super::tpoly::{TEps, TEpsRing, TRing};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "ring", content = "modulus", rename_all = "snake_case")]
pub enum ScalarTag {
    Int,
    IntMod(u64),
    IntHalf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientDomain {
    Scalar { base: ScalarTag },
    BRing { base: ScalarTag },
    TRing,
    TEpsRing,
}

impl fmt::Display for ScalarTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarTag::Int => write!(f, "ℤ"),
            ScalarTag::IntMod(m) => write!(f, "ℤ/{}", m),
            ScalarTag::IntHalf => write!(f, "ℤ[1/2]"),
        }
    }
}

impl fmt::Display for CoefficientDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoefficientDomain::Scalar { base } => write!(f, "{}", base),
            CoefficientDomain::BRing { base } => write!(f, "{}[b]", base),
            CoefficientDomain::TRing => write!(f, "ℤ[t]"),
            CoefficientDomain::TEpsRing => write!(f, "ℤ[t,ε]/ε²"),
        }
    }
}

/// One monomial `coeff · b_α · t^t · ε^eps` of the wire format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialTerm {
    pub b: Partition,
    pub t: u32,
    pub eps: u8,
    #[serde(with = "coeff_string")]
    pub coeff: Dyadic,
}

mod coeff_string {
    use super::Dyadic;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &Dyadic, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&c.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Dyadic, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad coefficient {:?}", s)))
    }

    pub fn parse(s: &str) -> Option<Dyadic> {
        match s.split_once('/') {
            None => s.parse::<BigInt>().ok().map(Dyadic::integer),
            Some((n, d)) => {
                let num = n.parse::<BigInt>().ok()?;
                let den = d.parse::<BigInt>().ok()?;
                let exp = den.bits().checked_sub(1)? as u32;
                (den == BigInt::from(1) << exp).then(|| Dyadic::new(num, exp))
            }
        }
    }
}

/// A coefficient-domain element in canonical sparse form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomainElem {
    pub domain: CoefficientDomain,
    pub terms: Vec<MonomialTerm>,
}

impl DomainElem {
    pub fn zero(domain: CoefficientDomain) -> Self {
        DomainElem { domain, terms: Vec::new() }
    }

    pub fn integer(n: BigInt) -> Self {
        let domain = CoefficientDomain::Scalar { base: ScalarTag::Int };
        DomainElem::from_terms(domain, vec![(Partition::empty(), 0, 0, Dyadic::integer(n))])
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Builds the canonical form: combines equal monomials, drops zeros,
    /// reduces modular coefficients and sorts by (t, ε, partition).
    pub fn from_terms(domain: CoefficientDomain, raw: Vec<(Partition, u32, u8, Dyadic)>) -> Self {
        let mut acc: BTreeMap<(u32, u8, Partition), Dyadic> = BTreeMap::new();
        for (b, t, e, c) in raw {
            let slot = acc.entry((t, e, b)).or_insert_with(|| DyadicRing.zero());
            *slot = DyadicRing.add(slot, &c);
        }
        let base = match domain {
            CoefficientDomain::Scalar { base } | CoefficientDomain::BRing { base } => base,
            _ => ScalarTag::Int,
        };
        let mut terms = Vec::new();
        for ((t, eps, b), mut c) in acc {
            if let ScalarTag::IntMod(m) = base {
                c = Dyadic::integer(BigInt::from(IntMod::new(m).reduce(&c.num)));
            }
            if !c.num.is_zero() {
                terms.push(MonomialTerm { b, t, eps, coeff: c });
            }
        }
        // Stable output order: degree (weight of b plus t), then partition.
        terms.sort_by(|x, y| (x.b.weight() + x.t, x.eps, &x.b, x.t).cmp(&(y.b.weight() + y.t, y.eps, &y.b, y.t)));
        DomainElem { domain, terms }
    }

    /// Human-readable rendering such as `6*b1^2 - 3*b2`.
    pub fn pretty(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, m) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            let mult = m.b.multiplicities();
            for (k, &e) in mult.iter().enumerate().skip(1).rev() {
                match e {
                    0 => {}
                    1 => factors.push(format!("b{}", k)),
                    _ => factors.push(format!("b{}^{}", k, e)),
                }
            }
            match m.t {
                0 => {}
                1 => factors.push("t".into()),
                k => factors.push(format!("t^{}", k)),
            }
            if m.eps == 1 {
                factors.push("ε".into());
            }
            let negative = m.coeff.num < BigInt::zero();
            let abs = Dyadic { num: if negative { -&m.coeff.num } else { m.coeff.num.clone() }, exp: m.coeff.exp };
            let coeff = abs.to_string();
            let body = if factors.is_empty() {
                coeff
            } else if abs.num.is_one() && abs.exp == 0 {
                factors.join("*")
            } else {
                format!("{}*{}", coeff, factors.join("*"))
            };
            if i == 0 {
                out.push_str(if negative { "-" } else { "" });
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl fmt::Display for DomainElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.pretty())
    }
}

/// Conversion between a concrete ring's elements and the erased form.
pub trait DomainRing: Ring {
    fn domain(&self) -> CoefficientDomain;
    fn to_domain(&self, a: &Self::Elem) -> DomainElem;
    fn from_domain(&self, d: &DomainElem) -> Result<Self::Elem>;
}

/// One term `coeff · x^exps` of a truncated series, for output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTerm {
    pub exps: Vec<u32>,
    pub coeff: DomainElem,
}

/// Nonzero terms ordered by total degree, then exponent vector.
pub fn series_terms<R: DomainRing>(ring: &SeriesRing<R>, f: &TruncatedSeries<R::Elem>) -> Vec<SeriesTerm> {
    f.iter().filter(|(_, c)| !ring.base.is_zero(c)).map(|(m, c)| SeriesTerm { exps: m.exps().to_vec(), coeff: ring.base.to_domain(c) }).collect()
}

fn check_domain(expected: CoefficientDomain, d: &DomainElem) -> Result<()> {
    if expected == d.domain {
        Ok(())
    } else {
        Err(Error::DomainMismatch(format!("expected {}, got {}", expected, d.domain)))
    }
}

fn integral(c: &Dyadic) -> Result<BigInt> {
    c.to_integer().ok_or_else(|| Error::DomainMismatch(format!("coefficient {} is not an integer", c)))
}

fn only_scalar_terms(d: &DomainElem) -> Result<()> {
    if d.terms.iter().all(|m| m.t == 0 && m.eps == 0) {
        Ok(())
    } else {
        Err(Error::DomainMismatch("unexpected t or ε in element".into()))
    }
}

/// Scalar rings that can be erased to a `ScalarTag`.
pub trait ScalarDomain: Ring {
    fn tag(&self) -> ScalarTag;
    fn to_dyadic(&self, a: &Self::Elem) -> Dyadic;
    fn from_dyadic(&self, c: &Dyadic) -> Result<Self::Elem>;
}

impl ScalarDomain for Integers {
    fn tag(&self) -> ScalarTag {
        ScalarTag::Int
    }
    fn to_dyadic(&self, a: &BigInt) -> Dyadic {
        Dyadic::integer(a.clone())
    }
    fn from_dyadic(&self, c: &Dyadic) -> Result<BigInt> {
        integral(c)
    }
}

impl ScalarDomain for IntMod {
    fn tag(&self) -> ScalarTag {
        ScalarTag::IntMod(self.modulus())
    }
    fn to_dyadic(&self, a: &u64) -> Dyadic {
        Dyadic::integer(BigInt::from(*a))
    }
    fn from_dyadic(&self, c: &Dyadic) -> Result<u64> {
        Ok(self.reduce(&integral(c)?))
    }
}

impl ScalarDomain for DyadicRing {
    fn tag(&self) -> ScalarTag {
        ScalarTag::IntHalf
    }
    fn to_dyadic(&self, a: &Dyadic) -> Dyadic {
        a.clone()
    }
    fn from_dyadic(&self, c: &Dyadic) -> Result<Dyadic> {
        Ok(c.clone())
    }
}

macro_rules! scalar_domain_ring {
    ($t:ty) => {
        impl DomainRing for $t {
            fn domain(&self) -> CoefficientDomain {
                CoefficientDomain::Scalar { base: self.tag() }
            }
            fn to_domain(&self, a: &Self::Elem) -> DomainElem {
                DomainElem::from_terms(self.domain(), vec![(Partition::empty(), 0, 0, self.to_dyadic(a))])
            }
            fn from_domain(&self, d: &DomainElem) -> Result<Self::Elem> {
                check_domain(self.domain(), d)?;
                only_scalar_terms(d)?;
                let mut acc = self.zero();
                for m in &d.terms {
                    if !m.b.is_empty() {
                        return Err(Error::DomainMismatch("unexpected b-monomial in scalar".into()));
                    }
                    acc = self.add(&acc, &self.from_dyadic(&m.coeff)?);
                }
                Ok(acc)
            }
        }
    };
}

scalar_domain_ring!(Integers);
scalar_domain_ring!(IntMod);
scalar_domain_ring!(DyadicRing);

impl<S: ScalarDomain> DomainRing for BRing<S> {
    fn domain(&self) -> CoefficientDomain {
        CoefficientDomain::BRing { base: self.base.tag() }
    }
    fn to_domain(&self, a: &BElem<S::Elem>) -> DomainElem {
        DomainElem::from_terms(self.domain(), a.iter().map(|(p, c)| (p.clone(), 0, 0, self.base.to_dyadic(c))).collect())
    }
    fn from_domain(&self, d: &DomainElem) -> Result<BElem<S::Elem>> {
        check_domain(self.domain(), d)?;
        only_scalar_terms(d)?;
        let mut acc = self.zero();
        for m in &d.terms {
            let c = self.base.from_dyadic(&m.coeff)?;
            self.add_assign(&mut acc, &self.monomial(m.b.clone(), c));
        }
        Ok(acc)
    }
}

impl DomainRing for TRing {
    fn domain(&self) -> CoefficientDomain {
        CoefficientDomain::TRing
    }
    fn to_domain(&self, a: &Vec<BigInt>) -> DomainElem {
        let raw = a.iter().enumerate().map(|(k, c)| (Partition::empty(), k as u32, 0, Dyadic::integer(c.clone()))).collect();
        DomainElem::from_terms(self.domain(), raw)
    }
    fn from_domain(&self, d: &DomainElem) -> Result<Vec<BigInt>> {
        check_domain(self.domain(), d)?;
        let mut acc = self.zero();
        for m in &d.terms {
            if !m.b.is_empty() || m.eps != 0 {
                return Err(Error::DomainMismatch("ℤ[t] element with b or ε".into()));
            }
            acc = self.add(&acc, &self.monomial(integral(&m.coeff)?, m.t as usize));
        }
        Ok(acc)
    }
}

impl DomainRing for TEpsRing {
    fn domain(&self) -> CoefficientDomain {
        CoefficientDomain::TEpsRing
    }
    fn to_domain(&self, a: &TEps) -> DomainElem {
        let mut raw: Vec<(Partition, u32, u8, Dyadic)> = Vec::new();
        for (k, c) in a.plain.iter().enumerate() {
            raw.push((Partition::empty(), k as u32, 0, Dyadic::integer(c.clone())));
        }
        for (k, c) in a.eps.iter().enumerate() {
            raw.push((Partition::empty(), k as u32, 1, Dyadic::integer(c.clone())));
        }
        DomainElem::from_terms(self.domain(), raw)
    }
    fn from_domain(&self, d: &DomainElem) -> Result<TEps> {
        check_domain(self.domain(), d)?;
        let mut acc = self.zero();
        for m in &d.terms {
            if !m.b.is_empty() || m.eps > 1 {
                return Err(Error::DomainMismatch("ℤ[t,ε]/ε² element with b or ε²".into()));
            }
            acc = self.add(&acc, &self.monomial(integral(&m.coeff)?, m.t as usize, m.eps));
        }
        Ok(acc)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

fn apply<R: DomainRing>(r: &R, a: &DomainElem, b: &DomainElem, op: ArithOp) -> Result<DomainElem> {
    let x = r.from_domain(a)?;
    let out = match op {
        ArithOp::Neg => r.neg(&x),
        ArithOp::Add => r.add(&x, &r.from_domain(b)?),
        ArithOp::Mul => r.mul(&x, &r.from_domain(b)?),
    };
    Ok(r.to_domain(&out))
}

/// Exact arithmetic on erased elements of the same domain. For `Neg` the
/// second operand is ignored.
pub fn poly_arith(a: &DomainElem, b: &DomainElem, op: ArithOp) -> Result<DomainElem> {
    if op != ArithOp::Neg && a.domain != b.domain {
        return Err(Error::DomainMismatch(format!("{} vs {}", a.domain, b.domain)));
    }
    match a.domain {
        CoefficientDomain::Scalar { base: ScalarTag::Int } => apply(&Integers, a, b, op),
        CoefficientDomain::Scalar { base: ScalarTag::IntMod(m) } => apply(&IntMod::new(m), a, b, op),
        CoefficientDomain::Scalar { base: ScalarTag::IntHalf } => apply(&DyadicRing, a, b, op),
        CoefficientDomain::BRing { base: ScalarTag::Int } => apply(&BRing::new(Integers), a, b, op),
        CoefficientDomain::BRing { base: ScalarTag::IntMod(m) } => apply(&BRing::new(IntMod::new(m)), a, b, op),
        CoefficientDomain::BRing { base: ScalarTag::IntHalf } => apply(&BRing::new(DyadicRing), a, b, op),
        CoefficientDomain::TRing => apply(&TRing, a, b, op),
        CoefficientDomain::TEpsRing => apply(&TEpsRing, a, b, op),
    }
}

/// Parses the wire format into the stated domain, validating it.
pub fn parse_domain_elem(json: &str) -> Result<DomainElem> {
    let d: DomainElem = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    let canon = DomainElem::from_terms(d.domain, d.terms.iter().map(|m| (m.b.clone(), m.t, m.eps, m.coeff.clone())).collect());
    // Round-trip through the concrete ring to reject foreign monomials.
    poly_arith(&canon, &canon, ArithOp::Neg).map(|_| canon)
}

impl From<&BigInt> for DomainElem {
    fn from(n: &BigInt) -> Self {
        DomainElem::integer(n.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_from_the_contract() {
        let zb = BRing::new(Integers);
        let b1 = zb.to_domain(&zb.b(1));
        let sq = poly_arith(&b1, &b1, ArithOp::Mul).unwrap();
        assert_eq!(sq, zb.to_domain(&zb.mul(&zb.b(1), &zb.b(1))));
        let e = TEpsRing.to_domain(&TEpsRing.monomial(BigInt::one(), 0, 1));
        assert!(poly_arith(&e, &e, ArithOp::Mul).unwrap().is_zero());
        let two_t = TRing.to_domain(&TRing.monomial(BigInt::from(2), 1));
        let t2 = TRing.to_domain(&TRing.monomial(BigInt::one(), 2));
        assert_eq!(poly_arith(&two_t, &t2, ArithOp::Mul).unwrap(), TRing.to_domain(&TRing.monomial(BigInt::from(2), 3)));
        assert!(matches!(poly_arith(&b1, &two_t, ArithOp::Add), Err(Error::DomainMismatch(_))));
    }

    #[test]
    fn json_round_trip() {
        let zb = BRing::new(DyadicRing);
        let x = zb.add(&zb.monomial(Partition::new(vec![2, 1]), Dyadic::new(BigInt::from(3), 2)), &zb.b(1));
        let d = zb.to_domain(&x);
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"coeff\":\"3/4\""));
        assert_eq!(parse_domain_elem(&s).unwrap(), d);
        assert_eq!(zb.from_domain(&d).unwrap(), x);
        assert_eq!(d.pretty(), "b1 + 3/4*b2*b1");
    }
}
