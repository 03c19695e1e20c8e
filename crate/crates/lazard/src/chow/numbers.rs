//! Chern numbers, Euler numbers and fundamental classes of catalog varieties.

use super::model::ChowModel;
use super::spec::{Variety, VarietySpec};
use crate::algebra::{BElem, BRing, DomainElem, DomainRing, IntMod, Integers, Partition, Ring, TEpsRing, TRing};
use crate::error::{Error, Result};
use crate::fgl::{cha_image, chx_image, BSubstitution};
use crate::symmfunc::{chern_class, chern_total, power_sum_class, tangent_bundle, total_p, VirtualSplitBundle};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// The coefficient ring a fundamental class is reported in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theory {
    /// `ℤ[b]`
    L,
    /// `𝔽_p[b]`
    Lp(u64),
    /// `ℤ[t]`, the multiplicative law `x + y − xy`.
    Chx,
    /// `ℤ[t, ε]/ε²`
    Cha,
}

impl Theory {
    /// Parses `L`, `Lp`, `CHX` or `CHA`; `Lp` takes the prime from `p`.
    pub fn parse(name: &str, p: Option<u64>) -> Result<Theory> {
        match name.to_ascii_uppercase().as_str() {
            "L" => Ok(Theory::L),
            "LP" => {
                let p = p.ok_or_else(|| Error::InvalidArgument("the theory Lp needs a prime".into()))?;
                if !is_prime(p) {
                    return Err(Error::InvalidArgument(format!("{} is not prime", p)));
                }
                Ok(Theory::Lp(p))
            }
            "CHX" => Ok(Theory::Chx),
            "CHA" => Ok(Theory::Cha),
            _ => Err(Error::InvalidArgument(format!("unknown theory {:?}", name))),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Theory::L => write!(f, "L"),
            Theory::Lp(p) => write!(f, "L_{}", p),
            Theory::Chx => write!(f, "CHX"),
            Theory::Cha => write!(f, "CHA"),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// `deg P(−T_X)` on one connected model, i.e. `Σ_α c_α(X) b_α`.
pub fn fundamental_class_model(model: &ChowModel) -> BElem<BigInt> {
    let cr = model.ring(BRing::with_cap(Integers, model.dim));
    cr.degree(&total_p(&cr, &tangent_bundle(model).negate()))
}

/// The class in `ℤ[b]`, summed over components.
pub fn fundamental_class_l(v: &Variety) -> BElem<BigInt> {
    let b = BRing::new(Integers);
    v.components.iter().fold(b.zero(), |acc, m| b.add(&acc, &fundamental_class_model(m)))
}

/// The Chern numbers `c_α(X) = deg c_α(−T_X)` of a connected model, keyed by
/// partitions of its dimension (zero entries included).
pub fn chern_numbers(model: &ChowModel) -> BTreeMap<Partition, BigInt> {
    let class = fundamental_class_model(model);
    crate::algebra::partitions_of(model.dim)
        .into_iter()
        .map(|a| {
            let c = class.get(&a).cloned().unwrap_or_default();
            (a, c)
        })
        .collect()
}

fn pure_dim(v: &Variety) -> Result<u32> {
    v.pure_dim().ok_or_else(|| Error::InvalidSpec("components have different dimensions".into()))
}

pub fn euler_number_model(model: &ChowModel) -> BigInt {
    let cr = model.int_ring();
    cr.degree(&chern_class(&cr, &tangent_bundle(model), model.dim))
}

/// `χ(X) = deg c_n(T_X)`.
pub fn euler_number(spec: &VarietySpec) -> Result<BigInt> {
    let v = spec.build()?;
    pure_dim(&v)?;
    Ok(v.components.iter().map(euler_number_model).sum())
}

/// `c_α(X)`; zero unless `|α| = dim X`.
pub fn chern_number(spec: &VarietySpec, alpha: &Partition) -> Result<BigInt> {
    let v = spec.build()?;
    let n = pure_dim(&v)?;
    if alpha.weight() != n {
        return Ok(BigInt::zero());
    }
    Ok(v.components.iter().map(|m| fundamental_class_model(m).get(alpha).cloned().unwrap_or_default()).sum())
}

/// `c_{(n)}(X) = deg c_{(n)}(−T_X) = −deg Σ ±ℓⁿ` over the roots of `T_X`
/// for `n > 0`. A point has `c_{(0)} = 1`, which is not additive.
pub fn additive_chern_number_model(model: &ChowModel) -> BigInt {
    if model.dim == 0 {
        return BigInt::one();
    }
    let cr = model.int_ring();
    -cr.degree(&power_sum_class(&cr, &tangent_bundle(model), model.dim))
}

pub fn additive_chern_number(spec: &VarietySpec) -> Result<BigInt> {
    let v = spec.build()?;
    pure_dim(&v)?;
    Ok(v.components.iter().map(additive_chern_number_model).sum())
}

/// Maps a `ℤ[b]` value into the given theory.
pub fn specialize_class(theory: Theory, a: &BElem<BigInt>) -> DomainElem {
    let zb = BRing::new(Integers);
    let top = a.keys().flat_map(|p| p.parts().first().copied()).max().unwrap_or(0);
    match theory {
        Theory::L => zb.to_domain(a),
        Theory::Lp(p) => {
            let f = IntMod::new(p);
            let fb = BRing::new(f);
            fb.to_domain(&zb.map_coeffs(&fb, a, |c| f.reduce(c)))
        }
        Theory::Chx => TRing.to_domain(&BSubstitution::new(&TRing, top, chx_image).apply(a)),
        Theory::Cha => TEpsRing.to_domain(&BSubstitution::new(&TEpsRing, top, cha_image).apply(a)),
    }
}

/// `⟦X⟧ = χ(X)tⁿ` summed over components.
pub fn chx_closed_class(v: &Variety) -> DomainElem {
    let mut acc = TRing.zero();
    for m in &v.components {
        acc = TRing.add(&acc, &TRing.monomial(euler_number_model(m), m.dim as usize));
    }
    TRing.to_domain(&acc)
}

/// `⟦X⟧ = c_{(n)}(X) ε tⁿ` for `n > 0`; a point contributes `1`.
pub fn cha_closed_class(v: &Variety) -> DomainElem {
    let mut acc = TEpsRing.zero();
    for m in &v.components {
        let term = if m.dim == 0 {
            TEpsRing.one()
        } else {
            TEpsRing.monomial(additive_chern_number_model(m), m.dim as usize, 1)
        };
        acc = TEpsRing.add(&acc, &term);
    }
    TEpsRing.to_domain(&acc)
}

/// The fundamental class in the chosen theory. For `CHX` and `CHA` the
/// specialized `ℤ[b]` class is compared with the closed formula.
pub fn fundamental_class(spec: &VarietySpec, theory: Theory) -> Result<DomainElem> {
    let v = spec.build()?;
    let via_b = specialize_class(theory, &fundamental_class_l(&v));
    let closed = match theory {
        Theory::Chx => chx_closed_class(&v),
        Theory::Cha => cha_closed_class(&v),
        _ => return Ok(via_b),
    };
    if via_b != closed {
        return Err(Error::Inconsistent(format!("{} class: specialization gives {}, closed form gives {}", theory, via_b, closed)));
    }
    Ok(via_b)
}

/// `p_*` for `p: ℙ(V) → S` where `total` was built as `base.proj_bundle`.
/// Uses `p_*(ξʲ) = c_{j+1−r}(−V)` with `ξ = −ζ`.
pub fn pushforward_projbundle(total: &ChowModel, base: &ChowModel, a: &[BigInt]) -> Result<Vec<BigInt>> {
    let split = total.split_last_layer(base)?;
    if a.len() != total.rank() {
        return Err(Error::InvalidArgument("element is not in the bundle model".into()));
    }
    let layer = total.layers.last().expect("a bundle layer");
    let r = layer.rank() as u32;
    let lines: Vec<_> = layer.lines.iter().map(|l| l[..base.ngens()].to_vec()).collect();
    let br = base.int_ring();
    let minus_v = VirtualSplitBundle::from_lines(lines).negate();
    let c = chern_total(&br, &minus_v);
    let mut out = br.zero();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let (bi, j) = split[i];
        if j + 1 < r {
            continue;
        }
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let cls = br.codim_part(&c, j + 1 - r);
        let t = br.mul(&br.basis_elem(bi, x * sign), &cls);
        out = br.add(&out, &t);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn p(xs: &[u32]) -> Partition {
        Partition::new(xs.to_vec())
    }

    #[test]
    fn small_classes() {
        let b = BRing::new(Integers);
        let l1 = fundamental_class_l(&VarietySpec::projective(1).build().unwrap());
        assert_eq!(l1, b.scale(&b.b(1), &big(-2)));
        let l2 = fundamental_class_l(&VarietySpec::projective(2).build().unwrap());
        let expected = b.sub(&b.scale(&b.monomial(p(&[1, 1]), big(1)), &big(6)), &b.scale(&b.b(2), &big(3)));
        assert_eq!(l2, expected);
    }

    #[test]
    fn euler_and_additive() {
        assert_eq!(euler_number(&VarietySpec::projective(3)).unwrap(), big(4));
        assert_eq!(chern_number(&VarietySpec::projective(2), &p(&[2])).unwrap(), big(-3));
        assert_eq!(additive_chern_number(&VarietySpec::projective(2)).unwrap(), big(-3));
        assert_eq!(chern_number(&VarietySpec::projective(3), &p(&[1, 1, 1])).unwrap(), big(-20));
        let sq = VarietySpec::MultiProj { dims: vec![1, 1] };
        assert_eq!(additive_chern_number(&sq).unwrap(), big(0));
        let mixed = VarietySpec::Disjoint { components: vec![VarietySpec::point(), VarietySpec::projective(1)] };
        assert!(euler_number(&mixed).is_err());
    }

    #[test]
    fn closed_forms_agree() {
        for n in 0..5 {
            let s = VarietySpec::projective(n);
            let x = fundamental_class(&s, Theory::Chx).unwrap();
            assert_eq!(x, TRing.to_domain(&TRing.monomial(big(n as i64 + 1), n as usize)));
            fundamental_class(&s, Theory::Cha).unwrap();
        }
        let f1 = VarietySpec::ProjBundle { base: Box::new(VarietySpec::projective(1)), lines: vec![vec![0], vec![1]] };
        fundamental_class(&f1, Theory::Chx).unwrap();
        fundamental_class(&f1, Theory::Cha).unwrap();
    }

    #[test]
    fn mod_p_class() {
        let x = fundamental_class(&VarietySpec::projective(1), Theory::Lp(2)).unwrap();
        assert!(x.is_zero());
        assert!(Theory::parse("Lp", Some(4)).is_err());
        assert_eq!(Theory::parse("chx", None).unwrap(), Theory::Chx);
    }

    #[test]
    fn bundle_pushforward() {
        // V = O ⊕ O(d) over ℙ¹
        let base = ChowModel::multiproj(&[1]);
        let d = 3;
        let total = base.proj_bundle(&[vec![0], vec![d]]).unwrap();
        let cr = total.int_ring();
        let xi = cr.linear(&[0, -1]);
        let push = |a: &Vec<BigInt>| pushforward_projbundle(&total, &base, a).unwrap();
        let br = base.int_ring();
        assert!(br.is_zero(&push(&cr.one())));
        assert_eq!(push(&xi), br.one());
        assert_eq!(push(&cr.mul(&xi, &xi)), br.linear(&[-d]));
    }
}
