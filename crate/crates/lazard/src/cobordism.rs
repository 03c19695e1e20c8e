//! The Lazard ring as a graded sublattice of `ℤ[b]`, membership tests, and
//! decomposability criteria through Chern numbers.

use crate::algebra::{partitions_of, BElem, BRing, IntegerLattice, Integers, Partition, Ring};
use crate::chow::{additive_chern_number_model, chern_numbers, is_prime, VarietySpec};
use crate::error::{Error, Result};
use crate::fgl::universal_fgl;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// `ℒ^{−n}` inside `ℤ[b]^{−n}`, with coordinates over the partitions of `n`.
#[derive(Clone, Debug)]
pub struct LazardDegreePiece {
    pub degree: u32,
    pub ambient: Vec<Partition>,
    index: HashMap<Partition, usize>,
    pub lattice: IntegerLattice,
}

impl LazardDegreePiece {
    fn new(degree: u32, generators: Vec<BElem<BigInt>>) -> Result<Self> {
        let ambient = partitions_of(degree);
        let index = ambient.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut piece = LazardDegreePiece { degree, ambient, index, lattice: IntegerLattice::new(vec![], 0) };
        let rows = generators.iter().map(|g| piece.coords(g)).collect::<Result<Vec<_>>>()?;
        piece.lattice = IntegerLattice::new(rows, piece.ambient.len());
        Ok(piece)
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    /// Coordinates of a homogeneous element of degree `−n`.
    pub fn coords(&self, v: &BElem<BigInt>) -> Result<Vec<BigInt>> {
        let mut out = vec![BigInt::zero(); self.ambient.len()];
        for (alpha, c) in v {
            if c.is_zero() {
                continue;
            }
            match self.index.get(alpha) {
                Some(&i) => out[i] = c.clone(),
                None => {
                    return Err(Error::DegreeViolation(format!("b_{} does not have degree -{}", alpha, self.degree)));
                }
            }
        }
        Ok(out)
    }

    pub fn element(&self, coords: &[BigInt]) -> BElem<BigInt> {
        self.ambient.iter().zip(coords).filter(|(_, c)| !c.is_zero()).map(|(a, c)| (a.clone(), c.clone())).collect()
    }

    /// The HNF basis as elements of `ℤ[b]`.
    pub fn basis(&self) -> Vec<BElem<BigInt>> {
        self.lattice.hnf.iter().map(|r| self.element(r)).collect()
    }

    pub fn contains(&self, v: &BElem<BigInt>) -> Result<bool> {
        Ok(self.lattice.member(&self.coords(v)?))
    }
}

static PIECES: Lazy<Mutex<BTreeMap<u32, Arc<LazardDegreePiece>>>> = Lazy::new(|| Mutex::new(BTreeMap::new()));

/// `ℒ^{−n}`, spanned by the products of the coefficients `a_{i,j}` of the
/// universal law of total degree `−n`. Built degree by degree as
/// `ℒ^{−n} = Σ_k a_{i,j}·ℒ^{−(n−k)}` over `i + j − 1 = k`.
pub fn lazard_basis(n: u32, order: u32) -> Result<Arc<LazardDegreePiece>> {
    if order < n + 2 {
        return Err(Error::InsufficientOrder { needed: n + 2, have: order });
    }
    let mut cache = PIECES.lock().unwrap();
    if let Some(p) = cache.get(&n) {
        return Ok(p.clone());
    }
    let f = universal_fgl(n + 2)?;
    let b = BRing::new(Integers);
    let mut by_degree: Vec<Vec<BElem<BigInt>>> = vec![Vec::new(); n as usize + 1];
    for i in 1..=n {
        for j in i..=n + 1 - i {
            let a = f.coefficient(i, j);
            if !b.is_zero(&a) {
                by_degree[(i + j - 1) as usize].push(a);
            }
        }
    }
    for d in 0..=n {
        if cache.contains_key(&d) {
            continue;
        }
        let piece = if d == 0 {
            LazardDegreePiece::new(0, vec![b.one()])?
        } else {
            let mut gens = Vec::new();
            for k in 1..=d {
                let lower = if k == d { vec![b.one()] } else { cache[&(d - k)].basis() };
                for a in &by_degree[k as usize] {
                    for w in &lower {
                        gens.push(b.mul(a, w));
                    }
                }
            }
            LazardDegreePiece::new(d, gens)?
        };
        cache.insert(d, Arc::new(piece));
    }
    Ok(cache[&n].clone())
}

/// For `m = 0`, membership in `ℒ^{−n}`; for `m > 0`, membership in `m·ℒ^{−n}`.
pub fn lattice_member_mod(piece: &LazardDegreePiece, v: &BElem<BigInt>, m: u64) -> Result<bool> {
    let c = piece.coords(v)?;
    if m == 0 {
        Ok(piece.lattice.member(&c))
    } else {
        Ok(piece.lattice.member_scaled(&c, &BigInt::from(m)))
    }
}

/// `Dec(ℒ)^{−n}`: the span of `ℒ^{−i}·ℒ^{−(n−i)}` over `0 < i < n`, in the
/// coordinates of `ℒ^{−n}`'s ambient.
pub fn decomposables(n: u32) -> Result<IntegerLattice> {
    let piece = lazard_basis(n, n + 2)?;
    let b = BRing::new(Integers);
    let mut rows = Vec::new();
    for i in 1..n {
        if 2 * i > n {
            break;
        }
        let (u, w) = (lazard_basis(i, n + 2)?, lazard_basis(n - i, n + 2)?);
        for x in u.basis() {
            for y in w.basis() {
                rows.push(piece.coords(&b.mul(&x, &y))?);
            }
        }
    }
    Ok(IntegerLattice::new(rows, piece.ambient.len()))
}

/// Decomposability of a class `v ∈ ℒ^{−n}` decided on the lattice itself:
/// `(in ℒ_p, in ℒ/p)`, i.e. `v ∈ Dec + p·ℤ[b]` and `v ∈ Dec + p·ℒ`.
/// `ℒ_p` is the image of `ℒ` in `𝔽_p[b]`, whose decomposables are the image
/// of `Dec(ℒ)`.
pub fn decomposable_by_lattice(v: &BElem<BigInt>, n: u32, p: u64) -> Result<(bool, bool)> {
    let piece = lazard_basis(n, n + 2)?;
    let c = piece.coords(v)?;
    if !piece.lattice.member(&c) {
        return Err(Error::InvalidArgument("class is not in the Lazard ring".into()));
    }
    let dec = decomposables(n)?;
    let pb = BigInt::from(p);
    let in_lp = dec.member_mod(&c, &pb);
    let mut rows = dec.hnf.clone();
    rows.extend(piece.lattice.hnf.iter().map(|r| r.iter().map(|x| x * &pb).collect()));
    let in_lmodp = IntegerLattice::new(rows, piece.ambient.len()).member(&c);
    Ok((in_lp, in_lmodp))
}

/// The prime `p` with `m = p^k` for some `k ≥ 1`.
pub fn prime_power_base(m: u64) -> Option<u64> {
    if m < 2 {
        return None;
    }
    let p = (2..).find(|d| m % d == 0).unwrap();
    let mut r = m;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

/// `n = p^q − 1` for some `q ≥ 1`.
pub fn is_p_power_minus_one(n: u64, p: u64) -> bool {
    prime_power_base(n + 1) == Some(p)
}

/// `gcd_{0<i<m} C(m, i)`, zero when the range is empty.
pub fn binomial_gcd(m: u64) -> BigInt {
    let mut g = BigInt::zero();
    let mut c = BigInt::one();
    for i in 1..m {
        c = c * BigInt::from(m - i + 1) / BigInt::from(i);
        g = g.gcd(&c);
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposability {
    pub dim: u32,
    pub prime: u64,
    pub additive_chern_number: BigInt,
    /// `⟦X⟧` is decomposable in `ℒ_p`.
    pub in_lp_decomposable: bool,
    /// `⟦X⟧` is decomposable in `ℒ/p`.
    pub in_lmodp_decomposable: bool,
}

/// Decomposability of `⟦X⟧` read off `c_{(n)}(X)`: in `ℒ/p` iff `p² | c_{(n)}`
/// when `n = p^q − 1` and `p | c_{(n)}` otherwise. In `ℒ_p` the class is always
/// decomposable when `n = p^q − 1`, and agrees with `ℒ/p` otherwise.
pub fn decomposable_test(spec: &VarietySpec, p: u64) -> Result<Decomposability> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{} is not prime", p)));
    }
    let model = spec.build_connected()?;
    let n = model.dim;
    if n == 0 {
        return Err(Error::InvalidArgument("decomposability needs positive dimension".into()));
    }
    let c = additive_chern_number_model(&model);
    let special = is_p_power_minus_one(n as u64, p);
    let modulus = if special { BigInt::from(p * p) } else { BigInt::from(p) };
    let lmodp = c.is_multiple_of(&modulus);
    Ok(Decomposability {
        dim: n,
        prime: p,
        additive_chern_number: c,
        in_lp_decomposable: special || lmodp,
        in_lmodp_decomposable: lmodp,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PTypicalEntry {
    pub alpha: Partition,
    pub value: BigInt,
    pub divisible_by_p: bool,
    /// Present when `⟦X⟧` is decomposable in `ℒ/p`.
    pub divisible_by_p2: Option<bool>,
}

impl PTypicalEntry {
    pub fn pass(&self) -> bool {
        self.divisible_by_p && self.divisible_by_p2 != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PTypicalReport {
    pub prime: u64,
    pub decomposable: bool,
    pub entries: Vec<PTypicalEntry>,
}

impl PTypicalReport {
    pub fn pass(&self) -> bool {
        self.entries.iter().all(PTypicalEntry::pass)
    }
}

/// Partitions of `n` all of whose parts `α_i` have `α_i + 1` a power of `p`.
pub fn p_typical_partitions(n: u32, p: u64) -> Vec<Partition> {
    partitions_of(n).into_iter().filter(|a| a.parts().iter().all(|&x| is_p_power_minus_one(x as u64, p))).collect()
}

/// `p | c_α(X)` for every `α ⊢ dim X` with each `α_i + 1` a power of `p`, and
/// `p² | c_α(X)` as well when `⟦X⟧` is decomposable in `ℒ/p`.
pub fn p_typical_chern_check(spec: &VarietySpec, p: u64) -> Result<PTypicalReport> {
    let dec = decomposable_test(spec, p)?;
    let model = spec.build_connected()?;
    let numbers = chern_numbers(&model);
    let pb = BigInt::from(p);
    let p2 = BigInt::from(p * p);
    let entries = p_typical_partitions(model.dim, p)
        .into_iter()
        .map(|alpha| {
            let value = numbers[&alpha].clone();
            PTypicalEntry {
                divisible_by_p: value.is_multiple_of(&pb),
                divisible_by_p2: dec.in_lmodp_decomposable.then(|| value.is_multiple_of(&p2)),
                alpha,
                value,
            }
        })
        .collect();
    Ok(PTypicalReport { prime: p, decomposable: dec.in_lmodp_decomposable, entries })
}

/// `b_i ↦ b_i` when `i + 1` is a power of `p`, else `0`.
pub fn p_typical_projection(a: &BElem<BigInt>, p: u64) -> BElem<BigInt> {
    a.iter().filter(|(alpha, _)| alpha.parts().iter().all(|&x| is_p_power_minus_one(x as u64, p))).map(|(k, c)| (k.clone(), c.clone())).collect()
}

/// The coefficients `a_{i,j}` with `i + j > 1` and `i + j − 1 ≤ max_degree`
/// whose `p`-typical projection is not divisible by `p`. Empty when the
/// projected law is additive mod `p`.
pub fn psi_kernel_violations(p: u64, max_degree: u32) -> Result<Vec<(u32, u32)>> {
    let f = universal_fgl(max_degree + 2)?;
    let pb = BigInt::from(p);
    let mut bad = Vec::new();
    for i in 1..=max_degree {
        for j in 1..=max_degree + 1 - i {
            let proj = p_typical_projection(&f.coefficient(i, j), p);
            if proj.values().any(|c| !c.is_multiple_of(&pb)) {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}
