//! Monomial symmetric functions written in elementary symmetric functions,
//! and the inversion coefficients `λ_{α,β}`.
//!
//! A polynomial in `e₁, e₂, …` is stored as an element of `ℤ[b]` with `b_i`
//! standing for `e_i`, so `e_μ` is keyed by the partition `μ`.

use crate::algebra::{partitions_of, BElem, BRing, Integers, Partition, Ring};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

pub type EPoly = BElem<BigInt>;

static Q_CACHE: Lazy<Mutex<HashMap<Partition, EPoly>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static LAMBDA_CACHE: Lazy<Mutex<HashMap<Partition, BTreeMap<Partition, BigInt>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn ering() -> BRing<Integers> {
    BRing::new(Integers)
}

/// Number of 0-1 matrices with row sums `rows` and column sums `cols`: the
/// coefficient of `x^cols` in `e_rows`.
pub fn zero_one_count(rows: &[u32], cols: &[u32]) -> BigInt {
    fn go(rows: &[u32], cols: &mut Vec<u32>, memo: &mut HashMap<(usize, Vec<u32>), BigInt>) -> BigInt {
        if rows.is_empty() {
            return if cols.iter().all(|&c| c == 0) { BigInt::one() } else { BigInt::zero() };
        }
        let key = (rows.len(), cols.clone());
        if let Some(v) = memo.get(&key) {
            return v.clone();
        }
        let need = rows[0] as usize;
        let avail: Vec<usize> = (0..cols.len()).filter(|&i| cols[i] > 0).collect();
        let mut total = BigInt::zero();
        if need <= avail.len() {
            let mut pick: Vec<usize> = (0..need).collect();
            loop {
                for &k in &pick {
                    cols[avail[k]] -= 1;
                }
                total += go(&rows[1..], cols, memo);
                for &k in &pick {
                    cols[avail[k]] += 1;
                }
                // next combination
                let mut i = need;
                loop {
                    if i == 0 {
                        memo.insert(key, total.clone());
                        return total;
                    }
                    i -= 1;
                    if pick[i] < avail.len() - need + i {
                        pick[i] += 1;
                        for j in i + 1..need {
                            pick[j] = pick[j - 1] + 1;
                        }
                        break;
                    }
                }
            }
        }
        memo.insert(key, total.clone());
        total
    }
    if rows.iter().sum::<u32>() != cols.iter().sum::<u32>() {
        return BigInt::zero();
    }
    go(rows, &mut cols.to_vec(), &mut HashMap::new())
}

fn padded(p: &Partition, n: usize) -> Vec<u32> {
    let mut v = p.parts().to_vec();
    v.resize(n, 0);
    v
}

/// `Q_α` in `n_vars` variables, by lexicographic elimination against the
/// monomial coefficients of the `e_μ`.
pub fn q_alpha_in(alpha: &Partition, n_vars: usize) -> Result<EPoly> {
    if n_vars < alpha.len() {
        return Err(Error::InvalidArgument(format!("{} variables cannot carry the partition {}", n_vars, alpha)));
    }
    let n = alpha.weight();
    let mut lams = partitions_of(n);
    lams.retain(|l| l.len() <= n_vars);
    // Lex-decreasing order is a linear extension of dominance.
    lams.sort_by(|a, b| b.parts().cmp(a.parts()));
    let mut q: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for lam in &lams {
        let mut rhs = if lam == alpha { BigInt::one() } else { BigInt::zero() };
        let cols = padded(lam, n_vars);
        for (mu, c) in &q {
            rhs -= c * zero_one_count(mu.parts(), &cols);
        }
        let mu = lam.conjugate();
        if !rhs.is_zero() {
            q.insert(mu, rhs);
        }
    }
    Ok(q)
}

/// `Q_α`, checked to agree in `|α|` and `|α|+1` variables.
pub fn q_alpha(alpha: &Partition) -> EPoly {
    if let Some(v) = Q_CACHE.lock().unwrap().get(alpha) {
        return v.clone();
    }
    let n = (alpha.weight() as usize).max(alpha.len());
    let a = q_alpha_in(alpha, n).expect("enough variables");
    let b = q_alpha_in(alpha, n + 1).expect("enough variables");
    assert_eq!(a, b, "Q_{} depends on the number of variables", alpha);
    Q_CACHE.lock().unwrap().insert(alpha.clone(), a.clone());
    a
}

/// Coefficient of `x^β` in `m_ε · m_δ`.
fn monomial_product_coeff(eps: &Partition, delta: &Partition, beta: &Partition) -> BigInt {
    let n = beta.len().max(1);
    if eps.len() > n || delta.len() > n {
        return BigInt::zero();
    }
    let target = padded(beta, n);
    let mut count = BigInt::zero();
    let mut a = padded(eps, n);
    a.sort();
    let want = padded(delta, n);
    loop {
        if a.iter().zip(&target).all(|(x, t)| x <= t) {
            let mut rest: Vec<u32> = target.iter().zip(&a).map(|(t, x)| t - x).collect();
            rest.sort_by(|x, y| y.cmp(x));
            if rest == want {
                count += 1;
            }
        }
        if !next_permutation(&mut a) {
            return count;
        }
    }
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// `Q_ε · Q_δ = Σ_β c_β Q_β`.
pub fn q_product_expansion(eps: &Partition, delta: &Partition) -> BTreeMap<Partition, BigInt> {
    let mut out = BTreeMap::new();
    for beta in partitions_of(eps.weight() + delta.weight()) {
        let c = monomial_product_coeff(eps, delta, &beta);
        if !c.is_zero() {
            out.insert(beta, c);
        }
    }
    out
}

/// `λ_{α,β}` with `c_α(E) = Σ_β λ_{α,β} c_β(-E)`.
pub fn lambda_coeffs(alpha: &Partition) -> BTreeMap<Partition, BigInt> {
    if let Some(v) = LAMBDA_CACHE.lock().unwrap().get(alpha) {
        return v.clone();
    }
    let mut out: BTreeMap<Partition, BigInt> = BTreeMap::new();
    if alpha.is_empty() {
        out.insert(Partition::empty(), BigInt::one());
    } else {
        for (gamma, delta) in alpha.splittings() {
            if &gamma == alpha {
                continue;
            }
            for (eps, l) in lambda_coeffs(&gamma) {
                for (beta, c) in q_product_expansion(&eps, &delta) {
                    *out.entry(beta).or_insert_with(BigInt::zero) -= &l * c;
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
    }
    LAMBDA_CACHE.lock().unwrap().insert(alpha.clone(), out.clone());
    out
}

/// Evaluates an e-polynomial at `e_i ↦ values[i-1]` (zero beyond the list).
pub fn eval_epoly<R: Ring>(ring: &R, p: &EPoly, values: &[R::Elem]) -> R::Elem {
    let mut acc = ring.zero();
    for (mu, c) in p {
        let mut t = ring.from_int(c);
        for &i in mu.parts() {
            match values.get(i as usize - 1) {
                Some(v) => t = ring.mul(&t, v),
                None => {
                    t = ring.zero();
                    break;
                }
            }
        }
        ring.add_assign(&mut acc, &t);
    }
    acc
}

/// The product of two e-polynomials.
pub fn epoly_mul(a: &EPoly, b: &EPoly) -> EPoly {
    ering().mul(a, b)
}
