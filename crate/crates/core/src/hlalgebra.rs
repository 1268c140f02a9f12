//! Hall-Littlewood polynomials from the symmetrization formula, and
//! expansions in the `P` basis of `Lambda_{k,n}`.
//!
//! Everything here is independent of the honeycomb enumeration except
//! [`c_cyclic`], which is defined in terms of it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::honeycomb::structure_constant;
use crate::partition::{horizontal_strips, pieri_coefficient, Partition, PartitionError};
use crate::polyring::{RatFun, TPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HlError {
    #[error("symmetrization left a non-polynomial residue for {0:?}")]
    NotPolynomial(Vec<usize>),
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("elimination did not terminate after {0} steps")]
    NoTermination(usize),
    #[error("residual coefficient is not divisible by the leading one")]
    Inexact,
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

type Terms = BTreeMap<Vec<usize>, TPoly>;

/// A polynomial in `x_1, ..., x_k` with coefficients in `Z[t]`.
#[derive(Clone, PartialEq, Eq)]
pub struct SymPoly {
    k: usize,
    terms: Terms,
}

impl SymPoly {
    pub fn zero(k: usize) -> Self {
        SymPoly {
            k,
            terms: Terms::new(),
        }
    }

    pub fn one(k: usize) -> Self {
        Self::monomial(vec![0; k], TPoly::one())
    }

    pub fn monomial(exps: Vec<usize>, c: TPoly) -> Self {
        let k = exps.len();
        let mut terms = Terms::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        SymPoly { k, terms }
    }

    /// Monomial symmetric polynomial `m_lam` in `k` variables.
    pub fn monomial_symmetric(parts: &[usize], k: usize) -> Self {
        let mut padded = parts.to_vec();
        padded.resize(k, 0);
        let terms = distinct_permutations(&padded)
            .into_iter()
            .map(|(exps, _)| (exps, TPoly::one()))
            .collect();
        SymPoly { k, terms }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[usize]) -> TPoly {
        self.terms.get(exps).cloned().unwrap_or_else(TPoly::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &TPoly)> {
        self.terms.iter()
    }

    pub fn max_exponent(&self) -> usize {
        self.terms.keys().flatten().copied().max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|(e, c)| {
            (0..self.k.saturating_sub(1)).all(|i| {
                let mut s = e.clone();
                s.swap(i, i + 1);
                self.terms.get(&s) == Some(c)
            })
        })
    }

    pub fn scale(&self, c: &TPoly) -> Self {
        let mut out = SymPoly::zero(self.k);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.terms.insert(e.clone(), a * c);
        }
        out
    }

    fn add_term(&mut self, e: Vec<usize>, c: TPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(TPoly::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    /// Substitutes `x_i -> x_{sigma(i)}`.
    fn permute(&self, sigma: &[usize]) -> Self {
        let mut out = SymPoly::zero(self.k);
        for (e, c) in &self.terms {
            let mut pe = vec![0; self.k];
            for (i, &x) in e.iter().enumerate() {
                pe[sigma[i]] = x;
            }
            out.add_term(pe, c.clone());
        }
        out
    }

    /// Exact division by `x_a - x_b`.
    fn div_difference(&self, a: usize, b: usize) -> Option<Self> {
        let mut rem = self.clone();
        let mut quot = SymPoly::zero(self.k);
        // order monomials by the exponent of x_a first
        let key = |e: &Vec<usize>| (e[a], e.clone());
        while let Some(lead) = rem.terms.keys().max_by_key(|e| key(e)).cloned() {
            if lead[a] == 0 {
                return None;
            }
            let c = rem.terms[&lead].clone();
            let mut q = lead.clone();
            q[a] -= 1;
            let mut other = q.clone();
            other[b] += 1;
            rem.add_term(lead, -c.clone());
            rem.add_term(other, c.clone());
            quot.add_term(q, c);
        }
        Some(quot)
    }
}

impl Add for &SymPoly {
    type Output = SymPoly;
    fn add(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SymPoly {
    type Output = SymPoly;
    fn sub(self, rhs: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &SymPoly {
    type Output = SymPoly;
    fn mul(self, rhs: &SymPoly) -> SymPoly {
        let mut acc: Terms = Terms::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e: Vec<usize> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(TPoly::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        SymPoly {
            k: self.k.max(rhs.k),
            terms: acc,
        }
    }
}

impl fmt::Debug for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(e, c)| (e, c.to_string())))
            .finish()
    }
}

/// Distinct rearrangements of `seq`, each with the permutation `sigma`
/// sending position `i` of `seq` to its slot (equal entries keep order).
fn distinct_permutations(seq: &[usize]) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn rec(
        remaining: &mut BTreeMap<usize, usize>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        len: usize,
    ) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let keys: Vec<usize> = remaining.keys().rev().copied().collect();
        for v in keys {
            if remaining[&v] == 0 {
                continue;
            }
            *remaining.get_mut(&v).unwrap() -= 1;
            cur.push(v);
            rec(remaining, cur, out, len);
            cur.pop();
            *remaining.get_mut(&v).unwrap() += 1;
        }
    }
    let mut counts = BTreeMap::new();
    for &v in seq {
        *counts.entry(v).or_insert(0) += 1;
    }
    let mut arrangements = Vec::new();
    rec(&mut counts, &mut Vec::new(), &mut arrangements, seq.len());
    arrangements
        .into_iter()
        .map(|arr| {
            let mut used = vec![false; arr.len()];
            let sigma = seq
                .iter()
                .map(|v| {
                    let slot = (0..arr.len())
                        .find(|&s| !used[s] && arr[s] == *v)
                        .expect("arrangement is a permutation");
                    used[slot] = true;
                    slot
                })
                .collect();
            (arr, sigma)
        })
        .collect()
}

fn sign(sigma: &[usize]) -> i64 {
    let inversions = (0..sigma.len())
        .flat_map(|i| (i + 1..sigma.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| sigma[i] > sigma[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn hl_cache() -> &'static Mutex<HashMap<Vec<usize>, SymPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<Vec<usize>, SymPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `P^lam` in `k` variables for a weakly decreasing part sequence.
///
/// Computed as `V^{-1} sum_w sgn(w) w(N)` with `V` the Vandermonde product
/// and `N = x^lam prod_{lam_i > lam_j} (x_i - t x_j) prod_{i<j, lam_i = lam_j} (x_i - x_j)`.
pub fn hl_from_parts(parts: &[usize], k: usize) -> Result<SymPoly, HlError> {
    let mut lam = parts.to_vec();
    lam.resize(k.max(lam.len()), 0);
    if let Some(p) = hl_cache().lock().expect("cache poisoned").get(&lam) {
        return Ok(p.clone());
    }
    let k = lam.len();
    let unit = |i: usize| {
        let mut e = vec![0; k];
        e[i] = 1;
        e
    };
    let mut numer = SymPoly::monomial(lam.clone(), TPoly::one());
    for i in 0..k {
        for j in i + 1..k {
            let mut factor = SymPoly::monomial(unit(i), TPoly::one());
            let coeff_j = if lam[i] > lam[j] {
                -TPoly::t_pow(1)
            } else {
                -TPoly::one()
            };
            factor.add_term(unit(j), coeff_j);
            numer = &numer * &factor;
        }
    }
    let mut total = SymPoly::zero(k);
    for (_, sigma) in distinct_permutations(&lam) {
        let term = numer.permute(&sigma).scale(&TPoly::from(sign(&sigma)));
        total = &total + &term;
    }
    for i in 0..k {
        for j in i + 1..k {
            total = total
                .div_difference(i, j)
                .ok_or_else(|| HlError::NotPolynomial(lam.clone()))?;
        }
    }
    hl_cache()
        .lock()
        .expect("cache poisoned")
        .insert(lam, total.clone());
    Ok(total)
}

/// `P^lam` in `lam.k()` variables.
pub fn hl_polynomial(lam: &Partition) -> Result<SymPoly, HlError> {
    hl_from_parts(lam.parts(), lam.k())
}

/// An element of `Lambda_{k,n}` in the `P` basis.
#[derive(Clone, PartialEq, Eq)]
pub struct PVector {
    k: usize,
    n: usize,
    terms: BTreeMap<Partition, RatFun>,
}

impl PVector {
    pub fn zero(k: usize, n: usize) -> Self {
        PVector {
            k,
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(lam: &Partition) -> Self {
        let mut v = PVector::zero(lam.k(), lam.n());
        v.add(lam.clone(), RatFun::one());
        v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `c P^lam`; terms outside `P_{k,n}` must not be passed.
    pub fn add(&mut self, lam: Partition, c: RatFun) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lam.clone()).or_insert_with(RatFun::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&lam);
        }
    }

    pub fn get(&self, lam: &Partition) -> RatFun {
        self.terms.get(lam).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &RatFun)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients as polynomials, if they all are.
    pub fn to_polys(&self) -> Option<BTreeMap<Partition, TPoly>> {
        self.terms
            .iter()
            .map(|(p, c)| c.to_poly().ok().map(|c| (p.clone(), c)))
            .collect()
    }
}

impl fmt::Debug for PVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.terms
                    .iter()
                    .map(|(p, c)| (p.to_string(), c.to_string())),
            )
            .finish()
    }
}

/// Expands a symmetric polynomial in Hall-Littlewood polynomials and keeps
/// the terms indexed by `P_{k,n}`.
///
/// Strips the monomial whose sorted exponent vector is lexicographically
/// largest, a linear extension of dominance order.
pub fn decompose_in_p(f: &SymPoly, k: usize, n: usize) -> Result<PVector, HlError> {
    if !f.is_symmetric() {
        return Err(HlError::NotSymmetric);
    }
    let guard = crate::partition::count_pkn(k, f.max_exponent() + 2) + 1;
    let mut rest = f.clone();
    let mut out = PVector::zero(k, n);
    for _ in 0..guard {
        let Some(lead) = rest
            .terms
            .keys()
            .filter(|e| e.windows(2).all(|w| w[0] >= w[1]))
            .max()
            .cloned()
        else {
            return Ok(out);
        };
        let c = rest.terms[&lead].clone();
        let p = hl_from_parts(&lead, k)?;
        rest = &rest - &p.scale(&c);
        if lead[0] < n {
            out.add(Partition::new(&lead, k, n)?, c.into());
        }
    }
    Err(HlError::NoTermination(guard))
}

fn product_cache() -> &'static Mutex<HashMap<(Partition, Partition), PVector>> {
    static CACHE: OnceLock<Mutex<HashMap<(Partition, Partition), PVector>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `P^lam P^mu` in `Lambda_{k,n}` through the symmetrization formula.
pub fn oracle_product(lam: &Partition, mu: &Partition) -> Result<PVector, HlError> {
    if !lam.same_context(mu) {
        return Err(PartitionError::ContextMismatch.into());
    }
    let key = (lam.clone(), mu.clone());
    if let Some(v) = product_cache().lock().expect("cache poisoned").get(&key) {
        return Ok(v.clone());
    }
    let prod = &hl_polynomial(lam)? * &hl_polynomial(mu)?;
    let v = decompose_in_p(&prod, lam.k(), lam.n())?;
    product_cache()
        .lock()
        .expect("cache poisoned")
        .insert(key, v.clone());
    Ok(v)
}

/// `c^{lam,mu}_nu` through the symmetrization formula.
pub fn oracle_structure_constant(
    lam: &Partition,
    mu: &Partition,
    nu: &Partition,
) -> Result<RatFun, HlError> {
    if !lam.same_context(nu) {
        return Err(PartitionError::ContextMismatch.into());
    }
    Ok(oracle_product(lam, mu)?.get(nu))
}

/// Multiplies by `P^{(r)}` using the Pieri rule, truncating to `P_{k,n}`.
pub fn pieri_multiply(v: &PVector, r: usize) -> PVector {
    let mut out = PVector::zero(v.k, v.n);
    for (lam, c) in v.iter() {
        for nu in horizontal_strips(lam, r) {
            let coeff = pieri_coefficient(lam, &nu).expect("strip from horizontal_strips");
            out.add(nu, c.mul_poly(&coeff));
        }
    }
    out
}

/// `c^{lam,mu,nu} = h_nu^{-1} c^{lam,mu}_{nu*}`.
pub fn c_cyclic(lam: &Partition, mu: &Partition, nu: &Partition) -> RatFun {
    RatFun::from(structure_constant(lam, mu, &nu.star()))
        .div_poly(&nu.h_factor())
        .expect("h is nonzero")
}

/// `P_lam = h_lam P^{lam*}`, returned as the pair `(h_lam, lam*)`.
pub fn dual_p(lam: &Partition) -> (TPoly, Partition) {
    (lam.h_factor(), lam.star())
}
