//! Honeycomb vertex fugacities and their normalized variants `u^` and `u_`.
//!
//! Labels around a vertex are `(i, j)`, `(i', j')`, `(i'', j'')`, which in
//! the puzzle picture sit on the NE, NW and S edges of an up-triangle.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{OnceLock, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::polyring::{alpha, q_pochhammer_monomial, RatFun, TPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FugacityError {
    #[error("labels {0} violate the balance condition i'-j = i''-j' = i-j''")]
    Unbalanced(VertexLabels),
    #[error("cannot parse vertex labels {0:?}")]
    Parse(String),
}

/// The six multiplicities around a honeycomb vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct VertexLabels {
    pub i: usize,
    pub j: usize,
    pub ip: usize,
    pub jp: usize,
    pub ipp: usize,
    pub jpp: usize,
}

impl VertexLabels {
    /// Labels in the order `(i, j, i', j', i'', j'')`.
    pub const fn new(i: usize, j: usize, ip: usize, jp: usize, ipp: usize, jpp: usize) -> Self {
        VertexLabels {
            i,
            j,
            ip,
            jp,
            ipp,
            jpp,
        }
    }

    /// Labels given in the superscript order `(j, i, j', i', j'', i'')` of `u^`.
    pub const fn from_u_order(u: [usize; 6]) -> Self {
        VertexLabels::new(u[1], u[0], u[3], u[2], u[5], u[4])
    }

    pub const fn to_u_order(self) -> [usize; 6] {
        [self.j, self.i, self.jp, self.ip, self.jpp, self.ipp]
    }

    pub const fn as_array(self) -> [usize; 6] {
        [self.i, self.j, self.ip, self.jp, self.ipp, self.jpp]
    }

    pub fn is_zero(&self) -> bool {
        self.as_array().iter().all(|&x| x == 0)
    }

    pub fn max_label(&self) -> usize {
        self.as_array().into_iter().max().unwrap_or(0)
    }

    pub fn is_balanced(&self) -> bool {
        let d1 = self.ip as i64 - self.j as i64;
        let d2 = self.ipp as i64 - self.jp as i64;
        let d3 = self.i as i64 - self.jpp as i64;
        d1 == d2 && d2 == d3
    }

    fn check(&self) -> Result<(), FugacityError> {
        if self.is_balanced() {
            Ok(())
        } else {
            Err(FugacityError::Unbalanced(*self))
        }
    }

    /// `c = j - i' = j' - i'' = j'' - i`.
    pub fn charge(&self) -> i64 {
        self.j as i64 - self.ip as i64
    }

    /// All balanced labels with every entry at most `bound`.
    pub fn all_balanced(bound: usize) -> Vec<VertexLabels> {
        let mut out = Vec::new();
        let r = 0..=bound;
        for i in r.clone() {
            for j in r.clone() {
                for ip in r.clone() {
                    for jp in r.clone() {
                        // ipp - jp = ip - j and jpp = i - (ip - j)
                        let ipp = jp as i64 + ip as i64 - j as i64;
                        let jpp = i as i64 - ip as i64 + j as i64;
                        if (0..=bound as i64).contains(&ipp) && (0..=bound as i64).contains(&jpp) {
                            out.push(VertexLabels::new(i, j, ip, jp, ipp as usize, jpp as usize));
                        }
                    }
                }
            }
        }
        out
    }

    /// Reflection `(j,i,j',i',j'',i'') -> (j'',i',j',i,j,i'')`.
    pub fn reflect(&self) -> Self {
        let [j, i, jp, ip, jpp, ipp] = self.to_u_order();
        Self::from_u_order([jpp, ip, jp, i, j, ipp])
    }

    /// Heine reflection `(j,i,j',i',j'',i'') -> (i',j'',i'',j,i,j')`.
    pub fn heine(&self) -> Self {
        let [j, i, jp, ip, jpp, ipp] = self.to_u_order();
        Self::from_u_order([ip, jpp, ipp, j, i, jp])
    }

    /// Cyclic shift `(j,i,j',i',j'',i'') -> (j',i',j'',i'',j,i)`.
    pub fn rotate(&self) -> Self {
        let [j, i, jp, ip, jpp, ipp] = self.to_u_order();
        Self::from_u_order([jp, ip, jpp, ipp, j, i])
    }

    /// Orbit under the group generated by the three maps above.
    pub fn d6_orbit(&self) -> Vec<Self> {
        let mut seen = vec![*self];
        let mut frontier = vec![*self];
        while let Some(v) = frontier.pop() {
            for w in [v.reflect(), v.heine(), v.rotate()] {
                if !seen.contains(&w) {
                    seen.push(w);
                    frontier.push(w);
                }
            }
        }
        seen.sort();
        seen
    }
}

impl fmt::Display for VertexLabels {
    /// `i/j/i'/j'/i''/j''`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{}/{}/{}/{}/{}",
            self.i, self.j, self.ip, self.jp, self.ipp, self.jpp
        )
    }
}

impl fmt::Debug for VertexLabels {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({self})")
    }
}

impl FromStr for VertexLabels {
    type Err = FugacityError;

    /// Accepts `/` or `,` separated labels in the order `i,j,i',j',i'',j''`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let vals: Vec<usize> = s
            .split(['/', ','])
            .map(|x| x.trim().parse())
            .collect::<Result<_, _>>()
            .map_err(|_| FugacityError::Parse(s.to_string()))?;
        match vals.as_slice() {
            &[i, j, ip, jp, ipp, jpp] => Ok(VertexLabels::new(i, j, ip, jp, ipp, jpp)),
            _ => Err(FugacityError::Parse(s.to_string())),
        }
    }
}

/// `alpha(a) / (alpha(a - r) alpha(r))`, the Gaussian binomial.
pub fn qbinomial(a: usize, r: usize) -> TPoly {
    if r > a {
        return TPoly::zero();
    }
    alpha(a)
        .exact_divide(&(alpha(a - r) * alpha(r)))
        .expect("Gaussian binomials are polynomials")
}

/// `alpha(a) / alpha(a - r)`.
fn alpha_ratio(a: usize, r: usize) -> TPoly {
    ((a - r + 1)..=a).map(TPoly::one_minus_t_pow).product()
}

fn sign_t_pow(r: usize, e: usize) -> TPoly {
    let p = TPoly::t_pow(e);
    if r % 2 == 1 {
        -p
    } else {
        p
    }
}

fn fugacity_uncached(v: &VertexLabels) -> TPoly {
    let VertexLabels { i, j, ip, jp, .. } = *v;
    // Each term times alpha(i) alpha(i') is a polynomial.
    let total: TPoly = (0..=i.min(ip))
        .map(|r| {
            sign_t_pow(r, jp * r + r * (r + 1) / 2)
                * alpha(i + j - r)
                * qbinomial(i, r)
                * alpha_ratio(ip, r)
        })
        .sum();
    total
        .exact_divide(&(alpha(i) * alpha(ip)))
        .expect("vertex fugacities are polynomials")
}

fn cache() -> &'static RwLock<HashMap<VertexLabels, TPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<VertexLabels, TPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Fugacity of a balanced vertex,
/// `sum_r (-1)^r t^{j' r + r(r+1)/2} alpha(i+j-r) / (alpha(i-r) alpha(r) alpha(i'-r))`.
pub fn vertex_fugacity(v: &VertexLabels) -> Result<TPoly, FugacityError> {
    v.check()?;
    if v.is_zero() {
        return Ok(TPoly::one());
    }
    if let Some(p) = cache().read().expect("fugacity cache poisoned").get(v) {
        return Ok(p.clone());
    }
    let p = fugacity_uncached(v);
    cache()
        .write()
        .expect("fugacity cache poisoned")
        .insert(*v, p.clone());
    Ok(p)
}

/// `u^{j,i,j',i',j'',i''} = fug / (alpha(i'') alpha(j) alpha(j''))`.
pub fn u_upper(v: &VertexLabels) -> Result<RatFun, FugacityError> {
    let fug = vertex_fugacity(v)?;
    Ok(RatFun::from(fug)
        .div_poly(&(alpha(v.ipp) * alpha(v.j) * alpha(v.jpp)))
        .expect("alpha is nonzero"))
}

/// `u_{j,i,j',i',j'',i''} = alpha(i) alpha(i') alpha(j') fug`, always a polynomial.
pub fn u_lower(v: &VertexLabels) -> Result<TPoly, FugacityError> {
    let fug = vertex_fugacity(v)?;
    Ok(alpha(v.i) * alpha(v.ip) * alpha(v.jp) * fug)
}

/// `u_` through its hypergeometric definition
/// `alpha(i+j) alpha(j') 2phi1(t^-i, t^-i'; t^-(i+j); t, t^{i''+1})`,
/// meaningful for any nonnegative arguments; `j''` does not enter.
pub fn u_lower_general(j: usize, i: usize, jp: usize, ip: usize, ipp: usize) -> TPoly {
    let z = ipp as i64 + 1;
    let series = terminating_phi(
        &[-(i as i64), -(ip as i64)],
        &[-((i + j) as i64)],
        z,
        i.min(ip),
    );
    series
        .mul_poly(&(alpha(i + j) * alpha(jp)))
        .to_poly()
        .expect("u_ is a polynomial")
}

/// Terminating basic hypergeometric series
/// `r phi s (t^{a_1},...; t^{b_1},...; t, t^z)` summed up to `n = top`,
/// with the standard factor `[(-1)^n t^{n(n-1)/2}]^{1+s-r}`.
pub fn terminating_phi(a: &[i64], b: &[i64], z: i64, top: usize) -> RatFun {
    let extra = 1 + b.len() as i64 - a.len() as i64;
    let mut total = RatFun::zero();
    for n in 0..=top {
        let mut num = TPoly::one();
        let mut den = TPoly::one();
        // net power of t, positive = numerator
        let mut power: i64 = z * n as i64 + extra * (n as i64) * (n as i64 - 1) / 2;
        for &ai in a {
            let (p, s) = q_pochhammer_monomial(ai, n);
            num *= p;
            power -= s as i64;
        }
        for &bi in b.iter().chain(std::iter::once(&1)) {
            let (p, s) = q_pochhammer_monomial(bi, n);
            den *= p;
            power += s as i64;
        }
        if den.is_zero() {
            panic!("terminating_phi: vanishing denominator at n={n}");
        }
        if power >= 0 {
            num *= TPoly::t_pow(power as usize);
        } else {
            den *= TPoly::t_pow((-power) as usize);
        }
        if (extra * n as i64).rem_euclid(2) == 1 {
            num = -num;
        }
        total += RatFun::new(num, den).expect("nonzero denominator");
    }
    total
}

/// `u^` through the `3phi1` representation, split on the sign of `c = j - i'`.
///
/// The series argument is `t^{i+i'+i''+c+1}` (resp. `t^{j+j'+j''-c+1}`); this
/// is the normalization under which the representation reproduces `u^`.
pub fn u_via_3phi1(v: &VertexLabels) -> Result<RatFun, FugacityError> {
    v.check()?;
    let c = v.charge();
    let (x, y, z, cc) = if c >= 0 {
        (v.i, v.ip, v.ipp, c as usize)
    } else {
        (v.j, v.jp, v.jpp, (-c) as usize)
    };
    Ok(u_3phi1_branch(x, y, z, cc))
}

/// One arm of the `3phi1` representation:
/// `3phi1(t^-x, t^-y, t^-z; t^{c+1}; t, t^{x+y+z+c+1}) / (alpha(x) alpha(y) alpha(z) alpha(c))`.
pub fn u_3phi1_branch(x: usize, y: usize, z: usize, c: usize) -> RatFun {
    let series = terminating_phi(
        &[-(x as i64), -(y as i64), -(z as i64)],
        &[c as i64 + 1],
        (x + y + z + c) as i64 + 1,
        x.min(y).min(z),
    );
    series
        .div_poly(&(alpha(x) * alpha(y) * alpha(z) * alpha(c)))
        .expect("alpha is nonzero")
}
