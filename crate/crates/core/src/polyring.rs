//! Exact arithmetic in `Z[s]` with `s^2 = t`, and its fraction field.
//!
//! Every fugacity and structure constant lives here. Polynomials are stored
//! in the half-power variable `s`; most values only use even powers and are
//! rendered as polynomials in `t`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial division is not exact: ({num}) / ({den})")]
    NotDivisible { num: String, den: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function is not a polynomial: {0}")]
    NotPolynomial(String),
    #[error("malformed polynomial: {0}")]
    Parse(String),
}

/// Polynomial in `s = t^{1/2}` with arbitrary-precision integer coefficients.
///
/// `coeffs[d]` is the coefficient of `s^d`; there is never a trailing zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: Vec<BigInt>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::from_s_coeffs(vec![c.into()])
    }

    /// Builds from coefficients of `s^0, s^1, ...`.
    pub fn from_s_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    /// Builds from coefficients of `t^0, t^1, ...`.
    pub fn from_t_coeffs<T: Into<BigInt> + Clone>(coeffs: &[T]) -> Self {
        let mut out = Vec::with_capacity(2 * coeffs.len());
        for c in coeffs {
            out.push(c.clone().into());
            out.push(BigInt::zero());
        }
        Self::from_s_coeffs(out)
    }

    /// `c * s^d`.
    pub fn s_monomial<T: Into<BigInt>>(c: T, d: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[d] = c.into();
        Self::from_s_coeffs(coeffs)
    }

    /// `t^e`.
    pub fn t_pow(e: usize) -> Self {
        Self::s_monomial(1, 2 * e)
    }

    /// `1 - t^e`.
    pub fn one_minus_t_pow(e: usize) -> Self {
        Self::one() - Self::t_pow(e)
    }

    pub fn s_coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree in `s`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// True when only even powers of `s` occur, i.e. the value lies in `Z[t]`.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// Coefficients in `t`, when the support is even.
    pub fn t_coeffs(&self) -> Option<Vec<BigInt>> {
        self.is_even()
            .then(|| self.coeffs.iter().step_by(2).cloned().collect())
    }

    /// Value at `t = 0` (and `s = 0`).
    pub fn at_zero(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    /// Value at `s = 1`, i.e. `t = 1`.
    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplies by `s^d`.
    pub fn shift(&self, d: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigInt::zero(); d];
        coeffs.extend(self.coeffs.iter().cloned());
        TPoly { coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// gcd of the coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    fn div_scalar_exact(&self, c: &BigInt) -> Self {
        TPoly {
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        self.div_scalar_exact(&c)
    }

    /// Quotient and remainder when the division by `b` stays in `Z[s]`;
    /// `None` as soon as a leading-coefficient division is inexact.
    fn div_rem_integral(&self, b: &TPoly) -> Option<(TPoly, TPoly)> {
        let db = b.degree()?;
        let lb = b.leading()?;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Some((TPoly::zero(), self.clone()));
        }
        let mut q = vec![BigInt::zero(); r.len() - db];
        for d in (db..r.len()).rev() {
            if r[d].is_zero() {
                continue;
            }
            let (qc, rem) = r[d].div_rem(lb);
            if !rem.is_zero() {
                return None;
            }
            for (idx, bc) in b.coeffs.iter().enumerate() {
                let pos = d - db + idx;
                r[pos] -= &qc * bc;
            }
            q[d - db] = qc;
        }
        Some((TPoly::from_s_coeffs(q), TPoly::from_s_coeffs(r)))
    }

    /// Exact quotient `self / b` in `Z[s]`.
    pub fn exact_divide(&self, b: &TPoly) -> Result<TPoly, PolyError> {
        if b.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        match self.div_rem_integral(b) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(PolyError::NotDivisible {
                num: self.to_string(),
                den: b.to_string(),
            }),
        }
    }

    fn pseudo_rem(&self, b: &TPoly) -> TPoly {
        let db = b.degree().expect("pseudo_rem by zero");
        let lb = b.leading().unwrap().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading().unwrap().clone();
            r = r.scale(&lb) - b.scale(&lr).shift(dr - db);
        }
        r
    }

    /// Greatest common divisor in `Z[s]`, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &TPoly) -> TPoly {
        if self.is_zero() {
            return other.primitive_part().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive_part().scale(&self.content());
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.primitive_part().scale(&c)
    }

    /// Substitutes `s -> -s`, i.e. `t^{1/2} -> -t^{1/2}`.
    pub fn flip_half(&self) -> Self {
        TPoly {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(d, c)| if d % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }
}

/// `alpha(i) = (1-t)(1-t^2)...(1-t^i)`.
pub fn alpha(i: usize) -> TPoly {
    (1..=i).fold(TPoly::one(), |acc, r| acc * TPoly::one_minus_t_pow(r))
}

/// `(a; t)_n` for `a = c * t^e` with an integer exponent `e`, returned as
/// `(numerator, shift)` meaning `numerator * t^{-shift}`.
pub fn q_pochhammer_monomial(e: i64, n: usize) -> (TPoly, usize) {
    let mut num = TPoly::one();
    let mut shift = 0usize;
    for m in 0..n as i64 {
        let p = e + m;
        if p >= 0 {
            num *= TPoly::one_minus_t_pow(p as usize);
        } else {
            // 1 - t^p = (t^{-p} - 1) t^p
            num *= TPoly::t_pow((-p) as usize) - TPoly::one();
            shift += (-p) as usize;
        }
    }
    (num, shift)
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], sign: bool) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for d in 0..n {
        let x = a.get(d).cloned().unwrap_or_default();
        let y = b.get(d);
        out.push(match (y, sign) {
            (Some(y), true) => x + y,
            (Some(y), false) => x - y,
            (None, _) => x,
        });
    }
    out
}

impl Add<&TPoly> for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        TPoly::from_s_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, true))
    }
}

impl Sub<&TPoly> for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        TPoly::from_s_coeffs(add_coeffs(&self.coeffs, &rhs.coeffs, false))
    }
}

impl Mul<&TPoly> for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TPoly::from_s_coeffs(out)
    }
}

macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $m:ident, $atr:ident, $am:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty {
                (&self).$m(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty {
                self.$m(&rhs)
            }
        }
        impl $atr<&$ty> for $ty {
            fn $am(&mut self, rhs: &$ty) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $atr<$ty> for $ty {
            fn $am(&mut self, rhs: $ty) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

forward_binop!(TPoly, Add, add, AddAssign, add_assign);
forward_binop!(TPoly, Sub, sub, SubAssign, sub_assign);
forward_binop!(TPoly, Mul, mul, MulAssign, mul_assign);

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        -self.clone()
    }
}

impl std::iter::Sum for TPoly {
    fn sum<I: Iterator<Item = TPoly>>(iter: I) -> TPoly {
        iter.fold(TPoly::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for TPoly {
    fn product<I: Iterator<Item = TPoly>>(iter: I) -> TPoly {
        iter.fold(TPoly::one(), |a, b| a * b)
    }
}

impl From<i64> for TPoly {
    fn from(c: i64) -> Self {
        TPoly::constant(c)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, first: bool, c: &BigInt, var: &str) -> fmt::Result {
    let neg = c.is_negative();
    let abs = c.abs();
    if first {
        if neg {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {} ", if neg { '-' } else { '+' })?;
    }
    match (var.is_empty(), abs.is_one()) {
        (true, _) => write!(f, "{abs}"),
        (false, true) => write!(f, "{var}"),
        (false, false) => write!(f, "{abs}*{var}"),
    }
}

impl fmt::Display for TPoly {
    /// `3 + 2*t - t^2` for values in `Z[t]`, `t^(3/2)`-style half powers otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let even = self.is_even();
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let var = match (d, even || d % 2 == 0) {
                (0, _) => String::new(),
                (2, true) => "t".to_string(),
                (d, true) => format!("t^{}", d / 2),
                (d, false) => format!("t^({d}/2)"),
            };
            write_monomial(f, first, c, &var)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TPoly({self})")
    }
}

/// JSON form `{"var": "t" | "sqrt_t", "coeffs": [...]}`; coefficients that do
/// not fit in 64 bits are written as decimal strings.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PolyJson {
    pub var: String,
    pub coeffs: Vec<serde_json::Value>,
}

fn int_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

fn int_from_json(v: &serde_json::Value) -> Result<BigInt, PolyError> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| PolyError::Parse(n.to_string())),
        serde_json::Value::String(s) => s.parse().map_err(|_| PolyError::Parse(s.clone())),
        other => Err(PolyError::Parse(other.to_string())),
    }
}

impl TPoly {
    pub fn to_json(&self) -> PolyJson {
        match self.t_coeffs() {
            Some(tc) => PolyJson {
                var: "t".into(),
                coeffs: tc.iter().map(int_to_json).collect(),
            },
            None => PolyJson {
                var: "sqrt_t".into(),
                coeffs: self.coeffs.iter().map(int_to_json).collect(),
            },
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<TPoly, PolyError> {
        let coeffs = j
            .coeffs
            .iter()
            .map(int_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        match j.var.as_str() {
            "t" => Ok(TPoly::from_t_coeffs(&coeffs)),
            "sqrt_t" => Ok(TPoly::from_s_coeffs(coeffs)),
            other => Err(PolyError::Parse(format!("unknown variable {other:?}"))),
        }
    }
}

impl Serialize for TPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for TPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = PolyJson::deserialize(d)?;
        TPoly::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// Element of the fraction field of `Z[s]`, kept in lowest terms with a
/// denominator of positive leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: TPoly,
    den: TPoly,
}

impl RatFun {
    pub fn new(num: TPoly, den: TPoly) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: TPoly, den: TPoly) -> Self {
        if num.is_zero() {
            return RatFun {
                num,
                den: TPoly::one(),
            };
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.exact_divide(&g).expect("gcd divides numerator"),
                    den.exact_divide(&g).expect("gcd divides denominator"),
                )
            }
        };
        if den.leading().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        RatFun { num, den }
    }

    pub fn zero() -> Self {
        TPoly::zero().into()
    }

    pub fn one() -> Self {
        TPoly::one().into()
    }

    pub fn num(&self) -> &TPoly {
        &self.num
    }

    pub fn den(&self) -> &TPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0) && self.den.leading().is_some_and(One::is_one)
    }

    pub fn invert(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, rhs: &RatFun) -> Result<Self, PolyError> {
        Ok(self * &rhs.invert()?)
    }

    pub fn to_poly(&self) -> Result<TPoly, PolyError> {
        self.num
            .exact_divide(&self.den)
            .map_err(|_| PolyError::NotPolynomial(self.to_string()))
    }

    pub fn mul_poly(&self, p: &TPoly) -> Self {
        Self::normalized(&self.num * p, self.den.clone())
    }

    pub fn div_poly(&self, p: &TPoly) -> Result<Self, PolyError> {
        if p.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        Ok(Self::normalized(self.num.clone(), &self.den * p))
    }

    pub fn flip_half(&self) -> Self {
        Self::normalized(self.num.flip_half(), self.den.flip_half())
    }

    /// True when numerator and denominator both lie in `Z[t]`.
    pub fn is_even(&self) -> bool {
        self.num.is_even() && self.den.is_even()
    }
}

impl From<TPoly> for RatFun {
    fn from(p: TPoly) -> Self {
        RatFun {
            num: p,
            den: TPoly::one(),
        }
    }
}

impl From<i64> for RatFun {
    fn from(c: i64) -> Self {
        TPoly::constant(c).into()
    }
}

impl Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::normalized(&self.num + &rhs.num, self.den.clone());
        }
        RatFun::normalized(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul<&RatFun> for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        RatFun::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

forward_binop!(RatFun, Add, add, AddAssign, add_assign);
forward_binop!(RatFun, Sub, sub, SubAssign, sub_assign);
forward_binop!(RatFun, Mul, mul, MulAssign, mul_assign);

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl std::iter::Sum for RatFun {
    fn sum<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for RatFun {
    fn product<I: Iterator<Item = RatFun>>(iter: I) -> RatFun {
        iter.fold(RatFun::one(), |a, b| a * b)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({self})")
    }
}

impl PartialOrd for TPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order by degree, then coefficients from the top; only used to make
/// collections of polynomials deterministic.
impl Ord for TPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}
