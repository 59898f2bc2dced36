//! Exact arithmetic in cyclotomic fields Q(ζ_M).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(M)−1} modulo the
//! cyclotomic polynomial Φ_M, as integer numerators over one positive common
//! denominator. The representation is unique for a given order, so equality
//! and hashing-free comparisons are coefficient-wise. Operations on elements
//! of different orders lift both operands to the lcm of the orders first.

mod embed;
mod field;
mod predicates;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use embed::{ComplexInterval, DyadicInterval, MAX_SIGN_BITS};
pub use field::{cyclotomic_polynomial, euler_phi};
pub use predicates::{incircle, orientation};

use field::tables;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate triangle: the three points are collinear")]
    DegenerateTriangle,
    #[error("field order must be at least 1")]
    ZeroOrder,
    #[error("order {order} needs {expected} coefficients, got {found}")]
    CoefficientCount { order: u32, expected: usize, found: usize },
    #[error("malformed rational coefficient {0:?}")]
    BadCoefficient(String),
}

/// An element of Q(ζ_M).
#[derive(Clone, Serialize, Deserialize)]
#[serde(try_from = "RawCyclo", into = "RawCyclo")]
pub struct CycloNum {
    order: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloNum {
    fn from_parts(order: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        if num.iter().all(Zero::is_zero) {
            return CycloNum { order, num, den: BigInt::one() };
        }
        if !den.is_one() {
            let mut g = den.clone();
            for c in &num {
                if g.is_one() {
                    break;
                }
                if !c.is_zero() {
                    g = g.gcd(c);
                }
            }
            if !g.is_one() {
                for c in num.iter_mut() {
                    *c = &*c / &g;
                }
                den /= g;
            }
        }
        CycloNum { order, num, den }
    }

    pub fn zero(order: u32) -> Self {
        assert!(order >= 1, "field order must be positive");
        CycloNum { order, num: vec![BigInt::zero(); euler_phi(order)], den: BigInt::one() }
    }

    pub fn one(order: u32) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u32, n: i64) -> Self {
        let mut z = Self::zero(order);
        z.num[0] = BigInt::from(n);
        z
    }

    pub fn from_rational(order: u32, r: &BigRational) -> Self {
        let mut num = vec![BigInt::zero(); euler_phi(order)];
        num[0] = r.numer().clone();
        Self::from_parts(order, num, r.denom().clone())
    }

    /// Builds an element from its power-basis coordinates.
    pub fn from_coeffs(order: u32, coeffs: &[BigRational]) -> Result<Self, CycloError> {
        if order == 0 {
            return Err(CycloError::ZeroOrder);
        }
        let expected = euler_phi(order);
        if coeffs.len() != expected {
            return Err(CycloError::CoefficientCount { order, expected, found: coeffs.len() });
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(Self::from_parts(order, num, den))
    }

    /// ζ_M^j with j taken modulo M.
    pub fn root_of_unity(order: u32, j: i64) -> Self {
        assert!(order >= 1, "field order must be positive");
        let e = j.rem_euclid(order as i64) as usize;
        let t = tables(order);
        let mut num = vec![BigInt::zero(); t.degree];
        for &(i, c) in &t.powers[e] {
            num[i] = BigInt::from(c);
        }
        CycloNum { order, num, den: BigInt::one() }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of power-basis coordinates, φ(M).
    pub fn degree(&self) -> usize {
        self.num.len()
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|n| BigRational::new(n.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// True when the element is a rational number (only the constant coordinate is set).
    pub fn is_rational(&self) -> bool {
        self.num.iter().skip(1).all(Zero::is_zero)
    }

    /// Re-expresses the element in Q(ζ_order).
    ///
    /// # Panics
    /// If `order` is not a multiple of the current order.
    pub fn lift(&self, order: u32) -> Self {
        if order == self.order {
            return self.clone();
        }
        assert!(
            order % self.order == 0,
            "cannot lift from order {} to order {}",
            self.order,
            order
        );
        let step = (order / self.order) as usize;
        self.map_exponents(order, |j| j * step)
    }

    fn map_exponents(&self, order: u32, f: impl Fn(usize) -> usize) -> Self {
        let t = tables(order);
        let mut num = vec![BigInt::zero(); t.degree];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in &t.powers[f(j) % order as usize] {
                num[i] += c * p;
            }
        }
        Self::from_parts(order, num, self.den.clone())
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let m = self.order as usize;
        self.map_exponents(self.order, |j| (m - j % m) % m)
    }

    /// |a|² as an element of the same field.
    pub fn norm_squared(&self) -> Self {
        self * &self.conj()
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        Self::from_parts(self.order, num, &self.den * r.denom())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn inverse(&self) -> Result<Self, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if self.is_rational() {
            let r = BigRational::new(self.num[0].clone(), self.den.clone()).recip();
            return Ok(Self::from_rational(self.order, &r));
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect();
        let a = trim(self.coeffs());
        let inv = poly_inverse_mod(a, modulus);
        let mut coeffs = inv;
        coeffs.resize(self.degree(), BigRational::zero());
        Ok(Self::from_coeffs(self.order, &coeffs).expect("inverse has the field degree"))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, CycloError> {
        let inv = other.inverse()?;
        Ok(self * &inv)
    }

    /// A total order on representations, used for canonical serialization.
    /// Both operands are lifted to a common order first.
    pub fn cmp_repr(&self, other: &Self) -> Ordering {
        if self.order != other.order {
            let m = field::lcm(self.order, other.order);
            return self.lift(m).cmp_repr(&other.lift(m));
        }
        for (a, b) in self.num.iter().zip(&other.num) {
            let ord = (a * &other.den).cmp(&(b * &self.den));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        Ordering::Equal
    }

    pub fn sign_real(&self) -> Ordering {
        predicates::sign_real(self)
    }

    pub fn sign_imag(&self) -> Ordering {
        predicates::sign_imag(self)
    }

    pub(crate) fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub(crate) fn denominator(&self) -> &BigInt {
        &self.den
    }
}

fn common_pair(a: &CycloNum, b: &CycloNum) -> (CycloNum, CycloNum) {
    let m = field::lcm(a.order, b.order);
    (a.lift(m), b.lift(m))
}

fn add_same(a: &CycloNum, b: &CycloNum, negate: bool) -> CycloNum {
    let sign = |x: BigInt| if negate { -x } else { x };
    if a.den == b.den {
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x + sign(y.clone())).collect();
        return CycloNum::from_parts(a.order, num, a.den.clone());
    }
    let num = a
        .num
        .iter()
        .zip(&b.num)
        .map(|(x, y)| x * &b.den + sign(y * &a.den))
        .collect();
    CycloNum::from_parts(a.order, num, &a.den * &b.den)
}

fn mul_same(a: &CycloNum, b: &CycloNum) -> CycloNum {
    let t = tables(a.order);
    let d = t.degree;
    let mut prod = vec![BigInt::zero(); 2 * d - 1];
    for (i, x) in a.num.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.num.iter().enumerate() {
            if !y.is_zero() {
                prod[i + j] += x * y;
            }
        }
    }
    let high = prod.split_off(d);
    let m = a.order as usize;
    for (k, c) in high.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for &(i, p) in &t.powers[(d + k) % m] {
            prod[i] += &c * p;
        }
    }
    CycloNum::from_parts(a.order, prod, &a.den * &b.den)
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let lead = b.last().expect("nonzero divisor").clone();
    let mut q = vec![BigRational::zero(); a.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let c = &rem[i + b.len() - 1] / &lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    rem.truncate(b.len() - 1);
    if rem.is_empty() {
        rem.push(BigRational::zero());
    }
    (q, trim(rem))
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(out)
}

/// Extended Euclid over Q[t]; `a` is nonzero and coprime to the irreducible modulus.
fn poly_inverse_mod(a: Vec<BigRational>, modulus: Vec<BigRational>) -> Vec<BigRational> {
    let (mut r0, mut r1) = (modulus, a);
    let (mut s0, mut s1) = (vec![BigRational::zero()], vec![BigRational::one()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    debug_assert_eq!(r0.len(), 1, "element shares a factor with an irreducible modulus");
    let c = r0[0].clone();
    s0.into_iter().map(|x| x / &c).collect()
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.den == other.den && self.num == other.num;
        }
        let (a, b) = common_pair(self, other);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycloNum {}

macro_rules! binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                let f: fn(&CycloNum, &CycloNum) -> CycloNum = $body;
                if self.order == rhs.order {
                    f(self, rhs)
                } else {
                    let (a, b) = common_pair(self, rhs);
                    f(&a, &b)
                }
            }
        }
        impl $trait<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a, b| add_same(a, b, false));
binop!(Sub, sub, |a, b| add_same(a, b, true));
binop!(Mul, mul, mul_same);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum { order: self.order, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

impl fmt::Display for CycloNum {
    /// Writes the element as a polynomial in `zM`, e.g. `1/2 - 3*z7^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let z = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, i),
            };
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => f.write_str(&z)?,
                (_, false) => write!(f, "{mag}*{z}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum[{}]({})", self.order, self)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCyclo {
    order: u32,
    coeffs: Vec<String>,
}

impl From<CycloNum> for RawCyclo {
    fn from(a: CycloNum) -> Self {
        RawCyclo { order: a.order, coeffs: a.coeffs().iter().map(ToString::to_string).collect() }
    }
}

impl TryFrom<RawCyclo> for CycloNum {
    type Error = CycloError;
    fn try_from(raw: RawCyclo) -> Result<Self, CycloError> {
        let coeffs = raw
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<BigRational>().map_err(|_| CycloError::BadCoefficient(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        CycloNum::from_coeffs(raw.order, &coeffs)
    }
}
