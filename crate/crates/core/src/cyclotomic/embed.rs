//! Certified complex embedding ζ_M ↦ exp(2πi/M) with fixed-point big integers.
//!
//! Trigonometric tables are computed at a working precision `w` (bits after
//! the binary point) with every entry within 2 ulps of the true value. Tables
//! are cached per thread, keyed by order and precision.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CycloNum;

/// Largest working precision tried before a sign computation gives up.
pub const MAX_SIGN_BITS: u32 = 16384;

/// Error bound, in ulps, of every cached cosine and sine.
const TRIG_ULPS: u32 = 2;
const GUARD: u32 = 32;

type TrigTable = Vec<(BigInt, BigInt)>;

thread_local! {
    static TRIG: RefCell<HashMap<(u32, u32), Rc<TrigTable>>> = RefCell::new(HashMap::new());
}

/// The closed interval [lo, hi] · 2^{-scale}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub scale: u32,
}

impl DyadicInterval {
    fn to_rational(v: &BigInt, scale: u32) -> BigRational {
        BigRational::new(v.clone(), BigInt::one() << scale)
    }

    pub fn lower(&self) -> BigRational {
        Self::to_rational(&self.lo, self.scale)
    }

    pub fn upper(&self) -> BigRational {
        Self::to_rational(&self.hi, self.scale)
    }

    pub fn width(&self) -> BigRational {
        Self::to_rational(&(&self.hi - &self.lo), self.scale)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lower() <= x && x <= &self.upper()
    }

    pub fn is_subset_of(&self, other: &DyadicInterval) -> bool {
        other.lower() <= self.lower() && self.upper() <= other.upper()
    }

    pub fn midpoint_f64(&self) -> f64 {
        let mid = Self::to_rational(&(&self.lo + &self.hi), self.scale + 1);
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

/// Rectangle containing an embedded cyclotomic number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: DyadicInterval,
    pub im: DyadicInterval,
}

impl ComplexInterval {
    pub fn is_subset_of(&self, other: &ComplexInterval) -> bool {
        self.re.is_subset_of(&other.re) && self.im.is_subset_of(&other.im)
    }

    pub fn midpoint(&self) -> (f64, f64) {
        (self.re.midpoint_f64(), self.im.midpoint_f64())
    }
}

fn atan_inv(x: u64, prec: u32) -> BigInt {
    let x2 = BigInt::from(x * x);
    let mut power = (BigInt::one() << prec) / x;
    let mut sum = power.clone();
    let mut n: u64 = 1;
    loop {
        power /= &x2;
        let term = &power / (2 * n + 1);
        if term.is_zero() {
            break;
        }
        if n % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
        n += 1;
    }
    sum
}

/// π · 2^prec to within 2 ulps (Machin's formula).
fn pi_fixed(prec: u32) -> BigInt {
    let p = prec + GUARD;
    let pi = atan_inv(5, p) * 16 - atan_inv(239, p) * 4;
    pi >> GUARD
}

/// cos and sin of 2πj/M at precision `w`, each within TRIG_ULPS ulps.
fn trig_pair(j: u32, order: u32, pi: &BigInt, w: u32) -> (BigInt, BigInt) {
    // Reduce to the nearest quarter turn so that the Taylor argument is at most π/4.
    let m = order as i64;
    let j = (j as i64).rem_euclid(m);
    let quarter = (8 * j + m).div_euclid(2 * m);
    let delta = 4 * j - quarter * m; // angle = 2π · delta / (4M), |delta| ≤ M/2
    let x: BigInt = pi * delta / (2 * m);
    let one = BigInt::one() << w;
    let (mut c, mut s) = (one.clone(), BigInt::zero());
    let mut term = one;
    let mut k: u64 = 1;
    loop {
        term = (&term * &x >> w) / k;
        if term.is_zero() {
            break;
        }
        match k % 4 {
            1 => s += &term,
            2 => c -= &term,
            3 => s -= &term,
            _ => c += &term,
        }
        k += 1;
    }
    match quarter.rem_euclid(4) {
        0 => (c, s),
        1 => (-s, c),
        2 => (-c, -s),
        _ => (s, -c),
    }
}

fn trig_table(order: u32, w: u32) -> Rc<TrigTable> {
    if let Some(t) = TRIG.with(|m| m.borrow().get(&(order, w)).cloned()) {
        return t;
    }
    let inner = w + GUARD;
    let pi = pi_fixed(inner);
    let table: TrigTable = (0..order)
        .map(|j| {
            let (c, s) = trig_pair(j, order, &pi, inner);
            (c >> GUARD, s >> GUARD)
        })
        .collect();
    let t = Rc::new(table);
    TRIG.with(|m| m.borrow_mut().insert((order, w), t.clone()));
    t
}

fn round_up_64(bits: u32) -> u32 {
    bits.div_ceil(64) * 64
}

/// Σ_j num_j · (cos or sin)(2πj/M) / den at precision `w`, returned as
/// (value, error) in ulps: the true value lies in [value − error, value + error].
fn eval_part(a: &CycloNum, w: u32, imaginary: bool) -> (BigInt, BigInt) {
    let table = trig_table(a.order(), w);
    let mut acc = BigInt::zero();
    let mut abs_sum = BigInt::zero();
    for (j, c) in a.numerators().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let t = if imaginary { &table[j].1 } else { &table[j].0 };
        acc += c * t;
        abs_sum += c.abs();
    }
    let den = a.denominator();
    let value = acc / den;
    let error = (abs_sum * TRIG_ULPS + den - 1u32) / den + 1u32;
    (value, error)
}

/// Bit length of a bound on the per-part evaluation error in ulps.
fn error_bits(a: &CycloNum) -> u32 {
    let abs_sum: BigInt = a.numerators().iter().map(|c| c.abs()).sum();
    let bound = abs_sum * TRIG_ULPS / a.denominator() + 2u32;
    bound.bits() as u32
}

fn centered(value: BigInt, bits: u32, w: u32) -> DyadicInterval {
    let radius = BigInt::one() << (w - bits - 1);
    DyadicInterval { lo: &value - &radius, hi: value + radius, scale: w }
}

impl CycloNum {
    /// An interval of width 2^{-bits} around the embedded value.
    ///
    /// The center is computed to within a quarter of the radius, which makes
    /// intervals at increasing precision nested.
    pub fn embed(&self, bits: u32) -> ComplexInterval {
        let bits = bits.max(16);
        let w = round_up_64(bits + 3 + error_bits(self));
        let (re, _) = eval_part(self, w, false);
        let (im, _) = eval_part(self, w, true);
        ComplexInterval { re: centered(re, bits, w), im: centered(im, bits, w) }
    }

    /// Midpoint of the embedding as floating point, for display only.
    pub fn to_f64_pair(&self, bits: u32) -> (f64, f64) {
        self.embed(bits).midpoint()
    }
}

/// Sign of the real (or imaginary) part of an element known to have a
/// nonzero such part. Precision doubles from 64 bits up to MAX_SIGN_BITS.
pub(crate) fn refine_sign(a: &CycloNum, imaginary: bool) -> Ordering {
    let mut bits = 64;
    loop {
        let w = round_up_64(bits + error_bits(a));
        let (v, err) = eval_part(a, w, imaginary);
        if v > err {
            return Ordering::Greater;
        }
        if -&v > err {
            return Ordering::Less;
        }
        assert!(
            bits < MAX_SIGN_BITS,
            "sign of a nonzero cyclotomic number unresolved at {MAX_SIGN_BITS} bits: {a:?}"
        );
        bits *= 2;
    }
}
