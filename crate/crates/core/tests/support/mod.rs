//! Shared machinery for the property suites: a 256-bit numeric oracle for
//! the sign predicates, random presentations of a surface and random
//! regluings of parallel edges.
#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::HashMap;

use astro_float::{BigFloat, Consts, RoundingMode};
use flatspin_core::{
    build_family, half_spingon, incircle, make_surface, orientation, spingon, CanonicalDecomposition, CycloNum,
    EdgeRef, Family, FamilySpec, Gluing, Polygon, TranslationSurface,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

/// Working precision of the oracle.
pub const ORACLE_BITS: usize = 256;
/// Numeric values closer to zero than 2^-ZERO_BITS are not compared.
pub const ZERO_BITS: i32 = 100;
/// A value the library calls exactly zero must evaluate below 2^-EXACT_ZERO_BITS.
pub const EXACT_ZERO_BITS: i32 = 200;

const RM: RoundingMode = RoundingMode::ToEven;

/// Σ c_j ζ_M^j kept as raw terms, so the oracle never sees the library's basis.
#[derive(Debug, Clone)]
pub struct Terms {
    pub order: u32,
    pub terms: Vec<(BigRational, i64)>,
}

impl Terms {
    pub fn to_cyclo(&self) -> CycloNum {
        self.terms.iter().fold(CycloNum::zero(self.order), |acc, (c, j)| {
            acc + CycloNum::root_of_unity(self.order, *j).scale(c)
        })
    }

    pub fn conj(&self) -> Terms {
        Terms { order: self.order, terms: self.terms.iter().map(|(c, j)| (c.clone(), -j)).collect() }
    }

    pub fn scale(&self, r: &BigRational) -> Terms {
        Terms { order: self.order, terms: self.terms.iter().map(|(c, j)| (c * r, *j)).collect() }
    }

    pub fn plus(&self, other: &Terms) -> Terms {
        assert_eq!(self.order, other.order);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Terms { order: self.order, terms }
    }

    pub fn minus(&self, other: &Terms) -> Terms {
        self.plus(&other.scale(&BigRational::from_integer((-1).into())))
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_terms<R: Rng>(rng: &mut R, order: u32) -> Terms {
    let n = rng.gen_range(1..=6);
    let terms = (0..n)
        .map(|_| (rational(rng.gen_range(-6..=6), rng.gen_range(1..=4)), rng.gen_range(0..order as i64)))
        .collect();
    Terms { order, terms }
}

/// High-precision complex evaluation with cached roots of unity.
pub struct Oracle {
    consts: Consts,
    roots: HashMap<u32, Vec<(BigFloat, BigFloat)>>,
}

#[derive(Debug, Clone)]
pub struct Complex {
    pub re: BigFloat,
    pub im: BigFloat,
}

fn bf(x: i64) -> BigFloat {
    BigFloat::from_i64(x, ORACLE_BITS)
}

fn mul(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.mul(b, ORACLE_BITS, RM)
}

fn add(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.add(b, ORACLE_BITS, RM)
}

fn sub(a: &BigFloat, b: &BigFloat) -> BigFloat {
    a.sub(b, ORACLE_BITS, RM)
}

impl Complex {
    pub fn sub(&self, other: &Complex) -> Complex {
        Complex { re: sub(&self.re, &other.re), im: sub(&self.im, &other.im) }
    }
}

/// Sign of `x`, or None when |x| ≤ 2^-bits.
pub fn sign_beyond(x: &BigFloat, bits: i32) -> Option<Ordering> {
    let threshold = BigFloat::from_f64(2f64.powi(-bits), ORACLE_BITS);
    if x.is_negative() {
        (sub(&bf(0), x) > threshold).then_some(Ordering::Less)
    } else {
        (*x > threshold).then_some(Ordering::Greater)
    }
}

fn big_to_float(n: &BigInt) -> BigFloat {
    // Exact for the small values that show up here; larger ones go through digits.
    let digits = n.to_u64_digits();
    let mut out = bf(0);
    let base = BigFloat::from_f64(2f64.powi(64), ORACLE_BITS);
    for d in digits.1.iter().rev() {
        out = add(&mul(&out, &base), &BigFloat::from_u64(*d, ORACLE_BITS));
    }
    if digits.0 == num_bigint::Sign::Minus {
        out = sub(&bf(0), &out);
    }
    out
}

pub fn rational_to_float(r: &BigRational) -> BigFloat {
    big_to_float(r.numer()).div(&big_to_float(r.denom()), ORACLE_BITS, RM)
}

/// The dyadic number v / 2^scale.
pub fn dyadic_to_float(v: &BigInt, scale: u32) -> BigFloat {
    let mut x = big_to_float(v);
    let step = BigFloat::from_f64(2f64.powi(-32), ORACLE_BITS);
    let mut s = scale;
    while s >= 32 {
        x = mul(&x, &step);
        s -= 32;
    }
    mul(&x, &BigFloat::from_f64(2f64.powi(-(s as i32)), ORACLE_BITS))
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { consts: Consts::new().expect("constant cache"), roots: HashMap::new() }
    }
}

impl Oracle {
    fn roots(&mut self, order: u32) -> &[(BigFloat, BigFloat)] {
        let consts = &mut self.consts;
        self.roots.entry(order).or_insert_with(|| {
            let tau = mul(&consts.pi(ORACLE_BITS + 64, RM), &bf(2));
            (0..order)
                .map(|j| {
                    let angle = mul(&tau, &bf(j as i64)).div(&bf(order as i64), ORACLE_BITS + 64, RM);
                    let c = angle.cos(ORACLE_BITS, RM, consts);
                    let s = angle.sin(ORACLE_BITS, RM, consts);
                    (c, s)
                })
                .collect()
        })
    }

    pub fn eval(&mut self, t: &Terms) -> Complex {
        let order = t.order;
        let roots = self.roots(order).to_vec();
        let mut re = bf(0);
        let mut im = bf(0);
        for (c, j) in &t.terms {
            let (cos, sin) = &roots[j.rem_euclid(order as i64) as usize];
            let c = rational_to_float(c);
            re = add(&re, &mul(&c, cos));
            im = add(&im, &mul(&c, sin));
        }
        Complex { re, im }
    }
}

/// Numeric orientation: sign of Im(conj(q − p)(r − p)).
pub fn oracle_orientation(p: &Complex, q: &Complex, r: &Complex) -> BigFloat {
    let (u, v) = (q.sub(p), r.sub(p));
    sub(&mul(&u.re, &v.im), &mul(&u.im, &v.re))
}

/// Numeric in-circle determinant, positive for d inside a counterclockwise a, b, c.
pub fn oracle_incircle(a: &Complex, b: &Complex, c: &Complex, d: &Complex) -> BigFloat {
    let (x, y, z) = (a.sub(d), b.sub(d), c.sub(d));
    let lift = |w: &Complex| add(&mul(&w.re, &w.re), &mul(&w.im, &w.im));
    let cross = |u: &Complex, v: &Complex| sub(&mul(&u.re, &v.im), &mul(&u.im, &v.re));
    add(
        &add(&mul(&lift(&x), &cross(&y, &z)), &mul(&lift(&y), &cross(&z, &x))),
        &mul(&lift(&z), &cross(&x, &y)),
    )
}

/// Outcome of comparing exact signs against the oracle.
#[derive(Debug, Default, Clone, Copy)]
pub struct SignTally {
    /// Comparisons made with the numeric value away from zero.
    pub compared: usize,
    /// Exact zeros confirmed numerically.
    pub zeros: usize,
    /// Values too close to zero to compare and not exactly zero.
    pub skipped: usize,
    pub mismatches: usize,
}

impl SignTally {
    pub fn record(&mut self, exact: Ordering, numeric: &BigFloat) {
        match (exact, sign_beyond(numeric, ZERO_BITS)) {
            (Ordering::Equal, _) => {
                if sign_beyond(numeric, EXACT_ZERO_BITS).is_none() {
                    self.zeros += 1;
                } else {
                    self.mismatches += 1;
                }
            }
            (_, None) => self.skipped += 1,
            (e, Some(n)) => {
                self.compared += 1;
                if e != n {
                    self.mismatches += 1;
                }
            }
        }
    }

    pub fn total(&self) -> usize {
        self.compared + self.zeros + self.skipped
    }
}

/// A random element; a fifth of them are forced real and a fifth imaginary.
pub fn random_element<R: Rng>(rng: &mut R) -> Terms {
    let order = rng.gen_range(1..=24);
    let t = random_terms(rng, order);
    match rng.gen_range(0..5) {
        0 => t.plus(&t.conj()),
        1 => t.minus(&t.conj()),
        _ => t,
    }
}

/// Signs of the real and imaginary parts of `count` random elements.
pub fn check_element_signs<R: Rng>(rng: &mut R, oracle: &mut Oracle, count: usize) -> SignTally {
    let mut tally = SignTally::default();
    for _ in 0..count {
        let t = random_element(rng);
        let a = t.to_cyclo();
        let z = oracle.eval(&t);
        tally.record(a.sign_real(), &z.re);
        tally.record(a.sign_imag(), &z.im);
    }
    tally
}

/// Orientation of random triples, a third of them collinear by construction.
pub fn check_orientations<R: Rng>(rng: &mut R, oracle: &mut Oracle, count: usize) -> SignTally {
    let mut tally = SignTally::default();
    for _ in 0..count {
        let order = rng.gen_range(1..=24);
        let p = random_terms(rng, order);
        let q = random_terms(rng, order);
        let r = if rng.gen_range(0..3) == 0 {
            let t = rational(rng.gen_range(-5..=5), rng.gen_range(1..=3));
            p.plus(&q.minus(&p).scale(&t))
        } else {
            random_terms(rng, order)
        };
        let exact = orientation(&p.to_cyclo(), &q.to_cyclo(), &r.to_cyclo());
        let numeric = oracle_orientation(&oracle.eval(&p), &oracle.eval(&q), &oracle.eval(&r));
        tally.record(exact, &numeric);
    }
    tally
}

/// In-circle tests, half of them on four points of one circle. Also checks
/// that the answer survives a cyclic shift of the triangle.
pub fn check_incircles<R: Rng>(rng: &mut R, oracle: &mut Oracle, count: usize) -> (SignTally, usize) {
    let mut tally = SignTally::default();
    let mut shift_failures = 0;
    let mut done = 0;
    while done < count {
        let order = rng.gen_range(4..=24);
        let pts: Vec<Terms> = if rng.gen_bool(0.5) {
            let centre = random_terms(rng, order);
            let radius = rational(rng.gen_range(1..=5), rng.gen_range(1..=3));
            let mut js: Vec<i64> = (0..order as i64).collect();
            js.shuffle(rng);
            js[..4]
                .iter()
                .map(|&j| centre.plus(&Terms { order, terms: vec![(radius.clone(), j)] }))
                .collect()
        } else {
            (0..4).map(|_| random_terms(rng, order)).collect()
        };
        let c: Vec<CycloNum> = pts.iter().map(Terms::to_cyclo).collect();
        let Ok(exact) = incircle(&c[0], &c[1], &c[2], &c[3]) else { continue };
        done += 1;
        if incircle(&c[1], &c[2], &c[0], &c[3]) != Ok(exact) {
            shift_failures += 1;
        }
        let z: Vec<Complex> = pts.iter().map(|t| oracle.eval(t)).collect();
        let turn = oracle_orientation(&z[0], &z[1], &z[2]);
        let mut det = oracle_incircle(&z[0], &z[1], &z[2], &z[3]);
        if turn.is_negative() {
            det = sub(&bf(0), &det);
        }
        tally.record(exact, &det);
    }
    (tally, shift_failures)
}

/// Every surface the constructors produce for genus 2..=max_genus.
pub fn family_surfaces(max_genus: u32) -> Vec<(String, TranslationSurface)> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for g in 2..=max_genus {
            for spec in FamilySpec::all_k(family, g) {
                out.push((spec.to_string(), build_family(spec).unwrap()));
            }
        }
    }
    out
}

/// The genus 2 and 3 surfaces of the family tables.
pub fn gallery() -> Vec<(String, TranslationSurface)> {
    let mut out = Vec::new();
    for (n, ks) in [(5, 1..=2), (6, 1..=2), (7, 1..=3), (8, 1..=3)] {
        for k in ks {
            out.push((format!("S^{k}_{n}"), spingon(n, k).unwrap()));
        }
    }
    for (n, ks) in [(4, 1..=2), (6, 1..=3)] {
        for k in ks {
            out.push((format!("H^{k}_{n}"), half_spingon(n, k).unwrap()));
        }
    }
    out
}

/// The same surface with polygons shuffled, translated and cyclically
/// re-indexed; when `cut` is set, some polygons are also fan-triangulated.
pub fn random_presentation<R: Rng>(s: &TranslationSurface, rng: &mut R, cut: bool) -> TranslationSurface {
    let order = s.field_order();
    let mut pieces: Vec<Vec<CycloNum>> = Vec::new();
    // Old edge (p, e) becomes edge `new_edge[p][e]` of the new presentation.
    let mut new_edge: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut diagonals: Vec<((usize, usize), (usize, usize))> = Vec::new();
    for poly in s.polygons() {
        let n = poly.len();
        let r = rng.gen_range(0..n);
        let shift = CycloNum::from_integer(order, rng.gen_range(-3..=3))
            + CycloNum::root_of_unity(order, 1).scale(&rational(rng.gen_range(-3..=3), 1));
        let w: Vec<CycloNum> = (0..n).map(|i| poly.vertex((i + r) % n) + &shift).collect();
        let mut map = vec![(0, 0); n];
        if cut && n > 3 && rng.gen_bool(0.5) {
            let first = pieces.len();
            for i in 1..n - 1 {
                pieces.push(vec![w[0].clone(), w[i].clone(), w[i + 1].clone()]);
            }
            for i in 1..n - 1 {
                let t = first + i - 1;
                map[(i + r) % n] = (t, 1);
                if i > 1 {
                    diagonals.push(((t - 1, 2), (t, 0)));
                }
            }
            map[r] = (first, 0);
            map[(n - 1 + r) % n] = (first + n - 3, 2);
        } else {
            for (i, slot) in map.iter_mut().enumerate() {
                *slot = (pieces.len(), (i + n - r) % n);
            }
            pieces.push(w);
        }
        new_edge.push(map);
    }
    let mut perm: Vec<usize> = (0..pieces.len()).collect();
    perm.shuffle(rng);
    let mut polygons = vec![Vec::new(); pieces.len()];
    for (old, piece) in pieces.into_iter().enumerate() {
        polygons[perm[old]] = piece;
    }
    let relabel = |(p, e): (usize, usize)| EdgeRef::new(perm[p], e);
    let mut gluings: Vec<Gluing> = s
        .gluings()
        .iter()
        .map(|g| {
            Gluing::new(
                relabel(new_edge[g.first.polygon][g.first.edge]),
                relabel(new_edge[g.second.polygon][g.second.edge]),
            )
        })
        .chain(diagonals.into_iter().map(|(a, b)| Gluing::new(relabel(a), relabel(b))))
        .collect();
    gluings.shuffle(rng);
    make_surface(polygons.into_iter().map(Polygon::new).collect(), gluings).expect("presentation is valid")
}

/// Re-pairs edges carrying equal vectors at random; None when the result
/// falls apart into several pieces.
pub fn random_regluing<R: Rng>(s: &TranslationSurface, rng: &mut R) -> Option<TranslationSurface> {
    let mut classes: Vec<(CycloNum, Vec<EdgeRef>, Vec<EdgeRef>)> = Vec::new();
    for g in s.gluings() {
        let v = s.edge_vector(g.first);
        if let Some(class) = classes.iter_mut().find(|c| c.0 == v) {
            class.1.push(g.first);
            class.2.push(g.second);
        } else if let Some(class) = classes.iter_mut().find(|c| c.0 == -v.clone()) {
            class.1.push(g.second);
            class.2.push(g.first);
        } else {
            classes.push((v, vec![g.first], vec![g.second]));
        }
    }
    let mut gluings = Vec::new();
    for (_, firsts, mut seconds) in classes {
        seconds.shuffle(rng);
        gluings.extend(firsts.into_iter().zip(seconds).map(|(a, b)| Gluing::new(a, b)));
    }
    make_surface(s.polygons().to_vec(), gluings).ok()
}

/// Σ(m − 1) over cone points against 2g − 2 from V − E + F.
pub fn gauss_bonnet_holds(s: &TranslationSurface) -> bool {
    let orders: i64 = s.cone_points().iter().map(|c| c.angle_multiple as i64 - 1).sum();
    orders == -s.euler_characteristic()
}

/// Canonical serialization over `count` random presentations, plus the
/// decomposition of the decomposition.
pub fn canonical_is_stable<R: Rng>(s: &TranslationSurface, rng: &mut R, count: usize) -> Result<(), String> {
    let reference = CanonicalDecomposition::of(s).serialization();
    let again = CanonicalDecomposition::of(&CanonicalDecomposition::of(s).to_surface()).serialization();
    if again != reference {
        return Err("not idempotent".into());
    }
    for i in 0..count {
        let p = random_presentation(s, rng, true);
        if CanonicalDecomposition::of(&p).serialization() != reference {
            return Err(format!("presentation {i} differs"));
        }
    }
    Ok(())
}
