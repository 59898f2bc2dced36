//! Exact constructions: spingons, half-spingons, regular and double n-gons,
//! and unfoldings of right triangles.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::CycloNum;
use crate::surface::{make_surface, EdgeRef, Gluing, Polygon, SurfaceError, TranslationSurface};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("k = {k} violates {rule} for N = {n}")]
    InvalidK { n: u32, k: u32, rule: &'static str },
    #[error("n = {0} must be even")]
    OddN(u32),
    #[error("n = {n} is too small (need n >= {min})")]
    TooSmall { n: u32, min: u32 },
    #[error("angles π/2 + π{a}/{m} + π{b}/{m} do not sum to π (need 2(a+b) = M)")]
    AngleSumMismatch { a: u32, b: u32, m: u32 },
    #[error("genus {genus} and k = {k} violate 2 <= g and 1 <= k <= g")]
    InvalidFamily { genus: u32, k: u32 },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

fn z(m: u32, j: i64) -> CycloNum {
    CycloNum::root_of_unity(m, j)
}

fn glue(p: usize, e: usize, q: usize, f: usize) -> Gluing {
    Gluing::new(EdgeRef::new(p, e), EdgeRef::new(q, f))
}

fn rhombus(a: CycloNum, c: CycloNum) -> Polygon {
    let order = a.order();
    let b = &a + &c;
    Polygon::new(vec![CycloNum::zero(order), a, b, c])
}

/// The spingon S^k_N: N unit rhombi with angle 2πk/N at the common vertex O.
///
/// Rhombus i has vertices O = 0, A_i = ζ^{ik}, B_i = A_i + C_i, C_i = ζ^{(i+1)k}.
pub fn spingon(n: u32, k: u32) -> Result<TranslationSurface, BuildError> {
    if n < 2 {
        return Err(BuildError::TooSmall { n, min: 2 });
    }
    // 2k = N would make the rhombus flat.
    if k < 1 || 2 * k >= n + 1 || 2 * k == n {
        return Err(BuildError::InvalidK { n, k, rule: "1 <= k < N/2" });
    }
    let polygons = (0..n as i64)
        .map(|i| rhombus(z(n, i * k as i64), z(n, (i + 1) * k as i64)))
        .collect();
    let n = n as usize;
    let mut gluings = Vec::with_capacity(2 * n);
    for i in 0..n {
        let next = (i + 1) % n;
        gluings.push(glue(i, 3, next, 0));
        gluings.push(glue(i, 1, next, 2));
    }
    Ok(make_surface(polygons, gluings)?)
}

/// The half-spingon H^k_N: N rhombi with angle π(2k−1)/N at O, over Q(ζ_{2N}).
pub fn half_spingon(n: u32, k: u32) -> Result<TranslationSurface, BuildError> {
    if n < 2 {
        return Err(BuildError::TooSmall { n, min: 2 });
    }
    if k < 1 || 2 * k > n {
        return Err(BuildError::InvalidK { n, k, rule: "1 <= k <= N/2" });
    }
    let step = 2 * k as i64 - 1;
    let polygons = (0..n as i64)
        .map(|i| rhombus(z(2 * n, i * step), z(2 * n, (i + 1) * step)))
        .collect();
    let last = n as usize - 1;
    // The sides OA_0 and OC_{N-1} are opposite vectors, which closes the fan.
    let mut gluings = vec![glue(0, 0, last, 1), glue(0, 2, last, 3)];
    for i in 0..last {
        gluings.push(glue(i, 3, i + 1, 0));
        gluings.push(glue(i, 1, i + 1, 2));
    }
    Ok(make_surface(polygons, gluings)?)
}

/// A regular n-gon with opposite sides glued.
pub fn regular_ngon(n: u32) -> Result<TranslationSurface, BuildError> {
    if n % 2 == 1 {
        return Err(BuildError::OddN(n));
    }
    if n < 4 {
        return Err(BuildError::TooSmall { n, min: 4 });
    }
    let polygon = Polygon::new((0..n as i64).map(|j| z(n, j)).collect());
    let half = n as usize / 2;
    let gluings = (0..half).map(|j| glue(0, j, 0, j + half)).collect();
    Ok(make_surface(vec![polygon], gluings)?)
}

/// A regular n-gon and its rotation by π, each side glued to its image.
///
/// Even n is accepted too: the two copies then coincide as point sets, and the
/// result is the usual double (2g+2)-gon.
pub fn double_ngon(n: u32) -> Result<TranslationSurface, BuildError> {
    if n < 3 {
        return Err(BuildError::TooSmall { n, min: 3 });
    }
    let p: Vec<CycloNum> = (0..n as i64).map(|j| z(n, j)).collect();
    let q: Vec<CycloNum> = p.iter().map(|v| -v).collect();
    let gluings = (0..n as usize).map(|j| glue(0, j, 1, j)).collect();
    Ok(make_surface(vec![Polygon::new(p), Polygon::new(q)], gluings)?)
}

/// Linear part z ↦ rot·z, or z ↦ rot·conj(z) when `reflected`.
#[derive(Clone, PartialEq, Eq)]
struct LinearPart {
    rot: CycloNum,
    reflected: bool,
}

impl LinearPart {
    fn apply(&self, p: &CycloNum) -> CycloNum {
        if self.reflected {
            &self.rot * &p.conj()
        } else {
            &self.rot * p
        }
    }

    /// self ∘ (z ↦ r·conj(z))
    fn then_reflect(&self, r: &CycloNum) -> LinearPart {
        if self.reflected {
            LinearPart { rot: &self.rot * &r.conj(), reflected: false }
        } else {
            LinearPart { rot: &self.rot * r, reflected: true }
        }
    }
}

/// Katok–Zemlyakov unfolding of the right triangle with angle πa/M at 0 and
/// πb/M at 1.
///
/// The triangle is 0, 1, X with X = (1 + ζ_M^a)/2, so the right angle sits at X.
/// Copies are indexed by the distinct linear parts generated by the three
/// side reflections; side s of copy L is glued to side s of copy L∘r_s.
pub fn unfold_right_triangle(a: u32, b: u32, m: u32) -> Result<TranslationSurface, BuildError> {
    if a == 0 || b == 0 || 2 * (a + b) != m {
        return Err(BuildError::AngleSumMismatch { a, b, m });
    }
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let apex = (CycloNum::one(m) + z(m, a as i64)).scale(&half);
    let corners = [CycloNum::zero(m), CycloNum::one(m), apex];
    // Linear parts of the reflections in sides 0→1, 1→X and X→0.
    let mirrors = [CycloNum::one(m), -z(m, a as i64), z(m, a as i64)];

    let mut parts = vec![LinearPart { rot: CycloNum::one(m), reflected: false }];
    let mut neighbours: Vec<[usize; 3]> = Vec::new();
    let mut next = 0;
    while next < parts.len() {
        let mut row = [0; 3];
        for (s, mirror) in mirrors.iter().enumerate() {
            let image = parts[next].then_reflect(mirror);
            row[s] = match parts.iter().position(|p| *p == image) {
                Some(idx) => idx,
                None => {
                    parts.push(image);
                    parts.len() - 1
                }
            };
        }
        neighbours.push(row);
        next += 1;
    }

    let edge_of_side = |reflected: bool, s: usize| if reflected { 2 - s } else { s };
    let polygons = parts
        .iter()
        .map(|l| {
            let [p0, p1, px] = corners.clone().map(|c| l.apply(&c));
            Polygon::new(if l.reflected { vec![p0, px, p1] } else { vec![p0, p1, px] })
        })
        .collect();
    let mut gluings = Vec::new();
    for (c, row) in neighbours.iter().enumerate() {
        for (s, &d) in row.iter().enumerate() {
            if c < d {
                gluings.push(glue(c, edge_of_side(parts[c].reflected, s), d, edge_of_side(parts[d].reflected, s)));
            }
        }
    }
    Ok(make_surface(polygons, gluings)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Apolar,
    Polar,
    Dipolar,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Apolar, Family::Polar, Family::Dipolar];

    pub fn name(self) -> &'static str {
        match self {
            Family::Apolar => "apolar",
            Family::Polar => "polar",
            Family::Dipolar => "dipolar",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "apolar" => Ok(Family::Apolar),
            "polar" => Ok(Family::Polar),
            "dipolar" => Ok(Family::Dipolar),
            other => Err(format!("unknown family {other:?} (expected apolar, polar or dipolar)")),
        }
    }
}

/// One eigenform: a curve family, a genus and the index k of ω_k.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub genus: u32,
    pub k: u32,
}

impl FamilySpec {
    pub fn new(family: Family, genus: u32, k: u32) -> Result<Self, BuildError> {
        if genus < 2 || k < 1 || k > genus {
            return Err(BuildError::InvalidFamily { genus, k });
        }
        Ok(FamilySpec { family, genus, k })
    }

    /// Every admissible k for the given genus.
    pub fn all_k(family: Family, genus: u32) -> Vec<FamilySpec> {
        (1..=genus).map(|k| FamilySpec { family, genus, k }).collect()
    }

    /// Number of rhombi.
    pub fn rhombi(&self) -> u32 {
        match self.family {
            Family::Apolar => 2 * self.genus + 2,
            Family::Polar => 2 * self.genus + 1,
            Family::Dipolar => 2 * self.genus,
        }
    }

    /// Order of the rotational automorphism.
    pub fn automorphism_order(&self) -> u32 {
        match self.family {
            Family::Apolar => 2 * self.genus + 2,
            Family::Polar => 2 * self.genus + 1,
            Family::Dipolar => 4 * self.genus,
        }
    }

    /// Derivative of the rotational automorphism, which is its eigenvalue on ω_k.
    pub fn eigenvalue(&self) -> CycloNum {
        let (g, k) = (self.genus, self.k as i64);
        match self.family {
            Family::Apolar => z(2 * g + 2, k),
            Family::Polar => z(2 * g + 1, k),
            Family::Dipolar => z(4 * g, 2 * k - 1),
        }
    }

    /// Expected zero orders including order-0 marked points, sorted decreasing.
    pub fn expected_orders(&self) -> Vec<u32> {
        let (g, k) = (self.genus, self.k);
        let mut orders = match self.family {
            Family::Apolar => vec![k - 1, k - 1, g - k, g - k],
            Family::Polar => vec![k - 1, k - 1, 2 * g - 2 * k],
            Family::Dipolar => vec![2 * k - 2, 2 * g - 2 * k],
        };
        orders.sort_unstable_by(|a, b| b.cmp(a));
        orders
    }

    /// (a, b, M) such that the billiard triangle has angles π/2, πa/M, πb/M.
    pub fn triangle(&self) -> (u32, u32, u32) {
        let (g, k) = (self.genus, self.k);
        match self.family {
            Family::Apolar => (k, g - k + 1, 2 * g + 2),
            Family::Polar => (2 * k, 2 * g - 2 * k + 1, 4 * g + 2),
            Family::Dipolar => (2 * k - 1, 2 * g - 2 * k + 1, 4 * g),
        }
    }

    /// The k' with S^k ≅ S^{k'} up to rotation, when the family has one.
    pub fn rotation_partner(&self) -> Option<FamilySpec> {
        match self.family {
            Family::Polar => None,
            _ => Some(FamilySpec { k: self.genus - self.k + 1, ..*self }),
        }
    }

    pub fn build(&self) -> Result<TranslationSurface, BuildError> {
        build_family(*self)
    }

    /// Short name such as `S^2_7` or `H^1_6`.
    pub fn surface_name(&self) -> String {
        let letter = if self.family == Family::Dipolar { 'H' } else { 'S' };
        format!("{letter}^{}_{}", self.k, self.rhombi())
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} g={} k={}", self.family, self.genus, self.k)
    }
}

pub fn build_family(spec: FamilySpec) -> Result<TranslationSurface, BuildError> {
    let n = spec.rhombi();
    match spec.family {
        Family::Apolar | Family::Polar => spingon(n, spec.k),
        Family::Dipolar => half_spingon(n, spec.k),
    }
}
