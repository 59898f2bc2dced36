//! Translation surfaces as convex polygons glued along parallel edges.

mod json;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::{orientation, CycloNum};

pub use json::LoadError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("surface has no polygons")]
    Empty,
    #[error("polygon {polygon} has fewer than three vertices")]
    TooFewVertices { polygon: usize },
    #[error("polygon {polygon} is not strictly convex and counterclockwise")]
    NonConvexPolygon { polygon: usize },
    #[error("gluing {gluing} refers to a missing edge")]
    EdgeOutOfRange { gluing: usize },
    #[error("gluing {gluing} glues an edge to itself")]
    SelfGluing { gluing: usize },
    #[error("edge {edge} of polygon {polygon} appears in more than one gluing")]
    DuplicateEdge { polygon: usize, edge: usize },
    #[error("edge {edge} of polygon {polygon} is not glued")]
    UnmatchedEdge { polygon: usize, edge: usize },
    #[error("gluing {gluing} pairs edges whose vectors are not opposite")]
    EdgeVectorMismatch { gluing: usize },
    #[error("the gluings do not connect all polygons")]
    Disconnected,
    #[error("scale factor must be nonzero")]
    ZeroScale,
}

/// A convex polygon; vertices are listed counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polygon {
    vertices: Vec<CycloNum>,
}

impl Polygon {
    pub fn new(vertices: Vec<CycloNum>) -> Self {
        Polygon { vertices }
    }

    pub fn vertices(&self) -> &[CycloNum] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &CycloNum {
        &self.vertices[i % self.vertices.len()]
    }

    /// Vector of edge `e`, from vertex e to vertex e+1.
    pub fn edge(&self, e: usize) -> CycloNum {
        self.vertex(e + 1) - self.vertex(e)
    }

    /// Strict convexity with counterclockwise orientation: every vertex not on
    /// an edge lies strictly left of it.
    pub fn is_strictly_convex(&self) -> bool {
        let n = self.len();
        (0..n).all(|e| {
            let (a, b) = (self.vertex(e), self.vertex(e + 1));
            (2..n).all(|k| orientation(a, b, self.vertex(e + k)) == Ordering::Greater)
        })
    }

    pub fn translated(&self, by: &CycloNum) -> Polygon {
        Polygon::new(self.vertices.iter().map(|v| v + by).collect())
    }

    pub fn scaled(&self, by: &CycloNum) -> Polygon {
        Polygon::new(self.vertices.iter().map(|v| v * by).collect())
    }

    /// Twice the signed area.
    fn double_area_raw(&self) -> CycloNum {
        let n = self.len();
        let mut w = CycloNum::zero(self.vertices[0].order());
        for i in 0..n {
            w = w + self.vertex(i).conj() * self.vertex(i + 1);
        }
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct EdgeRef {
    pub polygon: usize,
    pub edge: usize,
}

impl EdgeRef {
    pub fn new(polygon: usize, edge: usize) -> Self {
        EdgeRef { polygon, edge }
    }
}

impl From<[usize; 2]> for EdgeRef {
    fn from([polygon, edge]: [usize; 2]) -> Self {
        EdgeRef { polygon, edge }
    }
}

impl From<EdgeRef> for [usize; 2] {
    fn from(e: EdgeRef) -> Self {
        [e.polygon, e.edge]
    }
}

/// Identifies `first` with `second` traversed backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[EdgeRef; 2]", into = "[EdgeRef; 2]")]
pub struct Gluing {
    pub first: EdgeRef,
    pub second: EdgeRef,
}

impl Gluing {
    pub fn new(first: EdgeRef, second: EdgeRef) -> Self {
        Gluing { first, second }
    }
}

impl From<[EdgeRef; 2]> for Gluing {
    fn from([first, second]: [EdgeRef; 2]) -> Self {
        Gluing { first, second }
    }
}

impl From<Gluing> for [EdgeRef; 2] {
    fn from(g: Gluing) -> Self {
        [g.first, g.second]
    }
}

/// A validated translation surface. All vertices share one field order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationSurface {
    polygons: Vec<Polygon>,
    gluings: Vec<Gluing>,
    field_order: u32,
    /// partner[p][e] = (gluing index, the other edge)
    partner: Vec<Vec<(usize, EdgeRef)>>,
}

/// Validates polygons and gluings and lifts every coordinate to a common field.
pub fn make_surface(polygons: Vec<Polygon>, gluings: Vec<Gluing>) -> Result<TranslationSurface, SurfaceError> {
    if polygons.is_empty() {
        return Err(SurfaceError::Empty);
    }
    let mut field_order = 1;
    for (p, poly) in polygons.iter().enumerate() {
        if poly.len() < 3 {
            return Err(SurfaceError::TooFewVertices { polygon: p });
        }
        for v in poly.vertices() {
            field_order = num_integer::lcm(field_order, v.order());
        }
    }
    let polygons: Vec<Polygon> = polygons
        .into_iter()
        .map(|poly| Polygon::new(poly.vertices.iter().map(|v| v.lift(field_order)).collect()))
        .collect();
    for (p, poly) in polygons.iter().enumerate() {
        if !poly.is_strictly_convex() {
            return Err(SurfaceError::NonConvexPolygon { polygon: p });
        }
    }

    let mut partner: Vec<Vec<Option<(usize, EdgeRef)>>> = polygons.iter().map(|p| vec![None; p.len()]).collect();
    for (g, gl) in gluings.iter().enumerate() {
        for e in [gl.first, gl.second] {
            if e.polygon >= polygons.len() || e.edge >= polygons[e.polygon].len() {
                return Err(SurfaceError::EdgeOutOfRange { gluing: g });
            }
        }
        if gl.first == gl.second {
            return Err(SurfaceError::SelfGluing { gluing: g });
        }
        for (e, other) in [(gl.first, gl.second), (gl.second, gl.first)] {
            let slot = &mut partner[e.polygon][e.edge];
            if slot.is_some() {
                return Err(SurfaceError::DuplicateEdge { polygon: e.polygon, edge: e.edge });
            }
            *slot = Some((g, other));
        }
        let u = polygons[gl.first.polygon].edge(gl.first.edge);
        let v = polygons[gl.second.polygon].edge(gl.second.edge);
        if !(u + v).is_zero() {
            return Err(SurfaceError::EdgeVectorMismatch { gluing: g });
        }
    }
    let mut table = Vec::with_capacity(polygons.len());
    for (p, row) in partner.into_iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (e, slot) in row.into_iter().enumerate() {
            out.push(slot.ok_or(SurfaceError::UnmatchedEdge { polygon: p, edge: e })?);
        }
        table.push(out);
    }

    let mut seen = vec![false; polygons.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(p) = stack.pop() {
        for &(_, other) in &table[p] {
            if !seen[other.polygon] {
                seen[other.polygon] = true;
                stack.push(other.polygon);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(SurfaceError::Disconnected);
    }
    Ok(TranslationSurface { polygons, gluings, field_order, partner: table })
}

/// A point of the surface together with the corners identified to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConePoint {
    /// Corners (polygon, vertex) in counterclockwise order around the point.
    pub corners: Vec<(usize, usize)>,
    /// The cone angle is 2π times this number.
    pub angle_multiple: u32,
}

impl ConePoint {
    /// Order of the zero of the differential at this point.
    pub fn zero_order(&self) -> u32 {
        self.angle_multiple - 1
    }
}

/// Orders of the zeros, sorted in decreasing order, with the genus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StratumSignature {
    /// Every cone point, including regular marked points of order 0.
    pub orders: Vec<u32>,
    pub genus: u32,
}

impl StratumSignature {
    /// The orders of the actual zeros; marked regular points are dropped.
    pub fn zeros(&self) -> Vec<u32> {
        self.orders.iter().copied().filter(|&o| o > 0).collect()
    }

    /// Formats the signature with the order-0 entries kept, as in `H(0,0,4)`.
    pub fn with_marked_points(&self) -> String {
        format_orders(&self.orders)
    }
}

fn format_orders(orders: &[u32]) -> String {
    let parts: Vec<String> = orders.iter().map(u32::to_string).collect();
    format!("H({})", parts.join(","))
}

impl fmt::Display for StratumSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_orders(&self.zeros()))
    }
}

/// True when the wedge swept counterclockwise from `u` to `w` (angle < π)
/// contains `d`, counting the ray along `u` but not the ray along `w`.
pub(crate) fn wedge_contains(u: &CycloNum, w: &CycloNum, d: &CycloNum) -> bool {
    let from_u = (u.conj() * d).sign_imag();
    match from_u {
        Ordering::Less => false,
        Ordering::Equal => (u.conj() * d).sign_real() == Ordering::Greater,
        Ordering::Greater => (d.conj() * w).sign_imag() == Ordering::Greater,
    }
}

impl TranslationSurface {
    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    /// The edge glued to `e`.
    pub fn partner(&self, e: EdgeRef) -> EdgeRef {
        self.partner[e.polygon][e.edge].1
    }

    /// Index of the gluing containing `e`.
    pub fn gluing_of(&self, e: EdgeRef) -> usize {
        self.partner[e.polygon][e.edge].0
    }

    pub fn edge_vector(&self, e: EdgeRef) -> CycloNum {
        self.polygons[e.polygon].edge(e.edge)
    }

    /// Corner cycles: the walk crosses the incoming edge of a corner and
    /// continues at the corner where the glued edge starts.
    pub fn corner_cycles(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen: Vec<Vec<bool>> = self.polygons.iter().map(|p| vec![false; p.len()]).collect();
        let mut cycles = Vec::new();
        for p in 0..self.polygons.len() {
            for v in 0..self.polygons[p].len() {
                if seen[p][v] {
                    continue;
                }
                let mut cycle = Vec::new();
                let (mut q, mut w) = (p, v);
                while !seen[q][w] {
                    seen[q][w] = true;
                    cycle.push((q, w));
                    let n = self.polygons[q].len();
                    let next = self.partner(EdgeRef::new(q, (w + n - 1) % n));
                    q = next.polygon;
                    w = next.edge;
                }
                cycles.push(cycle);
            }
        }
        cycles
    }

    /// A direction ζ_{4M}^j, j ≥ 1, not parallel to any edge.
    pub fn generic_direction(&self) -> CycloNum {
        let order = 4 * self.field_order;
        let edges: Vec<CycloNum> = self
            .polygons
            .iter()
            .flat_map(|p| (0..p.len()).map(move |e| p.edge(e)))
            .collect();
        (1..)
            .map(|j| CycloNum::root_of_unity(order, j))
            .find(|d| edges.iter().all(|e| (e.conj() * d).sign_imag() != Ordering::Equal))
            .expect("finitely many edge directions")
    }

    pub fn cone_points(&self) -> Vec<ConePoint> {
        self.cone_points_towards(&self.generic_direction())
    }

    /// Cone points with angles counted against the reference direction `d`.
    pub fn cone_points_towards(&self, d: &CycloNum) -> Vec<ConePoint> {
        self.corner_cycles()
            .into_iter()
            .map(|corners| {
                let m = corners.iter().filter(|&&(p, v)| self.corner_contains(p, v, d)).count();
                ConePoint { corners, angle_multiple: m as u32 }
            })
            .collect()
    }

    fn corner_contains(&self, p: usize, v: usize, d: &CycloNum) -> bool {
        let poly = &self.polygons[p];
        let n = poly.len();
        let u = poly.edge(v);
        let w = -poly.edge((v + n - 1) % n);
        wedge_contains(&u, &w, d)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.corner_cycles().len() as i64 - self.gluings.len() as i64 + self.polygons.len() as i64
    }

    /// Zero orders of all cone points, with the genus from V − E + F.
    ///
    /// # Panics
    /// If the angle count disagrees with the Euler characteristic, which
    /// would mean the surface data is inconsistent.
    pub fn stratum(&self) -> StratumSignature {
        let points = self.cone_points();
        let chi = self.points_chi(&points);
        assert!(chi <= 2 && chi % 2 == 0, "odd Euler characteristic {chi}");
        let genus = ((2 - chi) / 2) as u32;
        let mut orders: Vec<u32> = points.iter().map(ConePoint::zero_order).collect();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        let total: i64 = orders.iter().map(|&o| o as i64).sum();
        assert_eq!(total, 2 * genus as i64 - 2, "Gauss-Bonnet check failed");
        StratumSignature { orders, genus }
    }

    fn points_chi(&self, points: &[ConePoint]) -> i64 {
        points.len() as i64 - self.gluings.len() as i64 + self.polygons.len() as i64
    }

    pub fn genus(&self) -> u32 {
        ((2 - self.euler_characteristic()) / 2) as u32
    }

    /// Total area as a real element of Q(ζ_lcm(M, 4)).
    pub fn area(&self) -> CycloNum {
        let mut w = CycloNum::zero(self.field_order);
        for p in &self.polygons {
            w = w + p.double_area_raw();
        }
        // Im(w) / 2 = (w − conj w) · (−i) / 4
        let minus_i = CycloNum::root_of_unity(4, 3);
        let quarter = BigRational::new(BigInt::from(1), BigInt::from(4));
        ((&w - &w.conj()) * minus_i).scale(&quarter)
    }

    /// Multiplies every vertex by `c`.
    pub fn transform(&self, c: &CycloNum) -> Result<TranslationSurface, SurfaceError> {
        if c.is_zero() {
            return Err(SurfaceError::ZeroScale);
        }
        let order = num_integer::lcm(self.field_order, c.order());
        let c = c.lift(order);
        let polygons = self
            .polygons
            .iter()
            .map(|p| Polygon::new(p.vertices().iter().map(|v| v.lift(order) * &c).collect()))
            .collect();
        Ok(TranslationSurface {
            polygons,
            gluings: self.gluings.clone(),
            field_order: order,
            partner: self.partner.clone(),
        })
    }

    /// Re-expresses all coordinates in a larger field.
    pub fn lift(&self, order: u32) -> TranslationSurface {
        let polygons = self
            .polygons
            .iter()
            .map(|p| Polygon::new(p.vertices().iter().map(|v| v.lift(order)).collect()))
            .collect();
        TranslationSurface { polygons, gluings: self.gluings.clone(), field_order: order, partner: self.partner.clone() }
    }
}
