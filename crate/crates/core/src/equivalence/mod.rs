//! Canonical Delaunay decompositions and the equivalence tests built on them.
//!
//! A surface is triangulated, flipped to a Delaunay triangulation, stripped of
//! regular vertices (except on the torus, where one vertex must stay), flipped
//! again and finally merged into maximal cocircular cells. The cells are then
//! relabelled by the least breadth-first serialization, so two surfaces are
//! translation equivalent exactly when their decompositions are equal.

mod cells;
mod mesh;
mod symmetry;

use std::cmp::Ordering;

use serde::Serialize;

use crate::cyclotomic::{orientation, CycloNum};
use crate::surface::{make_surface, EdgeRef, Gluing, Polygon, TranslationSurface};

use cells::{canonical_labelling, merge_cells};
use mesh::Mesh;

pub use symmetry::{
    fixed_points, is_hyperelliptic_flat, AffineSymmetry, FixedPoint, FixedPointReport, SymmetryError,
};

/// A surface whose polygons are all triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangulatedSurface {
    pub surface: TranslationSurface,
    /// For each triangle, the polygon of the original surface it came from.
    pub provenance: Vec<usize>,
}

/// Fan-triangulates every polygon from its vertex 0.
pub fn triangulate(s: &TranslationSurface) -> TriangulatedSurface {
    let mesh = Mesh::from_surface(s, &[]);
    let provenance = s.polygons().iter().enumerate().flat_map(|(p, poly)| std::iter::repeat(p).take(poly.len() - 2)).collect();
    TriangulatedSurface { surface: mesh.to_surface(), provenance }
}

/// The canonical decomposition of a triangulated surface.
pub fn delaunay(t: &TriangulatedSurface) -> CanonicalDecomposition {
    CanonicalDecomposition::of(&t.surface)
}

/// Delaunay cells of a surface with a canonical labelling.
///
/// Cells are stored by their edge vectors; vertex 0 of each cell sits at the
/// origin of the cell's frame.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CanonicalDecomposition {
    field_order: u32,
    cells: Vec<Vec<CycloNum>>,
    gluings: Vec<Vec<(usize, usize)>>,
    #[serde(skip)]
    corner_class: Vec<Vec<usize>>,
}

/// Where a tracked point ended up, in terms of the canonical cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PointLocation {
    /// A vertex class, numbered as in [`CanonicalDecomposition::vertex_classes`].
    Vertex { class: usize },
    /// A point inside an edge. The half-edge is the smaller of the two glued
    /// ones and the offset is measured from its start.
    Edge { cell: usize, edge: usize, offset: CycloNum },
    /// An interior point, measured from vertex 0 of the cell.
    Interior { cell: usize, offset: CycloNum },
}

/// Which transformations `equivalent_up_to` may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Translation,
    Rotation,
    Similarity,
}

/// A translation equivalence: cell i of the first decomposition is cell
/// `cell_map[i].0` of the second, with edge e going to edge e + `cell_map[i].1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pub cell_map: Vec<(usize, usize)>,
}

fn decompose(mut mesh: Mesh) -> (CanonicalDecomposition, Vec<(usize, CycloNum)>) {
    mesh.make_delaunay();
    mesh.erase_regular_vertices();
    mesh.make_delaunay();
    let raw = merge_cells(&mesh);
    let labelling = canonical_labelling(&raw.edges, &raw.partner);
    let n = raw.edges.len();
    let mut label = vec![0; n];
    let mut rot = vec![0; n];
    for (i, &(c, r)) in labelling.order.iter().enumerate() {
        label[c] = i;
        rot[c] = r;
    }
    let mut cells = Vec::with_capacity(n);
    let mut gluings = Vec::with_capacity(n);
    for &(c, r) in &labelling.order {
        let len = raw.edges[c].len();
        cells.push((0..len).map(|k| raw.edges[c][(k + r) % len].clone()).collect());
        gluings.push(
            (0..len)
                .map(|k| {
                    let (pc, pe) = raw.partner[c][(k + r) % len];
                    let plen = raw.edges[pc].len();
                    (label[pc], (pe + plen - rot[pc]) % plen)
                })
                .collect(),
        );
    }
    let points = raw
        .points
        .into_iter()
        .map(|(c, pos)| {
            let corner: CycloNum = raw.edges[c][..rot[c]].iter().fold(CycloNum::zero(mesh.order), |acc, e| acc + e);
            (label[c], pos - corner)
        })
        .collect();
    let mut cd = CanonicalDecomposition { field_order: mesh.order, cells, gluings, corner_class: Vec::new() };
    cd.corner_class = cd.compute_corner_classes();
    (cd, points)
}

impl CanonicalDecomposition {
    pub fn of(s: &TranslationSurface) -> CanonicalDecomposition {
        decompose(Mesh::from_surface(s, &[])).0
    }

    /// Decomposes `s` and locates the given points, each written as
    /// (polygon, position in that polygon's coordinates).
    pub fn with_points(s: &TranslationSurface, points: &[(usize, CycloNum)]) -> (CanonicalDecomposition, Vec<PointLocation>) {
        let order = points.iter().fold(s.field_order(), |m, (_, p)| num_integer::lcm(m, p.order()));
        let lifted = if order == s.field_order() { s.clone() } else { s.lift(order) };
        let (cd, raw) = decompose(Mesh::from_surface(&lifted, points));
        let located = raw.into_iter().map(|(c, pos)| cd.locate(c, &pos)).collect();
        (cd, located)
    }

    pub fn field_order(&self) -> u32 {
        self.field_order
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    /// Edge vectors of cell `c`, counterclockwise from vertex 0.
    pub fn cell(&self, c: usize) -> &[CycloNum] {
        &self.cells[c]
    }

    /// The half-edge glued to edge `e` of cell `c`.
    pub fn partner(&self, c: usize, e: usize) -> (usize, usize) {
        self.gluings[c][e]
    }

    pub fn half_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells.iter().enumerate().flat_map(|(c, edges)| (0..edges.len()).map(move |e| (c, e)))
    }

    /// Vertices of cell `c` with vertex 0 at the origin.
    pub fn vertices(&self, c: usize) -> Vec<CycloNum> {
        let mut acc = CycloNum::zero(self.field_order);
        let mut out = Vec::with_capacity(self.cells[c].len());
        for e in &self.cells[c] {
            out.push(acc.clone());
            acc = acc + e;
        }
        out
    }

    /// The cells as a translation surface, one polygon per cell.
    pub fn to_surface(&self) -> TranslationSurface {
        let polygons = (0..self.cells.len()).map(|c| Polygon::new(self.vertices(c))).collect();
        let gluings = self
            .half_edges()
            .filter(|&h| h < self.partner(h.0, h.1))
            .map(|(c, e)| {
                let (d, f) = self.partner(c, e);
                Gluing::new(EdgeRef::new(c, e), EdgeRef::new(d, f))
            })
            .collect();
        make_surface(polygons, gluings).expect("canonical cells form a valid surface")
    }

    /// Corner cycles of the cells; corner (c, v) is the start of edge v.
    pub fn vertex_classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
        for (c, row) in self.corner_class.iter().enumerate() {
            for (v, &k) in row.iter().enumerate() {
                if classes.len() <= k {
                    classes.resize(k + 1, Vec::new());
                }
                classes[k].push((c, v));
            }
        }
        classes
    }

    pub fn class_of_corner(&self, c: usize, v: usize) -> usize {
        self.corner_class[c][v]
    }

    fn compute_corner_classes(&self) -> Vec<Vec<usize>> {
        let mut class: Vec<Vec<usize>> = self.cells.iter().map(|e| vec![usize::MAX; e.len()]).collect();
        let mut next = 0;
        for c in 0..self.cells.len() {
            for v in 0..self.cells[c].len() {
                if class[c][v] != usize::MAX {
                    continue;
                }
                let (mut d, mut w) = (c, v);
                while class[d][w] == usize::MAX {
                    class[d][w] = next;
                    let len = self.cells[d].len();
                    (d, w) = self.partner(d, (w + len - 1) % len);
                }
                next += 1;
            }
        }
        class
    }

    /// Normal form of the point at `pos` (relative to vertex 0) in cell `c`.
    pub fn locate(&self, c: usize, pos: &CycloNum) -> PointLocation {
        let verts = self.vertices(c);
        let n = verts.len();
        if let Some(v) = verts.iter().position(|p| p == pos) {
            return PointLocation::Vertex { class: self.corner_class[c][v] };
        }
        for e in 0..n {
            if orientation(&verts[e], &verts[(e + 1) % n], pos) == Ordering::Equal {
                return self.edge_location(c, e, pos - &verts[e]);
            }
        }
        PointLocation::Interior { cell: c, offset: pos.clone() }
    }

    fn edge_location(&self, c: usize, e: usize, offset: CycloNum) -> PointLocation {
        let (d, f) = self.partner(c, e);
        if (c, e) <= (d, f) {
            PointLocation::Edge { cell: c, edge: e, offset }
        } else {
            PointLocation::Edge { cell: d, edge: f, offset: offset - &self.cells[c][e] }
        }
    }

    /// A JSON serialization that is identical for translation-equivalent
    /// surfaces presented over the same field.
    pub fn serialization(&self) -> String {
        serde_json::to_string(self).expect("decomposition serialization cannot fail")
    }

    /// Flood-fills a matching with `dst` edge = `factor` · `self` edge, seeded
    /// by sending half-edge `from` of `self` to half-edge `to` of `dst`.
    pub(crate) fn flood_match(
        &self,
        from: (usize, usize),
        dst: &CanonicalDecomposition,
        to: (usize, usize),
        factor: &CycloNum,
    ) -> Option<Vec<(usize, usize)>> {
        let n = self.cells.len();
        if dst.cells.len() != n || self.cells[from.0].len() != dst.cells[to.0].len() {
            return None;
        }
        let mut map: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut used = vec![false; n];
        let len0 = self.cells[from.0].len();
        map[from.0] = Some((to.0, (to.1 + len0 - from.1) % len0));
        used[to.0] = true;
        let mut queue = vec![from.0];
        while let Some(i) = queue.pop() {
            let (j, r) = map[i].expect("queued cells are mapped");
            let len = self.cells[i].len();
            for e in 0..len {
                let image = (e + r) % len;
                if dst.cells[j][image] != factor * &self.cells[i][e] {
                    return None;
                }
                let (pi, pe) = self.partner(i, e);
                let (pj, pf) = dst.partner(j, image);
                let plen = self.cells[pi].len();
                if dst.cells[pj].len() != plen {
                    return None;
                }
                let rot = (pf + plen - pe) % plen;
                match map[pi] {
                    Some(m) if m != (pj, rot) => return None,
                    Some(_) => {}
                    None => {
                        if used[pj] {
                            return None;
                        }
                        used[pj] = true;
                        map[pi] = Some((pj, rot));
                        queue.push(pi);
                    }
                }
            }
        }
        map.into_iter().collect()
    }

    /// A factor c with c·(edges of `other`) matching `self`, if one exists.
    pub fn similarity_factor(&self, other: &CanonicalDecomposition, mode: Mode) -> Option<CycloNum> {
        if self.cells.len() != other.cells.len() {
            return None;
        }
        let mut sizes_a: Vec<usize> = self.cells.iter().map(Vec::len).collect();
        let mut sizes_b: Vec<usize> = other.cells.iter().map(Vec::len).collect();
        sizes_a.sort_unstable();
        sizes_b.sort_unstable();
        if sizes_a != sizes_b {
            return None;
        }
        let u = &self.cells[0][0];
        let u_norm = u.norm_squared();
        for (c, e) in other.half_edges() {
            if other.cells[c].len() != self.cells[0].len() {
                continue;
            }
            let v = &other.cells[c][e];
            let factor = match mode {
                Mode::Translation if v != u => continue,
                Mode::Translation => CycloNum::one(1),
                Mode::Rotation if v.norm_squared() != u_norm => continue,
                Mode::Rotation | Mode::Similarity => u.checked_div(v).expect("edge vectors are nonzero"),
            };
            if other.flood_match((c, e), self, (0, 0), &factor).is_some() {
                return Some(factor);
            }
        }
        None
    }
}

/// A cell bijection between the decompositions of `a` and `b`, if the
/// surfaces are translation equivalent.
pub fn translation_equivalent(a: &TranslationSurface, b: &TranslationSurface) -> Option<Matching> {
    let (da, db) = (CanonicalDecomposition::of(a), CanonicalDecomposition::of(b));
    let one = CycloNum::one(1);
    let found = db.half_edges().find_map(|to| da.flood_match((0, 0), &db, to, &one));
    found.map(|cell_map| Matching { cell_map })
}

/// A factor c such that `transform(b, c)` is translation equivalent to `a`.
/// In rotation mode c has modulus exactly 1; in translation mode c = 1.
pub fn equivalent_up_to(a: &TranslationSurface, b: &TranslationSurface, mode: Mode) -> Option<CycloNum> {
    CanonicalDecomposition::of(a).similarity_factor(&CanonicalDecomposition::of(b), mode)
}

/// A symmetry of `s` with the given derivative.
pub fn find_symmetry(s: &TranslationSurface, derivative: &CycloNum) -> Option<AffineSymmetry> {
    CanonicalDecomposition::of(s).find_symmetry(derivative)
}

#[cfg(test)]
mod tests;
