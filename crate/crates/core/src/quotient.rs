//! Combinatorial cell complexes carried by flat surfaces: the diagonal
//! triangulation of rhombus surfaces, transport of complexes along
//! symmetries, orbit quotients and isomorphism testing.

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::CycloNum;
use crate::equivalence::{AffineSymmetry, CanonicalDecomposition, PointLocation};
use crate::surface::{make_surface, EdgeRef, Gluing, Polygon, SurfaceError, TranslationSurface};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("polygon {0} is not a rhombus")]
    NotRhombusSurface(usize),
    #[error("generator {0} is not an automorphism of the complex")]
    NotAutomorphism(usize),
    #[error("invalid subdivision: {0}")]
    InvalidSubdivision(String),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

/// Vertex roles in a rhombus O A B C with centre W.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum VertexLabel {
    O,
    A,
    B,
    C,
    W,
}

/// One side of a face: an edge, traversed against its orientation when
/// `reversed` is set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Side {
    pub edge: usize,
    pub reversed: bool,
}

/// A 2-complex with oriented edges and faces given by boundary cycles.
/// A folded edge is glued to itself with its orientation reversed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellComplex {
    pub vertices: Vec<Option<VertexLabel>>,
    pub edges: Vec<[usize; 2]>,
    pub faces: Vec<Vec<Side>>,
    pub folded: Vec<bool>,
}

/// Images of vertices, edges (with orientation flip) and faces (with the
/// side that side 0 lands on, and whether the boundary is reversed).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplexMap {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, bool)>,
    pub faces: Vec<(usize, usize, bool)>,
}

impl CellComplex {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// Start and end vertex of a side.
    pub fn side_ends(&self, side: Side) -> (usize, usize) {
        let [a, b] = self.edges[side.edge];
        if side.reversed {
            (b, a)
        } else {
            (a, b)
        }
    }

    /// Number of edge ends at each vertex; a loop counts twice.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for &[a, b] in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    /// Face sides incident to each edge.
    fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.edges.len()];
        for (f, sides) in self.faces.iter().enumerate() {
            for (i, s) in sides.iter().enumerate() {
                inc[s.edge].push((f, i));
            }
        }
        inc
    }

    /// Closed boundary cycles and two face sides per edge (one if folded).
    pub fn is_valid(&self) -> bool {
        let cycles_close = self.faces.iter().all(|sides| {
            !sides.is_empty()
                && (0..sides.len()).all(|i| self.side_ends(sides[i]).1 == self.side_ends(sides[(i + 1) % sides.len()]).0)
        });
        let inc = self.incidence();
        cycles_close && inc.iter().zip(&self.folded).all(|(sides, &folded)| sides.len() == if folded { 1 } else { 2 })
    }

    fn side_image(&self, target: &CellComplex, map: &ComplexMap, f: usize, i: usize) -> Side {
        let (g, offset, reversed) = map.faces[f];
        let len = target.faces[g].len();
        let j = if reversed { (offset + len - i % len) % len } else { (offset + i) % len };
        target.faces[g][j]
    }

    /// True when `map` is an incidence-preserving bijection onto `target`
    /// that respects labels present on both sides.
    pub fn maps_onto(&self, target: &CellComplex, map: &ComplexMap) -> bool {
        self.is_cellular_bijection(target, map)
            && self.vertices.iter().zip(&map.vertices).all(|(l, &w)| match (l, target.vertices[w]) {
                (Some(a), Some(b)) => *a == b,
                _ => true,
            })
    }

    /// True when `map` is an incidence-preserving bijection of the complex
    /// onto itself. Labels may be permuted.
    pub fn is_automorphism(&self, map: &ComplexMap) -> bool {
        self.is_cellular_bijection(self, map)
    }

    fn is_cellular_bijection(&self, target: &CellComplex, map: &ComplexMap) -> bool {
        let sizes = map.vertices.len() == self.vertices.len()
            && map.edges.len() == self.edges.len()
            && map.faces.len() == self.faces.len()
            && self.vertices.len() == target.vertices.len()
            && self.edges.len() == target.edges.len()
            && self.faces.len() == target.faces.len();
        if !sizes
            || !is_permutation(map.vertices.iter().copied(), target.vertices.len())
            || !is_permutation(map.edges.iter().map(|e| e.0), target.edges.len())
            || !is_permutation(map.faces.iter().map(|f| f.0), target.faces.len())
        {
            return false;
        }
        let edges = self.edges.iter().zip(&map.edges).enumerate().all(|(e, (&[a, b], &(img, flip)))| {
            let [c, d] = target.edges[img];
            let expected = if flip && !self.folded[e] { [d, c] } else { [c, d] };
            let ends = [map.vertices[a], map.vertices[b]];
            (ends == expected || (self.folded[e] && ends == [d, c])) && self.folded[e] == target.folded[img]
        });
        let faces = self.faces.iter().enumerate().all(|(f, sides)| {
            let (g, _, reversed) = map.faces[f];
            target.faces[g].len() == sides.len()
                && sides.iter().enumerate().all(|(i, s)| {
                    let image = self.side_image(target, map, f, i);
                    let (e, flip) = map.edges[s.edge];
                    image.edge == e && (image.reversed == (s.reversed ^ flip ^ reversed) || self.folded[s.edge])
                })
        });
        edges && faces
    }
}

fn is_permutation(images: impl Iterator<Item = usize>, n: usize) -> bool {
    let mut seen = vec![false; n];
    for i in images {
        if i >= n || std::mem::replace(&mut seen[i], true) {
            return false;
        }
    }
    seen.into_iter().all(|s| s)
}

impl ComplexMap {
    pub fn identity(x: &CellComplex) -> ComplexMap {
        ComplexMap {
            vertices: (0..x.vertices.len()).collect(),
            edges: (0..x.edges.len()).map(|e| (e, false)).collect(),
            faces: (0..x.faces.len()).map(|f| (f, 0, false)).collect(),
        }
    }
}

/// A complex drawn on a surface: each face is a polygon inside one polygon
/// of `base`, written in that polygon's coordinates.
#[derive(Debug, Clone)]
pub struct SurfaceComplex {
    pub base: TranslationSurface,
    /// The faces as a translation surface, face i being polygon i.
    pub surface: TranslationSurface,
    pub complex: CellComplex,
    pub charts: Vec<(usize, Vec<CycloNum>)>,
}

/// Builds the complex of a subdivision of `base`. Each piece is a convex
/// polygon inside polygon `piece.0`, counterclockwise. Piece vertices are
/// polygon corners or interior points, and piece sides on the boundary are
/// whole polygon edges. Interior points are labelled by `interior_label`,
/// corners by the least label `corner_label` gives to the corners of their
/// class.
pub fn subdivide(
    base: &TranslationSurface,
    pieces: Vec<(usize, Vec<CycloNum>)>,
    corner_label: impl Fn(usize, usize) -> Option<VertexLabel>,
    interior_label: Option<VertexLabel>,
) -> Result<SurfaceComplex, QuotientError> {
    let invalid = |msg: String| QuotientError::InvalidSubdivision(msg);
    let classes = base.corner_cycles();
    let mut class_of: Vec<Vec<usize>> = base.polygons().iter().map(|p| vec![0; p.len()]).collect();
    let mut vertices: Vec<Option<VertexLabel>> = Vec::with_capacity(classes.len());
    for (k, cycle) in classes.iter().enumerate() {
        for &(p, v) in cycle {
            class_of[p][v] = k;
        }
        vertices.push(cycle.iter().filter_map(|&(p, v)| corner_label(p, v)).min());
    }
    let mut interior: Vec<(usize, CycloNum)> = Vec::new();

    // Vertex ids and, for boundary sides, the polygon edge they cover.
    let mut ids: Vec<Vec<usize>> = Vec::with_capacity(pieces.len());
    for (f, (p, verts)) in pieces.iter().enumerate() {
        let poly = base.polygons().get(*p).ok_or_else(|| invalid(format!("piece {f} names polygon {p}")))?;
        if verts.len() < 3 || !Polygon::new(verts.clone()).is_strictly_convex() {
            return Err(invalid(format!("piece {f} is not a convex counterclockwise polygon")));
        }
        let mut row = Vec::with_capacity(verts.len());
        for x in verts {
            let id = match poly.vertices().iter().position(|c| c == x) {
                Some(v) => class_of[*p][v],
                None => match interior.iter().position(|(q, y)| q == p && y == x) {
                    Some(i) => classes.len() + i,
                    None => {
                        interior.push((*p, x.clone()));
                        vertices.push(interior_label);
                        classes.len() + interior.len() - 1
                    }
                },
            };
            row.push(id);
        }
        ids.push(row);
    }

    let corner_index = |p: usize, x: &CycloNum| base.polygons()[p].vertices().iter().position(|c| c == x);
    let boundary_edge = |p: usize, a: &CycloNum, b: &CycloNum| -> Option<usize> {
        let n = base.polygons()[p].len();
        match (corner_index(p, a), corner_index(p, b)) {
            (Some(i), Some(j)) if j == (i + 1) % n => Some(i),
            _ => None,
        }
    };
    let mut owner: std::collections::HashMap<(usize, usize), (usize, usize)> = std::collections::HashMap::new();
    for (f, (p, verts)) in pieces.iter().enumerate() {
        let n = verts.len();
        for i in 0..n {
            if let Some(e) = boundary_edge(*p, &verts[i], &verts[(i + 1) % n]) {
                if owner.insert((*p, e), (f, i)).is_some() {
                    return Err(invalid(format!("edge {e} of polygon {p} is covered twice")));
                }
            }
        }
    }

    // Pair up sides.
    let mut partner: Vec<Vec<Option<(usize, usize)>>> = pieces.iter().map(|(_, v)| vec![None; v.len()]).collect();
    for (f, (p, verts)) in pieces.iter().enumerate() {
        let n = verts.len();
        for i in 0..n {
            let (a, b) = (&verts[i], &verts[(i + 1) % n]);
            let found = match boundary_edge(*p, a, b) {
                Some(e) => {
                    let other = base.partner(EdgeRef::new(*p, e));
                    owner.get(&(other.polygon, other.edge)).copied()
                }
                None => pieces.iter().enumerate().find_map(|(g, (q, ws))| {
                    let m = ws.len();
                    (q == p).then(|| (0..m).find(|&j| &ws[j] == b && &ws[(j + 1) % m] == a).map(|j| (g, j))).flatten()
                }),
            };
            partner[f][i] = Some(found.ok_or_else(|| invalid(format!("side {i} of piece {f} has no partner")))?);
        }
    }

    let mut edges = Vec::new();
    let mut faces: Vec<Vec<Side>> = pieces.iter().map(|(_, v)| Vec::with_capacity(v.len())).collect();
    let mut edge_of: Vec<Vec<usize>> = pieces.iter().map(|(_, v)| vec![usize::MAX; v.len()]).collect();
    let mut gluings = Vec::new();
    for f in 0..pieces.len() {
        let n = ids[f].len();
        for i in 0..n {
            let (g, j) = partner[f][i].expect("all sides paired");
            if edge_of[f][i] == usize::MAX {
                edge_of[f][i] = edges.len();
                edge_of[g][j] = edges.len();
                edges.push([ids[f][i], ids[f][(i + 1) % n]]);
                gluings.push(Gluing::new(EdgeRef::new(f, i), EdgeRef::new(g, j)));
            }
            let edge = edge_of[f][i];
            let created_here = gluings[edge].first == EdgeRef::new(f, i);
            faces[f].push(Side { edge, reversed: !created_here });
        }
    }
    let polygons = pieces.iter().map(|(_, v)| Polygon::new(v.clone())).collect();
    let surface = make_surface(polygons, gluings)?;
    let folded = vec![false; edges.len()];
    let complex = CellComplex { vertices, edges, faces, folded };
    debug_assert!(complex.is_valid());
    Ok(SurfaceComplex { base: base.clone(), surface, complex, charts: pieces })
}

fn role(v: usize) -> VertexLabel {
    [VertexLabel::O, VertexLabel::A, VertexLabel::B, VertexLabel::C][v]
}

fn check_rhombi(s: &TranslationSurface) -> Result<(), QuotientError> {
    for (p, poly) in s.polygons().iter().enumerate() {
        let is_rhombus = poly.len() == 4
            && poly.vertex(0) + poly.vertex(2) == poly.vertex(1) + poly.vertex(3)
            && poly.edge(0).norm_squared() == poly.edge(1).norm_squared();
        if !is_rhombus {
            return Err(QuotientError::NotRhombusSurface(p));
        }
    }
    Ok(())
}

/// Cuts every rhombus O A B C along both diagonals into four triangles
/// meeting at its centre W.
pub fn diagonal_triangulation(s: &TranslationSurface) -> Result<SurfaceComplex, QuotientError> {
    check_rhombi(s)?;
    let half = BigRational::new(1.into(), 2.into());
    let pieces = s
        .polygons()
        .iter()
        .enumerate()
        .flat_map(|(p, poly)| {
            let w = (poly.vertex(0) + poly.vertex(2)).scale(&half);
            (0..4).map(move |i| (p, vec![poly.vertex(i).clone(), poly.vertex(i + 1).clone(), w.clone()]))
        })
        .collect();
    subdivide(s, pieces, |_, v| Some(role(v)), Some(VertexLabel::W))
}

/// Cuts rhombus p along OB when `use_ob(p)` holds and along AC otherwise.
pub fn single_diagonal_triangulation(
    s: &TranslationSurface,
    use_ob: impl Fn(usize) -> bool,
) -> Result<SurfaceComplex, QuotientError> {
    check_rhombi(s)?;
    let pieces = s
        .polygons()
        .iter()
        .enumerate()
        .flat_map(|(p, poly)| {
            let v = |i: usize| poly.vertex(i).clone();
            if use_ob(p) {
                [(p, vec![v(0), v(1), v(2)]), (p, vec![v(2), v(3), v(0)])]
            } else {
                [(p, vec![v(1), v(2), v(3)]), (p, vec![v(3), v(0), v(1)])]
            }
        })
        .collect();
    subdivide(s, pieces, |_, v| Some(role(v)), None)
}

/// The map a symmetry of `sc.base` induces on the complex, if the complex is
/// invariant. `sigma` refers to `CanonicalDecomposition::of(&sc.base)`.
pub fn transport(sc: &SurfaceComplex, sigma: &AffineSymmetry) -> Option<ComplexMap> {
    let x = &sc.complex;
    let third = BigRational::new(1.into(), 3.into());
    let mut vertex_rep = vec![None; x.vertices.len()];
    let mut edge_rep = vec![None; x.edges.len()];
    for (f, sides) in x.faces.iter().enumerate() {
        for (i, s) in sides.iter().enumerate() {
            let (start, _) = x.side_ends(*s);
            vertex_rep[start].get_or_insert((f, i));
            if !s.reversed {
                edge_rep[s.edge].get_or_insert((f, i));
            }
        }
    }
    let mut points: Vec<(usize, CycloNum)> = Vec::new();
    for rep in &vertex_rep {
        let (f, i) = (*rep)?;
        points.push((sc.charts[f].0, sc.charts[f].1[i].clone()));
    }
    for rep in &edge_rep {
        let (f, i) = (*rep)?;
        let (p, verts) = &sc.charts[f];
        let (a, b) = (&verts[i], &verts[(i + 1) % verts.len()]);
        let step = (b - a).scale(&third);
        points.push((*p, a + &step));
        points.push((*p, a + &(&step + &step)));
    }
    for (p, verts) in &sc.charts {
        let sum = verts.iter().fold(CycloNum::zero(verts[0].order()), |acc, v| acc + v);
        points.push((*p, sum.scale(&BigRational::new(1.into(), (verts.len() as i64).into()))));
    }
    let (cd, located) = CanonicalDecomposition::with_points(&sc.base, &points);
    if sigma.cell_map.len() != cd.cell_count() {
        return None;
    }
    let (nv, ne) = (x.vertices.len(), x.edges.len());
    let image = |loc: &PointLocation| sigma.map_location(loc, &cd);
    let find = |range: std::ops::Range<usize>, target: &PointLocation| range.clone().find(|&j| &located[j] == target);

    let vertices = (0..nv).map(|v| find(0..nv, &image(&located[v]))).collect::<Option<Vec<_>>>()?;
    let edges = (0..ne)
        .map(|e| {
            let moved = image(&located[nv + 2 * e]);
            let j = find(nv..nv + 2 * ne, &moved)? - nv;
            Some((j / 2, j % 2 == 1))
        })
        .collect::<Option<Vec<_>>>()?;
    let centres = nv + 2 * ne;
    let faces = (0..x.faces.len())
        .map(|f| {
            let g = find(centres..located.len(), &image(&located[centres + f]))? - centres;
            let s0 = x.faces[f][0];
            let (e, flip) = edges[s0.edge];
            let offset = x.faces[g].iter().position(|s| s.edge == e && s.reversed == (s0.reversed ^ flip))?;
            Some((g, offset, false))
        })
        .collect::<Option<Vec<_>>>()?;
    let map = ComplexMap { vertices, edges, faces };
    x.is_automorphism(&map).then_some(map)
}

/// Whether `sigma` maps the complex onto itself.
pub fn invariant_under(sc: &SurfaceComplex, sigma: &AffineSymmetry) -> bool {
    transport(sc, sigma).is_some()
}

fn find_parity(parent: &mut [(usize, bool)], x: usize) -> (usize, bool) {
    let (p, par) = parent[x];
    if p == x {
        return (x, false);
    }
    let (root, up) = find_parity(parent, p);
    parent[x] = (root, par ^ up);
    (root, par ^ up)
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut root = x;
    while parent[root] != root {
        root = parent[root];
    }
    let mut y = x;
    while parent[y] != root {
        let next = parent[y];
        parent[y] = root;
        y = next;
    }
    root
}

/// Numbers the roots of a union-find in order of first appearance.
fn orbit_numbers(roots: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut number = vec![usize::MAX; roots.len()];
    let mut reps = Vec::new();
    for (i, &r) in roots.iter().enumerate() {
        if number[r] == usize::MAX {
            number[r] = reps.len();
            reps.push(i);
        }
    }
    (roots.iter().map(|&r| number[r]).collect(), reps)
}

/// The orbit complex of `x` under the group generated by `generators`.
/// An edge mapped to itself reversed becomes a folded edge. Orbit labels are
/// the least label in the orbit.
pub fn quotient_complex(x: &CellComplex, generators: &[ComplexMap]) -> Result<CellComplex, QuotientError> {
    for (i, g) in generators.iter().enumerate() {
        if !x.is_automorphism(g) {
            return Err(QuotientError::NotAutomorphism(i));
        }
    }
    let mut vparent: Vec<usize> = (0..x.vertices.len()).collect();
    let mut eparent: Vec<(usize, bool)> = (0..x.edges.len()).map(|e| (e, false)).collect();
    let mut fparent: Vec<usize> = (0..x.faces.len()).collect();
    let mut folded_root = vec![false; x.edges.len()];
    for g in generators {
        for (v, &w) in g.vertices.iter().enumerate() {
            let (a, b) = (find(&mut vparent, v), find(&mut vparent, w));
            vparent[a.max(b)] = a.min(b);
        }
        for (e, &(img, flip)) in g.edges.iter().enumerate() {
            let (ra, pa) = find_parity(&mut eparent, e);
            let (rb, pb) = find_parity(&mut eparent, img);
            if ra == rb {
                if pa ^ pb != flip {
                    folded_root[ra] = true;
                }
            } else {
                let (lo, hi) = (ra.min(rb), ra.max(rb));
                eparent[hi] = (lo, pa ^ pb ^ flip);
                folded_root[lo] |= folded_root[hi];
            }
        }
        for (f, &(img, _, _)) in g.faces.iter().enumerate() {
            let (a, b) = (find(&mut fparent, f), find(&mut fparent, img));
            fparent[a.max(b)] = a.min(b);
        }
    }
    let vroots: Vec<usize> = (0..x.vertices.len()).map(|v| find(&mut vparent, v)).collect();
    let eroots: Vec<(usize, bool)> = (0..x.edges.len()).map(|e| find_parity(&mut eparent, e)).collect();
    let froots: Vec<usize> = (0..x.faces.len()).map(|f| find(&mut fparent, f)).collect();
    let (vnum, vreps) = orbit_numbers(&vroots);
    let (enum_, ereps) = orbit_numbers(&eroots.iter().map(|r| r.0).collect::<Vec<_>>());
    let (_, freps) = orbit_numbers(&froots);

    let mut vertices: Vec<Option<VertexLabel>> = vec![None; vreps.len()];
    for (v, label) in x.vertices.iter().enumerate() {
        if let Some(l) = label {
            let slot = &mut vertices[vnum[v]];
            *slot = Some(slot.map_or(*l, |m| m.min(*l)));
        }
    }
    let edges = ereps
        .iter()
        .map(|&e| {
            // The representative is the orbit root, which has parity 0.
            let [a, b] = x.edges[e];
            [vnum[a], vnum[b]]
        })
        .collect();
    let folded = ereps.iter().map(|&e| folded_root[eroots[e].0]).collect::<Vec<bool>>();
    let faces = freps
        .iter()
        .map(|&f| {
            x.faces[f]
                .iter()
                .map(|s| {
                    let (_, parity) = eroots[s.edge];
                    let q = enum_[s.edge];
                    Side { edge: q, reversed: if folded[q] { false } else { s.reversed ^ parity } }
                })
                .collect()
        })
        .collect();
    Ok(CellComplex { vertices, edges, faces, folded })
}

/// The sphere with O at 0, A at ∞, W_i at the N-th roots of unity, cut along
/// the rays through the 2N-th roots of unity.
///
/// Vertices are O, A, W_0..W_{N-1}; edges are O–W_i, W_i–A and O–A_i (the
/// ray between W_i and W_{i+1}); face 2i lies between the ray through W_i
/// and ray i, face 2i+1 between ray i and the ray through W_{i+1}.
pub fn model_sphere(n: usize) -> CellComplex {
    assert!(n >= 3, "model sphere needs N >= 3");
    let (o, a) = (0, 1);
    let w = |i: usize| 2 + i % n;
    let mut vertices = vec![Some(VertexLabel::O), Some(VertexLabel::A)];
    vertices.extend(std::iter::repeat_n(Some(VertexLabel::W), n));
    let mut edges = Vec::with_capacity(3 * n);
    for i in 0..n {
        edges.push([o, w(i)]);
    }
    for i in 0..n {
        edges.push([w(i), a]);
    }
    for _ in 0..n {
        edges.push([o, a]);
    }
    let ow = |i: usize| i % n;
    let wa = |i: usize| n + i % n;
    let oa = |i: usize| 2 * n + i % n;
    let fwd = |edge| Side { edge, reversed: false };
    let back = |edge| Side { edge, reversed: true };
    let mut faces = Vec::with_capacity(2 * n);
    for i in 0..n {
        faces.push(vec![fwd(ow(i)), fwd(wa(i)), back(oa(i))]);
        faces.push(vec![fwd(oa(i)), back(wa(i + 1)), back(ow(i + 1))]);
    }
    CellComplex { vertices, edges, faces, folded: vec![false; 3 * n] }
}

/// An isomorphism from `x` to `y`, found by sending face 0 of `x` to every
/// face position of `y` in both directions and propagating across edges.
pub fn complex_isomorphic(x: &CellComplex, y: &CellComplex) -> Option<ComplexMap> {
    if x.vertices.len() != y.vertices.len() || x.edges.len() != y.edges.len() || x.faces.len() != y.faces.len() {
        return None;
    }
    if x.faces.is_empty() {
        return None;
    }
    let (xinc, yinc) = (x.incidence(), y.incidence());
    let len0 = x.faces[0].len();
    for g in 0..y.faces.len() {
        if y.faces[g].len() != len0 {
            continue;
        }
        for offset in 0..len0 {
            for reversed in [false, true] {
                if let Some(map) = flood(x, y, &xinc, &yinc, (g, offset, reversed)) {
                    return Some(map);
                }
            }
        }
    }
    None
}

fn flood(
    x: &CellComplex,
    y: &CellComplex,
    xinc: &[Vec<(usize, usize)>],
    yinc: &[Vec<(usize, usize)>],
    seed: (usize, usize, bool),
) -> Option<ComplexMap> {
    let mut faces: Vec<Option<(usize, usize, bool)>> = vec![None; x.faces.len()];
    let mut used = vec![false; y.faces.len()];
    faces[0] = Some(seed);
    used[seed.0] = true;
    let mut queue = vec![0];
    let position = |len: usize, (offset, reversed): (usize, bool), i: usize| {
        if reversed {
            (offset + len - i % len) % len
        } else {
            (offset + i) % len
        }
    };
    while let Some(f) = queue.pop() {
        let (g, offset, reversed) = faces[f].expect("queued faces are mapped");
        for (i, s) in x.faces[f].iter().enumerate() {
            let j = position(y.faces[g].len(), (offset, reversed), i);
            let t = y.faces[g][j];
            // The other side of the edge in x must go to the other side of its image.
            let other_x = xinc[s.edge].iter().copied().find(|&h| h != (f, i));
            let other_y = yinc[t.edge].iter().copied().find(|&h| h != (g, j));
            match (other_x, other_y) {
                (None, None) => {}
                (Some((h, k)), Some((hy, ky))) => {
                    let sk = x.faces[h][k];
                    let tk = y.faces[hy][ky];
                    // Orientation of the edge map, read off side (f, i).
                    let flip = s.reversed ^ t.reversed ^ reversed;
                    let rev_h = sk.reversed ^ tk.reversed ^ flip;
                    let hl = y.faces[hy].len();
                    if hl != x.faces[h].len() {
                        return None;
                    }
                    let off_h = if rev_h { (ky + k) % hl } else { (ky + hl - k % hl) % hl };
                    match faces[h] {
                        Some(existing) if existing != (hy, off_h, rev_h) => return None,
                        Some(_) => {}
                        None => {
                            if used[hy] {
                                return None;
                            }
                            used[hy] = true;
                            faces[h] = Some((hy, off_h, rev_h));
                            queue.push(h);
                        }
                    }
                }
                _ => return None,
            }
        }
    }
    let faces: Vec<(usize, usize, bool)> = faces.into_iter().collect::<Option<_>>()?;
    let mut vertices = vec![usize::MAX; x.vertices.len()];
    let mut edges = vec![(usize::MAX, false); x.edges.len()];
    for (f, sides) in x.faces.iter().enumerate() {
        let (g, offset, reversed) = faces[f];
        for (i, s) in sides.iter().enumerate() {
            let t = y.faces[g][position(y.faces[g].len(), (offset, reversed), i)];
            let flip = s.reversed ^ t.reversed ^ reversed;
            edges[s.edge] = (t.edge, flip);
            let [a, b] = x.edges[s.edge];
            let [c, d] = y.edges[t.edge];
            let (ia, ib) = if flip { (d, c) } else { (c, d) };
            for (v, w) in [(a, ia), (b, ib)] {
                if vertices[v] != usize::MAX && vertices[v] != w {
                    return None;
                }
                vertices[v] = w;
            }
        }
    }
    let map = ComplexMap { vertices, edges, faces };
    x.maps_onto(y, &map).then_some(map)
}
