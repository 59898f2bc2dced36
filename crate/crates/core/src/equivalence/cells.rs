//! Merging cocircular triangles into Delaunay cells, and the canonical
//! labelling of the resulting cell complex.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::cyclotomic::CycloNum;
use crate::surface::Polygon;

use super::mesh::{HalfEdge, Mesh};

/// Cells with arbitrary labels. Positions are relative to each cell's vertex 0.
pub(crate) struct RawCells {
    pub edges: Vec<Vec<CycloNum>>,
    pub partner: Vec<Vec<HalfEdge>>,
    pub points: Vec<(usize, CycloNum)>,
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

/// Groups triangles across cocircular edges. The mesh must be Delaunay.
pub(crate) fn merge_cells(mesh: &Mesh) -> RawCells {
    let n = mesh.tris.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let internal: Vec<[bool; 3]> = (0..n).map(|t| [0, 1, 2].map(|e| mesh.circle_test(t, e) == Ordering::Equal)).collect();
    for t in 0..n {
        for e in 0..3 {
            let (u, _) = mesh.partner((t, e));
            if u > t && internal[t][e] {
                let (a, b) = (find(&mut parent, t), find(&mut parent, u));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let comp: Vec<usize> = (0..n).map(|t| find(&mut parent, t)).collect();

    let mut cell_of = vec![usize::MAX; n];
    let mut shift: Vec<Option<CycloNum>> = vec![None; n];
    let mut boundaries: Vec<Vec<(HalfEdge, CycloNum)>> = Vec::new();
    for root in 0..n {
        if comp[root] != root {
            continue;
        }
        let c = boundaries.len();
        cell_of[root] = c;
        shift[root] = Some(CycloNum::zero(mesh.order));
        let mut boundary: Vec<(HalfEdge, CycloNum)> = (0..3).map(|e| ((root, e), mesh.vertex(root, e).clone())).collect();
        loop {
            let grow = boundary.iter().position(|&((t, e), _)| internal[t][e] && cell_of[mesh.partner((t, e)).0] == usize::MAX);
            let Some(k) = grow else { break };
            let ((t, e), start) = boundary[k].clone();
            let (u, f) = mesh.partner((t, e));
            let s = &start - mesh.vertex(u, f + 1);
            let replacement = [
                ((u, (f + 1) % 3), start),
                ((u, (f + 2) % 3), mesh.vertex(u, f + 2) + &s),
            ];
            cell_of[u] = c;
            shift[u] = Some(s);
            boundary.splice(k..=k, replacement);
        }
        debug_assert!(
            Polygon::new(boundary.iter().map(|(_, v)| v.clone()).collect()).is_strictly_convex(),
            "merged Delaunay cell is not a convex polygon"
        );
        boundaries.push(boundary);
    }

    let mut location: HashMap<HalfEdge, HalfEdge> = HashMap::new();
    for (c, boundary) in boundaries.iter().enumerate() {
        for (k, (h, _)) in boundary.iter().enumerate() {
            location.insert(*h, (c, k));
        }
    }
    let mut edges = Vec::with_capacity(boundaries.len());
    let mut partner = Vec::with_capacity(boundaries.len());
    let mut origin = Vec::with_capacity(boundaries.len());
    for boundary in &boundaries {
        let m = boundary.len();
        edges.push((0..m).map(|k| &boundary[(k + 1) % m].1 - &boundary[k].1).collect());
        partner.push(boundary.iter().map(|(h, _)| location[&mesh.partner(*h)]).collect());
        origin.push(boundary[0].1.clone());
    }
    let points = mesh
        .points
        .iter()
        .map(|(t, pos)| {
            let c = cell_of[*t];
            let s = shift[*t].as_ref().expect("every triangle belongs to a cell");
            (c, pos + s - &origin[c])
        })
        .collect();
    RawCells { edges, partner, points }
}

/// A relabelling: cells in new order, each with the old index of its new edge 0.
pub(crate) struct Labelling {
    pub order: Vec<(usize, usize)>,
    comb: Vec<usize>,
}

/// Breadth-first serialization starting from cell `start.0` with its edge
/// `start.1` as new edge 0.
fn serialize(edges: &[Vec<CycloNum>], partner: &[Vec<HalfEdge>], start: HalfEdge) -> Labelling {
    let n = edges.len();
    let mut label = vec![usize::MAX; n];
    let mut rot = vec![0; n];
    let mut order = vec![start];
    label[start.0] = 0;
    rot[start.0] = start.1;
    let mut comb = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let (c, r) = order[i];
        let len = edges[c].len();
        comb.push(len);
        for k in 0..len {
            let (pc, pe) = partner[c][(k + r) % len];
            if label[pc] == usize::MAX {
                label[pc] = order.len();
                rot[pc] = pe;
                order.push((pc, pe));
            }
            let plen = edges[pc].len();
            comb.push(label[pc]);
            comb.push((pe + plen - rot[pc]) % plen);
        }
        i += 1;
    }
    Labelling { order, comb }
}

fn cmp_geometry(edges: &[Vec<CycloNum>], a: &Labelling, b: &Labelling) -> Ordering {
    for (&(ca, ra), &(cb, rb)) in a.order.iter().zip(&b.order) {
        let len = edges[ca].len();
        for k in 0..len {
            let o = edges[ca][(k + ra) % len].cmp_repr(&edges[cb][(k + rb) % len]);
            if o != Ordering::Equal {
                return o;
            }
        }
    }
    Ordering::Equal
}

/// The lexicographically least serialization over all starting half-edges,
/// comparing combinatorics first and edge vectors second.
pub(crate) fn canonical_labelling(edges: &[Vec<CycloNum>], partner: &[Vec<HalfEdge>]) -> Labelling {
    let mut best: Vec<Labelling> = Vec::new();
    for c in 0..edges.len() {
        for e in 0..edges[c].len() {
            let l = serialize(edges, partner, (c, e));
            match best.first().map(|b| l.comb.cmp(&b.comb)) {
                None | Some(Ordering::Equal) => best.push(l),
                Some(Ordering::Less) => best = vec![l],
                Some(Ordering::Greater) => {}
            }
        }
    }
    best.into_iter()
        .reduce(|acc, l| if cmp_geometry(edges, &l, &acc) == Ordering::Less { l } else { acc })
        .expect("a surface has at least one cell")
}
