//! Mutable triangulations used while computing Delaunay decompositions.
//!
//! Each triangle keeps its own coordinates; gluings are translations. A list
//! of tracked points follows every flip and retriangulation so that points of
//! the input surface can be located in the final cells.

use std::cmp::Ordering;

use num_rational::BigRational;

use crate::cyclotomic::{incircle, orientation, CycloNum};
use crate::surface::{make_surface, wedge_contains, EdgeRef, Gluing, Polygon, TranslationSurface};

pub(crate) type HalfEdge = (usize, usize);

#[derive(Clone, Debug)]
pub(crate) struct Tri {
    pub v: [CycloNum; 3],
    pub adj: [HalfEdge; 3],
}

#[derive(Clone, Debug)]
pub(crate) struct Mesh {
    pub order: u32,
    pub tris: Vec<Tri>,
    /// Tracked points: triangle index and position in that triangle's frame.
    pub points: Vec<(usize, CycloNum)>,
}

/// Upper bound on flips spent removing one regular vertex.
const ERASE_FLIP_CAP: usize = 10_000;
/// Upper bound on displacements of one regular vertex.
const MAX_NUDGES: usize = 32;
/// Upper bound on steps when walking a tracked point to its triangle.
const WALK_CAP: usize = 10_000;

fn left_or_on(a: &CycloNum, b: &CycloNum, p: &CycloNum) -> bool {
    orientation(a, b, p) != Ordering::Less
}

fn in_closed_triangle(v: &[CycloNum; 3], p: &CycloNum) -> bool {
    left_or_on(&v[0], &v[1], p) && left_or_on(&v[1], &v[2], p) && left_or_on(&v[2], &v[0], p)
}

impl Mesh {
    /// Fan-triangulates every polygon from its vertex 0. Points are given as
    /// (polygon, position in the polygon's coordinates).
    pub fn from_surface(s: &TranslationSurface, points: &[(usize, CycloNum)]) -> Mesh {
        let order = s.field_order();
        let mut base = Vec::with_capacity(s.polygons().len());
        let mut count = 0;
        for p in s.polygons() {
            base.push(count);
            count += p.len() - 2;
        }
        let home = |e: EdgeRef| -> HalfEdge {
            let n = s.polygons()[e.polygon].len();
            let b = base[e.polygon];
            match e.edge {
                0 => (b, 0),
                x if x == n - 1 => (b + n - 3, 2),
                x => (b + x - 1, 1),
            }
        };
        let mut tris = Vec::with_capacity(count);
        for (pi, p) in s.polygons().iter().enumerate() {
            let n = p.len();
            for j in 0..n - 2 {
                let v = [p.vertex(0).clone(), p.vertex(j + 1).clone(), p.vertex(j + 2).clone()];
                let t = base[pi] + j;
                let mut adj = [(usize::MAX, 0); 3];
                if j > 0 {
                    adj[0] = (t - 1, 2);
                }
                if j + 3 < n {
                    adj[2] = (t + 1, 0);
                }
                tris.push(Tri { v, adj });
            }
            for e in 0..n {
                let here = home(EdgeRef::new(pi, e));
                tris[here.0].adj[here.1] = home(s.partner(EdgeRef::new(pi, e)));
            }
        }
        let mut mesh = Mesh { order, tris, points: Vec::new() };
        for (pi, pos) in points {
            let pos = pos.lift(order);
            let n = s.polygons()[*pi].len();
            let t = (0..n - 2)
                .map(|j| base[*pi] + j)
                .find(|&t| in_closed_triangle(&mesh.tris[t].v, &pos))
                .expect("tracked point lies outside its polygon");
            mesh.points.push((t, pos));
        }
        mesh
    }

    /// The triangles as a surface, one polygon per triangle.
    pub fn to_surface(&self) -> TranslationSurface {
        let polygons = self.tris.iter().map(|t| Polygon::new(t.v.to_vec())).collect();
        let mut gluings = Vec::with_capacity(self.tris.len() * 3 / 2);
        for t in 0..self.tris.len() {
            for e in 0..3 {
                let h = self.partner((t, e));
                if (t, e) < h {
                    gluings.push(Gluing::new(EdgeRef::new(t, e), EdgeRef::new(h.0, h.1)));
                }
            }
        }
        make_surface(polygons, gluings).expect("mesh triangles form a valid surface")
    }

    pub fn vertex(&self, t: usize, i: usize) -> &CycloNum {
        &self.tris[t].v[i % 3]
    }

    pub fn partner(&self, h: HalfEdge) -> HalfEdge {
        self.tris[h.0].adj[h.1]
    }

    /// Translation taking the neighbour across (t, e) into t's frame, and the
    /// neighbour's far vertex in t's frame.
    fn develop(&self, t: usize, e: usize) -> (CycloNum, CycloNum) {
        let (u, f) = self.partner((t, e));
        let delta = self.vertex(t, e) - self.vertex(u, f + 1);
        let far = self.vertex(u, f + 2) + &delta;
        (delta, far)
    }

    pub(crate) fn circle_test(&self, t: usize, e: usize) -> Ordering {
        let (_, far) = self.develop(t, e);
        let v = &self.tris[t].v;
        incircle(&v[0], &v[1], &v[2], &far).expect("mesh triangles are nondegenerate")
    }

    /// Flips the edge (t, e). The quadrilateral must be strictly convex.
    fn flip(&mut self, t: usize, e: usize) {
        let (u, f) = self.partner((t, e));
        debug_assert_ne!(t, u, "an edge cannot border one triangle twice");
        let (delta, d) = self.develop(t, e);
        let a = self.vertex(t, e).clone();
        let b = self.vertex(t, e + 1).clone();
        let c = self.vertex(t, e + 2).clone();
        // New triangles: slot t = (C, A, D), slot u = (D, B, C); edge 2 is the new diagonal.
        let moved: [(HalfEdge, HalfEdge); 4] = [
            ((t, (e + 1) % 3), (u, 1)),
            ((t, (e + 2) % 3), (t, 0)),
            ((u, (f + 1) % 3), (t, 1)),
            ((u, (f + 2) % 3), (u, 0)),
        ];
        let old: Vec<HalfEdge> = moved.iter().map(|&(h, _)| self.partner(h)).collect();
        let remap = |h: HalfEdge| moved.iter().find(|&&(o, _)| o == h).map_or(h, |&(_, n)| n);
        self.tris[t].v = [c.clone(), a, d.clone()];
        self.tris[u].v = [d.clone(), b, c.clone()];
        self.tris[t].adj[2] = (u, 2);
        self.tris[u].adj[2] = (t, 2);
        for (k, &(_, new)) in moved.iter().enumerate() {
            let target = remap(old[k]);
            self.tris[new.0].adj[new.1] = target;
            self.tris[target.0].adj[target.1] = new;
        }
        for (tri, pos) in self.points.iter_mut() {
            if *tri != t && *tri != u {
                continue;
            }
            if *tri == u {
                *pos = &*pos + &delta;
            }
            *tri = if left_or_on(&d, &c, pos) { t } else { u };
        }
    }

    /// Flips edges until every edge is locally Delaunay (no strict violations).
    pub fn make_delaunay(&mut self) {
        let mut stack: Vec<HalfEdge> = (0..self.tris.len()).flat_map(|t| (0..3).map(move |e| (t, e))).collect();
        while let Some((t, e)) = stack.pop() {
            if self.circle_test(t, e) == Ordering::Greater {
                let (u, _) = self.partner((t, e));
                self.flip(t, e);
                stack.extend((0..3).flat_map(|k| [(t, k), (u, k)]));
            }
        }
    }

    /// Corner cycles around each vertex, in counterclockwise order.
    pub fn vertex_classes(&self) -> Vec<Vec<HalfEdge>> {
        let mut seen = vec![[false; 3]; self.tris.len()];
        let mut classes = Vec::new();
        for t in 0..self.tris.len() {
            for i in 0..3 {
                if seen[t][i] {
                    continue;
                }
                let mut cycle = Vec::new();
                let (mut s, mut j) = (t, i);
                while !seen[s][j] {
                    seen[s][j] = true;
                    cycle.push((s, j));
                    (s, j) = self.partner((s, (j + 2) % 3));
                }
                classes.push(cycle);
            }
        }
        classes
    }

    fn corner_angle_counts(&self, t: usize, i: usize, d: &CycloNum) -> bool {
        let p = self.vertex(t, i);
        let u = self.vertex(t, i + 1) - p;
        let w = self.vertex(t, i + 2) - p;
        wedge_contains(&u, &w, d)
    }

    /// Cone angle of a vertex class in multiples of 2π.
    pub fn angle_multiple(&self, class: &[HalfEdge]) -> usize {
        let d = CycloNum::one(self.order);
        class.iter().filter(|&&(t, i)| self.corner_angle_counts(t, i, &d)).count()
    }

    /// Removes regular vertices (cone angle 2π) until either none is left or a
    /// single vertex remains.
    pub fn erase_regular_vertices(&mut self) {
        loop {
            let classes = self.vertex_classes();
            if classes.len() <= 1 {
                return;
            }
            match classes.iter().find(|c| self.angle_multiple(c) == 1) {
                Some(c) => self.erase_vertex(c[0]),
                None => return,
            }
        }
    }

    fn class_containing(&self, corner: HalfEdge) -> Vec<HalfEdge> {
        let mut cycle = vec![corner];
        let mut cur = self.partner((corner.0, (corner.1 + 2) % 3));
        while cur != corner {
            cycle.push(cur);
            cur = self.partner((cur.0, (cur.1 + 2) % 3));
        }
        cycle
    }

    fn erase_vertex(&mut self, corner: HalfEdge) {
        let mut corner = corner;
        let mut nudges = 0;
        let mut offset = CycloNum::zero(self.order);
        for _ in 0..ERASE_FLIP_CAP {
            let star = self.class_containing(corner);
            let mut tris: Vec<usize> = star.iter().map(|&(t, _)| t).collect();
            tris.sort_unstable();
            tris.dedup();
            let has_loop = star.iter().any(|&(t, i)| star.contains(&(t, (i + 1) % 3)));
            if tris.len() == star.len() && !has_loop {
                self.replace_star(&star);
                return;
            }
            // Treat the vertex as infinitely heavy and flip a spoke that lowers it.
            let in_star = |h: HalfEdge| star.contains(&h);
            let spoke = star.iter().copied().find(|&(t, i)| {
                let (u, f) = self.partner((t, i));
                let flags = [in_star((t, (i + 1) % 3)), in_star((t, (i + 2) % 3)), in_star((u, (f + 2) % 3))];
                self.flip_is_convex(t, i) && self.lowers_heavy_vertex(t, i, flags)
            });
            match spoke {
                Some((t, i)) => {
                    self.flip(t, i);
                    // The erased vertex is A, vertex 1 of the new slot t.
                    corner = (t, 1);
                }
                None => {
                    // Degenerate position: nudge the marked point and try again.
                    assert!(nudges < MAX_NUDGES, "regular vertex cannot be erased");
                    offset = self.nudge(&star, nudges, &offset);
                    nudges += 1;
                }
            }
        }
        panic!("regular vertex not erased within {ERASE_FLIP_CAP} flips");
    }

    /// Moves a regular vertex, currently displaced by `offset` from where it
    /// started, to a small displacement in a direction that depends on
    /// `attempt`, keeping every incident triangle positively oriented.
    /// Returns the new displacement.
    fn nudge(&mut self, star: &[HalfEdge], attempt: usize, offset: &CycloNum) -> CycloNum {
        let order = self.order;
        let generic = CycloNum::one(order)
            + CycloNum::root_of_unity(order, 1).scale(&BigRational::new(1.into(), 3.into()))
            + CycloNum::root_of_unity(order, 2).scale(&BigRational::new(1.into(), 7.into()));
        let direction = generic * CycloNum::root_of_unity(order, attempt as i64);
        let mut tris: Vec<usize> = star.iter().map(|&(t, _)| t).collect();
        tris.sort_unstable();
        tris.dedup();
        let cycle = attempt / order as usize;
        let mut eps = BigRational::new(1.into(), (8 * (cycle + 1)).into());
        for _ in 0..200 {
            let target = direction.scale(&eps);
            let delta = &target - offset;
            let moved: Vec<(usize, [CycloNum; 3])> = tris
                .iter()
                .map(|&t| {
                    let v = std::array::from_fn(|i| {
                        if star.contains(&(t, i)) { self.vertex(t, i) + &delta } else { self.vertex(t, i).clone() }
                    });
                    (t, v)
                })
                .collect();
            if moved.iter().all(|(_, v)| orientation(&v[0], &v[1], &v[2]) == Ordering::Greater) {
                for (t, v) in moved {
                    self.tris[t].v = v;
                }
                for k in 0..self.points.len() {
                    if tris.contains(&self.points[k].0) {
                        let (t, x) = self.points[k].clone();
                        self.points[k] = self.walk(t, x);
                    }
                }
                return target;
            }
            eps /= BigRational::from_integer(2.into());
        }
        panic!("no valid displacement of a regular vertex");
    }

    /// Moves a point across edges until it lies in a closed triangle.
    fn walk(&self, mut t: usize, mut x: CycloNum) -> (usize, CycloNum) {
        for _ in 0..WALK_CAP {
            let v = &self.tris[t].v;
            let Some(e) = (0..3).find(|&e| orientation(&v[e], &v[(e + 1) % 3], &x) == Ordering::Less) else {
                return (t, x);
            };
            let (u, f) = self.partner((t, e));
            x = x + (self.vertex(u, f + 1) - self.vertex(t, e));
            t = u;
        }
        panic!("tracked point walk did not terminate");
    }

    /// Weighted flip test for a vertex at A with infinite weight: compares the
    /// linear interpolation of its indicator along AB and along CD at the
    /// crossing point. `flags` tells whether B, C and D are the same vertex.
    fn lowers_heavy_vertex(&self, t: usize, e: usize, flags: [bool; 3]) -> bool {
        let (_, d) = self.develop(t, e);
        let a = self.vertex(t, e);
        let b = self.vertex(t, e + 1);
        let c = self.vertex(t, e + 2);
        let k = |u: &CycloNum, w: &CycloNum| u.conj() * w - u * w.conj();
        let (ab, cd, ca) = (b - a, &d - c, c - a);
        let den = k(&ab, &cd);
        let s = k(&ca, &cd).checked_div(&den).expect("convex quadrilateral diagonals cross");
        let r = k(&ca, &ab).checked_div(&den).expect("convex quadrilateral diagonals cross");
        let one = CycloNum::one(self.order);
        let weight = |flag: bool, x: CycloNum| if flag { x } else { CycloNum::zero(self.order) };
        let along_ab = (&one - &s) + weight(flags[0], s.clone());
        let along_cd = weight(flags[1], &one - &r) + weight(flags[2], r);
        (along_ab - along_cd).sign_real() == Ordering::Greater
    }

    fn flip_is_convex(&self, t: usize, e: usize) -> bool {
        let (_, d) = self.develop(t, e);
        let a = self.vertex(t, e);
        let b = self.vertex(t, e + 1);
        let c = self.vertex(t, e + 2);
        orientation(c, a, &d) == Ordering::Greater && orientation(&d, b, c) == Ordering::Greater
    }

    /// Replaces the triangles around an embedded vertex star by a
    /// triangulation of the star's link polygon.
    fn replace_star(&mut self, star: &[HalfEdge]) {
        let d = star.len();
        let (t0, i0) = star[0];
        let center = self.vertex(t0, i0).clone();
        let shifts: Vec<CycloNum> = star.iter().map(|&(t, i)| &center - self.vertex(t, i)).collect();
        let ring: Vec<CycloNum> = star.iter().zip(&shifts).map(|(&(t, i), s)| self.vertex(t, i + 1) + s).collect();
        let outer: Vec<HalfEdge> = star.iter().map(|&(t, i)| (t, (i + 1) % 3)).collect();
        let outer_partner: Vec<HalfEdge> = outer.iter().map(|&h| self.partner(h)).collect();
        let ears = ear_clip(&ring);
        let slots: Vec<usize> = star.iter().map(|&(t, _)| t).collect();

        let find_edge = |a: usize, b: usize| -> HalfEdge {
            ears.iter()
                .enumerate()
                .find_map(|(j, tri)| (0..3).find(|&e| tri[e] == a && tri[(e + 1) % 3] == b).map(|e| (slots[j], e)))
                .expect("ear edge has a home")
        };
        let home: Vec<HalfEdge> = (0..d).map(|k| find_edge(k, (k + 1) % d)).collect();
        let remap = |h: HalfEdge| outer.iter().position(|&o| o == h).map_or(h, |k| home[k]);

        let mut relocated = Vec::new();
        for (idx, (tri, pos)) in self.points.iter().enumerate() {
            if let Some(k) = slots.iter().position(|t| t == tri) {
                relocated.push((idx, pos + &shifts[k]));
            }
        }
        for (j, tri) in ears.iter().enumerate() {
            let mut adj = [(0, 0); 3];
            for (e, slot) in adj.iter_mut().enumerate() {
                let (a, b) = (tri[e], tri[(e + 1) % 3]);
                *slot = if b == (a + 1) % d { remap(outer_partner[a]) } else { find_edge(b, a) };
            }
            self.tris[slots[j]] = Tri { v: tri.map(|k| ring[k].clone()), adj };
        }
        for k in 0..d {
            let target = remap(outer_partner[k]);
            self.tris[target.0].adj[target.1] = home[k];
        }
        for (idx, pos) in relocated {
            let j = ears
                .iter()
                .position(|tri| in_closed_triangle(&tri.map(|k| ring[k].clone()), &pos))
                .expect("tracked point left the vertex star");
            self.points[idx] = (slots[j], pos);
        }
        self.compact(&slots[d - 2..]);
    }

    /// Deletes the given triangle slots and renumbers the rest.
    fn compact(&mut self, dead: &[usize]) {
        let mut index = vec![usize::MAX; self.tris.len()];
        let mut next = 0;
        for (t, slot) in index.iter_mut().enumerate() {
            if !dead.contains(&t) {
                *slot = next;
                next += 1;
            }
        }
        let tris = std::mem::take(&mut self.tris);
        self.tris = tris
            .into_iter()
            .enumerate()
            .filter(|(t, _)| index[*t] != usize::MAX)
            .map(|(_, mut tri)| {
                for a in tri.adj.iter_mut() {
                    a.0 = index[a.0];
                    debug_assert_ne!(a.0, usize::MAX, "live triangle glued to a deleted one");
                }
                tri
            })
            .collect();
        for (t, _) in self.points.iter_mut() {
            *t = index[*t];
        }
    }
}

/// Triangulates a simple counterclockwise polygon by clipping strictly convex
/// ears that contain no other vertex.
fn ear_clip(ring: &[CycloNum]) -> Vec<[usize; 3]> {
    let mut live: Vec<usize> = (0..ring.len()).collect();
    let mut out = Vec::with_capacity(ring.len() - 2);
    while live.len() > 3 {
        let n = live.len();
        let ear = (0..n).find(|&k| {
            let (a, b, c) = (live[(k + n - 1) % n], live[k], live[(k + 1) % n]);
            if orientation(&ring[a], &ring[b], &ring[c]) != Ordering::Greater {
                return false;
            }
            let tri = [ring[a].clone(), ring[b].clone(), ring[c].clone()];
            live.iter()
                .filter(|&&x| x != a && x != b && x != c)
                .all(|&x| ring[x] != ring[a] && ring[x] != ring[b] && ring[x] != ring[c] && !in_closed_triangle(&tri, &ring[x]))
        });
        let k = ear.expect("simple polygon without an ear");
        let (a, b, c) = (live[(k + n - 1) % n], live[k], live[(k + 1) % n]);
        out.push([a, b, c]);
        live.remove(k);
    }
    out.push([live[0], live[1], live[2]]);
    out
}
