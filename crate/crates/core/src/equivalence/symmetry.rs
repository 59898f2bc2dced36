//! Affine self-maps with unit derivative, their fixed points, and the
//! hyperelliptic involution.

use serde::Serialize;
use thiserror::Error;

use crate::cyclotomic::CycloNum;
use crate::surface::TranslationSurface;

use super::{CanonicalDecomposition, PointLocation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("the symmetry composed with itself is not the identity")]
    NotInvolution,
    #[error("the identity map has no isolated fixed points")]
    Identity,
    #[error("the symmetry has {found} cells but the decomposition has {expected}")]
    WrongDecomposition { expected: usize, found: usize },
}

/// An automorphism of a canonical decomposition. Cell i goes to cell
/// `cell_map[i].0` with edge e landing on edge e + `cell_map[i].1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AffineSymmetry {
    pub derivative: CycloNum,
    pub cell_map: Vec<(usize, usize)>,
}

/// A fixed point, in terms of the canonical cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FixedPoint {
    Vertex { class: usize },
    EdgeMidpoint { cell: usize, edge: usize },
    CellInterior { cell: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixedPointReport {
    pub count: usize,
    pub locations: Vec<FixedPoint>,
}

impl AffineSymmetry {
    pub fn identity(cd: &CanonicalDecomposition) -> AffineSymmetry {
        AffineSymmetry { derivative: CycloNum::one(1), cell_map: (0..cd.cell_count()).map(|c| (c, 0)).collect() }
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &AffineSymmetry, cd: &CanonicalDecomposition) -> AffineSymmetry {
        let cell_map = first
            .cell_map
            .iter()
            .map(|&(j, r1)| {
                let (k, r2) = self.cell_map[j];
                (k, (r1 + r2) % cd.cell(k).len())
            })
            .collect();
        AffineSymmetry { derivative: &self.derivative * &first.derivative, cell_map }
    }

    pub fn power(&self, n: u32, cd: &CanonicalDecomposition) -> AffineSymmetry {
        (0..n).fold(AffineSymmetry::identity(cd), |acc, _| self.compose(&acc, cd))
    }

    pub fn is_identity(&self) -> bool {
        self.derivative == CycloNum::one(1) && self.cell_map.iter().enumerate().all(|(i, &(j, r))| i == j && r == 0)
    }

    /// Image of half-edge (or corner) `e` of cell `c`.
    pub fn map_half_edge(&self, c: usize, e: usize, cd: &CanonicalDecomposition) -> (usize, usize) {
        let (d, r) = self.cell_map[c];
        (d, (e + r) % cd.cell(d).len())
    }

    /// Image of a located point.
    pub fn map_location(&self, loc: &PointLocation, cd: &CanonicalDecomposition) -> PointLocation {
        match loc {
            PointLocation::Vertex { class } => {
                let &(c, v) = cd.vertex_classes()[*class].first().expect("classes are nonempty");
                let (d, w) = self.map_half_edge(c, v, cd);
                PointLocation::Vertex { class: cd.class_of_corner(d, w) }
            }
            PointLocation::Edge { cell, edge, offset } => {
                let (d, f) = self.map_half_edge(*cell, *edge, cd);
                cd.edge_location(d, f, &self.derivative * offset)
            }
            PointLocation::Interior { cell, offset } => {
                let (d, r) = self.cell_map[*cell];
                let corner = &cd.vertices(d)[r];
                cd.locate(d, &(corner + &(&self.derivative * offset)))
            }
        }
    }
}

impl CanonicalDecomposition {
    /// A symmetry with the given derivative, trying seeds in canonical order.
    pub fn find_symmetry(&self, derivative: &CycloNum) -> Option<AffineSymmetry> {
        self.half_edges()
            .find_map(|to| self.flood_match((0, 0), self, to, derivative))
            .map(|cell_map| AffineSymmetry { derivative: derivative.clone(), cell_map })
    }

    /// Every symmetry with derivative of modulus 1.
    pub fn symmetries(&self) -> Vec<AffineSymmetry> {
        let u = &self.cell(0)[0];
        let u_norm = u.norm_squared();
        self.half_edges()
            .filter_map(|(c, e)| {
                let v = &self.cell(c)[e];
                if v.norm_squared() != u_norm {
                    return None;
                }
                let derivative = v.checked_div(u).expect("edge vectors are nonzero");
                self.flood_match((0, 0), self, (c, e), &derivative)
                    .map(|cell_map| AffineSymmetry { derivative, cell_map })
            })
            .collect()
    }

    /// Every symmetry with derivative −1.
    pub fn half_turns(&self) -> Vec<AffineSymmetry> {
        let minus_one = -CycloNum::one(1);
        let target = -&self.cell(0)[0];
        self.half_edges()
            .filter(|&(c, e)| self.cell(c)[e] == target)
            .filter_map(|to| self.flood_match((0, 0), self, to, &minus_one))
            .map(|cell_map| AffineSymmetry { derivative: minus_one.clone(), cell_map })
            .collect()
    }

    /// An involution with derivative −1 and 2g + 2 fixed points, for g ≥ 2.
    pub fn hyperelliptic_involution(&self) -> Option<(AffineSymmetry, FixedPointReport)> {
        let s = self.to_surface();
        let genus = s.genus() as usize;
        if genus < 2 {
            return None;
        }
        self.half_turns().into_iter().find_map(|sigma| {
            let report = fixed_points(self, &sigma).ok()?;
            (report.count == 2 * genus + 2).then_some((sigma, report))
        })
    }
}

/// Fixed points of an involution of `cd` other than the identity.
pub fn fixed_points(cd: &CanonicalDecomposition, sigma: &AffineSymmetry) -> Result<FixedPointReport, SymmetryError> {
    if sigma.cell_map.len() != cd.cell_count() {
        return Err(SymmetryError::WrongDecomposition { expected: cd.cell_count(), found: sigma.cell_map.len() });
    }
    if sigma.is_identity() {
        return Err(SymmetryError::Identity);
    }
    if !sigma.compose(sigma, cd).is_identity() {
        return Err(SymmetryError::NotInvolution);
    }
    let mut locations = Vec::new();
    for (class, corners) in cd.vertex_classes().iter().enumerate() {
        let (c, v) = corners[0];
        let (d, w) = sigma.map_half_edge(c, v, cd);
        if cd.class_of_corner(d, w) == class {
            locations.push(FixedPoint::Vertex { class });
        }
    }
    for (c, e) in cd.half_edges() {
        let partner = cd.partner(c, e);
        if (c, e) < partner && sigma.map_half_edge(c, e, cd) == partner {
            locations.push(FixedPoint::EdgeMidpoint { cell: c, edge: e });
        }
    }
    for (c, &(d, r)) in sigma.cell_map.iter().enumerate() {
        if c == d && r != 0 {
            locations.push(FixedPoint::CellInterior { cell: c });
        }
    }
    Ok(FixedPointReport { count: locations.len(), locations })
}

/// The hyperelliptic involution of `s`, if `s` has genus at least 2 and one
/// exists. The symmetry refers to `CanonicalDecomposition::of(s)`.
pub fn is_hyperelliptic_flat(s: &TranslationSurface) -> Option<(AffineSymmetry, FixedPointReport)> {
    CanonicalDecomposition::of(s).hyperelliptic_involution()
}
