//! Exact flat geometry of spingon and half-spingon translation surfaces.
//!
//! Every coordinate is an element of a cyclotomic field, and every geometric
//! decision goes through exact sign predicates.

pub mod constructors;
pub mod cyclotomic;
pub mod equivalence;
pub mod quotient;
pub mod surface;

pub use constructors::{
    build_family, double_ngon, half_spingon, regular_ngon, spingon, unfold_right_triangle, BuildError, Family,
    FamilySpec,
};
pub use cyclotomic::{incircle, orientation, ComplexInterval, CycloError, CycloNum, DyadicInterval};
pub use equivalence::{
    delaunay, equivalent_up_to, find_symmetry, fixed_points, is_hyperelliptic_flat, translation_equivalent, triangulate,
    AffineSymmetry, CanonicalDecomposition, FixedPoint, FixedPointReport, Matching, Mode, PointLocation, SymmetryError,
    TriangulatedSurface,
};
pub use quotient::{
    complex_isomorphic, diagonal_triangulation, invariant_under, model_sphere, quotient_complex,
    single_diagonal_triangulation, subdivide, transport, CellComplex, ComplexMap, QuotientError, Side, SurfaceComplex,
    VertexLabel,
};
pub use surface::{
    make_surface, ConePoint, EdgeRef, Gluing, LoadError, Polygon, StratumSignature, SurfaceError, TranslationSurface,
};
