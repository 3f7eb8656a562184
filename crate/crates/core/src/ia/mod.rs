//! Triangulated integral-affine surfaces given by half-edge d-values:
//! pseudo-fans, boundary surgery bookkeeping, and combinatorial checks on
//! Type III dual complexes and their cyclic quotients.

pub mod complex;
pub mod fan;
pub mod symmetry;
pub mod validate;

pub use complex::{Edge, Face, IAComplex, Vertex, OCTAHEDRON_FACES, TETRAHEDRON_FACES};
pub use fan::{
    boundary_internal_blow_up, boundary_node_smoothing, pseudo_fan, vertex_is_toric, PseudoFan,
    SurgeredBoundary, SurgeryKind, SurgeryRecord,
};
pub use symmetry::{cyclic_symmetry, FixedCells, SymmetryReport};
pub use validate::{validate_type_iii, CheckKind, CheckResult, ValidationReport, VertexReport};
