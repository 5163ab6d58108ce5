//! Minimal coorientation of plane curve shadows.
//!
//! A shadow is a generic closed curve in the plane given combinatorially by a
//! rotation system, together with its decomposition into building polygons.
//! Choosing an outward or inward side for every polygon side (a
//! coorientation) creates conflicts at double points; this crate finds the
//! minimum number of conflicts over admissible coorientations and supplies
//! the surrounding tooling: validation, holonomy, Whitney and Gauss-map
//! invariants, generators and SVG rendering.

pub mod blocks;
pub mod canon;
pub mod coorient;
pub mod embed;
pub mod error;
pub mod experiment;
pub mod format;
pub mod gauss;
pub mod generate;
pub mod model;
pub mod render;
pub mod solve;

pub use blocks::{block_graph, classify, BlockCycle, BlockGraph, Classification, Kind};
pub use canon::canonicalize;
pub use coorient::{arc_signs, conf, conflicts, holonomy, is_admissible, verify_certificate, ConflictReport, Mode, Verdict};
pub use embed::{faces, from_gauss_code, Embedding, Face, GaussCode};
pub use error::{Result, ShadowError};
pub use format::{CertificateFile, ShadowFile};
pub use model::{
    validate_shadow, Arc, ArcEnd, ArcId, Bit, Coorientation, Corner, End, Polygon, PolygonId, Shadow, Side,
    Transition, Vertex, VertexId,
};
pub use render::{layout, render_svg, Layout};
pub use solve::{mu, mu_loc, solve_bruteforce, solve_cactus, solve_tree_dp, Solution, Status};
pub use gauss::{covering_depth, gauss_obstruction, pt_bounds, rotation_number, PtBounds, TurningProfile};
pub use generate::{generate, GeneratorKind, GeneratorSpec};
