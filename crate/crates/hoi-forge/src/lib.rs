//! hoi-forge — human-anchored 4D human-object interaction refinement at desk scale.
//!
//! The crate turns a coarse human/object trajectory plus per-frame mask and
//! depth observations into a contact-consistent, physically projected
//! interaction trajectory, and scores the result with surface and temporal
//! metrics. Everything runs on synthetic scenes without neural models: pose
//! proposals, contact sets, and observations are ingested from files or
//! generated procedurally.
//!
//! Pipeline stages (see [`pipeline::run_pipeline`]):
//!
//! 1. **Anchor** — calibrate monocular depth scale against the human mesh
//!    ([`anchor`]).
//! 2. **Object follow** — estimate object metric scale from silhouette/depth
//!    agreement and track its pose with a health-gated state machine
//!    ([`track`]).
//! 3. **Contact refinement** — four-stage first-order optimization of object
//!    pose, selected body joints, and hand coefficients against contact, SDF,
//!    penetration, smoothness, and anchor losses ([`contact`]).
//! 4. **Physics projection** — PD-controlled reduced rigid-body rollout with a
//!    derivative-free residual search ([`phys`]).
//! 5. **Evaluation** — first-frame alignment, chamfer, acceleration, and
//!    penetration metrics ([`eval`]).
//!
//! Geometry primitives (poses, meshes, SDF grids, a software rasterizer,
//! chamfer distance, convex hulls) live in [`geom`]; the articulated test body
//! in [`body`]; file formats (OBJ, PFM, PGM, JSON, CSV) in [`io`].

pub mod anchor;
pub mod body;
pub mod cli;
pub mod contact;
pub mod eval;
pub mod geom;
pub mod io;
pub mod phys;
pub mod pipeline;
pub mod track;
