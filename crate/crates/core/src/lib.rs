//! Generic orthogonal polytopes: read-once sign diagrams for their vertex
//! cones, exact volume and Euler characteristic from vertex data, and
//! constructive genericization.

pub mod floral;
pub mod genericize;
pub mod io;
pub mod lattice;
pub mod spd;

pub use floral::{recognize, FloralVertex, OrthantSet, Recognition};
pub use genericize::{hausdorff_distance, random_generic, thicken, CubeFace};
pub use lattice::{EulerMethod, GenericCheck, IntegralOrthotope, VolumeMethod};
pub use spd::{Sign, SignedSpd, Spd};
