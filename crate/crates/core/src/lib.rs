//! Exact-arithmetic calculus for orbit spaces of Anosov-like flows.
//!
//! The crate models the combinatorial and rational-geometric bookkeeping that
//! comes up when manipulating Birkhoff sections and R-covered orbit spaces:
//!
//! * [`torus_homology`]: homology classes on boundary tori, the intersection
//!   form, integer surgery on boundary slopes, and admissibility checks for
//!   boundary invariants of sections.
//! * [`strip_plane`]: the three bifoliated plane models (trivial plane and the
//!   two twisted strips), leaf intersection, quadrant completeness, and
//!   lozenge detection.
//! * [`drift`]: winding numbers and drift of curves in an infinite cyclic
//!   cover punctured at lifted periodic orbits, plus the doubling rectangle
//!   construction inside a lozenge.
//! * [`holonomy`]: transverse-measure holonomy of a singular foliation with
//!   dilation `lambda`, as formal Laurent polynomials in `lambda` with
//!   nonnegative rational coefficients.
//! * [`sections`]: certificate-level bookkeeping for partial and Birkhoff
//!   sections sharing boundary orbits: sign classification, the linking
//!   equation, pairwise exclusion arguments, and positivization by surgery.
//!
//! All geometry is exact: coordinates are arbitrary-precision rationals and
//! every verdict is decided by integer or rational comparison, never by a
//! float tolerance.

pub mod drift;
pub mod holonomy;
pub mod rational;
pub mod sections;
pub mod strip_plane;
pub mod torus_homology;

pub use rational::{rat, Rational};
