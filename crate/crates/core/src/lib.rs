//! Exact computations in Jacobian rings of quasi-smooth surfaces in weighted
//! projective 3-space, and the period-map differential they encode.
//!
//! The pipeline: [`polyalg`] builds polynomials, [`groebner`] reduces the
//! Jacobian ideal, [`jacring`] exposes R(f) as a graded object, [`exactla`]
//! supplies exact ranks and pencil certificates, and [`hodge`] turns the
//! graded slices into Hodge numbers, domain dimensions, the period
//! differential and the non-geodesy certificate.

pub mod error;
pub mod exactla;
pub mod groebner;
pub mod hodge;
pub mod jacring;
pub mod polyalg;

pub use error::{HodgeError, LinalgError, PolyError, RingError};
pub use exactla::{PencilMode, PencilOptions, PencilRankCertificate, RationalMatrix};
pub use groebner::{GroebnerBasis, MonomialOrder, OrderKind};
pub use jacring::JacobianRingModel;
pub use polyalg::{Monomial, Rational, WeightSystem, WeightedPolynomial};
