//! Exact symbolic computation in the quantized coordinate rings C_q[M_n] and
//! C_q[SU_n], the first-order holomorphic calculus on quantum Grassmannians,
//! and the machine checks built on top of them: a quantum Borel-Weil
//! verification for line bundles over C_q[Gr(r, n)] at small n, together
//! with the supporting identities (Goodearl support laws, quantum Laplace
//! expansions, Killing-form evaluations, twisted Leibniz ladders).
//!
//! Everything runs over the exact field Q(q); no numerics are involved
//! anywhere, so a passing identity holds for generic q.  The algebra layers
//! are generic over [`scalar::QScalar`]; the concrete aliases below fix the
//! two scalar lanes used in practice.

pub mod calculus;
pub mod comodules;
pub mod error;
pub mod linalg;
pub mod minors;
pub mod ncalg;
pub mod rform;
pub mod scalar;
pub mod borelweil;
pub mod twisted;
pub mod report;
pub mod checks;

pub use error::{Error, Result};

/// The exact coefficient field Q(q), the default scalar lane.
pub type Q = scalar::RatFunc;

/// Scalar lane for the classical limit q = 1 (cross-check only).
pub type ClassicalQ = num_rational::BigRational;
