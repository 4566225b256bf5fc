//! Small numerical support layer: double-double arithmetic, Gauss-Legendre
//! quadrature, an adaptive Runge-Kutta integrator, bracketed root finding,
//! truncated power series, and a bounded thread pool helper.

pub mod dd;
pub mod ode;
pub mod par;
pub mod quad;
pub mod roots;
pub mod series;
