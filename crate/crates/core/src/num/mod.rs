//! Numeric foundations: nestable dual numbers, smooth cutoffs, quadrature
//! and the adaptive ODE integrator.

pub mod cutoff;
pub mod dual;
pub mod ode;
pub mod quad;
