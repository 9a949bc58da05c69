//! Small numerical kernels shared by the analytic modules.

pub mod cplx;
pub mod ode;
pub mod quad;
pub mod roots;
pub mod special;
