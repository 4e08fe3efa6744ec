//! Point counts on the fibers of `(x+y)(x+z)(y+z) - 8xyz = xyz / t` over
//! finite fields, pulled back along `t = s^2` or `t = u^3`, and the resulting
//! Frobenius traces and determinants.

mod cubic;
mod fiber;
mod trace;

pub use cubic::{projective_points, tangent_cone_discriminant, TernaryCubic};
pub use fiber::{
    classify_fiber, count_cubic_points, count_fiber, fiber_data, fiber_shape, is_singular,
    is_singular_c, Cover, FiberClassification, FiberKind, FiberParameter, FiberShape,
};
pub use trace::{
    expected_det, rho_det, rho_det_with, surface_trace, surface_trace_in, DirectTraces, FiberTrace,
    MemoTraces, TraceResult, TraceSource,
};
pub mod oracle;
