//! Certified ball arithmetic and rigorous series evaluation.
//!
//! All analytic quantities in the workbench are computed as enclosures:
//! real intervals with outward-rounded MPFR endpoints, and complex
//! rectangles built from them. Certification failures are always
//! retry-with-more-precision, never best-effort.

pub mod ball;
pub mod eval;
pub mod interval;

pub use ball::Ball;
pub use eval::{
    delta_ball, e4_ball, euler_product_ball, eval_series_certified, j_ball,
    schwarz_tail_majorant, SeriesValue, TailBound,
};
pub use interval::Interval;

/// Default working precision in bits of mantissa.
pub const DEFAULT_PREC: u32 = 128;

/// Runs `f` at increasing precision until it certifies or the budget is
/// exhausted. `f` should return `Err(PrecisionInsufficient | CannotCertify)`
/// to request escalation.
pub fn with_escalating_prec<T>(
    start: u32,
    max: u32,
    mut f: impl FnMut(u32) -> crate::error::Result<T>,
) -> crate::error::Result<T> {
    let mut prec = start;
    loop {
        match f(prec) {
            Ok(v) => return Ok(v),
            Err(e) => {
                let retryable = matches!(
                    e,
                    crate::error::Error::PrecisionInsufficient(_)
                        | crate::error::Error::CannotCertify(_)
                );
                if !retryable || prec >= max {
                    return Err(e);
                }
                prec = (prec * 2).min(max);
            }
        }
    }
}
