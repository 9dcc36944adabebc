//! Certified real numerics and approximate complex root refinement.

mod aberth;
mod dyadic;
mod float;
mod interval;
mod poly;
mod roots;

pub use aberth::{aberth_refine, eval_with_derivative, initial_guesses, AberthOutcome};
pub use dyadic::{Dyadic, Rounding};
pub use float::{BigFloat, Scalar};
pub use interval::DyadicInterval;
pub use poly::{eval_poly, AuxPoly, CharPoly, IntPoly};
pub use roots::{
    all_roots, asymptote_c, dominant_root, quadratic_roots, ApproxRoot, QuadraticRoots,
    RootEnclosure, RootSet, ESCALATION_FACTOR, GUARD_BITS,
};

mod binet;

pub use binet::{
    binet_dominant, binet_reconstruct, error_term, g_complex, g_eval, reconstruct, u_closed_form,
    DominantTerm, DominantTerms, ErrorEnclosure, Reconstruction, OUTPUT_WIDTH_BITS,
};
