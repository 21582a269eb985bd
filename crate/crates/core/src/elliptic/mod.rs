//! Elliptic and div-curl operators, the splitting of the spacetime operator
//! into its good spatial part plus lower-order terms, the commutator sources
//! of the twice-differentiated system, and estimate-constant fitting.

mod decomposition;
mod fit;
mod ops;
mod sources;

pub use decomposition::{black_term_orders, decompose, BlackList, Decomposition, BLACK_TERM_NAMES};
pub use fit::{
    div_curl_sides, div_curl_sides_k1, drift, elliptic_r_sides, elliptic_r_sides_k1, estimate_constant_fit, FitReport,
    FitRow, MAX_DRIFT, MIN_FAMILY,
};
pub use ops::{
    apply_elliptic, bracket, l1_full, l1_good, l1_good_point, l2_good, l2_point, l3_good, l3_point,
    pairing_direct, pairing_expanded, second_derivs, Coef, EllipticOpId, FieldArg,
};
pub use sources::{higher_sources, system6_residual, HigherSources, System6Residual};
