//! Closed-form ratio analysis for the quantum Max-Cut rounding algorithms:
//! the Gauss hypergeometric kernel `q`, the general-graph guarantee
//! `alpha(mu)`, the admissible rotation-profile family and its `zeta`
//! bounds for triangle-free graphs, the bipartite `delta` expression, and
//! the numeric certificates backing the printed constants.

mod alpha;
mod bipartite;
mod certificates;
mod error;
mod hyper;
mod theta;
mod zeta;

pub use alpha::{alpha, alpha_inner_min, table2_report, RatioReport, TABLE2_MU};
pub use bipartite::{bipartite_ratio, delta, BipartiteReport};
pub use certificates::{
    bipartite_upper_bound_certificate, triangle_free_certificates, BipartiteCertificate,
    TriangleFreeCertificate, BIPARTITE_RATIO_UPPER, TRIANGLE_FREE_RATIO_UPPER,
};
pub use error::RatioError;
pub use hyper::{gauss_2f1, q};
pub use theta::{theta_membership_test, ThetaSpec};
pub use zeta::{best_theta_over_families, beta, max_p_zeta_star, zeta, zeta_star, ZetaStar};
