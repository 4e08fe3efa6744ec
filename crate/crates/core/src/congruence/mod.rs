//! Congruence checkers: the supercongruence for `F`, weight three ASD
//! relations, the Stienstra-Beukers congruence, the trace and determinant
//! table on a Frobenius set, twist elimination and the three-cover check.

mod asd;
mod families;
mod gamma;
mod report;

pub use asd::{check_three_term, Coefficients, ExponentRule};
pub use families::{
    cubic_inert_check, dim_cusp_forms, odd_ms, serre_faltings_on, serre_faltings_table,
    sign_pattern, transfer_sequence, twist_elimination, twist_report, verify_asd,
    verify_beukers_transfer, verify_stienstra_beukers, verify_theorem1, verify_three_cover,
    SerreFaltings, TwistOutcome, TwistWitness,
};
pub use gamma::{
    gamma_cm, gamma_extract, gamma_from_trace, gamma_small, CmGamma, GammaCheck, GammaSource,
    GammaValue, LITERAL_VANISHING_CLASSES,
};
pub use report::{CongruenceReport, ReportRow, RowRecord, Status};
