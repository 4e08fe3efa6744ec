//! Truncated exact power series in `w = e^{pi i tau}` and the modular objects
//! built from them.

mod eta;
mod modular;
mod picard_fuchs;
mod relation;
mod series;

pub use eta::{eta_quotient, eta_quotient_q, euler_product, EtaProduct};
pub use modular::{
    e4_series, g_series, j_series, p_q_integers, p_series, p_series_by_composition, s_series,
    t_q_integers, t_series,
};
pub use picard_fuchs::{p_in_t, verify_picard_fuchs, PicardFuchsCheck, ThetaOperator};
pub use relation::{
    derive_sj_relation, format_relation, printed_relation, printed_relation_residual,
    RelationSearch, SjRelation,
};
pub use series::QSeries;
