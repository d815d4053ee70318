//! The space `Γ\G` with `G = SL(2,ℝ) ⋉ ℝ²` and `Γ = SL(2,ℤ) ⋉ ℤ²`.

pub mod group;
pub mod haar;
pub mod iwasawa;
pub mod lattice;
pub mod oracle;
pub mod orbit;
pub mod testfn;

pub use group::{
    embed, flow_scale, flow_translate, gamma_element, gamma_from_word, group_op, Embedding, GroupElement, GroupOp,
    Matrix2, ModularGenerator,
};
pub use haar::{haar_sample, HaarSample, HaarSampler};
pub use iwasawa::{iwasawa, IwasawaCoords};
pub use lattice::{f_count, f_count_with_budget, DEFAULT_CELL_BUDGET};
pub use oracle::{ekl_oracle, OracleEstimate};
pub use orbit::{orbit_count, s_tilde_direct, OrbitKind};
pub use testfn::{TestFunction2D, TestFunctionKind};
