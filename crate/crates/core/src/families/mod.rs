//! Family descriptions, the theorem registry and the algebraic facts the
//! theorems rest on.

mod exponent;
pub mod identities;
pub mod low_degree;
pub mod registry;
mod spec;
pub mod transform;

pub use exponent::ExponentExpr;
pub use identities::{check_norm_factorization, check_trace_identity, IdentityReport, SliceConstants, TraceIdentity};
pub use low_degree::{normalized_cubic_permutes, normalized_quintic_permutes, QuinticShape};
pub use registry::{lookup, registry, Claim, Hypothesis, ParamDomain, RegistryEntry, Variant};
pub use spec::{
    eval_family, Bindings, BoundFamily, Coef, CompiledFamily, CompiledInstance, FamilySpec, HTerm, Symbol,
    COMPILE_MAX_M,
};
pub use transform::{apply_equiv_transform, EquivTransform};
