//! A nested family of outer approximations to the quantum set, from the
//! nonsignalling polytope (level 0, a linear program) through moment-matrix
//! semidefinite relaxations of increasing size (levels 1, 1+AB, 2, …).
//!
//! Each level answers two questions about the recorded +1 probabilities:
//! *membership* — could this behavior have come from the model class? — and
//! *optimization* — how large can a given inequality get over the class?
//! Higher levels are tighter: a behavior feasible at level `k+1` is feasible
//! at level `k`, and maxima shrink as the level grows. The levels are the
//! model classes against which detector-efficiency bounds are certified.

pub mod moment;
pub mod nonsignalling;
pub mod relax;
pub mod word;

pub use moment::{MomentStructure, NpaLevel, WordRole, MOMENT_DIM_CAP};
pub use nonsignalling::{
    nonsignalling_feasible, nonsignalling_max_value, nonsignalling_max_with_behavior,
};
pub use relax::{npa_certificate, npa_feasible, npa_max_value, npa_max_with_behavior, NpaCertificate};
pub use word::{entry_word, MonomialWord, Symbol};
