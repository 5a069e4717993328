//! Exact computation of the ν invariant of weighted-homogeneous Calabi-Yau
//! links: Jacobian ideal → Gröbner basis → Milnor algebra basis → Steenbrink
//! signature → ν, together with a pointwise G2 exterior-algebra verifier.

pub mod polyring;
pub mod groebner;
pub mod milnor;
pub mod steenbrink;
pub mod nu;
pub mod g2forms;
