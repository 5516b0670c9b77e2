//! Row crystals B_l of A_n^(1), the combinatorial R and the principal picture.

pub mod element;
pub mod path;
pub mod principal;
pub mod rmatrix;

pub use element::{AffineElement, AffineJson, CrystalElement};
pub use path::Path;
pub use principal::{principal_r, PrincipalElement};
pub use rmatrix::{
    combinatorial_r, energy, nonwinding, r_classical, r_formula, r_graphical, r_graphical_ordered, RImage, RMethod,
};
