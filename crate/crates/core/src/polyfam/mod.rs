//! The triangles `A^{g,h}` of the recursively defined polynomial families,
//! the conversion `A^{g,id} -> A^{g~,1}`, and the oracles that cross-check
//! them.

mod crosscheck;
mod oracle;
mod triangle;

pub use crosscheck::{
    check_conversion, default_xs, euler_product_crosscheck, genfun_crosscheck, integrality_check,
};
pub use oracle::{check_closed_forms, closed_form_oracle, Family};
pub use triangle::{
    build_triangle, convert, row_poly, BuildPath, HFn, ScaledRow, Triangle, TriangleBuilder,
};
