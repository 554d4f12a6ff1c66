//! Corruption cost functions on finite domains.

mod builders;
mod table;

pub use builders::{
    build_additive, build_agnostic, build_strong, build_subtractive, rational_from_f64,
    validate_eta, LabeledDomain,
};
pub use table::{Cost, CostFunction, Rational};

use num_traits::ToPrimitive;

pub(crate) fn rational_to_f64(r: Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
