//! Linear schemes and their constructions.

mod construct;
mod format;
mod scheme;
mod share;

pub use construct::{
    appendix_b, baseline, by_name, case2, case3a, case3b, expected_rate, fig1, min_field_order,
};
pub use format::{parse_rational, rational_to_string, SchemeDoc, SpecDoc, FORMAT_VERSION};
pub use scheme::{ratio, CodeSpec, EncodingInput, LinearScheme, Params, Rational, StorageWord};
pub use share::space_share;

/// Names accepted by [`by_name`].
pub const SCHEME_NAMES: [&str; 6] = ["baseline", "case2", "case3a", "case3b", "fig1", "appendixb"];
