//! Built-in reference families used by the golden reproduction command and
//! the test suites.

use crate::setalg::{IntSetExpr, PowerIntervalFamily};
use crate::Int;

/// `{1} ∪ ⋃_{k≥4} [2ᵏ+9, 2ᵏ⁺¹)`: bounded gaps in the set itself, complement
/// blocks `[2ᵏ, 2ᵏ+8]` of constant size 8 separated by diverging gaps.
pub fn dyadic_band_family() -> PowerIntervalFamily {
    PowerIntervalFamily::new(2, 1, 9, 2, 0, 4, false, vec![Int::from(1)])
        .expect("built-in family is valid")
}

pub fn dyadic_band_set() -> IntSetExpr {
    IntSetExpr::from(dyadic_band_family())
}

/// `⋃_{k≥0} [10ᵏ, 2·10ᵏ]`: both the set and its positive complement have
/// gap suprema growing without bound.
pub fn decade_band_family() -> PowerIntervalFamily {
    PowerIntervalFamily::new(10, 1, 0, 2, 0, 0, true, vec![])
        .expect("built-in family is valid")
}

pub fn decade_band_set() -> IntSetExpr {
    IntSetExpr::from(decade_band_family())
}
