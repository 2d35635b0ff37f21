//! Shared inputs for the criterion benches.

use gogmagog::enumeration::enumerate_magog;
use gogmagog::{MagogTrapezoid, TrapezoidParams};

/// Every Magog trapezoid of the family, collected up front so benches time
/// only the work under test.
pub fn magog_family(n: usize, ell: i64) -> Vec<MagogTrapezoid> {
    enumerate_magog(TrapezoidParams::new(n, ell).expect("bench params are valid"))
        .expect("bench params are valid")
        .collect()
}
