//! Exact integer arithmetic around the golden ratio φ = (1 + √5)/2.
//!
//! Nothing here touches floating point. `⌊nφ⌋` is obtained from an integer
//! square root, and rationals are compared against φ − 1 by squaring.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::word::Symbol;

/// φ to ten decimal places, for display only.
pub const PHI_DISPLAY: &str = "1.6180339887";
/// 1/φ = φ − 1 to six places; limiting density of the majority letter.
pub const INV_PHI_DISPLAY: &str = "0.618034";
/// 1/φ² = 2 − φ to six places; limiting density of the minority letter.
pub const INV_PHI_SQUARED_DISPLAY: &str = "0.381966";

/// Largest argument accepted by [`floor_n_phi`]; keeps `5n²` inside `u128`.
pub const FLOOR_N_PHI_MAX: u64 = 1 << 62;

/// `⌊nφ⌋`, computed as `(n + isqrt(5n²)) / 2`.
///
/// Panics if `n > FLOOR_N_PHI_MAX`.
pub fn floor_n_phi(n: u64) -> u64 {
    assert!(n <= FLOOR_N_PHI_MAX, "floor_n_phi argument {n} too large");
    let n = u128::from(n);
    let root = (5 * n * n).isqrt();
    ((n + root) / 2) as u64
}

/// The `position`-th (1-based) symbol of the infinite word `1011010110110…`,
/// i.e. `⌊(p+1)φ⌋ − ⌊pφ⌋ − 1`.
pub fn beatty_symbol(position: u64) -> Symbol {
    assert!(position >= 1, "positions are 1-based");
    let step = floor_n_phi(position + 1) - floor_n_phi(position);
    Symbol::from_bit(step - 1).expect("consecutive Beatty differences are 1 or 2")
}

/// The two admissible counts of `1`s in a length-`len` factor:
/// `⌊len(φ−1)⌋` and one more. These are exactly the integers within distance
/// 1 of `len(φ−1)`, which is irrational for `len ≥ 1`.
pub fn ones_band(len: u64) -> (u64, u64) {
    let low = floor_n_phi(len) - len;
    (low, low + 1)
}

/// Compares `r` with φ − 1. Never returns `Equal` since φ − 1 is irrational.
pub fn cmp_with_inv_phi(r: &BigRational) -> Ordering {
    // r ⋚ (√5 − 1)/2  ⇔  2r + 1 ⋚ √5
    let t = r * BigInt::from(2) + BigInt::from(1);
    if t.is_negative() {
        return Ordering::Less;
    }
    let five = BigRational::from_integer(BigInt::from(5));
    (&t * &t).cmp(&five)
}

/// True iff `|r − (φ − 1)| < bound`, exactly.
pub fn within_of_inv_phi(r: &BigRational, bound: &BigRational) -> bool {
    cmp_with_inv_phi(&(r - bound)) == Ordering::Less
        && cmp_with_inv_phi(&(r + bound)) == Ordering::Greater
}
