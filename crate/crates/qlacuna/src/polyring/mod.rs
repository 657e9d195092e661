//! Exact dense polynomial arithmetic over arbitrary-precision integers.
//!
//! Two representations live here:
//! - [`IntPoly`]: a dense univariate polynomial in `q` over `Z`, the ring
//!   every q-integer, q-binomial and cyclotomic polynomial inhabits.
//! - [`BiPoly`]: a polynomial in `z` whose coefficients are [`IntPoly`],
//!   used for the z-generalized normalized sums.
//!
//! All values are immutable after construction and all operations are pure;
//! everything can be shared freely across threads.

mod bipoly;
mod intpoly;

pub use bipoly::{BiPoly, ZMode};
pub use intpoly::IntPoly;

use num_bigint::BigInt;
use num_traits::Zero;

/// gcd of two big integers, always non-negative.
pub(crate) fn bigint_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let mut x = if a.sign() == num_bigint::Sign::Minus {
        -a
    } else {
        a.clone()
    };
    let mut y = if b.sign() == num_bigint::Sign::Minus {
        -b
    } else {
        b.clone()
    };
    while !y.is_zero() {
        let r = &x % &y;
        x = y;
        y = if r.sign() == num_bigint::Sign::Minus { -r } else { r };
    }
    x
}
