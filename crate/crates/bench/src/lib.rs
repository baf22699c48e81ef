//! Fixtures shared by the benchmarks.

use qfano_core::ratmod::rat;
use qfano_core::{Basket, BasketPoint, Rational, WeightedHypersurface};

/// `X_14` in `P(2,3,4,5,7)`: index 7, `A^3 = 1/60`, basket `(2^3,3,4,5)`.
pub fn x14() -> (u32, Rational, Basket, WeightedHypersurface) {
    let basket = Basket::new([(2, 3), (3, 1), (4, 1), (5, 1)].map(|(r, k)| BasketPoint::new(r, 1, k).expect("valid point")));
    let wh = "2,3,4,5,7 : 14".parse().expect("valid hypersurface");
    (7, rat(1, 60), basket, wh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qfano_core::orbifold_rr::hilbert_row;
    use qfano_core::wps::hilbert_series;

    #[test]
    fn fixture_is_consistent() {
        let (q, a3, basket, wh) = x14();
        assert_eq!(hilbert_row(q, &a3, &basket, 20).unwrap(), hilbert_series(&wh, 20));
    }
}
