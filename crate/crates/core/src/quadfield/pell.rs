//! The Pell equation `x^2 - D y^2 = 4` and its fundamental solution.

use super::forms::{cycle_automorph, QForm};
use rug::Integer;

/// Ascending brute-force search: smallest `y >= 1` with `D y^2 + 4` a
/// perfect square, up to `y_cap`. Exact integer arithmetic throughout.
pub fn brute_force_pell(d: i64, y_cap: u64) -> Option<(Integer, Integer)> {
    let dd = Integer::from(d);
    for y in 1..=y_cap {
        let t = Integer::from(y) * Integer::from(y) * &dd + 4u32;
        let (root, rem) = t.sqrt_rem(Integer::new());
        if rem == 0 {
            return Some((root, Integer::from(y)));
        }
    }
    None
}

/// Fundamental solution via one period of the principal reduction cycle.
///
/// Walking the cycle of the principal form of discriminant `D` accumulates
/// the fundamental automorph; its trace is `x_D` and its lower-left entry is
/// `a * y_D` for the walked form. This is the continued-fraction expansion of
/// `sqrt(D)` in matrix form and scales to large `D`.
pub fn pell_fundamental(d: i64) -> (Integer, Integer) {
    let sigma = d.rem_euclid(2);
    let principal = QForm {
        a: 1,
        b: sigma,
        c: (sigma * sigma - d) / 4,
    };
    let red = principal.reduce();
    let m = cycle_automorph(&red);
    let x = Integer::from(&m[0][0] + &m[1][1]).abs();
    let y = Integer::from(&m[1][0] / red.a).abs();
    debug_assert_eq!(
        Integer::from(&x * &x) - Integer::from(d) * Integer::from(&y * &y),
        4u32,
        "automorph does not solve Pell for D={d}"
    );
    (x, y)
}
