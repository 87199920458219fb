//! Small named algebras and maps used throughout the tests, benches and docs.

use crate::algebra::{check_bck, CayleyAlgebra, CayleyTable};
use crate::map::UnaryMap;

fn certified(name: &str, rows: Vec<Vec<usize>>) -> CayleyAlgebra {
    let table = CayleyTable::from_rows(rows)
        .expect("fixture table is well formed")
        .with_name(name);
    check_bck(table).expect("fixture is a BCK-algebra")
}

/// The one-element algebra.
pub fn t1() -> CayleyAlgebra {
    certified("T1", vec![vec![0]])
}

/// The two-element chain.
pub fn b2() -> CayleyAlgebra {
    certified("B2", vec![vec![0, 0], vec![1, 0]])
}

/// The four-element chain with `x*y = x` for `x > y` and 0 otherwise.
/// Positive implicative, bounded, not commutative.
pub fn c4() -> CayleyAlgebra {
    certified(
        "C4",
        vec![
            vec![0, 0, 0, 0],
            vec![1, 0, 0, 0],
            vec![2, 2, 0, 0],
            vec![3, 3, 3, 0],
        ],
    )
}

/// The three-element chain with truncated subtraction (the BCK reduct of the
/// three-element MV chain).
pub fn c3() -> CayleyAlgebra {
    certified("C3", vec![vec![0, 0, 0], vec![1, 0, 0], vec![2, 1, 0]])
}

/// Left state operator on [`c4`] that is neither a right state operator nor
/// a homomorphism: `0,1 -> 0` and `2,3 -> 2`.
pub fn pm() -> UnaryMap {
    UnaryMap::new(vec![0, 0, 2, 2])
}
