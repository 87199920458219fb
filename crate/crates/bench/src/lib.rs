//! Inputs shared by the benchmarks.

use bcklab::algebra::relabel;
use bcklab::catalog::{enumerate_bck, Catalog};
use bcklab::{CayleyAlgebra, Limits};

pub fn catalog(order: usize) -> Catalog {
    enumerate_bck(order, &Limits::default()).expect("order within the default cap")
}

/// Each entry paired with a copy under the relabeling that reverses the
/// nonzero elements.
pub fn relabeled_pairs(cat: &Catalog) -> Vec<(CayleyAlgebra, CayleyAlgebra)> {
    cat.algebras()
        .map(|a| {
            let n = a.order();
            let perm: Vec<usize> = (0..n).map(|x| if x == 0 { 0 } else { n - x }).collect();
            (a.clone(), relabel(a, &perm).expect("permutation fixing 0"))
        })
        .collect()
}
