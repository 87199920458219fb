//! Adjoint pairs `(A, I)` and retract ideals.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{all_subalgebras, homomorphism_witness, is_subalgebra, CayleyAlgebra};
use crate::error::{Error, Result};
use crate::ideals::{
    all_ideals, congruence_of, generated_ideal, is_ideal, quotient, CongruenceRelation,
};
use crate::limits::Limits;
use crate::map::UnaryMap;
use crate::set::ElementSet;
use crate::states::{certify_state, StateAlgebra, StateKind};

/// A subalgebra `A` and ideal `I` with `A ∩ I = {0}`, `⟨A ∪ I⟩ = X`, and
/// every element congruent modulo `I` to a unique component in `A`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct AdjointPair {
    pub subalgebra: ElementSet,
    pub ideal: ElementSet,
    /// `x ↦ a_x`
    pub component: UnaryMap,
}

/// Components of every element, or a description of the first failure.
fn components(
    subalgebra: &ElementSet,
    theta: &CongruenceRelation,
) -> std::result::Result<UnaryMap, String> {
    let n = theta.order();
    let mut comp = Vec::with_capacity(n);
    for x in 0..n {
        let mut found = subalgebra.iter().filter(|&c| theta.related(x, c));
        match (found.next(), found.next()) {
            (None, _) => return Err(format!("{x} has no component in {subalgebra}")),
            (Some(c), None) => comp.push(c),
            (Some(c), Some(d)) => {
                return Err(format!(
                    "{x} has two components {c} and {d} in {subalgebra}"
                ))
            }
        }
    }
    Ok(UnaryMap::new(comp))
}

/// Checks every clause and materialises the component map.
pub fn validate_adjoint_pair(
    a: &CayleyAlgebra,
    subalgebra: &ElementSet,
    ideal: &ElementSet,
) -> Result<AdjointPair> {
    if !is_subalgebra(a, subalgebra) {
        return Err(Error::domain(format!("{subalgebra} is not a subalgebra")));
    }
    if !is_ideal(a, ideal) {
        return Err(Error::domain(format!("{ideal} is not an ideal")));
    }
    let meet = subalgebra.intersection(ideal);
    if !meet.is_zero() {
        return Err(Error::domain(format!(
            "{subalgebra} ∩ {ideal} = {meet}, expected {{0}}"
        )));
    }
    let span = generated_ideal(a, &subalgebra.union(ideal));
    if !span.is_full() {
        return Err(Error::domain(format!(
            "ideal generated by {subalgebra} ∪ {ideal} is {span}, not the whole algebra"
        )));
    }
    let theta = congruence_of(a, ideal)?;
    let component = components(subalgebra, &theta).map_err(|m| {
        if m.contains("two components") {
            // impossible once A ∩ I = {0}
            Error::Inconsistent(m)
        } else {
            Error::domain(m)
        }
    })?;
    Ok(AdjointPair {
        subalgebra: subalgebra.clone(),
        ideal: ideal.clone(),
        component,
    })
}

/// All adjoint pairs, ordered by subalgebra and then ideal.
pub fn find_adjoint_pairs(a: &CayleyAlgebra, limits: &Limits) -> Result<Vec<AdjointPair>> {
    let subs = all_subalgebras(a, limits)?;
    let ideals = all_ideals(a, limits)?;
    let thetas: Vec<CongruenceRelation> = ideals
        .iter()
        .map(|i| congruence_of(a, i))
        .collect::<Result<_>>()?;
    let per_sub: Vec<Result<Vec<AdjointPair>>> = subs
        .par_iter()
        .map(|s| {
            let mut found = Vec::new();
            for (i, theta) in ideals.iter().zip(&thetas) {
                if !s.intersection(i).is_zero() || !generated_ideal(a, &s.union(i)).is_full() {
                    continue;
                }
                match components(s, theta) {
                    Ok(component) => found.push(AdjointPair {
                        subalgebra: s.clone(),
                        ideal: i.clone(),
                        component,
                    }),
                    Err(m) if m.contains("two components") => {
                        return Err(Error::Inconsistent(m));
                    }
                    Err(_) => {}
                }
            }
            Ok(found)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_sub {
        out.extend(r?);
    }
    Ok(out)
}

/// `μ(x) = a_x`.
pub fn pair_to_morphism(a: &CayleyAlgebra, pair: &AdjointPair) -> Result<StateAlgebra> {
    certify_state(a, &pair.component, StateKind::StateMorphism).map_err(|e| {
        Error::Inconsistent(format!(
            "component map of ({}, {}) is not a state-morphism: {e}",
            pair.subalgebra, pair.ideal
        ))
    })
}

/// `(μ(X), Ker μ)`.
pub fn morphism_to_pair(sa: &StateAlgebra) -> Result<AdjointPair> {
    if !sa.is(StateKind::StateMorphism) {
        return Err(Error::domain("operator is not a state-morphism"));
    }
    validate_adjoint_pair(sa.algebra(), &sa.image(), &sa.kernel())
        .map_err(|e| Error::Inconsistent(format!("image and kernel of {}: {e}", sa.mu())))
}

/// A retract ideal with a splitting `f: X/I -> X` (indexed by quotient
/// classes, class of 0 first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RetractIdeal {
    pub ideal: ElementSet,
    pub section: UnaryMap,
}

/// A homomorphic section of `X -> X/I`, searching `f(c)` inside class `c`.
pub fn find_section(a: &CayleyAlgebra, ideal: &ElementSet) -> Result<Option<UnaryMap>> {
    let (q, pi) = quotient(a, ideal)?;
    let k = q.order();
    let classes: Vec<Vec<usize>> = (0..k)
        .map(|c| a.elements().filter(|&x| pi.apply(x) == c).collect())
        .collect();
    let mut f = vec![usize::MAX; k];

    fn walk(
        a: &CayleyAlgebra,
        q: &CayleyAlgebra,
        classes: &[Vec<usize>],
        f: &mut Vec<usize>,
        c: usize,
    ) -> bool {
        let k = classes.len();
        if c == k {
            return true;
        }
        for &x in &classes[c] {
            f[c] = x;
            // partial homomorphism check on assigned classes
            let ok = (0..=c).all(|d| {
                [(c, d), (d, c)].into_iter().all(|(u, v)| {
                    let w = q.op(u, v);
                    w > c || f[w] == a.op(f[u], f[v])
                })
            });
            if ok && walk(a, q, classes, f, c + 1) {
                return true;
            }
        }
        f[c] = usize::MAX;
        false
    }

    if walk(a, &q, &classes, &mut f, 0) {
        let section = UnaryMap::new(f);
        debug_assert_eq!(homomorphism_witness(&q, a, &section), Ok(None));
        Ok(Some(section))
    } else {
        Ok(None)
    }
}

/// Ideals whose projection splits. Cross-checked against the ideals of
/// adjoint pairs; a disagreement is reported as an inconsistency.
pub fn retract_ideals(a: &CayleyAlgebra, limits: &Limits) -> Result<Vec<RetractIdeal>> {
    let mut out = Vec::new();
    for i in all_ideals(a, limits)? {
        if let Some(section) = find_section(a, &i)? {
            out.push(RetractIdeal { ideal: i, section });
        }
    }
    let mut from_pairs: Vec<ElementSet> = find_adjoint_pairs(a, limits)?
        .into_iter()
        .map(|p| p.ideal)
        .collect();
    from_pairs.sort();
    from_pairs.dedup();
    let direct: Vec<ElementSet> = out.iter().map(|r| r.ideal.clone()).collect();
    if direct != from_pairs {
        return Err(Error::Inconsistent(format!(
            "retract ideals by sections {direct:?} differ from adjoint-pair ideals {from_pairs:?}"
        )));
    }
    Ok(out)
}
