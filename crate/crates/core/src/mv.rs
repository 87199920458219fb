//! MV-algebras and their correspondence with bounded commutative
//! BCK-algebras.

use std::fmt;

use serde::Serialize;

use crate::algebra::{check_bck, classify, CayleyAlgebra, CayleyTable};
use crate::error::{Error, Result};
use crate::ideals::all_ideals;
use crate::limits::Limits;
use crate::map::UnaryMap;
use crate::set::ElementSet;
use crate::states::{state_violation, StateKind};

/// A finite MV-algebra `(M, ⊕, ', 0)` with 0 at index 0. Values of this
/// type have passed [`mv_axiom_violations`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MvAlgebra {
    order: usize,
    oplus: Vec<usize>,
    neg: Vec<usize>,
}

/// One failed MV identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MvViolation {
    pub law: &'static str,
    pub elements: Vec<usize>,
}

impl fmt::Display for MvViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.law, self.elements)
    }
}

/// Checks the commutative monoid laws, `x'' = x`, `x ⊕ 0' = 0'` and
/// `(x' ⊕ y)' ⊕ y = (y' ⊕ x)' ⊕ x`.
pub fn mv_axiom_violations(order: usize, oplus: &[usize], neg: &[usize]) -> Vec<MvViolation> {
    let n = order;
    let p = |x: usize, y: usize| oplus[x * n + y];
    let ng = |x: usize| neg[x];
    let one = ng(0);
    let mut out = Vec::new();
    let mut fail = |law, elements: Vec<usize>| out.push(MvViolation { law, elements });
    for x in 0..n {
        if p(x, 0) != x {
            fail("x ⊕ 0 = x", vec![x]);
        }
        if ng(ng(x)) != x {
            fail("x'' = x", vec![x]);
        }
        if p(x, one) != one {
            fail("x ⊕ 1 = 1", vec![x]);
        }
        for y in 0..n {
            if p(x, y) != p(y, x) {
                fail("x ⊕ y = y ⊕ x", vec![x, y]);
            }
            if p(ng(p(ng(x), y)), y) != p(ng(p(ng(y), x)), x) {
                fail("(x' ⊕ y)' ⊕ y = (y' ⊕ x)' ⊕ x", vec![x, y]);
            }
            for z in 0..n {
                if p(p(x, y), z) != p(x, p(y, z)) {
                    fail("(x ⊕ y) ⊕ z = x ⊕ (y ⊕ z)", vec![x, y, z]);
                }
            }
        }
    }
    out
}

impl MvAlgebra {
    /// Validates ranges and every MV identity.
    pub fn new(oplus_rows: Vec<Vec<usize>>, neg: Vec<usize>) -> Result<Self> {
        let table = CayleyTable::from_rows(oplus_rows)?;
        let n = table.order();
        if neg.len() != n {
            return Err(Error::format(
                0,
                format!("negation has {} entries, expected {n}", neg.len()),
            ));
        }
        if let Some(&v) = neg.iter().find(|&&v| v >= n) {
            return Err(Error::format(0, format!("negation value {v} out of range")));
        }
        let oplus = table.cells().to_vec();
        let v = mv_axiom_violations(n, &oplus, &neg);
        if let Some(first) = v.first() {
            return Err(Error::domain(format!(
                "not an MV-algebra: {} failed instance(s), first {first}",
                v.len()
            )));
        }
        Ok(MvAlgebra {
            order: n,
            oplus,
            neg,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn oplus(&self, x: usize, y: usize) -> usize {
        self.oplus[x * self.order + y]
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x]
    }

    pub fn one(&self) -> usize {
        self.neg[0]
    }

    /// `(x' ⊕ y')'`
    pub fn odot(&self, x: usize, y: usize) -> usize {
        self.neg(self.oplus(self.neg(x), self.neg(y)))
    }

    /// `(x' ⊕ y)'`
    pub fn ominus(&self, x: usize, y: usize) -> usize {
        self.neg(self.oplus(self.neg(x), y))
    }

    /// `x ≤ y` iff `x ⊖ y = 0`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.ominus(x, y) == 0
    }

    pub fn oplus_rows(&self) -> Vec<Vec<usize>> {
        self.oplus.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn neg_row(&self) -> &[usize] {
        &self.neg
    }
}

impl fmt::Debug for MvAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MvAlgebra")
            .field("oplus", &self.oplus_rows())
            .field("neg", &self.neg)
            .finish()
    }
}

/// `x ⊕ y = N(Nx * y)`, `x' = Nx` with `Nx = 1 * x`.
pub fn bck_to_mv(a: &CayleyAlgebra) -> Result<MvAlgebra> {
    let flags = classify(a);
    let Some(top) = flags.bounded else {
        return Err(Error::domain("algebra is not bounded"));
    };
    if !flags.commutative {
        return Err(Error::domain("algebra is not commutative"));
    }
    let n = a.order();
    let neg: Vec<usize> = a.elements().map(|x| a.op(top, x)).collect();
    if let Some(x) = a.elements().find(|&x| neg[neg[x]] != x) {
        return Err(Error::Inconsistent(format!("N(Nx) != x at x = {x}")));
    }
    let rows = (0..n)
        .map(|x| (0..n).map(|y| neg[a.op(neg[x], y)]).collect())
        .collect();
    MvAlgebra::new(rows, neg).map_err(|e| Error::Inconsistent(format!("derived MV table: {e}")))
}

/// `x * y = x ⊙ y'`.
pub fn mv_to_bck(m: &MvAlgebra) -> Result<CayleyAlgebra> {
    let n = m.order();
    let cells = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .map(|(x, y)| m.odot(x, m.neg(y)))
        .collect();
    let table = CayleyTable::from_flat(n, cells)?;
    check_bck(table).map_err(|e| Error::Inconsistent(format!("BCK reduct of MV table: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateMvFailure {
    /// 1: `σ(1) = 1`; 2: `σ(x') = σ(x)'`; 3: `σ(x ⊕ y) = σx ⊕ σ(y ⊖ (x ⊙ y))`;
    /// 4: `σ(σx ⊕ σy) = σx ⊕ σy`.
    pub axiom: u8,
    pub elements: Vec<usize>,
    pub lhs: usize,
    pub rhs: usize,
}

impl fmt::Display for StateMvFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "state axiom ({}) at {:?}: {} != {}",
            self.axiom, self.elements, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateMvReport {
    pub failures: Vec<StateMvFailure>,
}

impl StateMvReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_state_mv(m: &MvAlgebra, s: &UnaryMap) -> Result<StateMvReport> {
    let n = m.order();
    s.check(n, n)?;
    let sg = |x| s.apply(x);
    let mut failures = Vec::new();
    let one = m.one();
    if sg(one) != one {
        failures.push(StateMvFailure {
            axiom: 1,
            elements: vec![one],
            lhs: sg(one),
            rhs: one,
        });
    }
    for x in 0..n {
        if sg(m.neg(x)) != m.neg(sg(x)) {
            failures.push(StateMvFailure {
                axiom: 2,
                elements: vec![x],
                lhs: sg(m.neg(x)),
                rhs: m.neg(sg(x)),
            });
        }
    }
    for x in 0..n {
        for y in 0..n {
            let lhs = sg(m.oplus(x, y));
            let rhs = m.oplus(sg(x), sg(m.ominus(y, m.odot(x, y))));
            if lhs != rhs {
                failures.push(StateMvFailure {
                    axiom: 3,
                    elements: vec![x, y],
                    lhs,
                    rhs,
                });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            let t = m.oplus(sg(x), sg(y));
            if sg(t) != t {
                failures.push(StateMvFailure {
                    axiom: 4,
                    elements: vec![x, y],
                    lhs: sg(t),
                    rhs: t,
                });
            }
        }
    }
    Ok(StateMvReport { failures })
}

/// Preserves `⊕`, `'` and 0.
pub fn is_mv_endomorphism(m: &MvAlgebra, s: &UnaryMap) -> bool {
    let n = m.order();
    s.apply(0) == 0
        && (0..n).all(|x| {
            s.apply(m.neg(x)) == m.neg(s.apply(x))
                && (0..n).all(|y| s.apply(m.oplus(x, y)) == m.oplus(s.apply(x), s.apply(y)))
        })
}

/// Contains 0, closed under `⊕`, and downward closed.
pub fn is_mv_ideal(m: &MvAlgebra, s: &ElementSet) -> bool {
    let n = m.order();
    s.contains(0)
        && s.iter()
            .all(|x| s.iter().all(|y| s.contains(m.oplus(x, y))))
        && s.iter()
            .all(|y| (0..n).all(|x| !m.leq(x, y) || s.contains(x)))
}

pub fn mv_ideals(m: &MvAlgebra, limits: &Limits) -> Result<Vec<ElementSet>> {
    let n = m.order();
    limits.check_subsets("MV ideal enumeration", n)?;
    let mut out: Vec<ElementSet> = (0..1u64 << (n - 1))
        .map(|rest| ElementSet::from_mask(n, rest << 1 | 1))
        .filter(|s| is_mv_ideal(m, s))
        .collect();
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorrespondenceReport {
    /// Maps examined (all of them).
    pub candidates: usize,
    /// Left state operators with `μ(1) = 1`.
    pub left_states: usize,
    pub state_mv: usize,
    /// State-morphisms with `μ(1) = 1`.
    pub morphisms: usize,
    /// Left state operators failing the MV state axioms.
    pub forward_failures: Vec<UnaryMap>,
    /// MV states that are not left state operators.
    pub converse_failures: Vec<UnaryMap>,
    /// State-morphisms that are not idempotent MV endomorphisms.
    pub morphism_failures: Vec<UnaryMap>,
}

impl CorrespondenceReport {
    pub fn passes(&self) -> bool {
        self.forward_failures.is_empty()
            && self.converse_failures.is_empty()
            && self.morphism_failures.is_empty()
    }
}

/// Over every self-map: the left state operators fixing the top are exactly
/// the MV states, and state-morphisms fixing the top are idempotent MV
/// endomorphisms.
pub fn check_mv_state_correspondence(
    a: &CayleyAlgebra,
    limits: &Limits,
) -> Result<CorrespondenceReport> {
    let m = bck_to_mv(a)?;
    let n = a.order();
    limits.check_maps("MV state correspondence", n)?;
    let top = a.greatest().expect("bounded");
    let mut r = CorrespondenceReport::default();
    for mu in UnaryMap::all(n, n) {
        r.candidates += 1;
        let fixes_top = mu.apply(top) == top;
        let left = fixes_top && state_violation(a, &mu, StateKind::LeftState)?.is_none();
        let morphism = fixes_top && state_violation(a, &mu, StateKind::StateMorphism)?.is_none();
        let mv_state = check_state_mv(&m, &mu)?.passes();
        r.left_states += left as usize;
        r.state_mv += mv_state as usize;
        r.morphisms += morphism as usize;
        if left && !mv_state {
            r.forward_failures.push(mu.clone());
        }
        if mv_state && !left {
            r.converse_failures.push(mu.clone());
        }
        if morphism && !(is_mv_endomorphism(&m, &mu) && mu.is_idempotent()) {
            r.morphism_failures.push(mu.clone());
        }
    }
    Ok(r)
}

/// BCK ideals of the reduct coincide with MV ideals.
pub fn ideal_sets_agree(m: &MvAlgebra, limits: &Limits) -> Result<bool> {
    let a = mv_to_bck(m)?;
    Ok(all_ideals(&a, limits)? == mv_ideals(m, limits)?)
}
