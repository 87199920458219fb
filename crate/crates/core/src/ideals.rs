//! Ideals, generated ideals, congruences and quotients.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{axiom_violations, check_bck, classify, CayleyAlgebra, CayleyTable};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::map::UnaryMap;
use crate::set::ElementSet;

/// First `(y, x)` with `y*x ∈ S`, `x ∈ S`, `y ∉ S`.
pub fn ideal_witness(a: &CayleyAlgebra, s: &ElementSet) -> Option<(usize, usize)> {
    for x in s.iter() {
        for y in a.elements() {
            if !s.contains(y) && s.contains(a.op(y, x)) {
                return Some((y, x));
            }
        }
    }
    None
}

pub fn is_ideal(a: &CayleyAlgebra, s: &ElementSet) -> bool {
    s.contains(0) && ideal_witness(a, s).is_none()
}

/// Every ideal, ordered by size and then members.
pub fn all_ideals(a: &CayleyAlgebra, limits: &Limits) -> Result<Vec<ElementSet>> {
    let n = a.order();
    limits.check_subsets("ideal enumeration", n)?;
    let count = 1u64 << (n - 1);
    let test = |rest: u64| {
        let s = ElementSet::from_mask(n, rest << 1 | 1);
        is_ideal(a, &s).then_some(s)
    };
    let mut out: Vec<ElementSet> = if n >= 12 {
        (0..count).into_par_iter().filter_map(test).collect()
    } else {
        (0..count).filter_map(test).collect()
    };
    out.sort();
    Ok(out)
}

/// Least ideal containing `S`, by saturating `S ∪ {0}` under the ideal rule.
pub fn generated_ideal(a: &CayleyAlgebra, s: &ElementSet) -> ElementSet {
    let mut cur = s.clone();
    cur.insert(0);
    loop {
        let mut grew = false;
        for y in a.elements() {
            if !cur.contains(y) && cur.iter().any(|x| cur.contains(a.op(y, x))) {
                cur.insert(y);
                grew = true;
            }
        }
        if !grew {
            return cur;
        }
    }
}

pub fn principal_ideal(a: &CayleyAlgebra, x: usize) -> ElementSet {
    generated_ideal(a, &ElementSet::singleton(a.order(), x))
}

/// Elements from which some finite sequence of right subtractions by members
/// of `by` lands in `target`.
pub(crate) fn reduces_into(a: &CayleyAlgebra, by: &ElementSet, target: &ElementSet) -> ElementSet {
    let mut reach = target.clone();
    loop {
        let mut grew = false;
        for x in a.elements() {
            if !reach.contains(x) && by.iter().any(|r| reach.contains(a.op(x, r))) {
                reach.insert(x);
                grew = true;
            }
        }
        if !grew {
            return reach;
        }
    }
}

/// `⟨I ∪ S⟩` for an ideal `I`, as the set of `x` whose reductions by
/// elements of `S` can land in `I`.
pub fn generated_ideal_over(
    a: &CayleyAlgebra,
    ideal: &ElementSet,
    s: &ElementSet,
) -> Result<ElementSet> {
    if !is_ideal(a, ideal) {
        return Err(Error::domain(format!("{ideal} is not an ideal")));
    }
    let out = reduces_into(a, s, ideal);
    let direct = generated_ideal(a, &ideal.union(s));
    if out != direct {
        return Err(Error::Inconsistent(format!(
            "ideal generated over {ideal} by {s}: reductions give {out}, saturation gives {direct}"
        )));
    }
    Ok(out)
}

/// First `(x, y)` with `x*y ∈ I` but `x*(y*(y*x)) ∉ I`.
pub fn commutative_ideal_witness(a: &CayleyAlgebra, ideal: &ElementSet) -> Option<(usize, usize)> {
    for x in a.elements() {
        for y in a.elements() {
            if ideal.contains(a.op(x, y)) && !ideal.contains(a.op(x, a.op(y, a.op(y, x)))) {
                return Some((x, y));
            }
        }
    }
    None
}

pub fn is_commutative_ideal(a: &CayleyAlgebra, ideal: &ElementSet) -> bool {
    commutative_ideal_witness(a, ideal).is_none()
}

fn require_proper(a: &CayleyAlgebra, ideal: &ElementSet) -> Result<()> {
    if !is_ideal(a, ideal) {
        return Err(Error::domain(format!("{ideal} is not an ideal")));
    }
    if ideal.is_full() {
        return Err(Error::domain(
            "prime and maximal are only defined for proper ideals",
        ));
    }
    Ok(())
}

/// Prime in the principal form: `⟨x⟩ ∩ ⟨y⟩ ⊆ I` implies `x ∈ I` or `y ∈ I`.
pub fn is_prime_ideal(a: &CayleyAlgebra, ideal: &ElementSet) -> Result<bool> {
    require_proper(a, ideal)?;
    let principal: Vec<ElementSet> = a.elements().map(|x| principal_ideal(a, x)).collect();
    let outside: Vec<usize> = ideal.complement().to_vec();
    Ok(outside.iter().all(|&x| {
        outside
            .iter()
            .all(|&y| !principal[x].intersection(&principal[y]).is_subset(ideal))
    }))
}

/// `⟨I ∪ {x}⟩ = X` for every `x ∉ I`.
pub fn is_maximal_ideal(a: &CayleyAlgebra, ideal: &ElementSet) -> Result<bool> {
    require_proper(a, ideal)?;
    Ok(ideal.complement().iter().all(|x| {
        let mut s = ideal.clone();
        s.insert(x);
        generated_ideal(a, &s).is_full()
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Tri {
    Yes,
    No,
    Unchecked,
}

impl From<bool> for Tri {
    fn from(b: bool) -> Self {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unchecked => "unchecked",
        })
    }
}

/// An ideal together with lazily filled flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealCertificate {
    #[serde(skip)]
    pub algebra: CayleyAlgebra,
    pub members: ElementSet,
    pub prime: Tri,
    pub maximal: Tri,
    pub commutative: Tri,
}

impl IdealCertificate {
    pub fn new(a: &CayleyAlgebra, members: ElementSet) -> Result<Self> {
        if members.universe() != a.order() {
            return Err(Error::SizeMismatch {
                expected: a.order(),
                found: members.universe(),
            });
        }
        if let Some((y, x)) = ideal_witness(a, &members) {
            return Err(Error::domain(format!(
                "{members} is not an ideal: {y}*{x} and {x} are members, {y} is not"
            )));
        }
        if !members.contains(0) {
            return Err(Error::domain(format!("{members} does not contain 0")));
        }
        Ok(IdealCertificate {
            algebra: a.clone(),
            members,
            prime: Tri::Unchecked,
            maximal: Tri::Unchecked,
            commutative: Tri::Unchecked,
        })
    }

    /// Fills every flag; prime and maximal stay unchecked for `I = X`.
    pub fn checked(mut self) -> Self {
        let a = &self.algebra;
        self.commutative = is_commutative_ideal(a, &self.members).into();
        if !self.members.is_full() {
            self.prime = is_prime_ideal(a, &self.members)
                .expect("proper ideal")
                .into();
            self.maximal = is_maximal_ideal(a, &self.members)
                .expect("proper ideal")
                .into();
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealFlags {
    pub prime: bool,
    pub maximal: bool,
    pub commutative: bool,
    /// `(x, y)` breaking commutativity of the ideal.
    pub commutative_witness: Option<(usize, usize)>,
}

/// All three flags; fails with a domain error for `I = X`.
pub fn ideal_flags(a: &CayleyAlgebra, ideal: &ElementSet) -> Result<IdealFlags> {
    let prime = is_prime_ideal(a, ideal)?;
    let maximal = is_maximal_ideal(a, ideal)?;
    let witness = commutative_ideal_witness(a, ideal);
    Ok(IdealFlags {
        prime,
        maximal,
        commutative: witness.is_none(),
        commutative_witness: witness,
    })
}

pub fn maximal_ideals(a: &CayleyAlgebra, limits: &Limits) -> Result<Vec<ElementSet>> {
    let mut out = Vec::new();
    for i in all_ideals(a, limits)? {
        if !i.is_full() && is_maximal_ideal(a, &i)? {
            out.push(i);
        }
    }
    Ok(out)
}

pub fn prime_ideals(a: &CayleyAlgebra, limits: &Limits) -> Result<Vec<ElementSet>> {
    let mut out = Vec::new();
    for i in all_ideals(a, limits)? {
        if !i.is_full() && is_prime_ideal(a, &i)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// A partition of the carrier. Classes are indexed by their least element,
/// so the class of 0 is always class 0.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CongruenceRelation {
    class_of: Vec<usize>,
    classes: Vec<ElementSet>,
}

impl CongruenceRelation {
    /// Builds the partition from any labelling of the elements.
    pub fn from_labels(labels: &[usize]) -> Self {
        let n = labels.len();
        let mut first_seen: Vec<(usize, usize)> = Vec::new();
        for (x, &l) in labels.iter().enumerate() {
            if !first_seen.iter().any(|&(lab, _)| lab == l) {
                first_seen.push((l, x));
            }
        }
        // first occurrence order is minimal-representative order
        let index_of = |l: usize| first_seen.iter().position(|&(lab, _)| lab == l).unwrap();
        let class_of: Vec<usize> = labels.iter().map(|&l| index_of(l)).collect();
        let mut classes = vec![ElementSet::empty(n); first_seen.len()];
        for (x, &c) in class_of.iter().enumerate() {
            classes[c].insert(x);
        }
        CongruenceRelation { class_of, classes }
    }

    pub fn discrete(n: usize) -> Self {
        Self::from_labels(&(0..n).collect::<Vec<_>>())
    }

    pub fn order(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn classes(&self) -> &[ElementSet] {
        &self.classes
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    /// `[0]`
    pub fn zero_class(&self) -> &ElementSet {
        &self.classes[0]
    }

    /// The projection onto class indices.
    pub fn projection(&self) -> UnaryMap {
        UnaryMap::new(self.class_of.clone())
    }

    /// Class of `x*y` depends only on the classes of `x` and `y`.
    pub fn is_compatible(&self, a: &CayleyAlgebra) -> bool {
        let n = a.order();
        (0..n).all(|x| {
            let rep = self.classes[self.class_of[x]].first().unwrap();
            (0..n).all(|y| {
                self.related(a.op(x, y), a.op(rep, y)) && self.related(a.op(y, x), a.op(y, rep))
            })
        })
    }

    pub fn respects(&self, mu: &UnaryMap) -> bool {
        (0..self.order()).all(|x| {
            let rep = self.classes[self.class_of[x]].first().unwrap();
            self.related(mu.apply(x), mu.apply(rep))
        })
    }

    /// Quotient table on class indices; `None` if not compatible.
    fn quotient_table(&self, a: &CayleyAlgebra) -> Option<CayleyTable> {
        if !self.is_compatible(a) {
            return None;
        }
        let k = self.class_count();
        let reps: Vec<usize> = self.classes.iter().map(|c| c.first().unwrap()).collect();
        let cells = reps
            .iter()
            .flat_map(|&u| reps.iter().map(move |&v| (u, v)))
            .map(|(u, v)| self.class_of[a.op(u, v)])
            .collect();
        Some(CayleyTable::from_flat(k, cells).expect("class indices are in range"))
    }
}

impl fmt::Display for CongruenceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.classes {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CongruenceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CongruenceRelation({self})")
    }
}

/// `θ_I`: `x ~ y` iff `x*y` and `y*x` lie in `I`.
pub fn congruence_of(a: &CayleyAlgebra, ideal: &ElementSet) -> Result<CongruenceRelation> {
    if !is_ideal(a, ideal) {
        return Err(Error::domain(format!("{ideal} is not an ideal")));
    }
    let labels: Vec<usize> = a
        .elements()
        .map(|x| {
            a.elements()
                .find(|&y| ideal.contains(a.op(x, y)) && ideal.contains(a.op(y, x)))
                .expect("x is related to itself")
        })
        .collect();
    let theta = CongruenceRelation::from_labels(&labels);
    debug_assert!(theta.is_compatible(a));
    debug_assert_eq!(theta.zero_class(), ideal);
    Ok(theta)
}

/// `X/I` with the projection `X -> X/I`.
pub fn quotient(a: &CayleyAlgebra, ideal: &ElementSet) -> Result<(CayleyAlgebra, UnaryMap)> {
    let theta = congruence_of(a, ideal)?;
    let table = theta.quotient_table(a).ok_or_else(|| {
        Error::Inconsistent(format!(
            "θ for {ideal} is not compatible with the operation"
        ))
    })?;
    let q = check_bck(table).map_err(|e| {
        Error::Inconsistent(format!("quotient by {ideal} is not a BCK-algebra: {e}"))
    })?;
    debug_assert!(!is_commutative_ideal(a, ideal) || classify(&q).commutative);
    Ok((q, theta.projection()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadicalReport {
    pub radical: ElementSet,
    pub maximal: Vec<ElementSet>,
    /// `None` for the trivial algebra.
    pub simple: Option<bool>,
    pub semisimple: bool,
}

pub fn radical_and_simplicity(a: &CayleyAlgebra, limits: &Limits) -> Result<RadicalReport> {
    let ideals = all_ideals(a, limits)?;
    let maximal = maximal_ideals(a, limits)?;
    let radical = maximal
        .iter()
        .fold(a.full_set(), |acc, m| acc.intersection(m));
    Ok(RadicalReport {
        semisimple: radical.is_zero(),
        simple: (!a.is_trivial()).then_some(ideals.len() == 2),
        radical,
        maximal,
    })
}

/// Nonzero ideals have a least element. `None` for the trivial algebra.
pub fn least_nonzero(sets: &[ElementSet]) -> Option<Option<ElementSet>> {
    let nonzero: Vec<&ElementSet> = sets.iter().filter(|s| !s.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    let meet = nonzero
        .iter()
        .skip(1)
        .fold(nonzero[0].clone(), |acc, s| acc.intersection(s));
    Some(nonzero.iter().any(|s| **s == meet).then_some(meet))
}

/// Equivalences compatible with `*` (and with `mu` when given) whose
/// quotient table is again a BCK-algebra, in restricted-growth order.
pub fn all_congruences(
    a: &CayleyAlgebra,
    mu: Option<&UnaryMap>,
    limits: &Limits,
) -> Result<Vec<CongruenceRelation>> {
    let n = a.order();
    limits.check_partitions("congruence enumeration", n)?;
    if let Some(m) = mu {
        m.check(n, n)?;
    }
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn walk(
        a: &CayleyAlgebra,
        mu: Option<&UnaryMap>,
        labels: &mut Vec<usize>,
        k: usize,
        max_label: usize,
        out: &mut Vec<CongruenceRelation>,
    ) {
        let n = labels.len();
        if k == n {
            let theta = CongruenceRelation::from_labels(labels);
            if mu.is_none_or(|m| theta.respects(m)) {
                if let Some(t) = theta.quotient_table(a) {
                    if axiom_violations(&t).is_empty() {
                        out.push(theta);
                    }
                }
            }
            return;
        }
        for l in 0..=max_label + 1 {
            labels[k] = l;
            walk(a, mu, labels, k + 1, max_label.max(l), out);
        }
    }
    if n == 1 {
        return Ok(vec![CongruenceRelation::discrete(1)]);
    }
    walk(a, mu, &mut labels, 1, 0, &mut out);
    Ok(out)
}
