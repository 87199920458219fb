//! State operators, state-morphism operators and state ideals.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{restrict, CayleyAlgebra};
use crate::error::{Error, Result};
use crate::ideals::{
    all_congruences, all_ideals, generated_ideal, is_ideal, is_maximal_ideal, least_nonzero,
    principal_ideal, quotient, radical_and_simplicity, reduces_into, CongruenceRelation,
};
use crate::limits::Limits;
use crate::map::UnaryMap;
use crate::set::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    LeftState,
    RightState,
    StateMorphism,
}

impl StateKind {
    pub const ALL: [StateKind; 3] = [
        StateKind::LeftState,
        StateKind::RightState,
        StateKind::StateMorphism,
    ];
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateKind::LeftState => "left",
            StateKind::RightState => "right",
            StateKind::StateMorphism => "morphism",
        })
    }
}

impl FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "left" | "left_state" => Ok(StateKind::LeftState),
            "right" | "right_state" => Ok(StateKind::RightState),
            "morphism" | "state_morphism" => Ok(StateKind::StateMorphism),
            other => Err(Error::domain(format!(
                "unknown operator kind `{other}` (expected left, right or morphism)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StateRule {
    /// `x*y = 0` implies `μx*μy = 0`
    S0,
    /// `μ(x*y) = μx*μ(x*(x*y))`
    S1Left,
    /// `μ(x*y) = μx*μ(y*(y*x))`
    S1Right,
    /// `μ(μx*μy) = μx*μy`
    S2,
    Homomorphism,
    Idempotence,
}

impl fmt::Display for StateRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StateRule::S0 => "S0",
            StateRule::S1Left => "S1",
            StateRule::S1Right => "S1 (right)",
            StateRule::S2 => "S2",
            StateRule::Homomorphism => "homomorphism",
            StateRule::Idempotence => "idempotence",
        })
    }
}

/// The first failed instance found when certifying a map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateViolation {
    pub kind: StateKind,
    pub rule: StateRule,
    pub x: usize,
    pub y: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl StateViolation {
    pub fn pair(&self) -> (usize, usize) {
        (self.x, self.y)
    }
}

impl fmt::Display for StateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (x, y, l, r) = (self.x, self.y, self.lhs, self.rhs);
        match self.rule {
            StateRule::S0 => write!(f, "S0 at ({x}, {y}): x*y = 0 but μ(x)*μ(y) = {l}"),
            StateRule::S1Left => write!(
                f,
                "S1 at ({x}, {y}): μ(x*y) = {l} but μ(x)*μ(x*(x*y)) = {r}"
            ),
            StateRule::S1Right => write!(
                f,
                "S1 (right) at ({x}, {y}): μ(x*y) = {l} but μ(x)*μ(y*(y*x)) = {r}"
            ),
            StateRule::S2 => write!(
                f,
                "S2 at ({x}, {y}): μ(μ(x)*μ(y)) = {l} but μ(x)*μ(y) = {r}"
            ),
            StateRule::Homomorphism => write!(
                f,
                "homomorphism at ({x}, {y}): μ(x*y) = {l} but μ(x)*μ(y) = {r}"
            ),
            StateRule::Idempotence => write!(f, "idempotence at {x}: μ(μ(x)) = {l} but μ(x) = {r}"),
        }
    }
}

const UNSET: usize = usize::MAX;

/// Scans pairs in row-major order. Instances needing an unassigned value
/// (`UNSET`) are skipped, so this also serves as a sound partial check.
fn scan(a: &CayleyAlgebra, vals: &[usize], kind: StateKind) -> Option<StateViolation> {
    let get = |i: usize| (vals[i] != UNSET).then_some(vals[i]);
    let n = a.order();
    let fail = |rule, x, y, lhs, rhs| {
        Some(StateViolation {
            kind,
            rule,
            x,
            y,
            lhs,
            rhs,
        })
    };
    match kind {
        StateKind::LeftState | StateKind::RightState => {
            for x in 0..n {
                for y in 0..n {
                    let xy = a.op(x, y);
                    let (mx, my) = (get(x), get(y));
                    if let (Some(mx), Some(my)) = (mx, my) {
                        if xy == 0 && a.op(mx, my) != 0 {
                            return fail(StateRule::S0, x, y, a.op(mx, my), 0);
                        }
                    }
                    let (rule, inner) = if kind == StateKind::LeftState {
                        (StateRule::S1Left, a.meet(x, y))
                    } else {
                        (StateRule::S1Right, a.meet(y, x))
                    };
                    if let (Some(l), Some(mx), Some(mi)) = (get(xy), mx, get(inner)) {
                        if l != a.op(mx, mi) {
                            return fail(rule, x, y, l, a.op(mx, mi));
                        }
                    }
                    if let (Some(mx), Some(my)) = (mx, my) {
                        let t = a.op(mx, my);
                        if let Some(mt) = get(t) {
                            if mt != t {
                                return fail(StateRule::S2, x, y, mt, t);
                            }
                        }
                    }
                }
            }
        }
        StateKind::StateMorphism => {
            for x in 0..n {
                for y in 0..n {
                    if let (Some(l), Some(mx), Some(my)) = (get(a.op(x, y)), get(x), get(y)) {
                        if l != a.op(mx, my) {
                            return fail(StateRule::Homomorphism, x, y, l, a.op(mx, my));
                        }
                    }
                }
            }
            for x in 0..n {
                if let Some(mx) = get(x) {
                    if let Some(mmx) = get(mx) {
                        if mmx != mx {
                            return fail(StateRule::Idempotence, x, x, mmx, mx);
                        }
                    }
                }
            }
        }
    }
    None
}

/// First violated instance, or `None` when `mu` is an operator of `kind`.
pub fn state_violation(
    a: &CayleyAlgebra,
    mu: &UnaryMap,
    kind: StateKind,
) -> Result<Option<StateViolation>> {
    mu.check(a.order(), a.order())?;
    Ok(scan(a, mu.values(), kind))
}

/// An algebra with a map certified as at least one kind of operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateAlgebra {
    #[serde(skip)]
    algebra: CayleyAlgebra,
    mu: UnaryMap,
    left: bool,
    right: bool,
    morphism: bool,
}

impl StateAlgebra {
    fn build(a: &CayleyAlgebra, mu: &UnaryMap) -> Self {
        let holds = |k| scan(a, mu.values(), k).is_none();
        StateAlgebra {
            algebra: a.clone(),
            mu: mu.clone(),
            left: holds(StateKind::LeftState),
            right: holds(StateKind::RightState),
            morphism: holds(StateKind::StateMorphism),
        }
    }

    pub fn algebra(&self) -> &CayleyAlgebra {
        &self.algebra
    }

    pub fn mu(&self) -> &UnaryMap {
        &self.mu
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.mu.apply(x)
    }

    pub fn is(&self, kind: StateKind) -> bool {
        match kind {
            StateKind::LeftState => self.left,
            StateKind::RightState => self.right,
            StateKind::StateMorphism => self.morphism,
        }
    }

    /// Every kind the map was certified for.
    pub fn kinds(&self) -> Vec<StateKind> {
        StateKind::ALL.into_iter().filter(|&k| self.is(k)).collect()
    }

    /// The strongest certification: morphism, then right, then left.
    pub fn kind(&self) -> StateKind {
        *self
            .kinds()
            .last()
            .expect("certified for at least one kind")
    }

    pub fn kernel(&self) -> ElementSet {
        self.mu.kernel()
    }

    pub fn image(&self) -> ElementSet {
        self.mu.image(self.algebra.order())
    }
}

/// Certifies `mu` as an operator of `kind`, recording every other kind that
/// also holds. Fails with the first violated instance.
pub fn certify_state(a: &CayleyAlgebra, mu: &UnaryMap, kind: StateKind) -> Result<StateAlgebra> {
    if let Some(v) = state_violation(a, mu, kind)? {
        return Err(Error::State(v));
    }
    Ok(StateAlgebra::build(a, mu))
}

/// Certifies `mu` for whichever kinds hold; `None` if none does.
pub fn certify_any(a: &CayleyAlgebra, mu: &UnaryMap) -> Result<Option<StateAlgebra>> {
    mu.check(a.order(), a.order())?;
    let sa = StateAlgebra::build(a, mu);
    Ok((sa.left || sa.right || sa.morphism).then_some(sa))
}

/// Every operator of `kind`, in lexicographic order of value arrays.
pub fn enumerate_state_operators(
    a: &CayleyAlgebra,
    kind: StateKind,
    limits: &Limits,
) -> Result<Vec<StateAlgebra>> {
    let n = a.order();
    limits.check_maps("state operator enumeration", n)?;
    // every kind forces μ(0) = 0
    let mut root = vec![UNSET; n];
    root[0] = 0;
    let maps: Vec<Vec<usize>> = if n == 1 {
        vec![root]
    } else {
        (0..n)
            .into_par_iter()
            .flat_map_iter(|v| {
                let mut vals = root.clone();
                vals[1] = v;
                let mut found = Vec::new();
                if scan(a, &vals, kind).is_none() {
                    extend(a, kind, &mut vals, 2, &mut found);
                }
                found
            })
            .collect()
    };
    maps.into_iter()
        .map(|v| {
            certify_state(a, &UnaryMap::new(v), kind)
                .map_err(|e| Error::Inconsistent(format!("pruned search kept a bad map: {e}")))
        })
        .collect()
}

fn extend(
    a: &CayleyAlgebra,
    kind: StateKind,
    vals: &mut Vec<usize>,
    k: usize,
    found: &mut Vec<Vec<usize>>,
) {
    let n = a.order();
    if k == n {
        found.push(vals.clone());
        return;
    }
    for v in 0..n {
        vals[k] = v;
        if scan(a, vals, kind).is_none() {
            extend(a, kind, vals, k + 1, found);
        }
    }
    vals[k] = UNSET;
}

/// `α_x(a) = a*x`, a state-morphism when `a*x = (a*x)*x` for all `a`.
pub fn right_translation_morphism(a: &CayleyAlgebra, x: usize) -> Result<StateAlgebra> {
    if x >= a.order() {
        return Err(Error::domain(format!("{x} is not an element")));
    }
    if let Some(w) = a.elements().find(|&e| a.op(e, x) != a.power(e, x, 2)) {
        return Err(Error::domain(format!(
            "a*x = a*x^2 fails for a = {w}, x = {x}"
        )));
    }
    let alpha = UnaryMap::new(a.elements().map(|e| a.op(e, x)).collect());
    certify_state(a, &alpha, StateKind::StateMorphism)
        .map_err(|e| Error::Inconsistent(format!("right translation by {x}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelImage {
    pub kernel: ElementSet,
    pub image: ElementSet,
}

pub fn kernel_image(sa: &StateAlgebra) -> KernelImage {
    let out = KernelImage {
        kernel: sa.kernel(),
        image: sa.image(),
    };
    debug_assert!(is_ideal(sa.algebra(), &out.kernel));
    debug_assert!(out.kernel.intersection(&out.image).is_zero());
    out
}

pub fn is_state_ideal(sa: &StateAlgebra, s: &ElementSet) -> bool {
    is_ideal(sa.algebra(), s) && s.iter().all(|x| s.contains(sa.apply(x)))
}

pub fn all_state_ideals(sa: &StateAlgebra, limits: &Limits) -> Result<Vec<ElementSet>> {
    let mu = sa.mu();
    Ok(all_ideals(sa.algebra(), limits)?
        .into_iter()
        .filter(|i| i.iter().all(|x| i.contains(mu.apply(x))))
        .collect())
}

/// Intersection of every state ideal containing `t`.
pub fn least_state_ideal(sa: &StateAlgebra, t: &ElementSet, limits: &Limits) -> Result<ElementSet> {
    Ok(all_state_ideals(sa, limits)?
        .into_iter()
        .filter(|i| t.is_subset(i))
        .fold(sa.algebra().full_set(), |acc, i| acc.intersection(&i)))
}

fn require_state_ideal(sa: &StateAlgebra, ideal: &ElementSet) -> Result<()> {
    if is_state_ideal(sa, ideal) {
        Ok(())
    } else {
        Err(Error::domain(format!("{ideal} is not a state ideal")))
    }
}

/// `{x : (x*a^n)*μ(a)^m ∈ I for some m, n}` with `m, n` up to the carrier
/// size; iterated subtraction is monotone and stabilises within that bound.
pub fn adjoin_formula(sa: &StateAlgebra, ideal: &ElementSet, elem: usize) -> ElementSet {
    let a = sa.algebra();
    let bound = a.order();
    let ma = sa.apply(elem);
    let members = a.elements().filter(|&x| {
        (0..=bound).any(|n| {
            let xn = a.power(x, elem, n);
            (0..=bound).any(|m| ideal.contains(a.power(xn, ma, m)))
        })
    });
    ElementSet::from_elements(a.order(), members)
}

/// `⟨I ∪ {a}⟩ₛ` by the adjoining formula, checked against the intersection
/// of all state ideals containing `I ∪ {a}`.
pub fn generated_state_ideal_adjoin(
    sa: &StateAlgebra,
    ideal: &ElementSet,
    elem: usize,
    limits: &Limits,
) -> Result<ElementSet> {
    require_state_ideal(sa, ideal)?;
    let formula = adjoin_formula(sa, ideal, elem);
    let mut t = ideal.clone();
    t.insert(elem);
    let oracle = least_state_ideal(sa, &t, limits)?;
    if formula != oracle {
        return Err(Error::Inconsistent(format!(
            "state ideal generated by {ideal} and {elem}: formula gives {formula}, intersection gives {oracle}"
        )));
    }
    Ok(formula)
}

/// `{a : some reduction of a by μ-images of members of I lands in I}`.
pub fn morphism_hull_formula(sa: &StateAlgebra, ideal: &ElementSet) -> ElementSet {
    let by = ideal.map(sa.algebra().order(), |x| sa.apply(x));
    reduces_into(sa.algebra(), &by, ideal)
}

/// `⟨I⟩ₛ` for a state-morphism operator, by reductions, checked against the
/// intersection route.
pub fn generated_state_ideal_morphism(
    sa: &StateAlgebra,
    ideal: &ElementSet,
    limits: &Limits,
) -> Result<ElementSet> {
    if !sa.is(StateKind::StateMorphism) {
        return Err(Error::domain("operator is not a state-morphism"));
    }
    if !is_ideal(sa.algebra(), ideal) {
        return Err(Error::domain(format!("{ideal} is not an ideal")));
    }
    let formula = morphism_hull_formula(sa, ideal);
    let oracle = least_state_ideal(sa, ideal, limits)?;
    if formula != oracle {
        return Err(Error::Inconsistent(format!(
            "state ideal generated by {ideal}: formula gives {formula}, intersection gives {oracle}"
        )));
    }
    Ok(formula)
}

/// Proper state ideals `I` with `⟨I ∪ {x}⟩ₛ = X` for every `x ∉ I`.
pub fn maximal_state_ideals(sa: &StateAlgebra, limits: &Limits) -> Result<Vec<ElementSet>> {
    Ok(all_state_ideals(sa, limits)?
        .into_iter()
        .filter(|i| {
            !i.is_full()
                && i.complement()
                    .iter()
                    .all(|x| adjoin_formula(sa, i, x).is_full())
        })
        .collect())
}

/// Congruences of `(X, μ)`.
pub fn state_congruences(sa: &StateAlgebra, limits: &Limits) -> Result<Vec<CongruenceRelation>> {
    all_congruences(sa.algebra(), Some(sa.mu()), limits)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SiVerdict {
    pub irreducible: bool,
    pub least_nonzero: Option<ElementSet>,
}

/// Irreducible iff the nonzero state ideals have a least element.
pub fn subdirectly_irreducible(sa: &StateAlgebra, limits: &Limits) -> Result<SiVerdict> {
    let ideals = all_state_ideals(sa, limits)?;
    match least_nonzero(&ideals) {
        None => Err(Error::NotApplicable(
            "subdirect irreducibility of the trivial algebra".into(),
        )),
        Some(least) => Ok(SiVerdict {
            irreducible: least.is_some(),
            least_nonzero: least,
        }),
    }
}

/// The plain algebra, i.e. with the identity operator.
pub fn algebra_subdirectly_irreducible(a: &CayleyAlgebra, limits: &Limits) -> Result<SiVerdict> {
    let sa = StateAlgebra::build(a, &a.identity_map());
    subdirectly_irreducible(&sa, limits)
}

/// A subalgebra viewed as an algebra; the trivial one is not irreducible.
fn subalgebra_irreducible(a: &CayleyAlgebra, s: &ElementSet, limits: &Limits) -> Result<bool> {
    if s.len() == 1 {
        return Ok(false);
    }
    let (sub, _) = restrict(a, s)?;
    Ok(algebra_subdirectly_irreducible(&sub, limits)?.irreducible)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrrReport {
    pub verdict: bool,
    pub kernel: ElementSet,
    pub image: ElementSet,
    /// `Ker = {0}` and `μ(X)` irreducible.
    pub condition_i: bool,
    /// `Ker ≠ {0}`, `Ker` irreducible, and `Ker ∩ ⟨a⟩ ≠ {0}` for nonzero `a ∈ μ(X)`.
    pub condition_ii: bool,
}

impl IrrReport {
    pub fn agrees(&self) -> bool {
        self.verdict == (self.condition_i || self.condition_ii)
    }
}

/// Evaluates both structural conditions next to the direct verdict.
pub fn check_irr_characterization(sa: &StateAlgebra, limits: &Limits) -> Result<IrrReport> {
    if !sa.is(StateKind::LeftState) {
        return Err(Error::domain("operator is not a left state operator"));
    }
    let a = sa.algebra();
    let verdict = subdirectly_irreducible(sa, limits)?.irreducible;
    let KernelImage { kernel, image } = kernel_image(sa);
    let condition_i = kernel.is_zero() && subalgebra_irreducible(a, &image, limits)?;
    let condition_ii = !kernel.is_zero()
        && subalgebra_irreducible(a, &kernel, limits)?
        && image
            .iter()
            .filter(|&x| x != 0)
            .all(|x| !kernel.intersection(&principal_ideal(a, x)).is_zero());
    Ok(IrrReport {
        verdict,
        kernel,
        image,
        condition_i,
        condition_ii,
    })
}

/// `μ_a`: 0 on `I`, `a` elsewhere, for a maximal `I` with two classes.
pub fn two_class_morphism(
    a: &CayleyAlgebra,
    ideal: &ElementSet,
    elem: usize,
) -> Result<StateAlgebra> {
    if !is_ideal(a, ideal) {
        return Err(Error::domain(format!("{ideal} is not an ideal")));
    }
    if ideal.is_full() || !is_maximal_ideal(a, ideal)? {
        return Err(Error::domain(format!("{ideal} is not a maximal ideal")));
    }
    let (q, _) = quotient(a, ideal)?;
    if q.order() != 2 {
        return Err(Error::domain(format!(
            "quotient by {ideal} has {} classes, not 2",
            q.order()
        )));
    }
    if elem >= a.order() || ideal.contains(elem) {
        return Err(Error::domain(format!("{elem} is not outside {ideal}")));
    }
    let mu = UnaryMap::new(
        a.elements()
            .map(|x| if ideal.contains(x) { 0 } else { elem })
            .collect(),
    );
    certify_state(a, &mu, StateKind::StateMorphism)
        .map_err(|e| Error::Inconsistent(format!("two-class map for {ideal}, {elem}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateSimplicity {
    /// Exactly two state ideals; `None` for the trivial algebra.
    pub simple: Option<bool>,
    /// The maximal state ideals meet in `{0}`.
    pub semisimple: bool,
    pub maximal_state_ideals: Vec<ElementSet>,
    pub meet: ElementSet,
}

pub fn simple_semisimple_state(sa: &StateAlgebra, limits: &Limits) -> Result<StateSimplicity> {
    let a = sa.algebra();
    let count = all_state_ideals(sa, limits)?.len();
    let maxs = maximal_state_ideals(sa, limits)?;
    let meet = maxs.iter().fold(a.full_set(), |acc, m| acc.intersection(m));
    Ok(StateSimplicity {
        simple: (!a.is_trivial()).then_some(count == 2),
        semisimple: meet.is_zero(),
        maximal_state_ideals: maxs,
        meet,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClauseCheck {
    pub clause: &'static str,
    /// Hypotheses met, so the conclusion was tested.
    pub applicable: bool,
    pub holds: bool,
    pub detail: String,
}

fn clause(name: &'static str, applicable: bool, holds: bool, detail: String) -> ClauseCheck {
    ClauseCheck {
        clause: name,
        applicable,
        holds: !applicable || holds,
        detail,
    }
}

/// A subalgebra is simple when it has exactly two ideals of its own.
fn subalgebra_simple(a: &CayleyAlgebra, s: &ElementSet, limits: &Limits) -> Result<(bool, bool)> {
    let (sub, _) = restrict(a, s)?;
    let r = radical_and_simplicity(&sub, limits)?;
    Ok((r.simple.unwrap_or(false), r.semisimple))
}

/// Evaluates the simplicity and semisimplicity statements for a
/// state-morphism operator:
/// `image-simple-iff-kernel-maximal`, `image-semisimple-iff-radical-in-kernel`,
/// `simple-iff-algebra-simple`, `semisimple-image-meet-in-kernel`,
/// `bounded-semisimple-is-identity`.
pub fn simplicity_clauses(sa: &StateAlgebra, limits: &Limits) -> Result<Vec<ClauseCheck>> {
    if !sa.is(StateKind::StateMorphism) {
        return Err(Error::domain("operator is not a state-morphism"));
    }
    let a = sa.algebra();
    let KernelImage { kernel, image } = kernel_image(sa);
    let (image_simple, image_semisimple) = subalgebra_simple(a, &image, limits)?;
    let kernel_maximal = !kernel.is_full() && is_maximal_ideal(a, &kernel)?;
    let plain = radical_and_simplicity(a, limits)?;
    let st = simple_semisimple_state(sa, limits)?;
    let radical_in_kernel = plain.radical.is_subset(&kernel);

    let mut out = vec![
        clause(
            "image-simple-iff-kernel-maximal",
            true,
            image_simple == kernel_maximal,
            format!("image simple: {image_simple}, kernel {kernel} maximal: {kernel_maximal}"),
        ),
        clause(
            "image-semisimple-iff-radical-in-kernel",
            true,
            image_semisimple == radical_in_kernel,
            format!(
                "image semisimple: {image_semisimple}, radical {} within kernel {kernel}: {radical_in_kernel}",
                plain.radical
            ),
        ),
    ];
    let (st_simple, x_simple) = (st.simple.unwrap_or(false), plain.simple.unwrap_or(false));
    out.push(clause(
        "simple-iff-algebra-simple",
        !a.is_trivial(),
        st_simple == x_simple,
        format!("state algebra simple: {st_simple}, algebra simple: {x_simple}"),
    ));
    out.push(clause(
        "semisimple-image-meet-in-kernel",
        image_semisimple,
        st.meet.is_subset(&kernel),
        format!(
            "meet of maximal state ideals {} vs kernel {kernel}",
            st.meet
        ),
    ));
    let top = a.greatest();
    let fixes_top = top.is_some_and(|t| sa.apply(t) == t);
    out.push(clause(
        "bounded-semisimple-is-identity",
        !a.is_trivial() && fixes_top && st.semisimple,
        *sa.mu() == a.identity_map(),
        format!("μ = {}", sa.mu()),
    ));
    Ok(out)
}

/// First `(M, I, J)` with `M` maximal, `I ∩ J ⊆ M`, and neither inside `M`.
pub fn maximal_state_prime_witness(
    sa: &StateAlgebra,
    limits: &Limits,
) -> Result<Option<(ElementSet, ElementSet, ElementSet)>> {
    let si = all_state_ideals(sa, limits)?;
    for m in maximal_state_ideals(sa, limits)? {
        if let Some((i, j)) = prime_among(&si, &m) {
            return Ok(Some((m, i, j)));
        }
    }
    Ok(None)
}

/// Breaks primeness of `p` with respect to `family`.
pub fn prime_among(family: &[ElementSet], p: &ElementSet) -> Option<(ElementSet, ElementSet)> {
    for i in family {
        for j in family {
            if i.intersection(j).is_subset(p) && !i.is_subset(p) && !j.is_subset(p) {
                return Some((i.clone(), j.clone()));
            }
        }
    }
    None
}

/// Ideal generated by `Ker ∪ Im`.
pub fn kernel_image_span(sa: &StateAlgebra) -> ElementSet {
    let KernelImage { kernel, image } = kernel_image(sa);
    generated_ideal(sa.algebra(), &kernel.union(&image))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::direct_product;
    use crate::fixtures::{b2, c4, pm, t1};

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(n, xs.iter().copied())
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn pm_is_left_not_right_not_morphism() {
        let a = c4();
        let sa = certify_state(&a, &pm(), StateKind::LeftState).unwrap();
        assert_eq!(sa.kinds(), vec![StateKind::LeftState]);
        let Err(Error::State(v)) = certify_state(&a, &pm(), StateKind::RightState) else {
            panic!("right state should fail");
        };
        assert_eq!(v.rule, StateRule::S1Right);
        let Err(Error::State(v)) = certify_state(&a, &pm(), StateKind::StateMorphism) else {
            panic!("morphism should fail");
        };
        assert_eq!((v.x, v.y, v.lhs, v.rhs), (3, 2, 2, 0));
    }

    #[test]
    fn right_violation_witness_on_pm() {
        let v = state_violation(&c4(), &pm(), StateKind::RightState)
            .unwrap()
            .unwrap();
        // μ(2*3) = 0 but μ(2)*μ(3*(3*2)) = 2*μ(0) = 2
        assert_eq!((v.x, v.y, v.lhs, v.rhs), (2, 3, 0, 2));
    }

    #[test]
    fn enumeration_on_b2_and_c4() {
        let ops = enumerate_state_operators(&b2(), StateKind::StateMorphism, &lim()).unwrap();
        let maps: Vec<&[usize]> = ops.iter().map(|s| s.mu().values()).collect();
        assert_eq!(maps, vec![&[0, 0][..], &[0, 1][..]]);

        let a = c4();
        let left: Vec<UnaryMap> = enumerate_state_operators(&a, StateKind::LeftState, &lim())
            .unwrap()
            .into_iter()
            .map(|s| s.mu().clone())
            .collect();
        for m in [a.identity_map(), a.zero_map(), pm()] {
            assert!(left.contains(&m), "{m} missing");
        }
        let brute: Vec<UnaryMap> = UnaryMap::all(4, 4)
            .filter(|m| {
                state_violation(&a, m, StateKind::LeftState)
                    .unwrap()
                    .is_none()
            })
            .collect();
        assert_eq!(left, brute);

        let morph: Vec<UnaryMap> = enumerate_state_operators(&a, StateKind::StateMorphism, &lim())
            .unwrap()
            .into_iter()
            .map(|s| s.mu().clone())
            .collect();
        for v in [[0, 1, 2, 3], [0, 0, 2, 3], [0, 0, 0, 3], [0, 0, 0, 0]] {
            assert!(morph.contains(&UnaryMap::new(v.to_vec())));
        }
    }

    #[test]
    fn enumeration_respects_map_cap() {
        let small = Limits {
            max_map_candidates: 255,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_state_operators(&c4(), StateKind::LeftState, &small),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn right_translations() {
        let a = c4();
        assert_eq!(
            *right_translation_morphism(&a, 0).unwrap().mu(),
            a.identity_map()
        );
        assert_eq!(
            *right_translation_morphism(&a, 3).unwrap().mu(),
            a.zero_map()
        );
        assert_eq!(
            right_translation_morphism(&a, 2).unwrap().mu().values(),
            &[0, 0, 0, 3]
        );
        assert_eq!(
            right_translation_morphism(&a, 1).unwrap().mu().values(),
            &[0, 0, 2, 3]
        );
    }

    #[test]
    fn kernels_and_images() {
        let a = c4();
        let sa = certify_state(&a, &pm(), StateKind::LeftState).unwrap();
        let ki = kernel_image(&sa);
        assert_eq!((ki.kernel, ki.image), (set(4, &[0, 1]), set(4, &[0, 2])));
        let id = certify_state(&a, &a.identity_map(), StateKind::StateMorphism).unwrap();
        assert_eq!(kernel_image(&id).kernel, set(4, &[0]));
        assert!(kernel_image(&id).image.is_full());
        let a2 = right_translation_morphism(&a, 2).unwrap();
        let ki = kernel_image(&a2);
        assert_eq!((ki.kernel, ki.image), (set(4, &[0, 1, 2]), set(4, &[0, 3])));
        assert!(kernel_image_span(&a2).is_full());
    }

    #[test]
    fn state_ideals() {
        let a = c4();
        let sa = certify_state(&a, &pm(), StateKind::LeftState).unwrap();
        assert!(is_state_ideal(&sa, &set(4, &[0, 1])));
        assert!(is_state_ideal(&sa, &set(4, &[0, 1, 2])));
        let id = certify_state(&a, &a.identity_map(), StateKind::LeftState).unwrap();
        assert_eq!(
            all_state_ideals(&id, &lim()).unwrap(),
            all_ideals(&a, &lim()).unwrap()
        );

        let zero = set(4, &[0]);
        assert!(generated_state_ideal_adjoin(&sa, &zero, 3, &lim())
            .unwrap()
            .is_full());
        assert_eq!(
            generated_state_ideal_adjoin(&sa, &zero, 1, &lim()).unwrap(),
            set(4, &[0, 1])
        );
        let i = set(4, &[0, 1, 2]);
        assert_eq!(generated_state_ideal_adjoin(&sa, &i, 2, &lim()).unwrap(), i);
    }

    #[test]
    fn morphism_hulls() {
        let a = c4();
        let a1 = right_translation_morphism(&a, 1).unwrap();
        let i = set(4, &[0, 1]);
        assert_eq!(generated_state_ideal_morphism(&a1, &i, &lim()).unwrap(), i);
        let z = certify_state(&a, &a.zero_map(), StateKind::StateMorphism).unwrap();
        for j in all_ideals(&a, &lim()).unwrap() {
            assert_eq!(generated_state_ideal_morphism(&z, &j, &lim()).unwrap(), j);
        }
        let id = certify_state(&a, &a.identity_map(), StateKind::StateMorphism).unwrap();
        assert_eq!(generated_state_ideal_morphism(&id, &i, &lim()).unwrap(), i);
        let sa = certify_state(&a, &pm(), StateKind::LeftState).unwrap();
        assert!(generated_state_ideal_morphism(&sa, &i, &lim()).is_err());
    }

    #[test]
    fn maximal_state_ideal_lists() {
        let a = c4();
        let id = certify_state(&a, &a.identity_map(), StateKind::LeftState).unwrap();
        assert_eq!(
            maximal_state_ideals(&id, &lim()).unwrap(),
            vec![set(4, &[0, 1, 2])]
        );
        let b = b2();
        let z = certify_state(&b, &b.zero_map(), StateKind::LeftState).unwrap();
        assert_eq!(
            maximal_state_ideals(&z, &lim()).unwrap(),
            vec![set(2, &[0])]
        );
        let sa = certify_state(&a, &pm(), StateKind::LeftState).unwrap();
        assert_eq!(maximal_state_prime_witness(&sa, &lim()).unwrap(), None);
    }

    #[test]
    fn congruence_counts() {
        let a = c4();
        let sa = certify_state(&a, &pm(), StateKind::LeftState).unwrap();
        assert_eq!(
            state_congruences(&sa, &lim()).unwrap().len(),
            all_state_ideals(&sa, &lim()).unwrap().len()
        );
        let id = certify_state(&a, &a.identity_map(), StateKind::LeftState).unwrap();
        assert_eq!(state_congruences(&id, &lim()).unwrap().len(), 4);
        let t = t1();
        let tid = certify_state(&t, &t.identity_map(), StateKind::LeftState).unwrap();
        assert_eq!(state_congruences(&tid, &lim()).unwrap().len(), 1);
    }

    #[test]
    fn irreducibility() {
        let a = c4();
        let id = certify_state(&a, &a.identity_map(), StateKind::LeftState).unwrap();
        let v = subdirectly_irreducible(&id, &lim()).unwrap();
        assert!(v.irreducible);
        assert_eq!(v.least_nonzero, Some(set(4, &[0, 1])));

        let sq = direct_product(&b2(), &b2(), &lim()).unwrap();
        assert!(
            !algebra_subdirectly_irreducible(&sq, &lim())
                .unwrap()
                .irreducible
        );
        let v = algebra_subdirectly_irreducible(&b2(), &lim()).unwrap();
        assert_eq!(v.least_nonzero, Some(set(2, &[0, 1])));
        assert!(matches!(
            algebra_subdirectly_irreducible(&t1(), &lim()),
            Err(Error::NotApplicable(_))
        ));

        let r = check_irr_characterization(&id, &lim()).unwrap();
        assert!(r.verdict && r.condition_i && r.agrees());
        let sa = certify_state(&a, &pm(), StateKind::LeftState).unwrap();
        assert!(check_irr_characterization(&sa, &lim()).unwrap().agrees());
        let z = certify_state(&a, &a.zero_map(), StateKind::LeftState).unwrap();
        let r = check_irr_characterization(&z, &lim()).unwrap();
        assert!(r.kernel.is_full() && r.image.is_zero());
        assert!(!r.condition_i && r.agrees());
    }

    #[test]
    fn two_class_maps() {
        let lim = lim();
        let sq = direct_product(&b2(), &b2(), &lim).unwrap();
        // (0,1) is element 1, (1,0) is element 2, (1,1) is element 3
        let kernel = set(4, &[0, 1]);
        let ma = two_class_morphism(&sq, &kernel, 2).unwrap();
        let mb = two_class_morphism(&sq, &kernel, 3).unwrap();
        assert_ne!(ma.mu(), mb.mu());
        assert_eq!(ma.kernel(), mb.kernel());
        let a = c4();
        assert!(two_class_morphism(&a, &set(4, &[0, 1, 2]), 3).is_ok());
        assert!(matches!(
            two_class_morphism(&a, &set(4, &[0, 1]), 3),
            Err(Error::Domain(_))
        ));
        assert!(two_class_morphism(&a, &set(4, &[0, 1, 2]), 1).is_err());
    }

    #[test]
    fn simplicity() {
        let b = b2();
        let id = certify_state(&b, &b.identity_map(), StateKind::StateMorphism).unwrap();
        assert_eq!(
            simple_semisimple_state(&id, &lim()).unwrap().simple,
            Some(true)
        );
        let a = c4();
        let ida = certify_state(&a, &a.identity_map(), StateKind::StateMorphism).unwrap();
        assert_eq!(
            simple_semisimple_state(&ida, &lim()).unwrap().simple,
            Some(false)
        );
        let a2 = right_translation_morphism(&a, 2).unwrap();
        let clauses = simplicity_clauses(&a2, &lim()).unwrap();
        assert!(clauses.iter().all(|c| c.holds), "{clauses:?}");
        assert!(clauses[0].detail.contains("image simple: true"));
    }
}
