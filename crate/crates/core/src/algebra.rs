//! Finite BCK-algebras given by their Cayley tables.
//!
//! The carrier is always `{0..n-1}` and index 0 is the constant. A raw
//! [`CayleyTable`] only guarantees a square table with in-range entries; a
//! [`CayleyAlgebra`] can only be obtained through [`check_bck`] (or from
//! constructions that preserve the axioms), so every function taking one may
//! rely on the axioms holding.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::map::UnaryMap;
use crate::set::ElementSet;

/// An uncertified square operation table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<usize>,
    name: Option<String>,
}

impl CayleyTable {
    /// Rows are `x*y` for `y = 0..n-1`.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::format(0, "empty table"));
        }
        let mut cells = Vec::with_capacity(order * order);
        for (x, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::format(
                    x + 1,
                    format!("row {x} has {} entries, expected {order}", row.len()),
                ));
            }
            cells.extend(row);
        }
        Self::from_flat(order, cells)
    }

    pub fn from_flat(order: usize, cells: Vec<usize>) -> Result<Self> {
        if order == 0 {
            return Err(Error::format(0, "order must be positive"));
        }
        if cells.len() != order * order {
            return Err(Error::format(
                0,
                format!("{} cells for order {order}", cells.len()),
            ));
        }
        if let Some(i) = cells.iter().position(|&v| v >= order) {
            return Err(Error::format(
                i / order + 1,
                format!(
                    "entry {} at ({}, {}) out of range for order {order}",
                    cells[i],
                    i / order,
                    i % order
                ),
            ));
        }
        Ok(CayleyTable {
            order,
            cells,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// Copy of the table with one cell replaced.
    pub fn with_entry(&self, x: usize, y: usize, value: usize) -> Result<Self> {
        let mut cells = self.cells.clone();
        if x >= self.order || y >= self.order {
            return Err(Error::domain(format!("cell ({x}, {y}) outside table")));
        }
        cells[x * self.order + y] = value;
        let mut t = Self::from_flat(self.order, cells)?;
        t.name = self.name.clone();
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(|r| r.to_vec()).collect()
    }
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyTable")
            .field("name", &self.name)
            .field("rows", &self.rows())
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BckAxiom {
    /// `((x*y)*(x*z))*(z*y) = 0`
    Bck1,
    /// `x*0 = x`
    Bck2,
    /// `x*y = 0 = y*x` implies `x = y`
    Bck3,
    /// `0*x = 0`
    Bck4,
}

impl fmt::Display for BckAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BckAxiom::Bck1 => "BCK1",
            BckAxiom::Bck2 => "BCK2",
            BckAxiom::Bck3 => "BCK3",
            BckAxiom::Bck4 => "BCK4",
        };
        f.write_str(s)
    }
}

/// One failed instance of an axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: BckAxiom,
    /// The instantiated variables, `x` first.
    pub elements: Vec<usize>,
    /// Value the left-hand side evaluated to.
    pub found: usize,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.elements;
        match self.axiom {
            BckAxiom::Bck1 => write!(
                f,
                "BCK1 at x={} y={} z={}: ((x*y)*(x*z))*(z*y) = {}",
                e[0], e[1], e[2], self.found
            ),
            BckAxiom::Bck2 => write!(f, "BCK2 at x={}: x*0 = {}", e[0], self.found),
            BckAxiom::Bck3 => write!(
                f,
                "BCK3 at x={} y={}: x*y = y*x = 0 with x != y",
                e[0], e[1]
            ),
            BckAxiom::Bck4 => write!(f, "BCK4 at x={}: 0*x = {}", e[0], self.found),
        }
    }
}

/// Lists every failed axiom instance, grouped by axiom.
pub fn axiom_violations(t: &CayleyTable) -> Vec<AxiomViolation> {
    let n = t.order();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let v = t.get(t.get(t.get(x, y), t.get(x, z)), t.get(z, y));
                if v != 0 {
                    out.push(AxiomViolation {
                        axiom: BckAxiom::Bck1,
                        elements: vec![x, y, z],
                        found: v,
                    });
                }
            }
        }
    }
    for x in 0..n {
        if t.get(x, 0) != x {
            out.push(AxiomViolation {
                axiom: BckAxiom::Bck2,
                elements: vec![x],
                found: t.get(x, 0),
            });
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            if t.get(x, y) == 0 && t.get(y, x) == 0 {
                out.push(AxiomViolation {
                    axiom: BckAxiom::Bck3,
                    elements: vec![x, y],
                    found: 0,
                });
            }
        }
    }
    for x in 0..n {
        if t.get(0, x) != 0 {
            out.push(AxiomViolation {
                axiom: BckAxiom::Bck4,
                elements: vec![x],
                found: t.get(0, x),
            });
        }
    }
    out
}

/// Certifies a table as a BCK-algebra.
///
/// Fails with [`Error::NotBck`] listing every failed instance. On success
/// the derived laws are re-checked; a failure there is a bug and panics.
pub fn check_bck(table: CayleyTable) -> Result<CayleyAlgebra> {
    let violations = axiom_violations(&table);
    if !violations.is_empty() {
        return Err(Error::NotBck(violations));
    }
    let algebra = CayleyAlgebra::from_table_unchecked(&table);
    if let Some(law) = derived_law_violation(&algebra) {
        panic!("internal error: derived BCK law fails after certification: {law}");
    }
    Ok(algebra)
}

/// Checks the laws that follow from the axioms: `x*x = 0`, exchange,
/// monotonicity in both arguments, `x*(x*(x*y)) = x*y`, the two
/// `(x*y)*(x*z) <= z*y` style inequalities, and that `<=` is a partial order.
pub fn derived_law_violation(a: &CayleyAlgebra) -> Option<String> {
    let n = a.order();
    let op = |x, y| a.op(x, y);
    let le = |x, y| a.leq(x, y);
    for x in 0..n {
        if op(x, x) != 0 {
            return Some(format!("x*x = 0 fails at x={x}"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if op(x, op(x, op(x, y))) != op(x, y) {
                return Some(format!("x*(x*(x*y)) = x*y fails at x={x} y={y}"));
            }
            for z in 0..n {
                if op(op(x, y), z) != op(op(x, z), y) {
                    return Some(format!("exchange fails at x={x} y={y} z={z}"));
                }
                if le(x, y) && !(le(op(x, z), op(y, z)) && le(op(z, y), op(z, x))) {
                    return Some(format!("monotonicity fails at x={x} y={y} z={z}"));
                }
                if !le(op(op(x, y), op(x, z)), op(z, y)) || !le(op(op(y, x), op(z, x)), op(y, z)) {
                    return Some(format!("subtraction inequality fails at x={x} y={y} z={z}"));
                }
                if le(x, y) && le(y, z) && !le(x, z) {
                    return Some(format!("order not transitive at x={x} y={y} z={z}"));
                }
            }
        }
    }
    None
}

/// A certified finite BCK-algebra. Cloning is cheap.
#[derive(Clone)]
pub struct CayleyAlgebra {
    order: usize,
    cells: Arc<[u32]>,
    name: Option<Arc<str>>,
}

impl PartialEq for CayleyAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.cells == other.cells
    }
}

impl Eq for CayleyAlgebra {}

impl std::hash::Hash for CayleyAlgebra {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.cells.hash(state);
    }
}

impl fmt::Debug for CayleyAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CayleyAlgebra")
            .field("name", &self.name)
            .field("rows", &self.rows())
            .finish()
    }
}

impl CayleyAlgebra {
    fn from_table_unchecked(t: &CayleyTable) -> Self {
        CayleyAlgebra {
            order: t.order,
            cells: t.cells.iter().map(|&v| v as u32).collect(),
            name: t.name.as_deref().map(Arc::from),
        }
    }

    /// For constructions known to preserve the axioms (products,
    /// subalgebras, relabelings).
    pub(crate) fn from_cells_trusted(order: usize, cells: Vec<u32>, name: Option<String>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        CayleyAlgebra {
            order,
            cells: cells.into(),
            name: name.map(Arc::from),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(Arc::from(name.into()));
        self
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// `x * y`
    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.cells[x * self.order + y] as usize
    }

    /// `x <= y` iff `x * y = 0`.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.op(x, y) == 0
    }

    /// `x * y^k`, the `k`-fold right subtraction of `y`.
    pub fn power(&self, x: usize, y: usize, k: usize) -> usize {
        (0..k).fold(x, |acc, _| self.op(acc, y))
    }

    /// `x * (x * y)`, the meet of `x` and `y` in commutative algebras.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.op(x, self.op(x, y))
    }

    /// The greatest element, if the order has one.
    pub fn greatest(&self) -> Option<usize> {
        self.elements()
            .find(|&top| self.elements().all(|x| self.leq(x, top)))
    }

    /// `1 * x` in a bounded algebra.
    pub fn negation(&self, x: usize) -> Option<usize> {
        self.greatest().map(|top| self.op(top, x))
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.order)
    }

    pub fn zero_set(&self) -> ElementSet {
        ElementSet::zero(self.order)
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells
            .chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// The flattened table, row-major.
    pub fn cells(&self) -> Vec<usize> {
        self.cells.iter().map(|&v| v as usize).collect()
    }

    /// An uncertified copy of the table.
    pub fn table(&self) -> CayleyTable {
        CayleyTable {
            order: self.order,
            cells: self.cells(),
            name: self.name.as_deref().map(String::from),
        }
    }

    /// Every element maps to 0.
    pub fn zero_map(&self) -> UnaryMap {
        UnaryMap::zero(self.order)
    }

    pub fn identity_map(&self) -> UnaryMap {
        UnaryMap::identity(self.order)
    }
}

/// `{(x, y) : x * y = 0}` in row-major order.
pub fn partial_order(a: &CayleyAlgebra) -> Vec<(usize, usize)> {
    let mut rel = Vec::new();
    for x in a.elements() {
        for y in a.elements() {
            if a.leq(x, y) {
                rel.push((x, y));
            }
        }
    }
    rel
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub commutative: bool,
    /// The greatest element when the algebra is bounded.
    pub bounded: Option<usize>,
    pub positive_implicative: bool,
    pub linear: bool,
    /// The order is a lattice.
    pub lattice: bool,
}

impl Classification {
    pub fn is_bounded(&self) -> bool {
        self.bounded.is_some()
    }
}

pub fn classify(a: &CayleyAlgebra) -> Classification {
    let els = || a.elements();
    let commutative = els().all(|x| els().all(|y| a.meet(x, y) == a.meet(y, x)));
    let positive_implicative = els()
        .all(|x| els().all(|y| els().all(|z| a.op(a.op(x, y), z) == a.op(a.op(x, z), a.op(y, z)))));
    let linear = els().all(|x| els().all(|y| a.leq(x, y) || a.leq(y, x)));
    Classification {
        commutative,
        bounded: a.greatest(),
        positive_implicative,
        linear,
        lattice: is_lattice(a),
    }
}

/// Meet of `x` and `y` in the order, if it exists.
pub fn order_meet(a: &CayleyAlgebra, x: usize, y: usize) -> Option<usize> {
    let lower: Vec<usize> = a
        .elements()
        .filter(|&z| a.leq(z, x) && a.leq(z, y))
        .collect();
    lower
        .iter()
        .copied()
        .find(|&m| lower.iter().all(|&z| a.leq(z, m)))
}

/// Join of `x` and `y` in the order, if it exists.
pub fn order_join(a: &CayleyAlgebra, x: usize, y: usize) -> Option<usize> {
    let upper: Vec<usize> = a
        .elements()
        .filter(|&z| a.leq(x, z) && a.leq(y, z))
        .collect();
    upper
        .iter()
        .copied()
        .find(|&j| upper.iter().all(|&z| a.leq(j, z)))
}

fn is_lattice(a: &CayleyAlgebra) -> bool {
    a.elements().all(|x| {
        a.elements()
            .all(|y| order_meet(a, x, y).is_some() && order_join(a, x, y).is_some())
    })
}

/// First pair `(a, b)` in row-major order with `f(a*b) != f(a)*f(b)`.
pub fn homomorphism_witness(
    x: &CayleyAlgebra,
    y: &CayleyAlgebra,
    f: &UnaryMap,
) -> Result<Option<(usize, usize)>> {
    f.check(x.order(), y.order())?;
    for a in x.elements() {
        for b in x.elements() {
            if f.apply(x.op(a, b)) != y.op(f.apply(a), f.apply(b)) {
                return Ok(Some((a, b)));
            }
        }
    }
    debug_assert_eq!(f.apply(0), 0);
    Ok(None)
}

pub fn is_homomorphism(x: &CayleyAlgebra, y: &CayleyAlgebra, f: &UnaryMap) -> Result<bool> {
    homomorphism_witness(x, y, f).map(|w| w.is_none())
}

/// Searches for an isomorphism `X -> Y` fixing 0 over permutations of the
/// nonzero elements.
pub fn isomorphic(x: &CayleyAlgebra, y: &CayleyAlgebra) -> Option<UnaryMap> {
    let n = x.order();
    if n != y.order() {
        return None;
    }
    // (size of up-set, size of down-set) is preserved by isomorphisms
    let profile = |a: &CayleyAlgebra, e: usize| {
        let up = a.elements().filter(|&z| a.leq(e, z)).count();
        let down = a.elements().filter(|&z| a.leq(z, e)).count();
        (up, down)
    };
    let px: Vec<_> = x.elements().map(|e| profile(x, e)).collect();
    let py: Vec<_> = y.elements().map(|e| profile(y, e)).collect();
    let mut sorted_x = px.clone();
    let mut sorted_y = py.clone();
    sorted_x.sort_unstable();
    sorted_y.sort_unstable();
    if sorted_x != sorted_y {
        return None;
    }

    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    f[0] = 0;
    used[0] = true;

    fn consistent(x: &CayleyAlgebra, y: &CayleyAlgebra, f: &[usize], k: usize) -> bool {
        for b in 0..=k {
            for (p, q) in [(k, b), (b, k)] {
                let r = x.op(p, q);
                if r <= k && f[r] != y.op(f[p], f[q]) {
                    return false;
                }
            }
        }
        true
    }

    fn search(
        x: &CayleyAlgebra,
        y: &CayleyAlgebra,
        px: &[(usize, usize)],
        py: &[(usize, usize)],
        f: &mut [usize],
        used: &mut [bool],
        k: usize,
    ) -> bool {
        let n = x.order();
        if k == n {
            return true;
        }
        for t in 1..n {
            if used[t] || px[k] != py[t] {
                continue;
            }
            f[k] = t;
            used[t] = true;
            if consistent(x, y, f, k) && search(x, y, px, py, f, used, k + 1) {
                return true;
            }
            used[t] = false;
        }
        f[k] = usize::MAX;
        false
    }

    if search(x, y, &px, &py, &mut f, &mut used, 1) {
        let map = UnaryMap::new(f);
        debug_assert_eq!(homomorphism_witness(x, y, &map), Ok(None));
        Some(map)
    } else {
        None
    }
}

/// Least superset of `S ∪ {0}` closed under `*`.
pub fn subalgebra_closure(a: &CayleyAlgebra, s: &ElementSet) -> ElementSet {
    let mut closed = s.clone();
    closed.insert(0);
    let mut frontier: Vec<usize> = closed.to_vec();
    while let Some(u) = frontier.pop() {
        let members = closed.to_vec();
        for v in members {
            for r in [a.op(u, v), a.op(v, u)] {
                if closed.insert(r) {
                    frontier.push(r);
                }
            }
        }
    }
    closed
}

/// Contains 0 and is closed under `*`.
pub fn is_subalgebra(a: &CayleyAlgebra, s: &ElementSet) -> bool {
    s.contains(0) && s.iter().all(|u| s.iter().all(|v| s.contains(a.op(u, v))))
}

/// Every subalgebra, ordered by size then members.
pub fn all_subalgebras(a: &CayleyAlgebra, limits: &Limits) -> Result<Vec<ElementSet>> {
    let n = a.order();
    limits.check_subsets("subalgebra enumeration", n)?;
    let mut out: Vec<ElementSet> = (0..1u64 << (n - 1))
        .map(|rest| ElementSet::from_mask(n, rest << 1 | 1))
        .filter(|s| is_subalgebra(a, s))
        .collect();
    out.sort();
    Ok(out)
}

/// The subalgebra `S` as an algebra of its own, together with the inclusion
/// (position `i` of the new carrier is element `embedding[i]` of `a`).
pub fn restrict(a: &CayleyAlgebra, s: &ElementSet) -> Result<(CayleyAlgebra, UnaryMap)> {
    if !is_subalgebra(a, s) {
        return Err(Error::domain(format!("{s} is not a subalgebra")));
    }
    let members = s.to_vec();
    let mut index = vec![usize::MAX; a.order()];
    for (i, &m) in members.iter().enumerate() {
        index[m] = i;
    }
    let k = members.len();
    let mut cells = Vec::with_capacity(k * k);
    for &u in &members {
        for &v in &members {
            cells.push(index[a.op(u, v)] as u32);
        }
    }
    Ok((
        CayleyAlgebra::from_cells_trusted(k, cells, None),
        UnaryMap::new(members),
    ))
}

/// Renames element `x` to `perm[x]`; `perm` must be a permutation fixing 0.
pub fn relabel(a: &CayleyAlgebra, perm: &[usize]) -> Result<CayleyAlgebra> {
    let n = a.order();
    let p = UnaryMap::new(perm.to_vec());
    p.check(n, n)?;
    if perm[0] != 0 || !p.is_injective() {
        return Err(Error::domain("relabeling must be a permutation fixing 0"));
    }
    let mut cells = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            cells[perm[x] * n + perm[y]] = perm[a.op(x, y)] as u32;
        }
    }
    Ok(CayleyAlgebra::from_cells_trusted(
        n,
        cells,
        a.name().map(String::from),
    ))
}

/// Index of the pair `(x, y)` in a product whose right factor has
/// `right_order` elements.
#[inline]
pub fn encode_pair(right_order: usize, x: usize, y: usize) -> usize {
    x * right_order + y
}

#[inline]
pub fn decode_pair(right_order: usize, k: usize) -> (usize, usize) {
    (k / right_order, k % right_order)
}

/// `X × Y` with the componentwise operation, pairs encoded row-major.
pub fn direct_product(
    x: &CayleyAlgebra,
    y: &CayleyAlgebra,
    limits: &Limits,
) -> Result<CayleyAlgebra> {
    let (nx, ny) = (x.order(), y.order());
    let n = nx.checked_mul(ny).ok_or(Error::Capacity {
        what: "direct product",
        requested: u128::MAX,
        limit: limits.max_order as u128,
    })?;
    limits.check_order("direct product", n)?;
    let mut cells = Vec::with_capacity(n * n);
    for k in 0..n {
        let (x1, y1) = decode_pair(ny, k);
        for l in 0..n {
            let (x2, y2) = decode_pair(ny, l);
            cells.push(encode_pair(ny, x.op(x1, x2), y.op(y1, y2)) as u32);
        }
    }
    let name = match (x.name(), y.name()) {
        (Some(a), Some(b)) => Some(format!("{a}x{b}")),
        _ => None,
    };
    Ok(CayleyAlgebra::from_cells_trusted(n, cells, name))
}

/// The two coordinate projections of `X × Y`.
pub fn projections(x: &CayleyAlgebra, y: &CayleyAlgebra) -> (UnaryMap, UnaryMap) {
    let ny = y.order();
    let n = x.order() * ny;
    (
        UnaryMap::new((0..n).map(|k| decode_pair(ny, k).0).collect()),
        UnaryMap::new((0..n).map(|k| decode_pair(ny, k).1).collect()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{b2, c4, t1};

    fn set(n: usize, xs: &[usize]) -> ElementSet {
        ElementSet::from_elements(n, xs.iter().copied())
    }

    #[test]
    fn fixtures_certify() {
        for a in [t1(), b2(), c4()] {
            assert!(check_bck(a.table()).is_ok());
        }
    }

    #[test]
    fn broken_bck2_is_reported_at_x1() {
        let bad = c4().table().with_entry(1, 0, 0).unwrap();
        let Err(Error::NotBck(v)) = check_bck(bad) else {
            panic!("expected failure");
        };
        assert!(v
            .iter()
            .any(|w| w.axiom == BckAxiom::Bck2 && w.elements == vec![1] && w.found == 0));
    }

    #[test]
    fn malformed_tables_are_format_errors() {
        assert!(matches!(
            CayleyTable::from_rows(vec![vec![0, 0], vec![1]]),
            Err(Error::Format { .. })
        ));
        assert!(matches!(
            CayleyTable::from_rows(vec![vec![0, 0], vec![1, 2]]),
            Err(Error::Format { .. })
        ));
        assert!(CayleyTable::from_rows(vec![]).is_err());
    }

    #[test]
    fn orders() {
        let chain: Vec<(usize, usize)> = partial_order(&c4());
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(chain.contains(&(x, y)), x <= y);
            }
        }
        assert_eq!(partial_order(&b2()), vec![(0, 0), (0, 1), (1, 1)]);
        assert_eq!(partial_order(&t1()), vec![(0, 0)]);
    }

    #[test]
    fn classify_fixtures() {
        let c = classify(&c4());
        assert!(c.positive_implicative && c.linear && !c.commutative);
        assert_eq!(c.bounded, Some(3));
        assert!(c.lattice);
        // witness of non-commutativity: 2*(2*1) = 0 but 1*(1*2) = 1
        let a = c4();
        assert_eq!(a.meet(2, 1), 0);
        assert_eq!(a.meet(1, 2), 1);

        let b = classify(&b2());
        assert!(b.commutative && b.positive_implicative && b.linear && b.lattice);
        assert_eq!(b.bounded, Some(1));

        let sq = direct_product(&b2(), &b2(), &Limits::default()).unwrap();
        let s = classify(&sq);
        assert!(s.commutative && !s.linear);
        assert_eq!(s.bounded, Some(3));
    }

    #[test]
    fn homomorphisms_on_c4() {
        let a = c4();
        assert_eq!(is_homomorphism(&a, &a, &a.identity_map()), Ok(true));
        let pm = UnaryMap::new(vec![0, 0, 2, 2]);
        assert_eq!(homomorphism_witness(&a, &a, &pm), Ok(Some((3, 2))));
        assert_eq!(
            is_homomorphism(&a, &a, &UnaryMap::new(vec![0, 0, 2, 3])),
            Ok(true)
        );
        assert!(is_homomorphism(&a, &a, &UnaryMap::new(vec![0, 0])).is_err());
    }

    #[test]
    fn isomorphism_search() {
        let a = c4();
        assert_eq!(isomorphic(&a, &a), Some(a.identity_map()));
        assert_eq!(isomorphic(&b2(), &t1()), None);
        let swapped = relabel(&a, &[0, 2, 1, 3]).unwrap();
        assert_ne!(swapped, a);
        let w = isomorphic(&a, &swapped).unwrap();
        assert_eq!(w.values(), &[0, 2, 1, 3]);
        let sq = direct_product(&b2(), &b2(), &Limits::default()).unwrap();
        assert_eq!(isomorphic(&a, &sq), None);
    }

    #[test]
    fn subalgebra_closures() {
        let a = c4();
        assert_eq!(subalgebra_closure(&a, &set(4, &[2])), set(4, &[0, 2]));
        assert_eq!(subalgebra_closure(&a, &ElementSet::empty(4)), set(4, &[0]));
        assert_eq!(subalgebra_closure(&a, &set(4, &[3])), set(4, &[0, 3]));
        // in a chain every subset containing 0 is closed
        assert_eq!(all_subalgebras(&a, &Limits::default()).unwrap().len(), 8);
    }

    #[test]
    fn products() {
        let lim = Limits::default();
        let p = direct_product(&t1(), &c4(), &lim).unwrap();
        assert_eq!(p, c4().with_name("ignored"));
        let q = direct_product(&c4(), &b2(), &lim).unwrap();
        assert_eq!(q.order(), 8);
        assert!(classify(&q).positive_implicative);
        assert!(axiom_violations(&q.table()).is_empty());
        let (p1, p2) = projections(&c4(), &b2());
        assert_eq!(is_homomorphism(&q, &c4(), &p1), Ok(true));
        assert_eq!(is_homomorphism(&q, &b2(), &p2), Ok(true));
        let small = Limits {
            max_order: 7,
            ..Limits::default()
        };
        assert!(matches!(
            direct_product(&c4(), &b2(), &small),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn restriction_keeps_operation() {
        let a = c4();
        let (sub, emb) = restrict(&a, &set(4, &[0, 2, 3])).unwrap();
        assert_eq!(
            sub.rows(),
            vec![vec![0, 0, 0], vec![1, 0, 0], vec![2, 2, 0]]
        );
        assert_eq!(emb.values(), &[0, 2, 3]);
        let sq = direct_product(&b2(), &b2(), &Limits::default()).unwrap();
        assert!(restrict(&sq, &set(4, &[0, 1, 3])).is_err());
    }
}
