//! Brute-force reference implementations written directly from the
//! definitions, sharing nothing with the library beyond table access.

#![allow(dead_code)]

use std::sync::OnceLock;

use bcklab::catalog::{enumerate_bck, Catalog};
use bcklab::{CayleyAlgebra, Limits};

pub type Table = Vec<Vec<usize>>;

pub fn table(a: &CayleyAlgebra) -> Table {
    a.rows()
}

pub fn catalogs_upto(n: usize) -> &'static [Catalog] {
    static CATS: OnceLock<Vec<Catalog>> = OnceLock::new();
    let all = CATS.get_or_init(|| {
        (1..=5)
            .map(|k| enumerate_bck(k, &Limits::default()).unwrap())
            .collect()
    });
    &all[..n]
}

pub fn algebras_upto(n: usize) -> Vec<CayleyAlgebra> {
    catalogs_upto(n)
        .iter()
        .flat_map(|c| c.algebras().cloned())
        .collect()
}

pub fn leq(t: &Table, x: usize, y: usize) -> bool {
    t[x][y] == 0
}

pub fn members(mask: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|&i| mask >> i & 1 == 1).collect()
}

pub fn has(mask: u64, x: usize) -> bool {
    mask >> x & 1 == 1
}

/// `0 ∈ I` and `y*x ∈ I, x ∈ I ⇒ y ∈ I`.
pub fn is_ideal(t: &Table, mask: u64) -> bool {
    let n = t.len();
    has(mask, 0)
        && (0..n).all(|x| !has(mask, x) || (0..n).all(|y| !has(mask, t[y][x]) || has(mask, y)))
}

pub fn ideals(t: &Table) -> Vec<u64> {
    (0..1u64 << t.len()).filter(|&m| is_ideal(t, m)).collect()
}

/// `x ∈ ⟨S⟩` iff some `(..(x*b1)*..)*bk = 0` with `bi ∈ S`, `k ≤ n`.
pub fn generated_by_reductions(t: &Table, s: u64) -> u64 {
    let n = t.len();
    let mut out = 0u64;
    for x in 0..n {
        let mut reach = 1u64 << x;
        for _ in 0..n {
            let mut next = reach;
            for r in members(reach, n) {
                for b in members(s, n) {
                    next |= 1 << t[r][b];
                }
            }
            reach = next;
        }
        if has(reach, 0) {
            out |= 1 << x;
        }
    }
    out
}

pub fn mu_closed(mu: &[usize], mask: u64) -> bool {
    (0..mu.len()).all(|x| !has(mask, x) || has(mask, mu[x]))
}

/// Least `μ`-closed ideal containing `s`, by intersecting all of them.
pub fn least_state_ideal(t: &Table, mu: &[usize], s: u64) -> u64 {
    ideals(t)
        .into_iter()
        .filter(|&i| mu_closed(mu, i) && s & i == s)
        .fold((1u64 << t.len()) - 1, |acc, i| acc & i)
}

pub fn s0(t: &Table, mu: &[usize]) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| t[x][y] != 0 || t[mu[x]][mu[y]] == 0))
}

pub fn s2(t: &Table, mu: &[usize]) -> bool {
    let n = t.len();
    (0..n).all(|x| (0..n).all(|y| mu[t[mu[x]][mu[y]]] == t[mu[x]][mu[y]]))
}

pub fn is_left_state(t: &Table, mu: &[usize]) -> bool {
    let n = t.len();
    s0(t, mu)
        && s2(t, mu)
        && (0..n).all(|x| (0..n).all(|y| mu[t[x][y]] == t[mu[x]][mu[t[x][t[x][y]]]]))
}

pub fn is_right_state(t: &Table, mu: &[usize]) -> bool {
    let n = t.len();
    s0(t, mu)
        && s2(t, mu)
        && (0..n).all(|x| (0..n).all(|y| mu[t[x][y]] == t[mu[x]][mu[t[y][t[y][x]]]]))
}

pub fn is_state_morphism(t: &Table, mu: &[usize]) -> bool {
    let n = t.len();
    (0..n).all(|x| mu[mu[x]] == mu[x] && (0..n).all(|y| mu[t[x][y]] == t[mu[x]][mu[y]]))
}

/// Every map `{0..n} -> {0..n}` as a value vector, lexicographically.
pub fn all_maps(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut v = vec![0; n];
    loop {
        out.push(v.clone());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if v[k] + 1 < n {
                v[k] += 1;
                break;
            }
            v[k] = 0;
        }
    }
}

/// Every set partition of `0..n` as a label vector.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, labels: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if i == labels.len() {
            out.push(labels.clone());
            return;
        }
        for l in 0..=max + 1 {
            labels[i] = l;
            go(i + 1, labels, max.max(l), out);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut labels = vec![0; n];
    go(1, &mut labels, 0, &mut out);
    out
}

/// Compatible with `*` and `μ`, and the quotient satisfies the axioms.
pub fn is_state_congruence(t: &Table, mu: &[usize], labels: &[usize]) -> bool {
    let n = t.len();
    let rel = |a: usize, b: usize| labels[a] == labels[b];
    for x in 0..n {
        for y in 0..n {
            if !rel(x, y) {
                continue;
            }
            if !rel(mu[x], mu[y]) {
                return false;
            }
            if (0..n).any(|z| !rel(t[x][z], t[y][z]) || !rel(t[z][x], t[z][y])) {
                return false;
            }
        }
    }
    // antisymmetry on classes is the only axiom a compatible quotient can lose
    (0..n).all(|x| (0..n).all(|y| !(rel(t[x][y], 0) && rel(t[y][x], 0)) || rel(x, y)))
}

pub fn mask_of(s: &bcklab::ElementSet) -> u64 {
    s.iter().fold(0, |m, x| m | 1 << x)
}
