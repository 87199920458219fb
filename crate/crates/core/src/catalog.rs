//! All BCK-algebras of a small order up to isomorphism, and their on-disk
//! form `n=<k>/entry-<i>.bck` plus `n=<k>/index.tsv`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{
    axiom_violations, check_bck, classify, isomorphic, relabel, CayleyAlgebra, CayleyTable,
    Classification,
};
use crate::error::{Error, Result};
use crate::format::{read_algebra, read_text, write_algebra};
use crate::limits::Limits;

const UNSET: usize = usize::MAX;
const INDEX_FILE: &str = "index.tsv";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    #[serde(skip)]
    pub algebra: CayleyAlgebra,
    pub hash: String,
    pub flags: Classification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub order: usize,
    pub entries: Vec<CatalogEntry>,
    pub provenance: String,
    /// Canonical-form hash to entry position.
    pub index: BTreeMap<String, usize>,
}

impl Catalog {
    /// Canonicalizes, names and indexes the given algebras, sorted by
    /// canonical table. Isomorphic inputs are rejected.
    pub fn from_algebras(
        order: usize,
        algebras: impl IntoIterator<Item = CayleyAlgebra>,
        provenance: impl Into<String>,
    ) -> Result<Catalog> {
        let mut canon: Vec<CayleyAlgebra> = algebras
            .into_iter()
            .map(|a| {
                if a.order() != order {
                    return Err(Error::SizeMismatch {
                        expected: order,
                        found: a.order(),
                    });
                }
                Ok(canonical_form(&a))
            })
            .collect::<Result<_>>()?;
        canon.sort_by_key(|a| a.cells());
        let mut entries = Vec::with_capacity(canon.len());
        let mut index = BTreeMap::new();
        for (i, a) in canon.into_iter().enumerate() {
            let hash = table_hash(&a);
            if let Some(j) = index.insert(hash.clone(), i) {
                return Err(Error::Inconsistent(format!(
                    "catalog entries {j} and {i} are isomorphic"
                )));
            }
            let a = a.with_name(format!("A{order}.{i}"));
            entries.push(CatalogEntry {
                flags: classify(&a),
                algebra: a,
                hash,
            });
        }
        Ok(Catalog {
            order,
            entries,
            provenance: provenance.into(),
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn algebras(&self) -> impl Iterator<Item = &CayleyAlgebra> {
        self.entries.iter().map(|e| &e.algebra)
    }

    /// The entry isomorphic to `a`, located by hash.
    pub fn lookup(&self, a: &CayleyAlgebra) -> Option<&CatalogEntry> {
        if a.order() != self.order {
            return None;
        }
        let h = table_hash(&canonical_form(a));
        self.index.get(&h).map(|&i| &self.entries[i])
    }
}

/// Steps `p` to the next permutation in lexicographic order; false after the last.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("pivot has a successor");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every permutation of `0..n` fixing 0, the identity first.
fn zero_fixing_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    if n > 1 {
        while next_permutation(&mut p[1..]) {
            out.push(p.clone());
        }
    }
    out
}

/// Compares the relabeling of `cells` under `perm` with `cells` itself.
fn relabeled_cmp(cells: &[usize], n: usize, perm: &[usize], inv: &[usize]) -> std::cmp::Ordering {
    for i in 0..n {
        for j in 0..n {
            let v = perm[cells[inv[i] * n + inv[j]]];
            match v.cmp(&cells[i * n + j]) {
                std::cmp::Ordering::Equal => {}
                o => return o,
            }
        }
    }
    std::cmp::Ordering::Equal
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (x, &p) in perm.iter().enumerate() {
        inv[p] = x;
    }
    inv
}

fn is_canonical(cells: &[usize], n: usize, perms: &[(Vec<usize>, Vec<usize>)]) -> bool {
    perms
        .iter()
        .all(|(p, inv)| relabeled_cmp(cells, n, p, inv) != std::cmp::Ordering::Less)
}

/// The lexicographically least flattened table over all relabelings fixing 0.
pub fn canonical_form(a: &CayleyAlgebra) -> CayleyAlgebra {
    let n = a.order();
    let cells = a.cells();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    for p in zero_fixing_permutations(n) {
        let inv = inverse(&p);
        let relabeled: Vec<usize> = (0..n * n)
            .map(|k| p[cells[inv[k / n] * n + inv[k % n]]])
            .collect();
        if best.as_ref().is_none_or(|(_, b)| relabeled < *b) {
            best = Some((p, relabeled));
        }
    }
    let (perm, _) = best.expect("identity is always a candidate");
    relabel(a, &perm).expect("zero-fixing permutation")
}

/// SHA-256 of the order and cells, lowercase hex.
pub fn table_hash(a: &CayleyAlgebra) -> String {
    let mut h = Sha256::new();
    h.update(b"bck");
    h.update((a.order() as u32).to_be_bytes());
    for v in a.cells() {
        h.update((v as u32).to_be_bytes());
    }
    let mut out = String::with_capacity(64);
    for b in h.finalize() {
        write!(out, "{b:02x}").expect("writing to a String");
    }
    out
}

/// `commutative,bounded,...` or `none`.
pub fn flag_string(c: &Classification) -> String {
    let names: Vec<&str> = [
        (c.commutative, "commutative"),
        (c.positive_implicative, "positive_implicative"),
        (c.bounded.is_some(), "bounded"),
        (c.linear, "linear"),
        (c.lattice, "lattice"),
    ]
    .into_iter()
    .filter_map(|(on, s)| on.then_some(s))
    .collect();
    if names.is_empty() {
        "none".into()
    } else {
        names.join(",")
    }
}

/// Rejects a partial table as soon as a fully determined instance of
/// BCK1, antisymmetry, `(x*y)*x = 0` or exchange fails.
fn partial_consistent(t: &[usize], n: usize) -> bool {
    let get = |x: usize, y: usize| {
        if x == UNSET || y == UNSET {
            UNSET
        } else {
            t[x * n + y]
        }
    };
    for x in 0..n {
        for y in 0..n {
            let xy = get(x, y);
            if xy == UNSET {
                continue;
            }
            if x < y && xy == 0 && get(y, x) == 0 {
                return false;
            }
            let back = get(xy, x);
            if back != UNSET && back != 0 {
                return false;
            }
            for z in 0..n {
                let xz = get(x, z);
                let lhs = get(get(xy, xz), get(z, y));
                if lhs != UNSET && lhs != 0 {
                    return false;
                }
                let (a, b) = (get(xy, z), get(xz, y));
                if a != UNSET && b != UNSET && a != b {
                    return false;
                }
            }
        }
    }
    true
}

/// Table with `0*x = 0`, `x*0 = x`, `x*x = 0` filled in, and the free cells.
fn prefilled(n: usize) -> (Vec<usize>, Vec<usize>) {
    let mut t = vec![UNSET; n * n];
    let mut free = Vec::new();
    for x in 0..n {
        for y in 0..n {
            t[x * n + y] = if x == 0 || x == y {
                0
            } else if y == 0 {
                x
            } else {
                free.push(x * n + y);
                UNSET
            };
        }
    }
    (t, free)
}

fn search(
    t: &mut Vec<usize>,
    n: usize,
    free: &[usize],
    perms: &[(Vec<usize>, Vec<usize>)],
    out: &mut Vec<Vec<usize>>,
) {
    let Some((&cell, rest)) = free.split_first() else {
        if is_canonical(t, n, perms) {
            out.push(t.clone());
        }
        return;
    };
    for v in 0..n {
        t[cell] = v;
        if partial_consistent(t, n) {
            search(t, n, rest, perms, out);
        }
    }
    t[cell] = UNSET;
}

fn provenance(kind: &str, n: usize) -> String {
    format!(
        "generator bcklab {} {kind} order={n}",
        env!("CARGO_PKG_VERSION")
    )
}

fn certify_cells(n: usize, cells: Vec<usize>) -> CayleyAlgebra {
    let table = CayleyTable::from_flat(n, cells).expect("cells in range");
    check_bck(table).expect("search emits only BCK tables")
}

/// Backtracking over the free cells, parallel over the first one, keeping
/// tables that are lexicographically least among their relabelings.
pub fn enumerate_bck(n: usize, limits: &Limits) -> Result<Catalog> {
    if n == 0 {
        return Err(Error::domain("order must be positive"));
    }
    limits.check_catalog(n)?;
    let perms: Vec<(Vec<usize>, Vec<usize>)> = zero_fixing_permutations(n)
        .into_iter()
        .skip(1)
        .map(|p| {
            let inv = inverse(&p);
            (p, inv)
        })
        .collect();
    let (t, free) = prefilled(n);
    let found: Vec<Vec<usize>> = match free.split_first() {
        None => {
            let mut out = Vec::new();
            search(&mut t.clone(), n, &free, &perms, &mut out);
            out
        }
        Some((&first, rest)) => (0..n)
            .into_par_iter()
            .map(|v| {
                let mut t = t.clone();
                t[first] = v;
                let mut out = Vec::new();
                if partial_consistent(&t, n) {
                    search(&mut t, n, rest, &perms, &mut out);
                }
                out
            })
            .flatten()
            .collect(),
    };
    let algebras = found.into_iter().map(|cells| certify_cells(n, cells));
    Catalog::from_algebras(n, algebras, provenance("enumerate", n))
}

/// Brute force: every table passing the axioms, deduplicated with
/// [`isomorphic`]. Orders up to 3 scan all `n^(n²)` tables; order 4 scans
/// the tables with `0*x`, `x*0` and `x*x` fixed.
pub fn naive_oracle(n: usize, limits: &Limits) -> Result<Catalog> {
    if n == 0 {
        return Err(Error::domain("order must be positive"));
    }
    limits.check_oracle(n)?;
    let full_scan = (n as u128).pow((n * n) as u32) <= 1 << 20;
    let (base, free): (Vec<usize>, Vec<usize>) = if full_scan {
        (vec![0; n * n], (0..n * n).collect())
    } else {
        prefilled(n)
    };
    let mut reps: Vec<CayleyAlgebra> = Vec::new();
    let mut t: Vec<usize> = base
        .iter()
        .map(|&v| if v == UNSET { 0 } else { v })
        .collect();
    for &c in &free {
        t[c] = 0;
    }
    loop {
        let table = CayleyTable::from_flat(n, t.clone()).expect("cells in range");
        if axiom_violations(&table).is_empty() {
            let a = check_bck(table)?;
            if !reps.iter().any(|r| isomorphic(r, &a).is_some()) {
                reps.push(a);
            }
        }
        // odometer over the free cells
        let mut k = free.len();
        loop {
            if k == 0 {
                return Catalog::from_algebras(n, reps, provenance("oracle", n));
            }
            k -= 1;
            let c = free[k];
            if t[c] + 1 < n {
                t[c] += 1;
                break;
            }
            t[c] = 0;
        }
    }
}

fn order_dir(root: &Path, order: usize) -> PathBuf {
    root.join(format!("n={order}"))
}

fn entry_file(i: usize) -> String {
    format!("entry-{i}.bck")
}

/// Writes `root/n=<order>/` and returns that directory. Stale entry files
/// from an earlier catalog in the same place are removed first.
pub fn write_catalog(catalog: &Catalog, root: &Path) -> Result<PathBuf> {
    let dir = order_dir(root, catalog.order);
    std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
    for f in std::fs::read_dir(&dir).map_err(|e| Error::io(&dir, e))? {
        let f = f.map_err(|e| Error::io(&dir, e))?;
        let name = f.file_name();
        let name = name.to_string_lossy();
        if name.starts_with("entry-") && name.ends_with(".bck") {
            std::fs::remove_file(f.path()).map_err(|e| Error::io(&f.path(), e))?;
        }
    }
    let mut index = format!("# {}\nhash\torder\tflags\n", catalog.provenance);
    for (i, e) in catalog.entries.iter().enumerate() {
        let p = dir.join(entry_file(i));
        std::fs::write(&p, write_algebra(&e.algebra)).map_err(|err| Error::io(&p, err))?;
        writeln!(
            index,
            "{}\t{}\t{}",
            e.hash,
            catalog.order,
            flag_string(&e.flags)
        )
        .expect("writing to a String");
    }
    let p = dir.join(INDEX_FILE);
    std::fs::write(&p, index).map_err(|e| Error::io(&p, e))?;
    Ok(dir)
}

/// Reads one `n=<k>` directory, re-deriving every hash and flag set and
/// rejecting the directory if any disagrees with the index.
pub fn read_catalog(dir: &Path) -> Result<Catalog> {
    let index_path = dir.join(INDEX_FILE);
    let text = read_text(&index_path)?;
    let bad = |line: usize, m: String| Error::in_file(&index_path, Error::format(line, m));
    let mut provenance = String::new();
    let mut rows = Vec::new();
    let mut header_seen = false;
    for (i, line) in text.lines().enumerate() {
        if let Some(p) = line.strip_prefix('#') {
            if provenance.is_empty() {
                provenance = p.trim().to_string();
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        if !header_seen {
            if line != "hash\torder\tflags" {
                return Err(bad(
                    i + 1,
                    format!("expected column header, found {line:?}"),
                ));
            }
            header_seen = true;
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        let [hash, order, flags] = cols[..] else {
            return Err(bad(
                i + 1,
                format!("expected 3 columns, found {}", cols.len()),
            ));
        };
        let order: usize = order
            .parse()
            .map_err(|_| bad(i + 1, format!("bad order {order:?}")))?;
        rows.push((i + 1, hash.to_string(), order, flags.to_string()));
    }
    let order = match rows.first() {
        Some(r) => r.2,
        None => dir
            .file_name()
            .and_then(|s| s.to_str())
            .and_then(|s| s.strip_prefix("n="))
            .and_then(|s| s.parse().ok())
            .unwrap_or(0),
    };
    let mut algebras = Vec::with_capacity(rows.len());
    for (i, (line, hash, o, flags)) in rows.iter().enumerate() {
        if *o != order {
            return Err(bad(
                *line,
                format!("order {o} in a catalog of order {order}"),
            ));
        }
        let a = read_algebra(&dir.join(entry_file(i)))?;
        let canon = canonical_form(&a);
        let actual = table_hash(&canon);
        if actual != *hash {
            return Err(Error::in_file(
                &index_path,
                Error::Inconsistent(format!("entry {i} hashes to {actual}, index says {hash}")),
            ));
        }
        let actual_flags = flag_string(&classify(&a));
        if actual_flags != *flags {
            return Err(Error::in_file(
                &index_path,
                Error::Inconsistent(format!(
                    "entry {i} has flags {actual_flags}, index says {flags}"
                )),
            ));
        }
        algebras.push(a);
    }
    let catalog = Catalog::from_algebras(order, algebras, provenance)?;
    for (i, (_, hash, _, _)) in rows.iter().enumerate() {
        if catalog.entries[i].hash != *hash {
            return Err(Error::in_file(
                &index_path,
                Error::Inconsistent("entries are not in canonical order".into()),
            ));
        }
    }
    Ok(catalog)
}

/// A single `n=<k>` directory, or every `n=<k>` directory under `path` in
/// increasing order.
pub fn read_catalogs(path: &Path) -> Result<Vec<Catalog>> {
    if path.join(INDEX_FILE).is_file() {
        return Ok(vec![read_catalog(path)?]);
    }
    let mut dirs: Vec<(usize, PathBuf)> = Vec::new();
    for f in std::fs::read_dir(path).map_err(|e| Error::io(path, e))? {
        let f = f.map_err(|e| Error::io(path, e))?;
        let name = f.file_name();
        if let Some(k) = name
            .to_str()
            .and_then(|s| s.strip_prefix("n="))
            .and_then(|s| s.parse::<usize>().ok())
        {
            if f.path().is_dir() {
                dirs.push((k, f.path()));
            }
        }
    }
    dirs.sort();
    dirs.into_iter().map(|(_, d)| read_catalog(&d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{b2, c3, c4, t1};

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn permutations() {
        let ps = zero_fixing_permutations(4);
        assert_eq!(ps.len(), 6);
        assert!(ps.iter().all(|p| p[0] == 0));
        assert_eq!(ps[1], vec![0, 1, 3, 2]);
        assert_eq!(zero_fixing_permutations(1), vec![vec![0]]);
    }

    #[test]
    fn small_orders() {
        let c1 = enumerate_bck(1, &lim()).unwrap();
        assert_eq!(c1.len(), 1);
        assert_eq!(c1.entries[0].algebra, t1());
        let c2 = enumerate_bck(2, &lim()).unwrap();
        assert_eq!(c2.len(), 1);
        assert_eq!(c2.entries[0].algebra, b2());
        let c3cat = enumerate_bck(3, &lim()).unwrap();
        assert!(c3cat.lookup(&c3()).is_some());
        let c4cat = enumerate_bck(4, &lim()).unwrap();
        assert!(c4cat.lookup(&c4()).is_some());
        assert!(matches!(
            enumerate_bck(7, &lim()),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for e in enumerate_bck(4, &lim()).unwrap().entries {
            assert_eq!(canonical_form(&e.algebra), e.algebra);
        }
        let moved = relabel(&c4(), &[0, 3, 1, 2]).unwrap();
        assert_eq!(canonical_form(&moved), canonical_form(&c4()));
    }

    #[test]
    fn oracle_agrees_on_order_three() {
        let fast = enumerate_bck(3, &lim()).unwrap();
        let slow = naive_oracle(3, &lim()).unwrap();
        assert_eq!(fast.len(), slow.len());
        assert!(matches!(
            naive_oracle(5, &lim()),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn persistence_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cat = enumerate_bck(3, &lim()).unwrap();
        let sub = write_catalog(&cat, dir.path()).unwrap();
        assert!(sub.ends_with("n=3"));
        let back = read_catalog(&sub).unwrap();
        assert_eq!(back, cat);
        write_catalog(&enumerate_bck(2, &lim()).unwrap(), dir.path()).unwrap();
        let all = read_catalogs(dir.path()).unwrap();
        assert_eq!(all.iter().map(|c| c.order).collect::<Vec<_>>(), vec![2, 3]);

        let index = sub.join(INDEX_FILE);
        let text = std::fs::read_to_string(&index).unwrap();
        std::fs::write(&index, text.replacen("\t3\t", "\t3\tlinear,", 1)).unwrap();
        assert!(read_catalog(&sub).is_err());
    }
}
