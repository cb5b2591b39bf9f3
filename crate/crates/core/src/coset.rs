//! Todd–Coxeter coset enumeration over the trivial subgroup.
//!
//! HLT strategy: each live coset in turn has every relator scanned and
//! filled at it, then any still-undefined entry in its row is defined.
//! Coincidences are collapsed immediately with a union-find queue. The
//! finished table is compacted and renumbered in breadth-first order from
//! coset 0, so output depends only on the presentation.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::words::{Presentation, Word};

pub const DEFAULT_MAX_COSETS: usize = 200_000;

const UNDEF: usize = usize::MAX;

/// Complete coset table: `rows[c][2g]` is `c·g`, `rows[c][2g+1]` is `c·g⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetTable {
    num_generators: usize,
    rows: Vec<Vec<Option<usize>>>,
}

impl CosetTable {
    /// Wraps raw rows; entries may be undefined. `realize` validates.
    pub fn from_rows(num_generators: usize, rows: Vec<Vec<Option<usize>>>) -> Self {
        CosetTable {
            num_generators,
            rows,
        }
    }

    pub fn num_cosets(&self) -> usize {
        self.rows.len()
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn entry(&self, coset: usize, column: usize) -> Option<usize> {
        self.rows
            .get(coset)
            .and_then(|r| r.get(column).copied().flatten())
    }

    pub fn is_complete(&self) -> bool {
        self.rows.iter().all(|r| {
            r.len() == 2 * self.num_generators
                && r.iter()
                    .all(|e| matches!(e, Some(c) if *c < self.rows.len()))
        })
    }

    /// Follows `word` from `coset`; `None` if an entry is missing.
    pub fn trace(&self, coset: usize, word: &Word) -> Option<usize> {
        word.letters()
            .iter()
            .try_fold(coset, |c, l| self.entry(c, l.column()))
    }

    /// CSV dump: one row per coset, one column per generator and inverse.
    pub fn to_csv(&self, p: &Presentation) -> String {
        let mut out = String::from("coset");
        for g in p.generators() {
            out.push_str(&format!(",{0},{0}^-1", g.name));
        }
        out.push('\n');
        for (c, row) in self.rows.iter().enumerate() {
            out.push_str(&c.to_string());
            for e in row {
                match e {
                    Some(v) => out.push_str(&format!(",{v}")),
                    None => out.push(','),
                }
            }
            out.push('\n');
        }
        out
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<usize>,
    parent: Vec<usize>,
    queue: Vec<usize>,
    limit: usize,
}

impl Enumerator {
    fn new(num_generators: usize, limit: usize) -> Self {
        let cols = 2 * num_generators;
        Enumerator {
            cols,
            table: vec![UNDEF; cols],
            parent: vec![0],
            queue: Vec::new(),
            limit,
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: usize, x: usize) -> usize {
        self.table[c * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: usize, x: usize, v: usize) {
        self.table[c * self.cols + x] = v;
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, x: usize) -> Result<()> {
        if self.len() >= self.limit {
            return Err(Error::BudgetExceeded { limit: self.limit });
        }
        let n = self.len();
        self.parent.push(n);
        self.table.extend(std::iter::repeat_n(UNDEF, self.cols));
        self.set(c, x, n);
        self.set(n, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut k = c;
        while self.parent[k] != root {
            let next = self.parent[k];
            self.parent[k] = root;
            k = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.rep(a), self.rep(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
            self.queue.push(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let dead = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let d = self.get(dead, x);
                if d == UNDEF {
                    continue;
                }
                self.set(d, x ^ 1, UNDEF);
                let mu = self.rep(dead);
                let nu = self.rep(d);
                if self.get(mu, x) != UNDEF {
                    let t = self.get(mu, x);
                    self.merge(nu, t);
                } else if self.get(nu, x ^ 1) != UNDEF {
                    let t = self.get(nu, x ^ 1);
                    self.merge(mu, t);
                } else {
                    self.set(mu, x, nu);
                    self.set(nu, x ^ 1, mu);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, rel: &[usize]) -> Result<()> {
        let mut f = c;
        let mut b = c;
        let mut i = 0usize;
        let mut j = rel.len();
        loop {
            while i < j && self.get(f, rel[i]) != UNDEF {
                f = self.get(f, rel[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.get(b, rel[j - 1] ^ 1) != UNDEF {
                b = self.get(b, rel[j - 1] ^ 1);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, rel[i], b);
                self.set(b, rel[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }

    fn run(&mut self, relators: &[Vec<usize>]) -> Result<()> {
        let mut alpha = 0;
        while alpha < self.len() {
            for rel in relators {
                if !self.is_live(alpha) {
                    break;
                }
                self.scan_and_fill(alpha, rel)?;
            }
            for x in 0..self.cols {
                if !self.is_live(alpha) {
                    break;
                }
                if self.get(alpha, x) == UNDEF {
                    self.define(alpha, x)?;
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    /// Renumbers live cosets breadth-first from coset 0.
    fn standardize(&mut self, num_generators: usize) -> CosetTable {
        let mut order = vec![UNDEF; self.len()];
        let mut seen = vec![0usize];
        order[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(c) = queue.pop_front() {
            for x in 0..self.cols {
                let d = self.rep(self.get(c, x));
                if order[d] == UNDEF {
                    order[d] = seen.len();
                    seen.push(d);
                    queue.push_back(d);
                }
            }
        }
        let rows = seen
            .iter()
            .map(|&c| {
                (0..self.cols)
                    .map(|x| {
                        let d = self.get(c, x);
                        Some(order[self.rep(d)])
                    })
                    .collect()
            })
            .collect();
        CosetTable {
            num_generators,
            rows,
        }
    }
}

/// Enumerates the cosets of the trivial subgroup, i.e. the elements of the
/// presented group. Fails with [`Error::BudgetExceeded`] once more than
/// `max_cosets` cosets have been defined.
pub fn enumerate(p: &Presentation, max_cosets: usize) -> Result<CosetTable> {
    if max_cosets == 0 {
        return Err(Error::BudgetExceeded { limit: 0 });
    }
    let relators: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| r.letters().iter().map(|l| l.column()).collect())
        .collect();
    let mut e = Enumerator::new(p.num_generators(), max_cosets);
    e.run(&relators)?;
    Ok(e.standardize(p.num_generators()))
}

/// Turns a complete table into a group whose elements are the cosets,
/// with coset 0 as the identity.
pub fn realize(t: &CosetTable, p: &Presentation) -> Result<FiniteGroup> {
    if t.num_generators() != p.num_generators() || !t.is_complete() || t.num_cosets() == 0 {
        return Err(Error::IncompleteTable);
    }
    let n = t.num_cosets();
    for (ri, r) in p.relators().iter().enumerate() {
        for c in 0..n {
            if t.trace(c, r) != Some(c) {
                return Err(Error::InconsistentTable {
                    relator: ri,
                    coset: c,
                });
            }
        }
    }
    for c in 0..n {
        for x in 0..2 * t.num_generators() {
            let d = t.entry(c, x).unwrap();
            if t.entry(d, x ^ 1) != Some(c) {
                return Err(Error::InconsistentTable {
                    relator: usize::MAX,
                    coset: c,
                });
            }
        }
    }

    // spanning tree: element y = parent[y] · column[y]
    let mut tree: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut bfs = vec![0usize];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut head = 0;
    while head < bfs.len() {
        let c = bfs[head];
        head += 1;
        for x in 0..2 * t.num_generators() {
            let d = t.entry(c, x).unwrap();
            if !seen[d] {
                seen[d] = true;
                tree[d] = Some((c, x));
                bfs.push(d);
            }
        }
    }
    if bfs.len() != n {
        return Err(Error::IncompleteTable);
    }

    let mut mul = vec![0usize; n * n];
    for x in 0..n {
        mul[x * n] = x;
        for &y in &bfs[1..] {
            let (py, col) = tree[y].unwrap();
            mul[x * n + y] = t.entry(mul[x * n + py], col).unwrap();
        }
    }
    let generator_images = (0..p.num_generators())
        .map(|g| t.entry(0, 2 * g).unwrap())
        .collect();
    FiniteGroup::from_parts(mul, generator_images, Some(p.clone()))
}

/// Enumerates and realizes in one step.
pub fn realize_presentation(p: &Presentation, max_cosets: usize) -> Result<FiniteGroup> {
    let t = enumerate(p, max_cosets)?;
    realize(&t, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    #[test]
    fn cyclic_five() {
        let p = pres("gens: a; rels: a^5");
        let t = enumerate(&p, 100).unwrap();
        assert_eq!(t.num_cosets(), 5);
        let g = realize(&t, &p).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.element_order(g.generator_images()[0]), 5);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn quaternion_eight() {
        let p = pres("gens: a, x; rels: a^4, x^2 a^-2, x^-1 a x a");
        let t = enumerate(&p, 100).unwrap();
        assert_eq!(t.num_cosets(), 8);
        let g = realize(&t, &p).unwrap();
        let (a, x) = (g.generator_images()[0], g.generator_images()[1]);
        let x2 = g.mul(x, x);
        assert_eq!(x2, g.mul(a, a));
        assert_ne!(x2, g.identity());
        assert_eq!(g.mul(x2, x2), g.identity());
        assert_eq!(g.element_order(x), 4);
    }

    #[test]
    fn trivial_group() {
        let p = pres("gens: ; rels:");
        let g = realize_presentation(&p, 10).unwrap();
        assert_eq!(g.order(), 1);
        // a generator killed by its relator
        let g = realize_presentation(&pres("gens: a; rels: a"), 10).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn infinite_group_hits_budget() {
        let p = pres("gens: h; rels:");
        assert_eq!(
            enumerate(&p, 1000),
            Err(Error::BudgetExceeded { limit: 1000 })
        );
        let z2 = pres("gens: a, b; rels: [a, b]");
        assert!(matches!(
            enumerate(&z2, 5000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn binary_icosahedral_spec_presentation() {
        let p = pres("gens: s, t; rels: s^3 t^-5, s^3 (s t)^-2");
        let t = enumerate(&p, 10_000).unwrap();
        assert_eq!(t.num_cosets(), 120);
    }

    #[test]
    fn deterministic_tables() {
        let p = pres("gens: a, b; rels: a^3 = b^3 = (a b)^2");
        assert_eq!(
            enumerate(&p, 10_000).unwrap(),
            enumerate(&p, 10_000).unwrap()
        );
    }

    #[test]
    fn realize_rejects_incomplete() {
        let p = pres("gens: a; rels: a^2");
        let t = CosetTable::from_rows(1, vec![vec![Some(1), None], vec![Some(0), Some(0)]]);
        assert_eq!(realize(&t, &p), Err(Error::IncompleteTable));
        let bad = CosetTable::from_rows(1, vec![vec![Some(0), Some(0)]]);
        assert!(realize(&bad, &pres("gens: a; rels: a^3 = a")).is_ok());
        let wrong = CosetTable::from_rows(1, vec![vec![Some(1), Some(1)], vec![Some(0), Some(0)]]);
        assert!(matches!(
            realize(&wrong, &pres("gens: a; rels: a^3")),
            Err(Error::InconsistentTable { .. })
        ));
    }

    #[test]
    fn csv_dump() {
        let p = pres("gens: a; rels: a^3");
        let csv = enumerate(&p, 100).unwrap().to_csv(&p);
        assert_eq!(csv, "coset,a,a^-1\n0,1,2\n1,2,0\n2,0,1\n");
    }
}
