//! The integral group ring `ℤ[π]` of a finite group and square matrices
//! over it.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// Finite sum `Σ λ_g g`; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupRingElement {
    terms: BTreeMap<usize, i64>,
}

fn checked(v: Option<i64>) -> i64 {
    v.expect("group ring coefficient overflow")
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn one() -> Self {
        GroupRingElement::monomial(1, 0)
    }

    /// `coeff · g`
    pub fn monomial(coeff: i64, g: usize) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(g, coeff);
        }
        GroupRingElement { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, i64)>>(terms: I) -> Self {
        let mut out = GroupRingElement::zero();
        for (g, c) in terms {
            out.add_term(g, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.terms.iter().map(|(&g, &c)| (g, c))
    }

    pub fn coefficient(&self, g: usize) -> i64 {
        self.terms.get(&g).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0) == Some(&1)
    }

    /// `Some((±1, g))` when the element is `±g`.
    pub fn as_signed_element(&self) -> Option<(i64, usize)> {
        match self.terms.iter().next() {
            Some((&g, &c)) if self.terms.len() == 1 && (c == 1 || c == -1) => Some((c, g)),
            _ => None,
        }
    }

    fn add_term(&mut self, g: usize, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(g).or_insert(0);
        *entry = checked(entry.checked_add(c));
        if *entry == 0 {
            self.terms.remove(&g);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupRingElement {
            terms: self.terms.iter().map(|(&g, &c)| (g, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: i64) -> Self {
        GroupRingElement::from_terms(self.terms().map(|(g, c)| (g, checked(c.checked_mul(k)))))
    }

    /// Convolution product.
    pub fn mul(&self, other: &Self, group: &FiniteGroup) -> Self {
        let mut out = GroupRingElement::zero();
        for (g, a) in self.terms() {
            for (h, b) in other.terms() {
                out.add_term(group.mul(g, h), checked(a.checked_mul(b)));
            }
        }
        out
    }

    /// `Σ λ_g g ↦ Σ λ_g g⁻¹`, the orientable-case involution.
    pub fn conjugate(&self, group: &FiniteGroup) -> Self {
        GroupRingElement::from_terms(self.terms().map(|(g, c)| (group.inv(g), c)))
    }

    /// Augmentation `Σ λ_g`.
    pub fn augmentation(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Text such as `2*a x - 1 + x^-1`, parseable by the Steinberg word
    /// reader.
    pub fn to_text(&self, group: &FiniteGroup) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (g, c)) in self.terms().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let label = group.label(g);
            match (mag, g) {
                (m, 0) => out.push_str(&m.to_string()),
                (1, _) => out.push_str(&label),
                (m, _) => out.push_str(&format!("{m}*{label}")),
            }
        }
        out
    }
}

/// Dense `n × n` matrix over `ℤ[π]`, 0-based storage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    n: usize,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zeros(n: usize) -> Self {
        GroupRingMatrix {
            n,
            entries: vec![GroupRingElement::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = GroupRingMatrix::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = GroupRingElement::one();
        }
        m
    }

    /// `e_{i,j}^λ` with 1-based `i ≠ j`.
    pub fn elementary(n: usize, i: usize, j: usize, lambda: GroupRingElement) -> Result<Self> {
        check_indices(n, i, j)?;
        let mut m = GroupRingMatrix::identity(n);
        m.entries[(i - 1) * n + (j - 1)] = lambda;
        Ok(m)
    }

    pub fn from_entries(n: usize, entries: Vec<GroupRingElement>) -> Self {
        assert_eq!(entries.len(), n * n, "need n*n entries");
        GroupRingMatrix { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// 0-based access.
    pub fn get(&self, row: usize, col: usize) -> &GroupRingElement {
        &self.entries[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: GroupRingElement) {
        self.entries[row * self.n + col] = v;
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|r| {
            (0..self.n).all(|c| {
                let e = self.get(r, c);
                if r == c {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn mul(&self, other: &Self, group: &FiniteGroup) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = GroupRingMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * n + j;
                        out.entries[idx] = out.entries[idx].add(&a.mul(b, group));
                    }
                }
            }
        }
        out
    }

    /// In-place right multiplication by `e_{i,j}^λ` (1-based): column `j`
    /// gains column `i` times `λ`.
    pub fn right_mul_elementary(
        &mut self,
        i: usize,
        j: usize,
        lambda: &GroupRingElement,
        group: &FiniteGroup,
    ) -> Result<()> {
        check_indices(self.n, i, j)?;
        let (ci, cj) = (i - 1, j - 1);
        for r in 0..self.n {
            let src = self.get(r, ci);
            if src.is_zero() {
                continue;
            }
            let delta = src.mul(lambda, group);
            let idx = r * self.n + cj;
            self.entries[idx] = self.entries[idx].add(&delta);
        }
        Ok(())
    }

    pub fn to_text(&self, group: &FiniteGroup) -> String {
        let mut out = String::new();
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_text(group)).collect();
            out.push_str(&format!("[{}]\n", row.join(", ")));
        }
        out
    }
}

fn check_indices(n: usize, i: usize, j: usize) -> Result<()> {
    for idx in [i, j] {
        if idx == 0 || idx > n {
            return Err(Error::IndexOutOfRange { index: idx, dim: n });
        }
    }
    if i == j {
        return Err(Error::DiagonalSymbol(i));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coset::realize_presentation;
    use crate::words::Presentation;

    fn z3() -> FiniteGroup {
        realize_presentation(&Presentation::parse("gens: a; rels: a^3").unwrap(), 100).unwrap()
    }

    #[test]
    fn zero_coefficients_vanish() {
        let a = GroupRingElement::monomial(2, 1);
        assert!(a.sub(&a).is_zero());
        assert!(GroupRingElement::monomial(0, 2).is_zero());
        assert_eq!(
            GroupRingElement::from_terms([(1, 3), (1, -3), (2, 1)])
                .terms()
                .count(),
            1
        );
    }

    #[test]
    fn convolution() {
        let g = z3();
        let a = g.generator_images()[0];
        // (1 + a)(1 - a) = 1 - a²
        let x = GroupRingElement::from_terms([(0, 1), (a, 1)]);
        let y = GroupRingElement::from_terms([(0, 1), (a, -1)]);
        let expected = GroupRingElement::from_terms([(0, 1), (g.mul(a, a), -1)]);
        assert_eq!(x.mul(&y, &g), expected);
        // a³ = 1
        let m = GroupRingElement::monomial(1, a);
        assert!(m.mul(&m, &g).mul(&m, &g).is_one());
    }

    #[test]
    fn involution_and_augmentation() {
        let g = z3();
        let a = g.generator_images()[0];
        let x = GroupRingElement::from_terms([(0, 2), (a, -5)]);
        assert_eq!(
            x.conjugate(&g),
            GroupRingElement::from_terms([(0, 2), (g.inv(a), -5)])
        );
        assert_eq!(x.conjugate(&g).conjugate(&g), x);
        assert_eq!(x.augmentation(), -3);
    }

    #[test]
    fn text() {
        let g = z3();
        let a = g.generator_images()[0];
        let x = GroupRingElement::from_terms([(0, -1), (a, 2), (g.inv(a), -1)]);
        assert_eq!(x.to_text(&g), "-1 + 2*a - a^-1");
        assert_eq!(GroupRingElement::zero().to_text(&g), "0");
    }

    #[test]
    fn right_multiplication_matches_product() {
        let g = z3();
        let a = g.generator_images()[0];
        let lam = GroupRingElement::from_terms([(a, 2), (0, -1)]);
        let mut m = GroupRingMatrix::elementary(3, 2, 3, GroupRingElement::monomial(1, a)).unwrap();
        let e = GroupRingMatrix::elementary(3, 3, 1, lam.clone()).unwrap();
        let expected = m.mul(&e, &g);
        m.right_mul_elementary(3, 1, &lam, &g).unwrap();
        assert_eq!(m, expected);
    }

    #[test]
    fn elementary_index_errors() {
        let one = GroupRingElement::one();
        assert_eq!(
            GroupRingMatrix::elementary(2, 1, 3, one.clone()),
            Err(Error::IndexOutOfRange { index: 3, dim: 2 })
        );
        assert_eq!(
            GroupRingMatrix::elementary(2, 2, 2, one),
            Err(Error::DiagonalSymbol(2))
        );
    }
}
