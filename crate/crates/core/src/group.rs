//! Concrete finite groups: elements are `0..order`, the identity is `0`.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::words::{Generator, Letter, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    generator_images: Vec<usize>,
    source: Option<Presentation>,
    /// Representative word for every element, over the generator images.
    words: Vec<Word>,
}

impl FiniteGroup {
    /// Builds a group from a row-major multiplication table. Checks that
    /// `0` is the identity, every row and column is a permutation, the
    /// generator images generate, and (for orders up to 64) associativity.
    pub fn from_parts(
        mul: Vec<usize>,
        generator_images: Vec<usize>,
        source: Option<Presentation>,
    ) -> Result<Self> {
        let order = (mul.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != mul.len() {
            return Err(Error::InvalidTable("table is not square".into()));
        }
        let at = |a: usize, b: usize| mul[a * order + b];
        for a in 0..order {
            if at(0, a) != a || at(a, 0) != a {
                return Err(Error::InvalidTable("element 0 is not the identity".into()));
            }
        }
        let mut inv = vec![usize::MAX; order];
        for a in 0..order {
            let mut row_seen = vec![false; order];
            let mut col_seen = vec![false; order];
            for b in 0..order {
                let (r, c) = (at(a, b), at(b, a));
                if r >= order || c >= order || row_seen[r] || col_seen[c] {
                    return Err(Error::InvalidTable("not a Latin square".into()));
                }
                row_seen[r] = true;
                col_seen[c] = true;
                if r == 0 {
                    inv[a] = b;
                }
            }
        }
        if order <= 64 {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if at(at(a, b), c) != at(a, at(b, c)) {
                            return Err(Error::InvalidTable(format!(
                                "({a}*{b})*{c} != {a}*({b}*{c})"
                            )));
                        }
                    }
                }
            }
        }
        if generator_images.iter().any(|&g| g >= order) {
            return Err(Error::InvalidTable("generator image out of range".into()));
        }
        let mut group = FiniteGroup {
            order,
            mul,
            inv,
            generator_images,
            source,
            words: Vec::new(),
        };
        group.words = group.spanning_words()?;
        Ok(group)
    }

    fn spanning_words(&self) -> Result<Vec<Word>> {
        let mut words: Vec<Option<Word>> = vec![None; self.order];
        words[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for (gi, &g) in self.generator_images.iter().enumerate() {
                for inverse in [false, true] {
                    let s = if inverse { self.inv[g] } else { g };
                    let next = self.mul(e, s);
                    if words[next].is_none() {
                        let mut letters = words[e].as_ref().unwrap().letters().to_vec();
                        letters.push(Letter::new(gi, inverse));
                        words[next] = Some(Word::from_letters(letters));
                        queue.push_back(next);
                    }
                }
            }
        }
        words
            .into_iter()
            .map(|w| w.ok_or_else(|| Error::InvalidTable("generators do not generate".into())))
            .collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g⁻¹ x g`
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv[g], x), g)
    }

    pub fn pow(&self, a: usize, exp: i64) -> usize {
        let base = if exp < 0 { self.inv[a] } else { a };
        (0..exp.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn generator_images(&self) -> &[usize] {
        &self.generator_images
    }

    pub fn source(&self) -> Option<&Presentation> {
        self.source.as_ref()
    }

    pub fn multiplication_table(&self) -> &[usize] {
        &self.mul
    }

    pub fn is_abelian(&self) -> bool {
        self.generator_images.iter().all(|&a| {
            self.generator_images
                .iter()
                .all(|&b| self.mul(a, b) == self.mul(b, a))
        })
    }

    /// Evaluates a word over the generator images.
    pub fn evaluate(&self, w: &Word) -> Result<usize> {
        w.letters().iter().try_fold(0, |acc, l| {
            let g = *self
                .generator_images
                .get(l.generator)
                .ok_or(Error::IndexOutOfRange {
                    index: l.generator,
                    dim: self.generator_images.len(),
                })?;
            Ok(self.mul(acc, if l.inverse { self.inv[g] } else { g }))
        })
    }

    /// Breadth-first representative word of an element.
    pub fn word_of(&self, a: usize) -> &Word {
        &self.words[a]
    }

    /// Display label: the representative word in the source alphabet, or
    /// `g<gen>` letters for table-built groups.
    pub fn label(&self, a: usize) -> String {
        match &self.source {
            Some(p) => p.word_text(&self.words[a]),
            None => {
                let alphabet: Vec<Generator> = (0..self.generator_images.len())
                    .map(|index| Generator {
                        index,
                        name: format!("g{index}"),
                    })
                    .collect();
                self.words[a].to_text(&alphabet)
            }
        }
    }

    /// Parses a word in the source alphabet and evaluates it.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        let p = self.source.as_ref().ok_or_else(|| {
            Error::InvalidPresentation("group has no presentation to name elements".into())
        })?;
        self.evaluate(&p.parse_word(text)?)
    }

    /// The subgroup on `elements` (which must be closed under
    /// multiplication and contain the identity), reindexed in the given
    /// order after moving the identity first.
    pub fn subgroup(&self, elements: &[usize]) -> Result<FiniteGroup> {
        let mut elems: Vec<usize> = vec![0];
        elems.extend(elements.iter().copied().filter(|&e| e != 0));
        let mut index = vec![usize::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            if index[e] != usize::MAX {
                return Err(Error::InvalidTable(format!("element {e} listed twice")));
            }
            index[e] = i;
        }
        let m = elems.len();
        let mut mul = vec![0; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                let c = index[self.mul(a, b)];
                if c == usize::MAX {
                    return Err(Error::InvalidTable("subset is not closed".into()));
                }
                mul[i * m + j] = c;
            }
        }
        FiniteGroup::from_mul_table(mul)
    }

    /// A group from its table alone; generators are picked greedily in
    /// element order until they generate.
    pub fn from_mul_table(mul: Vec<usize>) -> Result<FiniteGroup> {
        let order = (mul.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != mul.len() {
            return Err(Error::InvalidTable("table is not square".into()));
        }
        let mut gens = Vec::new();
        let mut reached = vec![false; order];
        reached[0] = true;
        for a in 1..order {
            if reached[a] {
                continue;
            }
            gens.push(a);
            // closure under right multiplication by the generators
            let mut members: Vec<usize> = (0..order).filter(|&x| reached[x]).collect();
            let mut head = 0;
            while head < members.len() {
                let x = members[head];
                head += 1;
                for &g in &gens {
                    let y = mul[x * order + g];
                    if y < order && !reached[y] {
                        reached[y] = true;
                        members.push(y);
                    }
                }
            }
        }
        FiniteGroup::from_parts(mul, gens, None)
    }
}
