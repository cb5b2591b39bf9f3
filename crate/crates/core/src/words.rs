//! Words over a generating alphabet and finite group presentations.
//!
//! Text syntax for words: generator names separated by whitespace (or `*`),
//! each optionally raised to an integer power with `^`. Inverses are written
//! `a^-1` or, when `A` is not itself a generator, as the uppercase name `A`.
//! Parenthesised subwords take powers, `[u, v]` is the commutator
//! `u v u^-1 v^-1` and a bare `1` is the empty word.
//!
//! Presentations are written `gens: a, x; rels: a^4, x^2 a^-2, x^-1 a x a`.
//! A relator may be an equation `u = v` (stored as `u v^-1`); a chain
//! `u = v = w` contributes `u v^-1` and `v w^-1`.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub index: usize,
    pub name: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Column index in a coset table: `2g` for the generator, `2g + 1` for
    /// its inverse.
    pub fn column(self) -> usize {
        2 * self.generator + self.inverse as usize
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    pub fn generator(index: usize) -> Self {
        Word {
            letters: vec![Letter::new(index, false)],
        }
    }

    /// `g^exp` for a single generator.
    pub fn power_of(index: usize, exp: i64) -> Self {
        let letter = Letter::new(index, exp < 0);
        Word {
            letters: vec![letter; exp.unsigned_abs() as usize],
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|w| w[0] != w[1].inv())
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Concatenation, without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    pub fn pow(&self, exp: i64) -> Word {
        let base = if exp < 0 { self.invert() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * exp.unsigned_abs() as usize);
        for _ in 0..exp.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.concat(v).concat(&u.invert()).concat(&v.invert())
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.generator).max()
    }

    /// Canonical text: runs of a letter are collapsed into powers and
    /// inverses use `^-1`. The empty word prints as `1`.
    pub fn to_text(&self, alphabet: &[Generator]) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let name = &alphabet[l.generator].name;
            let exp = if l.inverse { -(run as i64) } else { run as i64 };
            if exp == 1 {
                parts.push(name.clone());
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i += run;
        }
        parts.join(" ")
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word {
            letters: iter.into_iter().collect(),
        }
    }
}

/// Parses a word and returns it freely reduced.
pub fn parse_word(text: &str, alphabet: &[Generator]) -> Result<Word> {
    let mut p = Parser::new(text, alphabet);
    let w = p.word()?;
    p.finish()?;
    Ok(w.free_reduce())
}

/// Parses a relator or relation (`u`, `u = v`, `u = v = w`, ...), returning
/// freely reduced relators.
pub fn parse_relation(text: &str, alphabet: &[Generator]) -> Result<Vec<Word>> {
    let sides = text.split('=').map(|side| {
        let mut p = Parser::new(side, alphabet);
        let w = p.word()?;
        p.finish()?;
        Ok(w)
    });
    let sides = sides.collect::<Result<Vec<_>>>()?;
    if sides.len() == 1 {
        return Ok(vec![sides[0].free_reduce()]);
    }
    Ok(sides
        .windows(2)
        .map(|s| s[0].concat(&s[1].invert()).free_reduce())
        .collect())
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a [Generator],
}

impl<'a> Parser<'a> {
    fn new(text: &str, alphabet: &'a [Generator]) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            alphabet,
        }
    }

    fn skip_separators(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c.is_whitespace() || c == '*' || c == '.' {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_separators();
        self.chars.get(self.pos).copied()
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(Error::Syntax(format!("unexpected `{c}`"))),
        }
    }

    fn word(&mut self) -> Result<Word> {
        let mut letters = Vec::new();
        while let Some(c) = self.peek() {
            if c == ')' || c == ']' || c == ',' {
                break;
            }
            let atom = self.atom()?;
            let exp = self.exponent()?;
            letters.extend(atom.pow(exp).letters);
        }
        Ok(Word { letters })
    }

    fn atom(&mut self) -> Result<Word> {
        let c = self.peek().expect("atom called at end of input");
        match c {
            '(' => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(')')?;
                Ok(w)
            }
            '[' => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(',')?;
                let v = self.word()?;
                self.expect(']')?;
                Ok(Word::commutator(&u, &v))
            }
            '1' => {
                self.pos += 1;
                Ok(Word::identity())
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while let Some(&c) = self.chars.get(self.pos) {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                self.lookup(&name)
            }
            c => Err(Error::Syntax(format!("unexpected `{c}`"))),
        }
    }

    fn lookup(&self, name: &str) -> Result<Word> {
        if let Some(g) = self.alphabet.iter().find(|g| g.name == name) {
            return Ok(Word::generator(g.index));
        }
        let lower = name.to_ascii_lowercase();
        if lower != name {
            if let Some(g) = self.alphabet.iter().find(|g| g.name == lower) {
                return Ok(Word::power_of(g.index, -1));
            }
        }
        Err(Error::UnknownGenerator(name.to_string()))
    }

    fn exponent(&mut self) -> Result<i64> {
        // no separator skipping between an atom and its `^`
        if self.chars.get(self.pos) != Some(&'^') {
            return Ok(1);
        }
        self.pos += 1;
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while matches!(self.chars.get(self.pos), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse::<i64>().map_err(|_| {
            let mut shown = text.clone();
            if let Some(&c) = self.chars.get(self.pos) {
                shown.push(c);
            }
            Error::MalformedExponent(format!("^{shown}"))
        })
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(Error::Syntax(format!("expected `{want}`, found `{c}`"))),
            None => Err(Error::Syntax(format!(
                "expected `{want}`, found end of input"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<Generator>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation, reducing relators and dropping the ones that
    /// reduce to the empty word.
    pub fn new<S: AsRef<str>>(names: &[S], relators: Vec<Word>) -> Result<Self> {
        let generators = make_alphabet(names)?;
        for r in &relators {
            if let Some(g) = r.max_generator() {
                if g >= generators.len() {
                    return Err(Error::InvalidPresentation(format!(
                        "relator uses generator index {g} but only {} are declared",
                        generators.len()
                    )));
                }
            }
        }
        let relators = relators
            .into_iter()
            .map(|r| r.free_reduce())
            .filter(|r| !r.is_empty())
            .collect();
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// Builds a presentation from relator text, one relation per entry.
    pub fn from_text_relators<S: AsRef<str>>(names: &[S], relators: &[&str]) -> Result<Self> {
        let alphabet = make_alphabet(names)?;
        let mut words = Vec::new();
        for r in relators {
            words.extend(parse_relation(r, &alphabet)?);
        }
        Presentation::new(names, words)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut gens_text = None;
        let mut rels_text = None;
        for section in text.split(';') {
            let section = section.trim();
            if section.is_empty() {
                continue;
            }
            let (key, body) = section
                .split_once(':')
                .ok_or_else(|| Error::Syntax(format!("section `{section}` lacks a `key:`")))?;
            match key.trim() {
                "gens" | "generators" => gens_text = Some(body),
                "rels" | "relators" | "relations" => rels_text = Some(body),
                other => return Err(Error::Syntax(format!("unknown section `{other}`"))),
            }
        }
        let gens_text = gens_text.ok_or_else(|| Error::Syntax("missing `gens:`".into()))?;
        let names: Vec<&str> = gens_text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .collect();
        let relators = match rels_text {
            Some(body) => split_top_level(body),
            None => Vec::new(),
        };
        Presentation::from_text_relators(&names, &relators)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        parse_word(text, &self.generators)
    }

    pub fn word_text(&self, w: &Word) -> String {
        w.to_text(&self.generators)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        let rels: Vec<String> = self.relators.iter().map(|r| self.word_text(r)).collect();
        if rels.is_empty() {
            write!(f, "gens: {}; rels:", names.join(", "))
        } else {
            write!(f, "gens: {}; rels: {}", names.join(", "), rels.join(", "))
        }
    }
}

fn make_alphabet<S: AsRef<str>>(names: &[S]) -> Result<Vec<Generator>> {
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(names.len());
    for (index, name) in names.iter().enumerate() {
        let name = name.as_ref().trim();
        let valid = name
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::InvalidPresentation(format!(
                "bad generator name `{name}`"
            )));
        }
        if !seen.insert(name.to_string()) {
            return Err(Error::InvalidPresentation(format!(
                "duplicate generator `{name}`"
            )));
        }
        out.push(Generator {
            index,
            name: name.to_string(),
        });
    }
    Ok(out)
}

/// Splits on commas that are not nested inside brackets or parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(text[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(text[start..].trim());
    out.into_iter().filter(|s| !s.is_empty()).collect()
}
