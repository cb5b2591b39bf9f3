//! Words in the Steinberg group `St(ℤ[π])` and their images in `E(ℤ[π])`.
//!
//! A word is a product of symbols `x_{i,j}^λ` (1-based, `i ≠ j`). Evaluation
//! sends each symbol to the elementary matrix `I + λ·E_{ij}`; a word lies in
//! `K₂` exactly when its image is the identity. Deciding whether such a word
//! is trivial in `Wh₂` is not attempted.
//!
//! Text syntax: `x(1,2;+g) x(2,1;-g^-1) x(1,2;+g)`, where the coefficient is
//! a signed sum of terms `k`, `g` or `k*g` with `g` a word in the group's
//! generators. `w(i,j;±g)` expands to the three-letter w-element.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::group_ring::{GroupRingElement, GroupRingMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinbergLetter {
    pub i: usize,
    pub j: usize,
    pub lambda: GroupRingElement,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SteinbergWord {
    letters: Vec<SteinbergLetter>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl SteinbergWord {
    pub fn empty() -> Self {
        SteinbergWord::default()
    }

    pub fn symbol(i: usize, j: usize, lambda: GroupRingElement) -> Result<Self> {
        if i == 0 || j == 0 {
            return Err(Error::IndexOutOfRange { index: 0, dim: 0 });
        }
        if i == j {
            return Err(Error::DiagonalSymbol(i));
        }
        Ok(SteinbergWord {
            letters: vec![SteinbergLetter { i, j, lambda }],
        })
    }

    pub fn letters(&self) -> &[SteinbergLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|l| l.i.max(l.j)).max().unwrap_or(0)
    }

    pub fn concat(&self, other: &SteinbergWord) -> SteinbergWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        SteinbergWord { letters }
    }

    /// `(x_{i,j}^λ)⁻¹ = x_{i,j}^{−λ}`, letters reversed.
    pub fn inverse(&self) -> SteinbergWord {
        let letters = self
            .letters
            .iter()
            .rev()
            .map(|l| SteinbergLetter {
                i: l.i,
                j: l.j,
                lambda: l.lambda.neg(),
            })
            .collect();
        SteinbergWord { letters }
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`
    pub fn commutator(u: &SteinbergWord, v: &SteinbergWord) -> SteinbergWord {
        u.concat(v).concat(&u.inverse()).concat(&v.inverse())
    }

    pub fn to_text(&self, group: &FiniteGroup) -> String {
        self.letters
            .iter()
            .map(|l| format!("x({},{};{})", l.i, l.j, l.lambda.to_text(group)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Image in `E(ℤ[π])` at dimension `n`.
pub fn evaluate(w: &SteinbergWord, n: usize, group: &FiniteGroup) -> Result<GroupRingMatrix> {
    let mut m = GroupRingMatrix::identity(n);
    for l in &w.letters {
        m.right_mul_elementary(l.i, l.j, &l.lambda, group)?;
    }
    Ok(m)
}

/// `w_{i,j}^{±g} = x_{i,j}^{±g} x_{j,i}^{∓g⁻¹} x_{i,j}^{±g}`
pub fn w_element(
    i: usize,
    j: usize,
    g: usize,
    sign: Sign,
    group: &FiniteGroup,
) -> Result<SteinbergWord> {
    let s = sign.value();
    let outer = SteinbergWord::symbol(i, j, GroupRingElement::monomial(s, g))?;
    let middle = SteinbergWord::symbol(j, i, GroupRingElement::monomial(-s, group.inv(g)))?;
    Ok(outer.concat(&middle).concat(&outer))
}

pub fn k2_membership(w: &SteinbergWord, n: usize, group: &FiniteGroup) -> Result<bool> {
    Ok(evaluate(w, n, group)?.is_identity())
}

/// Relator `x_{i,j}^λ x_{i,j}^μ (x_{i,j}^{λ+μ})⁻¹`.
pub fn additivity_relator(
    i: usize,
    j: usize,
    lambda: &GroupRingElement,
    mu: &GroupRingElement,
) -> Result<SteinbergWord> {
    let a = SteinbergWord::symbol(i, j, lambda.clone())?;
    let b = SteinbergWord::symbol(i, j, mu.clone())?;
    let c = SteinbergWord::symbol(i, j, lambda.add(mu))?;
    Ok(a.concat(&b).concat(&c.inverse()))
}

/// Relator `[x_{i,j}^λ, x_{k,l}^μ]`, valid when `j ≠ k` and `i ≠ l`.
pub fn commuting_relator(
    (i, j): (usize, usize),
    (k, l): (usize, usize),
    lambda: &GroupRingElement,
    mu: &GroupRingElement,
) -> Result<SteinbergWord> {
    if j == k || i == l {
        return Err(Error::Syntax(format!(
            "x({i},{j}) and x({k},{l}) need j != k and i != l to commute"
        )));
    }
    let a = SteinbergWord::symbol(i, j, lambda.clone())?;
    let b = SteinbergWord::symbol(k, l, mu.clone())?;
    Ok(SteinbergWord::commutator(&a, &b))
}

/// Relator `[x_{i,j}^λ, x_{j,k}^μ] (x_{i,k}^{λμ})⁻¹`, valid when `i ≠ k`.
pub fn commutator_relator(
    i: usize,
    j: usize,
    k: usize,
    lambda: &GroupRingElement,
    mu: &GroupRingElement,
    group: &FiniteGroup,
) -> Result<SteinbergWord> {
    let a = SteinbergWord::symbol(i, j, lambda.clone())?;
    let b = SteinbergWord::symbol(j, k, mu.clone())?;
    let c = SteinbergWord::symbol(i, k, lambda.mul(mu, group))?;
    Ok(SteinbergWord::commutator(&a, &b).concat(&c.inverse()))
}

/// A monomial matrix `M = P·D`: column `c` has its single nonzero entry
/// `diagonal[c] = ±g` in row `permutation[c]` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdForm {
    pub permutation: Vec<usize>,
    pub diagonal: Vec<(i64, usize)>,
}

impl PdForm {
    pub fn to_matrix(&self) -> GroupRingMatrix {
        let n = self.permutation.len();
        let mut m = GroupRingMatrix::zeros(n);
        for (c, (&r, &(s, g))) in self.permutation.iter().zip(&self.diagonal).enumerate() {
            m.set(r, c, GroupRingElement::monomial(s, g));
        }
        m
    }

    pub fn is_identity_permutation(&self) -> bool {
        self.permutation.iter().enumerate().all(|(c, &r)| c == r)
    }
}

pub fn is_pd_form(m: &GroupRingMatrix) -> Option<PdForm> {
    let n = m.dim();
    let mut permutation = Vec::with_capacity(n);
    let mut diagonal = Vec::with_capacity(n);
    let mut row_used = vec![false; n];
    for c in 0..n {
        let mut found = None;
        for r in 0..n {
            let e = m.get(r, c);
            if e.is_zero() {
                continue;
            }
            if found.is_some() || row_used[r] {
                return None;
            }
            found = Some((r, e.as_signed_element()?));
        }
        let (r, entry) = found?;
        row_used[r] = true;
        permutation.push(r);
        diagonal.push(entry);
    }
    Some(PdForm {
        permutation,
        diagonal,
    })
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Parses a coefficient such as `+g`, `-g^-1`, `2*a x - 1`.
pub fn parse_group_ring_element(text: &str, group: &FiniteGroup) -> Result<GroupRingElement> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::Syntax("empty coefficient".into()));
    }
    let mut terms: Vec<(i64, &str)> = Vec::new();
    let mut start = 0;
    let mut sign = 1i64;
    let mut depth = 0i32;
    for (idx, b) in text.bytes().enumerate() {
        match b {
            b'(' | b'[' => depth += 1,
            b')' | b']' => depth -= 1,
            b'+' | b'-' if depth == 0 => {
                if text[..idx].trim_end().ends_with('^') {
                    continue;
                }
                let piece = text[start..idx].trim();
                let s = if b == b'-' { -1 } else { 1 };
                if piece.is_empty() {
                    // consecutive signs compose
                    sign *= s;
                } else {
                    terms.push((sign, piece));
                    sign = s;
                }
                start = idx + 1;
            }
            _ => {}
        }
    }
    let piece = text[start..].trim();
    if piece.is_empty() {
        return Err(Error::Syntax(format!("dangling sign in `{text}`")));
    }
    terms.push((sign, piece));

    let mut out = GroupRingElement::zero();
    for (sign, term) in terms {
        let digits: String = term.chars().take_while(|c| c.is_ascii_digit()).collect();
        let rest = term[digits.len()..].trim_start();
        let rest = rest.strip_prefix('*').unwrap_or(rest).trim();
        let coeff: i64 = if digits.is_empty() {
            1
        } else {
            digits
                .parse()
                .map_err(|_| Error::Syntax(format!("bad integer `{digits}`")))?
        };
        let g = if rest.is_empty() {
            if digits.is_empty() {
                return Err(Error::Syntax(format!("empty term in `{text}`")));
            }
            0
        } else {
            group.parse_element(rest)?
        };
        out = out.add(&GroupRingElement::monomial(sign * coeff, g));
    }
    Ok(out)
}

/// Parses `x(i,j;λ)` and `w(i,j;±g)` letters separated by whitespace.
pub fn parse_steinberg_word(text: &str, group: &FiniteGroup) -> Result<SteinbergWord> {
    let mut word = SteinbergWord::empty();
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0;
    while pos < chars.len() {
        let c = chars[pos];
        if c.is_whitespace() || c == '*' || c == '.' {
            pos += 1;
            continue;
        }
        if (c != 'x' && c != 'w') || chars.get(pos + 1) != Some(&'(') {
            return Err(Error::Syntax(format!(
                "expected `x(` or `w(` at offset {pos}"
            )));
        }
        let open = pos + 1;
        let mut depth = 0;
        let mut close = None;
        for (k, &ch) in chars.iter().enumerate().skip(open) {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(k);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| Error::Syntax("unbalanced parentheses".into()))?;
        let body: String = chars[open + 1..close].iter().collect();
        let (indices, coeff) = body
            .split_once(';')
            .ok_or_else(|| Error::Syntax(format!("`{body}` lacks `;`")))?;
        let (i, j) = indices
            .split_once(',')
            .ok_or_else(|| Error::Syntax(format!("`{indices}` needs `i,j`")))?;
        let parse_index = |s: &str| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::Syntax(format!("bad index `{s}`")))
        };
        let (i, j) = (parse_index(i)?, parse_index(j)?);
        let lambda = parse_group_ring_element(coeff, group)?;
        let piece = if c == 'x' {
            SteinbergWord::symbol(i, j, lambda)?
        } else {
            let (s, g) = lambda.as_signed_element().ok_or_else(|| {
                Error::Syntax(format!("w-element needs a coefficient ±g, got `{coeff}`"))
            })?;
            let sign = if s > 0 { Sign::Plus } else { Sign::Minus };
            w_element(i, j, g, sign, group)?
        };
        word = word.concat(&piece);
        pos = close + 1;
    }
    Ok(word)
}
