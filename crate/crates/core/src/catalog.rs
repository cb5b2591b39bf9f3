//! Named groups and Seifert-fibred data.
//!
//! Seifert data are written `b,eps,g,(α₁:β₁),...`, e.g. `0,o1,1` for the
//! 3-torus or `-1,o1,0,(2:1),(3:1),(5:1)` for the Poincaré sphere.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use serde::Serialize;

use crate::coset::realize_presentation;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::words::{Presentation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Epsilon {
    O1,
    O2,
    N1,
    N2,
    N3,
    N4,
}

impl Epsilon {
    pub fn is_orientable_base(self) -> bool {
        matches!(self, Epsilon::O1 | Epsilon::O2)
    }

    fn min_genus(self) -> u32 {
        match self {
            Epsilon::O1 => 0,
            Epsilon::O2 | Epsilon::N1 | Epsilon::N2 => 1,
            Epsilon::N3 => 2,
            Epsilon::N4 => 3,
        }
    }

    /// Exponent `ε_i` in `a_i h a_i⁻¹ = h^{ε_i}` (or `v_i` for n-types),
    /// 1-based `i`.
    pub fn twist(self, i: u32) -> i64 {
        match self {
            Epsilon::O1 | Epsilon::N1 => 1,
            Epsilon::O2 | Epsilon::N2 => -1,
            Epsilon::N3 => {
                if i == 1 {
                    1
                } else {
                    -1
                }
            }
            Epsilon::N4 => {
                if i <= 2 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    /// Whether `h` is central: every twist is `+1`.
    pub fn fiber_central(self) -> bool {
        matches!(self, Epsilon::O1 | Epsilon::N1)
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Epsilon::O1 => "o1",
            Epsilon::O2 => "o2",
            Epsilon::N1 => "n1",
            Epsilon::N2 => "n2",
            Epsilon::N3 => "n3",
            Epsilon::N4 => "n4",
        })
    }
}

impl std::str::FromStr for Epsilon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "o1" => Epsilon::O1,
            "o2" => Epsilon::O2,
            "n1" => Epsilon::N1,
            "n2" => Epsilon::N2,
            "n3" => Epsilon::N3,
            "n4" => Epsilon::N4,
            other => return Err(Error::InvalidSeifert(format!("unknown type `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SeifertInvariants {
    pub b: i64,
    pub epsilon: Epsilon,
    pub genus: u32,
    /// `(α, β)` pairs with `α ≥ 2` and `gcd(α, β) = 1`.
    pub exceptional: Vec<(i64, i64)>,
}

impl SeifertInvariants {
    pub fn new(b: i64, epsilon: Epsilon, genus: u32, exceptional: Vec<(i64, i64)>) -> Result<Self> {
        let s = SeifertInvariants {
            b,
            epsilon,
            genus,
            exceptional,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus < self.epsilon.min_genus() {
            return Err(Error::InvalidSeifert(format!(
                "type {} needs genus at least {}",
                self.epsilon,
                self.epsilon.min_genus()
            )));
        }
        for &(alpha, beta) in &self.exceptional {
            if alpha < 2 {
                return Err(Error::InvalidSeifert(format!(
                    "α = {alpha} must be at least 2"
                )));
            }
            if alpha.gcd(&beta) != 1 {
                return Err(Error::InvalidSeifert(format!(
                    "({alpha}, {beta}) not coprime"
                )));
            }
        }
        Ok(())
    }

    /// Parses `b,eps,g,(α:β),...`.
    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() < 3 {
            return Err(Error::InvalidSeifert(format!(
                "`{text}` needs at least b,eps,g"
            )));
        }
        let int = |s: &str| {
            s.parse::<i64>()
                .map_err(|_| Error::InvalidSeifert(format!("bad integer `{s}`")))
        };
        let b = int(parts[0])?;
        let epsilon: Epsilon = parts[1].parse()?;
        let genus = parts[2]
            .parse::<u32>()
            .map_err(|_| Error::InvalidSeifert(format!("bad genus `{}`", parts[2])))?;
        let mut exceptional = Vec::new();
        for p in &parts[3..] {
            let inner = p
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::InvalidSeifert(format!("fibre `{p}` should be (α:β)")))?;
            let (a, b) = inner
                .split_once(':')
                .ok_or_else(|| Error::InvalidSeifert(format!("fibre `{p}` should be (α:β)")))?;
            exceptional.push((int(a.trim())?, int(b.trim())?));
        }
        SeifertInvariants::new(b, epsilon, genus, exceptional)
    }

    /// `2 − 2g − Σ(1 − 1/α)` for o-types, `2 − g − Σ(1 − 1/α)` for n-types.
    pub fn orbifold_euler_characteristic(&self) -> Ratio<i64> {
        let g = i64::from(self.genus);
        let base = if self.epsilon.is_orientable_base() {
            2 - 2 * g
        } else {
            2 - g
        };
        self.exceptional
            .iter()
            .fold(Ratio::from_integer(base), |acc, &(a, _)| {
                acc - (Ratio::from_integer(1) - Ratio::new(1, a))
            })
    }

    /// `e = −(b + Σ β/α)`
    pub fn euler_number(&self) -> Ratio<i64> {
        let sum = self
            .exceptional
            .iter()
            .fold(Ratio::from_integer(self.b), |acc, &(a, b)| {
                acc + Ratio::new(b, a)
            });
        -sum
    }

    /// Index of the fibre generator `h` in [`seifert_presentation`].
    pub fn fiber_generator(&self) -> usize {
        let surface = if self.epsilon.is_orientable_base() {
            2 * self.genus
        } else {
            self.genus
        };
        surface as usize + self.exceptional.len()
    }
}

impl fmt::Display for SeifertInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.b, self.epsilon, self.genus)?;
        for (a, b) in &self.exceptional {
            write!(f, ",({a}:{b})")?;
        }
        Ok(())
    }
}

fn names(prefix: &str, count: usize) -> Vec<String> {
    if count == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=count).map(|i| format!("{prefix}{i}")).collect()
    }
}

/// The standard presentation of the fundamental group. Generators are
/// `a_i, b_i` (o-types) or `v_i` (n-types), then `q_j`, then `h`; indices
/// are dropped when a family has a single member.
pub fn seifert_presentation(s: &SeifertInvariants) -> Result<Presentation> {
    s.validate()?;
    let g = s.genus as usize;
    let r = s.exceptional.len();
    let h = s.fiber_generator();
    let hw = |e: i64| Word::power_of(h, e);
    let mut gen_names = Vec::new();
    let mut relators = Vec::new();
    let mut surface_word = Word::identity();

    if s.epsilon.is_orientable_base() {
        let a_names = names("a", g);
        let b_names = names("b", g);
        for i in 0..g {
            gen_names.push(a_names[i].clone());
            gen_names.push(b_names[i].clone());
        }
        for i in 0..g {
            let eps = s.epsilon.twist(i as u32 + 1);
            for gen in [2 * i, 2 * i + 1] {
                let x = Word::generator(gen);
                relators.push(x.concat(&hw(1)).concat(&x.invert()).concat(&hw(-eps)));
            }
            surface_word = surface_word.concat(&Word::commutator(
                &Word::generator(2 * i),
                &Word::generator(2 * i + 1),
            ));
        }
    } else {
        gen_names.extend(names("v", g));
        for i in 0..g {
            let eps = s.epsilon.twist(i as u32 + 1);
            let v = Word::generator(i);
            relators.push(v.concat(&hw(1)).concat(&v.invert()).concat(&hw(-eps)));
            surface_word = surface_word.concat(&Word::power_of(i, 2));
        }
    }

    let q0 = gen_names.len();
    gen_names.extend(names("q", r));
    for j in 0..r {
        relators.push(Word::commutator(&Word::generator(q0 + j), &hw(1)));
    }
    for (j, &(alpha, beta)) in s.exceptional.iter().enumerate() {
        relators.push(Word::power_of(q0 + j, alpha).concat(&hw(beta)));
    }
    gen_names.push("h".into());

    let mut long = Word::identity();
    for j in 0..r {
        long = long.concat(&Word::generator(q0 + j));
    }
    relators.push(long.concat(&surface_word).concat(&hw(-s.b)));
    Presentation::new(&gen_names, relators)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "order", rename_all = "lowercase")]
pub enum FiberOrder {
    Infinite,
    Finite(usize),
    Undetermined,
}

/// Realizes a Seifert group when it is finite within `budget` cosets and
/// returns it together with the image of `h`.
pub fn realize_seifert(s: &SeifertInvariants, budget: usize) -> Result<(FiniteGroup, usize)> {
    let p = seifert_presentation(s)?;
    let g = realize_presentation(&p, budget)?;
    let h = g.generator_images()[s.fiber_generator()];
    Ok((g, h))
}

/// Order of the fibre class: infinite when `χ^orb ≤ 0` or `e = 0`,
/// otherwise measured on the enumerated group.
pub fn fiber_order_rule(s: &SeifertInvariants, budget: usize) -> FiberOrder {
    let zero = Ratio::from_integer(0);
    if s.orbifold_euler_characteristic() <= zero || s.euler_number() == zero {
        return FiberOrder::Infinite;
    }
    match realize_seifert(s, budget) {
        Ok((g, h)) => FiberOrder::Finite(g.element_order(h)),
        Err(_) => FiberOrder::Undetermined,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FibreVerdict {
    NotAmbivalent,
    Inconclusive,
}

/// With `h` central and of order greater than two, `h` and `h⁻¹` are
/// distinct central elements, so the group is not ambivalent. The converse
/// is not claimed.
pub fn central_fibre_check(s: &SeifertInvariants, budget: usize) -> FibreVerdict {
    if !s.epsilon.fiber_central() {
        return FibreVerdict::Inconclusive;
    }
    match fiber_order_rule(s, budget) {
        FiberOrder::Infinite => FibreVerdict::NotAmbivalent,
        FiberOrder::Finite(k) if k > 2 => FibreVerdict::NotAmbivalent,
        _ => FibreVerdict::Inconclusive,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Goodness {
    Good,
    Unknown,
}

/// `(k1_trivial, goodness)` for a Seifert manifold. Finite groups and
/// aspherical manifolds have trivial `k₁`, and so does `S²×S¹`; for the
/// other `S²×ℝ` manifold it is left unknown. Nonnegative `χ^orb` gives a
/// virtually solvable group, hence good.
pub fn seifert_flags(s: &SeifertInvariants) -> (bool, Goodness) {
    let zero = Ratio::from_integer(0);
    let chi = s.orbifold_euler_characteristic();
    let k1 = chi <= zero || s.euler_number() != zero || s.epsilon.is_orientable_base();
    let goodness = if chi >= zero {
        Goodness::Good
    } else {
        Goodness::Unknown
    };
    (k1, goodness)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Presentation(Presentation),
    Seifert(SeifertInvariants),
}

impl Construction {
    pub fn presentation(&self) -> Result<Presentation> {
        match self {
            Construction::Presentation(p) => Ok(p.clone()),
            Construction::Seifert(s) => seifert_presentation(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub construction: Construction,
    pub known_order: Option<usize>,
    pub k1_trivial: bool,
    pub goodness: Goodness,
    pub expected_ambivalent: Option<bool>,
    /// Fundamental group of a closed 3-manifold; dihedral groups are
    /// carried only as cross-checks.
    pub manifold_group: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogRecord {
    pub name: String,
    pub presentation: String,
    pub seifert: Option<String>,
    pub known_order: Option<usize>,
    pub k1_trivial: bool,
    pub goodness: Goodness,
    pub expected_ambivalent: Option<bool>,
    pub manifold_group: bool,
}

impl CatalogEntry {
    fn finite(name: String, p: Presentation, order: usize, ambivalent: bool) -> Self {
        CatalogEntry {
            name,
            construction: Construction::Presentation(p),
            known_order: Some(order),
            k1_trivial: true,
            goodness: Goodness::Good,
            expected_ambivalent: Some(ambivalent),
            manifold_group: true,
        }
    }

    pub fn from_presentation(name: &str, p: Presentation) -> Self {
        CatalogEntry {
            name: name.to_string(),
            construction: Construction::Presentation(p),
            known_order: None,
            k1_trivial: true,
            goodness: Goodness::Good,
            expected_ambivalent: None,
            manifold_group: true,
        }
    }

    pub fn from_seifert(name: &str, s: SeifertInvariants) -> Self {
        let (k1_trivial, goodness) = seifert_flags(&s);
        CatalogEntry {
            name: name.to_string(),
            construction: Construction::Seifert(s),
            known_order: None,
            k1_trivial,
            goodness,
            expected_ambivalent: None,
            manifold_group: true,
        }
    }

    pub fn record(&self) -> Result<CatalogRecord> {
        let seifert = match &self.construction {
            Construction::Seifert(s) => Some(s.to_string()),
            Construction::Presentation(_) => None,
        };
        Ok(CatalogRecord {
            name: self.name.clone(),
            presentation: self.construction.presentation()?.to_string(),
            seifert,
            known_order: self.known_order,
            k1_trivial: self.k1_trivial,
            goodness: self.goodness,
            expected_ambivalent: self.expected_ambivalent,
            manifold_group: self.manifold_group,
        })
    }
}

fn pres(gens: &[&str], rels: &[&str]) -> Presentation {
    Presentation::from_text_relators(gens, rels).expect("built-in presentation parses")
}

pub fn cyclic(m: usize) -> CatalogEntry {
    let p = pres(&["a"], &[&format!("a^{m}")]);
    CatalogEntry::finite(format!("Z{m}"), p, m, m <= 2)
}

/// Dicyclic group of order `4ℓ`, `ℓ ≥ 2`.
pub fn dicyclic(l: usize) -> CatalogEntry {
    let p = pres(
        &["a", "x"],
        &[
            &format!("a^{}", 2 * l),
            &format!("x^2 a^-{l}"),
            "x^-1 a x a",
        ],
    );
    CatalogEntry::finite(format!("Dic{l}"), p, 4 * l, l.is_multiple_of(2))
}

pub fn binary_tetrahedral() -> CatalogEntry {
    CatalogEntry::finite(
        "T24".into(),
        pres(&["a", "b"], &["a^3 = b^3 = (a b)^2"]),
        24,
        false,
    )
}

pub fn binary_octahedral() -> CatalogEntry {
    CatalogEntry::finite(
        "O48".into(),
        pres(&["a", "b"], &["a^4 = b^3 = (a b)^2"]),
        48,
        true,
    )
}

pub fn binary_icosahedral() -> CatalogEntry {
    CatalogEntry::finite(
        "I120".into(),
        pres(&["a", "b"], &["a^5 = b^3 = (a b)^2"]),
        120,
        true,
    )
}

/// Dihedral group of order `2k`.
pub fn dihedral(k: usize) -> CatalogEntry {
    let p = pres(&["r", "s"], &[&format!("r^{k}"), "s^2", "(s r)^2"]);
    CatalogEntry {
        k1_trivial: false,
        manifold_group: false,
        ..CatalogEntry::finite(format!("D{k}"), p, 2 * k, true)
    }
}

/// Cyclic, dicyclic and binary polyhedral groups up to `max_order`, plus
/// dihedral groups for cross-checks.
pub fn builtin_groups(max_order: usize) -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = (1..=max_order).map(cyclic).collect();
    out.extend((2..).take_while(|l| 4 * l <= max_order).map(dicyclic));
    for (order, entry) in [
        (24, binary_tetrahedral as fn() -> CatalogEntry),
        (48, binary_octahedral),
        (120, binary_icosahedral),
    ] {
        if order <= max_order {
            out.push(entry());
        }
    }
    out.extend((2..=max_order / 2).map(dihedral));
    out
}

pub fn three_torus() -> SeifertInvariants {
    SeifertInvariants::new(0, Epsilon::O1, 1, vec![]).expect("valid")
}

pub fn poincare_sphere() -> SeifertInvariants {
    SeifertInvariants::new(-1, Epsilon::O1, 0, vec![(2, 1), (3, 1), (5, 1)]).expect("valid")
}

/// Looks up `Z<m>`, `Dic<ℓ>`, `Q8`, `D<k>`, `T24`, `O48`, `I120`,
/// `poincare` (Seifert form of `I120`) or `T3`.
pub fn preset(name: &str) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownPreset(name.to_string());
    let number = |rest: &str| rest.parse::<usize>().map_err(|_| unknown());
    let lower = name.to_ascii_lowercase();
    let entry = match lower.as_str() {
        "q8" => CatalogEntry {
            name: "Q8".into(),
            ..dicyclic(2)
        },
        "t24" => binary_tetrahedral(),
        "o48" => binary_octahedral(),
        "i120" => binary_icosahedral(),
        "poincare" => CatalogEntry {
            known_order: Some(120),
            expected_ambivalent: Some(true),
            ..CatalogEntry::from_seifert("poincare", poincare_sphere())
        },
        "t3" => CatalogEntry {
            expected_ambivalent: Some(false),
            ..CatalogEntry::from_seifert("T3", three_torus())
        },
        _ => {
            if let Some(rest) = lower.strip_prefix("dic") {
                match number(rest)? {
                    l if l >= 2 => dicyclic(l),
                    _ => return Err(unknown()),
                }
            } else if let Some(rest) = lower.strip_prefix('z') {
                match number(rest)? {
                    m if m >= 1 => cyclic(m),
                    _ => return Err(unknown()),
                }
            } else if let Some(rest) = lower.strip_prefix('d') {
                match number(rest)? {
                    k if k >= 2 => dihedral(k),
                    _ => return Err(unknown()),
                }
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(entry)
}

pub fn catalog_json(entries: &[CatalogEntry]) -> Result<String> {
    let records = entries
        .iter()
        .map(CatalogEntry::record)
        .collect::<Result<Vec<_>>>()?;
    Ok(
        serde_json::to_string_pretty(&serde_json::json!({ "schema": 1, "groups": records }))
            .expect("catalog records serialize"),
    )
}

pub fn catalog_csv(entries: &[CatalogEntry]) -> Result<String> {
    let mut out = String::from(
        "name,known_order,k1_trivial,goodness,expected_ambivalent,manifold_group,presentation\n",
    );
    let opt = |v: Option<String>| v.unwrap_or_default();
    for e in entries {
        let r = e.record()?;
        out.push_str(&format!(
            "{},{},{},{},{},{},\"{}\"\n",
            r.name,
            opt(r.known_order.map(|o| o.to_string())),
            r.k1_trivial,
            serde_json::to_value(r.goodness)
                .expect("enum")
                .as_str()
                .unwrap_or_default(),
            opt(r.expected_ambivalent.map(|b| b.to_string())),
            r.manifold_group,
            r.presentation.replace('"', "\"\"")
        ));
    }
    Ok(out)
}
