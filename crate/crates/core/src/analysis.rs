//! Conjugacy classes, inversion on classes, ambivalence and centres.

use std::collections::VecDeque;

use serde::Serialize;

use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyProfile {
    /// Classes ordered by smallest member; class 0 is `{1}`. Members sorted.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Class of `g` goes to the class of `g⁻¹`.
    pub inversion_perm: Vec<usize>,
    /// Nontrivial classes with `c = c̄`.
    pub self_inverse_count: usize,
    /// Unordered pairs `{c, c̄}` with `c ≠ c̄`.
    pub paired_count: usize,
}

impl ConjugacyProfile {
    fn from_class_of(g: &FiniteGroup, class_of: Vec<usize>, count: usize) -> Self {
        let mut classes = vec![Vec::new(); count];
        for (e, &c) in class_of.iter().enumerate() {
            classes[c].push(e);
        }
        let inversion_perm: Vec<usize> = classes
            .iter()
            .map(|members| class_of[g.inv(members[0])])
            .collect();
        let self_inverse_count = (1..count).filter(|&c| inversion_perm[c] == c).count();
        let moved = (1..count).filter(|&c| inversion_perm[c] != c).count();
        ConjugacyProfile {
            classes,
            class_of,
            inversion_perm,
            self_inverse_count,
            paired_count: moved / 2,
        }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn nontrivial_class_count(&self) -> usize {
        self.classes.len() - 1
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Classes fixed by inversion, the identity class included.
    pub fn real_class_count(&self) -> usize {
        self.inversion_perm
            .iter()
            .enumerate()
            .filter(|&(c, &d)| c == d)
            .count()
    }

    /// One class from every swapped pair `{c, c̄}` (the lower index).
    pub fn paired_representatives(&self) -> Vec<usize> {
        (1..self.classes.len())
            .filter(|&c| self.inversion_perm[c] > c)
            .collect()
    }
}

/// Classes as orbits of conjugation by the generators.
pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyProfile {
    let n = g.order();
    let gens: Vec<usize> = g.generator_images().to_vec();
    let mut class_of = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if class_of[start] != usize::MAX {
            continue;
        }
        class_of[start] = count;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for &s in &gens {
                let y = g.conjugate(x, s);
                if class_of[y] == usize::MAX {
                    class_of[y] = count;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }
    ConjugacyProfile::from_class_of(g, class_of, count)
}

/// Classes by conjugating every element by every element. Quadratic; kept
/// as the cross-check for [`conjugacy_classes`].
pub fn conjugacy_classes_exhaustive(g: &FiniteGroup) -> ConjugacyProfile {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut count = 0;
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        for h in 0..n {
            class_of[g.conjugate(x, h)] = count;
        }
        count += 1;
    }
    ConjugacyProfile::from_class_of(g, class_of, count)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmbivalenceVerdict {
    pub ambivalent: bool,
    /// An element not conjugate to its inverse, when one exists.
    pub witness: Option<usize>,
}

pub fn ambivalence(profile: &ConjugacyProfile) -> AmbivalenceVerdict {
    let moved = (0..profile.classes.len()).find(|&c| profile.inversion_perm[c] != c);
    AmbivalenceVerdict {
        ambivalent: moved.is_none(),
        witness: moved.map(|c| profile.classes[c][0]),
    }
}

pub fn is_ambivalent(g: &FiniteGroup) -> AmbivalenceVerdict {
    ambivalence(&conjugacy_classes(g))
}

/// Elements commuting with every generator, hence with everything.
pub fn centre(g: &FiniteGroup) -> Vec<usize> {
    g.elements()
        .filter(|&z| {
            g.generator_images()
                .iter()
                .all(|&s| g.mul(z, s) == g.mul(s, z))
        })
        .collect()
}

pub fn centre_group(g: &FiniteGroup) -> FiniteGroup {
    g.subgroup(&centre(g)).expect("the centre is a subgroup")
}
