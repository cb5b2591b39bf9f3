//! `Wh₁(π; Γ)` for finite `π`, its duality involution and the detection
//! quotient.
//!
//! The general route presents `Wh₁(π; Γ)` as the quotient of `Γ[π]` by the
//! twisted conjugation relations `γ·g − (s·γ)·(s g s⁻¹)` and the identity
//! coordinate, and reads off the cokernel with Smith normal form. For
//! `Γ = ℤ/2` with trivial action the quotient is the `ℤ/2`-vector space on
//! nontrivial conjugacy classes; that fast route works from a
//! [`ConjugacyProfile`] alone.
//!
//! The involution is the one induced by `g ↦ g⁻¹` on the group ring, which
//! is what the general twisted formula reduces to for orientable, spin
//! manifolds (`w₁ = w₂ = 0`). On the `ℤ/2` summand it permutes the class
//! basis by inversion.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::analysis::ConjugacyProfile;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::snf::{cokernel, IntMatrix};

/// Finitely generated abelian `Γ = ⊕ ℤ/d_k` (`d_k = 0` meaning `ℤ`) with a
/// `π`-action given per group generator. Column `k` of a matrix is the
/// image of the `k`-th generator of `Γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSystem {
    factors: Vec<u64>,
    action: Vec<Vec<Vec<i64>>>,
}

impl CoefficientSystem {
    pub fn new(factors: Vec<u64>, action: Vec<Vec<Vec<i64>>>) -> Self {
        CoefficientSystem { factors, action }
    }

    pub fn trivial(factors: Vec<u64>, num_generators: usize) -> Self {
        let r = factors.len();
        let id: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| (i == j) as i64).collect())
            .collect();
        CoefficientSystem {
            factors,
            action: vec![id; num_generators],
        }
    }

    pub fn z2(num_generators: usize) -> Self {
        CoefficientSystem::trivial(vec![2], num_generators)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    fn reduce(&self, m: &mut [Vec<i64>]) {
        for (row, &d) in m.iter_mut().zip(&self.factors) {
            if d != 0 {
                for x in row.iter_mut() {
                    *x = x.rem_euclid(d as i64);
                }
            }
        }
    }

    fn matmul(&self, a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut out = vec![vec![0i64; r]; r];
        for i in 0..r {
            for k in 0..r {
                if a[i][k] != 0 {
                    for j in 0..r {
                        out[i][j] += a[i][k] * b[k][j];
                    }
                }
            }
        }
        self.reduce(&mut out);
        out
    }

    /// Checks that every matrix is an endomorphism of `Γ` and that the
    /// assignment extends to a homomorphism `π → Aut(Γ)`, by propagating
    /// along a spanning tree of the Cayley graph and testing every edge.
    pub fn validate(&self, g: &FiniteGroup) -> Result<()> {
        let r = self.rank();
        let gens = g.generator_images();
        if self.action.len() != gens.len() {
            return Err(Error::InconsistentAction(format!(
                "{} action matrices for {} generators",
                self.action.len(),
                gens.len()
            )));
        }
        for (s, a) in self.action.iter().enumerate() {
            if a.len() != r || a.iter().any(|row| row.len() != r) {
                return Err(Error::InconsistentAction(format!(
                    "matrix {s} is not {r}x{r}"
                )));
            }
            for m in 0..r {
                for k in 0..r {
                    let (dm, dk) = (self.factors[m] as i64, self.factors[k] as i64);
                    let ok = if dm == 0 {
                        a[m][k] * dk == 0
                    } else {
                        (a[m][k] * dk) % dm == 0
                    };
                    if !ok {
                        return Err(Error::InconsistentAction(format!(
                            "matrix {s} does not respect the order of generator {k}"
                        )));
                    }
                }
            }
        }
        let mut reduced: Vec<Vec<Vec<i64>>> = self.action.clone();
        for m in &mut reduced {
            self.reduce(m);
        }
        let mut id: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| (i == j) as i64).collect())
            .collect();
        self.reduce(&mut id);
        let mut assigned: Vec<Option<Vec<Vec<i64>>>> = vec![None; g.order()];
        assigned[0] = Some(id);
        let mut queue = vec![0usize];
        let mut head = 0;
        while head < queue.len() {
            let e = queue[head];
            head += 1;
            for (si, &s) in gens.iter().enumerate() {
                let next = g.mul(e, s);
                let m = self.matmul(assigned[e].as_ref().unwrap(), &reduced[si]);
                match &assigned[next] {
                    None => {
                        assigned[next] = Some(m);
                        queue.push(next);
                    }
                    Some(existing) if *existing != m => {
                        return Err(Error::InconsistentAction(format!(
                            "action does not factor through the group (element {next})"
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhiteheadGroupResult {
    /// Divisibility order, units dropped, free summands as trailing zeros.
    pub invariant_factors: Vec<u64>,
    /// For the `ℤ/2` fast path: the nontrivial class behind each summand.
    pub basis_labels: Option<Vec<usize>>,
}

impl WhiteheadGroupResult {
    /// Dimension when the group is an elementary abelian 2-group.
    pub fn z2_dimension(&self) -> Option<usize> {
        self.invariant_factors
            .iter()
            .all(|&d| d == 2)
            .then_some(self.invariant_factors.len())
    }
}

/// Relation matrix for `Wh₁(π; Γ)` on the basis `γ_k · g`
/// (column `k·|π| + g`).
pub fn wh1_relation_matrix(g: &FiniteGroup, coeff: &CoefficientSystem) -> IntMatrix {
    let n = g.order();
    let r = coeff.rank();
    let col = |k: usize, e: usize| k * n + e;
    let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
    for (k, &d) in coeff.factors.iter().enumerate() {
        if d != 0 {
            for e in 0..n {
                rows.push(vec![(col(k, e), d as i64)]);
            }
        }
    }
    for (si, &s) in g.generator_images().iter().enumerate() {
        let a = &coeff.action[si];
        for k in 0..r {
            for e in 0..n {
                let conj = g.mul(g.mul(s, e), g.inv(s));
                let mut row = vec![(col(k, e), 1i64)];
                for (m, a_row) in a.iter().enumerate() {
                    if a_row[k] != 0 {
                        row.push((col(m, conj), -a_row[k]));
                    }
                }
                rows.push(row);
            }
        }
    }
    for k in 0..r {
        rows.push(vec![(col(k, 0), 1)]);
    }
    let mut m = IntMatrix::zeros(rows.len(), r * n);
    for (i, row) in rows.iter().enumerate() {
        for &(j, v) in row {
            m.add_to(i, j, v);
        }
    }
    m
}

pub fn wh1_general(g: &FiniteGroup, coeff: &CoefficientSystem) -> Result<WhiteheadGroupResult> {
    coeff.validate(g)?;
    let m = wh1_relation_matrix(g, coeff);
    let invariant_factors = cokernel(&m)
        .into_iter()
        .map(|d| d.to_u64().expect("invariant factor fits in u64"))
        .collect();
    Ok(WhiteheadGroupResult {
        invariant_factors,
        basis_labels: None,
    })
}

/// `Wh₁(π; ℤ/2) ≅ ⊕_c ℤ/2` over nontrivial classes `c`.
pub fn wh1_z2_fast(profile: &ConjugacyProfile) -> WhiteheadGroupResult {
    let classes: Vec<usize> = (1..profile.class_count()).collect();
    WhiteheadGroupResult {
        invariant_factors: vec![2; classes.len()],
        basis_labels: Some(classes),
    }
}

/// Dense matrix over `ℤ/2`, rows packed into 64-bit words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    bits: Vec<Vec<u64>>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            bits: vec![vec![0; cols.div_ceil(64)]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Gf2Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        let mask = 1u64 << (j % 64);
        if v {
            self.bits[i][j / 64] |= mask;
        } else {
            self.bits[i][j / 64] &= !mask;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|r| r.iter().all(|&w| w == 0))
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.get(i, k) {
                    for (o, &b) in out.bits[i].iter_mut().zip(&other.bits[k]) {
                        *o ^= b;
                    }
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.bits.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, b) = (c / 64, c % 64);
            let Some(p) = (rank..rows.len()).find(|&i| rows[i][w] >> b & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != rank && row[w] >> b & 1 == 1 {
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// `Wh₁(π; ℤ/2)` with the involution, `d₄` and the detection quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvolutionSpace {
    pub dim: usize,
    /// `bar[b]` is the basis index of the class inverse to basis class `b`
    /// (basis `b` is nontrivial class `b + 1`).
    pub bar: Vec<usize>,
    pub d4_rank: usize,
    pub z4_dim: usize,
    pub quotient_dim: usize,
}

impl InvolutionSpace {
    pub fn bar_matrix(&self) -> Gf2Matrix {
        let mut m = Gf2Matrix::zeros(self.dim, self.dim);
        for (b, &t) in self.bar.iter().enumerate() {
            m.set(t, b, true);
        }
        m
    }

    /// `d_i(x) = x − (−1)^i x̄`, reduced mod 2.
    pub fn differential(&self, i: i32) -> Gf2Matrix {
        let sign: i64 = if i.rem_euclid(2) == 0 { 1 } else { -1 };
        let mut m = Gf2Matrix::zeros(self.dim, self.dim);
        for b in 0..self.dim {
            let mut entries = vec![(b, 1i64)];
            entries.push((self.bar[b], -sign));
            let mut acc = std::collections::BTreeMap::new();
            for (row, v) in entries {
                *acc.entry(row).or_insert(0i64) += v;
            }
            for (row, v) in acc {
                m.set(row, b, v.rem_euclid(2) == 1);
            }
        }
        m
    }
}

pub fn involution_space(profile: &ConjugacyProfile) -> InvolutionSpace {
    let dim = profile.nontrivial_class_count();
    let bar: Vec<usize> = (1..=dim).map(|c| profile.inversion_perm[c] - 1).collect();
    let mut space = InvolutionSpace {
        dim,
        bar,
        d4_rank: 0,
        z4_dim: 0,
        quotient_dim: 0,
    };
    let d4 = space.differential(4);
    space.d4_rank = d4.rank();
    space.z4_dim = dim - space.d4_rank;
    space.quotient_dim = dim - space.z4_dim;
    space
}

/// Dimension of `Wh₁(π; ℤ/2) / Z₄`; positive exactly when some class is
/// not inverse-closed.
pub fn detection_rank(profile: &ConjugacyProfile) -> usize {
    involution_space(profile).quotient_dim
}
