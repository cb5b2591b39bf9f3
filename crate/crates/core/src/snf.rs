//! Exact Smith normal form over ℤ with unimodular certificates.
//!
//! Pivoting always brings the smallest nonzero absolute value of the active
//! block into position, which keeps intermediate entries small on the
//! sparse, ±1-heavy relation matrices built for Whitehead groups.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            for (j, &v) in r.as_ref().iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += k · row[src]
    fn add_row_multiple(&mut self, src: usize, dst: usize, k: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if !s.is_zero() {
                let delta = s * k;
                self.data[dst * self.cols + j] += delta;
            }
        }
    }

    /// col[dst] += k · col[src]
    fn add_col_multiple(&mut self, src: usize, dst: usize, k: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if !s.is_zero() {
                let delta = s * k;
                self.data[i * self.cols + dst] += delta;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = &mut self.data[r * self.cols + j];
            *v = -std::mem::take(v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// `u · m · v = d` with `d` diagonal, `d[i] | d[i+1]`, all nonnegative.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

struct Reducer {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, src: usize, dst: usize, k: &BigInt) {
        self.a.add_row_multiple(src, dst, k);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(src, dst, k);
        }
    }

    fn add_col(&mut self, src: usize, dst: usize, k: &BigInt) {
        self.a.add_col_multiple(src, dst, k);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(src, dst, k);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a.get(bi, bj).abs()) {
                    if x.is_one() || (-x).is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Smallest nonzero entry of row `t` / column `t` beyond the pivot.
    fn smallest_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let mut best_abs = self.a.get(t, t).abs();
        for i in t + 1..self.a.rows {
            let x = self.a.get(i, t);
            if !x.is_zero() && x.abs() < best_abs {
                best = (i, t);
                best_abs = x.abs();
            }
        }
        for j in t + 1..self.a.cols {
            let x = self.a.get(t, j);
            if !x.is_zero() && x.abs() < best_abs {
                best = (t, j);
                best_abs = x.abs();
            }
        }
        best
    }

    /// Clears row and column `t` off the pivot.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let mut clean = true;
            for i in t + 1..self.a.rows {
                if self.a.get(i, t).is_zero() {
                    continue;
                }
                let q = self.a.get(i, t) / self.a.get(t, t);
                if !q.is_zero() {
                    self.add_row(t, i, &-q);
                }
                if !self.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..self.a.cols {
                if self.a.get(t, j).is_zero() {
                    continue;
                }
                let q = self.a.get(t, j) / self.a.get(t, t);
                if !q.is_zero() {
                    self.add_col(t, j, &-q);
                }
                if !self.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                return;
            }
            let (i, j) = self.smallest_in_cross(t);
            self.swap_rows(t, i);
            self.swap_cols(t, j);
        }
    }

    fn run(&mut self) {
        let steps = self.a.rows.min(self.a.cols);
        for t in 0..steps {
            let Some((i, j)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                self.clear_cross(t);
                let pivot = self.a.get(t, t).clone();
                let offender = (t + 1..self.a.rows).find(|&i| {
                    (t + 1..self.a.cols).any(|j| !self.a.get(i, j).is_multiple_of(&pivot))
                });
                match offender {
                    Some(i) => self.add_row(i, t, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer {
        a: m.clone(),
        u: Some(IntMatrix::identity(m.rows)),
        v: Some(IntMatrix::identity(m.cols)),
    };
    r.run();
    let diagonal = (0..m.rows.min(m.cols))
        .map(|i| r.a.get(i, i).clone())
        .collect();
    SmithForm {
        diagonal,
        d: r.a,
        u: r.u.unwrap(),
        v: r.v.unwrap(),
    }
}

/// Diagonal of the Smith form (length `min(rows, cols)`), without the
/// certificate bookkeeping.
pub fn invariant_factors(m: &IntMatrix) -> Vec<BigInt> {
    let mut r = Reducer {
        a: m.clone(),
        u: None,
        v: None,
    };
    r.run();
    (0..m.rows.min(m.cols))
        .map(|i| r.a.get(i, i).clone())
        .collect()
}

/// `ℤ^cols / rowspace(m)` as invariant factors, units dropped, free
/// summands reported as `0` at the end.
pub fn cokernel(m: &IntMatrix) -> Vec<BigInt> {
    let mut factors: Vec<BigInt> = invariant_factors(m)
        .into_iter()
        .filter(|d| !d.is_one())
        .collect();
    let zeros_from_shape = m.cols.saturating_sub(m.rows);
    factors.extend(std::iter::repeat_n(BigInt::zero(), zeros_from_shape));
    factors
}

/// `d[i] | d[i+1]` for the whole list (zero is divisible by everything).
pub fn is_divisibility_chain(d: &[BigInt]) -> bool {
    d.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].is_multiple_of(&w[0])
        }
    })
}
