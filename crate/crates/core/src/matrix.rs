//! Fraction-free exact elimination used by the matroid oracles.
//!
//! Rows are kept integral (denominator 1); a reduction step cross-multiplies
//! and then divides the row by its content, which controls coefficient growth
//! without leaving the base ring. A narrow integer path with overflow
//! checking handles the common case of small rational integer matrices; any
//! overflow falls back to the exact scalar path.

use crate::scalar::Scalar;
use num::bigint::BigInt;
use num::{Integer, One, Signed, Zero};

/// Row echelon accumulator over exact scalars (integral entries).
pub struct ScalarEchelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl ScalarEchelon {
    pub fn new() -> Self {
        ScalarEchelon { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the current pivots; returns the remainder.
    fn reduce(&self, mut row: Vec<Scalar>) -> Vec<Scalar> {
        for (prow, &pcol) in self.rows.iter().zip(&self.pivots) {
            if row[pcol].is_zero() {
                continue;
            }
            let a = prow[pcol].clone();
            let b = row[pcol].clone();
            for (r, p) in row.iter_mut().zip(prow.iter()) {
                *r = r.mul(&a).sub(&p.mul(&b));
            }
            normalize_content(&mut row);
        }
        row
    }

    /// Insert a row; returns true when it enlarged the span.
    pub fn insert(&mut self, row: Vec<Scalar>) -> bool {
        let row = self.reduce(row);
        match row.iter().position(|c| !c.is_zero()) {
            None => false,
            Some(col) => {
                // keep rows ordered by pivot column
                let at = self.pivots.iter().position(|&p| p > col).unwrap_or(self.pivots.len());
                self.pivots.insert(at, col);
                self.rows.insert(at, row);
                true
            }
        }
    }

    /// True when `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: &[Scalar]) -> bool {
        self.reduce(row.to_vec()).iter().all(|c| c.is_zero())
    }
}

fn normalize_content(row: &mut [Scalar]) {
    let mut g = BigInt::zero();
    for c in row.iter() {
        if !c.is_zero() {
            c.content_gcd(&mut g);
            if g.is_one() {
                return;
            }
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for c in row.iter_mut() {
        if !c.is_zero() {
            *c = c.div_int_exact(&g);
        }
    }
}

/// Row echelon accumulator over i128 with overflow checking.
///
/// All methods return None on overflow, in which case the caller retries with
/// the exact path.
pub struct IntEchelon {
    rows: Vec<Vec<i128>>,
    pivots: Vec<usize>,
}

impl IntEchelon {
    pub fn new() -> Self {
        IntEchelon { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut row: Vec<i128>) -> Option<Vec<i128>> {
        for (prow, &pcol) in self.rows.iter().zip(&self.pivots) {
            if row[pcol] == 0 {
                continue;
            }
            let a = prow[pcol];
            let b = row[pcol];
            for (r, p) in row.iter_mut().zip(prow.iter()) {
                let t = r.checked_mul(a)?.checked_sub(p.checked_mul(b)?)?;
                *r = t;
            }
            int_normalize(&mut row);
        }
        Some(row)
    }

    pub fn insert(&mut self, row: Vec<i128>) -> Option<bool> {
        let row = self.reduce(row)?;
        match row.iter().position(|&c| c != 0) {
            None => Some(false),
            Some(col) => {
                let at = self.pivots.iter().position(|&p| p > col).unwrap_or(self.pivots.len());
                self.pivots.insert(at, col);
                self.rows.insert(at, row);
                Some(true)
            }
        }
    }

    pub fn contains(&self, row: &[i128]) -> Option<bool> {
        Some(self.reduce(row.to_vec())?.iter().all(|&c| c == 0))
    }
}

fn int_normalize(row: &mut [i128]) {
    let mut g: i128 = 0;
    for &c in row.iter() {
        g = g.gcd(&c);
        if g == 1 {
            return;
        }
    }
    if g > 1 {
        for c in row.iter_mut() {
            *c /= g;
        }
    }
}

/// Rank of a set of scalar rows.
pub fn rank_scalar(rows: impl Iterator<Item = Vec<Scalar>>) -> usize {
    let mut ech = ScalarEchelon::new();
    for row in rows {
        ech.insert(row);
    }
    ech.rank()
}

/// Rank of integer rows; None on overflow.
pub fn rank_int(rows: impl Iterator<Item = Vec<i128>>) -> Option<usize> {
    let mut ech = IntEchelon::new();
    for row in rows {
        ech.insert(row)?;
    }
    Some(ech.rank())
}

/// Clear denominators and content from a scalar row, in place conceptually:
/// returns the canonical primitive integral row, or None when the row is zero.
pub fn primitive_integral_row(row: &[Scalar]) -> Option<Vec<Scalar>> {
    if row.iter().all(|c| c.is_zero()) {
        return None;
    }
    let mut lcm = BigInt::one();
    for c in row {
        lcm = lcm.lcm(&c.denominator());
    }
    let mut out: Vec<Scalar> = row.iter().map(|c| c.mul_int(&lcm)).collect();
    let mut g = BigInt::zero();
    for c in &out {
        if !c.is_zero() {
            c.content_gcd(&mut g);
        }
    }
    if !g.is_one() && g.is_positive() {
        for c in out.iter_mut() {
            if !c.is_zero() {
                *c = c.div_int_exact(&g);
            }
        }
    }
    Some(out)
}
