//! Central essential hyperplane arrangements and their matroid oracles:
//! rank, closure, circuits, broken circuits, flats of the intersection
//! lattice, and flats of restrictions.
//!
//! An arrangement is immutable after construction. Rows are stored in
//! canonical integral form (denominators and content cleared), and a parallel
//! small-integer copy is kept when possible so the elimination inner loops
//! run on machine words with overflow checking.

use crate::budget::{Budget, BudgetExhausted};
use crate::matrix::{primitive_integral_row, IntEchelon, ScalarEchelon};
use crate::scalar::{FieldSpec, Scalar};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

/// A set of hyperplane indices, kept strictly increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn empty() -> Self {
        Subset(Vec::new())
    }

    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Subset(indices)
    }

    pub fn full(n: usize) -> Self {
        Subset((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        is_sorted_subset(&self.0, &other.0)
    }

    pub fn is_disjoint(&self, other: &Subset) -> bool {
        let mut it = other.0.iter().peekable();
        for &x in &self.0 {
            while let Some(&&y) = it.peek() {
                if y < x {
                    it.next();
                } else {
                    break;
                }
            }
            if it.peek() == Some(&&x) {
                return false;
            }
        }
        true
    }

    pub fn union(&self, other: &Subset) -> Subset {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Subset::new(v)
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        Subset(self.0.iter().copied().filter(|&i| !other.contains(i)).collect())
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }

    pub fn inserted(&self, i: usize) -> Subset {
        let mut v = self.0.clone();
        v.push(i);
        Subset::new(v)
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        Subset::new(iter.into_iter().collect())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

fn is_sorted_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

/// A linear order on the ground set: `perm[0]` is the smallest element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LinearOrder {
    perm: Vec<usize>,
    pos: Vec<usize>,
}

impl LinearOrder {
    pub fn identity(n: usize) -> Self {
        LinearOrder { perm: (0..n).collect(), pos: (0..n).collect() }
    }

    pub fn from_permutation(perm: Vec<usize>) -> Result<Self, ArrangementError> {
        let n = perm.len();
        let mut pos = vec![usize::MAX; n];
        for (p, &i) in perm.iter().enumerate() {
            if i >= n || pos[i] != usize::MAX {
                return Err(ArrangementError::NotAPermutation);
            }
            pos[i] = p;
        }
        Ok(LinearOrder { perm, pos })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Position (priority) of element `i`; smaller position = smaller element.
    pub fn position(&self, i: usize) -> usize {
        self.pos[i]
    }

    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.pos[i] < self.pos[j]
    }

    pub fn min_of<'a>(&self, elems: impl Iterator<Item = usize>) -> Option<usize> {
        elems.min_by_key(|&i| self.pos[i])
    }

    /// The elements of `s` sorted ascending in this order.
    pub fn sort(&self, s: &Subset) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().collect();
        v.sort_by_key(|&i| self.pos[i]);
        v
    }

    /// Order the whole ground set so the given elements come first, in the
    /// given sequence, followed by the rest ascending by index.
    pub fn with_prefix(n: usize, prefix: &[usize]) -> Self {
        let mut perm = prefix.to_vec();
        let head: HashSet<usize> = prefix.iter().copied().collect();
        perm.extend((0..n).filter(|i| !head.contains(i)));
        LinearOrder::from_permutation(perm).expect("prefix must consist of distinct indices")
    }
}

/// A closed subset of the ground set together with its rank.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flat {
    pub elements: Subset,
    pub rank: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("empty matrix")]
    EmptyMatrix,
    #[error("zero row at index {0}")]
    ZeroRow(usize),
    #[error("rows {0} and {1} define the same hyperplane (proportional)")]
    ProportionalRows(usize, usize),
    #[error("row {0} has a different length than the first row")]
    RaggedMatrix(usize),
    #[error("label count {labels} does not match row count {rows}")]
    LabelCount { labels: usize, rows: usize },
    #[error("row {row} contains a scalar outside the declared field {field}")]
    FieldMismatch { row: usize, field: FieldSpec },
    #[error("sequence is not a permutation of the ground set")]
    NotAPermutation,
}

/// A central essential hyperplane arrangement with cached matroid oracles.
pub struct Arrangement {
    name: String,
    labels: Vec<String>,
    field: FieldSpec,
    rows: Vec<Vec<Scalar>>,
    int_rows: Option<Vec<Vec<i64>>>,
    rank_full: usize,
    circuits: OnceLock<Arc<Vec<Subset>>>,
    flat_levels: Mutex<Vec<Option<Arc<Vec<Flat>>>>>,
    broken: Mutex<HashMap<Vec<usize>, Arc<Vec<Subset>>>>,
}

impl fmt::Debug for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Arrangement")
            .field("name", &self.name)
            .field("n", &self.n())
            .field("rank", &self.rank_full)
            .field("field", &self.field)
            .finish()
    }
}

impl Arrangement {
    /// Build an arrangement from defining linear forms (one row per
    /// hyperplane). Rows are canonicalized, the matrix is essentialized by
    /// keeping the leftmost columns that preserve the row-space rank, and
    /// duplicate hyperplanes are rejected.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        matrix: Vec<Vec<Scalar>>,
        field: FieldSpec,
    ) -> Result<Arrangement, ArrangementError> {
        if matrix.is_empty() || matrix[0].is_empty() {
            return Err(ArrangementError::EmptyMatrix);
        }
        let d = matrix[0].len();
        if labels.len() != matrix.len() {
            return Err(ArrangementError::LabelCount { labels: labels.len(), rows: matrix.len() });
        }
        let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(matrix.len());
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != d {
                return Err(ArrangementError::RaggedMatrix(i));
            }
            for entry in row {
                if entry.field() != field {
                    return Err(ArrangementError::FieldMismatch { row: i, field });
                }
            }
            match primitive_integral_row(row) {
                Some(r) => rows.push(r),
                None => return Err(ArrangementError::ZeroRow(i)),
            }
        }

        let full_rank = rank_of_rows(&rows);
        if d > full_rank {
            let cols = select_columns(&rows, full_rank);
            rows = rows
                .iter()
                .map(|row| {
                    let projected: Vec<Scalar> = cols.iter().map(|&c| row[c].clone()).collect();
                    primitive_integral_row(&projected)
                        .expect("essentialization preserves nonzero rows")
                })
                .collect();
        }

        // duplicate hyperplanes: equal rows after normalizing the leading
        // coefficient to 1
        let mut seen: HashMap<Vec<Scalar>, usize> = HashMap::new();
        for (i, row) in rows.iter().enumerate() {
            let lead = row.iter().find(|c| !c.is_zero()).expect("rows are nonzero");
            let inv = lead.inv();
            let dir: Vec<Scalar> = row.iter().map(|c| c.mul(&inv)).collect();
            if let Some(&j) = seen.get(&dir) {
                return Err(ArrangementError::ProportionalRows(j, i));
            }
            seen.insert(dir, i);
        }

        let int_rows = if field == FieldSpec::Rational {
            rows.iter()
                .map(|row| row.iter().map(|c| c.to_small_int()).collect::<Option<Vec<i64>>>())
                .collect::<Option<Vec<Vec<i64>>>>()
        } else {
            None
        };

        Ok(Arrangement {
            name: name.into(),
            labels,
            field,
            rows,
            int_rows,
            rank_full: full_rank,
            circuits: OnceLock::new(),
            flat_levels: Mutex::new(vec![None; full_rank + 1]),
            broken: Mutex::new(HashMap::new()),
        })
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Rank of the whole arrangement (the ambient dimension after
    /// essentialization).
    pub fn rank_full(&self) -> usize {
        self.rank_full
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    // -- rank ---------------------------------------------------------------

    pub fn rank(&self, s: &Subset) -> usize {
        self.rank_of_indices(s.as_slice())
    }

    pub fn rank_of_indices(&self, indices: &[usize]) -> usize {
        if let Some(int_rows) = &self.int_rows {
            let mut ech = IntEchelon::new();
            let mut ok = true;
            for &i in indices {
                let row: Vec<i128> = int_rows[i].iter().map(|&v| v as i128).collect();
                if ech.insert(row).is_none() {
                    ok = false;
                    break;
                }
            }
            if ok {
                return ech.rank();
            }
        }
        let mut ech = ScalarEchelon::new();
        for &i in indices {
            ech.insert(self.rows[i].clone());
        }
        ech.rank()
    }

    pub fn is_independent(&self, s: &Subset) -> bool {
        self.rank(s) == s.len()
    }

    /// Greedy base (ascending indices) of the sub-arrangement on `s`.
    pub fn base_of(&self, s: &Subset) -> Subset {
        let mut out = Vec::new();
        if let Some(int_rows) = &self.int_rows {
            let mut ech = IntEchelon::new();
            let mut ok = true;
            for i in s.iter() {
                let row: Vec<i128> = int_rows[i].iter().map(|&v| v as i128).collect();
                match ech.insert(row) {
                    Some(true) => out.push(i),
                    Some(false) => {}
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Subset(out);
            }
            out.clear();
        }
        let mut ech = ScalarEchelon::new();
        for i in s.iter() {
            if ech.insert(self.rows[i].clone()) {
                out.push(i);
            }
        }
        Subset(out)
    }

    // -- closure ------------------------------------------------------------

    /// Smallest flat containing `s`: all hyperplanes whose normal lies in the
    /// span of the rows of `s`.
    pub fn closure(&self, s: &Subset) -> Flat {
        let (elements, rank) = self.closure_among(s, None);
        Flat { elements, rank }
    }

    /// Closure intersected with `within` (flats of the restricted matroid),
    /// together with the rank of `s`. `None` scans the whole ground set.
    fn closure_among(&self, s: &Subset, within: Option<&Subset>) -> (Subset, usize) {
        if let Some(res) = self.closure_among_int(s, within) {
            return res;
        }
        let mut ech = ScalarEchelon::new();
        for i in s.iter() {
            ech.insert(self.rows[i].clone());
        }
        let rank = ech.rank();
        let mut elements = Vec::new();
        let mut check = |i: usize| {
            if s.contains(i) || ech.contains(&self.rows[i]) {
                elements.push(i);
            }
        };
        match within {
            Some(w) => w.iter().for_each(&mut check),
            None => (0..self.n()).for_each(&mut check),
        }
        (Subset(elements), rank)
    }

    fn closure_among_int(&self, s: &Subset, within: Option<&Subset>) -> Option<(Subset, usize)> {
        let int_rows = self.int_rows.as_ref()?;
        let mut ech = IntEchelon::new();
        for i in s.iter() {
            let row: Vec<i128> = int_rows[i].iter().map(|&v| v as i128).collect();
            ech.insert(row)?;
        }
        let rank = ech.rank();
        let mut elements = Vec::new();
        let indices: Vec<usize> = match within {
            Some(w) => w.iter().collect(),
            None => (0..self.n()).collect(),
        };
        for i in indices {
            if s.contains(i) {
                elements.push(i);
                continue;
            }
            let row: Vec<i128> = int_rows[i].iter().map(|&v| v as i128).collect();
            if ech.contains(&row)? {
                elements.push(i);
            }
        }
        Some((Subset(elements), rank))
    }

    /// Flats of the matroid restricted to `s` (nonempty closed subsets of
    /// `s`), each with its rank, produced level by level in lexicographic
    /// order within each level.
    pub fn closed_subsets_within(&self, s: &Subset) -> Vec<(Subset, usize)> {
        let mut out = Vec::new();
        self.for_each_closed_within(s, |sub, rank| {
            out.push((sub.clone(), rank));
            false
        });
        out
    }

    /// Visit restriction flats level by level; the visitor returns true to
    /// stop early. Returns true when stopped early.
    pub fn for_each_closed_within(
        &self,
        s: &Subset,
        mut visit: impl FnMut(&Subset, usize) -> bool,
    ) -> bool {
        let mut level: Vec<Subset> = vec![Subset::empty()];
        let mut rank = 0usize;
        loop {
            let mut next: Vec<Subset> = Vec::new();
            let mut seen: HashSet<Subset> = HashSet::new();
            for f in &level {
                for i in s.iter() {
                    if f.contains(i) {
                        continue;
                    }
                    let t = f.inserted(i);
                    let (g, grank) = self.closure_among(&t, Some(s));
                    debug_assert_eq!(grank, rank + 1);
                    if seen.insert(g.clone()) {
                        next.push(g);
                    }
                }
            }
            if next.is_empty() {
                return false;
            }
            rank += 1;
            next.sort();
            for g in &next {
                if visit(g, rank) {
                    return true;
                }
            }
            level = next;
        }
    }

    // -- circuits and broken circuits ----------------------------------------

    /// All inclusion-minimal dependent subsets, sorted lexicographically.
    /// Computed once and cached. This enumerates subsets of size up to
    /// rank+1, which is only feasible for moderate ground sets; use
    /// [`Arrangement::try_circuits`] to bound the work.
    pub fn circuits(&self) -> Arc<Vec<Subset>> {
        self.try_circuits(&mut Budget::unlimited()).expect("unlimited budget")
    }

    pub fn try_circuits(&self, budget: &mut Budget) -> Result<Arc<Vec<Subset>>, BudgetExhausted> {
        if let Some(c) = self.circuits.get() {
            return Ok(c.clone());
        }
        let n = self.n();
        let r = self.rank_full;
        let mut found: Vec<Subset> = Vec::new();
        let mut masks: Vec<u128> = Vec::new();
        let use_masks = n <= 128;
        for k in 2..=(r + 1).min(n) {
            let mut combo = Combinations::new(n, k);
            while let Some(c) = combo.next() {
                budget.consume(1)?;
                if use_masks {
                    let mask = mask_of(c);
                    if masks.iter().any(|&m| m & mask == m) {
                        continue;
                    }
                } else if found.iter().any(|f| is_sorted_subset(f.as_slice(), c)) {
                    continue;
                }
                if self.rank_of_indices(c) < k {
                    if use_masks {
                        masks.push(mask_of(c));
                    }
                    found.push(Subset(c.to_vec()));
                }
            }
        }
        found.sort();
        let arc = Arc::new(found);
        let _ = self.circuits.set(arc.clone());
        Ok(self.circuits.get().expect("just set").clone())
    }

    /// Each circuit minus its smallest element in `ord`, deduplicated and
    /// sorted; cached per order.
    pub fn broken_circuits(&self, ord: &LinearOrder) -> Arc<Vec<Subset>> {
        assert_eq!(ord.len(), self.n(), "order length must match ground set");
        if let Some(bc) = self.broken.lock().unwrap().get(ord.as_permutation()) {
            return bc.clone();
        }
        let circuits = self.circuits();
        let mut bcs: Vec<Subset> = circuits
            .iter()
            .map(|c| {
                let min = ord.min_of(c.iter()).expect("circuits are nonempty");
                Subset(c.iter().filter(|&i| i != min).collect())
            })
            .collect();
        bcs.sort();
        bcs.dedup();
        let arc = Arc::new(bcs);
        self.broken.lock().unwrap().insert(ord.as_permutation().to_vec(), arc.clone());
        arc
    }

    /// True when `s` contains no broken circuit of (self, ord).
    pub fn is_nbc(&self, s: &Subset, ord: &LinearOrder) -> bool {
        self.broken_circuits(ord).iter().all(|bc| !bc.is_subset_of(s))
    }

    // -- flats ---------------------------------------------------------------

    /// All flats of rank exactly `k`, computed level by level and cached,
    /// sorted lexicographically by element list.
    pub fn flats_by_rank(&self, k: usize) -> Arc<Vec<Flat>> {
        assert!(k <= self.rank_full, "rank {k} exceeds arrangement rank {}", self.rank_full);
        self.try_flats_by_rank(k, &mut Budget::unlimited()).expect("unlimited budget")
    }

    pub fn try_flats_by_rank(
        &self,
        k: usize,
        budget: &mut Budget,
    ) -> Result<Arc<Vec<Flat>>, BudgetExhausted> {
        let mut levels = self.flat_levels.lock().unwrap();
        for level in 0..=k {
            if levels[level].is_some() {
                continue;
            }
            let computed = if level == 0 {
                vec![Flat { elements: Subset::empty(), rank: 0 }]
            } else {
                let prev = levels[level - 1].as_ref().expect("previous level computed");
                let mut seen: HashSet<Subset> = HashSet::new();
                let mut out: Vec<Flat> = Vec::new();
                for f in prev.iter() {
                    for i in 0..self.n() {
                        if f.elements.contains(i) {
                            continue;
                        }
                        budget.consume(1)?;
                        let t = f.elements.inserted(i);
                        let (elements, rank) = self.closure_among(&t, None);
                        debug_assert_eq!(rank, level);
                        if seen.insert(elements.clone()) {
                            out.push(Flat { elements, rank });
                        }
                    }
                }
                out.sort_by(|a, b| a.elements.cmp(&b.elements));
                out
            };
            levels[level] = Some(Arc::new(computed));
        }
        Ok(levels[k].as_ref().expect("level computed").clone())
    }

    /// Number of flats of each rank 0..=rank, within the given budget.
    pub fn try_flat_counts(&self, budget: &mut Budget) -> Result<Vec<usize>, BudgetExhausted> {
        (0..=self.rank_full)
            .map(|k| Ok(self.try_flats_by_rank(k, budget)?.len()))
            .collect()
    }

    /// The sub-arrangement of hyperplanes containing the flat (just the
    /// flat's element set; provided for readability at call sites).
    pub fn sub_of_flat<'a>(&self, x: &'a Flat) -> &'a Subset {
        &x.elements
    }
}

fn mask_of(indices: &[usize]) -> u128 {
    indices.iter().fold(0u128, |m, &i| m | (1u128 << i))
}

fn rank_of_rows(rows: &[Vec<Scalar>]) -> usize {
    let mut ech = ScalarEchelon::new();
    for row in rows {
        ech.insert(row.clone());
    }
    ech.rank()
}

/// Leftmost columns whose selection preserves the full row-space rank.
fn select_columns(rows: &[Vec<Scalar>], target_rank: usize) -> Vec<usize> {
    let d = rows[0].len();
    let mut selected: Vec<usize> = Vec::new();
    for c in 0..d {
        if selected.len() == target_rank {
            break;
        }
        let mut candidate = selected.clone();
        candidate.push(c);
        let sub_rank = rank_of_rows(
            &rows
                .iter()
                .map(|row| candidate.iter().map(|&cc| row[cc].clone()).collect())
                .collect::<Vec<_>>(),
        );
        if sub_rank == candidate.len() {
            selected = candidate;
        }
    }
    assert_eq!(selected.len(), target_rank, "column selection must reach full rank");
    selected
}

/// Lexicographic k-subsets of 0..n.
pub struct Combinations {
    n: usize,
    k: usize,
    state: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations { n, k, state: (0..k).collect(), started: false, done: k > n }
    }

    pub fn next(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.state);
        }
        // advance
        let k = self.k;
        if k == 0 {
            self.done = true;
            return None;
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.state[i] + (k - i) < self.n {
                self.state[i] += 1;
                for j in i + 1..k {
                    self.state[j] = self.state[j - 1] + 1;
                }
                return Some(&self.state);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn from_int_rows(name: &str, rows: &[&[i64]]) -> Arrangement {
        let matrix: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(FieldSpec::Rational, v)).collect())
            .collect();
        let labels = (0..rows.len()).map(|i| format!("H{i}")).collect();
        Arrangement::new(name, labels, matrix, FieldSpec::Rational).unwrap()
    }

    fn braid3() -> Arrangement {
        // x1-x2, x1-x3, x2-x3 essentialized to the plane: rows in y1, y2
        from_int_rows("braid3", &[&[1, -1], &[1, 0], &[0, 1]])
    }

    fn u34() -> Arrangement {
        // moment curve in rank 3: every 3-subset independent
        from_int_rows(
            "u34",
            &[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9], &[1, 4, 16]],
        )
    }

    #[test]
    fn braid_essentialization_from_raw_matrix() {
        // raw 3x3 difference forms: essentialized to rank 2
        let a = from_int_rows("braid3raw", &[&[1, -1, 0], &[1, 0, -1], &[0, 1, -1]]);
        assert_eq!(a.n(), 3);
        assert_eq!(a.rank_full(), 2);
        // dependencies unchanged: the only circuit is everything
        assert_eq!(a.circuits().as_slice(), &[Subset::new(vec![0, 1, 2])]);
    }

    #[test]
    fn single_hyperplane_line() {
        let a = from_int_rows("circle", &[&[1]]);
        assert_eq!(a.n(), 1);
        assert_eq!(a.rank_full(), 1);
        assert!(a.circuits().is_empty());
    }

    #[test]
    fn proportional_rows_rejected() {
        let matrix = vec![
            vec![Scalar::from_int(FieldSpec::Rational, 1), Scalar::from_int(FieldSpec::Rational, 0)],
            vec![Scalar::from_int(FieldSpec::Rational, 2), Scalar::from_int(FieldSpec::Rational, 0)],
        ];
        let err = Arrangement::new(
            "bad",
            vec!["a".into(), "b".into()],
            matrix,
            FieldSpec::Rational,
        )
        .unwrap_err();
        assert_eq!(err, ArrangementError::ProportionalRows(0, 1));
    }

    #[test]
    fn zero_row_and_empty_matrix_rejected() {
        let err = Arrangement::new("bad", vec!["a".into()], vec![vec![]], FieldSpec::Rational);
        assert_eq!(err.unwrap_err(), ArrangementError::EmptyMatrix);
        let matrix = vec![vec![Scalar::from_int(FieldSpec::Rational, 0)]];
        let err = Arrangement::new("bad", vec!["a".into()], matrix, FieldSpec::Rational);
        assert_eq!(err.unwrap_err(), ArrangementError::ZeroRow(0));
    }

    #[test]
    fn rank_examples() {
        let b = braid3();
        assert_eq!(b.rank(&Subset::full(3)), 2);
        assert_eq!(b.rank(&Subset::empty()), 0);
        let u = u34();
        let mut combos = Combinations::new(4, 3);
        while let Some(c) = combos.next() {
            assert_eq!(u.rank_of_indices(c), 3);
        }
    }

    #[test]
    fn closure_examples() {
        let b = braid3();
        let f = b.closure(&Subset::new(vec![0, 1]));
        assert_eq!(f.elements, Subset::new(vec![0, 1, 2]));
        assert_eq!(f.rank, 2);
        let e = b.closure(&Subset::empty());
        assert!(e.elements.is_empty());
        assert_eq!(e.rank, 0);
        let u = u34();
        let g = u.closure(&Subset::new(vec![0, 1]));
        assert_eq!(g.elements, Subset::new(vec![0, 1]));
        assert_eq!(g.rank, 2);
        // idempotent and extensive
        let again = b.closure(&f.elements);
        assert_eq!(again.elements, f.elements);
    }

    #[test]
    fn circuits_examples() {
        assert_eq!(braid3().circuits().as_slice(), &[Subset::new(vec![0, 1, 2])]);
        let boolean = from_int_rows("bool2", &[&[1, 0], &[0, 1]]);
        assert!(boolean.circuits().is_empty());
        assert_eq!(u34().circuits().as_slice(), &[Subset::new(vec![0, 1, 2, 3])]);
    }

    #[test]
    fn broken_circuits_examples() {
        let b = braid3();
        let natural = LinearOrder::identity(3);
        assert_eq!(b.broken_circuits(&natural).as_slice(), &[Subset::new(vec![1, 2])]);
        let rev = LinearOrder::from_permutation(vec![2, 1, 0]).unwrap();
        assert_eq!(b.broken_circuits(&rev).as_slice(), &[Subset::new(vec![0, 1])]);
        assert!(b.is_nbc(&Subset::new(vec![0, 1]), &natural));
        assert!(!b.is_nbc(&Subset::new(vec![1, 2]), &natural));
        assert!(b.is_nbc(&Subset::empty(), &natural));
    }

    #[test]
    fn flats_examples() {
        let b = braid3();
        let level1 = b.flats_by_rank(1);
        assert_eq!(level1.len(), 3);
        assert!(level1.iter().all(|f| f.elements.len() == 1 && f.rank == 1));
        let top = b.flats_by_rank(2);
        assert_eq!(top.len(), 1);
        assert_eq!(top[0].elements, Subset::full(3));
    }

    #[test]
    fn closed_subsets_within_examples() {
        let u = u34();
        let all = Subset::full(4);
        let flats = u.closed_subsets_within(&all);
        // all singletons, all pairs, and the full set
        assert_eq!(flats.len(), 4 + 6 + 1);
        assert!(flats.iter().any(|(s, r)| *s == all && *r == 3));
        assert!(!flats.iter().any(|(s, _)| s.len() == 3));

        let single = Subset::new(vec![2]);
        let flats = u.closed_subsets_within(&single);
        assert_eq!(flats, vec![(single.clone(), 1)]);

        let b = braid3();
        let flats = b.closed_subsets_within(&Subset::full(3));
        assert_eq!(flats.len(), 4); // three singletons and the whole set
    }

    #[test]
    fn closure_monotone_idempotent_on_small_sets() {
        let arrs = [braid3(), u34()];
        for a in &arrs {
            let n = a.n();
            for mask in 0u32..(1 << n) {
                let s: Subset = (0..n).filter(|i| mask & (1 << i) != 0).collect();
                let cl = a.closure(&s);
                assert!(s.is_subset_of(&cl.elements));
                assert_eq!(a.rank(&s), cl.rank);
                assert_eq!(a.closure(&cl.elements).elements, cl.elements);
            }
        }
    }

    #[test]
    fn combinations_iterate_in_lex_order() {
        let mut c = Combinations::new(4, 2);
        let mut got = Vec::new();
        while let Some(s) = c.next() {
            got.push(s.to_vec());
        }
        assert_eq!(got, vec![
            vec![0, 1], vec![0, 2], vec![0, 3],
            vec![1, 2], vec![1, 3], vec![2, 3],
        ]);
        let mut c = Combinations::new(3, 0);
        assert_eq!(c.next(), Some(&[][..]));
        assert_eq!(c.next(), None);
    }
}
