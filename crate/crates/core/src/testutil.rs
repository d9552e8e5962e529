//! Small fixtures shared by unit tests.

use crate::arrangement::Arrangement;
use crate::scalar::{FieldSpec, Scalar};
use std::sync::Arc;

pub fn from_int_rows(name: &str, rows: &[&[i64]]) -> Arc<Arrangement> {
    let matrix: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.iter().map(|&v| Scalar::from_int(FieldSpec::Rational, v)).collect())
        .collect();
    let labels = (0..rows.len()).map(|i| format!("H{i}")).collect();
    Arc::new(Arrangement::new(name, labels, matrix, FieldSpec::Rational).unwrap())
}

pub fn circle() -> Arc<Arrangement> {
    from_int_rows("circle", &[&[1]])
}

pub fn boolean2() -> Arc<Arrangement> {
    from_int_rows("boolean2", &[&[1, 0], &[0, 1]])
}

pub fn braid3() -> Arc<Arrangement> {
    from_int_rows("braid3", &[&[1, -1], &[1, 0], &[0, 1]])
}

pub fn braid4() -> Arc<Arrangement> {
    from_int_rows(
        "braid4",
        &[&[1, -1, 0], &[1, 0, -1], &[1, 0, 0], &[0, 1, -1], &[0, 1, 0], &[0, 0, 1]],
    )
}

pub fn pencil4() -> Arc<Arrangement> {
    from_int_rows("pencil4", &[&[1, 0], &[0, 1], &[1, -1], &[1, 1]])
}

pub fn u34() -> Arc<Arrangement> {
    from_int_rows("u34", &[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9], &[1, 4, 16]])
}

pub fn u35() -> Arc<Arrangement> {
    from_int_rows(
        "u35",
        &[&[1, 1, 1], &[1, 2, 4], &[1, 3, 9], &[1, 4, 16], &[1, 5, 25]],
    )
}

/// Coordinate forms plus all differences in rank 3.
pub fn coord_and_diffs3() -> Arc<Arrangement> {
    from_int_rows(
        "coord_and_diffs3",
        &[
            &[1, 0, 0],
            &[0, 1, 0],
            &[0, 0, 1],
            &[1, -1, 0],
            &[1, 0, -1],
            &[0, 1, -1],
        ],
    )
}
