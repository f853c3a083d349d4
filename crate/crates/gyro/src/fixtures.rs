//! Small built-in tables used by tests and documentation examples.

use crate::table::GyroTable;

/// Cyclic group of order 4.
pub fn z4() -> GyroTable {
    GyroTable::from_rows(vec![
        vec![0, 1, 2, 3],
        vec![1, 2, 3, 0],
        vec![2, 3, 0, 1],
        vec![3, 0, 1, 2],
    ])
    .expect("Z4 table")
}

/// Klein four-group.
pub fn k4() -> GyroTable {
    GyroTable::from_rows(vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ])
    .expect("K4 table")
}

/// Symmetric group S3 as a Cayley table on 6 points.
///
/// Elements are the permutations of {0,1,2}; a ⊕ b composes as a∘b.
pub fn s3() -> GyroTable {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2], // e
        [1, 0, 2], // (01)
        [2, 1, 0], // (02)
        [0, 2, 1], // (12)
        [1, 2, 0], // (012)
        [2, 0, 1], // (021)
    ];
    let compose = |a: &[usize; 3], b: &[usize; 3]| -> [usize; 3] {
        [a[b[0]], a[b[1]], a[b[2]]]
    };
    let mut rows = vec![vec![0usize; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let c = compose(&perms[i], &perms[j]);
            rows[i][j] = perms.iter().position(|p| *p == c).expect("closed");
        }
    }
    GyroTable::from_rows(rows).expect("S3 table")
}
