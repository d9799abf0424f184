//! Matrices shared by the integration tests.
#![allow(dead_code)]

use skewdg::classifier::Subcase;
use skewdg::Mat;

fn m(rows: [[i64; 3]; 3]) -> Mat {
    Mat::from_ints(&rows)
}

/// The worked examples for each rank-two degenerate subcase, with the subcase they are listed under.
pub fn worked_examples() -> Vec<(Subcase, Mat)> {
    let mut out = Vec::new();
    let s11 = [
        [[1, 0, 1], [1, 1, 1], [1, 0, 1]],
        [[0, 1, 0], [1, 0, 1], [1, 1, 1]],
        [[1, 0, 1], [0, 1, 0], [1, 1, 1]],
        [[1, 0, 1], [0, 1, 1], [1, 0, 1]],
        [[1, 1, 1], [0, 1, 0], [1, 1, 1]],
        [[0, 1, 0], [1, 1, 1], [0, 1, 0]],
        [[1, 0, 1], [0, 1, 0], [1, 0, 1]],
        [[1, 1, 1], [-1, 1, 1], [-1, 1, 1]],
    ];
    let s121 = [
        [[1, 1, 0], [1, 0, 1], [1, 1, 0]],
        [[1, 1, 1], [0, 0, 1], [0, 0, 0]],
        [[1, 0, 0], [1, 0, 1], [1, 0, 0]],
        [[0, 0, 1], [0, 1, 0], [0, 0, 0]],
        [[0, 1, 0], [0, 0, 0], [1, 0, 1]],
        [[1, 1, 0], [0, 0, 0], [1, 0, 0]],
    ];
    let s122 = [[[1, 1, 1], [1, 0, 1], [1, 1, 1]], [[0, 1, 0], [1, 0, 1], [0, 1, 0]], [[0, 1, 1], [1, 0, 0], [1, 0, 0]]];
    let s123 = [[[1, 1, 1], [0, 0, 0], [1, 0, 1]]];
    let s124 = [[[0, 1, 0], [0, 0, 1], [0, 0, 0]], [[0, 1, 1], [0, 0, 1], [0, 0, 0]]];
    let s131 = [[[1, 0, 1], [1, 1, 1], [0, 1, 0]], [[1, 0, 0], [0, 0, 1], [1, 0, 0]], [[1, 1, 1], [0, 1, 1], [1, 0, 0]]];
    let s132 = [
        [[1, 1, 0], [1, 1, 0], [0, 1, 0]],
        [[1, 0, 1], [0, 0, 1], [1, 0, 1]],
        [[1, 0, 1], [1, 0, 0], [1, 0, 1]],
        [[1, 0, 1], [-1, 0, -2], [1, 0, 1]],
    ];
    let groups: [(Subcase, &[[[i64; 3]; 3]]); 7] = [
        (Subcase::S11, &s11),
        (Subcase::S121, &s121),
        (Subcase::S122, &s122),
        (Subcase::S123, &s123),
        (Subcase::S124, &s124),
        (Subcase::S131, &s131),
        (Subcase::S132, &s132),
    ];
    for (sub, rows) in groups {
        out.extend(rows.iter().map(|r| (sub, m(*r))));
    }
    out
}

/// Listed among the subcase 1.1 examples, but its determinant is 2.
pub fn listed_rank_three() -> Mat {
    m([[1, -1, 0], [1, 1, 1], [1, -1, 1]])
}

/// The three displayed matrices that fail to be Calabi-Yau.
pub fn not_calabi_yau() -> Vec<Mat> {
    vec![m([[1, 1, 0], [1, 1, 0], [1, 1, 0]]), m([[0, 1, 1], [0, 1, 1], [0, 1, 1]]), m([[1, 1, 1], [1, 1, 1], [2, 2, 2]])]
}

pub fn identity() -> Mat {
    Mat::identity(3)
}

pub fn e12() -> Mat {
    Mat::unit(3, 0, 1)
}

pub fn e13() -> Mat {
    Mat::unit(3, 0, 2)
}
