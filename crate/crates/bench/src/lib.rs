//! Shared inputs for the criterion benchmarks.

use skewdg::Mat;

/// Matrices spanning the resolution subcases, smallest to largest resolution.
pub fn battery() -> Vec<(&'static str, Mat)> {
    vec![
        ("size3", Mat::from_ints(&[[1, 0, 1], [0, 1, 0], [1, 0, 1]])),
        ("size4", Mat::from_ints(&[[0, 0, 1], [0, 1, 0], [0, 0, 0]])),
        ("size5", Mat::from_ints(&[[1, 1, 1], [1, 0, 1], [1, 1, 1]])),
        ("size6", Mat::from_ints(&[[1, 1, 1], [0, 0, 0], [1, 0, 1]])),
        ("size8", Mat::from_ints(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]])),
    ]
}
