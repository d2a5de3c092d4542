//! Small codes and patterns used throughout the tests and examples.

use crate::code::LinearCode;
use crate::pattern::CollusionPattern;

/// The binary `[5, 3]` code with rows `10010`, `01011`, `00101`.
pub fn binary_5_3() -> LinearCode {
    LinearCode::new(
        2,
        5,
        &[
            vec![1, 0, 0, 1, 0],
            vec![0, 1, 0, 1, 1],
            vec![0, 0, 1, 0, 1],
        ],
    )
    .expect("valid code")
}

/// `⟨123, 345⟩` on five elements.
pub fn binary_pattern() -> CollusionPattern {
    CollusionPattern::from_lists(5, &[vec![1, 2, 3], vec![3, 4, 5]]).expect("valid pattern")
}

/// Reed-Solomon `[7, 3]` over `F_7`, evaluated at `0, 1, ..., 6`.
pub fn rs_7_3() -> LinearCode {
    LinearCode::reed_solomon(7, 7, 3, &[0, 1, 2, 3, 4, 5, 6]).expect("valid code")
}

/// `⟨1234, 2356, 4567⟩` on seven elements.
pub fn rs_pattern() -> CollusionPattern {
    CollusionPattern::from_lists(7, &[vec![1, 2, 3, 4], vec![2, 3, 5, 6], vec![4, 5, 6, 7]])
        .expect("valid pattern")
}

/// Two `[6, 3]` MDS codes over `F_7`, given through their dual generators,
/// with different derived matroids.
pub fn mds_pair() -> (LinearCode, LinearCode) {
    let q1_dual = LinearCode::new(
        7,
        6,
        &[
            vec![1, 2, 1, 5, 0, 0],
            vec![1, 5, 0, 0, 5, 1],
            vec![0, 0, 5, 1, 2, 1],
        ],
    )
    .expect("valid code");
    let q2_dual = LinearCode::new(
        7,
        6,
        &[
            vec![1, 1, 1, 1, 0, 0],
            vec![0, 0, 1, 1, 1, 1],
            vec![1, 2, 3, 4, 5, 6],
        ],
    )
    .expect("valid code");
    (q1_dual.dual(), q2_dual.dual())
}

/// `⟨1234, 1256, 3456⟩` on six elements.
pub fn mds_pair_pattern() -> CollusionPattern {
    CollusionPattern::from_lists(6, &[vec![1, 2, 3, 4], vec![1, 2, 5, 6], vec![3, 4, 5, 6]])
        .expect("valid pattern")
}
