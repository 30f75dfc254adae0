//! Named example matroids used across the test suites and documentation.

use crate::ginv::{freedom_matroid, paving_matroid, RankSeq};
use crate::graph::GraphInput;
use crate::matroid::Matroid;

/// Cycle matroid of the complete graph on four vertices, with the edges
/// labelled so that 123, 156, 246 and 345 are the triangles.
pub fn cycle_k4() -> Matroid {
    Matroid::from_circuits(
        6,
        &[vec![1, 2, 3], vec![1, 5, 6], vec![2, 4, 6], vec![3, 4, 5]],
    )
    .expect("valid circuit family")
}

/// Rank 3 on six points: two disjoint triangles 123 and 456.
pub fn disjoint_triangles() -> Matroid {
    Matroid::from_circuits(6, &[vec![1, 2, 3], vec![4, 5, 6]]).expect("valid circuit family")
}

/// Rank 3 on six points: triangles 123 and 345 glued along the point 3.
pub fn glued_triangles() -> Matroid {
    Matroid::from_circuits(6, &[vec![1, 2, 3], vec![3, 4, 5]]).expect("valid circuit family")
}

/// Rank-3 paving matroid on six points with copoints 1234 and 456.
pub fn paving_example() -> Matroid {
    paving_matroid(6, 3, &[vec![1, 2, 3, 4], vec![4, 5, 6]]).expect("valid paving presentation")
}

/// A varied corpus of small matroids (each with at most eight elements):
/// uniforms, graphic examples, pavings, duals, direct sums, freedom
/// matroids, and matroids with loops.
pub fn corpus() -> Vec<(&'static str, Matroid)> {
    let freedom = |s: &str| freedom_matroid(RankSeq::parse(s).unwrap()).unwrap();
    let k4 = cycle_k4();
    let m1 = disjoint_triangles();
    let p = paving_example();
    let sum = m1.direct_sum(&Matroid::uniform(1, 1).unwrap()).unwrap();
    let loops = Matroid::from_bases(3, &[vec![2]]).unwrap();
    vec![
        ("U(1,2)", Matroid::uniform(1, 2).unwrap()),
        ("U(2,4)", Matroid::uniform(2, 4).unwrap()),
        ("U(3,6)", Matroid::uniform(3, 6).unwrap()),
        ("U(4,8)", Matroid::uniform(4, 8).unwrap()),
        ("cycle(K4)", k4.clone()),
        ("cycle(K4)*", k4.dual()),
        ("triangles 123|456", m1),
        ("triangles 123|345", glued_triangles()),
        ("paving 1234/456", p.clone()),
        ("paving 1234/456 *", p.dual()),
        ("triangles (+) coloop", sum),
        ("F(110100)", freedom("110100")),
        ("F(10110010)", freedom("10110010")),
        ("loops and a coloop", loops),
    ]
}

/// Graph whose cycle matroid is `cycle_k4`, up to relabelling.
pub fn k4_graph() -> GraphInput {
    GraphInput::complete(4)
}
