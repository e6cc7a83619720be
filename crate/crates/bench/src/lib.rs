//! Inputs shared by the benchmarks.

use indorder::{parse_graph, Graph};

/// Named graphs of increasing difficulty for the polynomial benchmarks.
pub fn polynomial_inputs() -> Vec<(&'static str, Graph)> {
    [
        "P30",
        "T(9,8,7,6)",
        "H(30,12)",
        "C24",
        "G24",
        "K6,6",
        "C10 + K5 + P12",
    ]
    .into_iter()
    .map(|s| (s, parse_graph(s).expect("valid family")))
    .collect()
}

/// Pairs for the order benchmarks: comparable, equivalent and incomparable.
pub fn comparison_inputs() -> Vec<(&'static str, Graph, Graph)> {
    [
        ("star-vs-path", "S12", "P12"),
        ("cycle-vs-gn", "C16", "G16"),
        ("incomparable", "3*K1", "K2"),
        ("spiders", "T(5,5,5)", "T(7,4,4)"),
    ]
    .into_iter()
    .map(|(name, a, b)| (name, parse_graph(a).unwrap(), parse_graph(b).unwrap()))
    .collect()
}
