//! Benchmark inputs shared by the bench targets.

use eisenkit::poly::parse_bipoly;
use eisenkit::BiPoly;

/// Polynomials exercising the main pipeline, labelled for reporting.
pub const CORPUS: &[(&str, &str)] = &[
    ("binomial", "w^2 - z - 1"),
    ("catalan", "z*w^2 - w + 1"),
    ("cubic", "w^3 - 3*z*w + z^2 - 7"),
    ("quartic", "(w^2 - z)^2 - z^3*w + 4*z^5"),
];

pub fn corpus() -> Vec<(&'static str, BiPoly)> {
    CORPUS.iter().map(|(name, text)| (*name, parse_bipoly(text).expect("corpus parses"))).collect()
}
