use num_traits::{One, Signed};

use crate::arith::Rational;

/// Renders `Σ c · Π var^exp` in the order given; a zero exponent suppresses the variable.
pub(crate) fn format_terms(terms: &[(Rational, Vec<(String, usize)>)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (c, vars)) in terms.iter().enumerate() {
        let neg = c.is_negative();
        match (idx, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mag = c.abs();
        let mono: Vec<String> = vars
            .iter()
            .filter(|(_, e)| *e > 0)
            .map(|(v, e)| if *e == 1 { v.clone() } else { format!("{}^{}", v, e) })
            .collect();
        if mono.is_empty() {
            out.push_str(&mag.to_string());
            continue;
        }
        if !mag.is_one() {
            if mag.is_integer() {
                out.push_str(&format!("{}*", mag));
            } else {
                out.push_str(&format!("({})*", mag));
            }
        }
        out.push_str(&mono.join("*"));
    }
    out
}
