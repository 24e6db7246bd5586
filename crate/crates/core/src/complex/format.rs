//! Plain-text complex format.
//!
//! ```text
//! # vertices: a_0 a_1 a_2 a b c
//! a_0
//! a_0 a
//! ...
//! ```
//!
//! The header lists the vertex universe in identifier order; each following
//! line is one simplex as space-separated labels, lines in canonical order.

use itertools::Itertools;

use super::{Complex, ComplexError, Simplex};

const HEADER: &str = "# vertices:";

pub fn write_complex(k: &Complex) -> String {
    let mut out = format!("{HEADER} {}\n", k.names().join(" "));
    for s in k.simplices() {
        out.push_str(&s.vertices().iter().map(|&v| k.name(v)).join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_complex(text: &str) -> Result<Complex, ComplexError> {
    let mut names: Option<Vec<String>> = None;
    let mut gens = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: String| ComplexError::Parse { line: i + 1, msg };
        if let Some(rest) = line.strip_prefix(HEADER) {
            let list: Vec<String> = rest.split_whitespace().map(str::to_owned).collect();
            if !list.iter().all_unique() {
                return Err(err("duplicate vertex label in header".into()));
            }
            names = Some(list);
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let names = names.as_ref().ok_or_else(|| err("simplex before vertex header".into()))?;
        let ids = line
            .split_whitespace()
            .map(|l| names.iter().position(|n| n == l).ok_or_else(|| err(format!("unknown label `{l}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        if !ids.iter().all_unique() {
            return Err(err("repeated vertex in simplex".into()));
        }
        gens.push(Simplex::new(ids));
    }
    let names = names.ok_or(ComplexError::Parse { line: 0, msg: "missing vertex header".into() })?;
    let k = Complex::from_generators(names, gens.iter().cloned());
    if k.len() != gens.len() {
        // closure added faces the file did not list
        return Err(ComplexError::Parse { line: 0, msg: "simplex list is not face closed".into() });
    }
    Ok(k)
}
