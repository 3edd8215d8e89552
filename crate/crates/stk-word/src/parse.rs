use stk_graph::Graph;

use crate::{Letter, WordError};

/// Parses `a b^-1 h^3`; the empty string and `1` denote the identity.
pub fn parse_word(g: &Graph, s: &str) -> Result<Vec<Letter>, WordError> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "1" {
            continue;
        }
        let (name, exp) = match tok.split_once('^') {
            Some((n, e)) => (n, e.parse::<i32>().map_err(|_| WordError::BadToken(tok.to_string()))?),
            None => (tok, 1),
        };
        let v = g.vertex(name).map_err(|_| WordError::UnknownVertex(name.to_string()))?;
        let l = Letter::new(v, exp > 0);
        out.extend(std::iter::repeat(l).take(exp.unsigned_abs() as usize));
    }
    Ok(out)
}

pub fn letter_str(g: &Graph, l: Letter) -> String {
    if l.is_positive() {
        g.name(l.vertex()).to_string()
    } else {
        format!("{}^-1", g.name(l.vertex()))
    }
}

pub fn format_word(g: &Graph, w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    w.iter().map(|&l| letter_str(g, l)).collect::<Vec<_>>().join(" ")
}
