//! Plain-text rendering shared by series and polynomials.

use crate::arith::Field;

/// True when `s` has a `+` or `-` outside parentheses after its first char.
fn has_top_level_sum(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

/// True when the whole of `s` is one parenthesized group.
fn fully_parenthesized(s: &str) -> bool {
    if !s.starts_with('(') {
        return false;
    }
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

/// Renders `sum c_i var^i` over the given `(i, c_i)` pairs, skipping zeros.
pub(crate) fn render_terms<'a, K: Field + 'a>(
    terms: impl Iterator<Item = (usize, &'a K)>,
    var: &str,
) -> String {
    let mut out = String::new();
    for (i, c) in terms {
        if c.is_zero() {
            continue;
        }
        let text = c.to_string();
        let (negative, mag) = match text.strip_prefix('-') {
            Some(rest) if !has_top_level_sum(rest) => (true, rest.to_string()),
            _ => (false, text),
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            if has_top_level_sum(&mag) && !out.is_empty() {
                out.push_str(&format!("({mag})"));
            } else {
                out.push_str(&mag);
            }
        } else if mag == "1" {
            out.push_str(&mono);
        } else if !fully_parenthesized(&mag) && (has_top_level_sum(&mag) || mag.contains('(')) {
            out.push_str(&format!("({mag})*{mono}"));
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// LaTeX body of `sum c_i var^i`, ascending.
pub(crate) fn latex_terms<K: Field>(coeffs: &[K], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let tex = c.to_latex();
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{{{i}}}"),
        };
        let (negative, mag) = match tex.strip_prefix('-') {
            Some(rest) => (true, rest.to_string()),
            None => (false, tex),
        };
        let compound = has_top_level_sum(&mag);
        if !out.is_empty() {
            out.push_str(if negative { " - " } else { " + " });
        } else if negative {
            out.push('-');
        }
        if mono.is_empty() {
            out.push_str(&mag);
        } else if mag == "1" {
            out.push_str(&mono);
        } else if compound {
            out.push_str(&format!("\\left({mag}\\right) {mono}"));
        } else {
            out.push_str(&format!("{mag} {mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
