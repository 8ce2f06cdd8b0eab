//! Plain-text instance files.
//!
//! ```text
//! # comments run to end of line
//! lp <m> <n>
//! c₁ … cₙ
//! aᵢ₁ … aᵢₙ bᵢ      (m lines)
//! ```
//!
//! Numbers are integers or decimal fractions and are read exactly.

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::tableau::LpInstance;

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start = None;
            for (pos, ch) in content.char_indices().chain(std::iter::once((content.len(), ' '))) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(pos),
                    (true, Some(s)) => {
                        tokens.push((s + 1, &content[s..pos]));
                        start = None;
                    }
                    _ => {}
                }
            }
            (!tokens.is_empty()).then_some(Line {
                number: idx + 1,
                tokens,
            })
        })
        .collect()
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn numbers(line: &Line<'_>, expected: usize, what: &str) -> Result<Vec<Rational>> {
    if line.tokens.len() != expected {
        let column = line.tokens.get(expected).map_or(1, |t| t.0);
        return Err(parse_err(
            line.number,
            column,
            format!("{what}: expected {expected} numbers, found {}", line.tokens.len()),
        ));
    }
    line.tokens
        .iter()
        .map(|&(col, tok)| {
            parse_rational(tok).ok_or_else(|| parse_err(line.number, col, format!("not a number: `{tok}`")))
        })
        .collect()
}

fn dimension(line: &Line<'_>, idx: usize) -> Result<usize> {
    let (col, tok) = line.tokens[idx];
    match tok.parse::<usize>() {
        Ok(v) if v > 0 => Ok(v),
        _ => Err(parse_err(
            line.number,
            col,
            format!("expected a positive integer, found `{tok}`"),
        )),
    }
}

pub fn parse_instance(text: &str) -> Result<LpInstance> {
    let lines = tokenize(text);
    let last_line = text.lines().count().max(1);
    let Some(header) = lines.first() else {
        return Err(parse_err(last_line, 1, "missing `lp <m> <n>` header"));
    };
    if header.tokens[0].1 != "lp" {
        return Err(parse_err(
            header.number,
            header.tokens[0].0,
            "expected header `lp <m> <n>`",
        ));
    }
    if header.tokens.len() != 3 {
        return Err(parse_err(
            header.number,
            1,
            format!("header: expected `lp <m> <n>`, found {} fields", header.tokens.len()),
        ));
    }
    let m = dimension(header, 1)?;
    let n = dimension(header, 2)?;
    let Some(objective_line) = lines.get(1) else {
        return Err(parse_err(last_line, 1, "missing objective line"));
    };
    let objective = numbers(objective_line, n, "objective")?;
    let mut matrix = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let Some(line) = lines.get(2 + i) else {
            return Err(parse_err(
                last_line,
                1,
                format!("expected {m} constraint rows, found {i}"),
            ));
        };
        let mut row = numbers(line, n + 1, &format!("constraint row {}", i + 1))?;
        rhs.push(row.pop().expect("row has n + 1 entries"));
        matrix.push(row);
    }
    if let Some(extra) = lines.get(2 + m) {
        return Err(parse_err(
            extra.number,
            extra.tokens[0].0,
            "unexpected data after last constraint row",
        ));
    }
    LpInstance::new(objective, matrix, rhs)
}

/// Canonical text form: no comments, single spaces, one trailing newline.
pub fn serialize_instance(inst: &LpInstance) -> String {
    let join = |values: &mut dyn Iterator<Item = &Rational>| values.map(format_rational).collect::<Vec<_>>().join(" ");
    let mut out = format!("lp {} {}\n", inst.num_rows(), inst.num_cols());
    out.push_str(&join(&mut inst.objective().iter()));
    out.push('\n');
    for (row, b) in inst.matrix().iter().zip(inst.rhs()) {
        out.push_str(&join(&mut row.iter().chain(std::iter::once(b))));
        out.push('\n');
    }
    out
}
