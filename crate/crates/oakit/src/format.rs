//! Plain-text formats for arrays and block designs.
//!
//! Both start with a two-integer header line (`n k` for an array, `v k`
//! for a design) followed by one row or block per line. Lines starting
//! with `#` and blank lines are skipped anywhere in the file.

use std::fmt::Write;

use oakit_core::{BlockDesign, DesignError, OrthogonalArray};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: expected two integers in the header")]
    BadHeader { line: usize },
    #[error("line {line}: `{token}` is not a nonnegative integer")]
    BadToken { line: usize, token: String },
    #[error("line {line}: expected {expected} entries, found {found}")]
    WrongLength { line: usize, expected: usize, found: usize },
    #[error("line {line}: symbol {symbol} out of range 0..{bound}")]
    OutOfRange { line: usize, symbol: usize, bound: usize },
    #[error("no rows after the header")]
    Empty,
    #[error(transparent)]
    Design(#[from] DesignError),
}

/// Numbered content lines, comments and blanks removed.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_numbers(line: usize, s: &str) -> Result<Vec<usize>, FormatError> {
    s.split_whitespace()
        .map(|tok| tok.parse().map_err(|_| FormatError::BadToken { line, token: tok.to_string() }))
        .collect()
}

/// Header values and the bounded rows that follow them.
fn parse_table(text: &str) -> Result<(usize, usize, Vec<Vec<usize>>), FormatError> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or(FormatError::MissingHeader)?;
    let header = parse_numbers(hl, header).map_err(|_| FormatError::BadHeader { line: hl })?;
    let [bound, width] = header[..] else {
        return Err(FormatError::BadHeader { line: hl });
    };
    let mut rows = Vec::new();
    for (line, s) in lines {
        let row = parse_numbers(line, s)?;
        if row.len() != width {
            return Err(FormatError::WrongLength { line, expected: width, found: row.len() });
        }
        if let Some(&symbol) = row.iter().find(|&&x| x >= bound) {
            return Err(FormatError::OutOfRange { line, symbol, bound });
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(FormatError::Empty);
    }
    Ok((bound, width, rows))
}

pub fn parse_oa(text: &str) -> Result<OrthogonalArray, FormatError> {
    let (n, _, rows) = parse_table(text)?;
    Ok(OrthogonalArray::new(n, rows)?)
}

pub fn write_oa(a: &OrthogonalArray) -> String {
    let mut out = format!("{} {}\n", a.n(), a.k());
    for row in a.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

pub fn parse_bibd(text: &str) -> Result<BlockDesign, FormatError> {
    let (v, k, blocks) = parse_table(text)?;
    Ok(BlockDesign::new(v, k, blocks)?)
}

pub fn write_bibd(d: &BlockDesign) -> String {
    let mut out = format!("{} {}\n", d.v(), d.block_size());
    for block in d.blocks() {
        let cells: Vec<String> = block.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_with_comments_and_blanks() {
        let a = parse_oa("# parity\n2 3\n\n0 0 0\n0 1 1\n# mid\n1 0 1\n1 1 0").unwrap();
        assert_eq!(a.num_rows(), 4);
        assert_eq!(write_oa(&a), "2 3\n0 0 0\n0 1 1\n1 0 1\n1 1 0\n");
        assert_eq!(parse_oa(&write_oa(&a)).unwrap(), a);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_oa(""), Err(FormatError::MissingHeader)));
        assert!(matches!(parse_oa("2\n0\n"), Err(FormatError::BadHeader { line: 1 })));
        assert!(matches!(parse_oa("2 2\n0 x\n"), Err(FormatError::BadToken { line: 2, .. })));
        assert!(matches!(parse_oa("2 2\n0 1 1\n"), Err(FormatError::WrongLength { line: 2, .. })));
        assert!(matches!(
            parse_oa("3 2\n0 3\n"),
            Err(FormatError::OutOfRange { line: 2, symbol: 3, bound: 3 })
        ));
        assert!(matches!(parse_oa("2 2\n"), Err(FormatError::Empty)));
    }

    #[test]
    fn block_design_round_trip() {
        let d = parse_bibd("7 3\n0 1 3\n1 2 4\n2 3 5\n3 4 6\n0 4 5\n1 5 6\n0 2 6\n").unwrap();
        assert_eq!(d.verify_bibd(2).unwrap(), 1);
        assert_eq!(parse_bibd(&write_bibd(&d)).unwrap(), d);
    }
}
