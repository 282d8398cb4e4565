//! MacKay's alist format.
//!
//! ```text
//! n r
//! max_bit_degree max_check_degree
//! <n bit degrees>
//! <r check degrees>
//! <n lines: 1-indexed checks adjacent to each bit>
//! <r lines: 1-indexed bits adjacent to each check>
//! ```
//!
//! Zero entries in adjacency lines are padding and are ignored on input.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::TannerGraph;
use crate::error::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    /// Next line as numbers, with its 1-based line number.
    fn numbers(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        let (idx, text) = self
            .inner
            .next()
            .ok_or_else(|| parse_err(0, format!("unexpected end of input, expected {what}")))?;
        let line = idx + 1;
        let nums = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| parse_err(line, format!("invalid number {tok:?} in {what}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((line, nums))
    }

    fn exact(&mut self, count: usize, what: &str) -> Result<(usize, Vec<usize>)> {
        let (line, nums) = self.numbers(what)?;
        if nums.len() != count {
            return Err(parse_err(
                line,
                format!("expected {count} entries in {what}, found {}", nums.len()),
            ));
        }
        Ok((line, nums))
    }

    /// Adjacency line: nonzero 1-based indices bounded by `bound`.
    fn adjacency(&mut self, degree: usize, bound: usize, what: &str) -> Result<Vec<usize>> {
        let (line, nums) = self.numbers(what)?;
        let entries: Vec<usize> = nums.into_iter().filter(|&x| x != 0).collect();
        if entries.len() != degree {
            return Err(parse_err(
                line,
                format!("{what} lists {} entries but degree is {degree}", entries.len()),
            ));
        }
        entries
            .into_iter()
            .map(|x| {
                if x > bound {
                    Err(parse_err(line, format!("index {x} exceeds {bound} in {what}")))
                } else {
                    Ok(x - 1)
                }
            })
            .collect()
    }
}

/// Parses an alist description into a Tanner graph.
pub fn read_alist(text: &str) -> Result<TannerGraph> {
    if text.trim().is_empty() {
        return Err(parse_err(1, "empty alist input"));
    }
    let mut lines = Lines {
        inner: text.lines().enumerate(),
    };
    let (_, header) = lines.exact(2, "header `n r`")?;
    let (n, r) = (header[0], header[1]);
    let (max_line, max_deg) = lines.exact(2, "maximum degrees")?;
    let (bit_line, bit_deg) = lines.exact(n, "bit degrees")?;
    let (check_line, check_deg) = lines.exact(r, "check degrees")?;
    if bit_deg.iter().copied().max().unwrap_or(0) != max_deg[0]
        || check_deg.iter().copied().max().unwrap_or(0) != max_deg[1]
    {
        return Err(parse_err(max_line, "maximum degrees disagree with degree lists"));
    }
    if bit_deg.iter().sum::<usize>() != check_deg.iter().sum::<usize>() {
        return Err(parse_err(
            check_line,
            format!("bit degrees (line {bit_line}) and check degrees sum to different edge counts"),
        ));
    }

    let mut edges = Vec::new();
    for (b, &deg) in bit_deg.iter().enumerate() {
        for c in lines.adjacency(deg, r, &format!("adjacency of bit {}", b + 1))? {
            edges.push((c, b));
        }
    }
    let first_check_line = bit_line + 2 + n;
    let mut check_lists = Vec::with_capacity(r);
    for (c, &deg) in check_deg.iter().enumerate() {
        let mut bits = lines.adjacency(deg, n, &format!("adjacency of check {}", c + 1))?;
        bits.sort_unstable();
        check_lists.push(bits);
    }
    let g = TannerGraph::from_edges(r, n, edges)
        .map_err(|e| parse_err(bit_line + 2, format!("bit adjacency lines: {e}")))?;
    for (c, bits) in check_lists.iter().enumerate() {
        if g.check_neighbors(c) != bits.as_slice() {
            return Err(parse_err(
                first_check_line + c,
                format!("check {} adjacency disagrees with bit adjacency", c + 1),
            ));
        }
    }
    for (idx, rest) in lines.inner {
        if !rest.trim().is_empty() {
            return Err(parse_err(idx + 1, "trailing content after adjacency lists"));
        }
    }
    Ok(g)
}

fn join(values: impl Iterator<Item = usize>) -> String {
    let mut out = String::new();
    for (i, v) in values.enumerate() {
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{v}");
    }
    out
}

/// Renders `g` as alist text with sorted adjacencies and no zero padding.
pub fn write_alist(g: &TannerGraph) -> String {
    let n = g.num_bits();
    let r = g.num_checks();
    let bit_deg: Vec<usize> = (0..n).map(|b| g.bit_neighbors(b).len()).collect();
    let check_deg: Vec<usize> = (0..r).map(|c| g.check_neighbors(c).len()).collect();
    let mut out = String::new();
    let _ = writeln!(out, "{n} {r}");
    let _ = writeln!(
        out,
        "{} {}",
        bit_deg.iter().max().unwrap_or(&0),
        check_deg.iter().max().unwrap_or(&0)
    );
    let _ = writeln!(out, "{}", join(bit_deg.iter().copied()));
    let _ = writeln!(out, "{}", join(check_deg.iter().copied()));
    for b in 0..n {
        let _ = writeln!(out, "{}", join(g.bit_neighbors(b).iter().map(|c| c + 1)));
    }
    for c in 0..r {
        let _ = writeln!(out, "{}", join(g.check_neighbors(c).iter().map(|b| b + 1)));
    }
    out
}

pub fn load_alist(path: impl AsRef<Path>) -> Result<TannerGraph> {
    read_alist(&fs::read_to_string(path)?)
}

pub fn save_alist(g: &TannerGraph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, write_alist(g))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const REP3: &str = "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 2\n2 3\n";

    fn rep3() -> TannerGraph {
        TannerGraph::from_edges(2, 3, [(0, 0), (0, 1), (1, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn reads_repetition_code() {
        assert_eq!(read_alist(REP3).unwrap(), rep3());
    }

    #[test]
    fn writes_repetition_code_exactly() {
        assert_eq!(write_alist(&rep3()), REP3);
    }

    #[test]
    fn zero_padding_is_ignored() {
        let padded = "3 2\n2 2\n1 2 1\n2 2\n1 0\n1 2\n2 0\n1 2\n2 3\n";
        assert_eq!(read_alist(padded).unwrap(), rep3());
    }

    #[test]
    fn empty_input_rejected() {
        assert!(matches!(read_alist(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn out_of_range_index_names_line() {
        let bad = "3 2\n2 2\n1 2 1\n2 2\n1\n1 3\n2\n1 2\n2 3\n";
        match read_alist(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn inconsistent_lists_rejected() {
        let bad = "3 2\n2 2\n1 2 1\n2 2\n1\n1 2\n2\n1 3\n2 3\n";
        assert!(matches!(read_alist(bad), Err(Error::Parse { line: 8, .. })));
    }

    #[test]
    fn isolated_bit_emits_empty_line() {
        let g = TannerGraph::from_edges(1, 2, [(0, 0)]).unwrap();
        let text = write_alist(&g);
        assert_eq!(text, "2 1\n1 1\n1 0\n1\n1\n\n1\n");
        assert_eq!(read_alist(&text).unwrap(), g);
    }
}
