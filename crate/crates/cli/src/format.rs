//! The textual RLE format.
//!
//! One string per line; a line is whitespace-separated `SYM:LEN` tokens.
//! `SYM` is a single printable character, or `#` followed by a decimal code
//! point for anything unprintable (and for `#` itself, which would otherwise
//! be ambiguous). `LEN` is a positive decimal. Lines are canonicalized on
//! read, so `a:2 a:3` is accepted and means `a:5`.

use std::fmt;

use rle_dict::rle::{RleString, Run, Symbol};

/// A parse failure with enough context for a one-line diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub file: String,
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.file, self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(file: &str, line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        file: file.to_string(),
        line,
        message: message.into(),
    }
}

/// Parse one `SYM:LEN ...` line into a canonical RLE string.
pub fn parse_rle_line(text: &str, file: &str, line: usize) -> Result<RleString, ParseError> {
    let mut runs = Vec::new();
    for token in text.split_whitespace() {
        let (ch, len_str) = if let Some(rest) = token.strip_prefix('#') {
            let (code, len) = rest
                .split_once(':')
                .ok_or_else(|| err(file, line, format!("missing ':' in token `{token}`")))?;
            let code: Symbol = code
                .parse()
                .map_err(|_| err(file, line, format!("bad code point in token `{token}`")))?;
            (code, len)
        } else {
            let mut chars = token.chars();
            let sym = chars
                .next()
                .ok_or_else(|| err(file, line, "empty token"))?;
            let rest = chars.as_str();
            let len = rest
                .strip_prefix(':')
                .ok_or_else(|| err(file, line, format!("missing ':' in token `{token}`")))?;
            (sym as Symbol, len)
        };
        let len: u64 = len_str
            .parse()
            .map_err(|_| err(file, line, format!("bad run length in token `{token}`")))?;
        if len == 0 {
            return Err(err(file, line, format!("run length must be positive in `{token}`")));
        }
        runs.push(Run::new(ch, len));
    }
    RleString::from_runs(runs).map_err(|e| err(file, line, e.to_string()))
}

/// Parse a literal line: every character is one symbol.
pub fn parse_raw_line(text: &str) -> RleString {
    let raw: Vec<Symbol> = text.chars().map(|c| c as Symbol).collect();
    RleString::encode(&raw)
}

fn format_symbol(ch: Symbol) -> String {
    match char::from_u32(ch) {
        Some(c) if c.is_ascii_graphic() && c != '#' => c.to_string(),
        _ => format!("#{ch}"),
    }
}

/// Render an RLE string as one `SYM:LEN ...` line.
pub fn format_rle_line(s: &RleString) -> String {
    s.runs()
        .iter()
        .map(|r| format!("{}:{}", format_symbol(r.ch), r.len))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Render decoded symbols as a literal line; fails on invalid code points.
pub fn format_raw_line(symbols: &[Symbol]) -> Option<String> {
    symbols.iter().map(|&c| char::from_u32(c)).collect()
}
