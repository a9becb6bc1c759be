//! DIMACS CNF reading and writing.

use std::fmt::Write as _;

use thiserror::Error;

use super::{Clause, CnfFormula, Lit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed problem line `{0}`")]
    MalformedHeader(String),
    #[error("missing `p cnf` problem line")]
    MissingHeader,
    #[error("duplicate problem line")]
    DuplicateHeader,
    #[error("invalid literal `{0}`")]
    InvalidLiteral(String),
    #[error("variable {var} exceeds the declared count {num_vars}")]
    VariableOutOfRange { var: u32, num_vars: u32 },
    #[error("empty clause")]
    EmptyClause,
    #[error("clause not terminated by 0")]
    UnterminatedClause,
    #[error("header declares {declared} clauses, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
}

/// Parses DIMACS CNF text, discarding comments.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, ParseError> {
    parse_dimacs_with_comments(text).map(|(f, _)| f)
}

/// Parses DIMACS CNF text and returns the comment lines (without the leading `c`).
pub fn parse_dimacs_with_comments(text: &str) -> Result<(CnfFormula, Vec<String>), ParseError> {
    let mut comments = Vec::new();
    let mut header: Option<(u32, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut clause_line = 0;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                comments.push(rest.trim_start().to_string());
                continue;
            }
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, ParseErrorKind::DuplicateHeader));
            }
            header = Some(parse_header(line).ok_or_else(|| {
                err(line_no, ParseErrorKind::MalformedHeader(line.to_string()))
            })?);
            continue;
        }
        // SATLIB files end with `%` followed by a stray `0`
        if line.starts_with('%') {
            break;
        }
        let Some((num_vars, _)) = header else {
            return Err(err(line_no, ParseErrorKind::MissingHeader));
        };
        for token in line.split_whitespace() {
            let value: i32 = token
                .parse()
                .map_err(|_| err(line_no, ParseErrorKind::InvalidLiteral(token.to_string())))?;
            if value == 0 {
                if current.is_empty() {
                    return Err(err(line_no, ParseErrorKind::EmptyClause));
                }
                // non-empty, so construction cannot fail
                clauses.push(Clause::new(current.drain(..)).expect("non-empty clause"));
                continue;
            }
            if current.is_empty() {
                clause_line = line_no;
            }
            let var = value.unsigned_abs();
            if var > num_vars {
                return Err(err(line_no, ParseErrorKind::VariableOutOfRange { var, num_vars }));
            }
            current.push(Lit::from_dimacs(value).expect("nonzero"));
        }
    }

    let Some((num_vars, declared)) = header else {
        return Err(err(last_line.max(1), ParseErrorKind::MissingHeader));
    };
    if !current.is_empty() {
        return Err(err(clause_line, ParseErrorKind::UnterminatedClause));
    }
    if clauses.len() != declared {
        return Err(err(
            last_line.max(1),
            ParseErrorKind::ClauseCountMismatch {
                declared,
                found: clauses.len(),
            },
        ));
    }
    let formula = CnfFormula::new(num_vars, clauses).expect("variables checked while parsing");
    Ok((formula, comments))
}

fn parse_header(line: &str) -> Option<(u32, usize)> {
    let mut parts = line.split_whitespace();
    if parts.next()? != "p" || parts.next()? != "cnf" {
        return None;
    }
    let num_vars = parts.next()?.parse().ok()?;
    let num_clauses = parts.next()?.parse().ok()?;
    if parts.next().is_some() {
        return None;
    }
    Some((num_vars, num_clauses))
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// Writes the formula as DIMACS text: header, then one clause per line.
pub fn write_dimacs(formula: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", formula.num_vars(), formula.num_clauses());
    out.push_str(&write_dimacs_fragment(formula.clauses()));
    out
}

/// Clause lines only, for appending to an existing DIMACS body.
pub fn write_dimacs_fragment(clauses: &[Clause]) -> String {
    let mut out = String::new();
    for clause in clauses {
        for lit in clause.lits() {
            write!(out, "{} ", lit.to_dimacs()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}
