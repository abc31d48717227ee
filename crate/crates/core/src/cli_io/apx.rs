//! The line-based apx format: `arg(NAME).` and `att(NAME,NAME).`, with `%`
//! comment lines and blank lines ignored.

use std::collections::BTreeSet;

use crate::af::{is_valid_name, ArgumentId, ArgumentationFramework};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Declaration {
    Arg(ArgumentId),
    Att(ArgumentId, ArgumentId),
}

/// A parsed apx file, declarations kept in file order with their line numbers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ApxDocument {
    pub declarations: Vec<(usize, Declaration)>,
}

impl ApxDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut declarations = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = raw.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('%') {
                continue;
            }
            let offset = raw.len() - trimmed.len();
            let stmt = trimmed.trim_end();
            declarations.push((line_no, parse_statement(stmt, line_no, offset)?));
        }
        Ok(Self { declarations })
    }

    /// Resolve into a framework; every attack endpoint must be declared somewhere.
    pub fn into_framework(self) -> Result<ArgumentationFramework> {
        let declared: BTreeSet<&ArgumentId> = self
            .declarations
            .iter()
            .filter_map(|(_, d)| match d {
                Declaration::Arg(a) => Some(a),
                Declaration::Att(..) => None,
            })
            .collect();
        let mut attacks = Vec::new();
        for (line, d) in &self.declarations {
            if let Declaration::Att(s, t) = d {
                for endpoint in [s, t] {
                    if !declared.contains(endpoint) {
                        return Err(Error::UndeclaredArgument {
                            name: endpoint.to_string(),
                            line: *line,
                        });
                    }
                }
                attacks.push((s.as_str(), t.as_str()));
            }
        }
        ArgumentationFramework::new(declared.iter().map(|a| a.as_str()), attacks)
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
    line: usize,
    offset: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, reason: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.offset + self.pos + 1,
            reason: reason.into(),
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            Ok(())
        } else {
            Err(self.error(format!("expected `{token}`")))
        }
    }

    fn name(&mut self) -> Result<ArgumentId> {
        let rest = &self.text[self.pos..];
        let len = rest
            .bytes()
            .take_while(|b| b.is_ascii_alphanumeric() || *b == b'_')
            .count();
        let name = &rest[..len];
        if !is_valid_name(name) {
            return Err(self.error("expected an argument name [A-Za-z0-9_]+"));
        }
        self.pos += len;
        ArgumentId::new(name)
    }
}

fn parse_statement(stmt: &str, line: usize, offset: usize) -> Result<Declaration> {
    let mut cur = Cursor {
        text: stmt,
        pos: 0,
        line,
        offset,
    };
    let decl = if stmt.starts_with("arg(") {
        cur.expect("arg(")?;
        let a = cur.name()?;
        cur.expect(")")?;
        Declaration::Arg(a)
    } else if stmt.starts_with("att(") {
        cur.expect("att(")?;
        let s = cur.name()?;
        cur.expect(",")?;
        let t = cur.name()?;
        cur.expect(")")?;
        Declaration::Att(s, t)
    } else {
        return Err(cur.error("expected `arg(` or `att(`"));
    };
    cur.expect(".")?;
    if cur.pos != stmt.len() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(decl)
}

pub fn parse_apx(text: &str) -> Result<ArgumentationFramework> {
    ApxDocument::parse(text)?.into_framework()
}

/// Canonical apx rendering: arguments, then attacks, in canonical order.
pub fn emit_apx(af: &ArgumentationFramework) -> String {
    let mut out = String::new();
    for a in af.arguments() {
        out.push_str(&format!("arg({a}).\n"));
    }
    for att in af.attacks() {
        out.push_str(&format!("att({},{}).\n", att.source, att.target));
    }
    out
}
