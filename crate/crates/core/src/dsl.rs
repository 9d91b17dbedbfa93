//! Line-oriented text format for configurations.
//!
//! ```text
//! # comment
//! cover: irreducible            # or: split
//! symbols: a b c
//!
//! curve x_axis:
//!   type: II                    # I | II | III | IV
//!   cover: split                # inert | split | ramified
//!   ext e_xyz: a                # `ext <id> sheet=1:` on split covers
//!   ext e_xzy: a
//!   mark: <ext-id>              # Type IV only
//!   cores: a+b                  # inert and ramified curves only
//!
//! point p:
//!   curves: x_axis, y_axis
//!   etype: II_II                # I_II II_II III_II IV_II IVp_IV IVpp_IV
//!   meets_marked: e1, e2        # IV_II only
//! ```
//!
//! Top-level lines start in column 1; block properties are indented.
//! Residues are `0` or `name(+name)*`, summed over GF(2). Declaration order
//! of curves, extensions and points is semantic: it fixes basis order.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::model::{
    Configuration, CoverBehavior, CoverKind, Curve, DegType, Extension, PointType, ResidueClass,
    Sheet, SingularPoint,
};

/// 1-based position in the input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SourceSpan {
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    pub fn new(line: usize, column: usize) -> Self {
        Self { line, column }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    Syntax,
    UnknownKeyword,
    UnresolvedReference,
    DuplicateId,
    Missing,
}

impl DiagnosticKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagnosticKind::Syntax => "syntax error",
            DiagnosticKind::UnknownKeyword => "unknown keyword",
            DiagnosticKind::UnresolvedReference => "unresolved reference",
            DiagnosticKind::DuplicateId => "duplicate id",
            DiagnosticKind::Missing => "missing declaration",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub span: SourceSpan,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.span, self.kind.as_str(), self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseErrors {
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for ParseErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown built-in example `{0}` (expected one of: hpt, cubic-quartic)")]
pub struct UnknownBuiltin(pub String);

pub fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s != "0"
        && s.chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '-' | '.'))
}

/// A trimmed piece of a line together with its starting column.
#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

impl<'a> Tok<'a> {
    /// `text` must be a subslice of `line`.
    fn within(line: &'a str, text: &'a str) -> Self {
        let offset = text.as_ptr() as usize - line.as_ptr() as usize;
        Self {
            text,
            col: line[..offset].chars().count() + 1,
        }
    }

    fn trimmed(line: &'a str, text: &'a str) -> Self {
        Self::within(line, text.trim())
    }
}

fn words<'a>(line: &'a str, text: &'a str) -> Vec<Tok<'a>> {
    text.split_whitespace()
        .map(|w| Tok::within(line, w))
        .collect()
}

struct CurveDraft {
    span: SourceSpan,
    id: String,
    deg_type: Option<DegType>,
    cover: Option<CoverBehavior>,
    extensions: Vec<(Extension, SourceSpan)>,
    marking: Option<(String, SourceSpan)>,
    cores: Option<ResidueClass>,
    /// Property keys that appeared, even if their value was rejected.
    seen: Vec<String>,
}

struct PointDraft {
    span: SourceSpan,
    id: String,
    curves: Option<[(String, SourceSpan); 2]>,
    etype: Option<PointType>,
    meets_marked: Vec<(String, SourceSpan)>,
    seen: Vec<String>,
}

enum Block {
    Curve(CurveDraft),
    Point(PointDraft),
}

#[derive(Default)]
struct Parser {
    diagnostics: Vec<Diagnostic>,
    cover: Option<CoverKind>,
    cover_seen: bool,
    symbols: Option<Vec<(String, SourceSpan)>>,
    blocks: Vec<Block>,
    symbol_uses: Vec<(String, SourceSpan)>,
}

impl Parser {
    fn diag(&mut self, kind: DiagnosticKind, line: usize, col: usize, message: impl Into<String>) {
        self.diagnostics.push(Diagnostic {
            kind,
            span: SourceSpan::new(line, col),
            message: message.into(),
        });
    }

    fn line(&mut self, n: usize, raw: &str) {
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        };
        if content.trim().is_empty() {
            return;
        }
        let indented = content.starts_with(char::is_whitespace);
        let Some(colon) = content.find(':') else {
            let t = Tok::trimmed(raw, content);
            self.diag(DiagnosticKind::Syntax, n, t.col, "expected `key: value`");
            return;
        };
        let head = words(raw, &content[..colon]);
        let value = Tok::trimmed(raw, &content[colon + 1..]);
        let Some(key) = head.first().copied() else {
            self.diag(
                DiagnosticKind::Syntax,
                n,
                colon + 1,
                "missing key before `:`",
            );
            return;
        };
        if indented {
            match self.blocks.last() {
                Some(Block::Curve(_)) => self.curve_property(n, raw, key, &head, value),
                Some(Block::Point(_)) => self.point_property(n, raw, key, &head, value),
                None => self.diag(
                    DiagnosticKind::Syntax,
                    n,
                    key.col,
                    "indented property outside a curve or point block",
                ),
            }
        } else {
            self.top_level(n, raw, key, &head, value);
        }
    }

    fn expect_single_head(&mut self, n: usize, head: &[Tok]) -> bool {
        if let Some(extra) = head.get(1) {
            self.diag(
                DiagnosticKind::Syntax,
                n,
                extra.col,
                format!("unexpected `{}` before `:`", extra.text),
            );
            false
        } else {
            true
        }
    }

    fn top_level(&mut self, n: usize, raw: &str, key: Tok, head: &[Tok], value: Tok) {
        match key.text {
            "cover" => {
                self.cover_seen = true;
                if !self.expect_single_head(n, head) {
                    return;
                }
                let kind = match value.text {
                    "irreducible" => CoverKind::Irreducible,
                    "split" => CoverKind::SplitEverywhere,
                    other => {
                        self.diag(
                            DiagnosticKind::Syntax,
                            n,
                            value.col,
                            format!("expected `irreducible` or `split`, found `{other}`"),
                        );
                        return;
                    }
                };
                if self.cover.replace(kind).is_some() {
                    self.diag(DiagnosticKind::Syntax, n, key.col, "cover declared twice");
                }
            }
            "symbols" => {
                if !self.expect_single_head(n, head) {
                    return;
                }
                if self.symbols.is_some() {
                    self.diag(DiagnosticKind::Syntax, n, key.col, "symbols declared twice");
                    return;
                }
                let mut names = Vec::new();
                for w in words(raw, value.text) {
                    if is_identifier(w.text) {
                        names.push((w.text.to_string(), SourceSpan::new(n, w.col)));
                    } else {
                        self.diag(
                            DiagnosticKind::Syntax,
                            n,
                            w.col,
                            format!("invalid symbol name `{}`", w.text),
                        );
                    }
                }
                self.symbols = Some(names);
            }
            "curve" | "point" => {
                let Some(id) = self.block_header(n, key, head, value) else {
                    return;
                };
                let span = SourceSpan::new(n, head[1].col);
                self.blocks.push(if key.text == "curve" {
                    Block::Curve(CurveDraft {
                        span,
                        id,
                        deg_type: None,
                        cover: None,
                        extensions: Vec::new(),
                        marking: None,
                        cores: None,
                        seen: Vec::new(),
                    })
                } else {
                    Block::Point(PointDraft {
                        span,
                        id,
                        curves: None,
                        etype: None,
                        meets_marked: Vec::new(),
                        seen: Vec::new(),
                    })
                });
            }
            other => self.diag(
                DiagnosticKind::UnknownKeyword,
                n,
                key.col,
                format!("unknown top-level keyword `{other}`"),
            ),
        }
    }

    fn block_header(&mut self, n: usize, key: Tok, head: &[Tok], value: Tok) -> Option<String> {
        if !value.text.is_empty() {
            self.diag(
                DiagnosticKind::Syntax,
                n,
                value.col,
                format!("unexpected text after `{} <id>:`", key.text),
            );
            return None;
        }
        match head {
            [_, id] if is_identifier(id.text) => Some(id.text.to_string()),
            [_, id] => {
                self.diag(
                    DiagnosticKind::Syntax,
                    n,
                    id.col,
                    format!("invalid identifier `{}`", id.text),
                );
                None
            }
            [_] => {
                self.diag(
                    DiagnosticKind::Syntax,
                    n,
                    key.col,
                    format!("`{}` needs an identifier", key.text),
                );
                None
            }
            [_, _, extra, ..] => {
                self.diag(
                    DiagnosticKind::Syntax,
                    n,
                    extra.col,
                    format!("unexpected `{}`", extra.text),
                );
                None
            }
            [] => unreachable!("head has at least the key"),
        }
    }

    fn residue(&mut self, n: usize, raw: &str, value: Tok) -> Option<ResidueClass> {
        if value.text.is_empty() {
            self.diag(
                DiagnosticKind::Syntax,
                n,
                value.col,
                "expected a residue (`0` or `a+b`)",
            );
            return None;
        }
        if value.text == "0" {
            return Some(ResidueClass::zero());
        }
        let mut names = Vec::new();
        for part in value.text.split('+') {
            let t = Tok::trimmed(raw, part);
            if !is_identifier(t.text) {
                let col = if t.text.is_empty() {
                    Tok::within(raw, part).col
                } else {
                    t.col
                };
                self.diag(
                    DiagnosticKind::Syntax,
                    n,
                    col,
                    format!("invalid residue term `{}`", t.text),
                );
                return None;
            }
            self.symbol_uses
                .push((t.text.to_string(), SourceSpan::new(n, t.col)));
            names.push(t.text);
        }
        Some(ResidueClass::from_symbols(names))
    }

    fn id_list(&mut self, n: usize, raw: &str, value: Tok) -> Option<Vec<(String, SourceSpan)>> {
        let mut out = Vec::new();
        for part in value.text.split(',') {
            let t = Tok::trimmed(raw, part);
            if !is_identifier(t.text) {
                let col = if t.text.is_empty() {
                    Tok::within(raw, part).col
                } else {
                    t.col
                };
                self.diag(
                    DiagnosticKind::Syntax,
                    n,
                    col,
                    format!("invalid identifier `{}`", t.text),
                );
                return None;
            }
            out.push((t.text.to_string(), SourceSpan::new(n, t.col)));
        }
        Some(out)
    }

    fn curve_property(&mut self, n: usize, raw: &str, key: Tok, head: &[Tok], value: Tok) {
        if let Some(Block::Curve(c)) = self.blocks.last_mut() {
            c.seen.push(key.text.to_string());
        }
        if key.text == "ext" {
            self.extension_line(n, raw, key, head, value);
            return;
        }
        if !matches!(key.text, "type" | "cover" | "mark" | "cores") {
            self.diag(
                DiagnosticKind::UnknownKeyword,
                n,
                key.col,
                format!("unknown curve property `{}`", key.text),
            );
            return;
        }
        if !self.expect_single_head(n, head) {
            return;
        }
        let cores = if key.text == "cores" {
            match self.residue(n, raw, value) {
                Some(r) => Some(r),
                None => return,
            }
        } else {
            None
        };
        let mut error = None;
        let Some(Block::Curve(c)) = self.blocks.last_mut() else {
            unreachable!("caller checked the block kind");
        };
        let duplicate = match key.text {
            "type" => match value.text.parse::<DegType>() {
                Ok(t) => c.deg_type.replace(t).is_some(),
                Err(()) => {
                    error = Some((
                        value.col,
                        format!("expected I, II, III or IV, found `{}`", value.text),
                    ));
                    false
                }
            },
            "cover" => match value.text.parse::<CoverBehavior>() {
                Ok(b) => c.cover.replace(b).is_some(),
                Err(()) => {
                    error = Some((
                        value.col,
                        format!("expected inert, split or ramified, found `{}`", value.text),
                    ));
                    false
                }
            },
            "mark" => {
                if is_identifier(value.text) {
                    c.marking
                        .replace((value.text.to_string(), SourceSpan::new(n, value.col)))
                        .is_some()
                } else {
                    error = Some((value.col, format!("invalid identifier `{}`", value.text)));
                    false
                }
            }
            _ => c.cores.replace(cores.expect("parsed above")).is_some(),
        };
        if let Some((col, msg)) = error {
            self.diag(DiagnosticKind::Syntax, n, col, msg);
        } else if duplicate {
            self.diag(
                DiagnosticKind::Syntax,
                n,
                key.col,
                format!("duplicate `{}` property", key.text),
            );
        }
    }

    fn extension_line(&mut self, n: usize, raw: &str, key: Tok, head: &[Tok], value: Tok) {
        let (id, sheet) = match head {
            [_, id] => (id, None),
            [_, id, sheet] => (id, Some(sheet)),
            [_] => {
                self.diag(
                    DiagnosticKind::Syntax,
                    n,
                    key.col,
                    "`ext` needs an identifier",
                );
                return;
            }
            [_, _, _, extra, ..] => {
                self.diag(
                    DiagnosticKind::Syntax,
                    n,
                    extra.col,
                    format!("unexpected `{}`", extra.text),
                );
                return;
            }
            [] => unreachable!("head has at least the key"),
        };
        if !is_identifier(id.text) {
            self.diag(
                DiagnosticKind::Syntax,
                n,
                id.col,
                format!("invalid identifier `{}`", id.text),
            );
            return;
        }
        let sheet = match sheet {
            None => None,
            Some(t) => match t
                .text
                .strip_prefix("sheet=")
                .and_then(|s| s.parse::<u8>().ok())
                .and_then(Sheet::from_number)
            {
                Some(s) => Some(s),
                None => {
                    self.diag(
                        DiagnosticKind::Syntax,
                        n,
                        t.col,
                        format!("expected `sheet=1` or `sheet=2`, found `{}`", t.text),
                    );
                    return;
                }
            },
        };
        let Some(residue) = self.residue(n, raw, value) else {
            return;
        };
        let Some(Block::Curve(c)) = self.blocks.last_mut() else {
            unreachable!("caller checked the block kind");
        };
        if c.extensions.len() == 2 {
            self.diag(
                DiagnosticKind::Syntax,
                n,
                key.col,
                "a curve has at most two extensions",
            );
            return;
        }
        c.extensions.push((
            Extension {
                id: id.text.to_string(),
                sheet,
                residue,
            },
            SourceSpan::new(n, id.col),
        ));
    }

    fn point_property(&mut self, n: usize, raw: &str, key: Tok, head: &[Tok], value: Tok) {
        if let Some(Block::Point(p)) = self.blocks.last_mut() {
            p.seen.push(key.text.to_string());
        }
        if !matches!(key.text, "curves" | "etype" | "meets_marked") {
            self.diag(
                DiagnosticKind::UnknownKeyword,
                n,
                key.col,
                format!("unknown point property `{}`", key.text),
            );
            return;
        }
        if !self.expect_single_head(n, head) {
            return;
        }
        let list = if key.text == "etype" {
            None
        } else {
            match self.id_list(n, raw, value) {
                Some(l) => Some(l),
                None => return,
            }
        };
        let mut error = None;
        let Some(Block::Point(p)) = self.blocks.last_mut() else {
            unreachable!("caller checked the block kind");
        };
        let duplicate = match key.text {
            "etype" => match value.text.parse::<PointType>() {
                Ok(t) => p.etype.replace(t).is_some(),
                Err(()) => {
                    error = Some((value.col, format!("unknown etype `{}`", value.text)));
                    false
                }
            },
            "curves" => match <[(String, SourceSpan); 2]>::try_from(list.expect("parsed above")) {
                Ok(pair) => p.curves.replace(pair).is_some(),
                Err(v) => {
                    error = Some((value.col, format!("expected two curves, found {}", v.len())));
                    false
                }
            },
            _ => {
                let dup = !p.meets_marked.is_empty();
                p.meets_marked = list.expect("parsed above");
                dup
            }
        };
        if let Some((col, msg)) = error {
            self.diag(DiagnosticKind::Syntax, n, col, msg);
        } else if duplicate {
            self.diag(
                DiagnosticKind::Syntax,
                n,
                key.col,
                format!("duplicate `{}` property", key.text),
            );
        }
    }

    fn finish(mut self) -> Result<Configuration, ParseErrors> {
        let start = SourceSpan::new(1, 1);
        if !self.cover_seen {
            self.diagnostics.push(Diagnostic {
                kind: DiagnosticKind::Missing,
                span: start,
                message: "missing cover".to_string(),
            });
        }
        let symbols = match self.symbols.take() {
            Some(s) => s,
            None => {
                self.diagnostics.push(Diagnostic {
                    kind: DiagnosticKind::Missing,
                    span: start,
                    message: "missing symbols".to_string(),
                });
                Vec::new()
            }
        };

        let mut declared: HashMap<&str, SourceSpan> = HashMap::new();
        let mut dups = Vec::new();
        for (s, span) in &symbols {
            if declared.insert(s, *span).is_some() {
                dups.push(Diagnostic {
                    kind: DiagnosticKind::DuplicateId,
                    span: *span,
                    message: format!("symbol `{s}` declared twice"),
                });
            }
        }
        for (s, span) in &self.symbol_uses {
            if !declared.contains_key(s.as_str()) {
                dups.push(Diagnostic {
                    kind: DiagnosticKind::UnresolvedReference,
                    span: *span,
                    message: format!("undeclared symbol `{s}`"),
                });
            }
        }

        let mut ids: HashMap<String, SourceSpan> = HashMap::new();
        let mut curve_ids = HashMap::new();
        let mut ext_ids = HashMap::new();
        for b in &self.blocks {
            let mut entries = Vec::new();
            match b {
                Block::Curve(c) => {
                    entries.push((c.id.clone(), c.span));
                    curve_ids.insert(c.id.clone(), ());
                    for (e, span) in &c.extensions {
                        entries.push((e.id.clone(), *span));
                        ext_ids.insert(e.id.clone(), ());
                    }
                }
                Block::Point(p) => entries.push((p.id.clone(), p.span)),
            }
            for (id, span) in entries {
                if let Some(first) = ids.get(&id) {
                    dups.push(Diagnostic {
                        kind: DiagnosticKind::DuplicateId,
                        span,
                        message: format!("`{id}` already declared at {first}"),
                    });
                } else {
                    ids.insert(id, span);
                }
            }
        }
        self.diagnostics.extend(dups);

        let mut curves = Vec::new();
        let mut points = Vec::new();
        for b in std::mem::take(&mut self.blocks) {
            match b {
                Block::Curve(c) => {
                    if let Some(curve) = self.finish_curve(c) {
                        curves.push(curve);
                    }
                }
                Block::Point(p) => {
                    if let Some(point) = self.finish_point(p, &curve_ids, &ext_ids) {
                        points.push(point);
                    }
                }
            }
        }

        if !self.diagnostics.is_empty() {
            self.diagnostics.sort_by_key(|d| d.span);
            return Err(ParseErrors {
                diagnostics: self.diagnostics,
            });
        }
        Ok(Configuration {
            cover_kind: self.cover.expect("checked above"),
            symbols: symbols.into_iter().map(|(s, _)| s).collect(),
            curves,
            points,
        })
    }

    fn missing(&mut self, span: SourceSpan, message: String) {
        self.diagnostics.push(Diagnostic {
            kind: DiagnosticKind::Missing,
            span,
            message,
        });
    }

    fn finish_curve(&mut self, c: CurveDraft) -> Option<Curve> {
        if c.deg_type.is_none() && !c.seen.iter().any(|k| k == "type") {
            self.missing(c.span, format!("curve `{}` has no `type`", c.id));
        }
        if c.cover.is_none() && !c.seen.iter().any(|k| k == "cover") {
            self.missing(c.span, format!("curve `{}` has no `cover`", c.id));
        }
        if c.extensions.is_empty() && !c.seen.iter().any(|k| k == "ext") {
            self.missing(c.span, format!("curve `{}` has no `ext`", c.id));
        }
        if let Some((m, span)) = &c.marking {
            if !c.extensions.iter().any(|(e, _)| &e.id == m) {
                self.diagnostics.push(Diagnostic {
                    kind: DiagnosticKind::UnresolvedReference,
                    span: *span,
                    message: format!("marking `{m}` is not an extension of curve `{}`", c.id),
                });
            }
        }
        Some(Curve {
            id: c.id,
            deg_type: c.deg_type?,
            cover: c.cover?,
            extensions: c.extensions.into_iter().map(|(e, _)| e).collect(),
            marking: c.marking.map(|(m, _)| m),
            cores_input: c.cores,
        })
    }

    fn finish_point(
        &mut self,
        p: PointDraft,
        curve_ids: &HashMap<String, ()>,
        ext_ids: &HashMap<String, ()>,
    ) -> Option<SingularPoint> {
        if p.curves.is_none() && !p.seen.iter().any(|k| k == "curves") {
            self.missing(p.span, format!("point `{}` has no `curves`", p.id));
        }
        if p.etype.is_none() && !p.seen.iter().any(|k| k == "etype") {
            self.missing(p.span, format!("point `{}` has no `etype`", p.id));
        }
        for (c, span) in p.curves.iter().flatten() {
            if !curve_ids.contains_key(c) {
                self.diagnostics.push(Diagnostic {
                    kind: DiagnosticKind::UnresolvedReference,
                    span: *span,
                    message: format!("undeclared curve `{c}`"),
                });
            }
        }
        for (e, span) in &p.meets_marked {
            if !ext_ids.contains_key(e) {
                self.diagnostics.push(Diagnostic {
                    kind: DiagnosticKind::UnresolvedReference,
                    span: *span,
                    message: format!("undeclared extension `{e}`"),
                });
            }
        }
        let [(a, _), (b, _)] = p.curves?;
        Some(SingularPoint {
            id: p.id,
            incident: (a, b),
            etype: p.etype?,
            meets_marked: p.meets_marked.into_iter().map(|(e, _)| e).collect(),
        })
    }
}

/// Parses a configuration, collecting every diagnostic found.
pub fn parse(text: &str) -> Result<Configuration, ParseErrors> {
    let mut parser = Parser::default();
    for (i, line) in text.split('\n').enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        parser.line(i + 1, line);
    }
    parser.finish()
}

/// Canonical text for a configuration; LF line endings, no comments.
pub fn emit(cfg: &Configuration) -> String {
    let mut out = String::new();
    out.push_str(&format!("cover: {}\n", cfg.cover_kind.as_str()));
    if cfg.symbols.is_empty() {
        out.push_str("symbols:\n");
    } else {
        out.push_str(&format!("symbols: {}\n", cfg.symbols.join(" ")));
    }
    for c in &cfg.curves {
        out.push_str(&format!("\ncurve {}:\n", c.id));
        out.push_str(&format!("  type: {}\n", c.deg_type.as_str()));
        out.push_str(&format!("  cover: {}\n", c.cover.as_str()));
        for e in &c.extensions {
            let sheet = e
                .sheet
                .map(|s| format!(" sheet={}", s.number()))
                .unwrap_or_default();
            out.push_str(&format!(
                "  ext {}{}: {}\n",
                e.id,
                sheet,
                e.residue.render(&cfg.symbols)
            ));
        }
        if let Some(m) = &c.marking {
            out.push_str(&format!("  mark: {m}\n"));
        }
        if let Some(r) = &c.cores_input {
            out.push_str(&format!("  cores: {}\n", r.render(&cfg.symbols)));
        }
    }
    for p in &cfg.points {
        out.push_str(&format!("\npoint {}:\n", p.id));
        out.push_str(&format!("  curves: {}, {}\n", p.incident.0, p.incident.1));
        out.push_str(&format!("  etype: {}\n", p.etype.as_str()));
        if !p.meets_marked.is_empty() {
            out.push_str(&format!("  meets_marked: {}\n", p.meets_marked.join(", ")));
        }
    }
    out
}

/// Quadric surface bundle over the plane blown up six times: four Type I
/// curves, three split Type II coordinate axes meeting pairwise.
pub const HPT_SOURCE: &str = "\
cover: irreducible
symbols: a b c

curve C':
  type: I
  cover: ramified
  ext C'_T: 0

curve D'_x:
  type: I
  cover: ramified
  ext D'_x_T: 0

curve D'_y:
  type: I
  cover: ramified
  ext D'_y_T: 0

curve D'_z:
  type: I
  cover: ramified
  ext D'_z_T: 0

curve x_axis:
  type: II
  cover: split
  ext e_xyz: a
  ext e_xzy: a

curve y_axis:
  type: II
  cover: split
  ext e_yxz: b
  ext e_yzx: b

curve z_axis:
  type: II
  cover: split
  ext e_zxy: c
  ext e_zyx: c

point p100:
  curves: y_axis, z_axis
  etype: II_II

point p010:
  curves: x_axis, z_axis
  etype: II_II

point p001:
  curves: x_axis, y_axis
  etype: II_II
";

/// Disjoint smooth Type I quartic and split Type II cubic.
pub const CUBIC_QUARTIC_SOURCE: &str = "\
cover: irreducible
symbols: d

curve quartic:
  type: I
  cover: ramified
  ext quartic_T: 0

curve cubic:
  type: II
  cover: split
  ext cubic_1: d
  ext cubic_2: d
";

pub const BUILTIN_NAMES: [&str; 2] = ["hpt", "cubic-quartic"];

pub fn builtin_source(name: &str) -> Result<&'static str, UnknownBuiltin> {
    match name {
        "hpt" => Ok(HPT_SOURCE),
        "cubic-quartic" => Ok(CUBIC_QUARTIC_SOURCE),
        other => Err(UnknownBuiltin(other.to_string())),
    }
}

pub fn builtin(name: &str) -> Result<Configuration, UnknownBuiltin> {
    let source = builtin_source(name)?;
    Ok(parse(source).expect("built-in sources parse"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn errors(text: &str) -> Vec<Diagnostic> {
        parse(text)
            .expect_err("input should be rejected")
            .diagnostics
    }

    #[test]
    fn hpt_shape() {
        let cfg = builtin("hpt").unwrap();
        assert_eq!(cfg.curves.len(), 7);
        assert_eq!(cfg.points.len(), 3);
        assert_eq!(cfg.symbols, vec!["a", "b", "c"]);
        assert_eq!(emit(&cfg), HPT_SOURCE);
    }

    #[test]
    fn cubic_quartic_round_trips() {
        let cfg = builtin("cubic-quartic").unwrap();
        assert_eq!(emit(&cfg), CUBIC_QUARTIC_SOURCE);
        assert!(builtin("klein").is_err());
    }

    #[test]
    fn empty_input_is_missing_cover() {
        let d = errors("");
        assert!(d.iter().any(|d| d.message == "missing cover"));
        assert!(d.iter().all(|d| d.span == SourceSpan::new(1, 1)));
    }

    #[test]
    fn residues_cancel() {
        let cfg = parse(
            "cover: irreducible\nsymbols: a b\ncurve c:\n  type: II\n  cover: inert\n  ext e: a+b+a\n",
        )
        .unwrap();
        assert_eq!(
            cfg.curves[0].extensions[0].residue,
            ResidueClass::symbol("b")
        );
    }

    #[test]
    fn crlf_and_comments() {
        let text = "# header\r\ncover: split # trailing\r\nsymbols: a\r\n\r\ncurve c:\r\n  type: II\r\n  cover: split\r\n  ext e1 sheet=1: a\r\n  ext e2 sheet=2: 0\r\n";
        let cfg = parse(text).unwrap();
        assert_eq!(cfg.cover_kind, CoverKind::SplitEverywhere);
        assert_eq!(cfg.curves[0].extensions[1].sheet, Some(Sheet::Second));
    }

    #[test]
    fn empty_configuration_emits_header_only() {
        let cfg = Configuration::new(CoverKind::Irreducible);
        assert_eq!(emit(&cfg), "cover: irreducible\nsymbols:\n");
        assert_eq!(parse(&emit(&cfg)).unwrap(), cfg);
    }

    #[test]
    fn unknown_keyword_span() {
        let d = errors("cover: irreducible\nsymbols: a\nbogus: 1\n");
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].kind, DiagnosticKind::UnknownKeyword);
        assert_eq!(d[0].span, SourceSpan::new(3, 1));
    }

    #[test]
    fn unresolved_references() {
        let text = "\
cover: irreducible
symbols: a
curve c:
  type: IV
  cover: inert
  ext e: q
  mark: f
point p:
  curves: c, nowhere
  etype: IV_II
  meets_marked: zz
";
        let d = errors(text);
        let spans: Vec<(DiagnosticKind, SourceSpan)> = d.iter().map(|d| (d.kind, d.span)).collect();
        assert_eq!(
            spans,
            vec![
                (DiagnosticKind::UnresolvedReference, SourceSpan::new(6, 10)),
                (DiagnosticKind::UnresolvedReference, SourceSpan::new(7, 9)),
                (DiagnosticKind::UnresolvedReference, SourceSpan::new(9, 14)),
                (DiagnosticKind::UnresolvedReference, SourceSpan::new(11, 17)),
            ]
        );
    }

    #[test]
    fn duplicate_ids_are_reported_at_second_site() {
        let text = "\
cover: irreducible
symbols: a a
curve c:
  type: I
  cover: ramified
  ext c: 0
";
        let d = errors(text);
        assert!(d
            .iter()
            .any(|d| d.kind == DiagnosticKind::DuplicateId && d.span == SourceSpan::new(2, 12)));
        assert!(d
            .iter()
            .any(|d| d.kind == DiagnosticKind::DuplicateId && d.span == SourceSpan::new(6, 7)));
    }

    #[test]
    fn syntax_errors() {
        let cases = [
            ("cover: irreducible\nsymbols: a\ncurve c\n", SourceSpan::new(3, 1)),
            ("cover: sideways\nsymbols: a\n", SourceSpan::new(1, 8)),
            ("cover: irreducible\nsymbols: a\n  type: I\n", SourceSpan::new(3, 3)),
            (
                "cover: irreducible\nsymbols: a\ncurve c:\n  type: V\n  cover: ramified\n  ext e: 0\n",
                SourceSpan::new(4, 9),
            ),
            (
                "cover: irreducible\nsymbols: a\ncurve c:\n  type: II\n  cover: split\n  ext e1 sheet=3: a\n  ext e2: a\n",
                SourceSpan::new(6, 10),
            ),
            (
                "cover: irreducible\nsymbols: a\ncurve c:\n  type: II\n  cover: split\n  ext e1: a+\n  ext e2: a\n",
                SourceSpan::new(6, 13),
            ),
        ];
        for (text, span) in cases {
            let d = errors(text);
            assert_eq!(d[0].kind, DiagnosticKind::Syntax, "{text}");
            assert_eq!(d[0].span, span, "{text}");
        }
    }

    #[test]
    fn too_many_extensions() {
        let text = "cover: irreducible\nsymbols: a\ncurve c:\n  type: II\n  cover: split\n  ext e1: a\n  ext e2: a\n  ext e3: a\n";
        let d = errors(text);
        assert_eq!(d[0].span, SourceSpan::new(8, 3));
    }

    #[test]
    fn missing_block_fields() {
        let d = errors("cover: irreducible\nsymbols: a\npoint p:\n  etype: II_II\n");
        assert_eq!(d[0].kind, DiagnosticKind::Missing);
        assert_eq!(d[0].span, SourceSpan::new(3, 7));
    }

    #[test]
    fn columns_count_characters() {
        let d = errors(
            "cover: irreducible\nsymbols: α\ncurve c:\n  type: II\n  cover: inert\n  ext e: β\n",
        );
        assert_eq!(d[0].span, SourceSpan::new(6, 10));
    }
}
