use std::collections::{HashMap, HashSet};
use std::fmt;

use super::{
    cores_residue, Configuration, CoverBehavior, CoverKind, Curve, DegType, PointType,
    ResidueClass, Sheet, SingularPoint,
};
use crate::brauer::geometric_checks;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IssueCode {
    DuplicateId,
    UndeclaredSymbol,
    DuplicateSymbol,
    CoverMismatch,
    ExtensionCount,
    TypeOneResidue,
    MissingMarking,
    BadMarking,
    UnmarkedResidue,
    SplitCoverCurve,
    SheetMissing,
    SheetUnexpected,
    SheetRepeated,
    CoresOnSplit,
    UnknownCurve,
    SelfCrossing,
    ForbiddenPair,
    PointTypeMismatch,
    MeetsMarked,
    /// Image of the quotient space is nonzero in the crossing-point space.
    Gc1,
    /// Images of the restriction kernel and the quotient space meet.
    Gc2,
    /// Restriction-kernel image is not annihilated by the crossing-point map.
    Gc3,
    /// One of the two inclusions into the extension space is not injective.
    Gc4,
    // warnings
    UnramifiedTypeTwo,
    ZeroRamification,
    CoresDefaulted,
    CoresMismatch,
    InertTypeFour,
}

impl IssueCode {
    pub fn as_str(self) -> &'static str {
        match self {
            IssueCode::DuplicateId => "duplicate-id",
            IssueCode::UndeclaredSymbol => "undeclared-symbol",
            IssueCode::DuplicateSymbol => "duplicate-symbol",
            IssueCode::CoverMismatch => "cover-mismatch",
            IssueCode::ExtensionCount => "extension-count",
            IssueCode::TypeOneResidue => "type-i-residue",
            IssueCode::MissingMarking => "missing-marking",
            IssueCode::BadMarking => "bad-marking",
            IssueCode::UnmarkedResidue => "unmarked-residue",
            IssueCode::SplitCoverCurve => "split-cover-curve",
            IssueCode::SheetMissing => "sheet-missing",
            IssueCode::SheetUnexpected => "sheet-unexpected",
            IssueCode::SheetRepeated => "sheet-repeated",
            IssueCode::CoresOnSplit => "cores-on-split",
            IssueCode::UnknownCurve => "unknown-curve",
            IssueCode::SelfCrossing => "self-crossing",
            IssueCode::ForbiddenPair => "forbidden-pair",
            IssueCode::PointTypeMismatch => "point-type-mismatch",
            IssueCode::MeetsMarked => "meets-marked",
            IssueCode::Gc1 => "GC1",
            IssueCode::Gc2 => "GC2",
            IssueCode::Gc3 => "GC3",
            IssueCode::Gc4 => "GC4",
            IssueCode::UnramifiedTypeTwo => "unramified-type-ii",
            IssueCode::ZeroRamification => "zero-ramification",
            IssueCode::CoresDefaulted => "cores-defaulted",
            IssueCode::CoresMismatch => "cores-mismatch",
            IssueCode::InertTypeFour => "inert-type-iv",
        }
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Issue {
    pub code: IssueCode,
    pub message: String,
    pub id: Option<String>,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.id {
            Some(id) => write!(f, "[{}] {}: {}", self.code, id, self.message),
            None => write!(f, "[{}] {}", self.code, self.message),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn has_error(&self, code: IssueCode) -> bool {
        self.errors.iter().any(|i| i.code == code)
    }

    pub fn has_warning(&self, code: IssueCode) -> bool {
        self.warnings.iter().any(|i| i.code == code)
    }

    fn error(&mut self, code: IssueCode, id: &str, message: impl Into<String>) {
        self.errors.push(Issue {
            code,
            message: message.into(),
            id: Some(id.to_string()),
        });
    }

    fn warn(&mut self, code: IssueCode, id: &str, message: impl Into<String>) {
        self.warnings.push(Issue {
            code,
            message: message.into(),
            id: Some(id.to_string()),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.errors {
            writeln!(f, "error {e}")?;
        }
        for w in &self.warnings {
            writeln!(f, "warning {w}")?;
        }
        write!(
            f,
            "{} error(s), {} warning(s)",
            self.errors.len(),
            self.warnings.len()
        )
    }
}

/// Checks every structural rule, then (if those pass) the geometric
/// consistency conditions GC1-GC4. Problems are collected, never thrown.
pub fn validate(cfg: &Configuration) -> ValidationReport {
    let mut report = ValidationReport::default();
    check_ids(cfg, &mut report);
    for curve in &cfg.curves {
        check_curve(cfg, curve, &mut report);
    }
    for point in &cfg.points {
        check_point(cfg, point, &mut report);
    }
    if report.errors.is_empty() {
        let gc = geometric_checks(cfg);
        if !gc.gc1 {
            report.errors.push(global(
                IssueCode::Gc1,
                "a relation from a base curve has nonzero image in the crossing-point space",
            ));
        }
        if !gc.gc2 {
            report.errors.push(global(
                IssueCode::Gc2,
                "images of the restriction kernel and the base-curve relations intersect",
            ));
        }
        if !gc.gc3 {
            report.errors.push(global(
                IssueCode::Gc3,
                "image of the restriction kernel violates a crossing-point condition",
            ));
        }
        if !gc.gc4 {
            report.errors.push(global(
                IssueCode::Gc4,
                "map into the ramified-extension space is not injective",
            ));
        }
    }
    report
}

fn global(code: IssueCode, message: &str) -> Issue {
    Issue {
        code,
        message: message.to_string(),
        id: None,
    }
}

fn check_ids(cfg: &Configuration, report: &mut ValidationReport) {
    let mut seen_symbols = HashSet::new();
    for s in &cfg.symbols {
        if !seen_symbols.insert(s.as_str()) {
            report.error(IssueCode::DuplicateSymbol, s, "symbol declared twice");
        }
    }
    let ids = cfg
        .curves
        .iter()
        .flat_map(|c| std::iter::once(&c.id).chain(c.extensions.iter().map(|e| &e.id)))
        .chain(cfg.points.iter().map(|p| &p.id));
    let mut seen = HashSet::new();
    for id in ids {
        if !seen.insert(id.as_str()) {
            report.error(
                IssueCode::DuplicateId,
                id,
                "identifier declared more than once",
            );
        }
    }
}

fn check_residue(
    cfg: &Configuration,
    owner: &str,
    residue: &ResidueClass,
    report: &mut ValidationReport,
) {
    for s in residue.symbols() {
        if !cfg.symbols.iter().any(|d| d == s) {
            report.error(
                IssueCode::UndeclaredSymbol,
                owner,
                format!("residue uses undeclared symbol `{s}`"),
            );
        }
    }
}

fn check_curve(cfg: &Configuration, c: &Curve, report: &mut ValidationReport) {
    let id = c.id.as_str();
    for e in &c.extensions {
        check_residue(cfg, &e.id, &e.residue, report);
    }
    if let Some(r) = &c.cores_input {
        check_residue(cfg, id, r, report);
    }

    let cover_ok = match c.deg_type {
        DegType::I | DegType::III => c.cover == CoverBehavior::Ramified,
        DegType::II | DegType::IV => c.cover != CoverBehavior::Ramified,
    };
    if !cover_ok {
        report.error(
            IssueCode::CoverMismatch,
            id,
            format!(
                "Type {} curve cannot be {} in the cover",
                c.deg_type.as_str(),
                c.cover.as_str()
            ),
        );
    }

    let expected = if c.cover == CoverBehavior::Split {
        2
    } else {
        1
    };
    if c.extensions.len() != expected {
        report.error(
            IssueCode::ExtensionCount,
            id,
            format!(
                "{} curve needs {expected} extension(s), found {}",
                c.cover.as_str(),
                c.extensions.len()
            ),
        );
    }

    if c.deg_type == DegType::I && c.extensions.iter().any(|e| !e.residue.is_zero()) {
        report.error(
            IssueCode::TypeOneResidue,
            id,
            "the Brauer class is unramified over Type I curves",
        );
    }

    match (&c.marking, c.deg_type) {
        (None, DegType::IV) => report.error(
            IssueCode::MissingMarking,
            id,
            "Type IV curve needs a marking",
        ),
        (Some(m), DegType::IV) => {
            if c.extension(m).is_none() {
                report.error(
                    IssueCode::BadMarking,
                    id,
                    format!("marking `{m}` is not an extension of this curve"),
                );
            }
            for e in c.extensions.iter().filter(|e| &e.id != m) {
                if !e.residue.is_zero() {
                    report.error(
                        IssueCode::UnmarkedResidue,
                        &e.id,
                        "non-marked extension over a Type IV curve must have zero residue",
                    );
                }
            }
        }
        (Some(_), _) => report.error(
            IssueCode::BadMarking,
            id,
            "only Type IV curves carry a marking",
        ),
        (None, _) => {}
    }

    if c.cover == CoverBehavior::Split && c.cores_input.is_some() {
        report.error(
            IssueCode::CoresOnSplit,
            id,
            "corestricted residue of a split curve is the sum of its extension residues",
        );
    }

    match cfg.cover_kind {
        CoverKind::SplitEverywhere => {
            if c.cover != CoverBehavior::Split {
                report.error(
                    IssueCode::SplitCoverCurve,
                    id,
                    "every curve is split when the cover is split everywhere",
                );
            }
            for e in &c.extensions {
                if e.sheet.is_none() {
                    report.error(IssueCode::SheetMissing, &e.id, "extension needs a sheet");
                }
            }
            let sheets: Vec<Sheet> = c.extensions.iter().filter_map(|e| e.sheet).collect();
            if sheets.len() == 2 && sheets[0] == sheets[1] {
                report.error(
                    IssueCode::SheetRepeated,
                    id,
                    "the two extensions must lie on different sheets",
                );
            }
        }
        CoverKind::Irreducible => {
            for e in c.extensions.iter().filter(|e| e.sheet.is_some()) {
                report.error(
                    IssueCode::SheetUnexpected,
                    &e.id,
                    "sheets are only meaningful for a split-everywhere cover",
                );
            }
        }
    }

    // warnings
    if c.deg_type == DegType::II && c.extensions.iter().all(|e| e.residue.is_zero()) {
        report.warn(
            IssueCode::UnramifiedTypeTwo,
            id,
            "Brauer class has zero residue along every extension of this Type II curve",
        );
    }
    match c.deg_type {
        DegType::III => {
            if c.extensions.iter().any(|e| e.residue.is_zero()) {
                report.warn(
                    IssueCode::ZeroRamification,
                    id,
                    "Brauer class should be ramified over a Type III curve",
                );
            }
            if let Some(e) = c.extensions.first() {
                if cores_residue(c) != e.residue {
                    report.warn(
                        IssueCode::CoresMismatch,
                        id,
                        "corestricted residue of a ramified curve normally equals the extension residue",
                    );
                }
            }
        }
        DegType::IV => {
            if let Some(m) = c.marking.as_deref().and_then(|m| c.extension(m)) {
                if m.residue.is_zero() {
                    report.warn(
                        IssueCode::ZeroRamification,
                        id,
                        "Brauer class should be ramified at the marked extension",
                    );
                }
            }
            if c.cover == CoverBehavior::Inert {
                report.warn(
                    IssueCode::InertTypeFour,
                    id,
                    "inert Type IV curve: corestricted residue is used for its contribution",
                );
            }
        }
        _ => {}
    }
    if c.cover == CoverBehavior::Inert
        && c.cores_input.is_none()
        && c.extensions.iter().any(|e| !e.residue.is_zero())
    {
        report.warn(
            IssueCode::CoresDefaulted,
            id,
            "no corestricted residue given for an inert curve; assuming zero",
        );
    }
}

fn check_point(cfg: &Configuration, p: &SingularPoint, report: &mut ValidationReport) {
    let id = p.id.as_str();
    let (a, b) = (&p.incident.0, &p.incident.1);
    if a == b {
        report.error(
            IssueCode::SelfCrossing,
            id,
            "a point must join two distinct curves",
        );
    }
    let lookup: HashMap<&str, &Curve> = cfg.curves.iter().map(|c| (c.id.as_str(), c)).collect();
    let mut curves = Vec::new();
    for name in [a, b] {
        match lookup.get(name.as_str()) {
            Some(c) => curves.push(*c),
            None => report.error(
                IssueCode::UnknownCurve,
                id,
                format!("point references undeclared curve `{name}`"),
            ),
        }
    }

    if !p.meets_marked.is_empty() && p.etype != PointType::FourTwo {
        report.error(
            IssueCode::MeetsMarked,
            id,
            "meets_marked is only allowed at IV_II points",
        );
    }

    let [c1, c2] = curves[..] else {
        return;
    };
    let pair = sorted_pair(c1.deg_type, c2.deg_type);
    let allowed = PointType::ALL.iter().any(|t| {
        let (x, y) = t.curve_types();
        sorted_pair(x, y) == pair
    });
    if !allowed {
        report.error(
            IssueCode::ForbiddenPair,
            id,
            format!(
                "Type {} and Type {} curves cannot cross",
                c1.deg_type.as_str(),
                c2.deg_type.as_str()
            ),
        );
        return;
    }
    let (x, y) = p.etype.curve_types();
    if sorted_pair(x, y) != pair {
        report.error(
            IssueCode::PointTypeMismatch,
            id,
            format!(
                "etype {} does not match crossing of Type {} and Type {}",
                p.etype.as_str(),
                c1.deg_type.as_str(),
                c2.deg_type.as_str()
            ),
        );
        return;
    }
    if p.etype == PointType::FourTwo {
        let two = if c1.deg_type == DegType::II { c1 } else { c2 };
        for e in &p.meets_marked {
            if two.extension(e).is_none() {
                report.error(
                    IssueCode::MeetsMarked,
                    id,
                    format!(
                        "`{e}` is not an extension of the Type II curve `{}`",
                        two.id
                    ),
                );
            }
        }
    }
}

fn sorted_pair(a: DegType, b: DegType) -> (DegType, DegType) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}
