//! Combinatorial description of a simple involution surface bundle.
//!
//! A [`Configuration`] lists the degeneration curves of the base surface,
//! how each one behaves in the discriminant double cover, the residues of
//! the Brauer class on the cover along each curve, and the crossing points
//! of the degeneration divisor. Declaration order is significant: it fixes
//! the basis order of every vector space built from the configuration.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

mod validate;

pub use validate::{validate, Issue, IssueCode, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverKind {
    /// The discriminant extension is a field.
    Irreducible,
    /// The discriminant extension is `K x K`; every curve is split.
    SplitEverywhere,
}

impl CoverKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverKind::Irreducible => "irreducible",
            CoverKind::SplitEverywhere => "split",
        }
    }
}

/// Geometric degeneration type of the fibers over a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DegType {
    I,
    II,
    III,
    IV,
}

impl DegType {
    pub fn as_str(self) -> &'static str {
        match self {
            DegType::I => "I",
            DegType::II => "II",
            DegType::III => "III",
            DegType::IV => "IV",
        }
    }
}

impl FromStr for DegType {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "I" => Ok(DegType::I),
            "II" => Ok(DegType::II),
            "III" => Ok(DegType::III),
            "IV" => Ok(DegType::IV),
            _ => Err(()),
        }
    }
}

/// How a curve of the base behaves in the double cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoverBehavior {
    Inert,
    Split,
    Ramified,
}

impl CoverBehavior {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverBehavior::Inert => "inert",
            CoverBehavior::Split => "split",
            CoverBehavior::Ramified => "ramified",
        }
    }
}

impl FromStr for CoverBehavior {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "inert" => Ok(CoverBehavior::Inert),
            "split" => Ok(CoverBehavior::Split),
            "ramified" => Ok(CoverBehavior::Ramified),
            _ => Err(()),
        }
    }
}

/// Sheet of `S ⊔ S` an extension lives on, for split-everywhere covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sheet {
    First,
    Second,
}

impl Sheet {
    pub fn number(self) -> u8 {
        match self {
            Sheet::First => 1,
            Sheet::Second => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Sheet> {
        match n {
            1 => Some(Sheet::First),
            2 => Some(Sheet::Second),
            _ => None,
        }
    }
}

/// Étale-local type of the bundle over a crossing point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PointType {
    OneTwo,
    TwoTwo,
    ThreeTwo,
    FourTwo,
    /// The primed (IV, IV) type.
    FourFourPrime,
    /// The double-primed (IV, IV) type.
    FourFourDoublePrime,
}

impl PointType {
    pub const ALL: [PointType; 6] = [
        PointType::OneTwo,
        PointType::TwoTwo,
        PointType::ThreeTwo,
        PointType::FourTwo,
        PointType::FourFourPrime,
        PointType::FourFourDoublePrime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PointType::OneTwo => "I_II",
            PointType::TwoTwo => "II_II",
            PointType::ThreeTwo => "III_II",
            PointType::FourTwo => "IV_II",
            PointType::FourFourPrime => "IVp_IV",
            PointType::FourFourDoublePrime => "IVpp_IV",
        }
    }

    /// The unordered pair of degeneration types meeting at such a point.
    pub fn curve_types(self) -> (DegType, DegType) {
        match self {
            PointType::OneTwo => (DegType::I, DegType::II),
            PointType::TwoTwo => (DegType::II, DegType::II),
            PointType::ThreeTwo => (DegType::III, DegType::II),
            PointType::FourTwo => (DegType::IV, DegType::II),
            PointType::FourFourPrime | PointType::FourFourDoublePrime => (DegType::IV, DegType::IV),
        }
    }

    /// Whether the point contributes a coordinate to the crossing-point space.
    pub fn constrains(self) -> bool {
        !matches!(self, PointType::OneTwo | PointType::FourFourDoublePrime)
    }
}

impl FromStr for PointType {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        PointType::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or(())
    }
}

/// A class in `H^1` of a residue field, as a formal GF(2) sum of symbols.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct ResidueClass {
    symbols: BTreeSet<String>,
}

impl ResidueClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn symbol(name: impl Into<String>) -> Self {
        Self {
            symbols: BTreeSet::from([name.into()]),
        }
    }

    /// Sums the given symbols; repeated symbols cancel.
    pub fn from_symbols<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        names
            .into_iter()
            .fold(Self::zero(), |acc, s| acc + Self::symbol(s))
    }

    pub fn is_zero(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    pub fn contains(&self, symbol: &str) -> bool {
        self.symbols.contains(symbol)
    }

    /// Symbols ordered by their position in `declared`; undeclared ones go last.
    pub fn ordered_symbols<'a>(&'a self, declared: &[String]) -> Vec<&'a str> {
        let mut out: Vec<&str> = self.symbols().collect();
        out.sort_by_key(|s| declared.iter().position(|d| d == s).unwrap_or(usize::MAX));
        out
    }

    /// `0` or `a+b+...` in declaration order.
    pub fn render(&self, declared: &[String]) -> String {
        if self.is_zero() {
            "0".to_string()
        } else {
            self.ordered_symbols(declared).join("+")
        }
    }
}

impl AddAssign<&ResidueClass> for ResidueClass {
    fn add_assign(&mut self, rhs: &ResidueClass) {
        for s in &rhs.symbols {
            if !self.symbols.remove(s) {
                self.symbols.insert(s.clone());
            }
        }
    }
}

impl Add for ResidueClass {
    type Output = ResidueClass;

    fn add(mut self, rhs: ResidueClass) -> ResidueClass {
        self += &rhs;
        self
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            let names: Vec<&str> = self.symbols().collect();
            write!(f, "{}", names.join("+"))
        }
    }
}

/// A valuation of the cover lying over a degeneration curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub id: String,
    pub sheet: Option<Sheet>,
    pub residue: ResidueClass,
}

impl Extension {
    pub fn new(id: impl Into<String>, residue: ResidueClass) -> Self {
        Self {
            id: id.into(),
            sheet: None,
            residue,
        }
    }

    pub fn on_sheet(mut self, sheet: Sheet) -> Self {
        self.sheet = Some(sheet);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub id: String,
    pub deg_type: DegType,
    pub cover: CoverBehavior,
    pub extensions: Vec<Extension>,
    /// Marked extension; Type IV only.
    pub marking: Option<String>,
    /// Residue of the corestricted class; meaningful for inert and ramified curves.
    pub cores_input: Option<ResidueClass>,
}

impl Curve {
    pub fn new(
        id: impl Into<String>,
        deg_type: DegType,
        cover: CoverBehavior,
        extensions: Vec<Extension>,
    ) -> Self {
        Self {
            id: id.into(),
            deg_type,
            cover,
            extensions,
            marking: None,
            cores_input: None,
        }
    }

    pub fn with_marking(mut self, ext: impl Into<String>) -> Self {
        self.marking = Some(ext.into());
        self
    }

    pub fn with_cores(mut self, residue: ResidueClass) -> Self {
        self.cores_input = Some(residue);
        self
    }

    pub fn extension(&self, id: &str) -> Option<&Extension> {
        self.extensions.iter().find(|e| e.id == id)
    }

    pub fn is_marked(&self, ext: &Extension) -> bool {
        self.marking.as_deref() == Some(ext.id.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub id: String,
    pub incident: (String, String),
    pub etype: PointType,
    /// Extensions of the incident Type II curve that meet the marked
    /// Type IV component above this point (IV_II only).
    pub meets_marked: Vec<String>,
}

impl SingularPoint {
    pub fn new(
        id: impl Into<String>,
        first: impl Into<String>,
        second: impl Into<String>,
        etype: PointType,
    ) -> Self {
        Self {
            id: id.into(),
            incident: (first.into(), second.into()),
            etype,
            meets_marked: Vec::new(),
        }
    }

    pub fn with_meets_marked<I, S>(mut self, exts: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.meets_marked = exts.into_iter().map(Into::into).collect();
        self
    }

    pub fn is_incident(&self, curve: &str) -> bool {
        self.incident.0 == curve || self.incident.1 == curve
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Configuration {
    pub cover_kind: CoverKind,
    pub symbols: Vec<String>,
    pub curves: Vec<Curve>,
    pub points: Vec<SingularPoint>,
}

impl Configuration {
    pub fn new(cover_kind: CoverKind) -> Self {
        Self {
            cover_kind,
            symbols: Vec::new(),
            curves: Vec::new(),
            points: Vec::new(),
        }
    }

    pub fn curve(&self, id: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.id == id)
    }

    /// The curve owning the extension with this id.
    pub fn curve_of_extension(&self, ext: &str) -> Option<&Curve> {
        self.curves.iter().find(|c| c.extension(ext).is_some())
    }
}

/// An element of the ramified-extension basis, with its base curve.
#[derive(Debug, Clone, Copy)]
pub struct ExtRef<'a> {
    pub curve: &'a Curve,
    pub ext: &'a Extension,
}

/// Residue along `c` of the corestriction of the Brauer class.
pub fn cores_residue(c: &Curve) -> ResidueClass {
    match c.cover {
        CoverBehavior::Split => c
            .extensions
            .iter()
            .fold(ResidueClass::zero(), |mut acc, e| {
                acc += &e.residue;
                acc
            }),
        CoverBehavior::Inert | CoverBehavior::Ramified => c.cores_input.clone().unwrap_or_default(),
    }
}

/// Extensions with nonzero residue, in declaration order.
pub fn vp_basis(cfg: &Configuration) -> Vec<ExtRef<'_>> {
    cfg.curves
        .iter()
        .filter(|c| c.deg_type != DegType::I)
        .flat_map(|curve| {
            curve
                .extensions
                .iter()
                .filter(move |e| {
                    !e.residue.is_zero() && (curve.deg_type != DegType::IV || curve.is_marked(e))
                })
                .map(move |ext| ExtRef { curve, ext })
        })
        .collect()
}

/// Curves with vanishing corestricted residue that carry a ramified extension.
pub fn vq_basis(cfg: &Configuration) -> Vec<&Curve> {
    let vp = vp_basis(cfg);
    cfg.curves
        .iter()
        .filter(|c| cores_residue(c).is_zero())
        .filter(|c| vp.iter().any(|r| r.curve.id == c.id))
        .collect()
}

/// Crossing points that impose a compatibility condition.
pub fn zr_basis(cfg: &Configuration) -> Vec<&SingularPoint> {
    cfg.points.iter().filter(|p| p.etype.constrains()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split_curve(id: &str, a: &str, b: &str) -> Curve {
        Curve::new(
            id,
            DegType::II,
            CoverBehavior::Split,
            vec![
                Extension::new(
                    format!("{id}_1"),
                    ResidueClass::from_symbols(a.split('+').filter(|s| *s != "0")),
                ),
                Extension::new(
                    format!("{id}_2"),
                    ResidueClass::from_symbols(b.split('+').filter(|s| *s != "0")),
                ),
            ],
        )
    }

    #[test]
    fn residue_arithmetic() {
        let r = ResidueClass::from_symbols(["a", "b", "a"]);
        assert_eq!(r, ResidueClass::symbol("b"));
        assert!((r.clone() + r).is_zero());
        let declared = vec!["z".to_string(), "a".to_string()];
        assert_eq!(
            ResidueClass::from_symbols(["a", "z"]).render(&declared),
            "z+a"
        );
        assert_eq!(ResidueClass::zero().render(&declared), "0");
    }

    #[test]
    fn cores_residue_cases() {
        assert!(cores_residue(&split_curve("x", "a", "a")).is_zero());
        assert_eq!(
            cores_residue(&split_curve("x", "a", "b")),
            ResidueClass::from_symbols(["a", "b"])
        );
        let inert = Curve::new(
            "c",
            DegType::II,
            CoverBehavior::Inert,
            vec![Extension::new("c1", ResidueClass::symbol("a"))],
        );
        assert!(cores_residue(&inert).is_zero());
        let inert = inert.with_cores(ResidueClass::symbol("a"));
        assert_eq!(cores_residue(&inert), ResidueClass::symbol("a"));
    }

    #[test]
    fn bases_respect_types() {
        let mut cfg = Configuration::new(CoverKind::Irreducible);
        cfg.symbols = vec!["a".into(), "b".into()];
        cfg.curves.push(Curve::new(
            "one",
            DegType::I,
            CoverBehavior::Ramified,
            vec![Extension::new("one_1", ResidueClass::zero())],
        ));
        assert!(vp_basis(&cfg).is_empty());
        cfg.curves.push(
            Curve::new(
                "inert",
                DegType::II,
                CoverBehavior::Inert,
                vec![Extension::new("inert_1", ResidueClass::symbol("a"))],
            )
            .with_cores(ResidueClass::symbol("b")),
        );
        cfg.curves.push(
            Curve::new(
                "four",
                DegType::IV,
                CoverBehavior::Split,
                vec![
                    Extension::new("four_1", ResidueClass::zero()),
                    Extension::new("four_2", ResidueClass::symbol("a")),
                ],
            )
            .with_marking("four_2"),
        );
        let vp: Vec<&str> = vp_basis(&cfg).iter().map(|r| r.ext.id.as_str()).collect();
        assert_eq!(vp, vec!["inert_1", "four_2"]);
        // inert curve has nonzero corestricted residue; the Type IV one too.
        assert!(vq_basis(&cfg).is_empty());
    }

    #[test]
    fn zr_excludes_trivial_types() {
        let mut cfg = Configuration::new(CoverKind::Irreducible);
        cfg.points
            .push(SingularPoint::new("p", "a", "b", PointType::OneTwo));
        cfg.points.push(SingularPoint::new(
            "q",
            "a",
            "b",
            PointType::FourFourDoublePrime,
        ));
        assert!(zr_basis(&cfg).is_empty());
        cfg.points
            .push(SingularPoint::new("r", "a", "b", PointType::FourFourPrime));
        assert_eq!(zr_basis(&cfg).len(), 1);
    }

    #[test]
    fn point_type_names_round_trip() {
        for t in PointType::ALL {
            assert_eq!(t.as_str().parse::<PointType>(), Ok(t));
        }
        assert!("II_I".parse::<PointType>().is_err());
    }
}
