//! The unramified Brauer group computation.
//!
//! Four GF(2) spaces are built from a validated [`Configuration`]:
//!
//! * `S`, the kernel of restriction from the base function field to the
//!   generic fiber (dimension 0, 1 or 2);
//! * `P`, one coordinate per extension along which the Brauer class of the
//!   cover ramifies;
//! * `Q`, one coordinate per base curve whose corestricted residue vanishes
//!   but which carries a ramified extension;
//! * `R`, one coordinate per crossing point that imposes a condition.
//!
//! With maps `S -> P`, `Q -> P` and `P -> R`, the unramified classes are
//! `ker(P/Q -> R)` modulo the image of `S`, and each surviving class is
//! lifted back to ramification data on the base curves.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::f2::{F2Error, F2Matrix, F2Vector, Subspace};
use crate::model::{
    cores_residue, validate, vp_basis, vq_basis, zr_basis, Configuration, CoverBehavior, CoverKind,
    Curve, DegType, PointType, ResidueClass, Sheet, ValidationReport,
};

/// Largest `P` dimension the enumeration oracle accepts.
pub const BRUTE_FORCE_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BrauerError {
    #[error("configuration is invalid ({} error(s))", .0.errors.len())]
    Invalid(ValidationReport),
    #[error("vector {0} is not in the kernel of P -> R")]
    NotInKernel(F2Vector),
    #[error("P has dimension {dim}, above the enumeration cap of {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error(transparent)]
    Linalg(#[from] F2Error),
}

/// The restriction kernel `S`, with a label per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceS {
    pub dim: usize,
    pub generator_labels: Vec<String>,
}

/// Summary of the class on the split cover `S ⊔ S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SheetClasses {
    first_nonzero: bool,
    second_nonzero: bool,
    equal: bool,
}

fn sheet_residue(c: &Curve, sheet: Sheet) -> ResidueClass {
    c.extensions.iter().filter(|e| e.sheet == Some(sheet)).fold(
        ResidueClass::zero(),
        |mut acc, e| {
            acc += &e.residue;
            acc
        },
    )
}

fn sheet_classes(cfg: &Configuration) -> SheetClasses {
    let mut out = SheetClasses {
        first_nonzero: false,
        second_nonzero: false,
        equal: true,
    };
    for c in &cfg.curves {
        let r1 = sheet_residue(c, Sheet::First);
        let r2 = sheet_residue(c, Sheet::Second);
        out.first_nonzero |= !r1.is_zero();
        out.second_nonzero |= !r2.is_zero();
        out.equal &= r1 == r2;
    }
    out
}

/// Which sheets contribute a generator of `S` for a split-everywhere cover.
fn split_generators(cfg: &Configuration) -> Vec<Sheet> {
    let classes = sheet_classes(cfg);
    let mut out = Vec::new();
    if classes.first_nonzero {
        out.push(Sheet::First);
    }
    if classes.second_nonzero && !classes.equal {
        out.push(Sheet::Second);
    }
    out
}

pub fn s_space(cfg: &Configuration) -> SpaceS {
    let generator_labels = match cfg.cover_kind {
        CoverKind::Irreducible => {
            // Over a rational surface a class is zero iff all of its residues are.
            if cfg.curves.iter().any(|c| !cores_residue(c).is_zero()) {
                vec!["cores(beta)".to_string()]
            } else {
                Vec::new()
            }
        }
        CoverKind::SplitEverywhere => split_generators(cfg)
            .into_iter()
            .map(|s| format!("beta_{}", s.number()))
            .collect(),
    };
    SpaceS {
        dim: generator_labels.len(),
        generator_labels,
    }
}

/// `P -> R`: rows follow the crossing-point basis, columns the extension basis.
pub fn matrix_p_to_r(cfg: &Configuration) -> F2Matrix {
    let vp = vp_basis(cfg);
    let zr = zr_basis(cfg);
    let mut m = F2Matrix::zeros(zr.len(), vp.len());
    for (i, z) in zr.iter().enumerate() {
        for (j, r) in vp.iter().enumerate() {
            if !z.is_incident(&r.curve.id) {
                continue;
            }
            let related = match (z.etype, r.curve.deg_type) {
                (PointType::TwoTwo, DegType::II) => r.curve.cover == CoverBehavior::Split,
                (PointType::ThreeTwo, DegType::II | DegType::III) => true,
                (PointType::FourTwo, DegType::IV) => r.curve.is_marked(r.ext),
                (PointType::FourTwo, DegType::II) => z.meets_marked.contains(&r.ext.id),
                (PointType::FourFourPrime, DegType::IV) => r.curve.is_marked(r.ext),
                _ => false,
            };
            if related {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// `Q -> P`: each base curve maps to the sum of its ramified extensions.
pub fn matrix_q_to_p(cfg: &Configuration) -> F2Matrix {
    let vp = vp_basis(cfg);
    let vq = vq_basis(cfg);
    let mut m = F2Matrix::zeros(vp.len(), vq.len());
    for (j, c) in vq.iter().enumerate() {
        for (i, r) in vp.iter().enumerate() {
            if r.curve.id == c.id {
                m.set(i, j, true);
            }
        }
    }
    m
}

/// Images in `P` of the generators of `S`, in the order of [`s_space`].
pub fn s_to_p_vectors(cfg: &Configuration) -> Vec<F2Vector> {
    let vp = vp_basis(cfg);
    match cfg.cover_kind {
        CoverKind::Irreducible => {
            if s_space(cfg).dim == 1 {
                vec![F2Vector::ones(vp.len())]
            } else {
                Vec::new()
            }
        }
        CoverKind::SplitEverywhere => split_generators(cfg)
            .into_iter()
            .map(|sheet| vp.iter().map(|r| r.ext.sheet == Some(sheet)).collect())
            .collect(),
    }
}

/// `P -> S` as a matrix whose columns are the images of the generators of `S`.
pub fn matrix_s_to_p(cfg: &Configuration) -> F2Matrix {
    let p = vp_basis(cfg).len();
    F2Matrix::from_columns(&s_to_p_vectors(cfg), p).expect("generator images live in P")
}

/// Outcome of the structural assertions that hold for geometric configurations.
/// `true` means the assertion holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeometricChecks {
    /// `Q -> R` is zero.
    pub gc1: bool,
    /// Images of `S` and `Q` in `P` meet only in zero.
    pub gc2: bool,
    /// Image of `S` lies in `ker(P -> R)`.
    pub gc3: bool,
    /// `S -> P` and `Q -> P` are injective.
    pub gc4: bool,
}

impl GeometricChecks {
    pub fn all_ok(&self) -> bool {
        self.gc1 && self.gc2 && self.gc3 && self.gc4
    }
}

/// Evaluates GC1-GC4; assumes the configuration is structurally sound.
pub fn geometric_checks(cfg: &Configuration) -> GeometricChecks {
    let m_pr = matrix_p_to_r(cfg);
    let m_qp = matrix_q_to_p(cfg);
    let s_vecs = s_to_p_vectors(cfg);
    let p = m_qp.nrows();
    let img_q = m_qp.column_space();
    let img_s = Subspace::span(p, s_vecs.clone()).expect("generator images live in P");
    GeometricChecks {
        gc1: m_pr.mul(&m_qp).expect("shapes agree").is_zero(),
        gc2: img_s
            .intersection(&img_q)
            .expect("same ambient space")
            .dim()
            == 0,
        gc3: s_vecs
            .iter()
            .all(|v| m_pr.mul_vec(v).expect("shapes agree").is_zero()),
        gc4: img_s.dim() == s_vecs.len() && img_q.dim() == m_qp.ncols(),
    }
}

/// Ramification data on base curves, in curve declaration order, zero classes omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ramification {
    entries: Vec<(String, ResidueClass)>,
}

impl Ramification {
    pub fn entries(&self) -> &[(String, ResidueClass)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, curve: &str) -> Option<&ResidueClass> {
        self.entries
            .iter()
            .find(|(c, _)| c == curve)
            .map(|(_, r)| r)
    }

    pub fn curves(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(c, _)| c.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    /// Coset representative in `P`, zero on the pivot columns of `image(Q) + image(S)`.
    pub vector: F2Vector,
    pub ramification: Ramification,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerReport {
    pub cover_kind: CoverKind,
    pub s: SpaceS,
    pub p_labels: Vec<String>,
    pub q_labels: Vec<String>,
    pub r_labels: Vec<String>,
    pub m_pr: F2Matrix,
    pub m_qp: F2Matrix,
    pub m_sp: F2Matrix,
    /// `dim ker(P/Q -> R)`.
    pub kernel_dim: usize,
    /// Dimension of the unramified Brauer group (2-torsion).
    pub h2nr_dim: usize,
    pub generators: Vec<Generator>,
    pub assertions: GeometricChecks,
}

impl BrauerReport {
    pub fn dims(&self) -> Dims {
        Dims {
            s: self.s.dim,
            p: self.p_labels.len(),
            q: self.q_labels.len(),
            r: self.r_labels.len(),
            kernel: self.kernel_dim,
            h2nr: self.h2nr_dim,
        }
    }

    pub fn image_q(&self) -> Subspace {
        self.m_qp.column_space()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dims {
    pub s: usize,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub kernel: usize,
    pub h2nr: usize,
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={} p={} q={} r={} kernel={} h2nr={}",
            self.s, self.p, self.q, self.r, self.kernel, self.h2nr
        )
    }
}

pub fn unramified_brauer(cfg: &Configuration) -> Result<BrauerReport, BrauerError> {
    let validation = validate(cfg);
    if !validation.is_ok() {
        return Err(BrauerError::Invalid(validation));
    }
    let vp = vp_basis(cfg);
    let p = vp.len();
    let m_pr = matrix_p_to_r(cfg);
    let m_qp = matrix_q_to_p(cfg);
    let m_sp = matrix_s_to_p(cfg);
    let s = s_space(cfg);

    let kernel = m_pr.kernel_basis();
    let img_q = m_qp.column_space();
    let img_qs = img_q.sum(&m_sp.column_space())?;
    let kernel_dim = kernel.dim() - img_q.dim();
    let h2nr_dim = kernel_dim - s.dim;

    let reps = kernel
        .basis()
        .iter()
        .map(|b| img_qs.reduce(b))
        .collect::<Result<Vec<_>, _>>()?;
    let complement = Subspace::span(p, reps)?;
    debug_assert_eq!(complement.dim(), h2nr_dim);
    let generators = complement
        .basis()
        .iter()
        .map(|v| {
            Ok(Generator {
                vector: v.clone(),
                ramification: ramification_lift(cfg, v)?,
            })
        })
        .collect::<Result<Vec<_>, BrauerError>>()?;

    Ok(BrauerReport {
        cover_kind: cfg.cover_kind,
        s,
        p_labels: vp.iter().map(|r| r.ext.id.clone()).collect(),
        q_labels: vq_basis(cfg).iter().map(|c| c.id.clone()).collect(),
        r_labels: zr_basis(cfg).iter().map(|z| z.id.clone()).collect(),
        m_pr,
        m_qp,
        m_sp,
        kernel_dim,
        h2nr_dim,
        generators,
        assertions: geometric_checks(cfg),
    })
}

/// Lifts an element of `ker(P -> R)` to ramification data on the base curves.
///
/// Inert curves contribute their corestricted residue; split and ramified
/// curves contribute the residue of the extension itself.
pub fn ramification_lift(cfg: &Configuration, vec: &F2Vector) -> Result<Ramification, BrauerError> {
    let vp = vp_basis(cfg);
    let m_pr = matrix_p_to_r(cfg);
    if vec.len() != vp.len() {
        return Err(F2Error::DimensionMismatch {
            expected: vp.len(),
            found: vec.len(),
        }
        .into());
    }
    if !m_pr.mul_vec(vec)?.is_zero() {
        return Err(BrauerError::NotInKernel(vec.clone()));
    }
    let mut acc: Vec<ResidueClass> = vec![ResidueClass::zero(); cfg.curves.len()];
    for j in vec.ones_iter() {
        let r = vp[j];
        let contribution = match r.curve.cover {
            CoverBehavior::Inert => cores_residue(r.curve),
            CoverBehavior::Split | CoverBehavior::Ramified => r.ext.residue.clone(),
        };
        let k = cfg
            .curves
            .iter()
            .position(|c| c.id == r.curve.id)
            .expect("basis curves belong to the configuration");
        acc[k] += &contribution;
    }
    Ok(Ramification {
        entries: cfg
            .curves
            .iter()
            .zip(acc)
            .filter(|(_, r)| !r.is_zero())
            .map(|(c, r)| (c.id.clone(), r))
            .collect(),
    })
}

/// Which case of the residue-kernel description applies to a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelCase {
    /// Type I: the kernel is trivial.
    Trivial,
    /// Type II, inert: generated by the corestricted residue.
    Inert,
    /// Type II, split: generated by the residues along both extensions.
    Split,
    /// Type III: generated by the residue along the unique extension.
    Ramified,
    /// Type IV: generated by the residue at the marking.
    Marked,
}

impl KernelCase {
    pub fn describe(self) -> &'static str {
        match self {
            KernelCase::Trivial => "trivial (Type I)",
            KernelCase::Inert => "<residue of cores(beta)> (Type II, inert)",
            KernelCase::Split => "<residues of beta along both extensions> (Type II, split)",
            KernelCase::Ramified => "<residue of beta along the ramified extension> (Type III)",
            KernelCase::Marked => "<residue of beta at the marking> (Type IV)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueKernel {
    pub case: KernelCase,
    /// Generators as written; zero classes are kept.
    pub generators: Vec<ResidueClass>,
}

/// Kernel (with even coefficients) of restriction from the residue field of
/// the curve to the residue fields of the divisors above it in the bundle.
pub fn residue_kernel(c: &Curve) -> ResidueKernel {
    match c.deg_type {
        DegType::I => ResidueKernel {
            case: KernelCase::Trivial,
            generators: Vec::new(),
        },
        DegType::II if c.cover == CoverBehavior::Inert => ResidueKernel {
            case: KernelCase::Inert,
            generators: vec![cores_residue(c)],
        },
        DegType::II => ResidueKernel {
            case: KernelCase::Split,
            generators: c.extensions.iter().map(|e| e.residue.clone()).collect(),
        },
        DegType::III => ResidueKernel {
            case: KernelCase::Ramified,
            generators: c.extensions.iter().map(|e| e.residue.clone()).collect(),
        },
        DegType::IV => ResidueKernel {
            case: KernelCase::Marked,
            generators: c
                .extensions
                .iter()
                .filter(|e| c.is_marked(e))
                .map(|e| e.residue.clone())
                .collect(),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionKernel {
    pub space: SpaceS,
    pub description: String,
}

/// Kernel of restriction from the Brauer group of the base function field to
/// that of the generic fiber.
pub fn restriction_kernel(cfg: &Configuration) -> RestrictionKernel {
    let space = s_space(cfg);
    let description = match cfg.cover_kind {
        CoverKind::Irreducible if space.dim == 0 => {
            "trivial: the corestriction of beta vanishes".to_string()
        }
        CoverKind::Irreducible => "<cores(beta)>, of order 2".to_string(),
        CoverKind::SplitEverywhere => {
            let c = sheet_classes(cfg);
            let relation = match (c.first_nonzero, c.second_nonzero, c.equal) {
                (false, false, _) => "beta_1 = beta_2 = 0",
                (_, _, true) => "beta_1 = beta_2 != 0",
                (true, true, false) => "beta_1, beta_2 nonzero and distinct",
                (true, false, false) => "beta_2 = 0",
                (false, true, false) => "beta_1 = 0",
            };
            if space.dim == 0 {
                format!("<beta_1, beta_2> is trivial ({relation})")
            } else {
                format!(
                    "<beta_1, beta_2> of dimension {} ({relation}), basis {}",
                    space.dim,
                    space.generator_labels.join(", ")
                )
            }
        }
    };
    RestrictionKernel { space, description }
}

/// Independent enumeration of `(kernel_dim, h2nr_dim)` over all of `P`.
///
/// Uses only bit masks: counts `ker(P -> R)` and the images of `Q` and
/// `Q + S` by listing their elements. Expects a valid configuration.
pub fn brute_force_unramified(cfg: &Configuration) -> Result<(usize, usize), BrauerError> {
    let p = vp_basis(cfg).len();
    if p > BRUTE_FORCE_CAP {
        return Err(BrauerError::DimensionCap {
            dim: p,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let to_mask = |v: &F2Vector| v.ones_iter().fold(0u32, |m, i| m | 1 << i);
    let rows: Vec<u32> = matrix_p_to_r(cfg).rows().iter().map(to_mask).collect();
    let q_cols: Vec<u32> = matrix_q_to_p(cfg).columns().iter().map(to_mask).collect();
    let s_cols: Vec<u32> = s_to_p_vectors(cfg).iter().map(to_mask).collect();

    let kernel_size = (0u32..1 << p)
        .filter(|v| rows.iter().all(|r| (r & v).count_ones() % 2 == 0))
        .count();
    let span_size = |gens: &[u32]| -> usize {
        (0u64..1 << gens.len())
            .map(|mask| {
                gens.iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0u32, |acc, (_, g)| acc ^ g)
            })
            .collect::<HashSet<u32>>()
            .len()
    };
    let q_size = span_size(&q_cols);
    let qs: Vec<u32> = q_cols.iter().chain(&s_cols).copied().collect();
    let qs_size = span_size(&qs);
    let log2 = |n: usize| n.trailing_zeros() as usize;
    Ok((
        log2(kernel_size).saturating_sub(log2(q_size)),
        log2(kernel_size).saturating_sub(log2(qs_size)),
    ))
}
