//! Random configurations for property tests.

#![allow(dead_code)]

use isbrauer::model::{
    validate, vp_basis, Configuration, CoverBehavior, CoverKind, Curve, DegType, Extension,
    PointType, ResidueClass, Sheet, SingularPoint,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const MAX_P: usize = 12;

fn residue(rng: &mut ChaCha8Rng, symbols: &[String], nonzero_bias: bool) -> ResidueClass {
    loop {
        let r = ResidueClass::from_symbols(symbols.iter().filter(|_| rng.gen_bool(0.5)));
        if !nonzero_bias || !r.is_zero() || rng.gen_bool(0.2) {
            return r;
        }
    }
}

fn curve(rng: &mut ChaCha8Rng, i: usize, kind: CoverKind, symbols: &[String]) -> Curve {
    let id = format!("c{i}");
    let ext = |k: usize, r: ResidueClass| Extension::new(format!("c{i}e{k}"), r);
    let deg_type = match kind {
        CoverKind::Irreducible => *[
            DegType::I,
            DegType::II,
            DegType::II,
            DegType::III,
            DegType::IV,
        ]
        .choose(rng)
        .unwrap(),
        CoverKind::SplitEverywhere => *[DegType::II, DegType::II, DegType::IV].choose(rng).unwrap(),
    };
    let cover = match (deg_type, kind) {
        (DegType::I | DegType::III, _) => CoverBehavior::Ramified,
        (_, CoverKind::SplitEverywhere) => CoverBehavior::Split,
        _ => *[CoverBehavior::Inert, CoverBehavior::Split]
            .choose(rng)
            .unwrap(),
    };
    let mut exts = match (deg_type, cover) {
        (DegType::I, _) => vec![ext(0, ResidueClass::zero())],
        (_, CoverBehavior::Split) => {
            let first = residue(rng, symbols, true);
            // Equal residues put the curve in Q often enough to exercise it.
            let second = if rng.gen_bool(0.4) {
                first.clone()
            } else {
                residue(rng, symbols, true)
            };
            vec![ext(0, first), ext(1, second)]
        }
        _ => vec![ext(0, residue(rng, symbols, true))],
    };
    let mut marking = None;
    if deg_type == DegType::IV {
        let m = rng.gen_range(0..exts.len());
        for (k, e) in exts.iter_mut().enumerate() {
            if k != m {
                e.residue = ResidueClass::zero();
            }
        }
        marking = Some(exts[m].id.clone());
    }
    if kind == CoverKind::SplitEverywhere {
        let flip = rng.gen_bool(0.5);
        for (k, e) in exts.iter_mut().enumerate() {
            let first = (k == 0) != flip;
            e.sheet = Some(if first { Sheet::First } else { Sheet::Second });
        }
    }
    let mut c = Curve::new(id, deg_type, cover, exts);
    c.marking = marking;
    match cover {
        CoverBehavior::Ramified if deg_type == DegType::III => {
            c.cores_input = Some(c.extensions[0].residue.clone());
        }
        CoverBehavior::Inert => {
            c.cores_input = Some(if rng.gen_bool(0.5) {
                ResidueClass::zero()
            } else {
                residue(rng, symbols, false)
            });
        }
        _ => {}
    }
    c
}

/// A random configuration; may or may not pass validation.
pub fn random_config(rng: &mut ChaCha8Rng) -> Configuration {
    let kind = if rng.gen_bool(0.75) {
        CoverKind::Irreducible
    } else {
        CoverKind::SplitEverywhere
    };
    let mut cfg = Configuration::new(kind);
    cfg.symbols = (0..rng.gen_range(1..=3)).map(|i| format!("s{i}")).collect();
    let n = rng.gen_range(0..=5);
    for i in 0..n {
        let c = curve(rng, i, kind, &cfg.symbols);
        cfg.curves.push(c);
    }
    if n >= 2 {
        for k in 0..rng.gen_range(0..=4) {
            let pick: Vec<&Curve> = cfg.curves.choose_multiple(rng, 2).collect();
            let (a, b) = (pick[0], pick[1]);
            let fits: Vec<PointType> = PointType::ALL
                .into_iter()
                .filter(|t| {
                    let (x, y) = t.curve_types();
                    (x, y) == (a.deg_type, b.deg_type) || (y, x) == (a.deg_type, b.deg_type)
                })
                .collect();
            let Some(&etype) = fits.choose(rng) else {
                continue;
            };
            let mut p = SingularPoint::new(format!("p{k}"), a.id.clone(), b.id.clone(), etype);
            if etype == PointType::FourTwo {
                let two = if a.deg_type == DegType::II { a } else { b };
                p.meets_marked = two
                    .extensions
                    .iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .map(|e| e.id.clone())
                    .collect();
            }
            cfg.points.push(p);
        }
    }
    cfg
}

/// `count` distinct-seed valid configurations with `dim P <= MAX_P`.
pub fn valid_corpus(seed: u64, count: usize) -> Vec<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let cfg = random_config(&mut rng);
        if vp_basis(&cfg).len() <= MAX_P && validate(&cfg).is_ok() {
            out.push(cfg);
        }
    }
    out
}
