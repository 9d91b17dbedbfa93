use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cone::{Cone, SmoothnessCertificate};
use super::{LatticeScalar, LatticeVector, ToricError};

/// A fan stored by its maximal cones.
#[derive(Clone)]
pub struct Fan<T> {
    maximal_cones: Vec<Cone<T>>,
}

impl<T: LatticeScalar> PartialEq for Fan<T> {
    fn eq(&self, other: &Self) -> bool {
        self.maximal_cones == other.maximal_cones
    }
}

impl<T: LatticeScalar> Eq for Fan<T> {}

/// Outcome of sampled support comparison between two fans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupportCheck {
    pub samples: usize,
    /// Points of the reference support missing from the fan.
    pub missing: usize,
    /// Points of the fan lying outside the reference support.
    pub extra: usize,
}

impl SupportCheck {
    pub fn passed(&self) -> bool {
        self.missing == 0 && self.extra == 0
    }
}

impl fmt::Display for SupportCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} samples each way, {} missing, {} extra",
            self.samples, self.missing, self.extra
        )
    }
}

fn random_point<T: LatticeScalar>(cone: &Cone<T>, rng: &mut ChaCha8Rng) -> LatticeVector<T> {
    cone.rays().iter().fold(LatticeVector::zero(), |acc, r| {
        let k = T::from_u32(rng.gen_range(0..=12)).expect("small coefficient fits");
        &acc + &r.scale(&k)
    })
}

impl<T: LatticeScalar> Fan<T> {
    /// Builds a fan and checks that maximal cones meet along common faces.
    pub fn new(maximal_cones: Vec<Cone<T>>) -> Result<Self, ToricError> {
        let fan = Self { maximal_cones };
        fan.check()?;
        Ok(fan)
    }

    pub fn from_cone(cone: Cone<T>) -> Self {
        Self {
            maximal_cones: vec![cone],
        }
    }

    pub fn maximal_cones(&self) -> &[Cone<T>] {
        &self.maximal_cones
    }

    pub fn len(&self) -> usize {
        self.maximal_cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maximal_cones.is_empty()
    }

    /// Distinct rays of the fan, sorted.
    pub fn rays(&self) -> Vec<LatticeVector<T>> {
        let mut out: Vec<LatticeVector<T>> = self
            .maximal_cones
            .iter()
            .flat_map(Cone::extremal_rays)
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn contains(&self, v: &LatticeVector<T>) -> bool {
        self.maximal_cones.iter().any(|c| c.contains(v))
    }

    /// Checks that every pairwise intersection is a face of both cones.
    pub fn check(&self) -> Result<(), ToricError> {
        for (i, a) in self.maximal_cones.iter().enumerate() {
            for (j, b) in self.maximal_cones.iter().enumerate().skip(i + 1) {
                let meet =
                    Cone::new(a.intersection_rays(b)).map_err(|_| ToricError::NotAFan(i, j))?;
                if !a.has_face(&meet) || !b.has_face(&meet) {
                    return Err(ToricError::NotAFan(i, j));
                }
            }
        }
        Ok(())
    }

    /// Star subdivision at `rho`: every maximal cone containing `rho` is
    /// replaced by the cones over its facets not containing `rho`, joined with `rho`.
    pub fn star_subdivide(&self, rho: &LatticeVector<T>) -> Result<Fan<T>, ToricError> {
        if rho.is_zero() {
            return Err(ToricError::ZeroRay(rho.to_string()));
        }
        if !rho.is_primitive() {
            return Err(ToricError::NotPrimitive(rho.to_string()));
        }
        if !self.contains(rho) {
            return Err(ToricError::OutsideSupport(rho.to_string()));
        }
        let mut out = Vec::new();
        for tau in &self.maximal_cones {
            if !tau.contains(rho) {
                out.push(tau.clone());
                continue;
            }
            let ext = tau.extremal_rays();
            for n in &tau.hrep().inequalities {
                if !n.dot(rho).is_positive() {
                    continue;
                }
                let mut rays: Vec<LatticeVector<T>> =
                    ext.iter().filter(|r| n.dot(r).is_zero()).cloned().collect();
                rays.push(rho.clone());
                out.push(Cone::new(rays)?);
            }
        }
        Ok(Fan { maximal_cones: out })
    }

    pub fn certificates(&self) -> Vec<SmoothnessCertificate<T>> {
        self.maximal_cones.iter().map(Cone::smoothness).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.maximal_cones.iter().all(Cone::is_smooth)
    }

    /// Compares supports by sampling nonnegative integer combinations of the
    /// rays of randomly chosen maximal cones, in both directions.
    pub fn support_check(&self, reference: &Fan<T>, samples: usize, seed: u64) -> SupportCheck {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut missing = 0;
        let mut extra = 0;
        if self.is_empty() || reference.is_empty() {
            return SupportCheck {
                samples,
                missing: if reference.is_empty() { 0 } else { samples },
                extra: if self.is_empty() { 0 } else { samples },
            };
        }
        for _ in 0..samples {
            let c = &reference.maximal_cones[rng.gen_range(0..reference.len())];
            if !self.contains(&random_point(c, &mut rng)) {
                missing += 1;
            }
            let c = &self.maximal_cones[rng.gen_range(0..self.len())];
            if !reference.contains(&random_point(c, &mut rng)) {
                extra += 1;
            }
        }
        SupportCheck {
            samples,
            missing,
            extra,
        }
    }
}

impl<T: LatticeScalar> fmt::Display for Fan<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.maximal_cones.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl<T: fmt::Debug> fmt::Debug for Fan<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.maximal_cones).finish()
    }
}

/// A parsed fan description: rays, cones over ray indices, and subdivisions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanScript {
    pub rays: Vec<LatticeVector<i64>>,
    /// Ray indices of each cone with the line it was declared on.
    pub cones: Vec<(Vec<usize>, usize)>,
    pub subdivisions: Vec<(LatticeVector<i64>, usize)>,
}

fn script_error(line: usize, column: usize, message: impl Into<String>) -> ToricError {
    ToricError::Script {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (true, Some((c, b))) => {
                out.push((c + 1, &line[b..byte]));
                start = None;
            }
            (false, None) => start = Some((col, byte)),
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        out.push((c + 1, &line[b..]));
    }
    out
}

fn parse_vector(
    line: usize,
    keyword_col: usize,
    args: &[(usize, &str)],
) -> Result<LatticeVector<i64>, ToricError> {
    if args.len() != 4 {
        let col = args.get(4).map_or(keyword_col, |a| a.0);
        return Err(script_error(
            line,
            col,
            format!("expected 4 integers, found {}", args.len()),
        ));
    }
    let mut coords = [0i64; 4];
    for (slot, (col, text)) in coords.iter_mut().zip(args) {
        *slot = text
            .parse()
            .map_err(|_| script_error(line, *col, format!("`{text}` is not an integer")))?;
    }
    Ok(LatticeVector::new(coords))
}

/// Parses the fan text format:
///
/// ```text
/// ray 1 0 0 0
/// cone 0 1 2     # 0-based ray indices
/// subdivide 1 1 1 0
/// ```
pub fn parse_fan_script(text: &str) -> Result<FanScript, ToricError> {
    let mut script = FanScript {
        rays: Vec::new(),
        cones: Vec::new(),
        subdivisions: Vec::new(),
    };
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col, keyword)) = toks.first() else {
            continue;
        };
        let args = &toks[1..];
        match keyword {
            "ray" => script.rays.push(parse_vector(line, col, args)?),
            "subdivide" => script
                .subdivisions
                .push((parse_vector(line, col, args)?, line)),
            "cone" => {
                if args.is_empty() {
                    return Err(script_error(line, col, "cone needs at least one ray index"));
                }
                let mut indices = Vec::new();
                for &(c, t) in args {
                    let i: usize = t
                        .parse()
                        .map_err(|_| script_error(line, c, format!("`{t}` is not a ray index")))?;
                    if i >= script.rays.len() {
                        return Err(script_error(line, c, format!("ray {i} is not declared")));
                    }
                    indices.push(i);
                }
                script.cones.push((indices, line));
            }
            other => {
                return Err(script_error(
                    line,
                    col,
                    format!("unknown keyword `{other}`"),
                ))
            }
        }
    }
    if script.cones.is_empty() {
        return Err(script_error(1, 1, "no cones declared"));
    }
    Ok(script)
}

impl FanScript {
    pub fn initial_fan(&self) -> Result<Fan<i64>, ToricError> {
        let mut cones = Vec::new();
        for (indices, line) in &self.cones {
            let rays = indices.iter().map(|&i| self.rays[i].clone()).collect();
            let cone = Cone::new(rays).map_err(|e| script_error(*line, 1, e.to_string()))?;
            cones.push(cone);
        }
        Fan::new(cones).map_err(|e| match e {
            ToricError::NotAFan(i, j) => script_error(
                self.cones[j].1,
                1,
                format!(
                    "cone meets the cone on line {} outside a common face",
                    self.cones[i].1
                ),
            ),
            other => other,
        })
    }

    /// The initial fan followed by the fan after each subdivision.
    pub fn run(&self) -> Result<Vec<Fan<i64>>, ToricError> {
        let mut fans = vec![self.initial_fan()?];
        for (rho, line) in &self.subdivisions {
            let next = fans
                .last()
                .expect("at least the initial fan")
                .star_subdivide(rho)
                .map_err(|e| script_error(*line, 1, e.to_string()))?;
            fans.push(next);
        }
        Ok(fans)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::{orthant, xyz_cone};

    fn v(c: [i64; 4]) -> LatticeVector<i64> {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn subdividing_xyz_cone_keeps_support() {
        let base = Fan::from_cone(xyz_cone::<i64>());
        let fan = base.star_subdivide(&v([1, 1, 1, 0])).unwrap();
        assert!(fan.len() > 1);
        assert!(fan.check().is_ok());
        assert!(fan.support_check(&base, 1000, 7).passed());
    }

    #[test]
    fn subdividing_at_existing_ray_of_simplex() {
        let base = Fan::from_cone(orthant::<i64>());
        let fan = base.star_subdivide(&v([1, 0, 0, 0])).unwrap();
        assert_eq!(fan, base);
    }

    #[test]
    fn subdivision_errors() {
        let base = Fan::from_cone(orthant::<i64>());
        assert!(matches!(
            base.star_subdivide(&v([-1, 0, 0, 0])),
            Err(ToricError::OutsideSupport(_))
        ));
        assert!(matches!(
            base.star_subdivide(&v([2, 2, 0, 0])),
            Err(ToricError::NotPrimitive(_))
        ));
    }

    #[test]
    fn overlapping_cones_are_not_a_fan() {
        let a = Cone::new(vec![v([1, 0, 0, 0]), v([0, 1, 0, 0])]).unwrap();
        let b = Cone::new(vec![v([1, 1, 0, 0]), v([0, 1, 0, 0])]).unwrap();
        assert_eq!(Fan::new(vec![a, b]).unwrap_err(), ToricError::NotAFan(0, 1));
    }

    #[test]
    fn script_parsing() {
        let text = "# orthant\nray 1 0 0 0\nray 0 1 0 0\nray 0 0 1 0\nray 0 0 0 1\ncone 0 1 2 3\nsubdivide 1 1 0 0\n";
        let script = parse_fan_script(text).unwrap();
        let fans = script.run().unwrap();
        assert_eq!(fans.len(), 2);
        assert_eq!(fans[1].len(), 2);
        assert!(fans[1].is_smooth());
    }

    #[test]
    fn script_errors_carry_positions() {
        let err = parse_fan_script("ray 1 0 0\n").unwrap_err();
        assert!(matches!(
            err,
            ToricError::Script {
                line: 1,
                column: 1,
                ..
            }
        ));
        let err = parse_fan_script("ray 1 0 x 0\n").unwrap_err();
        assert!(matches!(
            err,
            ToricError::Script {
                line: 1,
                column: 9,
                ..
            }
        ));
        let err = parse_fan_script("ray 1 0 0 0\n  cone 0 4\n").unwrap_err();
        assert!(matches!(
            err,
            ToricError::Script {
                line: 2,
                column: 10,
                ..
            }
        ));
        let err = parse_fan_script("ray 1 0 0 0\nfoo\n").unwrap_err();
        assert!(matches!(
            err,
            ToricError::Script {
                line: 2,
                column: 1,
                ..
            }
        ));
        let err = parse_fan_script("ray 1 0 0 0\n").unwrap_err();
        assert!(matches!(
            err,
            ToricError::Script {
                line: 1,
                column: 1,
                ..
            }
        ));
        let err = parse_fan_script("ray 1 0 0 0\ncone 0\nsubdivide 0 1 0 0\n")
            .unwrap()
            .run()
            .unwrap_err();
        assert!(matches!(err, ToricError::Script { line: 3, .. }));
    }
}
