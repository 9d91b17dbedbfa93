use std::collections::HashMap;
use std::fmt;

use super::linalg::{determinant, integer_kernel, rank, smith_invariants, unimodular_completion};
use super::{LatticeScalar, LatticeVector, ToricError, MAX_BOX_POINTS, MAX_RAYS, RANK};

/// Inequality description of a cone: `e . x = 0` for each equation and
/// `n . x >= 0` for each facet normal. Normals lie in the linear span of the cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep<T> {
    pub dim: usize,
    pub equations: Vec<LatticeVector<T>>,
    pub inequalities: Vec<LatticeVector<T>>,
}

/// A strongly convex rational polyhedral cone given by primitive rays.
#[derive(Clone)]
pub struct Cone<T> {
    rays: Vec<LatticeVector<T>>,
    hrep: HRep<T>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessCertificate<T> {
    pub rays: Vec<LatticeVector<T>>,
    pub simplicial: bool,
    pub invariant_factors: Vec<T>,
    /// Rows: the rays followed by completing vectors; present for smooth cones.
    pub completion: Option<Vec<LatticeVector<T>>>,
    pub determinant: Option<T>,
    pub smooth: bool,
}

impl<T: LatticeScalar> SmoothnessCertificate<T> {
    /// Re-checks the recorded completion independently of how it was found.
    pub fn verify(&self) -> bool {
        if !self.smooth {
            return !self.simplicial || self.invariant_factors.iter().any(|f| !f.is_one());
        }
        let Some(rows) = &self.completion else {
            return false;
        };
        let m: Vec<Vec<T>> = rows.iter().map(LatticeVector::to_vec).collect();
        rows.len() == RANK
            && rows[..self.rays.len()] == self.rays[..]
            && determinant(&m).abs().is_one()
            && self.determinant.as_ref() == Some(&determinant(&m))
    }
}

impl<T: LatticeScalar> fmt::Display for SmoothnessCertificate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(ToString::to_string).collect();
        if self.smooth {
            let extra: Vec<String> = self
                .completion
                .as_ref()
                .map(|c| {
                    c[self.rays.len()..]
                        .iter()
                        .map(ToString::to_string)
                        .collect()
                })
                .unwrap_or_default();
            let det = self
                .determinant
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default();
            if extra.is_empty() {
                write!(f, "smooth [{}], det {det}", rays.join(" "))
            } else {
                write!(
                    f,
                    "smooth [{}] completed by [{}], det {det}",
                    rays.join(" "),
                    extra.join(" ")
                )
            }
        } else if !self.simplicial {
            write!(f, "singular [{}]: not simplicial", rays.join(" "))
        } else {
            let factors: Vec<String> = self
                .invariant_factors
                .iter()
                .map(ToString::to_string)
                .collect();
            write!(
                f,
                "singular [{}]: invariant factors {}",
                rays.join(" "),
                factors.join(",")
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertBasis<T> {
    pub elements: Vec<LatticeVector<T>>,
    /// Number of nonzero lattice points of the cone found in the search box.
    pub candidates: usize,
    /// Every candidate is a nonnegative integer combination of `elements`.
    pub generates_candidates: bool,
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

fn rows<T: LatticeScalar>(vs: &[LatticeVector<T>]) -> Vec<Vec<T>> {
    vs.iter().map(LatticeVector::to_vec).collect()
}

fn kernel_vectors<T: LatticeScalar>(vs: &[LatticeVector<T>]) -> Vec<LatticeVector<T>> {
    integer_kernel(&rows(vs), RANK)
        .iter()
        .map(|v| LatticeVector::from_slice(v))
        .collect()
}

/// Extremal rays of the pointed cone `{x : e . x = 0, n . x >= 0}`, primitive and sorted.
pub(crate) fn rays_of_hrep<T: LatticeScalar>(
    equations: &[LatticeVector<T>],
    inequalities: &[LatticeVector<T>],
) -> Vec<LatticeVector<T>> {
    let eq_rank = rank(&rows(equations), RANK);
    if eq_rank >= RANK {
        return Vec::new();
    }
    let need = RANK - 1 - eq_rank;
    let mut out: Vec<LatticeVector<T>> = Vec::new();
    for subset in combinations(inequalities.len(), need) {
        let mut sys = equations.to_vec();
        sys.extend(subset.iter().map(|&i| inequalities[i].clone()));
        if rank(&rows(&sys), RANK) != RANK - 1 {
            continue;
        }
        let d = kernel_vectors(&sys).remove(0);
        for cand in [d.clone(), -&d] {
            if inequalities.iter().all(|n| !n.dot(&cand).is_negative()) {
                let cand = cand.primitive();
                if !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out.sort();
    out
}

fn compute_hrep<T: LatticeScalar>(rays: &[LatticeVector<T>]) -> HRep<T> {
    let dim = rank(&rows(rays), RANK);
    let equations = kernel_vectors(rays);
    let mut inequalities: Vec<LatticeVector<T>> = Vec::new();
    if dim > 0 {
        for subset in combinations(rays.len(), dim - 1) {
            let chosen: Vec<LatticeVector<T>> = subset.iter().map(|&i| rays[i].clone()).collect();
            if rank(&rows(&chosen), RANK) != dim - 1 {
                continue;
            }
            let mut sys = chosen;
            sys.extend(equations.iter().cloned());
            let mut normal = kernel_vectors(&sys).remove(0);
            let pos = rays.iter().any(|r| normal.dot(r).is_positive());
            let neg = rays.iter().any(|r| normal.dot(r).is_negative());
            if pos && neg {
                continue;
            }
            if neg {
                normal = -&normal;
            }
            let normal = normal.primitive();
            if !inequalities.contains(&normal) {
                inequalities.push(normal);
            }
        }
    }
    inequalities.sort();
    HRep {
        dim,
        equations,
        inequalities,
    }
}

impl<T: LatticeScalar> Cone<T> {
    pub fn new(rays: Vec<LatticeVector<T>>) -> Result<Self, ToricError> {
        if rays.len() > MAX_RAYS {
            return Err(ToricError::ScopeCap(format!(
                "{} rays (at most {MAX_RAYS})",
                rays.len()
            )));
        }
        for (i, r) in rays.iter().enumerate() {
            if r.is_zero() {
                return Err(ToricError::ZeroRay(r.to_string()));
            }
            if !r.is_primitive() {
                return Err(ToricError::NotPrimitive(r.to_string()));
            }
            for s in &rays[..i] {
                if r.same_direction(s) || r.same_direction(&-s) {
                    return Err(ToricError::Proportional(s.to_string(), r.to_string()));
                }
            }
        }
        let hrep = compute_hrep(&rays);
        if hrep.dim > 0 {
            let mut all = hrep.equations.clone();
            all.extend(hrep.inequalities.iter().cloned());
            if rank(&rows(&all), RANK) != RANK {
                return Err(ToricError::NotStronglyConvex);
            }
        }
        Ok(Self { rays, hrep })
    }

    pub fn rays(&self) -> &[LatticeVector<T>] {
        &self.rays
    }

    pub fn dim(&self) -> usize {
        self.hrep.dim
    }

    pub fn hrep(&self) -> &HRep<T> {
        &self.hrep
    }

    pub fn contains(&self, v: &LatticeVector<T>) -> bool {
        self.hrep.equations.iter().all(|e| e.dot(v).is_zero())
            && self
                .hrep
                .inequalities
                .iter()
                .all(|n| !n.dot(v).is_negative())
    }

    pub fn in_relative_interior(&self, v: &LatticeVector<T>) -> bool {
        self.hrep.equations.iter().all(|e| e.dot(v).is_zero())
            && self
                .hrep
                .inequalities
                .iter()
                .all(|n| n.dot(v).is_positive())
    }

    /// Rays that are not positive combinations of the others, sorted.
    pub fn extremal_rays(&self) -> Vec<LatticeVector<T>> {
        let mut out: Vec<LatticeVector<T>> = self
            .rays
            .iter()
            .filter(|r| {
                let mut sys = self.hrep.equations.clone();
                sys.extend(
                    self.hrep
                        .inequalities
                        .iter()
                        .filter(|n| n.dot(r).is_zero())
                        .cloned(),
                );
                rank(&rows(&sys), RANK) == RANK - 1
            })
            .cloned()
            .collect();
        out.sort();
        out
    }

    /// Primitive generators of the extremal rays of the dual cone, sorted.
    ///
    /// For a cone that is not full-dimensional the dual contains the linear
    /// space `sigma^perp`; only generators of its part inside the span of the
    /// cone are returned.
    pub fn dual_generators(&self) -> Vec<LatticeVector<T>> {
        self.hrep.inequalities.clone()
    }

    pub fn dual_cone(&self) -> Result<Cone<T>, ToricError> {
        if self.dim() != RANK {
            return Err(ToricError::NotFullDimensional);
        }
        Cone::new(self.dual_generators())
    }

    /// All faces, from the cone itself down to the origin.
    pub fn faces(&self) -> Vec<Cone<T>> {
        let ext = self.extremal_rays();
        let normals = &self.hrep.inequalities;
        let mut out: Vec<Cone<T>> = Vec::new();
        for mask in 0u32..1 << ext.len() {
            let chosen: Vec<&LatticeVector<T>> = (0..ext.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &ext[i])
                .collect();
            let vanishing: Vec<&LatticeVector<T>> = normals
                .iter()
                .filter(|n| chosen.iter().all(|r| n.dot(r).is_zero()))
                .collect();
            let closure = (0..ext.len())
                .filter(|&i| vanishing.iter().all(|n| n.dot(&ext[i]).is_zero()))
                .fold(0u32, |m, i| m | 1 << i);
            if closure == mask {
                out.push(
                    Cone::new(chosen.into_iter().cloned().collect())
                        .expect("faces of a valid cone are valid"),
                );
            }
        }
        out.sort_by(|a, b| {
            b.dim()
                .cmp(&a.dim())
                .then_with(|| a.extremal_rays().cmp(&b.extremal_rays()))
        });
        out
    }

    pub fn facets(&self) -> Vec<Cone<T>> {
        self.faces()
            .into_iter()
            .filter(|f| f.dim() + 1 == self.dim())
            .collect()
    }

    /// Proper faces (any dimension) that fail the smoothness test.
    pub fn singular_faces(&self) -> Vec<Cone<T>> {
        self.faces()
            .into_iter()
            .filter(|f| f.dim() < self.dim() && !f.is_smooth())
            .collect()
    }

    pub fn is_simplicial(&self) -> bool {
        self.extremal_rays().len() == self.dim()
    }

    pub fn smoothness(&self) -> SmoothnessCertificate<T> {
        let ext = self.extremal_rays();
        let simplicial = ext.len() == self.dim();
        let invariant_factors = smith_invariants(&rows(&ext), RANK);
        let smooth = simplicial && invariant_factors.iter().all(|f| f.is_one());
        let completion = if smooth {
            unimodular_completion(&rows(&ext), RANK).map(|m| {
                m.iter()
                    .map(|r| LatticeVector::from_slice(r))
                    .collect::<Vec<_>>()
            })
        } else {
            None
        };
        let determinant = completion.as_ref().map(|c| determinant(&rows(c)));
        SmoothnessCertificate {
            rays: ext,
            simplicial,
            invariant_factors,
            completion,
            determinant,
            smooth,
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.smoothness().smooth
    }

    /// Minimal generators of the semigroup of lattice points in the cone.
    ///
    /// Every irreducible element lies in the zonotope spanned by the
    /// extremal rays, so the search scans its bounding box.
    pub fn hilbert_basis(&self) -> Result<HilbertBasis<T>, ToricError> {
        let ext = self.extremal_rays();
        let mut lo = [0i64; RANK];
        let mut hi = [0i64; RANK];
        for r in &ext {
            for (i, c) in r.coords().iter().enumerate() {
                let c = c
                    .to_i64()
                    .ok_or_else(|| ToricError::ScopeCap(format!("coordinate {c} too large")))?;
                if c < 0 {
                    lo[i] += c;
                } else {
                    hi[i] += c;
                }
            }
        }
        let total = lo
            .iter()
            .zip(&hi)
            .try_fold(1u64, |acc, (l, h)| acc.checked_mul((h - l + 1) as u64))
            .filter(|&n| n <= MAX_BOX_POINTS)
            .ok_or_else(|| {
                ToricError::ScopeCap(format!("search box larger than {MAX_BOX_POINTS} points"))
            })?;
        let mut candidates = Vec::new();
        for k in 0..total {
            let mut rest = k;
            let mut coords = [0i64; RANK];
            for i in 0..RANK {
                let width = (hi[i] - lo[i] + 1) as u64;
                coords[i] = lo[i] + (rest % width) as i64;
                rest /= width;
            }
            let p = LatticeVector::from_i64(coords);
            if !p.is_zero() && self.contains(&p) {
                candidates.push(p);
            }
        }
        let mut elements: Vec<LatticeVector<T>> = candidates
            .iter()
            .filter(|x| {
                !candidates
                    .iter()
                    .any(|h| h != *x && self.contains(&(*x - h)))
            })
            .cloned()
            .collect();
        elements.sort();

        let mut memo = HashMap::new();
        let generates_candidates = candidates
            .iter()
            .all(|x| self.generated_by(x, &elements, &mut memo));
        Ok(HilbertBasis {
            elements,
            candidates: candidates.len(),
            generates_candidates,
        })
    }

    fn generated_by(
        &self,
        x: &LatticeVector<T>,
        gens: &[LatticeVector<T>],
        memo: &mut HashMap<LatticeVector<T>, bool>,
    ) -> bool {
        if x.is_zero() {
            return true;
        }
        if let Some(&known) = memo.get(x) {
            return known;
        }
        let result = gens.iter().any(|g| {
            let rest = x - g;
            self.contains(&rest) && self.generated_by(&rest, gens, memo)
        });
        memo.insert(x.clone(), result);
        result
    }

    /// Extremal rays of the intersection with another cone.
    pub fn intersection_rays(&self, other: &Cone<T>) -> Vec<LatticeVector<T>> {
        let mut eqs = self.hrep.equations.clone();
        eqs.extend(other.hrep.equations.iter().cloned());
        let mut ineqs = self.hrep.inequalities.clone();
        ineqs.extend(other.hrep.inequalities.iter().cloned());
        rays_of_hrep(&eqs, &ineqs)
    }

    /// Whether `other` is a face of this cone.
    pub fn has_face(&self, other: &Cone<T>) -> bool {
        let target = other.extremal_rays();
        if !target.iter().all(|r| self.contains(r)) {
            return false;
        }
        let vanishing: Vec<&LatticeVector<T>> = self
            .hrep
            .inequalities
            .iter()
            .filter(|n| target.iter().all(|r| n.dot(r).is_zero()))
            .collect();
        let closure: Vec<LatticeVector<T>> = self
            .extremal_rays()
            .into_iter()
            .filter(|r| vanishing.iter().all(|n| n.dot(r).is_zero()))
            .collect();
        Cone::new(closure).is_ok_and(|c| c.extremal_rays() == target)
    }
}

impl<T: LatticeScalar> PartialEq for Cone<T> {
    fn eq(&self, other: &Self) -> bool {
        self.extremal_rays() == other.extremal_rays()
    }
}

impl<T: LatticeScalar> Eq for Cone<T> {}

impl<T: LatticeScalar> fmt::Display for Cone<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rays: Vec<String> = self.rays.iter().map(ToString::to_string).collect();
        write!(f, "cone<{}>", rays.join(", "))
    }
}

impl<T: fmt::Debug> fmt::Debug for Cone<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("cone").field(&self.rays).finish()
    }
}
