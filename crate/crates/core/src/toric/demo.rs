use std::fmt;

use super::cone::{Cone, HilbertBasis, SmoothnessCertificate};
use super::fan::{Fan, SupportCheck};
use super::linalg::{integer_kernel, make_primitive};
use super::{xyz_cone, LatticeScalar, LatticeVector, ToricError, RANK};

const SUPPORT_SAMPLES: usize = 1000;
const SUPPORT_SEED: u64 = 0x5eed;

/// One star subdivision of the demo together with its checks.
#[derive(Debug, Clone)]
pub struct DemoStep<T> {
    pub ray: LatticeVector<T>,
    pub fan: Fan<T>,
    pub support: SupportCheck,
    pub certificates: Vec<SmoothnessCertificate<T>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderingAttempt<T> {
    pub order: Vec<LatticeVector<T>>,
    pub smooth: bool,
}

#[derive(Debug, Clone)]
pub struct DemoReport<T> {
    pub cone: Cone<T>,
    pub dual_generators: Vec<LatticeVector<T>>,
    pub hilbert_basis: HilbertBasis<T>,
    /// Integer relations among the Hilbert basis elements, one coefficient per element.
    pub relations: Vec<Vec<T>>,
    pub singular_faces: Vec<Cone<T>>,
    pub candidates: Vec<LatticeVector<T>>,
    pub attempts: Vec<OrderingAttempt<T>>,
    pub steps: Vec<DemoStep<T>>,
}

impl<T: LatticeScalar> DemoReport<T> {
    pub fn final_fan(&self) -> &Fan<T> {
        &self
            .steps
            .last()
            .expect("the demo performs subdivisions")
            .fan
    }

    pub fn is_smooth(&self) -> bool {
        self.final_fan().is_smooth()
    }

    pub fn support_preserved(&self) -> bool {
        self.steps.iter().all(|s| s.support.passed())
    }

    /// Renders a relation as `a + b = c + d` over the basis vectors.
    pub fn relation_text(&self, relation: &[T]) -> String {
        let side = |positive: bool| {
            let terms: Vec<String> = relation
                .iter()
                .zip(&self.hilbert_basis.elements)
                .filter(|(c, _)| !c.is_zero() && c.is_positive() == positive)
                .map(|(c, e)| {
                    let k = c.abs();
                    if k.is_one() {
                        e.to_string()
                    } else {
                        format!("{k}*{e}")
                    }
                })
                .collect();
            terms.join(" + ")
        };
        format!("{} = {}", side(true), side(false))
    }
}

impl<T: LatticeScalar> fmt::Display for DemoReport<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |vs: &[LatticeVector<T>]| {
            vs.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        };
        writeln!(f, "cone: {}", self.cone)?;
        writeln!(f, "dual generators: {}", list(&self.dual_generators))?;
        writeln!(f, "hilbert basis: {}", list(&self.hilbert_basis.elements))?;
        for r in &self.relations {
            writeln!(f, "relation: {}", self.relation_text(r))?;
        }
        for face in &self.singular_faces {
            writeln!(
                f,
                "singular face (dim {}): {}",
                face.dim(),
                face.smoothness()
            )?;
        }
        writeln!(f, "candidate rays: {}", list(&self.candidates))?;
        for a in &self.attempts {
            writeln!(
                f,
                "ordering {}: {}",
                list(&a.order),
                if a.smooth { "smooth" } else { "singular" }
            )?;
        }
        for (i, step) in self.steps.iter().enumerate() {
            writeln!(
                f,
                "step {}: subdivide at {} -> {} maximal cones; support: {}",
                i + 1,
                step.ray,
                step.fan.len(),
                step.support
            )?;
            for cert in &step.certificates {
                writeln!(f, "  {cert}")?;
            }
        }
        write!(f, "smooth: {}", self.is_smooth())
    }
}

/// Primitive ray sums of the singular 3-dimensional faces, sorted.
pub fn candidate_rays<T: LatticeScalar>(cone: &Cone<T>) -> Vec<LatticeVector<T>> {
    let mut out: Vec<LatticeVector<T>> = cone
        .singular_faces()
        .iter()
        .filter(|f| f.dim() == RANK - 1)
        .map(|f| {
            f.extremal_rays()
                .iter()
                .fold(LatticeVector::zero(), |acc, r| &acc + r)
                .primitive()
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

fn permutations<X: Clone>(items: &[X]) -> Vec<Vec<X>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn relations<T: LatticeScalar>(elements: &[LatticeVector<T>]) -> Vec<Vec<T>> {
    let columns: Vec<Vec<T>> = (0..RANK)
        .map(|i| elements.iter().map(|e| e.coords()[i].clone()).collect())
        .collect();
    integer_kernel(&columns, elements.len())
        .into_iter()
        .map(|k| {
            // Orient so that the shorter side is written first.
            let k = make_primitive(k, true);
            let pos = k.iter().filter(|c| c.is_positive()).count();
            let neg = k.iter().filter(|c| c.is_negative()).count();
            if pos > neg {
                k.into_iter().map(|c| -c).collect()
            } else {
                k
            }
        })
        .collect()
}

/// Resolves the `uv = xyz` cone by star subdivisions at the candidate rays,
/// trying orderings until the resulting fan is smooth.
pub fn resolve_demo<T: LatticeScalar>() -> Result<DemoReport<T>, ToricError> {
    let cone = xyz_cone::<T>();
    let hilbert_basis = cone.dual_cone()?.hilbert_basis()?;
    let relations = relations(&hilbert_basis.elements);
    let singular_faces = cone.singular_faces();
    let candidates = candidate_rays(&cone);
    let base = Fan::from_cone(cone.clone());

    let mut attempts = Vec::new();
    for order in permutations(&candidates) {
        let mut fans = Vec::new();
        let mut current = base.clone();
        for rho in &order {
            current = current.star_subdivide(rho)?;
            fans.push(current.clone());
        }
        let smooth = current.is_smooth();
        attempts.push(OrderingAttempt {
            order: order.clone(),
            smooth,
        });
        if !smooth {
            continue;
        }
        current.check()?;
        let steps = order
            .into_iter()
            .zip(fans)
            .map(|(ray, fan)| DemoStep {
                support: fan.support_check(&base, SUPPORT_SAMPLES, SUPPORT_SEED),
                certificates: fan.certificates(),
                ray,
                fan,
            })
            .collect();
        return Ok(DemoReport {
            dual_generators: cone.dual_generators(),
            cone,
            hilbert_basis,
            relations,
            singular_faces,
            candidates,
            attempts,
            steps,
        });
    }
    Err(ToricError::NoResolvingOrder)
}
