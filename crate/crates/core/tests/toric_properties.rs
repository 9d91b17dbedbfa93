use isbrauer::toric::{
    candidate_rays, hilbert_basis, orthant, parse_fan_script, resolve_demo, singular_faces,
    star_subdivide, xyz_cone, Cone, Fan, LatticeVector, ToricError,
};
use num_bigint::BigInt;
use proptest::prelude::*;

fn v(c: [i64; 4]) -> LatticeVector<i64> {
    LatticeVector::from_i64(c)
}

/// Extremal rays of the dual found by scanning a box of integer vectors:
/// a primitive `m` is extremal iff the rays it vanishes on span a
/// hyperplane's worth of directions together with the orthogonal complement.
fn dual_by_enumeration(c: &Cone<i64>, bound: i64) -> Vec<LatticeVector<i64>> {
    let rays = c.extremal_rays();
    let mut out = Vec::new();
    let r = -bound..=bound;
    for a in r.clone() {
        for b in r.clone() {
            for x in r.clone() {
                for y in r.clone() {
                    let m = v([a, b, x, y]);
                    if m.is_zero() || !m.is_primitive() || rays.iter().any(|r| m.dot(r) < 0) {
                        continue;
                    }
                    let active: Vec<Vec<i64>> = rays
                        .iter()
                        .filter(|r| m.dot(r) == 0)
                        .map(|r| r.to_vec())
                        .collect();
                    if isbrauer::toric::linalg::rank(&active, 4) == 3 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

#[test]
fn dual_of_xyz_cone() {
    let s = xyz_cone::<i64>();
    let expected = vec![
        v([0, 0, 0, 1]),
        v([0, 0, 1, 0]),
        v([0, 1, 0, 0]),
        v([1, 0, 0, 0]),
        v([1, 1, -1, -1]),
    ];
    assert_eq!(s.dual_generators(), expected);
    assert_eq!(dual_by_enumeration(&s, 2), expected);
}

#[test]
fn dual_of_dual_recovers_rays() {
    for c in [xyz_cone::<i64>(), orthant::<i64>()] {
        let dd = c.dual_cone().unwrap().dual_cone().unwrap();
        assert_eq!(dd.extremal_rays(), c.extremal_rays());
    }
}

#[test]
fn hilbert_basis_of_dual() {
    let dual = xyz_cone::<i64>().dual_cone().unwrap();
    let hb = hilbert_basis(&dual).unwrap();
    assert_eq!(hb.elements.len(), 5);
    assert!(hb.generates_candidates);
    let [u, vv, x, y, z] = [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 1, -1, -1],
    ]
    .map(v);
    for e in [&u, &vv, &x, &y, &z] {
        assert!(hb.elements.contains(e));
    }
    assert_eq!(&u + &vv, &(&x + &y) + &z);
    // Irreducibility: no element is a sum of two nonzero semigroup elements.
    let r = -2i64..=2;
    for e in &hb.elements {
        for a in r.clone() {
            for b in r.clone() {
                for c in r.clone() {
                    for d in r.clone() {
                        let h = v([a, b, c, d]);
                        if h.is_zero() || h == *e {
                            continue;
                        }
                        assert!(
                            !(dual.contains(&h) && dual.contains(&(e - &h))),
                            "{e} = {h} + rest"
                        );
                    }
                }
            }
        }
    }
    assert_eq!(hilbert_basis(&orthant::<i64>()).unwrap().elements.len(), 4);
}

#[test]
fn a1_slice_has_interior_generator() {
    let c = Cone::new(vec![v([1, 0, 0, 0]), v([1, 2, 0, 0])]).unwrap();
    let hb = c.hilbert_basis().unwrap();
    assert_eq!(
        hb.elements,
        vec![v([1, 0, 0, 0]), v([1, 1, 0, 0]), v([1, 2, 0, 0])]
    );
}

#[test]
fn singular_face_counts() {
    let faces = singular_faces(&xyz_cone::<i64>());
    assert_eq!(faces.len(), 3);
    assert!(faces
        .iter()
        .all(|f| f.dim() == 3 && f.extremal_rays().len() == 4));
    assert!(singular_faces(&orthant::<i64>()).is_empty());
    let plane = Cone::new(vec![v([1, 0, 0, 0]), v([1, 2, 0, 0])]).unwrap();
    assert!(!plane.is_smooth());
    assert!(singular_faces(&plane).is_empty());
}

#[test]
fn smoothness_certificates_verify() {
    let simplex = Cone::new(vec![v([1, 0, 0, 0]), v([1, 1, 0, 0]), v([0, 0, 1, 0])]).unwrap();
    let cert = simplex.smoothness();
    assert!(cert.smooth && cert.verify());
    assert_eq!(cert.completion.as_ref().unwrap().len(), 4);
    assert!(!xyz_cone::<i64>().smoothness().smooth);
}

#[test]
fn demo_is_generic_over_integer_types() {
    let small = resolve_demo::<i64>().unwrap();
    let wide = resolve_demo::<i128>().unwrap();
    let big = resolve_demo::<BigInt>().unwrap();
    assert_eq!(small.steps.len(), 3);
    assert_eq!(wide.steps.len(), 3);
    assert_eq!(big.steps.len(), 3);
    let order = |r: &[LatticeVector<i64>]| r.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    let big_order: Vec<String> = big.steps.iter().map(|s| s.ray.to_string()).collect();
    assert_eq!(
        order(
            &small
                .steps
                .iter()
                .map(|s| s.ray.clone())
                .collect::<Vec<_>>()
        ),
        big_order
    );
    assert!(big.is_smooth() && big.support_preserved());
    assert_eq!(candidate_rays(&xyz_cone::<BigInt>()).len(), 3);
}

#[test]
fn demo_fans_are_fans() {
    let report = resolve_demo::<i64>().unwrap();
    for step in &report.steps {
        assert!(step.fan.check().is_ok());
        assert!(step.support.passed());
    }
    assert!(report
        .final_fan()
        .certificates()
        .iter()
        .all(|c| c.smooth && c.verify()));
}

#[test]
fn fan_script_reproduces_demo() {
    let mut text = String::from("# uv = xyz\n");
    for r in xyz_cone::<i64>().rays() {
        let c = r.coords();
        text.push_str(&format!("ray {} {} {} {}\n", c[0], c[1], c[2], c[3]));
    }
    text.push_str("cone 0 1 2 3 4 5\n");
    for s in &resolve_demo::<i64>().unwrap().steps {
        let c = s.ray.coords();
        text.push_str(&format!("subdivide {} {} {} {}\n", c[0], c[1], c[2], c[3]));
    }
    let fans = parse_fan_script(&text).unwrap().run().unwrap();
    assert_eq!(fans.len(), 4);
    assert!(fans[3].is_smooth());
}

#[test]
fn subdivision_outside_support() {
    let f = Fan::from_cone(xyz_cone::<i64>());
    assert!(matches!(
        star_subdivide(&f, &v([0, 0, 1, 0])),
        Err(ToricError::OutsideSupport(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn subdivision_preserves_support(a in 0i64..4, b in 0i64..4, c in 0i64..4, d in 0i64..4, e in 0i64..4, f in 0i64..4, seed in any::<u64>()) {
        let s = xyz_cone::<i64>();
        let r = s.rays();
        let point = [a, b, c, d, e, f]
            .iter()
            .zip(r)
            .fold(LatticeVector::zero(), |acc, (k, ray)| &acc + &ray.scale(k));
        prop_assume!(!point.is_zero());
        let rho = point.primitive();
        let base = Fan::from_cone(s.clone());
        let fan = base.star_subdivide(&rho).unwrap();
        prop_assert!(fan.support_check(&base, 1000, seed).passed());
        if s.in_relative_interior(&rho) {
            prop_assert!(fan.len() > base.len());
        }
    }
}
