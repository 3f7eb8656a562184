//! Octahedral complexes checked against a self-contained oracle: stars are
//! read off a hand-listed neighbour order and monodromy is multiplied out in
//! plain i64.

mod common;

use common::*;
use cuspcalc_core::ia::{cyclic_symmetry, validate_type_iii, CheckKind, IAComplex, OCTAHEDRON_FACES};
use cuspcalc_core::CuspCycle;
use proptest::prelude::*;

#[test]
fn symmetric_family_is_consistent() {
    for x in [[0, 0, 0, 0], [1, -2, 3, 5]] {
        let d = symmetric_d(x);
        for v in 0..6 {
            for w in LINKS[v] {
                assert_eq!(d(v, w) + d(w, v), 2);
                assert_eq!(d(HALF_TURN[v], HALF_TURN[w]), d(v, w), "{v}->{w}");
            }
        }
    }
}

#[test]
fn brute_force_solution_validates_and_descends() {
    let (count, first) = first_symmetric_solution();
    assert!(count > 0);
    let d = symmetric_d(first.unwrap());
    let g = build(&d);
    let report = validate_type_iii(&g, &"5,2,5,2".parse().unwrap()).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.total_charge, Some(24));

    let sym = cyclic_symmetry(&g, &HALF_TURN).unwrap();
    assert!(sym.rotation_like);
    assert_eq!(sym.fixed.vertices, vec![0, 5]);
    let q = sym.quotient.expect("half turn acts freely on edges and faces");
    assert_eq!(q.euler_characteristic(), 2);
    let qr = validate_type_iii(&q, &"5,2".parse().unwrap()).unwrap();
    assert!(qr.passed(), "{qr}");
    assert_eq!(qr.total_charge, Some(24));
}

#[test]
fn validator_agrees_with_oracle_on_whole_family() {
    let expected: CuspCycle = "5,2,5,2".parse().unwrap();
    for a in -3..=5 {
        for b in -3..=5 {
            for c in [-3, 0, 2, 5] {
                for e in [-3, 1, 5] {
                    let d = symmetric_d([a, b, c, e]);
                    let r = validate_type_iii(&build(&d), &expected).unwrap();
                    assert_eq!(r.passed(), oracle_valid(&d), "{a} {b} {c} {e}");
                }
            }
        }
    }
}

fn arbitrary_octahedron() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (prop::collection::vec(-3i64..=5, 12), prop::collection::vec(-1i64..=1, 12))
}

proptest! {
    #[test]
    fn accepted_complexes_are_spheres_with_balanced_edges((vals, noise) in arbitrary_octahedron()) {
        let mut pairs = Vec::new();
        for (v, link) in LINKS.iter().enumerate() {
            for &w in link {
                if v < w {
                    pairs.push((v, w));
                }
            }
        }
        let mut half = Vec::new();
        for (k, &(v, w)) in pairs.iter().enumerate() {
            half.push((v, w, vals[k]));
            half.push((w, v, 2 - vals[k] + noise[k]));
        }
        let g = IAComplex::from_simplicial(6, &half, &OCTAHEDRON_FACES, 0).unwrap();
        let r = validate_type_iii(&g, &CuspCycle::new(vec![3; 4]).unwrap()).unwrap();
        if r.check(CheckKind::TriplePointFormula).passed {
            prop_assert!(noise.iter().all(|&n| n == 0));
        }
        if r.passed() {
            prop_assert_eq!(g.euler_characteristic(), 2);
            for e in &g.edges {
                prop_assert_eq!(e.d[0].unwrap() + e.d[1].unwrap(), 2);
            }
        }
    }

    #[test]
    fn quotients_are_fixed_by_identity(x in prop::array::uniform4(-3i64..=5)) {
        let g = build(&symmetric_d(x));
        let sym = cyclic_symmetry(&g, &HALF_TURN).unwrap();
        let q = sym.quotient.unwrap();
        let id: Vec<usize> = (0..q.vertices.len()).collect();
        let again = cyclic_symmetry(&q, &id).unwrap();
        prop_assert_eq!(again.quotient.as_ref(), Some(&q));
    }
}
