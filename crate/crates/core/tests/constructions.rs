use toric_gw::fan::{build_permutohedral_from_cube, build_permutohedral_from_p3};
use toric_gw::intersection::{quadric_divisor, IntersectionTable};
use toric_gw::isomorphism::{fan_isomorphism, verify_matrix};
use toric_gw::{DivisorClass, LatticeVector, Model};

#[test]
fn permutohedral_fans_from_both_sides() {
    for fan in [build_permutohedral_from_p3(), build_permutohedral_from_cube()] {
        assert_eq!(fan.f_vector(), (14, 36, 24));
        assert!(fan.is_smooth() && fan.is_complete());
        for c in fan.maximal_cones() {
            assert_eq!(fan.generator_matrix(c).det().abs(), 1);
        }
    }
    let cube = build_permutohedral_from_cube();
    assert_eq!(cube.ray(cube.ray_index("u135").unwrap()), LatticeVector::new(1, 1, 1));
    assert_eq!(cube.ray(cube.ray_index("u246").unwrap()), LatticeVector::new(-1, -1, -1));
}

#[test]
fn isomorphism_is_symmetric() {
    let (a, b) = (build_permutohedral_from_p3(), build_permutohedral_from_cube());
    let m = fan_isomorphism(&a, &b).unwrap().unwrap();
    let back = fan_isomorphism(&b, &a).unwrap().unwrap();
    assert!(verify_matrix(&b, &a, &m.matrix.inverse().unwrap()).is_some());
    assert!(verify_matrix(&a, &b, &back.matrix.inverse().unwrap()).is_some());
}

#[test]
fn quadric_divisors_are_nef_on_all_walls() {
    let t = IntersectionTable::new(Model::perm_p3()).unwrap();
    for pq in ["12", "13", "14"] {
        let cert = t.nef_certificate(&quadric_divisor(pq).unwrap()).unwrap();
        assert_eq!(cert.pairings.len(), 36);
        assert!(cert.pairings.iter().all(|(_, v)| *v >= 0), "{pq}");
    }
}

#[test]
fn cube_side_divisors_from_the_fan() {
    let t = IntersectionTable::new(Model::perm_cube()).unwrap();
    let m = Model::perm_cube();
    // the lines through u5 are 15 and 35
    assert_eq!(
        t.ray_divisor_by_label("u5").unwrap(),
        DivisorClass::from_terms(m, &[("H3", 1), ("E135", -1), ("F15", -1), ("F35", -1)]).unwrap()
    );
    assert_eq!(
        t.ray_divisor_by_label("u2").unwrap(),
        DivisorClass::from_terms(m, &[("H1", 1), ("E246", -1), ("F24", -1), ("F26", -1)]).unwrap()
    );
}

#[test]
fn wall_classes_repair_against_direct_pairings() {
    for m in [Model::perm_p3(), Model::perm_cube()] {
        let t = IntersectionTable::new(m).unwrap();
        for w in t.walls() {
            let curve = t.wall_curve(w).unwrap();
            let direct = t.fan().wall_relation(w).unwrap();
            for (r, &expect) in direct.iter().enumerate() {
                assert_eq!(t.intersect(&t.ray_divisor(r), &curve).unwrap(), expect);
            }
        }
    }
}
