use proptest::prelude::*;

use ilink::complex::{join, parse_complex, skeleton, write_complex, Complex, Simplex};
use ilink::geometry::{lk2, moment_curve, ApexPolicy, GeometricMap, Point};
use ilink::obstruction::verify_theorem_2_2;

fn triangle(k: &Complex, t: [usize; 3]) -> Complex {
    k.with_simplices([[t[0], t[1]], [t[1], t[2]], [t[0], t[2]]].map(Simplex::new))
}

fn distinct_params() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::btree_set(-30i64..30, 6).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn joins_are_face_closed(m in 0usize..4, k in 0usize..3, extra in 1usize..4) {
        let a = skeleton(m, k.min(m)).unwrap();
        let b = Complex::points((0..extra).map(|i| format!("p{i}")));
        let j = join(&a, &b).unwrap();
        prop_assert!(j.is_face_closed());
        prop_assert_eq!(j.num_vertices(), a.num_vertices() + extra);
        // every simplex of a joins with every point, plus the two factors
        prop_assert_eq!(j.len(), a.len() * (extra + 1) + extra);
    }

    #[test]
    fn complex_text_round_trips(gens in prop::collection::vec(prop::collection::btree_set(0usize..7, 1..4), 1..6)) {
        let names: Vec<String> = (0..7).map(|i| format!("v{i}")).collect();
        let k = Complex::from_generators(names, gens.into_iter().map(Simplex::new));
        let back = parse_complex(&write_complex(&k)).unwrap();
        prop_assert_eq!(write_complex(&back), write_complex(&k));
        prop_assert_eq!(back.f_vector(), k.f_vector());
    }

    #[test]
    fn coordinate_text_round_trips(coords in prop::collection::vec((-50i64..50, -50i64..50, 1i64..9), 4)) {
        let k = skeleton(3, 1).unwrap();
        let pts: Vec<Point> = coords.iter().map(|&(x, y, z)| Point::from_ints(&[x, y, z])).collect();
        let f = GeometricMap::from_vertex_points(k.clone(), 3, pts).unwrap();
        let g = GeometricMap::from_text(k, &f.to_text()).unwrap();
        prop_assert_eq!(g.to_text(), f.to_text());
    }

    #[test]
    fn k6_on_the_moment_curve_links_only_the_alternating_split(params in distinct_params(), seed in 1u64..1000) {
        let k6 = skeleton(5, 1).unwrap();
        let f = GeometricMap::from_vertex_points(k6.clone(), 3, moment_curve(&params, 3).unwrap()).unwrap();
        for i in 1..6 {
            for j in i + 1..6 {
                let t = [0, i, j];
                let u: Vec<usize> = (0..6).filter(|v| !t.contains(v)).collect();
                let (g, d) = (triangle(&k6, t), triangle(&k6, [u[0], u[1], u[2]]));
                let lk = lk2(&f, &g, &d, &ApexPolicy::default()).unwrap();
                prop_assert_eq!(lk, lk2(&f, &d, &g, &ApexPolicy::default()).unwrap());
                prop_assert_eq!(lk, lk2(&f, &g, &d, &ApexPolicy::with_seed(seed)).unwrap());
                prop_assert_eq!(lk, t == [0, 2, 4]);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn double_point_parity_is_odd_for_every_seed(seed in any::<u32>()) {
        let r = verify_theorem_2_2(1, 2, seed as u64).unwrap();
        prop_assert_eq!(r.odd_trials, 2);
        prop_assert!(r.class_checks.iter().all(|c| c.cohomologous));
    }
}
