use std::collections::BTreeSet;

use ilink::complex::{find_isomorphism, join, m_complex, n1_removed_simplex, n2_removed_simplex, skeleton, Complex, Simplex};
use ilink::geometry::{lk2, moment_curve, ApexPolicy, GeometricMap};
use ilink::links::{
    lambda_pairs, verify_prop_1_3, verify_remark_1_4, verify_suspension_claims, verify_theorem_1_2, LinkPair,
    Prop13Target,
};
use ilink::obstruction::{obstruction_nonzero, verify_lemma_2_1, verify_theorem_2_2};

#[test]
fn parity_trials_n2() {
    let r = verify_theorem_2_2(2, 20, 7).unwrap();
    assert_eq!(r.odd_trials, 20);
    assert!(r.class_checks.iter().all(|c| c.cohomologous));
    assert!(r.pass);
}

#[test]
fn linking_parity_over_several_bases() {
    for seed in 0..5 {
        let r = verify_theorem_1_2(2, seed).unwrap();
        assert!(r.is_embedding, "seed {seed}");
        assert_eq!(r.pairs.len(), 10);
        assert!(r.odd, "seed {seed}");
        assert_eq!(r.eq1_mismatches, 0);
        assert!(r.pass);
    }
}

#[test]
fn eq1_uses_lifted_fillings_in_the_suspension() {
    let r = verify_theorem_1_2(2, 0).unwrap();
    assert!(r.pairs.iter().any(|p| p.filling_realization == "stellar"));
    assert_eq!(r.exhaustive.as_ref().map(|e| (e.swept_pairs, e.equal)), Some((10, true)));
}

#[test]
fn minimality_n2() {
    for target in [Prop13Target::N1, Prop13Target::N2] {
        let r = verify_prop_1_3(2, target, 0).unwrap();
        assert!(r.pass, "{target:?}");
        assert_eq!(r.full_nontrivial.len(), 1);
    }
    let r = verify_prop_1_3(2, Prop13Target::AllMaximal, 3).unwrap();
    assert!(r.pass);
    let kinds: BTreeSet<&str> = r.classification.as_ref().unwrap().iter().map(|m| m.kind.as_str()).collect();
    assert_eq!(kinds, BTreeSet::from(["N1", "N2"]));
}

#[test]
fn certificate_replays_from_text() {
    let r = verify_prop_1_3(2, Prop13Target::N2, 0).unwrap();
    let cert = &r.certificates[1];
    let m = m_complex(2).unwrap();
    let n2 = m.delete_simplices([&n2_removed_simplex(&m, 2)]).unwrap();
    let mut text = String::from("# ambient: 4\n");
    for (label, coords) in &cert.coordinates {
        text.push_str(&format!("{label} {}\n", coords.join(" ")));
    }
    let f = GeometricMap::from_text(n2.clone(), &text).unwrap();
    let surviving: Vec<LinkPair> = lambda_pairs(&m).unwrap().into_iter().filter(|l| l.is_in(&n2)).collect();
    assert!(!surviving.is_empty());
    for lam in &surviving {
        assert!(!lk2(&f, &lam.gamma, &lam.delta, &ApexPolicy::default()).unwrap());
    }
}

#[test]
fn n1_and_n2_are_not_isomorphic() {
    let m = m_complex(2).unwrap();
    let n1 = m.delete_simplices([&n1_removed_simplex(&m, 2)]).unwrap();
    let n2 = m.delete_simplices([&n2_removed_simplex(&m, 2)]).unwrap();
    assert!(find_isomorphism(&n1, &n2).is_none());
}

#[test]
fn suspension_claims_n2() {
    let r = verify_suspension_claims(2, 0).unwrap();
    assert_eq!(r.copies, 6);
    assert_eq!(r.sharing, vec![3]);
    assert!(r.nontrivial.len() >= 2);
    assert_eq!(r.lk_sum_mod_4, 2);
    assert!(r.pass);
}

#[test]
fn triple_join_n2() {
    let r = verify_remark_1_4(2, 10, 4).unwrap();
    assert!(r.isomorphic_to_reference);
    assert_eq!(r.vertices, 9);
    assert_eq!(r.cohomology.cohomology_dim, 1);
    assert!(r.pass);
}

#[test]
fn full_join_cohomology_n3() {
    let r = verify_lemma_2_1(3).unwrap();
    assert_eq!(r.top_cells, 420);
    assert_eq!(r.cohomology_dim, 1);
    assert!(r.pass);
}

#[test]
fn moment_k6_linking_is_symmetric_and_apex_independent() {
    let k6 = skeleton(5, 1).unwrap();
    let f = GeometricMap::from_vertex_points(k6.clone(), 3, moment_curve(&[1, 2, 3, 4, 5, 6], 3).unwrap()).unwrap();
    let cycle = |t: &[usize]| k6.with_simplices([[t[0], t[1]], [t[1], t[2]], [t[0], t[2]]].map(Simplex::new));
    let mut linked = 0;
    for i in 1..6 {
        for j in i + 1..6 {
            let t = [0, i, j];
            let u: Vec<usize> = (0..6).filter(|v| !t.contains(v)).collect();
            let base = lk2(&f, &cycle(&t), &cycle(&u), &ApexPolicy::default()).unwrap();
            assert_eq!(base, lk2(&f, &cycle(&u), &cycle(&t), &ApexPolicy::default()).unwrap());
            for seed in 1..=5 {
                assert_eq!(base, lk2(&f, &cycle(&t), &cycle(&u), &ApexPolicy::with_seed(seed)).unwrap());
            }
            linked += base as usize;
        }
    }
    assert_eq!(linked, 1);
}

#[test]
fn cone_over_non_obstructed_join_is_trivial() {
    // σ_2^0 * {a,b} = K_{3,2} is planar
    let k = join(&skeleton(2, 0).unwrap(), &Complex::points(["a", "b"])).unwrap();
    assert!(!obstruction_nonzero(&k, 1, 4, 0).unwrap().nonzero);
}
