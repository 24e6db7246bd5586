//! Point configurations and the suspension construction.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linking::is_embedding;
use super::predicates::general_position_check;
use super::{centroid, rat, GeometricMap, GeometryError, Point, Rat};
use crate::complex::{Complex, Simplex, Vertex};

/// Coordinate bound `B` for random configurations (coordinates in `[-B, B]`).
pub const DEFAULT_COORDINATE_BOUND: i64 = 1_000_000;

/// Resampling budget for every randomised genericity loop.
pub const DEFAULT_RETRY_BUDGET: usize = 64;

/// Points `(t, t^2, …, t^m)` on the moment curve.
pub fn moment_curve(params: &[i64], m: usize) -> Result<Vec<Point>, GeometryError> {
    if m == 0 {
        return Err(GeometryError::Dimension("moment curve needs m >= 1".into()));
    }
    let mut seen = std::collections::HashSet::new();
    for &t in params {
        if !seen.insert(t) {
            return Err(GeometryError::RepeatedParameter(t));
        }
    }
    Ok(params
        .iter()
        .map(|&t| {
            let t = rat(t);
            let mut acc = t.clone();
            let mut coords = Vec::with_capacity(m);
            for _ in 0..m {
                coords.push(acc.clone());
                acc *= &t;
            }
            Point(coords)
        })
        .collect())
}

/// Draws a full configuration of `count` integer points in `[-bound, bound]^m`
/// from `rng`, in row-major order.
pub(crate) fn draw_integer_points(rng: &mut ChaCha8Rng, count: usize, m: usize, bound: i64) -> Vec<Point> {
    (0..count)
        .map(|_| Point((0..m).map(|_| rat(rng.gen_range(-bound..=bound))).collect()))
        .collect()
}

/// Seeded random integer points in general position.
///
/// The generator is ChaCha8 seeded with `seed_from_u64(seed)`; configurations
/// are resampled wholesale until [`general_position_check`] passes.
pub fn random_integer_points(count: usize, m: usize, bound: i64, seed: u64) -> Result<Vec<Point>, GeometryError> {
    if bound < 1 {
        return Err(GeometryError::Dimension("coordinate bound must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..DEFAULT_RETRY_BUDGET {
        let pts = draw_integer_points(&mut rng, count, m, bound);
        if general_position_check(&pts, m) {
            return Ok(pts);
        }
    }
    Err(GeometryError::RetryExhausted(DEFAULT_RETRY_BUDGET))
}

/// Cones a base realisation in `R^{m-1}` from two apexes on either side of the
/// hyperplane `x_m = 0`.
///
/// `base` realises a subcomplex of `target` over the same vertex universe;
/// every simplex of `target` must be a base simplex, an apex, or an apex
/// joined with a base simplex. Both apexes sit above the centroid of the base
/// points, at heights `h_a > 0 > h_b`.
pub fn suspension_embedding(
    base: &GeometricMap,
    target: &Complex,
    apex_a: Vertex,
    apex_b: Vertex,
    h_a: &Rat,
    h_b: &Rat,
) -> Result<GeometricMap, GeometryError> {
    if !h_a.is_positive() || !h_b.is_negative() {
        return Err(GeometryError::ApexHeight);
    }
    if base.complex().names() != target.names() {
        return Err(GeometryError::Dimension("base and target use different vertex universes".into()));
    }
    for s in target.simplices() {
        let rest: Vec<Vertex> = s.vertices().iter().copied().filter(|&v| v != apex_a && v != apex_b).collect();
        let apexes = s.vertices().len() - rest.len();
        let ok = apexes <= 1 && (rest.is_empty() || base.complex().contains(&Simplex::new(rest)));
        if !ok {
            return Err(GeometryError::ForeignSimplex(target.label_simplex(s)));
        }
    }
    if !is_embedding(base)? {
        return Err(GeometryError::NotAnEmbedding);
    }
    let center = centroid(base.vertex_points());
    let mut slots: Vec<Option<Point>> = vec![None; target.universe_len()];
    for v in base.complex().vertices() {
        slots[v] = Some(base.point(v).lifted(Rat::zero()));
    }
    slots[apex_a] = Some(center.lifted(h_a.clone()));
    slots[apex_b] = Some(center.lifted(h_b.clone()));
    GeometricMap::new(target.clone(), base.ambient() + 1, slots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{m_complex, skeleton, Complex};
    use crate::geometry::{affinely_independent, is_embedding};

    #[test]
    fn moment_points() {
        let line = moment_curve(&[1, 2, 3, 4], 1).unwrap();
        assert_eq!(line, (1..=4).map(|t| Point::from_ints(&[t])).collect::<Vec<_>>());
        let cubic = moment_curve(&[2], 3).unwrap();
        assert_eq!(cubic[0], Point::from_ints(&[2, 4, 8]));
        assert!(matches!(moment_curve(&[1, 1], 2), Err(GeometryError::RepeatedParameter(1))));
    }

    #[test]
    fn moment_points_in_general_position() {
        for m in 1..=5 {
            let pts = moment_curve(&(1..=(m as i64 + 3)).collect::<Vec<_>>(), m).unwrap();
            assert!(general_position_check(&pts, m), "m = {m}");
        }
    }

    #[test]
    fn moment_curve_realises_sigma_7_2() {
        let k = skeleton(7, 2).unwrap();
        let pts = moment_curve(&(1..=8).collect::<Vec<_>>(), 5).unwrap();
        let f = GeometricMap::from_vertex_points(k, 5, pts).unwrap();
        assert!(is_embedding(&f).unwrap());
    }

    #[test]
    fn random_points_are_reproducible_and_generic() {
        let a = random_integer_points(8, 4, DEFAULT_COORDINATE_BOUND, 1).unwrap();
        assert!(general_position_check(&a, 4));
        assert_eq!(a, random_integer_points(8, 4, DEFAULT_COORDINATE_BOUND, 1).unwrap());
        assert_ne!(a, random_integer_points(8, 4, DEFAULT_COORDINATE_BOUND, 2).unwrap());
        assert!(affinely_independent(&a[..5]));
    }

    #[test]
    fn tiny_lattice_exhausts_budget() {
        // 9 lattice points of [-1,1]^2 hold 8 lines of three collinear points;
        // twenty points always repeat one of them.
        assert!(matches!(random_integer_points(20, 2, 1, 3), Err(GeometryError::RetryExhausted(_))));
        assert!(random_integer_points(3, 2, 0, 3).is_err());
    }

    fn m1_base() -> (Complex, GeometricMap) {
        let m1 = m_complex(1).unwrap();
        let base_vertices = ["a_0", "a_1", "a_2", "c"].map(|l| m1.vertex_by_name(l).unwrap());
        let base = m1.with_simplices(base_vertices.iter().map(|&v| Simplex::vertex(v)));
        let pts = moment_curve(&[1, 2, 3, 4], 1).unwrap();
        let f = GeometricMap::from_vertex_points(base, 1, pts).unwrap();
        (m1, f)
    }

    #[test]
    fn suspension_of_points_embeds_m1() {
        let (m1, base) = m1_base();
        let (a, b) = (m1.vertex_by_name("a").unwrap(), m1.vertex_by_name("b").unwrap());
        let f = suspension_embedding(&base, &m1, a, b, &rat(3), &rat(-2)).unwrap();
        assert_eq!(f.ambient(), 2);
        assert!(is_embedding(&f).unwrap());
        assert!(matches!(
            suspension_embedding(&base, &m1, a, b, &rat(0), &rat(-2)),
            Err(GeometryError::ApexHeight)
        ));
    }

    #[test]
    fn foreign_simplex_rejected() {
        let (m1, base) = m1_base();
        let (a, b) = (m1.vertex_by_name("a").unwrap(), m1.vertex_by_name("b").unwrap());
        let with_ab = m1.union(&m1.with_simplices([Simplex::new([a, b])]));
        assert!(matches!(
            suspension_embedding(&base, &with_ab, a, b, &rat(1), &rat(-1)),
            Err(GeometryError::ForeignSimplex(_)) | Err(GeometryError::Dimension(_))
        ));
    }
}
