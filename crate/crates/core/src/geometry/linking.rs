//! Double points, embedding checks and mod-2 linking numbers of realised complexes.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::predicates::{affinely_independent, hulls_intersect, intersect_unchecked, IntersectionResult};
use super::{centroid, linf_diameter, rat, GeometricMap, GeometryError, Point, Rat, DEFAULT_RETRY_BUDGET};
use crate::complex::{Complex, Simplex};
use crate::deleted_product::QuotientCell;

/// Per-pair double-point counts for disjoint top simplices of an immersion in `R^{2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoublePointTable {
    /// Pairs in canonical cell order with their crossing count (0 or 1 for linear maps).
    pub entries: Vec<(QuotientCell, u8)>,
    pub total: usize,
}

impl DoublePointTable {
    pub fn parity(&self) -> bool {
        self.total % 2 == 1
    }
}

/// Counts transversal double points between every pair of vertex-disjoint
/// `n`-simplices. Fails with [`GeometryError::Degenerate`] when some pair
/// meets non-transversally, which signals the caller to resample.
pub fn double_point_table(f: &GeometricMap, n: usize) -> Result<DoublePointTable, GeometryError> {
    if f.ambient() != 2 * n {
        return Err(GeometryError::Dimension(format!("double points need R^{}, map is in R^{}", 2 * n, f.ambient())));
    }
    let k = f.complex();
    let tops = k.simplices_of_dim(n);
    let pts: Vec<Vec<Point>> = tops.iter().map(|s| f.simplex_points(s)).collect();
    for (s, p) in tops.iter().zip(&pts) {
        if !affinely_independent(p) {
            return Err(GeometryError::Degenerate(format!("{} is flat", k.label_simplex(s))));
        }
    }
    let mut entries = Vec::new();
    for i in 0..tops.len() {
        for j in i + 1..tops.len() {
            if !tops[i].is_disjoint(&tops[j]) {
                continue;
            }
            let count = match intersect_unchecked(&pts[i], &pts[j], 2 * n) {
                IntersectionResult::Transversal(_) => 1,
                IntersectionResult::Empty => 0,
                // a singular system with disjoint hulls has no double point at all
                IntersectionResult::Degenerate if !hulls_intersect(&pts[i], &pts[j])? => 0,
                IntersectionResult::Degenerate => {
                    return Err(GeometryError::Degenerate(format!(
                        "{} and {}",
                        k.label_simplex(&tops[i]),
                        k.label_simplex(&tops[j])
                    )))
                }
            };
            entries.push((QuotientCell::new(tops[i].clone(), tops[j].clone()), count));
        }
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let total = entries.iter().map(|(_, c)| *c as usize).sum();
    Ok(DoublePointTable { entries, total })
}

/// Whether the linear map is an embedding of its complex.
///
/// For linear maps it suffices that every simplex is nondegenerate and that
/// the hulls of every two vertex-disjoint simplices are disjoint: a common
/// point of two simplices outside their common face always yields a common
/// point of two disjoint faces.
pub fn is_embedding(f: &GeometricMap) -> Result<bool, GeometryError> {
    let k = f.complex();
    let simplices: Vec<&Simplex> = k.simplices().collect();
    let pts: Vec<Vec<Point>> = simplices.iter().map(|s| f.simplex_points(s)).collect();
    if pts.iter().any(|p| !affinely_independent(p)) {
        return Ok(false);
    }
    for i in 0..simplices.len() {
        for j in i + 1..simplices.len() {
            if simplices[i].is_disjoint(simplices[j]) && hulls_intersect(&pts[i], &pts[j])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Apex choice for cone chains bounding a sphere.
///
/// The first apex sits at twice the configuration's L∞ diameter along the
/// last axis from the centroid. Retries (and every attempt of a nonzero seed)
/// add integer jitter drawn from ChaCha8 seeded with `seed`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApexPolicy {
    pub seed: u64,
    pub budget: usize,
}

impl Default for ApexPolicy {
    fn default() -> Self {
        ApexPolicy { seed: 0, budget: DEFAULT_RETRY_BUDGET }
    }
}

impl ApexPolicy {
    pub fn with_seed(seed: u64) -> Self {
        ApexPolicy { seed, ..Default::default() }
    }

    fn apexes(&self, base: Point, offset: Rat, jitter: &Rat) -> impl Iterator<Item = Point> + '_ {
        let m = base.dim();
        let bound: i64 = jitter.ceil().to_integer().try_into().unwrap_or(i64::MAX / 4).max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        (0..self.budget).map(move |attempt| {
            let mut c = base.0.clone();
            c[m - 1] += &offset;
            if attempt > 0 || self.seed != 0 {
                for x in c.iter_mut() {
                    *x += Rat::from_integer(BigInt::from(rng.gen_range(-bound..=bound)));
                }
            }
            Point(c)
        })
    }
}

fn pure_tops(k: &Complex) -> Vec<Simplex> {
    if k.dim() < 0 {
        return Vec::new();
    }
    k.simplices_of_dim(k.dim() as usize)
}

/// Intersection parity of the cone chain `apex * tops` with the simplices of `delta`,
/// or `None` if some crossing is degenerate.
fn cone_parity(apex: &Point, tops: &[Vec<Point>], delta: &[Vec<Point>], m: usize) -> Option<bool> {
    let mut parity = false;
    for t in tops {
        let mut cone = Vec::with_capacity(t.len() + 1);
        cone.push(apex.clone());
        cone.extend(t.iter().cloned());
        if !affinely_independent(&cone) {
            return None;
        }
        for s in delta {
            match intersect_unchecked(&cone, s, m) {
                IntersectionResult::Transversal(_) => parity = !parity,
                IntersectionResult::Empty => {}
                IntersectionResult::Degenerate => return None,
            }
        }
    }
    Some(parity)
}

fn sphere_points(f: &GeometricMap, k: &Complex) -> Vec<Vec<Point>> {
    pure_tops(k).iter().map(|s| f.simplex_points(s)).collect()
}

fn check_link_input(f: &GeometricMap, gamma: &Complex, delta: &Complex) -> Result<(), GeometryError> {
    let (p, q) = (gamma.dim(), delta.dim());
    if p < 0 || q < 0 || (p + q + 1) as usize != f.ambient() {
        return Err(GeometryError::Dimension(format!(
            "spheres of dimensions {p} and {q} do not link in R^{}",
            f.ambient()
        )));
    }
    for v in gamma.vertices().into_iter().chain(delta.vertices()) {
        if f.try_point(v).is_none() {
            return Err(GeometryError::MissingVertex(gamma.name(v).to_owned()));
        }
    }
    if !gamma.vertex_set().is_disjoint(&delta.vertex_set()) {
        return Err(GeometryError::NotDisjoint("spheres share a vertex".into()));
    }
    for (gs, gp) in pure_tops(gamma).iter().zip(sphere_points(f, gamma)) {
        for (ds, dp) in pure_tops(delta).iter().zip(sphere_points(f, delta)) {
            if hulls_intersect(&gp, &dp)? {
                return Err(GeometryError::NotDisjoint(format!(
                    "{} meets {}",
                    gamma.label_simplex(gs),
                    delta.label_simplex(ds)
                )));
            }
        }
    }
    Ok(())
}

/// Mod-2 linking number of disjoint realised spheres `gamma` (dim p) and
/// `delta` (dim q) with `p + q = m - 1`: the parity of crossings between the
/// cone over `gamma` from a generic apex and the simplices of `delta`.
pub fn lk2(f: &GeometricMap, gamma: &Complex, delta: &Complex, policy: &ApexPolicy) -> Result<bool, GeometryError> {
    check_link_input(f, gamma, delta)?;
    let m = f.ambient();
    let g = sphere_points(f, gamma);
    let d = sphere_points(f, delta);
    let all: Vec<&Point> = g.iter().chain(&d).flatten().collect();
    let diam = linf_diameter(all.iter().copied());
    let base = centroid(all.iter().copied());
    for apex in policy.apexes(base, &diam * rat(2), &diam) {
        if let Some(parity) = cone_parity(&apex, &g, &d, m) {
            return Ok(parity);
        }
    }
    Err(GeometryError::RetryExhausted(policy.budget))
}

/// How a filling simplex was realised when counting its crossings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FillingRealization {
    /// The straight simplex on the images of its vertices.
    Linear,
    /// Stellar subdivision with the barycentre lifted off the vertex images,
    /// used when the straight simplex meets `delta` non-transversally.
    Stellar { apex: Point },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingParity {
    pub parity: bool,
    pub crossings: usize,
    pub realization: FillingRealization,
}

/// Parity of crossings between a realised filling `n`-simplex `filling`
/// (whose boundary is one sphere) and the top simplices of `delta`.
///
/// The straight realisation is used when it is generic. Otherwise the
/// filling is realised piecewise linearly as the cone over its boundary from
/// its barycentre pushed off along the last axis by `diam / 64`, with seeded
/// jitter on retries.
pub fn filling_intersection_parity(
    f: &GeometricMap,
    filling: &Simplex,
    delta: &Complex,
    policy: &ApexPolicy,
) -> Result<FillingParity, GeometryError> {
    let m = f.ambient();
    let fill_pts = f.simplex_points(filling);
    let d = sphere_points(f, delta);
    if fill_pts.len() + d.first().map_or(0, Vec::len) != m + 2 {
        return Err(GeometryError::Dimension("filling and sphere are not complementary".into()));
    }
    if affinely_independent(&fill_pts) {
        let mut crossings = 0;
        let mut generic = true;
        for s in &d {
            match intersect_unchecked(&fill_pts, s, m) {
                IntersectionResult::Transversal(_) => crossings += 1,
                IntersectionResult::Empty => {}
                IntersectionResult::Degenerate => {
                    generic = false;
                    break;
                }
            }
        }
        if generic {
            return Ok(FillingParity { parity: crossings % 2 == 1, crossings, realization: FillingRealization::Linear });
        }
    }
    let facets: Vec<Vec<Point>> = filling.facets().iter().map(|s| f.simplex_points(s)).collect();
    let all: Vec<&Point> = fill_pts.iter().chain(d.iter().flatten()).collect();
    let diam = linf_diameter(all.iter().copied());
    let lift = &diam / rat(64);
    let jitter = &diam / rat(256);
    let base = centroid(fill_pts.iter());
    // jitter of up to diam/256 per coordinate, in steps of diam/(256·J)
    let steps = Rat::from_integer(BigInt::from(16));
    for (attempt, raw) in policy.apexes(Point(vec![Rat::zero(); m]), Rat::zero(), &steps).enumerate() {
        let mut apex = base.clone();
        apex.0[m - 1] += &lift;
        if attempt > 0 || policy.seed != 0 {
            for (x, r) in apex.0.iter_mut().zip(&raw.0) {
                *x += r * &jitter / &steps;
            }
        }
        let mut crossings = 0;
        let mut generic = true;
        for t in &facets {
            let mut cone = vec![apex.clone()];
            cone.extend(t.iter().cloned());
            if !affinely_independent(&cone) {
                generic = false;
                break;
            }
            for s in &d {
                match intersect_unchecked(&cone, s, m) {
                    IntersectionResult::Transversal(_) => crossings += 1,
                    IntersectionResult::Empty => {}
                    IntersectionResult::Degenerate => {
                        generic = false;
                        break;
                    }
                }
            }
            if !generic {
                break;
            }
        }
        if generic {
            return Ok(FillingParity {
                parity: crossings % 2 == 1,
                crossings,
                realization: FillingRealization::Stellar { apex },
            });
        }
    }
    Err(GeometryError::RetryExhausted(policy.budget))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{full_join_abc, skeleton, Complex, Simplex};
    use crate::geometry::{moment_curve, random_integer_points, DEFAULT_COORDINATE_BOUND};

    fn labelled(names: &[&str], gens: &[&[usize]]) -> Complex {
        Complex::from_generators(names.iter().map(|s| s.to_string()).collect(), gens.iter().map(|g| Simplex::new(g.iter().copied())))
    }

    #[test]
    fn triangle_and_point_pair_in_plane() {
        let names = ["p", "q", "r", "x", "y"];
        let all = labelled(&names, &[&[0, 1], &[1, 2], &[0, 2], &[3], &[4]]);
        let f = GeometricMap::from_vertex_points(
            all.clone(),
            2,
            vec![
                Point::from_ints(&[0, 0]),
                Point::from_ints(&[4, 0]),
                Point::from_ints(&[0, 4]),
                Point::from_ints(&[1, 1]),
                Point::from_ints(&[10, 10]),
            ],
        )
        .unwrap();
        let tri = labelled(&names, &[&[0, 1], &[1, 2], &[0, 2]]);
        let s0 = labelled(&names, &[&[3], &[4]]);
        assert!(lk2(&f, &tri, &s0, &ApexPolicy::default()).unwrap());
        assert!(lk2(&f, &s0, &tri, &ApexPolicy::default()).unwrap());
    }

    #[test]
    fn interleaved_points_on_a_line() {
        let names = ["p1", "p2", "p3", "p4"];
        let all = labelled(&names, &[&[0], &[1], &[2], &[3]]);
        let f = GeometricMap::from_vertex_points(all, 1, moment_curve(&[1, 2, 3, 4], 1).unwrap()).unwrap();
        let pair = |i: usize, j: usize| labelled(&names, &[&[i], &[j]]);
        // {1,3} vs {2,4}
        assert!(lk2(&f, &pair(0, 2), &pair(1, 3), &ApexPolicy::default()).unwrap());
        // {1,2} vs {3,4}
        assert!(!lk2(&f, &pair(0, 1), &pair(2, 3), &ApexPolicy::default()).unwrap());
        assert!(!lk2(&f, &pair(0, 3), &pair(1, 2), &ApexPolicy::default()).unwrap());
    }

    /// Triangle boundaries of K_6 on the moment curve in R^3: only {1,3,5} | {2,4,6} links.
    #[test]
    fn moment_k6_triangle_pairs() {
        let k6 = skeleton(5, 1).unwrap();
        let f = GeometricMap::from_vertex_points(k6.clone(), 3, moment_curve(&[1, 2, 3, 4, 5, 6], 3).unwrap()).unwrap();
        let boundary = |t: [usize; 3]| k6.with_simplices([[t[0], t[1]], [t[1], t[2]], [t[0], t[2]]].map(Simplex::new));
        let mut linked = Vec::new();
        for rest in itertools::Itertools::combinations(1..6usize, 2) {
            let t = [0, rest[0], rest[1]];
            let other: Vec<usize> = (0..6).filter(|v| !t.contains(v)).collect();
            let u = [other[0], other[1], other[2]];
            let forward = lk2(&f, &boundary(t), &boundary(u), &ApexPolicy::default()).unwrap();
            let backward = lk2(&f, &boundary(u), &boundary(t), &ApexPolicy::default()).unwrap();
            assert_eq!(forward, backward);
            if forward {
                linked.push(t);
            }
        }
        assert_eq!(linked, vec![[0, 2, 4]]);
    }

    #[test]
    fn lk2_rejects_bad_input() {
        let names = ["p", "q", "r"];
        let all = labelled(&names, &[&[0], &[1], &[2]]);
        let f = GeometricMap::from_vertex_points(all, 2, vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1])]).unwrap();
        let a = labelled(&names, &[&[0], &[1]]);
        let b = labelled(&names, &[&[1], &[2]]);
        assert!(lk2(&f, &a, &b, &ApexPolicy::default()).is_err());
    }

    #[test]
    fn single_simplex_embeds_and_k5_does_not() {
        let tri = labelled(&["p", "q", "r"], &[&[0, 1, 2]]);
        let f = GeometricMap::from_vertex_points(tri, 2, vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1])]).unwrap();
        assert!(is_embedding(&f).unwrap());
        let k5 = skeleton(4, 1).unwrap();
        for seed in 0..5 {
            let pts = random_integer_points(5, 2, 1000, seed).unwrap();
            let f = GeometricMap::from_vertex_points(k5.clone(), 2, pts).unwrap();
            assert!(!is_embedding(&f).unwrap());
        }
    }

    #[test]
    fn folded_triangles_are_not_embedded() {
        // two triangles sharing the edge pq, with the third vertices on the same side
        let k = labelled(&["p", "q", "r", "s"], &[&[0, 1, 2], &[0, 1, 3]]);
        let f = GeometricMap::from_vertex_points(
            k,
            2,
            vec![Point::from_ints(&[0, 0]), Point::from_ints(&[2, 0]), Point::from_ints(&[0, 1]), Point::from_ints(&[1, 2])],
        )
        .unwrap();
        assert!(!is_embedding(&f).unwrap());
    }

    #[test]
    fn k33_double_points_odd() {
        let k = full_join_abc(1).unwrap();
        for seed in 0..10 {
            let pts = random_integer_points(6, 2, DEFAULT_COORDINATE_BOUND, seed).unwrap();
            let f = GeometricMap::from_vertex_points(k.clone(), 2, pts).unwrap();
            let table = double_point_table(&f, 1).unwrap();
            assert_eq!(table.entries.len(), 18);
            assert!(table.parity(), "seed {seed}");
        }
    }

    #[test]
    fn apex_independence() {
        let k6 = skeleton(5, 1).unwrap();
        let f = GeometricMap::from_vertex_points(k6.clone(), 3, moment_curve(&[1, 2, 3, 4, 5, 6], 3).unwrap()).unwrap();
        let g = k6.with_simplices([[0, 2], [2, 4], [0, 4]].map(Simplex::new));
        let d = k6.with_simplices([[1, 3], [3, 5], [1, 5]].map(Simplex::new));
        for seed in 1..=5 {
            assert!(lk2(&f, &g, &d, &ApexPolicy::with_seed(seed)).unwrap());
        }
    }

    #[test]
    fn filling_matches_cone() {
        let k6 = skeleton(5, 1).unwrap();
        let f = GeometricMap::from_vertex_points(k6.clone(), 3, moment_curve(&[1, 2, 3, 4, 5, 6], 3).unwrap()).unwrap();
        let d = k6.with_simplices([[1, 3], [3, 5], [1, 5]].map(Simplex::new));
        let fill = filling_intersection_parity(&f, &Simplex::new([0, 2, 4]), &d, &ApexPolicy::default()).unwrap();
        assert!(fill.parity);
        assert_eq!(fill.realization, FillingRealization::Linear);
    }
}
