use itertools::Itertools;
use num_traits::{One, Signed, Zero};

use super::exact::{nonnegative_feasible, rank, solve_square};
use super::{GeometryError, Point, Rat};

/// Outcome of intersecting two simplices of complementary dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IntersectionResult {
    Empty,
    /// A single transversal crossing in the relative interiors of both simplices.
    Transversal(Point),
    /// Singular system or an intersection on a proper face.
    Degenerate,
}

/// Whether the points are affinely independent.
pub fn affinely_independent(points: &[Point]) -> bool {
    if points.len() <= 1 {
        return true;
    }
    if points.len() > points[0].dim() + 1 {
        return false;
    }
    let rows: Vec<Vec<Rat>> = points[1..].iter().map(|p| p.sub(&points[0])).collect();
    rank(rows) == points.len() - 1
}

/// True iff every subset of at most `m + 1` points is affinely independent.
pub fn general_position_check(points: &[Point], m: usize) -> bool {
    if points.iter().any(|p| p.dim() != m) {
        return false;
    }
    let k = points.len().min(m + 1);
    // subsets of independent sets are independent, so the largest size suffices
    points.iter().cloned().combinations(k).all(|subset| affinely_independent(&subset))
}

fn check_dims(s: &[Point], t: &[Point], complementary: bool) -> Result<usize, GeometryError> {
    let m = s.first().or(t.first()).map_or(0, Point::dim);
    if s.is_empty() || t.is_empty() || s.iter().chain(t).any(|p| p.dim() != m) {
        return Err(GeometryError::Dimension("points must share one ambient dimension".into()));
    }
    if complementary && s.len() + t.len() != m + 2 {
        return Err(GeometryError::Dimension(format!(
            "simplices of dimensions {} and {} are not complementary in R^{m}",
            s.len() - 1,
            t.len() - 1
        )));
    }
    Ok(m)
}

/// Barycentric system `Σλ_i s_i = Σμ_j t_j, Σλ = Σμ = 1` for complementary simplices.
pub(crate) fn complementary_system(s: &[Point], t: &[Point], m: usize) -> (Vec<Vec<Rat>>, Vec<Rat>) {
    let mut a = Vec::with_capacity(m + 2);
    for k in 0..m {
        let mut row: Vec<Rat> = s.iter().map(|p| p.0[k].clone()).collect();
        row.extend(t.iter().map(|p| -&p.0[k]));
        a.push(row);
    }
    let mut sum_l = vec![Rat::one(); s.len()];
    sum_l.extend(std::iter::repeat_n(Rat::zero(), t.len()));
    let mut sum_m = vec![Rat::zero(); s.len()];
    sum_m.extend(std::iter::repeat_n(Rat::one(), t.len()));
    a.push(sum_l);
    a.push(sum_m);
    let mut b = vec![Rat::zero(); m];
    b.push(Rat::one());
    b.push(Rat::one());
    (a, b)
}

/// Classifies the intersection without re-checking affine independence.
pub(crate) fn intersect_unchecked(s: &[Point], t: &[Point], m: usize) -> IntersectionResult {
    let (a, b) = complementary_system(s, t, m);
    let Some(x) = solve_square(a, b) else {
        return IntersectionResult::Degenerate;
    };
    if x.iter().any(Signed::is_negative) {
        return IntersectionResult::Empty;
    }
    if x.iter().any(Zero::is_zero) {
        return IntersectionResult::Degenerate;
    }
    let point = Point((0..m).map(|k| s.iter().zip(&x).map(|(p, l)| &p.0[k] * l).sum()).collect());
    IntersectionResult::Transversal(point)
}

/// Intersects a `p`-simplex and a `q`-simplex in `R^{p+q}` exactly.
pub fn intersect_complementary(s: &[Point], t: &[Point]) -> Result<IntersectionResult, GeometryError> {
    let m = check_dims(s, t, true)?;
    for (name, pts) in [("first", s), ("second", t)] {
        if !affinely_independent(pts) {
            return Err(GeometryError::AffinelyDependent(format!("{name} simplex")));
        }
    }
    Ok(intersect_unchecked(s, t, m))
}

fn boxes_disjoint(s: &[Point], t: &[Point], m: usize) -> bool {
    (0..m).any(|k| {
        let (smin, smax) = s.iter().map(|p| &p.0[k]).minmax().into_option().expect("nonempty");
        let (tmin, tmax) = t.iter().map(|p| &p.0[k]).minmax().into_option().expect("nonempty");
        smax < tmin || tmax < smin
    })
}

/// Whether the closed convex hulls of two point sets meet, decided exactly.
pub fn hulls_intersect(s: &[Point], t: &[Point]) -> Result<bool, GeometryError> {
    let m = check_dims(s, t, false)?;
    if boxes_disjoint(s, t, m) {
        return Ok(false);
    }
    let all: Vec<Point> = s.iter().chain(t).cloned().collect();
    if affinely_independent(&all) {
        // disjoint faces of one nondegenerate simplex
        return Ok(false);
    }
    let (a, b) = complementary_system(s, t, m);
    Ok(nonnegative_feasible(&a, &b))
}
