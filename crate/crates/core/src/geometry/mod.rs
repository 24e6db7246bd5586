//! Exact rational geometry for realisations of simplicial complexes.
//!
//! Everything here uses arbitrary-precision rationals. Degenerate
//! configurations are detected and reported, never perturbed symbolically;
//! callers resample coordinates instead.

mod construct;
pub(crate) use construct::draw_integer_points;
pub mod exact;
mod linking;
mod predicates;

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::complex::{Complex, Simplex, Vertex};

pub use construct::{
    moment_curve, random_integer_points, suspension_embedding, DEFAULT_COORDINATE_BOUND, DEFAULT_RETRY_BUDGET,
};
pub use linking::{
    double_point_table, filling_intersection_parity, is_embedding, lk2, ApexPolicy, DoublePointTable,
    FillingParity, FillingRealization,
};
pub use predicates::{affinely_independent, general_position_check, hulls_intersect, intersect_complementary, IntersectionResult};

/// Exact rational scalar.
pub type Rat = BigRational;

pub fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("points are affinely dependent: {0}")]
    AffinelyDependent(String),
    #[error("repeated moment-curve parameter {0}")]
    RepeatedParameter(i64),
    #[error("retry budget of {0} exhausted without a generic configuration")]
    RetryExhausted(usize),
    #[error("degenerate intersection between {0}")]
    Degenerate(String),
    #[error("the two spheres are not disjoint: {0}")]
    NotDisjoint(String),
    #[error("base map is not an embedding")]
    NotAnEmbedding,
    #[error("simplex {0} is neither a base simplex nor an apex cone over one")]
    ForeignSimplex(String),
    #[error("apex heights must satisfy h_a > 0 > h_b")]
    ApexHeight,
    #[error("vertex {0} has no image")]
    MissingVertex(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A point of `R^m` with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Point(pub Vec<Rat>);

impl Point {
    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| rat(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.0
    }

    /// The point with one more coordinate appended.
    pub fn lifted(&self, last: Rat) -> Point {
        let mut c = self.0.clone();
        c.push(last);
        Point(c)
    }

    pub fn sub(&self, other: &Point) -> Vec<Rat> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }
}

/// Average of a nonempty list of points.
pub fn centroid<'a>(points: impl IntoIterator<Item = &'a Point>) -> Point {
    let pts: Vec<&Point> = points.into_iter().collect();
    assert!(!pts.is_empty(), "centroid of no points");
    let m = pts[0].dim();
    let count = rat(pts.len() as i64);
    Point((0..m).map(|k| pts.iter().map(|p| p.0[k].clone()).sum::<Rat>() / &count).collect())
}

/// Largest coordinate spread (an L∞ diameter), `1` for a single point.
pub fn linf_diameter<'a>(points: impl IntoIterator<Item = &'a Point>) -> Rat {
    let pts: Vec<&Point> = points.into_iter().collect();
    let m = pts.first().map_or(0, |p| p.dim());
    let d = (0..m)
        .map(|k| {
            let lo = pts.iter().map(|p| &p.0[k]).min().expect("nonempty");
            let hi = pts.iter().map(|p| &p.0[k]).max().expect("nonempty");
            hi - lo
        })
        .max()
        .unwrap_or_else(Rat::zero);
    if d.is_zero() {
        rat(1)
    } else {
        d
    }
}

/// A linear realisation of a complex in `R^m`: one point per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeometricMap {
    ambient: usize,
    complex: Complex,
    points: Vec<Option<Point>>,
}

impl GeometricMap {
    /// `points[v]` is the image of vertex `v`; vertices outside the complex may be `None`.
    pub fn new(complex: Complex, ambient: usize, points: Vec<Option<Point>>) -> Result<Self, GeometryError> {
        if points.len() != complex.universe_len() {
            return Err(GeometryError::Dimension(format!(
                "{} points for a universe of {} vertices",
                points.len(),
                complex.universe_len()
            )));
        }
        for v in complex.vertices() {
            match &points[v] {
                None => return Err(GeometryError::MissingVertex(complex.name(v).to_owned())),
                Some(p) if p.dim() != ambient => {
                    return Err(GeometryError::Dimension(format!(
                        "vertex {} has {} coordinates, ambient dimension is {ambient}",
                        complex.name(v),
                        p.dim()
                    )))
                }
                _ => {}
            }
        }
        Ok(GeometricMap { ambient, complex, points })
    }

    /// Assigns `points` to the complex's vertices in increasing vertex order.
    pub fn from_vertex_points(complex: Complex, ambient: usize, points: Vec<Point>) -> Result<Self, GeometryError> {
        let verts = complex.vertices();
        if verts.len() != points.len() {
            return Err(GeometryError::Dimension(format!(
                "{} points for {} vertices",
                points.len(),
                verts.len()
            )));
        }
        let mut slots = vec![None; complex.universe_len()];
        for (v, p) in verts.into_iter().zip(points) {
            slots[v] = Some(p);
        }
        GeometricMap::new(complex, ambient, slots)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn complex(&self) -> &Complex {
        &self.complex
    }

    pub fn point(&self, v: Vertex) -> &Point {
        self.points[v].as_ref().unwrap_or_else(|| panic!("vertex {} has no image", self.complex.name(v)))
    }

    pub fn try_point(&self, v: Vertex) -> Option<&Point> {
        self.points.get(v).and_then(Option::as_ref)
    }

    /// Images of the vertices of `s`.
    pub fn simplex_points(&self, s: &Simplex) -> Vec<Point> {
        s.vertices().iter().map(|&v| self.point(v).clone()).collect()
    }

    /// The same coordinates restricted to a subcomplex over the same universe;
    /// vertices outside `sub` lose their images.
    pub fn restrict(&self, sub: &Complex) -> Result<GeometricMap, GeometryError> {
        let present = sub.vertex_set();
        let points = self.points.iter().enumerate().map(|(v, p)| p.clone().filter(|_| present.contains(&v))).collect();
        GeometricMap::new(sub.clone(), self.ambient, points)
    }

    /// All images of present vertices.
    pub fn vertex_points(&self) -> Vec<&Point> {
        self.complex.vertices().into_iter().map(|v| self.point(v)).collect()
    }

    /// Serialises as `# ambient: m` followed by `<label> <num>/<den> ...` per vertex.
    pub fn to_text(&self) -> String {
        let mut out = format!("# ambient: {}\n", self.ambient);
        for v in self.complex.vertices() {
            out.push_str(self.complex.name(v));
            for c in self.point(v).coords() {
                write!(out, " {}/{}", c.numer(), c.denom()).expect("writing to a String");
            }
            out.push('\n');
        }
        out
    }

    /// Reads coordinates produced by [`GeometricMap::to_text`] for the vertices of `complex`.
    pub fn from_text(complex: Complex, text: &str) -> Result<Self, GeometryError> {
        let (ambient, labelled) = parse_points(text)?;
        let mut slots = vec![None; complex.universe_len()];
        for (label, p) in labelled {
            let v = complex
                .vertex_by_name(&label)
                .ok_or_else(|| GeometryError::Parse { line: 0, msg: format!("unknown vertex `{label}`") })?;
            slots[v] = Some(p);
        }
        GeometricMap::new(complex, ambient, slots)
    }
}

/// Parses a coordinate file into `(ambient dimension, [(label, point)])`.
pub fn parse_points(text: &str) -> Result<(usize, Vec<(String, Point)>), GeometryError> {
    let mut ambient: Option<usize> = None;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let err = |msg: String| GeometryError::Parse { line: i + 1, msg };
        if let Some(rest) = line.strip_prefix("# ambient:") {
            ambient = Some(rest.trim().parse().map_err(|_| err("bad ambient dimension".into()))?);
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let label = fields.next().expect("nonempty line").to_owned();
        let coords = fields
            .map(|f| parse_rat(f).ok_or_else(|| err(format!("bad coordinate `{f}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        match ambient {
            Some(m) if m != coords.len() => {
                return Err(err(format!("expected {m} coordinates, got {}", coords.len())))
            }
            None => ambient = Some(coords.len()),
            _ => {}
        }
        if out.iter().any(|(l, _)| l == &label) {
            return Err(err(format!("duplicate vertex `{label}`")));
        }
        out.push((label, Point(coords)));
    }
    Ok((ambient.unwrap_or(0), out))
}

/// Parses `num/den` or a bare integer.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.parse::<BigInt>().ok()?, d.parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    if d.is_zero() {
        return None;
    }
    Some(Rat::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::m_complex;

    #[test]
    fn map_text_round_trip() {
        let k = m_complex(1).unwrap();
        let pts = (0..k.num_vertices() as i64).map(|i| Point(vec![Rat::new(i.into(), 3.into()), rat(-i)])).collect();
        let f = GeometricMap::from_vertex_points(k.clone(), 2, pts).unwrap();
        let text = f.to_text();
        assert!(text.contains("a_1 1/3 -1/1"));
        assert_eq!(GeometricMap::from_text(k, &text).unwrap(), f);
    }

    #[test]
    fn parse_errors() {
        assert!(parse_points("x 1/0\n").is_err());
        assert!(parse_points("# ambient: 2\nx 1\n").is_err());
        assert!(parse_points("x 1 2\nx 3 4\n").is_err());
        assert_eq!(parse_rat("-6/4"), Some(Rat::new((-3).into(), 2.into())));
    }

    #[test]
    fn missing_vertex_rejected() {
        let k = m_complex(1).unwrap();
        let slots = vec![None; k.universe_len()];
        assert!(matches!(GeometricMap::new(k, 2, slots), Err(GeometryError::MissingVertex(_))));
    }
}
