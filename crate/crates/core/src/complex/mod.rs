//! Finite abstract simplicial complexes over a dense vertex universe.
//!
//! A [`Complex`] carries a *universe* of labelled vertex identifiers
//! `0..V` and a face-closed set of [`Simplex`] values over that universe.
//! A vertex is part of the complex exactly when its 0-simplex is present,
//! so subcomplexes obtained by deletion keep the labels of the host and can
//! be compared with it simplex by simplex.

mod format;
mod iso;

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use itertools::Itertools;
use thiserror::Error;

pub use format::{parse_complex, write_complex};
pub use iso::{count_isomorphic_subcomplexes, find_isomorphism, SubcomplexMatch, ISO_HOST_LIMIT};

/// Vertex identifier inside a complex's universe.
pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("invalid parameters: {0}")]
    Parameters(String),
    #[error("vertex label `{0}` occurs in both join factors")]
    OverlappingLabels(String),
    #[error("expected a complex of dimension {expected}, got {actual}")]
    DimensionMismatch { expected: isize, actual: isize },
    #[error("simplex {0} is not in the complex")]
    MissingSimplex(String),
    #[error("isomorphism search limited to {limit} host vertices, got {actual}")]
    TooLarge { limit: usize, actual: usize },
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A nonempty simplex, stored as a strictly increasing list of vertices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    /// Builds a simplex from arbitrary vertices; they are sorted and deduplicated.
    ///
    /// Panics on an empty vertex list.
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        assert!(!v.is_empty(), "a simplex needs at least one vertex");
        Simplex(v)
    }

    pub fn vertex(v: Vertex) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_disjoint(&self, other: &Simplex) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Codimension-one faces, in canonical order. A vertex has none.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() < 2 {
            return Vec::new();
        }
        let mut out: Vec<Simplex> = (0..self.0.len())
            .map(|skip| {
                Simplex(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != skip)
                        .map(|(_, &v)| v)
                        .collect(),
                )
            })
            .collect();
        out.sort();
        out
    }

    /// All nonempty faces including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        (1..=self.0.len())
            .flat_map(move |k| self.0.iter().copied().combinations(k))
            .map(Simplex)
    }

    /// Union of two simplices (used for joins).
    pub fn union(&self, other: &Simplex) -> Simplex {
        Simplex::new(self.0.iter().chain(other.0.iter()).copied())
    }

    /// Applies a vertex relabelling.
    pub fn map(&self, f: impl Fn(Vertex) -> Vertex) -> Simplex {
        Simplex::new(self.0.iter().map(|&v| f(v)))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}|", self.0.iter().join(" "))
    }
}

/// A finite face-closed family of simplices over a labelled vertex universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    names: Vec<String>,
    simplices: BTreeSet<Simplex>,
}

impl Complex {
    /// The empty complex over the given universe.
    pub fn empty(names: Vec<String>) -> Self {
        Complex { names, simplices: BTreeSet::new() }
    }

    /// Isolated vertices, one per label.
    pub fn points<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        let names: Vec<String> = labels.into_iter().map(Into::into).collect();
        let simplices = (0..names.len()).map(Simplex::vertex).collect();
        Complex { names, simplices }
    }

    /// Face closure of `generators` over the given universe.
    pub fn from_generators(names: Vec<String>, generators: impl IntoIterator<Item = Simplex>) -> Self {
        let mut simplices = BTreeSet::new();
        for g in generators {
            assert!(
                g.vertices().iter().all(|&v| v < names.len()),
                "simplex {g} outside the vertex universe"
            );
            if simplices.contains(&g) {
                continue;
            }
            simplices.extend(g.faces());
        }
        Complex { names, simplices }
    }

    /// Same universe, different simplex set (closure is taken).
    pub fn with_simplices(&self, generators: impl IntoIterator<Item = Simplex>) -> Self {
        Complex::from_generators(self.names.clone(), generators)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn vertex_by_name(&self, label: &str) -> Option<Vertex> {
        self.names.iter().position(|n| n == label)
    }

    pub fn universe_len(&self) -> usize {
        self.names.len()
    }

    /// Vertices actually present in the complex.
    pub fn vertices(&self) -> Vec<Vertex> {
        self.simplices.iter().filter(|s| s.dim() == 0).map(|s| s.vertices()[0]).collect()
    }

    pub fn num_vertices(&self) -> usize {
        self.simplices.iter().filter(|s| s.dim() == 0).count()
    }

    /// Dimension of the complex; `-1` when empty.
    pub fn dim(&self) -> isize {
        self.simplices.iter().map(|s| s.dim() as isize).max().unwrap_or(-1)
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    /// All simplices in canonical (lexicographic) order.
    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    /// The simplices of dimension exactly `k`.
    pub fn simplices_of_dim(&self, k: usize) -> Vec<Simplex> {
        self.simplices.iter().filter(|s| s.dim() == k).cloned().collect()
    }

    /// Simplices with no proper coface in the complex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: HashSet<&Simplex> = HashSet::new();
        let mut by_dim: Vec<&Simplex> = self.simplices.iter().collect();
        by_dim.sort_by(|a, b| b.dim().cmp(&a.dim()).then(a.cmp(b)));
        let mut out = Vec::new();
        for s in by_dim {
            if covered.contains(s) {
                continue;
            }
            out.push(s.clone());
            for f in s.faces() {
                if let Some(r) = self.simplices.get(&f) {
                    covered.insert(r);
                }
            }
        }
        out.sort();
        out
    }

    /// Number of simplices per dimension, index = dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let d = self.dim();
        let mut f = vec![0; (d + 1).max(0) as usize];
        for s in &self.simplices {
            f[s.dim()] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// Every nonempty face of every member is a member.
    pub fn is_face_closed(&self) -> bool {
        self.simplices.iter().all(|s| s.facets().iter().all(|f| self.simplices.contains(f)))
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.simplices.iter().all(|s| other.contains(s))
    }

    /// Union of two subcomplexes of the same universe.
    pub fn union(&self, other: &Complex) -> Complex {
        assert_eq!(self.names, other.names, "union of complexes over different universes");
        let mut simplices = self.simplices.clone();
        simplices.extend(other.simplices.iter().cloned());
        Complex { names: self.names.clone(), simplices }
    }

    /// Vertices of the simplices present, as a set.
    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.vertices().into_iter().collect()
    }

    /// Removes each simplex in `to_remove` together with all of its cofaces.
    pub fn delete_simplices<'a>(
        &self,
        to_remove: impl IntoIterator<Item = &'a Simplex>,
    ) -> Result<Complex, ComplexError> {
        let to_remove: Vec<&Simplex> = to_remove.into_iter().collect();
        for s in &to_remove {
            if !self.contains(s) {
                return Err(ComplexError::MissingSimplex(self.label_simplex(s)));
            }
        }
        let simplices = self
            .simplices
            .iter()
            .filter(|s| !to_remove.iter().any(|r| r.is_face_of(s)))
            .cloned()
            .collect();
        Ok(Complex { names: self.names.clone(), simplices })
    }

    /// Applies an injective vertex relabelling into a new universe.
    pub fn relabel(&self, names: Vec<String>, map: impl Fn(Vertex) -> Vertex) -> Complex {
        let simplices = self.simplices.iter().map(|s| s.map(&map)).collect();
        Complex { names, simplices }
    }

    /// Human-readable label of a simplex, e.g. `|a a_0 a_1|`.
    pub fn label_simplex(&self, s: &Simplex) -> String {
        format!(
            "|{}|",
            s.vertices()
                .iter()
                .map(|&v| self.names.get(v).map(String::as_str).unwrap_or("?"))
                .join(" ")
        )
    }

    /// Looks up a simplex by vertex labels.
    pub fn simplex_by_names(&self, labels: &[&str]) -> Option<Simplex> {
        let ids: Option<Vec<Vertex>> = labels.iter().map(|l| self.vertex_by_name(l)).collect();
        ids.filter(|v| !v.is_empty()).map(Simplex::new)
    }
}

/// `σ_m^k`: all faces of dimension at most `k` of the simplex on `a_0..a_m`.
pub fn skeleton(m: usize, k: usize) -> Result<Complex, ComplexError> {
    if k > m {
        return Err(ComplexError::Parameters(format!("skeleton needs k <= m, got m={m}, k={k}")));
    }
    let names = (0..=m).map(|i| format!("a_{i}")).collect();
    let gens = (0..=m).combinations(k + 1).map(Simplex);
    Ok(Complex::from_generators(names, gens))
}

/// Join of two complexes. The vertices of `l` are renumbered after those of `k`.
pub fn join(k: &Complex, l: &Complex) -> Result<Complex, ComplexError> {
    if let Some(clash) = k.names.iter().find(|n| l.names.contains(n)) {
        return Err(ComplexError::OverlappingLabels(clash.clone()));
    }
    let offset = k.universe_len();
    let mut names = k.names.clone();
    names.extend(l.names.iter().cloned());
    let shifted: Vec<Simplex> = l.simplices.iter().map(|s| s.map(|v| v + offset)).collect();
    let mut simplices: BTreeSet<Simplex> = k.simplices.iter().cloned().collect();
    simplices.extend(shifted.iter().cloned());
    for s in &k.simplices {
        for t in &shifted {
            simplices.insert(s.union(t));
        }
    }
    Ok(Complex { names, simplices })
}

/// Join with two fresh vertices `a`, `b`.
pub fn suspension(k: &Complex) -> Result<Complex, ComplexError> {
    join(k, &Complex::points(["a", "b"]))
}

/// `M_J^(n) = (J * {a,b}) ∪ { c * t | t ∈ Δ^{n-2}(J) }`, with `c` isolated when `n = 1`.
///
/// Vertex layout: the vertices of `J`, then `a`, `b`, `c`.
pub fn build_m_j(j: &Complex, n: usize) -> Result<Complex, ComplexError> {
    if n == 0 || j.dim() != n as isize - 1 {
        return Err(ComplexError::DimensionMismatch { expected: n as isize - 1, actual: j.dim() });
    }
    let full = join(j, &Complex::points(["a", "b", "c"]))?;
    let c = full.vertex_by_name("c").expect("c present");
    let c_part = std::iter::once(Simplex::vertex(c)).chain(if n >= 2 {
        j.simplices_of_dim(n - 2).into_iter().map(|t| t.union(&Simplex::vertex(c))).collect()
    } else {
        Vec::new()
    });
    let ab = full
        .simplices()
        .filter(|s| !s.contains(c))
        .cloned()
        .collect::<Vec<_>>();
    Ok(full.with_simplices(ab.into_iter().chain(c_part)))
}

/// `σ_{2n}^{n-1} * {a,b,c}`, the ambient complex of the obstruction computations.
pub fn full_join_abc(n: usize) -> Result<Complex, ComplexError> {
    if n == 0 {
        return Err(ComplexError::Parameters("n must be positive".into()));
    }
    join(&skeleton(2 * n, n - 1)?, &Complex::points(["a", "b", "c"]))
}

/// `M^(n) = M_{σ_{2n}^{n-1}}^(n)` on vertices `a_0..a_{2n}, a, b, c`.
pub fn m_complex(n: usize) -> Result<Complex, ComplexError> {
    if n == 0 {
        return Err(ComplexError::Parameters("n must be positive".into()));
    }
    build_m_j(&skeleton(2 * n, n - 1)?, n)
}

/// `[3]^{*m}`: the m-fold join of three points, labelled `p{i}_{j}` for factor `i`.
pub fn triple_join(m: usize) -> Result<Complex, ComplexError> {
    if m == 0 {
        return Err(ComplexError::Parameters("triple_join needs m >= 1".into()));
    }
    let factor = |i: usize| Complex::points((0..3).map(|j| format!("p{i}_{j}")));
    let mut acc = factor(1);
    for i in 2..=m {
        acc = join(&acc, &factor(i))?;
    }
    Ok(acc)
}

/// `S(σ_{2n+1}^{n-1})`, which contains copies of `M^(n)`.
pub fn suspended_skeleton(n: usize) -> Result<Complex, ComplexError> {
    if n == 0 {
        return Err(ComplexError::Parameters("n must be positive".into()));
    }
    suspension(&skeleton(2 * n + 1, n - 1)?)
}

/// The defining simplex removed from `M^(n)` to obtain `N_1`:
/// `|a_{n+2} ⋯ a_{2n}| * c` (just `c` when `n = 1`; `c` plays the role of `a_{2n+1}`).
pub fn n1_removed_simplex(m: &Complex, n: usize) -> Simplex {
    let c = m.vertex_by_name("c").expect("M^(n) has c");
    Simplex::new((n + 2..=2 * n).chain(std::iter::once(c)))
}

/// The defining simplex removed from `M^(n)` to obtain `N_2`: `|a_0 ⋯ a_{n-1}| * a`.
pub fn n2_removed_simplex(m: &Complex, n: usize) -> Simplex {
    let a = m.vertex_by_name("a").expect("M^(n) has a");
    Simplex::new((0..n).chain(std::iter::once(a)))
}
