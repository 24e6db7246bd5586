//! Backtracking isomorphism and subcomplex search with degree-vector pruning.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use super::{Complex, ComplexError, Simplex, Vertex};

/// Largest host (in vertices) accepted by [`count_isomorphic_subcomplexes`].
pub const ISO_HOST_LIMIT: usize = 12;

/// Number of incident simplices per dimension.
fn degree_vectors(k: &Complex, dims: usize) -> BTreeMap<Vertex, Vec<usize>> {
    let mut deg: BTreeMap<Vertex, Vec<usize>> =
        k.vertices().into_iter().map(|v| (v, vec![0; dims])).collect();
    for s in k.simplices() {
        for &v in s.vertices() {
            deg.get_mut(&v).expect("vertex of simplex is present")[s.dim()] += 1;
        }
    }
    deg
}

/// Pattern-side search state shared by both searches.
struct Pattern {
    order: Vec<Vertex>,
    /// Simplices whose largest vertex (in `order` position) is the indexed vertex.
    closing: Vec<Vec<Simplex>>,
    degrees: Vec<Vec<usize>>,
}

impl Pattern {
    fn new(k: &Complex, dims: usize) -> Self {
        let order = k.vertices();
        let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut closing = vec![Vec::new(); order.len()];
        for s in k.simplices() {
            let last = s.vertices().iter().map(|v| pos[v]).max().expect("nonempty");
            closing[last].push(s.clone());
        }
        let deg = degree_vectors(k, dims);
        let degrees = order.iter().map(|v| deg[v].clone()).collect();
        Pattern { order, closing, degrees }
    }
}

struct Search<'a> {
    pattern: &'a Pattern,
    host: &'a Complex,
    host_vertices: Vec<Vertex>,
    host_degrees: Vec<Vec<usize>>,
    exact_degrees: bool,
    image: BTreeMap<Vertex, Vertex>,
    used: HashSet<Vertex>,
}

impl Search<'_> {
    fn compatible(&self, pd: &[usize], hd: &[usize]) -> bool {
        if self.exact_degrees {
            pd == hd
        } else {
            pd.iter().zip(hd).all(|(p, h)| p <= h)
        }
    }

    fn closes(&self, depth: usize) -> bool {
        self.pattern.closing[depth]
            .iter()
            .all(|s| self.host.contains(&s.map(|v| self.image[&v])))
    }

    /// Visits complete assignments in lexicographic order of images;
    /// the visitor returns `false` to stop.
    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&BTreeMap<Vertex, Vertex>) -> bool) -> bool {
        if depth == self.pattern.order.len() {
            return visit(&self.image);
        }
        let pv = self.pattern.order[depth];
        for idx in 0..self.host_vertices.len() {
            let hv = self.host_vertices[idx];
            if self.used.contains(&hv)
                || !self.compatible(&self.pattern.degrees[depth], &self.host_degrees[idx])
            {
                continue;
            }
            self.image.insert(pv, hv);
            self.used.insert(hv);
            let keep_going = !self.closes(depth) || self.run(depth + 1, visit);
            self.used.remove(&hv);
            self.image.remove(&pv);
            if !keep_going {
                return false;
            }
        }
        true
    }
}

fn search<'a>(pattern: &'a Pattern, host: &'a Complex, dims: usize, exact: bool) -> Search<'a> {
    let deg = degree_vectors(host, dims);
    let host_vertices = host.vertices();
    let host_degrees = host_vertices.iter().map(|v| deg[v].clone()).collect();
    Search {
        pattern,
        host,
        host_vertices,
        host_degrees,
        exact_degrees: exact,
        image: BTreeMap::new(),
        used: HashSet::new(),
    }
}

/// Finds the lexicographically least vertex bijection carrying the simplices of `k`
/// onto those of `l`, if any.
pub fn find_isomorphism(k: &Complex, l: &Complex) -> Option<BTreeMap<Vertex, Vertex>> {
    if k.f_vector() != l.f_vector() {
        return None;
    }
    let dims = k.f_vector().len();
    let pattern = Pattern::new(k, dims);
    let mut found = None;
    // Equal f-vectors plus an injective simplex-preserving vertex map give a bijection on simplices.
    search(&pattern, l, dims, true).run(0, &mut |m| {
        found = Some(m.clone());
        false
    });
    found
}

/// One occurrence of a pattern inside a host.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexMatch {
    /// Lexicographically least pattern-to-host vertex map realising this occurrence.
    pub vertex_map: BTreeMap<Vertex, Vertex>,
    /// Image vertex set.
    pub vertices: BTreeSet<Vertex>,
    /// Image simplex set (the subcomplex itself).
    pub simplices: BTreeSet<Simplex>,
}

/// Counts distinct subcomplexes (as simplex sets) of `host` isomorphic to `pattern`.
pub fn count_isomorphic_subcomplexes(
    host: &Complex,
    pattern: &Complex,
) -> Result<(usize, Vec<SubcomplexMatch>), ComplexError> {
    let hv = host.num_vertices();
    if hv > ISO_HOST_LIMIT {
        return Err(ComplexError::TooLarge { limit: ISO_HOST_LIMIT, actual: hv });
    }
    if pattern.num_vertices() > hv || pattern.dim() > host.dim() {
        return Ok((0, Vec::new()));
    }
    let dims = host.f_vector().len();
    let pat = Pattern::new(pattern, dims);
    let mut seen: BTreeMap<BTreeSet<Simplex>, SubcomplexMatch> = BTreeMap::new();
    search(&pat, host, dims, false).run(0, &mut |m| {
        let simplices: BTreeSet<Simplex> = pattern.simplices().map(|s| s.map(|v| m[&v])).collect();
        seen.entry(simplices.clone()).or_insert_with(|| SubcomplexMatch {
            vertex_map: m.clone(),
            vertices: m.values().copied().collect(),
            simplices,
        });
        true
    });
    let matches: Vec<SubcomplexMatch> = seen.into_values().collect();
    Ok((matches.len(), matches))
}
