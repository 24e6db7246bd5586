//! The quotient deleted product `K̃*`: unordered pairs of vertex-disjoint
//! simplices, graded by `dim s + dim s'`, together with its mod-2 coboundaries.

use std::collections::HashMap;
use std::sync::OnceLock;

use thiserror::Error;

use crate::complex::{Complex, Simplex};
use crate::z2linalg::{BitMatrix, BitVector, Gf2Solver, LinalgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DeletedProductError {
    #[error("expected an {expected}-dimensional complex, got dimension {actual}")]
    Dimension { expected: usize, actual: isize },
    #[error("cochain has {actual} entries, grade {grade} has {expected} cells")]
    CochainLength { grade: usize, expected: usize, actual: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A cell `{s, s'}` of `K̃*`, stored with the lexicographically smaller simplex first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuotientCell {
    first: Simplex,
    second: Simplex,
}

impl QuotientCell {
    /// Canonicalises the pair. Panics if the simplices share a vertex.
    pub fn new(s: Simplex, t: Simplex) -> Self {
        assert!(s.is_disjoint(&t), "deleted-product cell needs disjoint simplices: {s} {t}");
        if s <= t {
            QuotientCell { first: s, second: t }
        } else {
            QuotientCell { first: t, second: s }
        }
    }

    pub fn first(&self) -> &Simplex {
        &self.first
    }

    pub fn second(&self) -> &Simplex {
        &self.second
    }

    pub fn grade(&self) -> usize {
        self.first.dim() + self.second.dim()
    }

    /// Facet pairs `{t, s'}` (t a facet of s) and `{s, t'}`, with multiplicity.
    pub fn facet_pairs(&self) -> Vec<QuotientCell> {
        let mut out = Vec::new();
        for f in self.first.facets() {
            out.push(QuotientCell::new(f, self.second.clone()));
        }
        for f in self.second.facets() {
            out.push(QuotientCell::new(self.first.clone(), f));
        }
        out
    }
}

/// All cells of `K̃*`, grouped by grade in canonical order.
pub struct QuotientDeletedComplex {
    complex_dim: isize,
    grades: Vec<Vec<QuotientCell>>,
    index: Vec<HashMap<QuotientCell, usize>>,
    top_solver: OnceLock<Gf2Solver>,
}

impl QuotientDeletedComplex {
    pub fn build(k: &Complex) -> Self {
        let simplices: Vec<&Simplex> = k.simplices().collect();
        let max_grade = if k.dim() < 0 { 0 } else { 2 * k.dim() as usize };
        let mut grades: Vec<Vec<QuotientCell>> = vec![Vec::new(); max_grade + 1];
        for (i, s) in simplices.iter().enumerate() {
            for t in &simplices[i + 1..] {
                if s.is_disjoint(t) {
                    let cell = QuotientCell::new((*s).clone(), (*t).clone());
                    grades[cell.grade()].push(cell);
                }
            }
        }
        while grades.len() > 1 && grades.last().is_some_and(Vec::is_empty) {
            grades.pop();
        }
        for g in &mut grades {
            g.sort();
        }
        let index = grades
            .iter()
            .map(|g| g.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        QuotientDeletedComplex { complex_dim: k.dim(), grades, index, top_solver: OnceLock::new() }
    }

    /// Dimension of the source complex.
    pub fn complex_dim(&self) -> isize {
        self.complex_dim
    }

    pub fn cells(&self, grade: usize) -> &[QuotientCell] {
        self.grades.get(grade).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn num_cells(&self, grade: usize) -> usize {
        self.cells(grade).len()
    }

    pub fn position(&self, cell: &QuotientCell) -> Option<usize> {
        self.index.get(cell.grade()).and_then(|m| m.get(cell).copied())
    }

    /// Cell counts per grade, index = grade.
    pub fn grade_counts(&self) -> Vec<usize> {
        self.grades.iter().map(Vec::len).collect()
    }

    fn check_top(&self, n: usize) -> Result<(), DeletedProductError> {
        if self.complex_dim != n as isize || n == 0 {
            return Err(DeletedProductError::Dimension { expected: n, actual: self.complex_dim });
        }
        Ok(())
    }

    /// Coboundary from grade `g` to grade `g + 1` (rows = grade `g+1` cells,
    /// cols = grade `g` cells), counting facet incidences mod 2.
    ///
    /// Only the top instance (`g = 2n - 1`) is used by the obstruction
    /// computations; the general form exists to test `δ ∘ δ = 0`.
    pub fn coboundary(&self, g: usize) -> BitMatrix {
        let rows = self.cells(g + 1);
        let mut m = BitMatrix::zeros(rows.len(), self.num_cells(g));
        for (r, cell) in rows.iter().enumerate() {
            for f in cell.facet_pairs() {
                let c = self.position(&f).expect("deleted product is closed under facet pairs");
                m.flip(r, c);
            }
        }
        m
    }

    /// `δ^{2n-1}` for an n-dimensional source complex.
    pub fn top_coboundary(&self, n: usize) -> Result<BitMatrix, DeletedProductError> {
        self.check_top(n)?;
        Ok(self.coboundary(2 * n - 1))
    }

    fn solver(&self, n: usize) -> Result<&Gf2Solver, DeletedProductError> {
        self.check_top(n)?;
        Ok(self.top_solver.get_or_init(|| Gf2Solver::new(&self.coboundary(2 * n - 1))))
    }

    /// `dim H^{2n}(K̃*; Z2)`: every top cochain is a cocycle, so this is
    /// `#cells(2n) - rank δ^{2n-1}`.
    pub fn top_cohomology_dim(&self, n: usize) -> Result<usize, DeletedProductError> {
        let solver = self.solver(n)?;
        Ok(self.num_cells(2 * n) - solver.rank())
    }

    pub fn top_coboundary_rank(&self, n: usize) -> Result<usize, DeletedProductError> {
        Ok(self.solver(n)?.rank())
    }

    /// Dual cochain of one top cell.
    pub fn dual_cochain(&self, n: usize, cell: usize) -> BitVector {
        BitVector::unit(self.num_cells(2 * n), cell)
    }

    /// Decides whether two top cochains are cohomologous. On success the
    /// witness is a `(2n-1)`-cochain whose coboundary is `c1 + c2`.
    pub fn cohomologous(
        &self,
        n: usize,
        c1: &BitVector,
        c2: &BitVector,
    ) -> Result<Option<BitVector>, DeletedProductError> {
        let top = self.num_cells(2 * n);
        for c in [c1, c2] {
            if c.len() != top {
                return Err(DeletedProductError::CochainLength { grade: 2 * n, expected: top, actual: c.len() });
            }
        }
        Ok(self.solver(n)?.solve(&c1.xor(c2))?)
    }

    /// Whether every pair of top-cell duals is cohomologous. Uses transitivity:
    /// each dual is compared with the first one.
    pub fn all_top_duals_cohomologous(&self, n: usize) -> Result<bool, DeletedProductError> {
        let top = self.num_cells(2 * n);
        if top == 0 {
            self.check_top(n)?;
            return Ok(true);
        }
        let first = self.dual_cochain(n, 0);
        for i in 1..top {
            if self.cohomologous(n, &first, &self.dual_cochain(n, i))?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `dim H^{2n}(K̃*; Z2)` straight from the complex.
pub fn top_cohomology_dim(k: &Complex, n: usize) -> Result<usize, DeletedProductError> {
    QuotientDeletedComplex::build(k).top_cohomology_dim(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{full_join_abc, skeleton, triple_join, Complex, Simplex};

    fn two_disjoint_edges() -> Complex {
        Complex::from_generators(
            ["u", "v", "x", "y"].map(String::from).to_vec(),
            [Simplex::new([0, 1]), Simplex::new([2, 3])],
        )
    }

    #[test]
    fn k33_cells() {
        let d = QuotientDeletedComplex::build(&full_join_abc(1).unwrap());
        assert_eq!(d.num_cells(2), 18);
        assert_eq!(d.num_cells(1), 36);
        let m = d.top_coboundary(1).unwrap();
        assert_eq!((m.rows(), m.cols()), (18, 36));
        assert_eq!(m.rank(), 17);
        assert_eq!(d.top_cohomology_dim(1).unwrap(), 1);
    }

    #[test]
    fn k33_column_by_hand() {
        // V^{t,s'} with t = a_0, s' = b a_1: cofaces are {a_0 x, b a_1} for x ∈ {a, c}
        // (a_0 b meets s'), and {a_0, b a_1}'s second factor only shrinks, so no others.
        let k = full_join_abc(1).unwrap();
        let d = QuotientDeletedComplex::build(&k);
        let s = |l: &[&str]| k.simplex_by_names(l).unwrap();
        let col = d.position(&QuotientCell::new(s(&["a_0"]), s(&["a_1", "b"]))).unwrap();
        let m = d.top_coboundary(1).unwrap();
        let got: Vec<QuotientCell> = m.column_vector(col).ones().map(|r| d.cells(2)[r].clone()).collect();
        let mut want = vec![
            QuotientCell::new(s(&["a_0", "a"]), s(&["a_1", "b"])),
            QuotientCell::new(s(&["a_0", "c"]), s(&["a_1", "b"])),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn two_edges() {
        let d = QuotientDeletedComplex::build(&two_disjoint_edges());
        assert_eq!(d.grade_counts(), vec![6, 4, 1]);
        let m = d.top_coboundary(1).unwrap();
        assert_eq!((m.rows(), m.cols(), m.count_ones()), (1, 4, 4));
        assert_eq!(d.top_cohomology_dim(1).unwrap(), 0);
    }

    #[test]
    fn k5_join_abc_cells() {
        let d = QuotientDeletedComplex::build(&full_join_abc(2).unwrap());
        assert_eq!(d.num_cells(4), 90);
        assert_eq!(d.top_coboundary_rank(2).unwrap(), 89);
        assert_eq!(d.top_cohomology_dim(2).unwrap(), 1);
        assert!(d.all_top_duals_cohomologous(2).unwrap());
    }

    /// Independent count of disjoint top pairs: disjoint edge pairs of K_5 times letter assignments.
    #[test]
    fn top_cell_count_oracle() {
        let k5 = skeleton(4, 1).unwrap();
        let edges = k5.simplices_of_dim(1);
        let mut disjoint_edge_pairs = 0;
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if edges[i].is_disjoint(&edges[j]) {
                    disjoint_edge_pairs += 1;
                }
            }
        }
        assert_eq!(disjoint_edge_pairs * 6, 90);
    }

    #[test]
    fn relation_column() {
        // t = |a a_0 ⋯ a_{n-2}|, s' = |b a_{n+1} ⋯ a_{2n}|; among cofaces extending t,
        // exactly |a a_0 ⋯ a_{n-2} a_{n-1}| and |a a_0 ⋯ a_{n-2} a_n| appear.
        for n in 1..=2usize {
            let k = full_join_abc(n).unwrap();
            let d = QuotientDeletedComplex::build(&k);
            let (a, b) = (k.vertex_by_name("a").unwrap(), k.vertex_by_name("b").unwrap());
            let t = Simplex::new((0..n - 1).chain([a]));
            let sp = Simplex::new((n + 1..=2 * n).chain([b]));
            let col = d.position(&QuotientCell::new(t.clone(), sp.clone())).unwrap();
            let m = d.top_coboundary(n).unwrap();
            let rows: Vec<QuotientCell> = m.column_vector(col).ones().map(|r| d.cells(2 * n)[r].clone()).collect();
            let extending_t: Vec<&QuotientCell> =
                rows.iter().filter(|c| c.first() == &sp || c.second() == &sp).collect();
            let s1 = Simplex::new((0..n).chain([a]));
            let s2 = Simplex::new((0..n - 1).chain([n, a]));
            let mut want = vec![QuotientCell::new(s1, sp.clone()), QuotientCell::new(s2, sp.clone())];
            want.sort();
            assert_eq!(extending_t.into_iter().cloned().collect::<Vec<_>>(), want, "n = {n}");
            // the remaining cofaces enlarge s' and keep t
            assert!(rows.iter().all(|c| c.first() == &sp || c.second() == &sp || c.first() == &t || c.second() == &t));
        }
    }

    #[test]
    fn delta_squared_vanishes() {
        for k in [full_join_abc(1).unwrap(), full_join_abc(2).unwrap(), triple_join(3).unwrap()] {
            let d = QuotientDeletedComplex::build(&k);
            for g in 1..d.grade_counts().len() - 1 {
                let prod = d.coboundary(g).mul(&d.coboundary(g - 1)).unwrap();
                assert!(prod.is_zero(), "grade {g}");
            }
        }
    }

    #[test]
    fn invariant_under_automorphism() {
        let k5 = skeleton(4, 1).unwrap();
        let perm = [2, 4, 0, 1, 3];
        let permuted = k5.relabel(k5.names().to_vec(), |v| perm[v]);
        let d1 = QuotientDeletedComplex::build(&k5);
        let d2 = QuotientDeletedComplex::build(&permuted);
        for g in 0..d1.grade_counts().len() {
            let mut mapped: Vec<QuotientCell> = d1
                .cells(g)
                .iter()
                .map(|c| QuotientCell::new(c.first().map(|v| perm[v]), c.second().map(|v| perm[v])))
                .collect();
            mapped.sort();
            assert_eq!(mapped, d2.cells(g));
        }
    }

    #[test]
    fn cohomologous_examples() {
        let d = QuotientDeletedComplex::build(&full_join_abc(1).unwrap());
        let c = d.dual_cochain(1, 3);
        let w = d.cohomologous(1, &c, &c).unwrap().unwrap();
        assert!(w.is_zero());
        assert!(d.all_top_duals_cohomologous(1).unwrap());
        let e = d.dual_cochain(1, 7);
        let w = d.cohomologous(1, &c, &e).unwrap().unwrap();
        assert_eq!(d.top_coboundary(1).unwrap().mul_vec(&w).unwrap(), c.xor(&e));
        assert!(d.cohomologous(1, &c, &BitVector::zeros(5)).is_err());
    }

    #[test]
    fn two_edges_duals_are_coboundaries() {
        // every grade-1 cell of two disjoint edges has a single coface
        let names: Vec<String> = (0..8).map(|i| format!("v{i}")).collect();
        let four_edges = Complex::from_generators(names, [[0, 1], [2, 3], [4, 5], [6, 7]].map(Simplex::new));
        let d = QuotientDeletedComplex::build(&four_edges);
        assert_eq!(d.top_cohomology_dim(1).unwrap(), 0);
        let zero = BitVector::zeros(d.num_cells(2));
        assert!(d.cohomologous(1, &d.dual_cochain(1, 0), &zero).unwrap().is_some());
    }

    #[test]
    fn separate_components_not_cohomologous() {
        let k33 = full_join_abc(1).unwrap();
        let copy = k33.relabel(k33.names().iter().map(|l| format!("{l}'")).collect(), |v| v);
        let offset = k33.universe_len();
        let mut names = k33.names().to_vec();
        names.extend(copy.names().iter().cloned());
        let union = Complex::from_generators(
            names,
            k33.simplices().cloned().chain(copy.simplices().map(|s| s.map(|v| v + offset))),
        );
        let d = QuotientDeletedComplex::build(&union);
        let tops = d.cells(2);
        let i = tops.iter().position(|c| c.second().vertices().iter().all(|&v| v < offset)).unwrap();
        let j = tops.iter().position(|c| c.first().vertices().iter().all(|&v| v >= offset)).unwrap();
        let r = d.cohomologous(1, &d.dual_cochain(1, i), &d.dual_cochain(1, j)).unwrap();
        assert!(r.is_none());
        let zero = BitVector::zeros(tops.len());
        assert!(d.cohomologous(1, &d.dual_cochain(1, i), &zero).unwrap().is_none());
    }

    #[test]
    fn wrong_dimension_rejected() {
        let d = QuotientDeletedComplex::build(&full_join_abc(1).unwrap());
        assert!(d.top_coboundary(2).is_err());
        assert!(top_cohomology_dim(&full_join_abc(2).unwrap(), 1).is_err());
    }
}
