//! Mod-2 van Kampen obstruction: the double-point cocycle of a generic
//! immersion and its class in the top cohomology of the quotient deleted product.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::complex::{full_join_abc, Complex, ComplexError};
use crate::deleted_product::{DeletedProductError, QuotientDeletedComplex};
use crate::geometry::{
    double_point_table, general_position_check, DoublePointTable, GeometricMap, GeometryError,
    DEFAULT_COORDINATE_BOUND, DEFAULT_RETRY_BUDGET,
};
use crate::z2linalg::BitVector;

#[derive(Debug, Error)]
pub enum ObstructionError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    DeletedProduct(#[from] DeletedProductError),
    #[error("n = {0} is outside the supported range 1..=3")]
    UnsupportedN(usize),
}

/// The double-point cochain `c_φ` of a generic immersion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VKCocycle {
    /// One bit per grade-2n cell of `K̃*`, in canonical cell order.
    pub bits: BitVector,
    /// Seed of the configuration, when it was sampled.
    pub seed: Option<u64>,
}

impl VKCocycle {
    pub fn weight(&self) -> usize {
        self.bits.count_ones()
    }
}

/// A sampled generic immersion together with its double-point table.
#[derive(Clone, Debug)]
pub struct GenericImmersion {
    pub map: GeometricMap,
    pub table: DoublePointTable,
    pub seed: u64,
    /// Number of configurations drawn, including the accepted one.
    pub draws: usize,
}

/// Draws integer configurations of `k`'s vertices in `R^{2n}` from one
/// ChaCha8 stream until the points are in general position and every pair
/// of disjoint n-simplices meets transversally or not at all.
pub fn generic_immersion(k: &Complex, n: usize, seed: u64) -> Result<GenericImmersion, ObstructionError> {
    let m = 2 * n;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for draw in 1..=DEFAULT_RETRY_BUDGET {
        let pts = crate::geometry::draw_integer_points(&mut rng, k.num_vertices(), m, DEFAULT_COORDINATE_BOUND);
        if !general_position_check(&pts, m) {
            continue;
        }
        let map = GeometricMap::from_vertex_points(k.clone(), m, pts)?;
        match double_point_table(&map, n) {
            Ok(table) => return Ok(GenericImmersion { map, table, seed, draws: draw }),
            Err(GeometryError::Degenerate(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(GeometryError::RetryExhausted(DEFAULT_RETRY_BUDGET).into())
}

/// Reads a double-point table as a top cochain of `d`.
pub fn cocycle_from_table(d: &QuotientDeletedComplex, n: usize, table: &DoublePointTable, seed: Option<u64>) -> VKCocycle {
    let mut bits = BitVector::zeros(d.num_cells(2 * n));
    for (cell, count) in &table.entries {
        if count % 2 == 1 {
            let i = d.position(cell).expect("disjoint top pairs are top cells");
            bits.set(i, true);
        }
    }
    VKCocycle { bits, seed }
}

/// `c_φ` for a generic map `φ` of the n-complex `k` into `R^{2n}`.
pub fn vk_cocycle(k: &Complex, n: usize, phi: &GeometricMap) -> Result<VKCocycle, ObstructionError> {
    let d = QuotientDeletedComplex::build(k);
    let table = double_point_table(phi, n)?;
    Ok(cocycle_from_table(&d, n, &table, None))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionEvidence {
    pub nonzero: bool,
    pub top_cells: usize,
    pub coboundary_rank: usize,
    pub cohomology_dim: usize,
    /// Cocycle weight of each sampled immersion.
    pub weights: Vec<usize>,
    /// Whether all sampled cocycles lie in one class.
    pub consistent: bool,
    pub seeds: Vec<u64>,
}

/// Decides `o_K != 0` from `samples` sampled generic immersions (seeds
/// `seed, seed + 1, …`). The first sample decides; the others are checked
/// to lie in the same class.
pub fn obstruction_nonzero(k: &Complex, n: usize, samples: usize, seed: u64) -> Result<ObstructionEvidence, ObstructionError> {
    let d = QuotientDeletedComplex::build(k);
    let top = d.num_cells(2 * n);
    let zero = BitVector::zeros(top);
    let mut cocycles = Vec::new();
    let mut seeds = Vec::new();
    for i in 0..samples.max(1) as u64 {
        let s = seed.wrapping_add(i);
        let imm = generic_immersion(k, n, s)?;
        cocycles.push(cocycle_from_table(&d, n, &imm.table, Some(s)));
        seeds.push(s);
    }
    let nonzero = d.cohomologous(n, &cocycles[0].bits, &zero)?.is_none();
    let mut consistent = true;
    for c in &cocycles[1..] {
        consistent &= d.cohomologous(n, &cocycles[0].bits, &c.bits)?.is_some();
    }
    Ok(ObstructionEvidence {
        nonzero,
        top_cells: top,
        coboundary_rank: d.top_coboundary_rank(n)?,
        cohomology_dim: d.top_cohomology_dim(n)?,
        weights: cocycles.iter().map(VKCocycle::weight).collect(),
        consistent,
        seeds,
    })
}

/// Cohomological facts about `J * {a,b,c}` for an (n-1)-complex `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinCohomology {
    pub n: usize,
    pub top_cells: usize,
    pub codim_one_cells: usize,
    pub coboundary_rank: usize,
    pub cohomology_dim: usize,
    pub all_duals_cohomologous: bool,
    /// Columns `V^{t,s'}` (t an (n-1)-simplex, s' an n-simplex) checked to equal
    /// the sum of `E^{s,s'}` over the n-simplices `s ⊃ t` missing `s'`.
    pub relation_columns_checked: usize,
    pub relation_mismatches: usize,
    pub pass: bool,
}

/// Top cohomology of the quotient deleted product of the n-complex `k`.
pub fn join_cohomology(k: &Complex, n: usize) -> Result<JoinCohomology, ObstructionError> {
    let d = QuotientDeletedComplex::build(k);
    let delta = d.top_coboundary(n)?;
    let tops = k.simplices_of_dim(n);
    let mut checked = 0;
    let mut mismatches = 0;
    for (col, cell) in d.cells(2 * n - 1).iter().enumerate() {
        let (t, s2) = if cell.first().dim() == n { (cell.second(), cell.first()) } else { (cell.first(), cell.second()) };
        if t.dim() + 1 != n || s2.dim() != n {
            continue;
        }
        let mut expected = BitVector::zeros(d.num_cells(2 * n));
        for s in tops.iter().filter(|s| t.is_face_of(s) && s.is_disjoint(s2)) {
            let cell = crate::deleted_product::QuotientCell::new(s.clone(), s2.clone());
            expected.flip(d.position(&cell).expect("top cell"));
        }
        checked += 1;
        if delta.column_vector(col) != expected {
            mismatches += 1;
        }
    }
    let cohomology_dim = d.top_cohomology_dim(n)?;
    let all_duals_cohomologous = d.all_top_duals_cohomologous(n)?;
    Ok(JoinCohomology {
        n,
        top_cells: d.num_cells(2 * n),
        codim_one_cells: d.num_cells(2 * n - 1),
        coboundary_rank: d.top_coboundary_rank(n)?,
        cohomology_dim,
        all_duals_cohomologous,
        relation_columns_checked: checked,
        relation_mismatches: mismatches,
        pass: cohomology_dim == 1 && all_duals_cohomologous && mismatches == 0,
    })
}

pub(crate) fn check_n(n: usize, max: usize) -> Result<(), ObstructionError> {
    if n == 0 || n > max {
        return Err(ObstructionError::UnsupportedN(n));
    }
    Ok(())
}

/// Cohomology facts of `σ_{2n}^{n-1} * {a,b,c}`.
pub fn verify_lemma_2_1(n: usize) -> Result<JoinCohomology, ObstructionError> {
    check_n(n, 3)?;
    join_cohomology(&full_join_abc(n)?, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityTrial {
    pub index: usize,
    pub seed: u64,
    pub draws: usize,
    pub double_points: usize,
    pub odd: bool,
    pub cocycle_weight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassCheck {
    pub first: usize,
    pub second: usize,
    pub cohomologous: bool,
    /// Support of the witness cochain, as indices of grade-(2n-1) cells.
    pub witness_support: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityReport {
    pub n: usize,
    pub seed: u64,
    pub trials: Vec<ParityTrial>,
    pub odd_trials: usize,
    pub class_checks: Vec<ClassCheck>,
    pub cohomology: JoinCohomology,
    pub pass: bool,
}

/// Double-point parity over `trials` generic immersions of `k` (trial `i`
/// uses seed `seed + i`), class invariance on up to 10 consecutive trial
/// pairs, and the cohomology facts of `k`.
pub fn parity_trials(k: &Complex, n: usize, trials: usize, seed: u64) -> Result<ParityReport, ObstructionError> {
    let d = QuotientDeletedComplex::build(k);
    let mut records = Vec::with_capacity(trials);
    let mut cocycles = Vec::with_capacity(trials);
    for index in 0..trials {
        let s = seed.wrapping_add(index as u64);
        let imm = generic_immersion(k, n, s)?;
        let c = cocycle_from_table(&d, n, &imm.table, Some(s));
        records.push(ParityTrial {
            index,
            seed: s,
            draws: imm.draws,
            double_points: imm.table.total,
            odd: imm.table.parity(),
            cocycle_weight: c.weight(),
        });
        cocycles.push(c);
    }
    let mut class_checks = Vec::new();
    for i in 0..trials.saturating_sub(1).min(10) {
        let w = d.cohomologous(n, &cocycles[i].bits, &cocycles[i + 1].bits)?;
        class_checks.push(ClassCheck {
            first: i,
            second: i + 1,
            cohomologous: w.is_some(),
            witness_support: w.map(|w| w.ones().collect()),
        });
    }
    let cohomology = join_cohomology(k, n)?;
    let odd_trials = records.iter().filter(|t| t.odd).count();
    let pass = odd_trials == trials && class_checks.iter().all(|c| c.cohomologous) && cohomology.pass;
    Ok(ParityReport { n, seed, trials: records, odd_trials, class_checks, cohomology, pass })
}

/// Odd double-point parity for generic immersions of `σ_{2n}^{n-1} * {a,b,c}` in `R^{2n}`.
pub fn verify_theorem_2_2(n: usize, trials: usize, seed: u64) -> Result<ParityReport, ObstructionError> {
    check_n(n, 3)?;
    parity_trials(&full_join_abc(n)?, n, trials, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{m_complex, skeleton, Simplex};
    use crate::geometry::{Point, GeometricMap};

    #[test]
    fn k33_convex_hexagon_cocycle() {
        // K_{3,3} with parts alternating around a hexagon: three crossings
        let k = full_join_abc(1).unwrap();
        let hexagon = [[2, 0], [1, 2], [-1, 2], [-2, 0], [-1, -2], [1, -2]];
        // vertex order: a_0, a_1, a_2, a, b, c
        let order = [0, 2, 4, 1, 3, 5];
        let pts = order.iter().map(|&i| Point::from_ints(&hexagon[i])).collect();
        let f = GeometricMap::from_vertex_points(k.clone(), 2, pts).unwrap();
        let c = vk_cocycle(&k, 1, &f).unwrap();
        assert_eq!(c.bits.len(), 18);
        assert_eq!(c.weight(), 3);
    }

    #[test]
    fn embedding_gives_zero_cocycle() {
        let names: Vec<String> = ["p", "q", "r", "s"].map(String::from).to_vec();
        let k = Complex::from_generators(names, [Simplex::new([0, 1]), Simplex::new([2, 3])]);
        let f = GeometricMap::from_vertex_points(
            k.clone(),
            2,
            vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1]), Point::from_ints(&[1, 1])],
        )
        .unwrap();
        let c = vk_cocycle(&k, 1, &f).unwrap();
        assert!(c.bits.is_zero());
        assert!(!obstruction_nonzero(&k, 1, 3, 5).unwrap().nonzero);
    }

    #[test]
    fn join_obstruction_nonzero() {
        let ev = obstruction_nonzero(&full_join_abc(1).unwrap(), 1, 3, 11).unwrap();
        assert!(ev.nonzero && ev.consistent);
        assert_eq!((ev.top_cells, ev.coboundary_rank, ev.cohomology_dim), (18, 17, 1));
        let ev2 = obstruction_nonzero(&full_join_abc(2).unwrap(), 2, 1, 11).unwrap();
        assert!(ev2.nonzero);
        assert_eq!(ev2.weights[0] % 2, 1);
    }

    #[test]
    fn m2_obstruction_vanishes() {
        let ev = obstruction_nonzero(&m_complex(2).unwrap(), 2, 3, 2).unwrap();
        assert!(!ev.nonzero);
        assert!(ev.consistent);
    }

    #[test]
    fn k5_in_the_plane_is_obstructed() {
        let ev = obstruction_nonzero(&skeleton(4, 1).unwrap(), 1, 2, 0).unwrap();
        assert!(ev.nonzero);
    }

    #[test]
    fn full_join_cohomology() {
        let l1 = verify_lemma_2_1(1).unwrap();
        assert_eq!((l1.top_cells, l1.coboundary_rank, l1.cohomology_dim), (18, 17, 1));
        assert!(l1.pass && l1.relation_columns_checked > 0);
        let l2 = verify_lemma_2_1(2).unwrap();
        assert_eq!((l2.top_cells, l2.coboundary_rank, l2.cohomology_dim), (90, 89, 1));
        assert!(l2.pass);
        assert!(verify_lemma_2_1(4).is_err());
    }

    #[test]
    fn parity_trials_n1() {
        let r = verify_theorem_2_2(1, 20, 3).unwrap();
        assert_eq!(r.odd_trials, 20);
        assert_eq!(r.class_checks.len(), 10);
        assert!(r.pass);
        assert_eq!(r, verify_theorem_2_2(1, 20, 3).unwrap());
    }
}
