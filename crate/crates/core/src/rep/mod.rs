//! Matrix representations of the hypercube algebra.
//!
//! A representation assigns a projection to every vertex of `Q_n` so that
//! each side sums to the identity and non-adjacent opposite-side vertices get
//! orthogonal projections. Every representation built here comes from an
//! admissible edge weighting: `U` vertices map to diagonal matrix units and a
//! `V` vertex `j` maps to the projection onto its column `(c(ij))_i`.

mod boundary;
mod gauge;
mod intertwine;

pub use boundary::{boundary_decompose, BoundaryDecomposition};
pub use gauge::{classify, gauge_fix, recover_t, ClassifiedBlock, GaugeFix};
pub use intertwine::{find_intertwiner, find_unitary_intertwiner, Intertwiner};

use std::collections::BTreeSet;

use crate::error::{invalid, Result};
use crate::hypercube::{self, check_dim, side, Edge, Side};
use crate::linalg::{CMatrix, SpanBasis};
use crate::paths::PathWord;
use crate::scalar::{Real, C};
use crate::weighting::{canonical_weighting, check_admissible, EdgeWeighting, SimplexPoint};

/// Default residual tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Singular values below this fraction of the largest do not count toward rank.
pub const RANK_REL_TOL: f64 = 1e-8;

/// Acceptance residual for a numerically recovered intertwiner.
pub const INTERTWINER_TOL: f64 = 1e-8;

/// [`DEFAULT_TOL`], widened for single precision.
pub fn default_tol<T: Real>() -> T {
    T::lit(DEFAULT_TOL).max(T::epsilon() * T::lit(1e3))
}

/// One matrix per vertex of `Q_n`, acting on a space whose basis is labelled
/// by `index` (a list of `U`-side vertices).
#[derive(Debug, Clone, PartialEq)]
pub struct Representation<T: Real> {
    n: usize,
    index: Vec<usize>,
    images: Vec<CMatrix<T>>,
}

impl<T: Real> Representation<T> {
    pub fn new(n: usize, index: Vec<usize>, images: Vec<CMatrix<T>>) -> Result<Self> {
        check_dim(n)?;
        if images.len() != 1usize << n {
            return Err(invalid(format!("need {} images, got {}", 1usize << n, images.len())));
        }
        let d = index.len();
        if images.iter().any(|m| m.rows() != d || m.cols() != d) {
            return Err(invalid(format!("every image must be {d}x{d}")));
        }
        if index.iter().any(|&x| x >> n != 0) {
            return Err(invalid("index labels must be vertices of Q_n"));
        }
        Ok(Self { n, index, images })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.index.len()
    }

    pub fn index(&self) -> &[usize] {
        &self.index
    }

    pub fn image(&self, x: usize) -> &CMatrix<T> {
        &self.images[x]
    }

    pub fn images(&self) -> &[CMatrix<T>] {
        &self.images
    }

    /// Images in vertex order, borrowed.
    pub fn generators(&self) -> Vec<&CMatrix<T>> {
        self.images.iter().collect()
    }

    /// Conjugates every image by `w`: `x -> w ρ(x) w*`.
    pub fn conjugated(&self, w: &CMatrix<T>, index: Vec<usize>) -> Result<Self> {
        if w.cols() != self.dim() || w.rows() != index.len() {
            return Err(invalid("conjugating matrix has the wrong shape"));
        }
        let wa = w.adjoint();
        let images = self.images.iter().map(|m| &(w * m) * &wa).collect();
        Self::new(self.n, index, images)
    }

    /// Restriction to the coordinates `positions` (indices into `index`).
    pub fn compress(&self, positions: &[usize]) -> Self {
        Self {
            n: self.n,
            index: positions.iter().map(|&p| self.index[p]).collect(),
            images: self.images.iter().map(|m| m.submatrix(positions, positions)).collect(),
        }
    }

    /// Largest entrywise distance between corresponding images.
    pub fn max_diff(&self, other: &Self) -> T {
        self.images.iter().zip(&other.images).fold(T::zero(), |a, (x, y)| a.max(x.max_abs_diff(y)))
    }

    pub fn check(&self, tol: T) -> InvariantReport<T> {
        let d = self.dim();
        let id = CMatrix::identity(d);
        let mut r = InvariantReport {
            idempotent: T::zero(),
            self_adjoint: T::zero(),
            partition_u: T::zero(),
            partition_v: T::zero(),
            orthogonality: T::zero(),
            max_rank: 0,
            tolerance: tol,
            passed: false,
        };
        let rank_tol = T::lit(RANK_REL_TOL).max(T::epsilon() * T::lit(64.0));
        let mut sum_u = CMatrix::zeros(d, d);
        let mut sum_v = CMatrix::zeros(d, d);
        for (x, p) in self.images.iter().enumerate() {
            r.idempotent = r.idempotent.max((p * p).max_abs_diff(p));
            r.self_adjoint = r.self_adjoint.max(p.adjoint().max_abs_diff(p));
            r.max_rank = r.max_rank.max(p.numerical_rank(rank_tol));
            match side(x) {
                Side::U => sum_u = &sum_u + p,
                Side::V => sum_v = &sum_v + p,
            }
        }
        r.partition_u = sum_u.max_abs_diff(&id);
        r.partition_v = sum_v.max_abs_diff(&id);
        let size = 1usize << self.n;
        for u in (0..size).filter(|&x| side(x) == Side::U) {
            for v in (0..size).filter(|&x| side(x) == Side::V) {
                if (u ^ v).count_ones() != 1 {
                    let prod = &self.images[u] * &self.images[v];
                    r.orthogonality = r.orthogonality.max(prod.max_abs());
                }
            }
        }
        r.passed = r.max_violation() <= tol && r.max_rank <= 1;
        r
    }
}

/// Per-clause violations of the representation relations.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport<T: Real> {
    /// `max |P^2 - P|`
    pub idempotent: T,
    /// `max |P* - P|`
    pub self_adjoint: T,
    /// `|sum_U P - I|`
    pub partition_u: T,
    /// `|sum_V P - I|`
    pub partition_v: T,
    /// `max |P_u P_v|` over non-adjacent pairs
    pub orthogonality: T,
    pub max_rank: usize,
    pub tolerance: T,
    pub passed: bool,
}

impl<T: Real> InvariantReport<T> {
    pub fn max_violation(&self) -> T {
        self.idempotent
            .max(self.self_adjoint)
            .max(self.partition_u)
            .max(self.partition_v)
            .max(self.orthogonality)
    }
}

/// `ρ_c`: the representation induced by an admissible weighting, on the
/// `U`-vertices of its support.
pub fn induced_representation<T: Real>(c: &EdgeWeighting<T>, tol: T) -> Result<Representation<T>> {
    let report = check_admissible(c, tol);
    if !report.passed {
        return Err(report.into_error());
    }
    Ok(induced_unchecked(c))
}

pub(crate) fn induced_unchecked<T: Real>(c: &EdgeWeighting<T>) -> Representation<T> {
    let n = c.n();
    let sup = c.support();
    let index = sup.u_c.clone();
    let d = index.len();
    let live_v: BTreeSet<usize> = sup.v_c.iter().copied().collect();
    let mut images = vec![CMatrix::zeros(d, d); 1usize << n];
    for (pos, &i) in index.iter().enumerate() {
        images[i] = CMatrix::unit(d, pos, pos);
    }
    for &j in &live_v {
        let psi: Vec<C<T>> = index
            .iter()
            .map(|&i| if (i ^ j).count_ones() == 1 { c.get(&Edge::at(i, (i ^ j).trailing_zeros() as usize)) } else { C::new(T::zero(), T::zero()) })
            .collect();
        images[j] = CMatrix::outer(&psi, &psi);
    }
    Representation { n, index, images }
}

/// `ρ_t`, always on the full index set `U_n`.
pub fn rho_t<T: Real>(t: &SimplexPoint<T>) -> Result<Representation<T>> {
    induced_representation(&canonical_weighting(t)?, default_tol())
}

/// Ordered product of the vertex images along the path.
pub fn evaluate_word<T: Real>(rho: &Representation<T>, w: &PathWord) -> Result<CMatrix<T>> {
    if w.n() != rho.n {
        return Err(invalid(format!("word lives in Q_{} but the representation in Q_{}", w.n(), rho.n)));
    }
    let verts = w.vertices();
    let mut acc = rho.images[verts[0]].clone();
    for &x in &verts[1..] {
        acc = &acc * &rho.images[x];
    }
    Ok(acc)
}

/// Result of growing the span of products of a generator family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpanSaturation {
    pub dimension: usize,
    /// Longest word length that contributed a new direction.
    pub depth: usize,
    /// `false` when the depth cap stopped the search before the span stabilised.
    pub saturated: bool,
}

/// Linear span of all nonempty products of `generators`, grown breadth-first
/// by word length until no new direction appears, the full matrix space is
/// reached, or the word length hits `max_depth`.
pub fn generated_span<T: Real>(generators: &[&CMatrix<T>], max_depth: Option<usize>) -> SpanSaturation {
    let Some(first) = generators.first() else {
        return SpanSaturation { dimension: 0, depth: 0, saturated: true };
    };
    let (r, c) = (first.rows(), first.cols());
    let mut span = SpanBasis::new(r, c, T::lit(1e-9).max(T::epsilon().sqrt()));
    let mut frontier: Vec<CMatrix<T>> = Vec::new();
    for g in generators {
        if span.insert(g) {
            frontier.push((*g).clone());
        }
    }
    let mut depth = usize::from(!frontier.is_empty());
    loop {
        if span.is_full() {
            return SpanSaturation { dimension: span.dimension(), depth, saturated: true };
        }
        if frontier.is_empty() {
            return SpanSaturation { dimension: span.dimension(), depth, saturated: true };
        }
        if max_depth.is_some_and(|cap| depth >= cap) {
            return SpanSaturation { dimension: span.dimension(), depth, saturated: false };
        }
        let mut next = Vec::new();
        for a in &frontier {
            for g in generators {
                let prod = a * *g;
                if span.insert(&prod) {
                    next.push(prod);
                }
            }
        }
        if !next.is_empty() {
            depth += 1;
        }
        frontier = next;
    }
}

/// One irreducible summand of `ρ_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Block<T: Real> {
    /// All vertices (both sides) of the support component.
    pub component: Vec<usize>,
    /// Positions of the component's `U` vertices inside the parent's index.
    pub positions: Vec<usize>,
    pub rep: Representation<T>,
    pub span: SpanSaturation,
}

impl<T: Real> Block<T> {
    /// The block's images generate the full matrix algebra on the block.
    pub fn is_irreducible(&self) -> bool {
        self.span.dimension == self.rep.dim() * self.rep.dim()
    }
}

/// Splits `ρ_c` into one block per connected component of the support, and
/// certifies each block irreducible by span saturation.
pub fn decompose<T: Real>(c: &EdgeWeighting<T>, tol: T) -> Result<(Representation<T>, Vec<Block<T>>)> {
    let rho = induced_representation(c, tol)?;
    let blocks = decompose_rep(&rho, &c.support().mask);
    Ok((rho, blocks))
}

pub(crate) fn decompose_rep<T: Real>(rho: &Representation<T>, mask: &hypercube::SubgraphMask) -> Vec<Block<T>> {
    mask.edge_components()
        .into_iter()
        .map(|component| {
            let members: BTreeSet<usize> = component.iter().copied().collect();
            let positions: Vec<usize> =
                (0..rho.dim()).filter(|&p| members.contains(&rho.index[p])).collect();
            let mut rep = rho.compress(&positions);
            let d = positions.len();
            for x in 0..rep.images.len() {
                if !members.contains(&x) {
                    rep.images[x] = CMatrix::zeros(d, d);
                }
            }
            let span = generated_span(&rep.generators(), None);
            Block { component, positions, rep, span }
        })
        .collect()
}

/// Reassembles blocks into one representation on the parent's index order.
pub fn reassemble<T: Real>(n: usize, blocks: &[Block<T>]) -> Result<Representation<T>> {
    let d: usize = blocks.iter().map(|b| b.rep.dim()).sum();
    let mut index = vec![usize::MAX; d];
    let mut images = vec![CMatrix::zeros(d, d); 1usize << n];
    for b in blocks {
        for (a, &pa) in b.positions.iter().enumerate() {
            if pa >= d {
                return Err(invalid("block positions exceed the total dimension"));
            }
            index[pa] = b.rep.index[a];
            for (x, img) in images.iter_mut().enumerate() {
                for (bb, &pb) in b.positions.iter().enumerate() {
                    img[(pa, pb)] = b.rep.images[x][(a, bb)];
                }
            }
        }
    }
    if index.contains(&usize::MAX) {
        return Err(invalid("blocks do not cover every position"));
    }
    Representation::new(n, index, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn t(v: &[f64]) -> SimplexPoint<f64> {
        SimplexPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn square_images_match_closed_form() {
        let tau: f64 = 0.3;
        let rho = rho_t(&t(&[1.0 - tau, tau])).unwrap();
        // y1 = 01 carries the column (c(11,01), c(00,01)) = (sqrt(tau), sqrt(1-tau));
        // reorder the index (00, 11) -> (11, 00) to match the figure's (x1, x2)
        let swap = CMatrix::<f64>::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let p = &(&swap * rho.image(0b01)) * &swap;
        let s = (tau * (1.0 - tau)).sqrt();
        let want = CMatrix::from_real_rows(&[&[tau, s], &[s, 1.0 - tau]]);
        assert!(p.max_abs_diff(&want) < 1e-15);
        let p2 = &(&swap * rho.image(0b10)) * &swap;
        let want2 = CMatrix::from_real_rows(&[&[1.0 - tau, -s], &[-s, tau]]);
        assert!(p2.max_abs_diff(&want2) < 1e-15);
    }

    #[test]
    fn cube_image_is_psi_001_projection() {
        let (a, b, c) = (0.2f64.sqrt(), 0.3f64.sqrt(), 0.5f64.sqrt());
        let rho = rho_t(&t(&[0.2, 0.3, 0.5])).unwrap();
        let psi = [cplx(a, 0.0), cplx(b, 0.0), cplx(c, 0.0), cplx(0.0, 0.0)];
        assert!(rho.image(0b001).max_abs_diff(&CMatrix::outer(&psi, &psi)) < 1e-15);
        assert_eq!(rho.index(), &[0, 3, 5, 6]);
    }

    #[test]
    fn basis_points_give_diagonal_images() {
        for k in 0..3 {
            let rho = rho_t(&SimplexPoint::<f64>::vertex(3, k).unwrap()).unwrap();
            for img in rho.images() {
                for r in 0..4 {
                    for c in 0..4 {
                        let z = img[(r, c)];
                        if r != c {
                            assert_eq!(z.norm(), 0.0);
                        } else {
                            assert!(z.norm() == 0.0 || (z.re - 1.0).abs() < 1e-15);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn one_dimensional_cube() {
        let rho = rho_t(&t(&[1.0])).unwrap();
        assert_eq!(rho.dim(), 1);
        assert_eq!(rho.image(0), &CMatrix::identity(1));
        assert_eq!(rho.image(1), &CMatrix::identity(1));
    }

    #[test]
    fn invariants_hold_for_rho_t() {
        let r = rho_t(&t(&[0.1, 0.2, 0.3, 0.4])).unwrap().check(1e-12);
        assert!(r.passed, "{r:?}");
        assert_eq!(r.max_rank, 1);
    }

    #[test]
    fn inadmissible_weighting_is_rejected() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = EdgeWeighting::from_values(2, hypercube::edges(2).unwrap().into_iter().map(|e| (e, cplx(h, 0.0)))).unwrap();
        assert!(matches!(induced_representation(&c, 1e-10), Err(crate::Error::Inadmissible { .. })));
    }

    #[test]
    fn word_evaluation() {
        let rho = rho_t(&t(&[0.3, 0.7])).unwrap();
        let w = PathWord::trivial(2, 3).unwrap();
        assert_eq!(evaluate_word(&rho, &w).unwrap(), rho.image(3).clone());
        // path 00 -> 01 -> 11 connects index positions 0 and 1 only
        let m = evaluate_word(&rho, &PathWord::new(2, 0, vec![0, 1]).unwrap()).unwrap();
        assert!(m[(0, 1)].norm() > 0.1);
        assert!(m[(0, 0)].norm() < 1e-15 && m[(1, 0)].norm() < 1e-15 && m[(1, 1)].norm() < 1e-15);
        assert!(evaluate_word(&rho, &PathWord::trivial(3, 0).unwrap()).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let (_, blocks) = decompose(&canonical_weighting(&t(&[0.2, 0.3, 0.5])).unwrap(), 1e-10).unwrap();
        assert_eq!(blocks.len(), 1);
        assert_eq!(blocks[0].rep.dim(), 4);
        assert!(blocks[0].is_irreducible());

        let (_, blocks) = decompose(&canonical_weighting(&t(&[1.0, 0.0])).unwrap(), 1e-10).unwrap();
        assert_eq!(blocks.iter().map(|b| b.rep.dim()).collect::<Vec<_>>(), vec![1, 1]);

        let (rho, blocks) = decompose(&canonical_weighting(&t(&[0.0, 0.4, 0.6])).unwrap(), 1e-10).unwrap();
        assert_eq!(blocks.iter().map(|b| b.rep.dim()).collect::<Vec<_>>(), vec![2, 2]);
        assert!(blocks.iter().all(Block::is_irreducible));
        assert!(reassemble(3, &blocks).unwrap().max_diff(&rho) < 1e-12);
    }

    #[test]
    fn span_of_a_commuting_family() {
        let a = CMatrix::<f64>::unit(3, 0, 0);
        let b = CMatrix::<f64>::unit(3, 1, 1);
        let s = generated_span(&[&a, &b], None);
        assert_eq!(s.dimension, 2);
        assert!(s.saturated);
    }
}
