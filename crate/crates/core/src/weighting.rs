//! Complex edge weightings of `Q_n`.
//!
//! A weighting `c` is admissible when, for every pair of same-side vertices,
//! the sum over common neighbours of `c(x y1) * conj(c(x y2))` is the
//! Kronecker delta. Admissible weightings are exactly the data behind rank-one
//! representations; the canonical family `c_t` is parametrised by the simplex.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::hypercube::{
    self, check_dim, digit, flip_unchecked, insert_digit_unchecked, par, remove_digit, side, Edge, Side,
    Square, SubgraphMask,
};
use crate::scalar::{real, Real, C};

/// Edge weights at or below this modulus are treated as absent.
pub const ZERO_THRESHOLD: f64 = 1e-14;

/// Allowed deviation of a simplex point's coordinate sum from 1.
pub const SIMPLEX_SUM_TOL: f64 = 1e-12;

/// Allowed deviation of a gauge phase from modulus 1.
pub const PHASE_TOL: f64 = 1e-12;

fn simplex_tol<T: Real>(n: usize) -> T {
    T::lit(SIMPLEX_SUM_TOL).max(T::epsilon() * T::lit(4.0 * n as f64))
}

fn phase_tol<T: Real>() -> T {
    T::lit(PHASE_TOL).max(T::epsilon() * T::lit(16.0))
}

/// A point `[t_0, ..., t_{n-1}]` of the standard simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint<T: Real> {
    entries: Vec<T>,
}

impl<T: Real> SimplexPoint<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("simplex point needs at least one coordinate"));
        }
        if entries.iter().any(|x| !x.is_finite() || *x < T::zero()) {
            return Err(invalid("simplex coordinates must be finite and nonnegative"));
        }
        let sum = entries.iter().fold(T::zero(), |a, &b| a + b);
        if (sum - T::one()).abs() > simplex_tol::<T>(entries.len()) {
            return Err(invalid(format!("simplex coordinates sum to {sum}, not 1")));
        }
        Ok(Self { entries })
    }

    /// Standard basis vertex `e_k` of the simplex in dimension `n`.
    pub fn vertex(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(invalid(format!("simplex vertex {k} out of range for n = {n}")));
        }
        Self::new((0..n).map(|i| if i == k { T::one() } else { T::zero() }).collect())
    }

    /// Barycentre `[1/n, ..., 1/n]`.
    pub fn center(n: usize) -> Result<Self> {
        check_dim(n)?;
        Self::new(vec![T::one() / T::lit(n as f64); n])
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn get(&self, k: usize) -> T {
        self.entries[k]
    }

    /// Number of exactly-zero coordinates.
    pub fn zero_count(&self) -> usize {
        self.entries.iter().filter(|x| **x == T::zero()).count()
    }

    pub fn is_interior(&self) -> bool {
        self.zero_count() == 0
    }

    /// Coordinates that are positive but below [`ZERO_THRESHOLD`]; such points
    /// give numerically ill-conditioned block structure.
    pub fn near_zero_coordinates(&self) -> Vec<usize> {
        let thr = T::lit(ZERO_THRESHOLD);
        (0..self.n()).filter(|&k| self.entries[k] > T::zero() && self.entries[k] <= thr).collect()
    }

    /// Inserts an exact zero at position `l`, giving a point one dimension up.
    pub fn with_zero_inserted(&self, l: usize) -> Result<Self> {
        if l > self.n() {
            return Err(invalid(format!("cannot insert at position {l} of a {}-point", self.n())));
        }
        let mut e = self.entries.clone();
        e.insert(l, T::zero());
        Ok(Self { entries: e })
    }

    /// Deletes coordinate `l`, which must be exactly zero.
    pub fn without(&self, l: usize) -> Result<Self> {
        if l >= self.n() {
            return Err(invalid(format!("coordinate {l} out of range")));
        }
        if self.entries[l] != T::zero() {
            return Err(invalid(format!("coordinate {l} is {}, not exactly zero", self.entries[l])));
        }
        if self.n() == 1 {
            return Err(invalid("cannot drop the only coordinate"));
        }
        let mut e = self.entries.clone();
        e.remove(l);
        Self::new(e)
    }

    /// Largest coordinate difference.
    pub fn max_diff(&self, other: &Self) -> T {
        self.entries.iter().zip(&other.entries).fold(T::zero(), |a, (x, y)| a.max((*x - *y).abs()))
    }
}

/// Complex weights on the edges of `Q_n`; missing edges weigh zero.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeWeighting<T: Real> {
    n: usize,
    values: BTreeMap<Edge, C<T>>,
}

impl<T: Real> EdgeWeighting<T> {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { n, values: BTreeMap::new() })
    }

    pub fn from_values(n: usize, values: impl IntoIterator<Item = (Edge, C<T>)>) -> Result<Self> {
        let mut c = Self::zero(n)?;
        for (e, z) in values {
            c.set(e, z)?;
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, e: &Edge) -> C<T> {
        self.values.get(e).copied().unwrap_or_else(C::zero)
    }

    /// Weight of the edge at `x` in direction `k`.
    pub fn at(&self, x: usize, k: usize) -> C<T> {
        self.get(&Edge::at(x, k))
    }

    pub fn set(&mut self, e: Edge, z: C<T>) -> Result<()> {
        let valid = e.u >> self.n == 0
            && e.k < self.n
            && e.v == flip_unchecked(e.u, e.k)
            && side(e.u) == Side::U;
        if !valid {
            return Err(invalid(format!("{e:?} is not an edge of Q_{}", self.n)));
        }
        if !(z.re.is_finite() && z.im.is_finite()) {
            return Err(invalid("edge weights must be finite"));
        }
        self.values.insert(e, z);
        Ok(())
    }

    /// Stored entries in edge order (may include explicit zeros).
    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &C<T>)> {
        self.values.iter()
    }

    pub fn is_live(&self, e: &Edge) -> bool {
        self.get(e).norm() > T::lit(ZERO_THRESHOLD)
    }

    pub fn support(&self) -> SupportGraph {
        let kept: Vec<Edge> = self.values.keys().filter(|e| self.is_live(e)).copied().collect();
        let mask = SubgraphMask::new(self.n, kept).expect("stored edges are validated");
        let touched = mask.touched_vertices();
        let (u_c, v_c) = touched.into_iter().partition(|&x| side(x) == Side::U);
        SupportGraph { mask, u_c, v_c }
    }

    /// Every edge of `Q_n` is live.
    pub fn is_nowhere_vanishing(&self) -> bool {
        hypercube::edges(self.n).expect("dimension validated").iter().all(|e| self.is_live(e))
    }

    /// Largest entrywise distance to another weighting on the same cube.
    pub fn max_diff(&self, other: &Self) -> T {
        let keys: BTreeSet<&Edge> = self.values.keys().chain(other.values.keys()).collect();
        keys.into_iter().fold(T::zero(), |a, e| a.max((self.get(e) - other.get(e)).norm()))
    }

    /// Keeps only edges inside the given vertex set.
    pub fn restricted_to(&self, vertices: &BTreeSet<usize>) -> Self {
        Self {
            n: self.n,
            values: self
                .values
                .iter()
                .filter(|(e, _)| vertices.contains(&e.u) && vertices.contains(&e.v))
                .map(|(e, z)| (*e, *z))
                .collect(),
        }
    }
}

/// The subgraph `Q_n(c)` carrying the live edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportGraph {
    pub mask: SubgraphMask,
    pub u_c: Vec<usize>,
    pub v_c: Vec<usize>,
}

/// Outcome of [`check_admissible`].
#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibilityReport<T: Real> {
    pub max_violation: T,
    /// Same-side vertex pair where the worst violation occurs.
    pub worst_pair: Option<(usize, usize)>,
    pub tolerance: T,
    pub passed: bool,
}

impl<T: Real> AdmissibilityReport<T> {
    pub fn into_error(&self) -> Error {
        let (first, second) = self.worst_pair.unwrap_or((0, 0));
        Error::Inadmissible { max_violation: self.max_violation.to_f64_lossy(), first, second }
    }
}

/// Checks both orthonormality conditions over the support's vertex sets.
/// Pairs without common neighbours contribute nothing and are skipped.
pub fn check_admissible<T: Real>(c: &EdgeWeighting<T>, tol: T) -> AdmissibilityReport<T> {
    let n = c.n;
    let sup = c.support();
    let mut worst = T::zero();
    let mut worst_pair = None;

    let mut check_side = |verts: &[usize]| {
        for (a, &x1) in verts.iter().enumerate() {
            for &x2 in &verts[a..] {
                let diff = x1 ^ x2;
                let shared: Vec<usize> = match diff.count_ones() {
                    0 => (0..n).map(|k| flip_unchecked(x1, k)).collect(),
                    2 => {
                        let low = diff & diff.wrapping_neg();
                        vec![x1 ^ low, x1 ^ (diff ^ low)]
                    }
                    _ => continue,
                };
                let sum = shared.iter().fold(C::<T>::zero(), |acc, &y| {
                    acc + c.get(&Edge::at(y, (y ^ x1).trailing_zeros() as usize))
                        * c.get(&Edge::at(y, (y ^ x2).trailing_zeros() as usize)).conj()
                });
                let target = if x1 == x2 { C::one() } else { C::zero() };
                let v = (sum - target).norm();
                if worst_pair.is_none() || v > worst {
                    worst = v;
                    worst_pair = Some((x1, x2));
                }
            }
        }
    };
    check_side(&sup.v_c);
    check_side(&sup.u_c);

    AdmissibilityReport { max_violation: worst, worst_pair, tolerance: tol, passed: worst <= tol }
}

/// Outcome of [`check_square_relations`].
#[derive(Debug, Clone, PartialEq)]
pub struct SquareReport<T: Real> {
    /// Largest residual of the ratio and modulus relations.
    pub max_violation: T,
    /// Squares with two adjacent live edges but a dead opposite edge.
    pub broken_squares: Vec<Square>,
    pub worst_square: Option<Square>,
    pub passed: bool,
}

/// For every square with two adjacent live edges `e, f` (opposite edges
/// `g, h`): `g, h` are live, `c(e)/c(f) = -conj(c(g)/c(h))`, `|c(e)| = |c(g)|`
/// and `|c(f)| = |c(h)|`.
pub fn check_square_relations<T: Real>(c: &EdgeWeighting<T>, tol: T) -> SquareReport<T> {
    let mut max_violation = T::zero();
    let mut broken = Vec::new();
    let mut worst_square = None;
    for sq in hypercube::squares(c.n).expect("dimension validated") {
        let es = sq.edges();
        for a in 0..4 {
            let (e, f, g, h) = (es[a], es[(a + 1) % 4], es[(a + 2) % 4], es[(a + 3) % 4]);
            if !(c.is_live(&e) && c.is_live(&f)) {
                continue;
            }
            if !(c.is_live(&g) && c.is_live(&h)) {
                broken.push(sq);
                break;
            }
            let (ce, cf, cg, ch) = (c.get(&e), c.get(&f), c.get(&g), c.get(&h));
            let ratio = (ce / cf + (cg / ch).conj()).norm();
            let moduli = (ce.norm() - cg.norm()).abs().max((cf.norm() - ch.norm()).abs());
            let v = ratio.max(moduli);
            if v > max_violation {
                max_violation = v;
                worst_square = Some(sq);
            }
        }
    }
    let passed = broken.is_empty() && max_violation <= tol;
    SquareReport { max_violation, broken_squares: broken, worst_square, passed }
}

/// `c_t(i, i#k) = (-1)^{par_k(i)} sqrt(t_k)` for `i` on the `U` side.
pub fn canonical_weighting<T: Real>(t: &SimplexPoint<T>) -> Result<EdgeWeighting<T>> {
    let n = t.n();
    let roots: Vec<T> = t.entries.iter().map(|x| x.sqrt()).collect();
    let values = hypercube::edges(n)?.into_iter().map(|e| {
        let sign = if par(e.u, e.k) == 0 { T::one() } else { -T::one() };
        (e, real(sign * roots[e.k]))
    });
    EdgeWeighting::from_values(n, values)
}

/// Unit-modulus phases on a set of vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseGauge<T: Real> {
    phases: BTreeMap<usize, C<T>>,
}

impl<T: Real> PhaseGauge<T> {
    pub fn new(phases: BTreeMap<usize, C<T>>) -> Result<Self> {
        let tol = phase_tol::<T>();
        if let Some((x, z)) = phases.iter().find(|(_, z)| (z.norm() - T::one()).abs() > tol) {
            return Err(invalid(format!("phase at vertex {x} has modulus {}", z.norm())));
        }
        Ok(Self { phases })
    }

    /// All ones on every vertex of `Q_n`.
    pub fn identity(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self { phases: (0..1usize << n).map(|x| (x, C::one())).collect() })
    }

    pub fn get(&self, x: usize) -> Option<C<T>> {
        self.phases.get(&x).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &C<T>)> {
        self.phases.iter()
    }

    pub fn conj(&self) -> Self {
        Self { phases: self.phases.iter().map(|(x, z)| (*x, z.conj())).collect() }
    }

    /// Pointwise product on the common domain.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            phases: self
                .phases
                .iter()
                .filter_map(|(x, a)| other.phases.get(x).map(|b| (*x, *a * *b)))
                .collect(),
        }
    }

    pub(crate) fn from_unchecked(phases: BTreeMap<usize, C<T>>) -> Self {
        Self { phases }
    }
}

/// `c'(ij) = λ_i λ_j c(ij)`.
pub fn apply_gauge<T: Real>(c: &EdgeWeighting<T>, gauge: &PhaseGauge<T>) -> Result<EdgeWeighting<T>> {
    let sup = c.support();
    if let Some(x) = sup.u_c.iter().chain(&sup.v_c).find(|x| gauge.get(**x).is_none()) {
        return Err(invalid(format!("gauge has no phase at support vertex {x}")));
    }
    let tol = phase_tol::<T>();
    if let Some((x, z)) = gauge.iter().find(|(_, z)| (z.norm() - T::one()).abs() > tol) {
        return Err(invalid(format!("phase at vertex {x} has modulus {}", z.norm())));
    }
    let one = C::<T>::one();
    let values = c.values.iter().map(|(e, z)| {
        let li = gauge.get(e.u).unwrap_or(one);
        let lj = gauge.get(e.v).unwrap_or(one);
        (*e, li * lj * *z)
    });
    EdgeWeighting::from_values(c.n, values)
}

/// Relabels a vertex of the half-cube `[x]_l = bit` to `Q_{n-1}`.
///
/// On the `bit = 1` half the removed digit changes the parity, so digit 0 is
/// flipped as well; this keeps `U` vertices on the `U` side.
pub fn halfcube_to_sub(x: usize, l: usize, positive: bool) -> usize {
    let y = remove_digit(x, l);
    if positive {
        flip_unchecked(y, 0)
    } else {
        y
    }
}

/// Inverse of [`halfcube_to_sub`].
pub fn sub_to_halfcube(y: usize, l: usize, positive: bool) -> usize {
    if positive {
        insert_digit_unchecked(flip_unchecked(y, 0), l, 1)
    } else {
        insert_digit_unchecked(y, l, 0)
    }
}

/// Pulls a weighting supported in a half-cube back to `Q_{n-1}`.
pub fn restrict_to_halfcube<T: Real>(c: &EdgeWeighting<T>, l: usize, positive: bool) -> Result<EdgeWeighting<T>> {
    let n = c.n;
    if n < 2 {
        return Err(invalid("restriction needs n >= 2"));
    }
    if l >= n {
        return Err(invalid(format!("direction {l} is not below n = {n}")));
    }
    let want = usize::from(positive);
    let mut out = EdgeWeighting::zero(n - 1)?;
    for (e, z) in &c.values {
        let inside = e.k != l && digit(e.u, l) == want;
        if !inside {
            if c.is_live(e) {
                return Err(invalid(format!("live edge {e:?} lies outside the half-cube")));
            }
            continue;
        }
        let a = halfcube_to_sub(e.u, l, positive);
        let b = halfcube_to_sub(e.v, l, positive);
        out.set(Edge::between(n - 1, a, b)?, *z)?;
    }
    Ok(out)
}

/// Pushes a weighting of `Q_{n-1}` into the half-cube `[x]_l = bit` of `Q_n`,
/// zero elsewhere. Inverse of [`restrict_to_halfcube`].
pub fn embed_into_halfcube<T: Real>(c: &EdgeWeighting<T>, l: usize, positive: bool) -> Result<EdgeWeighting<T>> {
    let n = c.n + 1;
    if l >= n {
        return Err(invalid(format!("direction {l} is not below n = {n}")));
    }
    let mut out = EdgeWeighting::zero(n)?;
    for (e, z) in &c.values {
        let a = sub_to_halfcube(e.u, l, positive);
        let b = sub_to_halfcube(e.v, l, positive);
        out.set(Edge::between(n, a, b)?, *z)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn t(v: &[f64]) -> SimplexPoint<f64> {
        SimplexPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn simplex_validation() {
        assert!(SimplexPoint::new(vec![0.5, 0.5]).is_ok());
        assert!(SimplexPoint::new(vec![0.5, 0.6]).is_err());
        assert!(SimplexPoint::new(vec![-0.1, 1.1]).is_err());
        assert!(SimplexPoint::<f64>::new(vec![]).is_err());
        assert!(SimplexPoint::new(vec![f64::NAN, 1.0]).is_err());
        assert_eq!(t(&[0.0, 1.0]).without(0).unwrap(), t(&[1.0]));
        assert!(t(&[0.25, 0.75]).without(0).is_err());
        assert_eq!(t(&[0.3, 0.7]).with_zero_inserted(1).unwrap(), t(&[0.3, 0.0, 0.7]));
    }

    #[test]
    fn support_examples() {
        let full = canonical_weighting(&t(&[0.2, 0.3, 0.5])).unwrap().support();
        assert_eq!(full.mask.edge_count(), 12);
        assert_eq!(full.u_c, vec![0, 3, 5, 6]);
        let none = EdgeWeighting::<f64>::zero(3).unwrap().support();
        assert_eq!(none.mask.edge_count(), 0);
        assert!(none.u_c.is_empty() && none.v_c.is_empty());
        let horizontal = canonical_weighting(&t(&[1.0, 0.0])).unwrap().support();
        assert_eq!(
            horizontal.mask.edges().copied().collect::<Vec<_>>(),
            hypercube::edges_in_direction(2, 0).unwrap()
        );
    }

    #[test]
    fn canonical_weighting_of_the_square() {
        // figure parameter tau equals t_1
        let tau = 0.3;
        let c = canonical_weighting(&t(&[1.0 - tau, tau])).unwrap();
        let (rt, rtb) = (tau.sqrt(), (1.0 - tau).sqrt());
        assert!((c.at(0b00, 1) - cplx(rt, 0.0)).norm() < 1e-15);
        assert!((c.at(0b00, 0) - cplx(rtb, 0.0)).norm() < 1e-15);
        assert!((c.at(0b11, 1) - cplx(rt, 0.0)).norm() < 1e-15);
        assert!((c.at(0b11, 0) - cplx(-rtb, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn canonical_weighting_psi_001() {
        let (a, b, cc) = (0.2f64.sqrt(), 0.3f64.sqrt(), 0.5f64.sqrt());
        let w = canonical_weighting(&t(&[a * a, b * b, cc * cc])).unwrap();
        let col: Vec<f64> = [0b000usize, 0b011, 0b101, 0b110]
            .iter()
            .map(|&i| {
                let d = i ^ 0b001;
                if d.count_ones() == 1 {
                    w.get(&Edge::between(3, i, 0b001).unwrap()).re
                } else {
                    0.0
                }
            })
            .collect();
        for (x, y) in col.iter().zip([a, b, cc, 0.0]) {
            assert!((x - y).abs() < 1e-15);
        }
    }

    #[test]
    fn basis_point_support_is_a_matching() {
        for k in 0..3 {
            let c = canonical_weighting(&SimplexPoint::<f64>::vertex(3, k).unwrap()).unwrap();
            let kept: Vec<Edge> = c.support().mask.edges().copied().collect();
            assert_eq!(kept, hypercube::edges_in_direction(3, k).unwrap());
        }
    }

    #[test]
    fn figure_weighting_is_admissible() {
        // square x2 - y2 - x1 - y1 with x1 = 11, x2 = 00, y1 = 01, y2 = 10
        let tau: f64 = 0.35;
        let (rt, rtb) = (tau.sqrt(), (1.0 - tau).sqrt());
        let c = EdgeWeighting::from_values(
            2,
            [
                (Edge::between(2, 0b11, 0b01).unwrap(), cplx(rt, 0.0)),
                (Edge::between(2, 0b01, 0b00).unwrap(), cplx(rtb, 0.0)),
                (Edge::between(2, 0b00, 0b10).unwrap(), cplx(rt, 0.0)),
                (Edge::between(2, 0b10, 0b11).unwrap(), cplx(-rtb, 0.0)),
            ],
        )
        .unwrap();
        assert!(check_admissible(&c, 1e-12).passed);
        assert!(check_square_relations(&c, 1e-12).passed);
    }

    #[test]
    fn constant_weighting_is_not_admissible() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let c = EdgeWeighting::from_values(2, hypercube::edges(2).unwrap().into_iter().map(|e| (e, cplx(h, 0.0)))).unwrap();
        let rep = check_admissible(&c, 1e-10);
        assert!(!rep.passed);
        // cross term h*h + h*h = 1
        assert!((rep.max_violation - 1.0).abs() < 1e-15);
    }

    #[test]
    fn dead_squares_pass_vacuously() {
        let c = canonical_weighting(&t(&[0.0, 0.4, 0.6])).unwrap();
        assert!(check_square_relations(&c, 1e-12).passed);
        assert!(check_admissible(&c, 1e-12).passed);
    }

    #[test]
    fn gauge_identity_and_inverse() {
        let c = canonical_weighting(&t(&[0.1, 0.6, 0.3])).unwrap();
        let id = PhaseGauge::identity(3).unwrap();
        assert_eq!(apply_gauge(&c, &id).unwrap(), c);
        let g = PhaseGauge::new((0..8).map(|x| (x, C::from_polar(1.0, 0.7 * x as f64))).collect()).unwrap();
        let back = apply_gauge(&apply_gauge(&c, &g).unwrap(), &g.conj()).unwrap();
        assert!(back.max_diff(&c) < 1e-15);
        assert!(PhaseGauge::new([(0usize, cplx(2.0, 0.0))].into_iter().collect()).is_err());
        let partial = PhaseGauge::new([(0usize, cplx(1.0, 0.0))].into_iter().collect()).unwrap();
        assert!(apply_gauge(&c, &partial).is_err());
    }

    #[test]
    fn restriction_round_trip() {
        let s = t(&[0.25, 0.75]);
        let cs = canonical_weighting(&s).unwrap();
        for l in 0..3 {
            for positive in [false, true] {
                let up = embed_into_halfcube(&cs, l, positive).unwrap();
                let sup = up.support();
                let half = hypercube::half_cube(3, l, positive).unwrap();
                assert!(sup.mask.edges().all(|e| half.contains(e)));
                assert!(check_admissible(&up, 1e-12).passed);
                let down = restrict_to_halfcube(&up, l, positive).unwrap();
                assert!(down.max_diff(&cs) == 0.0);
                assert!(restrict_to_halfcube(&up, l, !positive).is_err());
            }
        }
    }

    #[test]
    fn relabelling_preserves_sides() {
        for l in 0..4 {
            for x in 0..16usize {
                for positive in [false, true] {
                    if digit(x, l) != usize::from(positive) {
                        continue;
                    }
                    let y = halfcube_to_sub(x, l, positive);
                    assert_eq!(side(x), side(y));
                    assert_eq!(sub_to_halfcube(y, l, positive), x);
                }
            }
        }
    }
}
