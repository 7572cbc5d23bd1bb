//! Magic unitaries, the Pauli model of `C(S_4^+)`, and the fill-up of the
//! `2x4` magic isometry coming from `Q_3`.
//!
//! `M_2` is identified with 4-space through the Pauli basis
//! `c_1 = I, c_2 = σ_x, c_3 = σ_y, c_4 = σ_z`, with coordinates
//! `x_i = tr(c_i* A) / 2`. This is the only supported identification.

use num_traits::{One, Zero};

use crate::error::{invalid, Error, Result};
use crate::linalg::CMatrix;
use crate::rep::{find_unitary_intertwiner, rho_t, Intertwiner, INTERTWINER_TOL};
use crate::scalar::{cplx, real, Real, C};
use crate::weighting::SimplexPoint;

/// Default tolerance for the magic-unitary clauses.
pub const MAGIC_TOL: f64 = 1e-12;

fn magic_tol<T: Real>() -> T {
    T::lit(MAGIC_TOL).max(T::epsilon() * T::lit(1e3))
}

/// `m x n` grid of projections acting on a common space.
#[derive(Debug, Clone, PartialEq)]
pub struct MagicMatrix<T: Real> {
    m: usize,
    n: usize,
    entries: Vec<Vec<CMatrix<T>>>,
}

impl<T: Real> MagicMatrix<T> {
    pub fn new(entries: Vec<Vec<CMatrix<T>>>) -> Result<Self> {
        let m = entries.len();
        let n = entries.first().map_or(0, Vec::len);
        if m == 0 || n == 0 {
            return Err(invalid("magic matrix needs at least one entry"));
        }
        if entries.iter().any(|r| r.len() != n) {
            return Err(invalid("magic matrix rows differ in length"));
        }
        let d = entries[0][0].rows();
        if entries.iter().flatten().any(|e| e.rows() != d || e.cols() != d) {
            return Err(invalid("magic matrix entries must share one square shape"));
        }
        Ok(Self { m, n, entries })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Size of the matrices in the grid.
    pub fn dim(&self) -> usize {
        self.entries[0][0].rows()
    }

    pub fn get(&self, i: usize, j: usize) -> &CMatrix<T> {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<CMatrix<T>>] {
        &self.entries
    }

    /// The first `k` rows.
    pub fn top_rows(&self, k: usize) -> Result<Self> {
        if k == 0 || k > self.m {
            return Err(invalid(format!("cannot take {k} of {} rows", self.m)));
        }
        Self::new(self.entries[..k].to_vec())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MagicKind {
    Isometry,
    Unitary,
}

/// Per-clause violations; `column_sums` is only checked for unitaries.
#[derive(Debug, Clone, PartialEq)]
pub struct MagicReport<T: Real> {
    pub kind: MagicKind,
    pub projection: T,
    pub row_sums: T,
    pub column_orthogonality: T,
    pub column_sums: Option<T>,
    pub tolerance: T,
    pub passed: bool,
}

impl<T: Real> MagicReport<T> {
    pub fn max_violation(&self) -> T {
        self.projection
            .max(self.row_sums)
            .max(self.column_orthogonality)
            .max(self.column_sums.unwrap_or_else(T::zero))
    }
}

pub fn verify_magic<T: Real>(p: &MagicMatrix<T>, kind: MagicKind, tol: T) -> MagicReport<T> {
    let d = p.dim();
    let id = CMatrix::identity(d);
    let mut projection = T::zero();
    for e in p.entries.iter().flatten() {
        projection = projection.max((e * e).max_abs_diff(e)).max(e.adjoint().max_abs_diff(e));
    }
    let mut row_sums = T::zero();
    for row in &p.entries {
        let s = row.iter().fold(CMatrix::zeros(d, d), |acc, e| &acc + e);
        row_sums = row_sums.max(s.max_abs_diff(&id));
    }
    let mut column_orthogonality = T::zero();
    let mut col_worst = T::zero();
    for j in 0..p.n {
        for i1 in 0..p.m {
            for i2 in (i1 + 1)..p.m {
                column_orthogonality = column_orthogonality.max((&p.entries[i1][j] * &p.entries[i2][j]).max_abs());
            }
        }
        let s = (0..p.m).fold(CMatrix::zeros(d, d), |acc, i| &acc + &p.entries[i][j]);
        col_worst = col_worst.max(s.max_abs_diff(&id));
    }
    let column_sums = match kind {
        MagicKind::Unitary => Some(if p.m == p.n { col_worst } else { T::infinity() }),
        MagicKind::Isometry => None,
    };
    let mut r = MagicReport {
        kind,
        projection,
        row_sums,
        column_orthogonality,
        column_sums,
        tolerance: tol,
        passed: false,
    };
    r.passed = r.max_violation() <= tol;
    r
}

/// Pauli matrix `c_{k+1}` for `k` in `0..4`.
pub fn pauli<T: Real>(k: usize) -> CMatrix<T> {
    let (z, o, i) = (C::<T>::zero(), C::<T>::one(), cplx(T::zero(), T::one()));
    let rows = match k {
        0 => [[o, z], [z, o]],
        1 => [[z, o], [o, z]],
        2 => [[z, -i], [i, z]],
        3 => [[o, z], [z, -o]],
        _ => panic!("Pauli index {k} out of range"),
    };
    CMatrix::from_fn(2, 2, |r, c| rows[r][c])
}

/// Coefficients of a `2x2` matrix in the Pauli basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PauliCoords<T: Real>(pub [C<T>; 4]);

impl<T: Real> PauliCoords<T> {
    pub fn max_diff(&self, other: &Self) -> T {
        (0..4).map(|k| (self.0[k] - other.0[k]).norm()).fold(T::zero(), T::max)
    }
}

pub fn pauli_coords<T: Real>(a: &CMatrix<T>) -> Result<PauliCoords<T>> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(invalid("Pauli coordinates need a 2x2 matrix"));
    }
    let half = real(T::lit(0.5));
    Ok(PauliCoords(std::array::from_fn(|k| (&pauli::<T>(k).adjoint() * a).trace() * half)))
}

pub fn pauli_matrix<T: Real>(x: &PauliCoords<T>) -> CMatrix<T> {
    (0..4).fold(CMatrix::zeros(2, 2), |acc, k| &acc + &pauli::<T>(k).scale(x.0[k]))
}

/// `Π(X)`: the rank-one projection onto `span(X)` inside `M_2 ≅ C^4`.
pub fn span_projection<T: Real>(x: &CMatrix<T>) -> Result<CMatrix<T>> {
    let v = pauli_coords(x)?.0;
    let norm2 = v.iter().fold(T::zero(), |a, z| a + z.norm_sqr());
    if norm2 <= T::min_positive_value() {
        return Err(invalid("span projection of the zero matrix"));
    }
    Ok(CMatrix::outer(&v, &v).scale(real(T::one() / norm2)))
}

/// A `2x2` special unitary.
#[derive(Debug, Clone, PartialEq)]
pub struct SU2Element<T: Real>(CMatrix<T>);

impl<T: Real> SU2Element<T> {
    pub fn new(x: CMatrix<T>) -> Result<Self> {
        if x.rows() != 2 || x.cols() != 2 {
            return Err(invalid("SU(2) element must be 2x2"));
        }
        let tol = magic_tol::<T>();
        let defect = x.unitarity_defect();
        if defect > tol {
            return Err(invalid(format!("not unitary: defect {defect}")));
        }
        let det = (x.determinant() - C::one()).norm();
        if det > tol {
            return Err(invalid(format!("determinant off from 1 by {det}")));
        }
        Ok(Self(x))
    }

    pub fn identity() -> Self {
        Self(CMatrix::identity(2))
    }

    pub fn matrix(&self) -> &CMatrix<T> {
        &self.0
    }
}

/// `s, t, u` with `x = [[is, t+iu], [-t+iu, -is]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Params<T: Real> {
    pub s: T,
    pub t: T,
    pub u: T,
}

/// The element attached to `t = [a^2, b^2, c^2]`.
pub fn su2_from_simplex<T: Real>(t: &SimplexPoint<T>) -> Result<(SU2Element<T>, Su2Params<T>)> {
    if t.n() != 3 {
        return Err(invalid(format!("need a point of the 2-simplex, got {} coordinates", t.n())));
    }
    let (a, b, c) = (t.get(0).sqrt(), t.get(1).sqrt(), t.get(2).sqrt());
    let two = T::lit(2.0);
    let root = two.sqrt() * (c + T::one()).sqrt();
    let p = Su2Params { s: a / root, t: b / root, u: ((c + T::one()) / two).sqrt() };
    let norm = p.s * p.s + p.t * p.t + p.u * p.u;
    if (norm - T::one()).abs() > magic_tol::<T>() {
        return Err(Error::Consistency(format!("s^2 + t^2 + u^2 = {norm}")));
    }
    let x = CMatrix::from_fn(2, 2, |r, col| match (r, col) {
        (0, 0) => cplx(T::zero(), p.s),
        (0, 1) => cplx(p.t, p.u),
        (1, 0) => cplx(-p.t, p.u),
        _ => cplx(T::zero(), -p.s),
    });
    Ok((SU2Element::new(x)?, p))
}

fn sigma_grid<T: Real>(f: impl Fn(usize, usize) -> CMatrix<T>) -> Result<MagicMatrix<T>> {
    let entries = (0..4)
        .map(|i| (0..4).map(|j| span_projection(&f(i, j))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let p = MagicMatrix::new(entries)?;
    let report = verify_magic(&p, MagicKind::Unitary, magic_tol());
    if !report.passed {
        return Err(Error::Consistency(format!(
            "Pauli model is not a magic unitary: violation {}",
            report.max_violation()
        )));
    }
    Ok(p)
}

/// `u_ij -> Π(c_i x c_j)`.
pub fn sigma_x<T: Real>(x: &SU2Element<T>) -> Result<MagicMatrix<T>> {
    sigma_grid(|i, j| &(&pauli::<T>(i) * &x.0) * &pauli::<T>(j))
}

/// `u_ij -> Π(x* c_i x c_j)`, unitarily equivalent to [`sigma_x`].
pub fn sigma_x_conjugated<T: Real>(x: &SU2Element<T>) -> Result<MagicMatrix<T>> {
    let xa = x.0.adjoint();
    sigma_grid(|i, j| &(&(&xa * &pauli::<T>(i)) * &x.0) * &pauli::<T>(j))
}

/// Pauli coordinates of `x* c_i x c_j`, row `i`, column `j`.
pub fn conjugated_coordinate_table<T: Real>(x: &SU2Element<T>) -> [[PauliCoords<T>; 4]; 4] {
    let xa = x.0.adjoint();
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let m = &(&(&xa * &pauli::<T>(i)) * &x.0) * &pauli::<T>(j);
            pauli_coords(&m).expect("2x2 by construction")
        })
    })
}

/// `(i, j) -> vertex of Q_3` for the `2x4` magic isometry: row 0 lands on
/// `U_3`, row 1 on `V_3`, and each column pairs antipodal vertices.
pub fn labeling_q3() -> [[usize; 4]; 2] {
    [[0b000, 0b011, 0b110, 0b101], [0b111, 0b100, 0b001, 0b010]]
}

/// The certified `4x4` extension of the `Q_3` magic isometry at `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FillUp<T: Real> {
    pub x: SU2Element<T>,
    pub params: Su2Params<T>,
    pub magic: MagicMatrix<T>,
    pub report: MagicReport<T>,
    /// Column `j` of the Pauli model is matched with column `columns[j]` of
    /// [`labeling_q3`].
    pub columns: [usize; 4],
    /// Vertex matched with each entry of the top two rows.
    pub labels: [[usize; 4]; 2],
    /// `W U_ij W* = ρ_t(p_label(i,j))`.
    pub witness: Intertwiner<T>,
}

impl<T: Real> FillUp<T> {
    /// The fixed labeling certified without reordering columns.
    pub fn uses_fixed_labeling(&self) -> bool {
        self.columns == [0, 1, 2, 3]
    }
}

/// Builds `σ_x` for `x = su2_from_simplex(t)` and certifies its top two rows
/// against `ρ_t`, first under [`labeling_q3`] and then under each column
/// reordering in lexicographic order.
pub fn fill_up<T: Real>(t: &SimplexPoint<T>) -> Result<FillUp<T>> {
    let (x, params) = su2_from_simplex(t)?;
    let magic = sigma_x(&x)?;
    let report = verify_magic(&magic, MagicKind::Unitary, magic_tol());
    let rho = rho_t(t)?;
    let label = labeling_q3();
    let generators: Vec<&CMatrix<T>> = magic.entries[..2].iter().flatten().collect();

    for columns in column_orders() {
        let labels: [[usize; 4]; 2] = std::array::from_fn(|i| std::array::from_fn(|j| label[i][columns[j]]));
        let targets: Vec<&CMatrix<T>> = labels.iter().flatten().map(|&v| rho.image(v)).collect();
        if let Some(witness) = find_unitary_intertwiner(&generators, &targets, T::lit(INTERTWINER_TOL))? {
            return Ok(FillUp { x, params, magic, report, columns, labels, witness });
        }
    }
    Err(Error::Consistency(format!("no column matching certifies the fill-up at t = {:?}", t.entries())))
}

/// All 24 orders of four columns, identity first.
fn column_orders() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if (0..4).all(|k| p.contains(&k)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i(v: f64) -> C<f64> {
        cplx(0.0, v)
    }

    fn coords(v: [C<f64>; 4]) -> PauliCoords<f64> {
        PauliCoords(v)
    }

    #[test]
    fn pauli_coordinate_examples() {
        let id = pauli_coords(&CMatrix::<f64>::identity(2)).unwrap();
        assert!(id.max_diff(&coords([real(1.0), real(0.0), real(0.0), real(0.0)])) == 0.0);
        let c3 = pauli_coords(&pauli::<f64>(2)).unwrap();
        assert!(c3.max_diff(&coords([real(0.0), real(0.0), real(1.0), real(0.0)])) == 0.0);
        let a = CMatrix::from_fn(2, 2, |r, c| cplx(0.3 + r as f64, -0.7 * c as f64 + 0.1));
        assert!(pauli_matrix(&pauli_coords(&a).unwrap()).max_abs_diff(&a) <= 1e-15);
    }

    #[test]
    fn span_projection_examples() {
        let p = span_projection(&CMatrix::<f64>::identity(2)).unwrap();
        assert_eq!(p, CMatrix::unit(4, 0, 0));
        let x = CMatrix::from_fn(2, 2, |r, c| cplx(r as f64 - 0.2, c as f64 + 0.5));
        assert!(span_projection(&x).unwrap().max_abs_diff(&span_projection(&x.scale(real(2.0))).unwrap()) < 1e-15);
        assert!(span_projection(&CMatrix::<f64>::zeros(2, 2)).is_err());
    }

    #[test]
    fn su2_examples() {
        let (x, p) = su2_from_simplex(&SimplexPoint::new(vec![0.0, 0.0, 1.0]).unwrap()).unwrap();
        assert_eq!((p.s, p.t, p.u), (0.0, 0.0, 1.0));
        let want = CMatrix::from_fn(2, 2, |r, c| if r == c { real(0.0) } else { i(1.0) });
        assert!(x.matrix().max_abs_diff(&want) < 1e-15);
        let (_, p) = su2_from_simplex(&SimplexPoint::new(vec![1.0, 0.0, 0.0]).unwrap()).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((p.s - h).abs() < 1e-15 && p.t == 0.0 && (p.u - h).abs() < 1e-15);
        assert!(su2_from_simplex(&SimplexPoint::new(vec![0.5, 0.5]).unwrap()).is_err());
    }

    #[test]
    fn proof_identities_recover_square_roots() {
        let t = SimplexPoint::new(vec![0.2, 0.3, 0.5]).unwrap();
        let (_, p) = su2_from_simplex(&t).unwrap();
        assert!((2.0 * p.u * p.u - 1.0 - 0.5f64.sqrt()).abs() < 1e-12);
        assert!((2.0 * p.t * p.u - 0.3f64.sqrt()).abs() < 1e-12);
        assert!((2.0 * p.s * p.u - 0.2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn coordinate_table_matches_closed_form() {
        let (a, b, c) = (0.2f64.sqrt(), 0.3f64.sqrt(), 0.5f64.sqrt());
        let (x, _) = su2_from_simplex(&SimplexPoint::new(vec![0.2, 0.3, 0.5]).unwrap()).unwrap();
        let tab = conjugated_coordinate_table(&x);
        let z = real(0.0);
        assert!(tab[1][3].max_diff(&coords([real(a), i(b), i(-c), z])) < 1e-12);
        assert!(tab[1][2].max_diff(&coords([real(b), i(-a), z, i(c)])) < 1e-12);
        assert!(tab[1][1].max_diff(&coords([real(c), z, i(a), i(-b)])) < 1e-12);
        assert!(tab[1][0].max_diff(&coords([z, real(c), real(b), real(a)])) < 1e-12);
        for (j, row) in tab[0].iter().enumerate() {
            let e = pauli_coords(&pauli::<f64>(j)).unwrap();
            assert!(row.max_diff(&e) < 1e-14);
        }
    }

    #[test]
    fn sigma_of_identity_is_magic() {
        let p = sigma_x(&SU2Element::<f64>::identity()).unwrap();
        assert!(verify_magic(&p, MagicKind::Unitary, 1e-14).passed);
        // c_i c_j is a multiple of a single Pauli matrix, so every entry is diagonal
        for row in p.rows() {
            for e in row {
                assert_eq!(e.numerical_rank(1e-8), 1);
                assert!((0..4).all(|r| (0..4).all(|c| r == c || e[(r, c)].norm() == 0.0)));
            }
        }
    }

    #[test]
    fn isometry_and_broken_grids() {
        let (x, _) = su2_from_simplex(&SimplexPoint::new(vec![0.1, 0.6, 0.3]).unwrap()).unwrap();
        let p = sigma_x(&x).unwrap();
        let top = p.top_rows(2).unwrap();
        assert!(verify_magic(&top, MagicKind::Isometry, 1e-12).passed);
        assert!(!verify_magic(&top, MagicKind::Unitary, 1e-12).passed);
        let mut rows = p.rows().to_vec();
        rows[1][2] = CMatrix::zeros(4, 4);
        let r = verify_magic(&MagicMatrix::new(rows).unwrap(), MagicKind::Unitary, 1e-12);
        assert!(!r.passed && r.row_sums > 0.5);
    }

    #[test]
    fn conjugated_variant_is_equivalent() {
        let (x, _) = su2_from_simplex(&SimplexPoint::new(vec![0.25, 0.25, 0.5]).unwrap()).unwrap();
        let a = sigma_x(&x).unwrap();
        let b = sigma_x_conjugated(&x).unwrap();
        let ga: Vec<_> = a.rows().iter().flatten().collect();
        let gb: Vec<_> = b.rows().iter().flatten().collect();
        assert!(find_unitary_intertwiner(&ga, &gb, 1e-8).unwrap().is_some());
    }

    #[test]
    fn labeling_structure() {
        let l = labeling_q3();
        assert_eq!(l[0][0], 0b000);
        assert_eq!(l[1][3], 0b010);
        for (a, b) in l[0].iter().zip(&l[1]) {
            assert_eq!((a ^ b).count_ones(), 3);
            assert_eq!(a.count_ones() % 2, 0);
        }
    }

    #[test]
    fn fill_up_interior_and_vertices() {
        for v in [vec![0.2, 0.3, 0.5], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]] {
            let f = fill_up(&SimplexPoint::new(v.clone()).unwrap()).unwrap();
            assert!(f.report.passed, "{v:?}");
            assert!(f.witness.residual <= 1e-8, "{v:?}");
        }
    }
}
