//! Numerical search for unitary intertwiners.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Representation;
use crate::error::{invalid, Result};
use crate::linalg::CMatrix;
use crate::scalar::{cplx, Real, C};

const ATTEMPTS: usize = 8;
const SEED: u64 = 0x5eed_1234;

#[derive(Debug, Clone, PartialEq)]
pub struct Intertwiner<T: Real> {
    /// `W` with `W ρ_1(x) W* = ρ_2(x)` for every vertex.
    pub unitary: CMatrix<T>,
    pub residual: T,
    /// Dimension of the solution space of `W A_x = B_x W`.
    pub commutant_dim: usize,
}

/// Unitary `W` with `W ρ_1(x) = ρ_2(x) W` for every vertex, or `None` when the
/// residual of the best candidate stays above `tol`.
pub fn find_intertwiner<T: Real>(
    a: &Representation<T>,
    b: &Representation<T>,
    tol: T,
) -> Result<Option<Intertwiner<T>>> {
    if a.n() != b.n() {
        return Err(invalid("representations live on different cubes"));
    }
    if a.dim() != b.dim() {
        return Ok(None);
    }
    find_unitary_intertwiner(&a.generators(), &b.generators(), tol)
}

/// Same as [`find_intertwiner`] for two equally long families of square
/// matrices of equal size.
pub fn find_unitary_intertwiner<T: Real>(
    a: &[&CMatrix<T>],
    b: &[&CMatrix<T>],
    tol: T,
) -> Result<Option<Intertwiner<T>>> {
    if a.len() != b.len() {
        return Err(invalid("generator families differ in length"));
    }
    let Some(first) = a.first() else {
        return Err(invalid("no generators"));
    };
    let d = first.rows();
    if a.iter().chain(b).any(|m| m.rows() != d || m.cols() != d) {
        return Ok(None);
    }
    let dd = d * d;

    // Gram matrix of the linear map W -> (W A_x - B_x W)_x on row-major vec(W)
    let mut gram = CMatrix::<T>::zeros(dd, dd);
    for (ax, bx) in a.iter().zip(b) {
        let mut l = CMatrix::<T>::zeros(dd, dd);
        for r in 0..d {
            for c in 0..d {
                let row = r * d + c;
                for k in 0..d {
                    l[(row, r * d + k)] = l[(row, r * d + k)] + ax[(k, c)];
                    l[(row, k * d + c)] = l[(row, k * d + c)] - bx[(r, k)];
                }
            }
        }
        gram = &gram + &(&l.adjoint() * &l);
    }

    let (vals, vecs) = gram.hermitian_eigen();
    let top = vals.last().copied().unwrap_or_else(T::zero).max(T::zero());
    let cut = (top * T::lit(1e-11)).max(T::epsilon() * T::lit(64.0));
    let null: Vec<usize> = (0..dd).filter(|&i| vals[i] <= cut).collect();
    if null.is_empty() {
        return Ok(None);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut best: Option<Intertwiner<T>> = None;
    for attempt in 0..ATTEMPTS {
        let coeffs: Vec<C<T>> = if attempt == 0 && null.len() == 1 {
            vec![C::new(T::one(), T::zero())]
        } else {
            null.iter()
                .map(|_| cplx(T::lit(rng.gen_range(-1.0..1.0)), T::lit(rng.gen_range(-1.0..1.0))))
                .collect()
        };
        let w = CMatrix::from_fn(d, d, |r, c| {
            null.iter().zip(&coeffs).fold(C::new(T::zero(), T::zero()), |acc, (&i, z)| acc + *z * vecs[(r * d + c, i)])
        });
        let Some(u) = w.polar_unitary(T::lit(1e-8)) else {
            continue;
        };
        let residual = conjugation_residual(&u, a, b);
        if best.as_ref().is_none_or(|bst| residual < bst.residual) {
            best = Some(Intertwiner { unitary: u, residual, commutant_dim: null.len() });
        }
        if residual <= tol {
            break;
        }
    }
    Ok(best.filter(|w| w.residual <= tol))
}

/// `max_x |W A_x W* - B_x|`.
pub fn conjugation_residual<T: Real>(w: &CMatrix<T>, a: &[&CMatrix<T>], b: &[&CMatrix<T>]) -> T {
    let wa = w.adjoint();
    a.iter()
        .zip(b)
        .map(|(ax, bx)| (&(w * *ax) * &wa).max_abs_diff(bx))
        .fold(T::zero(), T::max)
}
