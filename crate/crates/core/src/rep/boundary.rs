//! Splitting `ρ_t` on a facet of the simplex into two copies of `ρ_s`.

use num_traits::One;

use super::{intertwine::conjugation_residual, rho_t, Representation};
use crate::error::{invalid, Result};
use crate::hypercube::{digit, par, u_vertices};
use crate::linalg::CMatrix;
use crate::scalar::{Real, C};
use crate::weighting::{halfcube_to_sub, sub_to_halfcube, SimplexPoint};

/// `ρ_t ≅ π^{(+l)} ⊕ π^{(-l)}` for `t` with `t_l = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryDecomposition<T: Real> {
    pub l: usize,
    /// `t` with coordinate `l` removed.
    pub s: SimplexPoint<T>,
    /// The direct sum, `+` summand first; its index lists the `U_n` vertex
    /// each basis vector is sent to.
    pub sum: Representation<T>,
    /// Permutation matrix taking the sum's basis to the standard basis of `U_n`.
    pub permutation: CMatrix<T>,
    /// Diagonal signs `(-1)^{[x]_l par_l(x)}` fixing the remaining gauge.
    pub signs: CMatrix<T>,
    /// `signs * permutation`; conjugates `sum` onto `ρ_t`.
    pub unitary: CMatrix<T>,
    pub residual: T,
    /// Residual with the bare permutation, nonzero once `l > 0`.
    pub permutation_residual: T,
}

pub fn boundary_decompose<T: Real>(t: &SimplexPoint<T>, l: usize) -> Result<BoundaryDecomposition<T>> {
    let n = t.n();
    if n < 2 {
        return Err(invalid("boundary decomposition needs n >= 2"));
    }
    if l >= n {
        return Err(invalid(format!("direction {l} is not below n = {n}")));
    }
    let s = t.without(l)?;
    let rho = rho_t(t)?;
    let inner = rho_t(&s)?;
    let m = inner.dim();

    let images: Vec<CMatrix<T>> = (0..1usize << n)
        .map(|x| {
            let zero = CMatrix::zeros(m, m);
            let y = halfcube_to_sub(x, l, digit(x, l) == 1);
            if digit(x, l) == 1 {
                CMatrix::direct_sum(&[inner.image(y), &zero])
            } else {
                CMatrix::direct_sum(&[&zero, inner.image(y)])
            }
        })
        .collect();
    let targets: Vec<usize> = inner
        .index()
        .iter()
        .map(|&y| sub_to_halfcube(y, l, true))
        .chain(inner.index().iter().map(|&y| sub_to_halfcube(y, l, false)))
        .collect();
    let sum = Representation::new(n, targets.clone(), images)?;

    let u_n = u_vertices(n);
    let mut permutation = CMatrix::zeros(2 * m, 2 * m);
    for (col, x) in targets.iter().enumerate() {
        let row = u_n.binary_search(x).map_err(|_| invalid("summand basis left U_n"))?;
        permutation[(row, col)] = C::one();
    }
    let diag: Vec<C<T>> = u_n
        .iter()
        .map(|&x| if digit(x, l) * par(x, l) % 2 == 1 { -C::<T>::one() } else { C::one() })
        .collect();
    let signs = CMatrix::diag(&diag);
    let unitary = &signs * &permutation;

    let (a, b) = (sum.generators(), rho.generators());
    let residual = conjugation_residual(&unitary, &a, &b);
    let permutation_residual = conjugation_residual(&permutation, &a, &b);
    Ok(BoundaryDecomposition { l, s, sum, permutation, signs, unitary, residual, permutation_residual })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn facets_of_the_cube_simplex() {
        let cases: [(&[f64], usize); 4] = [
            (&[0.0, 0.4, 0.6], 0),
            (&[0.4, 0.0, 0.6], 1),
            (&[0.4, 0.6, 0.0], 2),
            (&[0.0, 1.0], 0),
        ];
        for (v, l) in cases {
            let t = SimplexPoint::new(v.to_vec()).unwrap();
            let b = boundary_decompose(&t, l).unwrap();
            assert!(b.residual <= 1e-12, "l = {l}: {}", b.residual);
            assert!(b.unitary.unitarity_defect() <= 1e-14);
        }
    }

    #[test]
    fn q4_facets() {
        let t = SimplexPoint::new(vec![0.1, 0.2, 0.0, 0.7]).unwrap();
        let b = boundary_decompose(&t, 2).unwrap();
        assert!(b.residual <= 1e-12);
        assert_eq!(b.sum.dim(), 8);
        // the sign correction is needed away from direction 0
        assert!(b.permutation_residual > 0.1);
        let b0 = boundary_decompose(&SimplexPoint::new(vec![0.0, 0.2, 0.1, 0.7]).unwrap(), 0).unwrap();
        assert!(b0.permutation_residual <= 1e-12);
    }

    #[test]
    fn needs_a_zero_coordinate() {
        let t = SimplexPoint::new(vec![0.5, 0.5]).unwrap();
        assert!(boundary_decompose(&t, 0).is_err());
        assert!(boundary_decompose(&SimplexPoint::new(vec![1.0]).unwrap(), 0).is_err());
    }
}
