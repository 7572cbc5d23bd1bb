//! Recovering `t` and the vertex phases from an admissible weighting.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use super::{decompose_rep, find_intertwiner, induced_unchecked, rho_t, Representation};
use crate::error::{Error, Result};
use crate::hypercube::{self, digit, flip_unchecked, par, side, Edge, Side};
use crate::scalar::{phase, Real, C};
use crate::weighting::{
    canonical_weighting, check_admissible, halfcube_to_sub, restrict_to_halfcube, EdgeWeighting, PhaseGauge,
    SimplexPoint,
};

fn sign<T: Real>(odd: usize) -> C<T> {
    if odd.is_multiple_of(2) {
        C::one()
    } else {
        -C::<T>::one()
    }
}

/// `t_k = |c(0, 0#k)|^2` for a nowhere-vanishing admissible `c`. Also checks
/// that every direction-`k` edge has modulus `sqrt(t_k)`.
pub fn recover_t<T: Real>(c: &EdgeWeighting<T>, tol: T) -> Result<SimplexPoint<T>> {
    if !c.is_nowhere_vanishing() {
        return Err(Error::Precondition("weighting vanishes on some edge".into()));
    }
    let n = c.n();
    let t: Vec<T> = (0..n).map(|k| c.at(0, k).norm_sqr()).collect();
    for e in hypercube::edges(n)? {
        let dev = (c.get(&e).norm() - t[e.k].sqrt()).abs();
        if dev > tol {
            return Err(Error::Consistency(format!(
                "edge {e:?} has modulus off by {dev} from direction {}",
                e.k
            )));
        }
    }
    SimplexPoint::new(t).map_err(|e| Error::Consistency(format!("recovered t is not in the simplex: {e}")))
}

/// Output of [`gauge_fix`]: `c(ij) = λ_i λ_j c_t(ij)` on every edge.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeFix<T: Real> {
    pub t: SimplexPoint<T>,
    pub gauge: PhaseGauge<T>,
    pub residual: T,
}

/// Builds the phases direction by direction. After stage `K` the re-gauged
/// weighting agrees with `c_t` on every edge of direction at most `K`.
pub fn gauge_fix<T: Real>(c: &EdgeWeighting<T>, tol: T) -> Result<GaugeFix<T>> {
    let n = c.n();
    let t = recover_t(c, tol)?;
    let size = 1usize << n;
    let all_edges = hypercube::edges(n)?;
    let mut cur: BTreeMap<Edge, C<T>> = all_edges.iter().map(|e| (*e, c.get(e))).collect();
    let mut total = vec![C::<T>::one(); size];

    for k in 0..n {
        let mut lam = vec![C::<T>::one(); size];
        for x in 0..size {
            if k > 0 && digit(x, k) == 1 {
                continue;
            }
            match side(x) {
                Side::U => lam[x] = sign::<T>(par(x, k)) * phase(cur[&Edge::at(x, k)]),
                Side::V if k > 0 => {
                    let i = flip_unchecked(x, k);
                    lam[x] = sign::<T>(par(i, k)) * phase(cur[&Edge::at(i, k)]);
                }
                Side::V => {}
            }
        }
        for (e, z) in cur.iter_mut() {
            *z = (lam[e.u] * lam[e.v]).conj() * *z;
        }
        for (a, l) in total.iter_mut().zip(&lam) {
            *a = *a * *l;
        }
    }

    let ct = canonical_weighting(&t)?;
    let residual = all_edges
        .iter()
        .map(|e| (c.get(e) - total[e.u] * total[e.v] * ct.get(e)).norm())
        .fold(T::zero(), T::max);
    if residual > tol {
        return Err(Error::Consistency(format!("gauge residual {residual} exceeds {tol}")));
    }
    let gauge = PhaseGauge::from_unchecked(total.into_iter().enumerate().collect());
    Ok(GaugeFix { t, gauge, residual })
}

/// One support component of `c` identified with a block of some `ρ_t`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedBlock<T: Real> {
    /// All vertices of the component.
    pub component: Vec<usize>,
    pub t: SimplexPoint<T>,
    /// Phases on the component's vertices with `c = λλ c_t` there.
    pub gauge: PhaseGauge<T>,
    pub gauge_residual: T,
    /// Residual of a unitary carrying the block of `ρ_c` onto the matching
    /// block of `ρ_t`.
    pub intertwiner_residual: T,
}

/// Matches each irreducible block of `ρ_c` with a block of some `ρ_t`.
///
/// A component covering the whole cube goes through [`gauge_fix`]. Otherwise
/// it sits inside the half-cube `[x]_l = b` for the smallest possible `l`; the
/// weighting is pulled back to `Q_{n-1}`, classified there, and the result
/// lifted with a zero inserted at `l`.
pub fn classify<T: Real>(c: &EdgeWeighting<T>, tol: T) -> Result<Vec<ClassifiedBlock<T>>> {
    let report = check_admissible(c, tol);
    if !report.passed {
        return Err(report.into_error());
    }
    let rho = induced_unchecked(c);
    let blocks = decompose_rep(&rho, &c.support().mask);
    let mut out = Vec::with_capacity(blocks.len());
    for block in blocks {
        let members: BTreeSet<usize> = block.component.iter().copied().collect();
        let sub = c.restricted_to(&members);
        let fix = classify_connected(&sub, tol)?;

        let target = rho_t(&fix.t)?;
        let positions: Vec<usize> =
            (0..target.dim()).filter(|&p| members.contains(&target.index()[p])).collect();
        let target_block = restrict_rep(&target, &positions, &members);
        let cert = find_intertwiner(&block.rep, &target_block, T::lit(super::INTERTWINER_TOL))?.ok_or_else(|| {
            Error::Consistency(format!("no unitary matches the block at {:?} with ρ_t", block.component))
        })?;

        let gauge = PhaseGauge::from_unchecked(
            block.component.iter().map(|&x| (x, fix.gauge.get(x).unwrap_or_else(C::one))).collect(),
        );
        out.push(ClassifiedBlock {
            component: block.component,
            t: fix.t,
            gauge,
            gauge_residual: fix.residual,
            intertwiner_residual: cert.residual,
        });
    }
    Ok(out)
}

fn restrict_rep<T: Real>(rho: &Representation<T>, positions: &[usize], members: &BTreeSet<usize>) -> Representation<T> {
    let mut r = rho.compress(positions);
    let d = positions.len();
    for x in 0..r.images.len() {
        if !members.contains(&x) {
            r.images[x] = crate::linalg::CMatrix::zeros(d, d);
        }
    }
    r
}

/// `c` has connected support.
fn classify_connected<T: Real>(c: &EdgeWeighting<T>, tol: T) -> Result<GaugeFix<T>> {
    let n = c.n();
    let live: Vec<Edge> = c.support().mask.edges().copied().collect();
    if live.len() == n << (n - 1) {
        return gauge_fix(c, tol);
    }
    let first = live.first().ok_or_else(|| Error::Precondition("component has no edges".into()))?;
    let (l, positive) = (0..n)
        .find_map(|l| {
            let b = digit(first.u, l);
            live.iter().all(|e| e.k != l && digit(e.u, l) == b).then_some((l, b == 1))
        })
        .ok_or_else(|| Error::Consistency("connected support is neither full nor inside a half-cube".into()))?;

    let inner = classify_connected(&restrict_to_halfcube(c, l, positive)?, tol)?;
    let t = inner.t.with_zero_inserted(l)?;
    let bit = usize::from(positive);
    let phases: BTreeMap<usize, C<T>> = (0..1usize << n)
        .filter(|&x| digit(x, l) == bit)
        .map(|x| {
            let lam = inner.gauge.get(halfcube_to_sub(x, l, positive)).unwrap_or_else(C::one);
            (x, lam * sign::<T>(bit * par(x, l)))
        })
        .collect();

    let ct = canonical_weighting(&t)?;
    let residual = live
        .iter()
        .map(|e| (c.get(e) - phases[&e.u] * phases[&e.v] * ct.get(e)).norm())
        .fold(T::zero(), T::max);
    if residual > tol {
        return Err(Error::Consistency(format!("lifted gauge residual {residual} exceeds {tol}")));
    }
    Ok(GaugeFix { t, gauge: PhaseGauge::from_unchecked(phases), residual })
}
