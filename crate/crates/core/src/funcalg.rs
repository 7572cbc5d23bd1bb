//! The fiberwise picture: `ρ_t` sampled over the simplex, its block form, and
//! the algebra its images generate.

use crate::error::{invalid, Result};
use crate::hypercube::{u_vertices, SubgraphMask};
use crate::linalg::CMatrix;
use crate::paths::PathWord;
use crate::rep::{evaluate_word, generated_span, rho_t, Representation, SpanSaturation};
use crate::scalar::{real, Real};
use crate::weighting::SimplexPoint;

/// Components of `Q_n(t)` restricted to `U_n`; `Q_n(t)` keeps the direction
/// classes with `t_k > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockStructure<T: Real> {
    pub t: SimplexPoint<T>,
    /// `U`-vertices of each component, sorted, ordered by smallest label.
    pub blocks: Vec<Vec<usize>>,
}

impl<T: Real> BlockStructure<T> {
    pub fn sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// `Σ (block size)^2`.
    pub fn algebra_dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.len() * b.len()).sum()
    }

    /// Block number of every position of `U_n`.
    pub fn labels(&self) -> Vec<usize> {
        let u = u_vertices(self.t.n());
        let mut out = vec![0; u.len()];
        for (b, block) in self.blocks.iter().enumerate() {
            for x in block {
                out[u.binary_search(x).expect("block vertices lie in U_n")] = b;
            }
        }
        out
    }
}

pub fn block_structure<T: Real>(t: &SimplexPoint<T>) -> Result<BlockStructure<T>> {
    let keep: Vec<bool> = t.entries().iter().map(|x| *x > T::zero()).collect();
    let mask = SubgraphMask::from_directions(t.n(), &keep)?;
    let blocks = mask
        .components()
        .into_iter()
        .map(|c| c.into_iter().filter(|x| x.count_ones() % 2 == 0).collect::<Vec<_>>())
        .filter(|b| !b.is_empty())
        .collect();
    Ok(BlockStructure { t: t.clone(), blocks })
}

/// Every entry linking two different blocks has modulus at most `tol`.
pub fn is_t_block_diagonal<T: Real>(a: &CMatrix<T>, t: &SimplexPoint<T>, tol: T) -> Result<bool> {
    Ok(cross_block_max(a, &block_structure(t)?)? <= tol)
}

/// Largest cross-block entry.
pub fn cross_block_max<T: Real>(a: &CMatrix<T>, blocks: &BlockStructure<T>) -> Result<T> {
    let labels = blocks.labels();
    let d = labels.len();
    if a.rows() != d || a.cols() != d {
        return Err(invalid(format!("matrix is {}x{}, U_n has {d} vertices", a.rows(), a.cols())));
    }
    let mut worst = T::zero();
    for r in 0..d {
        for c in 0..d {
            if labels[r] != labels[c] {
                worst = worst.max(a[(r, c)].norm());
            }
        }
    }
    Ok(worst)
}

/// The fiber at `t`: one matrix per vertex, indexed by `U_n`.
pub fn evaluate_phi<T: Real>(t: &SimplexPoint<T>) -> Result<Vec<CMatrix<T>>> {
    Ok(rho_t(t)?.images().to_vec())
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraDimension {
    pub dimension: usize,
    /// `Σ (block size)^2`.
    pub expected: usize,
    pub span: SpanSaturation,
}

impl AlgebraDimension {
    pub fn matches(&self) -> bool {
        self.dimension == self.expected
    }
}

/// Dimension of the span of all words in the fiber at `t`, grown up to word
/// length `2n`.
pub fn generated_algebra_dimension<T: Real>(t: &SimplexPoint<T>) -> Result<AlgebraDimension> {
    let rho = rho_t(t)?;
    let span = generated_span(&rho.generators(), Some(2 * t.n()));
    Ok(AlgebraDimension { dimension: span.dimension, expected: block_structure(t)?.algebra_dimension(), span })
}

/// Lattice points `m / resolution` of the simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexGrid<T: Real> {
    pub n: usize,
    pub resolution: usize,
    pub points: Vec<SimplexPoint<T>>,
}

/// All compositions of `resolution` into `n` parts, first coordinate
/// descending; `e_0` comes first and `e_{n-1}` last.
pub fn simplex_grid<T: Real>(n: usize, resolution: usize) -> Result<SimplexGrid<T>> {
    if n == 0 {
        return Err(invalid("simplex dimension must be positive"));
    }
    if resolution == 0 {
        return Err(invalid("grid resolution must be at least 1"));
    }
    let mut points = Vec::new();
    let mut parts = vec![0usize; n];
    fn fill<T: Real>(k: usize, left: usize, r: usize, parts: &mut [usize], out: &mut Vec<SimplexPoint<T>>) -> Result<()> {
        if k + 1 == parts.len() {
            parts[k] = left;
            let entries = parts.iter().map(|&m| T::lit(m as f64 / r as f64)).collect();
            out.push(SimplexPoint::new(entries)?);
            return Ok(());
        }
        for m in (0..=left).rev() {
            parts[k] = m;
            fill(k + 1, left - m, r, parts, out)?;
        }
        Ok(())
    }
    fill(0, resolution, resolution, &mut parts, &mut points)?;
    Ok(SimplexGrid { n, resolution, points })
}

/// Largest `|ρ(p_w) - sign ρ(p_canon(w))|` over the given words.
pub fn sign_calculus_violation<T: Real>(rho: &Representation<T>, words: &[PathWord]) -> Result<T> {
    let mut worst = T::zero();
    for w in words {
        let canon = w.canonicalize();
        let lhs = evaluate_word(rho, w)?;
        let rhs = evaluate_word(rho, &canon.word)?.scale(real(T::lit(f64::from(canon.sign))));
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    Ok(worst)
}

/// Every word of length at most `max_len` starting at `base`.
pub fn all_words(n: usize, base: usize, max_len: usize) -> Result<Vec<PathWord>> {
    let mut out = vec![PathWord::trivial(n, base)?];
    let mut layer = vec![Vec::<usize>::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * n);
        for w in &layer {
            for k in 0..n {
                let mut v = w.clone();
                v.push(k);
                out.push(PathWord::new(n, base, v.clone())?);
                next.push(v);
            }
        }
        layer = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[f64]) -> SimplexPoint<f64> {
        SimplexPoint::new(v.to_vec()).unwrap()
    }

    #[test]
    fn block_structure_examples() {
        let b = block_structure(&t(&[1.0, 0.0])).unwrap();
        assert_eq!(b.blocks, vec![vec![0], vec![3]]);
        assert_eq!(block_structure(&t(&[0.3, 0.3, 0.4])).unwrap().sizes(), vec![4]);
        let b = block_structure(&t(&[0.0, 0.0, 1.0])).unwrap();
        assert_eq!(b.sizes(), vec![1, 1, 1, 1]);
        let b = block_structure(&t(&[0.5, 0.0, 0.5, 0.0])).unwrap();
        assert_eq!(b.sizes(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn count_and_size_law() {
        for n in 1..=4 {
            for p in simplex_grid::<f64>(n, 3).unwrap().points {
                let alpha = p.zero_count();
                let b = block_structure(&p).unwrap();
                assert_eq!(b.blocks.len(), 1 << alpha);
                assert!(b.sizes().iter().all(|&s| s == 1 << (n - 1 - alpha)));
            }
        }
    }

    #[test]
    fn block_diagonal_checks() {
        let tb = t(&[0.0, 0.5, 0.5]);
        assert!(is_t_block_diagonal(&CMatrix::identity(4), &tb, 0.0).unwrap());
        let ones = CMatrix::from_fn(4, 4, |_, _| real(1.0));
        assert!(!is_t_block_diagonal(&ones, &tb, 1e-10).unwrap());
        assert!(is_t_block_diagonal(&ones, &t(&[0.2, 0.3, 0.5]), 1e-10).unwrap());
        for img in evaluate_phi(&tb).unwrap() {
            assert!(is_t_block_diagonal(&img, &tb, 1e-12).unwrap());
        }
        assert!(is_t_block_diagonal(&CMatrix::identity(3), &tb, 0.0).is_err());
    }

    #[test]
    fn endpoints_are_diagonal() {
        for p in [t(&[1.0, 0.0]), t(&[0.0, 1.0])] {
            for img in evaluate_phi(&p).unwrap() {
                assert_eq!(img[(0, 1)].norm() + img[(1, 0)].norm(), 0.0);
            }
        }
    }

    #[test]
    fn algebra_dimensions() {
        assert_eq!(generated_algebra_dimension(&t(&[0.4, 0.6])).unwrap().dimension, 4);
        assert_eq!(generated_algebra_dimension(&t(&[1.0, 0.0])).unwrap().dimension, 2);
        let d = generated_algebra_dimension(&t(&[0.2, 0.3, 0.5])).unwrap();
        assert_eq!(d.dimension, 16);
        assert!(d.matches() && d.span.saturated);
    }

    #[test]
    fn grid_examples() {
        let g = simplex_grid::<f64>(2, 2).unwrap();
        let pts: Vec<&[f64]> = g.points.iter().map(|p| p.entries()).collect();
        assert_eq!(pts, vec![&[1.0, 0.0][..], &[0.5, 0.5], &[0.0, 1.0]]);
        // stars and bars: C(10 + 2, 2)
        assert_eq!(simplex_grid::<f64>(3, 10).unwrap().points.len(), 66);
        let g = simplex_grid::<f64>(4, 5).unwrap();
        assert_eq!(g.points.len(), 56);
        for k in 0..4 {
            assert!(g.points.contains(&SimplexPoint::vertex(4, k).unwrap()));
        }
        assert!(simplex_grid::<f64>(2, 0).is_err());
    }

    #[test]
    fn exhaustive_sign_calculus_in_q3() {
        let rho = rho_t(&t(&[0.2, 0.3, 0.5])).unwrap();
        let words = all_words(3, 0, 5).unwrap();
        assert_eq!(words.len(), 1 + 3 + 9 + 27 + 81 + 243);
        assert!(sign_calculus_violation(&rho, &words).unwrap() <= 1e-12);
    }
}
