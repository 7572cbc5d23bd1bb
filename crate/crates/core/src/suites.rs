//! The property suites behind `qcube selftest` and the acceptance tests.
//!
//! Every suite is deterministic for a given [`RunConfig::seed`] and returns a
//! single [`Check`]. `cfg.max_n` bounds the cube dimension; the suites are
//! meant for `max_n <= 4`.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::RunConfig;
use crate::error::Result;
use crate::funcalg::{block_structure, cross_block_max, generated_algebra_dimension, sign_calculus_violation, simplex_grid};
use crate::linalg::CMatrix;
use crate::magic::{conjugated_coordinate_table, fill_up, pauli_coords, pauli, PauliCoords};
use crate::paths::{loop_commutator_word_pair, PathWord};
use crate::rep::{boundary_decompose, decompose, evaluate_word, gauge_fix, rho_t};
use crate::report::{Check, Report};
use crate::scalar::{cplx, real};
use crate::weighting::{apply_gauge, canonical_weighting, PhaseGauge, SimplexPoint};
use crate::C;

pub const RANDOM_POINTS: usize = 200;
pub const RANDOM_LOOPS: usize = 500;
pub const RANDOM_WORDS: usize = 500;
pub const BOUNDARY_SAMPLES: usize = 50;
pub const RANK_GRID_RESOLUTION: usize = 5;
pub const PEDERSEN_TOL: f64 = 1e-14;
pub const RECOVER_TOL: f64 = 1e-12;
pub const MAGIC_TOL: f64 = 1e-12;
pub const INTERTWINER_TOL: f64 = 1e-8;
pub const RELATIONS_TIME_LIMIT: Duration = Duration::from_secs(10);
pub const FILLUP_TIME_LIMIT: Duration = Duration::from_secs(30);

pub type Suite = fn(&RunConfig) -> Check;

/// Criterion number, short name and runner, in order.
pub const SUITES: [(usize, &str, Suite); 10] = [
    (1, "relations", relations),
    (2, "pedersen", pedersen),
    (3, "rank-one", rank_one),
    (4, "loops", loops),
    (5, "signs", signs),
    (6, "gauge", gauge),
    (7, "boundary", boundary),
    (8, "surjectivity", surjectivity),
    (9, "block-form", block_form),
    (10, "fillup", fillup),
];

pub fn run_all(cfg: &RunConfig) -> Report {
    let mut report = Report::new(format!("qcube selftest --n {}", cfg.max_n));
    for (_, _, suite) in SUITES {
        report.push(suite(cfg));
    }
    report
}

fn rng(cfg: &RunConfig, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

/// Normalised exponentials: uniform on the simplex, strictly interior.
pub fn random_simplex(n: usize, rng: &mut impl Rng) -> SimplexPoint<f64> {
    loop {
        let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let sum: f64 = raw.iter().sum();
        if raw.iter().all(|&x| x > 0.0) {
            if let Ok(p) = SimplexPoint::new(raw.iter().map(|x| x / sum).collect()) {
                return p;
            }
        }
    }
}

pub fn random_gauge(n: usize, rng: &mut impl Rng) -> PhaseGauge<f64> {
    PhaseGauge::new(
        (0..1usize << n).map(|x| (x, C::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)))).collect(),
    )
    .expect("unit phases")
}

/// A loop at a random base: each picked direction is used twice.
pub fn random_loop(n: usize, base: usize, rng: &mut impl Rng) -> PathWord {
    let half = rng.gen_range(0..=3);
    let mut idx: Vec<usize> = (0..half).map(|_| rng.gen_range(0..n)).collect();
    idx.extend(idx.clone());
    idx.shuffle(rng);
    PathWord::new(n, base, idx).expect("indices below n")
}

pub fn random_word(n: usize, max_len: usize, rng: &mut impl Rng) -> PathWord {
    let len = rng.gen_range(0..=max_len);
    let base = rng.gen_range(0..1usize << n);
    PathWord::new(n, base, (0..len).map(|_| rng.gen_range(0..n)).collect()).expect("indices below n")
}

/// `count` random words from a generator seeded with `seed`.
pub fn random_words(n: usize, count: usize, max_len: usize, seed: u64) -> Vec<PathWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_word(n, max_len, &mut rng)).collect()
}

fn dims(cfg: &RunConfig) -> std::ops::RangeInclusive<usize> {
    1..=cfg.max_n
}

fn fail(name: &str, e: crate::Error) -> Check {
    Check::flag(name, false).with_detail(e.to_string())
}

fn timed(check: Check, start: Instant, limit: Duration) -> Check {
    let elapsed = start.elapsed();
    let mut c = check;
    c.passed &= elapsed < limit;
    let note = format!("{:.2}s of {}s", elapsed.as_secs_f64(), limit.as_secs());
    c.detail = Some(match c.detail.take() {
        Some(d) => format!("{d}; {note}"),
        None => note,
    });
    c
}

/// Self-adjoint idempotents, both partitions of unity, and orthogonality on
/// non-edges for random `t`.
pub fn relations(cfg: &RunConfig) -> Check {
    const NAME: &str = "relations (projections, GP1, GP2)";
    let start = Instant::now();
    let mut rng = rng(cfg, 1);
    let mut worst = 0.0f64;
    let mut count = 0;
    for n in dims(cfg) {
        for _ in 0..RANDOM_POINTS {
            match rho_t(&random_simplex(n, &mut rng)) {
                Ok(rho) => worst = worst.max(rho.check(cfg.tolerance).max_violation()),
                Err(e) => return fail(NAME, e),
            }
            count += 1;
        }
    }
    let c = Check::measure(NAME, worst, cfg.tolerance).with_detail(format!("{count} points"));
    timed(c, start, RELATIONS_TIME_LIMIT)
}

/// `n = 2`: diagonal at the endpoints, closed-form 2x2 projection inside.
pub fn pedersen(cfg: &RunConfig) -> Check {
    const NAME: &str = "pedersen (n = 2 closed form)";
    let run = || -> Result<f64> {
        let mut worst = 0.0f64;
        for k in 0..2 {
            for img in rho_t(&SimplexPoint::<f64>::vertex(2, k)?)?.images() {
                worst = worst.max(img[(0, 1)].norm()).max(img[(1, 0)].norm());
            }
        }
        let mut rng = rng(cfg, 2);
        let taus = (1..100).map(|m| m as f64 / 100.0).chain((0..100).map(|_| rng.gen::<f64>()));
        for t0 in taus {
            let t1 = 1.0 - t0;
            let rho = rho_t(&SimplexPoint::new(vec![t0, t1])?)?;
            let off = (t0 * t1).sqrt();
            let want = CMatrix::from_real_rows(&[&[t0, off], &[off, t1]]);
            worst = worst.max(rho.image(0b01).max_abs_diff(&want));
        }
        Ok(worst)
    };
    match run() {
        Ok(w) => Check::measure(NAME, w, PEDERSEN_TOL),
        Err(e) => fail(NAME, e),
    }
}

/// Rank-one images; irreducible blocks of size at most `2^{n-1}`.
pub fn rank_one(cfg: &RunConfig) -> Check {
    const NAME: &str = "rank-one and block size";
    let run = || -> Result<Check> {
        let mut rank_ok = true;
        let mut blocks_ok = true;
        let mut points = 0;
        for n in dims(cfg) {
            for t in simplex_grid::<f64>(n, RANK_GRID_RESOLUTION)?.points {
                let (rho, blocks) = decompose(&canonical_weighting(&t)?, cfg.tolerance)?;
                rank_ok &= rho.images().iter().all(|p| p.numerical_rank(crate::rep::RANK_REL_TOL) <= 1);
                blocks_ok &= blocks.iter().all(|b| b.rep.dim() <= 1 << (n - 1) && b.is_irreducible());
                points += 1;
            }
        }
        Ok(Check::flag(NAME, rank_ok && blocks_ok).with_detail(format!(
            "{points} grid points; ranks {}, blocks {}",
            if rank_ok { "ok" } else { "too large" },
            if blocks_ok { "ok" } else { "oversized or reducible" }
        )))
    };
    run().unwrap_or_else(|e| fail(NAME, e))
}

/// Two loops at the same base commute in every `ρ_t`, and their two
/// concatenations share a canonical form.
pub fn loops(cfg: &RunConfig) -> Check {
    const NAME: &str = "loop commutation";
    let run = || -> Result<Check> {
        let mut rng = rng(cfg, 4);
        let mut worst = 0.0f64;
        let mut symbolic = true;
        for n in dims(cfg) {
            for _ in 0..RANDOM_LOOPS {
                let rho = rho_t(&random_simplex(n, &mut rng))?;
                let base = rng.gen_range(0..1usize << n);
                let (mu, nu) = (random_loop(n, base, &mut rng), random_loop(n, base, &mut rng));
                let (ab, ba) = loop_commutator_word_pair(&mu, &nu)?;
                symbolic &= ab.canonicalize() == ba.canonicalize();
                worst = worst.max(evaluate_word(&rho, &ab)?.max_abs_diff(&evaluate_word(&rho, &ba)?));
            }
        }
        let c = Check::measure(NAME, worst, cfg.tolerance);
        Ok(c.and(Check::flag("canonical forms", symbolic)))
    };
    run().unwrap_or_else(|e| fail(NAME, e))
}

/// `ρ_t(p_w) = sign * ρ_t(p_canon)` for random words.
pub fn signs(cfg: &RunConfig) -> Check {
    const NAME: &str = "sign calculus";
    let run = || -> Result<f64> {
        let mut rng = rng(cfg, 5);
        let mut worst = 0.0f64;
        for n in dims(cfg) {
            let words: Vec<PathWord> = (0..RANDOM_WORDS).map(|_| random_word(n, 8, &mut rng)).collect();
            for chunk in words.chunks(25) {
                let rho = rho_t(&random_simplex(n, &mut rng))?;
                worst = worst.max(sign_calculus_violation(&rho, chunk)?);
            }
        }
        Ok(worst)
    };
    match run() {
        Ok(w) => Check::measure(NAME, w, cfg.tolerance),
        Err(e) => fail(NAME, e),
    }
}

/// Random vertex phases applied to `c_t` are undone by [`gauge_fix`].
pub fn gauge(cfg: &RunConfig) -> Check {
    const NAME: &str = "gauge-fixing round trip";
    let run = || -> Result<Check> {
        let mut rng = rng(cfg, 6);
        let (mut residual, mut recover) = (0.0f64, 0.0f64);
        for n in dims(cfg) {
            for _ in 0..RANDOM_POINTS {
                let t = random_simplex(n, &mut rng);
                let c = apply_gauge(&canonical_weighting(&t)?, &random_gauge(n, &mut rng))?;
                let fix = gauge_fix(&c, cfg.tolerance)?;
                residual = residual.max(fix.residual);
                recover = recover.max(fix.t.max_diff(&t));
            }
        }
        Ok(Check::measure(NAME, residual, cfg.tolerance).and(Check::measure("recover_t", recover, RECOVER_TOL)))
    };
    run().unwrap_or_else(|e| fail(NAME, e))
}

/// The signed permutation conjugates `ρ_s ⊕ ρ_s` onto `ρ_t` for `t_l = 0`.
pub fn boundary(cfg: &RunConfig) -> Check {
    const NAME: &str = "boundary decomposition";
    let run = || -> Result<Check> {
        let mut rng = rng(cfg, 7);
        let mut worst = 0.0f64;
        let mut cases = 0;
        for n in 2..=cfg.max_n {
            for l in 0..n {
                for _ in 0..BOUNDARY_SAMPLES {
                    let t = random_simplex(n - 1, &mut rng).with_zero_inserted(l)?;
                    worst = worst.max(boundary_decompose(&t, l)?.residual);
                    cases += 1;
                }
            }
        }
        Ok(Check::measure(NAME, worst, cfg.tolerance).with_detail(format!("{cases} cases")))
    };
    run().unwrap_or_else(|e| fail(NAME, e))
}

/// At grid points with exact zeros the fiber generates the whole
/// block-diagonal algebra.
pub fn surjectivity(cfg: &RunConfig) -> Check {
    const NAME: &str = "fiberwise surjectivity";
    let run = || -> Result<Check> {
        let mut bad = Vec::new();
        let mut points = 0;
        for n in dims(cfg) {
            for t in simplex_grid::<f64>(n, cfg.grid_resolution)?.points.into_iter().filter(|t| t.zero_count() > 0) {
                let d = generated_algebra_dimension(&t)?;
                if !d.matches() || !d.span.saturated {
                    bad.push(format!("{:?}: {} vs {}", t.entries(), d.dimension, d.expected));
                }
                points += 1;
            }
        }
        let detail = if bad.is_empty() { format!("{points} boundary points") } else { bad.join("; ") };
        Ok(Check::flag(NAME, bad.is_empty()).with_detail(detail))
    };
    run().unwrap_or_else(|e| fail(NAME, e))
}

/// Every image at every grid point is `t`-block diagonal.
pub fn block_form(cfg: &RunConfig) -> Check {
    const NAME: &str = "t-block diagonal form";
    let run = || -> Result<Check> {
        let mut worst = 0.0f64;
        let mut points = 0;
        for n in dims(cfg) {
            for t in simplex_grid::<f64>(n, cfg.grid_resolution)?.points {
                let blocks = block_structure(&t)?;
                for img in rho_t(&t)?.images() {
                    worst = worst.max(cross_block_max(img, &blocks)?);
                }
                points += 1;
            }
        }
        Ok(Check::measure(NAME, worst, cfg.tolerance).with_detail(format!("{points} grid points")))
    };
    run().unwrap_or_else(|e| fail(NAME, e))
}

/// Pauli coordinates of `x* c_i x c_j` for the first two rows, in closed form.
pub fn expected_coordinate_rows(t: &SimplexPoint<f64>) -> [[PauliCoords<f64>; 4]; 2] {
    let (a, b, c) = (t.get(0).sqrt(), t.get(1).sqrt(), t.get(2).sqrt());
    let (z, i) = (real(0.0), |v: f64| cplx(0.0, v));
    let first = std::array::from_fn(|j| pauli_coords(&pauli::<f64>(j)).expect("2x2"));
    let second = [
        PauliCoords([z, real(c), real(b), real(a)]),
        PauliCoords([real(c), z, i(a), i(-b)]),
        PauliCoords([real(b), i(-a), z, i(c)]),
        PauliCoords([real(a), i(b), i(-c), z]),
    ];
    [first, second]
}

/// Magic-unitary clauses of `σ_x`, the certified intertwiner with `ρ_t`, and
/// the Pauli-coordinate table, over a grid of the 2-simplex.
pub fn fillup(cfg: &RunConfig) -> Check {
    const NAME: &str = "fill-up";
    let start = Instant::now();
    let run = || -> Result<Check> {
        let mut points = simplex_grid::<f64>(3, cfg.grid_resolution)?.points;
        for k in 0..3 {
            let v = SimplexPoint::vertex(3, k)?;
            if !points.contains(&v) {
                points.push(v);
            }
        }
        let (mut magic, mut witness, mut table) = (0.0f64, 0.0f64, 0.0f64);
        let mut fixed = 0;
        let mut swapped = 0;
        for t in &points {
            let f = fill_up(t)?;
            magic = magic.max(f.report.max_violation());
            witness = witness.max(f.witness.residual);
            if f.uses_fixed_labeling() {
                fixed += 1;
            } else if f.columns == [0, 1, 3, 2] {
                swapped += 1;
            }
            let got = conjugated_coordinate_table(&f.x);
            for (row, want) in expected_coordinate_rows(t).iter().enumerate() {
                for j in 0..4 {
                    table = table.max(got[row][j].max_diff(&want[j]));
                }
            }
        }
        let c = Check::measure(NAME, magic, MAGIC_TOL)
            .and(Check::measure("intertwiner", witness, INTERTWINER_TOL))
            .and(Check::measure("coordinate table", table, MAGIC_TOL));
        Ok(c.with_detail(format!(
            "{} points; fixed labeling {fixed}, columns 3/4 swapped {swapped}, other {}",
            points.len(),
            points.len() - fixed - swapped
        )))
    };
    let c = run().unwrap_or_else(|e| fail(NAME, e));
    timed(c, start, FILLUP_TIME_LIMIT)
}
