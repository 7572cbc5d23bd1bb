use std::fmt::Write as _;
use std::path::Path;

use qcube::config::RunConfig;
use qcube::funcalg::{
    block_structure, cross_block_max, generated_algebra_dimension, sign_calculus_violation, simplex_grid,
};
use qcube::hypercube::{self, Side, SubgraphMask};
use qcube::io::{self, MagicJson, MaskJson, RepresentationJson, WordJson};
use qcube::magic::{fill_up, MAGIC_TOL};
use qcube::paths::PathWord;
use qcube::rep::{classify, find_intertwiner, rho_t, INTERTWINER_TOL};
use qcube::report::{Check, Report};
use qcube::suites;
use qcube::weighting::{check_admissible, check_square_relations};
use qcube::{Error, Matrix};
use serde_json::{json, Value};

pub enum Failure {
    /// Bad arguments or files; exit 2.
    Input(String),
    /// A computation could not certify its result; exit 1.
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(_) => Failure::Input(e.to_string()),
            _ => Failure::Math(e.to_string()),
        }
    }
}

type Out = Result<Report, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

/// A representation file, or a report written by `rep build --out`.
fn load_representation(path: &Path) -> Result<qcube::Rep, Failure> {
    let text = read(path)?;
    let value: Value = io::from_json_str(&text)?;
    match value.get("data") {
        Some(data) if value.get("checks").is_some() => Ok(io::load_representation(&data.to_string())?),
        _ => Ok(io::load_representation(&text)?),
    }
}

fn fmt_matrix(m: &Matrix) -> String {
    let mut s = String::new();
    for r in 0..m.rows() {
        s.push_str("  [");
        for c in 0..m.cols() {
            let z = m[(r, c)];
            let _ = write!(s, " {:>9.6}{:+.6}i", z.re, z.im);
        }
        s.push_str(" ]\n");
    }
    s
}

fn bits(x: usize, n: usize) -> String {
    format!("{x:0n$b}")
}

pub fn hypercube_info(cfg: &RunConfig, echo: String, n: usize) -> Out {
    cfg.check_n(n)?;
    let (u, v) = hypercube::vertex_sets(n)?;
    let edges = hypercube::edges(n)?;
    let squares = hypercube::squares(n)?;
    println!("Q_{n}: {} vertices ({} in U, {} in V)", 1usize << n, u.len(), v.len());
    println!("edges: {} ({} per direction)", edges.len(), edges.len() / n);
    println!("squares: {}", squares.len());
    println!("U: {}", u.iter().map(|&x| bits(x, n)).collect::<Vec<_>>().join(" "));
    println!("V: {}", v.iter().map(|&x| bits(x, n)).collect::<Vec<_>>().join(" "));

    let mut report = Report::new(echo);
    report.push(Check::flag("edge count n 2^(n-1)", edges.len() == n << (n - 1)));
    let expected_squares = if n < 2 { 0 } else { n * (n - 1) / 2 * (1usize << (n - 2)) };
    report.push(Check::flag("square count C(n,2) 2^(n-2)", squares.len() == expected_squares));
    let mut shared_ok = true;
    for x in 0..1usize << n {
        for y in (x + 1)..1usize << n {
            let k = hypercube::common_neighbors(n, x, y)?.len();
            shared_ok &= k == if (x ^ y).count_ones() == 2 { 2 } else { 0 };
        }
    }
    report.push(Check::flag("common neighbours", shared_ok));
    report.push(Check::flag(
        "sides alternate along edges",
        edges.iter().all(|e| hypercube::side(e.u) == Side::U && hypercube::side(e.v) == Side::V),
    ));
    Ok(report.with_data(json!({ "n": n, "u": u, "v": v, "mask": io::to_json_value(&MaskJson::from(&SubgraphMask::full(n)?)) })))
}

pub fn path_canon(echo: String, n: usize, base: usize, word: &str) -> Out {
    let indices = word
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|e| Failure::Input(format!("bad flip index {p:?}: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let w = PathWord::new(n, base, indices)?;
    let canon = w.canonicalize();
    println!("word:      {w}");
    println!("canonical: {canon}");
    println!("sign:      {}", canon.sign);
    println!("endpoint:  {}", bits(w.endpoint(), n));
    println!("loop:      {}", w.is_loop());
    let mut report = Report::new(echo);
    report.push(Check::flag("endpoint preserved", canon.word.endpoint() == w.endpoint()));
    Ok(report.with_data(json!({
        "input": io::to_json_value(&WordJson::from(&w)),
        "sign": canon.sign,
        "canonical": io::to_json_value(&WordJson::from(&canon.word)),
    })))
}

pub fn weighting_check(cfg: &RunConfig, echo: String, file: &Path) -> Out {
    let c = io::load_weighting(&read(file)?)?;
    let adm = check_admissible(&c, cfg.tolerance);
    let sq = check_square_relations(&c, cfg.tolerance);
    let sup = c.support();
    let components = sup.mask.edge_components();
    println!("n = {}, live edges {}, |U_c| = {}, |V_c| = {}", c.n(), sup.mask.edge_count(), sup.u_c.len(), sup.v_c.len());
    println!("support components: {}", components.len());

    let mut report = Report::new(echo);
    let mut a = Check::measure("admissibility", adm.max_violation, cfg.tolerance);
    if let Some((x, y)) = adm.worst_pair {
        a = a.with_detail(format!("worst pair ({}, {})", bits(x, c.n()), bits(y, c.n())));
    }
    report.push(a);
    let mut s = Check::measure("square relations", sq.max_violation, cfg.tolerance);
    s.passed = sq.passed;
    if !sq.broken_squares.is_empty() {
        s = s.with_detail(format!("{} squares with a single dead edge", sq.broken_squares.len()));
    }
    report.push(s);
    Ok(report.with_data(json!({ "u_c": sup.u_c, "v_c": sup.v_c, "components": components })))
}

pub fn rep_build(cfg: &RunConfig, echo: String, t: &str) -> Out {
    let t = io::parse_simplex(t)?;
    cfg.check_n(t.n())?;
    let rho = rho_t(&t)?;
    let n = t.n();
    println!("ρ_t on Q_{n}, index U_{n} = {:?}", rho.index().iter().map(|&x| bits(x, n)).collect::<Vec<_>>());
    for (x, m) in rho.images().iter().enumerate() {
        println!("p_{}:\n{}", bits(x, n), fmt_matrix(m));
    }
    let inv = rho.check(cfg.tolerance);
    let mut report = Report::new(echo);
    report.push(Check::measure("projections", inv.idempotent.max(inv.self_adjoint), cfg.tolerance));
    report.push(Check::measure("GP1", inv.partition_u.max(inv.partition_v), cfg.tolerance));
    report.push(Check::measure("GP2", inv.orthogonality, cfg.tolerance));
    report.push(Check::flag("rank one", inv.max_rank <= 1));
    Ok(report.with_data(io::to_json_value(&RepresentationJson::from(&rho))))
}

pub fn rep_classify(cfg: &RunConfig, echo: String, file: &Path) -> Out {
    let c = io::load_weighting(&read(file)?)?;
    let n = c.n();
    let blocks = classify(&c, cfg.tolerance)?;
    let mut report = Report::new(echo);
    let mut data = Vec::new();
    for (k, b) in blocks.iter().enumerate() {
        println!(
            "block {k}: vertices {:?}\n  t = {:?}\n  gauge residual {:.3e}, intertwiner residual {:.3e}",
            b.component.iter().map(|&x| bits(x, n)).collect::<Vec<_>>(),
            b.t.entries(),
            b.gauge_residual,
            b.intertwiner_residual
        );
        report.push(Check::measure(format!("block {k} gauge"), b.gauge_residual, cfg.tolerance));
        report.push(Check::measure(format!("block {k} intertwiner"), b.intertwiner_residual, INTERTWINER_TOL));
        let phases: Vec<Value> = b.gauge.iter().map(|(x, z)| json!({ "vertex": x, "re": z.re, "im": z.im })).collect();
        data.push(json!({ "component": b.component, "t": b.t.entries(), "gauge": phases }));
    }
    Ok(report.with_data(Value::Array(data)))
}

pub fn rep_intertwine(echo: String, a: &Path, b: &Path) -> Out {
    let ra = load_representation(a)?;
    let rb = load_representation(b)?;
    let mut report = Report::new(echo);
    match find_intertwiner(&ra, &rb, INTERTWINER_TOL)? {
        Some(w) => {
            println!("W (commutant dimension {}):\n{}", w.commutant_dim, fmt_matrix(&w.unitary));
            report.push(Check::measure("intertwiner", w.residual, INTERTWINER_TOL));
            Ok(report.with_data(json!({ "unitary": io::matrix_to_json(&w.unitary), "residual": w.residual })))
        }
        None => {
            println!("no unitary intertwiner");
            report.push(Check::flag("intertwiner", false).with_detail("representations are not unitarily equivalent"));
            Ok(report)
        }
    }
}

pub fn sweep(cfg: &RunConfig, echo: String, n: usize, resolution: Option<usize>) -> Out {
    cfg.check_n(n)?;
    let resolution = resolution.unwrap_or(cfg.grid_resolution);
    let grid = simplex_grid::<f64>(n, resolution)?;
    let (mut rel, mut block, mut sign) = (0.0f64, 0.0f64, 0.0f64);
    let mut dims_ok = true;
    let mut points = Vec::with_capacity(grid.points.len());
    for (p, t) in grid.points.iter().enumerate() {
        let rho = rho_t(t)?;
        let r = rho.check(cfg.tolerance).max_violation();
        let blocks = block_structure(t)?;
        let cross = rho.images().iter().map(|m| cross_block_max(m, &blocks)).try_fold(0.0f64, |a, b| b.map(|b| a.max(b)))?;
        let dim = generated_algebra_dimension(t)?;
        let words = suites::random_words(n, 20, 6, cfg.seed.wrapping_add(p as u64));
        let s = sign_calculus_violation(&rho, &words)?;
        let near_zero = t.near_zero_coordinates();
        let ok = r <= cfg.tolerance && cross <= cfg.tolerance && dim.matches() && dim.span.saturated && s <= cfg.tolerance;
        println!(
            "{} t = {:?} relations {r:.1e} cross-block {cross:.1e} dim {}/{}{}",
            if ok { "PASS" } else { "FAIL" },
            t.entries(),
            dim.dimension,
            dim.expected,
            if near_zero.is_empty() { String::new() } else { format!(" near-zero {near_zero:?}") }
        );
        rel = rel.max(r);
        block = block.max(cross);
        sign = sign.max(s);
        dims_ok &= dim.matches() && dim.span.saturated;
        points.push(json!({
            "t": t.entries(),
            "passed": ok,
            "relations": r,
            "cross_block": cross,
            "blocks": blocks.sizes(),
            "dimension": dim.dimension,
            "expected_dimension": dim.expected,
            "saturated": dim.span.saturated,
            "sign_calculus": s,
            "near_zero": near_zero,
        }));
    }
    let mut report = Report::new(echo);
    report.push(Check::measure("relations", rel, cfg.tolerance).with_detail(format!("{} points", grid.points.len())));
    report.push(Check::measure("t-block diagonal form", block, cfg.tolerance));
    report.push(Check::flag("generated algebra dimension", dims_ok));
    report.push(Check::measure("sign calculus", sign, cfg.tolerance));
    Ok(report.with_data(json!({ "n": n, "resolution": resolution, "points": points })))
}

pub fn fillup(echo: String, t: &str) -> Out {
    let t = io::parse_simplex(t)?;
    let f = fill_up(&t)?;
    println!("x =\n{}", fmt_matrix(f.x.matrix()));
    for (i, row) in f.magic.rows().iter().enumerate() {
        for (j, m) in row.iter().enumerate() {
            println!("U_{}{}:\n{}", i + 1, j + 1, fmt_matrix(m));
        }
    }
    println!("W =\n{}", fmt_matrix(&f.witness.unitary));
    println!("labels (row 1, row 2): {:?}", f.labels.map(|r| r.map(|x| bits(x, 3))));
    if !f.uses_fixed_labeling() {
        println!("fixed labeling did not certify; matched columns {:?}", f.columns.map(|c| c + 1));
    }
    let mut report = Report::new(echo);
    let m = &f.report;
    report.push(Check::measure("projections", m.projection, MAGIC_TOL));
    report.push(Check::measure("row sums", m.row_sums, MAGIC_TOL));
    report.push(Check::measure("column orthogonality", m.column_orthogonality, MAGIC_TOL));
    report.push(Check::measure("column sums", m.column_sums.unwrap_or(f64::INFINITY), MAGIC_TOL));
    report.push(Check::measure("intertwiner", f.witness.residual, INTERTWINER_TOL));
    Ok(report.with_data(json!({
        "t": t.entries(),
        "x": io::matrix_to_json(f.x.matrix()),
        "magic": io::to_json_value(&MagicJson::from(&f.magic)),
        "witness": io::matrix_to_json(&f.witness.unitary),
        "columns": f.columns,
        "labels": f.labels,
    })))
}

pub fn selftest(cfg: &RunConfig, echo: String, n: usize) -> Out {
    cfg.check_n(n)?;
    let mut report = suites::run_all(&RunConfig { max_n: n, ..cfg.clone() });
    report.command = echo;
    Ok(report)
}
