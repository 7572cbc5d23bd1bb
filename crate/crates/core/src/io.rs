//! JSON forms of the core objects.
//!
//! Complex numbers are `{"re": .., "im": ..}`; matrices are row lists of
//! those. Floats are written in shortest round-trip form, so save/load is
//! bit-exact. Non-finite values are rejected on load.

use std::collections::BTreeMap;

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::hypercube::{Edge, SubgraphMask};
use crate::linalg::CMatrix;
use crate::magic::MagicMatrix;
use crate::paths::PathWord;
use crate::rep::Representation;
use crate::weighting::{EdgeWeighting, SimplexPoint};
use crate::C;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

pub type MatrixJson = Vec<Vec<ComplexJson>>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaskJson {
    pub n: usize,
    pub edges: Vec<EdgeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WordJson {
    pub n: usize,
    pub base: usize,
    pub indices: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeValueJson {
    pub i: usize,
    pub j: usize,
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightingJson {
    pub n: usize,
    pub values: Vec<EdgeValueJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepresentationJson {
    pub n: usize,
    pub index: Vec<usize>,
    pub images: BTreeMap<usize, MatrixJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MagicJson {
    pub m: usize,
    pub n: usize,
    pub entries: Vec<Vec<MatrixJson>>,
}

fn finite(x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(invalid(format!("non-finite number {x}")))
    }
}

fn complex_in(z: &ComplexJson) -> Result<C<f64>> {
    Ok(C::new(finite(z.re)?, finite(z.im)?))
}

pub fn matrix_to_json(m: &CMatrix<f64>) -> MatrixJson {
    m.to_rows().into_iter().map(|r| r.into_iter().map(|z| ComplexJson { re: z.re, im: z.im }).collect()).collect()
}

pub fn matrix_from_json(m: &MatrixJson) -> Result<CMatrix<f64>> {
    let rows = m
        .iter()
        .map(|r| r.iter().map(complex_in).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    CMatrix::from_rows(&rows).ok_or_else(|| invalid("matrix rows are empty or ragged"))
}

impl From<&SubgraphMask> for MaskJson {
    fn from(m: &SubgraphMask) -> Self {
        Self { n: m.n(), edges: m.edges().map(|e| EdgeJson { i: e.u, j: e.v }).collect() }
    }
}

impl TryFrom<&MaskJson> for SubgraphMask {
    type Error = crate::Error;
    fn try_from(m: &MaskJson) -> Result<Self> {
        let edges = m.edges.iter().map(|e| Edge::between(m.n, e.i, e.j)).collect::<Result<Vec<_>>>()?;
        SubgraphMask::new(m.n, edges)
    }
}

impl From<&PathWord> for WordJson {
    fn from(w: &PathWord) -> Self {
        Self { n: w.n(), base: w.base(), indices: w.indices().to_vec() }
    }
}

impl TryFrom<&WordJson> for PathWord {
    type Error = crate::Error;
    fn try_from(w: &WordJson) -> Result<Self> {
        PathWord::new(w.n, w.base, w.indices.clone())
    }
}

impl From<&EdgeWeighting<f64>> for WeightingJson {
    fn from(c: &EdgeWeighting<f64>) -> Self {
        Self {
            n: c.n(),
            values: c.iter().map(|(e, z)| EdgeValueJson { i: e.u, j: e.v, re: z.re, im: z.im }).collect(),
        }
    }
}

impl TryFrom<&WeightingJson> for EdgeWeighting<f64> {
    type Error = crate::Error;
    fn try_from(w: &WeightingJson) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let values = w
            .values
            .iter()
            .map(|v| {
                let e = Edge::between(w.n, v.i, v.j)?;
                if !seen.insert(e) {
                    return Err(invalid(format!("edge ({}, {}) listed twice", v.i, v.j)));
                }
                Ok((e, C::new(finite(v.re)?, finite(v.im)?)))
            })
            .collect::<Result<Vec<_>>>()?;
        EdgeWeighting::from_values(w.n, values)
    }
}

impl From<&Representation<f64>> for RepresentationJson {
    fn from(r: &Representation<f64>) -> Self {
        Self {
            n: r.n(),
            index: r.index().to_vec(),
            images: r.images().iter().enumerate().map(|(x, m)| (x, matrix_to_json(m))).collect(),
        }
    }
}

impl TryFrom<&RepresentationJson> for Representation<f64> {
    type Error = crate::Error;
    fn try_from(r: &RepresentationJson) -> Result<Self> {
        crate::hypercube::check_dim(r.n)?;
        let size = 1usize << r.n;
        if r.images.len() != size || r.images.keys().any(|&x| x >= size) {
            return Err(invalid(format!("need one image for each of the {size} vertices")));
        }
        let images = r.images.values().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
        Representation::new(r.n, r.index.clone(), images)
    }
}

impl From<&MagicMatrix<f64>> for MagicJson {
    fn from(p: &MagicMatrix<f64>) -> Self {
        Self {
            m: p.m(),
            n: p.n(),
            entries: p.rows().iter().map(|r| r.iter().map(matrix_to_json).collect()).collect(),
        }
    }
}

impl TryFrom<&MagicJson> for MagicMatrix<f64> {
    type Error = crate::Error;
    fn try_from(p: &MagicJson) -> Result<Self> {
        let entries = p
            .entries
            .iter()
            .map(|r| r.iter().map(matrix_from_json).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let out = MagicMatrix::new(entries)?;
        if out.m() != p.m || out.n() != p.n {
            return Err(invalid(format!("declared shape {}x{} does not match the entries", p.m, p.n)));
        }
        Ok(out)
    }
}

/// Parses `"t0,t1,..."` (commas or whitespace) into a simplex point.
pub fn parse_simplex(s: &str) -> Result<SimplexPoint<f64>> {
    let entries = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<f64>().map_err(|e| invalid(format!("bad coordinate {p:?}: {e}"))).and_then(finite))
        .collect::<Result<Vec<_>>>()?;
    SimplexPoint::new(entries)
}

pub fn from_json_str<J: DeserializeOwned>(s: &str) -> Result<J> {
    serde_json::from_str(s).map_err(|e| invalid(format!("malformed JSON: {e}")))
}

pub fn to_json_string<J: Serialize>(value: &J) -> String {
    serde_json::to_string_pretty(value).expect("plain data always serializes")
}

pub fn to_json_value<J: Serialize>(value: &J) -> serde_json::Value {
    serde_json::to_value(value).expect("plain data always serializes")
}

pub fn load_weighting(s: &str) -> Result<EdgeWeighting<f64>> {
    (&from_json_str::<WeightingJson>(s)?).try_into()
}

pub fn load_representation(s: &str) -> Result<Representation<f64>> {
    (&from_json_str::<RepresentationJson>(s)?).try_into()
}

pub fn load_magic(s: &str) -> Result<MagicMatrix<f64>> {
    (&from_json_str::<MagicJson>(s)?).try_into()
}
