//! JSON file formats: Hopf dumps, tensor files, group, representation,
//! bicharacter and septuple files.
//!
//! Scalars use the wire form of [`CycScalar`]. Hand-written inputs may also
//! use bare integers or `"p/q"` strings.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constructions::bicharacter::Bicharacter;
use crate::constructions::group::{named_group, AbelianCoords, FiniteGroup, GroupRep};
use crate::constructions::septuple::Septuple;
use crate::error::{Error, Result};
use crate::hopf::HopfData;
use crate::scalars::CycScalar;
use crate::tensor::{from_dense, to_dense, Algebra, Mat, Sparse, Tensor2};

fn format_err(e: impl std::fmt::Display) -> Error {
    Error::Format(e.to_string())
}

/// Deterministic layout: objects one key per line (sorted), arrays one
/// compact element per line.
pub fn to_canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, value, 0);
    out.push('\n');
    out
}

fn write_value(out: &mut String, value: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    match value {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, v)) in map.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&Value::String(k.clone()).to_string());
                out.push_str(": ");
                write_value(out, v, indent + 1);
                if i + 1 < map.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(indent));
            out.push('}');
        }
        Value::Array(items) if !items.is_empty() => {
            out.push_str("[\n");
            for (i, v) in items.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&v.to_string());
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&"  ".repeat(indent));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

pub fn to_canonical_string<T: Serialize>(value: &T) -> String {
    to_canonical_json(&serde_json::to_value(value).expect("serializable"))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DumpFile {
    dim: usize,
    #[serde(rename = "super")]
    is_super: bool,
    parity: Vec<u8>,
    unit: Vec<CycScalar>,
    /// `[i, j, [[k, m_ij^k], ...]]` for every nonzero product.
    mult: Vec<(usize, usize, Vec<(usize, CycScalar)>)>,
    /// `comult[i]` lists `[p, q, c]` with `Δ(e_i) = Σ c e_p⊗e_q`.
    comult: Vec<Vec<(usize, usize, CycScalar)>>,
    counit: Vec<CycScalar>,
    /// Row `r`, column `c`: coefficient of `e_r` in `S(e_c)`.
    antipode: Vec<Vec<CycScalar>>,
}

pub fn hopf_to_value(h: &HopfData) -> Value {
    let d = h.dim();
    let mult = (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let p = h.basis_product(i, j);
            (!p.is_empty()).then(|| (i, j, p.to_vec()))
        })
        .collect();
    let file = DumpFile {
        dim: d,
        is_super: h.is_super(),
        parity: h.parity_vec().to_vec(),
        unit: to_dense(h.unit(), d),
        mult,
        comult: h.comult().iter().map(|t| t.terms().map(|(p, q, c)| (p, q, c.clone())).collect()).collect(),
        counit: h.counit().to_vec(),
        antipode: h.antipode().to_rows(),
    };
    serde_json::to_value(&file).expect("serializable")
}

pub fn hopf_to_json(h: &HopfData) -> String {
    to_canonical_json(&hopf_to_value(h))
}

pub fn hopf_from_value(v: Value) -> Result<HopfData> {
    let f: DumpFile = serde_json::from_value(v).map_err(format_err)?;
    let d = f.dim;
    if f.unit.len() != d {
        return Err(Error::Format(format!("unit has length {}, expected {d}", f.unit.len())));
    }
    let mut mult = vec![Sparse::new(); d * d];
    for (i, j, terms) in f.mult {
        if i >= d || j >= d {
            return Err(Error::Format(format!("product index ({i}, {j}) out of range")));
        }
        for (k, c) in terms {
            crate::tensor::add_term(&mut mult[i * d + j], k, &c);
        }
    }
    let comult = f
        .comult
        .into_iter()
        .map(|terms| {
            if terms.iter().any(|(p, q, _)| *p >= d || *q >= d) {
                return Err(Error::Format("coproduct index out of range".into()));
            }
            Ok(Tensor2::from_terms(d, terms))
        })
        .collect::<Result<Vec<_>>>()?;
    let antipode = Mat::from_rows(f.antipode).map_err(|_| Error::Format("antipode rows differ in length".into()))?;
    HopfData::new(d, f.is_super, f.parity, from_dense(&f.unit), mult, f.counit, comult, antipode)
}

pub fn hopf_from_json(text: &str) -> Result<HopfData> {
    hopf_from_value(serde_json::from_str(text).map_err(format_err)?)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    host_dim: usize,
    tensor: Vec<(usize, usize, CycScalar)>,
}

pub fn tensor_to_json(t: &Tensor2) -> String {
    let file = TensorFile { host_dim: t.dim(), tensor: t.terms().map(|(i, j, c)| (i, j, c.clone())).collect() };
    to_canonical_string(&file)
}

pub fn tensor_from_json(text: &str) -> Result<Tensor2> {
    let f: TensorFile = serde_json::from_str(text).map_err(format_err)?;
    if f.tensor.iter().any(|(i, j, _)| *i >= f.host_dim || *j >= f.host_dim) {
        return Err(Error::Format("tensor index out of range".into()));
    }
    Ok(Tensor2::from_terms(f.host_dim, f.tensor))
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the same directory and renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    invariant_factors: Option<Vec<u32>>,
    iso_map: Option<Vec<Vec<u32>>>,
}

fn resolve(base: Option<&Path>, rel: &str) -> PathBuf {
    match base {
        Some(b) => b.join(rel),
        None => PathBuf::from(rel),
    }
}

fn load_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read_text(path)?).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

/// A group given inline, by built-in name (`"Z2xZ2"`, `"S3"`, ...) or by a
/// path relative to `base`.
pub fn group_from_value(v: &Value, base: Option<&Path>) -> Result<FiniteGroup> {
    match v {
        Value::String(s) => match named_group(s) {
            Some(g) => Ok(g),
            None => {
                let path = resolve(base, s);
                group_from_value(&load_json(&path)?, path.parent())
            }
        },
        Value::Object(_) => {
            let f: GroupFile = serde_json::from_value(v.clone()).map_err(format_err)?;
            if f.order != f.table.len() {
                return Err(Error::Format(format!("order {} but table has {} rows", f.order, f.table.len())));
            }
            let coords = match (f.invariant_factors, f.iso_map) {
                (Some(factors), Some(coords)) => Some(AbelianCoords { factors, coords }),
                (None, None) => None,
                _ => return Err(Error::Format("invariant_factors and iso_map must be given together".into())),
            };
            FiniteGroup::new(f.table, f.identity, coords)
        }
        _ => Err(Error::Format("group must be a name, a path or an object".into())),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    group_ref: Option<Value>,
    degree: usize,
    matrices: Vec<Vec<Vec<CycScalar>>>,
}

/// A representation file; `group_ref` may be omitted when `group` is supplied.
pub fn rep_from_value(v: &Value, group: Option<&FiniteGroup>, base: Option<&Path>) -> Result<(FiniteGroup, GroupRep)> {
    let v = match v {
        Value::String(s) => {
            let path = resolve(base, s);
            return rep_from_value(&load_json(&path)?, group, path.parent());
        }
        other => other,
    };
    let f: RepFile = serde_json::from_value(v.clone()).map_err(format_err)?;
    let g = match (&f.group_ref, group) {
        (Some(r), _) => group_from_value(r, base)?,
        (None, Some(g)) => g.clone(),
        (None, None) => return Err(Error::Format("representation without group_ref".into())),
    };
    let matrices = f
        .matrices
        .into_iter()
        .map(|rows| {
            if f.degree == 0 {
                Ok(Mat::zeros(0, 0))
            } else {
                Mat::from_rows(rows).map_err(|_| Error::Format("ragged representation matrix".into()))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let rep = GroupRep::new(&g, f.degree, matrices)?;
    Ok((g, rep))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BicharacterFile {
    factors: Vec<u32>,
    values: Option<Vec<Vec<i64>>>,
    generator_exponents: Option<Vec<Vec<i64>>>,
}

/// `{"factors", "values"}` with the full exponent table, or
/// `{"factors", "generator_exponents"}` with exponents on the generators only.
pub fn bicharacter_from_value(v: &Value) -> Result<Bicharacter> {
    let f: BicharacterFile = serde_json::from_value(v.clone()).map_err(format_err)?;
    match (f.values, f.generator_exponents) {
        (Some(values), None) => Bicharacter::new(f.factors, values),
        (None, Some(gen)) => Bicharacter::from_generator_exponents(&f.factors, &gen),
        _ => Err(Error::Format("give exactly one of values and generator_exponents".into())),
    }
}

pub fn bicharacter_to_value(b: &Bicharacter) -> Value {
    serde_json::json!({ "factors": b.factors(), "values": b.exponents() })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SeptupleFile {
    group: Value,
    #[serde(rename = "W")]
    w: Option<Value>,
    #[serde(rename = "A")]
    a: Vec<usize>,
    #[serde(rename = "A_generators", default)]
    a_generators: Vec<usize>,
    #[serde(rename = "Y_basis", default)]
    y_basis: Vec<Vec<CycScalar>>,
    #[serde(rename = "B", default)]
    b: Vec<Vec<CycScalar>>,
    #[serde(rename = "V")]
    v: Option<Value>,
    #[serde(rename = "V_dim")]
    v_dim: usize,
    u: usize,
}

/// Septuple file: `{"group", "W"?, "A", "A_generators"?, "Y_basis"?, "B"?,
/// "V"? (pairing file), "V_dim", "u"}`. Missing `W` is the zero representation
/// and missing `V` the trivial pairing.
pub fn septuple_from_value(v: &Value, base: Option<&Path>) -> Result<Septuple> {
    let f: SeptupleFile = serde_json::from_value(v.clone()).map_err(format_err)?;
    let group = group_from_value(&f.group, base)?;
    let w = match &f.w {
        Some(w) => rep_from_value(w, Some(&group), base)?.1,
        None => GroupRep::zero(&group),
    };
    if f.a.iter().chain(&f.a_generators).any(|&x| x >= group.order()) {
        return Err(Error::Format("A refers to an element outside the group".into()));
    }
    let beta = match &f.v {
        Some(v) => bicharacter_from_value(v)?,
        None => {
            let factors: Vec<u32> = f.a_generators.iter().map(|&g| group.element_order(g) as u32).collect();
            Bicharacter::trivial(&factors)
        }
    };
    Ok(Septuple {
        group,
        w,
        a_elements: f.a,
        a_generators: f.a_generators,
        y_basis: f.y_basis,
        b: f.b,
        beta,
        v_dim: f.v_dim,
        u: f.u,
    })
}

pub fn load_value(path: &Path) -> Result<Value> {
    load_json(path)
}
