//! Text and JSON formats: graph files, key=value configs, module literals
//! and the output records.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use verma_core::catalog::{Catalog, IsoClass};
use verma_core::field::{format_rational, parse_rational, Rational, Rationals};
use verma_core::lambda_mod::Module;
use verma_core::matrix::Matrix;
use verma_core::root_datum::{DimVector, Graph, Weight};
use verma_core::verma::{CharacterRow, DeltaSum, OperatorReport};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Core(#[from] verma_core::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

/// `vertices: n` then `edge: i j` lines, 0-based; `#` starts a comment.
pub fn parse_graph(text: &str) -> Result<Graph, FormatError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, val) = line.split_once(':').ok_or_else(|| syntax(k + 1, "expected `key: value`"))?;
        match key.trim() {
            "vertices" => n = Some(val.trim().parse::<usize>().map_err(|e| syntax(k + 1, e.to_string()))?),
            "edge" => {
                let ends: Vec<usize> = val
                    .split_whitespace()
                    .map(|t| t.parse::<usize>().map_err(|e| syntax(k + 1, e.to_string())))
                    .collect::<Result<_, _>>()?;
                match ends[..] {
                    [a, b] => edges.push((a, b)),
                    _ => return Err(syntax(k + 1, "edge needs two vertices")),
                }
            }
            other => return Err(syntax(k + 1, format!("unknown key `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| syntax(0, "missing `vertices`"))?;
    Ok(Graph::new(n, edges)?)
}

/// `key=value` lines; blank lines and `#` comments are skipped.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, FormatError> {
    let mut out = BTreeMap::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, val) = line.split_once('=').ok_or_else(|| syntax(k + 1, "expected `key=value`"))?;
        out.insert(key.trim().to_string(), val.trim().to_string());
    }
    Ok(out)
}

pub fn parse_int_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, FormatError>
where
    T::Err: std::fmt::Display,
{
    s.split(',').map(|t| t.trim().parse::<T>().map_err(|e| syntax(0, format!("`{t}`: {e}")))).collect()
}

pub fn parse_weight(s: &str) -> Result<Weight, FormatError> {
    Ok(Weight(parse_int_list(s)?))
}

/// `{dims, arrows: {name: [[rational strings]]}}`; omitted arrows are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleLiteral {
    pub dims: Vec<usize>,
    #[serde(default)]
    pub arrows: BTreeMap<String, Vec<Vec<String>>>,
}

impl ModuleLiteral {
    pub fn to_module(&self, cat: &Catalog) -> Result<Module<Rationals>, FormatError> {
        let dq = cat.quiver();
        if self.dims.len() != dq.vertex_count() {
            return Err(syntax(0, format!("{} dims for {} vertices", self.dims.len(), dq.vertex_count())));
        }
        let mut maps: Vec<Matrix<Rational>> = dq
            .arrows()
            .iter()
            .map(|a| Matrix::filled(self.dims[a.target], self.dims[a.source], Rational::from_integer(0)))
            .collect();
        for (name, rows) in &self.arrows {
            let a = dq.arrow_by_name(name).ok_or_else(|| syntax(0, format!("no arrow `{name}`")))?;
            let arrow = dq.arrow(a);
            let (r, c) = (self.dims[arrow.target], self.dims[arrow.source]);
            if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                return Err(syntax(0, format!("arrow `{name}` needs a {r}x{c} matrix")));
            }
            let data = rows.iter().flatten().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
            maps[a] = Matrix::from_rows(r, c, data);
        }
        Ok(Module::from_matrices(Rationals, dq, self.dims.clone(), maps)?)
    }

    pub fn from_module(cat: &Catalog, m: &Module<Rationals>) -> Self {
        let dq = cat.quiver();
        let mut arrows = BTreeMap::new();
        for a in 0..dq.arrows().len() {
            let mat = m.map(a);
            if mat.data().iter().any(|v| *v != Rational::from_integer(0)) {
                let rows = (0..mat.rows()).map(|r| mat.row(r).iter().map(format_rational).collect()).collect();
                arrows.insert(dq.arrow_name(a).to_string(), rows);
            }
        }
        ModuleLiteral { dims: m.dims().to_vec(), arrows }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub beta: Vec<u32>,
    pub fingerprint: String,
    pub decomposition: String,
}

impl CatalogEntry {
    pub fn new(cat: &Catalog, x: &IsoClass) -> Self {
        CatalogEntry { beta: cat.dim_of(x).0, fingerprint: cat.fingerprint_hex(x), decomposition: cat.class_name(x) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub relation: String,
    pub slice: Vec<u32>,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

impl From<&OperatorReport> for ReportRecord {
    fn from(r: &OperatorReport) -> Self {
        ReportRecord {
            relation: r.relation.clone(),
            slice: r.slice.0.clone(),
            pass: r.pass(),
            witnesses: r.witnesses.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterRecord {
    pub beta: Vec<u32>,
    pub verma_dim: u64,
    pub l_dim: Option<u64>,
}

impl From<&CharacterRow> for CharacterRecord {
    fn from(r: &CharacterRow) -> Self {
        CharacterRecord { beta: r.beta.0.clone(), verma_dim: r.verma_dim, l_dim: r.l_dim }
    }
}

/// Matrix of an operator between delta bases; column `c` is the image of
/// `δ_{basis[c]}` in the basis `target`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorMatrix {
    pub lambda: Vec<i64>,
    pub beta: Vec<u32>,
    pub op: String,
    pub basis: Vec<String>,
    pub target: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingMatrix {
    pub beta: Vec<u32>,
    pub words: Vec<String>,
    pub classes: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaRecord {
    pub beta: Option<Vec<u32>>,
    pub terms: Vec<(String, String)>,
}

impl DeltaRecord {
    pub fn new(cat: &Catalog, d: &DeltaSum) -> Self {
        DeltaRecord {
            beta: d.beta.as_ref().map(|b| b.0.clone()),
            terms: d.sorted_terms(cat).iter().map(|(x, c)| (cat.class_name(x), format_rational(c))).collect(),
        }
    }
}

/// `(1,2)` as the word `12`, 1-based.
pub fn word_label(w: &[usize]) -> String {
    if w.is_empty() {
        return "()".into();
    }
    w.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",")
}

pub fn beta_label(b: &DimVector) -> String {
    b.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_text() {
        let g = parse_graph("# A3\nvertices: 3\nedge: 0 1\nedge: 1 2\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
        assert!(matches!(parse_graph("vertices: 2\nedge: 0\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(parse_graph("edge: 0 1\n").is_err());
        assert!(matches!(parse_graph("vertices: 1\nedge: 0 0\n"), Err(FormatError::Core(_))));
    }

    #[test]
    fn config_text() {
        let c = parse_config("type=A2\n# comment\nlambda = 1,1\n\ncutoff=6\n").unwrap();
        assert_eq!(c["type"], "A2");
        assert_eq!(c["lambda"], "1,1");
        assert_eq!(parse_weight(&c["lambda"]).unwrap(), Weight(vec![1, 1]));
        assert!(parse_config("nonsense\n").is_err());
        assert!(parse_weight("1,x").is_err());
    }

    #[test]
    fn module_literals_round_trip() {
        let cat = Catalog::build(&Graph::builtin("A2").unwrap(), 3).unwrap();
        let lit: ModuleLiteral = serde_json::from_str(r#"{"dims":[1,1],"arrows":{"2>1":[["1"]]}}"#).unwrap();
        let m = lit.to_module(&cat).unwrap();
        assert_eq!(cat.class_name(&cat.decompose(&m).unwrap()), "q1");
        assert_eq!(ModuleLiteral::from_module(&cat, &m), lit);
        let bad: ModuleLiteral = serde_json::from_str(r#"{"dims":[1,1],"arrows":{"2>1":[["1","0"]]}}"#).unwrap();
        assert!(bad.to_module(&cat).is_err());
        let zero: ModuleLiteral = serde_json::from_str(r#"{"dims":[0,0]}"#).unwrap();
        assert!(cat.decompose(&zero.to_module(&cat).unwrap()).unwrap().is_zero());
    }
}
