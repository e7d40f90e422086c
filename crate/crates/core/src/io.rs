//! Versioned JSON documents, the text report and the DAG file format.

use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::counting::{CountReport, Label};
use crate::dag_lab::{PlainDag, VertexSpec};
use crate::error::{Error, Result};
use crate::pipeline::Analysis;
use crate::reduce::{Certificate, GciVerdict, Outcome, ReductionTrace};
use crate::system::{Binomial, BinomialSystem, ExponentVector, ZeroPattern};

/// Version written into and required from every document.
pub const FORMAT_VERSION: &str = "1";

const PDE_NOTE: &str = "Each mu_L is also the dimension of the space of solutions of the matching \
linear PDE system with constant coefficients that are polynomial in the variables of L and \
exponential in the remaining ones.";

fn dec(v: &BigInt) -> String {
    v.to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinomialDocument {
    pub alpha: Vec<u64>,
    pub beta: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    pub version: String,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub variable_names: Option<Vec<String>>,
    pub binomials: Vec<BinomialDocument>,
}

impl SystemDocument {
    pub fn from_system(sys: &BinomialSystem) -> Self {
        SystemDocument {
            version: FORMAT_VERSION.into(),
            n: sys.n(),
            variable_names: sys.variable_names().map(<[String]>::to_vec),
            binomials: sys
                .binomials()
                .iter()
                .map(|b| BinomialDocument { alpha: b.alpha().entries().to_vec(), beta: b.beta().entries().to_vec(), name: None })
                .collect(),
        }
    }

    pub fn with_binomial_names(mut self, names: impl IntoIterator<Item = String>) -> Self {
        for (b, name) in self.binomials.iter_mut().zip(names) {
            b.name = Some(name);
        }
        self
    }

    /// Validates the document and builds the system.
    pub fn to_system(&self) -> Result<BinomialSystem> {
        if self.version != FORMAT_VERSION {
            return Err(Error::parse("version", format!("unsupported version {:?}, expected {FORMAT_VERSION:?}", self.version)));
        }
        if self.binomials.len() != self.n {
            return Err(Error::parse("binomials", format!("{} binomials for n = {}", self.binomials.len(), self.n)));
        }
        let mut out = Vec::with_capacity(self.n);
        for (j, b) in self.binomials.iter().enumerate() {
            for (side, v) in [("alpha", &b.alpha), ("beta", &b.beta)] {
                if v.len() != self.n {
                    return Err(Error::parse(format!("binomials[{j}].{side}"), format!("length {} differs from n = {}", v.len(), self.n)));
                }
            }
            if b.alpha == b.beta {
                return Err(Error::parse(format!("binomials[{j}]"), format!("binomial {} has identical monomials", j + 1)));
            }
            out.push(Binomial::new(ExponentVector::new(b.alpha.clone()), ExponentVector::new(b.beta.clone()))?);
        }
        let sys = BinomialSystem::new(out)?;
        match &self.variable_names {
            Some(names) => sys.with_names(names.clone()).map_err(|e| Error::parse("variable_names", e.to_string())),
            None => Ok(sys),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn exponent(v: &Value, loc: &str) -> Result<u64> {
    if let Some(e) = v.as_u64() {
        return Ok(e);
    }
    let msg = match v.as_i64() {
        Some(_) => "negative exponent",
        None => "expected a non-negative integer",
    };
    Err(Error::parse(loc, msg))
}

/// Dense `[e1, ..., en]` or sparse `{"name": e}` exponent vector.
fn exponent_vector(v: &Value, loc: &str, names: &[String]) -> Result<Vec<u64>> {
    match v {
        Value::Array(items) => {
            if items.len() != names.len() {
                return Err(Error::parse(loc, format!("length {} differs from n = {}", items.len(), names.len())));
            }
            items.iter().enumerate().map(|(i, e)| exponent(e, &format!("{loc}[{i}]"))).collect()
        }
        Value::Object(map) => {
            let mut out = vec![0; names.len()];
            for (key, e) in map {
                let i = names
                    .iter()
                    .position(|n| n == key)
                    .ok_or_else(|| Error::parse(format!("{loc}.{key}"), "unknown variable"))?;
                out[i] = exponent(e, &format!("{loc}.{key}"))?;
            }
            Ok(out)
        }
        _ => Err(Error::parse(loc, "expected an array or an object of exponents")),
    }
}

/// Parses a system document, normalizing sparse exponent maps to dense arrays.
pub fn parse_system_document(text: &str) -> Result<SystemDocument> {
    let root: Value = serde_json::from_str(text).map_err(|e| Error::parse(format!("line {}, column {}", e.line(), e.column()), e.to_string()))?;
    let obj = root.as_object().ok_or_else(|| Error::parse("document", "expected a JSON object"))?;
    let version = match obj.get("version") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(Error::parse("version", "expected a string")),
        None => return Err(Error::parse("version", "missing")),
    };
    if version != FORMAT_VERSION {
        return Err(Error::parse("version", format!("unsupported version {version:?}, expected {FORMAT_VERSION:?}")));
    }
    let n = obj.get("n").ok_or_else(|| Error::parse("n", "missing"))?;
    let n = n.as_u64().ok_or_else(|| Error::parse("n", "expected a non-negative integer"))? as usize;
    let variable_names = match obj.get("variable_names") {
        None | Some(Value::Null) => None,
        Some(Value::Array(items)) => Some(
            items
                .iter()
                .enumerate()
                .map(|(i, v)| v.as_str().map(str::to_owned).ok_or_else(|| Error::parse(format!("variable_names[{i}]"), "expected a string")))
                .collect::<Result<Vec<_>>>()?,
        ),
        Some(_) => return Err(Error::parse("variable_names", "expected an array of strings")),
    };
    let names: Vec<String> = match &variable_names {
        Some(v) if v.len() != n => return Err(Error::parse("variable_names", format!("{} names for n = {n}", v.len()))),
        Some(v) => v.clone(),
        None => (1..=n).map(|i| format!("x{i}")).collect(),
    };
    let items = match obj.get("binomials") {
        Some(Value::Array(items)) => items,
        Some(_) => return Err(Error::parse("binomials", "expected an array")),
        None => return Err(Error::parse("binomials", "missing")),
    };
    if items.len() != n {
        return Err(Error::parse("binomials", format!("{} binomials for n = {n}; the system must be square", items.len())));
    }
    let mut binomials = Vec::with_capacity(n);
    for (j, item) in items.iter().enumerate() {
        let loc = format!("binomials[{j}]");
        let b = item.as_object().ok_or_else(|| Error::parse(&loc, "expected an object"))?;
        let side = |key: &str| {
            let v = b.get(key).ok_or_else(|| Error::parse(format!("{loc}.{key}"), "missing"))?;
            exponent_vector(v, &format!("{loc}.{key}"), &names)
        };
        let (alpha, beta) = (side("alpha")?, side("beta")?);
        let name = match b.get("name") {
            None | Some(Value::Null) => None,
            Some(Value::String(s)) => Some(s.clone()),
            Some(_) => return Err(Error::parse(format!("{loc}.name"), "expected a string")),
        };
        binomials.push(BinomialDocument { alpha, beta, name });
    }
    let doc = SystemDocument { version, n, variable_names, binomials };
    doc.to_system()?;
    Ok(doc)
}

pub fn parse_system(text: &str) -> Result<BinomialSystem> {
    parse_system_document(text)?.to_system()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertificateDocument {
    RankMismatch { r: usize, s: usize },
    SingularInvertibleBlock,
    /// `witness` is a set `K` of input variables with more than `|K|`
    /// binomials vanishing on both monomials when `K` is set to zero.
    MissingPurePower { variables: Vec<String>, witness: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDocument {
    /// `gci`, `not_gci` or `unsupported`.
    pub status: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDocument {
    /// 1-based index of the input binomial that was eliminated.
    pub binomial: usize,
    /// Input variables merged into one after this step.
    pub merged: Vec<String>,
    pub exp_a: u64,
    pub exp_b: u64,
    pub q: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberDocument {
    pub variable: String,
    pub inputs: Vec<String>,
    pub multiplier: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDocument {
    pub invertible_variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det_b2: Option<String>,
    pub q: String,
    pub steps: Vec<StepDocument>,
    pub fibers: Vec<FiberDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDocument {
    pub variables: Vec<String>,
    pub inputs: Vec<String>,
    pub label: String,
    pub delta: String,
    pub rho: String,
    pub mu: String,
    pub d: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TotalsDocument {
    pub delta: String,
    pub mu: String,
    pub d: String,
    #[serde(rename = "D")]
    pub distinct: String,
}

impl TotalsDocument {
    fn of(r: &CountReport<BigInt>) -> Self {
        TotalsDocument { delta: dec(&r.delta), mu: dec(&r.mu_origin), d: dec(&r.d), distinct: dec(&r.distinct) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternDocument {
    /// 1-based blocks of the full subgraph.
    pub blocks: Vec<usize>,
    pub sources: Vec<usize>,
    /// Input variables vanishing on this pattern.
    pub zero_set: Vec<String>,
    #[serde(rename = "D_L")]
    pub d_l: String,
    pub mu_l: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingDocument {
    pub reduced: TotalsDocument,
    pub lifted: TotalsDocument,
    pub enumerated_subgraphs: u64,
    pub bounded_local_path: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub patterns: Option<Vec<PatternDocument>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDocument {
    pub delta: String,
    /// Integer relations among the coefficients required for torus solutions when `det B = 0`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub version: String,
    pub command: String,
    pub n: usize,
    pub verdict: VerdictDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normalized: Option<SystemDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocks: Option<Vec<BlockDocument>>,
    /// 1-based block edges `[a, b]`: block `b` uses a variable of block `a`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dag_edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counts: Option<CountingDocument>,
}

fn names_of(input: &BinomialSystem, idx: impl IntoIterator<Item = usize>) -> Vec<String> {
    idx.into_iter().map(|i| input.name(i)).collect()
}

fn reduced_name(i: usize) -> String {
    format!("u{}", i + 1)
}

fn verdict_document(input: &BinomialSystem, outcome: &Outcome) -> VerdictDocument {
    match outcome {
        Outcome::Gci { .. } => VerdictDocument { status: "gci".into(), message: "generic complete intersection".into(), certificate: None },
        Outcome::NotGci(c) => {
            let certificate = match c {
                Certificate::RankMismatch { r, s } => CertificateDocument::RankMismatch { r: *r, s: *s },
                Certificate::SingularInvertibleBlock => CertificateDocument::SingularInvertibleBlock,
                Certificate::MissingPurePower { variables, witness } => CertificateDocument::MissingPurePower {
                    variables: names_of(input, variables.iter().copied()),
                    witness: names_of(input, witness.indices()),
                },
            };
            VerdictDocument { status: "not_gci".into(), message: c.to_string(), certificate: Some(certificate) }
        }
        Outcome::Unsupported(why) => VerdictDocument { status: "unsupported".into(), message: why.clone(), certificate: None },
    }
}

fn trace_document(input: &BinomialSystem, trace: &ReductionTrace) -> TraceDocument {
    TraceDocument {
        invertible_variables: names_of(input, trace.invertible_vars.iter().copied()),
        det_b2: trace.derived_factor.as_ref().map(dec),
        q: dec(&trace.q_total),
        steps: trace
            .steps
            .iter()
            .map(|s| StepDocument {
                binomial: s.original_binomial + 1,
                merged: names_of(input, s.merged_fiber.iter().copied()),
                exp_a: s.step.exp_a,
                exp_b: s.step.exp_b,
                q: s.step.q,
            })
            .collect(),
        fibers: trace
            .var_fibers
            .iter()
            .enumerate()
            .map(|(i, f)| FiberDocument {
                variable: reduced_name(i),
                inputs: names_of(input, f.iter().copied()),
                multiplier: trace.var_multiplier.get(i).map(dec).unwrap_or_else(|| "1".into()),
            })
            .collect(),
    }
}

fn pattern_names(input: &BinomialSystem, p: &ZeroPattern) -> Vec<String> {
    names_of(input, p.indices())
}

impl ReportDocument {
    /// Verdict, normal form and reduction trace, as emitted by `gci`.
    pub fn from_verdict(input: &BinomialSystem, verdict: &GciVerdict, command: &str) -> Self {
        let trace = &verdict.trace;
        let mut doc = ReportDocument {
            version: FORMAT_VERSION.into(),
            command: command.into(),
            n: input.n(),
            verdict: verdict_document(input, &verdict.outcome),
            normalized: None,
            trace: None,
            torus: None,
            blocks: None,
            dag_edges: None,
            counts: None,
        };
        if let Outcome::Gci { system, .. } = &verdict.outcome {
            let names = (0..system.n()).map(reduced_name).collect();
            let normalized = system.clone().with_names(names).expect("one name per variable");
            doc.normalized = Some(
                SystemDocument::from_system(&normalized)
                    .with_binomial_names(trace.binomial_origin.iter().map(|&j| format!("binomial {}", j + 1))),
            );
            doc.trace = Some(trace_document(input, trace));
        }
        doc
    }

    /// The full report of `count`.
    pub fn from_analysis(a: &Analysis, command: &str) -> Self {
        let input = &a.input;
        let trace = &a.verdict.trace;
        let mut doc = Self::from_verdict(input, &a.verdict, command);
        if !a.verdict.is_gci() {
            return doc;
        }
        doc.torus = Some(TorusDocument {
            delta: dec(&a.torus_delta),
            conditions: a.torus_conditions.as_ref().map(|c| c.iter().map(|v| v.iter().map(dec).collect()).collect()),
        });
        let Some(st) = &a.structure else {
            return doc;
        };
        let fiber_inputs = |vars: &[usize]| {
            let mut all: Vec<usize> = vars.iter().flat_map(|&v| trace.var_fibers[v].iter().copied()).collect();
            all.sort_unstable();
            names_of(input, all)
        };
        doc.blocks = Some(
            st.blocks
                .iter()
                .map(|b| BlockDocument {
                    variables: b.index_set.iter().map(|&i| reduced_name(i)).collect(),
                    inputs: fiber_inputs(&b.index_set),
                    label: b.label.as_str().into(),
                    delta: dec(&b.delta),
                    rho: dec(&b.rho),
                    mu: dec(&b.mu),
                    d: dec(&b.d),
                })
                .collect(),
        );
        doc.dag_edges = Some(st.dag.edges().iter().map(|&(x, y)| [x + 1, y + 1]).collect());
        let patterns = st.lifted.patterns.as_ref().map(|rows| {
            rows.iter()
                .map(|r| PatternDocument {
                    blocks: r.vertices.iter().map(|v| v + 1).collect(),
                    sources: r.sources.iter().map(|v| v + 1).collect(),
                    zero_set: pattern_names(input, &r.pattern),
                    d_l: dec(&r.d_l),
                    mu_l: dec(&r.mu_l),
                })
                .collect()
        });
        doc.counts = Some(CountingDocument {
            reduced: TotalsDocument::of(&st.reduced),
            lifted: TotalsDocument::of(&st.lifted),
            enumerated_subgraphs: st.reduced.enumeration_cost,
            bounded_local_path: st.reduced.fast_path_used,
            note: patterns.as_ref().map(|_| PDE_NOTE.to_string()),
            patterns,
        });
        doc
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} report (format {}), n = {}", self.command, self.version, self.n);
        let _ = writeln!(s, "verdict: {} ({})", self.verdict.status, self.verdict.message);
        if let Some(CertificateDocument::MissingPurePower { witness, .. }) = &self.verdict.certificate {
            let _ = writeln!(s, "witness K: {{{}}}", witness.join(", "));
        }
        if let Some(t) = &self.trace {
            let _ = writeln!(s, "invertible variables: {{{}}}", t.invertible_variables.join(", "));
            if let Some(d) = &t.det_b2 {
                let _ = writeln!(s, "|det B2| = {d}");
            }
            let _ = writeln!(s, "Q = {} after {} reduction step(s)", t.q, t.steps.len());
            for st in &t.steps {
                let _ = writeln!(s, "  binomial {}: exponents {}/{}, q = {}, merges {{{}}}", st.binomial, st.exp_a, st.exp_b, st.q, st.merged.join(", "));
            }
            for f in &t.fibers {
                let _ = writeln!(s, "  {} <- {{{}}} (multiplier {})", f.variable, f.inputs.join(", "), f.multiplier);
            }
        }
        if let Some(sys) = &self.normalized {
            let _ = writeln!(s, "normal form:");
            let rows = sys.binomials.iter().map(|b| Binomial::from_parts(ExponentVector::new(b.alpha.clone()), ExponentVector::new(b.beta.clone())));
            let names = sys.variable_names.clone().unwrap_or_else(|| (1..=sys.n).map(|i| format!("x{i}")).collect());
            if let Ok(system) = BinomialSystem::new(rows.collect()).and_then(|t| t.with_names(names)) {
                for line in system.to_string().lines() {
                    let _ = writeln!(s, "  {line}");
                }
            }
        }
        if let Some(t) = &self.torus {
            let _ = writeln!(s, "torus solutions |det B| = {}", t.delta);
            if let Some(c) = &t.conditions {
                for v in c {
                    let _ = writeln!(s, "  needs prod c_j^nu_j = 1 for nu = ({})", v.join(", "));
                }
            }
        }
        if let Some(blocks) = &self.blocks {
            let _ = writeln!(s, "blocks:");
            for (i, b) in blocks.iter().enumerate() {
                let _ = writeln!(
                    s,
                    "  {}: {{{}}} = {{{}}} {} delta={} rho={} mu={} d={}",
                    i + 1,
                    b.variables.join(", "),
                    b.inputs.join(", "),
                    b.label,
                    b.delta,
                    b.rho,
                    b.mu,
                    b.d
                );
            }
        }
        if let Some(edges) = &self.dag_edges {
            let list: Vec<String> = edges.iter().map(|[a, b]| format!("{a}->{b}")).collect();
            let _ = writeln!(s, "dag edges: {}", if list.is_empty() { "none".into() } else { list.join(" ") });
        }
        if let Some(c) = &self.counts {
            for (which, t) in [("reduced", &c.reduced), ("lifted", &c.lifted)] {
                let _ = writeln!(s, "{which}: delta={} mu={} d={} D={}", t.delta, t.mu, t.d, t.distinct);
            }
            let _ = writeln!(s, "enumerated subgraphs: {}, bounded-local path: {}", c.enumerated_subgraphs, c.bounded_local_path);
            if let Some(rows) = &c.patterns {
                let _ = writeln!(s, "patterns:");
                for r in rows {
                    let _ = writeln!(s, "  L = {{{}}} blocks {:?} sources {:?} D_L={} mu_L={}", r.zero_set.join(", "), r.blocks, r.sources, r.d_l, r.mu_l);
                }
            }
            if let Some(note) = &c.note {
                let _ = writeln!(s, "note: {note}");
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub version: String,
    pub error: String,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub location: Option<String>,
}

impl ErrorDocument {
    pub fn new(e: &Error) -> Self {
        let (kind, location) = match e {
            Error::Parse { location, .. } => ("parse", Some(location.clone())),
            Error::CapExceeded { .. } | Error::TooLarge { .. } | Error::TooManyLocalBlocks { .. } => ("cap_exceeded", None),
            Error::Overflow(_) => ("unsupported", None),
            _ => ("input", None),
        };
        let message = match e {
            Error::Parse { message, .. } => message.clone(),
            other => other.to_string(),
        };
        ErrorDocument { version: FORMAT_VERSION.into(), error: kind.into(), message, location }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DagFile {
    pub dag: PlainDag,
    /// Present when the file gives a weight line for every vertex.
    pub weights: Option<Vec<VertexSpec>>,
}

/// Parses the DAG format: a vertex count `s`, then lines `a b` for edges and
/// `a delta rho global|local` for weights, all 1-based. `#` starts a comment.
pub fn parse_dag(text: &str) -> Result<DagFile> {
    let mut s = None;
    let mut edges = Vec::new();
    let mut weights: Vec<Option<VertexSpec>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let loc = || format!("line {}", lineno + 1);
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tok: Vec<&str> = line.split_whitespace().collect();
        let num = |t: &str| t.parse::<u64>().map_err(|_| Error::parse(loc(), format!("expected a non-negative integer, got {t:?}")));
        let Some(size) = s else {
            if tok.len() != 1 {
                return Err(Error::parse(loc(), "the first line must hold the vertex count"));
            }
            let v = num(tok[0])? as usize;
            s = Some(v);
            weights = vec![None; v];
            continue;
        };
        let vertex = |t: &str| match num(t)? as usize {
            v if (1..=size).contains(&v) => Ok(v - 1),
            v => Err(Error::parse(loc(), format!("vertex {v} outside 1..{size}"))),
        };
        match tok.len() {
            2 => {
                let (a, b) = (vertex(tok[0])?, vertex(tok[1])?);
                if a == b {
                    return Err(Error::parse(loc(), "self-loop"));
                }
                edges.push((a, b));
            }
            4 => {
                let a = vertex(tok[0])?;
                let label = match tok[3] {
                    "global" => Label::Global,
                    "local" => Label::Local,
                    other => return Err(Error::parse(loc(), format!("label must be global or local, got {other:?}"))),
                };
                if weights[a].is_some() {
                    return Err(Error::parse(loc(), format!("second weight line for vertex {}", a + 1)));
                }
                weights[a] = Some(VertexSpec { delta: num(tok[1])?, rho: num(tok[2])?, label });
            }
            _ => return Err(Error::parse(loc(), "expected `a b` or `a delta rho global|local`")),
        }
    }
    let s = s.ok_or_else(|| Error::parse("line 1", "missing vertex count"))?;
    let weights = match weights.iter().filter(|w| w.is_some()).count() {
        0 => None,
        k if k == s => Some(weights.into_iter().flatten().collect()),
        k => return Err(Error::parse("weights", format!("{k} weight lines for {s} vertices"))),
    };
    Ok(DagFile { dag: PlainDag::new(s, edges)?, weights })
}
