//! Solution counts from the weighted block DAG.
//!
//! Each vertex `a` of the DAG is an irreducible block with torus count
//! `delta_a`, product of leading exponents `rho_a` and origin multiplicity
//! `mu_a`. A zero pattern with nonzero multiplicity corresponds to a *full*
//! vertex set `H` (closed under taking children); its sources `S(H)` are the
//! members with no parent inside `H`. Then
//!
//! * `D_L  = prod_{a not in H} delta_a`, or 0 if some source has `mu_e = 0`
//! * `mu_L = prod_{a not in H} delta_a * prod_{H \ S(H)} rho_b * prod_{S(H)} mu_e`
//!
//! and `D`, `d` are the sums over all full sets. A source with `mu_e = 0`
//! has no point where its block vanishes while its parents do not.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{determinant, integer_kernel_basis, ExactInteger};
use crate::reduce::ReductionTrace;
use crate::system::{exponent_matrix, BinomialSystem, ZeroPattern};

/// Default upper bound on enumerated full subgraphs.
pub const DEFAULT_CAP: u64 = 1 << 20;

/// Default local-block limit of the bounded-local path.
pub const DEFAULT_LOCAL_LIMIT: usize = 20;

fn mul<W: ExactInteger>(a: &W, b: &W) -> Result<W> {
    a.checked_mul(b).ok_or(Error::Overflow("solution count"))
}

fn add<W: ExactInteger>(a: &W, b: &W) -> Result<W> {
    a.checked_add(b).ok_or(Error::Overflow("solution count"))
}

/// Classification of an irreducible block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    /// All principal minors positive: `mu = rho - delta`.
    Global,
    /// Otherwise: `mu = rho`.
    Local,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Global => "global",
            Label::Local => "local",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeights<W> {
    pub delta: W,
    pub rho: W,
    pub label: Label,
}

impl<W: ExactInteger> VertexWeights<W> {
    pub fn new(delta: W, rho: W, label: Label) -> Self {
        VertexWeights { delta, rho, label }
    }

    pub fn mu(&self) -> Result<W> {
        match self.label {
            Label::Global => self.rho.checked_sub(&self.delta).ok_or(Error::Overflow("solution count")),
            Label::Local => Ok(self.rho.clone()),
        }
    }

    pub fn d(&self) -> Result<W> {
        add(&self.delta, &self.mu()?)
    }
}

/// DAG on vertices `0..s` with edges `a -> b` only for `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDag<W> {
    weights: Vec<VertexWeights<W>>,
    mus: Vec<W>,
    edges: Vec<(usize, usize)>,
    children: Vec<Vec<usize>>,
    parents: Vec<Vec<usize>>,
    members: Vec<Vec<usize>>,
    n_vars: usize,
}

impl<W: ExactInteger> WeightedDag<W> {
    /// One variable per vertex.
    pub fn new(weights: Vec<VertexWeights<W>>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let s = weights.len();
        Self::with_members(weights, edges, (0..s).map(|a| vec![a]).collect(), s)
    }

    /// `members[a]`: the variables (out of `n_vars`) making up block `a`.
    pub fn with_members(
        weights: Vec<VertexWeights<W>>,
        mut edges: Vec<(usize, usize)>,
        members: Vec<Vec<usize>>,
        n_vars: usize,
    ) -> Result<Self> {
        let s = weights.len();
        if members.len() != s {
            return Err(Error::Dimension(format!("{} member lists for {s} vertices", members.len())));
        }
        edges.sort_unstable();
        edges.dedup();
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= b || b >= s) {
            return Err(Error::Contract(format!("edge {a} -> {b} does not respect the vertex order")));
        }
        let mut mus = Vec::with_capacity(s);
        for (a, w) in weights.iter().enumerate() {
            let mu = w.mu()?;
            if w.delta.is_negative() || w.rho.is_negative() || mu.is_negative() {
                return Err(Error::Contract(format!("vertex {a} has invalid weights")));
            }
            mus.push(mu);
        }
        let mut children = vec![Vec::new(); s];
        let mut parents = vec![Vec::new(); s];
        for &(a, b) in &edges {
            children[a].push(b);
            parents[b].push(a);
        }
        Ok(WeightedDag { weights, mus, edges, children, parents, members, n_vars })
    }

    pub fn s(&self) -> usize {
        self.weights.len()
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn weights(&self, a: usize) -> &VertexWeights<W> {
        &self.weights[a]
    }

    pub fn mu(&self, a: usize) -> &W {
        &self.mus[a]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn children(&self, a: usize) -> &[usize] {
        &self.children[a]
    }

    pub fn parents(&self, a: usize) -> &[usize] {
        &self.parents[a]
    }

    pub fn members(&self, a: usize) -> &[usize] {
        &self.members[a]
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.s()).filter(|&a| self.parents[a].is_empty()).collect()
    }

    pub fn local_count(&self) -> usize {
        self.weights.iter().filter(|w| w.label == Label::Local).count()
    }

    fn pattern_of(&self, in_h: &[bool]) -> ZeroPattern {
        ZeroPattern::from_indices(
            self.n_vars,
            (0..self.s()).filter(|&a| in_h[a]).flat_map(|a| self.members[a].iter().copied()),
        )
    }
}

/// One full vertex set and the solutions with the matching zero pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternRow<W> {
    pub vertices: Vec<usize>,
    pub sources: Vec<usize>,
    pub pattern: ZeroPattern,
    pub d_l: W,
    pub mu_l: W,
}

impl<W: ExactInteger> PatternRow<W> {
    /// The row is only kept to show that a zero torus count removes it.
    pub fn is_empty(&self) -> bool {
        self.d_l.is_zero()
    }
}

struct Enumerator<'a, W, F> {
    dag: &'a WeightedDag<W>,
    in_h: Vec<bool>,
    source: Vec<bool>,
    visited: u64,
    cap: u64,
    emit: F,
}

impl<W: ExactInteger, F: FnMut(&[bool], &[bool], &W, &W) -> Result<()>> Enumerator<'_, W, F> {
    fn visit(&mut self, v: usize, d_acc: W, m_acc: W) -> Result<()> {
        let dag = self.dag;
        if v == dag.s() {
            self.visited += 1;
            if self.visited > self.cap {
                return Err(Error::CapExceeded { cap: self.cap });
            }
            return (self.emit)(&self.in_h, &self.source, &d_acc, &m_acc);
        }
        let w = &dag.weights[v];
        if dag.parents[v].iter().any(|&p| self.in_h[p]) {
            self.in_h[v] = true;
            self.visit(v + 1, d_acc, mul(&m_acc, &w.rho)?)?;
            self.in_h[v] = false;
            return Ok(());
        }
        self.visit(v + 1, mul(&d_acc, &w.delta)?, mul(&m_acc, &w.delta)?)?;
        self.in_h[v] = true;
        self.source[v] = true;
        // A source with mu = 0 cannot vanish on its own: the pattern is empty.
        let d_src = if dag.mus[v].is_zero() { W::zero() } else { d_acc };
        self.visit(v + 1, d_src, mul(&m_acc, &dag.mus[v])?)?;
        self.in_h[v] = false;
        self.source[v] = false;
        Ok(())
    }
}

/// Streams every full vertex set with its `(D_L, mu_L)`; fails once more than
/// `cap` sets have been produced. Returns the number of sets visited.
pub fn for_each_full_subgraph<W: ExactInteger>(
    dag: &WeightedDag<W>,
    cap: u64,
    mut f: impl FnMut(PatternRow<W>) -> Result<()>,
) -> Result<u64> {
    let s = dag.s();
    let mut e = Enumerator {
        dag,
        in_h: vec![false; s],
        source: vec![false; s],
        visited: 0,
        cap,
        emit: |in_h: &[bool], source: &[bool], d: &W, m: &W| {
            f(PatternRow {
                vertices: (0..s).filter(|&a| in_h[a]).collect(),
                sources: (0..s).filter(|&a| source[a]).collect(),
                pattern: dag.pattern_of(in_h),
                d_l: d.clone(),
                mu_l: m.clone(),
            })
        },
    };
    e.visit(0, W::one(), W::one())?;
    Ok(e.visited)
}

/// Vertex sets of all full subgraphs, in enumeration order.
pub fn full_subgraphs<W: ExactInteger>(dag: &WeightedDag<W>, cap: u64) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_full_subgraph(dag, cap, |row| {
        out.push(row.vertices);
        Ok(())
    })?;
    Ok(out)
}

pub fn pattern_table<W: ExactInteger>(dag: &WeightedDag<W>, cap: u64) -> Result<Vec<PatternRow<W>>> {
    let mut out = Vec::new();
    for_each_full_subgraph(dag, cap, |row| {
        out.push(row);
        Ok(())
    })?;
    Ok(out)
}

/// Multiplicity at the origin: `prod_{a not in S(G)} rho_a * prod_{S(G)} mu_b`.
pub fn mu_origin<W: ExactInteger>(dag: &WeightedDag<W>) -> Result<W> {
    (0..dag.s()).try_fold(W::one(), |acc, a| {
        let f = if dag.parents[a].is_empty() { &dag.mus[a] } else { &dag.weights[a].rho };
        mul(&acc, f)
    })
}

/// Torus count `prod delta_a`.
pub fn torus_product<W: ExactInteger>(dag: &WeightedDag<W>) -> Result<W> {
    (0..dag.s()).try_fold(W::one(), |acc, a| mul(&acc, &dag.weights[a].delta))
}

/// `d` by the recursion over vertices in order: a vertex whose parent is in
/// `H` contributes `rho`; otherwise it either stays in the torus (`delta`) or
/// becomes a source (`mu`) and forces its children.
pub fn count_recursive<W: ExactInteger>(dag: &WeightedDag<W>) -> Result<W> {
    let torus: Vec<W> = dag.weights.iter().map(|w| w.delta.clone()).collect();
    let forced: Vec<W> = dag.weights.iter().map(|w| w.rho.clone()).collect();
    recurse(dag, &torus, &forced, &dag.mus)
}

/// `D` with the torus count of block `a` scaled by `scale[a]`, by the same
/// recursion: forced vertices count once, sources with `mu = 0` kill the set.
pub fn count_distinct<W: ExactInteger>(dag: &WeightedDag<W>, scale: &[W]) -> Result<W> {
    let torus = dag.weights.iter().zip(scale).map(|(w, q)| mul(&w.delta, q)).collect::<Result<Vec<_>>>()?;
    let forced = vec![W::one(); dag.s()];
    let source: Vec<W> = dag.mus.iter().map(|m| if m.is_zero() { W::zero() } else { W::one() }).collect();
    recurse(dag, &torus, &forced, &source)
}

fn recurse<W: ExactInteger>(dag: &WeightedDag<W>, torus: &[W], forced_w: &[W], source_w: &[W]) -> Result<W> {
    struct Ctx<'a, W> {
        dag: &'a WeightedDag<W>,
        torus: &'a [W],
        forced: &'a [W],
        source: &'a [W],
        memo: HashMap<(usize, FixedBitSet), W>,
    }
    fn eval<W: ExactInteger>(cx: &mut Ctx<'_, W>, r: usize, forced: FixedBitSet) -> Result<W> {
        if r == cx.dag.s() {
            return Ok(W::one());
        }
        let key = (r, forced);
        if let Some(v) = cx.memo.get(&key) {
            return Ok(v.clone());
        }
        let (_, forced) = &key;
        let mut with_children = forced.clone();
        with_children.set(r, false);
        let without = with_children.clone();
        for &c in &cx.dag.children[r] {
            with_children.insert(c);
        }
        let value = if forced.contains(r) {
            mul(&cx.forced[r].clone(), &eval(cx, r + 1, with_children)?)?
        } else {
            let src_w = cx.source[r].clone();
            let source = if src_w.is_zero() { W::zero() } else { mul(&src_w, &eval(cx, r + 1, with_children)?)? };
            let tor_w = cx.torus[r].clone();
            if tor_w.is_zero() {
                source
            } else {
                add(&mul(&tor_w, &eval(cx, r + 1, without)?)?, &source)?
            }
        };
        cx.memo.insert(key, value.clone());
        Ok(value)
    }
    let mut cx = Ctx { dag, torus, forced: forced_w, source: source_w, memo: HashMap::new() };
    eval(&mut cx, 0, FixedBitSet::with_capacity(dag.s()))
}

/// `d` as a sum of `prod_X rho * prod_{not X} delta` over at most `2^N`
/// sets `X`, `N` the number of local vertices. A global vertex whose children
/// all lie in `X` always joins `X`: its torus and source terms add up to `rho`.
///
/// Returns `(d, number of summands)`.
pub fn count_bounded_local<W: ExactInteger>(dag: &WeightedDag<W>, n_max: usize) -> Result<(W, u64)> {
    let local = dag.local_count();
    if local > n_max {
        return Err(Error::TooManyLocalBlocks { local, limit: n_max });
    }
    let s = dag.s();
    let mut family = vec![FixedBitSet::with_capacity(s)];
    for r in (0..s).rev() {
        let label = dag.weights[r].label;
        let mut next = Vec::with_capacity(family.len() * 2);
        for x in family {
            let closed = dag.children[r].iter().all(|&c| x.contains(c));
            match (label, closed) {
                (Label::Global, true) => {
                    let mut y = x;
                    y.insert(r);
                    next.push(y);
                }
                (Label::Local, true) => {
                    let mut y = x.clone();
                    y.insert(r);
                    next.push(x);
                    next.push(y);
                }
                (_, false) => next.push(x),
            }
        }
        family = next;
    }
    let mut total = W::zero();
    for x in &family {
        let term = (0..s).try_fold(W::one(), |acc, a| {
            let w = &dag.weights[a];
            mul(&acc, if x.contains(a) { &w.rho } else { &w.delta })
        })?;
        total = add(&total, &term)?;
    }
    Ok((total, family.len() as u64))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Method {
    Enumerate,
    Recursive,
    #[default]
    Auto,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountOptions {
    pub cap: u64,
    pub totals_only: bool,
    pub local_limit: usize,
    pub method: Method,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { cap: DEFAULT_CAP, totals_only: false, local_limit: DEFAULT_LOCAL_LIMIT, method: Method::Auto }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport<W> {
    /// Torus solutions.
    pub delta: W,
    /// Relation vectors `nu` with `prod c_j^{nu_j} = 1` needed for torus
    /// solutions when `det B = 0`.
    pub torus_conditions: Option<Vec<Vec<W>>>,
    pub mu_origin: W,
    /// Distinct solutions.
    pub distinct: W,
    /// Solutions counted with multiplicity.
    pub d: W,
    pub patterns: Option<Vec<PatternRow<W>>>,
    pub enumeration_cost: u64,
    pub fast_path_used: bool,
}

/// All counts of the reduced system.
pub fn count_all<W: ExactInteger>(dag: &WeightedDag<W>, opts: &CountOptions) -> Result<CountReport<W>> {
    let delta = torus_product(dag)?;
    let mu0 = mu_origin(dag)?;
    let enumerate = !opts.totals_only || opts.method == Method::Enumerate;
    let (mut d, mut distinct, mut patterns, mut cost) = (W::zero(), W::zero(), None, 0);
    if enumerate {
        let table = pattern_table(dag, opts.cap)?;
        cost = table.len() as u64;
        for row in &table {
            d = add(&d, &row.mu_l)?;
            distinct = add(&distinct, &row.d_l)?;
        }
        if !opts.totals_only {
            patterns = Some(table);
        }
    }
    let mut fast_path_used = false;
    match opts.method {
        Method::Enumerate => {}
        Method::Recursive => {
            d = count_recursive(dag)?;
            if opts.totals_only {
                distinct = count_distinct(dag, &vec![W::one(); dag.s()])?;
            }
        }
        Method::Auto if opts.totals_only => {
            d = match count_bounded_local(dag, opts.local_limit) {
                Ok((v, _)) => {
                    fast_path_used = true;
                    v
                }
                Err(Error::TooManyLocalBlocks { .. }) => count_recursive(dag)?,
                Err(e) => return Err(e),
            };
            distinct = count_distinct(dag, &vec![W::one(); dag.s()])?;
        }
        Method::Auto => {}
    }
    Ok(CountReport {
        delta,
        torus_conditions: None,
        mu_origin: mu0,
        distinct,
        d,
        patterns,
        enumeration_cost: cost,
        fast_path_used,
    })
}

/// Torus count of an arbitrary square system and, when `det B = 0`, the
/// coefficient conditions under which torus solutions exist at all.
pub fn torus_count(sys: &BinomialSystem) -> (BigInt, Option<Vec<Vec<BigInt>>>) {
    let b = exponent_matrix(sys);
    let det = determinant(&b).expect("square");
    if det.is_zero() {
        (BigInt::zero(), Some(integer_kernel_basis(&b).expect("exact")))
    } else {
        (det.abs(), None)
    }
}

/// Per-block product of the reduction multipliers of its variables.
pub fn block_multipliers(dag: &WeightedDag<BigInt>, trace: &ReductionTrace) -> Vec<BigInt> {
    (0..dag.s())
        .map(|a| dag.members(a).iter().map(|&v| trace.var_multiplier[v].clone()).product())
        .collect()
}

/// Moves a reduced report to the original variables.
///
/// Multiplicities scale by `Q |det B2|`. Distinct points scale by `|det B2|`
/// and by the multiplier of every reduction whose merged variable is nonzero
/// on the pattern: the `q` branches only meet where that variable vanishes.
pub fn lift_report(
    report: &CountReport<BigInt>,
    trace: &ReductionTrace,
    dag: &WeightedDag<BigInt>,
) -> Result<CountReport<BigInt>> {
    if dag.n_vars() != trace.n_reduced() {
        return Err(Error::Contract(format!(
            "DAG covers {} variables but the trace reduces to {}",
            dag.n_vars(),
            trace.n_reduced()
        )));
    }
    let det2 = trace
        .derived_factor
        .clone()
        .ok_or_else(|| Error::Contract("the trace lacks |det B2|".into()))?;
    let factor = &trace.q_total * &det2;
    let qa = block_multipliers(dag, trace);

    let patterns = report.patterns.as_ref().map(|rows| {
        rows.iter()
            .map(|row| {
                let outside: BigInt =
                    (0..dag.s()).filter(|a| !row.vertices.contains(a)).map(|a| qa[a].clone()).product();
                PatternRow {
                    vertices: row.vertices.clone(),
                    sources: row.sources.clone(),
                    pattern: trace.lift_pattern(&row.pattern),
                    d_l: &row.d_l * &det2 * outside,
                    mu_l: &row.mu_l * &factor,
                }
            })
            .collect::<Vec<_>>()
    });
    let distinct = match &patterns {
        Some(rows) => rows.iter().map(|r| &r.d_l).sum(),
        None => &det2 * count_distinct(dag, &qa)?,
    };
    let mu_origin = if trace.invertible_vars.is_empty() { &report.mu_origin * &factor } else { BigInt::zero() };
    Ok(CountReport {
        delta: &report.delta * &factor,
        torus_conditions: report.torus_conditions.clone(),
        mu_origin,
        distinct,
        d: &report.d * &factor,
        patterns,
        enumeration_cost: report.enumeration_cost,
        fast_path_used: report.fast_path_used,
    })
}
