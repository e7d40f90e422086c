//! Triangular block structure of a normal-form system.
//!
//! Binomial `i` of a normal-form system depends on variable `j` when
//! `beta_i[j] != 0`. The strongly connected components of this dependency
//! graph are the irreducible blocks; ordering them topologically gives a
//! block lower-triangular exponent matrix.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::Signed;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};

use crate::counting::{Label, VertexWeights};
use crate::error::{Error, Result};
use crate::linalg::{determinant, is_nonsingular_m_matrix};
use crate::system::{exponent_matrix, is_normal_form, BinomialSystem};
use crate::{Dag, Matrix};

/// Edge `j -> i` whenever binomial `i` consumes variable `j != i`.
/// Node `k` is variable `k`.
pub fn occurrence_graph(sys: &BinomialSystem) -> Result<DiGraph<(), ()>> {
    if !is_normal_form(sys) {
        return Err(Error::Contract("occurrence graph needs a normal-form system".into()));
    }
    let mut g = DiGraph::with_capacity(sys.n(), 0);
    for _ in 0..sys.n() {
        g.add_node(());
    }
    for (i, b) in sys.binomials().iter().enumerate() {
        for j in b.beta().support().filter(|&j| j != i) {
            g.add_edge(NodeIndex::new(j), NodeIndex::new(i), ());
        }
    }
    Ok(g)
}

/// Irreducible blocks, each sorted, listed by smallest member.
pub fn components(sys: &BinomialSystem) -> Result<Vec<Vec<usize>>> {
    let g = occurrence_graph(sys)?;
    let mut comps: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    comps.sort_unstable();
    Ok(comps)
}

/// Normal-form system permuted into block lower-triangular order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularSystem {
    pub system: BinomialSystem,
    /// `perm[k]`: index in the input system of variable (and binomial) `k`.
    pub perm: Vec<usize>,
    /// Blocks as consecutive index ranges of `system`.
    pub blocks: Vec<Vec<usize>>,
    /// Cut points `0 = nu_0 < nu_1 < ... < nu_s = n`.
    pub bounds: Vec<usize>,
}

impl TriangularSystem {
    pub fn r(&self, i: usize) -> u64 {
        self.system.binomial(i).alpha().get(i)
    }
}

/// Topologically orders the blocks, sources first, ties broken by the
/// smallest member, and permutes variables and binomials jointly.
pub fn triangularize(sys: &BinomialSystem) -> Result<TriangularSystem> {
    let comps = components(sys)?;
    let n = sys.n();
    let mut comp_of = vec![0; n];
    for (c, members) in comps.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let k = comps.len();
    let mut succ = vec![Vec::new(); k];
    let mut indeg = vec![0usize; k];
    for (i, b) in sys.binomials().iter().enumerate() {
        for j in b.beta().support() {
            let (from, to) = (comp_of[j], comp_of[i]);
            if from != to && !succ[from].contains(&to) {
                succ[from].push(to);
                indeg[to] += 1;
            }
        }
    }
    // components are sorted by smallest member, so the index is the tie-break key
    let mut ready: BinaryHeap<Reverse<usize>> = (0..k).filter(|&c| indeg[c] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(k);
    while let Some(Reverse(c)) = ready.pop() {
        order.push(c);
        for &t in &succ[c] {
            indeg[t] -= 1;
            if indeg[t] == 0 {
                ready.push(Reverse(t));
            }
        }
    }
    if order.len() != k {
        return Err(Error::Cyclic(comps[order.len()][0]));
    }

    let perm: Vec<usize> = order.iter().flat_map(|&c| comps[c].iter().copied()).collect();
    let mut bounds = vec![0];
    let mut blocks = Vec::with_capacity(k);
    for &c in &order {
        let start = *bounds.last().expect("nonempty");
        let end = start + comps[c].len();
        blocks.push((start..end).collect());
        bounds.push(end);
    }
    let system = sys.permute_variables(&perm).permute_binomials(&perm);
    Ok(TriangularSystem { system, perm, blocks, bounds })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockInfo {
    /// Variables of the block, as indices of the input normal-form system.
    pub index_set: Vec<usize>,
    pub matrix: Matrix,
    pub delta: BigInt,
    pub rho: BigInt,
    pub label: Label,
    pub mu: BigInt,
    pub d: BigInt,
}

impl BlockInfo {
    pub fn weights(&self) -> VertexWeights<BigInt> {
        VertexWeights::new(self.delta.clone(), self.rho.clone(), self.label)
    }
}

/// Global iff the block's exponent matrix is a nonsingular M-matrix.
pub fn classify_block(index_set: Vec<usize>, matrix: Matrix, r: &[u64]) -> Result<BlockInfo> {
    if matrix.rows() != r.len() {
        return Err(Error::Dimension(format!("{} leading exponents for a {}-row block", r.len(), matrix.rows())));
    }
    let global = is_nonsingular_m_matrix(&matrix)
        .map_err(|_| Error::Contract("block matrix has a positive off-diagonal entry".into()))?;
    let delta = determinant(&matrix)?.abs();
    let rho: BigInt = r.iter().map(|&x| BigInt::from(x)).product();
    let (label, mu) = if global { (Label::Global, &rho - &delta) } else { (Label::Local, rho.clone()) };
    if mu.is_negative() {
        return Err(Error::Contract(format!("global block with rho = {rho} < delta = {delta}")));
    }
    let d = &delta + &mu;
    Ok(BlockInfo { index_set, matrix, delta, rho, label, mu, d })
}

/// Classified blocks and the weighted DAG whose vertex `a` is block `a` of
/// `tri`. Vertex members are variables of the system before triangularization.
pub fn condensation_dag(tri: &TriangularSystem) -> Result<(Vec<BlockInfo>, Dag)> {
    let b = exponent_matrix(&tri.system);
    let n = tri.system.n();
    let mut block_of = vec![0; n];
    for (a, blk) in tri.blocks.iter().enumerate() {
        for &i in blk {
            block_of[i] = a;
        }
    }
    let infos = tri
        .blocks
        .iter()
        .map(|blk| {
            let r: Vec<u64> = blk.iter().map(|&i| tri.r(i)).collect();
            classify_block(blk.iter().map(|&i| tri.perm[i]).collect(), b.submatrix(blk, blk), &r)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for (i, bin) in tri.system.binomials().iter().enumerate() {
        for j in bin.beta().support() {
            if block_of[j] != block_of[i] {
                edges.push((block_of[j], block_of[i]));
            }
        }
    }
    let dag = Dag::with_members(
        infos.iter().map(BlockInfo::weights).collect(),
        edges,
        infos.iter().map(|b| b.index_set.clone()).collect(),
        n,
    )?;
    Ok((infos, dag))
}
