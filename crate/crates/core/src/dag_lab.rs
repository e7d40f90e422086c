//! From DAGs back to binomial systems, and the antichain brute force.

use num_bigint::BigInt;

use crate::counting::Label;
use crate::error::{Error, Result};
use crate::system::{Binomial, BinomialSystem, ExponentVector};

/// Largest vertex count the antichain brute force accepts.
pub const ANTICHAIN_LIMIT: usize = 25;

/// Directed graph on `0..s`. Acyclicity is checked by the operations that need it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainDag {
    s: usize,
    edges: Vec<(usize, usize)>,
}

impl PlainDag {
    pub fn new(s: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= s || b >= s || a == b) {
            return Err(Error::InvalidSystem(format!("edge {} -> {} is not between two distinct vertices of 1..{s}", a + 1, b + 1)));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(PlainDag { s, edges })
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    fn parents(&self) -> Vec<Vec<usize>> {
        let mut p = vec![Vec::new(); self.s];
        for &(a, b) in &self.edges {
            p[b].push(a);
        }
        p
    }

    /// Kahn order; fails on a cycle.
    pub fn topological_order(&self) -> Result<Vec<usize>> {
        let mut indeg = vec![0usize; self.s];
        let mut succ = vec![Vec::new(); self.s];
        for &(a, b) in &self.edges {
            indeg[b] += 1;
            succ[a].push(b);
        }
        let mut stack: Vec<usize> = (0..self.s).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.s);
        while let Some(v) = stack.pop() {
            order.push(v);
            for &t in &succ[v] {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        match (0..self.s).find(|&v| indeg[v] > 0) {
            Some(v) => Err(Error::Cyclic(v)),
            None => Ok(order),
        }
    }

    /// `reach[v]`: vertices reachable from `v` by a nonempty path.
    fn reachability(&self) -> Result<Vec<Vec<bool>>> {
        let order = self.topological_order()?;
        let mut succ = vec![Vec::new(); self.s];
        for &(a, b) in &self.edges {
            succ[a].push(b);
        }
        let mut reach = vec![vec![false; self.s]; self.s];
        for &v in order.iter().rev() {
            for &t in &succ[v] {
                let below = reach[t].clone();
                reach[v][t] = true;
                for (u, _) in below.iter().enumerate().filter(|&(_, &r)| r) {
                    reach[v][u] = true;
                }
            }
        }
        Ok(reach)
    }
}

/// `p_a = x_a - (prod over parents b of x_b) * x_a^2`.
pub fn standard_system(dag: &PlainDag) -> Result<BinomialSystem> {
    dag.topological_order()?;
    let s = dag.s;
    let parents = dag.parents();
    let binomials = (0..s)
        .map(|a| {
            let mut beta = vec![0u64; s];
            beta[a] = 2;
            for &b in &parents[a] {
                beta[b] += 1;
            }
            Binomial::new(ExponentVector::pure(s, a, 1), ExponentVector::new(beta))
        })
        .collect::<Result<Vec<_>>>()?;
    BinomialSystem::new(binomials)
}

/// Block weights of a one-variable vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexSpec {
    pub delta: u64,
    pub rho: u64,
    pub label: Label,
}

impl VertexSpec {
    /// `(mu, d)`.
    pub fn mu_d(&self) -> Result<(u64, u64)> {
        let overflow = || Error::InvalidSystem("vertex weights overflow".into());
        match self.label {
            Label::Global => {
                let mu = self
                    .rho
                    .checked_sub(self.delta)
                    .ok_or_else(|| Error::InvalidSystem(format!("global vertex with rho = {} < delta = {}", self.rho, self.delta)))?;
                Ok((mu, self.rho))
            }
            Label::Local => Ok((self.rho, self.rho.checked_add(self.delta).ok_or_else(overflow)?)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractWeightedDag {
    pub dag: PlainDag,
    pub weights: Vec<VertexSpec>,
}

impl AbstractWeightedDag {
    pub fn new(dag: PlainDag, weights: Vec<VertexSpec>) -> Result<Self> {
        if weights.len() != dag.s() {
            return Err(Error::InvalidSystem(format!("{} weight lines for {} vertices", weights.len(), dag.s())));
        }
        dag.topological_order()?;
        for (a, w) in weights.iter().enumerate() {
            if w.rho == 0 {
                return Err(Error::InvalidSystem(format!("vertex {} has rho = 0", a + 1)));
            }
            w.mu_d()?;
        }
        Ok(AbstractWeightedDag { dag, weights })
    }

    /// All-local weights `delta = rho = 1`: the realization is the standard system.
    pub fn standard(dag: PlainDag) -> Self {
        let weights = vec![VertexSpec { delta: 1, rho: 1, label: Label::Local }; dag.s()];
        AbstractWeightedDag { dag, weights }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub system: BinomialSystem,
    /// Vertices whose weights the one-variable construction cannot reproduce.
    pub warnings: Vec<String>,
}

/// Global vertex: `x_a^{d_a} - c (prod parents) x_a^{mu_a}`.
/// Local vertex: `x_a^{mu_a} - c (prod parents) x_a^{d_a}`.
pub fn realize(wdag: &AbstractWeightedDag) -> Result<Realization> {
    let s = wdag.dag.s();
    let parents = wdag.dag.parents();
    let mut warnings = Vec::new();
    let mut binomials = Vec::with_capacity(s);
    for (a, w) in wdag.weights.iter().enumerate() {
        let (mu, d) = w.mu_d()?;
        let (lead, tail) = match w.label {
            Label::Global => (d, mu),
            Label::Local => (mu, d),
        };
        if w.delta == 0 {
            warnings.push(format!("vertex {}: delta = 0 gives a zero diagonal entry, so det B = 0", a + 1));
        }
        if tail == 0 {
            warnings.push(format!(
                "vertex {}: mu = 0 leaves no power of its own variable on the right; the block is absorbed by the reduction",
                a + 1
            ));
        }
        let mut beta = vec![0u64; s];
        beta[a] = tail;
        for &b in &parents[a] {
            beta[b] += 1;
        }
        let alpha = ExponentVector::pure(s, a, lead);
        let beta = ExponentVector::new(beta);
        if alpha == beta {
            warnings.push(format!("vertex {}: both monomials coincide, giving the monomial x{}^{lead}", a + 1, a + 1));
        }
        binomials.push(Binomial::from_parts(alpha, beta));
    }
    Ok(Realization { system: BinomialSystem::new(binomials)?, warnings })
}

/// Adds `a -> c` whenever `c` is reachable from `a`.
pub fn transitive_closure(dag: &PlainDag) -> Result<PlainDag> {
    let reach = dag.reachability()?;
    let edges = (0..dag.s)
        .flat_map(|a| {
            let row = &reach[a];
            (0..dag.s).filter(move |&b| row[b]).map(move |b| (a, b))
        })
        .collect();
    PlainDag::new(dag.s, edges)
}

/// Antichains of the reachability order, by checking all `2^s` subsets.
pub fn count_antichains_bruteforce(dag: &PlainDag) -> Result<BigInt> {
    let s = dag.s;
    if s > ANTICHAIN_LIMIT {
        return Err(Error::TooLarge { what: "vertices", limit: ANTICHAIN_LIMIT, got: s });
    }
    let reach = dag.reachability()?;
    let masks: Vec<u32> = reach.iter().map(|row| (0..s).filter(|&b| row[b]).fold(0u32, |m, b| m | 1 << b)).collect();
    let count = (0u32..(1u32 << s))
        .filter(|&set| (0..s).all(|v| set >> v & 1 == 0 || masks[v] & set == 0))
        .count();
    Ok(BigInt::from(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::CountOptions;
    use crate::pipeline::analyze;

    fn path3() -> PlainDag {
        PlainDag::new(3, vec![(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn standard_system_of_an_edge() {
        let sys = standard_system(&PlainDag::new(2, vec![(0, 1)]).unwrap()).unwrap();
        let expected = BinomialSystem::from_exponents(&[(&[1, 0], &[2, 0]), (&[0, 1], &[1, 2])]).unwrap();
        assert_eq!(sys, expected);
        let edgeless = standard_system(&PlainDag::new(3, vec![]).unwrap()).unwrap();
        assert!(edgeless.binomials().iter().enumerate().all(|(a, b)| b.beta().get(a) == 2 && b.beta().support().count() == 1));
    }

    #[test]
    fn standard_system_analyzes_to_unit_local_blocks() {
        let dag = PlainDag::new(3, vec![(0, 1), (0, 2)]).unwrap();
        let st = analyze(&standard_system(&dag).unwrap(), &CountOptions::default()).unwrap().structure.unwrap();
        assert_eq!(st.blocks.len(), 3);
        for b in &st.blocks {
            assert_eq!(b.label, Label::Local);
            assert_eq!((b.delta.clone(), b.rho.clone(), b.mu.clone()), (1.into(), 1.into(), 1.into()));
        }
        assert_eq!(st.dag.edges(), &[(0, 1), (0, 2)]);
    }

    #[test]
    fn cycles_are_rejected() {
        let cyc = PlainDag::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert!(matches!(standard_system(&cyc), Err(Error::Cyclic(_))));
        assert!(transitive_closure(&cyc).is_err());
        assert!(PlainDag::new(2, vec![(0, 2)]).is_err());
    }

    #[test]
    fn realize_single_vertices() {
        let one = |delta, rho, label| {
            AbstractWeightedDag::new(PlainDag::new(1, vec![]).unwrap(), vec![VertexSpec { delta, rho, label }]).unwrap()
        };
        let r = realize(&one(3, 4, Label::Global)).unwrap();
        assert_eq!(r.system, BinomialSystem::from_exponents(&[(&[4], &[1])]).unwrap());
        assert!(r.warnings.is_empty());
        let r = realize(&one(2, 3, Label::Local)).unwrap();
        assert_eq!(r.system, BinomialSystem::from_exponents(&[(&[3], &[5])]).unwrap());
        let r = realize(&one(0, 3, Label::Local)).unwrap();
        assert_eq!(r.warnings.len(), 2);
        assert!(r.system.binomial(0).is_degenerate());
    }

    #[test]
    fn standard_weights_realize_the_standard_system() {
        let dag = PlainDag::new(4, vec![(0, 1), (0, 2), (2, 3), (1, 3)]).unwrap();
        let r = realize(&AbstractWeightedDag::standard(dag.clone())).unwrap();
        assert_eq!(r.system, standard_system(&dag).unwrap());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(transitive_closure(&path3()).unwrap().edges(), &[(0, 1), (0, 2), (1, 2)]);
        let closed = PlainDag::new(3, vec![(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(transitive_closure(&closed).unwrap(), closed);
    }

    #[test]
    fn antichain_examples() {
        assert_eq!(count_antichains_bruteforce(&PlainDag::new(2, vec![(0, 1)]).unwrap()).unwrap(), BigInt::from(3));
        assert_eq!(count_antichains_bruteforce(&PlainDag::new(5, vec![]).unwrap()).unwrap(), BigInt::from(32));
        assert_eq!(count_antichains_bruteforce(&path3()).unwrap(), BigInt::from(4));
        assert!(count_antichains_bruteforce(&PlainDag::new(26, vec![]).unwrap()).is_err());
    }
}
