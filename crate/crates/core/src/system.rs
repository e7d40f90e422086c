//! Binomial systems `x^alpha_j - c_j x^beta_j` with generic coefficients.
//!
//! Coefficients are never stored: every invariant computed by this crate is a
//! function of the exponents alone.

use std::cmp::Ordering;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::Matrix;

/// Exponents of one monomial over the ambient variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u64>);

impl ExponentVector {
    pub fn new(entries: Vec<u64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// `power * e_var`.
    pub fn pure(n: usize, var: usize, power: u64) -> Self {
        let mut v = vec![0; n];
        v[var] = power;
        ExponentVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn get(&self, var: usize) -> u64 {
        self.0[var]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, _)| i)
    }

    /// `Some((var, power))` when the monomial is `x_var^power` with `power > 0`.
    pub fn pure_power(&self) -> Option<(usize, u64)> {
        let mut support = self.support();
        let var = support.next()?;
        match support.next() {
            None => Some((var, self.0[var])),
            Some(_) => None,
        }
    }

    pub fn meets(&self, set: &ZeroPattern) -> bool {
        self.support().any(|i| set.contains(i))
    }

    pub fn support_within(&self, set: &[bool]) -> bool {
        self.support().all(|i| set[i])
    }
}

/// One binomial `x^alpha - c x^beta`.
///
/// User-supplied binomials always have `alpha != beta`. Substitutions can
/// produce `x^gamma - c x^gamma`, which for generic `c` is the monomial
/// equation `x^gamma = 0`; such rows carry the `degenerate` flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Binomial {
    alpha: ExponentVector,
    beta: ExponentVector,
    degenerate: bool,
}

impl Binomial {
    pub fn new(alpha: ExponentVector, beta: ExponentVector) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::InvalidSystem(format!(
                "exponent vectors have lengths {} and {}",
                alpha.len(),
                beta.len()
            )));
        }
        if alpha == beta {
            return Err(Error::InvalidSystem("the two monomials of a binomial must differ".into()));
        }
        Ok(Binomial { alpha, beta, degenerate: false })
    }

    pub fn from_slices(alpha: &[u64], beta: &[u64]) -> Result<Self> {
        Self::new(ExponentVector::new(alpha.to_vec()), ExponentVector::new(beta.to_vec()))
    }

    /// The pseudo-binomial `x^gamma - c x^gamma`.
    pub fn degenerate(gamma: ExponentVector) -> Self {
        Binomial { alpha: gamma.clone(), beta: gamma, degenerate: true }
    }

    /// Builds a binomial that is degenerate exactly when both sides coincide.
    pub(crate) fn from_parts(alpha: ExponentVector, beta: ExponentVector) -> Self {
        if alpha == beta {
            Self::degenerate(alpha)
        } else {
            Binomial { alpha, beta, degenerate: false }
        }
    }

    pub fn alpha(&self) -> &ExponentVector {
        &self.alpha
    }

    pub fn beta(&self) -> &ExponentVector {
        &self.beta
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn n_vars(&self) -> usize {
        self.alpha.len()
    }

    /// Exchanging the monomials corresponds to inverting the generic coefficient.
    pub fn swapped(&self) -> Self {
        Binomial { alpha: self.beta.clone(), beta: self.alpha.clone(), degenerate: self.degenerate }
    }

    /// Both monomials are pure powers of two distinct variables.
    pub fn distinct_pure_pair(&self) -> Option<((usize, u64), (usize, u64))> {
        if self.degenerate {
            return None;
        }
        let a = self.alpha.pure_power()?;
        let b = self.beta.pure_power()?;
        (a.0 != b.0).then_some((a, b))
    }
}

/// Square system of `n` binomials in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialSystem {
    n: usize,
    binomials: Vec<Binomial>,
    variable_names: Option<Vec<String>>,
}

impl BinomialSystem {
    pub fn new(binomials: Vec<Binomial>) -> Result<Self> {
        let n = binomials.len();
        if let Some(j) = binomials.iter().position(|b| b.n_vars() != n) {
            return Err(Error::InvalidSystem(format!(
                "binomial {} has {} variables but the system has {n} binomials",
                j + 1,
                binomials[j].n_vars()
            )));
        }
        Ok(BinomialSystem { n, binomials, variable_names: None })
    }

    /// Shorthand for literals: `[(alpha, beta), ...]`.
    pub fn from_exponents(rows: &[(&[u64], &[u64])]) -> Result<Self> {
        let binomials = rows
            .iter()
            .enumerate()
            .map(|(j, (a, b))| {
                Binomial::from_slices(a, b).map_err(|e| match e {
                    Error::InvalidSystem(msg) => Error::InvalidSystem(format!("binomial {}: {msg}", j + 1)),
                    other => other,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(binomials)
    }

    pub fn empty() -> Self {
        BinomialSystem { n: 0, binomials: Vec::new(), variable_names: None }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::InvalidSystem(format!(
                "{} variable names for {} variables",
                names.len(),
                self.n
            )));
        }
        self.variable_names = Some(names);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn binomials(&self) -> &[Binomial] {
        &self.binomials
    }

    pub fn binomial(&self, j: usize) -> &Binomial {
        &self.binomials[j]
    }

    pub fn variable_names(&self) -> Option<&[String]> {
        self.variable_names.as_deref()
    }

    pub fn name(&self, var: usize) -> String {
        match &self.variable_names {
            Some(names) => names[var].clone(),
            None => format!("x{}", var + 1),
        }
    }

    pub fn names(&self) -> Vec<String> {
        (0..self.n).map(|i| self.name(i)).collect()
    }

    /// Same binomials with variables renamed: new variable `k` is old `order[k]`.
    pub fn permute_variables(&self, order: &[usize]) -> Self {
        let binomials = self
            .binomials
            .iter()
            .map(|b| {
                let pick = |v: &ExponentVector| ExponentVector::new(order.iter().map(|&o| v.get(o)).collect());
                Binomial { alpha: pick(&b.alpha), beta: pick(&b.beta), degenerate: b.degenerate }
            })
            .collect();
        let variable_names =
            self.variable_names.as_ref().map(|names| order.iter().map(|&o| names[o].clone()).collect());
        BinomialSystem { n: self.n, binomials, variable_names }
    }

    /// Same system with binomials listed as `order[0], order[1], ...`.
    pub fn permute_binomials(&self, order: &[usize]) -> Self {
        BinomialSystem {
            n: self.n,
            binomials: order.iter().map(|&j| self.binomials[j].clone()).collect(),
            variable_names: self.variable_names.clone(),
        }
    }
}

impl fmt::Display for BinomialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.names();
        let mono = |v: &ExponentVector| -> String {
            let parts: Vec<String> = v
                .support()
                .map(|i| match v.get(i) {
                    1 => names[i].clone(),
                    e => format!("{}^{e}", names[i]),
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        };
        for (j, b) in self.binomials.iter().enumerate() {
            let suffix = if b.degenerate { "  (degenerate)" } else { "" };
            writeln!(f, "p{} = {} - c{}*{}{suffix}", j + 1, mono(&b.alpha), j + 1, mono(&b.beta))?;
        }
        Ok(())
    }
}

/// A set of variable indices, e.g. the coordinates that vanish on a solution.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZeroPattern(FixedBitSet);

impl ZeroPattern {
    pub fn empty(n: usize) -> Self {
        ZeroPattern(FixedBitSet::with_capacity(n))
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        ZeroPattern(bits)
    }

    pub fn from_indices(n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        for i in indices {
            bits.insert(i);
        }
        ZeroPattern(bits)
    }

    /// Pattern from the low `n` bits of a mask.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self::from_indices(n, (0..n).filter(|&i| mask >> i & 1 == 1))
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn len(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_subset(&self, other: &ZeroPattern) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn indices(&self) -> Vec<usize> {
        self.0.ones().collect()
    }
}

impl Ord for ZeroPattern {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.universe(), self.indices()).cmp(&(other.universe(), other.indices()))
    }
}

impl PartialOrd for ZeroPattern {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ZeroPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.ones()).finish()
    }
}

/// `B` with row `j` equal to `alpha_j - beta_j`.
pub fn exponent_matrix(sys: &BinomialSystem) -> Matrix {
    Matrix::from_fn(sys.n, sys.n, |j, i| {
        let b = &sys.binomials[j];
        BigInt::from(b.alpha.get(i)) - BigInt::from(b.beta.get(i))
    })
}

/// `Z(K)`: binomials both of whose monomials involve a variable of `K`.
pub fn zero_set(sys: &BinomialSystem, k: &ZeroPattern) -> Vec<usize> {
    sys.binomials
        .iter()
        .enumerate()
        .filter(|(_, b)| b.alpha.meets(k) && b.beta.meets(k))
        .map(|(j, _)| j)
        .collect()
}

/// The origin is a solution iff no monomial is constant.
pub fn contains_origin(sys: &BinomialSystem) -> bool {
    sys.binomials.iter().all(|b| !b.alpha.is_zero() && !b.beta.is_zero())
}

/// Matching of binomials to variables that puts a system in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalFormAssignment {
    /// `var_of[j]`: variable whose pure power leads binomial `j`.
    pub var_of: Vec<usize>,
    /// Whether binomial `j` is read as `x^beta - c' x^alpha`.
    pub swapped: Vec<bool>,
    /// `r[i]`: exponent of the leading pure power of variable `i`.
    pub r: Vec<u64>,
}

impl NormalFormAssignment {
    /// Rewrites the system so binomial `i` reads `x_i^{r_i} - c x^{beta_i}`.
    pub fn apply(&self, sys: &BinomialSystem) -> BinomialSystem {
        let mut order = vec![0; sys.n];
        for (j, &v) in self.var_of.iter().enumerate() {
            order[v] = j;
        }
        let binomials = order
            .iter()
            .map(|&j| {
                let b = &sys.binomials[j];
                if self.swapped[j] {
                    b.swapped()
                } else {
                    b.clone()
                }
            })
            .collect();
        BinomialSystem { n: sys.n, binomials, variable_names: sys.variable_names.clone() }
    }
}

/// Candidate (variable, swapped, r) readings of binomial `b` in normal form.
fn nf_candidates(b: &Binomial) -> Vec<(usize, bool, u64)> {
    let mut out = Vec::with_capacity(2);
    if let Some((v, r)) = b.alpha.pure_power() {
        if !b.beta.is_zero() {
            out.push((v, false, r));
        }
    }
    if !b.degenerate {
        if let Some((v, r)) = b.beta.pure_power() {
            if !b.alpha.is_zero() && out.iter().all(|&(w, _, _)| w != v) {
                out.push((v, true, r));
            }
        }
    }
    out
}

/// Finds a reordering and reorientation into normal form, if one exists.
///
/// Binomials with a pure power on the `alpha` side keep their orientation;
/// the swap is used only when `beta` is the pure side. When several binomials
/// compete for variables the choice is a bipartite matching (Kuhn's augmenting
/// paths, ascending binomial order).
pub fn normal_form_assignment(sys: &BinomialSystem) -> Option<NormalFormAssignment> {
    let n = sys.n;
    let cands: Vec<Vec<(usize, bool, u64)>> = sys.binomials.iter().map(nf_candidates).collect();
    if cands.iter().any(Vec::is_empty) {
        return None;
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];

    fn augment(
        j: usize,
        cands: &[Vec<(usize, bool, u64)>],
        owner: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &(v, _, _) in &cands[j] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|k| augment(k, cands, owner, seen)) {
                owner[v] = Some(j);
                return true;
            }
        }
        false
    }

    for j in 0..n {
        let mut seen = vec![false; n];
        if !augment(j, &cands, &mut owner, &mut seen) {
            return None;
        }
    }

    let mut var_of = vec![0; n];
    let mut swapped = vec![false; n];
    let mut r = vec![0; n];
    for (v, o) in owner.iter().enumerate() {
        let j = o.expect("perfect matching");
        let &(_, sw, power) = cands[j].iter().find(|c| c.0 == v).expect("matched candidate");
        var_of[j] = v;
        swapped[j] = sw;
        r[v] = power;
    }
    Some(NormalFormAssignment { var_of, swapped, r })
}

/// Binomial `i` is `x_i^{r_i} - c x^{beta_i}` with `r_i > 0` and `beta_i != 0`.
pub fn is_normal_form(sys: &BinomialSystem) -> bool {
    sys.binomials.iter().enumerate().all(|(i, b)| {
        matches!(b.alpha.pure_power(), Some((v, _)) if v == i) && !b.beta.is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn exponent_matrix_of_reduced_example() {
        let b = exponent_matrix(&fixtures::e6());
        let expected = Matrix::from_i64_rows(&[
            &[2, -1, 0, 0, 0, 0],
            &[-8, 6, 0, 0, 0, 0],
            &[-6, 0, -1, 0, 0, 0],
            &[-2, -1, 0, 3, -2, -1],
            &[0, 0, 0, -2, 1, 0],
            &[-3, 0, 0, -1, -1, 2],
        ])
        .unwrap();
        assert_eq!(b, expected);
    }

    #[test]
    fn exponent_matrix_small() {
        let sys = BinomialSystem::from_exponents(&[(&[3], &[1])]).unwrap();
        assert_eq!(exponent_matrix(&sys).to_rows(), vec![vec![big(2)]]);
        let b = exponent_matrix(&fixtures::non_gci_pair());
        assert_eq!(b.to_rows(), vec![vec![big(-1), big(-2)], vec![big(1), big(-1)]]);
    }

    #[test]
    fn zero_set_examples() {
        let e8 = fixtures::e8();
        assert_eq!(zero_set(&e8, &ZeroPattern::from_indices(8, [0])), vec![1]);
        assert!(zero_set(&e8, &ZeroPattern::empty(8)).is_empty());
        let pair = fixtures::non_gci_pair();
        assert_eq!(zero_set(&pair, &ZeroPattern::from_indices(2, [0])), vec![0, 1]);
    }

    #[test]
    fn origin_membership() {
        assert!(contains_origin(&fixtures::e6()));
        assert!(contains_origin(&fixtures::e8()));
        let sys = BinomialSystem::from_exponents(&[(&[1], &[0])]).unwrap();
        assert!(!contains_origin(&sys));
    }

    #[test]
    fn normal_form_of_reduced_example_is_identity() {
        let e6 = fixtures::e6();
        let nf = normal_form_assignment(&e6).unwrap();
        assert_eq!(nf.var_of, (0..6).collect::<Vec<_>>());
        assert_eq!(nf.r, vec![5, 7, 2, 3, 2, 3]);
        assert!(nf.swapped.iter().all(|s| !s));
        assert!(is_normal_form(&e6));
    }

    #[test]
    fn normal_form_reorders_binomials() {
        // x2^3 - x1 x2, x1^2 - x2 x1
        let sys = BinomialSystem::from_exponents(&[(&[0, 3], &[1, 1]), (&[2, 0], &[1, 1])]).unwrap();
        let nf = normal_form_assignment(&sys).unwrap();
        assert_eq!(nf.var_of, vec![1, 0]);
        assert_eq!(nf.r, vec![2, 3]);
        let applied = nf.apply(&sys);
        assert!(is_normal_form(&applied));
    }

    #[test]
    fn normal_form_orientation() {
        // x1 - c x1^2 stays as written: r = 1
        let sys = BinomialSystem::from_exponents(&[(&[1], &[2])]).unwrap();
        assert_eq!(normal_form_assignment(&sys).unwrap().r, vec![1]);
        // x1 x2 - x1^3 reads as x1^3 - c' x1 x2
        let sys = BinomialSystem::from_exponents(&[(&[1, 1], &[3, 0]), (&[0, 2], &[1, 0])]).unwrap();
        let nf = normal_form_assignment(&sys).unwrap();
        assert_eq!(nf.swapped, vec![true, false]);
        assert_eq!(nf.r, vec![3, 2]);
    }

    #[test]
    fn no_normal_form_without_pure_powers() {
        assert!(normal_form_assignment(&fixtures::non_gci_pair()).is_none());
        // constant other side is not normal form
        let sys = BinomialSystem::from_exponents(&[(&[2], &[0])]).unwrap();
        assert!(normal_form_assignment(&sys).is_none());
    }

    #[test]
    fn matching_resolves_competition() {
        // binomial 1 could take x1 or x2, binomial 2 only x1
        let sys = BinomialSystem::from_exponents(&[(&[2, 0], &[0, 3]), (&[1, 0], &[1, 1])]).unwrap();
        let nf = normal_form_assignment(&sys).unwrap();
        assert_eq!(nf.var_of, vec![1, 0]);
        assert!(is_normal_form(&nf.apply(&sys)));
    }

    #[test]
    fn rejects_equal_monomials_and_non_square() {
        assert!(Binomial::from_slices(&[1, 0], &[1, 0]).is_err());
        assert!(Binomial::from_slices(&[1, 0], &[1]).is_err());
        let b = Binomial::from_slices(&[1, 0], &[0, 1]).unwrap();
        assert!(BinomialSystem::new(vec![b]).is_err());
    }

    #[test]
    fn zero_pattern_basics() {
        let mut p = ZeroPattern::empty(5);
        assert!(p.is_empty());
        p.insert(3);
        p.insert(0);
        assert_eq!(p.indices(), vec![0, 3]);
        assert_eq!(p.len(), 2);
        assert!(p.is_subset(&ZeroPattern::full(5)));
        assert_eq!(ZeroPattern::from_mask(5, 0b1001), p);
    }

    fn random_system() -> impl Strategy<Value = BinomialSystem> {
        (1usize..=5).prop_flat_map(|n| {
            prop::collection::vec(
                (prop::collection::vec(0u64..3, n), prop::collection::vec(0u64..3, n)),
                n,
            )
            .prop_filter_map("alpha == beta", |rows| {
                let bs: Option<Vec<Binomial>> = rows
                    .into_iter()
                    .map(|(a, b)| Binomial::new(ExponentVector::new(a), ExponentVector::new(b)).ok())
                    .collect();
                BinomialSystem::new(bs?).ok()
            })
        })
    }

    proptest! {
        #[test]
        fn exponent_matrix_rows_are_differences(sys in random_system()) {
            let b = exponent_matrix(&sys);
            for (j, bin) in sys.binomials().iter().enumerate() {
                for i in 0..sys.n() {
                    let expect = BigInt::from(bin.alpha().get(i)) - BigInt::from(bin.beta().get(i));
                    prop_assert_eq!(b.get(j, i), &expect);
                }
            }
        }

        #[test]
        fn zero_set_is_monotone(sys in random_system(), k in 0u64..32, extra in 0u64..32) {
            let n = sys.n();
            let small = ZeroPattern::from_mask(n, k);
            let large = ZeroPattern::from_mask(n, k | extra);
            let zs = zero_set(&sys, &small);
            let zl = zero_set(&sys, &large);
            prop_assert!(zs.iter().all(|j| zl.contains(j)));
        }
    }

    #[test]
    fn normal_form_systems_have_z_inside_k() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=12);
            let binomials = (0..n)
                .map(|i| {
                    let alpha = ExponentVector::pure(n, i, rng.gen_range(1..4));
                    let mut beta = vec![0u64; n];
                    while beta.iter().all(|&e| e == 0) {
                        for e in beta.iter_mut() {
                            if rng.gen_bool(0.2) {
                                *e = rng.gen_range(1..3);
                            }
                        }
                    }
                    Binomial::from_parts(alpha, ExponentVector::new(beta))
                })
                .collect();
            let sys = BinomialSystem::new(binomials).unwrap();
            assert!(is_normal_form(&sys));
            for mask in 0..(1u64 << n) {
                let k = ZeroPattern::from_mask(n, mask);
                assert!(zero_set(&sys, &k).iter().all(|&j| k.contains(j)));
            }
        }
    }
}
