//! Parametric reduction to normal form and the polynomial-time gci decision.
//!
//! A binomial `x_a^l - c x_b^m` whose monomials are pure powers of two
//! different variables is eliminated by the monomial substitution
//! `x_b -> u^{l/q}`, `x_a -> u^{m/q}` with `q = gcd(l, m)`. Every count of the
//! original system is recovered from the reduced one through the multipliers
//! recorded in a [`ReductionTrace`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::preprocess::{check_preinv, derive_with, PreinvFailure};
use crate::system::{
    contains_origin, normal_form_assignment, Binomial, BinomialSystem, ExponentVector, ZeroPattern,
};

/// Largest system the exhaustive subset oracle accepts.
pub const EXHAUSTIVE_LIMIT: usize = 25;

fn support_mask(v: &ExponentVector) -> u64 {
    v.support().fold(0, |m, i| m | 1 << i)
}

/// A set `K` with `|Z(K)| > |K|`, if one exists. Exhaustive over all `2^n` subsets.
pub fn subset_criterion_witness(sys: &BinomialSystem) -> Result<Option<ZeroPattern>> {
    let n = sys.n();
    if !contains_origin(sys) {
        return Err(Error::Precondition("the subset criterion needs every monomial to be non-constant".into()));
    }
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge { what: "variables", limit: EXHAUSTIVE_LIMIT, got: n });
    }
    let masks: Vec<(u64, u64)> =
        sys.binomials().iter().map(|b| (support_mask(b.alpha()), support_mask(b.beta()))).collect();
    for k in 1u64..(1u64 << n) {
        let z = masks.iter().filter(|&&(a, b)| a & k != 0 && b & k != 0).count() as u32;
        if z > k.count_ones() {
            return Ok(Some(ZeroPattern::from_mask(n, k)));
        }
    }
    Ok(None)
}

/// `|Z(K)| <= |K|` for every `K`.
pub fn subset_criterion_oracle(sys: &BinomialSystem) -> Result<bool> {
    Ok(subset_criterion_witness(sys)?.is_none())
}

/// One elimination: binomial `binomial` read as `x_a^l - c x_b^m`, with
/// `x_a -> u^{exp_a}` and `x_b -> u^{exp_b}`. The new variable `u` takes the
/// position `min(a, b)` and position `max(a, b)` disappears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub binomial: usize,
    pub var_a: usize,
    pub var_b: usize,
    pub exp_a: u64,
    pub exp_b: u64,
    pub q: u64,
}

impl ReductionStep {
    pub fn merged_var(&self) -> usize {
        self.var_a.min(self.var_b)
    }

    pub fn removed_var(&self) -> usize {
        self.var_a.max(self.var_b)
    }
}

/// Eliminates binomial `j`, which must be `x_a^l - c x_b^m` with `a != b`.
pub fn parametric_reduction_step(sys: &BinomialSystem, j: usize) -> Result<(BinomialSystem, ReductionStep)> {
    let b = sys
        .binomials()
        .get(j)
        .ok_or_else(|| Error::Contract(format!("no binomial with index {j}")))?;
    let ((a, l), (bv, m)) = b
        .distinct_pure_pair()
        .ok_or_else(|| Error::Contract(format!("binomial {j} is not a pure power pair in two variables")))?;
    let q = l.gcd(&m);
    let step = ReductionStep { binomial: j, var_a: a, var_b: bv, exp_a: m / q, exp_b: l / q, q };
    let (keep, drop) = (step.merged_var(), step.removed_var());

    let subst = |v: &ExponentVector| -> Result<ExponentVector> {
        let merged = v
            .get(a)
            .checked_mul(step.exp_a)
            .and_then(|x| v.get(bv).checked_mul(step.exp_b).and_then(|y| x.checked_add(y)))
            .ok_or(Error::Overflow("exponent substitution"))?;
        Ok(ExponentVector::new(
            (0..v.len())
                .filter(|&i| i != drop)
                .map(|i| if i == keep { merged } else { v.get(i) })
                .collect(),
        ))
    };

    let binomials = sys
        .binomials()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != j)
        .map(|(_, p)| Ok(Binomial::from_parts(subst(p.alpha())?, subst(p.beta())?)))
        .collect::<Result<Vec<_>>>()?;
    let mut next = BinomialSystem::new(binomials)?;
    if let Some(names) = sys.variable_names() {
        let kept: Vec<String> = names.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, s)| s.clone()).collect();
        next = next.with_names(kept)?;
    }
    Ok((next, step))
}

/// A reduction step together with where it sits in the original system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracedStep {
    pub step: ReductionStep,
    /// Original index of the eliminated binomial.
    pub original_binomial: usize,
    /// Original variables collapsed onto `u` by this step.
    pub merged_fiber: Vec<usize>,
    /// Variable of the final reduced system that contains `u`.
    pub final_var: usize,
}

/// Everything needed to lift counts from the reduced system back to the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub n_original: usize,
    pub invertible_vars: Vec<usize>,
    /// `|det B2|`; absent when the caller asserted `det B != 0` and it was not computed.
    pub derived_factor: Option<BigInt>,
    pub steps: Vec<TracedStep>,
    /// Product of all step multipliers `q`.
    pub q_total: BigInt,
    /// `var_fibers[v]`: original variables represented by reduced variable `v`.
    pub var_fibers: Vec<Vec<usize>>,
    /// `var_multiplier[v]`: product of `q` over the steps that ended in `v`.
    pub var_multiplier: Vec<BigInt>,
    /// `binomial_origin[i]`: original index of normalized binomial `i`.
    pub binomial_origin: Vec<usize>,
}

impl ReductionTrace {
    /// Trace of a system that needs no preprocessing and no reduction.
    pub fn identity(n: usize) -> Self {
        ReductionTrace {
            n_original: n,
            invertible_vars: Vec::new(),
            derived_factor: Some(BigInt::one()),
            steps: Vec::new(),
            q_total: BigInt::one(),
            var_fibers: (0..n).map(|i| vec![i]).collect(),
            var_multiplier: vec![BigInt::one(); n],
            binomial_origin: (0..n).collect(),
        }
    }

    pub fn n_reduced(&self) -> usize {
        self.var_fibers.len()
    }

    /// `Q * |det B2|`, the factor applied to multiplicities.
    pub fn total_factor(&self) -> BigInt {
        &self.q_total * self.derived_factor.clone().unwrap_or_else(BigInt::one)
    }

    /// Original zero pattern of a reduced one: the union of the fibers.
    pub fn lift_pattern(&self, reduced: &ZeroPattern) -> ZeroPattern {
        ZeroPattern::from_indices(
            self.n_original,
            reduced.indices().into_iter().flat_map(|v| self.var_fibers[v].iter().copied()),
        )
    }
}

/// Why a system is not a gci.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Number of non-invertible variables differs from the binomials involving them.
    RankMismatch { r: usize, s: usize },
    /// The invertible part has a singular exponent block.
    SingularInvertibleBlock,
    /// After reduction no monomial is a pure power of the variable with fiber
    /// `variables`. `witness` is a set `K` of original variables with
    /// `|Z(K)| > |K|` in the derived system.
    MissingPurePower { variables: Vec<usize>, witness: ZeroPattern },
}

impl std::fmt::Display for Certificate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Certificate::RankMismatch { r, s } => write!(
                f,
                "{r} variables can vanish but {s} binomials involve them in both monomials"
            ),
            Certificate::SingularInvertibleBlock => {
                write!(f, "the exponent block of the invertible variables is singular")
            }
            Certificate::MissingPurePower { variables, witness } => {
                let one_based = |v: &[usize]| v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(",");
                write!(
                    f,
                    "no pure power of the reduced variable over {{{}}}; K = {{{}}} has |Z(K)| > |K|",
                    one_based(variables),
                    one_based(&witness.indices())
                )
            }
        }
    }
}

impl From<PreinvFailure> for Certificate {
    fn from(f: PreinvFailure) -> Self {
        match f {
            PreinvFailure::RankMismatch { r, s } => Certificate::RankMismatch { r, s },
            PreinvFailure::SingularInvertibleBlock => Certificate::SingularInvertibleBlock,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Normal-form system: binomial `i` reads `x_i^{r_i} - c x^{beta_i}`.
    Gci { system: BinomialSystem, r: Vec<u64> },
    NotGci(Certificate),
    /// The reduction cannot be carried out in machine-word exponents.
    Unsupported(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GciVerdict {
    pub outcome: Outcome,
    pub trace: ReductionTrace,
}

impl GciVerdict {
    pub fn is_gci(&self) -> bool {
        matches!(self.outcome, Outcome::Gci { .. })
    }

    pub fn normalized(&self) -> Option<&BinomialSystem> {
        match &self.outcome {
            Outcome::Gci { system, .. } => Some(system),
            _ => None,
        }
    }
}

/// Decides whether `sys` is a gci and, if so, brings it to normal form.
pub fn normalize(sys: &BinomialSystem) -> GciVerdict {
    normalize_by(sys, false, |_| 0)
}

/// As [`normalize`]. With `assume_nonsingular` the caller vouches for
/// `det B != 0` and the determinant of the invertible block is skipped.
pub fn is_gci(sys: &BinomialSystem, assume_nonsingular: bool) -> GciVerdict {
    normalize_by(sys, assume_nonsingular, |_| 0)
}

/// [`normalize`] with a custom reduction order: `choose` receives the
/// eligible binomial indices (ascending) and returns a position in that list.
pub fn normalize_by(
    sys: &BinomialSystem,
    assume_nonsingular: bool,
    mut choose: impl FnMut(&[usize]) -> usize,
) -> GciVerdict {
    let dec = derive_with(sys, !assume_nonsingular);
    let mut trace = ReductionTrace {
        n_original: sys.n(),
        invertible_vars: dec.invertible_vars.clone(),
        derived_factor: dec.det_b2.as_ref().map(|d| d.abs()),
        steps: Vec::new(),
        q_total: BigInt::one(),
        var_fibers: Vec::new(),
        var_multiplier: Vec::new(),
        binomial_origin: Vec::new(),
    };
    if let Err(failure) = check_preinv(&dec) {
        return GciVerdict { outcome: Outcome::NotGci(failure.into()), trace };
    }
    let mut cur = dec.derived().expect("r == s after the check");
    let mut fibers: Vec<Vec<usize>> = dec.var_order[..dec.r].iter().map(|&v| vec![v]).collect();
    let mut origin: Vec<usize> = dec.binomial_order[..dec.s].to_vec();

    loop {
        let eligible: Vec<usize> = (0..cur.n()).filter(|&j| cur.binomial(j).distinct_pure_pair().is_some()).collect();
        if eligible.is_empty() {
            break;
        }
        let j = eligible[choose(&eligible).min(eligible.len() - 1)];
        let (next, step) = match parametric_reduction_step(&cur, j) {
            Ok(done) => done,
            Err(e) => return GciVerdict { outcome: Outcome::Unsupported(e.to_string()), trace },
        };
        let (keep, drop) = (step.merged_var(), step.removed_var());
        let mut merged = fibers.remove(drop);
        merged.extend_from_slice(&fibers[keep]);
        merged.sort_unstable();
        fibers[keep] = merged.clone();
        for s in &mut trace.steps {
            if s.final_var == drop {
                s.final_var = keep;
            } else if s.final_var > drop {
                s.final_var -= 1;
            }
        }
        trace.q_total *= step.q;
        trace.steps.push(TracedStep { original_binomial: origin.remove(j), merged_fiber: merged, final_var: keep, step });
        cur = next;
    }
    trace.var_multiplier = vec![BigInt::one(); cur.n()];
    for s in &trace.steps {
        trace.var_multiplier[s.final_var] *= s.step.q;
    }

    let mut has_pure = vec![false; cur.n()];
    for b in cur.binomials() {
        for (v, _) in [b.alpha().pure_power(), b.beta().pure_power()].into_iter().flatten() {
            has_pure[v] = true;
        }
    }
    if let Some(i) = (0..cur.n()).find(|&i| !has_pure[i]) {
        let witness = ZeroPattern::from_indices(
            sys.n(),
            fibers.iter().enumerate().filter(|&(v, _)| v != i).flat_map(|(_, f)| f.iter().copied()),
        );
        let outcome = Outcome::NotGci(Certificate::MissingPurePower { variables: fibers[i].clone(), witness });
        trace.var_fibers = fibers;
        return GciVerdict { outcome, trace };
    }

    let nf = normal_form_assignment(&cur).expect("every variable has a pure power and no binomial has two");
    let mut binomial_origin = vec![0; cur.n()];
    for (j, &v) in nf.var_of.iter().enumerate() {
        binomial_origin[v] = origin[j];
    }
    trace.binomial_origin = binomial_origin;
    trace.var_fibers = fibers;
    GciVerdict { outcome: Outcome::Gci { system: nf.apply(&cur), r: nf.r }, trace }
}
