//! End-to-end analysis: decision, normal form, blocks, counts, lifting.

use num_bigint::BigInt;

use crate::blocks::{condensation_dag, triangularize, BlockInfo, TriangularSystem};
use crate::counting::{count_all, lift_report, torus_count, CountOptions, CountReport};
use crate::error::{Error, Result};
use crate::reduce::{normalize_by, GciVerdict, Outcome};
use crate::system::BinomialSystem;
use crate::Dag;

/// Block structure and counts of a gci.
#[derive(Clone, Debug)]
pub struct Structure {
    pub triangular: TriangularSystem,
    pub blocks: Vec<BlockInfo>,
    pub dag: Dag,
    /// Counts of the normal-form system.
    pub reduced: CountReport<BigInt>,
    /// Counts of the input system.
    pub lifted: CountReport<BigInt>,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub input: BinomialSystem,
    pub verdict: GciVerdict,
    /// `|det B|` of the input, or 0 when singular.
    pub torus_delta: BigInt,
    pub torus_conditions: Option<Vec<Vec<BigInt>>>,
    pub structure: Option<Structure>,
}

pub fn analyze(sys: &BinomialSystem, opts: &CountOptions) -> Result<Analysis> {
    analyze_by(sys, opts, |_| 0)
}

/// As [`analyze`] with a custom reduction order (see [`normalize_by`]).
pub fn analyze_by(sys: &BinomialSystem, opts: &CountOptions, choose: impl FnMut(&[usize]) -> usize) -> Result<Analysis> {
    let verdict = normalize_by(sys, false, choose);
    let (torus_delta, torus_conditions) = torus_count(sys);
    let structure = match &verdict.outcome {
        Outcome::Gci { system, .. } => {
            let triangular = triangularize(system)?;
            let (blocks, dag) = condensation_dag(&triangular)?;
            let reduced = count_all(&dag, opts)?;
            let mut lifted = lift_report(&reduced, &verdict.trace, &dag)?;
            lifted.torus_conditions = torus_conditions.clone();
            if lifted.delta != torus_delta {
                return Err(Error::Contract(format!(
                    "lifted torus count {} differs from |det B| = {torus_delta}",
                    lifted.delta
                )));
            }
            Some(Structure { triangular, blocks, dag, reduced, lifted })
        }
        _ => None,
    };
    Ok(Analysis { input: sys.clone(), verdict, torus_delta, torus_conditions, structure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::Label;
    use crate::fixtures;

    fn s(v: &BigInt) -> String {
        v.to_string()
    }

    #[test]
    fn e8_end_to_end() {
        let a = analyze(&fixtures::e8(), &CountOptions::default()).unwrap();
        let st = a.structure.unwrap();
        let labels: Vec<Label> = st.blocks.iter().map(|b| b.label).collect();
        assert_eq!(labels, vec![Label::Global, Label::Local, Label::Local]);
        assert_eq!(s(&st.reduced.d), "1392");
        assert_eq!(s(&st.reduced.mu_origin), "1116");
        assert_eq!(s(&st.lifted.d), "2784");
        assert_eq!(s(&st.lifted.mu_origin), "2232");
        assert_eq!(s(&st.lifted.delta), "40");
        assert_eq!(st.lifted.patterns.as_ref().unwrap().len(), 5);
    }

    #[test]
    fn small_systems() {
        let a = analyze(&fixtures::quadratic_pair(), &CountOptions::default()).unwrap();
        let l = a.structure.unwrap().lifted;
        assert_eq!((s(&l.d), s(&l.mu_origin), s(&l.delta)), ("4".into(), "1".into(), "3".into()));

        let a = analyze(&fixtures::degenerate_pair(), &CountOptions::default()).unwrap();
        let l = a.structure.unwrap().lifted;
        assert_eq!((s(&l.d), s(&l.mu_origin), s(&l.delta), s(&l.distinct)), ("2".into(), "2".into(), "0".into(), "1".into()));
    }

    #[test]
    fn empty_system_has_one_point() {
        let a = analyze(&BinomialSystem::empty(), &CountOptions::default()).unwrap();
        let l = a.structure.unwrap().lifted;
        assert_eq!((s(&l.d), s(&l.distinct)), ("1".into(), "1".into()));
    }

    #[test]
    fn invertible_variables_scale_counts() {
        // x1^2 - c, x1 x2^2 - c x2: two values of x1, and x2 is 0 or c/x1
        let sys = BinomialSystem::from_exponents(&[(&[2, 0], &[0, 0]), (&[1, 2], &[0, 1])]).unwrap();
        let l = analyze(&sys, &CountOptions::default()).unwrap().structure.unwrap().lifted;
        assert_eq!((s(&l.d), s(&l.distinct), s(&l.mu_origin)), ("4".into(), "4".into(), "0".into()));
    }

    #[test]
    fn non_gci_has_no_structure() {
        let a = analyze(&fixtures::non_gci_pair(), &CountOptions::default()).unwrap();
        assert!(!a.verdict.is_gci());
        assert!(a.structure.is_none());
    }
}
