//! Variables that are invertible modulo the ideal, and the derived system
//! obtained by setting them to 1.

use num_bigint::BigInt;

use crate::linalg::determinant;
use crate::system::{zero_set, Binomial, BinomialSystem, ExponentVector, ZeroPattern};
use crate::Matrix;

/// Least fixpoint: if one monomial of a binomial only involves invertible
/// variables, so does the other. Returns the invertible variables in ascending order.
pub fn invertible_closure(sys: &BinomialSystem) -> Vec<usize> {
    let mut inv = vec![false; sys.n()];
    loop {
        let mut changed = false;
        for b in sys.binomials() {
            for (side, other) in [(b.alpha(), b.beta()), (b.beta(), b.alpha())] {
                if side.support_within(&inv) {
                    for i in other.support() {
                        if !inv[i] {
                            inv[i] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    (0..sys.n()).filter(|&i| inv[i]).collect()
}

/// Splitting of a system into the derived part (non-invertible variables)
/// and the invertible part with exponent block `B2`.
#[derive(Clone, Debug)]
pub struct DerivedDecomposition {
    pub invertible_vars: Vec<usize>,
    /// `var_order[k]`: original index of reordered variable `k`; non-invertible first.
    pub var_order: Vec<usize>,
    /// `binomial_order[k]`: original index of reordered binomial `k`; `Z([r])` first.
    pub binomial_order: Vec<usize>,
    pub reordered: BinomialSystem,
    pub r: usize,
    pub s: usize,
    /// The first `s` binomials restricted to the first `r` variables.
    /// Only meaningful as a square system when `r == s`.
    pub derived_binomials: Vec<Binomial>,
    /// Rows: binomials outside `Z([r])`; columns: invertible variables.
    pub b2: Matrix,
    /// `det B2` when `B2` is square.
    pub det_b2: Option<BigInt>,
}

impl DerivedDecomposition {
    /// The derived square system, available when `r == s`.
    pub fn derived(&self) -> Option<BinomialSystem> {
        if self.r != self.s {
            return None;
        }
        let sys = BinomialSystem::new(self.derived_binomials.clone()).ok()?;
        match self.reordered.variable_names() {
            Some(names) => sys.with_names(names[..self.r].to_vec()).ok(),
            None => Some(sys),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.invertible_vars.is_empty()
    }
}

pub fn derive(sys: &BinomialSystem) -> DerivedDecomposition {
    derive_with(sys, true)
}

/// As [`derive`]; `with_det = false` skips the determinant of `B2`.
pub fn derive_with(sys: &BinomialSystem, with_det: bool) -> DerivedDecomposition {
    let n = sys.n();
    let invertible_vars = invertible_closure(sys);
    let mut is_inv = vec![false; n];
    for &i in &invertible_vars {
        is_inv[i] = true;
    }
    let non_inv: Vec<usize> = (0..n).filter(|&i| !is_inv[i]).collect();
    let r = non_inv.len();
    let var_order: Vec<usize> = non_inv.iter().chain(&invertible_vars).copied().collect();

    let z = zero_set(sys, &ZeroPattern::from_indices(n, non_inv.iter().copied()));
    let s = z.len();
    let mut in_z = vec![false; n];
    for &j in &z {
        in_z[j] = true;
    }
    let binomial_order: Vec<usize> = z.iter().copied().chain((0..n).filter(|&j| !in_z[j])).collect();

    let reordered = sys.permute_variables(&var_order).permute_binomials(&binomial_order);
    let derived_binomials = reordered.binomials()[..s]
        .iter()
        .map(|b| {
            let cut = |v: &ExponentVector| ExponentVector::new(v.entries()[..r].to_vec());
            Binomial::from_parts(cut(b.alpha()), cut(b.beta()))
        })
        .collect();
    let b2 = Matrix::from_fn(n - s, n - r, |row, col| {
        let b = reordered.binomial(s + row);
        BigInt::from(b.alpha().get(r + col)) - BigInt::from(b.beta().get(r + col))
    });
    let det_b2 = (with_det && r == s).then(|| determinant(&b2).expect("square block"));

    DerivedDecomposition { invertible_vars, var_order, binomial_order, reordered, r, s, derived_binomials, b2, det_b2 }
}

/// Why the invertible part rules out a complete intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreinvFailure {
    /// `r` non-invertible variables but `s` binomials involving them on both sides.
    RankMismatch { r: usize, s: usize },
    /// `det B2 = 0`: the invertible part has no or infinitely many torus solutions.
    SingularInvertibleBlock,
}

/// Passes iff `r == s` and `det B2 != 0`. A determinant that was not
/// computed is treated as nonzero.
pub fn check_preinv(dec: &DerivedDecomposition) -> Result<(), PreinvFailure> {
    if dec.r != dec.s {
        return Err(PreinvFailure::RankMismatch { r: dec.r, s: dec.s });
    }
    match &dec.det_b2 {
        Some(d) if d == &BigInt::from(0) => Err(PreinvFailure::SingularInvertibleBlock),
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::system::contains_origin;

    fn sys(rows: &[(&[u64], &[u64])]) -> BinomialSystem {
        BinomialSystem::from_exponents(rows).unwrap()
    }

    #[test]
    fn closure_chains_through_constants() {
        let s = sys(&[(&[1, 0], &[0, 1]), (&[0, 2], &[0, 0])]);
        assert_eq!(invertible_closure(&s), vec![0, 1]);
    }

    #[test]
    fn closure_is_empty_with_origin() {
        assert!(invertible_closure(&fixtures::e8()).is_empty());
        assert!(invertible_closure(&fixtures::e6()).is_empty());
    }

    #[test]
    fn identity_decomposition() {
        let dec = derive(&fixtures::e8());
        assert!(dec.is_identity());
        assert_eq!((dec.r, dec.s), (8, 8));
        assert_eq!(dec.var_order, (0..8).collect::<Vec<_>>());
        assert_eq!(dec.derived().unwrap(), fixtures::e8());
        assert_eq!(dec.det_b2, Some(BigInt::from(1)));
        assert!(check_preinv(&dec).is_ok());
    }

    #[test]
    fn all_invertible() {
        let dec = derive(&sys(&[(&[1, 0], &[0, 1]), (&[0, 2], &[0, 0])]));
        assert_eq!((dec.r, dec.s), (0, 0));
        assert_eq!(dec.derived().unwrap().n(), 0);
        assert_eq!(dec.b2, Matrix::from_i64_rows(&[&[1, -1], &[0, 2]]).unwrap());
        assert_eq!(dec.det_b2, Some(BigInt::from(2)));
        assert!(check_preinv(&dec).is_ok());

        let dec = derive(&sys(&[(&[1], &[0])]));
        assert_eq!(dec.b2, Matrix::from_i64_rows(&[&[1]]).unwrap());
        let dec = derive(&sys(&[(&[1, 0], &[0, 0]), (&[0, 1], &[0, 0])]));
        assert_eq!(dec.det_b2, Some(BigInt::from(1)));
    }

    #[test]
    fn mixed_decomposition() {
        // x1 - c, x1 x2^2 - c x2: x1 invertible, x2 not.
        let s = sys(&[(&[1, 0], &[0, 0]), (&[1, 2], &[0, 1])]);
        let dec = derive(&s);
        assert_eq!(dec.invertible_vars, vec![0]);
        assert_eq!(dec.var_order, vec![1, 0]);
        assert_eq!(dec.binomial_order, vec![1, 0]);
        assert_eq!((dec.r, dec.s), (1, 1));
        let derived = dec.derived().unwrap();
        assert_eq!(derived.binomial(0), &Binomial::from_slices(&[2], &[1]).unwrap());
        assert!(contains_origin(&derived));
        assert!(check_preinv(&dec).is_ok());
    }

    #[test]
    fn failing_conditions() {
        // x1 - c, x1^2 - c: x2 appears nowhere, so r = 1 but s = 0.
        let dec = derive(&sys(&[(&[1, 0], &[0, 0]), (&[2, 0], &[0, 0])]));
        assert_eq!(dec.invertible_vars, vec![0]);
        assert_eq!(check_preinv(&dec), Err(PreinvFailure::RankMismatch { r: 1, s: 0 }));

        let dec = derive(&sys(&[(&[1, 0], &[0, 1]), (&[2, 0], &[0, 2])]));
        assert!(dec.invertible_vars.is_empty());
        assert!(check_preinv(&dec).is_ok());

        let dec = derive(&sys(&[(&[1, 0], &[0, 0]), (&[0, 1], &[1, 0])]));
        assert_eq!(dec.invertible_vars, vec![0, 1]);
        assert!(check_preinv(&dec).is_ok());

        let dec = derive(&sys(&[(&[1, 1], &[0, 0]), (&[2, 2], &[0, 0])]));
        assert_eq!(check_preinv(&dec), Err(PreinvFailure::SingularInvertibleBlock));
    }

    #[test]
    fn passing_decomposition_has_origin() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let n = rng.gen_range(1..=6);
            let rows: Vec<Binomial> = (0..n)
                .map(|_| loop {
                    let mut v = || (0..n).map(|_| if rng.gen_bool(0.35) { rng.gen_range(1..3) } else { 0 }).collect::<Vec<u64>>();
                    let (a, b) = (v(), v());
                    if let Ok(bin) = Binomial::new(ExponentVector::new(a), ExponentVector::new(b)) {
                        break bin;
                    }
                })
                .collect();
            let s = BinomialSystem::new(rows).unwrap();
            let dec = derive(&s);
            if check_preinv(&dec).is_ok() {
                assert!(contains_origin(&dec.derived().unwrap()));
            }
            // block upper-triangular shape: rows below s vanish on the first r columns
            for row in dec.s..s.n() {
                let b = dec.reordered.binomial(row);
                assert!((0..dec.r).all(|c| b.alpha().get(c) == 0 && b.beta().get(c) == 0));
            }
        }
    }
}
