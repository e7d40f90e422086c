//! Small named systems used in documentation, tests and the shipped JSON fixtures.

use crate::system::BinomialSystem;

fn build(rows: &[(&[u64], &[u64])]) -> BinomialSystem {
    BinomialSystem::from_exponents(rows).expect("fixture is well formed")
}

/// Eight binomials in eight variables that reduce to [`e6`] with multiplier 2.
pub fn e8() -> BinomialSystem {
    build(&[
        (&[2, 0, 0, 0, 0, 0, 0, 0], &[0, 3, 0, 0, 0, 0, 0, 0]),
        (&[1, 1, 0, 0, 0, 0, 0, 0], &[1, 0, 1, 0, 0, 0, 0, 0]),
        (&[2, 1, 1, 0, 0, 0, 0, 0], &[0, 0, 7, 0, 0, 0, 0, 0]),
        (&[0, 0, 0, 2, 0, 0, 0, 0], &[2, 0, 0, 3, 0, 0, 0, 0]),
        (&[0, 0, 0, 0, 2, 0, 0, 0], &[0, 0, 0, 0, 0, 4, 0, 0]),
        (&[0, 0, 0, 0, 1, 1, 0, 0], &[0, 1, 1, 0, 0, 0, 2, 1]),
        (&[0, 0, 0, 0, 1, 0, 1, 0], &[0, 0, 0, 0, 0, 0, 2, 0]),
        (&[0, 0, 0, 0, 0, 0, 0, 3], &[1, 0, 0, 0, 0, 1, 1, 1]),
    ])
}

/// Normal, triangular system with blocks {1,2} (global), {3} and {4,5,6} (local).
pub fn e6() -> BinomialSystem {
    build(&[
        (&[5, 0, 0, 0, 0, 0], &[3, 1, 0, 0, 0, 0]),
        (&[0, 7, 0, 0, 0, 0], &[8, 1, 0, 0, 0, 0]),
        (&[0, 0, 2, 0, 0, 0], &[6, 0, 3, 0, 0, 0]),
        (&[0, 0, 0, 3, 0, 0], &[2, 1, 0, 0, 2, 1]),
        (&[0, 0, 0, 0, 2, 0], &[0, 0, 0, 2, 1, 0]),
        (&[0, 0, 0, 0, 0, 3], &[3, 0, 0, 1, 1, 1]),
    ])
}

/// `{x1 x2 - c x1^2 x2^3, x1^2 x2 - c x1 x2^2}`: both binomials vanish on `x1 = 0`.
pub fn non_gci_pair() -> BinomialSystem {
    build(&[(&[1, 1], &[2, 3]), (&[2, 1], &[1, 2])])
}

/// `{x1^2 - c x2, x2^2 - c x1}`: four simple solutions, one at the origin.
pub fn quadratic_pair() -> BinomialSystem {
    build(&[(&[2, 0], &[0, 1]), (&[0, 2], &[1, 0])])
}

/// `{x1^2 - c x2^2, x1 - c x2}`: only the origin, with multiplicity 2.
pub fn degenerate_pair() -> BinomialSystem {
    build(&[(&[2, 0], &[0, 2]), (&[1, 0], &[0, 1])])
}
