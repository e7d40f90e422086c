#![allow(dead_code)]

use std::path::PathBuf;

use binomial_gci::counting::{Label, VertexWeights};
use binomial_gci::dag_lab::PlainDag;
use binomial_gci::system::{Binomial, BinomialSystem, ExponentVector};
use binomial_gci::Dag;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn run_cli(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = binomial_gci::cli::run(std::iter::once("binomial-gci").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

pub fn scratch_file(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn sparse_monomial(rng: &mut ChaCha8Rng, n: usize, max_exp: u64, density: f64) -> Vec<u64> {
    let density = density.min(1.0);
    (0..n).map(|_| if rng.gen_bool(density) { rng.gen_range(1..=max_exp) } else { 0 }).collect()
}

fn pure(n: usize, var: usize, e: u64) -> Vec<u64> {
    let mut v = vec![0; n];
    v[var] = e;
    v
}

/// One binomial of a randomly chosen shape: two pure powers, pure power
/// against a monomial, a constant side, a shared variable, or two monomials.
pub fn random_binomial(rng: &mut ChaCha8Rng, n: usize) -> Binomial {
    loop {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (alpha, beta) = match rng.gen_range(0..10) {
            0 | 1 => (pure(n, a, rng.gen_range(1..=3)), pure(n, b, rng.gen_range(1..=3))),
            2..=4 => (pure(n, a, rng.gen_range(1..=3)), sparse_monomial(rng, n, 2, 2.0 / n as f64)),
            5 => (sparse_monomial(rng, n, 2, 1.5 / n as f64), vec![0; n]),
            6 => {
                let mut beta = sparse_monomial(rng, n, 2, 1.5 / n as f64);
                beta[a] = rng.gen_range(1..=3);
                (pure(n, a, rng.gen_range(1..=3)), beta)
            }
            _ => (sparse_monomial(rng, n, 2, 2.0 / n as f64), sparse_monomial(rng, n, 2, 2.0 / n as f64)),
        };
        if alpha != beta {
            let (alpha, beta) = if rng.gen_bool(0.5) { (alpha, beta) } else { (beta, alpha) };
            return Binomial::new(ExponentVector::new(alpha), ExponentVector::new(beta)).unwrap();
        }
    }
}

pub fn random_system(rng: &mut ChaCha8Rng, n: usize) -> BinomialSystem {
    BinomialSystem::new((0..n).map(|_| random_binomial(rng, n)).collect()).unwrap()
}

/// Normal form `x_i^{r_i} - c x^{beta_i}` with sparse `beta_i`.
pub fn random_normal_form(rng: &mut ChaCha8Rng, n: usize, neighbours: usize) -> BinomialSystem {
    let binomials = (0..n)
        .map(|i| {
            let mut beta = vec![0u64; n];
            for _ in 0..neighbours {
                beta[rng.gen_range(0..n)] += 1;
            }
            if beta.iter().all(|&e| e == 0) || beta.iter().enumerate().all(|(j, &e)| j == i || e == 0) {
                beta[(i + 1) % n] += 1;
            }
            let r = rng.gen_range(1..=4);
            if beta == pure(n, i, r) {
                beta[i] += 1;
            }
            Binomial::new(ExponentVector::pure(n, i, r), ExponentVector::new(beta)).unwrap()
        })
        .collect();
    BinomialSystem::new(binomials).unwrap()
}

/// Normal form whose occurrence graph contains the cycle `1 -> 2 -> ... -> n -> 1`.
pub fn random_irreducible_block(rng: &mut ChaCha8Rng, n: usize) -> BinomialSystem {
    let binomials = (0..n)
        .map(|i| {
            let mut beta = sparse_monomial(rng, n, 3, 0.4);
            if n > 1 {
                let prev = (i + n - 1) % n;
                beta[prev] = beta[prev].max(1);
            }
            let r = rng.gen_range(1..=4);
            if n == 1 && beta[0] == r {
                beta[0] += 1;
            }
            Binomial::new(ExponentVector::pure(n, i, r), ExponentVector::new(beta)).unwrap()
        })
        .collect();
    BinomialSystem::new(binomials).unwrap()
}

pub fn random_plain_dag(rng: &mut ChaCha8Rng, s: usize, p: f64) -> PlainDag {
    let mut order: Vec<usize> = (0..s).collect();
    order.shuffle(rng);
    let mut edges = Vec::new();
    for i in 0..s {
        for j in i + 1..s {
            if rng.gen_bool(p) {
                edges.push((order[i], order[j]));
            }
        }
    }
    PlainDag::new(s, edges).unwrap()
}

pub fn random_weighted_dag(rng: &mut ChaCha8Rng, s: usize) -> Dag {
    let p = rng.gen_range(0.0..0.6);
    let mut edges = Vec::new();
    for a in 0..s {
        for b in a + 1..s {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    let weights = (0..s)
        .map(|_| {
            let label = if rng.gen_bool(0.5) { Label::Global } else { Label::Local };
            let delta = rng.gen_range(0..=4u32);
            let rho = match label {
                Label::Global => rng.gen_range(delta.max(1)..=delta + 5),
                Label::Local => rng.gen_range(1..=6),
            };
            VertexWeights::new(BigInt::from(delta), BigInt::from(rho), label)
        })
        .collect();
    Dag::new(weights, edges).unwrap()
}
