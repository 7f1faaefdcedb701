#![allow(dead_code)]

use std::collections::HashMap;
use std::process::{Command, Output};

use nalgebra::DMatrix;
use nilkit_core::rational::{q, to_f64};
use nilkit_core::{AlgebraBuilder, ComplexStructure, NilpotentLieAlgebra, QMatrix, RationalPolynomial};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

pub const H3_FILE: &str = r#"{
  "dim": 3,
  "basis": ["X", "Y", "Z"],
  "center": ["Z"],
  "brackets": [{"left": "X", "right": "Y", "result": {"Z": "1"}}],
  "J": [["0", "-1"], ["1", "0"]]
}
"#;

/// `[X,Y] = U, [X,U] = Z, [Y,V] = Z` with `J: X → U → −X, Y → V → −Y`.
pub const THREE_STEP_FILE: &str = r#"{
  "dim": 5,
  "basis": ["X", "Y", "U", "V", "Z"],
  "center": ["Z"],
  "brackets": [
    {"left": "X", "right": "Y", "result": {"U": "1"}},
    {"left": "X", "right": "U", "result": {"Z": "1"}},
    {"left": "Y", "right": "V", "result": {"Z": "1"}}
  ],
  "J": [["0", "0", "-1", "0"], ["0", "0", "0", "-1"], ["1", "0", "0", "0"], ["0", "1", "0", "0"]]
}
"#;

pub fn three_step() -> (NilpotentLieAlgebra, ComplexStructure) {
    let alg = AlgebraBuilder::new(&["X", "Y", "U", "V", "Z"], &["Z"])
        .bracket("X", "Y", &[("U", q(1))])
        .bracket("X", "U", &[("Z", q(1))])
        .bracket("Y", "V", &[("Z", q(1))])
        .build()
        .unwrap();
    let mut j = QMatrix::zeros(4, 4);
    for (r, c, v) in [(2, 0, 1), (0, 2, -1), (3, 1, 1), (1, 3, -1)] {
        j[(r, c)] = q(v);
    }
    (alg, ComplexStructure::new(j))
}

/// Determinant by row-wise Laplace expansion memoized on remaining columns.
pub fn det_oracle(m: &[Vec<RationalPolynomial>], nvars: usize) -> RationalPolynomial {
    fn rec(
        m: &[Vec<RationalPolynomial>],
        row: usize,
        cols: u32,
        nvars: usize,
        memo: &mut HashMap<u32, RationalPolynomial>,
    ) -> RationalPolynomial {
        if row == m.len() {
            return RationalPolynomial::one(nvars);
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = RationalPolynomial::zero(nvars);
        let mut positive = true;
        for c in 0..m.len() {
            if cols & (1 << c) == 0 {
                continue;
            }
            if !m[row][c].is_zero() {
                let t = &m[row][c] * &rec(m, row + 1, cols & !(1 << c), nvars, memo);
                acc = if positive { &acc + &t } else { &acc - &t };
            }
            positive = !positive;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let n = m.len();
    rec(m, 0, (1u32 << n) - 1, nvars, &mut HashMap::new())
}

/// Rank by fraction-free (Bareiss) elimination on the integer matrix
/// obtained by clearing each row's denominators.
pub fn rank_oracle(m: &QMatrix) -> usize {
    let (r, c) = (m.nrows(), m.ncols());
    let mut a: Vec<Vec<BigInt>> = (0..r)
        .map(|i| {
            let l = (0..c).fold(BigInt::one(), |acc, j| acc.lcm(m[(i, j)].denom()));
            (0..c).map(|j| m[(i, j)].numer() * (&l / m[(i, j)].denom())).collect()
        })
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..c {
        let Some(p) = (rank..r).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..r {
            for j in col + 1..c {
                let v = &a[rank][col] * &a[i][j] - &a[i][col] * &a[rank][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Eigenvalue sign counts from a floating symmetric eigensolver; magnitudes
/// under `1e-6` count as zero.
pub fn float_inertia(b: &QMatrix) -> (usize, usize, usize) {
    let n = b.nrows();
    let m = DMatrix::from_fn(n, n, |i, j| to_f64(&b[(i, j)]));
    let mut out = (0, 0, 0);
    for &l in m.symmetric_eigen().eigenvalues.iter() {
        if l.abs() < 1e-6 {
            out.2 += 1;
        } else if l > 0.0 {
            out.0 += 1;
        } else {
            out.1 += 1;
        }
    }
    out
}

pub fn nilkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilkit")).args(args).output().expect("binary runs")
}

pub fn nilkit_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nilkit"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}
