#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use nilkit_core::catalog::{catalog_entries, CatalogEntry, Instance};
use nilkit_core::rational::to_f64;
use nilkit_core::{QMatrix, RationalPolynomial, Q};
use num_bigint::BigInt;
use rand::Rng;

/// Determinant by Laplace expansion along rows, memoized on the set of
/// remaining columns. Independent of any Pfaffian code.
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
        let mut sign_pos = true;
        for c in 0..m.len() {
            if cols & (1 << c) == 0 {
                continue;
            }
            let e = &m[row][c];
            if !e.is_zero() {
                let minor = rec(m, row + 1, cols & !(1 << c), nvars, memo);
                let t = e * &minor;
                acc = if sign_pos { &acc + &t } else { &acc - &t };
            }
            sign_pos = !sign_pos;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let n = m.len();
    let mut memo = HashMap::new();
    rec(m, 0, (1u32 << n) - 1, nvars, &mut memo)
}

/// Counts of positive, negative and near-zero eigenvalues from a floating
/// symmetric eigensolver. Eigenvalues with magnitude below `1e-6` count as
/// zero; everything else must clear `1e-9` to be trusted.
pub fn float_inertia(b: &QMatrix) -> (usize, usize, usize) {
    let n = b.nrows();
    let m = DMatrix::from_fn(n, n, |i, j| to_f64(&b[(i, j)]));
    let eig = m.symmetric_eigen();
    let mut out = (0, 0, 0);
    for &l in eig.eigenvalues.iter() {
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

pub fn random_rational<R: Rng>(rng: &mut R, range: i64) -> Q {
    let n: i64 = rng.gen_range(-range..=range);
    let d: i64 = rng.gen_range(1..=range.max(1));
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_vec<R: Rng>(rng: &mut R, len: usize, range: i64) -> Vec<Q> {
    (0..len).map(|_| random_rational(rng, range)).collect()
}

/// All shipped entries, built once per test binary.
pub fn catalog() -> &'static [(CatalogEntry, Instance)] {
    static CELL: OnceLock<Vec<(CatalogEntry, Instance)>> = OnceLock::new();
    CELL.get_or_init(|| {
        catalog_entries()
            .into_iter()
            .map(|e| {
                let inst = e.build().expect("catalog entry builds");
                (e, inst)
            })
            .collect()
    })
}
