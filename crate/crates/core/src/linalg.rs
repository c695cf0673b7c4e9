//! Exact integer linear algebra: Smith normal form, lattices in Hermite
//! normal form, wedge powers, modular rank, and fraction-free elimination.
//!
//! Large sparse matrices go through a unit-pivot elimination phase in
//! machine integers with overflow checks; whatever remains is finished by a
//! dense smallest-pivot reduction over arbitrary-precision integers, so
//! every result is exact. Transform certificates (U, V and their inverses
//! with U A V = D) are produced on request and can be re-verified by
//! multiplication.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;

/// Prime modulus 2^61 - 1 for one-sided rank certification: the rank of an
/// integer matrix mod p never exceeds its rational rank.
pub const MOD_P: u64 = (1 << 61) - 1;

// ---------------------------------------------------------------------------
// Sparse matrices
// ---------------------------------------------------------------------------

/// A sparse integer matrix assembled from (row, col, value) contributions.
/// Repeated positions accumulate by addition.
#[derive(Clone, Debug)]
pub struct SparseMat {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(u32, i64)>>,
}

impl SparseMat {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMat {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn push(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.nrows && c < self.ncols, "entry out of bounds");
        if v != 0 {
            self.rows[r].push((c as u32, v));
        }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMat::new(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.push(i, j, v);
            }
        }
        m
    }

    /// Rows sorted by column with duplicates accumulated and zeros dropped.
    fn normalized_rows(&self) -> Vec<Vec<(u32, i64)>> {
        self.rows
            .iter()
            .map(|row| {
                let mut r = row.clone();
                r.sort_unstable_by_key(|&(c, _)| c);
                let mut out: Vec<(u32, i64)> = Vec::with_capacity(r.len());
                for (c, v) in r {
                    match out.last_mut() {
                        Some(last) if last.0 == c => last.1 += v,
                        _ => out.push((c, v)),
                    }
                }
                out.retain(|&(_, v)| v != 0);
                out
            })
            .collect()
    }

    pub fn to_dense_big(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.ncols]; self.nrows];
        for (i, row) in self.normalized_rows().iter().enumerate() {
            for &(c, v) in row {
                out[i][c as usize] = BigInt::from(v);
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMat {
        let mut t = SparseMat::new(self.ncols, self.nrows);
        for (i, row) in self.normalized_rows().iter().enumerate() {
            for &(c, v) in row {
                t.push(c as usize, i, v);
            }
        }
        t
    }

    /// The nonzero entries as (row, column, value), with duplicates merged.
    pub fn triples(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for (i, row) in self.normalized_rows().iter().enumerate() {
            for &(c, v) in row {
                out.push((i, c as usize, v));
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Smith normal form
// ---------------------------------------------------------------------------

/// Unimodular transforms with u * a * v = diag(factors), plus their inverses
/// as the unimodularity certificate.
#[derive(Clone, Debug)]
pub struct SnfTransforms {
    pub u: Vec<Vec<BigInt>>,
    pub u_inv: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
    pub v_inv: Vec<Vec<BigInt>>,
}

/// Smith normal form data: exact rank and the nonzero invariant factors in
/// their divisibility chain, each positive.
#[derive(Clone, Debug)]
pub struct Snf {
    pub rank: usize,
    pub factors: Vec<BigInt>,
    pub transforms: Option<SnfTransforms>,
}

impl Snf {
    /// Invariant factors greater than one (the torsion part of a cokernel).
    pub fn torsion(&self) -> Vec<BigInt> {
        self.factors
            .iter()
            .filter(|f| !f.is_one())
            .cloned()
            .collect()
    }
}

/// Smith normal form of a sparse matrix, rank and factors only.
///
/// Unit pivots are eliminated in machine integers first; each contributes an
/// invariant factor 1. The residual with no unit entries is finished by the
/// dense reduction. Any overflow falls back to the dense path immediately,
/// so the result is always exact.
pub fn snf_sparse(m: &SparseMat) -> Snf {
    let mut rows: Vec<Option<Vec<(u32, i64)>>> =
        m.normalized_rows().into_iter().map(Some).collect();
    let mut cols: Vec<Vec<u32>> = vec![Vec::new(); m.ncols];
    for (i, row) in rows.iter().enumerate() {
        for &(c, _) in row.as_ref().unwrap() {
            cols[c as usize].push(i as u32);
        }
    }
    let has_unit = |row: &[(u32, i64)]| row.iter().any(|&(_, v)| v == 1 || v == -1);
    let mut units = 0usize;
    'pivots: loop {
        // Sparsest live row that still holds a unit entry.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if let Some(r) = row {
                if !r.is_empty() && has_unit(r) {
                    let nnz = r.len();
                    if best.map_or(true, |(bn, _)| nnz < bn) {
                        best = Some((nnz, i));
                    }
                }
            }
        }
        let Some((_, pr)) = best else { break };
        // Among its unit entries, prefer the column with fewest candidates.
        let prow = rows[pr].as_ref().unwrap().clone();
        let (pc, ps) = prow
            .iter()
            .filter(|&&(_, v)| v == 1 || v == -1)
            .min_by_key(|&&(c, _)| cols[c as usize].len())
            .map(|&(c, v)| (c, v))
            .unwrap();
        let cands = std::mem::take(&mut cols[pc as usize]);
        for j in cands {
            let j = j as usize;
            if j == pr {
                continue;
            }
            let Some(jrow) = rows[j].as_ref() else { continue };
            let Ok(pos) = jrow.binary_search_by_key(&pc, |&(c, _)| c) else {
                continue;
            };
            let mult = jrow[pos].1 * ps;
            match sub_scaled_checked(jrow, &prow, mult) {
                Some(merged) => {
                    for &(c, _) in &prow {
                        if c != pc {
                            cols[c as usize].push(j as u32);
                        }
                    }
                    rows[j] = if merged.is_empty() { None } else { Some(merged) };
                }
                None => break 'pivots,
            }
        }
        rows[pr] = None;
        units += 1;
    }
    // Residual: live rows, columns compressed.
    let live: Vec<Vec<(u32, i64)>> = rows.into_iter().flatten().collect();
    let mut snf = if live.is_empty() {
        Snf {
            rank: 0,
            factors: Vec::new(),
            transforms: None,
        }
    } else {
        let mut used: Vec<u32> = live.iter().flat_map(|r| r.iter().map(|&(c, _)| c)).collect();
        used.sort_unstable();
        used.dedup();
        let colmap: HashMap<u32, usize> = used.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dense: Vec<Vec<BigInt>> = live
            .iter()
            .map(|r| {
                let mut row = vec![BigInt::zero(); used.len()];
                for &(c, v) in r {
                    row[colmap[&c]] = BigInt::from(v);
                }
                row
            })
            .collect();
        snf_dense(&dense, used.len(), false)
    };
    let mut factors = vec![BigInt::one(); units];
    factors.append(&mut snf.factors);
    Snf {
        rank: units + snf.rank,
        factors,
        transforms: None,
    }
}

/// a - mult * b on sorted sparse rows, with overflow checks.
fn sub_scaled_checked(
    a: &[(u32, i64)],
    b: &[(u32, i64)],
    mult: i64,
) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|&(c, _)| c);
        let cb = b.get(j).map(|&(c, _)| c);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = a[i].1.checked_sub(mult.checked_mul(b[j].1)?)?;
                if v != 0 {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i]);
                i += 1;
            }
            (Some(_), Some(_)) | (None, Some(_)) => {
                let v = 0i64.checked_sub(mult.checked_mul(b[j].1)?)?;
                if v != 0 {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
            (Some(_), None) => {
                out.push(a[i]);
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some(out)
}

/// Dense Smith normal form with the smallest-pivot strategy, optionally
/// carrying unimodular transforms and their inverses.
pub fn snf_dense(a0: &[Vec<BigInt>], ncols: usize, with_transforms: bool) -> Snf {
    let m = a0.len();
    let n = ncols;
    let mut a: Vec<Vec<BigInt>> = a0
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.resize(n, BigInt::zero());
            row
        })
        .collect();
    let mut u = if with_transforms { identity_big(m) } else { Vec::new() };
    let mut ui = u.clone();
    let mut v = if with_transforms { identity_big(n) } else { Vec::new() };
    let mut vi = v.clone();
    let tr = with_transforms;

    let mut t = 0usize;
    while t < m.min(n) {
        // Smallest nonzero entry in the trailing block becomes the pivot.
        let mut pick: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !a[i][j].is_zero()
                    && pick.map_or(true, |(pi, pj)| a[i][j].abs() < a[pi][pj].abs())
                {
                    pick = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pick else { break };
        if pi != t {
            a.swap(pi, t);
            if tr {
                u.swap(pi, t);
                swap_cols(&mut ui, pi, t);
            }
        }
        if pj != t {
            swap_cols(&mut a, pj, t);
            if tr {
                swap_cols(&mut v, pj, t);
                vi.swap(pj, t);
            }
        }
        'clean: loop {
            if a[t][t].is_negative() {
                negate_row(&mut a, t);
                if tr {
                    negate_row(&mut u, t);
                    negate_col(&mut ui, t);
                }
            }
            // Column below the pivot.
            for i in (t + 1)..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    row_sub_scaled(&mut a, i, t, &q);
                    if tr {
                        row_sub_scaled(&mut u, i, t, &q);
                        col_add_scaled(&mut ui, t, i, &q);
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(i, t);
                    if tr {
                        u.swap(i, t);
                        swap_cols(&mut ui, i, t);
                    }
                    continue 'clean;
                }
            }
            // Row right of the pivot.
            for j in (t + 1)..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    col_sub_scaled(&mut a, j, t, &q);
                    if tr {
                        col_sub_scaled(&mut v, j, t, &q);
                        row_add_scaled(&mut vi, t, j, &q);
                    }
                }
                if !a[t][j].is_zero() {
                    swap_cols(&mut a, j, t);
                    if tr {
                        swap_cols(&mut v, j, t);
                        vi.swap(j, t);
                    }
                    continue 'clean;
                }
            }
            // Pivot must divide the rest of the trailing block.
            let d = a[t][t].clone();
            let mut offender = None;
            'scan: for i in (t + 1)..m {
                for j in (t + 1)..n {
                    if !(&a[i][j] % &d).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = BigInt::from(-1);
                    row_sub_scaled(&mut a, t, i, &one);
                    if tr {
                        row_sub_scaled(&mut u, t, i, &one);
                        col_add_scaled(&mut ui, i, t, &one);
                    }
                }
                None => break,
            }
        }
        t += 1;
    }
    let factors: Vec<BigInt> = (0..t).map(|i| a[i][i].clone()).collect();
    Snf {
        rank: t,
        factors,
        transforms: if tr {
            Some(SnfTransforms {
                u,
                u_inv: ui,
                v,
                v_inv: vi,
            })
        } else {
            None
        },
    }
}

/// Re-verifies a Smith normal form against the original matrix: transforms
/// multiply back to the diagonal, inverses prove unimodularity, and the
/// factors form a positive divisibility chain.
pub fn verify_snf(a: &[Vec<BigInt>], ncols: usize, snf: &Snf) -> Result<(), String> {
    for (i, w) in snf.factors.windows(2).enumerate() {
        if !(&w[1] % &w[0]).is_zero() {
            return Err(format!("factor {} does not divide factor {}", i, i + 1));
        }
    }
    if snf.factors.iter().any(|f| !f.is_positive()) {
        return Err("nonpositive invariant factor".to_string());
    }
    if snf.factors.len() != snf.rank {
        return Err("rank disagrees with factor count".to_string());
    }
    let Some(trf) = &snf.transforms else {
        return Err("no transforms to verify".to_string());
    };
    let m = a.len();
    let padded: Vec<Vec<BigInt>> = a
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.resize(ncols, BigInt::zero());
            row
        })
        .collect();
    if !is_identity(&mat_mul_big(&trf.u, &trf.u_inv)) {
        return Err("u * u_inv is not the identity".to_string());
    }
    if !is_identity(&mat_mul_big(&trf.v_inv, &trf.v)) {
        return Err("v_inv * v is not the identity".to_string());
    }
    let prod = mat_mul_big(&mat_mul_big(&trf.u, &padded), &trf.v);
    for i in 0..m {
        for j in 0..ncols {
            let expect = if i == j && i < snf.rank {
                snf.factors[i].clone()
            } else {
                BigInt::zero()
            };
            if prod[i][j] != expect {
                return Err(format!("u*a*v disagrees with the diagonal at ({i},{j})"));
            }
        }
    }
    Ok(())
}

/// Solves a * x = c over the integers, if an integer solution exists.
/// The returned solution is re-checked by multiplication.
pub fn solve_z(a: &[Vec<BigInt>], ncols: usize, c: &[BigInt]) -> Option<Vec<BigInt>> {
    let m = a.len();
    assert_eq!(c.len(), m, "right-hand side length mismatch");
    let snf = snf_dense(a, ncols, true);
    let tr = snf.transforms.as_ref().unwrap();
    let uc: Vec<BigInt> = (0..m)
        .map(|i| {
            (0..m)
                .map(|k| &tr.u[i][k] * &c[k])
                .fold(BigInt::zero(), |s, x| s + x)
        })
        .collect();
    let mut y = vec![BigInt::zero(); ncols];
    for i in 0..m {
        if i < snf.rank {
            let (q, r) = uc[i].div_rem(&snf.factors[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !uc[i].is_zero() {
            return None;
        }
    }
    let x: Vec<BigInt> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|k| &tr.v[i][k] * &y[k])
                .fold(BigInt::zero(), |s, x| s + x)
        })
        .collect();
    // Safety net: the solution must reproduce c exactly.
    for i in 0..m {
        let got = (0..ncols)
            .map(|k| &a[i].get(k).cloned().unwrap_or_else(BigInt::zero) * &x[k])
            .fold(BigInt::zero(), |s, v| s + v);
        if got != c[i] {
            return None;
        }
    }
    Some(x)
}

// ---------------------------------------------------------------------------
// Modular rank
// ---------------------------------------------------------------------------

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MOD_P as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MOD_P - 2)
}

/// Rank of the matrix over the prime field with 2^61 - 1 elements. This is
/// a lower bound for the rational rank, with equality away from the finitely
/// many primes dividing some invariant factor.
pub fn rank_mod_p(m: &SparseMat) -> usize {
    let to_mod = |v: i64| -> u64 {
        let r = v.rem_euclid(MOD_P as i64);
        r as u64
    };
    let mut rows: Vec<Option<Vec<(u32, u64)>>> = m
        .normalized_rows()
        .into_iter()
        .map(|r| {
            let row: Vec<(u32, u64)> = r
                .into_iter()
                .map(|(c, v)| (c, to_mod(v)))
                .filter(|&(_, v)| v != 0)
                .collect();
            Some(row)
        })
        .collect();
    let mut cols: Vec<Vec<u32>> = vec![Vec::new(); m.ncols];
    for (i, row) in rows.iter().enumerate() {
        for &(c, _) in row.as_ref().unwrap() {
            cols[c as usize].push(i as u32);
        }
    }
    let mut rank = 0usize;
    loop {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            if let Some(r) = row {
                if !r.is_empty() && best.map_or(true, |(bn, _)| r.len() < bn) {
                    best = Some((r.len(), i));
                }
            }
        }
        let Some((_, pr)) = best else { break };
        let prow = rows[pr].as_ref().unwrap().clone();
        let (pc, pv) = prow
            .iter()
            .min_by_key(|&&(c, _)| cols[c as usize].len())
            .map(|&(c, v)| (c, v))
            .unwrap();
        let pinv = inv_mod(pv);
        let cands = std::mem::take(&mut cols[pc as usize]);
        for j in cands {
            let j = j as usize;
            if j == pr {
                continue;
            }
            let Some(jrow) = rows[j].as_ref() else { continue };
            let Ok(pos) = jrow.binary_search_by_key(&pc, |&(c, _)| c) else {
                continue;
            };
            let mult = mul_mod(jrow[pos].1, pinv);
            let merged = sub_scaled_mod(jrow, &prow, mult);
            for &(c, _) in &prow {
                if c != pc {
                    cols[c as usize].push(j as u32);
                }
            }
            rows[j] = if merged.is_empty() { None } else { Some(merged) };
        }
        rows[pr] = None;
        rank += 1;
    }
    rank
}

fn sub_scaled_mod(a: &[(u32, u64)], b: &[(u32, u64)], mult: u64) -> Vec<(u32, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|&(c, _)| c);
        let cb = b.get(j).map(|&(c, _)| c);
        let take_b = |bv: u64| (MOD_P - mul_mod(mult, bv)) % MOD_P;
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = (a[i].1 + take_b(b[j].1)) % MOD_P;
                if v != 0 {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i]);
                i += 1;
            }
            (Some(_), Some(_)) | (None, Some(_)) => {
                let v = take_b(b[j].1);
                if v != 0 {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
            (Some(_), None) => {
                out.push(a[i]);
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Fraction-free elimination
// ---------------------------------------------------------------------------

/// Determinant of a square matrix by fraction-free elimination.
pub fn det_big(mat: &[Vec<BigInt>]) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(mat.iter().all(|r| r.len() == n), "matrix is not square");
    let mut a = mat.to_vec();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = -sign;
        }
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                let _ = r;
                a[i][j] = q;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Exact rank over the rationals by fraction-free elimination.
pub fn rank_big(mat: &[Vec<BigInt>]) -> usize {
    let m = mat.len();
    if m == 0 {
        return 0;
    }
    let n = mat[0].len();
    let mut a = mat.to_vec();
    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..n {
        let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        for i in (r + 1)..m {
            for j in (c + 1)..n {
                let num = &a[i][j] * &a[r][c] - &a[i][c] * &a[r][j];
                let (q, rem) = num.div_rem(&prev);
                debug_assert!(rem.is_zero());
                let _ = rem;
                a[i][j] = q;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == m {
            break;
        }
    }
    r
}

// ---------------------------------------------------------------------------
// Lattices in Hermite normal form
// ---------------------------------------------------------------------------

/// A sublattice of Z^dim held in canonical Hermite normal form: basis rows
/// with strictly increasing pivot columns, positive pivots, and entries
/// above each pivot reduced into [0, pivot).
///
/// A certified lattice additionally remembers every inserted generator and
/// an integer coefficient matrix expressing the basis in terms of them,
/// re-verifiable by multiplication.
#[derive(Clone, Debug)]
pub struct Lattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    gens: Option<Vec<Vec<BigInt>>>,
    combos: Option<Vec<Vec<BigInt>>>,
}

/// Generator-count cap beyond which certification is dropped.
const CERT_GEN_CAP: usize = 256;

impl PartialEq for Lattice {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.rows == other.rows
    }
}
impl Eq for Lattice {}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            gens: None,
            combos: None,
        }
    }

    /// The zero lattice that will track generator certificates.
    pub fn zero_certified(dim: usize) -> Self {
        Lattice {
            gens: Some(Vec::new()),
            combos: Some(Vec::new()),
            ..Self::zero(dim)
        }
    }

    pub fn standard(dim: usize) -> Self {
        let mut l = Self::zero(dim);
        for i in 0..dim {
            let mut v = vec![BigInt::zero(); dim];
            v[i] = BigInt::one();
            l.insert(v);
        }
        l
    }

    pub fn from_rows(dim: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut l = Self::zero(dim);
        for r in rows {
            l.insert(r.clone());
        }
        l
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis_rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn is_certified(&self) -> bool {
        self.gens.is_some()
    }

    /// Adds a generator; the basis stays in canonical Hermite form.
    pub fn insert(&mut self, v: Vec<BigInt>) {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        if let (Some(gens), Some(combos)) = (&mut self.gens, &mut self.combos) {
            if gens.len() >= CERT_GEN_CAP {
                self.gens = None;
                self.combos = None;
            } else {
                gens.push(v.clone());
                for c in combos.iter_mut() {
                    c.push(BigInt::zero());
                }
            }
        }
        let gen_count = self.gens.as_ref().map_or(0, |g| g.len());
        let mut combo_v = if self.gens.is_some() {
            let mut c = vec![BigInt::zero(); gen_count];
            c[gen_count - 1] = BigInt::one();
            Some(c)
        } else {
            None
        };
        let mut v = v;
        let mut changed = false;
        let mut idx = 0;
        while idx < self.rows.len() {
            let lead = match v.iter().position(|x| !x.is_zero()) {
                Some(l) => l,
                None => break,
            };
            let pc = self.pivots[idx];
            if lead < pc {
                break;
            }
            if !v[pc].is_zero() {
                let (g, s, t) = ext_gcd(&self.rows[idx][pc], &v[pc]);
                if g == self.rows[idx][pc] {
                    let q = &v[pc] / &g;
                    vec_sub_scaled(&mut v, &self.rows[idx], &q);
                    if let (Some(cv), Some(combos)) = (&mut combo_v, &self.combos) {
                        vec_sub_scaled(cv, &combos[idx], &q);
                    }
                } else {
                    let a = self.rows[idx][pc].clone();
                    let b = v[pc].clone();
                    let new_row = vec_comb(&self.rows[idx], &s, &v, &t);
                    let alpha = &a / &g;
                    let beta = &b / &g;
                    let new_v = vec_comb(&v, &alpha, &self.rows[idx], &(-&beta));
                    if let (Some(cv), Some(combos)) = (&mut combo_v, &mut self.combos) {
                        let new_combo_row = vec_comb(&combos[idx], &s, cv, &t);
                        let new_cv = vec_comb(cv, &alpha, &combos[idx], &(-&beta));
                        combos[idx] = new_combo_row;
                        *cv = new_cv;
                    }
                    self.rows[idx] = new_row;
                    v = new_v;
                    changed = true;
                }
            }
            idx += 1;
        }
        if let Some(lead) = v.iter().position(|x| !x.is_zero()) {
            let pos = self
                .pivots
                .iter()
                .position(|&p| p > lead)
                .unwrap_or(self.rows.len());
            self.rows.insert(pos, v);
            self.pivots.insert(pos, lead);
            if let (Some(cv), Some(combos)) = (combo_v, &mut self.combos) {
                combos.insert(pos, cv);
            }
            changed = true;
        }
        if changed {
            self.renormalize();
        }
    }

    /// Canonical form: positive pivots, above-pivot entries in [0, pivot).
    fn renormalize(&mut self) {
        for i in 0..self.rows.len() {
            self.pivots[i] = self.rows[i].iter().position(|x| !x.is_zero()).unwrap();
            if self.rows[i][self.pivots[i]].is_negative() {
                for x in self.rows[i].iter_mut() {
                    *x = -std::mem::take(x);
                }
                if let Some(combos) = &mut self.combos {
                    for x in combos[i].iter_mut() {
                        *x = -std::mem::take(x);
                    }
                }
            }
        }
        for k in 0..self.rows.len() {
            for i in 0..k {
                let pc = self.pivots[k];
                let q = self.rows[i][pc].div_floor(&self.rows[k][pc]);
                if !q.is_zero() {
                    let rk = self.rows[k].clone();
                    vec_sub_scaled(&mut self.rows[i], &rk, &q);
                    if let Some(combos) = &mut self.combos {
                        let ck = combos[k].clone();
                        vec_sub_scaled(&mut combos[i], &ck, &q);
                    }
                }
            }
        }
    }

    /// Integer coefficients of v over the basis rows, if v lies in the
    /// lattice.
    pub fn coefficients_of(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim, "vector dimension mismatch");
        let mut v = v.to_vec();
        let mut coeffs = vec![BigInt::zero(); self.rows.len()];
        for (idx, row) in self.rows.iter().enumerate() {
            let pc = self.pivots[idx];
            if v[pc].is_zero() {
                continue;
            }
            let (q, r) = v[pc].div_rem(&row[pc]);
            if !r.is_zero() {
                return None;
            }
            vec_sub_scaled(&mut v, row, &q);
            coeffs[idx] = q;
        }
        if v.iter().all(|x| x.is_zero()) {
            Some(coeffs)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coefficients_of(v).is_some()
    }

    pub fn is_sublattice_of(&self, other: &Lattice) -> bool {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        self.rows.iter().all(|r| other.contains(r))
    }

    /// Lattice sum (join); certification survives only if both sides carry
    /// certificates and the cap allows it.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim, "ambient dimension mismatch");
        let mut out = self.clone();
        for r in &other.rows {
            out.insert(r.clone());
        }
        out
    }

    /// Index of self inside the finer lattice when both have equal rank and
    /// self is contained in it; None otherwise.
    pub fn index_in(&self, finer: &Lattice) -> Option<BigInt> {
        if self.dim != finer.dim || self.rank() != finer.rank() {
            return None;
        }
        let mut x: Vec<Vec<BigInt>> = Vec::with_capacity(self.rank());
        for r in &self.rows {
            x.push(finer.coefficients_of(r)?);
        }
        Some(det_big(&x).abs())
    }

    /// Saturation: all ambient points with a nonzero multiple in the lattice.
    /// Computed from the Smith transforms of the basis matrix and verified
    /// structurally (same rank, contains the original).
    pub fn saturate(&self) -> Lattice {
        if self.rows.is_empty() {
            return Lattice::zero(self.dim);
        }
        let snf = snf_dense(&self.rows, self.dim, true);
        let w = &snf.transforms.as_ref().unwrap().v_inv;
        let mut out = Lattice::zero(self.dim);
        for i in 0..snf.rank {
            out.insert(w[i].clone());
        }
        debug_assert!(self.is_sublattice_of(&out));
        debug_assert_eq!(out.rank(), self.rank());
        out
    }

    /// The p-th wedge power inside the exterior power of the ambient space,
    /// with coordinates indexed by p-subsets of columns in ascending
    /// lexicographic order.
    pub fn wedge_power(&self, p: usize) -> Lattice {
        let amb = combinations_lex(self.dim, p);
        let out_dim = amb.len();
        let mut out = Lattice::zero(out_dim);
        if p == 0 {
            out.insert(vec![BigInt::one()]);
            return out;
        }
        if p > self.rank() {
            return out;
        }
        for rowset in combinations_lex(self.rank(), p) {
            let mut vec = Vec::with_capacity(out_dim);
            for colset in &amb {
                let minor: Vec<Vec<BigInt>> = rowset
                    .iter()
                    .map(|&i| colset.iter().map(|&j| self.rows[i][j].clone()).collect())
                    .collect();
                vec.push(det_big(&minor));
            }
            out.insert(vec);
        }
        out
    }

    /// Re-verifies the certificate: every basis row must equal its recorded
    /// integer combination of the inserted generators.
    pub fn verify_certificate(&self) -> Result<(), String> {
        let (Some(gens), Some(combos)) = (&self.gens, &self.combos) else {
            return Err("lattice carries no certificate".to_string());
        };
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc = vec![BigInt::zero(); self.dim];
            for (j, coeff) in combos[i].iter().enumerate() {
                if !coeff.is_zero() {
                    for k in 0..self.dim {
                        acc[k] += coeff * &gens[j][k];
                    }
                }
            }
            if &acc != row {
                return Err(format!("basis row {i} is not the recorded combination"));
            }
        }
        Ok(())
    }
}

fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

fn vec_sub_scaled(a: &mut [BigInt], b: &[BigInt], q: &BigInt) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= q * y;
    }
}

fn vec_comb(a: &[BigInt], ca: &BigInt, b: &[BigInt], cb: &BigInt) -> Vec<BigInt> {
    a.iter().zip(b).map(|(x, y)| ca * x + cb * y).collect()
}

// ---------------------------------------------------------------------------
// Small shared helpers
// ---------------------------------------------------------------------------

/// All p-subsets of {0..d-1} in ascending lexicographic order.
pub fn combinations_lex(d: usize, p: usize) -> Vec<Vec<usize>> {
    if p > d {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..p).collect();
    loop {
        out.push(cur.clone());
        if p == 0 {
            break;
        }
        // Advance to the next combination.
        let mut i = p;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + d - p {
                break;
            }
        }
        if cur[i] == i + d - p {
            return out;
        }
        cur[i] += 1;
        for j in (i + 1)..p {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

pub fn identity_big(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

pub fn mat_mul_big(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let m = a.len();
    let k = if m > 0 { a[0].len() } else { 0 };
    let n = if k > 0 { b[0].len() } else { 0 };
    assert!(b.len() == k, "inner dimension mismatch");
    let mut out = vec![vec![BigInt::zero(); n]; m];
    for i in 0..m {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

fn is_identity(a: &[Vec<BigInt>]) -> bool {
    a.iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, x)| if i == j { x.is_one() } else { x.is_zero() })
    })
}

fn swap_cols(a: &mut [Vec<BigInt>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

fn negate_row(a: &mut [Vec<BigInt>], i: usize) {
    for x in a[i].iter_mut() {
        *x = -std::mem::take(x);
    }
}

fn negate_col(a: &mut [Vec<BigInt>], j: usize) {
    for row in a.iter_mut() {
        row[j] = -std::mem::take(&mut row[j]);
    }
}

/// row i -= q * row k
fn row_sub_scaled(a: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    let rk = a[k].clone();
    for (x, y) in a[i].iter_mut().zip(&rk) {
        *x -= q * y;
    }
}

/// row i += q * row k
fn row_add_scaled(a: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    let rk = a[k].clone();
    for (x, y) in a[i].iter_mut().zip(&rk) {
        *x += q * y;
    }
}

/// col j -= q * col k
fn col_sub_scaled(a: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let t = q * &row[k];
        row[j] -= t;
    }
}

/// col j += q * col k
fn col_add_scaled(a: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut() {
        let t = q * &row[k];
        row[j] += t;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect()
    }

    #[test]
    fn snf_small_diagonals() {
        let s = snf_sparse(&SparseMat::from_dense(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.rank, 2);
        assert_eq!(s.factors, vec![BigInt::from(1), BigInt::from(6)]);
        let s = snf_sparse(&SparseMat::from_dense(&[vec![2]]));
        assert_eq!(s.factors, vec![BigInt::from(2)]);
        let s = snf_sparse(&SparseMat::from_dense(&[vec![0, 0], vec![0, 0]]));
        assert_eq!(s.rank, 0);
        assert!(s.factors.is_empty());
        let s = snf_sparse(&SparseMat::new(0, 5));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn snf_matches_determinant_and_modular_rank() {
        let mats = [
            big(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]),
            big(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]),
            big(&[&[3, 1, -4, 2], &[0, 2, 8, -1], &[5, 5, 5, 5], &[-2, 0, 4, 6]]),
        ];
        for a in &mats {
            let n = a[0].len();
            let dense: Vec<Vec<i64>> = a
                .iter()
                .map(|r| r.iter().map(|x| i64::try_from(x).unwrap()).collect())
                .collect();
            let sp = SparseMat::from_dense(&dense);
            let s1 = snf_sparse(&sp);
            let s2 = snf_dense(a, n, true);
            assert_eq!(s1.rank, s2.rank);
            assert_eq!(s1.factors, s2.factors);
            verify_snf(a, n, &s2).unwrap();
            if s1.rank == a.len() && a.len() == n {
                let prod = s1
                    .factors
                    .iter()
                    .fold(BigInt::one(), |acc, f| acc * f);
                assert_eq!(prod, det_big(a).abs());
            }
            assert_eq!(rank_mod_p(&sp), s1.rank);
            assert_eq!(rank_big(a), s1.rank);
        }
    }

    #[test]
    fn snf_triangle_boundary() {
        // Boundary of a 3-cycle: rank 2, free cokernel.
        let b = SparseMat::from_dense(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]);
        let s = snf_sparse(&b);
        assert_eq!(s.rank, 2);
        assert_eq!(s.factors, vec![BigInt::one(), BigInt::one()]);
    }

    #[test]
    fn solve_integer_systems() {
        let a = big(&[&[2, 0], &[0, 3]]);
        let x = solve_z(&a, 2, &[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(solve_z(&a, 2, &[BigInt::from(1), BigInt::from(0)]).is_none());
        // Underdetermined but consistent.
        let a = big(&[&[1, 1]]);
        let x = solve_z(&a, 2, &[BigInt::from(5)]).unwrap();
        assert_eq!(&x[0] + &x[1], BigInt::from(5));
        // Overdetermined inconsistent.
        let a = big(&[&[1], &[1]]);
        assert!(solve_z(&a, 1, &[BigInt::from(1), BigInt::from(2)]).is_none());
    }

    #[test]
    fn dets_and_ranks() {
        assert_eq!(det_big(&big(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(
            det_big(&big(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]])),
            BigInt::from(-2)
        );
        assert_eq!(det_big(&big(&[&[2, 1], &[4, 2]])), BigInt::zero());
        assert_eq!(rank_big(&big(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        assert_eq!(rank_big(&big(&[&[0, 0], &[0, 0]])), 0);
    }

    #[test]
    fn lattice_hnf_basics() {
        let mut l = Lattice::zero(2);
        l.insert(vec![BigInt::from(2), BigInt::from(0)]);
        l.insert(vec![BigInt::from(0), BigInt::from(2)]);
        l.insert(vec![BigInt::from(1), BigInt::from(1)]);
        assert_eq!(l.rank(), 2);
        assert_eq!(
            l.basis_rows(),
            &[
                vec![BigInt::from(1), BigInt::from(1)],
                vec![BigInt::from(0), BigInt::from(2)]
            ]
        );
        assert!(l.contains(&[BigInt::from(1), BigInt::from(1)]));
        assert!(l.contains(&[BigInt::from(3), BigInt::from(1)]));
        assert!(!l.contains(&[BigInt::from(1), BigInt::from(0)]));
        let sub = Lattice::from_rows(
            2,
            &[
                vec![BigInt::from(2), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(2)],
            ],
        );
        assert!(sub.is_sublattice_of(&l));
        assert_eq!(sub.index_in(&l), Some(BigInt::from(2)));
        assert_eq!(l.index_in(&Lattice::standard(2)), Some(BigInt::from(2)));
        assert_eq!(l.sum(&Lattice::standard(2)), Lattice::standard(2));
    }

    #[test]
    fn lattice_certificates() {
        let mut l = Lattice::zero_certified(3);
        l.insert(vec![BigInt::from(6), BigInt::from(2), BigInt::from(0)]);
        l.insert(vec![BigInt::from(4), BigInt::from(0), BigInt::from(2)]);
        l.insert(vec![BigInt::from(10), BigInt::from(2), BigInt::from(2)]);
        assert!(l.is_certified());
        l.verify_certificate().unwrap();
        assert_eq!(l.rank(), 2);
    }

    #[test]
    fn lattice_saturation() {
        let l = Lattice::from_rows(2, &[vec![BigInt::from(2), BigInt::from(4)]]);
        let s = l.saturate();
        assert_eq!(s.basis_rows(), &[vec![BigInt::from(1), BigInt::from(2)]]);
        assert_eq!(l.index_in(&s), Some(BigInt::from(2)));
        // A saturated lattice is its own saturation.
        assert_eq!(s.saturate(), s);
    }

    #[test]
    fn wedge_powers() {
        // Wedge of the standard basis is the standard basis.
        let w = Lattice::standard(3).wedge_power(2);
        assert_eq!(w, Lattice::standard(3));
        // diag(2,3) wedge 2 = 6Z.
        let l = Lattice::from_rows(
            2,
            &[
                vec![BigInt::from(2), BigInt::from(0)],
                vec![BigInt::from(0), BigInt::from(3)],
            ],
        );
        assert_eq!(
            l.wedge_power(2).basis_rows(),
            &[vec![BigInt::from(6)]]
        );
        // Index of a wedge inside the saturated wedge: three cycle vectors.
        let f1 = Lattice::from_rows(
            3,
            &[
                vec![BigInt::from(1), BigInt::from(1), BigInt::from(0)],
                vec![BigInt::from(1), BigInt::from(0), BigInt::from(1)],
                vec![BigInt::from(0), BigInt::from(1), BigInt::from(1)],
            ],
        );
        let w3 = f1.wedge_power(3);
        assert_eq!(w3.basis_rows(), &[vec![BigInt::from(2)]]);
        assert_eq!(w3.index_in(&w3.saturate()), Some(BigInt::from(2)));
    }

    #[test]
    fn full_rank_sublattice_of_standard_has_determinant_index() {
        let rows = [
            vec![BigInt::from(1), BigInt::zero(), BigInt::zero()],
            vec![BigInt::zero(), BigInt::from(1), BigInt::zero()],
            vec![BigInt::zero(), BigInt::zero(), BigInt::from(1)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::zero()],
        ];
        let l = Lattice::from_rows(3, &rows);
        assert_eq!(l, Lattice::standard(3));
    }

    #[test]
    fn combinations_order() {
        assert_eq!(
            combinations_lex(4, 2),
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(combinations_lex(3, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations_lex(2, 3), Vec::<Vec<usize>>::new());
    }

    #[test]
    fn modular_rank_is_a_lower_bound() {
        // The matrix [p] has rank 1 over Q but rank 0 mod p; our modulus is
        // huge, so small examples agree with the rational rank.
        let m = SparseMat::from_dense(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(rank_mod_p(&m), 1);
        let m = SparseMat::from_dense(&[vec![7]]);
        assert_eq!(rank_mod_p(&m), 1);
    }
}
