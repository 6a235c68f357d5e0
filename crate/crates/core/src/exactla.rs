//! Exact rank computations over ℚ and prime fields.
//!
//! Rational ranks use fraction-free integer elimination: `i64` with overflow
//! checks first, arbitrary precision on overflow. Prime-field ranks reduce
//! entries modulo `p` and eliminate with precomputed inverses when `p < 2^16`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    pub const Q: Field = Field::Rationals;

    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `Fp:<p>`, and the shorthand `F<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix("Fp:")
            .or_else(|| t.strip_prefix("fp:"))
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| Error::UnknownField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::UnknownField(s.to_string()))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Sparse integer matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    /// `columns[c]` holds `(row, value)` with strictly increasing rows and nonzero values.
    columns: Vec<Vec<(usize, i64)>>,
}

impl SparseIntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from `(row, col, value)` triplets; repeated positions are summed, zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, triplets: &[(usize, usize, i64)]) -> Self {
        let mut columns = vec![Vec::new(); cols];
        for &(r, c, v) in triplets {
            assert!(
                r < rows && c < cols,
                "entry ({r}, {c}) outside {rows}x{cols}"
            );
            columns[c].push((r, v));
        }
        for col in &mut columns {
            col.sort_by_key(|e| e.0);
            let mut merged: Vec<(usize, i64)> = Vec::with_capacity(col.len());
            for &(r, v) in col.iter() {
                match merged.last_mut() {
                    Some(last) if last.0 == r => last.1 += v,
                    _ => merged.push((r, v)),
                }
            }
            merged.retain(|e| e.1 != 0);
            *col = merged;
        }
        SparseIntMatrix {
            rows,
            cols,
            columns,
        }
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let mut triplets = Vec::new();
        for (r, row) in dense.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged dense matrix");
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    triplets.push((r, c, v));
                }
            }
        }
        Self::from_triplets(rows, cols, &triplets)
    }

    pub(crate) fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        debug_assert!(columns
            .iter()
            .all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        SparseIntMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c]
            .binary_search_by_key(&r, |e| e.0)
            .map_or(0, |i| self.columns[c][i].1)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                d[r][c] = v;
            }
        }
        d
    }

    /// Integer product `self * other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut columns = Vec::with_capacity(other.cols);
        let mut acc = vec![0i64; self.rows];
        for col in &other.columns {
            let mut touched = Vec::new();
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    if acc[r] == 0 {
                        touched.push(r);
                    }
                    acc[r] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = Vec::new();
            for r in touched {
                if acc[r] != 0 {
                    out.push((r, acc[r]));
                }
                acc[r] = 0;
            }
            columns.push(out);
        }
        SparseIntMatrix {
            rows: self.rows,
            cols: other.cols,
            columns,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Rank over `field`.
    pub fn rank(&self, field: Field) -> usize {
        rank(self, field)
    }
}

/// Rank of `m` with entries mapped into `field`.
pub fn rank(m: &SparseIntMatrix, field: Field) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    match field {
        Field::Rationals => rational_rank(m),
        Field::Prime(p) => prime_rank(m, p as u64),
    }
}

/// Static row counts, used to prefer pivots in sparse rows.
fn row_weights(m: &SparseIntMatrix) -> Vec<u32> {
    let mut w = vec![0u32; m.rows];
    for col in &m.columns {
        for &(r, _) in col {
            w[r] += 1;
        }
    }
    w
}

/// Columns ordered by increasing length.
fn column_order(m: &SparseIntMatrix) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m.cols).collect();
    order.sort_by_key(|&c| m.columns[c].len());
    order
}

/// Picks the pivot row of a reduced vector: the one with the lightest row,
/// ties broken by the smaller index.
fn choose_pivot<T>(entries: &[(usize, T)], weights: &[u32]) -> usize {
    entries
        .iter()
        .map(|e| e.0)
        .min_by_key(|&r| (weights[r], r))
        .expect("nonzero vector")
}

struct ModInverses {
    p: u64,
    table: Option<Vec<u32>>,
}

impl ModInverses {
    fn new(p: u64) -> Self {
        let table = (p < 1 << 16).then(|| {
            let mut inv = vec![0u32; p as usize];
            if p > 1 {
                inv[1] = 1;
            }
            for a in 2..p {
                // inv[a] = -(p / a) * inv[p mod a]
                inv[a as usize] = ((p - p / a) * inv[(p % a) as usize] as u64 % p) as u32;
            }
            inv
        });
        ModInverses { p, table }
    }

    fn inv(&self, a: u64) -> u64 {
        match &self.table {
            Some(t) => t[a as usize] as u64,
            None => pow_mod(a, self.p - 2, self.p),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn prime_rank(m: &SparseIntMatrix, p: u64) -> usize {
    let weights = row_weights(m);
    let inverses = ModInverses::new(p);
    let reduce = |v: i64| -> u64 { v.rem_euclid(p as i64) as u64 };
    let mulmod = |a: u64, b: u64| -> u64 { (a as u128 * b as u128 % p as u128) as u64 };

    // pivot vectors normalized so the pivot entry is 1, in insertion order
    let mut pivots: Vec<(usize, Vec<(usize, u64)>)> = Vec::new();
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; m.rows];
    let mut dense = vec![0u64; m.rows];
    let mut touched: Vec<usize> = Vec::new();

    for c in column_order(m) {
        touched.clear();
        for &(r, v) in &m.columns[c] {
            let x = reduce(v);
            if x != 0 {
                dense[r] = x;
                touched.push(r);
            }
        }
        if touched.is_empty() {
            continue;
        }
        // eliminate in pivot insertion order; later pivots never reintroduce earlier ones
        let mut live: Vec<usize> = touched.iter().filter_map(|&r| pivot_of_row[r]).collect();
        live.sort_unstable();
        let mut k = 0;
        while k < live.len() {
            let idx = live[k];
            k += 1;
            let (prow, ref vec) = pivots[idx];
            let coef = dense[prow];
            if coef == 0 {
                continue;
            }
            for &(r, x) in vec {
                let before = dense[r];
                let after = (before + p - mulmod(coef, x)) % p;
                dense[r] = after;
                if before == 0 && after != 0 {
                    touched.push(r);
                    if let Some(j) = pivot_of_row[r] {
                        if j > idx {
                            let pos = live[k..].binary_search(&j).unwrap_or_else(|e| e);
                            if live[k..].get(pos) != Some(&j) {
                                live.insert(k + pos, j);
                            }
                        }
                    }
                }
            }
        }
        let mut entries: Vec<(usize, u64)> = Vec::new();
        touched.sort_unstable();
        touched.dedup();
        for &r in &touched {
            if dense[r] != 0 {
                entries.push((r, dense[r]));
                dense[r] = 0;
            }
        }
        if entries.is_empty() {
            continue;
        }
        let prow = choose_pivot(&entries, &weights);
        let lead = entries.iter().find(|e| e.0 == prow).unwrap().1;
        let scale = inverses.inv(lead);
        for e in &mut entries {
            e.1 = mulmod(e.1, scale);
        }
        pivot_of_row[prow] = Some(pivots.len());
        pivots.push((prow, entries));
    }
    pivots.len()
}

trait ExactInt:
    Clone + Zero + One + PartialEq + Integer + Signed + CheckedMul + CheckedSub + From<i64>
{
}

impl ExactInt for i64 {}
impl ExactInt for BigInt {}

fn rational_rank(m: &SparseIntMatrix) -> usize {
    fraction_free_rank::<i64>(m).unwrap_or_else(|| {
        fraction_free_rank::<BigInt>(m).expect("arbitrary precision never overflows")
    })
}

/// Integer-preserving elimination: `v ← a·v − b·w` followed by division by the
/// content of `v`. Returns `None` on overflow of `T`.
fn fraction_free_rank<T: ExactInt>(m: &SparseIntMatrix) -> Option<usize> {
    let weights = row_weights(m);
    let mut pivots: Vec<(usize, Vec<(usize, T)>)> = Vec::new();
    let mut pivot_of_row: Vec<Option<usize>> = vec![None; m.rows];
    let mut dense: Vec<T> = vec![T::zero(); m.rows];
    let mut marked = vec![false; m.rows];
    let mut touched: Vec<usize> = Vec::new();

    for c in column_order(m) {
        touched.clear();
        for &(r, v) in &m.columns[c] {
            dense[r] = T::from(v);
            marked[r] = true;
            touched.push(r);
        }
        let mut idx = 0;
        // pivots are visited in insertion order
        let mut candidates: Vec<usize> = touched.iter().filter_map(|&r| pivot_of_row[r]).collect();
        candidates.sort_unstable();
        while idx < candidates.len() {
            let pi = candidates[idx];
            idx += 1;
            let (prow, ref w) = pivots[pi];
            if dense[prow].is_zero() {
                continue;
            }
            let lead = w.iter().find(|e| e.0 == prow).unwrap().1.clone();
            let coef = dense[prow].clone();
            let g = lead.gcd(&coef);
            let a = lead.div_floor(&g);
            let b = coef.div_floor(&g);
            // v ← a·v − b·w
            if !a.is_one() {
                for &r in &touched {
                    if !dense[r].is_zero() {
                        dense[r] = dense[r].checked_mul(&a)?;
                    }
                }
            }
            for (r, x) in w {
                let before_zero = dense[*r].is_zero();
                let prod = b.checked_mul(x)?;
                dense[*r] = dense[*r].checked_sub(&prod)?;
                if before_zero && !dense[*r].is_zero() {
                    if !marked[*r] {
                        marked[*r] = true;
                        touched.push(*r);
                    }
                    if let Some(j) = pivot_of_row[*r] {
                        if j > pi {
                            let pos = candidates[idx..].binary_search(&j).unwrap_or_else(|e| e);
                            if candidates[idx..].get(pos) != Some(&j) {
                                candidates.insert(idx + pos, j);
                            }
                        }
                    }
                }
            }
            debug_assert!(dense[prow].is_zero());
        }
        touched.sort_unstable();
        let mut entries: Vec<(usize, T)> = Vec::new();
        let mut content = T::zero();
        for &r in &touched {
            marked[r] = false;
            if !dense[r].is_zero() {
                content = content.gcd(&dense[r]);
                entries.push((r, std::mem::replace(&mut dense[r], T::zero())));
            } else {
                dense[r] = T::zero();
            }
        }
        if entries.is_empty() {
            continue;
        }
        if !content.is_one() {
            for e in &mut entries {
                e.1 = e.1.div_floor(&content);
            }
        }
        let prow = choose_pivot(&entries, &weights);
        pivot_of_row[prow] = Some(pivots.len());
        pivots.push((prow, entries));
    }
    Some(pivots.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_parsing() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rationals);
        assert_eq!("Fp:3".parse::<Field>().unwrap(), Field::Prime(3));
        assert_eq!("F2".parse::<Field>().unwrap(), Field::Prime(2));
        assert_eq!("Fp:4".parse::<Field>(), Err(Error::NotPrime(4)));
        assert!("R".parse::<Field>().is_err());
        assert_eq!(Field::Prime(5).to_string(), "Fp:5");
        assert_eq!(Field::Q.characteristic(), 0);
        assert_eq!(Field::prime(7).unwrap().characteristic(), 7);
    }

    #[test]
    fn small_ranks() {
        assert_eq!(SparseIntMatrix::zeros(3, 4).rank(Field::Q), 0);
        let m = SparseIntMatrix::from_dense(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(m.rank(Field::Prime(2)), 1);
        assert_eq!(m.rank(Field::Q), 2);
        assert_eq!(m.rank(Field::Prime(3)), 2);
    }

    #[test]
    fn large_prime_uses_pow_inverse() {
        let p = 1_000_003;
        let m = SparseIntMatrix::from_dense(&[vec![2, 4], vec![3, 6 + p as i64]]);
        assert_eq!(m.rank(Field::prime(p).unwrap()), 1);
        assert_eq!(m.rank(Field::Q), 2);
    }

    #[test]
    fn overflow_falls_back_to_bigint() {
        // entries grow geometrically under fraction-free elimination of this Hilbert-like matrix
        let n = 12;
        let dense: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| ((i + 1) as i64).pow(j as u32)).collect())
            .collect();
        let m = SparseIntMatrix::from_dense(&dense);
        assert_eq!(fraction_free_rank::<BigInt>(&m), Some(n));
        assert_eq!(m.rank(Field::Q), n);
    }

    #[test]
    fn product_and_dense_roundtrip() {
        let a = SparseIntMatrix::from_dense(&[vec![1, 0, -1], vec![0, 2, 0]]);
        let b = SparseIntMatrix::from_dense(&[vec![1], vec![1], vec![1]]);
        assert_eq!(a.mul(&b).to_dense(), vec![vec![0], vec![2]]);
        assert_eq!(SparseIntMatrix::from_dense(&a.to_dense()), a);
        assert_eq!(a.get(1, 1), 2);
        assert_eq!(a.nnz(), 3);
    }
}
