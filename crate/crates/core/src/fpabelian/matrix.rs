//! Dense and sparse integer matrices with exact normal-form algorithms.
//!
//! Everything here is over arbitrary-precision integers; there is no
//! modular shortcut anywhere. Pivoting picks minimal absolute values to
//! keep intermediate entries small, which is enough at the matrix sizes
//! this crate produces (a few thousand columns at the very worst).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;

/// Shorthand used all over the tests.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Sparse column/row: sorted `(index, value)` pairs, values nonzero.
pub type SparseVec = Vec<(usize, Int)>;

pub fn sparse_from_dense(v: &[Int]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Int> {
    let mut out = vec![Int::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// `a += c * b` on sparse vectors.
pub fn sparse_axpy(a: &SparseVec, c: &Int, b: &SparseVec) -> SparseVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = SparseVec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + c * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale(a: &mut SparseVec, c: &Int) {
    if c.is_zero() {
        a.clear();
    } else if !c.is_one() {
        for (_, v) in a.iter_mut() {
            *v *= c;
        }
    }
}

pub fn sparse_dot(a: &SparseVec, b: &SparseVec) -> Int {
    let mut acc = Int::zero();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].0 < b[j].0 {
            i += 1;
        } else if b[j].0 < a[i].0 {
            j += 1;
        } else {
            acc += &a[i].1 * &b[j].1;
            i += 1;
            j += 1;
        }
    }
    acc
}

pub fn sparse_get(a: &SparseVec, idx: usize) -> Int {
    match a.binary_search_by_key(&idx, |(i, _)| *i) {
        Ok(pos) => a[pos].1.clone(),
        Err(_) => Int::zero(),
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Int>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows.min(12) {
            let row: Vec<String> = (0..self.cols.min(16)).map(|j| self.at(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut m = Self::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, int(*v));
            }
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Int) -> Self {
        let mut m = Self::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn from_columns(rows: usize, cols: &[Vec<Int>]) -> Self {
        let mut m = Self::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_sparse_columns(rows: usize, cols: &[SparseVec]) -> Self {
        let mut m = Self::zero(rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn col_sparse(&self, j: usize) -> SparseVec {
        (0..self.rows)
            .filter(|i| !self.at(*i, j).is_zero())
            .map(|i| (i, self.at(i, j).clone()))
            .collect()
    }

    pub fn row(&self, i: usize) -> Vec<Int> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        let v = out.at(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn add(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    pub fn neg(&self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -self.at(i, j))
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        IntMatrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols { self.at(i, j).clone() } else { other.at(i, j - self.cols).clone() }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row_a += q * row_b
    fn row_axpy(&mut self, a: usize, q: &Int, b: usize) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.at(a, j) + q * self.at(b, j);
            self.set(a, j, v);
        }
    }

    /// col_a += q * col_b
    fn col_axpy(&mut self, a: usize, q: &Int, b: usize) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.at(i, a) + q * self.at(i, b);
            self.set(i, a, v);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Int) {
        for j in 0..self.cols {
            let v = self.at(i, j) * c;
            self.set(i, j, v);
        }
    }

    fn scale_col(&mut self, j: usize, c: &Int) {
        for i in 0..self.rows {
            let v = self.at(i, j) * c;
            self.set(i, j, v);
        }
    }
}

/// Quotient rounding toward nearest (ties toward zero), used to keep
/// remainders small during eliminations.
fn div_round(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    let two_r = &r * 2;
    if two_r.abs() > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Result of a Smith normal form computation: `s = u * m * w` with `u`, `w`
/// unimodular and `s` diagonal with nonnegative entries `d_1 | d_2 | ...`.
pub struct Snf {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub w: IntMatrix,
    pub diag: Vec<Int>,
    pub rank: usize,
}

pub fn smith_normal_form(m: &IntMatrix) -> Snf {
    let mut s = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut w = IntMatrix::identity(m.cols);
    let lim = m.rows.min(m.cols);
    let mut k = 0;
    while k < lim {
        // minimal-absolute-value pivot in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        let mut best: Option<Int> = None;
        for i in k..s.rows {
            for j in k..s.cols {
                let v = s.at(i, j);
                if v.is_zero() {
                    continue;
                }
                let a = v.abs();
                if best.as_ref().map_or(true, |b| a < *b) {
                    best = Some(a);
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        s.swap_rows(k, pi);
        u.swap_rows(k, pi);
        s.swap_cols(k, pj);
        w.swap_cols(k, pj);

        // clear row and column k; restart if a remainder shrinks the pivot
        let mut dirty = false;
        for i in (k + 1)..s.rows {
            if !s.at(i, k).is_zero() {
                let q = -div_round(s.at(i, k), s.at(k, k));
                s.row_axpy(i, &q, k);
                u.row_axpy(i, &q, k);
                if !s.at(i, k).is_zero() {
                    dirty = true;
                }
            }
        }
        for j in (k + 1)..s.cols {
            if !s.at(k, j).is_zero() {
                let q = -div_round(s.at(k, j), s.at(k, k));
                s.col_axpy(j, &q, k);
                w.col_axpy(j, &q, k);
                if !s.at(k, j).is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue;
        }
        // divisibility fixup: pivot must divide the trailing block
        let mut fixed = true;
        'scan: for i in (k + 1)..s.rows {
            for j in (k + 1)..s.cols {
                if !(s.at(i, j) % s.at(k, k)).is_zero() {
                    s.row_axpy(k, &Int::one(), i);
                    u.row_axpy(k, &Int::one(), i);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if !fixed {
            continue;
        }
        if s.at(k, k).is_negative() {
            let m1 = -Int::one();
            s.scale_row(k, &m1);
            u.scale_row(k, &m1);
        }
        k += 1;
    }
    let rank = k;
    let diag: Vec<Int> = (0..lim).map(|i| s.at(i, i).clone()).collect();
    Snf { s, u, w, diag, rank }
}

/// Invariant diagonal only (no transform tracking); cheaper for presentations.
pub fn smith_diagonal(m: &IntMatrix) -> Vec<Int> {
    // The transform bookkeeping is not the expensive part at our sizes;
    // reuse the full routine.
    smith_normal_form(m).diag
}

pub fn is_unimodular(m: &IntMatrix) -> bool {
    if m.rows != m.cols {
        return false;
    }
    let snf = smith_normal_form(m);
    snf.rank == m.rows && snf.diag.iter().all(|d| d.is_one())
}

/// Integral basis of `{x : m x = 0}`, returned in canonical column Hermite
/// form (one column per kernel generator).
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(m);
    let cols: Vec<Vec<Int>> = (snf.rank..m.cols).map(|j| snf.w.col(j)).collect();
    column_hermite(&IntMatrix::from_columns(m.cols, &cols))
}

/// Exact solution of `m x = b` over the integers, if one exists.
pub fn solve(m: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(m.rows, b.len());
    let snf = smith_normal_form(m);
    let ub = snf.u.mul_vec(b);
    let mut y = vec![Int::zero(); m.cols];
    for i in 0..m.rows {
        if i < snf.rank {
            let d = snf.s.at(i, i);
            let (q, r) = ub[i].div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ub[i].is_zero() {
            return None;
        }
    }
    Some(snf.w.mul_vec(&y))
}

/// Canonical column Hermite form of the lattice spanned by the columns.
///
/// Pivots are positive, pivot rows strictly increase left to right, zero
/// columns are dropped, and in every pivot row the entries of the earlier
/// (left) columns are reduced into `[0, pivot)`. Two column sets span the
/// same lattice iff their forms agree.
pub fn column_hermite(m: &IntMatrix) -> IntMatrix {
    let cols: Vec<SparseVec> = (0..m.cols).map(|j| m.col_sparse(j)).collect();
    let h = sparse_column_hermite(m.rows, cols);
    IntMatrix::from_sparse_columns(m.rows, &h)
}

/// Sparse-column Hermite normal form; see [`column_hermite`].
pub fn sparse_column_hermite(rows: usize, cols: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut work: Vec<SparseVec> = cols.into_iter().filter(|c| !c.is_empty()).collect();
    let mut fixed: Vec<SparseVec> = Vec::new();
    for r in 0..rows {
        // Combine all working columns with a nonzero entry in row r into one.
        let mut holder: Option<SparseVec> = None;
        let mut rest: Vec<SparseVec> = Vec::with_capacity(work.len());
        // process small leading entries first to limit growth
        work.sort_by(|a, b| {
            let va = sparse_get(a, r).abs();
            let vb = sparse_get(b, r).abs();
            va.cmp(&vb)
        });
        for col in work.into_iter() {
            let v = sparse_get(&col, r);
            if v.is_zero() {
                rest.push(col);
                continue;
            }
            match holder.take() {
                None => holder = Some(col),
                Some(h) => {
                    let a = sparse_get(&h, r);
                    let b = v;
                    let e = a.extended_gcd(&b);
                    // g = s*a + t*b
                    let g = e.gcd;
                    let new_h = sparse_axpy(&{
                        let mut tmp = h.clone();
                        sparse_scale(&mut tmp, &e.x);
                        tmp
                    }, &e.y, &col);
                    // eliminated = (a/g)*col - (b/g)*h
                    let ca = &a / &g;
                    let cb = &b / &g;
                    let elim = sparse_axpy(&{
                        let mut tmp = col.clone();
                        sparse_scale(&mut tmp, &ca);
                        tmp
                    }, &(-cb), &h);
                    if !elim.is_empty() {
                        rest.push(elim);
                    }
                    holder = Some(new_h);
                }
            }
        }
        work = rest;
        if let Some(mut h) = holder {
            if sparse_get(&h, r).is_negative() {
                sparse_scale(&mut h, &-Int::one());
            }
            fixed.push(h);
        }
    }
    // Reduce later columns' entries in each pivot row into [0, pivot).
    for p in 0..fixed.len() {
        let (pr, pv) = (fixed[p][0].0, fixed[p][0].1.clone());
        for q in 0..p {
            let v = sparse_get(&fixed[q], pr);
            if v.is_zero() {
                continue;
            }
            let qv = v.div_floor(&pv);
            if !qv.is_zero() {
                fixed[q] = sparse_axpy(&fixed[q], &-qv, &fixed[p]);
            }
        }
    }
    fixed
}

/// Solver for repeated membership queries against a fixed column lattice.
pub struct LatticeBasis {
    pub rows: usize,
    /// canonical Hermite basis, pivot rows increasing
    pub basis: Vec<SparseVec>,
    pivots: Vec<(usize, Int)>,
}

impl LatticeBasis {
    pub fn new(rows: usize, cols: Vec<SparseVec>) -> Self {
        let basis = sparse_column_hermite(rows, cols);
        let pivots = basis.iter().map(|c| (c[0].0, c[0].1.clone())).collect();
        LatticeBasis { rows, basis, pivots }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Expresses `v` in the basis if it lies in the lattice.
    pub fn express(&self, v: &SparseVec) -> Option<Vec<Int>> {
        let mut rem = v.clone();
        let mut coeffs = vec![Int::zero(); self.basis.len()];
        while let Some((row, val)) = rem.first().cloned() {
            // find basis column with this pivot row
            let k = self.pivots.iter().position(|(pr, _)| *pr == row)?;
            let (q, r) = val.div_rem(&self.pivots[k].1);
            if !r.is_zero() {
                return None;
            }
            coeffs[k] = q.clone();
            rem = sparse_axpy(&rem, &-q, &self.basis[k]);
        }
        Some(coeffs)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.express(v).is_some()
    }

    /// Lattice equality via mutual containment of canonical bases.
    pub fn equals(&self, other: &LatticeBasis) -> bool {
        self.basis == other.basis
    }
}

/// Incrementally computed solution lattice `{x in span(B0) : rows(x) = 0}`
/// with optional torsion: a constraint block demands `R x` lies in the
/// lattice spanned by the block's relation columns.
pub struct LatticeSolver {
    dim: usize,
    cols: Vec<SparseVec>,
}

impl LatticeSolver {
    pub fn identity(dim: usize) -> Self {
        LatticeSolver { dim, cols: (0..dim).map(|i| vec![(i, Int::one())]).collect() }
    }

    pub fn from_columns(dim: usize, cols: Vec<SparseVec>) -> Self {
        LatticeSolver { dim, cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    /// Constrains by a single strict row: keeps `{x : w·x = 0}` where
    /// `w = row` evaluated on current columns.
    pub fn constrain_row(&mut self, row: &SparseVec) {
        let w: Vec<Int> = self.cols.iter().map(|c| sparse_dot(row, c)).collect();
        self.eliminate(&w, None);
    }

    /// Constrains by a row with a modulus: keeps `{x : w·x ≡ 0 mod d}`.
    /// `d = 0` means strict.
    pub fn constrain_row_mod(&mut self, row: &SparseVec, d: &Int) {
        let w: Vec<Int> = self.cols.iter().map(|c| sparse_dot(row, c)).collect();
        if d.is_zero() {
            self.eliminate(&w, None);
        } else {
            self.eliminate(&w, Some(d));
        }
    }

    /// Constrains by a block: keeps `{x : R x ∈ column-lattice(rel)}` where
    /// `rows` are the rows of `R` and `rel` is a small dense matrix whose
    /// columns generate the allowed values.
    ///
    /// The block is first diagonalized (`d = u·rel·w`), turning the block
    /// condition into independent per-row congruences `(u·R)_i x ≡ 0 mod d_i`.
    /// This keeps the basis column count non-increasing.
    pub fn constrain_block(&mut self, rows: &[SparseVec], rel: &IntMatrix) {
        assert_eq!(rows.len(), rel.rows);
        if rel.cols == 0 {
            for r in rows {
                self.constrain_row(r);
            }
            return;
        }
        let snf = smith_normal_form(rel);
        let m = rel.rows;
        for i in 0..m {
            // row i of u * R
            let mut combined: SparseVec = SparseVec::new();
            for k in 0..m {
                let c = snf.u.at(i, k);
                if !c.is_zero() {
                    combined = sparse_axpy(&combined, c, &rows[k]);
                }
            }
            if combined.is_empty() {
                continue;
            }
            if i < snf.rank {
                self.constrain_row_mod(&combined, &snf.diag[i]);
            } else {
                self.constrain_row(&combined);
            }
        }
    }

    /// One elimination pass for `w · v ≡ 0 (mod d)` in column coordinates.
    fn eliminate(&mut self, w: &[Int], modulus: Option<&Int>) {
        let mut involved: Vec<usize> = (0..w.len()).filter(|j| !w[*j].is_zero()).collect();
        if involved.is_empty() {
            return;
        }
        // chain over involved columns, smallest coefficient first
        involved.sort_by(|a, b| w[*a].abs().cmp(&w[*b].abs()));
        let mut kept: Vec<SparseVec> = Vec::with_capacity(self.cols.len());
        let mut holder: Option<(SparseVec, Int)> = None; // (column, running value)
        let mut new_cols: Vec<SparseVec> = Vec::new();
        for &j in &involved {
            let col = std::mem::take(&mut self.cols[j]);
            let val = w[j].clone();
            match holder.take() {
                None => holder = Some((col, val)),
                Some((hc, hv)) => {
                    let e = hv.extended_gcd(&val);
                    let g = e.gcd;
                    let mut comb = hc.clone();
                    sparse_scale(&mut comb, &e.x);
                    let comb = sparse_axpy(&comb, &e.y, &col);
                    // eliminated column: (val/g)*hc - (hv/g)*col
                    let ca = &val / &g;
                    let cb = &hv / &g;
                    let mut elim = hc;
                    sparse_scale(&mut elim, &ca);
                    let elim = sparse_axpy(&elim, &(-cb), &col);
                    if !elim.is_empty() {
                        new_cols.push(elim);
                    }
                    holder = Some((comb, g));
                }
            }
        }
        // untouched columns survive as-is
        for (j, col) in self.cols.iter_mut().enumerate() {
            if !w[j].is_zero() {
                continue;
            }
            if !col.is_empty() {
                kept.push(std::mem::take(col));
            }
        }
        if let Some((hc, hv)) = holder {
            match modulus {
                None => {
                    // strict: drop the holder (its value is the gcd != 0)
                    debug_assert!(!hv.is_zero());
                }
                Some(d) => {
                    // keep (d/gcd(d, hv)) * holder, which satisfies the congruence
                    let g = d.gcd(&hv);
                    let mult = d / &g;
                    let mut hc2 = hc;
                    sparse_scale(&mut hc2, &mult);
                    if !hc2.is_empty() {
                        kept.push(hc2);
                    }
                }
            }
        }
        kept.extend(new_cols);
        self.cols = kept;
    }

    pub fn into_columns(self) -> Vec<SparseVec> {
        self.cols
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }
}

/// Column-sparse matrix for the larger operators (differentials on total
/// complexes); columns are sorted sparse vectors.
#[derive(Clone, Debug)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<SparseVec>,
}

impl SparseMat {
    pub fn zero(rows: usize, ncols: usize) -> Self {
        SparseMat { rows, cols: vec![SparseVec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat { rows: n, cols: (0..n).map(|i| vec![(i, Int::one())]).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        SparseMat { rows: m.rows, cols: (0..m.cols).map(|j| m.col_sparse(j)).collect() }
    }

    pub fn to_dense(&self) -> IntMatrix {
        IntMatrix::from_sparse_columns(self.rows, &self.cols)
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: SparseVec = SparseVec::new();
        for (j, c) in v {
            acc = sparse_axpy(&acc, c, &self.cols[*j]);
        }
        acc
    }

    pub fn apply_dense(&self, v: &[Int]) -> Vec<Int> {
        let mut out = vec![Int::zero(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            if v[j].is_zero() {
                continue;
            }
            for (i, x) in col {
                out[*i] += x * &v[j];
            }
        }
        out
    }

    pub fn compose(&self, inner: &SparseMat) -> SparseMat {
        assert_eq!(inner.rows, self.ncols());
        SparseMat { rows: self.rows, cols: inner.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.ncols(), other.ncols());
        SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .zip(&other.cols)
                .map(|(a, b)| sparse_axpy(a, &Int::one(), b))
                .collect(),
        }
    }

    pub fn neg(&self) -> SparseMat {
        SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|c| c.iter().map(|(i, v)| (*i, -v)).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> SparseMat {
        SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|col| {
                    let mut col = col.clone();
                    sparse_scale(&mut col, c);
                    col
                })
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    /// Iterates rows as sparse vectors (builds a transient row index).
    pub fn rows_sparse(&self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = vec![SparseVec::new(); self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                rows[*i].push((j, v.clone()));
            }
        }
        rows
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn snf_small_example() {
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![int(2), int(4)]);
        assert_eq!(snf.u.mul(&m).mul(&snf.w), snf.s);
        assert!(is_unimodular(&snf.u));
        assert!(is_unimodular(&snf.w));
    }

    #[test]
    fn snf_zero_and_identity() {
        let z = IntMatrix::zero(2, 3);
        let snf = smith_normal_form(&z);
        assert!(snf.s.is_zero());
        assert_eq!(snf.rank, 0);

        let id = IntMatrix::identity(4);
        let snf = smith_normal_form(&id);
        assert_eq!(snf.s, IntMatrix::identity(4));
    }

    #[test]
    fn snf_known_4x4() {
        // cross-checked against hand row/column reduction
        let m = IntMatrix::from_rows(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let snf = smith_normal_form(&m);
        assert_eq!(snf.diag, vec![int(1), int(3), int(21), int(0)]);
        assert_eq!(snf.u.mul(&m).mul(&snf.w), snf.s);
    }

    #[test]
    fn kernel_rank_one() {
        let m = IntMatrix::from_rows(&[vec![1, 1]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols, 1);
        assert_eq!(k.col(0), vec![int(1), int(-1)]);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        let k = kernel_basis(&IntMatrix::identity(3));
        assert_eq!(k.cols, 0);
    }

    #[test]
    fn kernel_scaled_skew() {
        let m = IntMatrix::from_rows(&[vec![2, -2], vec![-2, 2]]);
        let k = kernel_basis(&m);
        assert_eq!(k.cols, 1);
        assert_eq!(k.col(0), vec![int(1), int(1)]);
        // brute force over a small box confirms generation
        for a in -4i64..=4 {
            for b in -4i64..=4 {
                let v = vec![int(a), int(b)];
                let in_kernel = m.mul_vec(&v).iter().all(|x| x.is_zero());
                assert_eq!(in_kernel, a == b);
            }
        }
    }

    #[test]
    fn solve_examples() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve(&m, &[int(4), int(9)]), Some(vec![int(2), int(3)]));
        assert_eq!(solve(&m, &[int(3), int(9)]), None);
    }

    #[test]
    fn hermite_canonical_under_unimodular_change() {
        let b = IntMatrix::from_rows(&[vec![2, 1], vec![0, 3], vec![4, 0]]);
        // post-multiplying by a unimodular matrix keeps the column lattice
        let t = IntMatrix::from_rows(&[vec![1, 4], vec![1, 5]]);
        assert!(is_unimodular(&t));
        let h1 = column_hermite(&b);
        let h2 = column_hermite(&b.mul(&t));
        assert_eq!(h1, h2);
    }

    #[test]
    fn lattice_membership() {
        let b = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let lat = LatticeBasis::new(2, (0..2).map(|j| b.col_sparse(j)).collect());
        assert!(lat.contains(&vec![(0, int(4)), (1, int(3))]));
        assert!(!lat.contains(&vec![(0, int(1))]));
    }

    #[test]
    fn solver_kernel_matches_snf_kernel() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let mut solver = LatticeSolver::identity(3);
        for i in 0..2 {
            let row: SparseVec = (0..3).map(|j| (j, m.at(i, j).clone())).collect();
            solver.constrain_row(&row);
        }
        let got = LatticeBasis::new(3, solver.into_columns());
        let expect = kernel_basis(&m);
        let expect = LatticeBasis::new(3, (0..expect.cols).map(|j| expect.col_sparse(j)).collect());
        assert!(got.equals(&expect));
    }

    #[test]
    fn solver_modulus() {
        // {(x, y) : x + y ≡ 0 mod 2}
        let mut solver = LatticeSolver::identity(2);
        solver.constrain_row_mod(&vec![(0, int(1)), (1, int(1))], &int(2));
        let lat = LatticeBasis::new(2, solver.into_columns());
        assert!(lat.contains(&vec![(0, int(1)), (1, int(1))]));
        assert!(lat.contains(&vec![(0, int(2))]));
        assert!(!lat.contains(&vec![(0, int(1))]));
    }

    #[test]
    fn solver_block_with_relations() {
        // R x ∈ lattice generated by (2, 2): x ∈ Z^2, R = identity
        let rows = vec![vec![(0, int(1))], vec![(1, int(1))]];
        let rel = IntMatrix::from_rows(&[vec![2], vec![2]]);
        let mut solver = LatticeSolver::identity(2);
        solver.constrain_block(&rows, &rel);
        let lat = LatticeBasis::new(2, solver.into_columns());
        assert!(lat.contains(&vec![(0, int(2)), (1, int(2))]));
        assert!(!lat.contains(&vec![(0, int(2))]));
        assert!(!lat.contains(&vec![(0, int(2)), (1, int(-2))]));
    }

    proptest! {
        #[test]
        fn snf_postconditions(rows in 1usize..5, cols in 1usize..5, seed in 0u64..500) {
            let mut state = seed;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as i64 % 7) - 3
            };
            let m = IntMatrix::from_fn(rows, cols, |_, _| int(next()));
            let snf = smith_normal_form(&m);
            prop_assert_eq!(snf.u.mul(&m).mul(&snf.w), snf.s.clone());
            prop_assert!(is_unimodular(&snf.u));
            prop_assert!(is_unimodular(&snf.w));
            for i in 0..snf.rank.saturating_sub(1) {
                prop_assert!((&snf.diag[i + 1] % &snf.diag[i]).is_zero());
            }
            for d in &snf.diag {
                prop_assert!(!d.is_negative());
            }
        }

        #[test]
        fn kernel_postconditions(seed in 0u64..300) {
            let mut state = seed;
            let mut next = || {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((state >> 33) as i64 % 5) - 2
            };
            let m = IntMatrix::from_fn(3, 4, |_, _| int(next()));
            let k = kernel_basis(&m);
            prop_assert!(m.mul(&k).is_zero());
            // every small kernel vector is generated
            let lat = LatticeBasis::new(4, (0..k.cols).map(|j| k.col_sparse(j)).collect());
            for a in -2i64..=2 {
                for b in -2i64..=2 {
                    for c in -2i64..=2 {
                        for d in -2i64..=2 {
                            let v = vec![int(a), int(b), int(c), int(d)];
                            if m.mul_vec(&v).iter().all(|x| x.is_zero()) {
                                prop_assert!(lat.contains(&sparse_from_dense(&v)));
                            }
                        }
                    }
                }
            }
        }
    }
}
