//! Exact integer/rational linear algebra: matrices, Hermite and Smith normal
//! forms, and the lattice arithmetic the rest of the crate is built on.
//!
//! Everything here is exact; no floating point appears anywhere in the crate.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(n: i64) -> Int {
    Int::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(int(n))
}

pub fn ratio(p: i64, q: i64) -> Rat {
    Rat::new(int(p), int(q))
}

pub fn rat_of(n: &Int) -> Rat {
    Rat::from_integer(n.clone())
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Sign of a rational as -1, 0, +1.
pub fn sign(r: &Rat) -> i32 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub type IVec = Vec<Int>;
pub type QVec = Vec<Rat>;

pub fn ivec(v: &[i64]) -> IVec {
    v.iter().map(|&x| int(x)).collect()
}

pub fn qvec(v: &[i64]) -> QVec {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn ivec_to_q(v: &[Int]) -> QVec {
    v.iter().map(rat_of).collect()
}

pub fn qvec_is_zero(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn qvec_add(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn qvec_sub(a: &[Rat], b: &[Rat]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn qvec_scale(a: &[Rat], c: &Rat) -> QVec {
    a.iter().map(|x| x * c).collect()
}

pub fn qvec_dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairing of an integer functional with a rational point.
pub fn pair_iq(f: &[Int], x: &[Rat]) -> Rat {
    f.iter().zip(x).map(|(a, b)| rat_of(a) * b).sum()
}

pub fn pair_ii(f: &[Int], x: &[Int]) -> Int {
    f.iter().zip(x).map(|(a, b)| a * b).sum()
}

// ---------------------------------------------------------------------------
// Integer matrices
// ---------------------------------------------------------------------------

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Int>,
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl IMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IMat { rows, cols, a: vec![Int::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Int::one());
        }
        m
    }

    pub fn from_rows(rows: &[IVec]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = IMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_cols(cols: &[IVec]) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = IMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.a[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> IVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> IVec {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut m = IMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.cols, other.rows);
        let mut m = IMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Int::zero();
                for k in 0..self.cols {
                    s += self.get(i, k) * other.get(k, j);
                }
                m.set(i, j, s);
            }
        }
        m
    }

    pub fn mul_ivec(&self, v: &[Int]) -> IVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum()).collect()
    }

    pub fn mul_qvec(&self, v: &[Rat]) -> QVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| rat_of(self.get(i, j)) * &v[j]).sum())
            .collect()
    }

    pub fn to_qmat(&self) -> QMat {
        QMat { rows: self.rows, cols: self.cols, a: self.a.iter().map(rat_of).collect() }
    }

    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols);
        let d = self.to_qmat().det();
        assert!(is_integer(&d));
        d.numer().clone()
    }

    /// Inverse of a matrix with determinant +-1. Panics otherwise.
    pub fn inverse_unimodular(&self) -> IMat {
        let inv = self.to_qmat().inverse().expect("matrix not invertible");
        let mut m = IMat::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = inv.get(i, j);
                assert!(is_integer(v), "inverse is not integral");
                m.set(i, j, v.numer().clone());
            }
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IMat::identity(self.rows)
    }
}

// ---------------------------------------------------------------------------
// Rational matrices
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Rat>,
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QMat {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, a: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: &[QVec]) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut m = QMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c);
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_cols(cols: &[QVec]) -> Self {
        QMat::from_rows(cols).transpose()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.a[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.a[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> QVec {
        (0..self.cols).map(|j| self.get(i, j).clone()).collect()
    }

    pub fn col(&self, j: usize) -> QVec {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut m = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut m = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut s = Rat::zero();
                for k in 0..self.cols {
                    s += self.get(i, k) * other.get(k, j);
                }
                m.set(i, j, s);
            }
        }
        m
    }

    pub fn mul_qvec(&self, v: &[Rat]) -> QVec {
        assert_eq!(self.cols, v.len());
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum()).collect()
    }

    /// Row-reduce in place; returns pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let mut piv = None;
            for i in r..self.rows {
                if !self.get(i, c).is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { continue };
            for j in 0..self.cols {
                let tmp = self.get(r, j).clone();
                self.set(r, j, self.get(p, j).clone());
                self.set(p, j, tmp);
            }
            let inv = self.get(r, c).clone();
            for j in 0..self.cols {
                let v = self.get(r, j) / &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && !self.get(i, c).is_zero() {
                    let f = self.get(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.get(i, j) - &f * self.get(r, j);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {x : Ax = 0}.
    pub fn kernel_basis(&self) -> Vec<QVec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let rank = pivots.len();
        let mut free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.sort();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Rat::zero(); self.cols];
            v[f] = Rat::one();
            for (r, &p) in pivots.iter().enumerate().take(rank) {
                v[p] = -m.get(r, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of Ax = b, if any.
    pub fn solve(&self, b: &[Rat]) -> Option<QVec> {
        assert_eq!(self.rows, b.len());
        let mut aug = QMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rat::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(r, self.cols).clone();
        }
        Some(x)
    }

    pub fn det(&self) -> Rat {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for c in 0..n {
            let mut piv = None;
            for i in c..n {
                if !m.get(i, c).is_zero() {
                    piv = Some(i);
                    break;
                }
            }
            let Some(p) = piv else { return Rat::zero() };
            if p != c {
                for j in 0..n {
                    let tmp = m.get(c, j).clone();
                    m.set(c, j, m.get(p, j).clone());
                    m.set(p, j, tmp);
                }
                det = -det;
            }
            det *= m.get(c, c);
            let inv = m.get(c, c).clone();
            for i in (c + 1)..n {
                if !m.get(i, c).is_zero() {
                    let f = m.get(i, c) / &inv;
                    for j in c..n {
                        let v = m.get(i, j) - &f * m.get(c, j);
                        m.set(i, j, v);
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rat::one());
        }
        let pivots = aug.rref();
        if pivots.len() != n {
            return None;
        }
        let mut inv = QMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }
}

// ---------------------------------------------------------------------------
// Hermite / Smith normal forms
// ---------------------------------------------------------------------------

/// Column-style Hermite normal form: returns H with the same column span over
/// ZZ as `m`, lower-triangular-ish with positive pivots, zero columns dropped.
pub fn hnf_col(m: &IMat) -> IMat {
    // Work on the transpose with row operations, then transpose back.
    let mut a = m.transpose();
    let rows = a.rows;
    let cols = a.cols;
    let mut pivot_row = 0;
    for c in 0..cols {
        if pivot_row == rows {
            break;
        }
        loop {
            // Find row with smallest nonzero |entry| in column c at or below pivot_row.
            let mut best: Option<usize> = None;
            for i in pivot_row..rows {
                if !a.get(i, c).is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) => {
                            if a.get(i, c).abs() < a.get(b, c).abs() {
                                Some(i)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            if b != pivot_row {
                for j in 0..cols {
                    let tmp = a.get(pivot_row, j).clone();
                    a.set(pivot_row, j, a.get(b, j).clone());
                    a.set(b, j, tmp);
                }
            }
            let mut done = true;
            let piv = a.get(pivot_row, c).clone();
            for i in (pivot_row + 1)..rows {
                if !a.get(i, c).is_zero() {
                    let q = floor_div(a.get(i, c), &piv);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let v = a.get(i, j) - &q * a.get(pivot_row, j);
                            a.set(i, j, v);
                        }
                    }
                    if !a.get(i, c).is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if !a.get(pivot_row, c).is_zero() {
            if a.get(pivot_row, c).is_negative() {
                for j in 0..cols {
                    let v = -a.get(pivot_row, j).clone();
                    a.set(pivot_row, j, v);
                }
            }
            // Reduce entries above the pivot.
            let piv = a.get(pivot_row, c).clone();
            for i in 0..pivot_row {
                let q = floor_div(a.get(i, c), &piv);
                if !q.is_zero() {
                    for j in 0..cols {
                        let v = a.get(i, j) - &q * a.get(pivot_row, j);
                        a.set(i, j, v);
                    }
                }
            }
            pivot_row += 1;
        }
    }
    // Keep the nonzero rows (of the transposed working copy).
    let kept: Vec<IVec> = (0..pivot_row).map(|i| a.row(i)).collect();
    IMat::from_rows(&kept).transpose()
}

fn floor_div(a: &Int, b: &Int) -> Int {
    let (q, r) = num::Integer::div_rem(a, b);
    if r.is_zero() || (r.is_negative() == b.is_negative()) {
        q
    } else {
        q - Int::one()
    }
}

/// Smith normal form: returns (d, l, r) with l * m * r = diag(d), l and r
/// unimodular. `d` has length min(rows, cols), divisibility d[i] | d[i+1].
pub fn snf(m: &IMat) -> (Vec<Int>, IMat, IMat) {
    let mut a = m.clone();
    let rows = a.rows;
    let cols = a.cols;
    let mut l = IMat::identity(rows);
    let mut r = IMat::identity(cols);
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // Find a nonzero pivot in the remaining block.
        let mut piv: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a.get(i, j).is_zero() {
                    piv = match piv {
                        None => Some((i, j)),
                        Some((pi, pj)) => {
                            if a.get(i, j).abs() < a.get(pi, pj).abs() {
                                Some((i, j))
                            } else {
                                Some((pi, pj))
                            }
                        }
                    };
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        swap_rows(&mut a, t, pi);
        swap_rows(&mut l, t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut r, t, pj);
        let mut clean = true;
        // Clear column t.
        for i in (t + 1)..rows {
            if !a.get(i, t).is_zero() {
                let q = num::Integer::div_floor(a.get(i, t), a.get(t, t));
                row_sub(&mut a, i, t, &q);
                row_sub(&mut l, i, t, &q);
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
        }
        // Clear row t.
        for j in (t + 1)..cols {
            if !a.get(t, j).is_zero() {
                let q = num::Integer::div_floor(a.get(t, j), a.get(t, t));
                col_sub(&mut a, j, t, &q);
                col_sub(&mut r, j, t, &q);
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }
        // Divisibility: fold in any entry not divisible by the pivot.
        let mut bad: Option<(usize, usize)> = None;
        'outer: for i in (t + 1)..rows {
            for j in (t + 1)..cols {
                if !num::Integer::is_multiple_of(a.get(i, j), a.get(t, t)) {
                    bad = Some((i, j));
                    break 'outer;
                }
            }
        }
        if let Some((i, _)) = bad {
            // Add row i to row t, then continue reducing.
            let minus_one = -Int::one();
            row_sub(&mut a, t, i, &minus_one);
            row_sub(&mut l, t, i, &minus_one);
            continue;
        }
        if a.get(t, t).is_negative() {
            negate_row(&mut a, t);
            negate_row(&mut l, t);
        }
        t += 1;
    }
    let d: Vec<Int> = (0..n).map(|i| a.get(i, i).clone()).collect();
    (d, l, r)
}

fn swap_rows(m: &mut IMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..m.cols {
        let tmp = m.get(i, c).clone();
        m.set(i, c, m.get(j, c).clone());
        m.set(j, c, tmp);
    }
}

fn swap_cols(m: &mut IMat, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..m.rows {
        let tmp = m.get(r, i).clone();
        m.set(r, i, m.get(r, j).clone());
        m.set(r, j, tmp);
    }
}

fn row_sub(m: &mut IMat, i: usize, j: usize, q: &Int) {
    for c in 0..m.cols {
        let v = m.get(i, c) - q * m.get(j, c);
        m.set(i, c, v);
    }
}

fn col_sub(m: &mut IMat, j: usize, i: usize, q: &Int) {
    for r in 0..m.rows {
        let v = m.get(r, j) - q * m.get(r, i);
        m.set(r, j, v);
    }
}

fn negate_row(m: &mut IMat, i: usize) {
    for c in 0..m.cols {
        let v = -m.get(i, c).clone();
        m.set(i, c, v);
    }
}

// ---------------------------------------------------------------------------
// Lattices
// ---------------------------------------------------------------------------

/// A finitely generated subgroup of QQ^n, stored by a basis (columns).
/// The basis is linearly independent; rank may be smaller than the ambient
/// dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub dim: usize,
    /// Basis vectors (each of length `dim`).
    pub basis: Vec<QVec>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn standard(dim: usize) -> Self {
        let mut basis = Vec::new();
        for i in 0..dim {
            let mut v = vec![Rat::zero(); dim];
            v[i] = Rat::one();
            basis.push(v);
        }
        Lattice { dim, basis }
    }

    /// Lattice generated by arbitrary rational vectors.
    pub fn from_generators(dim: usize, gens: &[QVec]) -> Self {
        let gens: Vec<&QVec> = gens.iter().filter(|g| !qvec_is_zero(g)).collect();
        if gens.is_empty() {
            return Lattice::zero(dim);
        }
        // Common denominator d, integer HNF, then divide back.
        let mut d = Int::one();
        for g in &gens {
            for x in g.iter() {
                d = num::Integer::lcm(&d, x.denom());
            }
        }
        let cols: Vec<IVec> = gens
            .iter()
            .map(|g| g.iter().map(|x| x.numer() * (&d / x.denom())).collect())
            .collect();
        let h = hnf_col(&IMat::from_cols(&cols));
        let basis = (0..h.cols)
            .map(|j| h.col(j).iter().map(|x| Rat::new(x.clone(), d.clone())).collect())
            .collect();
        Lattice { dim, basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of v in this basis if v lies in the QQ-span.
    pub fn coords(&self, v: &[Rat]) -> Option<QVec> {
        if self.basis.is_empty() {
            return if qvec_is_zero(v) { Some(Vec::new()) } else { None };
        }
        QMat::from_cols(&self.basis).solve(v)
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        match self.coords(v) {
            Some(c) => c.iter().all(is_integer),
            None => false,
        }
    }

    /// Intersection with the kernel of rational functionals (rows of `c`).
    pub fn intersect_kernel(&self, c: &QMat) -> Lattice {
        if self.basis.is_empty() {
            return self.clone();
        }
        assert_eq!(c.cols, self.dim);
        let cb = c.mul(&QMat::from_cols(&self.basis));
        // Integer saturated kernel of cb: clear denominators, use SNF transforms.
        let mut den = Int::one();
        for x in cb.a.iter() {
            den = num::Integer::lcm(&den, x.denom());
        }
        let mut im = IMat::zero(cb.rows, cb.cols);
        for i in 0..cb.rows {
            for j in 0..cb.cols {
                let x = cb.get(i, j);
                im.set(i, j, x.numer() * (&den / x.denom()));
            }
        }
        let (d, _l, r) = snf(&im);
        let rank = d.iter().filter(|x| !x.is_zero()).count();
        let mut gens = Vec::new();
        for j in rank..im.cols {
            let x = r.col(j);
            // v = basis * x
            let mut v = vec![Rat::zero(); self.dim];
            for (k, b) in self.basis.iter().enumerate() {
                for i in 0..self.dim {
                    v[i] += &b[i] * rat_of(&x[k]);
                }
            }
            gens.push(v);
        }
        Lattice::from_generators(self.dim, &gens)
    }

    /// Sum of two lattices in the same ambient space.
    pub fn sum(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let mut gens = self.basis.clone();
        gens.extend(other.basis.clone());
        Lattice::from_generators(self.dim, &gens)
    }

    /// QQ-span membership.
    pub fn span_contains(&self, v: &[Rat]) -> bool {
        self.coords(v).is_some()
    }
}

/// Solve C x = d for x in ZZ^n, where C, d are rational. Returns one solution.
pub fn solve_affine_integer(c: &QMat, d: &[Rat]) -> Option<IVec> {
    assert_eq!(c.rows, d.len());
    // Clear denominators per row.
    let mut den = Int::one();
    for x in c.a.iter() {
        den = num::Integer::lcm(&den, x.denom());
    }
    for x in d.iter() {
        den = num::Integer::lcm(&den, x.denom());
    }
    let mut a = IMat::zero(c.rows, c.cols);
    for i in 0..c.rows {
        for j in 0..c.cols {
            let x = c.get(i, j);
            a.set(i, j, x.numer() * (&den / x.denom()));
        }
    }
    let b: IVec = d.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    let (diag, l, r) = snf(&a);
    let lb = l.mul_ivec(&b);
    let mut y = vec![Int::zero(); c.cols];
    for i in 0..c.rows {
        if i < diag.len() && !diag[i].is_zero() {
            let (q, rem) = num::Integer::div_rem(&lb[i], &diag[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !lb[i].is_zero() {
            return None;
        }
    }
    Some(r.mul_ivec(&y))
}

/// Finite abelian quotient big/sub with tracked generator classes.
///
/// `sub` must be a finite-index subgroup of `big` (same QQ-span). Returns the
/// invariant factors > 1 and a function evaluating the class of a vector as
/// coordinates in those cyclic factors.
#[derive(Clone, Debug)]
pub struct FiniteQuotient {
    /// Invariant factors (each > 1); the quotient is the product of Z/d_i.
    pub invariants: Vec<Int>,
    big_basis: Vec<QVec>,
    /// Row transform: class coords of v are (l * bigcoords(v)) mod d, at the
    /// positions of nontrivial invariants.
    l: IMat,
    positions: Vec<usize>,
    full_d: Vec<Int>,
}

impl FiniteQuotient {
    pub fn new(big: &Lattice, sub_gens: &[QVec]) -> FiniteQuotient {
        let r = big.rank();
        // Express sub generators in big coordinates (must be integral).
        let mut cols = Vec::new();
        for g in sub_gens {
            let c = big.coords(g).expect("subgroup generator outside span");
            assert!(c.iter().all(is_integer), "subgroup generator not in lattice");
            cols.push(c.iter().map(|x| x.numer().clone()).collect::<IVec>());
        }
        let m = if cols.is_empty() { IMat::zero(r, 0) } else { IMat::from_cols(&cols) };
        let (d, l, _rt) = snf(&m);
        let mut full_d = vec![Int::zero(); r];
        for (i, di) in d.iter().enumerate() {
            full_d[i] = di.clone();
        }
        let mut invariants = Vec::new();
        let mut positions = Vec::new();
        for (i, di) in full_d.iter().enumerate() {
            if di.is_zero() {
                panic!("subgroup does not have finite index");
            }
            if !di.is_one() {
                invariants.push(di.clone());
                positions.push(i);
            }
        }
        FiniteQuotient { invariants, big_basis: big.basis.clone(), l, positions, full_d }
    }

    pub fn order(&self) -> Int {
        let mut o = Int::one();
        for d in &self.invariants {
            o *= d;
        }
        o
    }

    /// Class of a lattice vector, as coordinates in the invariant factors.
    pub fn class_of(&self, v: &[Rat]) -> IVec {
        let coords = QMat::from_cols(&self.big_basis)
            .solve(v)
            .expect("vector outside lattice span");
        assert!(coords.iter().all(is_integer), "vector not in lattice");
        let ic: IVec = coords.iter().map(|x| x.numer().clone()).collect();
        let t = self.l.mul_ivec(&ic);
        self.positions
            .iter()
            .map(|&i| num::Integer::mod_floor(&t[i], &self.full_d[i]))
            .collect()
    }
}

/// Exact square root of a rational that is a perfect square. Panics otherwise.
pub fn rat_sqrt(r: &Rat) -> Rat {
    assert!(!r.is_negative());
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    assert_eq!(&(&n * &n), r.numer(), "not a perfect square");
    assert_eq!(&(&d * &d), r.denom(), "not a perfect square");
    Rat::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_solve_kernel() {
        let a = QMat::from_rows(&[qvec(&[1, 2, 3]), qvec(&[2, 4, 6]), qvec(&[1, 0, 1])]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel_basis();
        assert_eq!(k.len(), 1);
        assert!(qvec_is_zero(&a.mul_qvec(&k[0])));
        let b = qvec(&[6, 12, 2]);
        let x = a.solve(&b).unwrap();
        assert_eq!(a.mul_qvec(&x), b);
    }

    #[test]
    fn hnf_preserves_lattice() {
        let m = IMat::from_cols(&[ivec(&[2, 0]), ivec(&[1, 1]), ivec(&[0, 4])]);
        let h = hnf_col(&m);
        // Every original column must be an integer combination of HNF columns
        // and vice versa.
        let lat = Lattice::from_generators(
            2,
            &(0..h.cols).map(|j| ivec_to_q(&h.col(j))).collect::<Vec<_>>(),
        );
        for j in 0..m.cols {
            assert!(lat.contains(&ivec_to_q(&m.col(j))));
        }
        let orig = Lattice::from_generators(
            2,
            &(0..m.cols).map(|j| ivec_to_q(&m.col(j))).collect::<Vec<_>>(),
        );
        for j in 0..h.cols {
            assert!(orig.contains(&ivec_to_q(&h.col(j))));
        }
    }

    #[test]
    fn snf_transforms() {
        let m = IMat::from_rows(&[ivec(&[2, 4, 4]), ivec(&[-6, 6, 12]), ivec(&[10, 4, 16])]);
        let (d, l, r) = snf(&m);
        let prod = l.mul(&m).mul(&r);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { d[i].clone() } else { Int::zero() };
                assert_eq!(*prod.get(i, j), expect);
            }
        }
        assert_eq!(l.det().abs(), Int::one());
        assert_eq!(r.det().abs(), Int::one());
        for i in 0..2 {
            if !d[i].is_zero() {
                assert!(num::Integer::is_multiple_of(&d[i + 1], &d[i]) || d[i + 1].is_zero());
            }
        }
    }

    #[test]
    fn finite_quotient_cyclic() {
        // Z^2 / <(2,0),(0,3)> = Z/2 x Z/3 = Z/6.
        let big = Lattice::standard(2);
        let q = FiniteQuotient::new(&big, &[qvec(&[2, 0]), qvec(&[0, 3])]);
        assert_eq!(q.order(), int(6));
        let c = q.class_of(&qvec(&[1, 1]));
        assert!(!c.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn affine_integer_solve() {
        // x congruent to (1/2, 1/2) modulo the line (1,-1): x1 + x2 = 1.
        let c = QMat::from_rows(&[qvec(&[1, 1])]);
        let x = solve_affine_integer(&c, &[rat(1)]).unwrap();
        assert_eq!(&x[0] + &x[1], int(1));
        // No integer solution to 2x = 1.
        let c2 = QMat::from_rows(&[qvec(&[2])]);
        assert!(solve_affine_integer(&c2, &[rat(1)]).is_none());
    }

    #[test]
    fn lattice_intersect_kernel_saturated() {
        // L = Z^3, kernel of (1,1,0): expect basis of rank 2 containing (1,-1,0).
        let l = Lattice::standard(3);
        let c = QMat::from_rows(&[qvec(&[1, 1, 0])]);
        let k = l.intersect_kernel(&c);
        assert_eq!(k.rank(), 2);
        assert!(k.contains(&qvec(&[1, -1, 0])));
        assert!(k.contains(&qvec(&[0, 0, 1])));
        assert!(!k.contains(&qvec(&[1, 0, 0])));
    }
}
