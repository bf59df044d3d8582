//! Bit-packed linear algebra over GF(2).
//!
//! Vectors and matrices pack 64 positions per `u64` word, row-major.
//! Everything here is deterministic: elimination walks vectors in input
//! order and positions in a fixed direction, so identical inputs always
//! produce identical outputs.

use crate::{Error, Result};
use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD_BITS)
}

/// Dense GF(2) vector. Positions beyond `len` are kept zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    /// Builds from 0/1 entries.
    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    /// Unit vector e_pos (0-based).
    pub fn unit(len: usize, pos: usize) -> Self {
        let mut v = BitVector::zeros(len);
        v.set(pos, true);
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, pos: usize) -> bool {
        assert!(pos < self.len, "position {pos} out of range for length {}", self.len);
        self.words[pos / WORD_BITS] >> (pos % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, pos: usize, value: bool) {
        assert!(pos < self.len, "position {pos} out of range for length {}", self.len);
        let mask = 1u64 << (pos % WORD_BITS);
        if value {
            self.words[pos / WORD_BITS] |= mask;
        } else {
            self.words[pos / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, pos: usize) {
        let cur = self.get(pos);
        self.set(pos, !cur);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "xor of unequal lengths");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Hamming weight |x|.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Number of positions set in both vectors (integer-valued dot product).
    pub fn and_weight(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "and_weight of unequal lengths");
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    /// Number of positions set in either vector.
    pub fn or_weight(&self, other: &BitVector) -> usize {
        assert_eq!(self.len, other.len, "or_weight of unequal lengths");
        self.words.iter().zip(&other.words).map(|(a, b)| (a | b).count_ones() as usize).sum()
    }

    /// Standard inner product mod 2.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot of unequal lengths");
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc & 1 == 1
    }

    /// Set positions, ascending, 0-based.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.weight());
        for (wi, &w) in self.words.iter().enumerate() {
            let mut bits = w;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(wi * WORD_BITS + b);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn highest_set_bit(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * WORD_BITS + (63 - w.leading_zeros() as usize));
            }
        }
        None
    }

    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for p in self.support() {
            out.set(p, true);
        }
        for p in other.support() {
            out.set(self.len + p, true);
        }
        out
    }

    /// Copy of positions `[start, start+len)`.
    pub fn slice(&self, start: usize, len: usize) -> BitVector {
        assert!(start + len <= self.len, "slice out of range");
        let mut out = BitVector::zeros(len);
        for i in 0..len {
            if self.get(start + i) {
                out.set(i, true);
            }
        }
        out
    }

    /// Kronecker product of row vectors: entry (i*other.len + j) = self_i * other_j.
    pub fn kron(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len * other.len);
        for i in self.support() {
            for j in other.support() {
                out.set(i * other.len + j, true);
            }
        }
        out
    }

    pub fn bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        Ok(())
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Dense GF(2) matrix, row-major packed.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words_per_row: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let wpr = words_for(cols);
        BitMatrix { rows, cols, words_per_row: wpr, data: vec![0; rows * wpr] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds from rows of 0/1 entries; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = BitMatrix::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &b) in row.iter().enumerate() {
                if b != 0 {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    pub fn from_bitvector_rows(rows: &[BitVector], cols: usize) -> Self {
        let mut m = BitMatrix::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            m.set_row(i, row);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        self.data[r * self.words_per_row + c / WORD_BITS] >> (c % WORD_BITS) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r},{c}) out of range");
        let idx = r * self.words_per_row + c / WORD_BITS;
        let mask = 1u64 << (c % WORD_BITS);
        if value {
            self.data[idx] |= mask;
        } else {
            self.data[idx] &= !mask;
        }
    }

    pub fn row(&self, r: usize) -> BitVector {
        assert!(r < self.rows);
        let start = r * self.words_per_row;
        BitVector { len: self.cols, words: self.data[start..start + self.words_per_row].to_vec() }
    }

    pub fn set_row(&mut self, r: usize, v: &BitVector) {
        assert!(r < self.rows && v.len() == self.cols);
        let start = r * self.words_per_row;
        self.data[start..start + self.words_per_row].copy_from_slice(&v.words);
    }

    pub fn column(&self, c: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    /// row[dst] ^= row[src]
    pub fn add_row_to(&mut self, src: usize, dst: usize) {
        assert!(src < self.rows && dst < self.rows && src != dst);
        let (s, d) = (src * self.words_per_row, dst * self.words_per_row);
        for w in 0..self.words_per_row {
            let x = self.data[s + w];
            self.data[d + w] ^= x;
        }
    }

    pub fn xor_row(&mut self, r: usize, v: &BitVector) {
        assert!(r < self.rows && v.len() == self.cols);
        let start = r * self.words_per_row;
        for (w, b) in self.data[start..start + self.words_per_row].iter_mut().zip(&v.words) {
            *w ^= b;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.words_per_row {
            self.data.swap(a * self.words_per_row + w, b * self.words_per_row + w);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.row(r).support() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "mul dimension mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let acc_start = r * out.words_per_row;
            for k in self.row(r).support() {
                let src = k * other.words_per_row;
                for w in 0..other.words_per_row {
                    out.data[acc_start + w] ^= other.data[src + w];
                }
            }
        }
        out
    }

    /// Matrix-vector product M v (v as column).
    pub fn mul_vec(&self, v: &BitVector) -> BitVector {
        assert_eq!(self.cols, v.len(), "mul_vec dimension mismatch");
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.row(r).dot(v) {
                out.set(r, true);
            }
        }
        out
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add dimension mismatch");
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        out
    }

    pub fn xor_assign(&mut self, other: &BitMatrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// [self | other]
    pub fn hstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            out.set_row(r, &self.row(r).concat(&other.row(r)));
        }
        out
    }

    /// [self; other]
    pub fn vstack(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.cols, "vstack col mismatch");
        let mut out = BitMatrix::zeros(self.rows + other.rows, self.cols);
        for r in 0..self.rows {
            out.set_row(r, &self.row(r));
        }
        for r in 0..other.rows {
            out.set_row(self.rows + r, &other.row(r));
        }
        out
    }

    /// Writes `sub` with its (0,0) at (r0,c0).
    pub fn paste(&mut self, r0: usize, c0: usize, sub: &BitMatrix) {
        assert!(r0 + sub.rows <= self.rows && c0 + sub.cols <= self.cols, "paste out of range");
        for r in 0..sub.rows {
            for c in sub.row(r).support() {
                self.set(r0 + r, c0 + c, true);
            }
        }
    }

    /// Kronecker product: entry ((i*other.rows + r), (j*other.cols + c)) = self(i,j)*other(r,c).
    pub fn kron(&self, other: &BitMatrix) -> BitMatrix {
        let mut out = BitMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in self.row(i).support() {
                for r in 0..other.rows {
                    for c in other.row(r).support() {
                        out.set(i * other.rows + r, j * other.cols + c, true);
                    }
                }
            }
        }
        out
    }

    /// GF(2) rank via Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..m.cols {
            let mut pivot = None;
            for r in rank..m.rows {
                if m.get(r, c) {
                    pivot = Some(r);
                    break;
                }
            }
            let Some(p) = pivot else { continue };
            m.swap_rows(rank, p);
            for r in 0..m.rows {
                if r != rank && m.get(r, c) {
                    m.add_row_to(rank, r);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    /// Basis of the right kernel {v : M v = 0}; deterministic (RREF + free columns,
    /// ascending).
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let rref = Rref::of(self);
        let pivot_cols: Vec<usize> = rref.pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_cols.contains(&free) {
                continue;
            }
            let mut v = BitVector::zeros(self.cols);
            v.set(free, true);
            for (ri, &pc) in rref.pivots.iter().enumerate() {
                if rref.rows[ri].get(free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse over GF(2), if invertible.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = BitMatrix::identity(n);
        for c in 0..n {
            let mut pivot = None;
            for r in c..n {
                if a.get(r, c) {
                    pivot = Some(r);
                    break;
                }
            }
            let p = pivot?;
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            for r in 0..n {
                if r != c && a.get(r, c) {
                    a.add_row_to(c, r);
                    inv.add_row_to(c, r);
                }
            }
        }
        Some(inv)
    }

    /// One solution x of M x = b (x, b columns), if consistent.
    pub fn solve(&self, b: &BitVector) -> Option<BitVector> {
        assert_eq!(self.rows, b.len(), "solve dimension mismatch");
        let mut bcol = BitMatrix::zeros(self.rows, 1);
        for r in b.support() {
            bcol.set(r, 0, true);
        }
        let aug = self.hstack(&bcol);
        let rref = Rref::of(&aug);
        let mut x = BitVector::zeros(self.cols);
        for (ri, &pc) in rref.pivots.iter().enumerate() {
            if pc == self.cols {
                return None; // pivot in the augmented column: inconsistent
            }
            if rref.rows[ri].get(self.cols) {
                x.set(pc, true);
            }
        }
        Some(x)
    }

    /// Whether v lies in the row space of M.
    pub fn row_space_contains(&self, v: &BitVector) -> bool {
        assert_eq!(self.cols, v.len());
        Rref::of(self).reduce(v).is_zero()
    }

    /// Row-vector product v·M: XOR of the rows selected by v.
    pub fn row_combination(&self, v: &BitVector) -> BitVector {
        assert_eq!(v.len(), self.rows, "row_combination dimension mismatch");
        let mut out = BitVector::zeros(self.cols);
        for r in v.support() {
            out.xor_assign(&self.row(r));
        }
        out
    }

    /// Parses the parity-check text format: first line "rows cols", then one
    /// line of space-separated 0/1 entries per row. Ragged rows are rejected.
    pub fn parse_text(input: &str) -> Result<BitMatrix> {
        let mut lines = input.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty input".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(Error::Parse(format!("expected \"rows cols\" header, got {header:?}")));
        }
        let rows: usize =
            dims[0].parse().map_err(|_| Error::Parse(format!("bad row count {:?}", dims[0])))?;
        let cols: usize =
            dims[1].parse().map_err(|_| Error::Parse(format!("bad col count {:?}", dims[1])))?;
        let mut m = BitMatrix::zeros(rows, cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {rows} rows, got {r}")))?;
            let entries: Vec<&str> = line.split_whitespace().collect();
            if entries.len() != cols {
                return Err(Error::Parse(format!(
                    "row {} has {} entries, expected {cols}",
                    r + 1,
                    entries.len()
                )));
            }
            for (c, e) in entries.iter().enumerate() {
                match *e {
                    "0" => {}
                    "1" => m.set(r, c, true),
                    other => {
                        return Err(Error::Parse(format!("bad entry {other:?} in row {}", r + 1)))
                    }
                }
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse(format!("more than {rows} rows")));
        }
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<String> =
                (0..self.cols).map(|c| (self.get(r, c) as u8).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "{}", self.row(r))?;
        }
        Ok(())
    }
}

/// Outer product col^T · row: matrix whose r-th row equals `row` wherever
/// col_r = 1 and is zero elsewhere.
pub fn outer(col: &BitVector, row: &BitVector) -> BitMatrix {
    let mut m = BitMatrix::zeros(col.len(), row.len());
    for r in col.support() {
        m.set_row(r, row);
    }
    m
}

/// Indices of a greedy maximal independent subset of rows, scanned in order.
pub fn independent_row_subset(m: &BitMatrix) -> Vec<usize> {
    // Echelon rows stay sorted by pivot descending so one reduction pass
    // (each XOR only introduces bits below the pivot just cleared) suffices.
    let mut echelon: Vec<(usize, BitVector)> = Vec::new();
    let mut chosen = Vec::new();
    for r in 0..m.rows() {
        let mut v = m.row(r);
        for (p, e) in &echelon {
            if v.get(*p) {
                v.xor_assign(e);
            }
        }
        if let Some(p) = v.highest_set_bit() {
            chosen.push(r);
            let pos = echelon.partition_point(|(q, _)| *q > p);
            echelon.insert(pos, (p, v));
        }
    }
    chosen
}

/// Row-reduced echelon form with pivot bookkeeping; used for kernels,
/// solving, and row-space membership.
struct Rref {
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Rref {
    fn of(m: &BitMatrix) -> Rref {
        let mut rows: Vec<BitVector> = (0..m.rows()).map(|r| m.row(r)).collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..m.cols() {
            let Some(p) = (rank..rows.len()).find(|&r| rows[r].get(c)) else { continue };
            rows.swap(rank, p);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row.get(c) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(c);
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rows.truncate(rank);
        Rref { rows, pivots }
    }

    /// Reduces v by the echelon rows; zero result means v is in the row space.
    fn reduce(&self, v: &BitVector) -> BitVector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out.get(p) {
                out.xor_assign(row);
            }
        }
        out
    }
}

/// Strongly lower triangular basis: vector j is nonzero at its pivot p_j,
/// zero above it (positions > p_j), and every other vector is zero at p_j.
/// Pivots are 0-based and pairwise distinct; vectors are ordered by pivot.
#[derive(Clone, Debug)]
pub struct SltBasis {
    vectors: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl SltBasis {
    pub fn vectors(&self) -> &[BitVector] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// The basis vector with the given pivot.
    pub fn vector_for_pivot(&self, pivot: usize) -> Option<&BitVector> {
        self.pivots.iter().position(|&p| p == pivot).map(|i| &self.vectors[i])
    }
}

/// Normalizes an independent set into a strongly lower triangular basis.
/// Pivot = highest nonzero index; full reduction zeroes each pivot position
/// in every other vector. Output vectors are sorted by pivot.
pub fn slt_normalize(input: &[BitVector]) -> Result<SltBasis> {
    let mut chosen: Vec<(usize, BitVector)> = Vec::new();
    for v in input {
        let mut v = v.clone();
        loop {
            let Some(p) = v.highest_set_bit() else { return Err(Error::NotABasis) };
            match chosen.iter().find(|(cp, _)| *cp == p) {
                Some((_, u)) => {
                    let u = u.clone();
                    v.xor_assign(&u);
                }
                None => {
                    chosen.push((p, v));
                    break;
                }
            }
        }
    }
    chosen.sort_by_key(|(p, _)| *p);
    // Backward pass: clear every pivot position in the other vectors.
    for i in 0..chosen.len() {
        let (p, v) = (chosen[i].0, chosen[i].1.clone());
        for (j, (_, u)) in chosen.iter_mut().enumerate() {
            if j != i && u.get(p) {
                u.xor_assign(&v);
            }
        }
    }
    let pivots = chosen.iter().map(|(p, _)| *p).collect();
    let vectors = chosen.into_iter().map(|(_, v)| v).collect();
    Ok(SltBasis { vectors, pivots })
}
