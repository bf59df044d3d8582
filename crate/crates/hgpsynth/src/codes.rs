//! CSS code construction: generic check-matrix codes, hypergraph products of
//! classical codes, and the toric family.
//!
//! Hypergraph-product qubits live on two grids: the left (n_a × n_b) grid and
//! the right (m_a × m_b) grid. Grid coordinates are 1-based, as are the
//! linear indices they map to; bit positions inside vectors are 0-based.

use crate::gf2core::{BitMatrix, BitVector};
use crate::verify::SignedPauli;
use crate::{Error, Result};
use std::fmt;

/// CSS stabilizer code defined by X and Z parity checks with hx·hz^T = 0.
#[derive(Clone, Debug)]
pub struct CssCode {
    pub hx: BitMatrix,
    pub hz: BitMatrix,
    pub n: usize,
    pub k: usize,
}

/// Which of the two qubit grids a coordinate lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Sector {
    Left,
    Right,
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::Left => "L",
            Sector::Right => "R",
        })
    }
}

/// Grid coordinate of a physical qubit. Left sector: row ∈ [n_a], col ∈ [n_b].
/// Right sector: row ∈ [m_a], col ∈ [m_b]. Both 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct QubitIndex {
    pub sector: Sector,
    pub row: usize,
    pub col: usize,
}

impl fmt::Display for QubitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.sector)
    }
}

/// Label of a logical qubit: the pivot pair of the kernel-basis vectors that
/// generate its X/Z representatives. Pivots are 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct LogicalQubitLabel {
    pub sector: Sector,
    pub row_pivot: usize,
    pub col_pivot: usize,
}

impl fmt::Display for LogicalQubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{},{}", self.sector, self.row_pivot, self.col_pivot)
    }
}

impl std::str::FromStr for LogicalQubitLabel {
    type Err = Error;

    /// Parses "L:3,3" / "R:1,2" (sector, row pivot, column pivot).
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("label {s:?}: expected L:row,col or R:row,col"));
        let (sector, pivots) = s.split_once(':').ok_or_else(bad)?;
        let sector = match sector.trim() {
            "L" => Sector::Left,
            "R" => Sector::Right,
            _ => return Err(bad()),
        };
        let (row, col) = pivots.split_once(',').ok_or_else(bad)?;
        Ok(LogicalQubitLabel {
            sector,
            row_pivot: row.trim().parse().map_err(|_| bad())?,
            col_pivot: col.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// Hypergraph product of two classical parity checks ha (m_a × n_a) and
/// hb (m_b × n_b).
#[derive(Clone, Debug)]
pub struct HgpCode {
    pub base: CssCode,
    pub ha: BitMatrix,
    pub hb: BitMatrix,
    pub na: usize,
    pub nb: usize,
    pub ma: usize,
    pub mb: usize,
}

/// Validates the CSS orthogonality condition and computes n, k.
pub fn css_from_checks(hx: BitMatrix, hz: BitMatrix) -> Result<CssCode> {
    if hx.cols() != hz.cols() {
        return Err(Error::DimensionMismatch(format!(
            "hx has {} columns, hz has {}",
            hx.cols(),
            hz.cols()
        )));
    }
    if !hx.mul(&hz.transpose()).is_zero() {
        return Err(Error::NotCss);
    }
    let n = hx.cols();
    let k = n - hx.rank() - hz.rank();
    Ok(CssCode { hx, hz, n, k })
}

/// Hypergraph product: H_X = [H_a⊗I_nb | I_ma⊗H_b^T],
/// H_Z = [I_na⊗H_b | H_a^T⊗I_mb]. Orthogonality holds by construction
/// because the two cross blocks both equal H_a⊗H_b^T.
pub fn hgp(ha: BitMatrix, hb: BitMatrix) -> HgpCode {
    let (ma, na) = (ha.rows(), ha.cols());
    let (mb, nb) = (hb.rows(), hb.cols());
    let hx = ha.kron(&BitMatrix::identity(nb)).hstack(&BitMatrix::identity(ma).kron(&hb.transpose()));
    let hz = BitMatrix::identity(na).kron(&hb).hstack(&ha.transpose().kron(&BitMatrix::identity(mb)));
    let base = css_from_checks(hx, hz).expect("hypergraph product is CSS by construction");
    debug_assert_eq!(base.n, na * nb + ma * mb);
    HgpCode { base, ha, hb, na, nb, ma, mb }
}

/// Toric code of lattice size L: both constituent codes are the cyclic
/// repetition code with the full L×L circulant check (rows e_i + e_{i+1}).
/// Parameters [[2L², 2, L]].
pub fn toric(l: usize) -> Result<HgpCode> {
    if l < 2 {
        return Err(Error::ToricTooSmall(l));
    }
    let mut h = BitMatrix::zeros(l, l);
    for i in 0..l {
        h.set(i, i, true);
        h.set(i, (i + 1) % l, true);
    }
    Ok(hgp(h.clone(), h))
}

impl CssCode {
    /// X-type then Z-type generators, one per check row, all with sign +1.
    pub fn stabilizer_generators(&self) -> Vec<SignedPauli> {
        let mut out = Vec::with_capacity(self.hx.rows() + self.hz.rows());
        for r in 0..self.hx.rows() {
            out.push(SignedPauli::x_type(self.hx.row(r)));
        }
        for r in 0..self.hz.rows() {
            out.push(SignedPauli::z_type(self.hz.row(r)));
        }
        out
    }

    /// Minimum weight of a logical (stabilizer-commuting, non-stabilizer)
    /// Pauli. Exhaustive over both CSS sectors; only attempted for n ≤ 20.
    /// None means "not computed" (too large or k = 0).
    pub fn distance(&self) -> Option<usize> {
        if self.n > 20 || self.k == 0 {
            return None;
        }
        let dz = min_coset_weight(&self.hx, &self.hz)?;
        let dx = min_coset_weight(&self.hz, &self.hx)?;
        Some(dz.min(dx))
    }
}

/// Minimum weight over ker(h_stab) \ rowspace(h_coset): walks the whole
/// kernel span in Gray-code order.
fn min_coset_weight(h_stab: &BitMatrix, h_coset: &BitMatrix) -> Option<usize> {
    let kernel = h_stab.kernel_basis();
    let dim = kernel.len();
    if dim == 0 {
        return None;
    }
    let mut current = BitVector::zeros(h_stab.cols());
    let mut best: Option<usize> = None;
    for step in 1u64..1u64 << dim {
        current.xor_assign(&kernel[step.trailing_zeros() as usize]);
        let w = current.weight();
        if best.is_some_and(|b| w >= b) {
            continue;
        }
        if !h_coset.row_space_contains(&current) {
            best = Some(w);
        }
    }
    best
}

impl HgpCode {
    pub fn css(&self) -> &CssCode {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.base.n
    }

    pub fn k(&self) -> usize {
        self.base.k
    }

    /// 1-based linear index: left (i,h) ↦ (i−1)·n_b + h, right (j,l) ↦
    /// n_a·n_b + (j−1)·m_b + l. This is Kronecker order: the left-sector
    /// vector u ⊗ w has its support exactly at the linearized left
    /// coordinates {(i,h) : u_i = w_h = 1}.
    pub fn qubit_to_linear(&self, q: QubitIndex) -> Result<usize> {
        let (rows, cols, offset) = match q.sector {
            Sector::Left => (self.na, self.nb, 0),
            Sector::Right => (self.ma, self.mb, self.na * self.nb),
        };
        if q.row == 0 || q.row > rows || q.col == 0 || q.col > cols {
            return Err(Error::IndexOutOfRange(format!(
                "{q} outside the {rows}x{cols} {} grid",
                q.sector
            )));
        }
        Ok(offset + (q.row - 1) * cols + q.col)
    }

    /// Inverse of qubit_to_linear; idx is 1-based.
    pub fn linear_to_qubit(&self, idx: usize) -> Result<QubitIndex> {
        let left = self.na * self.nb;
        if idx == 0 || idx > self.n() {
            return Err(Error::IndexOutOfRange(format!(
                "linear index {idx} outside 1..={}",
                self.n()
            )));
        }
        Ok(if idx <= left {
            QubitIndex { sector: Sector::Left, row: (idx - 1) / self.nb + 1, col: (idx - 1) % self.nb + 1 }
        } else {
            let r = idx - left - 1;
            QubitIndex { sector: Sector::Right, row: r / self.mb + 1, col: r % self.mb + 1 }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circulant(l: usize) -> BitMatrix {
        let mut h = BitMatrix::zeros(l, l);
        for i in 0..l {
            h.set(i, i, true);
            h.set(i, (i + 1) % l, true);
        }
        h
    }

    #[test]
    fn steane_style_checks_give_k_one() {
        let hamming = BitMatrix::from_rows(&[
            vec![0, 0, 0, 1, 1, 1, 1],
            vec![0, 1, 1, 0, 0, 1, 1],
            vec![1, 0, 1, 0, 1, 0, 1],
        ]);
        let code = css_from_checks(hamming.clone(), hamming).unwrap();
        assert_eq!((code.n, code.k), (7, 1));
    }

    #[test]
    fn zero_checks_give_k_n() {
        let code = css_from_checks(BitMatrix::zeros(1, 3), BitMatrix::zeros(1, 3)).unwrap();
        assert_eq!((code.n, code.k), (3, 3));
    }

    #[test]
    fn identity_checks_rejected() {
        assert!(matches!(
            css_from_checks(BitMatrix::identity(3), BitMatrix::identity(3)),
            Err(Error::NotCss)
        ));
    }

    #[test]
    fn mismatched_widths_rejected() {
        assert!(matches!(
            css_from_checks(BitMatrix::zeros(1, 3), BitMatrix::zeros(1, 4)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn hgp_of_circulants_is_18_2() {
        let code = hgp(circulant(3), circulant(3));
        assert_eq!((code.n(), code.k()), (18, 2));
        assert_eq!((code.na, code.nb, code.ma, code.mb), (3, 3, 3, 3));
        for r in 0..code.base.hx.rows() {
            assert_eq!(code.base.hx.row(r).weight(), 4);
        }
        for r in 0..code.base.hz.rows() {
            assert_eq!(code.base.hz.row(r).weight(), 4);
        }
    }

    #[test]
    fn hgp_of_single_parity_checks() {
        let h = BitMatrix::from_rows(&[vec![1, 1]]);
        let code = hgp(h.clone(), h);
        assert_eq!((code.n(), code.k()), (5, 1));
        let hx = BitMatrix::from_rows(&[vec![1, 0, 1, 0, 1], vec![0, 1, 0, 1, 1]]);
        let hz = BitMatrix::from_rows(&[vec![1, 1, 0, 0, 1], vec![0, 0, 1, 1, 1]]);
        assert_eq!(code.base.hx, hx);
        assert_eq!(code.base.hz, hz);
        assert_eq!(code.css().stabilizer_generators().len(), 4);
    }

    #[test]
    fn hgp_of_two_by_two_circulants() {
        let code = hgp(circulant(2), circulant(2));
        assert_eq!((code.n(), code.k()), (8, 2));
    }

    #[test]
    fn k_matches_rank_arithmetic() {
        let cases = [
            (circulant(3), BitMatrix::from_rows(&[vec![1, 1, 1]])),
            (BitMatrix::from_rows(&[vec![1, 1, 0, 1], vec![0, 1, 1, 0]]), circulant(2)),
            (BitMatrix::from_rows(&[vec![1, 0, 1], vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]), circulant(3)),
        ];
        for (ha, hb) in cases {
            let (ka, kat) = (ha.cols() - ha.rank(), ha.rows() - ha.rank());
            let (kb, kbt) = (hb.cols() - hb.rank(), hb.rows() - hb.rank());
            let code = hgp(ha, hb);
            assert_eq!(code.k(), ka * kb + kat * kbt);
            assert_eq!(code.n(), code.na * code.nb + code.ma * code.mb);
        }
    }

    #[test]
    fn toric_parameters() {
        let t3 = toric(3).unwrap();
        assert_eq!((t3.n(), t3.k()), (18, 2));
        assert_eq!(t3.css().distance(), Some(3));
        let t2 = toric(2).unwrap();
        assert_eq!((t2.n(), t2.k()), (8, 2));
        assert_eq!(t2.css().distance(), Some(2));
        assert!(matches!(toric(1), Err(Error::ToricTooSmall(1))));
    }

    #[test]
    fn distance_skipped_when_large() {
        assert_eq!(toric(4).unwrap().css().distance(), None); // n = 32 > 20
    }

    #[test]
    fn linear_index_examples() {
        let code = toric(3).unwrap();
        let q = |sector, row, col| QubitIndex { sector, row, col };
        assert_eq!(code.qubit_to_linear(q(Sector::Left, 1, 1)).unwrap(), 1);
        assert_eq!(code.qubit_to_linear(q(Sector::Right, 1, 1)).unwrap(), 10);
        assert_eq!(code.qubit_to_linear(q(Sector::Left, 3, 3)).unwrap(), 9);
        assert!(code.qubit_to_linear(q(Sector::Left, 4, 1)).is_err());
        assert!(code.qubit_to_linear(q(Sector::Left, 0, 1)).is_err());
    }

    #[test]
    fn linear_index_roundtrip() {
        let code = hgp(BitMatrix::from_rows(&[vec![1, 1, 0], vec![0, 1, 1]]), circulant(2));
        for idx in 1..=code.n() {
            let q = code.linear_to_qubit(idx).unwrap();
            assert_eq!(code.qubit_to_linear(q).unwrap(), idx);
        }
        assert!(code.linear_to_qubit(0).is_err());
        assert!(code.linear_to_qubit(code.n() + 1).is_err());
    }

    #[test]
    fn generators_of_toric3() {
        let gens = toric(3).unwrap().css().stabilizer_generators();
        assert_eq!(gens.len(), 18);
        for g in &gens {
            assert_eq!(g.weight(), 4);
            assert!(!g.is_negative());
        }
    }

    #[test]
    fn generators_of_zero_code_empty() {
        let code = css_from_checks(BitMatrix::zeros(0, 3), BitMatrix::zeros(0, 3)).unwrap();
        assert!(code.stabilizer_generators().is_empty());
        assert_eq!(code.k, 3);
    }

    #[test]
    fn x_stabilizer_support_geometry() {
        // X check (j,h) sits on column h of the left grid and row j of the
        // right grid.
        let code = toric(3).unwrap();
        for j in 1..=code.ma {
            for h in 1..=code.nb {
                let row = code.base.hx.row((j - 1) * code.nb + h - 1);
                for idx in row.support() {
                    let q = code.linear_to_qubit(idx + 1).unwrap();
                    match q.sector {
                        Sector::Left => assert_eq!(q.col, h),
                        Sector::Right => assert_eq!(q.row, j),
                    }
                }
            }
        }
    }
}
