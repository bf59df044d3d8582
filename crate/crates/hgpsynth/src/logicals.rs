//! Logical Pauli bases of hypergraph-product codes.
//!
//! The four classical kernels (of H_a, H_a^T, H_b, H_b^T) are normalized to
//! strongly lower triangular bases. A logical qubit is a pair of basis
//! vectors, one per factor, and its X/Z representatives are Kronecker
//! products in which one factor is replaced by the unit vector at the other
//! vector's pivot. That pivot choice is what makes distinct logical qubits
//! overlap on zero qubits and matched X/Z pairs overlap on exactly one.

use crate::codes::{CssCode, HgpCode, LogicalQubitLabel, Sector};
use crate::gf2core::{slt_normalize, BitMatrix, BitVector, SltBasis};
use crate::{Error, Result};

/// Logical X/Z representatives of every logical qubit, with the kernel bases
/// they were built from. Ops are full-length (n) support vectors indexed in
/// label order: left-sector labels lexicographically, then right-sector.
#[derive(Clone, Debug)]
pub struct LogicalBasis {
    pub a_basis: SltBasis,
    pub alpha_basis: SltBasis,
    pub b_basis: SltBasis,
    pub beta_basis: SltBasis,
    pub labels: Vec<LogicalQubitLabel>,
    pub x_ops: Vec<BitVector>,
    pub z_ops: Vec<BitVector>,
}

impl LogicalBasis {
    pub fn k(&self) -> usize {
        self.labels.len()
    }

    pub fn position_of(&self, label: LogicalQubitLabel) -> Result<usize> {
        self.labels
            .iter()
            .position(|&l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

/// The 2k × 2n symplectic footprint of a logical basis: rows 1..k are
/// [x_i | 0], rows k+1..2k are [0 | z_i].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LMatrix {
    pub matrix: BitMatrix,
}

impl LMatrix {
    pub fn k(&self) -> usize {
        self.matrix.rows() / 2
    }

    pub fn n(&self) -> usize {
        self.matrix.cols() / 2
    }
}

/// Places a Kronecker-product support on one sector of the code, zero on the
/// other.
fn sector_vector(code: &HgpCode, sector: Sector, u: &BitVector, w: &BitVector) -> BitVector {
    let grid = u.kron(w);
    match sector {
        Sector::Left => grid.concat(&BitVector::zeros(code.ma * code.mb)),
        Sector::Right => BitVector::zeros(code.na * code.nb).concat(&grid),
    }
}

/// Computes the logical basis of an HGP code from SLT-normalized kernels.
pub fn logical_basis(code: &HgpCode) -> Result<LogicalBasis> {
    if code.k() == 0 {
        return Err(Error::NoLogicalQubits);
    }
    let slt_kernel = |m: &BitMatrix| {
        slt_normalize(&m.kernel_basis()).expect("kernel basis vectors are independent")
    };
    let a_basis = slt_kernel(&code.ha);
    let alpha_basis = slt_kernel(&code.ha.transpose());
    let b_basis = slt_kernel(&code.hb);
    let beta_basis = slt_kernel(&code.hb.transpose());

    let mut labels = Vec::new();
    let mut x_ops = Vec::new();
    let mut z_ops = Vec::new();
    for (a, &pa) in a_basis.vectors().iter().zip(a_basis.pivots()) {
        for (b, &pb) in b_basis.vectors().iter().zip(b_basis.pivots()) {
            labels.push(LogicalQubitLabel {
                sector: Sector::Left,
                row_pivot: pa + 1,
                col_pivot: pb + 1,
            });
            x_ops.push(sector_vector(code, Sector::Left, &BitVector::unit(code.na, pa), b));
            z_ops.push(sector_vector(code, Sector::Left, a, &BitVector::unit(code.nb, pb)));
        }
    }
    for (alpha, &pj) in alpha_basis.vectors().iter().zip(alpha_basis.pivots()) {
        for (beta, &pl) in beta_basis.vectors().iter().zip(beta_basis.pivots()) {
            labels.push(LogicalQubitLabel {
                sector: Sector::Right,
                row_pivot: pj + 1,
                col_pivot: pl + 1,
            });
            x_ops.push(sector_vector(code, Sector::Right, alpha, &BitVector::unit(code.mb, pl)));
            z_ops.push(sector_vector(code, Sector::Right, &BitVector::unit(code.ma, pj), beta));
        }
    }
    assert_eq!(labels.len(), code.k(), "label count disagrees with rank arithmetic");

    let basis = LogicalBasis { a_basis, alpha_basis, b_basis, beta_basis, labels, x_ops, z_ops };
    // The pivot construction guarantees these; fail loudly if a kernel basis
    // ever violates them rather than emitting bad circuits downstream.
    validate_ops(code.css(), &basis.x_ops, &basis.z_ops)?;
    Ok(basis)
}

/// Assembles the 2k × 2n matrix [x_i | 0 ; 0 | z_i] from a logical basis.
pub fn l_matrix(basis: &LogicalBasis) -> LMatrix {
    let k = basis.x_ops.len();
    let n = basis.x_ops[0].len();
    let mut m = BitMatrix::zeros(2 * k, 2 * n);
    for (i, x) in basis.x_ops.iter().enumerate() {
        m.set_row(i, &x.concat(&BitVector::zeros(n)));
    }
    for (i, z) in basis.z_ops.iter().enumerate() {
        m.set_row(k + i, &BitVector::zeros(n).concat(z));
    }
    LMatrix { matrix: m }
}

/// Builds an LMatrix from user-supplied X/Z support rows, accepting any CSS
/// code. Rows are validated, never repaired: commutation with the checks,
/// unit pairing, and non-membership in the stabilizer group are all required.
pub fn validated_l_matrix(
    code: &CssCode,
    x_ops: &[BitVector],
    z_ops: &[BitVector],
) -> Result<LMatrix> {
    if x_ops.len() != code.k || z_ops.len() != code.k {
        return Err(Error::InvalidLogicalBasis(format!(
            "expected {} X and Z rows, got {} and {}",
            code.k,
            x_ops.len(),
            z_ops.len()
        )));
    }
    validate_ops(code, x_ops, z_ops)?;
    let basis_like = LogicalBasis {
        a_basis: slt_normalize(&[]).expect("empty basis"),
        alpha_basis: slt_normalize(&[]).expect("empty basis"),
        b_basis: slt_normalize(&[]).expect("empty basis"),
        beta_basis: slt_normalize(&[]).expect("empty basis"),
        labels: Vec::new(),
        x_ops: x_ops.to_vec(),
        z_ops: z_ops.to_vec(),
    };
    Ok(l_matrix(&basis_like))
}

fn validate_ops(code: &CssCode, x_ops: &[BitVector], z_ops: &[BitVector]) -> Result<()> {
    for (kind, ops, stab, own) in
        [("X", x_ops, &code.hz, &code.hx), ("Z", z_ops, &code.hx, &code.hz)]
    {
        for (i, op) in ops.iter().enumerate() {
            if op.len() != code.n {
                return Err(Error::InvalidLogicalBasis(format!(
                    "{kind} row {} has length {}, expected {}",
                    i + 1,
                    op.len(),
                    code.n
                )));
            }
            if !stab.mul_vec(op).is_zero() {
                return Err(Error::InvalidLogicalBasis(format!(
                    "{kind} row {} anticommutes with a stabilizer",
                    i + 1
                )));
            }
            if own.row_space_contains(op) {
                return Err(Error::InvalidLogicalBasis(format!(
                    "{kind} row {} is a stabilizer, not a logical",
                    i + 1
                )));
            }
        }
    }
    for (i, x) in x_ops.iter().enumerate() {
        for (j, z) in z_ops.iter().enumerate() {
            let pair = x.and_weight(z) % 2;
            if (i == j) != (pair == 1) {
                return Err(Error::InvalidLogicalBasis(format!(
                    "pairing of X row {} with Z row {} is {}, expected {}",
                    i + 1,
                    j + 1,
                    pair,
                    (i == j) as usize
                )));
            }
        }
    }
    Ok(())
}
