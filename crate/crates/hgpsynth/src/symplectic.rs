//! Binary symplectic machinery.
//!
//! Length-2n row vectors [a | b] encode Paulis up to sign (a = X part,
//! b = Z part). The symplectic form is Ω = [[0, I_n],[I_n, 0]], and Clifford
//! circuits act on the right: y ↦ y·F. Composing circuits multiplies their
//! matrices in application order (first gate's matrix leftmost).

use crate::codes::CssCode;
use crate::gf2core::{independent_row_subset, outer, BitMatrix, BitVector};
use crate::logicals::{LMatrix, LogicalBasis};
use crate::synth::{LogicalGateKind, LogicalGateSpec};
use crate::{Error, Result};
use rand::Rng;

/// The form matrix Ω = [[0, I_n],[I_n, 0]] of size 2n × 2n.
pub fn omega(n: usize) -> BitMatrix {
    let mut m = BitMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        m.set(i, n + i, true);
        m.set(n + i, i, true);
    }
    m
}

/// [a | b] ↦ [b | a]; this is v·Ω (equally Ω·v^T) without building Ω.
pub fn swap_halves(v: &BitVector) -> BitVector {
    let n = v.len() / 2;
    assert_eq!(v.len(), 2 * n, "odd-length symplectic vector");
    v.slice(n, n).concat(&v.slice(0, n))
}

/// Symplectic product (u, v)_s = u Ω v^T = a_u·b_v + b_u·a_v.
pub fn symplectic_product(u: &BitVector, v: &BitVector) -> bool {
    u.dot(&swap_halves(v))
}

/// Swaps the halves of every row: M ↦ M·Ω.
fn swap_halves_rows(m: &BitMatrix) -> BitMatrix {
    let mut out = BitMatrix::zeros(m.rows(), m.cols());
    for r in 0..m.rows() {
        out.set_row(r, &swap_halves(&m.row(r)));
    }
    out
}

/// Exact GF(2) check of F Ω F^T = Ω. False for non-square or odd sizes.
pub fn is_symplectic(f: &BitMatrix) -> bool {
    if f.rows() != f.cols() || f.rows() % 2 != 0 {
        return false;
    }
    let n = f.rows() / 2;
    f.mul(&swap_halves_rows(f).transpose()) == omega(n)
}

/// A validated element of Sp(2n, F2), acting on row vectors from the right.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymplecticMatrix {
    pub f: BitMatrix,
}

impl SymplecticMatrix {
    pub fn new(f: BitMatrix) -> Result<Self> {
        if !is_symplectic(&f) {
            return Err(Error::NotSymplectic);
        }
        Ok(SymplecticMatrix { f })
    }

    pub fn identity(n: usize) -> Self {
        SymplecticMatrix { f: BitMatrix::identity(2 * n) }
    }

    /// Number of qubits (half the matrix side).
    pub fn n(&self) -> usize {
        self.f.rows() / 2
    }

    /// Composition: (self.mul(other)) acts as self first, then other.
    pub fn mul(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        SymplecticMatrix { f: self.f.mul(&other.f) }
    }

    /// Row-vector action y ↦ y·F.
    pub fn apply(&self, y: &BitVector) -> BitVector {
        self.f.row_combination(y)
    }
}

/// Transvection T_x = I + Ω x^T x, mapping y ↦ y + (y,x)_s x. Always
/// symplectic.
pub fn transvection(x: &BitVector) -> SymplecticMatrix {
    let f = BitMatrix::identity(x.len()).add(&outer(&swap_halves(x), x));
    debug_assert!(is_symplectic(&f));
    SymplecticMatrix { f }
}

/// F_{w,x} = I + Ω x^T w, mapping y ↦ y + (y,x)_s w; requires (w,x)_s = 0.
///
/// An isolated F_{w,x} preserves the form only in the degenerate cases
/// w ∈ {0, x} or x = 0 (the condition is symmetry of the rank-1 matrix
/// x^T w): with independent nonzero w, x one finds y, y' whose pairing
/// changes. Such updates are only collectively symplectic inside the sum
/// construction of basis_change, so the non-symplectic cases are rejected
/// here rather than wrapped in a type whose invariant they break.
pub fn paired_transvection(w: &BitVector, x: &BitVector) -> Result<SymplecticMatrix> {
    if symplectic_product(w, x) {
        return Err(Error::NotOrthogonal);
    }
    SymplecticMatrix::new(BitMatrix::identity(x.len()).add(&outer(&swap_halves(x), w)))
}

/// Builds F = I + Σ Ω(v_i^T(u_i+u_i') + u_i^T(v_i+v_i')), which maps each
/// u_i ↦ u_i' and v_i ↦ v_i' provided both pair sets extend to symplectic
/// bases. The action is verified after construction; garbage pairings are
/// rejected rather than silently misrouted.
pub fn basis_change(
    pairs: &[(BitVector, BitVector, BitVector, BitVector)],
) -> Result<SymplecticMatrix> {
    let Some((u0, ..)) = pairs.first() else {
        return Err(Error::DimensionMismatch("basis_change needs at least one pair".into()));
    };
    let mut f = BitMatrix::identity(u0.len());
    for (u, v, up, vp) in pairs {
        let mut du = u.clone();
        du.xor_assign(up);
        let mut dv = v.clone();
        dv.xor_assign(vp);
        f.xor_assign(&outer(&swap_halves(v), &du));
        f.xor_assign(&outer(&swap_halves(u), &dv));
    }
    if !is_symplectic(&f) {
        return Err(Error::BasisChangeFailed);
    }
    let fm = SymplecticMatrix { f };
    for (u, v, up, vp) in pairs {
        if &fm.apply(u) != up || &fm.apply(v) != vp {
            return Err(Error::BasisChangeFailed);
        }
    }
    Ok(fm)
}

/// Invertible 2k × 2k matrix describing a Clifford's action on the logical
/// Pauli labels; validity is preservation of the 2k symplectic form (which
/// implies invertibility).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogicalActionMatrix {
    pub m: BitMatrix,
}

impl LogicalActionMatrix {
    pub fn new(m: BitMatrix) -> Result<Self> {
        if !is_symplectic(&m) {
            return Err(Error::NotSymplectic);
        }
        Ok(LogicalActionMatrix { m })
    }

    pub fn identity(k: usize) -> Self {
        LogicalActionMatrix { m: BitMatrix::identity(2 * k) }
    }

    pub fn k(&self) -> usize {
        self.m.rows() / 2
    }

    /// Composition in application order, matching circuit concatenation.
    pub fn mul(&self, other: &LogicalActionMatrix) -> LogicalActionMatrix {
        LogicalActionMatrix { m: self.m.mul(&other.m) }
    }
}

/// Destabilizer rows: R Ω pairs to I against the stabilizer matrix H, to 0
/// against L, and to 0 against itself (rows mutually commute).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DestabilizerMatrix {
    pub r: BitMatrix,
}

/// The (n−k) × 2n stabilizer matrix: an independent subset of X checks as
/// [h | 0] rows followed by an independent subset of Z checks as [0 | h].
pub fn stabilizer_matrix(code: &CssCode) -> BitMatrix {
    let n = code.n;
    let mut h = BitMatrix::zeros(code.n - code.k, 2 * n);
    let mut at = 0;
    for r in independent_row_subset(&code.hx) {
        h.set_row(at, &code.hx.row(r).concat(&BitVector::zeros(n)));
        at += 1;
    }
    for r in independent_row_subset(&code.hz) {
        h.set_row(at, &BitVector::zeros(n).concat(&code.hz.row(r)));
        at += 1;
    }
    debug_assert_eq!(at, code.n - code.k);
    h
}

/// Checks the three destabilizer identities against h and l.
pub fn validate_destabilizers(h: &BitMatrix, l: &LMatrix, r: &DestabilizerMatrix) -> Result<()> {
    let rt = swap_halves_rows(&r.r).transpose();
    if h.mul(&rt) != BitMatrix::identity(h.rows()) {
        return Err(Error::InvalidDestabilizers("H Ω R^T is not the identity".into()));
    }
    if !l.matrix.mul(&rt).is_zero() {
        return Err(Error::InvalidDestabilizers("destabilizers do not commute with L".into()));
    }
    if !r.r.mul(&rt).is_zero() {
        return Err(Error::InvalidDestabilizers("destabilizer rows do not commute".into()));
    }
    Ok(())
}

/// Symplectic Gram-Schmidt completion: row i anticommutes with stabilizer
/// row i only, commutes with every logical row, and commutes with the rows
/// already chosen. Deterministic.
pub fn complete_destabilizers(h: &BitMatrix, l: &LMatrix) -> Result<DestabilizerMatrix> {
    let nk = h.rows();
    let width = h.cols();
    // (h_j, d)_s = swap(h_j)·d, so one linear system per destabilizer.
    let system = swap_halves_rows(&h.vstack(&l.matrix));
    let mut rows: Vec<BitVector> = Vec::with_capacity(nk);
    for i in 0..nk {
        let mut rhs = BitVector::zeros(system.rows());
        rhs.set(i, true);
        let mut d = system.solve(&rhs).ok_or_else(|| {
            Error::InvalidDestabilizers(format!(
                "no vector anticommutes with stabilizer row {i} alone; stabilizer rows dependent?"
            ))
        })?;
        // Adding h_j changes only the pairing with d_j, so earlier rows fix
        // up one at a time.
        for j in 0..i {
            if symplectic_product(&d, &rows[j]) {
                d.xor_assign(&h.row(j));
            }
        }
        rows.push(d);
    }
    let r = DestabilizerMatrix { r: BitMatrix::from_bitvector_rows(&rows, width) };
    validate_destabilizers(h, l, &r)?;
    Ok(r)
}

/// Stabilizer-fixing symplectic matrix for the logical action ml:
/// F = I + Σ_i Ω(φ(Z̄_i)^T L'(i,·) + φ(X̄_i)^T L'(k+i,·)) with L' = (M+I)L.
/// Fixes every vector commuting with all of L (in particular all stabilizer
/// rows) and maps L ↦ M·L.
pub fn build_f_trivial(l: &LMatrix, ml: &LogicalActionMatrix) -> SymplecticMatrix {
    let (k, n) = (l.k(), l.n());
    assert_eq!(ml.k(), k, "logical action size disagrees with L");
    let lp = ml.m.add(&BitMatrix::identity(2 * k)).mul(&l.matrix);
    let mut f = BitMatrix::identity(2 * n);
    for i in 0..k {
        f.xor_assign(&outer(&swap_halves(&l.matrix.row(k + i)), &lp.row(i)));
        f.xor_assign(&outer(&swap_halves(&l.matrix.row(i)), &lp.row(k + i)));
    }
    debug_assert!(is_symplectic(&f));
    SymplecticMatrix { f }
}

/// Full form: additionally remaps the stabilizer rows by the invertible ms
/// (H ↦ M_S·H) and the destabilizers by (M_S^{-1})^T. With ms = I this
/// reduces to build_f_trivial.
pub fn build_f_general(
    l: &LMatrix,
    h: &BitMatrix,
    r: &DestabilizerMatrix,
    ml: &LogicalActionMatrix,
    ms: &BitMatrix,
) -> Result<SymplecticMatrix> {
    if ms.rows() != h.rows() || ms.cols() != h.rows() {
        return Err(Error::DimensionMismatch(format!(
            "ms is {}x{}, stabilizer matrix has {} rows",
            ms.rows(),
            ms.cols(),
            h.rows()
        )));
    }
    validate_destabilizers(h, l, r)?;
    let ms_inv = ms.inverse().ok_or(Error::NotInvertible)?;
    let nk = h.rows();
    let hp = ms.add(&BitMatrix::identity(nk)).mul(h);
    let rp = ms_inv.transpose().add(&BitMatrix::identity(nk)).mul(&r.r);
    let mut f = build_f_trivial(l, ml).f;
    for i in 0..nk {
        f.xor_assign(&outer(&swap_halves(&r.r.row(i)), &hp.row(i)));
        f.xor_assign(&outer(&swap_halves(&h.row(i)), &rp.row(i)));
    }
    SymplecticMatrix::new(f)
}

/// The elementary 2k × 2k logical action of one targeted gate; logical
/// indices are 0-based positions in the label ordering.
pub fn ml_for(kind: LogicalGateKind, logicals: &[usize], k: usize) -> Result<LogicalActionMatrix> {
    if logicals.len() != kind.arity() {
        return Err(Error::InvalidGate(format!(
            "{} takes {} logical index(es), got {}",
            kind.name(),
            kind.arity(),
            logicals.len()
        )));
    }
    if let Some(&bad) = logicals.iter().find(|&&i| i >= k) {
        return Err(Error::IndexOutOfRange(format!("logical index {bad} outside 0..{k}")));
    }
    if logicals.len() == 2 && logicals[0] == logicals[1] {
        return Err(Error::InvalidGate(format!("{} requires distinct logicals", kind.name())));
    }
    let mut m = BitMatrix::identity(2 * k);
    match kind {
        LogicalGateKind::Phase => {
            // X̄ ↦ X̄Z̄ on the target, Z̄ fixed
            m.set(logicals[0], k + logicals[0], true);
        }
        LogicalGateKind::Hadamard => {
            let i = logicals[0];
            m.set(i, i, false);
            m.set(k + i, k + i, false);
            m.set(i, k + i, true);
            m.set(k + i, i, true);
        }
        LogicalGateKind::Cnot => {
            // X̄_c ↦ X̄_c X̄_t, Z̄_t ↦ Z̄_t Z̄_c
            let (c, t) = (logicals[0], logicals[1]);
            m.set(c, t, true);
            m.set(k + t, k + c, true);
        }
        LogicalGateKind::Cz => {
            // X̄_i ↦ X̄_i Z̄_j and symmetrically
            let (i, j) = (logicals[0], logicals[1]);
            m.set(i, k + j, true);
            m.set(j, k + i, true);
        }
    }
    debug_assert!(is_symplectic(&m));
    Ok(LogicalActionMatrix { m })
}

fn resolve(basis: &LogicalBasis, gate: &LogicalGateSpec) -> Result<Vec<usize>> {
    gate.validate()?;
    gate.labels.iter().map(|&lb| basis.position_of(lb)).collect()
}

/// Closed-form sparse symplectic matrix of a targeted logical gate, built
/// from the logical representatives alone. Equals
/// build_f_trivial(l, ml_for(gate)).
pub fn gate_f(basis: &LogicalBasis, gate: &LogicalGateSpec) -> Result<SymplecticMatrix> {
    let pos = resolve(basis, gate)?;
    let n = basis.x_ops[0].len();
    let eye = BitMatrix::identity(n);
    let zero = BitMatrix::zeros(n, n);
    let f = match gate.kind {
        LogicalGateKind::Phase => {
            let z = &basis.z_ops[pos[0]];
            eye.hstack(&outer(z, z)).vstack(&zero.hstack(&eye))
        }
        LogicalGateKind::Hadamard => {
            let (x, z) = (&basis.x_ops[pos[0]], &basis.z_ops[pos[0]]);
            let a = eye.add(&outer(z, x));
            let d = eye.add(&outer(x, z));
            a.hstack(&outer(z, z)).vstack(&outer(x, x).hstack(&d))
        }
        LogicalGateKind::Cnot => {
            let (zc, xt) = (&basis.z_ops[pos[0]], &basis.x_ops[pos[1]]);
            let a = eye.add(&outer(zc, xt));
            let d = eye.add(&outer(xt, zc));
            a.hstack(&zero).vstack(&zero.hstack(&d))
        }
        LogicalGateKind::Cz => {
            let (z1, z2) = (&basis.z_ops[pos[0]], &basis.z_ops[pos[1]]);
            let b = outer(z1, z2).add(&outer(z2, z1));
            eye.hstack(&b).vstack(&zero.hstack(&eye))
        }
    };
    SymplecticMatrix::new(f)
}

/// Transvection generators of a targeted gate. The product of the returned
/// transvections (in list order) equals gate_f; the cross terms cancel
/// because matched X/Z representatives intersect once and unmatched ones not
/// at all.
pub fn transvection_decomposition(
    basis: &LogicalBasis,
    gate: &LogicalGateSpec,
) -> Result<Vec<BitVector>> {
    let pos = resolve(basis, gate)?;
    let n = basis.x_ops[0].len();
    let zero = BitVector::zeros(n);
    Ok(match gate.kind {
        LogicalGateKind::Phase => vec![zero.concat(&basis.z_ops[pos[0]])],
        LogicalGateKind::Hadamard => vec![basis.x_ops[pos[0]].concat(&basis.z_ops[pos[0]])],
        LogicalGateKind::Cnot => {
            let (zc, xt) = (&basis.z_ops[pos[0]], &basis.x_ops[pos[1]]);
            vec![xt.concat(&zero), xt.concat(zc), zero.concat(zc)]
        }
        LogicalGateKind::Cz => {
            let (z1, z2) = (&basis.z_ops[pos[0]], &basis.z_ops[pos[1]]);
            let mut both = z1.clone();
            both.xor_assign(z2);
            vec![zero.concat(z1), zero.concat(&both), zero.concat(z2)]
        }
    })
}

/// Random element of Sp(2n, F2) as a product of random transvections
/// (transvections generate the group).
pub fn random_symplectic(n: usize, rng: &mut impl Rng) -> SymplecticMatrix {
    let mut f = SymplecticMatrix::identity(n);
    for _ in 0..4 * n {
        let mut x = BitVector::zeros(2 * n);
        while x.is_zero() {
            for b in 0..2 * n {
                x.set(b, rng.gen_bool(0.5));
            }
        }
        f = f.mul(&transvection(&x));
    }
    f
}
