//! Sign-tracking Pauli conjugation, circuit-to-symplectic extraction, and
//! verification of synthesized circuits, including a dense statevector
//! oracle for small codes.
//!
//! Paulis are kept in the Hermitian form ±E(a,b) = ±i^(a·b) X^a Z^b; Clifford
//! conjugation maps this set to itself with real signs only, so a boolean
//! sign plus the two bit vectors is a complete representation.

use crate::codes::CssCode;
use crate::gf2core::{BitMatrix, BitVector};
use crate::logicals::{LMatrix, LogicalBasis};
use crate::symplectic::{is_symplectic, LogicalActionMatrix, SymplecticMatrix};
use crate::synth::{Circuit, Gate, LogicalGateKind, LogicalGateSpec};
use crate::{Error, Result};
use num_complex::Complex64;
use std::fmt;

/// Hermitian Pauli ±E(a,b), where E(a,b) = i^(a·b) X^a Z^b with a = x-bits
/// and b = z-bits. Per qubit the (x,z) pairs (0,0),(1,0),(0,1),(1,1) read
/// I, X, Z, Y. Only real signs are representable; E(a,b) itself is always
/// Hermitian with square +I.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedPauli {
    x: BitVector,
    z: BitVector,
    negative: bool,
}

impl SignedPauli {
    pub fn new(x: BitVector, z: BitVector, negative: bool) -> Self {
        assert_eq!(x.len(), z.len(), "x and z parts of unequal length");
        SignedPauli { x, z, negative }
    }

    pub fn identity(n: usize) -> Self {
        SignedPauli::new(BitVector::zeros(n), BitVector::zeros(n), false)
    }

    /// +X^a for the given support.
    pub fn x_type(support: BitVector) -> Self {
        let n = support.len();
        SignedPauli::new(support, BitVector::zeros(n), false)
    }

    /// +Z^b for the given support.
    pub fn z_type(support: BitVector) -> Self {
        let n = support.len();
        SignedPauli::new(BitVector::zeros(n), support, false)
    }

    /// Splits a length-2n symplectic row [a | b] into a +E(a,b).
    pub fn from_symplectic_row(row: &BitVector) -> Self {
        let n = row.len() / 2;
        assert_eq!(row.len(), 2 * n, "odd-length symplectic row");
        SignedPauli::new(row.slice(0, n), row.slice(n, n), false)
    }

    /// The row [a | b] of length 2n.
    pub fn symplectic_row(&self) -> BitVector {
        self.x.concat(&self.z)
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVector {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVector {
        &self.z
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn sign(&self) -> i8 {
        if self.negative {
            -1
        } else {
            1
        }
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    /// Number of qubits acted on non-trivially.
    pub fn weight(&self) -> usize {
        self.x.or_weight(&self.z)
    }

    /// Paulis commute iff the symplectic product a·d + b·c vanishes mod 2.
    pub fn commutes_with(&self, other: &SignedPauli) -> bool {
        (self.x.and_weight(&other.z) + self.z.and_weight(&other.x)) % 2 == 0
    }

    /// Product of two E-form Paulis. The phase
    /// i^(a·b + c·d + 2 b·c − (a⊕c)·(b⊕d)) is ±1 exactly when the factors
    /// commute; anticommuting products pick up ±i and are rejected here.
    pub fn mul(&self, other: &SignedPauli) -> SignedPauli {
        assert_eq!(self.n(), other.n(), "product of Paulis on different qubit counts");
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let exp = (self.x.and_weight(&self.z) + other.x.and_weight(&other.z)) as isize
            + 2 * self.z.and_weight(&other.x) as isize
            - x.and_weight(&z) as isize;
        let exp = exp.rem_euclid(4);
        assert!(exp % 2 == 0, "product of anticommuting Paulis has imaginary phase");
        SignedPauli::new(x, z, self.negative ^ other.negative ^ (exp == 2))
    }

    /// Single-qubit letter at position q.
    pub fn letter(&self, q: usize) -> char {
        match (self.x.get(q), self.z.get(q)) {
            (false, false) => 'I',
            (true, false) => 'X',
            (false, true) => 'Z',
            (true, true) => 'Y',
        }
    }
}

impl fmt::Display for SignedPauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.negative { '-' } else { '+' })?;
        for q in 0..self.n() {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

/// In-place conjugation by one gate: P ↦ U P U†. Single-qubit sign rules
/// act on the E-form letters directly; the two-qubit gates track the D-level
/// reordering sign plus the i-exponent shift between E(a,b) and E(a',b'),
/// which is always even.
fn conjugate_gate(p: &mut SignedPauli, g: &Gate) {
    let flip = |p: &mut SignedPauli, cond: bool| {
        if cond {
            p.negative = !p.negative;
        }
    };
    match *g {
        Gate::H(q) => {
            let (a, b) = (p.x.get(q), p.z.get(q));
            flip(p, a && b);
            p.x.set(q, b);
            p.z.set(q, a);
        }
        Gate::S(q) => {
            let (a, b) = (p.x.get(q), p.z.get(q));
            flip(p, a && b);
            p.z.set(q, a ^ b);
        }
        Gate::X(q) => flip(p, p.z.get(q)),
        Gate::Z(q) => flip(p, p.x.get(q)),
        Gate::Y(q) => flip(p, p.x.get(q) ^ p.z.get(q)),
        Gate::Swap(r, s) => {
            let (ar, br, as_, bs) = (p.x.get(r), p.z.get(r), p.x.get(s), p.z.get(s));
            p.x.set(r, as_);
            p.z.set(r, bs);
            p.x.set(s, ar);
            p.z.set(s, br);
        }
        Gate::Cnot(c, t) => {
            let (ac, bc, at, bt) = (p.x.get(c), p.z.get(c), p.x.get(t), p.z.get(t));
            let (at2, bc2) = (at ^ ac, bc ^ bt);
            let delta = (ac as isize & bc as isize) + (at as isize & bt as isize)
                - (ac as isize & bc2 as isize)
                - (at2 as isize & bt as isize);
            p.x.set(t, at2);
            p.z.set(c, bc2);
            apply_phase_exponent(p, delta);
        }
        Gate::Cz(r, s) => {
            let (ar, br, as_, bs) = (p.x.get(r), p.z.get(r), p.x.get(s), p.z.get(s));
            flip(p, ar && as_); // X_r X_s reorders to -D(a, b')
            let (br2, bs2) = (br ^ as_, bs ^ ar);
            let delta = (ar as isize & br as isize) + (as_ as isize & bs as isize)
                - (ar as isize & br2 as isize)
                - (as_ as isize & bs2 as isize);
            p.z.set(r, br2);
            p.z.set(s, bs2);
            apply_phase_exponent(p, delta);
        }
    }
}

/// Folds i^delta into the sign; delta must be even (Clifford images of
/// Hermitian Paulis stay Hermitian).
fn apply_phase_exponent(p: &mut SignedPauli, delta: isize) {
    let d = delta.rem_euclid(4);
    debug_assert!(d % 2 == 0, "odd i-exponent in Clifford conjugation");
    if d == 2 {
        p.negative = !p.negative;
    }
}

/// U_c P U_c† for the whole circuit, first gate applied first.
pub fn conjugate(c: &Circuit, p: &SignedPauli) -> Result<SignedPauli> {
    if p.n() != c.n {
        return Err(Error::DimensionMismatch(format!(
            "Pauli on {} qubits, circuit on {}",
            p.n(),
            c.n
        )));
    }
    let mut out = p.clone();
    for g in &c.gates {
        conjugate_gate(&mut out, g);
    }
    Ok(out)
}

/// Extracts the 2n × 2n symplectic action of a circuit (row i is the image
/// of X_i, row n+i of Z_i) together with the image signs.
pub fn circuit_to_symplectic(c: &Circuit) -> (SymplecticMatrix, Vec<i8>) {
    let n = c.n;
    let mut f = BitMatrix::zeros(2 * n, 2 * n);
    let mut signs = vec![1i8; 2 * n];
    for i in 0..2 * n {
        let p = SignedPauli::from_symplectic_row(&BitVector::unit(2 * n, i));
        let image = conjugate(c, &p).expect("row length matches circuit");
        f.set_row(i, &image.symplectic_row());
        signs[i] = image.sign();
    }
    debug_assert!(is_symplectic(&f));
    (SymplecticMatrix { f }, signs)
}

/// Per-logical outcome: the prescribed symplectic row, what the circuit
/// produced, and the sign it carried.
#[derive(Clone, Debug)]
pub struct LogicalImage {
    pub target: BitVector,
    pub achieved: BitVector,
    pub sign: i8,
    pub ok: bool,
}

/// Everything checked about a synthesized circuit. `pass` requires the
/// symplectic match, every stabilizer generator fixed with sign +1, and
/// every logical row landing on its prescribed image; logical signs are
/// reported but not constrained.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub symplectic_ok: bool,
    pub stabilizers_fixed: bool,
    pub stabilizer_signs: Vec<i8>,
    pub logical_images: Vec<LogicalImage>,
    pub pass: bool,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "symplectic match: {}", if self.symplectic_ok { "ok" } else { "MISMATCH" })?;
        let flipped: Vec<usize> = self
            .stabilizer_signs
            .iter()
            .enumerate()
            .filter_map(|(i, &s)| (s < 0).then_some(i + 1))
            .collect();
        writeln!(
            f,
            "stabilizers: {} generators, {}, {}",
            self.stabilizer_signs.len(),
            if self.stabilizers_fixed { "all fixed" } else { "NOT ALL FIXED" },
            if flipped.is_empty() {
                "all signs +1".to_string()
            } else {
                format!("sign -1 at {flipped:?}")
            }
        )?;
        for (i, li) in self.logical_images.iter().enumerate() {
            writeln!(
                f,
                "logical row {}: {} (sign {})",
                i + 1,
                if li.ok { "ok" } else { "MISMATCH" },
                if li.sign > 0 { "+1" } else { "-1" }
            )?;
        }
        write!(f, "verdict: {}", if self.pass { "pass" } else { "FAIL" })
    }
}

/// Checks a circuit against a target symplectic matrix and logical action:
/// exact F equality, stabilizer generators fixed with sign +1, and logical
/// rows mapped to the rows of M_L·L.
pub fn verify_logical(
    c: &Circuit,
    code: &CssCode,
    l: &LMatrix,
    ml: &LogicalActionMatrix,
    target_f: &SymplecticMatrix,
) -> VerificationReport {
    let (f, _) = circuit_to_symplectic(c);
    let symplectic_ok = f.f == target_f.f;

    let mut stabilizers_fixed = true;
    let mut stabilizer_signs = Vec::new();
    for gen in code.stabilizer_generators() {
        let image = conjugate(c, &gen).expect("generator length matches circuit");
        if image.x_bits() != gen.x_bits() || image.z_bits() != gen.z_bits() {
            stabilizers_fixed = false;
        }
        stabilizer_signs.push(image.sign());
    }

    let prescribed = ml.m.mul(&l.matrix);
    let mut logical_images = Vec::new();
    for i in 0..l.matrix.rows() {
        let p = SignedPauli::from_symplectic_row(&l.matrix.row(i));
        let image = conjugate(c, &p).expect("logical row length matches circuit");
        let achieved = image.symplectic_row();
        let target = prescribed.row(i);
        let ok = achieved == target;
        logical_images.push(LogicalImage { target, achieved, sign: image.sign(), ok });
    }

    let pass = symplectic_ok
        && stabilizers_fixed
        && stabilizer_signs.iter().all(|&s| s > 0)
        && logical_images.iter().all(|li| li.ok);
    VerificationReport { symplectic_ok, stabilizers_fixed, stabilizer_signs, logical_images, pass }
}

const ORACLE_TOL: f64 = 1e-9;

/// Statevector on n qubits; amplitude index bit q is qubit q.
struct State {
    amps: Vec<Complex64>,
}

impl State {
    fn basis(n: usize, v: usize) -> State {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[v] = Complex64::new(1.0, 0.0);
        State { amps }
    }

    fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    fn scale(&mut self, s: f64) {
        for a in &mut self.amps {
            *a *= s;
        }
    }

    fn dot(&self, other: &State) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    fn apply_gate(&mut self, g: &Gate) {
        let dim = self.amps.len();
        match *g {
            Gate::H(q) => {
                let mask = 1 << q;
                let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
                for v in 0..dim {
                    if v & mask == 0 {
                        let (a0, a1) = (self.amps[v], self.amps[v | mask]);
                        self.amps[v] = (a0 + a1) * inv_sqrt2;
                        self.amps[v | mask] = (a0 - a1) * inv_sqrt2;
                    }
                }
            }
            Gate::S(q) => {
                let mask = 1 << q;
                for (v, a) in self.amps.iter_mut().enumerate() {
                    if v & mask != 0 {
                        *a *= Complex64::new(0.0, 1.0);
                    }
                }
            }
            Gate::X(q) => {
                let mask = 1 << q;
                for v in 0..dim {
                    if v & mask == 0 {
                        self.amps.swap(v, v | mask);
                    }
                }
            }
            Gate::Y(q) => {
                let mask = 1 << q;
                let i = Complex64::new(0.0, 1.0);
                for v in 0..dim {
                    if v & mask == 0 {
                        let (a0, a1) = (self.amps[v], self.amps[v | mask]);
                        self.amps[v] = -i * a1;
                        self.amps[v | mask] = i * a0;
                    }
                }
            }
            Gate::Z(q) => {
                let mask = 1 << q;
                for (v, a) in self.amps.iter_mut().enumerate() {
                    if v & mask != 0 {
                        *a = -*a;
                    }
                }
            }
            Gate::Cnot(c, t) => {
                let (cm, tm) = (1 << c, 1 << t);
                for v in 0..dim {
                    if v & cm != 0 && v & tm == 0 {
                        self.amps.swap(v, v | tm);
                    }
                }
            }
            Gate::Cz(r, s) => {
                let (rm, sm) = (1 << r, 1 << s);
                for (v, a) in self.amps.iter_mut().enumerate() {
                    if v & rm != 0 && v & sm != 0 {
                        *a = -*a;
                    }
                }
            }
            Gate::Swap(r, s) => {
                let (rm, sm) = (1 << r, 1 << s);
                for v in 0..dim {
                    if v & rm != 0 && v & sm == 0 {
                        self.amps.swap(v, v ^ rm ^ sm);
                    }
                }
            }
        }
    }

    /// E(a,b)|v⟩ = i^(a·b) (−1)^(b·v) |v ⊕ a⟩, applied exactly.
    fn apply_e_pauli(&mut self, x: &BitVector, z: &BitVector) {
        let n = x.len();
        let dim = self.amps.len();
        debug_assert_eq!(dim, 1 << n);
        let xmask = bits_to_mask(x);
        let zmask = bits_to_mask(z);
        let phase = Complex64::new(0.0, 1.0).powu(x.and_weight(z) as u32);
        let mut out = vec![Complex64::new(0.0, 0.0); dim];
        for (v, &a) in self.amps.iter().enumerate() {
            let sign = if ((v & zmask).count_ones() & 1) == 1 { -1.0 } else { 1.0 };
            out[v ^ xmask] = a * phase * sign;
        }
        self.amps = out;
    }

    /// Projects onto the +1 eigenspace: |ψ⟩ ↦ (|ψ⟩ + E|ψ⟩)/2.
    fn project_plus(&mut self, x: &BitVector, z: &BitVector) {
        let mut copy = State { amps: self.amps.clone() };
        copy.apply_e_pauli(x, z);
        for (a, b) in self.amps.iter_mut().zip(&copy.amps) {
            *a = (*a + b) * 0.5;
        }
    }
}

fn bits_to_mask(v: &BitVector) -> usize {
    v.support().iter().fold(0usize, |m, &p| m | 1 << p)
}

/// The 2^k × 2^k unitary of the targeted logical gate, acting on logical
/// computational labels w (bit i of w = logical qubit i).
fn logical_gate_matrix(kind: LogicalGateKind, pos: &[usize], k: usize) -> Vec<Vec<Complex64>> {
    let dim = 1 << k;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let mut g = vec![vec![zero; dim]; dim];
    match kind {
        LogicalGateKind::Phase => {
            let m = 1 << pos[0];
            for (w, row) in g.iter_mut().enumerate() {
                row[w] = if w & m != 0 { Complex64::new(0.0, 1.0) } else { one };
            }
        }
        LogicalGateKind::Hadamard => {
            let m = 1 << pos[0];
            let h = std::f64::consts::FRAC_1_SQRT_2;
            for w in 0..dim {
                for wp in [w & !m, w | m] {
                    let sgn = if w & m != 0 && wp & m != 0 { -h } else { h };
                    g[wp][w] = Complex64::new(sgn, 0.0);
                }
            }
        }
        LogicalGateKind::Cnot => {
            let (cm, tm) = (1 << pos[0], 1 << pos[1]);
            for w in 0..dim {
                let wp = if w & cm != 0 { w ^ tm } else { w };
                g[wp][w] = one;
            }
        }
        LogicalGateKind::Cz => {
            let (am, bm) = (1 << pos[0], 1 << pos[1]);
            for (w, row) in g.iter_mut().enumerate() {
                row[w] = if w & am != 0 && w & bm != 0 { -one } else { one };
            }
        }
    }
    g
}

/// Ground-truth check by full statevector simulation: builds an orthonormal
/// logical basis of the codespace, pushes it through the circuit, and
/// compares the induced 2^k × 2^k action to the target gate up to one global
/// phase. Also fails if the circuit leaks any basis state out of the
/// codespace.
pub fn dense_oracle(
    c: &Circuit,
    code: &CssCode,
    basis: &LogicalBasis,
    gate: &LogicalGateSpec,
) -> Result<bool> {
    let n = code.n;
    if n > 12 {
        return Err(Error::TooLarge(format!("dense oracle limited to 12 qubits, code has {n}")));
    }
    gate.validate()?;
    let pos: Vec<usize> =
        gate.labels.iter().map(|&lb| basis.position_of(lb)).collect::<Result<_>>()?;
    let k = basis.k();

    // |ψ_0⟩: first computational state with nonzero projection onto the
    // joint +1 eigenspace of all stabilizers and all logical Z's.
    let zero_z = BitVector::zeros(n);
    let mut psi0 = None;
    for v in 0..1usize << n {
        let mut s = State::basis(n, v);
        for r in 0..code.hx.rows() {
            s.project_plus(&code.hx.row(r), &zero_z);
        }
        for r in 0..code.hz.rows() {
            s.project_plus(&zero_z, &code.hz.row(r));
        }
        for zop in &basis.z_ops {
            s.project_plus(&zero_z, zop);
        }
        let nrm = s.norm();
        if nrm > ORACLE_TOL {
            s.scale(1.0 / nrm);
            psi0 = Some(s);
            break;
        }
    }
    let psi0 = psi0.expect("codespace is nonempty");

    // logical basis |ψ_w⟩ = Π_{i: w_i=1} X̄_i |ψ_0⟩ (pure-X operators, no
    // phases)
    let dim_l = 1 << k;
    let mut logical_states = Vec::with_capacity(dim_l);
    for w in 0..dim_l {
        let mut s = State { amps: psi0.amps.clone() };
        for (i, xop) in basis.x_ops.iter().enumerate() {
            if w >> i & 1 == 1 {
                s.apply_e_pauli(xop, &zero_z);
            }
        }
        logical_states.push(s);
    }
    for (w, s) in logical_states.iter().enumerate() {
        for (wp, sp) in logical_states.iter().enumerate() {
            let g = s.dot(sp);
            let want = if w == wp { 1.0 } else { 0.0 };
            assert!(
                (g - want).norm() < 1e-6,
                "logical basis is not orthonormal at ({w},{wp})"
            );
        }
    }

    // push each basis state through the circuit and read off the action
    let mut achieved = vec![vec![Complex64::new(0.0, 0.0); dim_l]; dim_l];
    for w in 0..dim_l {
        let mut s = State { amps: logical_states[w].amps.clone() };
        for g in &c.gates {
            s.apply_gate(g);
        }
        let mut residual = s.amps.clone();
        for (wp, basis_state) in logical_states.iter().enumerate() {
            let coeff = basis_state.dot(&s);
            achieved[wp][w] = coeff;
            for (r, b) in residual.iter_mut().zip(&basis_state.amps) {
                *r -= coeff * b;
            }
        }
        let leak = residual.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if leak > ORACLE_TOL {
            return Ok(false); // circuit leaves the codespace
        }
    }

    // compare with the target up to one global phase, aligned at the
    // largest achieved entry
    let target = logical_gate_matrix(gate.kind, &pos, k);
    let mut best = (0, 0);
    for w in 0..dim_l {
        for wp in 0..dim_l {
            if achieved[wp][w].norm() > achieved[best.0][best.1].norm() {
                best = (wp, w);
            }
        }
    }
    let t = target[best.0][best.1];
    if t.norm() < ORACLE_TOL {
        return Ok(false);
    }
    let phase = achieved[best.0][best.1] / t;
    if (phase.norm() - 1.0).abs() > 1e-6 {
        return Ok(false);
    }
    for w in 0..dim_l {
        for wp in 0..dim_l {
            if (achieved[wp][w] - phase * target[wp][w]).norm() > ORACLE_TOL {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
