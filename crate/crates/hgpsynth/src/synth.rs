//! Gate-level IR and circuit synthesis for targeted logical Clifford gates.

use crate::codes::{CssCode, HgpCode, LogicalQubitLabel};
use crate::gf2core::{independent_row_subset, BitMatrix, BitVector};
use crate::logicals::{l_matrix, LMatrix, LogicalBasis};
use crate::symplectic::{
    complete_destabilizers, stabilizer_matrix, validate_destabilizers, DestabilizerMatrix,
    SymplecticMatrix,
};
use crate::verify::{conjugate, SignedPauli};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Elementary physical gate on 0-based qubit indices. Cnot is (control,
/// target); Cz and Swap are symmetric.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
    Swap(usize, usize),
    X(usize),
    Y(usize),
    Z(usize),
}

impl Gate {
    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::X(q) | Gate::Y(q) | Gate::Z(q) => vec![q],
            Gate::Cnot(a, b) | Gate::Cz(a, b) | Gate::Swap(a, b) => vec![a, b],
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Gate::H(_) => "h",
            Gate::S(_) => "s",
            Gate::Cnot(..) => "cnot",
            Gate::Cz(..) => "cz",
            Gate::Swap(..) => "swap",
            Gate::X(_) => "x",
            Gate::Y(_) => "y",
            Gate::Z(_) => "z",
        }
    }
}

/// Ordered list of gates on n qubits; gates[0] is applied first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Circuit {
    pub n: usize,
    pub gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(n: usize) -> Self {
        Circuit { n, gates: Vec::new() }
    }

    pub fn push(&mut self, g: Gate) {
        debug_assert!(self.validate_gate(&g).is_ok());
        self.gates.push(g);
    }

    fn validate_gate(&self, g: &Gate) -> Result<()> {
        let qs = g.qubits();
        if qs.iter().any(|&q| q >= self.n) {
            return Err(Error::InvalidGate(format!("{g:?} exceeds qubit count {}", self.n)));
        }
        if qs.len() == 2 && qs[0] == qs[1] {
            return Err(Error::InvalidGate(format!("{g:?} repeats a qubit")));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.gates.iter().try_for_each(|g| self.validate_gate(g))
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }
}

/// Which targeted logical gate to synthesize.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LogicalGateKind {
    Phase,
    Hadamard,
    Cnot,
    Cz,
}

impl LogicalGateKind {
    pub fn arity(self) -> usize {
        match self {
            LogicalGateKind::Phase | LogicalGateKind::Hadamard => 1,
            LogicalGateKind::Cnot | LogicalGateKind::Cz => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LogicalGateKind::Phase => "phase",
            LogicalGateKind::Hadamard => "hadamard",
            LogicalGateKind::Cnot => "cnot",
            LogicalGateKind::Cz => "cz",
        }
    }
}

/// A targeted logical gate request: the kind plus one label (Phase,
/// Hadamard) or two distinct labels (Cnot: control then target; Cz).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LogicalGateSpec {
    pub kind: LogicalGateKind,
    pub labels: Vec<LogicalQubitLabel>,
}

impl LogicalGateSpec {
    pub fn validate(&self) -> Result<()> {
        if self.labels.len() != self.kind.arity() {
            return Err(Error::InvalidGate(format!(
                "{} takes {} label(s), got {}",
                self.kind.name(),
                self.kind.arity(),
                self.labels.len()
            )));
        }
        if self.labels.len() == 2 && self.labels[0] == self.labels[1] {
            return Err(Error::InvalidGate(format!(
                "{} requires two distinct labels",
                self.kind.name()
            )));
        }
        Ok(())
    }
}

/// CNOT from every support qubit except x into x.
fn fan_in(c: &mut Circuit, supp: &[usize], x: usize) {
    for &y in supp {
        if y != x {
            c.push(Gate::Cnot(y, x));
        }
    }
}

/// Appends one Pauli per qubit of p's support.
fn push_pauli_layer(c: &mut Circuit, p: &SignedPauli) {
    for q in 0..c.n {
        match (p.x_bits().get(q), p.z_bits().get(q)) {
            (false, false) => {}
            (true, false) => c.push(Gate::X(q)),
            (true, true) => c.push(Gate::Y(q)),
            (false, true) => c.push(Gate::Z(q)),
        }
    }
}

/// Makes the circuit sign-exact by appending one Pauli layer: afterwards
/// every stabilizer generator conjugates to itself with sign +1 and every
/// logical basis operator conjugates to its image with sign +1. The two
/// conditions together pin the codespace action of the circuit up to a
/// global phase. A structured candidate layer is tried first when the
/// caller has one; if it does not flip exactly the offending signs, a
/// generic fix is assembled from destabilizers (one per flipped generator)
/// and from the symplectic partners of the flipped logical images. Nothing
/// is appended when the circuit is already exact.
fn fix_signs(c: &mut Circuit, code: &CssCode, basis: &LogicalBasis, candidate: Option<SignedPauli>) {
    let stab = stabilizer_matrix(code);
    let stab_flips: Vec<bool> = (0..stab.rows())
        .map(|i| {
            let gen = SignedPauli::from_symplectic_row(&stab.row(i));
            let image = conjugate(c, &gen).expect("generator length matches circuit");
            debug_assert_eq!(image.symplectic_row(), stab.row(i), "circuit must fix generators");
            image.is_negative()
        })
        .collect();
    let l = l_matrix(basis);
    let logical_images: Vec<SignedPauli> = (0..l.matrix.rows())
        .map(|j| {
            let op = SignedPauli::from_symplectic_row(&l.matrix.row(j));
            conjugate(c, &op).expect("logical length matches circuit")
        })
        .collect();
    if stab_flips.iter().all(|&f| !f) && logical_images.iter().all(|im| !im.is_negative()) {
        return;
    }
    if let Some(p) = candidate {
        // appending p flips exactly the operators it anticommutes with
        let fixes_stabs = (0..stab.rows()).all(|i| {
            let gen = SignedPauli::from_symplectic_row(&stab.row(i));
            !p.commutes_with(&gen) == stab_flips[i]
        });
        let fixes_logicals =
            logical_images.iter().all(|im| !p.commutes_with(im) == im.is_negative());
        if fixes_stabs && fixes_logicals {
            push_pauli_layer(c, &p);
            return;
        }
    }
    // Destabilizer i anticommutes with generator i alone and commutes with
    // every logical, so it flips one stabilizer sign. The image rows form a
    // symplectic basis (rows j and j+k pair up), so xoring in the partner
    // row flips one logical sign without touching the stabilizers. Signs of
    // the appended operator itself only move the global phase.
    let r = complete_destabilizers(&stab, &l).expect("stabilizers and logicals are consistent");
    let mut fix = BitVector::zeros(2 * c.n);
    for (i, &f) in stab_flips.iter().enumerate() {
        if f {
            fix.xor_assign(&r.r.row(i));
        }
    }
    let k = logical_images.len() / 2;
    for (j, im) in logical_images.iter().enumerate() {
        if im.is_negative() {
            fix.xor_assign(&logical_images[(j + k) % (2 * k)].symplectic_row());
        }
    }
    push_pauli_layer(c, &SignedPauli::from_symplectic_row(&fix));
}

/// Circuit for the targeted logical phase gate: CNOT fan-in from the
/// Z-logical support into its smallest qubit, one S there, and the fan-in
/// again. The diagonal core fixes every stabilizer generator with sign +1
/// as it stands, so no trailing Pauli is ever appended.
pub fn synth_phase(
    code: &HgpCode,
    basis: &LogicalBasis,
    label: LogicalQubitLabel,
) -> Result<Circuit> {
    let pos = basis.position_of(label)?;
    let supp = basis.z_ops[pos].support();
    let x = supp[0];
    let mut c = Circuit::new(code.n());
    fan_in(&mut c, &supp, x);
    c.push(Gate::S(x));
    fan_in(&mut c, &supp, x);
    fix_signs(&mut c, code.css(), basis, None);
    Ok(c)
}

/// Alternative phase-gate circuit acting symmetrically on the support: S on
/// every qubit of the Z-logical support, then CZ between every pair. Larger
/// gate count than synth_phase but constant depth contribution per qubit
/// pair; equally sign-clean.
pub fn synth_phase_alt(
    code: &HgpCode,
    basis: &LogicalBasis,
    label: LogicalQubitLabel,
) -> Result<Circuit> {
    let pos = basis.position_of(label)?;
    let supp = basis.z_ops[pos].support();
    let mut c = Circuit::new(code.n());
    for &q in &supp {
        c.push(Gate::S(q));
    }
    for (a, &q) in supp.iter().enumerate() {
        for &r in &supp[a + 1..] {
            c.push(Gate::Cz(q, r));
        }
    }
    fix_signs(&mut c, code.css(), basis, None);
    Ok(c)
}

/// Circuit for the targeted logical Hadamard. The X- and Z-logical supports
/// I and J of one label share exactly one qubit ρ; the circuit routes both
/// supports through ρ with CNOT/CZ layers bracketed by Hadamards. The core
/// flips the sign of exactly the stabilizer generators supported on ρ. A
/// trailing layer of X on I∖ρ and Z on J∖ρ restores them: generators
/// overlap the opposite logical support evenly, so dropping ρ leaves an odd
/// overlap precisely for generators through ρ, while the layer's own
/// overlap with the logical pair is even and leaves their images exact.
pub fn synth_hadamard(
    code: &HgpCode,
    basis: &LogicalBasis,
    label: LogicalQubitLabel,
) -> Result<Circuit> {
    let pos = basis.position_of(label)?;
    let i_supp = basis.x_ops[pos].support();
    let j_supp = basis.z_ops[pos].support();
    let mut common = i_supp.iter().copied().filter(|q| j_supp.binary_search(q).is_ok());
    let rho = common.next().expect("paired logical X and Z share a qubit");
    debug_assert_eq!(common.next(), None, "overlap is a single qubit");

    let mut c = Circuit::new(code.n());
    c.push(Gate::H(rho));
    for &x in &j_supp {
        if x != rho {
            c.push(Gate::Cnot(x, rho));
        }
    }
    for &y in &i_supp {
        if y != rho {
            c.push(Gate::Cnot(rho, y));
        }
    }
    for &y in &i_supp {
        c.push(Gate::H(y));
    }
    for &y in &i_supp {
        if y != rho {
            c.push(Gate::Cz(y, rho));
        }
    }
    for &y in &i_supp {
        c.push(Gate::H(y));
    }
    for &x in &j_supp {
        if x != rho {
            c.push(Gate::Cz(x, rho));
        }
    }
    let mut xpart = basis.x_ops[pos].clone();
    let mut zpart = basis.z_ops[pos].clone();
    xpart.set(rho, false);
    zpart.set(rho, false);
    fix_signs(&mut c, code.css(), basis, Some(SignedPauli::new(xpart, zpart, false)));
    Ok(c)
}

/// Circuit for the targeted logical CNOT: fan the control's Z-support into
/// its smallest qubit x, CNOT from x onto every qubit of the target's
/// X-support, and undo the fan-in. All-CNOT circuits keep CSS generators
/// pure-X or pure-Z, so no signs arise.
pub fn synth_cnot(
    code: &HgpCode,
    basis: &LogicalBasis,
    control: LogicalQubitLabel,
    target: LogicalQubitLabel,
) -> Result<Circuit> {
    if control == target {
        return Err(Error::InvalidGate("cnot requires two distinct labels".into()));
    }
    let pc = basis.position_of(control)?;
    let pt = basis.position_of(target)?;
    let ic = basis.z_ops[pc].support();
    let it = basis.x_ops[pt].support();
    debug_assert!(
        it.iter().all(|q| ic.binary_search(q).is_err()),
        "control Z-support and target X-support are disjoint"
    );
    let x = ic[0];
    let mut c = Circuit::new(code.n());
    fan_in(&mut c, &ic, x);
    for &y in &it {
        c.push(Gate::Cnot(x, y));
    }
    fan_in(&mut c, &ic, x);
    fix_signs(&mut c, code.css(), basis, None);
    Ok(c)
}

/// Circuit for the targeted logical CZ: fan each Z-support into a private
/// qubit (one per logical, chosen outside the other's support), apply one
/// CZ between the two, and undo both fan-ins.
pub fn synth_cz(
    code: &HgpCode,
    basis: &LogicalBasis,
    label1: LogicalQubitLabel,
    label2: LogicalQubitLabel,
) -> Result<Circuit> {
    if label1 == label2 {
        return Err(Error::InvalidGate("cz requires two distinct labels".into()));
    }
    let p1 = basis.position_of(label1)?;
    let p2 = basis.position_of(label2)?;
    let i1 = basis.z_ops[p1].support();
    let i2 = basis.z_ops[p2].support();
    let x = *i1
        .iter()
        .find(|q| i2.binary_search(q).is_err())
        .expect("distinct logicals have non-nested Z-supports");
    let xbar = *i2
        .iter()
        .find(|q| i1.binary_search(q).is_err())
        .expect("distinct logicals have non-nested Z-supports");
    let mut c = Circuit::new(code.n());
    fan_in(&mut c, &i1, x);
    fan_in(&mut c, &i2, xbar);
    c.push(Gate::Cz(x, xbar));
    fan_in(&mut c, &i1, x);
    fan_in(&mut c, &i2, xbar);
    fix_signs(&mut c, code.css(), basis, None);
    Ok(c)
}

/// Dispatches a logical gate request to the matching synthesizer.
pub fn synth_gate(code: &HgpCode, basis: &LogicalBasis, gate: &LogicalGateSpec) -> Result<Circuit> {
    gate.validate()?;
    match gate.kind {
        LogicalGateKind::Phase => synth_phase(code, basis, gate.labels[0]),
        LogicalGateKind::Hadamard => synth_hadamard(code, basis, gate.labels[0]),
        LogicalGateKind::Cnot => synth_cnot(code, basis, gate.labels[0], gate.labels[1]),
        LogicalGateKind::Cz => synth_cz(code, basis, gate.labels[0], gate.labels[1]),
    }
}

/// Concatenation of per-gate circuits; the induced logical action is the
/// product of the per-gate actions in word order (first gate leftmost).
pub fn compose_logical(
    code: &HgpCode,
    basis: &LogicalBasis,
    word: &[LogicalGateSpec],
) -> Result<Circuit> {
    let mut c = Circuit::new(code.n());
    for gate in word {
        c.gates.extend(synth_gate(code, basis, gate)?.gates);
    }
    Ok(c)
}

/// Left-multiplies the tracked tableau by the gate's symplectic matrix.
/// Pauli gates act as the identity and never occur here.
fn apply_gate_rows(m: &mut BitMatrix, g: Gate, n: usize) {
    match g {
        Gate::H(i) => m.swap_rows(i, n + i),
        Gate::S(i) => m.add_row_to(n + i, i),
        Gate::Cnot(c, t) => {
            m.add_row_to(t, c);
            m.add_row_to(n + c, n + t);
        }
        Gate::Cz(i, j) => {
            m.add_row_to(n + j, i);
            m.add_row_to(n + i, j);
        }
        Gate::Swap(i, j) => {
            m.swap_rows(i, j);
            m.swap_rows(n + i, n + j);
        }
        Gate::X(_) | Gate::Y(_) | Gate::Z(_) => unreachable!("Paulis have trivial tableau action"),
    }
}

/// Synthesizes a circuit realizing an arbitrary symplectic matrix exactly,
/// by reducing it to the identity with elementary left-multiplications and
/// emitting the corresponding gates in reduction order (every elementary
/// matrix is an involution, so the product of the emitted gates rebuilds f).
/// The result makes no sign guarantees; pair it with pauli_correction when
/// stabilizer signs matter.
pub fn synth_from_f(f: &SymplecticMatrix) -> Circuit {
    let n = f.n();
    let mut m = f.f.clone();
    let mut c = Circuit::new(n);
    let emit = |m: &mut BitMatrix, c: &mut Circuit, g: Gate| {
        apply_gate_rows(m, g, n);
        c.push(g);
    };

    // import rank into the A block: rows whose A part is dependent get
    // their C row instead (the symplectic form guarantees the mix is
    // invertible)
    let mut a = BitMatrix::zeros(n, n);
    for r in 0..n {
        for col in 0..n {
            if m.get(r, col) {
                a.set(r, col, true);
            }
        }
    }
    let kept = independent_row_subset(&a);
    let mut is_kept = vec![false; n];
    for r in kept {
        is_kept[r] = true;
    }
    for r in 0..n {
        if !is_kept[r] {
            emit(&mut m, &mut c, Gate::H(r));
        }
    }

    // Gauss-Jordan the A block to I with SWAP and CNOT row additions
    for col in 0..n {
        let pivot = (col..n).find(|&r| m.get(r, col)).expect("A block is invertible");
        if pivot != col {
            emit(&mut m, &mut c, Gate::Swap(col, pivot));
        }
        for r in 0..n {
            if r != col && m.get(r, col) {
                emit(&mut m, &mut c, Gate::Cnot(r, col));
            }
        }
    }

    // clear the symmetric C block with lower-row additions: H·S·H adds the
    // upper row onto its own lower row (diagonal), H·H·CZ·H·H adds upper
    // rows crosswise (off-diagonal pair)
    for i in 0..n {
        if m.get(n + i, i) {
            emit(&mut m, &mut c, Gate::H(i));
            emit(&mut m, &mut c, Gate::S(i));
            emit(&mut m, &mut c, Gate::H(i));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if m.get(n + i, j) {
                emit(&mut m, &mut c, Gate::H(i));
                emit(&mut m, &mut c, Gate::H(j));
                emit(&mut m, &mut c, Gate::Cz(i, j));
                emit(&mut m, &mut c, Gate::H(i));
                emit(&mut m, &mut c, Gate::H(j));
            }
        }
    }

    // with A = I and C = 0, symplecticity forces D = I and B symmetric;
    // S clears the B diagonal, CZ the off-diagonal pairs
    for i in 0..n {
        if m.get(i, n + i) {
            emit(&mut m, &mut c, Gate::S(i));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if m.get(i, n + j) {
                emit(&mut m, &mut c, Gate::Cz(i, j));
            }
        }
    }

    debug_assert_eq!(m, BitMatrix::identity(2 * n), "reduction must reach the identity");
    c
}

/// Support (touched qubit count) and greedy depth: each gate drops into the
/// earliest layer where all its qubits are free. The depth is an upper
/// bound on the true minimum over gate reorderings.
pub fn metrics(c: &Circuit) -> (usize, usize) {
    let mut last = vec![0usize; c.n];
    let mut touched = vec![false; c.n];
    let mut depth = 0;
    for g in &c.gates {
        let qs = g.qubits();
        let layer = 1 + qs.iter().map(|&q| last[q]).max().expect("gates touch a qubit");
        for &q in &qs {
            last[q] = layer;
            touched[q] = true;
        }
        depth = depth.max(layer);
    }
    (touched.iter().filter(|&&t| t).count(), depth)
}

/// Appends the Pauli layer that returns every stabilizer generator to sign
/// +1: conjugates each generator through c, multiplies the destabilizers
/// paired with the sign-flipped ones, and emits that product as single-qubit
/// gates. The destabilizers commute with every logical operator, so the
/// logical action is untouched. Fails if c moves any generator off itself.
pub fn pauli_correction(
    c: &Circuit,
    code: &CssCode,
    l: &LMatrix,
    r: &DestabilizerMatrix,
) -> Result<Circuit> {
    let stab = stabilizer_matrix(code);
    validate_destabilizers(&stab, l, r)?;
    let mut fix = BitVector::zeros(2 * c.n);
    for i in 0..stab.rows() {
        let gen = SignedPauli::from_symplectic_row(&stab.row(i));
        let image = conjugate(c, &gen)?;
        if image.symplectic_row() != stab.row(i) {
            return Err(Error::NotStabilizerPreserving);
        }
        if image.is_negative() {
            fix.xor_assign(&r.r.row(i));
        }
    }
    let mut out = c.clone();
    push_pauli_layer(&mut out, &SignedPauli::from_symplectic_row(&fix));
    Ok(out)
}

#[derive(Serialize, Deserialize)]
struct WireGate {
    kind: String,
    qubits: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct WireCircuit {
    n: usize,
    gates: Vec<WireGate>,
}

/// JSON form: {"n": ..., "gates": [{"kind": ..., "qubits": [...]}, ...]}.
/// Round-trips byte-identically through circuit_from_json.
pub fn circuit_to_json(c: &Circuit) -> String {
    let wire = WireCircuit {
        n: c.n,
        gates: c
            .gates
            .iter()
            .map(|g| WireGate { kind: g.kind_name().to_string(), qubits: g.qubits() })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&wire).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn circuit_from_json(text: &str) -> Result<Circuit> {
    let wire: WireCircuit =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("circuit JSON: {e}")))?;
    let mut gates = Vec::with_capacity(wire.gates.len());
    for wg in &wire.gates {
        let g = match (wg.kind.as_str(), wg.qubits.as_slice()) {
            ("h", &[q]) => Gate::H(q),
            ("s", &[q]) => Gate::S(q),
            ("x", &[q]) => Gate::X(q),
            ("y", &[q]) => Gate::Y(q),
            ("z", &[q]) => Gate::Z(q),
            ("cnot", &[a, b]) => Gate::Cnot(a, b),
            ("cz", &[a, b]) => Gate::Cz(a, b),
            ("swap", &[a, b]) => Gate::Swap(a, b),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown gate {:?} on qubits {:?}",
                    wg.kind, wg.qubits
                )))
            }
        };
        gates.push(g);
    }
    let c = Circuit { n: wire.n, gates };
    c.validate()?;
    Ok(c)
}

/// QASM-2 text with a 0-based register q.
pub fn circuit_to_qasm(c: &Circuit) -> String {
    let mut out = String::from("OPENQASM 2.0;\ninclude \"qelib1.inc\";\n");
    out.push_str(&format!("qreg q[{}];\n", c.n));
    for g in &c.gates {
        let line = match *g {
            Gate::H(q) => format!("h q[{q}];"),
            Gate::S(q) => format!("s q[{q}];"),
            Gate::X(q) => format!("x q[{q}];"),
            Gate::Y(q) => format!("y q[{q}];"),
            Gate::Z(q) => format!("z q[{q}];"),
            Gate::Cnot(a, b) => format!("cx q[{a}],q[{b}];"),
            Gate::Cz(a, b) => format!("cz q[{a}],q[{b}];"),
            Gate::Swap(a, b) => format!("swap q[{a}],q[{b}];"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// One row per qubit, one column per greedy layer. Single-qubit gates print
/// their letter; CNOT prints * (control) and + (target); CZ prints * on
/// both ends; SWAP prints x on both. Idle cells are dashes.
pub fn circuit_to_ascii(c: &Circuit) -> String {
    let mut last = vec![0usize; c.n];
    let mut placed: Vec<(usize, Gate)> = Vec::new();
    let mut depth = 0;
    for g in &c.gates {
        let qs = g.qubits();
        let layer = 1 + qs.iter().map(|&q| last[q]).max().unwrap_or(0);
        for &q in &qs {
            last[q] = layer;
        }
        depth = depth.max(layer);
        placed.push((layer, *g));
    }
    let mut grid = vec![vec!['-'; depth]; c.n];
    for (layer, g) in placed {
        let col = layer - 1;
        match g {
            Gate::H(q) => grid[q][col] = 'H',
            Gate::S(q) => grid[q][col] = 'S',
            Gate::X(q) => grid[q][col] = 'X',
            Gate::Y(q) => grid[q][col] = 'Y',
            Gate::Z(q) => grid[q][col] = 'Z',
            Gate::Cnot(a, b) => {
                grid[a][col] = '*';
                grid[b][col] = '+';
            }
            Gate::Cz(a, b) => {
                grid[a][col] = '*';
                grid[b][col] = '*';
            }
            Gate::Swap(a, b) => {
                grid[a][col] = 'x';
                grid[b][col] = 'x';
            }
        }
    }
    let width = format!("{}", c.n.saturating_sub(1)).len();
    let mut out = String::new();
    for (q, row) in grid.iter().enumerate() {
        out.push_str(&format!("q{q:<width$} "));
        for &ch in row {
            out.push(ch);
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{hgp, toric, Sector};
    use crate::logicals::logical_basis;
    use crate::symplectic::{gate_f, ml_for, random_symplectic};
    use crate::verify::{circuit_to_symplectic, dense_oracle, verify_logical, VerificationReport};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tiny_code() -> HgpCode {
        let h = BitMatrix::from_rows(&[vec![1, 1]]);
        hgp(h.clone(), h)
    }

    fn report_for(
        code: &HgpCode,
        basis: &LogicalBasis,
        spec: &LogicalGateSpec,
        c: &Circuit,
    ) -> VerificationReport {
        let l = l_matrix(basis);
        let target = gate_f(basis, spec).unwrap();
        let positions: Vec<usize> =
            spec.labels.iter().map(|&lb| basis.position_of(lb).unwrap()).collect();
        let ml = ml_for(spec.kind, &positions, basis.labels.len()).unwrap();
        verify_logical(c, code.css(), &l, &ml, &target)
    }

    fn assert_implements(code: &HgpCode, basis: &LogicalBasis, spec: &LogicalGateSpec, c: &Circuit) {
        let report = report_for(code, basis, spec, c);
        assert!(report.pass, "{report}");
    }

    #[test]
    fn phase_on_single_logical_code() {
        let code = tiny_code();
        let basis = logical_basis(&code).unwrap();
        let c = synth_phase(&code, &basis, basis.labels[0]).unwrap();
        assert_eq!(c.gates, vec![Gate::Cnot(3, 1), Gate::S(1), Gate::Cnot(3, 1)]);
        let spec = LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![basis.labels[0]] };
        assert_implements(&code, &basis, &spec, &c);
        assert!(dense_oracle(&c, code.css(), &basis, &spec).unwrap());
    }

    #[test]
    fn phase_on_torus_fans_into_the_lowest_support_qubit() {
        let code = toric(3).unwrap();
        let basis = logical_basis(&code).unwrap();
        let c = synth_phase(&code, &basis, basis.labels[0]).unwrap();
        assert_eq!(
            c.gates,
            vec![
                Gate::Cnot(5, 2),
                Gate::Cnot(8, 2),
                Gate::S(2),
                Gate::Cnot(5, 2),
                Gate::Cnot(8, 2)
            ]
        );
        assert_eq!(metrics(&c), (3, 5));
        let spec = LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![basis.labels[0]] };
        assert_implements(&code, &basis, &spec, &c);
        let c1 = synth_phase(&code, &basis, basis.labels[1]).unwrap();
        let spec1 = LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![basis.labels[1]] };
        assert_implements(&code, &basis, &spec1, &c1);
    }

    #[test]
    fn alternative_phase_uses_s_and_cz_only() {
        let code = tiny_code();
        let basis = logical_basis(&code).unwrap();
        let c = synth_phase_alt(&code, &basis, basis.labels[0]).unwrap();
        assert_eq!(c.gates, vec![Gate::S(1), Gate::S(3), Gate::Cz(1, 3)]);
        let spec = LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![basis.labels[0]] };
        assert_implements(&code, &basis, &spec, &c);
        assert!(dense_oracle(&c, code.css(), &basis, &spec).unwrap());

        let code3 = toric(3).unwrap();
        let basis3 = logical_basis(&code3).unwrap();
        let c3 = synth_phase_alt(&code3, &basis3, basis3.labels[0]).unwrap();
        let s_count = c3.gates.iter().filter(|g| matches!(g, Gate::S(_))).count();
        let cz_count = c3.gates.iter().filter(|g| matches!(g, Gate::Cz(..))).count();
        assert_eq!((s_count, cz_count, c3.len()), (3, 3, 6));
        let spec3 =
            LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![basis3.labels[0]] };
        assert_implements(&code3, &basis3, &spec3, &c3);
    }

    #[test]
    fn hadamard_routes_both_supports_through_their_common_qubit() {
        let code = tiny_code();
        let basis = logical_basis(&code).unwrap();
        let c = synth_hadamard(&code, &basis, basis.labels[0]).unwrap();
        // X-support {2,3}, Z-support {1,3}, ρ = 3: the sign layer is X(2)Z(1)
        assert_eq!(&c.gates[c.len() - 2..], &[Gate::Z(1), Gate::X(2)]);
        let spec =
            LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![basis.labels[0]] };
        assert_implements(&code, &basis, &spec, &c);
        assert!(dense_oracle(&c, code.css(), &basis, &spec).unwrap());

        let code3 = toric(3).unwrap();
        let basis3 = logical_basis(&code3).unwrap();
        let c3 = synth_hadamard(&code3, &basis3, basis3.labels[0]).unwrap();
        assert_eq!(c3.len(), 19);
        assert_eq!(&c3.gates[15..], &[Gate::Z(2), Gate::Z(5), Gate::X(6), Gate::X(7)]);
        assert_eq!(metrics(&c3).0, 5);
        let spec3 =
            LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![basis3.labels[0]] };
        assert_implements(&code3, &basis3, &spec3, &c3);
        let spec3r =
            LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![basis3.labels[1]] };
        let c3r = synth_hadamard(&code3, &basis3, basis3.labels[1]).unwrap();
        assert_implements(&code3, &basis3, &spec3r, &c3r);
    }

    #[test]
    fn hadamard_needs_its_pauli_tail() {
        let code = toric(3).unwrap();
        let basis = logical_basis(&code).unwrap();
        let mut c = synth_hadamard(&code, &basis, basis.labels[0]).unwrap();
        c.gates.truncate(15);
        let spec =
            LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![basis.labels[0]] };
        let report = report_for(&code, &basis, &spec, &c);
        assert!(!report.pass);
        assert!(report.symplectic_ok && report.stabilizers_fixed);
        assert!(report.stabilizer_signs.contains(&-1));

        let l = l_matrix(&basis);
        let r = complete_destabilizers(&stabilizer_matrix(code.css()), &l).unwrap();
        let fixed = pauli_correction(&c, code.css(), &l, &r).unwrap();
        assert!(fixed.len() > c.len());
        assert_implements(&code, &basis, &spec, &fixed);
    }

    #[test]
    fn synthesized_circuits_conjugate_logicals_with_plus_signs() {
        // sign-exactness beyond the stabilizers: every logical image keeps
        // a +1 sign, pinning the codespace action up to a global phase
        let code = toric(3).unwrap();
        let basis = logical_basis(&code).unwrap();
        let (l0, l1) = (basis.labels[0], basis.labels[1]);
        for spec in [
            LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![l0] },
            LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![l0] },
            LogicalGateSpec { kind: LogicalGateKind::Cnot, labels: vec![l0, l1] },
            LogicalGateSpec { kind: LogicalGateKind::Cz, labels: vec![l0, l1] },
        ] {
            let c = synth_gate(&code, &basis, &spec).unwrap();
            let report = report_for(&code, &basis, &spec, &c);
            assert!(report.pass, "{report}");
            assert!(
                report.logical_images.iter().all(|li| li.sign == 1),
                "{} leaves a logical Pauli residue:\n{report}",
                spec.kind.name()
            );
        }
    }

    #[test]
    fn cnot_on_torus_crosses_sectors() {
        let code = toric(3).unwrap();
        let basis = logical_basis(&code).unwrap();
        let c = synth_cnot(&code, &basis, basis.labels[0], basis.labels[1]).unwrap();
        assert_eq!(
            c.gates,
            vec![
                Gate::Cnot(5, 2),
                Gate::Cnot(8, 2),
                Gate::Cnot(2, 11),
                Gate::Cnot(2, 14),
                Gate::Cnot(2, 17),
                Gate::Cnot(5, 2),
                Gate::Cnot(8, 2)
            ]
        );
        let (chi, delta) = metrics(&c);
        assert_eq!(chi, 6);
        assert!(delta <= 7);
        let spec = LogicalGateSpec {
            kind: LogicalGateKind::Cnot,
            labels: vec![basis.labels[0], basis.labels[1]],
        };
        assert_implements(&code, &basis, &spec, &c);

        // reversed roles
        let back = synth_cnot(&code, &basis, basis.labels[1], basis.labels[0]).unwrap();
        let spec_back = LogicalGateSpec {
            kind: LogicalGateKind::Cnot,
            labels: vec![basis.labels[1], basis.labels[0]],
        };
        assert_implements(&code, &basis, &spec_back, &back);
    }

    #[test]
    fn cnot_within_one_sector() {
        let code = hgp(BitMatrix::from_rows(&[vec![1, 1, 1]]), BitMatrix::from_rows(&[vec![1, 1]]));
        let basis = logical_basis(&code).unwrap();
        assert!(basis.labels.iter().all(|lb| lb.sector == Sector::Left));
        let c = synth_cnot(&code, &basis, basis.labels[0], basis.labels[1]).unwrap();
        let spec = LogicalGateSpec {
            kind: LogicalGateKind::Cnot,
            labels: vec![basis.labels[0], basis.labels[1]],
        };
        assert_implements(&code, &basis, &spec, &c);
        assert!(dense_oracle(&c, code.css(), &basis, &spec).unwrap());
        assert!(matches!(
            synth_cnot(&code, &basis, basis.labels[0], basis.labels[0]),
            Err(Error::InvalidGate(_))
        ));
    }

    #[test]
    fn cz_on_torus_and_within_a_sector() {
        let code = toric(3).unwrap();
        let basis = logical_basis(&code).unwrap();
        let c = synth_cz(&code, &basis, basis.labels[0], basis.labels[1]).unwrap();
        let cnots = c.gates.iter().filter(|g| matches!(g, Gate::Cnot(..))).count();
        let czs = c.gates.iter().filter(|g| matches!(g, Gate::Cz(..))).count();
        assert_eq!((cnots, czs, c.len()), (8, 1, 9));
        let spec = LogicalGateSpec {
            kind: LogicalGateKind::Cz,
            labels: vec![basis.labels[0], basis.labels[1]],
        };
        assert_implements(&code, &basis, &spec, &c);
        // label order is irrelevant to the action
        let swapped = synth_cz(&code, &basis, basis.labels[1], basis.labels[0]).unwrap();
        assert_implements(&code, &basis, &spec, &swapped);

        // overlapping Z-supports in the same sector
        let code2 =
            hgp(BitMatrix::from_rows(&[vec![1, 1, 1]]), BitMatrix::from_rows(&[vec![1, 1]]));
        let basis2 = logical_basis(&code2).unwrap();
        let z0 = basis2.z_ops[0].support();
        let z1 = basis2.z_ops[1].support();
        assert!(z0.iter().any(|q| z1.binary_search(q).is_ok()));
        let c2 = synth_cz(&code2, &basis2, basis2.labels[0], basis2.labels[1]).unwrap();
        let spec2 = LogicalGateSpec {
            kind: LogicalGateKind::Cz,
            labels: vec![basis2.labels[0], basis2.labels[1]],
        };
        assert_implements(&code2, &basis2, &spec2, &c2);
        assert!(dense_oracle(&c2, code2.css(), &basis2, &spec2).unwrap());
        assert!(matches!(
            synth_cz(&code, &basis, basis.labels[1], basis.labels[1]),
            Err(Error::InvalidGate(_))
        ));
    }

    #[test]
    fn dispatch_matches_direct_synthesis() {
        let code = toric(3).unwrap();
        let basis = logical_basis(&code).unwrap();
        let (l0, l1) = (basis.labels[0], basis.labels[1]);
        let pairs = [
            (
                LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![l0] },
                synth_phase(&code, &basis, l0).unwrap(),
            ),
            (
                LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![l1] },
                synth_hadamard(&code, &basis, l1).unwrap(),
            ),
            (
                LogicalGateSpec { kind: LogicalGateKind::Cnot, labels: vec![l0, l1] },
                synth_cnot(&code, &basis, l0, l1).unwrap(),
            ),
            (
                LogicalGateSpec { kind: LogicalGateKind::Cz, labels: vec![l0, l1] },
                synth_cz(&code, &basis, l0, l1).unwrap(),
            ),
        ];
        for (spec, direct) in pairs {
            assert_eq!(synth_gate(&code, &basis, &spec).unwrap(), direct);
        }
        let bad = LogicalGateSpec { kind: LogicalGateKind::Cnot, labels: vec![l0] };
        assert!(matches!(synth_gate(&code, &basis, &bad), Err(Error::InvalidGate(_))));
    }

    #[test]
    fn composed_words_multiply_out() {
        // four phase gates on one logical qubit compose to the identity
        let code = tiny_code();
        let basis = logical_basis(&code).unwrap();
        let phase = LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![basis.labels[0]] };
        let c4 = compose_logical(&code, &basis, &vec![phase.clone(); 4]).unwrap();
        let l = l_matrix(&basis);
        let report = verify_logical(
            &c4,
            code.css(),
            &l,
            &crate::symplectic::LogicalActionMatrix::identity(1),
            &SymplecticMatrix::identity(code.n()),
        );
        assert!(report.pass, "{report}");
        assert!(report.logical_images.iter().all(|li| li.sign == 1));

        // a doubled hadamard cancels exactly
        let code2 = toric(2).unwrap();
        let basis2 = logical_basis(&code2).unwrap();
        let had =
            LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![basis2.labels[0]] };
        let c2 = compose_logical(&code2, &basis2, &[had.clone(), had]).unwrap();
        let l2 = l_matrix(&basis2);
        let report2 = verify_logical(
            &c2,
            code2.css(),
            &l2,
            &crate::symplectic::LogicalActionMatrix::identity(2),
            &SymplecticMatrix::identity(code2.n()),
        );
        assert!(report2.pass, "{report2}");
        assert!(report2.logical_images.iter().all(|li| li.sign == 1));
    }

    #[test]
    fn decomposition_recovers_the_identity_with_no_gates() {
        assert!(synth_from_f(&SymplecticMatrix::identity(4)).is_empty());
    }

    #[test]
    fn decomposition_round_trips_a_worked_matrix() {
        let src = Circuit {
            n: 3,
            gates: vec![Gate::H(1), Gate::S(1), Gate::H(1), Gate::Cz(0, 2), Gate::Cnot(0, 1)],
        };
        let (f, _) = circuit_to_symplectic(&src);
        let c = synth_from_f(&f);
        let (f2, _) = circuit_to_symplectic(&c);
        assert_eq!(f2.f, f.f);
    }

    #[test]
    fn decomposition_handles_a_singular_x_block() {
        // lone Hadamard: the X|X block loses rank and the first layer must
        // patch it
        let (f, _) = circuit_to_symplectic(&Circuit { n: 2, gates: vec![Gate::H(0)] });
        let c = synth_from_f(&f);
        let (f2, _) = circuit_to_symplectic(&c);
        assert_eq!(f2.f, f.f);
    }

    #[test]
    fn decomposition_round_trips_random_symplectics() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let f = random_symplectic(4, &mut rng);
            let c = synth_from_f(&f);
            assert!(c
                .gates
                .iter()
                .all(|g| !matches!(g, Gate::X(_) | Gate::Y(_) | Gate::Z(_))));
            let (f2, _) = circuit_to_symplectic(&c);
            assert_eq!(f2.f, f.f);
        }
    }

    #[test]
    fn metrics_reports_support_and_greedy_depth() {
        assert_eq!(metrics(&Circuit::new(6)), (0, 0));
        let c = Circuit { n: 4, gates: vec![Gate::Cnot(0, 1), Gate::Cnot(2, 3), Gate::S(0)] };
        assert_eq!(metrics(&c), (4, 2));
        let serial = Circuit { n: 4, gates: vec![Gate::Cnot(0, 1), Gate::Cnot(1, 2)] };
        assert_eq!(metrics(&serial), (3, 2));
    }

    #[test]
    fn sign_correction_is_a_no_op_on_clean_circuits() {
        let code = tiny_code();
        let basis = logical_basis(&code).unwrap();
        let c = synth_phase(&code, &basis, basis.labels[0]).unwrap();
        let l = l_matrix(&basis);
        let r = complete_destabilizers(&stabilizer_matrix(code.css()), &l).unwrap();
        let same = pauli_correction(&c, code.css(), &l, &r).unwrap();
        assert_eq!(same, c);
    }

    #[test]
    fn sign_correction_repairs_an_injected_flip() {
        let code = tiny_code();
        let basis = logical_basis(&code).unwrap();
        let mut c = synth_phase(&code, &basis, basis.labels[0]).unwrap();
        c.gates.push(Gate::X(1));
        let l = l_matrix(&basis);
        let r = complete_destabilizers(&stabilizer_matrix(code.css()), &l).unwrap();
        let spec = LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![basis.labels[0]] };
        assert!(!report_for(&code, &basis, &spec, &c).pass);
        let fixed = pauli_correction(&c, code.css(), &l, &r).unwrap();
        let report = report_for(&code, &basis, &spec, &fixed);
        assert!(report.symplectic_ok && report.stabilizers_fixed);
        assert!(report.stabilizer_signs.iter().all(|&s| s == 1), "{report}");
    }

    #[test]
    fn sign_correction_rejects_group_breaking_circuits() {
        let code = toric(2).unwrap();
        let basis = logical_basis(&code).unwrap();
        let l = l_matrix(&basis);
        let r = complete_destabilizers(&stabilizer_matrix(code.css()), &l).unwrap();
        let c = Circuit { n: 8, gates: vec![Gate::S(0)] };
        assert!(matches!(
            pauli_correction(&c, code.css(), &l, &r),
            Err(Error::NotStabilizerPreserving)
        ));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let code = toric(3).unwrap();
        let basis = logical_basis(&code).unwrap();
        let c = synth_hadamard(&code, &basis, basis.labels[0]).unwrap();
        let text = circuit_to_json(&c);
        let back = circuit_from_json(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(circuit_to_json(&back), text);
    }

    #[test]
    fn json_parsing_rejects_malformed_circuits() {
        assert!(matches!(circuit_from_json("not json"), Err(Error::Parse(_))));
        let bad_kind = r#"{"n": 2, "gates": [{"kind": "t", "qubits": [0]}]}"#;
        assert!(matches!(circuit_from_json(bad_kind), Err(Error::Parse(_))));
        let bad_arity = r#"{"n": 2, "gates": [{"kind": "h", "qubits": [0, 1]}]}"#;
        assert!(matches!(circuit_from_json(bad_arity), Err(Error::Parse(_))));
        let out_of_range = r#"{"n": 2, "gates": [{"kind": "h", "qubits": [5]}]}"#;
        assert!(matches!(circuit_from_json(out_of_range), Err(Error::InvalidGate(_))));
        let repeated = r#"{"n": 2, "gates": [{"kind": "cnot", "qubits": [1, 1]}]}"#;
        assert!(matches!(circuit_from_json(repeated), Err(Error::InvalidGate(_))));
    }

    #[test]
    fn qasm_and_ascii_renderings() {
        let code = tiny_code();
        let basis = logical_basis(&code).unwrap();
        let c = synth_phase(&code, &basis, basis.labels[0]).unwrap();
        assert_eq!(
            circuit_to_qasm(&c),
            "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[5];\ncx q[3],q[1];\ns q[1];\ncx q[3],q[1];\n"
        );
        assert_eq!(circuit_to_ascii(&c), "q0 ---\nq1 +S+\nq2 ---\nq3 *-*\nq4 ---\n");
    }

    #[test]
    fn synthesis_is_deterministic() {
        let code = toric(3).unwrap();
        let basis = logical_basis(&code).unwrap();
        for spec in [
            LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![basis.labels[0]] },
            LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![basis.labels[1]] },
            LogicalGateSpec {
                kind: LogicalGateKind::Cnot,
                labels: vec![basis.labels[0], basis.labels[1]],
            },
            LogicalGateSpec {
                kind: LogicalGateKind::Cz,
                labels: vec![basis.labels[1], basis.labels[0]],
            },
        ] {
            let a = synth_gate(&code, &basis, &spec).unwrap();
            let b = synth_gate(&code, &basis, &spec).unwrap();
            assert_eq!(a, b);
            assert_eq!(circuit_to_json(&a), circuit_to_json(&b));
        }
    }
}
