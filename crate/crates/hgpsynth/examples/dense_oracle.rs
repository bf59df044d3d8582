//! Ground-truth verification by full statevector simulation. The oracle
//! builds the 2^k-dimensional codespace action of a circuit and compares it
//! to the ideal logical gate up to a global phase, so it catches sign
//! errors that symplectic bookkeeping alone would miss.
//!
//! Only feasible for small codes (here [[8,2]], 256 amplitudes).
//!
//!     cargo run --example dense_oracle

use hgpsynth::codes::toric;
use hgpsynth::logicals::logical_basis;
use hgpsynth::synth::{synth_gate, Gate, LogicalGateKind, LogicalGateSpec};
use hgpsynth::verify::dense_oracle;

fn main() -> hgpsynth::Result<()> {
    let code = toric(2)?;
    let basis = logical_basis(&code)?;
    let (left, right) = (basis.labels[0], basis.labels[1]);

    let specs = [
        LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![left] },
        LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![left] },
        LogicalGateSpec { kind: LogicalGateKind::Cnot, labels: vec![left, right] },
        LogicalGateSpec { kind: LogicalGateKind::Cz, labels: vec![left, right] },
    ];
    for spec in &specs {
        let c = synth_gate(&code, &basis, spec)?;
        let ok = dense_oracle(&c, code.css(), &basis, spec)?;
        println!("{:<8} {} gates: {}", spec.kind.name(), c.len(), verdict(ok));
        assert!(ok);
    }

    // The oracle is strict about phases: appending one stray Z inside the
    // phase-gate support leaves every stabilizer fixed as an operator but
    // flips a logical sign, and the simulation flags it.
    let spec = &specs[0];
    let mut broken = synth_gate(&code, &basis, spec)?;
    let q = basis.z_ops[0].support()[0];
    broken.push(Gate::Z(q));
    let ok = dense_oracle(&broken, code.css(), &basis, spec)?;
    println!("phase + stray Z({}): {}", q + 1, verdict(ok));
    assert!(!ok);
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "matches the ideal gate"
    } else {
        "does NOT match"
    }
}
