//! Serialize a synthesized circuit to the JSON wire format, read it back,
//! and print the full verification report. Also renders the circuit as
//! OpenQASM 2.0 and ASCII for inspection.
//!
//!     cargo run --example verify_roundtrip

use hgpsynth::codes::toric;
use hgpsynth::logicals::{l_matrix, logical_basis};
use hgpsynth::symplectic::{gate_f, ml_for};
use hgpsynth::synth::{
    circuit_from_json, circuit_to_ascii, circuit_to_json, circuit_to_qasm, synth_gate,
    LogicalGateKind, LogicalGateSpec,
};
use hgpsynth::verify::verify_logical;

fn main() -> hgpsynth::Result<()> {
    let code = toric(2)?;
    let basis = logical_basis(&code)?;
    let spec = LogicalGateSpec {
        kind: LogicalGateKind::Cnot,
        labels: vec![basis.labels[0], basis.labels[1]],
    };
    let c = synth_gate(&code, &basis, &spec)?;

    let json = circuit_to_json(&c);
    println!("wire format:\n{json}");
    let back = circuit_from_json(&json)?;
    assert_eq!(back, c);
    println!("parsed back identical\n");

    println!("qasm:\n{}", circuit_to_qasm(&back));
    println!("layers:\n{}", circuit_to_ascii(&back));

    let l = l_matrix(&basis);
    let ml = ml_for(LogicalGateKind::Cnot, &[0, 1], basis.k())?;
    let target = gate_f(&basis, &spec)?;
    println!("{}", verify_logical(&back, code.css(), &l, &ml, &target));
    Ok(())
}
