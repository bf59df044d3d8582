//! Synthesize all four targeted logical gates on the distance-3 toric code
//! and verify each circuit at the stabilizer level.
//!
//!     cargo run --example synthesize

use hgpsynth::codes::toric;
use hgpsynth::logicals::{l_matrix, logical_basis};
use hgpsynth::symplectic::{gate_f, ml_for};
use hgpsynth::synth::{metrics, synth_gate, LogicalGateKind, LogicalGateSpec};
use hgpsynth::verify::verify_logical;

fn main() -> hgpsynth::Result<()> {
    let code = toric(3)?;
    let basis = logical_basis(&code)?;
    let l = l_matrix(&basis);
    let (left, right) = (basis.labels[0], basis.labels[1]);

    let specs = [
        LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![left] },
        LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![left] },
        LogicalGateSpec { kind: LogicalGateKind::Cnot, labels: vec![left, right] },
        LogicalGateSpec { kind: LogicalGateKind::Cz, labels: vec![left, right] },
    ];

    println!("{:<10} {:>5} {:>8} {:>6}  verdict", "gate", "gates", "support", "depth");
    for spec in specs {
        let c = synth_gate(&code, &basis, &spec)?;
        let (chi, delta) = metrics(&c);

        let positions: Vec<usize> = spec
            .labels
            .iter()
            .map(|&lb| basis.position_of(lb))
            .collect::<hgpsynth::Result<_>>()?;
        let ml = ml_for(spec.kind, &positions, basis.k())?;
        let target = gate_f(&basis, &spec)?;
        let report = verify_logical(&c, code.css(), &l, &ml, &target);

        println!(
            "{:<10} {:>5} {:>8} {:>6}  {}",
            spec.kind.name(),
            c.len(),
            chi,
            delta,
            if report.pass { "pass" } else { "FAIL" }
        );
    }
    Ok(())
}
