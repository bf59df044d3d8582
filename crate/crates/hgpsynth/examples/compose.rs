//! Compose words of targeted logical gates into one physical circuit. The
//! composite is verified as a whole, so algebraic identities of the logical
//! gates become executable checks: S̄⁴ = I and H̄² = I.
//!
//!     cargo run --example compose

use hgpsynth::codes::toric;
use hgpsynth::logicals::{l_matrix, logical_basis};
use hgpsynth::symplectic::{LogicalActionMatrix, SymplecticMatrix};
use hgpsynth::synth::{compose_logical, LogicalGateKind, LogicalGateSpec};
use hgpsynth::verify::verify_logical;

fn main() -> hgpsynth::Result<()> {
    let code = toric(2)?;
    let basis = logical_basis(&code)?;
    let l = l_matrix(&basis);
    let identity_f = SymplecticMatrix::identity(code.n());
    let identity_ml = LogicalActionMatrix::identity(basis.k());

    let phase = LogicalGateSpec { kind: LogicalGateKind::Phase, labels: vec![basis.labels[0]] };
    let hadamard =
        LogicalGateSpec { kind: LogicalGateKind::Hadamard, labels: vec![basis.labels[1]] };

    for (name, word) in [
        ("S^4", vec![phase.clone(), phase.clone(), phase.clone(), phase.clone()]),
        ("H^2", vec![hadamard.clone(), hadamard.clone()]),
    ] {
        let c = compose_logical(&code, &basis, &word)?;
        let report = verify_logical(&c, code.css(), &l, &identity_ml, &identity_f);
        println!(
            "{name}: {} physical gates, acts as logical identity: {}",
            c.len(),
            report.pass
        );
        assert!(report.pass, "{name} should verify as the identity");
    }
    Ok(())
}
