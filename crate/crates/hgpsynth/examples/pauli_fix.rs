//! Pauli sign correction. A circuit can implement the right symplectic map
//! while conjugating some stabilizer generators to minus themselves; a
//! single layer of Pauli gates built from destabilizers repairs every such
//! sign. This example breaks a good circuit on purpose and fixes it.
//!
//!     cargo run --example pauli_fix

use hgpsynth::codes::toric;
use hgpsynth::logicals::{l_matrix, logical_basis};
use hgpsynth::symplectic::{complete_destabilizers, stabilizer_matrix};
use hgpsynth::synth::{pauli_correction, synth_phase, Gate};
use hgpsynth::verify::{conjugate, SignedPauli};

fn main() -> hgpsynth::Result<()> {
    let code = toric(2)?;
    let basis = logical_basis(&code)?;
    let mut c = synth_phase(&code, &basis, basis.labels[0])?;

    // One stray X flips the sign of every Z-type generator containing that
    // qubit, without changing the symplectic action at all.
    c.push(Gate::X(0));
    println!("tampered circuit signs: {:?}", generator_signs(&c, &code)?);

    let l = l_matrix(&basis);
    let stab = stabilizer_matrix(code.css());
    let r = complete_destabilizers(&stab, &l)?;
    let fixed = pauli_correction(&c, code.css(), &l, &r)?;

    let appended = &fixed.gates[c.len()..];
    println!("correction layer: {appended:?}");
    println!("repaired circuit signs: {:?}", generator_signs(&fixed, &code)?);
    assert!(generator_signs(&fixed, &code)?.iter().all(|&s| s == 1));
    Ok(())
}

fn generator_signs(
    c: &hgpsynth::synth::Circuit,
    code: &hgpsynth::codes::HgpCode,
) -> hgpsynth::Result<Vec<i8>> {
    let stab = stabilizer_matrix(code.css());
    (0..stab.rows())
        .map(|i| {
            let gen = SignedPauli::from_symplectic_row(&stab.row(i));
            Ok(conjugate(c, &gen)?.sign())
        })
        .collect()
}
