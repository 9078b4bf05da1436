//! Shared fixtures for the criterion benches: the largest generator the
//! documentation walks through, and a channel that stresses wrap-around
//! decoding.

use burstec_core::{
    encode, erase, generator_recursive, BurstPattern, Code, FieldElement, PrimeField,
    ReceivedWord,
};

/// The [45, 28] binary code; 17 parity symbols, bursts up to 17.
pub fn code_45_28() -> Code {
    let field = PrimeField::new(2).expect("2 is prime");
    generator_recursive(28, 45, field).expect("shape is valid")
}

/// A codeword of the [45, 28] code with a maximal burst erased across
/// the wrap-around boundary (positions 40..45 and 1..11).
pub fn wrapped_burst_word(code: &Code) -> (Vec<FieldElement>, ReceivedWord) {
    let field = code.field();
    let message: Vec<FieldElement> = (0..code.dimension())
        .map(|i| field.element(i as u64 % 2))
        .collect();
    let codeword = encode(code, &message).expect("message has dimension k");
    let received =
        erase(&codeword, BurstPattern::new(40, 17)).expect("burst fits the word");
    (codeword, received)
}
