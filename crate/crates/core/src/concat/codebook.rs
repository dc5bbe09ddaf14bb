use crate::error::{Error, Result};

/// Concatenates explicit codebooks: every outer codeword is mapped symbol by
/// symbol through `alphabet[i] -> inner[i]`.
pub fn concatenate_codebooks<S: Clone, A: PartialEq + std::fmt::Debug>(
    inner: &[Vec<S>],
    alphabet: &[A],
    outer: &[Vec<A>],
) -> Result<Vec<Vec<S>>> {
    if inner.len() != alphabet.len() {
        return Err(Error::AlphabetMismatch(format!(
            "{} inner codewords for an outer alphabet of {}",
            inner.len(),
            alphabet.len()
        )));
    }
    outer
        .iter()
        .map(|word| {
            let mut out = Vec::new();
            for sym in word {
                let pos = alphabet.iter().position(|a| a == sym).ok_or_else(|| {
                    Error::AlphabetMismatch(format!("symbol {sym:?} not in alphabet"))
                })?;
                out.extend_from_slice(&inner[pos]);
            }
            Ok(out)
        })
        .collect()
}
