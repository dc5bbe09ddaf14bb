//! Identity files: a header line `q k delta`, then one decimal coefficient
//! index per line in message order (most significant digit first).

use std::io::{BufRead, Write};

use super::{derive_params, ConcatParams, Identity};
use crate::error::{Error, Result};

pub fn write_identity<W: Write>(
    params: &ConcatParams,
    identity: &Identity,
    mut out: W,
) -> Result<()> {
    let indices = identity.indices(params)?;
    writeln!(out, "{} {} {}", params.q(), params.k(), params.delta())?;
    for i in indices {
        writeln!(out, "{i}")?;
    }
    Ok(())
}

pub fn read_identity<R: BufRead>(input: R) -> Result<(ConcatParams, Identity)> {
    let mut lines = input
        .lines()
        .map(|l| l.map(|s| s.trim().to_string()))
        .filter(|l| !matches!(l, Ok(s) if s.is_empty()));
    let header = lines
        .next()
        .ok_or_else(|| Error::IdentityFormat("missing header".into()))??;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let bad_header = || Error::IdentityFormat(format!("bad header {header:?}"));
    if fields.len() != 3 {
        return Err(bad_header());
    }
    let q: u64 = fields[0].parse().map_err(|_| bad_header())?;
    let k: u32 = fields[1].parse().map_err(|_| bad_header())?;
    let delta: u32 = fields[2].parse().map_err(|_| bad_header())?;
    let params = derive_params(q, k, delta)?;
    let indices = lines
        .map(|l| {
            let l = l?;
            l.parse::<u128>()
                .map_err(|_| Error::IdentityFormat(format!("bad index {l:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if indices.len() != params.identity_len() {
        return Err(Error::IdentityFormat(format!(
            "expected {} coefficients, found {}",
            params.identity_len(),
            indices.len()
        )));
    }
    let identity = Identity::from_indices(&params, &indices)?;
    Ok((params, identity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::concat::identity_from_integer;
    use num_bigint::BigUint;

    #[test]
    fn worked_example_file() {
        let params = derive_params(3, 2, 1).unwrap();
        let id = identity_from_integer(&params, &BigUint::from(587u32)).unwrap();
        let mut buf = Vec::new();
        write_identity(&params, &id, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "3 2 1\n7\n2\n2\n");
        let (p2, back) = read_identity(buf.as_slice()).unwrap();
        assert_eq!(p2.blocklength(), 27);
        assert_eq!(back, id);
    }

    #[test]
    fn rejects_malformed() {
        assert!(read_identity("".as_bytes()).is_err());
        assert!(read_identity("3 2\n1\n".as_bytes()).is_err());
        assert!(read_identity("3 2 1\n1\n2\n".as_bytes()).is_err());
        assert!(read_identity("3 2 1\n1\n2\n9\n".as_bytes()).is_err());
        assert!(read_identity("3 2 1\n1\nx\n3\n".as_bytes()).is_err());
    }
}
