//! Built-in Conway polynomials.
//!
//! Entries are the low coefficients `f_0 .. f_{m-1}` (little-endian, the
//! leading 1 implicit). The variable `x` is primitive modulo each of them.

const TABLE: &[(u64, usize, &[u64])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (3, 4, &[2, 0, 0, 2]),
    (3, 5, &[1, 2, 0, 0, 0]),
    (3, 6, &[2, 2, 1, 0, 2, 0]),
    (5, 2, &[2, 4]),
    (5, 3, &[3, 3, 0]),
    (5, 4, &[2, 4, 4, 0]),
    (7, 2, &[3, 6]),
    (7, 3, &[4, 0, 6]),
    (7, 4, &[3, 4, 5, 0]),
    (11, 2, &[2, 7]),
    (11, 3, &[9, 2, 0]),
    (13, 2, &[2, 12]),
    (13, 3, &[11, 2, 0]),
    (17, 2, &[3, 16]),
    (17, 3, &[14, 1, 0]),
    (19, 2, &[2, 18]),
    (19, 3, &[17, 4, 0]),
    (23, 2, &[5, 21]),
    (23, 3, &[18, 2, 0]),
];

pub fn lookup(p: u64, m: usize) -> Option<&'static [u64]> {
    TABLE
        .iter()
        .find(|&&(tp, tm, _)| tp == p && tm == m)
        .map(|&(_, _, c)| c)
}

pub fn entries() -> impl Iterator<Item = (u64, usize, &'static [u64])> {
    TABLE.iter().copied()
}
