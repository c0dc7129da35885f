//! Sobol low-discrepancy sequence, dimensions 1 through 32.
//!
//! Direction numbers come from the standard Joe-Kuo table
//! (new-joe-kuo-6.21201, <https://web.maths.unsw.edu.au/~fkuo/sobol/>),
//! with the usual Gray-code generation order. Golden tests pin the output
//! against the published reference sequence. Index 0 is the all-zeros point;
//! callers typically skip it.

use crate::error::{Error, Result};

pub const MAX_DIMS: usize = 32;
const MAX_BITS: usize = 32;

/// Joe-Kuo rows for dimensions 2..=32: primitive-polynomial coefficient `a`
/// and initial direction values `m_1..m_s`. Dimension 1 is the van der Corput
/// sequence in base 2 and needs no row.
const JOE_KUO: [(u32, &[u32]); 31] = [
    (0, &[1]),
    (1, &[1, 3]),
    (1, &[1, 3, 1]),
    (2, &[1, 1, 1]),
    (1, &[1, 1, 3, 3]),
    (4, &[1, 3, 5, 13]),
    (2, &[1, 1, 5, 5, 17]),
    (4, &[1, 1, 5, 5, 5]),
    (7, &[1, 1, 7, 11, 19]),
    (11, &[1, 1, 5, 1, 1]),
    (13, &[1, 1, 1, 3, 11]),
    (14, &[1, 3, 5, 5, 31]),
    (1, &[1, 3, 3, 9, 7, 49]),
    (13, &[1, 1, 1, 15, 21, 21]),
    (16, &[1, 3, 1, 13, 27, 49]),
    (19, &[1, 1, 1, 15, 7, 5]),
    (22, &[1, 3, 1, 15, 13, 25]),
    (25, &[1, 1, 5, 5, 19, 61]),
    (1, &[1, 3, 7, 11, 23, 15, 103]),
    (4, &[1, 3, 7, 13, 13, 15, 69]),
    (7, &[1, 1, 3, 13, 7, 35, 63]),
    (8, &[1, 3, 5, 9, 1, 25, 53]),
    (14, &[1, 3, 1, 13, 9, 35, 107]),
    (19, &[1, 3, 1, 5, 27, 61, 31]),
    (21, &[1, 1, 5, 11, 19, 41, 61]),
    (28, &[1, 3, 5, 3, 3, 13, 69]),
    (31, &[1, 1, 7, 13, 1, 19, 1]),
    (32, &[1, 3, 7, 5, 13, 19, 59]),
    (37, &[1, 1, 3, 9, 25, 29, 41]),
    (41, &[1, 3, 5, 13, 23, 1, 55]),
    (42, &[1, 3, 7, 3, 13, 59, 17]),
];

fn direction_numbers(dim: usize) -> [u32; MAX_BITS] {
    let mut v = [0u32; MAX_BITS];
    if dim == 0 {
        for (i, slot) in v.iter_mut().enumerate() {
            *slot = 1 << (31 - i);
        }
        return v;
    }
    let (a, m) = JOE_KUO[dim - 1];
    let s = m.len();
    for i in 0..s {
        v[i] = m[i] << (31 - i);
    }
    for i in s..MAX_BITS {
        v[i] = v[i - s] ^ (v[i - s] >> s);
        for k in 0..s - 1 {
            if (a >> k) & 1 == 1 {
                v[i] ^= v[i - s + 1 + k];
            }
        }
    }
    v
}

/// Deterministic Sobol points in `[0, 1)^{n_dims}` for sequence indices
/// `skip, skip + 1, ..., skip + count - 1`.
pub fn sobol_points(n_dims: usize, count: usize, skip: usize) -> Result<Vec<Vec<f64>>> {
    if n_dims == 0 || n_dims > MAX_DIMS {
        return Err(Error::InvalidInput(format!(
            "sobol sequence supports 1..={MAX_DIMS} dimensions, got {n_dims}"
        )));
    }
    if count == 0 {
        return Err(Error::InvalidInput("point count must be positive".into()));
    }
    let last_index = skip
        .checked_add(count - 1)
        .filter(|&i| i < (1usize << MAX_BITS))
        .ok_or_else(|| {
            Error::InvalidInput(format!(
                "sequence index {skip} + {count} exceeds 2^{MAX_BITS}"
            ))
        })?;
    let _ = last_index;

    let dirs: Vec<[u32; MAX_BITS]> = (0..n_dims).map(direction_numbers).collect();

    // State at index `skip` via the Gray-code expansion, then advance
    // incrementally: point i+1 flips direction bit trailing_ones(i).
    let mut state = vec![0u32; n_dims];
    let gray = (skip as u32) ^ ((skip as u32) >> 1);
    for bit in 0..MAX_BITS {
        if (gray >> bit) & 1 == 1 {
            for (x, v) in state.iter_mut().zip(&dirs) {
                *x ^= v[bit];
            }
        }
    }

    let scale = 1.0 / (1u64 << 32) as f64;
    let mut points = Vec::with_capacity(count);
    for offset in 0..count {
        points.push(state.iter().map(|&x| x as f64 * scale).collect());
        if offset + 1 < count {
            let flip = ((skip + offset) as u32).trailing_ones() as usize;
            for (x, v) in state.iter_mut().zip(&dirs) {
                *x ^= v[flip];
            }
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unsupported_dimensions() {
        assert!(sobol_points(0, 1, 0).is_err());
        assert!(sobol_points(33, 1, 0).is_err());
        assert!(sobol_points(2, 0, 0).is_err());
    }

    #[test]
    fn skip_is_a_window_into_the_sequence() {
        let full = sobol_points(3, 10, 0).unwrap();
        let tail = sobol_points(3, 6, 4).unwrap();
        assert_eq!(&full[4..], &tail[..]);
    }
}
