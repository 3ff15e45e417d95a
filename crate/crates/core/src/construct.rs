//! Generator matrices for the Simplex, MacDonald, repetition and
//! D-extension families.
//!
//! Column order follows the block layouts exactly, so a matrix built here is
//! byte-reproducible in a matrix file.

use crate::arith::{Modulus, ResidueVector};
use crate::code::GeneratorMatrix;
use crate::error::{Error, Result};

/// Largest Simplex/MacDonald length that will be materialized.
pub const MAX_COLUMNS: u64 = 1 << 22;

/// `n_k = (q^k - 1)/(q - 1)`, the Simplex length.
pub fn simplex_length(q: u32, k: usize) -> Option<u64> {
    let q = q as u64;
    let mut n: u64 = 0;
    for _ in 0..k {
        n = n.checked_mul(q)?.checked_add(1)?;
    }
    Some(n)
}

fn checked_simplex_length(q: u32, k: usize) -> Result<u64> {
    let n = simplex_length(q, k).filter(|&n| n <= MAX_COLUMNS);
    n.ok_or(Error::Budget {
        what: "simplex generator columns",
        needed: simplex_length(q, k).map_or(u128::MAX, |n| n as u128),
        limit: MAX_COLUMNS,
    })
}

/// Columns of `G_k`, each listed top to bottom. `G_1 = [1]` seeds the
/// recursion; for `k = 2` it yields `(0,1), (1,0), (1,1), (2,1), ..., (q-1,1)`.
fn simplex_columns(q: u32, k: usize) -> Vec<Vec<u32>> {
    let mut cols = vec![vec![1u32]];
    for level in 1..k {
        let mut next = Vec::with_capacity(cols.len() * q as usize + 1);
        for c in &cols {
            let mut col = Vec::with_capacity(level + 1);
            col.push(0);
            col.extend_from_slice(c);
            next.push(col);
        }
        let mut lone = vec![0u32; level + 1];
        lone[0] = 1;
        next.push(lone);
        for i in 1..q {
            for c in &cols {
                let mut col = Vec::with_capacity(level + 1);
                col.push(i);
                col.extend_from_slice(c);
                next.push(col);
            }
        }
        cols = next;
    }
    cols
}

/// The `k x n_k` Simplex generator `G_k`.
///
/// Odd `q` is accepted; only the distance statements need `q` even.
pub fn simplex_generator(q: u32, k: usize) -> Result<GeneratorMatrix> {
    let modulus = Modulus::new(q)?;
    if k < 2 {
        return Err(Error::domain(format!("simplex codes need k >= 2, got {k}")));
    }
    checked_simplex_length(q, k)?;
    GeneratorMatrix::from_columns(modulus, k, &simplex_columns(q, k))
}

/// The MacDonald generator `G_{k,u}`: `G_k` with every column whose top
/// `k - u` entries are zero removed. Those are exactly the `n_u` columns of
/// the embedded `[0; G_u]` block.
pub fn macdonald_generator(q: u32, k: usize, u: usize) -> Result<GeneratorMatrix> {
    let modulus = Modulus::new(q)?;
    if u < 2 || u + 1 > k {
        return Err(Error::domain(format!(
            "MacDonald codes need 2 <= u <= k-1, got k = {k}, u = {u}"
        )));
    }
    checked_simplex_length(q, k)?;
    let top = k - u;
    let kept: Vec<Vec<u32>> = simplex_columns(q, k)
        .into_iter()
        .filter(|c| c[..top].iter().any(|&e| e != 0))
        .collect();
    debug_assert_eq!(
        kept.len() as u64,
        simplex_length(q, k).unwrap() - simplex_length(q, u).unwrap()
    );
    GeneratorMatrix::from_columns(modulus, k, &kept)
}

/// `[v v ... v]` of length `n`. A unit `v` gives the Type I code, a zero
/// divisor the Type II code of size `q / gcd(q, v)`.
pub fn repetition_generator(q: u32, n: usize, v: u32) -> Result<GeneratorMatrix> {
    let modulus = Modulus::new(q)?;
    if v == 0 {
        return Err(Error::domain(
            "repetition generator v = 0 spans only the zero code",
        ));
    }
    if v >= q {
        return Err(Error::OutOfRange {
            value: v as u64,
            modulus: q,
        });
    }
    if n == 0 {
        return Err(Error::domain("repetition length must be at least 1"));
    }
    GeneratorMatrix::new(modulus, vec![ResidueVector::filled(modulus, n, v)?])
}

/// `[1^n 2^n ... (q-1)^n]`, a single row of length `(q-1)n`.
pub fn full_repetition_generator(q: u32, n: usize) -> Result<GeneratorMatrix> {
    let modulus = Modulus::new(q)?;
    if n == 0 {
        return Err(Error::domain("repetition length must be at least 1"));
    }
    let row: Vec<u32> = (1..q).flat_map(|i| std::iter::repeat_n(i, n)).collect();
    GeneratorMatrix::new(modulus, vec![ResidueVector::new(modulus, row)?])
}

/// The D-extension of a length-`n` code: every row `g` becomes
/// `(g, 0, g, g, ..., g)` with `q` copies of `g`, and the row
/// `(0^n, 1, 1^n, 2^n, ..., (q-1)^n)` is appended. The result is
/// `(k+1) x (qn+1)`.
pub fn extend_d(g: &GeneratorMatrix) -> Result<GeneratorMatrix> {
    let modulus = g.modulus();
    let q = g.q();
    let n = g.n();
    let mut rows = Vec::with_capacity(g.k() + 1);
    for r in g.rows() {
        let mut e = Vec::with_capacity(q as usize * n + 1);
        e.extend_from_slice(r.entries());
        e.push(0);
        for _ in 1..q {
            e.extend_from_slice(r.entries());
        }
        rows.push(ResidueVector::new(modulus, e)?);
    }
    let mut last = vec![0u32; n];
    last.push(1);
    for i in 1..q {
        last.extend(std::iter::repeat_n(i, n));
    }
    rows.push(ResidueVector::new(modulus, last)?);
    GeneratorMatrix::new(modulus, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;

    fn rows(g: &GeneratorMatrix) -> Vec<Vec<u32>> {
        g.rows().iter().map(|r| r.entries().to_vec()).collect()
    }

    #[test]
    fn simplex_k2_matches_display() {
        assert_eq!(
            rows(&simplex_generator(4, 2).unwrap()),
            vec![vec![0, 1, 1, 2, 3], vec![1, 0, 1, 1, 1]]
        );
        assert_eq!(
            rows(&simplex_generator(2, 2).unwrap()),
            vec![vec![0, 1, 1], vec![1, 0, 1]]
        );
    }

    #[test]
    fn simplex_k3_block_layout() {
        let g3 = simplex_generator(4, 3).unwrap();
        let g2 = simplex_generator(4, 2).unwrap();
        assert_eq!((g3.k(), g3.n()), (3, 21));
        for j in 0..5 {
            assert_eq!(g3.column(j)[0], 0);
            assert_eq!(&g3.column(j)[1..], &g2.column(j)[..]);
        }
        assert_eq!(g3.column(5), vec![1, 0, 0]);
        for i in 1..4u32 {
            for j in 0..5 {
                let col = g3.column(6 + (i as usize - 1) * 5 + j);
                assert_eq!(col[0], i);
                assert_eq!(&col[1..], &g2.column(j)[..]);
            }
        }
    }

    #[test]
    fn simplex_lengths() {
        for q in [2u32, 3, 4, 6, 8] {
            for k in 1..6 {
                let nk = simplex_length(q, k).unwrap();
                let q64 = q as u64;
                assert_eq!(nk, (q64.pow(k as u32) - 1) / (q64 - 1));
                assert_eq!(simplex_length(q, k + 1).unwrap(), q64 * nk + 1);
            }
        }
        assert!(simplex_generator(4, 1).is_err());
        assert!(matches!(
            simplex_generator(8, 12),
            Err(Error::Budget { .. })
        ));
    }

    // No column is a unit multiple of another (q in {2,4}, k in {2,3}).
    #[test]
    fn simplex_columns_pairwise_independent() {
        for q in [2u32, 4] {
            let m = Modulus::new(q).unwrap();
            for k in [2usize, 3] {
                let cols = simplex_generator(q, k).unwrap().columns();
                for (a, ca) in cols.iter().enumerate() {
                    for cb in &cols[a + 1..] {
                        for u in m.units() {
                            let scaled: Vec<u32> = ca.iter().map(|&e| e * u % q).collect();
                            assert_ne!(&scaled, cb);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn macdonald_shapes() {
        let g = macdonald_generator(4, 3, 2).unwrap();
        assert_eq!((g.k(), g.n()), (3, 16));
        let g = macdonald_generator(2, 3, 2).unwrap();
        assert_eq!((g.k(), g.n()), (3, 4));
        for (q, k, u) in [
            (2u32, 4usize, 2usize),
            (2, 4, 3),
            (4, 4, 2),
            (4, 4, 3),
            (6, 3, 2),
        ] {
            let full = simplex_generator(q, k).unwrap();
            let mac = macdonald_generator(q, k, u).unwrap();
            let deleted = full.n() - mac.n();
            assert_eq!(deleted as u64, simplex_length(q, u).unwrap());
            for c in mac.columns() {
                assert!(c.iter().any(|&e| e != 0));
                assert!(c[..k - u].iter().any(|&e| e != 0));
            }
            // the deleted columns are the [0; G_u] block
            let removed: Vec<Vec<u32>> = full
                .columns()
                .into_iter()
                .filter(|c| c[..k - u].iter().all(|&e| e == 0))
                .map(|c| c[k - u..].to_vec())
                .collect();
            assert_eq!(removed, simplex_generator(q, u).unwrap().columns());
        }
        assert!(macdonald_generator(4, 3, 3).is_err());
        assert!(macdonald_generator(4, 3, 1).is_err());
    }

    #[test]
    fn repetition_examples() {
        let c = LinearCode::enumerate_default(repetition_generator(4, 3, 1).unwrap()).unwrap();
        assert_eq!((c.cardinality(), c.min_distance().unwrap()), (4, 3));
        let c = LinearCode::enumerate_default(repetition_generator(4, 3, 2).unwrap()).unwrap();
        assert_eq!((c.cardinality(), c.min_distance().unwrap()), (2, 3));
        let c = LinearCode::enumerate_default(repetition_generator(6, 2, 4).unwrap()).unwrap();
        assert_eq!(c.cardinality(), 3);
        let w: Vec<_> = c.codewords().iter().map(|x| x.entries().to_vec()).collect();
        assert_eq!(w, vec![vec![0, 0], vec![2, 2], vec![4, 4]]);
        assert!(repetition_generator(4, 3, 0).is_err());
        assert!(repetition_generator(4, 3, 4).is_err());
    }

    #[test]
    fn full_repetition_examples() {
        assert_eq!(
            rows(&full_repetition_generator(4, 2).unwrap()),
            vec![vec![1, 1, 2, 2, 3, 3]]
        );
        let c = LinearCode::enumerate_default(full_repetition_generator(4, 1).unwrap()).unwrap();
        let w: Vec<_> = c.codewords().iter().map(|x| x.entries().to_vec()).collect();
        assert_eq!(
            w,
            vec![vec![0, 0, 0], vec![1, 2, 3], vec![2, 0, 2], vec![3, 2, 1]]
        );
        assert_eq!(c.min_distance().unwrap(), 2);
        let g = full_repetition_generator(2, 3).unwrap();
        assert_eq!(rows(&g), vec![vec![1, 1, 1]]);
        let c = LinearCode::enumerate_default(g).unwrap();
        assert_eq!(c.min_distance().unwrap(), 3);
    }

    #[test]
    fn extend_d_of_unit_code_is_g2() {
        let base = GeneratorMatrix::from_rows(4, &[vec![1]]).unwrap();
        let d = extend_d(&base).unwrap();
        let mut got = rows(&d);
        got.sort();
        let mut want = rows(&simplex_generator(4, 2).unwrap());
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn extend_d_shape_and_binary_repetition() {
        let base = GeneratorMatrix::from_rows(2, &[vec![1, 1]]).unwrap();
        let d = extend_d(&base).unwrap();
        assert_eq!(rows(&d), vec![vec![1, 1, 0, 1, 1], vec![0, 0, 1, 1, 1]]);
        let c = LinearCode::enumerate_default(d).unwrap();
        assert_eq!(c.cardinality(), 4);
        assert_eq!(c.min_distance().unwrap(), 3);

        let base = GeneratorMatrix::from_rows(6, &[vec![1, 2, 3], vec![0, 5, 1]]).unwrap();
        let d = extend_d(&base).unwrap();
        assert_eq!((d.k(), d.n()), (3, 6 * 3 + 1));
    }

    #[test]
    fn extend_d_reproduces_simplex_parameters() {
        for q in [2u32, 4] {
            let s2 = simplex_generator(q, 2).unwrap();
            let via_d = LinearCode::enumerate_default(extend_d(&s2).unwrap()).unwrap();
            let s3 = LinearCode::enumerate_default(simplex_generator(q, 3).unwrap()).unwrap();
            assert_eq!(via_d.n(), s3.n());
            assert_eq!(via_d.cardinality(), s3.cardinality());
            assert_eq!(via_d.min_distance().unwrap(), s3.min_distance().unwrap());
        }
    }
}
