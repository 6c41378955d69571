//! Exhaustive search for constant QYBE solutions on a 2-dimensional space
//! over F_2 or F_3.
//!
//! Candidates are 4×4 matrices read row-major; entry 0 is the most
//! significant digit of the enumeration index, so the scan order is
//! lexicographic by entries. Chunk `c` fixes row 0 to the base-p digits of
//! `c`, giving `p⁴` independent chunks that can be run (and resumed) in any
//! order and merged by chunk index.

use rayon::prelude::*;

use crate::exactnum::{Scalar, ScalarField};
use crate::operators::OperatorExpr;
use crate::tensorlin::{LinearOperator, Matrix};

use super::{qybe_identity, Composite, VerifyError};

pub const SEARCH_FIELDS: [u64; 2] = [2, 3];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchHit {
    /// Row-major entries as residues in `0..p`.
    pub entries: [u8; 16],
    pub invertible: bool,
    /// `(q, η)` when the matrix equals the canonical two-dimensional family member.
    pub family: Option<(u8, u8)>,
}

impl SearchHit {
    pub fn operator(&self, p: u64) -> LinearOperator {
        let f = ScalarField::prime(p).expect("search prime");
        let m = Matrix::from_fn(&f, 4, 4, |r, c| Scalar::from_integer(&f, self.entries[4 * r + c] as i64));
        LinearOperator::new(2, m).expect("4×4 on pairs")
    }

    pub fn rows(&self) -> [[u8; 4]; 4] {
        let e = &self.entries;
        std::array::from_fn(|r| std::array::from_fn(|c| e[4 * r + c]))
    }
}

fn require_field(p: u64) -> Result<(), VerifyError> {
    if !SEARCH_FIELDS.contains(&p) {
        return Err(VerifyError::UnsupportedField(format!("F_{p} (supported: f2, f3)")));
    }
    Ok(())
}

pub fn chunk_count(p: u64) -> usize {
    (p as usize).pow(4)
}

fn digits(mut x: usize, p: usize, out: &mut [u8]) {
    for d in out.iter_mut().rev() {
        *d = (x % p) as u8;
        x /= p;
    }
}

/// Image of `e_{a⊗b⊗c}` (index 4a+2b+c) under the lifted operator, mod p.
#[inline]
fn apply(r: &[u8; 16], slot: u8, v: &[u32; 8], p: u32) -> [u32; 8] {
    let mut out = [0u32; 8];
    for (idx, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        let (a, b, c) = (idx >> 2, (idx >> 1) & 1, idx & 1);
        let (col, keep) = match slot {
            0 => (2 * a + b, c),
            1 => (2 * a + c, b),
            _ => (2 * b + c, a),
        };
        for row in 0..4 {
            let y = r[4 * row + col] as u32;
            if y == 0 {
                continue;
            }
            let (k, l) = (row >> 1, row & 1);
            let target = match slot {
                0 => 4 * k + 2 * l + keep,
                1 => 4 * k + 2 * keep + l,
                _ => 4 * keep + 2 * k + l,
            };
            out[target] = (out[target] + x * y) % p;
        }
    }
    out
}

/// R¹²R¹³R²³ = R²³R¹³R¹² by columns, stopping at the first mismatch.
fn satisfies_qybe(r: &[u8; 16], p: u32) -> bool {
    (0..8).all(|col| {
        let mut e = [0u32; 8];
        e[col] = 1;
        let lhs = apply(r, 0, &apply(r, 1, &apply(r, 2, &e, p), p), p);
        let rhs = apply(r, 2, &apply(r, 1, &apply(r, 0, &e, p), p), p);
        lhs == rhs
    })
}

fn invertible_mod(r: &[u8; 16], p: u32) -> bool {
    let mut m: [[u32; 4]; 4] = std::array::from_fn(|i| std::array::from_fn(|j| r[4 * i + j] as u32));
    for col in 0..4 {
        let Some(piv) = (col..4).find(|&i| m[i][col] != 0) else {
            return false;
        };
        m.swap(col, piv);
        let inv = (1..p).find(|x| x * m[col][col] % p == 1).expect("field element has an inverse");
        for i in col + 1..4 {
            let factor = m[i][col] * inv % p;
            for j in col..4 {
                m[i][j] = (m[i][j] + p * p - factor * m[col][j] % p) % p;
            }
        }
    }
    true
}

/// Matches rows (1,0,0,0), (0,1,0,0), (0,1−q,q,0), (η,0,0,−q) with q ≠ 0, η ∈ {0,1}.
fn family_member(r: &[u8; 16], p: u8) -> Option<(u8, u8)> {
    let q = r[10];
    let eta = r[12];
    if q == 0 || eta > 1 {
        return None;
    }
    let m = |x: i16| ((x % p as i16 + p as i16) % p as i16) as u8;
    let expected = [
        1, 0, 0, 0, //
        0, 1, 0, 0, //
        0, m(1 - q as i16), q, 0, //
        eta, 0, 0, m(-(q as i16)),
    ];
    (*r == expected).then_some((q, eta))
}

/// Cross-checks a fast-path hit through the exact direct-application path.
fn reverify(hit: &SearchHit, p: u64) -> Result<(), VerifyError> {
    let r = hit.operator(p);
    let report = qybe_identity(&Composite::from(OperatorExpr::literal(&r))).check_direct();
    let invertible = r.matrix().rank() == 4;
    if !report.holds() || invertible != hit.invertible {
        return Err(VerifyError::Reverification(format!("{:?}", hit.entries)));
    }
    Ok(())
}

/// All solutions in chunk `chunk`, in enumeration order, each re-verified.
pub fn search_chunk(p: u64, require_invertible: bool, chunk: usize) -> Result<Vec<SearchHit>, VerifyError> {
    require_field(p)?;
    let n = p as usize;
    let per_chunk = n.pow(12);
    let mut r = [0u8; 16];
    digits(chunk, n, &mut r[..4]);
    let mut hits = Vec::new();
    for x in 0..per_chunk {
        digits(x, n, &mut r[4..]);
        if !satisfies_qybe(&r, p as u32) {
            continue;
        }
        let invertible = invertible_mod(&r, p as u32);
        if require_invertible && !invertible {
            continue;
        }
        let hit = SearchHit {
            entries: r,
            invertible,
            family: family_member(&r, p as u8),
        };
        reverify(&hit, p)?;
        hits.push(hit);
    }
    Ok(hits)
}

/// Every chunk, in parallel, merged in enumeration order.
pub fn search_hits(p: u64, require_invertible: bool) -> Result<Vec<SearchHit>, VerifyError> {
    require_field(p)?;
    let chunks: Vec<Vec<SearchHit>> = (0..chunk_count(p))
        .into_par_iter()
        .map(|c| search_chunk(p, require_invertible, c))
        .collect::<Result<_, _>>()?;
    Ok(chunks.into_iter().flatten().collect())
}

pub fn search_dim2(p: u64, require_invertible: bool) -> Result<Vec<LinearOperator>, VerifyError> {
    Ok(search_hits(p, require_invertible)?.iter().map(|h| h.operator(p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensorlin::twist;

    fn entries_of(r: &LinearOperator) -> [u8; 16] {
        std::array::from_fn(|k| r.get(k / 4, k % 4).as_residue().unwrap() as u8)
    }

    #[test]
    fn fast_path_agrees_with_exact_check_on_samples() {
        for seed in 0..300usize {
            let mut r = [0u8; 16];
            digits(seed.wrapping_mul(2654435761) % 3usize.pow(16), 3, &mut r);
            let hit = SearchHit { entries: r, invertible: false, family: None };
            let exact = qybe_identity(&Composite::from(OperatorExpr::literal(&hit.operator(3))))
                .check()
                .unwrap()
                .holds();
            assert_eq!(satisfies_qybe(&r, 3), exact, "{r:?}");
            assert_eq!(invertible_mod(&r, 3), hit.operator(3).matrix().rank() == 4);
        }
    }

    #[test]
    fn unsupported_field() {
        assert!(matches!(search_dim2(5, true), Err(VerifyError::UnsupportedField(_))));
    }

    #[test]
    fn identity_and_twist_over_f2() {
        let f = ScalarField::prime(2).unwrap();
        let hits = search_hits(2, true).unwrap();
        let found: Vec<[u8; 16]> = hits.iter().map(|h| h.entries).collect();
        assert!(found.contains(&entries_of(&LinearOperator::identity(&f, 2, 2))));
        assert!(found.contains(&entries_of(&twist(2, &f))));
        let mut sorted = found.clone();
        sorted.sort();
        assert_eq!(sorted, found);
    }

    #[test]
    fn f2_census_counts() {
        // Independent brute force over all 2^16 matrices gives 399 and 49.
        let all = search_hits(2, false).unwrap();
        assert_eq!(all.len(), 399);
        assert_eq!(all.iter().filter(|h| h.invertible).count(), 49);
        assert_eq!(search_hits(2, true).unwrap().len(), 49);
        assert_eq!(all.iter().filter(|h| h.family.is_some()).count(), 2);
    }

    #[test]
    fn family_flags() {
        let f = ScalarField::prime(3).unwrap();
        let r = crate::operators::build_dim2_canonical(&Scalar::from_integer(&f, 2), &f.one()).unwrap();
        assert_eq!(family_member(&entries_of(&r), 3), Some((2, 1)));
        assert_eq!(family_member(&[0; 16], 3), None);
    }
}
