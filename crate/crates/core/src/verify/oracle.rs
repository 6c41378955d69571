use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::operators::{SparseVec, Term};
use crate::tensorlin::{LinError, Matrix};

use super::identity::{Factor, Identity};
use super::report::{Outcome, VerificationReport, Witness};

fn column_vs_sparse(
    id: &Identity,
    m: &Matrix,
    col: usize,
    direct: &SparseVec<[usize; 3]>,
    part: &str,
) -> Option<Witness> {
    let zero = id.field().zero();
    (0..m.rows()).find_map(|row| {
        let key = id.unflatten(row);
        let d = direct.get(&key).unwrap_or(&zero);
        let v = m.get(row, col);
        (v != d).then(|| Witness {
            part: Some(part.to_string()),
            column: id.tuple(id.unflatten(col)),
            row: id.tuple(key),
            lhs: v.to_string(),
            rhs: d.to_string(),
        })
    })
}

fn factor_label(i: usize, f: &Factor) -> String {
    format!("factor {i} ({:?})", f.slot)
}

/// Compares the matrix path of `matrix_side` with the direct path of
/// `direct_side` on every basis tensor: each factor's lift, then both sides.
/// The two identities normally coincide; the mutation harness feeds a
/// perturbed copy to the matrix path only.
pub fn oracle_compare(matrix_side: &Identity, direct_side: &Identity) -> Result<VerificationReport, LinError> {
    let start = Instant::now();
    let id = direct_side;
    let d = id.base_dim().pow(id.arity());
    let mut witness = None;
    let (mf, df) = (matrix_side.factors(), direct_side.factors());
    let mut seen: Vec<&Factor> = Vec::new();
    'factors: for (i, (m, f)) in mf.iter().zip(&df).enumerate() {
        if seen.contains(m) {
            continue;
        }
        seen.push(m);
        let lifted = m.matrix()?;
        for col in 0..d {
            let mut e = SparseVec::new();
            e.insert(id.unflatten(col), id.field().one());
            if let Some(w) = column_vs_sparse(id, lifted.matrix(), col, &f.apply(&e), &factor_label(i, f)) {
                witness = Some(w);
                break 'factors;
            }
        }
    }
    if witness.is_none() {
        'sides: for (lhs, part) in [(true, "lhs"), (false, "rhs")] {
            let m = matrix_side.side_matrix(lhs)?;
            for col in 0..d {
                let img = id.side_image(lhs, id.unflatten(col));
                if let Some(w) = column_vs_sparse(id, &m, col, &img, part) {
                    witness = Some(w);
                    break 'sides;
                }
            }
        }
    }
    let outcome = if witness.is_none() { Outcome::Holds } else { Outcome::Fails };
    Ok(VerificationReport::new(
        &format!("oracle/{}", id.name),
        outcome,
        witness,
        start.elapsed(),
    ))
}

/// Matrix path and direct-application path agree on all basis images.
pub fn oracle_equivalence(id: &Identity) -> Result<VerificationReport, LinError> {
    oracle_compare(id, id)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationOutcome {
    /// The perturbed structure constant `c[i][j][k]`.
    pub slot: (usize, usize, usize),
    pub caught: bool,
    pub report: VerificationReport,
}

/// Adds 1 to one seeded structure constant in the matrix path only and runs
/// the oracle; `None` when no operator in the identity depends on structure
/// constants, or the perturbation leaves every operator unchanged.
pub fn mutation_test(id: &Identity, seed: u64) -> Result<Option<MutationOutcome>, LinError> {
    let dim = id.factors().iter().find_map(|f| {
        f.op.0.iter().find_map(|e| {
            e.summands().iter().find_map(|s| match &s.term {
                Term::Place { product, .. } if !s.coeff.is_zero() => Some(product.dim()),
                _ => None,
            })
        })
    });
    let Some(n) = dim else { return Ok(None) };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = rng.gen_range(0..n * n * n);
    let slot = (x / (n * n), (x / n) % n, x % n);
    let one = id.field().one();
    let mutated = id.map_exprs(|e| e.perturbed(slot, &one).unwrap_or_else(|| e.clone()));
    let mut effective = false;
    for (a, b) in mutated.factors().iter().zip(id.factors()) {
        if a.op.to_operator()? != b.op.to_operator()? {
            effective = true;
            break;
        }
    }
    if !effective {
        return Ok(None);
    }
    let report = oracle_compare(&mutated, id)?.with_param("mutated", format!("c[{}][{}][{}] += 1", slot.0, slot.1, slot.2));
    Ok(Some(MutationOutcome {
        slot,
        caught: !report.holds(),
        report,
    }))
}
