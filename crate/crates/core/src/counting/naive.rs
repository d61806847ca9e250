//! Reference point counter: enumerates points as [`FieldElement`] tuples and
//! evaluates equations with [`mp_eval`], term by term. Slow, independent of
//! the table-driven engine, and used to cross-check it.

use crate::algebra::mp_eval;
use crate::error::{Error, Result};
use crate::ffield::FieldElement;

use super::{required_candidates, Ambient, VarietySpec};

pub fn count_points_naive(v: &VarietySpec, n: u32, budget: u64) -> Result<u64> {
    let required = required_candidates(v, n);
    if required > budget as u128 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let emb = v.extension(n)?;
    let field = emb.target();
    let elems: Vec<FieldElement> = field.enumerate(budget)?.collect();
    let nvars = v.ambient().nvars();

    let is_zero = |pt: &[FieldElement]| -> Result<bool> {
        for eq in v.equations() {
            if !mp_eval(eq, pt, &emb)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };

    let mut count = 0u64;
    let mut visit_free = |prefix: Vec<FieldElement>, free: usize| -> Result<()> {
        let mut idx = vec![0usize; free];
        loop {
            let mut pt = prefix.clone();
            pt.extend(idx.iter().map(|&i| elems[i].clone()));
            if is_zero(&pt)? {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == free {
                    return Ok(());
                }
                idx[k] += 1;
                if idx[k] < elems.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    };

    match v.ambient() {
        Ambient::Affine(_) => visit_free(Vec::new(), nvars)?,
        Ambient::Projective(_) => {
            for lead in 0..nvars {
                let mut prefix = vec![field.zero(); lead];
                prefix.push(field.one());
                visit_free(prefix, nvars - lead - 1)?;
            }
        }
    }
    Ok(count)
}
