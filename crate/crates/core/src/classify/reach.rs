use std::collections::{HashSet, VecDeque};

use crate::bong::{g_membership_class, BongSymbol};
use crate::error::{Error, Result};

fn classes(s: &BongSymbol) -> Result<Vec<usize>> {
    s.a.iter().map(|a| s.field.class_index(a)).collect()
}

/// Square-class tuples reachable from `s` by binary transformations
/// a_j, a_{j+1} → ηa_j, ηa_{j+1} with η ∈ g(a_{j+1}/a_j).
pub fn reachable_set(s: &BongSymbol) -> Result<HashSet<Vec<usize>>> {
    let field = &s.field;
    let r = s.r();
    let units: Vec<usize> = (0..field.class_count()).filter(|c| c & 1 == 0).collect();
    let start = classes(s)?;
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        for j in 0..state.len().saturating_sub(1) {
            let ratio = field.class_mul(state[j], state[j + 1]);
            let gap = r[j + 1] - r[j];
            for &eta in &units {
                if eta == 0 || !g_membership_class(field, eta, ratio, gap) {
                    continue;
                }
                let mut next = state.clone();
                next[j] = field.class_mul(next[j], eta);
                next[j + 1] = field.class_mul(next[j + 1], eta);
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(seen)
}

/// Whether `t` is reachable from `s` by binary transformations.
pub fn binary_transform_reachable(s: &BongSymbol, t: &BongSymbol) -> Result<bool> {
    if s.field != t.field {
        return Err(Error::FieldMismatch);
    }
    if s.r() != t.r() {
        return Err(Error::RMismatch);
    }
    let target = classes(t)?;
    Ok(reachable_set(s)?.contains(&target))
}
