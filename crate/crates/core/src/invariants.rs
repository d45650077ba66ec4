//! The α_i invariants of a good BONG and their relation to the weights and
//! 𝔣-ideals of a Jordan splitting.

use serde::Serialize;

use crate::bong::BongSymbol;
use crate::error::Result;
use crate::{is_inf, INF};

/// Doubled α-values 2α_1, …, 2α_{n−1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaVector {
    pub alpha2: Vec<i64>,
}

impl AlphaVector {
    pub fn len(&self) -> usize {
        self.alpha2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha2.is_empty()
    }
}

/// d(−a_j a_{j+1}) for 1 ≤ j < n.
pub fn adjacent_defects(s: &BongSymbol) -> Result<Vec<i64>> {
    (0..s.n().saturating_sub(1))
        .map(|j| s.field.defect(&-(&s.a[j] * &s.a[j + 1])))
        .collect()
}

fn plus(a: i64, b: i64) -> i64 {
    if is_inf(a) || is_inf(b) {
        INF
    } else {
        a + b
    }
}

/// α_i straight from the defining minimum.
pub fn alpha_vector(s: &BongSymbol) -> Result<AlphaVector> {
    let e2 = 2 * s.field.e() as i64;
    let r = s.r();
    let d = adjacent_defects(s)?;
    let n = s.n();
    let mut alpha2 = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let mut m = r[i + 1] - r[i] + e2;
        for (j, &dj) in d.iter().enumerate().take(i + 1) {
            m = m.min(plus(2 * (r[i + 1] - r[j]), 2 * dj));
        }
        for (j, &dj) in d.iter().enumerate().skip(i) {
            m = m.min(plus(2 * (r[j + 1] - r[i]), 2 * dj));
        }
        alpha2.push(m);
    }
    Ok(AlphaVector { alpha2 })
}

/// α_i as the fixed point of the four-term recursion, iterated down from
/// the two local terms until nothing changes.
pub fn alpha_recursive(s: &BongSymbol) -> Result<AlphaVector> {
    let e2 = 2 * s.field.e() as i64;
    let r = s.r();
    let d = adjacent_defects(s)?;
    let m = s.n().saturating_sub(1);
    let gap2 = |i: usize| 2 * (r[i + 1] - r[i]);
    let mut a: Vec<i64> = (0..m)
        .map(|i| (r[i + 1] - r[i] + e2).min(plus(gap2(i), 2 * d[i])))
        .collect();
    loop {
        let mut changed = false;
        for i in 0..m {
            let mut v = a[i];
            if i > 0 {
                v = v.min(gap2(i) + a[i - 1]);
            }
            if i + 1 < m {
                v = v.min(gap2(i) + a[i + 1]);
            }
            if v < a[i] {
                a[i] = v;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(AlphaVector { alpha2: a })
}

/// A Jordan component read off the R-vector: positions `start..end`
/// (0-based), scale r and u = ord 𝔫L^{𝔰}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RBlock {
    pub start: usize,
    pub end: usize,
    pub r: i64,
    pub u: i64,
}

/// Jordan components from the R-pattern: a proper component of scale r is
/// a run r, …, r; an improper one is a run of pairs (u, 2r−u) with u > r.
pub fn jordan_blocks(r: &[i64]) -> Vec<RBlock> {
    let n = r.len();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        if i + 1 < n && r[i + 1] < r[i] {
            let (u, v) = (r[i], r[i + 1]);
            let mut j = i + 2;
            while j + 1 < n && r[j] == u && r[j + 1] == v {
                j += 2;
            }
            out.push(RBlock {
                start: i,
                end: j,
                r: (u + v) / 2,
                u,
            });
            i = j;
        } else {
            let mut j = i + 1;
            while j < n && r[j] == r[i] {
                j += 1;
            }
            out.push(RBlock {
                start: i,
                end: j,
                r: r[i],
                u: r[i],
            });
            i = j;
        }
    }
    out
}

/// ord 𝔣_k from the BONG side; `above_2e` marks an odd gap > 2e.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FOrder {
    pub value: i64,
    pub above_2e: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightOrders {
    pub blocks: Vec<RBlock>,
    pub w: Vec<i64>,
    pub f: Vec<FOrder>,
}

/// ord 𝔴_k and ord 𝔣_k computed from R and α alone.
pub fn bong_weight_orders(s: &BongSymbol) -> Result<WeightOrders> {
    let e = s.field.e() as i64;
    let r = s.r();
    let alpha = alpha_vector(s)?.alpha2;
    let blocks = jordan_blocks(&r);
    let n = r.len();
    let mut w = Vec::with_capacity(blocks.len());
    for b in &blocks {
        let i = b.start;
        let wk = if b.end - b.start >= 2 {
            // R_i + α_i; α_i is integral here since the gap is at most 0
            r[i] + alpha[i] / 2
        } else {
            let mut m = 2 * e;
            if i > 0 {
                m = m.min(alpha[i - 1]);
            }
            if i + 1 < n {
                m = m.min(alpha[i]);
            }
            // the minimum is integral: either 2e or an α ≤ 2e
            r[i] + m / 2
        };
        w.push(wk);
    }
    let mut f = Vec::with_capacity(blocks.len().saturating_sub(1));
    for b in blocks.iter().take(blocks.len().saturating_sub(1)) {
        let i = b.end - 1;
        let gap = r[i + 1] - r[i];
        if gap % 2 != 0 && gap > 2 * e {
            f.push(FOrder {
                value: gap,
                above_2e: true,
            });
        } else {
            f.push(FOrder {
                value: alpha[i] / 2,
                above_2e: false,
            });
        }
    }
    Ok(WeightOrders { blocks, w, f })
}

/// ord 𝔴L = min(R_1 + α_1, R_1 + e), doubled.
pub fn weight_order2(s: &BongSymbol) -> Result<i64> {
    let e = s.field.e() as i64;
    let r = s.r();
    let alpha = alpha_vector(s)?.alpha2;
    let mut m = 2 * (r[0] + e);
    if let Some(a) = alpha.first() {
        m = m.min(2 * r[0] + a);
    }
    Ok(m)
}
