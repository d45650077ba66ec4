//! Exhaustive isotropy test for diagonal forms Σ a_i x_i².
//!
//! Coordinates of a primitive vector are built π-adic digit by digit. A
//! partial vector known modulo π^k determines Q(x) modulo π^{min(e+k, 2k)},
//! so branches where that residue is nonzero are dropped. A branch is
//! accepted as soon as its truncation x satisfies the Hensel criterion
//! ord Q(x) ≥ 2·min_i ord(2 a_i x_i) + 1.

use crate::field::{FieldElement, Res, Ring};

/// Isotropy of ⟨a_1, …, a_n⟩ with the default digit bound 4e+3.
pub fn isotropy_search(diag: &[FieldElement]) -> bool {
    let e = diag.first().map_or(1, |a| a.field().e());
    isotropy_search_bounded(diag, 4 * e as u32 + 3)
}

struct Search<'a> {
    ring: &'a Ring,
    e: u32,
    a: Vec<Res>,
    ord_a: Vec<u32>,
    depth: u32,
}

impl Search<'_> {
    fn q(&self, x: &[Res]) -> Res {
        let mut s = self.ring.zero();
        for (ai, xi) in self.a.iter().zip(x) {
            s = self.ring.add(&s, &self.ring.mul(ai, &self.ring.square(xi)));
        }
        s
    }

    fn hensel(&self, x: &[Res], q: &Res) -> bool {
        let m = x
            .iter()
            .zip(&self.ord_a)
            .filter_map(|(xi, oa)| self.ring.ord(xi).map(|ox| self.e + oa + ox))
            .min();
        let Some(m) = m else { return false };
        match self.ring.ord(q) {
            None => true,
            Some(oq) => oq > 2 * m,
        }
    }

    fn dfs(&self, x: &mut Vec<Res>, k: u32) -> bool {
        let n = x.len();
        let digit = self.ring.pi_pow(k);
        let need = (self.e + k + 1).min(2 * (k + 1));
        for mask in 0u32..(1 << n) {
            if k == 0 && mask == 0 {
                continue;
            }
            let saved: Vec<Res> = x.clone();
            for (i, xi) in x.iter_mut().enumerate() {
                if mask >> i & 1 == 1 {
                    *xi = self.ring.add(xi, &digit);
                }
            }
            let q = self.q(x);
            if self.hensel(x, &q) {
                return true;
            }
            let alive = self.ring.ord(&q).is_none_or(|o| o >= need);
            if alive && k + 1 < self.depth && self.dfs(x, k + 1) {
                return true;
            }
            *x = saved;
        }
        false
    }
}

/// Isotropy of ⟨a_1, …, a_n⟩ searching coordinates modulo π^depth.
pub fn isotropy_search_bounded(diag: &[FieldElement], depth: u32) -> bool {
    assert!(!diag.is_empty());
    if diag.iter().any(FieldElement::is_zero) {
        return true;
    }
    let field = diag[0].field().clone();
    let e = field.e() as u32;
    let ring = field.ring_with(2 * depth + 2 * e + 4);
    let mut a = Vec::with_capacity(diag.len());
    let mut ord_a = Vec::with_capacity(diag.len());
    for d in diag {
        // Scale by an even power of π so the entry has order 0 or 1.
        let v = d.ord().expect("nonzero");
        let r = v.rem_euclid(2);
        let c = d.mul_pi_pow(r - v);
        a.push(ring.from_rationals(c.coeffs()));
        ord_a.push(r as u32);
    }
    let s = Search {
        ring: &ring,
        e,
        a,
        ord_a,
        depth,
    };
    let mut x = vec![ring.zero(); diag.len()];
    s.dfs(&mut x, 0)
}
