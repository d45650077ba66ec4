use serde_json::json;

use super::{check_pair, Decider, Tag, Verdict};
use crate::error::Result;
use crate::json::jordan_dump;
use crate::lattice::{omeara_invariants, GramLattice, JordanData};
use crate::spaces::{isometric_spaces, lattice_space, represents};

/// The classical criterion on a Jordan splitting: fundamental type, then
/// for each k < t the determinant congruence modulo 𝔣_k and the two
/// representation conditions.
pub struct OMeara;

impl OMeara {
    fn first_failure(l: &GramLattice, k: &GramLattice, jl: &JordanData, jk: &JordanData) -> Result<Option<Tag>> {
        let field = l.field();
        let e2 = 2 * field.e() as i64;
        if !isometric_spaces(&lattice_space(l)?, &lattice_space(k)?) {
            return Ok(Some(Tag::Space));
        }
        if jl.t != jk.t || jl.dims != jk.dims || jl.r != jk.r || jl.u != jk.u || jl.w != jk.w {
            return Ok(Some(Tag::FundamentalType));
        }
        for i in 0..jl.t {
            // 𝔞_k ≅ 𝔟_k mod 𝔴_k
            let d = field.defect(&(&jl.a[i] * &jk.a[i]))?;
            if d < jl.w[i] - jl.u[i] {
                return Ok(Some(Tag::FundamentalType));
            }
        }
        for i in 0..jl.t.saturating_sub(1) {
            let kk = i + 1;
            let (cl, ck) = (jl.split.chain(kk), jk.split.chain(kk));
            let f = jl.f[i];
            if field.defect(&(&cl.det() * &ck.det()))? < f {
                return Ok(Some(Tag::Jordan(1, kk)));
            }
            let (sl, sk) = (lattice_space(&cl)?, lattice_space(&ck)?);
            let line = |a| -> Result<_> { Ok(sk.add_line(field.class_index(a)?)) };
            if f + jl.w[i + 1] - jl.u[i + 1] > e2 && !represents(&sl, &line(&jl.a[i + 1])?) {
                return Ok(Some(Tag::Jordan(2, kk)));
            }
            if f + jl.w[i] - jl.u[i] > e2 && !represents(&sl, &line(&jl.a[i])?) {
                return Ok(Some(Tag::Jordan(3, kk)));
            }
        }
        Ok(None)
    }
}

impl Decider for OMeara {
    fn name(&self) -> &'static str {
        "omeara"
    }

    fn decide(&self, l: &GramLattice, k: &GramLattice) -> Result<Verdict> {
        check_pair(l, k)?;
        let (jl, jk) = (omeara_invariants(l)?, omeara_invariants(k)?);
        let tag = OMeara::first_failure(l, k, &jl, &jk)?;
        Ok(Verdict::from_check(
            tag,
            json!({"L": jordan_dump(&jl), "K": jordan_dump(&jk)}),
        ))
    }
}
