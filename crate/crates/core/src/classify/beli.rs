use serde_json::{json, Value};

use super::{check_pair, Decider, Tag, Verdict};
use crate::bong::{good_bong, BongSymbol};
use crate::error::Result;
use crate::invariants::{alpha_vector, AlphaVector};
use crate::json::invariant_dump;
use crate::lattice::GramLattice;
use crate::spaces::{isometric_spaces, represents, SpaceInvariants};

/// Good BONG, α-vector and square classes of one lattice.
pub(crate) struct BongData {
    pub sym: BongSymbol,
    pub alpha: AlphaVector,
    pub classes: Vec<usize>,
}

impl BongData {
    pub fn new(l: &GramLattice) -> Result<BongData> {
        let sym = good_bong(l)?;
        let alpha = alpha_vector(&sym)?;
        let classes = sym
            .a
            .iter()
            .map(|a| l.field().class_index(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(BongData {
            sym,
            alpha,
            classes,
        })
    }

    pub fn space(&self, upto: usize) -> SpaceInvariants {
        SpaceInvariants::from_classes(&self.sym.field, &self.classes[..upto])
    }

    pub fn dump(&self) -> Result<Value> {
        invariant_dump(&self.sym)
    }
}

pub(crate) fn pair_dump(l: &BongData, k: &BongData) -> Result<Value> {
    Ok(json!({"L": l.dump()?, "K": k.dump()?}))
}

/// Good-BONG criterion: R, α, the defect inequalities and the
/// representation conditions where α_{i−1} + α_i > 2e.
pub struct Beli;

impl Beli {
    fn first_failure(l: &BongData, k: &BongData) -> Option<Tag> {
        let n = l.classes.len();
        let field = &l.sym.field;
        if !isometric_spaces(&l.space(n), &k.space(n)) {
            return Some(Tag::Space);
        }
        if l.sym.r() != k.sym.r() {
            return Some(Tag::R);
        }
        if l.alpha != k.alpha {
            return Some(Tag::Alpha);
        }
        let mut prod = 0usize;
        for i in 0..n.saturating_sub(1) {
            prod = field.class_mul(prod, field.class_mul(l.classes[i], k.classes[i]));
            if 2 * field.class_defect(prod) < l.alpha.alpha2[i] {
                return Some(Tag::Defect(i + 1));
            }
        }
        let e4 = 4 * field.e() as i64;
        for i in 2..n {
            // 1-based i with 1 < i < n
            if l.alpha.alpha2[i - 2] + l.alpha.alpha2[i - 1] > e4
                && !represents(&k.space(i - 1), &l.space(i))
            {
                return Some(Tag::Representation(i));
            }
        }
        None
    }
}

impl Decider for Beli {
    fn name(&self) -> &'static str {
        "beli"
    }

    fn decide(&self, l: &GramLattice, k: &GramLattice) -> Result<Verdict> {
        check_pair(l, k)?;
        let (dl, dk) = (BongData::new(l)?, BongData::new(k)?);
        Ok(Verdict::from_check(
            Beli::first_failure(&dl, &dk),
            pair_dump(&dl, &dk)?,
        ))
    }
}
