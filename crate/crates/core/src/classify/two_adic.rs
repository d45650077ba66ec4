use super::beli::{pair_dump, BongData};
use super::{check_pair, Decider, Tag, Verdict};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::lattice::GramLattice;
use crate::spaces::{isometric_spaces, represents};

/// The criterion over Q_2, where α is determined by R.
pub struct TwoAdic;

impl TwoAdic {
    fn first_failure(l: &BongData, k: &BongData) -> Option<Tag> {
        let n = l.classes.len();
        let field = &l.sym.field;
        if !isometric_spaces(&l.space(n), &k.space(n)) {
            return Some(Tag::Space);
        }
        let r = l.sym.r();
        if r != k.sym.r() {
            return Some(Tag::R);
        }
        let delta = field.class_index(&field.delta()).expect("nonzero");
        let mut prod = 0usize;
        for i in 0..n.saturating_sub(1) {
            prod = field.class_mul(prod, field.class_mul(l.classes[i], k.classes[i]));
            let gap = r[i + 1] - r[i];
            let ok = match gap {
                2 => prod == 0 || prod == delta,
                g if g > 2 => prod == 0,
                _ => true,
            };
            if !ok {
                return Some(Tag::Defect(i + 1));
            }
        }
        for i in 1..n.saturating_sub(1) {
            // 0-based middle index; the condition is stated at 1-based i + 1
            let pair = (r[i] - r[i - 1], r[i + 1] - r[i]);
            let needed = r[i - 1] < r[i + 1] && !matches!(pair, (0, 1) | (1, 0) | (1, 1));
            if needed && !represents(&k.space(i), &l.space(i + 1)) {
                return Some(Tag::Representation(i + 1));
            }
        }
        None
    }
}

impl Decider for TwoAdic {
    fn name(&self) -> &'static str {
        "2adic"
    }

    fn supports(&self, field: &Field) -> bool {
        field.e() == 1
    }

    fn decide(&self, l: &GramLattice, k: &GramLattice) -> Result<Verdict> {
        check_pair(l, k)?;
        if !self.supports(l.field()) {
            return Err(Error::MethodFieldMismatch {
                method: self.name().into(),
                e: l.field().e(),
            });
        }
        let (dl, dk) = (BongData::new(l)?, BongData::new(k)?);
        Ok(Verdict::from_check(
            TwoAdic::first_failure(&dl, &dk),
            pair_dump(&dl, &dk)?,
        ))
    }
}
