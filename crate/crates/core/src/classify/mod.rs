//! Isometry deciders, the binary-transformation search and the isotropy
//! oracle.

mod beli;
mod isotropy;
mod omeara;
mod reach;
mod two_adic;

use std::fmt;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::GramLattice;
use crate::Field;

pub use beli::Beli;
pub use isotropy::{isotropy_search, isotropy_search_bounded};
pub use omeara::OMeara;
pub use reach::{binary_transform_reachable, reachable_set};
pub use two_adic::TwoAdic;

/// The condition that failed, in the order the deciders check them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tag {
    Space,
    R,
    Alpha,
    /// 1-based index i
    Defect(usize),
    Representation(usize),
    FundamentalType,
    /// part (1, 2, 3) and 1-based k
    Jordan(u8, usize),
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Space => write!(f, "space"),
            Tag::R => write!(f, "R"),
            Tag::Alpha => write!(f, "alpha"),
            Tag::Defect(i) => write!(f, "defect({i})"),
            Tag::Representation(i) => write!(f, "representation({i})"),
            Tag::FundamentalType => write!(f, "fundamental_type"),
            Tag::Jordan(p, k) => {
                let roman = ["i", "ii", "iii"][(*p as usize) - 1];
                write!(f, "omeara({roman})({k})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub isometric: bool,
    pub failing_condition: Option<Tag>,
    pub invariant_dump: Value,
}

impl Verdict {
    pub fn pass(dump: Value) -> Verdict {
        Verdict {
            isometric: true,
            failing_condition: None,
            invariant_dump: dump,
        }
    }

    pub fn fail(tag: Tag, dump: Value) -> Verdict {
        Verdict {
            isometric: false,
            failing_condition: Some(tag),
            invariant_dump: dump,
        }
    }

    pub fn from_check(check: Option<Tag>, dump: Value) -> Verdict {
        match check {
            None => Verdict::pass(dump),
            Some(t) => Verdict::fail(t, dump),
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::json!({
            "isometric": self.isometric,
            "failing_condition": self.failing_condition.map(|t| t.to_string()),
            "invariants": self.invariant_dump,
        })
    }
}

/// An isometry criterion for two lattices over the same field.
pub trait Decider: Send + Sync {
    fn name(&self) -> &'static str;

    /// Whether the criterion applies over this field.
    fn supports(&self, _field: &Field) -> bool {
        true
    }

    fn decide(&self, l: &GramLattice, k: &GramLattice) -> Result<Verdict>;
}

/// Same field and same rank.
pub fn check_pair(l: &GramLattice, k: &GramLattice) -> Result<()> {
    if l.field() != k.field() {
        return Err(Error::FieldMismatch);
    }
    if l.rank() != k.rank() {
        return Err(Error::RankMismatch(l.rank(), k.rank()));
    }
    Ok(())
}

/// Deciders by name.
pub struct Registry {
    deciders: Vec<Box<dyn Decider>>,
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(Beli));
        r.register(Box::new(OMeara));
        r.register(Box::new(TwoAdic));
        r
    }
}

impl Registry {
    pub fn empty() -> Registry {
        Registry {
            deciders: Vec::new(),
        }
    }

    pub fn register(&mut self, d: Box<dyn Decider>) {
        self.deciders.retain(|x| x.name() != d.name());
        self.deciders.push(d);
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.deciders.iter().map(|d| d.name()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&dyn Decider> {
        self.deciders
            .iter()
            .find(|d| d.name() == name)
            .map(|d| d.as_ref())
            .ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }

    /// Deciders selected by `method`; "all" means every decider that applies
    /// over the field. A named decider that does not apply is an error.
    pub fn select(&self, method: &str, field: &Field) -> Result<Vec<&dyn Decider>> {
        if method == "all" {
            return Ok(self
                .deciders
                .iter()
                .filter(|d| d.supports(field))
                .map(|d| d.as_ref())
                .collect());
        }
        let d = self.get(method)?;
        if !d.supports(field) {
            return Err(Error::MethodFieldMismatch {
                method: method.to_string(),
                e: field.e(),
            });
        }
        Ok(vec![d])
    }
}

pub fn isometric_beli(l: &GramLattice, k: &GramLattice) -> Result<Verdict> {
    Beli.decide(l, k)
}

pub fn isometric_omeara(l: &GramLattice, k: &GramLattice) -> Result<Verdict> {
    OMeara.decide(l, k)
}

pub fn isometric_2adic(l: &GramLattice, k: &GramLattice) -> Result<Verdict> {
    TwoAdic.decide(l, k)
}
