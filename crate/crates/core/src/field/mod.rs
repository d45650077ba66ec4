//! Dyadic local fields: Q_2 and totally ramified extensions Q_2(π) with π a
//! root of an Eisenstein polynomial. Square classes, quadratic defect and the
//! Hilbert symbol.

mod element;
mod ring;

use std::fmt;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub use element::{parse_rational, FieldElement, UnitResidue};
pub use ring::{Res, Ring};

use crate::error::{Error, Result};
use crate::INF;

/// Largest supported ramification index.
pub const MAX_E: usize = 4;
pub const DEFAULT_GUARD: u32 = 12;

/// A dyadic field. Cheap to clone.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

struct Inner {
    e: usize,
    /// c_0, …, c_{e−1} of x^e + c_{e−1}x^{e−1} + … + c_0.
    poly: Vec<BigInt>,
    guard: u32,
    pi_inv: Vec<BigRational>,
    ring: Ring,
    class_mul: OnceLock<Vec<Vec<u16>>>,
    hilbert: OnceLock<Vec<Vec<i8>>>,
    fault: Option<(usize, usize)>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.e == other.0.e && self.0.poly == other.0.poly)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field(e={}, poly={:?})", self.0.e, self.0.poly)
    }
}

impl Field {
    /// The field defined by x^e + c_{e−1}x^{e−1} + … + c_0 (coefficients given
    /// as c_0..c_{e−1}).
    pub fn new(e: usize, poly: &[i64]) -> Result<Field> {
        let poly: Vec<BigInt> = poly.iter().map(|&c| BigInt::from(c)).collect();
        Field::with_guard(e, poly, DEFAULT_GUARD)
    }

    /// Q_2 with π = 2.
    pub fn q2() -> Field {
        Field::new(1, &[-2]).expect("valid")
    }

    /// Q_2(√−2), π² + 2 = 0.
    pub fn x2_plus_2() -> Field {
        Field::new(2, &[2, 0]).expect("valid")
    }

    /// Fields are interned by (e, poly, guard) so that the lazily built
    /// class tables are shared.
    pub fn with_guard(e: usize, poly: Vec<BigInt>, guard: u32) -> Result<Field> {
        type Key = (usize, Vec<BigInt>, u32);
        static CACHE: OnceLock<Mutex<HashMap<Key, Field>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let key = (e, poly, guard);
        if let Some(f) = cache.lock().expect("cache lock").get(&key) {
            return Ok(f.clone());
        }
        let f = Field::build(e, key.1.clone(), guard)?;
        cache.lock().expect("cache lock").insert(key, f.clone());
        Ok(f)
    }

    fn build(e: usize, poly: Vec<BigInt>, guard: u32) -> Result<Field> {
        if !(1..=MAX_E).contains(&e) {
            return Err(Error::UnsupportedDegree(e));
        }
        if poly.len() != e {
            return Err(Error::NotEisenstein(format!(
                "expected {e} coefficients, got {}",
                poly.len()
            )));
        }
        let two = BigInt::from(2);
        if poly.iter().any(|c| !(c % &two).is_zero()) {
            return Err(Error::NotEisenstein("coefficients must be even".into()));
        }
        if (&poly[0] % BigInt::from(4)).is_zero() {
            return Err(Error::NotEisenstein("constant term must have 2-order 1".into()));
        }
        // π^{−1} = −(π^{e−1} + c_{e−1}π^{e−2} + … + c_1)/c_0
        let c0 = BigRational::from_integer(poly[0].clone());
        let mut pi_inv = vec![BigRational::zero(); e];
        for i in 0..e {
            let ci = if i + 1 < e {
                BigRational::from_integer(poly[i + 1].clone())
            } else {
                BigRational::one()
            };
            pi_inv[i] = -ci / &c0;
        }
        let ring = Ring::new(e, &poly, 2 * e as u32 + 1 + guard);
        let field = Field(Arc::new(Inner {
            e,
            poly,
            guard,
            pi_inv,
            ring,
            class_mul: OnceLock::new(),
            hilbert: OnceLock::new(),
            fault: None,
        }));
        field.check_delta()?;
        Ok(field)
    }

    fn check_delta(&self) -> Result<()> {
        let d = self.defect(&self.delta())?;
        if d != 2 * self.e() as i64 {
            return Err(Error::InternalVerificationFailure(format!(
                "d(-3) = {d}, expected {}",
                2 * self.e()
            )));
        }
        Ok(())
    }

    pub fn e(&self) -> usize {
        self.0.e
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.0.poly
    }

    pub fn guard(&self) -> u32 {
        self.0.guard
    }

    pub(crate) fn pi_inv(&self) -> &[BigRational] {
        &self.0.pi_inv
    }

    /// Residue ring at the working precision 2e+1+G.
    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn ring_with(&self, digits: u32) -> Ring {
        Ring::new(self.e(), &self.0.poly, digits)
    }

    /// Digits of unit part every square-class query needs.
    pub fn class_digits(&self) -> u32 {
        2 * self.e() as u32 + 1
    }

    pub fn elem(&self, v: i64) -> FieldElement {
        FieldElement::from_int(self, v)
    }

    pub fn rational(&self, n: i64, d: i64) -> FieldElement {
        FieldElement::from_rational(self, BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn pi(&self) -> FieldElement {
        FieldElement::pi(self)
    }

    /// Δ = 1 − 4ρ with ρ = 1.
    pub fn delta(&self) -> FieldElement {
        self.elem(-3)
    }

    pub fn rho(&self) -> FieldElement {
        self.elem(1)
    }

    /// Parse a rational literal "p/q" (q odd) into F.
    pub fn parse(&self, s: &str) -> Result<FieldElement> {
        Ok(FieldElement::from_rational(self, parse_rational(s)?))
    }

    /// Parse a π-power coefficient list.
    pub fn parse_coeffs(&self, parts: &[&str]) -> Result<FieldElement> {
        if parts.len() > self.e() {
            return Err(Error::Parse {
                what: "coefficient list",
                detail: format!("{} coefficients for e = {}", parts.len(), self.e()),
            });
        }
        let c = parts
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(FieldElement::from_coeffs(self, c))
    }

    // ---- square classes ----

    pub fn class_count(&self) -> usize {
        1 << (self.e() + 2)
    }

    /// ε-bits of a unit residue: bit j ↔ factor (1+π^{2j+1}), bit e ↔ Δ.
    fn unit_bits(&self, ring: &Ring, u: &Res) -> u32 {
        let e = self.e() as u32;
        let one = ring.one();
        let mut u = *u;
        let mut bits = 0u32;
        loop {
            let w = match ring.ord(&ring.sub(&u, &one)) {
                None => break,
                Some(w) => w,
            };
            if w > 2 * e {
                break;
            }
            if w == 2 * e {
                bits |= 1 << e;
                break;
            }
            if w % 2 == 1 {
                bits |= 1 << ((w - 1) / 2);
                let f = ring.add(&one, &ring.pi_pow(w));
                u = ring.mul(&u, &ring.inv(&f));
            } else {
                let f = ring.add(&one, &ring.pi_pow(w / 2));
                u = ring.mul(&u, &ring.inv(&ring.square(&f)));
            }
        }
        bits
    }

    /// Index of the square class of a nonzero element: bit 0 is the parity
    /// of the order, the rest are the ε-bits of the unit part.
    pub fn class_index(&self, a: &FieldElement) -> Result<usize> {
        let v = a.ord().ok_or(Error::ZeroElement)?;
        let u = a.unit_res()?;
        let bits = self.unit_bits(self.ring(), &u);
        Ok((v.rem_euclid(2) as usize) | ((bits as usize) << 1))
    }

    /// Representative π^δ ∏(1+π^{2j+1})^{ε_j} Δ^{ε_Δ} of a class index.
    pub fn class_rep(&self, idx: usize) -> FieldElement {
        let e = self.e();
        let mut r = self.elem(1);
        let pi = self.pi();
        for j in 0..e {
            if idx >> (j + 1) & 1 == 1 {
                r = &r * &(&self.elem(1) + &pi.pow(2 * j as u32 + 1));
            }
        }
        if idx >> (e + 1) & 1 == 1 {
            r = &r * &self.delta();
        }
        if idx & 1 == 1 {
            r = &r * &pi;
        }
        r
    }

    /// Product of square classes.
    pub fn class_mul(&self, i: usize, j: usize) -> usize {
        let t = self.0.class_mul.get_or_init(|| {
            let n = self.class_count();
            let reps: Vec<FieldElement> = (0..n).map(|k| self.class_rep(k)).collect();
            (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| self.class_index(&(&reps[a] * &reps[b])).expect("nonzero") as u16)
                        .collect()
                })
                .collect()
        });
        t[i][j] as usize
    }

    /// d of a square class.
    pub fn class_defect(&self, idx: usize) -> i64 {
        let e = self.e();
        if idx & 1 == 1 {
            return 0;
        }
        let bits = idx >> 1;
        if let Some(j) = (0..e).find(|j| bits >> j & 1 == 1) {
            return 2 * j as i64 + 1;
        }
        if bits >> e & 1 == 1 {
            2 * e as i64
        } else {
            INF
        }
    }

    /// Relative quadratic defect order d(a) ∈ {0,1,3,…,2e−1,2e,∞}.
    pub fn defect(&self, a: &FieldElement) -> Result<i64> {
        Ok(self.class_defect(self.class_index(a)?))
    }

    /// d of a unit from its residue alone.
    pub fn defect_of_residue(&self, r: &UnitResidue) -> Result<i64> {
        let need = self.class_digits();
        if r.digits < need {
            return Err(Error::InsufficientPrecision {
                have: r.digits,
                need,
            });
        }
        let ring = self.ring_with(r.digits);
        let mut u = ring.zero();
        for (i, c) in r.coeffs.iter().enumerate() {
            u[i] = *c;
        }
        if !ring.is_unit(&u) {
            return Err(Error::ZeroElement);
        }
        // Only the residue modulo π^{2e+1} is consulted.
        let trunc = self.ring_with(need);
        let mut t = trunc.zero();
        t[..self.e()].copy_from_slice(&u[..self.e()]);
        let t = trunc.add(&t, &trunc.zero());
        let bits = self.unit_bits(&trunc, &t);
        Ok(self.class_defect((bits as usize) << 1))
    }

    pub fn same_square_class(&self, a: &FieldElement, b: &FieldElement) -> Result<bool> {
        Ok(self.class_index(a)? == self.class_index(b)?)
    }

    pub fn is_square(&self, a: &FieldElement) -> Result<bool> {
        Ok(self.class_index(a)? == 0)
    }

    /// Complete list of unit square class representatives
    /// (1 + Σ ε_i π^i)·Δ^ε, i odd below 2e.
    pub fn unit_square_classes(&self) -> Vec<FieldElement> {
        let e = self.e();
        let pi = self.pi();
        let mut out = Vec::with_capacity(1 << (e + 1));
        for mask in 0..(1usize << (e + 1)) {
            let mut u = self.elem(1);
            for j in 0..e {
                if mask >> j & 1 == 1 {
                    u = &u + &pi.pow(2 * j as u32 + 1);
                }
            }
            if mask >> e & 1 == 1 {
                u = &u * &self.delta();
            }
            out.push(u);
        }
        out
    }

    // ---- Hilbert symbol ----

    fn hilbert_table(&self) -> &Vec<Vec<i8>> {
        self.0.hilbert.get_or_init(|| {
            let n = self.class_count();
            let reps: Vec<FieldElement> = (0..n).map(|k| self.class_rep(k)).collect();
            let mut t = vec![vec![0i8; n]; n];
            for i in 0..n {
                for j in i..n {
                    let h = if self.e() == 1 {
                        hilbert_q2(
                            reps[i].as_rational().expect("rational"),
                            reps[j].as_rational().expect("rational"),
                        )
                    } else {
                        let minus_one = self.elem(-1);
                        let diag = [reps[i].clone(), reps[j].clone(), minus_one];
                        if crate::classify::isotropy_search(&diag) {
                            1
                        } else {
                            -1
                        }
                    };
                    t[i][j] = h;
                    t[j][i] = h;
                }
            }
            t
        })
    }

    /// Hilbert symbol on class indices.
    pub fn class_hilbert(&self, i: usize, j: usize) -> i8 {
        let h = self.hilbert_table()[i][j];
        match self.0.fault {
            Some((a, b)) if (a, b) == (i, j) || (a, b) == (j, i) => -h,
            _ => h,
        }
    }

    pub fn hilbert(&self, a: &FieldElement, b: &FieldElement) -> Result<i8> {
        Ok(self.class_hilbert(self.class_index(a)?, self.class_index(b)?))
    }

    /// b ∈ N(a), i.e. (a, b) = 1.
    pub fn in_norm_group(&self, b: &FieldElement, a: &FieldElement) -> Result<bool> {
        Ok(self.hilbert(a, b)? == 1)
    }

    /// a ∈ 𝒜: ord a ≥ −2e and ord a + d(−a) ≥ 0.
    pub fn in_a(&self, a: &FieldElement) -> Result<bool> {
        let r = a.ord().ok_or(Error::ZeroElement)?;
        let d = self.defect(&-a)?;
        Ok(r >= -2 * self.e() as i64 && r.saturating_add(d) >= 0)
    }

    /// Copy of this field whose Hilbert table has entry (i, j) flipped.
    /// Used as a negative control by the self-test.
    pub fn with_hilbert_fault(&self, i: usize, j: usize) -> Field {
        let table = self.hilbert_table().clone();
        let inner = Inner {
            e: self.0.e,
            poly: self.0.poly.clone(),
            guard: self.0.guard,
            pi_inv: self.0.pi_inv.clone(),
            ring: self.0.ring.clone(),
            class_mul: OnceLock::new(),
            hilbert: OnceLock::from(table),
            fault: Some((i, j)),
        };
        Field(Arc::new(inner))
    }
}

/// (a, b) over Q_2 from the classical closed form.
pub fn hilbert_q2(a: &BigRational, b: &BigRational) -> i8 {
    fn split(q: &BigRational) -> (i64, u32) {
        let v = element::v2(q);
        let n = q.numer() >> (v.max(0) as usize);
        let d = q.denom() >> ((-v).max(0) as usize);
        let r = |x: &BigInt| -> u32 {
            let m = x % BigInt::from(8);
            let m: i64 = m.try_into().expect("small");
            m.rem_euclid(8) as u32
        };
        let (n, d) = (r(&n), r(&d));
        // d is odd and d·d ≡ 1 mod 8, so n/d ≡ n·d.
        (v, (n * d) % 8)
    }
    let (alpha, u) = split(a);
    let (beta, v) = split(b);
    let eps = |x: u32| ((x - 1) / 2) % 2;
    let omega = |x: u32| ((x * x - 1) / 8) % 2;
    let s = eps(u) * eps(v) + (alpha.rem_euclid(2) as u32) * omega(v) + (beta.rem_euclid(2) as u32) * omega(u);
    if s % 2 == 0 {
        1
    } else {
        -1
    }
}
