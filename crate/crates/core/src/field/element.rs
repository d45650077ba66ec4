use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::Res;
use super::Field;
use crate::error::{Error, Result};

/// An exact element of F = Q(π), stored by its rational coordinates in the
/// basis 1, π, …, π^{e−1}.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    c: Vec<BigRational>,
}

/// 2-adic valuation of a nonzero rational.
pub(crate) fn v2(q: &BigRational) -> i64 {
    let n = q.numer().trailing_zeros().expect("nonzero") as i64;
    let d = q.denom().trailing_zeros().unwrap_or(0) as i64;
    n - d
}

impl FieldElement {
    pub fn from_coeffs(field: &Field, mut c: Vec<BigRational>) -> FieldElement {
        let e = field.e();
        assert!(c.len() <= e, "too many coefficients for e = {e}");
        c.resize(e, BigRational::zero());
        FieldElement {
            field: field.clone(),
            c,
        }
    }

    pub fn from_rational(field: &Field, q: BigRational) -> FieldElement {
        FieldElement::from_coeffs(field, vec![q])
    }

    pub fn from_int(field: &Field, v: i64) -> FieldElement {
        FieldElement::from_rational(field, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn zero(field: &Field) -> FieldElement {
        FieldElement::from_coeffs(field, Vec::new())
    }

    pub fn one(field: &Field) -> FieldElement {
        FieldElement::from_int(field, 1)
    }

    /// The uniformizer π.
    pub fn pi(field: &Field) -> FieldElement {
        if field.e() == 1 {
            let c0 = BigRational::from_integer(-field.poly()[0].clone());
            return FieldElement::from_rational(field, c0);
        }
        let mut c = vec![BigRational::zero(); field.e()];
        c[1] = BigRational::one();
        FieldElement::from_coeffs(field, c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// π-adic order; `None` for zero.
    pub fn ord(&self) -> Option<i64> {
        let e = self.c.len() as i64;
        self.c
            .iter()
            .enumerate()
            .filter(|(_, q)| !q.is_zero())
            .map(|(i, q)| e * v2(q) + i as i64)
            .min()
    }

    /// Order with zero mapped to [`crate::INF`].
    pub fn ord_inf(&self) -> i64 {
        self.ord().unwrap_or(crate::INF)
    }

    pub fn is_integral(&self) -> bool {
        self.ord().is_none_or(|v| v >= 0)
    }

    pub fn is_unit(&self) -> bool {
        self.ord() == Some(0)
    }

    /// The value as a rational number, when it lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    fn times_pi(&self) -> FieldElement {
        let e = self.c.len();
        let poly = self.field.poly();
        let top = self.c[e - 1].clone();
        let mut r = vec![BigRational::zero(); e];
        r[1..e].clone_from_slice(&self.c[..e - 1]);
        if !top.is_zero() {
            for (ri, ci) in r.iter_mut().zip(poly) {
                *ri -= &top * BigRational::from_integer(ci.clone());
            }
        }
        FieldElement {
            field: self.field.clone(),
            c: r,
        }
    }

    fn over_pi(&self) -> FieldElement {
        let e = self.c.len();
        let mut r = vec![BigRational::zero(); e];
        r[..e - 1].clone_from_slice(&self.c[1..]);
        if !self.c[0].is_zero() {
            for (ri, qi) in r.iter_mut().zip(self.field.pi_inv()) {
                *ri += &self.c[0] * qi;
            }
        }
        FieldElement {
            field: self.field.clone(),
            c: r,
        }
    }

    /// self · π^k.
    pub fn mul_pi_pow(&self, k: i64) -> FieldElement {
        if self.field.e() == 1 {
            let p = FieldElement::pi(&self.field).c[0].clone();
            let f = if k >= 0 {
                num_traits::pow(p, k as usize)
            } else {
                num_traits::pow(p.recip(), (-k) as usize)
            };
            return FieldElement::from_rational(&self.field, &self.c[0] * f);
        }
        let mut r = self.clone();
        for _ in 0..k.unsigned_abs() {
            r = if k > 0 { r.times_pi() } else { r.over_pi() };
        }
        r
    }

    /// a·π^{−ord a}.
    pub fn unit_part(&self) -> Result<FieldElement> {
        let v = self.ord().ok_or(Error::ZeroElement)?;
        Ok(self.mul_pi_pow(-v))
    }

    pub(crate) fn unit_res(&self) -> Result<Res> {
        let u = self.unit_part()?;
        Ok(self.field.ring().from_rationals(&u.c))
    }

    /// The residue of the unit part modulo π^digits.
    pub fn unit_residue(&self, digits: u32) -> Result<UnitResidue> {
        let u = self.unit_part()?;
        let ring = self.field.ring_with(digits);
        Ok(UnitResidue {
            digits,
            coeffs: ring.coeffs(&ring.from_rationals(&u.c)),
        })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let e = self.c.len();
        if e == 1 {
            return Ok(FieldElement::from_rational(&self.field, self.c[0].recip()));
        }
        // Solve (multiplication by self) · y = 1 over Q.
        let mut m: Vec<Vec<BigRational>> = Vec::with_capacity(e);
        let mut col = self.clone();
        for _ in 0..e {
            m.push(col.c.clone());
            col = col.times_pi();
        }
        // m[j] is self·π^j; build the augmented system with columns j.
        let mut a: Vec<Vec<BigRational>> = (0..e)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..e).map(|j| m[j][i].clone()).collect();
                row.push(if i == 0 {
                    BigRational::one()
                } else {
                    BigRational::zero()
                });
                row
            })
            .collect();
        for p in 0..e {
            let piv = (p..e).find(|&r| !a[r][p].is_zero()).expect("nonsingular");
            a.swap(p, piv);
            let inv = a[p][p].recip();
            for x in a[p].iter_mut() {
                *x *= &inv;
            }
            for r in 0..e {
                if r != p && !a[r][p].is_zero() {
                    let f = a[r][p].clone();
                    for j in p..=e {
                        let t = &a[p][j] * &f;
                        a[r][j] -= t;
                    }
                }
            }
        }
        let y = a.into_iter().map(|row| row[e].clone()).collect();
        Ok(FieldElement::from_coeffs(&self.field, y))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        Ok(self * &other.inv()?)
    }

    pub fn square(&self) -> FieldElement {
        self * self
    }

    pub fn pow(&self, k: u32) -> FieldElement {
        let mut r = FieldElement::one(&self.field);
        for _ in 0..k {
            r = &r * self;
        }
        r
    }

    pub fn scale_int(&self, k: i64) -> FieldElement {
        let f = BigRational::from_integer(BigInt::from(k));
        FieldElement {
            field: self.field.clone(),
            c: self.c.iter().map(|q| q * &f).collect(),
        }
    }

    /// Literal form: a rational string for values in Q, otherwise the
    /// coefficient list.
    pub fn literal(&self) -> serde_json::Value {
        match self.as_rational() {
            Some(q) => serde_json::Value::String(q.to_string()),
            None => serde_json::Value::Array(
                self.c
                    .iter()
                    .map(|q| serde_json::Value::String(q.to_string()))
                    .collect(),
            ),
        }
    }
}

/// Unit part of an element reduced modulo π^digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitResidue {
    pub digits: u32,
    pub coeffs: Vec<u128>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.c == other.c
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.literal())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => {
                let parts: Vec<String> = self.c.iter().map(|q| q.to_string()).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}

fn check_same(a: &FieldElement, b: &FieldElement) {
    debug_assert!(a.field == b.field, "mixing elements of different fields");
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        check_same(self, rhs);
        FieldElement {
            field: self.field.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        check_same(self, rhs);
        FieldElement {
            field: self.field.clone(),
            c: self.c.iter().zip(&rhs.c).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        check_same(self, rhs);
        let e = self.c.len();
        if e == 1 {
            return FieldElement {
                field: self.field.clone(),
                c: vec![&self.c[0] * &rhs.c[0]],
            };
        }
        let mut t = vec![BigRational::zero(); 2 * e - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    t[i + j] += a * b;
                }
            }
        }
        let poly = self.field.poly();
        for k in (e..2 * e - 1).rev() {
            let top = std::mem::take(&mut t[k]);
            if top.is_zero() {
                continue;
            }
            for (i, ci) in poly.iter().enumerate() {
                if !ci.is_zero() {
                    t[k - e + i] -= &top * BigRational::from_integer(ci.clone());
                }
            }
        }
        t.truncate(e);
        FieldElement {
            field: self.field.clone(),
            c: t,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: FieldElement) -> FieldElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Parse "p/q" or "p" with q odd.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse {
        what: "rational literal",
        detail: s.to_string(),
    };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(err());
    }
    if (&d % 2u32).is_zero() {
        return Err(Error::EvenDenominator(s.to_string()));
    }
    Ok(BigRational::new(n, d))
}
