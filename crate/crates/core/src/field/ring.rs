//! Truncated arithmetic in O/π^N, with O = Z_2[π] stored in the basis
//! 1, π, …, π^{e−1} and every coefficient reduced modulo 2^M.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use super::MAX_E;

pub type Res = [u128; MAX_E];

#[derive(Clone, Debug)]
pub struct Ring {
    e: usize,
    bits: u32,
    mask: u128,
    /// π^e = Σ red[i] π^i
    red: Res,
}

fn mod_pow2(x: &BigInt, bits: u32) -> u128 {
    let m = BigInt::one() << bits;
    x.mod_floor(&m).to_u128().expect("reduced below 2^bits")
}

/// Inverse of an odd number modulo 2^128.
fn inv_odd(a: u128) -> u128 {
    debug_assert!(a & 1 == 1);
    let mut y: u128 = 1;
    for _ in 0..8 {
        y = y.wrapping_mul(2u128.wrapping_sub(a.wrapping_mul(y)));
    }
    y
}

impl Ring {
    /// Ring with at least `digits` π-adic digits of precision.
    pub fn new(e: usize, poly: &[BigInt], digits: u32) -> Ring {
        assert!((1..=MAX_E).contains(&e) && poly.len() == e);
        let bits = digits.div_ceil(e as u32) + 1;
        assert!(bits <= 127, "precision {digits} too large for the residue ring");
        let mask = (1u128 << bits) - 1;
        let mut red = [0u128; MAX_E];
        for i in 0..e {
            red[i] = mod_pow2(&-&poly[i], bits);
        }
        Ring { e, bits, mask, red }
    }

    pub fn e(&self) -> usize {
        self.e
    }

    /// Number of π-adic digits that are exact.
    pub fn digits(&self) -> u32 {
        self.e as u32 * self.bits
    }

    pub fn zero(&self) -> Res {
        [0; MAX_E]
    }

    pub fn one(&self) -> Res {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Res {
        let mut r = [0; MAX_E];
        r[0] = (v as i128 as u128) & self.mask;
        r
    }

    /// Reduce a 2-integral rational coefficient vector.
    pub fn from_rationals(&self, c: &[BigRational]) -> Res {
        let mut r = [0; MAX_E];
        for (i, q) in c.iter().enumerate() {
            let num = mod_pow2(q.numer(), self.bits);
            let den = mod_pow2(q.denom(), self.bits);
            assert!(den & 1 == 1, "coefficient is not 2-integral");
            r[i] = num.wrapping_mul(inv_odd(den)) & self.mask;
        }
        r
    }

    pub fn coeffs(&self, x: &Res) -> Vec<u128> {
        x[..self.e].to_vec()
    }

    pub fn add(&self, a: &Res, b: &Res) -> Res {
        let mut r = [0; MAX_E];
        for i in 0..self.e {
            r[i] = a[i].wrapping_add(b[i]) & self.mask;
        }
        r
    }

    pub fn sub(&self, a: &Res, b: &Res) -> Res {
        let mut r = [0; MAX_E];
        for i in 0..self.e {
            r[i] = a[i].wrapping_sub(b[i]) & self.mask;
        }
        r
    }

    pub fn neg(&self, a: &Res) -> Res {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &Res, b: &Res) -> Res {
        let e = self.e;
        let mut t = [0u128; 2 * MAX_E];
        for i in 0..e {
            if a[i] == 0 {
                continue;
            }
            for j in 0..e {
                t[i + j] = t[i + j].wrapping_add(a[i].wrapping_mul(b[j]));
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c = t[k];
            if c == 0 {
                continue;
            }
            t[k] = 0;
            for i in 0..e {
                t[k - e + i] = t[k - e + i].wrapping_add(c.wrapping_mul(self.red[i]));
            }
        }
        let mut r = [0; MAX_E];
        for i in 0..e {
            r[i] = t[i] & self.mask;
        }
        r
    }

    pub fn square(&self, a: &Res) -> Res {
        self.mul(a, a)
    }

    /// Multiply by π^k, k ≥ 0.
    pub fn shift(&self, a: &Res, k: u32) -> Res {
        let e = self.e;
        let mut r = *a;
        for _ in 0..k {
            let top = r[e - 1];
            for i in (1..e).rev() {
                r[i] = r[i - 1];
            }
            r[0] = 0;
            for i in 0..e {
                r[i] = r[i].wrapping_add(top.wrapping_mul(self.red[i])) & self.mask;
            }
        }
        r
    }

    pub fn pi_pow(&self, k: u32) -> Res {
        self.shift(&self.one(), k)
    }

    /// π-adic order, `None` when the residue vanishes at this precision.
    pub fn ord(&self, a: &Res) -> Option<u32> {
        let e = self.e as u32;
        (0..self.e)
            .filter(|&i| a[i] != 0)
            .map(|i| e * a[i].trailing_zeros() + i as u32)
            .min()
    }

    pub fn is_unit(&self, a: &Res) -> bool {
        a[0] & 1 == 1
    }

    /// Inverse of a unit by Newton iteration.
    pub fn inv(&self, a: &Res) -> Res {
        assert!(self.is_unit(a), "inverting a non-unit residue");
        let two = self.from_i64(2);
        let mut y = self.one();
        loop {
            let next = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            if next == y {
                return y;
            }
            y = next;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(e: usize, poly: &[i64], digits: u32) -> Ring {
        let p: Vec<BigInt> = poly.iter().map(|&c| BigInt::from(c)).collect();
        Ring::new(e, &p, digits)
    }

    #[test]
    fn pi_power_e_has_order_e() {
        let r = ring(2, &[2, 0], 20);
        assert_eq!(r.ord(&r.pi_pow(2)), Some(2));
        assert_eq!(r.ord(&r.from_i64(2)), Some(2));
        assert_eq!(r.ord(&r.from_i64(12)), Some(4));
        assert_eq!(r.ord(&r.pi_pow(5)), Some(5));
    }

    #[test]
    fn inverse_round_trips() {
        let r = ring(3, &[6, 2, -4], 30);
        let mut x = r.one();
        x[1] = 5;
        x[2] = 3;
        let y = r.inv(&x);
        assert_eq!(r.mul(&x, &y), r.one());
    }

    #[test]
    fn rational_reduction() {
        let r = ring(1, &[-2], 15);
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let x = r.from_rationals(&[third]);
        assert_eq!(r.mul(&x, &r.from_i64(3)), r.one());
        assert_eq!(x[0] % 8, 3);
    }
}
