//! Random fields elements, lattices, basis changes and good-BONG symbols for
//! the property and agreement harnesses.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::bong::BongSymbol;
use crate::field::{Field, FieldElement};
use crate::lattice::{GramLattice, Vector};

/// A unit with small integer π-adic coefficients, occasionally divided by 3.
pub fn random_unit<R: Rng + ?Sized>(f: &Field, rng: &mut R) -> FieldElement {
    let e = f.e();
    let mut c = Vec::with_capacity(e);
    c.push(2 * rng.gen_range(-32i64..32) + 1);
    for _ in 1..e {
        c.push(rng.gen_range(-8i64..=8));
    }
    let den = if rng.gen_bool(0.15) { 3 } else { 1 };
    let c = c
        .into_iter()
        .map(|x| BigRational::new(x.into(), den.into()))
        .collect();
    FieldElement::from_coeffs(f, c)
}

/// π^v times a random unit.
pub fn random_element<R: Rng + ?Sized>(f: &Field, rng: &mut R, v: i64) -> FieldElement {
    random_unit(f, rng).mul_pi_pow(v)
}

/// A random unit from one of the square classes, times a random unit square.
pub fn random_class_unit<R: Rng + ?Sized>(f: &Field, rng: &mut R) -> FieldElement {
    let idx = 2 * rng.gen_range(0..f.class_count() / 2);
    let s = random_unit(f, rng);
    &f.class_rep(idx) * &s.square()
}

/// A nondegenerate symmetric Gram matrix of rank n with entry orders in
/// [vmin, vmax]; off-diagonal entries are zero with probability 1/3.
pub fn random_lattice<R: Rng + ?Sized>(f: &Field, rng: &mut R, n: usize, vmin: i64, vmax: i64) -> GramLattice {
    loop {
        let mut g = vec![vec![FieldElement::zero(f); n]; n];
        for i in 0..n {
            for j in i..n {
                if i != j && rng.gen_ratio(1, 3) {
                    continue;
                }
                let v = rng.gen_range(vmin..=vmax);
                let x = random_element(f, rng, v);
                g[i][j] = x.clone();
                g[j][i] = x;
            }
        }
        let l = GramLattice::new(f, g).expect("symmetric");
        if !l.is_degenerate() {
            return l;
        }
    }
}

/// Columns of a random matrix in GL_n(O): a permutation, unit scalings and
/// a few elementary operations with small integral multipliers.
pub fn random_unimodular<R: Rng + ?Sized>(f: &Field, rng: &mut R, n: usize) -> Vec<Vector> {
    let mut cols: Vec<Vector> = (0..n)
        .map(|i| {
            let mut v = vec![FieldElement::zero(f); n];
            v[i] = random_unit(f, rng);
            v
        })
        .collect();
    cols.shuffle(rng);
    if n > 1 {
        for _ in 0..2 * n {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            let v = rng.gen_range(0..3);
            let c = random_element(f, rng, v);
            let add: Vector = cols[j].iter().map(|x| x * &c).collect();
            for (a, b) in cols[i].iter_mut().zip(&add) {
                *a = &*a + b;
            }
        }
    }
    cols
}

/// Uᵀ G U for basis columns U.
pub fn transform(l: &GramLattice, u: &[Vector]) -> GramLattice {
    l.with_basis(u)
}

/// D G D for a diagonal matrix of random units.
pub fn unit_rescale<R: Rng + ?Sized>(l: &GramLattice, rng: &mut R) -> GramLattice {
    let f = l.field();
    let d: Vec<FieldElement> = (0..l.rank()).map(|_| random_unit(f, rng)).collect();
    let g = l
        .gram()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| &(&d[i] * x) * &d[j])
                .collect()
        })
        .collect();
    GramLattice::new(f, g).expect("symmetric")
}

/// G with one symmetric pair of entries shifted by π^v·unit.
pub fn perturb<R: Rng + ?Sized>(l: &GramLattice, rng: &mut R, vmin: i64, vmax: i64) -> GramLattice {
    let f = l.field();
    let n = l.rank();
    loop {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let mut g = l.gram().clone();
        let v = rng.gen_range(vmin..=vmax);
        let x = random_element(f, rng, v);
        g[i][j] = &g[i][j] + &x;
        if i != j {
            g[j][i] = &g[j][i] + &x;
        }
        let k = GramLattice::new(f, g).expect("symmetric");
        if !k.is_degenerate() {
            return k;
        }
    }
}

/// A pair for agreement testing: isometric copies, unit rescalings,
/// perturbations and independent lattices, all with a random basis change
/// on the second lattice.
pub fn random_pair<R: Rng + ?Sized>(f: &Field, rng: &mut R, n: usize, vmin: i64, vmax: i64) -> (GramLattice, GramLattice) {
    let l = random_lattice(f, rng, n, vmin, vmax);
    let k = match rng.gen_range(0..4) {
        0 => l.clone(),
        1 => unit_rescale(&l, rng),
        2 => perturb(&l, rng, vmin.max(0), vmax + 2),
        _ => random_lattice(f, rng, n, vmin, vmax),
    };
    let u = random_unimodular(f, rng, n);
    (l, transform(&k, &u))
}

/// A good-BONG symbol of length n built left to right: each new order keeps
/// R_{i−1} ≤ R_{i+1} and each ratio is drawn until it lies in 𝒜.
pub fn random_symbol<R: Rng + ?Sized>(f: &Field, rng: &mut R, n: usize) -> BongSymbol {
    let e2 = 2 * f.e() as i64;
    let mut a: Vec<FieldElement> = Vec::with_capacity(n);
    let mut r: Vec<i64> = Vec::with_capacity(n);
    let r0 = rng.gen_range(-3i64..=3);
    a.push(random_class_unit(f, rng).mul_pi_pow(r0));
    r.push(r0);
    while a.len() < n {
        let i = a.len();
        let mut lo = r[i - 1] - e2;
        if i >= 2 {
            lo = lo.max(r[i - 2]);
        }
        let hi = lo.max(r[i - 1]) + e2 + 2;
        let ri = rng.gen_range(lo..=hi);
        let cand = random_class_unit(f, rng).mul_pi_pow(ri);
        let ratio = cand.div(&a[i - 1]).expect("nonzero");
        if f.in_a(&ratio).expect("nonzero") {
            a.push(cand);
            r.push(ri);
        }
    }
    BongSymbol::new(f, a)
}

/// m random square class indices (any order parity).
pub fn random_classes<R: Rng + ?Sized>(f: &Field, rng: &mut R, m: usize) -> Vec<usize> {
    (0..m).map(|_| rng.gen_range(0..f.class_count())).collect()
}
