//! Bases of norm generators (BONGs): verification, extraction of a good
//! BONG from a Gram matrix, and the binary invariants a(L), g(a).

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::lattice::{
    jordan_split, primitive_pivot, project_orthogonal, solve, GramLattice, Piece, Vector,
};

/// A lattice written as ≺a_1, …, a_n≻ relative to a good BONG.
#[derive(Clone, Debug, PartialEq)]
pub struct BongSymbol {
    pub field: Field,
    pub a: Vec<FieldElement>,
    /// BONG vectors in coordinates of the source lattice, when known.
    pub witness: Option<Vec<Vector>>,
}

impl BongSymbol {
    pub fn new(field: &Field, a: Vec<FieldElement>) -> BongSymbol {
        BongSymbol {
            field: field.clone(),
            a,
            witness: None,
        }
    }

    pub fn from_ints(field: &Field, a: &[i64]) -> BongSymbol {
        BongSymbol::new(field, a.iter().map(|&v| field.elem(v)).collect())
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    /// R_i = ord a_i.
    pub fn r(&self) -> Vec<i64> {
        self.a.iter().map(FieldElement::ord_inf).collect()
    }

    /// Checks R_i ≤ R_{i+2} and a_{i+1}/a_i ∈ 𝒜.
    pub fn check_good(&self) -> Result<()> {
        let r = self.r();
        for i in 0..self.n().saturating_sub(2) {
            if r[i] > r[i + 2] {
                return Err(Error::InternalVerificationFailure(format!(
                    "R_{} = {} > R_{} = {}",
                    i + 1,
                    r[i],
                    i + 3,
                    r[i + 2]
                )));
            }
        }
        for i in 0..self.n().saturating_sub(1) {
            let q = self.a[i + 1].div(&self.a[i])?;
            if !self.field.in_a(&q)? {
                return Err(Error::InternalVerificationFailure(format!(
                    "a_{}/a_{} is not in 𝒜",
                    i + 2,
                    i + 1
                )));
            }
        }
        Ok(())
    }

    /// ≺a_n^{−1}, …, a_1^{−1}≻, the symbol of the dual lattice.
    pub fn dual(&self) -> Result<BongSymbol> {
        let a = self
            .a
            .iter()
            .rev()
            .map(FieldElement::inv)
            .collect::<Result<Vec<_>>>()?;
        Ok(BongSymbol::new(&self.field, a))
    }

    /// ≺c a_1, …, c a_n≻, the symbol of the scaled lattice.
    pub fn scaled(&self, c: &FieldElement) -> BongSymbol {
        BongSymbol::new(&self.field, self.a.iter().map(|x| x * c).collect())
    }

    /// The diagonal lattice ⟨a_1, …, a_n⟩ of the underlying space.
    pub fn space_diagonal(&self) -> &[FieldElement] {
        &self.a
    }
}

/// Checks that `xs` (coordinates in L's basis) is a BONG of L: x_1 ∈ L is a
/// norm generator and x_2, … is a BONG of the projection of L onto x_1^⊥.
pub fn verify_bong(l: &GramLattice, xs: &[Vector]) -> Result<bool> {
    if xs.len() != l.rank() {
        return Ok(false);
    }
    if xs.is_empty() {
        return Ok(true);
    }
    let x1 = &xs[0];
    if primitive_pivot(x1).is_none() {
        return Ok(false);
    }
    let q1 = l.q(x1);
    if q1.is_zero() || q1.ord_inf() != l.norm_order() {
        return Ok(false);
    }
    if xs.len() == 1 {
        return Ok(true);
    }
    for x in &xs[1..] {
        if !l.b(x, x1).is_zero() {
            return Ok(false);
        }
    }
    let (proj, vecs) = project_orthogonal(l, x1)?;
    let field = l.field();
    let mut rest = Vec::with_capacity(xs.len() - 1);
    for x in &xs[1..] {
        let rhs: Vec<FieldElement> = vecs.iter().map(|p| l.b(p, x)).collect();
        let lambda = solve(field, proj.gram(), &rhs)?;
        // the coordinates must reproduce x exactly
        let mut back = vec![FieldElement::zero(field); l.rank()];
        for (c, p) in lambda.iter().zip(&vecs) {
            for (b, pi) in back.iter_mut().zip(p) {
                *b = &*b + &(c * pi);
            }
        }
        if &back != x {
            return Ok(false);
        }
        rest.push(lambda);
    }
    verify_bong(&proj, &rest)
}

fn add_scaled(x: &[FieldElement], c: &FieldElement, y: &[FieldElement]) -> Vector {
    x.iter().zip(y).map(|(a, b)| a + &(c * b)).collect()
}

/// A vector of the piece realising its norm: the first of x, y, x+y.
fn norm_witness(l: &GramLattice, p: &Piece) -> (Vector, Option<Vector>) {
    let x = &p.basis[0];
    if p.dim() == 1 {
        return (x.clone(), None);
    }
    let y = &p.basis[1];
    if l.q(x).ord_inf() == p.norm {
        return (x.clone(), Some(y.clone()));
    }
    if l.q(y).ord_inf() == p.norm {
        return (y.clone(), Some(x.clone()));
    }
    let one = FieldElement::one(l.field());
    (add_scaled(x, &one, y), Some(y.clone()))
}

/// u for a piece of scale r: ord 𝔫L^{𝔭^r} read off the splitting.
fn u_at(pieces: &[Piece], r: i64) -> i64 {
    pieces
        .iter()
        .map(|d| d.norm + 2 * (r - d.scale).max(0))
        .min()
        .expect("nonempty")
}

/// Orthogonal projection of z onto the complement of the binary piece with
/// basis (x, y).
fn project_off(l: &GramLattice, z: &[FieldElement], x: &[FieldElement], y: &[FieldElement]) -> Result<Vector> {
    let (qx, bxy, qy) = (l.q(x), l.b(x, y), l.q(y));
    let det = &(&qx * &qy) - &(&bxy * &bxy);
    let dinv = det.inv()?;
    let (zx, zy) = (l.b(z, x), l.b(z, y));
    let cx = &(&(&qy * &zx) - &(&bxy * &zy)) * &dinv;
    let cy = &(&(&qx * &zy) - &(&bxy * &zx)) * &dinv;
    let t = add_scaled(z, &-cx, x);
    Ok(add_scaled(&t, &-cy, y))
}

/// Turn a Jordan splitting into a maximal norm splitting: every piece P of
/// scale r must satisfy 𝔫P = 𝔫L^{𝔭^r}. A binary piece failing this borrows a
/// norm witness of a donor piece D realising u; the donor is projected away
/// from the new piece, which keeps its scale and norm.
fn maximal_norm_splitting(l: &GramLattice) -> Result<Vec<Piece>> {
    let mut pieces = jordan_split(l)?.pieces;
    let pi = l.field().pi();
    let limit = 4 * l.rank() + 4;
    for _ in 0..limit {
        let bad = pieces
            .iter()
            .position(|p| p.dim() == 2 && p.norm > u_at(&pieces, p.scale));
        let Some(pi_idx) = bad else {
            return Ok(pieces);
        };
        let p = pieces[pi_idx].clone();
        let cost = |d: &Piece| d.norm + 2 * (p.scale - d.scale).max(0);
        let best = pieces.iter().map(cost).min().expect("nonempty");
        let di = pieces.iter().position(|d| cost(d) == best).expect("minimum");
        let d = pieces[di].clone();
        let (wd, _) = norm_witness(l, &d);
        let t = (p.scale - d.scale).max(0);
        let x = add_scaled(&p.basis[0], &pi.pow(t as u32), &wd);
        let y = p.basis[1].clone();
        let new_d_basis = d
            .basis
            .iter()
            .map(|z| project_off(l, z, &x, &y))
            .collect::<Result<Vec<_>>>()?;
        let new_d = Piece::new(l, new_d_basis);
        if (new_d.scale, new_d.norm) != (d.scale, d.norm) {
            return Err(Error::InternalVerificationFailure(
                "donor piece changed its invariants".into(),
            ));
        }
        let new_p = Piece::new(l, vec![x.clone(), y.clone()]);
        let mut replacement = Vec::new();
        if new_p.norm == new_p.scale {
            // proper: split into two unary pieces
            let c = -l.b(&x, &y).div(&l.q(&x))?;
            let y2 = add_scaled(&y, &c, &x);
            replacement.push(Piece::new(l, vec![x]));
            replacement.push(Piece::new(l, vec![y2]));
        } else {
            replacement.push(new_p);
        }
        pieces[di] = new_d;
        pieces.splice(pi_idx..pi_idx + 1, replacement);
    }
    Err(Error::InternalVerificationFailure(
        "norm correction did not terminate".into(),
    ))
}

/// A good BONG of L assembled from a maximal norm splitting. The result is
/// checked with [`verify_bong`] and the good-BONG inequalities.
pub fn good_bong(l: &GramLattice) -> Result<BongSymbol> {
    let field = l.field();
    let mut pieces = maximal_norm_splitting(l)?;
    pieces.sort_by_key(|p| p.scale);
    let mut xs: Vec<Vector> = Vec::with_capacity(l.rank());
    for p in &pieces {
        let (w, other) = norm_witness(l, p);
        if let Some(v) = other {
            let c = -l.b(&v, &w).div(&l.q(&w))?;
            let pv = add_scaled(&v, &c, &w);
            xs.push(w);
            xs.push(pv);
        } else {
            xs.push(w);
        }
    }
    let a: Vec<FieldElement> = xs.iter().map(|x| l.q(x)).collect();
    let sym = BongSymbol {
        field: field.clone(),
        a,
        witness: Some(xs.clone()),
    };
    if !verify_bong(l, &xs)? {
        return Err(Error::InternalVerificationFailure(
            "assembled vectors are not a BONG".into(),
        ));
    }
    sym.check_good()?;
    Ok(sym)
}

/// a(L) = a_2/a_1 and R(L) = ord a(L) for a binary symbol.
pub fn a_invariant(s: &BongSymbol) -> Result<(FieldElement, i64)> {
    if s.n() != 2 {
        return Err(Error::RankError {
            expected: 2,
            got: s.n(),
        });
    }
    let a = s.a[1].div(&s.a[0])?;
    let r = a.ord_inf();
    Ok((a, r))
}

pub fn a_invariant_of_lattice(l: &GramLattice) -> Result<(FieldElement, i64)> {
    if l.rank() != 2 {
        return Err(Error::RankError {
            expected: 2,
            got: l.rank(),
        });
    }
    a_invariant(&good_bong(l)?)
}

/// 2α(a) = min(R + 2e, 2(R + d(−a))), doubled to stay integral.
pub fn alpha_of_a2(field: &Field, a: &FieldElement) -> Result<i64> {
    let r = a.ord().ok_or(Error::ZeroElement)?;
    let d = field.defect(&-a)?;
    Ok((r + 2 * field.e() as i64).min(2 * r.saturating_add(d)))
}

/// η ∈ g(a): d(η) ≥ α(a) and η ∈ N(−a).
pub fn g_membership(eta: &FieldElement, a: &FieldElement) -> Result<bool> {
    let field = eta.field();
    if !eta.is_unit() {
        return Ok(false);
    }
    let need = alpha_of_a2(field, a)?;
    let d = field.defect(eta)?;
    Ok(2 * d >= need && field.hilbert(eta, &-a)? == 1)
}

/// g(a) on square class indices; `r` is ord a.
pub fn g_membership_class(field: &Field, eta: usize, a: usize, r: i64) -> bool {
    if eta & 1 == 1 {
        return false;
    }
    let minus_one = field.class_index(&field.elem(-1)).expect("nonzero");
    let neg_a = field.class_mul(a, minus_one);
    let need = (r + 2 * field.e() as i64).min(2 * r.saturating_add(field.class_defect(neg_a)));
    2 * field.class_defect(eta) >= need && field.class_hilbert(eta, neg_a) == 1
}

/// ≺a_1, a_2≻ ≅ ≺b_1, b_2≻ for binary symbols.
pub fn binary_isometric(s: &BongSymbol, t: &BongSymbol) -> Result<bool> {
    for x in [s, t] {
        if x.n() != 2 {
            return Err(Error::RankError {
                expected: 2,
                got: x.n(),
            });
        }
    }
    if s.r() != t.r() {
        return Ok(false);
    }
    let field = &s.field;
    let (a, _) = a_invariant(s)?;
    let (b, _) = a_invariant(t)?;
    if !field.same_square_class(&a, &b)? {
        return Ok(false);
    }
    let eta = t.a[0].div(&s.a[0])?;
    g_membership(&eta, &a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_unimodular_bong() {
        let f = Field::q2();
        let l = GramLattice::diagonal_ints(&f, &[1, 1, 1, 1]);
        let s = good_bong(&l).unwrap();
        assert_eq!(s.a, BongSymbol::from_ints(&f, &[1, 1, 1, 1]).a);
    }

    #[test]
    fn hyperbolic_plane_bong() {
        let f = Field::q2();
        let h = GramLattice::from_ints(&f, &[vec![0, 1], vec![1, 0]]).unwrap();
        let s = good_bong(&h).unwrap();
        assert_eq!(s.r(), vec![1, -1]);
        assert_eq!(s.a, vec![f.elem(2), f.rational(-1, 2)]);
        let (a, r) = a_invariant(&s).unwrap();
        assert_eq!(r, -2);
        assert!(f.same_square_class(&a, &f.rational(-1, 4)).unwrap());
    }

    #[test]
    fn a_2_2_type() {
        let f = Field::q2();
        let l = GramLattice::from_ints(&f, &[vec![2, 1], vec![1, 2]]).unwrap();
        let (a, _) = a_invariant_of_lattice(&l).unwrap();
        let expect = (-f.delta()).div(&f.elem(4)).unwrap();
        assert!(f.same_square_class(&a, &expect).unwrap());
    }

    #[test]
    fn verify_rejects_reordered() {
        let f = Field::q2();
        let l = GramLattice::diagonal_ints(&f, &[1, 2, 8]);
        let e: Vec<Vector> = (0..3).map(|i| l.unit_vector(i)).collect();
        assert!(verify_bong(&l, &e).unwrap());
        let swapped = vec![e[1].clone(), e[0].clone(), e[2].clone()];
        assert!(!verify_bong(&l, &swapped).unwrap());
    }

    #[test]
    fn g_of_one_over_q2() {
        let f = Field::q2();
        let one = f.elem(1);
        assert!(g_membership(&f.elem(1), &one).unwrap());
        assert!(g_membership(&f.elem(5), &one).unwrap());
        assert!(!g_membership(&f.elem(3), &one).unwrap());
        assert!(!g_membership(&f.elem(7), &one).unwrap());
    }

    #[test]
    fn binary_examples() {
        let f = Field::q2();
        let s = |a: i64, b: i64| BongSymbol::from_ints(&f, &[a, b]);
        assert!(binary_isometric(&s(1, 1), &s(5, 5)).unwrap());
        assert!(binary_isometric(&s(1, 5), &s(5, 1)).unwrap());
        assert!(!binary_isometric(&s(1, 1), &s(3, 3)).unwrap());
    }
}
