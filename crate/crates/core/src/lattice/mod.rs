//! Lattices given by Gram matrices, Jordan splittings and their classical
//! invariants.

mod jordan;

pub use jordan::{
    jordan_split, omeara_invariants, s_lattice, weight_order, JordanData, JordanSplit, Piece,
};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};

pub type Vector = Vec<FieldElement>;
pub type Matrix = Vec<Vec<FieldElement>>;

/// A lattice L = Σ O e_i with Gram matrix (B(e_i, e_j)).
#[derive(Clone, Debug, PartialEq)]
pub struct GramLattice {
    field: Field,
    gram: Matrix,
}

impl GramLattice {
    /// Checks shape and symmetry; nondegeneracy is checked by the operations
    /// that need it.
    pub fn new(field: &Field, gram: Matrix) -> Result<GramLattice> {
        let n = gram.len();
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::Parse {
                what: "gram matrix",
                detail: "matrix is not square".into(),
            });
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::NotSymmetric);
                }
            }
        }
        Ok(GramLattice {
            field: field.clone(),
            gram,
        })
    }

    pub fn from_ints(field: &Field, rows: &[Vec<i64>]) -> Result<GramLattice> {
        let gram = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.elem(v)).collect())
            .collect();
        GramLattice::new(field, gram)
    }

    pub fn diagonal(field: &Field, diag: &[FieldElement]) -> GramLattice {
        let n = diag.len();
        let mut gram = vec![vec![FieldElement::zero(field); n]; n];
        for (i, d) in diag.iter().enumerate() {
            gram[i][i] = d.clone();
        }
        GramLattice {
            field: field.clone(),
            gram,
        }
    }

    pub fn diagonal_ints(field: &Field, diag: &[i64]) -> GramLattice {
        let d: Vec<FieldElement> = diag.iter().map(|&v| field.elem(v)).collect();
        GramLattice::diagonal(field, &d)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &FieldElement {
        &self.gram[i][j]
    }

    pub fn b(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        let mut s = FieldElement::zero(&self.field);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let mut row = FieldElement::zero(&self.field);
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() && !self.gram[i][j].is_zero() {
                    row = &row + &(&self.gram[i][j] * yj);
                }
            }
            s = &s + &(xi * &row);
        }
        s
    }

    pub fn q(&self, x: &[FieldElement]) -> FieldElement {
        self.b(x, x)
    }

    /// Gram matrix of the vectors `basis` (coordinates in this lattice's
    /// basis).
    pub fn with_basis(&self, basis: &[Vector]) -> GramLattice {
        let n = basis.len();
        let mut gram = vec![vec![FieldElement::zero(&self.field); n]; n];
        for i in 0..n {
            for j in i..n {
                let v = self.b(&basis[i], &basis[j]);
                gram[j][i] = v.clone();
                gram[i][j] = v;
            }
        }
        GramLattice {
            field: self.field.clone(),
            gram,
        }
    }

    /// The lattice with form scaled by c.
    pub fn scaled(&self, c: &FieldElement) -> GramLattice {
        GramLattice {
            field: self.field.clone(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|x| x * c).collect())
                .collect(),
        }
    }

    /// Orthogonal sum.
    pub fn direct_sum(&self, other: &GramLattice) -> GramLattice {
        let n = self.rank() + other.rank();
        let mut gram = vec![vec![FieldElement::zero(&self.field); n]; n];
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        let o = self.rank();
        for i in 0..other.rank() {
            for j in 0..other.rank() {
                gram[o + i][o + j] = other.gram[i][j].clone();
            }
        }
        GramLattice {
            field: self.field.clone(),
            gram,
        }
    }

    /// Sublattice on the leading `k` basis vectors.
    pub fn leading(&self, k: usize) -> GramLattice {
        GramLattice {
            field: self.field.clone(),
            gram: self.gram[..k].iter().map(|r| r[..k].to_vec()).collect(),
        }
    }

    pub fn det(&self) -> FieldElement {
        det(&self.field, &self.gram)
    }

    pub fn is_degenerate(&self) -> bool {
        self.det().is_zero()
    }

    pub fn unit_vector(&self, i: usize) -> Vector {
        (0..self.rank())
            .map(|j| FieldElement::from_int(&self.field, (i == j) as i64))
            .collect()
    }

    /// ord 𝔫L = min(min ord G_ii, e + min_{i≠j} ord G_ij).
    pub fn norm_order(&self) -> i64 {
        let e = self.field.e() as i64;
        let n = self.rank();
        let mut m = crate::INF;
        for i in 0..n {
            m = m.min(self.gram[i][i].ord_inf());
            for j in 0..n {
                if i != j {
                    m = m.min(self.gram[i][j].ord_inf().saturating_add(e));
                }
            }
        }
        m
    }

    /// ord 𝔰L.
    pub fn scale_order(&self) -> i64 {
        self.gram
            .iter()
            .flatten()
            .map(FieldElement::ord_inf)
            .min()
            .unwrap_or(crate::INF)
    }
}

/// A norm generator: a value Q(x) with ord Q(x) = ord 𝔫L and its witness x,
/// searched among e_i first and then e_i + e_j in lexicographic order.
pub fn norm_generator(l: &GramLattice) -> Result<(FieldElement, Vector)> {
    let target = l.norm_order();
    if crate::is_inf(target) {
        return Err(Error::Degenerate);
    }
    let n = l.rank();
    for i in 0..n {
        if l.gram[i][i].ord_inf() == target {
            return Ok((l.gram[i][i].clone(), l.unit_vector(i)));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let v = &(&l.gram[i][i] + &l.gram[j][j]) + &l.gram[i][j].scale_int(2);
            if v.ord_inf() == target {
                let mut x = l.unit_vector(i);
                x[j] = FieldElement::one(&l.field);
                return Ok((v, x));
            }
        }
    }
    Err(Error::InternalVerificationFailure(
        "no norm generator among e_i and e_i+e_j".into(),
    ))
}

/// Index of a unit coordinate, if x is a primitive vector of L.
pub fn primitive_pivot(x: &[FieldElement]) -> Option<usize> {
    if x.iter().any(|c| !c.is_integral()) {
        return None;
    }
    x.iter().position(FieldElement::is_unit)
}

/// The projection of L onto x^⊥: completes x to a basis of L using a unit
/// coordinate j and projects the remaining e_i. Returns the Gram of the
/// projections and the projected vectors in FL coordinates.
pub fn project_orthogonal(l: &GramLattice, x: &[FieldElement]) -> Result<(GramLattice, Vec<Vector>)> {
    let qx = l.q(x);
    if qx.is_zero() {
        return Err(Error::ZeroNorm);
    }
    let j = primitive_pivot(x).ok_or(Error::NotPrimitive)?;
    let qinv = qx.inv()?;
    let n = l.rank();
    let mut vecs = Vec::with_capacity(n - 1);
    for i in (0..n).filter(|&i| i != j) {
        let ei = l.unit_vector(i);
        let c = &l.b(&ei, x) * &qinv;
        let p: Vector = ei.iter().zip(x).map(|(a, b)| a - &(&c * b)).collect();
        vecs.push(p);
    }
    let proj = l.with_basis(&vecs);
    Ok((proj, vecs))
}

pub fn det(field: &Field, m: &Matrix) -> FieldElement {
    let n = m.len();
    let mut a = m.clone();
    let mut d = FieldElement::one(field);
    for p in 0..n {
        let Some(piv) = (p..n).find(|&r| !a[r][p].is_zero()) else {
            return FieldElement::zero(field);
        };
        if piv != p {
            a.swap(p, piv);
            d = -d;
        }
        d = &d * &a[p][p];
        let inv = a[p][p].inv().expect("nonzero pivot");
        for r in p + 1..n {
            if a[r][p].is_zero() {
                continue;
            }
            let f = &a[r][p] * &inv;
            for c in p..n {
                let t = &f * &a[p][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    d
}

/// Solve m·y = rhs for square nonsingular m.
pub fn solve(field: &Field, m: &Matrix, rhs: &[FieldElement]) -> Result<Vector> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut row = row.clone();
            row.push(r.clone());
            row
        })
        .collect();
    for p in 0..n {
        let piv = (p..n).find(|&r| !a[r][p].is_zero()).ok_or(Error::Degenerate)?;
        a.swap(p, piv);
        let inv = a[p][p].inv()?;
        for c in p..=n {
            a[p][c] = &a[p][c] * &inv;
        }
        for r in 0..n {
            if r == p || a[r][p].is_zero() {
                continue;
            }
            let f = a[r][p].clone();
            for c in p..=n {
                let t = &f * &a[p][c];
                a[r][c] = &a[r][c] - &t;
            }
        }
    }
    let _ = field;
    Ok(a.into_iter().map(|row| row[n].clone()).collect())
}
