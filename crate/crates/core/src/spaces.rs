//! Quadratic spaces over F up to isometry: (dim, det, Hasse) with the
//! convention S(V) = ∏_{i<j} (a_i, a_j).

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::lattice::GramLattice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceInvariants {
    pub field: Field,
    pub dim: usize,
    /// square class index of the determinant
    pub det: usize,
    pub hasse: i8,
}

impl SpaceInvariants {
    /// The zero space.
    pub fn zero(field: &Field) -> SpaceInvariants {
        SpaceInvariants {
            field: field.clone(),
            dim: 0,
            det: 0,
            hasse: 1,
        }
    }

    pub fn from_classes(field: &Field, classes: &[usize]) -> SpaceInvariants {
        let mut s = SpaceInvariants::zero(field);
        for &c in classes {
            s = s.add_line(c);
        }
        s
    }

    /// V ⊥ [c] for a class index c.
    pub fn add_line(&self, c: usize) -> SpaceInvariants {
        let f = &self.field;
        SpaceInvariants {
            field: f.clone(),
            dim: self.dim + 1,
            det: f.class_mul(self.det, c),
            hasse: self.hasse * f.class_hilbert(self.det, c),
        }
    }

    pub fn orthogonal_sum(&self, other: &SpaceInvariants) -> SpaceInvariants {
        let f = &self.field;
        SpaceInvariants {
            field: f.clone(),
            dim: self.dim + other.dim,
            det: f.class_mul(self.det, other.det),
            hasse: self.hasse * other.hasse * f.class_hilbert(self.det, other.det),
        }
    }

    /// The space scaled by the class c.
    pub fn scaled(&self, c: usize) -> SpaceInvariants {
        let f = &self.field;
        let m = self.dim;
        let mut det = self.det;
        if m % 2 == 1 {
            det = f.class_mul(det, c);
        }
        let mut hasse = self.hasse;
        if (m * m.saturating_sub(1) / 2) % 2 == 1 {
            hasse *= f.class_hilbert(c, minus_one(f));
        }
        if m.saturating_sub(1) % 2 == 1 {
            hasse *= f.class_hilbert(c, self.det);
        }
        SpaceInvariants {
            field: f.clone(),
            dim: m,
            det,
            hasse,
        }
    }

    pub fn negated(&self) -> SpaceInvariants {
        self.scaled(minus_one(&self.field))
    }

    /// The hyperbolic plane.
    pub fn hyperbolic(field: &Field) -> SpaceInvariants {
        SpaceInvariants::from_classes(field, &[0, minus_one(field)])
    }
}

fn minus_one(f: &Field) -> usize {
    f.class_index(&f.elem(-1)).expect("nonzero")
}

/// (m, ∏ a_i, ∏_{i<j} (a_i, a_j)) of the diagonal space [a_1, …, a_m].
pub fn space_invariants(field: &Field, diag: &[FieldElement]) -> Result<SpaceInvariants> {
    let classes = diag
        .iter()
        .map(|a| field.class_index(a))
        .collect::<Result<Vec<_>>>()?;
    Ok(SpaceInvariants::from_classes(field, &classes))
}

/// Diagonal entries of an orthogonal basis of FL.
pub fn diagonalize(l: &GramLattice) -> Result<Vec<FieldElement>> {
    let mut g = l.gram().clone();
    let mut out = Vec::with_capacity(g.len());
    while !g.is_empty() {
        let n = g.len();
        let p = match (0..n).find(|&i| !g[i][i].is_zero()) {
            Some(p) => p,
            None => {
                // no anisotropic basis vector: replace e_i by e_i + e_j
                let (i, j) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| !g[i][j].is_zero())
                    .ok_or(Error::Degenerate)?;
                for k in 0..n {
                    let v = &g[i][k] + &g[j][k];
                    g[i][k] = v;
                }
                for k in 0..n {
                    let v = &g[k][i] + &g[k][j];
                    g[k][i] = v;
                }
                i
            }
        };
        let piv = g[p][p].clone();
        let inv = piv.inv()?;
        let rest: Vec<usize> = (0..n).filter(|&k| k != p).collect();
        let next: Vec<Vec<FieldElement>> = rest
            .iter()
            .map(|&i| {
                let ci = &g[i][p] * &inv;
                rest.iter().map(|&j| &g[i][j] - &(&ci * &g[p][j])).collect()
            })
            .collect();
        out.push(piv);
        g = next;
    }
    Ok(out)
}

/// Invariants of FL.
pub fn lattice_space(l: &GramLattice) -> Result<SpaceInvariants> {
    space_invariants(l.field(), &diagonalize(l)?)
}

pub fn isometric_spaces(u: &SpaceInvariants, v: &SpaceInvariants) -> bool {
    u.dim == v.dim && u.det == v.det && u.hasse == v.hasse
}

/// Dimension of the anisotropic kernel.
pub fn anisotropic_dim(v: &SpaceInvariants) -> usize {
    let f = &v.field;
    let m1 = minus_one(f);
    // −det, the determinant of the complement of a hyperbolic plane
    let neg_det = f.class_mul(v.det, m1);
    match v.dim {
        0 => 0,
        1 => 1,
        2 => {
            if neg_det == 0 {
                0
            } else {
                2
            }
        }
        3 => {
            // isotropic iff V ≅ H ⊥ [−det], whose Hasse invariant is (−1, −det)
            if v.hasse == f.class_hilbert(m1, neg_det) {
                1
            } else {
                3
            }
        }
        4 => {
            if v.det == 0 {
                if v.hasse == f.class_hilbert(m1, m1) {
                    0
                } else {
                    4
                }
            } else {
                2
            }
        }
        m => {
            // V = H ⊥ W with det W = −det V and S(V) = S(W)·(−1, det W)
            let w = SpaceInvariants {
                field: f.clone(),
                dim: m - 2,
                det: neg_det,
                hasse: v.hasse * f.class_hilbert(m1, neg_det),
            };
            anisotropic_dim(&w)
        }
    }
}

pub fn witt_index(v: &SpaceInvariants) -> usize {
    (v.dim - anisotropic_dim(v)) / 2
}

/// U ↪ V: V ⊥ (−U) has Witt index at least dim U.
pub fn represents(u: &SpaceInvariants, v: &SpaceInvariants) -> bool {
    if u.dim == 0 {
        return true;
    }
    if u.dim > v.dim {
        return false;
    }
    witt_index(&v.orthogonal_sum(&u.negated())) >= u.dim
}

/// [b_1, …] ↪ [a_1, …] for diagonal lists.
pub fn represents_diag(field: &Field, b: &[FieldElement], a: &[FieldElement]) -> Result<bool> {
    Ok(represents(
        &space_invariants(field, b)?,
        &space_invariants(field, a)?,
    ))
}
