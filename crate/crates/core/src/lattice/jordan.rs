use std::ops::Range;

use super::{norm_generator, GramLattice, Matrix, Vector};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::{is_inf, INF};

/// A modular piece of rank 1 or 2 of a splitting.
#[derive(Clone, Debug)]
pub struct Piece {
    /// Basis vectors in coordinates of the ambient lattice.
    pub basis: Vec<Vector>,
    pub gram: Matrix,
    pub scale: i64,
    pub norm: i64,
}

impl Piece {
    pub fn new(l: &GramLattice, basis: Vec<Vector>) -> Piece {
        let gram = l.with_basis(&basis);
        let scale = gram.scale_order();
        let norm = gram.norm_order();
        Piece {
            basis,
            gram: gram.gram().clone(),
            scale,
            norm,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn lattice(&self, field: &Field) -> GramLattice {
        GramLattice::new(field, self.gram.clone()).expect("symmetric")
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    pub scale: i64,
    pub dim: usize,
    pub pieces: Range<usize>,
}

/// A Jordan splitting refined into pieces of rank ≤ 2, in order of
/// nondecreasing scale.
#[derive(Clone, Debug)]
pub struct JordanSplit {
    pub field: Field,
    pub pieces: Vec<Piece>,
    pub components: Vec<Component>,
}

impl JordanSplit {
    pub fn from_pieces(field: &Field, mut pieces: Vec<Piece>) -> JordanSplit {
        pieces.sort_by_key(|p| p.scale);
        let mut components: Vec<Component> = Vec::new();
        for (i, p) in pieces.iter().enumerate() {
            match components.last_mut() {
                Some(c) if c.scale == p.scale => {
                    c.dim += p.dim();
                    c.pieces.end = i + 1;
                }
                _ => components.push(Component {
                    scale: p.scale,
                    dim: p.dim(),
                    pieces: i..i + 1,
                }),
            }
        }
        JordanSplit {
            field: field.clone(),
            pieces,
            components,
        }
    }

    pub fn t(&self) -> usize {
        self.components.len()
    }

    pub fn scales(&self) -> Vec<i64> {
        self.components.iter().map(|c| c.scale).collect()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.dim).collect()
    }

    /// Concatenated basis, adapted to the splitting.
    pub fn basis(&self) -> Vec<Vector> {
        self.pieces.iter().flat_map(|p| p.basis.clone()).collect()
    }

    /// Block diagonal Gram matrix in the adapted basis.
    pub fn lattice(&self) -> GramLattice {
        block_diagonal(&self.field, self.pieces.iter().map(|p| &p.gram))
    }

    /// L_(k) = L_1 ⊥ … ⊥ L_k, 1-based.
    pub fn chain(&self, k: usize) -> GramLattice {
        let end = self.components[k - 1].pieces.end;
        block_diagonal(&self.field, self.pieces[..end].iter().map(|p| &p.gram))
    }

    /// Piece Grams of L^{𝔰_k}: pieces of components j < k scaled by
    /// π^{2(r_k − r_j)}.
    fn scaled_pieces(&self, k: usize) -> Vec<Matrix> {
        let rk = self.components[k - 1].scale;
        let mut out = Vec::with_capacity(self.pieces.len());
        for c in &self.components {
            for p in &self.pieces[c.pieces.clone()] {
                if c.scale < rk {
                    let s = 2 * (rk - c.scale);
                    out.push(
                        p.gram
                            .iter()
                            .map(|r| r.iter().map(|x| x.mul_pi_pow(s)).collect())
                            .collect(),
                    );
                } else {
                    out.push(p.gram.clone());
                }
            }
        }
        out
    }
}

fn block_diagonal<'a>(field: &Field, blocks: impl Iterator<Item = &'a Matrix>) -> GramLattice {
    let blocks: Vec<&Matrix> = blocks.collect();
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut gram = vec![vec![FieldElement::zero(field); n]; n];
    let mut o = 0;
    for b in blocks {
        for i in 0..b.len() {
            for j in 0..b.len() {
                gram[o + i][o + j] = b[i][j].clone();
            }
        }
        o += b.len();
    }
    GramLattice::new(field, gram).expect("symmetric")
}

struct Work {
    vecs: Vec<Vector>,
    g: Matrix,
    rem: Vec<usize>,
}

impl Work {
    /// v_j += c·v_p
    fn add_multiple(&mut self, j: usize, p: usize, c: &FieldElement) {
        if c.is_zero() {
            return;
        }
        let gpp = self.g[p][p].clone();
        let gpj = self.g[p][j].clone();
        for idx in 0..self.rem.len() {
            let k = self.rem[idx];
            if k == j {
                continue;
            }
            let v = &self.g[j][k] + &(c * &self.g[p][k]);
            self.g[k][j] = v.clone();
            self.g[j][k] = v;
        }
        let gjj = &(&self.g[j][j] + &(c * &gpj).scale_int(2)) + &(&(c * c) * &gpp);
        self.g[j][j] = gjj;
        let vp = self.vecs[p].clone();
        for (x, y) in self.vecs[j].iter_mut().zip(&vp) {
            if !y.is_zero() {
                *x = &*x + &(c * y);
            }
        }
    }
}

/// Split L into modular pieces of rank ≤ 2. The pivot is an entry of least
/// order, diagonal entries first, so binary pieces occur only when no
/// diagonal entry reaches the scale.
pub fn jordan_split(l: &GramLattice) -> Result<JordanSplit> {
    let field = l.field().clone();
    let n = l.rank();
    let mut w = Work {
        vecs: (0..n).map(|i| l.unit_vector(i)).collect(),
        g: l.gram().clone(),
        rem: (0..n).collect(),
    };
    let mut pieces = Vec::new();
    while !w.rem.is_empty() {
        let mut best = INF;
        for &i in &w.rem {
            for &j in &w.rem {
                best = best.min(w.g[i][j].ord_inf());
            }
        }
        if is_inf(best) {
            return Err(Error::Degenerate);
        }
        if let Some(p) = w.rem.iter().copied().find(|&i| w.g[i][i].ord_inf() == best) {
            let inv = w.g[p][p].inv()?;
            for idx in 0..w.rem.len() {
                let j = w.rem[idx];
                if j != p && !w.g[j][p].is_zero() {
                    let c = -(&w.g[j][p] * &inv);
                    w.add_multiple(j, p, &c);
                }
            }
            pieces.push(Piece {
                basis: vec![w.vecs[p].clone()],
                gram: vec![vec![w.g[p][p].clone()]],
                scale: best,
                norm: best,
            });
            w.rem.retain(|&k| k != p);
        } else {
            let (i, j) = w
                .rem
                .iter()
                .enumerate()
                .flat_map(|(a, &i)| w.rem[a + 1..].iter().map(move |&j| (i, j)))
                .find(|&(i, j)| w.g[i][j].ord_inf() == best)
                .expect("off-diagonal minimum");
            let (gii, gij, gjj) = (w.g[i][i].clone(), w.g[i][j].clone(), w.g[j][j].clone());
            let det = &(&gii * &gjj) - &(&gij * &gij);
            let dinv = det.inv()?;
            for idx in 0..w.rem.len() {
                let k = w.rem[idx];
                if k == i || k == j {
                    continue;
                }
                let (gik, gjk) = (w.g[i][k].clone(), w.g[j][k].clone());
                let ci = &(&(&gjj * &gik) - &(&gij * &gjk)) * &dinv;
                let cj = &(&(&gii * &gjk) - &(&gij * &gik)) * &dinv;
                w.add_multiple(k, i, &-ci);
                w.add_multiple(k, j, &-cj);
            }
            let gram = vec![vec![gii, gij.clone()], vec![gij, gjj]];
            let norm = GramLattice::new(&field, gram.clone())?.norm_order();
            pieces.push(Piece {
                basis: vec![w.vecs[i].clone(), w.vecs[j].clone()],
                gram,
                scale: best,
                norm,
            });
            w.rem.retain(|&k| k != i && k != j);
        }
    }
    Ok(JordanSplit::from_pieces(&field, pieces))
}

/// Gram of L^{𝔰_k} (k is 1-based): components j < k scaled by π^{2(r_k−r_j)}.
pub fn s_lattice(split: &JordanSplit, k: usize) -> Result<GramLattice> {
    if k == 0 || k > split.t() {
        return Err(Error::IndexOutOfRange {
            index: k,
            max: split.t(),
        });
    }
    Ok(block_diagonal(&split.field, split.scaled_pieces(k).iter()))
}

/// Vectors of a piece with nonzero norm that together span it.
fn spanning_norms(field: &Field, gram: &Matrix) -> Vec<FieldElement> {
    if gram.len() == 1 {
        return vec![gram[0][0].clone()];
    }
    let pi = field.pi();
    let one = field.elem(1);
    let q = |x: &FieldElement, y: &FieldElement| {
        let t = &(&(x * x) * &gram[0][0]) + &(&(y * y) * &gram[1][1]);
        &t + &(&(x * y) * &gram[0][1]).scale_int(2)
    };
    let zero = FieldElement::zero(field);
    [
        (&one, &zero),
        (&zero, &one),
        (&one, &one),
        (&one, &pi),
        (&pi, &one),
    ]
    .iter()
    .map(|(x, y)| q(x, y))
    .filter(|v| !v.is_zero())
    .collect()
}

/// ord 𝔴 of the orthogonal sum of the given pieces. The pieces are written
/// as a sum of unary sublattices O·v with Q(v) ≠ 0, so with 𝔞 a norm
/// generator of the whole lattice
/// ord 𝔴 = min(e + ord 𝔰, min_v ord Q(v) + d(𝔞 Q(v))).
fn weight_of_pieces(field: &Field, pieces: &[Matrix]) -> Result<i64> {
    let lat = block_diagonal(field, pieces.iter());
    let (a, _) = norm_generator(&lat)?;
    let mut w = field.e() as i64 + lat.scale_order();
    for p in pieces {
        for q in spanning_norms(field, p) {
            let d = field.defect(&(&a * &q))?;
            w = w.min(q.ord_inf().saturating_add(d));
        }
    }
    Ok(w)
}

/// ord 𝔴L.
pub fn weight_order(l: &GramLattice) -> Result<i64> {
    let split = jordan_split(l)?;
    let grams: Vec<Matrix> = split.pieces.iter().map(|p| p.gram.clone()).collect();
    weight_of_pieces(l.field(), &grams)
}

/// Jordan invariants together with the classical weights and f-orders.
#[derive(Clone, Debug)]
pub struct JordanData {
    pub split: JordanSplit,
    pub t: usize,
    /// r_k = ord 𝔰_k
    pub r: Vec<i64>,
    pub dims: Vec<usize>,
    /// n_k = dim L_(k)
    pub n: Vec<usize>,
    /// u_k = ord 𝔫L^{𝔰_k}
    pub u: Vec<i64>,
    /// norm generators 𝔞_k of L^{𝔰_k}
    pub a: Vec<FieldElement>,
    /// ord 𝔴_k = ord 𝔴L^{𝔰_k}
    pub w: Vec<i64>,
    /// ord 𝔣_k for k < t
    pub f: Vec<i64>,
}

pub fn omeara_invariants(l: &GramLattice) -> Result<JordanData> {
    let field = l.field();
    let e = field.e() as i64;
    let split = jordan_split(l)?;
    let t = split.t();
    let r = split.scales();
    let dims = split.dims();
    let n = dims
        .iter()
        .scan(0, |acc, d| {
            *acc += d;
            Some(*acc)
        })
        .collect();
    let mut u = Vec::with_capacity(t);
    let mut a = Vec::with_capacity(t);
    let mut w = Vec::with_capacity(t);
    for k in 1..=t {
        let pieces = split.scaled_pieces(k);
        let lat = block_diagonal(field, pieces.iter());
        let (ak, _) = norm_generator(&lat)?;
        u.push(ak.ord_inf());
        a.push(ak);
        w.push(weight_of_pieces(field, &pieces)?);
    }
    let mut f = Vec::with_capacity(t.saturating_sub(1));
    for k in 0..t.saturating_sub(1) {
        let s = u[k] + u[k + 1];
        let fk = if s % 2 != 0 {
            s - 2 * r[k]
        } else {
            let d = field.defect(&(&a[k] * &a[k + 1]))?;
            [
                s.saturating_add(d),
                u[k + 1] + w[k],
                u[k] + w[k + 1],
                e + s / 2 + r[k],
            ]
            .into_iter()
            .min()
            .expect("nonempty")
                - 2 * r[k]
        };
        f.push(fk);
    }
    Ok(JordanData {
        split,
        t,
        r,
        dims,
        n,
        u,
        a,
        w,
        f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unimodular_diagonal() {
        let f = Field::q2();
        let l = GramLattice::diagonal_ints(&f, &[1, 1, 1, 1]);
        let jd = omeara_invariants(&l).unwrap();
        assert_eq!((jd.t, jd.r.clone(), jd.dims.clone()), (1, vec![0], vec![4]));
        assert_eq!((jd.u.clone(), jd.w.clone()), (vec![0], vec![1]));
        assert!(jd.f.is_empty());
    }

    #[test]
    fn hyperbolic_plane_is_one_binary_block() {
        let f = Field::q2();
        let h = GramLattice::from_ints(&f, &[vec![0, 1], vec![1, 0]]).unwrap();
        let s = jordan_split(&h).unwrap();
        assert_eq!(s.t(), 1);
        assert_eq!(s.pieces.len(), 1);
        assert_eq!((s.pieces[0].scale, s.pieces[0].norm), (0, 1));
        assert_eq!(weight_order(&h).unwrap(), 1);
    }

    #[test]
    fn diag_1_4() {
        let f = Field::q2();
        let l = GramLattice::diagonal_ints(&f, &[1, 4]);
        let jd = omeara_invariants(&l).unwrap();
        assert_eq!((jd.r.clone(), jd.dims.clone()), (vec![0, 2], vec![1, 1]));
        assert_eq!(
            s_lattice(&jd.split, 2).unwrap(),
            GramLattice::diagonal_ints(&f, &[16, 4])
        );
        assert_eq!(jd.u, vec![0, 2]);
        assert_eq!(jd.f, vec![2]);
        assert!(s_lattice(&jd.split, 3).is_err());
    }

    #[test]
    fn odd_u_sum_f() {
        let f = Field::q2();
        // scales (1, 2), so ord 𝔣_1 = 1 + 2 − 2·1
        let jd = omeara_invariants(&GramLattice::diagonal_ints(&f, &[2, 4])).unwrap();
        assert_eq!(jd.u, vec![1, 2]);
        assert_eq!(jd.f, vec![1]);
        let jd = omeara_invariants(&GramLattice::diagonal_ints(&f, &[1, 8])).unwrap();
        assert_eq!(jd.u, vec![0, 3]);
        assert_eq!(jd.f, vec![3]);
    }

    #[test]
    fn unary_weight_and_scaling() {
        let f = Field::q2();
        assert_eq!(weight_order(&GramLattice::diagonal_ints(&f, &[1])).unwrap(), 1);
        let l = GramLattice::from_ints(&f, &[vec![2, 1, 0], vec![1, 6, 2], vec![0, 2, 12]]).unwrap();
        let w = weight_order(&l).unwrap();
        assert_eq!(weight_order(&l.scaled(&f.elem(4))).unwrap(), w + 2);
    }

    #[test]
    fn split_is_a_basis_change() {
        let f = Field::x2_plus_2();
        let l = GramLattice::from_ints(&f, &[vec![2, 1, 3], vec![1, 4, 2], vec![3, 2, 10]]).unwrap();
        let s = jordan_split(&l).unwrap();
        let moved = l.with_basis(&s.basis());
        assert_eq!(moved, s.lattice());
        let d = l.det();
        let ratio = moved.det().div(&d).unwrap();
        assert_eq!(ratio.ord(), Some(0));
    }
}
