//! Classical groups over GF(q) acting on projective points (and lines).

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::perm::Perm;

pub(crate) type Vector = Vec<Fe>;
pub(crate) type Matrix = Vec<Vec<Fe>>;

/// Vectors of GF(q)^dim indexed densely; projective points use the
/// representative whose first nonzero coordinate is 1.
pub(crate) struct VectorSpace<'a> {
    pub field: &'a Field,
    pub points: Vec<Vector>,
    lookup: Vec<u32>,
}

impl<'a> VectorSpace<'a> {
    fn key(&self, v: &[Fe]) -> usize {
        let q = self.field.order() as usize;
        v.iter().rev().fold(0, |acc, x| acc * q + x.0 as usize)
    }

    fn all_vectors(field: &Field, dim: usize) -> Vec<Vector> {
        let q = field.order();
        let mut out = vec![Vec::new()];
        for _ in 0..dim {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..q).map(move |x| {
                        let mut w = v.clone();
                        w.push(Fe(x));
                        w
                    })
                })
                .collect();
        }
        out
    }

    fn with_points(field: &'a Field, dim: usize, points: Vec<Vector>) -> Self {
        let q = field.order() as usize;
        let mut s = VectorSpace {
            field,
            points: Vec::new(),
            lookup: vec![u32::MAX; q.pow(dim as u32)],
        };
        for (i, p) in points.iter().enumerate() {
            let k = s.key(p);
            s.lookup[k] = i as u32;
        }
        s.points = points;
        s
    }

    pub fn projective(field: &'a Field, dim: usize) -> Self {
        let pts = Self::all_vectors(field, dim)
            .into_iter()
            .filter(|v| {
                v.iter()
                    .find(|x| x.0 != 0)
                    .map(|x| x.0 == 1)
                    .unwrap_or(false)
            })
            .collect();
        Self::with_points(field, dim, pts)
    }

    pub fn nonzero(field: &'a Field, dim: usize) -> Self {
        let pts = Self::all_vectors(field, dim)
            .into_iter()
            .filter(|v| v.iter().any(|x| x.0 != 0))
            .collect();
        Self::with_points(field, dim, pts)
    }

    pub fn normalize(&self, v: &[Fe]) -> Vector {
        let lead = *v.iter().find(|x| x.0 != 0).expect("nonzero vector");
        let inv = self.field.inv(lead).expect("nonzero");
        v.iter().map(|&x| self.field.mul(x, inv)).collect()
    }

    pub fn index(&self, v: &[Fe]) -> u32 {
        let i = self.lookup[self.key(v)];
        debug_assert!(i != u32::MAX);
        i
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Permutation of the stored points induced by a semilinear map.
    pub fn projective_perm(&self, map: impl Fn(&[Fe]) -> Vector) -> Result<Perm> {
        Perm::from_images(
            self.points
                .iter()
                .map(|p| self.index(&self.normalize(&map(p))))
                .collect(),
        )
    }

    pub fn vector_perm(&self, map: impl Fn(&[Fe]) -> Vector) -> Result<Perm> {
        Perm::from_images(self.points.iter().map(|p| self.index(&map(p))).collect())
    }
}

pub(crate) fn row_times(field: &Field, v: &[Fe], m: &Matrix) -> Vector {
    (0..m[0].len())
        .map(|j| {
            v.iter().zip(m).fold(field.zero(), |acc, (&x, row)| {
                field.add(acc, field.mul(x, row[j]))
            })
        })
        .collect()
}

pub(crate) fn diag(field: &Field, d: &[Fe]) -> Matrix {
    let n = d.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { d[i] } else { field.zero() })
                .collect()
        })
        .collect()
}

fn elementary(field: &Field, n: usize, i: usize, j: usize, a: Fe) -> Matrix {
    let mut m = diag(field, &vec![field.one(); n]);
    m[i][j] = a;
    m
}

pub(crate) fn inverse_transpose(field: &Field, m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let mut a: Vec<Vec<Fe>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n)
            .find(|&r| a[r][c].0 != 0)
            .ok_or_else(|| Error::invalid("singular matrix"))?;
        a.swap(c, piv);
        let inv = field.inv(a[c][c])?;
        for x in a[c].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for r in 0..n {
            if r != c && a[r][c].0 != 0 {
                let f = a[r][c];
                for k in 0..2 * n {
                    let t = field.mul(f, a[c][k]);
                    a[r][k] = field.sub(a[r][k], t);
                }
            }
        }
    }
    Ok((0..n)
        .map(|i| (0..n).map(|j| a[j][n + i]).collect())
        .collect())
}

fn frobenius_vec(field: &Field, v: &[Fe]) -> Vector {
    v.iter().map(|&x| field.frobenius(x, 1)).collect()
}

/// Standard SL₂ generators: transvection, diag(a, a⁻¹), Weyl element.
fn sl2_matrices(field: &Field) -> Result<Vec<Matrix>> {
    let (z, o) = (field.zero(), field.one());
    let a = field.primitive_element();
    Ok(vec![
        vec![vec![o, o], vec![z, o]],
        vec![vec![a, z], vec![z, field.inv(a)?]],
        vec![vec![z, o], vec![field.neg(o), z]],
    ])
}

pub(crate) struct Linear {
    pub degree: usize,
    pub generators: Vec<Perm>,
    pub conjugators: Vec<Perm>,
}

/// PSL₂(q) on the projective line, optionally extended by diagonal and field automorphisms.
pub(crate) fn psl2(q: u32, add_diagonal: bool, add_field: bool) -> Result<Linear> {
    let field = Field::of_order(q)?;
    let line = VectorSpace::projective(&field, 2);
    let mut gens = sl2_matrices(&field)?
        .iter()
        .map(|m| line.projective_perm(|v| row_times(&field, v, m)))
        .collect::<Result<Vec<_>>>()?;
    let mut conj = Vec::new();
    if q % 2 == 1 {
        let d = diag(&field, &[field.primitive_element(), field.one()]);
        conj.push(line.projective_perm(|v| row_times(&field, v, &d))?);
    }
    if field.degree() > 1 {
        conj.push(line.projective_perm(|v| frobenius_vec(&field, v))?);
    }
    if add_diagonal && q % 2 == 1 {
        gens.push(conj[0].clone());
    }
    if add_field && field.degree() > 1 {
        gens.push(conj.last().unwrap().clone());
    }
    Ok(Linear {
        degree: line.len(),
        generators: gens,
        conjugators: conj,
    })
}

/// SL₂(q) on the nonzero vectors of GF(q)².
pub(crate) fn sl2(q: u32) -> Result<Linear> {
    let field = Field::of_order(q)?;
    let space = VectorSpace::nonzero(&field, 2);
    let gens = sl2_matrices(&field)?
        .iter()
        .map(|m| space.vector_perm(|v| row_times(&field, v, m)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Linear {
        degree: space.len(),
        generators: gens,
        conjugators: Vec::new(),
    })
}

/// PSL₃(q) on points ⊔ lines of PG(2, q); line i is the line with normal vector point i.
pub(crate) fn psl3(q: u32) -> Result<Linear> {
    let field = Field::of_order(q)?;
    let plane = VectorSpace::projective(&field, 3);
    let n = plane.len();
    let (z, o) = (field.zero(), field.one());
    let a = field.primitive_element();
    let mats = vec![
        elementary(&field, 3, 0, 1, o),
        vec![vec![z, o, z], vec![z, z, o], vec![o, z, z]],
        diag(&field, &[a, field.inv(a)?, o]),
    ];
    let both = |m: &Matrix| -> Result<Perm> {
        let pts = plane.projective_perm(|v| row_times(&field, v, m))?;
        let mt = inverse_transpose(&field, m)?;
        let lines = plane.projective_perm(|v| row_times(&field, v, &mt))?;
        let mut img: Vec<u32> = pts.images().to_vec();
        img.extend(lines.images().iter().map(|&x| x + n as u32));
        Perm::from_images(img)
    };
    let gens = mats.iter().map(&both).collect::<Result<Vec<_>>>()?;
    let mut conj = Vec::new();
    if (q - 1) % 3 == 0 {
        conj.push(both(&diag(&field, &[a, o, o]))?);
    }
    if field.degree() > 1 {
        let f = plane.projective_perm(|v| frobenius_vec(&field, v))?;
        let mut img: Vec<u32> = f.images().to_vec();
        img.extend(f.images().iter().map(|&x| x + n as u32));
        conj.push(Perm::from_images(img)?);
    }
    conj.push(Perm::from_fn(2 * n, |x| {
        if (x as usize) < n {
            x + n as u32
        } else {
            x - n as u32
        }
    })?);
    Ok(Linear {
        degree: 2 * n,
        generators: gens,
        conjugators: conj,
    })
}

/// PSp₄(q) on projective points, generated by symplectic transvections.
pub(crate) fn sp4(q: u32, expected_order: u128) -> Result<Linear> {
    let field = Field::of_order(q)?;
    let space = VectorSpace::projective(&field, 4);
    // ⟨u, v⟩ = u₀v₂ + u₁v₃ − u₂v₀ − u₃v₁
    let form = |u: &[Fe], v: &[Fe]| {
        let s = field.add(field.mul(u[0], v[2]), field.mul(u[1], v[3]));
        let t = field.add(field.mul(u[2], v[0]), field.mul(u[3], v[1]));
        field.sub(s, t)
    };
    let mut gens: Vec<Perm> = Vec::new();
    let mut order = 1u128;
    for v in &space.points {
        if order == expected_order {
            break;
        }
        let t = space.projective_perm(|x| {
            let c = form(x, v);
            x.iter()
                .zip(v)
                .map(|(&xi, &vi)| field.add(xi, field.mul(c, vi)))
                .collect()
        })?;
        let mut trial = gens.clone();
        trial.push(t);
        let o = crate::permgroup::StabChain::new(space.len(), &trial)?.order();
        if o > order {
            gens = trial;
            order = o;
        }
    }
    let mut conj = Vec::new();
    if q % 2 == 1 {
        let l = field.primitive_element();
        let d = diag(&field, &[field.one(), field.one(), l, l]);
        conj.push(space.projective_perm(|v| row_times(&field, v, &d))?);
    }
    Ok(Linear {
        degree: space.len(),
        generators: gens,
        conjugators: conj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_transpose_roundtrip() {
        let f = Field::of_order(7).unwrap();
        let m: Matrix = [[1, 2, 0], [0, 1, 3], [4, 0, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| f.from_int(x)).collect())
            .collect();
        let it = inverse_transpose(&f, &m).unwrap();
        // m · itᵀ = I
        for i in 0..3 {
            for j in 0..3 {
                let s = (0..3).fold(f.zero(), |acc, k| f.add(acc, f.mul(m[i][k], it[j][k])));
                assert_eq!(s, if i == j { f.one() } else { f.zero() });
            }
        }
    }

    #[test]
    fn point_counts() {
        let f = Field::of_order(4).unwrap();
        assert_eq!(VectorSpace::projective(&f, 2).len(), 5);
        assert_eq!(VectorSpace::projective(&f, 3).len(), 21);
        assert_eq!(VectorSpace::nonzero(&f, 2).len(), 15);
    }
}
