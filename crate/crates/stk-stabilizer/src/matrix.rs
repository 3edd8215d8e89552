use std::fmt;

use stk_graph::{Graph, VertexSet};
use stk_whitehead::EndoMap;
use stk_word::Letter;

use crate::StabError;

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.concat() }
    }

    /// E_{ij}: identity plus 1 at (i, j).
    pub fn elementary(n: usize, i: usize, j: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        m.set(i, j, 1);
        m
    }

    /// O_i: identity with -1 at (i, i).
    pub fn sign(n: usize, i: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(n);
        m.set(i, i, -1);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    out.data[i * o.cols + j] += a * o.get(k, j);
                }
            }
        }
        out
    }

    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> IntMatrix {
        let mut out = IntMatrix::zeros(r1 - r0, c1 - c0);
        for i in r0..r1 {
            for j in c0..c1 {
                out.set(i - r0, j - c0, self.get(i, j));
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == i64::from(i == j)))
    }

    /// Determinant by fraction-free elimination.
    pub fn det(&self) -> i64 {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a: Vec<i128> = self.data.iter().map(|&x| i128::from(x)).collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n {
            if a[k * n + k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| a[r * n + k] != 0) else {
                    return 0;
                };
                for j in 0..n {
                    a.swap(k * n + j, p * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i * n + j] = (a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j]) / prev;
                }
            }
            prev = a[k * n + k];
        }
        (sign * if n == 0 { 1 } else { a[n * n - 1] }) as i64
    }

    /// Row operations reducing a unimodular matrix to the identity.
    /// `self` equals the product of the returned factors, left to right.
    pub fn gl_factors(&self) -> Result<Vec<GlFactor>, StabError> {
        let n = self.rows;
        if self.cols != n || self.det().abs() != 1 {
            return Err(StabError::NotUnimodular);
        }
        let mut a = self.clone();
        let mut ops: Vec<GlFactor> = Vec::new();
        let add = |a: &mut IntMatrix, ops: &mut Vec<GlFactor>, i: usize, j: usize, q: i64| {
            if q == 0 {
                return;
            }
            for c in 0..n {
                let v = a.get(i, c) + q * a.get(j, c);
                a.set(i, c, v);
            }
            ops.push(GlFactor::E(i, j, q));
        };
        for c in 0..n {
            if a.get(c, c) == 0 {
                let r = (c + 1..n).find(|&r| a.get(r, c) != 0).ok_or(StabError::NotUnimodular)?;
                add(&mut a, &mut ops, c, r, 1);
            }
            while let Some(r) = (c + 1..n).find(|&r| a.get(r, c) != 0) {
                let (p, v) = (a.get(c, c), a.get(r, c));
                if p == 0 {
                    add(&mut a, &mut ops, c, r, 1);
                } else if v.abs() >= p.abs() {
                    add(&mut a, &mut ops, r, c, -(v / p));
                } else {
                    add(&mut a, &mut ops, c, r, -(p / v));
                }
            }
        }
        for i in 0..n {
            if a.get(i, i) < 0 {
                for c in 0..n {
                    let v = -a.get(i, c);
                    a.set(i, c, v);
                }
                ops.push(GlFactor::O(i));
            }
        }
        for j in (0..n).rev() {
            for i in 0..j {
                let q = a.get(i, j);
                add(&mut a, &mut ops, i, j, -q);
            }
        }
        debug_assert!(a.is_identity());
        Ok(ops.into_iter().map(GlFactor::inverse).collect())
    }

    pub fn inverse_unimodular(&self) -> Result<IntMatrix, StabError> {
        let n = self.rows;
        Ok(self.gl_factors()?.iter().rev().fold(IntMatrix::identity(n), |acc, f| acc.mul(&f.inverse().matrix(n))))
    }
}

/// Elementary factor E_{ij}^q or the sign change O_i.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlFactor {
    E(usize, usize, i64),
    O(usize),
}

impl GlFactor {
    pub fn matrix(self, n: usize) -> IntMatrix {
        match self {
            GlFactor::E(i, j, q) => {
                let mut m = IntMatrix::identity(n);
                m.set(i, j, q);
                m
            }
            GlFactor::O(i) => IntMatrix::sign(n, i),
        }
    }

    pub fn inverse(self) -> GlFactor {
        match self {
            GlFactor::E(i, j, q) => GlFactor::E(i, j, -q),
            o => o,
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[i64]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// Coordinates of an abelian class: [x], then 𝔞_s, then 𝔞_out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixFrame {
    pub coords: Vec<usize>,
    /// s = |[x]|.
    pub s: usize,
}

impl MatrixFrame {
    pub fn new(g: &Graph, x: usize) -> Result<MatrixFrame, StabError> {
        let part = g.class_partition(x);
        if !part.abelian {
            return Err(StabError::FreeClass(g.name(x).to_string()));
        }
        let mut coords: Vec<usize> = part.class.iter().collect();
        coords.extend(part.a_s.iter());
        coords.extend(part.a_out.iter());
        Ok(MatrixFrame { coords, s: part.class.len() })
    }

    pub fn r(&self) -> usize {
        self.coords.len()
    }

    fn class(&self) -> VertexSet {
        self.coords[..self.s].iter().copied().collect()
    }
}

/// [φ] for φ ∈ St^v_x with x in an abelian class.
pub fn to_matrix(g: &Graph, x: usize, phi: &EndoMap) -> Result<IntMatrix, StabError> {
    let frame = MatrixFrame::new(g, x)?;
    let r = frame.r();
    let span: VertexSet = frame.coords.iter().copied().collect();
    let class = frame.class();
    let mut m = IntMatrix::identity(r);
    for v in 0..g.len() {
        let img = phi.image(v);
        if !class.contains(v) {
            if img.letters() != [Letter::pos(v)] {
                return Err(StabError::NotInClassStabilizer(g.name(v).to_string()));
            }
            continue;
        }
        if !img.support().is_subset(span) {
            return Err(StabError::NotInClassStabilizer(g.name(v).to_string()));
        }
        let i = frame.coords.iter().position(|&c| c == v).expect("class coordinate");
        for j in 0..r {
            m.set(i, j, 0);
        }
        for l in img.letters() {
            let j = frame.coords.iter().position(|&c| c == l.vertex()).expect("support checked");
            m.set(i, j, m.get(i, j) + if l.is_positive() { 1 } else { -1 });
        }
    }
    Ok(m)
}

/// The automorphism with matrix `m`; rejects matrices outside the block shape.
pub fn from_matrix(g: &Graph, x: usize, m: &IntMatrix) -> Result<EndoMap, StabError> {
    let frame = MatrixFrame::new(g, x)?;
    let (r, s) = (frame.r(), frame.s);
    if m.rows() != r || m.cols() != r {
        return Err(StabError::BadMatrix("wrong dimensions".into()));
    }
    for i in s..r {
        for j in 0..r {
            if m.get(i, j) != i64::from(i == j) {
                return Err(StabError::BadMatrix("rows below the class block must be the identity".into()));
            }
        }
    }
    if m.block(0, s, 0, s).det().abs() != 1 {
        return Err(StabError::BadMatrix("class block is not invertible over Z".into()));
    }
    let mut phi = EndoMap::identity(g);
    for i in 0..s {
        let mut w = Vec::new();
        for j in 0..r {
            let e = m.get(i, j);
            let l = Letter::new(frame.coords[j], e > 0);
            w.extend(std::iter::repeat(l).take(e.unsigned_abs() as usize));
        }
        phi.set_image(frame.coords[i], stk_word::normal_form(g, &w));
    }
    Ok(phi)
}

/// M = M_D · M_U with M_D = diag(A₁, I) and M_U = [[I, A₁⁻¹B], [0, I]].
pub fn matrix_split(m: &IntMatrix, s: usize) -> Result<(IntMatrix, IntMatrix), StabError> {
    let r = m.rows();
    let a1 = m.block(0, s, 0, s);
    let b = m.block(0, s, s, r);
    let u = a1.inverse_unimodular()?.mul(&b);
    let mut d = IntMatrix::identity(r);
    let mut up = IntMatrix::identity(r);
    for i in 0..s {
        for j in 0..s {
            d.set(i, j, a1.get(i, j));
        }
        for j in s..r {
            up.set(i, j, u.get(i, j - s));
        }
    }
    Ok((d, up))
}
