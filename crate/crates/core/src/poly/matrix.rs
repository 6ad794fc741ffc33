use num_traits::{One, Zero};

use super::multipoly::{MultiPoly, Vars};
use super::univariate::bareiss_det;
use super::Rational;
use crate::{Error, Result};

/// Dense rational matrix, row-major.
pub type RatMatrix = Vec<Vec<Rational>>;

/// Rectangular matrix of polynomials sharing one variable list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    vars: Vars,
    nrows: usize,
    ncols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_rows(vars: &Vars, rows: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            for p in row {
                entries.push(p.embed(vars)?);
            }
        }
        Ok(PolyMatrix { vars: vars.clone(), nrows, ncols, entries })
    }

    pub fn identity(vars: &Vars, n: usize) -> Self {
        let mut entries = vec![MultiPoly::zero(vars); n * n];
        for i in 0..n {
            entries[i * n + i] = MultiPoly::one(vars);
        }
        PolyMatrix { vars: vars.clone(), nrows: n, ncols: n, entries }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: MultiPoly) {
        self.entries[i * self.ncols + j] = p;
    }

    pub fn rows(&self) -> Vec<Vec<MultiPoly>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn eval(&self, point: &[Rational]) -> RatMatrix {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j).eval(point)).collect())
            .collect()
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        let entries: Vec<MultiPoly> = self.entries.iter().map(f).collect();
        let vars = entries.first().map_or_else(|| self.vars.clone(), |p| p.vars().clone());
        PolyMatrix { vars, nrows: self.nrows, ncols: self.ncols, entries }
    }

    pub fn det(&self) -> Result<MultiPoly> {
        if self.nrows != self.ncols {
            return Err(Error::Invalid("determinant of a non-square matrix".into()));
        }
        if self.nrows == 0 {
            return Ok(MultiPoly::one(&self.vars));
        }
        Ok(bareiss_det(self.rows()))
    }
}

/// `J[i][j] = ∂ components[i] / ∂ vars[j]`.
pub fn jacobian(components: &[MultiPoly], vars: &Vars) -> Result<PolyMatrix> {
    let comps: Vec<MultiPoly> = components.iter().map(|p| p.embed(vars)).collect::<Result<_>>()?;
    let rows = comps
        .iter()
        .map(|p| (0..vars.len()).map(|j| p.derivative(j)).collect())
        .collect();
    PolyMatrix::from_rows(vars, rows)
}

pub fn rat_det(m: &RatMatrix) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut det = Rational::one();
    for k in 0..n {
        let piv = match (k..n).find(|&i| !a[i][k].is_zero()) {
            Some(p) => p,
            None => return Rational::zero(),
        };
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det *= &a[k][k];
        for i in k + 1..n {
            let f = &a[i][k] / &a[k][k];
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let t = &f * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Rank by exact Gaussian elimination.
pub fn rat_rank(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let piv = match (rank..rows).find(|&i| !a[i][c].is_zero()) {
            Some(p) => p,
            None => continue,
        };
        a.swap(piv, rank);
        for i in 0..rows {
            if i != rank && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[rank][c];
                for j in c..cols {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, rat, vars};

    fn polys(texts: &[&str], v: &Vars) -> Vec<MultiPoly> {
        texts.iter().map(|t| parse_poly(t, v).unwrap()).collect()
    }

    #[test]
    fn jacobian_of_plane_field() {
        let v = vars(&["x", "z"]);
        let j = jacobian(&polys(&["2x^2 - x - z", "-2z + 3x z"], &v), &v).unwrap();
        let expected = vec![polys(&["4x - 1", "-1"], &v), polys(&["3z", "3x - 2"], &v)];
        assert_eq!(j.rows(), expected);
    }

    #[test]
    fn jacobian_of_linear_fields() {
        let v = vars(&["x", "y"]);
        let j = jacobian(&polys(&["x", "-y"], &v), &v).unwrap();
        assert_eq!(j.eval(&[rat(0, 1), rat(0, 1)]), vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(-1, 1)]]);
        let v = vars(&["x", "t"]);
        let j = jacobian(&polys(&["-3x", "-t"], &v), &v).unwrap();
        assert_eq!(j.eval(&[rat(0, 1), rat(0, 1)]), vec![vec![rat(-3, 1), rat(0, 1)], vec![rat(0, 1), rat(-1, 1)]]);
    }

    #[test]
    fn determinants_agree() {
        let v = vars(&["x", "z"]);
        let j = jacobian(&polys(&["2x^2 - x - z", "-2z + 3x z"], &v), &v).unwrap();
        let d = j.det().unwrap();
        let p = [rat(2, 3), rat(2, 9)];
        assert_eq!(d.eval(&p), rat_det(&j.eval(&p)));
        assert_eq!(d.eval(&p), rat(2, 3));
    }

    #[test]
    fn rank_detects_dependence() {
        let m = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
        ];
        assert_eq!(rat_rank(&m), 2);
    }
}
