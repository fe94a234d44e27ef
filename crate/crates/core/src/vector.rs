//! Exact rational vectors in the ambient Euclidean space.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Neg, Sub};

pub type Rat = Ratio<i64>;

pub fn rat(n: i64, d: i64) -> Rat {
    Ratio::new(n, d)
}

pub fn rint(n: i64) -> Rat {
    Ratio::from_integer(n)
}

/// Largest integer not exceeding `x`.
pub fn floor(x: Rat) -> i64 {
    x.numer().div_floor(x.denom())
}

pub fn is_int(x: Rat) -> bool {
    x.is_integer()
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().ok()?;
        let b: i64 = b.trim().parse().ok()?;
        if b == 0 {
            return None;
        }
        Some(rat(a, b))
    } else {
        Some(rint(s.parse().ok()?))
    }
}

pub fn fmt_rat(x: Rat) -> String {
    if x.is_integer() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RVec(pub Vec<Rat>);

impl RVec {
    pub fn zero(n: usize) -> Self {
        RVec(vec![Rat::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[i] = Rat::one();
        v
    }

    pub fn from_ints(v: &[i64]) -> Self {
        RVec(v.iter().map(|&x| rint(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn dot(&self, o: &RVec) -> Rat {
        self.0
            .iter()
            .zip(&o.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, s: Rat) -> RVec {
        RVec(self.0.iter().map(|x| x * s).collect())
    }

    pub fn add_scaled(&self, o: &RVec, s: Rat) -> RVec {
        RVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b * s).collect())
    }

    pub fn is_negative_lex(&self) -> bool {
        for x in &self.0 {
            if !x.is_zero() {
                return x.is_negative();
            }
        }
        false
    }

    /// Least common multiple of the entry denominators.
    pub fn denom_lcm(&self) -> i64 {
        self.0.iter().fold(1, |acc, x| acc.lcm(x.denom()))
    }
}

impl fmt::Debug for RVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for RVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| fmt_rat(*x)).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Add for &RVec {
    type Output = RVec;
    fn add(self, o: &RVec) -> RVec {
        RVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RVec {
    type Output = RVec;
    fn sub(self, o: &RVec) -> RVec {
        RVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RVec {
    type Output = RVec;
    fn neg(self) -> RVec {
        RVec(self.0.iter().map(|a| -a).collect())
    }
}

/// Square rational matrix acting on column vectors, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RMat {
    pub n: usize,
    pub a: Vec<Rat>,
}

impl RMat {
    pub fn identity(n: usize) -> Self {
        let mut a = vec![Rat::zero(); n * n];
        for i in 0..n {
            a[i * n + i] = Rat::one();
        }
        RMat { n, a }
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        self.a[i * self.n + j]
    }

    pub fn apply(&self, v: &RVec) -> RVec {
        let n = self.n;
        RVec(
            (0..n)
                .map(|i| (0..n).fold(Rat::zero(), |acc, j| acc + self.a[i * n + j] * v.0[j]))
                .collect(),
        )
    }

    pub fn mul(&self, o: &RMat) -> RMat {
        let n = self.n;
        let mut a = vec![Rat::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] += x * o.a[k * n + j];
                }
            }
        }
        RMat { n, a }
    }

    pub fn transpose(&self) -> RMat {
        let n = self.n;
        let mut a = vec![Rat::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.a[i * n + j];
            }
        }
        RMat { n, a }
    }

    /// Orthogonal reflection in the hyperplane orthogonal to `r`
    /// (for any inner product proportional to the dot product).
    pub fn reflection(r: &RVec) -> RMat {
        let n = r.dim();
        let rr = r.dot(r);
        let mut a = vec![Rat::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let d = if i == j { Rat::one() } else { Rat::zero() };
                a[i * n + j] = d - rint(2) * r.0[i] * r.0[j] / rr;
            }
        }
        RMat { n, a }
    }

    pub fn is_identity(&self) -> bool {
        *self == RMat::identity(self.n)
    }
}

impl fmt::Debug for RMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let r: Vec<String> = (0..self.n).map(|j| fmt_rat(self.get(i, j))).collect();
                r.join(" ")
            })
            .collect();
        write!(f, "[{}]", rows.join("; "))
    }
}

/// Solve the square system `m x = b` over the rationals, `m` given by rows.
pub fn solve(m: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = m.len();
    let mut a: Vec<Vec<Rat>> = m
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let mut r = row.clone();
            r.push(bi);
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !a[i][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for j in col..=n {
            a[col][j] /= p;
        }
        for i in 0..n {
            if i != col && !a[i][col].is_zero() {
                let f = a[i][col];
                for j in col..=n {
                    let s = a[col][j];
                    a[i][j] -= f * s;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floor_of_negative_half() {
        assert_eq!(floor(rat(-1, 2)), -1);
        assert_eq!(floor(rat(7, 2)), 3);
        assert_eq!(floor(rint(-3)), -3);
    }

    #[test]
    fn reflection_squares_to_identity() {
        let r = RVec(vec![rint(1), rint(-1), rint(0)]);
        let s = RMat::reflection(&r);
        assert!(s.mul(&s).is_identity());
        assert_eq!(s.apply(&r), -&r);
    }

    #[test]
    fn solve_small_system() {
        let m = vec![vec![rint(2), rint(1)], vec![rint(1), rint(3)]];
        let x = solve(&m, &[rint(3), rint(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
    }
}
