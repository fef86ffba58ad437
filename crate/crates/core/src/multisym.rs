//! Explicit evaluation of the multisymmetric invariants and of the three
//! equation systems (cuboid, factor, E-form) on concrete values.
//!
//! Everything here is written out monomial by monomial. The tests check the
//! transcriptions against each other through the substitution identity
//! `eform_k(elementary_values(t)) = PHI_SCALE[k] · factor_k(t)`.

use serde::{Deserialize, Serialize};

use crate::param_map::EVector;
use crate::rational::{int, Rational};

/// Edges `x`, face diagonals `d` (`d[i]` is opposite to `x[i]`), space diagonal `l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CuboidCandidate {
    #[serde(with = "crate::rational::serde_str::vec")]
    pub x: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str::vec")]
    pub d: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str")]
    pub l: Rational,
}

impl CuboidCandidate {
    pub fn new(x: [Rational; 3], d: [Rational; 3], l: Rational) -> Self {
        Self {
            x: x.into(),
            d: d.into(),
            l,
        }
    }

    pub fn from_ints(x: [i64; 3], d: [i64; 3], l: i64) -> Self {
        Self::new(x.map(int), d.map(int), int(l))
    }

    /// Simultaneous relabelling `x_i -> x_σ(i)`, `d_i -> d_σ(i)`.
    pub fn permuted(&self, sigma: [usize; 3]) -> Self {
        Self {
            x: sigma.iter().map(|&i| self.x[i].clone()).collect(),
            d: sigma.iter().map(|&i| self.d[i].clone()).collect(),
            l: self.l.clone(),
        }
    }

    pub fn is_positive(&self) -> bool {
        let zero = int(0);
        self.x
            .iter()
            .chain(&self.d)
            .chain(std::iter::once(&self.l))
            .all(|v| *v > zero)
    }
}

/// Scale between each transformed factor equation and its factor equation
/// under substitution. The last three E-forms are three times the
/// corresponding factor polynomials.
pub const PHI_SCALE: [i64; 8] = [1, 1, 1, 1, 1, 3, 3, 3];

pub fn elementary_values(t: &CuboidCandidate) -> EVector {
    let (x1, x2, x3) = (&t.x[0], &t.x[1], &t.x[2]);
    let (d1, d2, d3) = (&t.d[0], &t.d[1], &t.d[2]);
    EVector {
        e10: x1 + x2 + x3,
        e20: x1 * x2 + x2 * x3 + x3 * x1,
        e30: x1 * x2 * x3,
        e01: d1 + d2 + d3,
        e02: d1 * d2 + d2 * d3 + d3 * d1,
        e03: d1 * d2 * d3,
        e21: x1 * x2 * d3 + x2 * x3 * d1 + x3 * x1 * d2,
        e11: x1 * d2 + d1 * x2 + x2 * d3 + d2 * x3 + x3 * d1 + d3 * x1,
        e12: x1 * d2 * d3 + x2 * d3 * d1 + x3 * d1 * d2,
    }
}

/// Face residuals `x_j² + x_k² − d_i²` for `i = 1, 2, 3`.
fn face_residuals(t: &CuboidCandidate) -> [Rational; 3] {
    let sq: Vec<Rational> = t.x.iter().map(|v| v * v).collect();
    [
        &sq[1] + &sq[2] - &t.d[0] * &t.d[0],
        &sq[2] + &sq[0] - &t.d[1] * &t.d[1],
        &sq[0] + &sq[1] - &t.d[2] * &t.d[2],
    ]
}

fn diagonal_residual(t: &CuboidCandidate) -> Rational {
    t.x.iter().map(|v| v * v).sum::<Rational>() - &t.l * &t.l
}

/// Space-diagonal residual followed by the three face residuals.
pub fn cuboid_residuals(t: &CuboidCandidate) -> [Rational; 4] {
    let [f1, f2, f3] = face_residuals(t);
    [diagonal_residual(t), f1, f2, f3]
}

/// The eight S₃-symmetrised factor equations.
pub fn factor_residuals(t: &CuboidCandidate) -> [Rational; 8] {
    let f = face_residuals(t);
    let weighted =
        |w: &dyn Fn(usize) -> Rational| -> Rational { (0..3).map(|i| w(i) * &f[i]).sum() };
    let (x, d) = (&t.x, &t.d);
    [
        diagonal_residual(t),
        weighted(&|_| int(1)),
        weighted(&|i| d[i].clone()),
        weighted(&|i| x[i].clone()),
        weighted(&|i| &x[i] * &d[i]),
        weighted(&|i| &x[i] * &x[i]),
        weighted(&|i| &d[i] * &d[i]),
        weighted(&|i| &x[i] * &x[i] * &d[i] * &d[i]),
    ]
}

/// The eight transformed factor equations followed by the reduced single
/// equation `(2e11)² + (e01² + L² − e10²)² − 8e01²L²`.
pub fn eform_residuals(e: &EVector, l: &Rational) -> [Rational; 9] {
    let EVector {
        e10,
        e20,
        e30,
        e01,
        e02,
        e03,
        e21,
        e11,
        e12,
    } = e;
    let k = |n: i64| int(n);
    let l2 = l * l;
    let e10_2 = e10 * e10;
    let e01_2 = e01 * e01;
    let e01_3 = &e01_2 * e01;
    let e01_4 = &e01_2 * &e01_2;
    let e20_2 = e20 * e20;
    let e02_2 = e02 * e02;
    let e11_2 = e11 * e11;

    let r16 = &e10_2 - k(2) * e20 - &l2;
    let r17 = k(2) * e02 - k(4) * e20 - &e01_2 + k(2) * &e10_2;
    let r18 = e10 * e11 - k(3) * e03 - e21 + k(3) * e01 * e02 - e20 * e01 - &e01_3;
    let r19 = e01 * e11 - e12 - k(3) * e30 + e10 * e02 + e20 * e10 - &e01_2 * e10;
    let r20 = -(e10 * e21) - e01 * e12 - e01 * e30 - &e01_3 * e10 + &e01_2 * e11 - e02 * e11
        + e11 * e20
        - e10 * e03
        + k(2) * e10 * e01 * e02;
    let r21 =
        k(4) * e01 * e10 * e11 - k(3) * &e01_2 * &e10_2 + k(2) * &e10_2 * e02 + k(2) * e20 * &e01_2
            - k(2) * e10 * e12
            - k(2) * e02 * e20
            - k(2) * e01 * e21
            - &e11_2
            - k(12) * e10 * e30
            + k(6) * &e20_2;
    let r22 = k(4) * e01 * e10 * e11 - k(4) * &e10_2 * e02 - k(4) * e20 * &e01_2 - k(2) * e10 * e12
        + k(10) * e02 * e20
        - k(2) * e01 * e21
        - &e11_2
        - k(12) * e01 * e03
        - k(3) * &e01_4
        - k(6) * &e02_2
        + k(12) * &e01_2 * e02;
    let r23 = k(9) * e01 * e03 * e20 - k(7) * &e01_2 * e02 * e20 + k(2) * e02 * e10 * e12
        - k(2) * &e01_2 * e10 * e12
        + k(3) * e03 * e10 * e11
        + k(4) * &e01_3 * e10 * e11
        - k(7) * e01 * e02 * e10 * e11
        - k(6) * e01 * e03 * &e10_2
        + k(8) * &e01_2 * e02 * &e10_2
        + k(3) * e01 * e11 * e30
        - k(2) * e01 * e20 * e21
        + e10 * e12 * e20
        - e02 * &e10_2 * e20
        + e01 * e10 * e11 * e20
        + k(9) * e02 * e10 * e30
        - k(2) * e02 * &e20_2
        + k(2) * &e01_2 * &e20_2
        - &e11_2 * e20
        - k(3) * e12 * e30
        + e02 * &e11_2
        - &e01_2 * &e11_2
        - k(2) * &e02_2 * &e10_2
        + k(2) * &e01_4 * e20
        + k(2) * &e02_2 * e20
        - k(3) * e03 * e21
        - k(2) * &e01_3 * e21
        + k(5) * e01 * e02 * e21
        - k(6) * &e01_2 * e10 * e30
        - k(3) * &e01_4 * &e10_2;
    let inner = &e01_2 + &l2 - &e10_2;
    let r25 = k(4) * &e11_2 + &inner * &inner - k(8) * &e01_2 * &l2;
    [r16, r17, r18, r19, r20, r21, r22, r23, r25]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euler_brick() -> CuboidCandidate {
        CuboidCandidate::from_ints([44, 117, 240], [267, 244, 125], 271)
    }

    #[test]
    fn small_tuple_invariants() {
        let e = elementary_values(&CuboidCandidate::from_ints([1, 2, 3], [4, 5, 6], 1));
        let got: Vec<i64> = e
            .components()
            .iter()
            .map(|v| v.to_integer().try_into().unwrap())
            .collect();
        assert_eq!(got, vec![6, 11, 6, 15, 74, 120, 51, 58, 138]);
    }

    #[test]
    fn zero_tuple() {
        let t = CuboidCandidate::from_ints([0; 3], [0; 3], 0);
        assert_eq!(elementary_values(&t), EVector::zero());
        assert!(cuboid_residuals(&t).iter().all(|r| *r == int(0)));
        assert!(eform_residuals(&EVector::zero(), &int(0))
            .iter()
            .all(|r| *r == int(0)));
    }

    #[test]
    fn flat_degenerate_cuboid() {
        let t = CuboidCandidate::from_ints([1, 0, 0], [0, 1, 1], 1);
        assert!(cuboid_residuals(&t).iter().all(|r| *r == int(0)));
        assert!(factor_residuals(&t).iter().all(|r| *r == int(0)));
    }

    #[test]
    fn euler_brick_misses_the_space_diagonal() {
        let r = cuboid_residuals(&euler_brick());
        assert_eq!(r[0], int(73225 - 73441));
        assert_eq!(r[0], int(-216));
        assert!(r[1..].iter().all(|v| *v == int(0)));
        let f = factor_residuals(&euler_brick());
        assert_eq!(f[0], int(-216));
        assert!(f[1..].iter().all(|v| *v == int(0)));
    }

    #[test]
    fn unit_tuple_first_factor() {
        let f = factor_residuals(&CuboidCandidate::from_ints([1, 1, 1], [1, 1, 1], 1));
        assert_eq!(f[0], int(2));
    }

    #[test]
    fn substitution_identity_on_a_fixed_tuple() {
        let t = CuboidCandidate::from_ints([2, -3, 5], [7, 1, -4], 6);
        let eform = eform_residuals(&elementary_values(&t), &t.l);
        let factor = factor_residuals(&t);
        for k in 0..8 {
            assert_eq!(eform[k], int(PHI_SCALE[k]) * &factor[k], "component {k}");
        }
    }

    #[test]
    fn invariants_ignore_relabelling() {
        let t = CuboidCandidate::from_ints([2, -3, 5], [7, 1, -4], 6);
        for sigma in [[1, 0, 2], [2, 1, 0], [1, 2, 0]] {
            let p = t.permuted(sigma);
            assert_eq!(elementary_values(&p), elementary_values(&t));
            assert_eq!(factor_residuals(&p), factor_residuals(&t));
        }
    }
}
