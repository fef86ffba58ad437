//! The two-parameter family: `(b, c)` to the nine multisymmetric values at
//! unit space diagonal.
//!
//! [`evaluate_param_map`] is the authoritative route. It computes the seed
//! triple `(e11, e01, e10)` from `(b, c)` and completes it with
//! [`complete_from_seed`]. [`evaluate_closed_forms`] expands every component
//! directly in `b` and `c` and exists only to cross-check the first route.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::CoreError;
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamPair {
    pub b: Rational,
    pub c: Rational,
}

impl ParamPair {
    pub fn new(b: Rational, c: Rational) -> Self {
        Self { b, c }
    }

    pub fn from_ints(b: i64, c: i64) -> Self {
        Self {
            b: int(b),
            c: int(c),
        }
    }
}

/// Values of the nine elementary multisymmetric polynomials.
///
/// Field `eij` holds the invariant of degree `i` in the edges and `j` in the
/// face diagonals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EVector {
    pub e10: Rational,
    pub e20: Rational,
    pub e30: Rational,
    pub e01: Rational,
    pub e02: Rational,
    pub e03: Rational,
    pub e21: Rational,
    pub e11: Rational,
    pub e12: Rational,
}

impl EVector {
    pub const NAMES: [&'static str; 9] = [
        "e10", "e20", "e30", "e01", "e02", "e03", "e21", "e11", "e12",
    ];

    pub fn zero() -> Self {
        let z = Rational::zero();
        Self {
            e10: z.clone(),
            e20: z.clone(),
            e30: z.clone(),
            e01: z.clone(),
            e02: z.clone(),
            e03: z.clone(),
            e21: z.clone(),
            e11: z.clone(),
            e12: z,
        }
    }

    /// Components in [`EVector::NAMES`] order.
    pub fn components(&self) -> [&Rational; 9] {
        [
            &self.e10, &self.e20, &self.e30, &self.e01, &self.e02, &self.e03, &self.e21, &self.e11,
            &self.e12,
        ]
    }
}

/// A denominator of the two-parameter formulas.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degeneracy {
    /// `b²c² + 2b² − 3b²c + c − bc² + 2b`, shared by the seed triple.
    D1,
    /// `bc − 1 − b`
    D2,
    /// `bc − c − 2b`
    D3,
    /// `b²c⁴ − 6b²c³ + 13b²c² − 12b²c + 4b² + c²`
    D4,
    /// `e01² + e10² = 0`, the denominator of the `e21`/`e12` formulas.
    EAxis,
}

impl Degeneracy {
    pub const ALL: [Degeneracy; 5] = [Self::D1, Self::D2, Self::D3, Self::D4, Self::EAxis];

    pub fn label(self) -> &'static str {
        match self {
            Self::D1 => "D1",
            Self::D2 => "D2",
            Self::D3 => "D3",
            Self::D4 => "D4",
            Self::EAxis => "E-AXIS",
        }
    }

    pub fn from_label(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|d| d.label() == s)
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

impl fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct DegeneracySet(u8);

impl DegeneracySet {
    pub fn insert(&mut self, d: Degeneracy) {
        self.0 |= d.bit();
    }

    pub fn contains(self, d: Degeneracy) -> bool {
        self.0 & d.bit() != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Degeneracy> {
        Degeneracy::ALL
            .into_iter()
            .filter(move |d| self.contains(*d))
    }

    pub fn labels(self) -> Vec<&'static str> {
        self.iter().map(Degeneracy::label).collect()
    }
}

impl FromIterator<Degeneracy> for DegeneracySet {
    fn from_iter<I: IntoIterator<Item = Degeneracy>>(iter: I) -> Self {
        let mut set = Self::default();
        for d in iter {
            set.insert(d);
        }
        set
    }
}

impl fmt::Display for DegeneracySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        f.write_str(&self.labels().join(","))
    }
}

impl fmt::Debug for DegeneracySet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// `Σ coef · b^i · c^j` over `(coef, i, j)`.
fn poly(b: &Rational, c: &Rational, terms: &[(i64, usize, usize)]) -> Rational {
    let max_b = terms.iter().map(|t| t.1).max().unwrap_or(0);
    let max_c = terms.iter().map(|t| t.2).max().unwrap_or(0);
    let powers = |x: &Rational, n: usize| {
        let mut out = Vec::with_capacity(n + 1);
        out.push(Rational::one());
        for k in 0..n {
            out.push(&out[k] * x);
        }
        out
    };
    let bp = powers(b, max_b);
    let cp = powers(c, max_c);
    terms.iter().fold(Rational::zero(), |acc, &(k, i, j)| {
        acc + int(k) * &bp[i] * &cp[j]
    })
}

struct Denominators {
    d1: Rational,
    d2: Rational,
    d3: Rational,
    d4: Rational,
}

fn denominators(p: &ParamPair) -> Denominators {
    let (b, c) = (&p.b, &p.c);
    Denominators {
        d1: poly(
            b,
            c,
            &[
                (1, 2, 2),
                (2, 2, 0),
                (-3, 2, 1),
                (1, 0, 1),
                (-1, 1, 2),
                (2, 1, 0),
            ],
        ),
        d2: b * c - Rational::one() - b,
        d3: b * c - c - int(2) * b,
        d4: poly(
            b,
            c,
            &[
                (1, 2, 4),
                (-6, 2, 3),
                (13, 2, 2),
                (-12, 2, 1),
                (4, 2, 0),
                (1, 0, 2),
            ],
        ),
    }
}

/// `(e11, e01, e10)` in plain rational arithmetic; `None` when `D1 = 0`.
fn seed(p: &ParamPair, d1: &Rational) -> Option<(Rational, Rational, Rational)> {
    if d1.is_zero() {
        return None;
    }
    let (b, c) = (&p.b, &p.c);
    let e11 = -(b * poly(b, c, &[(1, 0, 2), (2, 0, 0), (-4, 0, 1)])) / d1;
    let e01 = -(b * poly(b, c, &[(1, 0, 2), (2, 0, 0), (-2, 0, 1)])) / d1;
    let e10 = -poly(b, c, &[(1, 2, 2), (2, 2, 0), (-3, 2, 1), (-1, 0, 1)]) / d1;
    Some((e11, e01, e10))
}

pub fn degeneracy_flags(p: &ParamPair) -> DegeneracySet {
    let dens = denominators(p);
    let mut flags = DegeneracySet::default();
    for (flag, value) in [
        (Degeneracy::D1, &dens.d1),
        (Degeneracy::D2, &dens.d2),
        (Degeneracy::D3, &dens.d3),
        (Degeneracy::D4, &dens.d4),
    ] {
        if value.is_zero() {
            flags.insert(flag);
        }
    }
    if let Some((_, e01, e10)) = seed(p, &dens.d1) {
        if e01.is_zero() && e10.is_zero() {
            flags.insert(Degeneracy::EAxis);
        }
    }
    flags
}

/// Completes a seed triple satisfying `(2e11)² + (e01² + 1 − e10²)² = 8e01²`
/// to a full [`EVector`] at unit space diagonal.
///
/// The `e12` expression carries the opposite overall sign to the commonly
/// printed version; with that sign all eight transformed factor equations
/// vanish and the expanded `(b, c)` forms agree.
pub fn complete_from_seed(
    e11: Rational,
    e01: Rational,
    e10: Rational,
) -> Result<EVector, CoreError> {
    let w = e11.denom().lcm(e01.denom()).lcm(e10.denom());
    let lift = |r: &Rational| r.numer() * (&w / r.denom());
    complete_projective(&lift(&e11), &lift(&e01), &lift(&e10), &w)
}

/// [`complete_from_seed`] for `e11 = x/w`, `e01 = y/w`, `e10 = z/w`.
///
/// Every component is assembled over the common denominator `8w³(y² + z²)`
/// (or `2w²`) in integers and reduced once at the end.
fn complete_projective(
    x: &BigInt,
    y: &BigInt,
    z: &BigInt,
    w: &BigInt,
) -> Result<EVector, CoreError> {
    debug_assert!(!w.is_zero());
    let s = y * y + z * z;
    if s.is_zero() {
        return Err(CoreError::DegenerateParameter(
            [Degeneracy::EAxis].into_iter().collect(),
        ));
    }
    let k = |n: i64| BigInt::from(n);
    let (w2, y2, z2) = (w * w, y * y, z * z);
    let w3 = &w2 * w;
    let w4 = &w2 * &w2;
    let (y3, z3) = (&y2 * y, &z2 * z);
    let (xw, xw3) = (x * w, x * &w3);

    let n21 = k(2) * &z3 * &xw + k(2) * &y2 * z * &xw - y * &z2 * &z2 + &y3 * &y2 + k(6) * z * &xw3
        - k(2) * y * &z2 * &w2
        - k(8) * &y3 * &w2
        + k(3) * y * &w4;
    let n12 = -(&y2 * &y2 * z - k(2) * &y3 * &xw - k(2) * y * &z2 * &xw - &z3 * &z2
        + k(6) * &z3 * &w2
        - k(6) * y * &xw3
        + k(3) * z * &w4);
    let n30 = -&n12 + &s * (k(-4) * z * &y2 - k(12) * z * &w2 + k(4) * &z3 + k(8) * y * &xw);
    let n03 = -&n21 + &s * (k(-4) * y * &z2 - k(20) * y * &w2 + k(4) * &y3 + k(8) * z * &xw);

    let cubic_den = k(8) * &w3 * &s;
    let third_den = k(3) * &cubic_den;
    let r = |n: BigInt, d: &BigInt| Rational::new(n, d.clone());
    Ok(EVector {
        e10: r(z.clone(), w),
        e20: r(&z2 - &w2, &(k(2) * &w2)),
        e30: r(n30, &third_den),
        e01: r(y.clone(), w),
        e02: r(&y2 - k(2) * &w2, &(k(2) * &w2)),
        e03: r(n03, &third_den),
        e21: r(n21, &cubic_den),
        e11: r(x.clone(), w),
        e12: r(n12, &cubic_den),
    })
}

/// The generic route: seed from `(b, c)`, then [`complete_from_seed`].
pub fn evaluate_param_map(p: &ParamPair) -> Result<EVector, CoreError> {
    // b = p1/q1, c = p2/q2; the seed's shared denominator times q1²q2²
    let (p1, q1, p2, q2) = (p.b.numer(), p.b.denom(), p.c.numer(), p.c.denom());
    let k = |n: i64| BigInt::from(n);
    let (p1s, q1s, p2s, q2s) = (p1 * p1, q1 * q1, p2 * p2, q2 * q2);
    let p2q2 = p2 * q2;
    let w = &p1s * &p2s + k(2) * &p1s * &q2s - k(3) * &p1s * &p2q2 + &p2q2 * &q1s - p1 * q1 * &p2s
        + k(2) * p1 * q1 * &q2s;
    if w.is_zero() {
        return Err(CoreError::DegenerateParameter(degeneracy_flags(p)));
    }
    let bq = -(p1 * q1);
    let x = &bq * (&p2s - k(4) * &p2q2 + k(2) * &q2s);
    let y = &bq * (&p2s - k(2) * &p2q2 + k(2) * &q2s);
    let z = -(&p1s * &p2s + k(2) * &p1s * &q2s - k(3) * &p1s * &p2q2 - &p2q2 * &q1s);
    complete_projective(&x, &y, &z, &w)
        .map_err(|_| CoreError::DegenerateParameter(degeneracy_flags(p)))
}

pub fn evaluate_closed_forms(p: &ParamPair) -> Result<EVector, CoreError> {
    let flags = degeneracy_flags(p);
    if [
        Degeneracy::D1,
        Degeneracy::D2,
        Degeneracy::D3,
        Degeneracy::D4,
    ]
    .iter()
    .any(|d| flags.contains(*d))
    {
        return Err(CoreError::DegenerateParameter(flags));
    }
    let dens = denominators(p);
    let (b, c) = (&p.b, &p.c);
    let (e11, e01, e10) = seed(p, &dens.d1).expect("D1 checked above");
    let half = Rational::new(1.into(), 2.into());
    let sq23 = (&dens.d2 * &dens.d2) * (&dens.d3 * &dens.d3);
    let full = &dens.d4 * &sq23;

    let e20 = b
        * &half
        * poly(b, c, &[(1, 1, 2), (-2, 0, 1), (-2, 1, 0)])
        * poly(
            b,
            c,
            &[(2, 1, 2), (-1, 0, 2), (-6, 1, 1), (2, 0, 0), (4, 1, 0)],
        )
        / &sq23;

    #[rustfmt::skip]
    let e02 = &half * poly(b, c, &[
        (28, 2, 2), (-16, 2, 1), (-2, 0, 2), (-4, 2, 0), (-1, 2, 4),
        (4, 3, 4), (-12, 3, 3), (4, 1, 3), (24, 3, 1), (-8, 1, 1), (-2, 4, 4),
        (12, 4, 3), (-26, 4, 2), (-8, 2, 3), (24, 4, 1), (-16, 3, 0), (-8, 4, 0),
    ]) / &sq23;

    #[rustfmt::skip]
    let e21 = b * &half * poly(b, c, &[
        (5, 1, 6), (-2, 2, 6), (52, 2, 5), (-16, 1, 5), (-2, 2, 7), (2, 4, 8),
        (142, 4, 6), (-26, 4, 7), (-426, 4, 5), (-61, 3, 6), (100, 3, 5), (14, 3, 7),
        (-1, 3, 8), (-20, 1, 2), (-8, 2, 2), (-16, 2, 1), (-128, 2, 4), (-200, 3, 3),
        (244, 3, 2), (32, 1, 3), (-112, 3, 1), (768, 4, 4), (-852, 4, 3), (568, 4, 2),
        (104, 2, 3), (-208, 4, 1), (8, 0, 4), (-4, 0, 3), (16, 3, 0), (32, 4, 0), (-2, 0, 5),
    ]) / &full;

    #[rustfmt::skip]
    let e12 = poly(b, c, &[
        (16, 6, 0), (32, 5, 0), (-6, 2, 5), (2, 1, 5), (-62, 5, 6), (62, 6, 6),
        (-180, 6, 5), (18, 5, 7), (-12, 6, 7), (-2, 5, 8), (1, 6, 8), (248, 5, 2),
        (248, 6, 2), (-96, 6, 1), (321, 6, 4), (-180, 5, 3), (-144, 5, 1), (-360, 6, 3),
        (1, 4, 8), (8, 4, 6), (-6, 4, 7), (18, 4, 5), (7, 3, 6), (90, 5, 5), (-14, 3, 5),
        (-1, 3, 7), (17, 2, 4), (28, 3, 3), (-28, 3, 2), (-4, 1, 3), (8, 3, 1),
        (-57, 4, 4), (36, 4, 3), (32, 4, 2), (-12, 2, 3), (-48, 4, 1), (-1, 0, 4), (16, 4, 0),
    ]) / &full;

    #[rustfmt::skip]
    let e03 = b * &half
        * poly(b, c, &[(1, 2, 4), (-5, 2, 3), (10, 2, 2), (-10, 2, 1), (4, 2, 0), (2, 1, 1), (2, 0, 2), (-1, 1, 3)])
        * poly(b, c, &[
            (2, 2, 4), (-12, 2, 3), (26, 2, 2), (-24, 2, 1), (8, 2, 0), (-1, 1, 4),
            (3, 1, 3), (-6, 1, 1), (4, 1, 0), (1, 0, 3), (-2, 0, 2), (2, 0, 1),
        ])
        / &full;

    let e30 = c
        * b
        * b
        * (Rational::one() - c)
        * (c - int(2))
        * poly(b, c, &[(1, 1, 2), (-4, 1, 1), (2, 0, 0), (4, 1, 0)])
        * poly(b, c, &[(2, 1, 2), (-1, 0, 2), (-4, 1, 1), (2, 1, 0)])
        / &full;

    Ok(EVector {
        e10,
        e20,
        e30,
        e01,
        e02,
        e03,
        e21,
        e11,
        e12,
    })
}

/// Left side of `(2e11)² + (e01² + 1 − e10²)² − 8e01²`.
pub fn seed_residual(e11: &Rational, e01: &Rational, e10: &Rational) -> Rational {
    let e01_2 = e01 * e01;
    let inner = &e01_2 + Rational::one() - e10 * e10;
    int(4) * e11 * e11 + &inner * &inner - int(8) * e01_2
}
