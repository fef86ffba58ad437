//! Exact rational roots of monic cubics.
//!
//! A cubic `t³ + a2·t² + a1·t + a0` is rescaled by `t = u/m`, with `m` the
//! least common multiple of the coefficient denominators, into a monic integer
//! cubic in `u`. Its rational roots are integers. Once one integer root is
//! known the cubic is deflated and the residual quadratic is solved exactly.
//!
//! Two strategies locate the first root:
//!
//! - [`RootStrategy::Isolation`] bisects over integers on the monotone
//!   stretches between the critical points. It needs no factorisation and
//!   always terminates in `O(bits)` evaluations.
//! - [`RootStrategy::Divisors`] is the textbook rational-root test: try every
//!   signed divisor of the constant term. Trial division is capped by a
//!   budget, and exceeding it yields [`RootError::DivisorOverflow`].

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::RootError;
use crate::rational::Rational;

pub const DEFAULT_DIVISOR_BUDGET: u64 = 1_000_000;

/// `t³ + a2·t² + a1·t + a0`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonicCubic {
    pub a2: Rational,
    pub a1: Rational,
    pub a0: Rational,
}

impl MonicCubic {
    pub fn new(a2: Rational, a1: Rational, a0: Rational) -> Self {
        Self { a2, a1, a0 }
    }

    /// `(t − r1)(t − r2)(t − r3)`
    pub fn from_roots(r1: &Rational, r2: &Rational, r3: &Rational) -> Self {
        Self {
            a2: -(r1 + r2 + r3),
            a1: r1 * r2 + r2 * r3 + r3 * r1,
            a0: -(r1 * r2 * r3),
        }
    }

    /// `t³ − s1·t² + s2·t − s3`, the cubic whose roots have elementary
    /// symmetric values `s1, s2, s3`.
    pub fn from_symmetric(s1: &Rational, s2: &Rational, s3: &Rational) -> Self {
        Self {
            a2: -s1,
            a1: s2.clone(),
            a0: -s3,
        }
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        ((t + &self.a2) * t + &self.a1) * t + &self.a0
    }

    fn integer_form(&self) -> IntCubic {
        let m = self.a2.denom().lcm(self.a1.denom()).lcm(self.a0.denom());
        let scale = |r: &Rational, pow: u32| r.numer() * (m.pow(pow) / r.denom());
        IntCubic {
            a: scale(&self.a2, 1),
            b: scale(&self.a1, 2),
            c: scale(&self.a0, 3),
            m,
        }
    }
}

impl fmt::Display for MonicCubic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::rational::rational_to_string as s;
        write!(
            f,
            "t^3 + ({})*t^2 + ({})*t + ({})",
            s(&self.a2),
            s(&self.a1),
            s(&self.a0)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RootStatus {
    AllRationalPositive,
    AllRationalNonpositive,
    PartialRational,
    NoRational,
}

impl RootStatus {
    pub fn label(self) -> &'static str {
        match self {
            Self::AllRationalPositive => "ALL_RATIONAL_POSITIVE",
            Self::AllRationalNonpositive => "ALL_RATIONAL_NONPOSITIVE",
            Self::PartialRational => "PARTIAL_RATIONAL",
            Self::NoRational => "NO_RATIONAL",
        }
    }

    pub fn is_all_rational(self) -> bool {
        matches!(
            self,
            Self::AllRationalPositive | Self::AllRationalNonpositive
        )
    }
}

impl fmt::Display for RootStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Rational roots with multiplicity, ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootClassification {
    pub status: RootStatus,
    pub roots: Vec<Rational>,
}

impl RootClassification {
    fn from_roots(mut roots: Vec<Rational>) -> Self {
        roots.sort();
        let status = match roots.len() {
            0 => RootStatus::NoRational,
            3 if roots.iter().all(|r| r.is_positive()) => RootStatus::AllRationalPositive,
            3 => RootStatus::AllRationalNonpositive,
            _ => RootStatus::PartialRational,
        };
        Self { status, roots }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RootStrategy {
    #[default]
    Isolation,
    Divisors {
        budget: u64,
    },
}

impl RootStrategy {
    pub fn divisors() -> Self {
        Self::Divisors {
            budget: DEFAULT_DIVISOR_BUDGET,
        }
    }
}

pub fn rational_roots(q: &MonicCubic) -> Result<RootClassification, RootError> {
    rational_roots_with(q, RootStrategy::default())
}

pub fn rational_roots_with(
    q: &MonicCubic,
    strategy: RootStrategy,
) -> Result<RootClassification, RootError> {
    let ic = q.integer_form();
    let first = if ic.c.is_zero() {
        Some(BigInt::zero())
    } else {
        match strategy {
            RootStrategy::Isolation => ic.isolate_first_root(),
            RootStrategy::Divisors { budget } => ic.divisor_search(budget)?,
        }
    };
    let Some(r) = first else {
        return Ok(RootClassification::from_roots(Vec::new()));
    };

    // (u − r)(u² + p·u + s) with p = A + r, s = B + r·p
    let p = &ic.a + &r;
    let s = &ic.b + &r * &p;
    debug_assert!((&ic.c + &r * &s).is_zero());

    let mut roots = vec![r];
    let disc = &p * &p - BigInt::from(4) * &s;
    if !disc.is_negative() {
        let sq = disc.sqrt();
        if &sq * &sq == disc {
            let two = BigInt::from(2);
            roots.push((-&p - &sq) / &two);
            roots.push((-&p + &sq) / &two);
        }
    }
    Ok(RootClassification::from_roots(
        roots
            .into_iter()
            .map(|u| Rational::new(u, ic.m.clone()))
            .collect(),
    ))
}

/// Positive divisors of `n` in increasing order, by trial division up to `√n`.
///
/// Fails without doing any work when `√n` exceeds `budget`.
pub fn divisors_of(n: &BigInt, budget: u64) -> Result<Vec<BigInt>, RootError> {
    assert!(n.is_positive(), "divisors_of requires n >= 1");
    let overflow = || RootError::DivisorOverflow {
        bits: n.bits(),
        budget,
    };
    let bound = n
        .sqrt()
        .to_u64()
        .filter(|b| *b <= budget)
        .ok_or_else(overflow)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    for k in 1..=bound {
        if (n % k).is_zero() {
            let co = n / k;
            if co != BigInt::from(k) {
                large.push(co);
            }
            small.push(BigInt::from(k));
        }
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// `u³ + a·u² + b·u + c` with `t = u / m`.
const SIEVE_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

struct IntCubic {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    m: BigInt,
}

impl IntCubic {
    fn eval(&self, u: &BigInt) -> BigInt {
        ((u + &self.a) * u + &self.b) * u + &self.c
    }

    fn divisor_search(&self, budget: u64) -> Result<Option<BigInt>, RootError> {
        for d in divisors_of(&self.c.abs(), budget)? {
            for cand in [-&d, d] {
                if self.eval(&cand).is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
        Ok(None)
    }

    /// Whether `u³ + au² + bu + c ≡ 0 (mod p)` has a solution.
    fn has_root_mod(&self, p: u64) -> bool {
        let r = |x: &BigInt| x.mod_floor(&BigInt::from(p)).to_u64().unwrap_or(0);
        let (a, b, c) = (r(&self.a), r(&self.b), r(&self.c));
        (0..p).any(|u| (((u + a) % p * u % p + b) % p * u % p + c) % p == 0)
    }

    /// First integer root found, scanning the critical-point windows and then
    /// the monotone stretches between them.
    fn isolate_first_root(&self) -> Option<BigInt> {
        if SIEVE_PRIMES.iter().any(|&p| !self.has_root_mod(p)) {
            return None;
        }
        let one = BigInt::one();
        let three = BigInt::from(3);
        // every root satisfies |u| <= 2·max(|a|, |b|^(1/2), |c|^(1/3))
        let bound = {
            let r = self
                .a
                .abs()
                .max(self.b.abs().sqrt() + &one)
                .max(self.c.abs().cbrt() + &one);
            BigInt::from(2) * r + &one
        };

        // f' = 3u² + 2au + b; critical points (−a ± √(a² − 3b)) / 3
        let h = &self.a * &self.a - &three * &self.b;
        if !h.is_positive() {
            return self.bisect(-&bound, bound);
        }
        let s = h.sqrt();
        let floor3 = |x: BigInt| x.div_floor(&three);
        let ceil3 = |x: BigInt| x.div_ceil(&three);
        let w1 = (floor3(-&self.a - &s - &one), ceil3(-&self.a - &s));
        let w2 = (floor3(-&self.a + &s), ceil3(-&self.a + &s + &one));

        for window in [&w1, &w2] {
            let mut u = window.0.clone();
            while u <= window.1 {
                if self.eval(&u).is_zero() {
                    return Some(u);
                }
                u += 1;
            }
        }
        let segments = [
            (-&bound, &w1.0 - &one),
            (&w1.1 + &one, &w2.0 - &one),
            (&w2.1 + &one, bound),
        ];
        segments
            .into_iter()
            .filter(|(lo, hi)| lo <= hi)
            .find_map(|(lo, hi)| self.bisect(lo, hi))
    }

    /// Integer root of a cubic that is monotone on `[lo, hi]`.
    fn bisect(&self, mut lo: BigInt, mut hi: BigInt) -> Option<BigInt> {
        let f_lo = self.eval(&lo);
        if f_lo.is_zero() {
            return Some(lo);
        }
        let f_hi = self.eval(&hi);
        if f_hi.is_zero() {
            return Some(hi);
        }
        let lo_sign = f_lo.sign();
        if lo_sign == f_hi.sign() {
            return None;
        }
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi).div_floor(&BigInt::from(2));
            let f_mid = self.eval(&mid);
            match f_mid.sign() {
                Sign::NoSign => return Some(mid),
                s if s == lo_sign => lo = mid,
                _ => hi = mid,
            }
        }
        None
    }
}
