//! Per-pair pipeline and the one-parameter no-go checks.
//!
//! A pair is classified in a fixed order: degenerate, edge cubic, diagonal
//! cubic, positivity, pairing, final cuboid check. Only the last stage can
//! produce [`Outcome::PerfectCuboid`], and only after the original cuboid
//! equations evaluate to exactly zero.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::cubic::{rational_roots_with, MonicCubic, RootClassification, RootStatus, RootStrategy};
use crate::error::CoreError;
use crate::multisym::{cuboid_residuals, eform_residuals, CuboidCandidate};
use crate::param_map::{
    complete_from_seed, evaluate_param_map, seed_residual, DegeneracySet, EVector, ParamPair,
};
use crate::rational::{frac, int, rational_to_string, Rational};
use crate::search::enumerate_rationals;

/// Assignments of the diagonal roots to the fixed (ascending) edge order,
/// indexed 0 to 5.
pub const PERMUTATIONS: [[usize; 3]; 6] = [
    [0, 1, 2],
    [0, 2, 1],
    [1, 0, 2],
    [1, 2, 0],
    [2, 0, 1],
    [2, 1, 0],
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    Degenerate(DegeneracySet),
    CubicXFail,
    CubicDFail,
    NonpositiveRoots,
    PairingFail,
    Unresolved,
    PerfectCuboid,
}

impl Outcome {
    pub const CLASSES: [&'static str; 7] = [
        "DEGENERATE",
        "CUBIC_X_FAIL",
        "CUBIC_D_FAIL",
        "NONPOSITIVE_ROOTS",
        "PAIRING_FAIL",
        "UNRESOLVED",
        "PERFECT_CUBOID",
    ];

    pub fn class(&self) -> &'static str {
        match self {
            Self::Degenerate(_) => "DEGENERATE",
            Self::CubicXFail => "CUBIC_X_FAIL",
            Self::CubicDFail => "CUBIC_D_FAIL",
            Self::NonpositiveRoots => "NONPOSITIVE_ROOTS",
            Self::PairingFail => "PAIRING_FAIL",
            Self::Unresolved => "UNRESOLVED",
            Self::PerfectCuboid => "PERFECT_CUBOID",
        }
    }

    /// Classes that are only counted unless full records are requested.
    pub fn is_bulk(&self) -> bool {
        matches!(
            self,
            Self::Degenerate(_) | Self::CubicXFail | Self::CubicDFail
        )
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Degenerate(flags) => write!(f, "DEGENERATE({flags})"),
            other => f.write_str(other.class()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingResult {
    pub x_roots: [Rational; 3],
    pub d_roots: [Rational; 3],
    pub permutation: usize,
    pub satisfied: bool,
}

impl PairingResult {
    /// `d` in slot order, i.e. `d_roots` permuted by `permutation`.
    pub fn assigned_d(&self) -> [Rational; 3] {
        PERMUTATIONS[self.permutation].map(|i| self.d_roots[i].clone())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RecordDetail {
    pub evector: Option<EVector>,
    pub x: Option<RootClassification>,
    pub d: Option<RootClassification>,
    pub attempts: Vec<PairingResult>,
    pub candidate: Option<CuboidCandidate>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchRecord {
    pub param: ParamPair,
    pub outcome: Outcome,
    pub detail: RecordDetail,
}

impl SearchRecord {
    /// The pairing that the outcome refers to: the accepted one for a perfect
    /// cuboid, otherwise the first assignment that satisfied the auxiliary
    /// equations, if any.
    pub fn chosen_pairing(&self) -> Option<&PairingResult> {
        self.detail.attempts.iter().find(|a| a.satisfied)
    }
}

fn pairing_attempt(
    x: &[Rational; 3],
    d: &[Rational; 3],
    permutation: usize,
    e: &EVector,
) -> PairingResult {
    let [d1, d2, d3] = PERMUTATIONS[permutation].map(|i| &d[i]);
    let [x1, x2, x3] = [&x[0], &x[1], &x[2]];
    let e21 = x1 * x2 * d3 + x2 * x3 * d1 + x3 * x1 * d2;
    let e11 = x1 * d2 + d1 * x2 + x2 * d3 + d2 * x3 + x3 * d1 + d3 * x1;
    let e12 = x1 * d2 * d3 + x2 * d3 * d1 + x3 * d1 * d2;
    PairingResult {
        x_roots: x.clone(),
        d_roots: d.clone(),
        permutation,
        satisfied: e21 == e.e21 && e11 == e.e11 && e12 == e.e12,
    }
}

fn has_repeats(v: &[Rational]) -> bool {
    v[0] == v[1] || v[1] == v[2] || v[0] == v[2]
}

pub fn evaluate_pair(p: &ParamPair) -> SearchRecord {
    evaluate_pair_with(p, RootStrategy::default())
}

pub fn evaluate_pair_with(p: &ParamPair, strategy: RootStrategy) -> SearchRecord {
    let mut detail = RecordDetail::default();
    let finish = |outcome, detail| SearchRecord {
        param: p.clone(),
        outcome,
        detail,
    };

    let e = match evaluate_param_map(p) {
        Ok(e) => e,
        Err(CoreError::DegenerateParameter(flags)) => {
            return finish(Outcome::Degenerate(flags), detail)
        }
        Err(other) => unreachable!("param map only reports degeneracy: {other}"),
    };

    let x_cubic = MonicCubic::from_symmetric(&e.e10, &e.e20, &e.e30);
    let x = match rational_roots_with(&x_cubic, strategy) {
        Ok(r) => r,
        Err(err) => {
            detail.note = Some(format!("edge cubic: {err}"));
            detail.evector = Some(e);
            return finish(Outcome::Unresolved, detail);
        }
    };
    let x_ok = x.status.is_all_rational();
    detail.x = Some(x);
    if !x_ok {
        detail.evector = Some(e);
        return finish(Outcome::CubicXFail, detail);
    }

    let d_cubic = MonicCubic::from_symmetric(&e.e01, &e.e02, &e.e03);
    let d = match rational_roots_with(&d_cubic, strategy) {
        Ok(r) => r,
        Err(err) => {
            detail.note = Some(format!("diagonal cubic: {err}"));
            detail.evector = Some(e);
            return finish(Outcome::Unresolved, detail);
        }
    };
    let d_ok = d.status.is_all_rational();
    detail.d = Some(d);
    if !d_ok {
        detail.evector = Some(e);
        return finish(Outcome::CubicDFail, detail);
    }

    let (xs, ds) = (detail.x.as_ref().unwrap(), detail.d.as_ref().unwrap());
    if xs.status != RootStatus::AllRationalPositive || ds.status != RootStatus::AllRationalPositive
    {
        detail.evector = Some(e);
        return finish(Outcome::NonpositiveRoots, detail);
    }

    let xr: [Rational; 3] = xs.roots.clone().try_into().expect("three roots");
    let dr: [Rational; 3] = ds.roots.clone().try_into().expect("three roots");
    let mut outcome = Outcome::PairingFail;
    for perm in 0..PERMUTATIONS.len() {
        let attempt = pairing_attempt(&xr, &dr, perm, &e);
        let satisfied = attempt.satisfied;
        let assigned = attempt.assigned_d();
        detail.attempts.push(attempt);
        if !satisfied {
            continue;
        }
        let candidate = CuboidCandidate::new(xr.clone(), assigned, Rational::one());
        if candidate.is_positive() && cuboid_residuals(&candidate).iter().all(Zero::is_zero) {
            if has_repeats(&candidate.x) || has_repeats(&candidate.d) {
                detail.note = Some("repeated edges or diagonals".into());
            }
            detail.candidate = Some(candidate);
            outcome = Outcome::PerfectCuboid;
            break;
        }
        detail.note = Some(format!(
            "assignment {perm} satisfies the auxiliary equations but not the cuboid system"
        ));
    }
    detail.evector = Some(e);
    finish(outcome, detail)
}

/// The four one-parameter seed families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneParamCase {
    /// `e11 = c, e01 = c, e10 = c − 1`
    EqualSeedShifted,
    /// `e11 = c, e01 = c, e10 = −c − 1`
    EqualSeedReflected,
    /// `e11 = c, e01 = −c, e10 = c − 1`
    OppositeSeedPlus,
    /// `e11 = c, e01 = −c, e10 = −c − 1`
    OppositeSeedMinus,
}

impl OneParamCase {
    pub const ALL: [OneParamCase; 4] = [
        Self::EqualSeedShifted,
        Self::EqualSeedReflected,
        Self::OppositeSeedPlus,
        Self::OppositeSeedMinus,
    ];

    pub fn seed(self, c: &Rational) -> (Rational, Rational, Rational) {
        let one = Rational::one();
        match self {
            Self::EqualSeedShifted => (c.clone(), c.clone(), c - one),
            Self::EqualSeedReflected => (c.clone(), c.clone(), -c - one),
            Self::OppositeSeedPlus => (c.clone(), -c, c - one),
            Self::OppositeSeedMinus => (c.clone(), -c, -c - one),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::EqualSeedShifted => "e11=c, e01=c, e10=c-1",
            Self::EqualSeedReflected => "e11=c, e01=c, e10=-c-1",
            Self::OppositeSeedPlus => "e11=c, e01=-c, e10=c-1",
            Self::OppositeSeedMinus => "e11=c, e01=-c, e10=-c-1",
        }
    }

    /// Closed forms of the completed vector for the two equal-seed families.
    fn expected(self, c: &Rational) -> Option<EVector> {
        let half = frac(1, 2);
        let c2 = c * c;
        let (e10, e20, e21, e03) = match self {
            Self::EqualSeedShifted => {
                let v = (&c2 - int(2) * c) * &half;
                (c - int(1), v.clone(), v.clone(), v)
            }
            Self::EqualSeedReflected => {
                let v = (&c2 + int(2) * c) * &half;
                (-c - int(1), v.clone(), -v.clone(), -v)
            }
            _ => return None,
        };
        Some(EVector {
            e10,
            e20,
            e30: int(0),
            e01: c.clone(),
            e02: (&c2 - int(2)) * &half,
            e03,
            e21,
            e11: c.clone(),
            e12: int(1),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseSummary {
    pub case: OneParamCase,
    pub samples: usize,
    pub skipped: usize,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoGoReport {
    pub sample_height: u64,
    pub cases: Vec<CaseSummary>,
}

impl NoGoReport {
    pub fn pass(&self) -> bool {
        self.cases
            .iter()
            .all(|c| c.failures.is_empty() && c.samples > 0)
    }
}

impl fmt::Display for NoGoReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "one-parameter families, c = p/q with |p|, q <= {}",
            self.sample_height
        )?;
        for case in &self.cases {
            let verdict = if case.failures.is_empty() {
                "PASS"
            } else {
                "FAIL"
            };
            writeln!(
                f,
                "  [{verdict}] {:<24} samples={} skipped={} failures={}",
                case.case.name(),
                case.samples,
                case.skipped,
                case.failures.len()
            )?;
            for msg in case.failures.iter().take(10) {
                writeln!(f, "      {msg}")?;
            }
        }
        write!(f, "overall: {}", if self.pass() { "PASS" } else { "FAIL" })
    }
}

/// Checks, for every sampled `c`, that each one-parameter family solves the
/// reduced equation and that the completed vector rules out a cuboid: a zero
/// edge product for the equal-seed families, opposite signs of `e11` and
/// `e01` for the opposite-seed families.
pub fn check_one_parameter_cases(sample_height: u64) -> NoGoReport {
    let samples = enumerate_rationals(sample_height);
    let cases = OneParamCase::ALL
        .into_iter()
        .map(|case| {
            let mut summary = CaseSummary {
                case,
                samples: 0,
                skipped: 0,
                failures: Vec::new(),
            };
            for c in &samples {
                let cs = rational_to_string(c);
                let (e11, e01, e10) = case.seed(c);
                if !seed_residual(&e11, &e01, &e10).is_zero() {
                    summary
                        .failures
                        .push(format!("c={cs}: seed does not solve the reduced equation"));
                    continue;
                }
                let e = match complete_from_seed(e11, e01, e10) {
                    Ok(e) => e,
                    Err(_) => {
                        summary.skipped += 1;
                        continue;
                    }
                };
                summary.samples += 1;
                if let Some(k) = eform_residuals(&e, &Rational::one())
                    .iter()
                    .position(|r| !r.is_zero())
                {
                    summary.failures.push(format!(
                        "c={cs}: transformed factor equation {k} does not vanish"
                    ));
                }
                match case.expected(c) {
                    Some(expected) => {
                        if !e.e30.is_zero() {
                            summary.failures.push(format!(
                                "c={cs}: e30 = {} is not zero",
                                rational_to_string(&e.e30)
                            ));
                        }
                        for (name, (got, want)) in EVector::NAMES
                            .iter()
                            .zip(e.components().into_iter().zip(expected.components()))
                        {
                            if got != want {
                                summary.failures.push(format!(
                                    "c={cs}: {name} = {} but closed form gives {}",
                                    rational_to_string(got),
                                    rational_to_string(want)
                                ));
                            }
                        }
                    }
                    None => {
                        let product = &e.e11 * &e.e01;
                        if product.is_positive() || (product.is_zero() != c.is_zero()) {
                            summary.failures.push(format!(
                                "c={cs}: e11*e01 = {} violates the sign condition",
                                rational_to_string(&product)
                            ));
                        }
                    }
                }
            }
            summary
        })
        .collect();
    NoGoReport {
        sample_height,
        cases,
    }
}
