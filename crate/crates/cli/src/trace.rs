use anyhow::Context;
use cuboid_core::{
    cuboid_residuals, degeneracy_flags, eform_residuals, elementary_values, evaluate_closed_forms,
    evaluate_pair, factor_residuals, parse_rational, rational_to_string as s, CuboidCandidate,
    EVector, MonicCubic, Outcome, ParamPair, Rational, RootClassification, PERMUTATIONS,
};
use num_traits::Zero;

const EXIT_UNRESOLVED: u8 = 2;
const EXIT_NOT_A_CUBOID: u8 = 2;

fn parse(label: &str, input: &str) -> anyhow::Result<Rational> {
    parse_rational(input).with_context(|| format!("argument {label}"))
}

fn print_evector(e: &EVector) {
    for (name, v) in EVector::NAMES.iter().zip(e.components()) {
        println!("  {name} = {}", s(v));
    }
}

fn list(values: &[Rational]) -> String {
    values.iter().map(s).collect::<Vec<_>>().join(", ")
}

fn print_roots(label: &str, cubic: &MonicCubic, roots: Option<&RootClassification>) {
    println!("{label} cubic: {cubic}");
    match roots {
        Some(r) => println!("  {} [{}]", r.status, list(&r.roots)),
        None => println!("  not examined"),
    }
}

pub fn eval(b: &str, c: &str) -> anyhow::Result<u8> {
    let p = ParamPair::new(parse("b", b)?, parse("c", c)?);
    println!("b = {}", s(&p.b));
    println!("c = {}", s(&p.c));
    println!("degeneracy: {}", degeneracy_flags(&p));

    let rec = evaluate_pair(&p);
    if let Some(e) = &rec.detail.evector {
        println!("e-vector (generic path)");
        print_evector(e);
        match evaluate_closed_forms(&p) {
            Ok(closed) if &closed == e => println!("closed forms: agree"),
            Ok(closed) => {
                let bad: Vec<&str> = EVector::NAMES
                    .iter()
                    .zip(e.components().into_iter().zip(closed.components()))
                    .filter(|(_, (g, k))| g != k)
                    .map(|(n, _)| *n)
                    .collect();
                println!("closed forms: MISMATCH in {}", bad.join(", "));
                for (name, v) in EVector::NAMES.iter().zip(closed.components()) {
                    println!("  {name} = {} (closed form)", s(v));
                }
            }
            Err(err) => println!("closed forms: not evaluated ({err})"),
        }
        print_roots(
            "edge",
            &MonicCubic::from_symmetric(&e.e10, &e.e20, &e.e30),
            rec.detail.x.as_ref(),
        );
        print_roots(
            "diagonal",
            &MonicCubic::from_symmetric(&e.e01, &e.e02, &e.e03),
            rec.detail.d.as_ref(),
        );
    }
    if !rec.detail.attempts.is_empty() {
        println!("pairings (x ascending, d permuted)");
        for a in &rec.detail.attempts {
            println!(
                "  {} {:?} d = [{}] {}",
                a.permutation,
                PERMUTATIONS[a.permutation],
                list(&a.assigned_d()),
                if a.satisfied {
                    "satisfies e21, e11, e12"
                } else {
                    "rejected"
                }
            );
        }
    }
    if let Some(t) = &rec.detail.candidate {
        println!(
            "candidate x = [{}] d = [{}] L = {}",
            list(&t.x),
            list(&t.d),
            s(&t.l)
        );
    }
    if let Some(note) = &rec.detail.note {
        println!("note: {note}");
    }
    println!("outcome: {}", rec.outcome);
    Ok(if rec.outcome == Outcome::Unresolved {
        EXIT_UNRESOLVED
    } else {
        0
    })
}

pub fn verify_tuple(values: &[String]) -> anyhow::Result<u8> {
    const LABELS: [&str; 7] = ["x1", "x2", "x3", "d1", "d2", "d3", "L"];
    let v = LABELS
        .iter()
        .zip(values)
        .map(|(l, x)| parse(l, x))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let t = CuboidCandidate::new(
        [v[0].clone(), v[1].clone(), v[2].clone()],
        [v[3].clone(), v[4].clone(), v[5].clone()],
        v[6].clone(),
    );
    println!("x = [{}] d = [{}] L = {}", list(&t.x), list(&t.d), s(&t.l));
    if !t.is_positive() {
        println!("warning: degenerate tuple, some entries are not positive");
    }

    let cuboid = cuboid_residuals(&t);
    println!("cuboid system");
    let labels = [
        "x1² + x2² + x3² − L²",
        "x2² + x3² − d1²",
        "x3² + x1² − d2²",
        "x1² + x2² − d3²",
    ];
    for (label, r) in labels.iter().zip(&cuboid) {
        println!("  {label:<22} {}", s(r));
    }
    println!("factor system");
    for (k, r) in factor_residuals(&t).iter().enumerate() {
        println!("  f{} {}", k + 1, s(r));
    }
    let e = elementary_values(&t);
    println!("e-vector");
    print_evector(&e);
    println!("e-form residuals");
    for (k, r) in eform_residuals(&e, &t.l).iter().enumerate() {
        if k < 8 {
            println!("  E{} {}", k + 1, s(r));
        } else {
            println!("  reduced {}", s(r));
        }
    }

    if cuboid.iter().all(Zero::is_zero) {
        println!("cuboid system: satisfied");
        Ok(0)
    } else {
        println!("cuboid system: NOT satisfied");
        Ok(EXIT_NOT_A_CUBOID)
    }
}
