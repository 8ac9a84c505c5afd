//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use enhanced_orbits::canonical::{
    build_closed, build_nilpotent, representative_from_invariants, seed_signature, ClosedSeed,
    EigenBlock, NilpotentSeed, Signature,
};
use enhanced_orbits::classify::{
    descend, is_closed, mvw_stabilizer_witness, predicted_stabilizer, seed_stabilizer,
};
use enhanced_orbits::invariants::{invariant_jacobian_rank, quotient_map, InvariantVector};
use enhanced_orbits::linalg::jordan::reduced_char_poly;
use enhanced_orbits::linalg::{jordan_chevalley, Mat, Scalar};
use enhanced_orbits::oracle::{degeneration_probe, invariance_suite};
use enhanced_orbits::rep::{
    act, cyclic_span, lie_stabilizer_dim, EnhancedPoint, Group, Kind, MvwElement,
};
use rand::{Rng, SeedableRng};
use rand_pcg::Pcg32;

type Criterion<'a> = (
    &'static str,
    Option<Duration>,
    Box<dyn FnOnce() -> Outcome + 'a>,
);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(errors: &[String], summary: String) -> Outcome {
        let mut detail = summary;
        for e in errors.iter().take(5) {
            detail.push_str("\n      ");
            detail.push_str(e);
        }
        if errors.len() > 5 {
            detail.push_str(&format!("\n      … {} more", errors.len() - 5));
        }
        Outcome {
            pass: errors.is_empty(),
            detail,
        }
    }
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn grid() -> Vec<Scalar> {
    ints(&[-1, 1, 2])
}

fn timed(budget: Option<Duration>, f: impl FnOnce() -> Outcome) -> (Outcome, Duration) {
    let start = Instant::now();
    let mut out = f();
    let took = start.elapsed();
    if let Some(limit) = budget {
        if took > limit {
            out.pass = false;
            out.detail
                .push_str(&format!("; over the {}s budget", limit.as_secs()));
        }
    }
    (out, took)
}

/// Every closed seed of rank `n` whose nilpotent parts use `grid` and whose
/// eigenblocks use distinct eigenvalues from a small pool.
fn closed_seeds(kind: Kind, n: usize, grid: &[Scalar]) -> Vec<ClosedSeed> {
    let pool = if kind == Kind::Gl {
        ints(&[0, 1])
    } else {
        ints(&[1, 2])
    };
    let mut out = Vec::new();
    let zero_ranks: Vec<usize> = if kind == Kind::Gl {
        vec![0]
    } else {
        (0..=n).collect()
    };
    for n0 in zero_ranks {
        let zeros: Vec<Option<NilpotentSeed>> = if kind == Kind::Gl {
            vec![None]
        } else {
            NilpotentSeed::enumerate(kind, n0, grid)
                .into_iter()
                .map(Some)
                .collect()
        };
        for sizes in block_sizes(n - n0, pool.len()) {
            let per_block: Vec<Vec<EigenBlock>> = sizes
                .iter()
                .enumerate()
                .filter(|(_, &s)| s > 0)
                .map(|(i, &s)| {
                    NilpotentSeed::enumerate(Kind::Gl, s, grid)
                        .into_iter()
                        .map(|seed| EigenBlock {
                            eigenvalue: pool[i].clone(),
                            seed,
                        })
                        .collect()
                })
                .collect();
            for blocks in product(&per_block) {
                for z in &zeros {
                    out.push(
                        ClosedSeed::new(kind, n, z.clone(), blocks.clone())
                            .expect("enumerated seeds are valid"),
                    );
                }
            }
        }
    }
    out
}

/// Ways to write `total` as an ordered sum of `slots` nonnegative parts.
fn block_sizes(total: usize, slots: usize) -> Vec<Vec<usize>> {
    if slots == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in block_sizes(total - first, slots - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn product<T: Clone>(lists: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut acc: Vec<Vec<T>> = vec![vec![]];
    for list in lists {
        acc = acc
            .iter()
            .flat_map(|prefix| {
                list.iter().map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x.clone());
                    v
                })
            })
            .collect();
    }
    acc
}

fn random_rational(rng: &mut Pcg32, span: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(-span..=span), rng.gen_range(1..=3))
}

fn random_nonzero(rng: &mut Pcg32, span: i64) -> Scalar {
    loop {
        let c = random_rational(rng, span);
        if !c.is_zero() {
            return c;
        }
    }
}

fn invariance() -> Outcome {
    let mut errors = Vec::new();
    let mut cases = 0;
    for kind in Kind::STANDARD {
        for n in 1..=4 {
            let r = invariance_suite(&Group::standard(kind, n), 200, 1000 * n as u64);
            cases += r.cases;
            errors.extend(
                r.failures
                    .iter()
                    .map(|f| format!("{}: {} {}", r.suite, f.case, f.detail)),
            );
        }
    }
    Outcome::new(
        &errors,
        format!("{cases} element/point pairs, both components"),
    )
}

fn maximal_seed(kind: Kind, n: usize, rng: &mut Pcg32) -> NilpotentSeed {
    let count = enhanced_orbits::canonical::seed::coefficient_count(kind, n);
    loop {
        let coeffs: Vec<Scalar> = (0..count).map(|_| random_rational(rng, 4)).collect();
        if let Ok(seed) = NilpotentSeed::new(kind, n, n, coeffs) {
            return seed;
        }
    }
}

fn generator_independence() -> Outcome {
    let mut errors = Vec::new();
    let mut rng = Pcg32::seed_from_u64(2);
    let mut observed = Vec::new();
    for kind in Kind::STANDARD {
        let mut ranks = Vec::new();
        for n in 1..=4 {
            let expected = if kind == Kind::Oodd { 2 * n + 1 } else { 2 * n };
            let mut seeds = vec![
                maximal_seed(kind, n, &mut rng),
                maximal_seed(kind, n, &mut rng),
            ];
            let ones =
                vec![Scalar::one(); enhanced_orbits::canonical::seed::coefficient_count(kind, n)];
            seeds.push(NilpotentSeed::new(kind, n, n, ones).unwrap());
            for seed in seeds {
                let rank = invariant_jacobian_rank(&build_nilpotent(&seed).unwrap());
                if rank != expected {
                    errors.push(format!("{seed}: rank {rank}, expected {expected}"));
                }
                ranks.push(rank);
            }
        }
        ranks.dedup();
        observed.push(format!("{kind} {ranks:?}"));
    }
    Outcome::new(
        &errors,
        format!("ranks for n = 1..4: {}", observed.join(", ")),
    )
}

fn cyclic_basis() -> Outcome {
    let mut errors = Vec::new();
    let mut rng = Pcg32::seed_from_u64(3);
    let mut cases = 0;
    for kind in [Kind::Sp, Kind::Oodd, Kind::Oeven] {
        for n in 1..=4 {
            for _ in 0..20 {
                cases += 1;
                let seed = maximal_seed(kind, n, &mut rng);
                let p = build_nilpotent(&seed).unwrap();
                let m = p.group().size();
                let span = cyclic_span(p.x(), p.u());
                let want = match kind {
                    Kind::Sp => 2 * n,
                    Kind::Oodd => 2 * n + 1,
                    _ => 2 * n - 1,
                };
                if span.dim != want {
                    errors.push(format!(
                        "{seed}: span dimension {}, expected {want}",
                        span.dim
                    ));
                    continue;
                }
                let basis = span.basis();
                let mut cols: Vec<Vec<Scalar>> =
                    (0..basis.cols()).map(|j| basis.column(j)).collect();
                let image = p.x() * &basis;
                cols.extend((0..image.cols()).map(|j| image.column(j)));
                if Mat::from_columns(m, &cols).rank() != span.dim {
                    errors.push(format!("{seed}: X does not preserve the span"));
                }
                if kind == Kind::Oeven {
                    let pairing = &basis.transpose() * p.group().form().unwrap();
                    let gram = &pairing * &basis;
                    if gram.determinant().unwrap().is_zero() {
                        errors.push(format!("{seed}: restricted form is degenerate"));
                    }
                    let perp = m - pairing.rank();
                    if perp != 1 {
                        errors.push(format!("{seed}: orthogonal complement of dimension {perp}"));
                    }
                }
            }
        }
    }
    Outcome::new(&errors, format!("{cases} random maximal points"))
}

fn stabilizers() -> Outcome {
    let mut errors = Vec::new();
    let (mut cases, mut refined) = (0, 0);
    for kind in Kind::STANDARD {
        for n in 0..=3 {
            for seed in NilpotentSeed::enumerate(kind, n, &grid()) {
                cases += 1;
                let actual = lie_stabilizer_dim(&build_nilpotent(&seed).unwrap());
                let predicted = seed_stabilizer(&seed).unwrap();
                if predicted != predicted_stabilizer(kind, n, seed.k).unwrap() {
                    refined += 1;
                }
                if actual != predicted.dim() {
                    errors.push(format!(
                        "{seed}: stabilizer dimension {actual}, predicted {predicted}"
                    ));
                }
            }
        }
    }
    Outcome::new(
        &errors,
        format!("{cases} seeds; {refined} odd orthogonal k = 0 seeds with anisotropic u use O_2n"),
    )
}

fn non_closed_family() -> Vec<(String, EnhancedPoint)> {
    let mut out = Vec::new();
    for n in 1..=3 {
        let zero = vec![Scalar::zero(); n];
        let p = EnhancedPoint::new(Group::gl(n), Mat::jordan(n), zero.clone(), Some(zero)).unwrap();
        out.push((format!("gl {n} (J_{n}, 0, 0)"), p));
    }
    for kind in [Kind::Oodd, Kind::Oeven] {
        for n in 1..=3 {
            let g = Group::standard(kind, n);
            let m = g.size();
            let off = if kind == Kind::Oodd { 1 } else { 0 };
            let mut u = vec![Scalar::zero(); m];
            u[off] = Scalar::one();
            out.push((
                format!("{kind} {n} u = e_{}", off + 1),
                EnhancedPoint::new(g.clone(), Mat::zeros(m, m), u, None).unwrap(),
            ));
            let mut u = vec![Scalar::zero(); m];
            u[off] = Scalar::from_int(2);
            if n >= 2 {
                u[off + 1] = Scalar::from_int(-1);
            }
            out.push((
                format!("{kind} {n} isotropic u"),
                EnhancedPoint::new(g, Mat::zeros(m, m), u, None).unwrap(),
            ));
        }
    }
    let mut rng = Pcg32::seed_from_u64(5);
    for n in 1..=3 {
        let m = 2 * n;
        let mut u = vec![Scalar::zero(); m];
        u[n] = random_nonzero(&mut rng, 3);
        out.push((
            format!("sp {n} u = c·e_{}", n + 1),
            EnhancedPoint::new(Group::sp(n), Mat::zeros(m, m), u, None).unwrap(),
        ));
        let mut u = vec![Scalar::zero(); m];
        for c in u.iter_mut().take(n) {
            *c = random_nonzero(&mut rng, 3);
        }
        out.push((
            format!("sp {n} lagrangian u"),
            EnhancedPoint::new(Group::sp(n), Mat::zeros(m, m), u, None).unwrap(),
        ));
    }
    out
}

fn closedness(closed: &[(Kind, usize, Vec<ClosedSeed>)]) -> Outcome {
    let mut errors = Vec::new();
    let mut cases = 0;
    for (_, _, seeds) in closed {
        for seed in seeds {
            cases += 1;
            match is_closed(&build_closed(seed).unwrap()) {
                Ok(r) if r.is_closed => {}
                Ok(r) => errors.push(format!(
                    "{seed:?}: orbit {} vs minimal {}",
                    r.orbit_dim, r.minimal_orbit_dim
                )),
                Err(e) => errors.push(format!("{seed:?}: {e}")),
            }
        }
    }
    let mut rng = Pcg32::seed_from_u64(6);
    for n in 1..=3 {
        let m = 2 * n;
        let u: Vec<Scalar> = (0..m).map(|_| random_nonzero(&mut rng, 3)).collect();
        let p = EnhancedPoint::new(Group::sp(n), Mat::zeros(m, m), u, None).unwrap();
        if is_closed(&p).map_or(true, |r| r.is_closed) {
            errors.push(format!("sp {n} generic u: not classified as non-closed"));
        }
    }
    let family = non_closed_family();
    for (name, p) in &family {
        match is_closed(p) {
            Ok(r) if !r.is_closed => {}
            Ok(_) => errors.push(format!("{name}: classified as closed")),
            Err(e) => errors.push(format!("{name}: {e}")),
        }
        if degeneration_probe(p, 2).is_none() {
            errors.push(format!("{name}: no degeneration with exponents in [-2, 2]"));
        }
    }
    Outcome::new(
        &errors,
        format!(
            "{cases} canonical closed seeds, {} non-closed points with probe witnesses",
            family.len()
        ),
    )
}

fn separation() -> Outcome {
    let mut errors = Vec::new();
    let (mut cases, mut classes) = (0, 0);
    for kind in Kind::STANDARD {
        for n in 0..=3 {
            let mut by_sig: HashMap<Signature, InvariantVector> = HashMap::new();
            let mut by_iv: HashMap<InvariantVector, Signature> = HashMap::new();
            for seed in NilpotentSeed::enumerate(kind, n, &ints(&[-2, -1, 1, 2])) {
                cases += 1;
                let sig = seed_signature(&seed).unwrap();
                let iv = quotient_map(&build_nilpotent(&seed).unwrap());
                if by_sig
                    .insert(sig.clone(), iv.clone())
                    .is_some_and(|prev| prev != iv)
                {
                    errors.push(format!(
                        "{seed}: signature {sig} shared by different invariants"
                    ));
                }
                if by_iv
                    .insert(iv, sig.clone())
                    .is_some_and(|prev| prev != sig)
                {
                    errors.push(format!("{seed}: invariants shared by different signatures"));
                }
            }
            classes += by_sig.len();
        }
    }
    Outcome::new(&errors, format!("{cases} seeds in {classes} classes"))
}

fn round_trip() -> Outcome {
    let mut errors = Vec::new();
    let mut cases = 0;
    for kind in Kind::STANDARD {
        for n in 0..=3 {
            let group = Group::standard(kind, n);
            for seed in NilpotentSeed::enumerate(kind, n, &ints(&[-2, -1, 1, 2])) {
                cases += 1;
                let iv = quotient_map(&build_nilpotent(&seed).unwrap());
                match representative_from_invariants(&group, &iv) {
                    Ok(rep) if quotient_map(&rep) == iv => {}
                    Ok(rep) => {
                        errors.push(format!("{seed}: representative {rep} has other invariants"))
                    }
                    Err(e) => errors.push(format!("{seed}: {e}")),
                }
            }
        }
    }
    let target = InvariantVector::new(Kind::Sp, 1, ints(&[0]), ints(&[2])).unwrap();
    match representative_from_invariants(&Group::sp(1), &target) {
        Ok(rep)
            if quotient_map(&rep) == target && rep.u().iter().any(|c| c.radicand() == Some(2)) => {}
        Ok(rep) => errors.push(format!(
            "sp 1 with η_1 = 2: unexpected representative {rep}"
        )),
        Err(e) => errors.push(format!("sp 1 with η_1 = 2: {e}")),
    }
    Outcome::new(
        &errors,
        format!("{cases} grid invariant vectors plus sp 1 η_1 = 2 over Q(√2)"),
    )
}

fn descent(closed: &[(Kind, usize, Vec<ClosedSeed>)]) -> Outcome {
    let mut errors = Vec::new();
    let (mut cases, mut printed_holds, mut printed_fails, mut cyclic_fails) = (0, 0, 0, 0);
    for (kind, n, seeds) in closed {
        for seed in seeds {
            cases += 1;
            let r = match descend(seed) {
                Ok(r) => r,
                Err(e) => {
                    errors.push(format!("{seed:?}: {e}"));
                    continue;
                }
            };
            let p = build_closed(seed).unwrap();
            let normal = lie_stabilizer_dim(&p) + p.group().module_dim();
            if r.enhanced_dim + 2 * r.mult_k + r.gamma != normal {
                errors.push(format!(
                    "{seed:?}: {} + 2·{} + {} ≠ {normal}",
                    r.enhanced_dim, r.mult_k, r.gamma
                ));
            }
            let gl_sum: usize = r.gl_ranks().iter().sum();
            let l = r.form_rank(seed);
            match kind {
                Kind::Gl if r.mult_k + gl_sum != *n => {
                    errors.push(format!("{seed:?}: k + Σk_i = {}", r.mult_k + gl_sum))
                }
                Kind::Sp if r.mult_k + l + gl_sum != *n => errors.push(format!(
                    "{seed:?}: k + l + Σk_i = {}",
                    r.mult_k + l + gl_sum
                )),
                Kind::Oodd | Kind::Oeven => {
                    let m = p.group().size();
                    let size = r.factors[0].size();
                    if 2 * r.mult_k + size + 2 * gl_sum + r.gamma != m {
                        errors.push(format!("{seed:?}: 2k + l + 2Σk_i + γ ≠ {m}"));
                    }
                    if r.mult_k + size + 2 * gl_sum + r.gamma == m {
                        printed_holds += 1;
                    } else {
                        printed_fails += 1;
                    }
                    if 2 * r.mult_k + 2 * gl_sum + r.gamma + r.cyclic_dim != m {
                        cyclic_fails += 1;
                    }
                }
                _ => {}
            }
        }
    }
    let summary = format!(
        "{} closed seeds; orthogonal seeds satisfy 2k + l + 2Σk_i + γ = m; \
         k + l + 2Σk_i + γ = m holds on {} and fails on {} (logged); \
         2k + 2Σk_i + γ + dim V = m with V the cyclic span fails on {} (logged)",
        cases, printed_holds, printed_fails, cyclic_fails
    );
    Outcome::new(&errors, summary)
}

fn witness(closed: &[(Kind, usize, Vec<ClosedSeed>)]) -> Outcome {
    let mut errors = Vec::new();
    let mut cases = 0;
    for (_, _, seeds) in closed.iter().filter(|(k, _, _)| *k == Kind::Gl) {
        for seed in seeds {
            cases += 1;
            let p = build_closed(seed).unwrap();
            match mvw_stabilizer_witness(seed) {
                Ok(e) => {
                    if act(&e, &p).unwrap() != p {
                        errors.push(format!("{seed:?}: witness moves the point"));
                    }
                    if e.compose(&e, p.group()).unwrap() != MvwElement::identity(p.group()) {
                        errors.push(format!("{seed:?}: witness is not an involution"));
                    }
                }
                Err(e) => errors.push(format!("{seed:?}: {e}")),
            }
        }
    }
    Outcome::new(&errors, format!("{cases} GL closed seeds"))
}

fn random_matrix(rng: &mut Pcg32, structured: bool) -> Mat {
    if !structured {
        return Mat::from_fn(5, 5, |_, _| random_rational(rng, 3));
    }
    let eigen = ints(&[-1, 0, 1, 2]);
    let mut j = Mat::zeros(5, 5);
    let mut c = eigen[rng.gen_range(0..eigen.len())].clone();
    for i in 0..5 {
        j[(i, i)] = c.clone();
        if i + 1 < 5 {
            if rng.gen_bool(0.5) {
                j[(i, i + 1)] = Scalar::one();
            } else {
                c = eigen[rng.gen_range(0..eigen.len())].clone();
            }
        }
    }
    loop {
        let g = Mat::from_fn(5, 5, |_, _| Scalar::from_int(rng.gen_range(-2..=2)));
        if let Ok(inv) = g.inverse() {
            return &(&g * &j) * &inv;
        }
    }
}

fn jordan_chevalley_check() -> Outcome {
    let mut errors = Vec::new();
    let mut rng = Pcg32::seed_from_u64(10);
    for t in 0..500 {
        let x = random_matrix(&mut rng, t % 2 == 1);
        let (s, n) = match jordan_chevalley(&x) {
            Ok(split) => split,
            Err(e) => {
                errors.push(format!("matrix {t}: {e}"));
                continue;
            }
        };
        if &s + &n != x {
            errors.push(format!("matrix {t}: s + n ≠ x"));
        }
        if s.commutator(&n) != Mat::zeros(5, 5) {
            errors.push(format!("matrix {t}: s and n do not commute"));
        }
        if !n.pow(5).is_zero() {
            errors.push(format!("matrix {t}: n is not nilpotent"));
        }
        if !reduced_char_poly(&x).eval_mat(&s).is_zero() {
            errors.push(format!("matrix {t}: s is not semisimple"));
        }
    }
    Outcome::new(
        &errors,
        "500 matrices, half with repeated eigenvalues".into(),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let closed: Vec<(Kind, usize, Vec<ClosedSeed>)> = Kind::STANDARD
        .into_iter()
        .flat_map(|kind| (0..=3).map(move |n| (kind, n, closed_seeds(kind, n, &grid()))))
        .collect();
    let criteria: Vec<Criterion> = vec![
        (
            "invariance",
            Some(Duration::from_secs(60)),
            Box::new(invariance),
        ),
        (
            "generator independence",
            None,
            Box::new(generator_independence),
        ),
        ("cyclic basis", None, Box::new(cyclic_basis)),
        ("stabilizers", None, Box::new(stabilizers)),
        ("closedness", None, Box::new(|| closedness(&closed))),
        ("orbit separation", None, Box::new(separation)),
        ("representative round trip", None, Box::new(round_trip)),
        ("descent bookkeeping", None, Box::new(|| descent(&closed))),
        ("twisted witness", None, Box::new(|| witness(&closed))),
        (
            "jordan-chevalley",
            Some(Duration::from_secs(30)),
            Box::new(jordan_chevalley_check),
        ),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let (out, took) = timed(budget, check);
        let status = if out.pass { "PASS" } else { "FAIL" };
        if !out.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} {name} ({:.2}s): {}",
            i + 1,
            took.as_secs_f64(),
            out.detail
        );
    }
    println!(
        "acceptance: {} of 10 passed in {:.1}s",
        10 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
