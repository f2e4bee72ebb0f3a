//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

mod common;

use std::process::{Command, ExitCode, Stdio};
use std::time::{Duration, Instant};

use common::{q, rng, single};
use jacobi_core::enumerate::enumerate;
use jacobi_core::maps::{chi, chi_inverse, ends_relation, remove_circles, rho, sigma, theta, Root};
use jacobi_core::text::{parse, serialize};
use jacobi_core::tqft::{pair, TQFTVector};
use jacobi_core::weights::{check_data, eval_closed, eval_marked_graph, CircleRep, WeightData};
use jacobi_core::{Error, Frame, Graph, LinComb, QuotientSpace, Skeleton};
use rand::Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Check = fn() -> Result<Outcome, Error>;

fn criterion_1() -> Result<Outcome, Error> {
    let start = Instant::now();
    let closed = QuotientSpace::new(Frame::empty(), 1);
    let (d0, d1) = (closed.dim(0)?, closed.dim(1)?);
    let basis = closed.basis(1)?.basis();
    let spanned = basis.len() == 1 && Some(&basis[0]) == theta().terms().keys().next();
    let t = start.elapsed();
    Ok(outcome(
        d0 == 1 && d1 == 1 && spanned && t < Duration::from_secs(1),
        format!("dims {d0}, {d1}; degree one spanned by theta: {spanned}; {t:.2?}"),
    ))
}

fn criterion_2() -> Result<Outcome, Error> {
    let start = Instant::now();
    let mut cases = 0;
    for g in 1..=3 {
        let closed = QuotientSpace::new(Frame::skeleton(Skeleton::chain(g)), 2);
        let open = QuotientSpace::new(Frame::skeleton(Skeleton::intervals(g)), 2);
        for n in 0..=2 {
            for b in closed.basis(n)?.basis() {
                let x = single(closed.frame(), &b);
                if !closed.equal(&rho(&sigma(&x, Root::default())?, None)?, &x)? {
                    return Ok(outcome(false, format!("rho(sigma(x)) differs on genus {g}, degree {n}")));
                }
                cases += 1;
            }
            for b in open.basis(n)?.basis() {
                let x = single(open.frame(), &b);
                if !open.equal(&sigma(&rho(&x, None)?, Root::default())?, &x)? {
                    return Ok(outcome(false, format!("sigma(rho(x)) differs on {g} intervals, degree {n}")));
                }
                cases += 1;
            }
        }
    }
    let t = start.elapsed();
    Ok(outcome(t < Duration::from_secs(60), format!("{cases} basis elements; {t:.2?}")))
}

fn criterion_3() -> Result<Outcome, Error> {
    let start = Instant::now();
    let mut r = rng(2024);
    let mut cases = 0;
    for g in 1..=2 {
        let s = Skeleton::chain(g);
        let tree_edges = s.edges().len() - g;
        let frame = Frame::skeleton(s);
        let xs: Vec<Graph> = (0..=2).flat_map(|n| enumerate(&frame, n)).collect();
        let mut target: Option<QuotientSpace> = None;
        for _ in 0..15 {
            let x = single(&frame, &xs[r.gen_range(0..xs.len())]);
            let mut root = || Root {
                edge: r.gen_range(0..tree_edges),
                gap: r.gen_range(0..4),
            };
            let (a, b) = (root(), root());
            let (sa, sb) = (sigma(&x, a)?, sigma(&x, b)?);
            let target = target.get_or_insert_with(|| QuotientSpace::new(sa.frame().clone(), 2));
            if !target.equal(&sa, &sb)? {
                return Ok(outcome(false, format!("roots {a:?} and {b:?} disagree on genus {g}")));
            }
            cases += 1;
        }
    }
    let t = start.elapsed();
    Ok(outcome(cases >= 20 && t < Duration::from_secs(60), format!("{cases} random cases; {t:.2?}")))
}

fn criterion_4() -> Result<Outcome, Error> {
    let mut instances = 0;
    for g in 1..=3 {
        let frame = Frame::skeleton(Skeleton::intervals(g));
        let space = QuotientSpace::new(frame.clone(), 2);
        for n in 1..=2 {
            for d in enumerate(&frame, n) {
                for leg in 0..d.legs() {
                    if !space.normal_form(&ends_relation(&frame, &d, leg)?)?.is_zero() {
                        return Ok(outcome(false, format!("nonzero instance on {g} intervals")));
                    }
                    instances += 1;
                }
            }
        }
    }
    Ok(outcome(true, format!("{instances} instances reduce to zero")))
}

fn criterion_5() -> Result<Outcome, Error> {
    let x = parse(
        "skeleton: C:o I:x\n1 ; legs a@o:0 b@o:1 c@o:2 d@o:3 p@x:0 r@x:1 s@x:2 t@x:3 ; edges a-p b-r c-s d-t",
    )?;
    let expected = parse(
        "skeleton: I:x
         1 ; legs p@x:0 r@x:1 s@x:2 t@x:3 ; edges p-r s-t
         1 ; legs p@x:0 r@x:1 s@x:2 t@x:3 ; edges p-s r-t
         1 ; legs p@x:0 r@x:1 s@x:2 t@x:3 ; edges p-t r-s",
    )?;
    let three = remove_circles(&x, 2)? == expected;
    let short = parse("skeleton: C:o I:x\n1 ; legs a@o:0 b@o:1 p@x:0 r@x:1 ; edges a-p b-r")?;
    let vanishes = remove_circles(&short, 2)?.is_zero();
    Ok(outcome(
        three && vanishes,
        format!("three pairings: {three}; fewer legs vanish: {vanishes}"),
    ))
}

fn criterion_6() -> Result<Outcome, Error> {
    let mut checked = 0;
    for g in 1..=2 {
        let marked = QuotientSpace::new(Frame::Marked(g), 2);
        let open = QuotientSpace::new(Frame::skeleton(Skeleton::intervals(g)), 2);
        for n in 0..=2 {
            let (a, b) = (marked.dim(n)?, open.dim(n)?);
            if a != b {
                return Ok(outcome(false, format!("g={g} n={n}: {a} labelled vs {b} on intervals")));
            }
            for basis in marked.basis(n)?.basis() {
                let y = single(&Frame::Marked(g), &basis);
                if !marked.equal(&chi_inverse(&chi(&y)?, &open, &marked)?, &y)? {
                    return Ok(outcome(false, format!("chi_inverse(chi(y)) differs, g={g} n={n}")));
                }
                checked += 1;
            }
        }
    }
    Ok(outcome(true, format!("dimensions agree; {checked} basis elements round trip")))
}

fn levi_civita(i: usize, j: usize, k: usize) -> i64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

fn epsilon_oracle(g: &Graph) -> i64 {
    let edges = g.edge_list();
    let mut idx = vec![0usize; g.half_edges()];
    let mut total = 0;
    for state in 0..3usize.pow(edges.len() as u32) {
        let mut s = state;
        for &(a, b) in &edges {
            idx[a] = s % 3;
            idx[b] = s % 3;
            s /= 3;
        }
        total += (0..g.verts())
            .map(|v| levi_civita(idx[3 * v], idx[3 * v + 1], idx[3 * v + 2]))
            .product::<i64>();
    }
    total
}

fn criterion_7() -> Result<Outcome, Error> {
    let so3 = WeightData::preset("so3")?;
    let report = check_data(&so3, 3, None)?;
    let th = theta();
    let sq = th.disjoint_union(&th)?;
    let one = so3.ring().one();
    let v1 = eval_closed(&th, &so3)?;
    let v2 = eval_closed(&sq, &so3)?;
    let o1 = epsilon_oracle(th.terms().keys().next().unwrap());
    let o2 = epsilon_oracle(sq.terms().keys().next().unwrap());
    let ok = report.all_zero() && v1 == one.scale(&q(6)) && v2 == one.scale(&q(36)) && o1 == 6 && o2 == 36;
    Ok(outcome(
        ok,
        format!(
            "{} instances, {} nonzero; theta {} (oracle {o1}); theta^2 {} (oracle {o2})",
            report.instances(),
            report.failures(),
            so3.ring().display(&v1),
            so3.ring().display(&v2)
        ),
    ))
}

fn criterion_8() -> Result<Outcome, Error> {
    let so3 = WeightData::preset("so3")?;
    let adj = CircleRep::adjoint(&so3)?;
    let report = check_data(&so3, 2, Some(&adj))?;
    let stu: Vec<_> = report.lines.iter().filter(|l| l.kind == "STU").collect();
    let instances: usize = stu.iter().map(|l| l.instances).sum();
    let failures: usize = stu.iter().map(|l| l.failures.len()).sum();
    Ok(outcome(
        instances > 0 && failures == 0,
        format!("{instances} STU instances on a circle, {failures} nonzero"),
    ))
}

fn criterion_9() -> Result<Outcome, Error> {
    let closed = QuotientSpace::new(Frame::empty(), 3);
    let unit = LinComb::unit(Frame::empty());
    let v0 = TQFTVector::vacuum(0);
    let v1 = TQFTVector::vacuum(1);
    let empty_genus_zero = pair(&v0, &v0, 0, None, &closed)? == unit;
    let empty_genus_one = pair(&v1, &v1, 1, None, &closed)?;

    let chord = TQFTVector::new(parse("skeleton: gamma1\n1 ; legs a@c1:0 b@c1:1 ; edges a-b")?)?;
    let got = pair(&chord, &v1, 1, None, &closed)?;
    let chord_is_theta = got == theta();

    let frame = Frame::skeleton(Skeleton::chain(1));
    let xs: Vec<Graph> = (0..=2).flat_map(|n| enumerate(&frame, n)).collect();
    let th = theta();
    let mut r = rng(9);
    let mut pairs = 0;
    let mut equivariant = true;
    while pairs < 10 {
        let a = single(&frame, &xs[r.gen_range(0..xs.len())]);
        let b = single(&frame, &xs[r.gen_range(0..xs.len())]);
        if a.max_degree() + b.max_degree() > 3 {
            continue;
        }
        let base = match pair(&TQFTVector::new(a.clone())?, &TQFTVector::new(b.clone())?, 1, None, &closed) {
            Ok(p) => p,
            Err(Error::Unsupported(_)) => continue,
            Err(e) => return Err(e),
        };
        let c = q(-7) / q(2);
        let scaled = pair(&TQFTVector::new(a.scale(&c))?, &TQFTVector::new(b.clone())?, 1, None, &closed)?;
        let moved = pair(&TQFTVector::new(th.disjoint_union(&a)?)?, &TQFTVector::new(b.clone())?, 1, None, &closed)?;
        let moved2 = pair(&TQFTVector::new(a)?, &TQFTVector::new(th.disjoint_union(&b)?)?, 1, None, &closed)?;
        let expected = closed.normal_form(&th.disjoint_union(&base)?)?;
        equivariant &= scaled == base.scale(&c) && moved == expected && moved2 == expected;
        pairs += 1;
    }
    let shape = match got.terms().iter().next() {
        Some((g, c)) if got.len() == 1 => format!("{c} x graph with {} vertices and {} free loops", g.verts(), g.loops()),
        _ => serialize(&got).replace('\n', " / "),
    };
    Ok(outcome(
        empty_genus_zero && chord_is_theta && equivariant,
        format!(
            "<empty,empty> on genus 0 is the unit: {empty_genus_zero} (genus 1, n=1: {}); \
             <chord,empty> on genus 1, n=1 is theta: {chord_is_theta} (got {shape}); \
             bilinear and theta-equivariant on {pairs} random pairs: {equivariant}",
            if empty_genus_one.is_zero() { "0" } else { "nonzero" }
        ),
    ))
}

fn swap_legs(g: &Graph, a: usize, b: usize) -> Graph {
    let legs: Vec<(u16, i64)> = g
        .keys()
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, if i == a { b } else if i == b { a } else { i } as i64))
        .collect();
    let partner: Vec<usize> = g.partner().iter().map(|&p| p as usize).collect();
    Graph::assemble(g.verts(), &legs, &partner, g.loops()).expect("same matching")
}

fn criterion_10() -> Result<Outcome, Error> {
    let w = WeightData::preset("sp2-toy")?;
    let frame = Frame::Marked(2);
    let pool: Vec<Graph> = (1..=3)
        .flat_map(|n| enumerate(&frame, n))
        .filter(|g| (0..2).any(|k| g.legs_on(k).len() >= 2))
        .collect();
    let mut r = rng(10);
    let mut components = 0;
    for _ in 0..10 {
        let g = &pool[r.gen_range(0..pool.len())];
        let k = if g.legs_on(0).len() >= 2 { 0 } else { 1 };
        let legs = g.legs_on(k);
        let a = r.gen_range(legs.clone());
        let b = (legs.start..legs.end).find(|&b| b != a).unwrap();
        let t = eval_marked_graph(&w, g, 2)?;
        if eval_marked_graph(&w, &swap_legs(g, a, b), 2)? != t {
            return Ok(outcome(false, "relabelled legs changed the tensor"));
        }
        for ((counts, idx), v) in t.entries() {
            let mut other = idx.clone();
            other.swap(a, b);
            if t.entries().get(&(counts.clone(), other)) != Some(&v.neg()) {
                return Ok(outcome(false, format!("component {idx:?} does not flip sign")));
            }
            components += 1;
        }
    }
    Ok(outcome(components > 0, format!("10 graphs, {components} components flip sign")))
}

fn run_cli(args: &[&str], stdin: &str) -> Vec<u8> {
    use std::io::Write;
    let mut child = Command::new(env!("CARGO_BIN_EXE_jacobi"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    let mut bytes = out.status.code().unwrap_or(-1).to_string().into_bytes();
    bytes.extend(out.stdout);
    bytes.extend(out.stderr);
    bytes
}

fn criterion_11() -> Result<Outcome, Error> {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let a = dir.join("acceptance-chord.jd");
    let v = dir.join("acceptance-vacuum.jd");
    std::fs::write(&a, "skeleton: gamma1\n1 ; legs a@c1:0 b@c1:1 ; edges a-b\n").unwrap();
    std::fs::write(&v, "skeleton: gamma1\n1\n").unwrap();
    let (a, v) = (a.to_str().unwrap().to_string(), v.to_str().unwrap().to_string());
    let two = "skeleton: I:x1 I:x2\n1 ; legs a@x1:0 b@x2:0 c@x1:1 d@x2:1 ; edges a-d b-c\n";
    let runs: Vec<(Vec<&str>, &str)> = vec![
        (vec!["dim", "--skeleton", "empty", "--degree", "1"], ""),
        (vec!["--json", "dim", "--skeleton", "gamma2", "--degree", "2"], ""),
        (vec!["map", "--kind", "rho"], two),
        (vec!["map", "--kind", "sigma", "--root", "s1:1"], "skeleton: gamma2\n1 ; legs a@s1:0 b@c2:0 ; edges a-b\n"),
        (vec!["map", "--kind", "iota", "--n", "2"],
         "skeleton: C:o I:x\n1 ; legs a@o:0 b@o:1 c@o:2 d@o:3 p@x:0 r@x:1 s@x:2 t@x:3 ; edges a-p b-r c-s d-t\n"),
        (vec!["map", "--kind", "chi-inv"], two),
        (vec!["check", "--data", "so3", "--degree", "3", "--rep", "adjoint"], ""),
        (vec!["gen", "--theta"], ""),
        (vec!["pair", "--n", "1", &a, &v], ""),
        (vec!["eval", "--data", "sp2-toy"], "marked: g=2\n1 ; vertices u ; legs a@1 b@1 c@2 ; edges u.0-a u.1-b u.2-c\n"),
    ];
    for (args, input) in &runs {
        if run_cli(args, input) != run_cli(args, input) {
            return Ok(outcome(false, format!("`jacobi {}` differs between runs", args.join(" "))));
        }
    }
    Ok(outcome(true, format!("{} commands byte-identical across two runs", runs.len())))
}

fn main() -> ExitCode {
    let checks: [(&str, Check); 11] = [
        ("1 closed dimensions in degrees 0 and 1", criterion_1),
        ("2 sigma and rho are inverse", criterion_2),
        ("3 sigma is independent of the root", criterion_3),
        ("4 end relation vanishes on intervals", criterion_4),
        ("5 circle removal", criterion_5),
        ("6 chi is bijective", criterion_6),
        ("7 so3 data satisfies the relations", criterion_7),
        ("8 STU on circles under the adjoint", criterion_8),
        ("9 pairing", criterion_9),
        ("10 labelled antisymmetry", criterion_10),
        ("11 determinism", criterion_11),
    ];
    let mut failed = 0;
    for (name, f) in checks {
        let o = match f() {
            Ok(o) => o,
            Err(e) => outcome(false, format!("error: {e}")),
        };
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.pass as usize;
    }
    println!("{} of 11 criteria pass", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
