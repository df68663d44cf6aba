//! Acceptance suite: one line per criterion. Criteria 15 and 16 run only with
//! `--tier extended`, e.g.
//! `cargo test -p resint --test acceptance -- --tier extended`.

use std::path::PathBuf;
use std::sync::{mpsc, Arc};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use resint::cli::{parse_session, Session};
use resint::groebner::ideal::Ideal;
use resint::koszul::KoszulComplex;
use resint::module::ext::{canonical_module, cm_type, unmixedness_test};
use resint::module::fitting::fitting_ideal;
use resint::module::hilbert::binom;
use resint::module::{FreeModule, Matrix, Subquotient};
use resint::residual::{
    make_residual, random_coeff, random_form, random_section, syzygies, with_lifting, ResidualDatum,
};
use resint::ring::{Field, Monomial, Poly, PolyRing};
use resint::zplus::{disguised_residual, hd_structure_oracle, principal_extension, sym_power_direct, ZPlusComplex};

type Outcome = Result<String, String>;

fn fixture(name: &str) -> Session {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.resint"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    parse_session(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn id(s: &Session, name: &str) -> Ideal {
    s.ideal(name).unwrap().clone()
}

fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
    Ideal::new(r, gens.iter().map(|g| resint::ring::parse::parse_poly(r, g).unwrap()).collect())
}

fn show(i: &Ideal) -> String {
    format!("({})", i.minimalized().to_strings().join(", "))
}

fn check(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

/// Residual data used by the corpus criteria: generic sections of complete
/// intersections and of the perfect height-two ideal `(x^2, xy, y^2)`.
struct CorpusEntry {
    label: String,
    rd: ResidualDatum,
}

fn scm_corpus() -> Vec<CorpusEntry> {
    let r = PolyRing::standard(Field::Prime(32003), &["x", "y", "z"]);
    let cases: [(&[&str], &[i64], u64); 5] = [
        (&["x", "y"], &[2, 2], 1),
        (&["x", "y"], &[2, 2, 2], 2),
        (&["x", "y", "z"], &[2, 2, 2], 3),
        (&["x^2", "x*y", "y^2"], &[3, 3], 4),
        (&["x^2", "x*y", "y^2"], &[3, 3, 3], 5),
    ];
    cases
        .iter()
        .map(|(gens, degs, seed)| {
            let i = ideal(&r, gens);
            let sec = random_section(&i, degs, 20, *seed).expect("random section");
            CorpusEntry { label: format!("I=({}) degrees {:?}", gens.join(","), degs), rd: sec.datum }
        })
        .collect()
}

/// The residual fixtures plus the SCM corpus.
fn residual_corpus() -> Vec<CorpusEntry> {
    let mut out = scm_corpus();
    for (name, s) in [("linkage", 2), ("cyclic", 2), ("geometric", 2), ("generic_two_by_four", 3)] {
        let f = fixture(name);
        let rd = make_residual(&id(&f, "I"), &id(&f, "a"), s).unwrap();
        out.push(CorpusEntry { label: name.to_string(), rd });
    }
    out
}

fn c01() -> Outcome {
    let f = fixture("linkage");
    let rd = make_residual(&id(&f, "I"), &id(&f, "a"), 2).map_err(|e| e.to_string())?;
    let r = &f.ring;
    check(rd.j.equals(&ideal(r, &["x^2", "x*y", "y^2"])), format!("J = {}", show(&rd.j)))?;
    let rees = rd.a.product(&rd.i).colon(&rd.i.power(2));
    check(rees.equals(&ideal(r, &["x", "y"])), format!("(aI:I^2) = {}", show(&rees)))?;
    let c = rd.classify();
    check(c.is_algebraic && !c.is_arithmetic, format!("{c:?}"))?;
    let ann = sym_power_direct(&rd, 2).annihilator();
    check(ann.equals(&ideal(r, &["x", "y"])), format!("Ann Sym^2 = {}", show(&ann)))?;
    Ok("J = (x^2,xy,y^2), (aI:I^2) = (x,y), not arithmetic".into())
}

fn c02() -> Outcome {
    let f = fixture("generic_two_by_four");
    let (i, a) = (id(&f, "I"), id(&f, "a"));
    let rd = make_residual(&i, &a, 3).map_err(|e| e.to_string())?;
    check(rd.j.height() == 3, format!("ht J = {}", rd.j.height()))?;
    let hij = i.sum(&rd.j).height();
    check(hij >= 4, format!("ht(I+J) = {hij}"))?;
    check(a.equals(&i.intersect(&rd.j)), "a != I ∩ J")?;
    let kc = KoszulComplex::new(&f.ring, a.gens()).map_err(|e| e.to_string())?;
    let ann = kc.ann_homology(1).map_err(|e| e.to_string())?;
    check(ann.equals(&i), format!("Ann H_1(a) = {}", show(&ann)))?;
    check(!a.contains_ideal(&i), "(x1,x2) ⊆ a")?;
    Ok("geometric 3-residual, a = I ∩ J, Ann H_1(a) = (x1,x2) ⊄ a".into())
}

fn c03() -> Outcome {
    let f = fixture("degenerate");
    let a = id(&f, "a");
    let kc = KoszulComplex::new(&f.ring, a.gens()).map_err(|e| e.to_string())?;
    let ann = kc.ann_homology(1).map_err(|e| e.to_string())?;
    let y1 = Poly::var(&f.ring, 0);
    let not_radical = !a.radical_contains(&y1);
    let expected = ideal(&f.ring, &["y1", "y2"]);
    check(
        ann.equals(&expected) && not_radical,
        format!(
            "Ann H_1(a) = {} (expected (y1, y2)); y1 ∉ rad(a): {not_radical}; a is the ideal of 2-minors of \
             [[y3,0],[-y1,y2],[y2,-y1]], perfect of height 2, so H_1(a) ≅ ω_(R/a) is faithful on R/a",
            show(&ann)
        ),
    )?;
    Ok("Ann H_1(a) = (y1,y2), y1 ∉ rad(a)".into())
}

fn c04() -> Outcome {
    let f = fixture("split_blocks");
    let a = id(&f, "a");
    let kc = KoszulComplex::new(&f.ring, a.gens()).map_err(|e| e.to_string())?;
    let ann = kc.ann_homology(2).map_err(|e| e.to_string())?;
    check(ann.contains_ideal(&a), "a ⊄ Ann H_2(a)")?;
    check(ann.gens().iter().all(|g| a.radical_contains(g)), "a generator of Ann H_2(a) is not in rad(a)")?;
    check(a.gens().iter().all(|g| ann.radical_contains(g)), "rad(Ann) != rad(a)")?;
    // hand-derived (Künneth over the blocks {x,y} and {z,w})
    let recorded = ideal(&f.ring, &["x - y", "z - w"]);
    check(ann.equals(&recorded), format!("Ann H_2(a) = {}", show(&ann)))?;
    Ok("Ann H_2(a) = (x-y, z-w), same radical as a".into())
}

fn sparse_form(r: &Arc<PolyRing>, d: u32, rng: &mut ChaCha8Rng) -> Poly {
    let mut p = Poly::zero(r);
    for _ in 0..rng.gen_range(1..=2) {
        let mut m = Monomial::one();
        for _ in 0..d {
            m = m.mul(&Monomial::var(rng.gen_range(0..r.n()), &r.weights));
        }
        p = &p + &Poly::term(r, m, random_coeff(r, rng));
    }
    p
}

fn c05() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut nonzero = 0;
    let mut done = 0;
    while done < 10 {
        let n = rng.gen_range(2..=3);
        let r = PolyRing::standard(Field::Prime(32003), &["x", "y", "z"][..n]);
        let s = rng.gen_range(2..=3);
        let a: Vec<Poly> = (0..s).map(|_| sparse_form(&r, rng.gen_range(1..=3), &mut rng)).collect();
        let b = sparse_form(&r, rng.gen_range(1..=3), &mut rng);
        if a.iter().any(Poly::is_zero) || b.is_zero() {
            continue;
        }
        let rd = principal_extension(&b, &a).map_err(|e| e.to_string())?;
        let z = ZPlusComplex::assemble(&rd, 0).map_err(|e| e.to_string())?;
        let db = b.hdeg().unwrap() as i64;
        let colon = rd.a.colon_elem(&b);
        let h0 = z.homology(0).unwrap();
        let rq = Subquotient::quotient_ring(&colon);
        check((-2..15).all(|d| h0.hilbert_function(d) == rq.hilbert_function(d)), format!("H_0 != R/(a:b), sample {done}"))?;
        check(h0.annihilator().equals(&colon), format!("Ann H_0 != (a:b), sample {done}"))?;
        let kc = KoszulComplex::new(&r, &a).map_err(|e| e.to_string())?;
        for i in 1..=2.min(s) {
            let zh = z.homology(i).unwrap();
            let bh = kc.mult_image(i, &b).map_err(|e| e.to_string())?;
            let oracle = hd_structure_oracle(&rd, i).map_err(|e| e.to_string())?;
            // bH_i(a)((i+1) deg b)
            let shift = (i as i64 + 1) * db;
            check(
                (-4..16).all(|d| zh.hilbert_function(d) == bh.hilbert_function(d + shift)),
                format!("HF of H_{i} differs from bH_{i}(a) twisted by {shift}, sample {done}"),
            )?;
            check(
                (-4..16).all(|d| zh.hilbert_function(d) == oracle.hilbert_function(d + i as i64 * db)),
                format!("HF of H_{i} differs from the Koszul oracle, sample {done}"),
            )?;
            check(zh.annihilator().equals(&bh.annihilator()), format!("Ann H_{i} differs, sample {done}"))?;
            if !zh.is_zero() {
                nonzero += 1;
            }
        }
        done += 1;
    }
    Ok(format!("10 samples, {nonzero} nonzero homology modules compared"))
}

fn c06() -> Outcome {
    let r = PolyRing::standard(Field::Prime(32003), &["x", "y", "z"]);
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut done = 0;
    let mut redundant = 0;
    while done < 20 {
        let d = rng.gen_range(1..=2);
        let nf = rng.gen_range(1..=3);
        let f: Vec<Poly> = (0..nf).map(|_| random_form(&r, d, &mut rng)).collect();
        let s = nf + rng.gen_range(0..=1);
        let lifting: Vec<Vec<Poly>> =
            (0..nf).map(|_| (0..s).map(|_| Poly::constant(&r, random_coeff(&r, &mut rng))).collect()).collect();
        let a: Vec<Poly> =
            (0..s).map(|c| (0..nf).fold(Poly::zero(&r), |acc, j| &acc + &(&lifting[j][c] * &f[j]))).collect();
        let (ii, aa) = (Ideal::new(&r, f), Ideal::new(&r, a));
        if !aa.equals(&ii) {
            continue;
        }
        if s > nf {
            redundant += 1;
        }
        let rd = with_lifting(&ii, &aa, s, lifting).map_err(|e| e.to_string())?;
        for k in 0..=2.min(s) {
            let z = ZPlusComplex::assemble(&rd, k).map_err(|e| e.to_string())?;
            check(z.is_exact(), format!("not exact: k={k}, I={}", show(&ii)))?;
        }
        done += 1;
    }
    Ok(format!("20 cases ({redundant} with a redundant generator), k = 0,1,2"))
}

fn c07() -> Outcome {
    let mut checked = 0;
    for e in scm_corpus() {
        let rd = &e.rd;
        let n = rd.ring().n() as i64;
        let s = rd.s as i64;
        check(rd.a.minimalized().gens().len() == rd.s, format!("{}: μ(a) != s", e.label))?;
        let u = unmixedness_test(&rd.j);
        check(u.is_unmixed && u.profile == vec![s], format!("{}: unmixedness {:?}", e.label, u))?;
        for k in 0..=(s.min(s - rd.g + 2) as usize) {
            let z = ZPlusComplex::assemble(rd, k).map_err(|er| er.to_string())?;
            check(z.is_acyclic(), format!("{}: _{k}Z^+ not acyclic", e.label))?;
            let h0 = z.homology(0).unwrap();
            check(h0.depth() == Some(n - s), format!("{}: depth H_0(_{k}Z^+) = {:?}", e.label, h0.depth()))?;
            if k >= 1 {
                let sym = sym_power_direct(rd, k);
                check(sym.depth() == Some(n - s), format!("{}: depth Sym^{k} = {:?}", e.label, sym.depth()))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} complexes acyclic with Cohen-Macaulay H_0 of codimension s"))
}

/// Arithmetic members of the SCM corpus.
fn arithmetic_corpus() -> Vec<CorpusEntry> {
    scm_corpus().into_iter().filter(|e| e.rd.classify().is_arithmetic).collect()
}

fn c08() -> Outcome {
    let corpus = arithmetic_corpus();
    check(!corpus.is_empty(), "no arithmetic fixture in the corpus")?;
    for e in &corpus {
        let rd = &e.rd;
        let n = rd.ring().n() as i64;
        let k = (rd.s as i64 - rd.g + 1) as usize;
        let sym = sym_power_direct(rd, k);
        check(cm_type(&sym) == 1, format!("{}: type Sym^{k} = {}", e.label, cm_type(&sym)))?;
        check(sym.annihilator().equals(&rd.j), format!("{}: Ann Sym^{k} != J", e.label))?;
        let omega = canonical_module(&Subquotient::quotient_ring(&rd.j), rd.s);
        let shift = -n + rd.sigma();
        check(
            (0..=12).all(|d| omega.hilbert_function(d) == sym.hilbert_function(d + shift)),
            format!("{}: HF(ω) differs from HF(Sym^{k}({shift}))", e.label),
        )?;
    }
    Ok(format!("{} arithmetic fixtures: ω_(R/J) = Sym^(s-g+1)(I/a)(b+σ(a))", corpus.len()))
}

fn c09() -> Outcome {
    let mut rows = 0;
    for e in scm_corpus() {
        let rd = &e.rd;
        let (r, s, g) = (rd.r() as i64, rd.s as i64, rd.g);
        for k in 1..=(s - g + 1) {
            let t = cm_type(&sym_power_direct(rd, k as usize)) as i64;
            let bound = binom(r + s - g - k, r - 1);
            check(t <= bound, format!("{}: type Sym^{k} = {t} > {bound}", e.label))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} type bounds hold"))
}

fn c10() -> Outcome {
    let r = PolyRing::standard(Field::Prime(32003), &["x", "y", "z"]);
    for (gens, degs) in [(&["x", "y"][..], &[2i64, 2][..]), (&["x^2", "x*y", "y^2"][..], &[3, 3][..])] {
        let i = ideal(&r, gens);
        let mut hfs = Vec::new();
        for sample in 0..5u64 {
            let sec = random_section(&i, degs, 20, 1000 + sample).map_err(|e| e.to_string())?;
            let q = Subquotient::quotient_ring(&sec.datum.a);
            hfs.push((0..=12).map(|d| q.hilbert_function(d)).collect::<Vec<_>>());
        }
        check(hfs.windows(2).all(|w| w[0] == w[1]), format!("HF(R/a) varies for I=({})", gens.join(",")))?;
    }
    Ok("5 samples for each of 2 ideals give identical HF(R/a)".into())
}

fn c11() -> Outcome {
    let mut rows = 0;
    for e in scm_corpus() {
        let rd = &e.rd;
        let (s, g) = (rd.s as i64, rd.g);
        let beg = sym_power_direct(rd, 1).beg().unwrap_or(0);
        for k in 1..=(s - g + 1) {
            let sym = sym_power_direct(rd, k as usize);
            let Some(reg) = sym.regularity() else { continue };
            let bound = rd.sigma() - (s - g + 1 - k) * beg - s;
            check(reg <= bound, format!("{}: reg Sym^{k} = {reg} > {bound}", e.label))?;
            rows += 1;
        }
    }
    Ok(format!("{rows} regularity bounds hold"))
}

fn c12() -> Outcome {
    let mut checked = 0;
    for e in residual_corpus() {
        let rd = &e.rd;
        let n = rd.ring().n() as i64;
        let ki = KoszulComplex::new(rd.ring(), rd.i.gens()).map_err(|er| er.to_string())?;
        let depth_ok = Subquotient::quotient_ring(&rd.i).depth().is_none_or(|d| d >= n - rd.s as i64);
        if !ki.scm_check().verdict || !depth_ok {
            continue;
        }
        let ka = KoszulComplex::new(rd.ring(), rd.a.gens()).map_err(|er| er.to_string())?;
        let t = ka.len() as i64 - rd.a.height();
        check(ka.sd_check(0, t).verdict, format!("{}: a fails SD", e.label))?;
        checked += 1;
    }
    Ok(format!("SD transfers to a on {checked} fixtures"))
}

fn c13() -> Outcome {
    let corpus = residual_corpus();
    for e in &corpus {
        let rd = &e.rd;
        let ka = KoszulComplex::new(rd.ring(), rd.a.gens()).map_err(|er| er.to_string())?;
        let u = ka.uniform_annihilator(1..=ka.len()).map_err(|er| er.to_string())?;
        check(u.contains_ideal(&rd.i), format!("{}: I ⊄ ∩ Ann H_j(a)", e.label))?;
    }
    Ok(format!("I ⊆ ∩_(j≥1) Ann H_j(a) on {} fixtures", corpus.len()))
}

fn c14() -> Outcome {
    let corpus = residual_corpus();
    let mut report = Vec::new();
    for e in &corpus {
        let rd = &e.rd;
        let k = disguised_residual(rd).map_err(|er| er.to_string())?;
        check(rd.j.contains_ideal(&k), format!("{}: K ⊄ J", e.label))?;
        check(rd.j.gens().iter().all(|g| k.radical_contains(g)), format!("{}: rad K != rad J", e.label))?;
        if rd.classify().is_arithmetic {
            check(k.equals(&rd.j), format!("{}: arithmetic but K = {} != J", e.label, show(&k)))?;
        } else {
            report.push(format!("{}: K {} J", e.label, if k.equals(&rd.j) { "=" } else { "≠" }));
        }
    }
    Ok(format!("{} fixtures; non-arithmetic: [{}]", corpus.len(), report.join("; ")))
}

fn c15() -> Outcome {
    let f = fixture("seven_variables");
    let i = id(&f, "I");
    let kc = KoszulComplex::new(&f.ring, i.gens()).map_err(|e| e.to_string())?;
    let depths: Vec<Option<i64>> = (1..=3).map(|j| kc.cycles(j).unwrap().depth()).collect();
    check(depths == vec![Some(6), Some(2), Some(6)], format!("depth Z_1..Z_3 = {depths:?}"))?;
    let d1 = Subquotient::quotient_ring(&i).depth();
    let d2 = Subquotient::quotient_ring(&i.power(2)).depth();
    check(d1 == Some(4) && d2 == Some(2), format!("depth R/I = {d1:?}, depth R/I^2 = {d2:?}"))?;
    check(kc.sdc_check(1, 0).verdict, "SDC_1 fails at level 0")?;
    check(!kc.sdc_check(1, 1).verdict, "SDC_1 holds at level 1")?;
    Ok("depth Z = 6,2,6; depth R/I = 4; depth R/I^2 = 2; SDC_1 at level 0 only".into())
}

fn c16() -> Outcome {
    let f = fixture("five_variables");
    let ring = f.ring.clone();
    let (i, a) = (id(&f, "I"), id(&f, "a"));
    let rd = make_residual(&i, &a, 5).map_err(|e| e.to_string())?;
    check(rd.j.height() == 5, format!("ht J = {}", rd.j.height()))?;
    let syz = syzygies(i.gens());
    let fm = FreeModule::new(&ring, rd.f_degrees());
    let twists = syz.iter().map(|v| fm.degree_of(v).unwrap()).collect();
    let pres = Matrix::new(fm, twists, syz);
    let p = ideal(&ring, &["x1", "x2"]);
    let f3 = fitting_ideal(&pres, 3);
    let f2 = fitting_ideal(&pres, 2);
    check(!p.contains_ideal(&f3), "Fitt_3 ⊆ (x1,x2)")?;
    check(p.contains_ideal(&f2), "Fitt_2 ⊄ (x1,x2)")?;
    let kc = Arc::new(KoszulComplex::new(&ring, a.gens()).map_err(|e| e.to_string())?);
    // containment I ⊆ Ann H_i(a): every generator of I kills every homology
    // generator
    for j in 1..=2 {
        let h = kc.homology(j).unwrap();
        for g in i.gens() {
            check(h.mult_image(g).is_zero(), format!("I ⊄ Ann H_{j}(a)"))?;
        }
    }
    // equality is best effort under a time limit
    let (tx, rx) = mpsc::channel();
    let (kc2, i2) = (kc.clone(), i.clone());
    std::thread::spawn(move || {
        let eq = (1..=2).all(|j| kc2.ann_homology(j).map(|a| a.equals(&i2)).unwrap_or(false));
        let _ = tx.send(eq);
    });
    let equality = match rx.recv_timeout(Duration::from_secs(600)) {
        Ok(true) => "Ann H_1 = Ann H_2 = I",
        Ok(false) => "annihilators strictly larger than I",
        Err(_) => "equality not decided within 10 min",
    };
    Ok(format!("ht J = 5, Fitt_3 ⊄ p, Fitt_2 ⊆ p, I ⊆ Ann H_1 ∩ Ann H_2; {equality}"))
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let extended = args.windows(2).any(|w| w[0] == "--tier" && w[1] == "extended")
        || args.iter().any(|a| a == "--tier=extended");
    let criteria: [(u32, &str, fn() -> Outcome, bool); 16] = [
        (1, "linkage fixture", c01, false),
        (2, "generic 2x4 matrix fixture", c02, false),
        (3, "degenerate fixture", c03, false),
        (4, "four-variable annihilator fixture", c04, false),
        (5, "principal extension homology", c05, false),
        (6, "exactness when I = a", c06, false),
        (7, "acyclicity on the SCM corpus", c07, false),
        (8, "canonical module", c08, false),
        (9, "type bound", c09, false),
        (10, "Hilbert-function invariance", c10, false),
        (11, "regularity bound", c11, false),
        (12, "sliding depth transfer", c12, false),
        (13, "uniform annihilator", c13, false),
        (14, "disguised residual", c14, false),
        (15, "seven-variable example", c15, true),
        (16, "five-variable example", c16, true),
    ];
    let mut failed = 0;
    for (n, name, run, slow) in criteria {
        if slow && !extended {
            println!("criterion {n:2} SKIP  {name}: extended tier (pass --tier extended)");
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {n:2} PASS  {name}: {msg} [{secs:.1}s]"),
            Err(msg) => {
                failed += 1;
                println!("criterion {n:2} FAIL  {name}: {msg} [{secs:.1}s]");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
