//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any criterion fails.
//!
//! Criteria 1 to 8 are computed directly from the library for `SL2(11)` and `SL2(3)` over
//! GF(4); criterion 8 also runs the bundled pipeline through the binary. Criterion 9 runs the
//! property-test binaries of the core crate, which `cargo test --workspace` builds next to this
//! one. Criterion 10 runs the negative controls.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use modrep::equivalence::{
    check_gluing_theorem, check_hypotheses, check_morita_lift, is_rel_brauer_indecomposable,
    theorem_brauer_criterion_for, Bimodule, BlockContext, ScottSetting, Verdict,
};
use modrep::fusion::{fusion_equal, fusion_system};
use modrep::group::{
    cyclic, find_common_sylow_identification, parse_group, sl2, structure_label, CommonSylow, DirectProduct,
    PermGroup,
};
use modrep::rep::{decompose, is_indecomposable, is_isomorphic, vertex, Representation};
use modrep::{rng, Error, Field};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Example {
    field: Field,
    g: PermGroup,
    h: PermGroup,
    common: CommonSylow,
    z: PermGroup,
    z2: PermGroup,
}

fn example() -> &'static Example {
    static E: OnceLock<Example> = OnceLock::new();
    E.get_or_init(|| {
        let field = Field::of_order(4).unwrap();
        let (g, h) = (sl2(11).unwrap(), sl2(3).unwrap());
        let common = find_common_sylow_identification(&g, &h, 2).unwrap();
        let z = common.in_first.intersection(&g.center().unwrap()).unwrap();
        let z2 = common.iso.image_of(&z).unwrap();
        Example { field, g, h, common, z, z2 }
    })
}

fn setting() -> &'static ScottSetting {
    static S: OnceLock<ScottSetting> = OnceLock::new();
    S.get_or_init(|| {
        let e = example();
        ScottSetting::new(&e.g, &e.h, e.common.clone(), &e.field, &mut rng(1)).unwrap()
    })
}

fn blocks() -> &'static (BlockContext, BlockContext) {
    static B: OnceLock<(BlockContext, BlockContext)> = OnceLock::new();
    B.get_or_init(|| {
        let e = example();
        (
            BlockContext::principal(&e.g, &e.field).unwrap(),
            BlockContext::principal(&e.h, &e.field).unwrap(),
        )
    })
}

fn group_facts() -> Outcome {
    let e = example();
    ensure!(e.h.order() == 24 && e.g.order() == 1320, "orders {} and {}", e.h.order(), e.g.order());
    let label = structure_label(&e.common.in_first);
    ensure!(label == "Q8" && e.common.iso.verify(), "Sylow {label}, identification verified {}", e.common.iso.verify());
    let zc2 = e.common.in_second.intersection(&e.h.center().map_err(|x| x.to_string())?).unwrap();
    ensure!(e.z.order() == 2 && e.z2.same_elements(&zc2), "Z has order {} and image {}", e.z.order(), e.z2.order());
    let fs = fusion_system(&e.g, &e.common.in_first).unwrap();
    let reps = fs.class_representatives(true).unwrap();
    let mut orders: Vec<u128> = reps.iter().map(|&i| fs.subgroup(i).order()).collect();
    orders.sort_unstable_by(|a, b| b.cmp(a));
    ensure!(orders == [8, 4, 2], "class representative orders {orders:?}");
    let has = |o: u128, h: &PermGroup| reps.iter().any(|&i| fs.subgroup(i).order() == o && fs.subgroup(i).same_elements(h));
    ensure!(has(8, &e.common.in_first) && has(2, &e.z), "representatives are not P and Z");
    Ok("orders 1320 and 24, P = Q8, |Z| = 2, classes {P, Q1, Z}".into())
}

fn centralizer_table() -> Outcome {
    let e = example();
    let fs = fusion_system(&e.g, &e.common.in_first).unwrap();
    let mut rows = Vec::new();
    for i in fs.class_representatives(true).unwrap() {
        let q = fs.subgroup(i);
        let q2 = e.common.iso.image_of(q).unwrap();
        let c1 = e.g.centralizer(q).unwrap();
        let c2 = e.h.centralizer(&q2).unwrap();
        let ok = match q.order() {
            8 => c1.same_elements(&e.z) && c2.same_elements(&e.z2),
            4 => structure_label(&c1) == "C12" && structure_label(&c2) == "C4",
            2 => c1.same_elements(&e.g) && c2.same_elements(&e.h),
            _ => false,
        };
        ensure!(ok, "centralizers of the order {} subgroup: {} and {}", q.order(), structure_label(&c1), structure_label(&c2));
        rows.push(format!("{}:{}/{}", q.order(), structure_label(&c1), structure_label(&c2)));
    }
    Ok(format!("C(P) = Z, C(Q1) = C12 / C4, C(Z) = G ({})", rows.join(" ")))
}

fn fusion_facts() -> Outcome {
    let e = example();
    let f1 = fusion_system(&e.g, &e.common.in_first).unwrap();
    let f2 = fusion_system(&e.h, &e.common.in_second).unwrap();
    ensure!(fusion_equal(&f1, &f2, &e.common.iso).unwrap().equal, "fusion systems differ");
    for f in [&f1, &f2] {
        let s = f.is_saturated().unwrap();
        ensure!(s.definitional && s.sylow_fast_path == Some(true), "saturation report {s:?}");
    }
    Ok("equal fusion systems, saturated by sweep and by the Sylow fast path".into())
}

fn principal_blocks() -> Outcome {
    let e = example();
    let (b, b2) = blocks();
    let mut r = rng(4);
    let mut d1: Vec<usize> = b.decomposition.simples(&b.block, &mut r).unwrap().iter().map(|s| s.dim()).collect();
    let mut d2: Vec<usize> = b2.decomposition.simples(&b2.block, &mut r).unwrap().iter().map(|s| s.dim()).collect();
    d1.sort();
    d2.sort();
    ensure!(d1 == [1, 5, 5] && d2 == [1, 1, 1], "simple dims {d1:?} and {d2:?}");
    let m = Representation::permutation_module(&e.h, &e.common.in_second, &e.field).unwrap();
    let parts = decompose(&m, &mut r).unwrap();
    ensure!(parts.dims() == [1, 1, 1], "Sylow permutation module splits as {:?}", parts.dims());
    let k = Representation::trivial(&e.h, &e.field);
    let trivial = parts.summands.iter().filter(|s| is_isomorphic(&s.module, &k, &mut r).unwrap()).count();
    ensure!(trivial == 1, "{trivial} trivial summands");
    Ok("B0(SL2(11)) simples [1, 5, 5]; B0(SL2(3)) simples [1, 1, 1]; k_P induced = k + T1 + T2".into())
}

fn restriction_shapes() -> Outcome {
    let e = example();
    let (b, _) = blocks();
    let mut r = rng(5);
    let p = &e.common.in_first;
    let kp = Representation::trivial(p, &e.field);
    let mut seen = 0;
    for s in b.decomposition.simples(&b.block, &mut r).unwrap().iter().filter(|s| s.dim() == 5) {
        let d = decompose(&s.restrict(p).unwrap(), &mut r).unwrap();
        ensure!(d.dims().len() == 2, "restriction splits as {:?}", d.dims());
        let (k, v) = if d.summands[0].module.dim() == 1 {
            (&d.summands[0].module, &d.summands[1].module)
        } else {
            (&d.summands[1].module, &d.summands[0].module)
        };
        ensure!(is_isomorphic(k, &kp, &mut r).unwrap(), "one-dimensional summand is not trivial");
        ensure!(v.dim() == 4 && is_indecomposable(v, &mut r).unwrap(), "V is not indecomposable of dimension 4");
        let vx = vertex(v, &mut r).unwrap();
        ensure!(vx.same_elements(&e.z), "vertex of V has order {}", vx.order());
        seen += 1;
    }
    ensure!(seen == 2, "{seen} simple modules of dimension 5");
    Ok("S_i restricted to P = k_P + V_i, V_i indecomposable with vertex Z, i = 1, 2".into())
}

fn brauer_indecomposability() -> Outcome {
    let e = example();
    let s = setting();
    let mut r = rng(6);
    let dz = s.diagonal_image(&e.z).unwrap();
    let rb = is_rel_brauer_indecomposable(s.scott.representation(), &s.diagonal, &dz, &mut r).unwrap();
    ensure!(rb.holds, "not relatively Brauer indecomposable: {:?}", rb.witness);
    let c = theorem_brauer_criterion_for(s.scott.representation(), &s.diagonal, &dz, &mut r).unwrap();
    ensure!(c.brauer_indecomposable.holds && c.normalizer_clause && c.agree, "clauses {} {} agree {}", c.brauer_indecomposable.holds, c.normalizer_clause, c.agree);
    ensure!(!c.normalizer_scott.is_empty(), "no fully normalized subgroups over Z");
    ensure!(
        c.normalizer_scott.iter().all(|x| x.brauer_isomorphic == Some(true)),
        "Brauer construction differs from the normalizer Scott module"
    );
    Ok(format!(
        "dim M = {}; both clauses true; {} explicit isomorphisms M(dQ) = S(N(dQ), N_dP(dQ))",
        s.scott.dim(),
        c.normalizer_scott.len()
    ))
}

fn gluing() -> Outcome {
    let e = example();
    let s = setting();
    let (b, b2) = blocks();
    let mut r = rng(7);
    ensure!(check_hypotheses(s, &e.z).unwrap().holds(), "hypotheses fail");
    let g = check_gluing_theorem(s, &e.z, b, b2, &mut r).unwrap();
    for c in &g.centralizer_checks {
        let both = [&c.report.left, &c.report.right]
            .iter()
            .all(|x| x.as_ref().is_some_and(|x| x.block_split && x.is_zero()));
        ensure!(c.verdict == Verdict::Morita && both, "centralizer check at order {} is {:?}", c.subgroup_order, c.verdict);
    }
    let orders: Vec<u128> = g.centralizer_checks.iter().map(|c| c.subgroup_order).collect();
    ensure!(orders.len() == 2 && orders.contains(&8) && orders.contains(&4), "checked orders {orders:?}");
    let st = &g.stable_equivalence;
    let proj = [&st.left, &st.right]
        .iter()
        .all(|x| x.as_ref().is_some_and(|x| x.block_split && x.diagonal_projective == Some(true)));
    ensure!(g.centralizer_clause && g.stable_clause && proj && g.agree, "clauses {} {} agree {}", g.centralizer_clause, g.stable_clause, g.agree);
    Ok("centralizer Morita equivalences at Q1 and P; relative Z-stable equivalence; clauses agree".into())
}

fn morita_verdict() -> Outcome {
    let e = example();
    let s = setting();
    let (b, b2) = blocks();
    let lift = check_morita_lift(&s.scott, b, b2, (&e.z, &e.z2), &mut rng(8)).unwrap();
    ensure!(lift.images.len() == 3 && lift.all_images_simple, "images of simples: {:?}", lift.images);
    ensure!(lift.remainders_zero && lift.verdict == Verdict::Morita, "verdict {:?}", lift.verdict);
    let dir = std::env::temp_dir().join(format!("modrep-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|x| x.to_string())?;
    let report = dir.join("sl2_example.json");
    let out = Command::new(env!("CARGO_BIN_EXE_modrep"))
        .args(["pipeline", "sl2-example", "--report"])
        .arg(&report)
        .output()
        .map_err(|x| x.to_string())?;
    let text = std::fs::read_to_string(&report).unwrap_or_default();
    let _ = std::fs::remove_dir_all(&dir);
    ensure!(out.status.code() == Some(0), "pipeline exit code {:?}", out.status.code());
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|x| x.to_string())?;
    ensure!(v["verdict"] == "morita" && v["passed"] == true, "pipeline verdict {}", v["verdict"]);
    Ok("all simples map to simples, X = Y = 0; pipeline exit 0 with verdict morita".into())
}

const SUITES: &[&str] = &["props_brauer", "props_modules", "props_blocks", "props_fusion", "props_equivalence"];

/// The newest test binary `name-<hash>` next to this executable.
fn sibling_binary(name: &str) -> Option<PathBuf> {
    let dir = std::env::current_exe().ok()?.parent()?.to_path_buf();
    let prefix = format!("{name}-");
    std::fs::read_dir(dir)
        .ok()?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            let f = p.file_name().and_then(|f| f.to_str()).unwrap_or("");
            f.starts_with(&prefix) && (p.extension().is_none() || p.extension().is_some_and(|x| x == "exe"))
        })
        .max_by_key(|p| p.metadata().and_then(|m| m.modified()).ok())
}

fn property_suites() -> Outcome {
    let mut total = 0;
    for name in SUITES {
        let bin = sibling_binary(name)
            .ok_or_else(|| format!("{name} is not built; run `cargo test --workspace`"))?;
        let out = Command::new(&bin).output().map_err(|x| x.to_string())?;
        let text = String::from_utf8_lossy(&out.stdout);
        ensure!(out.status.success(), "{name} failed:\n{text}");
        let passed: usize = text
            .lines()
            .filter_map(|l| l.strip_prefix("test result: ok. "))
            .filter_map(|l| l.split(' ').next()?.parse::<usize>().ok())
            .sum();
        ensure!(passed > 0, "{name} ran no tests");
        total += passed;
    }
    Ok(format!("{total} property tests in {} suites", SUITES.len()))
}

fn negative_controls() -> Outcome {
    let mut r = rng(10);
    let f = Field::of_order(4).unwrap();
    let (s3, c2) = (parse_group("S3").unwrap(), parse_group("C2").unwrap());
    let cs = find_common_sylow_identification(&s3, &c2, 2).unwrap();
    let s = ScottSetting::new(&s3, &c2, cs, &f, &mut r).unwrap();
    let b = BlockContext::principal(&s3, &f).unwrap();
    let b2 = BlockContext::principal(&c2, &f).unwrap();
    let one = PermGroup::trivial(s3.degree());
    let one2 = PermGroup::trivial(c2.degree());
    let honest = check_morita_lift(&s.scott, &b, &b2, (&one, &one2), &mut r).unwrap();
    ensure!(honest.verdict == Verdict::Morita, "uncorrupted control is {:?}", honest.verdict);
    let free = Bimodule::new(&s.product, Representation::regular(s.product.group(), &f).unwrap()).unwrap();
    for (name, bad) in [("padded", s.scott.direct_sum(&free).unwrap()), ("doubled", s.scott.direct_sum(&s.scott).unwrap())] {
        let lift = check_morita_lift(&bad, &b, &b2, (&one, &one2), &mut r).unwrap();
        ensure!(lift.verdict != Verdict::Morita, "{name} bimodule judged Morita");
    }

    let v4 = DirectProduct::new(&cyclic(2), &cyclic(2)).group().clone();
    let a4 = parse_group("A4").unwrap();
    let cs = find_common_sylow_identification(&a4, &v4, 2).unwrap();
    let s = ScottSetting::new(&a4, &v4, cs, &f, &mut r).unwrap();
    let b = BlockContext::principal(&a4, &f).unwrap();
    let b2 = BlockContext::principal(&v4, &f).unwrap();
    let refused = check_gluing_theorem(&s, &PermGroup::trivial(a4.degree()), &b, &b2, &mut r);
    ensure!(matches!(refused, Err(Error::Hypothesis(_))), "mismatched fusion was not refused");

    let s4 = parse_group("S4").unwrap();
    let p = s4.sylow_subgroup(2).unwrap();
    let fs = fusion_system(&s4, &p).unwrap();
    let zp = p.center().unwrap();
    let mut found = false;
    for i in 0..fs.subgroups().len() {
        let q = fs.subgroup(i);
        if q.order() == 2 && !zp.contains_group(q) && q.generators()[0].cycles().len() == 2 {
            found = true;
            ensure!(!fs.is_fully_normalized(i).unwrap(), "non-central double transposition is fully normalized");
        }
    }
    ensure!(found, "no non-central double transposition in the dihedral Sylow subgroup");
    Ok("corrupted bimodules are not Morita; mismatched fusion refused; non-fully-normalized subgroup of D8 in S4 detected".into())
}

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { number: 1, name: "group facts", limit: secs(5), run: group_facts },
        Criterion { number: 2, name: "centralizer table", limit: secs(5), run: centralizer_table },
        Criterion { number: 3, name: "fusion equality and saturation", limit: secs(10), run: fusion_facts },
        Criterion { number: 4, name: "principal blocks", limit: secs(60), run: principal_blocks },
        Criterion { number: 5, name: "restrictions of simple modules", limit: secs(60), run: restriction_shapes },
        Criterion { number: 6, name: "relative Brauer indecomposability", limit: secs(1800), run: brauer_indecomposability },
        Criterion { number: 7, name: "gluing criterion", limit: secs(1800), run: gluing },
        Criterion { number: 8, name: "Morita verdict and pipeline", limit: secs(7200), run: morita_verdict },
        Criterion { number: 9, name: "property suites", limit: secs(900), run: property_suites },
        Criterion { number: 10, name: "negative controls", limit: secs(60), run: negative_controls },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        let outcome = match outcome {
            Ok(_) if t > c.limit => Err(format!("took {:.1}s, limit {}s", t.as_secs_f64(), c.limit.as_secs())),
            o => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} {} ({:.1}s): {detail}", c.number, c.name, t.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} {} ({:.1}s): {why}", c.number, c.name, t.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
