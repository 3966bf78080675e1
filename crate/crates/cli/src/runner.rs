//! Executes the tasks of a scenario against a lazily built context and collects the report.

use std::time::{Duration, Instant};

use modrep::equivalence::{
    check_gluing_theorem, check_morita_lift, check_relative_stable_equivalence, diagonal_of_iso,
    is_rel_brauer_indecomposable, theorem_brauer_criterion_for, Bimodule, BlockContext, ScottSetting,
    Verdict,
};
use modrep::fusion::{fusion_equal, fusion_system, FusionSystem};
use modrep::group::{
    find_common_sylow_identification, parse_group, structure_label, CommonSylow, DirectProduct, GroupIso,
    Perm, PermGroup,
};
use modrep::rep::{decompose, is_indecomposable, vertex, Representation};
use modrep::{rng, Field, Rng};
use serde::Serialize;

use crate::cache::Cache;
use crate::failure::{Failure, FailureClass};
use crate::report::{Diagnostics, RunReport, TaskReport, REPORT_SCHEMA_VERSION, TOOL_VERSION};
use crate::scenario::{Central, CentralizerRow, Identification, RestrictionRow, Scenario, SummandRow, Task};

pub const DEFAULT_SEED: u64 = 0x5eed;

type R<T> = Result<T, Failure>;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    /// Time allowed for each task; checked when the task finishes.
    pub budget: Option<Duration>,
    /// Include timings and cache statistics in the report.
    pub diagnostics: bool,
}

impl Default for RunOptions {
    fn default() -> RunOptions {
        RunOptions {
            seed: DEFAULT_SEED,
            budget: None,
            diagnostics: false,
        }
    }
}

/// Each task draws from its own stream so that cached artifacts do not shift later results.
fn stream(seed: u64, salt: u64) -> Rng {
    rng(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

const SCOTT_SALT: u64 = 0x5c07;

/// `G`, `P`, `Z`, `1` or a structure label for a subgroup `h` of `whole`.
fn describe(h: &PermGroup, whole: &PermGroup, p: &PermGroup, z: &PermGroup) -> String {
    if h.same_elements(p) {
        "P".into()
    } else if h.same_elements(whole) {
        "G".into()
    } else if h.same_elements(z) {
        "Z".into()
    } else if h.is_trivial() {
        "1".into()
    } else {
        structure_label(h)
    }
}

fn cycles(gens: &[Perm]) -> Vec<String> {
    gens.iter().map(Perm::cycle_string).collect()
}

fn verdict_name(v: Verdict) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|x| x.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn parse_elements(g: &PermGroup, texts: &[String]) -> R<Vec<Perm>> {
    texts
        .iter()
        .map(|t| {
            let x = Perm::parse_cycles(t, g.degree())?;
            if !g.contains(&x) {
                return Err(Failure::new(FailureClass::Schema, format!("{t} is not in the group")));
            }
            Ok(x)
        })
        .collect()
}

#[derive(Serialize)]
struct GroupData {
    spec: String,
    order: u128,
    degree: usize,
    sylow_order: u128,
    sylow_structure: String,
    center_order: u128,
}

struct Ctx<'a> {
    sc: &'a Scenario,
    seed: u64,
    cache: Option<&'a Cache>,
    field: Option<Field>,
    first: Option<PermGroup>,
    second: Option<PermGroup>,
    common: Option<CommonSylow>,
    z: Option<(PermGroup, PermGroup)>,
    fusion: Option<FusionSystem>,
    setting: Option<ScottSetting>,
    blocks: Option<(BlockContext, BlockContext)>,
    verdict: Option<String>,
}

impl<'a> Ctx<'a> {
    fn new(sc: &'a Scenario, seed: u64, cache: Option<&'a Cache>) -> Ctx<'a> {
        Ctx {
            sc,
            seed,
            cache,
            field: None,
            first: None,
            second: None,
            common: None,
            z: None,
            fusion: None,
            setting: None,
            blocks: None,
            verdict: None,
        }
    }

    fn field(&mut self) -> R<Field> {
        if self.field.is_none() {
            self.field = Some(Field::new(self.sc.prime, self.sc.field_degree)?);
        }
        Ok(self.field.clone().expect("field"))
    }

    fn groups(&mut self) -> R<(PermGroup, PermGroup)> {
        if self.first.is_none() {
            let g = parse_group(&self.sc.first)?;
            let h = match &self.sc.second {
                Some(s) => parse_group(s)?,
                None => g.clone(),
            };
            self.first = Some(g);
            self.second = Some(h);
        }
        Ok((self.first.clone().expect("first"), self.second.clone().expect("second")))
    }

    fn common(&mut self) -> R<CommonSylow> {
        if self.common.is_none() {
            let (g, h) = self.groups()?;
            let p = self.sc.prime;
            let cs = match &self.sc.identification {
                Identification::Search => find_common_sylow_identification(&g, &h, p)?,
                Identification::GeneratorImages { first_sylow, images } => {
                    let pg = PermGroup::new(g.degree(), parse_elements(&g, first_sylow)?)?;
                    let imgs = parse_elements(&h, images)?;
                    let ph = PermGroup::new(h.degree(), imgs.clone())?;
                    let sylow = |x: &PermGroup, whole: &PermGroup| {
                        x.is_p_group(p) && modrep::group::p_part(whole.order(), p) == x.order()
                    };
                    if !sylow(&pg, &g) || !sylow(&ph, &h) {
                        return Err(Failure::new(
                            FailureClass::Identification,
                            "the given generators do not span Sylow subgroups",
                        ));
                    }
                    let iso = GroupIso::from_generator_images(&pg, &ph, imgs)?;
                    CommonSylow {
                        p,
                        in_first: pg,
                        in_second: ph,
                        iso,
                    }
                }
            };
            if !cs.iso.verify() {
                return Err(Failure::new(FailureClass::Identification, "identification is not an isomorphism"));
            }
            self.common = Some(cs);
        }
        Ok(self.common.clone().expect("common"))
    }

    /// `Z` in the first group and its image in the second.
    fn central(&mut self) -> R<(PermGroup, PermGroup)> {
        if self.z.is_none() {
            let (g, _) = self.groups()?;
            let cs = self.common()?;
            let z = match &self.sc.central {
                Central::SylowCenter => cs.in_first.intersection(&g.center()?)?,
                Central::Trivial => PermGroup::trivial(g.degree()),
                Central::Generators { generators } => {
                    let z = PermGroup::new(g.degree(), parse_elements(&g, generators)?)?;
                    if !cs.in_first.contains_group(&z) {
                        return Err(Failure::new(FailureClass::Hypothesis, "Z is not contained in P"));
                    }
                    z
                }
            };
            let z2 = cs
                .iso
                .image_of(&z)
                .ok_or_else(|| Failure::new(FailureClass::Internal, "Z has no image"))?;
            self.z = Some((z, z2));
        }
        Ok(self.z.clone().expect("z"))
    }

    fn fusion(&mut self) -> R<&FusionSystem> {
        if self.fusion.is_none() {
            let (g, _) = self.groups()?;
            let cs = self.common()?;
            self.fusion = Some(fusion_system(&g, &cs.in_first)?);
        }
        Ok(self.fusion.as_ref().expect("fusion"))
    }

    fn setting(&mut self) -> R<&ScottSetting> {
        if self.setting.is_none() {
            let (g, h) = self.groups()?;
            let common = self.common()?;
            let field = self.field()?;
            let product = DirectProduct::new(&g, &h);
            let diagonal = diagonal_of_iso(&product, &common.iso, &common.in_first)?;
            let mut r = stream(self.seed, SCOTT_SALT);
            let mut compute = || -> R<Vec<modrep::Mat>> {
                let m = Bimodule::scott(&product, &diagonal, &field, &mut r)?;
                Ok(m.representation().generators().to_vec())
            };
            let count = product.group().generators().len();
            let mats = match self.cache {
                Some(c) => {
                    let inputs = format!(
                        "{:?}|{:?}|{}|{}",
                        cycles(product.group().generators()),
                        cycles(diagonal.generators()),
                        field.order(),
                        self.seed
                    );
                    let key = c.key("scott-bimodule", &inputs);
                    c.get_or_compute(&key, "scott-bimodule", &field, count, compute)?
                }
                None => compute()?,
            };
            let scott = Bimodule::new(&product, Representation::new(product.group(), &field, mats)?)?;
            self.setting = Some(ScottSetting {
                field,
                common,
                product,
                diagonal,
                scott,
            });
        }
        Ok(self.setting.as_ref().expect("setting"))
    }

    fn blocks(&mut self) -> R<&(BlockContext, BlockContext)> {
        if self.blocks.is_none() {
            let (g, h) = self.groups()?;
            let f = self.field()?;
            self.blocks = Some((BlockContext::principal(&g, &f)?, BlockContext::principal(&h, &f)?));
        }
        Ok(self.blocks.as_ref().expect("blocks"))
    }

    fn run(&mut self, task: Task, t: &mut TaskReport) -> R<()> {
        let mut r = stream(self.seed, task as u64 + 1);
        let expect = &self.sc.expect;
        match task {
            Task::Group => {
                let (g, h) = self.groups()?;
                let p = self.sc.prime;
                let data = |spec: &str, x: &PermGroup| -> R<GroupData> {
                    let s = x.sylow_subgroup(p)?;
                    Ok(GroupData {
                        spec: spec.to_string(),
                        order: x.order(),
                        degree: x.degree(),
                        sylow_order: s.order(),
                        sylow_structure: structure_label(&s),
                        center_order: x.center()?.order(),
                    })
                };
                t.put("first", data(&self.sc.first, &g)?);
                if let Some(s) = &self.sc.second {
                    t.put("second", data(s, &h)?);
                }
                t.expect("order of the first group", &g.order(), expect.first_order.as_ref());
                t.expect("order of the second group", &h.order(), expect.second_order.as_ref());
            }
            Task::Identification => {
                let (g, h) = self.groups()?;
                let cs = self.common()?;
                let (z, z2) = self.central()?;
                t.check("identification of the Sylow subgroups is an isomorphism", cs.iso.verify(), "");
                let label = structure_label(&cs.in_first);
                t.put("sylow_order", cs.in_first.order());
                t.put("sylow_structure", &label);
                t.put("first_sylow_generators", cycles(cs.in_first.generators()));
                t.put("images", cycles(cs.iso.generator_images()));
                t.put("central_order", z.order());
                t.expect("structure of the common Sylow subgroup", &label, expect.sylow_structure.as_ref());
                if let Some(order) = expect.central_order {
                    t.expect("order of the central subgroup", &z.order(), Some(&order));
                    let zc = cs.in_first.intersection(&g.center()?)?;
                    let zc2 = cs.in_second.intersection(&h.center()?)?;
                    t.check(
                        "central subgroup is the Sylow meet the center on both sides",
                        z.same_elements(&zc) && z2.same_elements(&zc2),
                        format!("orders {} and {}", zc.order(), zc2.order()),
                    );
                }
            }
            Task::Fusion => {
                let (_, h) = self.groups()?;
                let cs = self.common()?;
                let f2 = fusion_system(&h, &cs.in_second)?;
                let f1 = self.fusion()?;
                let cmp = fusion_equal(f1, &f2, &cs.iso)?;
                t.check(
                    "fusion systems agree under the identification",
                    cmp.equal,
                    cmp.witness.as_ref().map(|w| format!("{w:?}")).unwrap_or_default(),
                );
                for (side, f) in [("first", f1), ("second", &f2)] {
                    let s = f.is_saturated()?;
                    t.check(&format!("{side} fusion system is saturated (definitional sweep)"), s.definitional, "");
                    if let Some(fast) = s.sylow_fast_path {
                        t.check(
                            &format!("{side} fusion system: Sylow fast path agrees with the sweep"),
                            fast == s.definitional,
                            "",
                        );
                    }
                    t.put(&format!("{side}_subgroups"), f.subgroups().len());
                    t.put(&format!("{side}_classes"), f.classes().len());
                }
                t.put("equal", cmp.equal);
            }
            Task::FusionClasses => {
                let f = self.fusion()?;
                let mut rows = Vec::new();
                for i in f.class_representatives(true)? {
                    let q = f.subgroup(i);
                    rows.push((q.order(), structure_label(q), f.is_fully_normalized(i)?));
                }
                rows.sort_by(|a, b| b.cmp(a));
                let orders: Vec<u128> = rows.iter().map(|x| x.0).collect();
                t.put(
                    "representatives",
                    rows.iter()
                        .map(|(o, s, n)| serde_json::json!({"order": o, "structure": s, "fully_normalized": n}))
                        .collect::<Vec<_>>(),
                );
                t.expect("orders of the class representatives", &orders, expect.class_orders.as_ref());
            }
            Task::Centralizers => {
                let (g, h) = self.groups()?;
                let cs = self.common()?;
                let (z, z2) = self.central()?;
                let reps: Vec<PermGroup> = {
                    let f = self.fusion()?;
                    f.class_representatives(true)?.into_iter().map(|i| f.subgroup(i).clone()).collect()
                };
                let mut rows = Vec::new();
                for q in &reps {
                    let q2 = cs
                        .iso
                        .image_of(q)
                        .ok_or_else(|| Failure::new(FailureClass::Internal, "subgroup has no image"))?;
                    rows.push(CentralizerRow {
                        subgroup_order: q.order(),
                        first: describe(&g.centralizer(q)?, &g, &cs.in_first, &z),
                        second: describe(&h.centralizer(&q2)?, &h, &cs.in_second, &z2),
                    });
                }
                rows.sort_by(|a, b| b.cmp(a));
                let expected = expect.centralizers.clone().map(|mut e| {
                    e.sort_by(|a, b| b.cmp(a));
                    e
                });
                t.put("rows", &rows);
                t.expect("centralizer table", &rows, expected.as_ref());
            }
            Task::Blocks => {
                let (_, h) = self.groups()?;
                let cs = self.common()?;
                let f = self.field()?;
                let (b, b2) = self.blocks()?;
                let mut dims = Vec::new();
                for (side, bc) in [("first", b), ("second", b2)] {
                    t.check(&format!("{side} block idempotents verify"), bc.decomposition.verify(), "");
                    let mut d: Vec<usize> =
                        bc.decomposition.simples(&bc.block, &mut r)?.iter().map(|s| s.dim()).collect();
                    d.sort();
                    t.put(&format!("{side}_blocks"), bc.decomposition.blocks.len());
                    t.put(&format!("{side}_principal_dim"), bc.dim());
                    t.put(&format!("{side}_simple_dims"), &d);
                    dims.push(d);
                }
                t.expect("simple modules of the first principal block", &dims[0], expect.first_simple_dims.as_ref());
                t.expect("simple modules of the second principal block", &dims[1], expect.second_simple_dims.as_ref());
                if let Some(e) = &expect.second_sylow_permutation_dims {
                    let m = Representation::permutation_module(&h, &cs.in_second, &f)?;
                    let mut d = decompose(&m, &mut r)?.dims();
                    d.sort();
                    t.put("second_sylow_permutation_dims", &d);
                    t.expect("summands of the Sylow permutation module of the second group", &d, Some(e));
                }
            }
            Task::Scott => {
                let s = self.setting()?;
                let dim = s.scott.dim();
                t.put("dim", dim);
                t.put("product_order", s.product.group().order());
                t.put("vertex_order", s.diagonal.order());
                t.check(
                    "Scott bimodule is indecomposable",
                    is_indecomposable(s.scott.representation(), &mut r)?,
                    "",
                );
                t.expect("dimension of the Scott bimodule", &dim, expect.scott_dim.as_ref());
            }
            Task::BrauerIndec => {
                let (z, _) = self.central()?;
                let s = self.setting()?;
                let dz = s.diagonal_image(&z)?;
                let rep = is_rel_brauer_indecomposable(s.scott.representation(), &s.diagonal, &dz, &mut r)?;
                t.put("report", &rep);
                t.expect("relative Brauer indecomposability", &rep.holds, expect.criteria_hold.as_ref());
            }
            Task::BrauerCriterion => {
                let (z, _) = self.central()?;
                let s = self.setting()?;
                let dz = s.diagonal_image(&z)?;
                let rep = theorem_brauer_criterion_for(s.scott.representation(), &s.diagonal, &dz, &mut r)?;
                t.check("Brauer indecomposability criterion: clauses agree", rep.agree, "");
                let bad: Vec<u128> = rep
                    .normalizer_scott
                    .iter()
                    .filter(|e| e.brauer_isomorphic == Some(false))
                    .map(|e| e.subgroup_order)
                    .collect();
                t.check(
                    "Brauer construction is the Scott module of the normalizer",
                    bad.is_empty(),
                    if bad.is_empty() { String::new() } else { format!("fails at orders {bad:?}") },
                );
                let both = rep.brauer_indecomposable.holds && rep.normalizer_clause;
                t.expect("both clauses of the Brauer criterion", &both, expect.criteria_hold.as_ref());
                t.put("report", &rep);
            }
            Task::Gluing => {
                let (z, _) = self.central()?;
                self.setting()?;
                self.blocks()?;
                let s = self.setting.as_ref().expect("setting");
                let (b, b2) = self.blocks.as_ref().expect("blocks");
                let rep = check_gluing_theorem(s, &z, b, b2, &mut r)?;
                t.check("gluing criterion: clauses agree", rep.agree, "");
                let both = rep.centralizer_clause && rep.stable_clause;
                t.expect("both clauses of the gluing criterion", &both, expect.criteria_hold.as_ref());
                t.put("report", &rep);
            }
            Task::StableEquivalence => {
                let (z, z2) = self.central()?;
                self.setting()?;
                self.blocks()?;
                let s = self.setting.as_ref().expect("setting");
                let (b, b2) = self.blocks.as_ref().expect("blocks");
                let rep =
                    check_relative_stable_equivalence(&s.scott, &s.scott.dual(), b, b2, (&z, &z2), &mut r)?;
                let stable = rep.verdict != Verdict::None;
                t.expect("relative stable equivalence", &stable, expect.criteria_hold.as_ref());
                t.put("report", &rep);
                if self.verdict.is_none() {
                    self.verdict = Some(verdict_name(rep.verdict));
                }
            }
            Task::RestrictionShapes => {
                let cs = self.common()?;
                let (z, _) = self.central()?;
                let (b, _) = self.blocks()?;
                let simples = b.decomposition.simples(&b.block, &mut r)?;
                let p = &cs.in_first;
                let mut rows = Vec::new();
                for m in &simples {
                    let d = decompose(&m.restrict(p)?, &mut r)?;
                    let mut summands = Vec::new();
                    for part in &d.summands {
                        let v = vertex(&part.module, &mut r)?;
                        summands.push(SummandRow {
                            dim: part.module.dim(),
                            vertex: describe(&v, p, p, &z),
                        });
                    }
                    summands.sort();
                    rows.push(RestrictionRow {
                        simple_dim: m.dim(),
                        summands,
                    });
                }
                rows.sort();
                let expected = expect.restrictions.clone().map(|mut e| {
                    e.iter_mut().for_each(|r| r.summands.sort());
                    e.sort();
                    e
                });
                t.put("rows", &rows);
                t.expect("restrictions of simple modules to the Sylow subgroup", &rows, expected.as_ref());
            }
            Task::MoritaLift => {
                let (z, z2) = self.central()?;
                self.setting()?;
                self.blocks()?;
                let s = self.setting.as_ref().expect("setting");
                let (b, b2) = self.blocks.as_ref().expect("blocks");
                let rep = check_morita_lift(&s.scott, b, b2, (&z, &z2), &mut r)?;
                t.check("simple images and vanishing remainders agree", rep.agree, "");
                t.expect("relative stable equivalence", &rep.precondition, expect.criteria_hold.as_ref());
                let v = verdict_name(rep.verdict);
                t.expect("verdict", &v, expect.verdict.as_ref());
                t.put("report", &rep);
                self.verdict = Some(v);
            }
        }
        Ok(())
    }
}

/// Run every task of `sc` in order, stopping at the first failure. When the field turns out
/// not to split a module the whole run restarts over the suggested larger field.
pub fn run_scenario(sc: &Scenario, opts: &RunOptions, cache: Option<&Cache>) -> RunReport {
    let mut effective = sc.clone();
    loop {
        let mut report = run_once(&effective, opts, cache);
        report.scenario_hash = sc.hash();
        let next = report.failure.as_ref().and_then(|f| f.suggested_field_degree);
        match next {
            Some(m) if m > effective.field_degree && effective.field_degree > 0 => {
                log::warn!(
                    "GF({}^{}) does not split every module; retrying with degree {m}",
                    sc.prime,
                    effective.field_degree
                );
                effective.field_degree = m;
            }
            _ => return report,
        }
    }
}

fn run_once(sc: &Scenario, opts: &RunOptions, cache: Option<&Cache>) -> RunReport {
    let mut ctx = Ctx::new(sc, opts.seed, cache);
    let mut report = RunReport {
        report_schema_version: REPORT_SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        scenario_name: sc.name.clone(),
        scenario_hash: String::new(),
        seed: opts.seed,
        field_degree: sc.field_degree,
        tasks: Vec::new(),
        verdict: None,
        passed: true,
        failure: None,
        diagnostics: None,
    };
    let mut diag = Diagnostics::default();
    let (hits0, misses0) = cache.map_or((0, 0), |c| (c.hits(), c.misses()));
    for task in sc.ordered_tasks() {
        log::info!("running {}", task.name());
        let start = Instant::now();
        let mut t = TaskReport::new(task);
        let outcome = ctx.run(task, &mut t);
        let elapsed = start.elapsed();
        diag.task_seconds.push((task, elapsed.as_secs_f64()));
        let failure = match outcome {
            Err(f) => {
                t.passed = false;
                t.put("error", &f.message);
                Some(f)
            }
            Ok(()) if !t.passed => {
                let labels: Vec<&str> =
                    t.assertions.iter().filter(|a| !a.passed).map(|a| a.label.as_str()).collect();
                Some(Failure::new(
                    FailureClass::Assertion,
                    format!("{}: {}", task.name(), labels.join("; ")),
                ))
            }
            Ok(()) => match opts.budget {
                Some(b) if elapsed > b => Some(Failure::new(
                    FailureClass::Budget,
                    format!("{} took {:.1}s, budget {:.1}s", task.name(), elapsed.as_secs_f64(), b.as_secs_f64()),
                )),
                _ => None,
            },
        };
        report.tasks.push(t);
        if let Some(f) = failure {
            report.passed = false;
            report.failure = Some(f);
            break;
        }
    }
    report.verdict = ctx.verdict.take();
    if opts.diagnostics {
        if let Some(c) = cache {
            diag.cache_hits = c.hits() - hits0;
            diag.cache_misses = c.misses() - misses0;
        }
        report.diagnostics = Some(diag);
    }
    report
}
