//! Task dispatch: each task kind turns a session and a [`Task`] into a JSON
//! result.

use serde_json::{json, Value};

use super::session::{Session, Task};
use crate::error::{Error, Result};
use crate::groebner::ideal::Ideal;
use crate::koszul::KoszulComplex;
use crate::module::ext::{canonical_module, cm_type, unmixedness_test};
use crate::module::Subquotient;
use crate::residual::{find_single_b, inclusion_chain, make_residual, random_section, with_lifting, ResidualDatum};
use crate::zplus::{
    acyclicity_report, disguised_residual, hypothesis_check, independence_audit, sym_power_direct,
    tail_end_degrees, ZPlusComplex,
};

/// Highest degree listed in Hilbert-function reports.
const HF_TOP: i64 = 12;

pub fn ideal_json(i: &Ideal) -> Value {
    json!(i.minimalized().to_strings())
}

fn module_json(m: &Subquotient) -> Value {
    let mut v = module_json_without_depth(m);
    if !m.is_zero() {
        v["depth"] = json!(m.depth());
    }
    v
}

/// Depth needs a free resolution, which dominates on large modules.
fn module_json_without_depth(m: &Subquotient) -> Value {
    if m.is_zero() {
        return json!({ "zero": true });
    }
    json!({
        "zero": false,
        "dim": m.dim(),
        "mu": m.mu(),
        "hilbert_numerator": m.hilbert_series().numerator_string(),
    })
}

/// The residual datum named by the first two positional names, with `s`
/// defaulting to the number of generators of `a`.
pub fn datum(session: &Session, task: &Task) -> Result<ResidualDatum> {
    let i = session.ideal(task.name(0)?)?;
    let a = session.ideal(task.name(1)?)?;
    let s = task.option::<usize>("s")?.unwrap_or(a.gens().len());
    match task.options.get("lift") {
        Some(name) => with_lifting(i, a, s, session.lift(name)?.clone()),
        None => make_residual(i, a, s),
    }
}

pub fn run_task(session: &Session, task: &Task, seed: u64) -> Result<Value> {
    match task.kind.as_str() {
        "koszul" => koszul(session, task),
        "residual" => residual(session, task, seed),
        "zplus" => zplus(session, task),
        "sympower" => sympower(session, task),
        "invariants" => invariants(session, task),
        "canonical" => canonical(session, task),
        "experiment" => experiment(session, task, seed),
        other => Err(Error::InvalidInput(format!("unknown task {other:?}"))),
    }
}

fn koszul(session: &Session, task: &Task) -> Result<Value> {
    let i = session.ideal(task.name(0)?)?;
    let kc = KoszulComplex::new(&session.ring, i.gens())?;
    let r = kc.len() as i64;
    let g = i.height();
    let k = task.option::<i64>("k")?.unwrap_or(0);
    let t = task.option::<i64>("t")?.unwrap_or(r - g);
    let mut homology = Vec::new();
    for idx in 0..=kc.len() {
        let h = kc.homology(idx)?;
        let mut row = if task.flag("nodepth") { module_json_without_depth(h) } else { module_json(h) };
        row["i"] = json!(idx);
        if !task.flag("noann") {
            row["annihilator"] = ideal_json(&kc.ann_homology(idx)?);
        }
        homology.push(row);
    }
    let mut out = json!({
        "sequence": i.gens().iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "r": r,
        "height": g,
        "homology": homology,
    });
    if !task.flag("nodepth") {
        out["sd"] = json!(kc.sd_check(k, t));
        out["sdc"] = json!(kc.sdc_check(k + 1, t));
        out["scm"] = json!(kc.scm_check());
    }
    if !task.flag("noann") {
        let uniform = kc.uniform_annihilator(1..=kc.len())?;
        out["uniform_annihilator"] = ideal_json(&uniform);
        out["ideal_in_uniform_annihilator"] = json!(uniform.contains_ideal(i));
    }
    Ok(out)
}

fn residual(session: &Session, task: &Task, seed: u64) -> Result<Value> {
    let rd = datum(session, task)?;
    let class = rd.classify();
    let mut out = json!({
        "s": rd.s,
        "g": rd.g,
        "j": ideal_json(&rd.j),
        "classification": class,
    });
    if !task.flag("nochain") {
        let iter = task.option::<usize>("iter")?.unwrap_or(6);
        out["inclusion_chain"] = json!(inclusion_chain(&rd, iter));
    }
    if task.flag("findb") {
        let tries = task.option::<usize>("tries")?.unwrap_or(50);
        out["single_b"] = match find_single_b(&rd, tries, seed)? {
            Some(b) => {
                let colon = rd.a.colon_elem(&b);
                json!({ "b": b.to_string(), "colon": ideal_json(&colon), "equals_j": colon.equals(&rd.j) })
            }
            None => Value::Null,
        };
    }
    Ok(out)
}

fn zplus(session: &Session, task: &Task) -> Result<Value> {
    let rd = datum(session, task)?;
    let k = task.option::<usize>("k")?.unwrap_or(0);
    let s = rd.s as i64;
    let range_cap = s.min(s - rd.g + 2);
    let z = ZPlusComplex::assemble(&rd, k)?;
    let mut spots = Vec::new();
    for (i, c) in z.components.iter().enumerate() {
        let mut row = module_json(z.homology(i)?);
        row["spot"] = json!(i);
        row["kind"] = json!(c.kind);
        row["rank"] = json!(c.rank());
        spots.push(row);
    }
    let mut out = json!({
        "k": k,
        "s": rd.s,
        "r": rd.r(),
        "theorem_range_cap": range_cap,
        "warning": if (k as i64) > range_cap { json!("k lies outside min{s, s-g+2}") } else { Value::Null },
        "rank_audit": z.rank_audit(),
        "homology": spots,
        "acyclicity": acyclicity_report(&z, &rd),
        "tail_end_degrees": tail_end_degrees(&rd),
    });
    if task.flag("disguised") {
        let kd = disguised_residual(&rd)?;
        let in_j = rd.j.contains_ideal(&kd);
        let same_radical = in_j && rd.j.gens().iter().all(|g| kd.radical_contains(g));
        out["disguised"] = json!({
            "k_ideal": ideal_json(&kd),
            "contained_in_j": in_j,
            "same_radical": same_radical,
            "equals_j": kd.equals(&rd.j),
        });
    }
    if task.flag("hypotheses") {
        out["hypotheses"] = json!(hypothesis_check(&rd, k)?);
    }
    if task.flag("audit") {
        out["independence_audit"] = json!(independence_audit(&rd, k)?);
    }
    Ok(out)
}

fn sympower(session: &Session, task: &Task) -> Result<Value> {
    let rd = datum(session, task)?;
    let k = task.option::<usize>("k")?.unwrap_or(1);
    let m = sym_power_direct(&rd, k);
    Ok(json!({
        "k": k,
        "generators": m.gens().len(),
        "relations": m.rels().len(),
        "invariants": m.invariants(HF_TOP),
        "annihilator": ideal_json(&m.annihilator()),
        "type": cm_type(&m),
    }))
}

fn invariants(session: &Session, task: &Task) -> Result<Value> {
    let i = session.ideal(task.name(0)?)?;
    let m = Subquotient::quotient_ring(i);
    Ok(json!({
        "ideal": ideal_json(i),
        "height": i.height(),
        "quotient": m.invariants(HF_TOP),
        "type": cm_type(&m),
        "unmixed": unmixedness_test(i),
    }))
}

/// `ω_{R/J}` by Ext against `Sym^{s-g+1}(I/a)` twisted by `b + σ(a)`,
/// `b = -n`.
fn canonical(session: &Session, task: &Task) -> Result<Value> {
    let rd = datum(session, task)?;
    let n = session.ring.n() as i64;
    let kk = rd.s as i64 - rd.g + 1;
    if kk < 0 {
        return Err(Error::Precondition("s - g + 1 is negative".into()));
    }
    let sym = sym_power_direct(&rd, kk as usize);
    let omega = canonical_module(&Subquotient::quotient_ring(&rd.j), rd.s);
    let shift = -n + rd.sigma();
    let omega_hf: Vec<i64> = (0..=HF_TOP).map(|d| omega.hilbert_function(d)).collect();
    let sym_hf: Vec<i64> = (0..=HF_TOP).map(|d| sym.hilbert_function(d + shift)).collect();
    let ann = sym.annihilator();
    Ok(json!({
        "k": kk,
        "twist": shift,
        "omega_hilbert_function": omega_hf,
        "sym_twisted_hilbert_function": sym_hf,
        "hilbert_functions_agree": omega_hf == sym_hf,
        "sym_type": cm_type(&sym),
        "sym_annihilator": ideal_json(&ann),
        "annihilator_is_j": ann.equals(&rd.j),
    }))
}

fn experiment(session: &Session, task: &Task, seed: u64) -> Result<Value> {
    if task.flag("hf-invariance") {
        let i = session.ideal(task.name(0)?)?;
        let degrees: Vec<i64> = match task.options.get("degrees") {
            Some(d) => d
                .split(',')
                .map(|x| x.trim().parse().map_err(|_| Error::InvalidInput(format!("bad degree {x:?}"))))
                .collect::<Result<_>>()?,
            None => return Err(Error::InvalidInput("hf-invariance needs degrees=d1,d2,..".into())),
        };
        let samples = task.option::<usize>("samples")?.unwrap_or(5);
        let mut rows = Vec::new();
        for k in 0..samples {
            let sec = random_section(i, &degrees, 20, seed.wrapping_add(k as u64))?;
            let m = Subquotient::quotient_ring(&sec.datum.a);
            rows.push((0..=HF_TOP).map(|d| m.hilbert_function(d)).collect::<Vec<i64>>());
        }
        let identical = rows.windows(2).all(|w| w[0] == w[1]);
        return Ok(json!({ "experiment": "hf-invariance", "degrees": degrees, "samples": rows, "identical": identical }));
    }
    if task.flag("conjecture") {
        let rd = datum(session, task)?;
        let class = rd.classify();
        let kd = disguised_residual(&rd)?;
        let kc = KoszulComplex::new(&session.ring, rd.a.gens())?;
        let uniform = kc.uniform_annihilator(1..=kc.len())?;
        let ht_i = rd.i.height();
        return Ok(json!({
            "experiment": "conjecture",
            "arithmetic": class.is_arithmetic,
            "k_ideal": ideal_json(&kd),
            "j": ideal_json(&rd.j),
            "k_equals_j": kd.equals(&rd.j),
            "s": rd.s,
            "height_i": ht_i,
            "s_exceeds_height": (rd.s as i64) > ht_i,
            "uniform_annihilator": ideal_json(&uniform),
            "i_in_uniform_annihilator": uniform.contains_ideal(&rd.i),
            "uniform_annihilator_equals_i": uniform.equals(&rd.i),
        }));
    }
    Err(Error::InvalidInput("experiment needs 'conjecture' or 'hf-invariance'".into()))
}
