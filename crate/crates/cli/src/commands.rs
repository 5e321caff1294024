use serde_json::{json, Value};

use skelvd::complex::Attachment;
use skelvd::construction::{check_star_condition, expand_hypergraph, verify_polarization_identity, WeightedHypergraph};
use skelvd::decomposability::{shedding_vertices, vd_check, verify_certificate, Decision, VdOptions};
use skelvd::fixtures;
use skelvd::homology::{is_cohen_macaulay, reduced_betti_capped, verify_theorem_b, Caps};
use skelvd::ideals::{cover_ideal, linear_quotients_order, LinearQuotients, MonomialIdeal};
use skelvd::trace::{
    all_move_patterns, apply_trace, check_constructible_duality, check_witness_properties, parse_moves, parse_steps,
    witness_sequence, TraceState,
};
use skelvd::vertex::parse_vertices;
use skelvd::{Error, Hypergraph, Result};

use crate::input::{load, Input, Source};
use crate::render::{to_value, Outcome, Verdict};
use crate::{
    AnalyzeArgs, CmArgs, CounterexampleArgs, ExpandArgs, Globals, IdentityArgs, LqArgs, SymbolicArgs, TheoremAArgs,
    TheoremBArgs, TraceArgs, VdArgs,
};

type Run = Result<(Vec<Source>, Outcome)>;

fn done(source: Source, verdict: Verdict, result: Value) -> Run {
    Ok((vec![source], Outcome { verdict, result }))
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(ToString::to_string).collect()
}

fn ells(e: &Option<crate::Ells>) -> Option<&[u32]> {
    e.as_ref().map(|e| e.0.as_slice())
}

/// The expansion when weights are given or carried, the hypergraph otherwise.
fn target(input: &Input, ells: Option<&[u32]>) -> Result<(Hypergraph, Option<Vec<u32>>)> {
    if ells.is_some() || input.carried_weights().is_some() {
        let wh = input.weighted(ells)?;
        Ok((expand_hypergraph(&wh)?, Some(wh.weights().to_vec())))
    } else {
        Ok((input.hypergraph()?, None))
    }
}

fn size(h: &Hypergraph) -> Value {
    json!({ "vertices": h.vertices().len(), "edges": h.edges().len() })
}

pub fn analyze(a: &AnalyzeArgs, _g: &Globals) -> Run {
    let (input, source) = load(&a.input)?;
    let c = input.complex()?;
    let h = Hypergraph::from_complex(&c);
    let cycles = c.special_cycles(Some(a.max_cycle_len), &[]);
    let forest = c.is_forest()?;
    let mut r = json!({
        "input_type": input.kind(),
        "warnings": input.warnings(),
        "vertices": strings(c.universe()),
        "facets": strings(c.facets()),
        "dim": c.dim(),
        "pure": c.is_pure(),
        "f_vector": c.f_vector(),
        "forest": forest,
        "good_leaf_order": c.good_leaf_order().map(|o| strings(&o)),
        "special_cycles": {
            "max_len": a.max_cycle_len,
            "count": cycles.len(),
            "listed": strings(&cycles[..cycles.len().min(a.max_cycles)]),
        },
        "minimum_cycle_covers": c.minimum_cycle_covers().iter().map(|w| strings(w)).collect::<Vec<_>>(),
        "minimal_vertex_covers": strings(&h.minimal_vertex_covers()?),
        "unmixed": c.is_unmixed()?,
    });
    let m = r.as_object_mut().unwrap();
    match &input {
        Input::Skeleton { spec, purity, .. } => {
            m.insert("purity".into(), to_value(purity));
            m.insert("apex".into(), json!(spec.apex.to_string()));
        }
        Input::Assembly { attachment, weights } => {
            m.insert("cover".into(), json!(strings(&attachment.cover)));
            m.insert("facet_order".into(), json!(strings(&attachment.facet_order)));
            if let Some(w) = weights {
                m.insert("weights".into(), json!(w));
                m.insert("weight_condition".into(), json!(check_star_condition(attachment, w)?));
            }
        }
        _ => {}
    }
    let mut verdict = Verdict::Pass;
    if let Some(labels) = &a.cover {
        let w = parse_vertices(&labels.0)?;
        let ok = c.is_cycle_cover(&w);
        let avoiding = c.special_cycles(None, &w).into_iter().next().map(|cy| cy.to_string());
        m.insert(
            "cover_check".into(),
            json!({ "cover": strings(&w), "is_cycle_cover": ok, "avoiding_cycle": avoiding }),
        );
        verdict = Verdict::from_bool(ok);
    }
    done(source, verdict, r)
}

fn stage(name: &str, verdict: Option<Verdict>, detail: Value) -> (Option<Verdict>, Value) {
    let status = match verdict {
        Some(v) => to_value(&v),
        None => json!("skipped"),
    };
    (verdict, json!({ "stage": name, "status": status, "detail": detail }))
}

/// All stages of the main theorem for one weight vector.
fn theorem_a_run(att: &Attachment, weights: &[u32], a: &TheoremAArgs, g: &Globals) -> Result<(Verdict, Value)> {
    let mut stages = Vec::new();
    let hypothesis = check_star_condition(att, weights)?;
    stages.push(stage("weight_condition", Some(Verdict::from_bool(hypothesis)), json!({ "holds": hypothesis })));

    let wh = WeightedHypergraph::from_attachment(att, weights.to_vec())?;
    let h = expand_hypergraph(&wh)?;
    let out = vd_check(&h, VdOptions { budget: g.budget, memoize: true })?;
    let (v, certified) = match (&out.decision, &out.witness) {
        (Decision::Yes, Some(w)) => {
            let ok = verify_certificate(&h, w)?;
            (Verdict::from_bool(ok), Some(ok))
        }
        (Decision::BudgetExceeded, _) => (Verdict::BudgetExceeded, None),
        _ => (Verdict::Fail, None),
    };
    stages.push(stage(
        "vd",
        Some(v),
        json!({ "expansion": size(&h), "decision": out.decision, "certificate_verified": certified, "stats": out.stats }),
    ));

    if hypothesis {
        let patterns = all_move_patterns(att, weights)?;
        let mut failures = Vec::new();
        let mut alpha = 0;
        for moves in patterns.iter().take(a.max_patterns) {
            let run = witness_sequence(att, weights, moves)?;
            alpha = alpha.max(run.alpha);
            let rep = check_witness_properties(att, &run)?;
            if !rep.all_pass() {
                failures.push(json!({ "moves": strings(moves), "failures": rep.failures }));
            }
        }
        let checked = patterns.len().min(a.max_patterns);
        stages.push(stage(
            "witness",
            Some(Verdict::from_bool(failures.is_empty())),
            json!({ "alpha": alpha, "patterns": patterns.len(), "checked": checked, "failures": failures }),
        ));
    } else {
        stages.push(stage("witness", None, json!("the weight condition fails")));
    }

    let mut polarized = None;
    if let Some(&l) = weights.first().filter(|&&l| l > 0 && weights.iter().all(|&w| w == l)) {
        let rep = verify_polarization_identity(&wh.base(), l)?;
        polarized = Some(rep.lhs.clone());
        stages.push(stage(
            "polarization_identity",
            Some(Verdict::from_bool(rep.equal)),
            json!({ "generators": rep.rhs.generators().len(), "only_in_lhs": strings(&rep.only_in_lhs), "only_in_rhs": strings(&rep.only_in_rhs) }),
        ));
    } else {
        stages.push(stage("polarization_identity", None, json!("weights are not uniform")));
    }

    // Uniform weights: the polarized symbolic power. Otherwise the cover
    // ideal of the expansion, which the identity says is the same thing.
    let (j, which) = match polarized {
        Some(p) => (p, "polarized_symbolic_power"),
        None => (cover_ideal(&h)?, "cover_ideal_of_expansion"),
    };
    let lq = linear_quotients_order(&j, a.lq_cap);
    let v = match &lq {
        LinearQuotients::Found { .. } => Verdict::Pass,
        LinearQuotients::NoneExists => Verdict::Fail,
        LinearQuotients::CapExceeded { .. } => Verdict::BudgetExceeded,
    };
    let lq_detail = match &lq {
        LinearQuotients::Found { order } => json!({ "ideal": which, "result": "found", "generators": order.len() }),
        other => {
            let mut v = to_value(other);
            v.as_object_mut().unwrap().insert("ideal".into(), json!(which));
            v
        }
    };
    stages.push(stage("linear_quotients", Some(v), lq_detail));

    let verdict = stages.iter().filter_map(|(v, _)| *v).fold(Verdict::Pass, Verdict::and);
    let body = json!({
        "weights": weights,
        "verdict": verdict,
        "stages": stages.into_iter().map(|(_, s)| s).collect::<Vec<_>>(),
    });
    Ok((verdict, body))
}

pub fn verify_theorem_a(a: &TheoremAArgs, g: &Globals) -> Run {
    let (input, source) = load(&a.input)?;
    let att = input.attachment()?;
    let n = att.facet_order.len();
    let runs: Vec<Vec<u32>> = match (ells(&a.ells), input.carried_weights()) {
        (Some([l]), _) => vec![vec![*l; n]],
        (Some(ls), _) => vec![ls.to_vec()],
        (None, Some(w)) => vec![w],
        (None, None) => (1..=a.lmax).map(|l| vec![l; n]).collect(),
    };
    let mut verdict = Verdict::Pass;
    let mut out = Vec::new();
    for w in &runs {
        let (v, body) = theorem_a_run(&att, w, a, g)?;
        verdict = verdict.and(v);
        out.push(body);
    }
    let result = json!({
        "cover": strings(&att.cover),
        "facet_order": strings(&att.facet_order),
        "runs": out,
    });
    done(source, verdict, result)
}

pub fn counterexamples(_a: &CounterexampleArgs, g: &Globals) -> Run {
    let ring = fixtures::ring_with_triangle();
    let square = fixtures::square_with_pure_skeleton();
    let whiskers = fixtures::whiskered_ring();
    let cases = [
        ("ring_bad_weights", "weights break the weight condition", ring.clone(), fixtures::ring_bad_weights()),
        (
            "square_pure_skeleton",
            "the attached skeleton complex is pure",
            square.clone(),
            vec![2; square.facet_order.len()],
        ),
        (
            "whiskered_ring",
            "the whiskered vertices are not a cycle cover",
            whiskers.clone(),
            vec![1; whiskers.facet_order.len()],
        ),
    ];
    let mut verdict = Verdict::Pass;
    let mut out = Vec::new();
    for (name, reason, att, weights) in cases {
        let wh = WeightedHypergraph::from_attachment(&att, weights.clone())?;
        let h = expand_hypergraph(&wh)?;
        let res = vd_check(&h, VdOptions { budget: g.budget, memoize: true })?;
        let v = match res.decision {
            Decision::No => Verdict::Pass,
            Decision::Yes => Verdict::Fail,
            Decision::BudgetExceeded => Verdict::BudgetExceeded,
        };
        let shedding = shedding_vertices(&h)?;
        let mut checks = vec![("not_vertex_decomposable", res.decision == Decision::No)];
        if name == "ring_bad_weights" {
            let x1 = "x1#1".parse()?;
            checks.push(("unique_shedding_vertex_x1#1", shedding == vec![x1]));
            let rest = h.delete_vertex(&shedding.first().cloned().unwrap_or("x1#1".parse()?))?;
            checks.push(("deletion_has_no_shedding_vertex", shedding_vertices(&rest)?.is_empty()));
        }
        let v = if checks.iter().all(|c| c.1) { v } else { Verdict::Fail };
        verdict = verdict.and(v);
        let checks: serde_json::Map<String, Value> =
            checks.into_iter().map(|(k, b)| (k.to_string(), json!(b))).collect();
        out.push(json!({
            "name": name,
            "outside_hypotheses": reason,
            "facets": strings(&att.facet_order),
            "weights": weights,
            "weight_condition": check_star_condition(&att, &weights)?,
            "expansion": size(&h),
            "shedding_vertices": strings(&shedding),
            "expected": Decision::No,
            "decision": res.decision,
            "checks": checks,
            "status": v,
        }));
    }
    Ok((vec![], Outcome { verdict, result: json!({ "cases": out }) }))
}

pub fn expand(a: &ExpandArgs, _g: &Globals) -> Run {
    let (input, source) = load(&a.input)?;
    let wh = input.weighted(ells(&a.ells))?;
    let mut h = expand_hypergraph(&wh)?;
    if a.strip {
        h = h.strip_isolated();
    }
    let result = json!({ "weights": wh.weights(), "size": size(&h), "hypergraph": h });
    done(source, Verdict::Pass, result)
}

fn ideal_of(input: &Input) -> Result<MonomialIdeal> {
    match input {
        Input::Ideal(i) => Ok(i.clone()),
        other => cover_ideal(&other.hypergraph()?),
    }
}

pub fn symbolic(a: &SymbolicArgs, _g: &Globals) -> Run {
    let (input, source) = load(&a.input)?;
    let j = ideal_of(&input)?;
    let s = j.symbolic_power(a.ell)?;
    let ordinary = j.power(a.ell)?;
    let mut r = json!({
        "ell": a.ell,
        "base": j,
        "generators": s.generators().len(),
        "equals_ordinary_power": s == ordinary,
        "symbolic_power": s,
    });
    if a.polarize {
        r.as_object_mut().unwrap().insert("polarized".into(), to_value(&s.polarize()?));
    }
    done(source, Verdict::Pass, r)
}

pub fn verify_identity(a: &IdentityArgs, _g: &Globals) -> Run {
    let (input, source) = load(&a.input)?;
    let h = input.hypergraph()?;
    let ls: Vec<u32> = match a.ell {
        Some(l) => vec![l],
        None => (1..=a.lmax).collect(),
    };
    let mut verdict = Verdict::Pass;
    let mut out = Vec::new();
    for l in ls {
        let rep = verify_polarization_identity(&h, l)?;
        verdict = verdict.and(Verdict::from_bool(rep.equal));
        out.push(json!({
            "ell": l,
            "equal": rep.equal,
            "lhs_generators": rep.lhs.generators().len(),
            "rhs_generators": rep.rhs.generators().len(),
            "only_in_lhs": strings(&rep.only_in_lhs),
            "only_in_rhs": strings(&rep.only_in_rhs),
        }));
    }
    done(source, verdict, json!({ "checks": out }))
}

fn state_summary(origin: &WeightedHypergraph, s: &TraceState, step: Option<String>) -> (bool, Value) {
    let d = check_constructible_duality(origin, s);
    let ok = d.forward_ok && d.backward_ok;
    let deleted: serde_json::Map<String, Value> = s.deleted.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let contracted: serde_json::Map<String, Value> =
        s.contracted.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    let v = json!({
        "r": s.r,
        "step": step,
        "size": size(&s.current),
        "stripped_size": size(&s.stripped()),
        "contracted": contracted,
        "deleted": deleted,
        "reduced_weights": s.reduced_weights,
        "hypergraph": s.current,
        "duality": {
            "forward": d.forward_ok,
            "backward": d.backward_ok,
            "stripped_forward": d.stripped_forward_ok,
            "unconstructible_edges": strings(&d.unconstructible_edges),
            "uncovered_sets": strings(&d.uncovered_sets),
        },
    });
    (ok, v)
}

pub fn trace(a: &TraceArgs, _g: &Globals) -> Run {
    let (input, source) = load(&a.input)?;
    if a.witness {
        let att = input.attachment()?;
        let weights = input.weighted(ells(&a.ells))?.weights().to_vec();
        let moves = parse_moves(&a.moves)?;
        let run = witness_sequence(&att, &weights, &moves)?;
        let rep = check_witness_properties(&att, &run)?;
        let origin = &run.trace.origin;
        let mut all_dual = true;
        let states: Vec<Value> = run
            .states
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let step = i.checked_sub(1).map(|q| run.trace.steps[q].to_string());
                let (ok, v) = state_summary(origin, s, step);
                all_dual &= ok;
                v
            })
            .collect();
        let result = json!({
            "weights": weights,
            "steps": strings(&run.trace.steps),
            "properties": rep,
            "states": states,
        });
        return done(source, Verdict::from_bool(rep.all_pass() && all_dual), result);
    }
    let origin = input.weighted(ells(&a.ells))?;
    let steps = parse_steps(&a.moves)?;
    let states = apply_trace(&origin, &steps, a.strict)?;
    let mut all = true;
    let out: Vec<Value> = states
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let (ok, v) = state_summary(&origin, s, i.checked_sub(1).map(|q| steps[q].to_string()));
            all &= ok;
            v
        })
        .collect();
    let result = json!({ "weights": origin.weights(), "strict": a.strict, "states": out });
    done(source, Verdict::from_bool(all), result)
}

pub fn vd(a: &VdArgs, g: &Globals) -> Run {
    let (input, source) = load(&a.input)?;
    let (h, weights) = target(&input, ells(&a.ells))?;
    let out = vd_check(&h, VdOptions { budget: g.budget, memoize: !a.no_memo })?;
    let verdict = match out.decision {
        Decision::Yes => Verdict::Pass,
        Decision::No => Verdict::Fail,
        Decision::BudgetExceeded => Verdict::BudgetExceeded,
    };
    let mut r = json!({
        "weights": weights,
        "size": size(&h),
        "shedding_vertices": strings(&shedding_vertices(&h)?),
        "decision": out.decision,
        "stats": out.stats,
    });
    if let Some(w) = &out.witness {
        let m = r.as_object_mut().unwrap();
        m.insert("certificate_verified".into(), json!(verify_certificate(&h, w)?));
        if a.witness {
            m.insert("witness".into(), serde_json::to_value(w).map_err(|e| Error::Internal(e.to_string()))?);
        }
    }
    done(source, verdict, r)
}

pub fn linear_quotients(a: &LqArgs, _g: &Globals) -> Run {
    let (input, source) = load(&a.input)?;
    let i = match &input {
        Input::Ideal(i) => i.clone(),
        other => cover_ideal(&target(other, ells(&a.ells))?.0)?,
    };
    let lq = linear_quotients_order(&i, a.cap);
    let verdict = match lq {
        LinearQuotients::Found { .. } => Verdict::Pass,
        LinearQuotients::NoneExists => Verdict::Fail,
        LinearQuotients::CapExceeded { .. } => Verdict::BudgetExceeded,
    };
    let r = json!({
        "generators": i.generators().len(),
        "equigenerated": i.is_equigenerated(),
        "search": lq,
    });
    done(source, verdict, r)
}

pub fn cm(a: &CmArgs, _g: &Globals) -> Run {
    let (input, source) = load(&a.input)?;
    let (delta, of) = match &input {
        Input::Complex { complex, .. } | Input::Skeleton { complex, .. } if !a.facet_ideal => {
            (complex.clone(), "the complex")
        }
        Input::Weighted(_) | Input::Assembly { weights: Some(_), .. } => {
            (target(&input, None)?.0.independence_complex()?, "the independence complex of the expansion")
        }
        Input::Ideal(_) => return Err(Error::InvalidArgument("cm needs a complex or a hypergraph".into())),
        _ => (input.hypergraph()?.independence_complex()?, "the independence complex"),
    };
    let ok = is_cohen_macaulay(&delta, a.face_cap)?;
    let betti = reduced_betti_capped(&delta, a.face_cap)?;
    let r = json!({
        "tested": of,
        "vertices": delta.universe().len(),
        "facets": delta.facets().len(),
        "dim": delta.dim(),
        "pure": delta.is_pure(),
        "reduced_betti": betti.0,
        "cohen_macaulay": ok,
    });
    done(source, Verdict::from_bool(ok), r)
}

pub fn theorem_b(a: &TheoremBArgs, _g: &Globals) -> Run {
    let (input, source) = load(&a.input)?;
    let c = input.complex()?;
    let caps = Caps { faces: a.face_cap, hochster_vars: a.hochster_cap, lq_nodes: a.lq_cap };
    let rep = verify_theorem_b(&c, a.lmax, caps)?;
    done(source, Verdict::from_bool(rep.consistent), to_value(&rep))
}
