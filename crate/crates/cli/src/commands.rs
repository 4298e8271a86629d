use std::fs;

use monofan::cmc::build_cmc;
use monofan::cmcx::{canonical_t0, check_cmcx, is_simplicial, ncc, Cmcx, CmcxViolation, TauTable};
use monofan::construct::{construct_cmcx_with, Caps};
use monofan::fan::{check_compatibility, refine_fan, RefinedFan};
use monofan::fixtures::{fixture, hosono_takagi_census, NAMES};
use monofan::hyper::{hyperintersect, HyperEngine, IndexedPath};
use monofan::io::{
    cmcx_from_doc, cmcx_to_doc, cone_to_doc, fan_from_doc, fan_to_doc, from_json, matrices_from_doc, matrix_to_doc,
    system_from_doc, system_to_doc, to_json, CmcxDoc, FanDoc, MatricesDoc, SystemDoc,
};
use monofan::strata::{StratSystem, Stratum};
use monofan::weightfilt::{cone_weight_consistency, weight_filtration, WeightFiltration};
use serde_json::{json, Value};

use crate::report::{Failure, Report};

type Outcome = Result<Report, Failure>;

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::io(path, e))
}

fn write(path: &str, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::io(path, e))
}

pub fn load_system(path: &str) -> Result<StratSystem, Failure> {
    Ok(system_from_doc(&from_json::<SystemDoc>(&read(path)?)?)?)
}

fn load_cmcx(path: &str) -> Result<Cmcx, Failure> {
    Ok(cmcx_from_doc(&from_json::<CmcxDoc>(&read(path)?)?)?)
}

fn load_fan(path: &str) -> Result<RefinedFan, Failure> {
    Ok(fan_from_doc(&from_json::<FanDoc>(&read(path)?)?)?)
}

fn name(names: &[String], s: &Stratum) -> String {
    s.indices().iter().map(|&i| names[i].as_str()).collect::<Vec<_>>().join(",")
}

fn parse_stratum(names: &[String], text: &str) -> Result<Stratum, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Stratum::empty());
    }
    let idx = text
        .split(',')
        .map(|n| {
            let n = n.trim();
            names.iter().position(|d| d == n).ok_or_else(|| Failure::parse(format!("unknown divisor {n:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Stratum::new(idx))
}

fn same_divisors(a: &[String], b: &[String]) -> Result<(), Failure> {
    if a != b {
        return Err(Failure::from(monofan::Error::Invalid(format!(
            "divisor lists differ: {} vs {}",
            a.join(","),
            b.join(",")
        ))));
    }
    Ok(())
}

pub fn validate(path: &str) -> Outcome {
    let s = load_system(path)?;
    let r = s.validate();
    let d = s.divisors();
    let mut body = json!({
        "divisors": d.len(),
        "strata": s.nonempty().iter().filter(|t| !t.is_empty()).count(),
        "not_pointed": r.not_pointed.iter().map(|t| name(d, t)).collect::<Vec<_>>(),
        "embeddable": r.embeddable,
    });
    match &r.violation {
        Some(v) => {
            body["violation"] = json!({ "message": v.to_string(), "witness": v });
            Ok(Report::fail("validate", body))
        }
        None => {
            body["simplicial"] = json!(is_simplicial(&s)?);
            Ok(Report::pass("validate", body))
        }
    }
}

pub fn cmc(path: &str, stratum: &str) -> Outcome {
    let s = load_system(path)?;
    let j = parse_stratum(s.divisors(), stratum)?;
    let c = build_cmc(&s, &j)?;
    Ok(Report::pass(
        "cmc",
        json!({
            "stratum": name(s.divisors(), &j),
            "ambient": c.ambient(),
            "cone": cone_to_doc(c.cone()),
            "projection": matrix_to_doc(c.proj()),
            "section": matrix_to_doc(c.section()),
        }),
    ))
}

pub fn cmcx_build(path: &str, output: Option<&str>, caps: &Caps) -> Outcome {
    let s = load_system(path)?;
    let built = construct_cmcx_with(&s, caps)?;
    let doc = cmcx_to_doc(&built.cmcx)?;
    let mut body = json!({
        "strata": built.cmcx.complexes().len(),
        "cells": built.cmcx.total_cells(),
        "records": built.records,
        "rounds": built.rounds,
        "global_scaling": built.global_scaling,
    });
    match output {
        Some(out) => {
            write(out, &to_json(&doc))?;
            body["output"] = json!(out);
        }
        None => body["cmcx"] = json!(doc),
    }
    Ok(Report::pass("cmcx-build", body))
}

pub fn cmcx_check(path: &str) -> Outcome {
    let c = load_cmcx(path)?;
    let d = c.divisors();
    let report = check_cmcx(&c)?;
    let body = json!({ "strata": c.complexes().len(), "cells": c.total_cells() });
    let Some(v) = report.violation else {
        return Ok(Report::pass("cmcx-check", body));
    };
    let witness = match &v {
        CmcxViolation::NotSupported { stratum } => json!({ "kind": "not-supported", "stratum": name(d, stratum) }),
        CmcxViolation::NotEmbedded { sub, sup, cone, image } => json!({
            "kind": "not-embedded",
            "sub": name(d, sub),
            "sup": name(d, sup),
            "cone": cone,
            "image": image,
        }),
    };
    let mut body = body;
    body["violation"] = json!({ "message": v.to_string(), "witness": witness });
    Ok(Report::fail("cmcx-check", body))
}

pub fn ncc_cmd(path: &str, cmcx: Option<&str>, stratum: Option<&str>) -> Outcome {
    let s = load_system(path)?;
    let (table, names) = match cmcx {
        Some(p) => {
            let t = load_cmcx(p)?;
            same_divisors(s.divisors(), t.divisors())?;
            let rf = refine_fan(&s, &t, true)?;
            (rf.tau_table(&s, &t)?, rf.all_divisors())
        }
        None => (TauTable::raw(&s)?, s.divisors().to_vec()),
    };
    let query: Vec<Stratum> = match stratum {
        Some(text) => vec![parse_stratum(&names, text)?],
        None => table.strata().iter().filter(|j| !j.is_empty()).cloned().collect(),
    };
    let mut closures = Vec::new();
    for j in &query {
        let r = ncc(&table, j)?;
        closures.push(json!({
            "stratum": name(&names, j),
            "closure": r.members.iter().map(|m| name(&names, m)).collect::<Vec<_>>(),
            "iterations": r.iterations,
        }));
    }
    Ok(Report::pass("ncc", json!({ "divisors": names, "closures": closures })))
}

fn scissors_json(names: &[String], sc: &monofan::hyper::Scissors) -> Value {
    json!({ "left": name(names, &sc.left), "apex": name(names, &sc.apex), "right": name(names, &sc.right) })
}

pub fn hyperint_path(path: &str, text: &str) -> Outcome {
    let s = load_system(path)?;
    let d = s.divisors();
    let seq = text.split('|').map(|t| parse_stratum(d, t)).collect::<Result<Vec<_>, _>>()?;
    let p = IndexedPath::new(&s, seq)?;
    let h = hyperintersect(&s, &p)?;
    Ok(Report::pass(
        "hyperint",
        json!({
            "from": name(d, &h.from),
            "to": name(d, &h.to),
            "scissors": h.scissors.iter().map(|sc| scissors_json(d, sc)).collect::<Vec<_>>(),
            "value_in_from": cone_to_doc(&h.value_in_from),
            "value_in_to": cone_to_doc(&h.value_in_to),
            "chart": matrix_to_doc(&h.chart),
        }),
    ))
}

pub fn hyperint_enumerate(path: &str, from: &str, caps: &Caps) -> Outcome {
    let s = load_system(path)?;
    let d = s.divisors();
    let start = parse_stratum(d, from)?;
    s.check(&start)?;
    let e = HyperEngine::new(&s)?.enumerate(&start, caps.states)?;
    let records: Vec<Value> = e
        .records
        .iter()
        .map(|r| {
            json!({
                "end": name(d, &r.end),
                "value_in_start": cone_to_doc(&r.value_in_start),
                "value_in_end": cone_to_doc(&r.value_in_end),
            })
        })
        .collect();
    Ok(Report::pass(
        "hyperint",
        json!({
            "start": name(d, &start),
            "states": e.records.len(),
            "values": e.values.iter().map(cone_to_doc).collect::<Vec<_>>(),
            "records": records,
        }),
    ))
}

pub fn refine(path: &str, cmcx: &str, output: Option<&str>, simplicialize: bool) -> Outcome {
    let s = load_system(path)?;
    let t = load_cmcx(cmcx)?;
    same_divisors(s.divisors(), t.divisors())?;
    let rf = refine_fan(&s, &t, simplicialize)?;
    let doc = fan_to_doc(&rf)?;
    let mut body = json!({
        "new_rays": doc.new_rays.iter().map(|r| json!({ "name": r.name, "parent": r.parent.join(",") })).collect::<Vec<_>>(),
        "simplicial": rf.is_simplicial(),
        "non_simplicial": doc.non_simplicial.len(),
        "non_unimodular": doc.non_unimodular.len(),
    });
    match output {
        Some(out) => {
            write(out, &to_json(&doc))?;
            body["output"] = json!(out);
        }
        None => body["fan"] = json!(doc),
    }
    Ok(Report::pass("refine-fan", body))
}

pub fn check_compat(fan: &str, cmcx: &str) -> Outcome {
    let rf = load_fan(fan)?;
    let t = load_cmcx(cmcx)?;
    same_divisors(rf.divisors(), t.divisors())?;
    let r = check_compatibility(&rf, &t)?;
    let d = rf.divisors();
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| json!({ "stratum": name(d, &f.stratum), "cone": f.cone, "matches": f.matches }))
        .collect();
    let body = json!({ "checked": r.checked, "failures": failures });
    Ok(if r.passed() { Report::pass("check-compat", body) } else { Report::fail("check-compat", body) })
}

fn filtration_json(w: &WeightFiltration) -> Value {
    let steps: Vec<Value> = w
        .steps()
        .iter()
        .map(|(k, sub)| {
            json!({
                "k": k,
                "dim": sub.dim(),
                "graded": w.graded_dim(*k),
                "basis": sub.basis().iter().map(|b| b.iter().map(monofan::exactlin::format_rat).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "center": w.center(), "index": w.index(), "ambient": w.ambient(), "steps": steps })
}

pub fn weightfilt(path: &str, center: i64, seed: u64) -> Outcome {
    let ms = matrices_from_doc(&from_json::<MatricesDoc>(&read(path)?)?)?;
    if let [m] = ms.as_slice() {
        let w = weight_filtration(m, center)?;
        return Ok(Report::pass("weightfilt", json!({ "filtration": filtration_json(&w) })));
    }
    let c = cone_weight_consistency(&ms, center, seed)?;
    let samples: Vec<Vec<String>> =
        c.samples.iter().map(|v| v.iter().map(monofan::exactlin::format_rat).collect()).collect();
    let mut body = json!({
        "matrices": ms.len(),
        "seed": seed,
        "samples": samples,
        "consistent": c.consistent(),
        "filtration": filtration_json(&c.filtrations[0]),
    });
    Ok(match c.disagreement {
        None => Report::pass("weightfilt", body),
        Some(i) => {
            body["disagreement"] = json!({ "sample": i, "filtration": filtration_json(&c.filtrations[i]) });
            Report::fail("weightfilt", body)
        }
    })
}

pub fn fixtures(which: Option<&str>, output: Option<&str>, caps: &Caps) -> Outcome {
    let Some(n) = which else {
        let list: Vec<Value> = NAMES
            .iter()
            .map(|n| {
                let s = fixture(n).expect("bundled");
                json!({ "name": n, "divisors": s.divisors().len(), "strata": s.nonempty().len() - 1 })
            })
            .collect();
        return Ok(Report::pass("fixtures", json!({ "fixtures": list })));
    };
    if !NAMES.contains(&n) {
        return Err(Failure::parse(format!("unknown fixture {n:?}; known: {}", NAMES.join(", "))));
    }
    let s = fixture(n)?;
    let d = s.divisors();
    let mut ok = true;
    let r = s.validate();
    ok &= r.is_valid();
    let simplicial = is_simplicial(&s)?;
    let (kind, c) = if simplicial {
        ("canonical", canonical_t0(&s)?)
    } else {
        ("constructed", construct_cmcx_with(&s, caps)?.cmcx)
    };
    let check = check_cmcx(&c)?;
    ok &= check.passed();
    let mut body = json!({
        "name": n,
        "divisors": d.len(),
        "strata": s.nonempty().len() - 1,
        "valid": r.is_valid(),
        "simplicial": simplicial,
        "complex": { "kind": kind, "cells": c.total_cells(), "check": check.passed() },
    });
    if n == "hosono-takagi" {
        let census: Vec<Value> = hosono_takagi_census(&s)
            .iter()
            .map(|e| {
                let found = s.monodromy_cone(&e.stratum).dim();
                ok &= found == e.dim;
                json!({ "label": e.label, "stratum": name(d, &e.stratum), "expected": e.dim, "dim": found })
            })
            .collect();
        body["census"] = json!(census);
    }
    if let Some(out) = output {
        write(out, &to_json(&system_to_doc(&s)))?;
        body["output"] = json!(out);
    }
    Ok(if ok { Report::pass("fixtures", body) } else { Report::fail("fixtures", body) })
}
