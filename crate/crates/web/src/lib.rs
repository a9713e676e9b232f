//! Browser bindings: orbit census and Hecke fibers over F_q, and a small
//! Gröbner basis calculator.

use serde_json::{json, Value};
use tamelang::algkernel::{Ideal, MonomialOrder, MultiPoly, PolyRing};
use tamelang::fqbun::{self, aut_bundle, aut_order, default_window, Fq, OrbitLabel};
use wasm_bindgen::prelude::*;

pub fn census_json(q: u32, d: u32) -> Result<Value, String> {
    let f = Fq::new(q).map_err(|e| e.to_string())?;
    if d > 8 {
        return Err("gap limited to 8 in the demo".into());
    }
    let rows: Vec<Value> = fqbun::orbit_census(d, f)
        .into_iter()
        .map(|(l, n)| json!({"label": l.to_string(), "size": n, "aut": aut_order(l, q).unwrap().to_string()}))
        .collect();
    Ok(json!({
        "q": q,
        "d": d,
        "aut_bundle": aut_bundle(d, q).to_string(),
        "total": (q as u64 + 1).pow(3),
        "orbits": rows,
        "mass": fqbun::groupoid_mass(d, f).unwrap().to_string(),
    }))
}

pub fn hecke_json(label: &str, x: u32, q: u32) -> Result<Value, String> {
    let f = Fq::new(q).map_err(|e| e.to_string())?;
    let b: OrbitLabel = label.parse()?;
    if b.gap() > 8 {
        return Err("gap limited to 8 in the demo".into());
    }
    let counts = fqbun::hecke_fiber_counts(b, x, f, default_window(b.gap() + 1)).map_err(|e| e.to_string())?;
    let rep = fqbun::ParabolicPoint::representative(b);
    let lines: Vec<String> = rep.lines.iter().map(|p| p.to_string()).collect();
    let al: Vec<Value> = tamelang::marked::Marked::ALL
        .iter()
        .map(|&r| {
            let t = fqbun::atkin_lehner_label(b, r, f, default_window(b.gap() + 1)).unwrap();
            json!({"at": r.to_string(), "label": t.to_string()})
        })
        .collect();
    Ok(json!({
        "source": b.to_string(),
        "representative": lines,
        "x": x,
        "fiber": counts.iter().map(|(l, n)| json!({"label": l.to_string(), "count": n})).collect::<Vec<_>>(),
        "atkin_lehner": al,
    }))
}

pub fn groebner_json(vars: &str, gens: &str, probe: &str) -> Result<Value, String> {
    let names: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let ring = PolyRing::new(&names, MonomialOrder::Grevlex).map_err(|e| e.to_string())?;
    let polys: Vec<&str> = gens.split([';', '\n']).map(str::trim).filter(|s| !s.is_empty()).collect();
    let ideal = Ideal::parse(&ring, &polys).map_err(|e| e.to_string())?;
    let gb: Vec<String> = ideal.groebner_basis().iter().map(|p| p.to_string()).collect();
    let mut out = json!({
        "basis": gb,
        "krull_dim": ideal.krull_dim().map_err(|e| e.to_string())?,
        "unit": ideal.is_unit(),
    });
    if !probe.trim().is_empty() {
        let p = MultiPoly::parse(&ring, probe).map_err(|e| e.to_string())?;
        out["normal_form"] = json!(ideal.normal_form(&p).map_err(|e| e.to_string())?.to_string());
        out["member"] = json!(ideal.contains(&p).map_err(|e| e.to_string())?);
        out["radical_member"] = json!(ideal.radical_contains(&p).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

fn js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

/// Orbit sizes and stabilizer orders at gap `d` over `F_q`, as JSON.
#[wasm_bindgen]
pub fn orbit_census(q: u32, d: u32) -> Result<String, JsError> {
    js(census_json(q, d))
}

/// Hecke modifications at `x` of the orbit `label`, counted by target, as JSON.
#[wasm_bindgen]
pub fn hecke_fiber(label: &str, x: u32, q: u32) -> Result<String, JsError> {
    js(hecke_json(label, x, q))
}

/// Reduced Gröbner basis (grevlex), Krull dimension and optional membership.
#[wasm_bindgen]
pub fn groebner(vars: &str, gens: &str, probe: &str) -> Result<String, JsError> {
    js(groebner_json(vars, gens, probe))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_q2() {
        let v = census_json(2, 0).unwrap();
        assert_eq!(v["orbits"].as_array().unwrap().len(), 5);
        assert_eq!(v["mass"], "9/2");
        assert!(census_json(7, 0).is_err());
    }

    #[test]
    fn hecke_open_fiber() {
        let v = hecke_json("c_0(∅)", 2, 5).unwrap();
        let total: u64 = v["fiber"].as_array().unwrap().iter().map(|e| e["count"].as_u64().unwrap()).sum();
        assert_eq!(total, 6);
        assert!(hecke_json("c_0(0,1)", 1, 5).is_err());
        assert!(hecke_json("nonsense", 2, 5).is_err());
    }

    #[test]
    fn groebner_calc() {
        let v = groebner_json("a,b,x,y", "a*x + b*y; a*x^2 + b*y^2", "b*x*y - b*y^2").unwrap();
        assert_eq!(v["krull_dim"], 2);
        assert_eq!(v["member"], true);
        assert!(groebner_json("x", "x +", "").is_err());
    }
}
