//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export takes the same text forms as the command-line tool and
//! returns either rendered text or a JSON document.

use wasm_bindgen::prelude::*;

use k3walls::charge::{heart_position, ChargeFamily};
use k3walls::ku::{ChargeOut, Descent};
use k3walls::mukai::K3Context;
use k3walls::parse;
use k3walls::walls::walls_on_path;

fn context(has_lines: bool, has_conics: bool) -> K3Context {
    K3Context::gushel_mukai().with_lines(has_lines).with_conics(has_conics)
}

pub fn walls_text(
    vector: &str,
    t_range: &str,
    has_lines: bool,
    has_conics: bool,
    json: bool,
) -> Result<String, String> {
    let v = parse::reference_class(vector)?;
    let iv = parse::t_range(t_range)?;
    let rep = walls_on_path(&context(has_lines, has_conics), &ChargeFamily::gushel_mukai(), &v, &iv)
        .map_err(|e| e.to_string())?;
    Ok(if json { serde_json::to_string_pretty(&rep).map_err(|e| e.to_string())? } else { rep.render_table() })
}

pub fn charge_text(profile: &str, t: &str) -> Result<String, String> {
    let fam = ChargeFamily::gushel_mukai();
    let w = parse::mukai_profile(profile)?;
    let t = parse::rational(t)?;
    let heart = heart_position(&fam, &w, &t).map_err(|e| e.to_string())?;
    let z = fam.charge(&w).at(&t);
    let (re, im) = z.to_f64();
    let exact = ChargeOut::from(z);
    Ok(serde_json::json!({
        "exact": exact.to_string(),
        "re": re,
        "im": im,
        "heart": format!("{heart:?}"),
        "self_pairing": w.self_pairing(),
    })
    .to_string())
}

pub fn descent_text(kind: &str, class: &str, t: &str) -> Result<String, String> {
    let fam = ChargeFamily::gushel_mukai();
    let t = parse::rational(t)?;
    let d = match kind {
        "mukai" => Descent::of_mukai(&fam, &parse::mukai_profile(class)?, &t),
        "ku" => Descent::of_ku(&fam, &parse::ku_class(class)?, &t),
        other => return Err(format!("unknown class kind `{other}`")),
    };
    Ok(d.map_err(|e| e.to_string())?.render_table())
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

/// Walls for `r,c,s` over a t-range such as `1:40` or `[1,inf)`.
#[wasm_bindgen]
pub fn walls(
    vector: &str,
    t_range: &str,
    has_lines: bool,
    has_conics: bool,
    json: bool,
) -> Result<String, JsError> {
    js(walls_text(vector, t_range, has_lines, has_conics, json))
}

/// Central charge of `r,d,q,s` at `t`, as JSON.
#[wasm_bindgen]
pub fn charge(profile: &str, t: &str) -> Result<String, JsError> {
    js(charge_text(profile, t))
}

/// Descent data for `kind` = `mukai` (`r,d,q,s`) or `ku` (`a,b`).
#[wasm_bindgen]
pub fn descent(kind: &str, class: &str, t: &str) -> Result<String, JsError> {
    js(descent_text(kind, class, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn walls_summary() {
        let text = walls_text("1,0,-1", "1:40", true, true, false).unwrap();
        assert!(text.contains("11         flopping"));
        let json = walls_text("1,0,-1", "1:40", false, true, true).unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["classification"].as_array().unwrap().iter().all(|c| c["kind"] == "NotAWall"));
        assert!(walls_text("1,0", "1:40", true, true, false).unwrap_err().contains("`s`"));
    }

    #[test]
    fn charge_values() {
        let v: serde_json::Value = serde_json::from_str(&charge_text("1,0,0,-1", "1").unwrap()).unwrap();
        assert_eq!(v["exact"], "2/5 + 4/5*sqrt(1)*i");
        assert_eq!(v["heart"], "StrictUpper");
        assert!(charge_text("1,0,0,-1", "0").is_err());
    }

    #[test]
    fn descent_tables() {
        assert!(descent_text("ku", "-1,0", "1").unwrap().contains("(1, 0, 0, -1)"));
        assert!(descent_text("mukai", "1,0,0,-1", "1").unwrap().contains("(-2, 0)"));
        assert!(descent_text("other", "1,0", "1").is_err());
    }
}
