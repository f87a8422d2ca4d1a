//! WebAssembly bindings for the browser demo.
//!
//! Every export returns a JSON string; failures come back as `{"error": "..."}`.

use relbell::bell::{chsh_composite, ChshSettings};
use relbell::composite::{schmidt_decompose, CompositeState};
use relbell::hilbert::{AmplitudePair, DimensionId, DocumentState, Observable};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn respond(result: Result<Value, relbell::Error>) -> String {
    match result {
        Ok(v) => v.to_string(),
        Err(e) => json!({ "error": e.to_string() }).to_string(),
    }
}

fn order_effect_value(alpha_first: f64, alpha_second: f64) -> Result<Value, relbell::Error> {
    let first = DimensionId::new("first");
    let second = DimensionId::new("second");
    let amps = [
        (first.clone(), AmplitudePair::from_alpha(alpha_first)?),
        (second.clone(), AmplitudePair::from_alpha(alpha_second)?),
    ]
    .into_iter()
    .collect();
    let doc = DocumentState::new("demo", first.clone(), amps)?;
    let effect = doc.order_effect(&first, &second)?;
    let (second_plus, _) = doc.basis(&second)?;
    Ok(json!({
        "state": doc.ket(),
        "first": [1.0, 0.0],
        "second": second_plus,
        "forward": effect.forward,
        "reverse": effect.reverse,
        "ratio": effect.ratio,
    }))
}

/// Judgment order effect for a document with amplitude `alpha_first` along
/// the first dimension and `alpha_second` along the second.
///
/// Vectors are in the first dimension's coordinates.
#[wasm_bindgen]
pub fn order_effect(alpha_first: f64, alpha_second: f64) -> String {
    respond(order_effect_value(alpha_first, alpha_second))
}

fn settings(angles: [f64; 4]) -> ChshSettings {
    let [a1, a2, b1, b2] = angles.map(Observable::from_angle);
    ChshSettings { a1, a2, b1, b2 }
}

fn family(t: f64) -> CompositeState {
    let (s, c) = t.sin_cos();
    CompositeState::new([c, 0.0, 0.0, s]).expect("unit by construction")
}

fn chsh_value(t: f64, angles: [f64; 4]) -> Value {
    let res = chsh_composite(&family(t), &settings(angles));
    let sd = schmidt_decompose(&family(t));
    json!({
        "statistic": res.statistic,
        "signed_statistic": res.signed_statistic,
        "violated": res.violated,
        "terms": res.terms,
        "singular_values": sd.singular_values,
    })
}

/// CHSH statistic of `cos t |00> + sin t |11>` with observables at angles
/// `a1, a2` on the first document and `b1, b2` on the second.
#[wasm_bindgen]
pub fn chsh(t: f64, a1: f64, a2: f64, b1: f64, b2: f64) -> String {
    chsh_value(t, [a1, a2, b1, b2]).to_string()
}

fn chsh_curve_value(a1: f64, a2: f64, b1: f64, b2: f64, samples: usize) -> Vec<[f64; 2]> {
    let obs = settings([a1, a2, b1, b2]);
    let samples = samples.max(2);
    (0..samples)
        .map(|i| {
            let t = std::f64::consts::FRAC_PI_2 * i as f64 / (samples - 1) as f64;
            [t, chsh_composite(&family(t), &obs).statistic]
        })
        .collect()
}

/// `[t, statistic]` pairs for `t` evenly spaced over `[0, pi/2]`.
#[wasm_bindgen]
pub fn chsh_curve(a1: f64, a2: f64, b1: f64, b2: f64, samples: usize) -> String {
    json!(chsh_curve_value(a1, a2, b1, b2, samples)).to_string()
}

fn schmidt_value(c: [f64; 4]) -> Result<Value, relbell::Error> {
    let norm = c.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !norm.is_finite() || norm == 0.0 {
        return Err(relbell::Error::NotNormalized {
            what: "composite state",
            norm_sq: norm * norm,
        });
    }
    let psi = CompositeState::new(c.map(|x| x / norm))?;
    let sd = schmidt_decompose(&psi);
    Ok(json!({
        "coefficients": psi.coefficients(),
        "singular_values": sd.singular_values,
        "rank": sd.rank,
        "separable": sd.is_separable(),
    }))
}

/// Schmidt decomposition of `c00 |00> + c01 |01> + c10 |10> + c11 |11>`,
/// rescaled to unit norm first.
#[wasm_bindgen]
pub fn schmidt(c00: f64, c01: f64, c10: f64, c11: f64) -> String {
    respond(schmidt_value([c00, c01, c10, c11]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, SQRT_2};

    fn parse(s: String) -> Value {
        serde_json::from_str(&s).unwrap()
    }

    #[test]
    fn order_effect_worked_document() {
        // reliability judged first, topicality second
        let v = parse(order_effect(0.9715, 0.3535));
        let forward = v["forward"].as_f64().unwrap();
        let reverse = v["reverse"].as_f64().unwrap();
        assert!((forward - 0.3014).abs() < 1e-3);
        assert!((reverse - 0.0399).abs() < 1e-3);
        let state: Vec<f64> = serde_json::from_value(v["state"].clone()).unwrap();
        assert!((state[0] - 0.9715).abs() < 1e-12);
    }

    #[test]
    fn order_effect_rejects_out_of_range() {
        assert!(parse(order_effect(1.5, 0.2))["error"].is_string());
    }

    #[test]
    fn chsh_peaks_at_maximal_entanglement() {
        let v = parse(chsh(FRAC_PI_4, FRAC_PI_4, 0.0, FRAC_PI_8, 3.0 * FRAC_PI_8));
        assert!((v["statistic"].as_f64().unwrap() - 2.0 * SQRT_2).abs() < 1e-9);
        assert_eq!(v["violated"], true);
        let v = parse(chsh(0.0, FRAC_PI_4, 0.0, FRAC_PI_8, 3.0 * FRAC_PI_8));
        assert!(v["statistic"].as_f64().unwrap() <= 2.0 + 1e-10);
        assert_eq!(v["violated"], false);
    }

    #[test]
    fn chsh_curve_matches_closed_form() {
        // For these settings the statistic is sqrt(2) (1 + sin 2t).
        let curve = chsh_curve_value(FRAC_PI_4, 0.0, FRAC_PI_8, 3.0 * FRAC_PI_8, 33);
        assert_eq!(curve.len(), 33);
        for [t, s] in curve {
            assert!(
                (s - SQRT_2 * (1.0 + (2.0 * t).sin())).abs() < 1e-12,
                "{t} {s}"
            );
        }
    }

    #[test]
    fn schmidt_rescales_and_ranks() {
        let v = parse(schmidt(1.0, 0.0, 0.0, 1.0));
        assert_eq!(v["rank"], 2);
        assert_eq!(v["separable"], false);
        let v = parse(schmidt(2.0, 4.0, 1.0, 2.0));
        assert_eq!(v["rank"], 1);
        assert!(parse(schmidt(0.0, 0.0, 0.0, 0.0))["error"].is_string());
    }
}
