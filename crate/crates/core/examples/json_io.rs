//! Reading and writing the JSON formats used by the `qf` binary.

use qflab::json::{complex_from_json, form_from_json, form_to_json};
use qflab::quadratic::hyperbolic;
use serde_json::json;

fn main() {
    let c = complex_from_json(&json!({"field": "Q", "degrees": {"-1": 1, "0": 1}, "d": {"-1": [[3]]}}), None).unwrap();
    let h = hyperbolic(&c, 0, 0).unwrap();
    let text = serde_json::to_string_pretty(&form_to_json(&h)).unwrap();
    println!("{text}");
    let back = form_from_json(&serde_json::from_str(&text).unwrap(), None, None).unwrap();
    println!("round trip equal: {}", back == h);

    let gram = form_from_json(&json!({"shift": 0, "blocks": {"0": [[1, "1/2"], ["1/2", 0]]}}), None, None).unwrap();
    println!("Gram form nondegenerate: {}", gram.is_nondegenerate());
    println!("float entries: {}", form_from_json(&json!({"blocks": {"0": [[1.5]]}}), None, None).unwrap_err());
}
