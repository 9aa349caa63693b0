//! Deterministic JSON output: sorted object keys, two-space indentation,
//! LF line endings, one trailing newline.

use serde::Serialize;

pub fn to_canonical_string<T: Serialize + ?Sized>(value: &T) -> String {
    // Routing through `Value` sorts keys (serde_json's map is a BTreeMap).
    let value = serde_json::to_value(value).expect("serializable value");
    let mut out = serde_json::to_string_pretty(&value).expect("JSON value serializes");
    out.push('\n');
    out
}
