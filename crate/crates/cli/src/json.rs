//! Minimal ordered JSON writer. Floats go through `fmt_f64` so every number
//! prints with 17 significant digits and output is byte-stable.

use mcshape::format::fmt_f64;

#[derive(Default)]
pub struct Obj {
    fields: Vec<(&'static str, String)>,
}

impl Obj {
    pub fn new() -> Obj {
        Obj::default()
    }

    pub fn num(mut self, key: &'static str, v: f64) -> Obj {
        self.fields.push((key, fmt_f64(v)));
        self
    }

    pub fn int(mut self, key: &'static str, v: impl Into<i128>) -> Obj {
        self.fields.push((key, v.into().to_string()));
        self
    }

    pub fn boolean(mut self, key: &'static str, v: bool) -> Obj {
        self.fields.push((key, v.to_string()));
        self
    }

    pub fn str(mut self, key: &'static str, v: &str) -> Obj {
        self.fields.push((key, quote(v)));
        self
    }

    /// Inserts already-serialised JSON.
    pub fn raw(mut self, key: &'static str, v: String) -> Obj {
        self.fields.push((key, v));
        self
    }

    pub fn finish(self) -> String {
        let body: Vec<String> = self
            .fields
            .into_iter()
            .map(|(k, v)| format!("\"{k}\":{v}"))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

pub fn array<I: IntoIterator<Item = String>>(items: I) -> String {
    format!("[{}]", items.into_iter().collect::<Vec<_>>().join(","))
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => out.push_str(&format!("\\u{:04x}", c as u32)),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}
