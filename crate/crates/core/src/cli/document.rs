//! Line-oriented output documents: a header, `key: value` lines, and an
//! optional certificate block.

use crate::error::{Error, Result};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub lines: Vec<(String, String)>,
}

impl Section {
    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.lines.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn all<'a>(&'a self, key: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.lines.iter().filter(move |(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::invariant(format!("document is missing {key:?}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Document {
    pub body: Section,
    pub certificate: Option<(String, Section)>,
}

impl Document {
    pub fn new(command: &str, field: &crate::funcfield::FieldCtx, seed: u64) -> Self {
        let mut body = Section::default();
        body.push("addpoly-version", VERSION);
        body.push("command", command);
        body.push("field", field.spec());
        body.push("modulus", field.gf().modulus_string());
        body.push("seed", seed);
        Document { body, certificate: None }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.body.push(key, value);
    }

    pub fn render(&self) -> String {
        fn emit(out: &mut String, k: &str, v: &str) {
            out.push_str(k);
            out.push(':');
            if !v.is_empty() {
                out.push(' ');
                out.push_str(v);
            }
            out.push('\n');
        }
        let mut out = String::new();
        for (k, v) in &self.body.lines {
            emit(&mut out, k, v);
        }
        if let Some((kind, cert)) = &self.certificate {
            out.push_str(&format!("begin-certificate {kind}\n"));
            for (k, v) in &cert.lines {
                emit(&mut out, k, v);
            }
            out.push_str("end-certificate\n");
        }
        out
    }

    pub fn parse(text: &str) -> Result<Document> {
        let mut doc = Document::default();
        let mut in_cert: Option<(String, Section)> = None;
        let mut offset = 0;
        for line in text.lines() {
            let at = offset;
            offset += line.len() + 1;
            if line.trim().is_empty() {
                continue;
            }
            if let Some(kind) = line.strip_prefix("begin-certificate ") {
                if in_cert.is_some() || doc.certificate.is_some() {
                    return Err(Error::parse(at, "nested or repeated certificate"));
                }
                in_cert = Some((kind.trim().to_string(), Section::default()));
                continue;
            }
            if line == "end-certificate" {
                doc.certificate = Some(in_cert.take().ok_or_else(|| Error::parse(at, "unmatched end-certificate"))?);
                continue;
            }
            let (k, v) = line.split_once(':').ok_or_else(|| Error::parse(at, "expected 'key: value'"))?;
            let v = v.strip_prefix(' ').unwrap_or(v);
            match in_cert.as_mut() {
                Some((_, s)) => s.push(k, v),
                None => doc.body.push(k, v),
            }
        }
        if in_cert.is_some() {
            return Err(Error::parse(text.len(), "unterminated certificate"));
        }
        Ok(doc)
    }
}
