//! Command reports: a text rendering for people and a JSON document for
//! scripts. The JSON layout is described in `docs/report-schema.md`.

use std::time::Duration;

use serde_json::{json, Value};

pub const SCHEMA_VERSION: u64 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    Usage,
    Cap,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Usage => "usage-error",
            Status::Cap => "cap-exceeded",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::Fail => EXIT_FAIL,
            Status::Usage => EXIT_USAGE,
            Status::Cap => EXIT_CAP,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Report {
    /// Arguments after the program name.
    pub command: Vec<String>,
    pub status: Status,
    pub result: Value,
    pub text: String,
    pub elapsed: Duration,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// Machine-readable form. Keys are sorted; elapsed time is included
    /// only when asked for, so that equal inputs give equal bytes.
    pub fn to_json(&self, timing: bool) -> String {
        let mut doc = json!({
            "schema_version": SCHEMA_VERSION,
            "tool": "asl-kit",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "status": self.status.as_str(),
            "exit_code": self.exit_code(),
            "result": self.result,
        });
        if timing {
            doc["elapsed_ms"] = json!(self.elapsed.as_millis() as u64);
        }
        let mut out = serde_json::to_string_pretty(&doc).expect("serializable");
        out.push('\n');
        out
    }

    pub fn to_text(&self, timing: bool) -> String {
        let mut out = self.text.clone();
        if !out.is_empty() && !out.ends_with('\n') {
            out.push('\n');
        }
        if timing {
            out.push_str(&format!("({} ms)\n", self.elapsed.as_millis()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_sorted() {
        let r = Report {
            command: vec!["length".into(), "S4".into()],
            status: Status::Ok,
            result: json!({"order": 24, "group": "S4", "length": 3}),
            text: "l = 3".into(),
            elapsed: Duration::from_millis(5),
        };
        let s = r.to_json(false);
        let keys = ["command", "exit_code", "result", "schema_version", "status", "tool", "version"];
        let pos: Vec<usize> = keys.iter().map(|k| s.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{s}");
        assert!(s.find("\"group\":").unwrap() < s.find("\"length\":").unwrap());
        assert!(!s.contains("elapsed"));
        assert!(r.to_json(true).contains("\"elapsed_ms\": 5"));
        assert_eq!(r.to_text(false), "l = 3\n");
    }
}
