use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    /// `key=value` lines; records start with `record=<kind>` and end with a
    /// blank line.
    Structured,
}

/// Worst outcome seen so far; ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Pass,
    IdentityFailure,
    ComputationError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::IdentityFailure => 2,
            Status::ComputationError => 3,
        }
    }
}

pub struct Record {
    kind: &'static str,
    fields: Vec<(String, String)>,
}

impl Record {
    pub fn new(kind: &'static str) -> Self {
        Record { kind, fields: Vec::new() }
    }

    pub fn field(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.fields.push((key.into(), value.to_string()));
        self
    }

    pub fn set(&mut self, key: impl Into<String>, value: impl ToString) {
        self.fields.push((key.into(), value.to_string()));
    }
}

pub struct Output {
    format: Format,
    buf: String,
    status: Status,
}

impl Output {
    pub fn new(format: Format) -> Self {
        Output { format, buf: String::new(), status: Status::Pass }
    }

    pub fn emit(&mut self, r: Record) {
        match self.format {
            Format::Structured => {
                let _ = writeln!(self.buf, "record={}", r.kind);
                for (k, v) in &r.fields {
                    let _ = writeln!(self.buf, "{k}={v}");
                }
                self.buf.push('\n');
            }
            Format::Text => {
                let _ = writeln!(self.buf, "{}", r.kind);
                let w = r.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                for (k, v) in &r.fields {
                    let _ = writeln!(self.buf, "  {k:<w$}  {v}");
                }
            }
        }
    }

    /// Records an identity outcome.
    pub fn check(&mut self, ok: bool) {
        if !ok {
            self.note(Status::IdentityFailure);
        }
    }

    pub fn note(&mut self, s: Status) {
        self.status = self.status.max(s);
    }

    pub fn finish(self) -> (String, Status) {
        (self.buf, self.status)
    }
}

pub fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "fail"
    }
}
