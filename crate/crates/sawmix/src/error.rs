use thiserror::Error;

/// Errors surfaced by every fallible operation in this crate.
///
/// The variants are deliberately coarse: callers branch on the failure
/// class, not on individual messages, and the CLI maps each class to a
/// stable process exit code.
#[derive(Debug, Error)]
pub enum Error {
    /// The caller supplied an argument outside an operation's domain:
    /// an unknown vertex, an empty model, a malformed flag combination.
    #[error("invalid input: {0}")]
    Input(String),

    /// A model or condition file failed to parse. Lines are 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A configured budget was exhausted before the operation finished.
    /// `partial` carries the best bound established so far, when one
    /// exists, so a caller can still act on the truncated result.
    #[error("resource limit exceeded: {msg}")]
    Resource { msg: String, partial: Option<f64> },

    /// The request was well-formed but the quantity is undefined for
    /// this model, such as a mixing threshold outside its regime.
    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>, partial: Option<f64>) -> Self {
        Error::Resource {
            msg: msg.into(),
            partial,
        }
    }

    /// Process exit code used by the command-line front end. Input and
    /// parse failures share a code because both mean "fix the input".
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse { .. } => 2,
            Error::Resource { .. } => 3,
            Error::Domain(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_by_class() {
        assert_eq!(Error::input("x").exit_code(), 2);
        let parse = Error::Parse {
            line: 3,
            msg: "bad".into(),
        };
        assert_eq!(parse.exit_code(), 2);
        assert_eq!(Error::resource("budget", None).exit_code(), 3);
        assert_eq!(Error::domain("regime").exit_code(), 4);
    }

    #[test]
    fn messages_name_the_class() {
        assert_eq!(Error::input("bad vertex").to_string(), "invalid input: bad vertex");
        let parse = Error::Parse {
            line: 7,
            msg: "expected 4 fields".into(),
        };
        assert_eq!(parse.to_string(), "parse error at line 7: expected 4 fields");
    }
}
