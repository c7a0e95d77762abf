use crate::pos::SourcePos;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A syntax error in the host term or in quoted material, with the
    /// absolute position in the source file.
    #[error("{pos}: {message}")]
    Syntax { pos: SourcePos, message: String },

    #[error("duplicate quasi quotation syntax {0}")]
    DuplicateQuoter(String),

    #[error("unbound substitution variable {0}")]
    Unbound(String),

    /// A value that cannot be converted to the target language.
    #[error("{0}")]
    Value(String),
}

impl Error {
    pub fn syntax(pos: SourcePos, message: impl Into<String>) -> Self {
        Error::Syntax {
            pos,
            message: message.into(),
        }
    }

    pub fn pos(&self) -> Option<&SourcePos> {
        match self {
            Error::Syntax { pos, .. } => Some(pos),
            _ => None,
        }
    }

    /// The message without the position prefix.
    pub fn message(&self) -> String {
        match self {
            Error::Syntax { message, .. } => message.clone(),
            other => other.to_string(),
        }
    }
}
