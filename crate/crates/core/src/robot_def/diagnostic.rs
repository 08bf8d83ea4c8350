use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Error,
    Warning,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        })
    }
}

/// Stable diagnostic identifiers. The string forms returned by
/// [`DiagCode::as_str`] are part of the file-format contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagCode {
    InvalidUtf8,
    UnknownDirective,
    UnexpectedToken,
    MissingRobot,
    MissingUnits,
    DuplicateHeader,
    HeaderOrder,
    BadName,
    BadUnits,
    BadIndex,
    BadJointType,
    MalformedAttribute,
    UnknownField,
    DuplicateField,
    MissingField,
    BadNumber,
    BadAngle,
    NonFinite,
    DuplicateIndex,
    NonContiguousIndex,
    LimitsInverted,
    FixedOutOfLimits,
    NoJoints,
    AllJointsFixed,
    ZeroSpanLimits,
}

impl DiagCode {
    pub const ALL: [DiagCode; 25] = [
        DiagCode::InvalidUtf8,
        DiagCode::UnknownDirective,
        DiagCode::UnexpectedToken,
        DiagCode::MissingRobot,
        DiagCode::MissingUnits,
        DiagCode::DuplicateHeader,
        DiagCode::HeaderOrder,
        DiagCode::BadName,
        DiagCode::BadUnits,
        DiagCode::BadIndex,
        DiagCode::BadJointType,
        DiagCode::MalformedAttribute,
        DiagCode::UnknownField,
        DiagCode::DuplicateField,
        DiagCode::MissingField,
        DiagCode::BadNumber,
        DiagCode::BadAngle,
        DiagCode::NonFinite,
        DiagCode::DuplicateIndex,
        DiagCode::NonContiguousIndex,
        DiagCode::LimitsInverted,
        DiagCode::FixedOutOfLimits,
        DiagCode::NoJoints,
        DiagCode::AllJointsFixed,
        DiagCode::ZeroSpanLimits,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::InvalidUtf8 => "invalid-utf8",
            DiagCode::UnknownDirective => "unknown-directive",
            DiagCode::UnexpectedToken => "unexpected-token",
            DiagCode::MissingRobot => "missing-robot",
            DiagCode::MissingUnits => "missing-units",
            DiagCode::DuplicateHeader => "duplicate-header",
            DiagCode::HeaderOrder => "header-order",
            DiagCode::BadName => "bad-name",
            DiagCode::BadUnits => "bad-units",
            DiagCode::BadIndex => "bad-index",
            DiagCode::BadJointType => "bad-joint-type",
            DiagCode::MalformedAttribute => "malformed-attribute",
            DiagCode::UnknownField => "unknown-field",
            DiagCode::DuplicateField => "duplicate-field",
            DiagCode::MissingField => "missing-field",
            DiagCode::BadNumber => "bad-number",
            DiagCode::BadAngle => "bad-angle",
            DiagCode::NonFinite => "non-finite",
            DiagCode::DuplicateIndex => "duplicate-index",
            DiagCode::NonContiguousIndex => "non-contiguous-index",
            DiagCode::LimitsInverted => "limits-inverted",
            DiagCode::FixedOutOfLimits => "fixed-out-of-limits",
            DiagCode::NoJoints => "no-joints",
            DiagCode::AllJointsFixed => "all-joints-fixed",
            DiagCode::ZeroSpanLimits => "zero-span-limits",
        }
    }

    /// True for codes raised while reading tokens, false for codes about
    /// the meaning of well-formed rows (limits, indexing, degrees of freedom).
    pub fn is_syntax(self) -> bool {
        !matches!(
            self,
            DiagCode::DuplicateIndex
                | DiagCode::NonContiguousIndex
                | DiagCode::LimitsInverted
                | DiagCode::FixedOutOfLimits
                | DiagCode::NoJoints
                | DiagCode::AllJointsFixed
                | DiagCode::ZeroSpanLimits
        )
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A located parser or validator finding. `line` and `column` are 1-based;
/// the column counts characters, not bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub line: usize,
    pub column: usize,
    pub code: DiagCode,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: DiagCode, line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Error,
            line,
            column,
            code,
            message: message.into(),
        }
    }

    pub fn warning(code: DiagCode, line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            severity: Severity::Warning,
            ..Self::error(code, line, column, message)
        }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {}[{}]: {}",
            self.line, self.column, self.severity, self.code, self.message
        )
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}
