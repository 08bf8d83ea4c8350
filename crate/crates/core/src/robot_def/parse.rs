//! Line-oriented reader for `.robot` descriptions.
//!
//! ```text
//! robot "<name>"
//! units <m|cm|mm>
//! joint <index> type=<revolute|prismatic> a=<num> alpha=<angle> d=<num> offset=<angle> min=<angle> max=<angle> [fixed=<angle>]
//! ```
//!
//! `#` starts a comment, blank lines are ignored. Lengths (`a`, `d`, and the
//! limits of prismatic joints) are scaled to meters by the declared unit.

use std::f64::consts::PI;

use super::checks::{check_chain, Field, Locate};
use super::diagnostic::{has_errors, DiagCode, Diagnostic};
use crate::kinematics::{DhRow, JointKind, LengthUnit, Limits, RobotModel};

/// Everything the parser found: a model when there were no errors, plus
/// every diagnostic (warnings included).
#[derive(Debug, Clone, PartialEq)]
pub struct ParseReport {
    pub model: Option<RobotModel>,
    pub diagnostics: Vec<Diagnostic>,
}

pub fn parse_robot(source: &str) -> Result<RobotModel, Vec<Diagnostic>> {
    let report = check_robot(source);
    match report.model {
        Some(model) => Ok(model),
        None => Err(report
            .diagnostics
            .into_iter()
            .filter(Diagnostic::is_error)
            .collect()),
    }
}

/// Same as [`parse_robot`] for raw bytes; invalid UTF-8 becomes a diagnostic.
pub fn parse_robot_bytes(bytes: &[u8]) -> Result<RobotModel, Vec<Diagnostic>> {
    let report = check_robot_bytes(bytes);
    match report.model {
        Some(model) => Ok(model),
        None => Err(report
            .diagnostics
            .into_iter()
            .filter(Diagnostic::is_error)
            .collect()),
    }
}

pub fn check_robot_bytes(bytes: &[u8]) -> ParseReport {
    match std::str::from_utf8(bytes) {
        Ok(text) => check_robot(text),
        Err(e) => {
            // Valid prefix, so the position can be counted in characters.
            let prefix = std::str::from_utf8(&bytes[..e.valid_up_to()]).unwrap_or("");
            let line = prefix.matches('\n').count() + 1;
            let last_line = prefix.rsplit('\n').next().unwrap_or("");
            let column = last_line.chars().count() + 1;
            ParseReport {
                model: None,
                diagnostics: vec![Diagnostic::error(
                    DiagCode::InvalidUtf8,
                    line,
                    column,
                    format!("invalid UTF-8 at byte offset {}", e.valid_up_to()),
                )],
            }
        }
    }
}

pub fn check_robot(source: &str) -> ParseReport {
    let mut parser = Parser::default();
    for (i, raw) in source.split('\n').enumerate() {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        parser.line(i + 1, line);
    }
    parser.finish()
}

#[derive(Debug)]
struct Token<'a> {
    text: &'a str,
    col: usize,
    quoted: bool,
}

enum LexError {
    UnterminatedQuote(usize),
}

/// Splits a line into whitespace-separated tokens, honoring `"..."` at token
/// start and stopping at an unquoted `#`.
fn lex(line: &str) -> Result<Vec<Token<'_>>, LexError> {
    let mut tokens = Vec::new();
    let mut chars = line.char_indices().enumerate().peekable();
    while let Some(&(col0, (start, c))) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c == '#' {
            break;
        }
        if c == '"' {
            chars.next();
            let body_start = start + 1;
            let mut end = None;
            for (_, (i, ch)) in chars.by_ref() {
                if ch == '"' {
                    end = Some(i);
                    break;
                }
            }
            match end {
                Some(end) => tokens.push(Token {
                    text: &line[body_start..end],
                    col: col0 + 1,
                    quoted: true,
                }),
                None => return Err(LexError::UnterminatedQuote(col0 + 1)),
            }
            continue;
        }
        let mut end = line.len();
        while let Some(&(_, (i, ch))) = chars.peek() {
            if ch.is_whitespace() || ch == '#' {
                end = i;
                break;
            }
            chars.next();
        }
        tokens.push(Token {
            text: &line[start..end],
            col: col0 + 1,
            quoted: false,
        });
    }
    Ok(tokens)
}

#[derive(Debug, PartialEq)]
pub(crate) enum NumError {
    Syntax,
    NonFinite,
}

/// `[+-]?(digits[.digits]|.digits)([eE][+-]?digits)?`
pub(crate) fn parse_num(s: &str) -> Result<f64, NumError> {
    let b = s.as_bytes();
    let mut i = 0;
    if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
        i += 1;
    }
    let int_start = i;
    while i < b.len() && b[i].is_ascii_digit() {
        i += 1;
    }
    let mut digits = i - int_start;
    if i < b.len() && b[i] == b'.' {
        i += 1;
        let frac_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        digits += i - frac_start;
    }
    if digits == 0 {
        return Err(NumError::Syntax);
    }
    if i < b.len() && (b[i] == b'e' || b[i] == b'E') {
        i += 1;
        if i < b.len() && (b[i] == b'+' || b[i] == b'-') {
            i += 1;
        }
        let exp_start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        if i == exp_start {
            return Err(NumError::Syntax);
        }
    }
    if i != b.len() {
        return Err(NumError::Syntax);
    }
    let value: f64 = s.parse().map_err(|_| NumError::Syntax)?;
    if value.is_finite() {
        Ok(value)
    } else {
        Err(NumError::NonFinite)
    }
}

/// `<num>` or `[-]pi[/<positive int>]`.
pub(crate) fn parse_angle(s: &str) -> Result<f64, NumError> {
    let (negative, rest) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let Some(rest) = rest.strip_prefix("pi") else {
        return parse_num(s);
    };
    let value = if rest.is_empty() {
        PI
    } else {
        let denom = rest.strip_prefix('/').ok_or(NumError::Syntax)?;
        if denom.is_empty() || !denom.bytes().all(|c| c.is_ascii_digit()) {
            return Err(NumError::Syntax);
        }
        let denom: u32 = denom.parse().map_err(|_| NumError::Syntax)?;
        if denom == 0 {
            return Err(NumError::Syntax);
        }
        PI / f64::from(denom)
    };
    Ok(if negative { -value } else { value })
}

/// Columns of each field of one joint line, for diagnostics.
#[derive(Debug, Clone)]
struct RowSpan {
    line: usize,
    cols: [usize; 9],
}

struct Spans<'a> {
    rows: &'a [RowSpan],
    header: (usize, usize),
}

impl Locate for Spans<'_> {
    fn row(&self, pos: usize, field: Field) -> (usize, usize) {
        let span = &self.rows[pos];
        (span.line, span.cols[field.slot()])
    }

    fn header(&self) -> (usize, usize) {
        self.header
    }
}

#[derive(Default)]
struct Parser {
    name: Option<String>,
    robot_line: Option<usize>,
    units: Option<LengthUnit>,
    saw_units: bool,
    saw_joint: bool,
    reported_missing_robot: bool,
    reported_missing_units: bool,
    rows: Vec<DhRow>,
    spans: Vec<RowSpan>,
    diagnostics: Vec<Diagnostic>,
}

impl Parser {
    fn error(&mut self, code: DiagCode, line: usize, col: usize, msg: impl Into<String>) {
        self.diagnostics
            .push(Diagnostic::error(code, line, col, msg));
    }

    fn line(&mut self, line_no: usize, line: &str) {
        let tokens = match lex(line) {
            Ok(tokens) => tokens,
            Err(LexError::UnterminatedQuote(col)) => {
                self.error(
                    DiagCode::BadName,
                    line_no,
                    col,
                    "unterminated quoted string",
                );
                return;
            }
        };
        let Some(head) = tokens.first() else {
            return;
        };
        if head.quoted {
            self.error(
                DiagCode::UnknownDirective,
                line_no,
                head.col,
                "expected a directive (`robot`, `units` or `joint`)",
            );
            return;
        }
        match head.text {
            "robot" => self.robot(line_no, &tokens),
            "units" => self.units(line_no, &tokens),
            "joint" => self.joint(line_no, &tokens),
            other => {
                let msg = format!("unknown directive `{other}`");
                self.error(DiagCode::UnknownDirective, line_no, head.col, msg);
            }
        }
    }

    fn extra_tokens(&mut self, line_no: usize, tokens: &[Token<'_>]) {
        if let Some(extra) = tokens.first() {
            let msg = format!("unexpected token `{}`", extra.text);
            self.error(DiagCode::UnexpectedToken, line_no, extra.col, msg);
        }
    }

    fn robot(&mut self, line_no: usize, tokens: &[Token<'_>]) {
        let col = tokens[0].col;
        if self.robot_line.is_some() {
            self.error(
                DiagCode::DuplicateHeader,
                line_no,
                col,
                "`robot` declared twice",
            );
            return;
        }
        if self.saw_units || self.saw_joint {
            self.error(
                DiagCode::HeaderOrder,
                line_no,
                col,
                "`robot` must be the first directive",
            );
        }
        self.robot_line = Some(line_no);
        match tokens.get(1) {
            Some(t) if t.quoted => {
                self.name = Some(t.text.to_string());
                self.extra_tokens(line_no, &tokens[2..]);
            }
            Some(t) => {
                let msg = format!("robot name must be double-quoted, found `{}`", t.text);
                self.error(DiagCode::BadName, line_no, t.col, msg);
            }
            None => self.error(DiagCode::BadName, line_no, col, "missing robot name"),
        }
    }

    fn units(&mut self, line_no: usize, tokens: &[Token<'_>]) {
        let col = tokens[0].col;
        if self.saw_units {
            self.error(
                DiagCode::DuplicateHeader,
                line_no,
                col,
                "`units` declared twice",
            );
            return;
        }
        self.saw_units = true;
        if self.robot_line.is_none() || self.saw_joint {
            self.error(
                DiagCode::HeaderOrder,
                line_no,
                col,
                "`units` must follow `robot` and precede every joint",
            );
        }
        match tokens.get(1) {
            Some(t) => match LengthUnit::parse(t.text).filter(|_| !t.quoted) {
                Some(unit) => {
                    self.units = Some(unit);
                    self.extra_tokens(line_no, &tokens[2..]);
                }
                None => {
                    let msg = format!("unknown unit `{}` (expected m, cm or mm)", t.text);
                    self.error(DiagCode::BadUnits, line_no, t.col, msg);
                }
            },
            None => self.error(DiagCode::BadUnits, line_no, col, "missing unit"),
        }
    }

    fn joint(&mut self, line_no: usize, tokens: &[Token<'_>]) {
        let joint_col = tokens[0].col;
        self.saw_joint = true;
        if self.robot_line.is_none() && !self.reported_missing_robot {
            self.reported_missing_robot = true;
            self.error(
                DiagCode::MissingRobot,
                line_no,
                joint_col,
                "joint declared before the `robot` header",
            );
        }
        if !self.saw_units && !self.reported_missing_units {
            self.reported_missing_units = true;
            self.error(
                DiagCode::MissingUnits,
                line_no,
                joint_col,
                "joint declared before the `units` header",
            );
        }

        let errors_before = self.diagnostics.len();
        let mut cols = [joint_col; 9];

        let index = match tokens.get(1) {
            Some(t) => {
                cols[Field::Index.slot()] = t.col;
                let ok =
                    !t.quoted && !t.text.is_empty() && t.text.bytes().all(|c| c.is_ascii_digit());
                match t.text.parse::<usize>() {
                    Ok(i) if ok && i >= 1 => Some(i),
                    _ => {
                        let msg =
                            format!("joint index must be a positive integer, found `{}`", t.text);
                        self.error(DiagCode::BadIndex, line_no, t.col, msg);
                        None
                    }
                }
            }
            None => {
                self.error(
                    DiagCode::BadIndex,
                    line_no,
                    joint_col,
                    "missing joint index",
                );
                None
            }
        };

        let mut values: [Option<(&str, usize)>; 9] = [None; 9];
        for t in tokens.iter().skip(2) {
            let parts = if t.quoted {
                None
            } else {
                t.text.split_once('=')
            };
            let Some((key, value)) = parts.filter(|(k, v)| !k.is_empty() && !v.is_empty()) else {
                let msg = format!("expected `key=value`, found `{}`", t.text);
                self.error(DiagCode::MalformedAttribute, line_no, t.col, msg);
                continue;
            };
            let Some(field) = Field::from_key(key) else {
                let msg = format!("unknown joint attribute `{key}`");
                self.error(DiagCode::UnknownField, line_no, t.col, msg);
                continue;
            };
            let slot = field.slot();
            if values[slot].is_some() {
                let msg = format!("attribute `{key}` given more than once");
                self.error(DiagCode::DuplicateField, line_no, t.col, msg);
                continue;
            }
            let value_col = t.col + key.chars().count() + 1;
            cols[slot] = value_col;
            values[slot] = Some((value, value_col));
        }

        for field in Field::ATTRIBUTES {
            if field != Field::Fixed && values[field.slot()].is_none() {
                let msg = format!("joint is missing required attribute `{}`", field.key());
                self.error(DiagCode::MissingField, line_no, joint_col, msg);
            }
        }

        let kind = values[Field::Type.slot()].and_then(|(text, col)| match text {
            "revolute" => Some(JointKind::Revolute),
            "prismatic" => Some(JointKind::Prismatic),
            _ => {
                let msg = format!("joint type must be `revolute` or `prismatic`, found `{text}`");
                self.error(DiagCode::BadJointType, line_no, col, msg);
                None
            }
        });

        let mut number = |field: Field, angle: bool| -> Option<f64> {
            let (text, col) = values[field.slot()]?;
            let parsed = if angle {
                parse_angle(text)
            } else {
                parse_num(text)
            };
            match parsed {
                Ok(v) => Some(v),
                Err(NumError::NonFinite) => {
                    let msg = format!("`{}` value `{text}` overflows", field.key());
                    self.error(DiagCode::NonFinite, line_no, col, msg);
                    None
                }
                Err(NumError::Syntax) if angle => {
                    let msg = format!(
                        "`{}` expects a number or a `[-]pi[/N]` angle, found `{text}`",
                        field.key()
                    );
                    self.error(DiagCode::BadAngle, line_no, col, msg);
                    None
                }
                Err(NumError::Syntax) => {
                    let msg = format!("`{}` expects a number, found `{text}`", field.key());
                    self.error(DiagCode::BadNumber, line_no, col, msg);
                    None
                }
            }
        };
        let a = number(Field::A, false);
        let alpha = number(Field::Alpha, true);
        let d = number(Field::D, false);
        let offset = number(Field::Offset, true);
        let min = number(Field::Min, true);
        let max = number(Field::Max, true);
        let fixed = number(Field::Fixed, true);

        if self.diagnostics.len() != errors_before {
            return;
        }
        let (
            Some(index),
            Some(kind),
            Some(a),
            Some(alpha),
            Some(d),
            Some(offset),
            Some(min),
            Some(max),
        ) = (index, kind, a, alpha, d, offset, min, max)
        else {
            return;
        };

        let scale = self.units.map_or(1.0, LengthUnit::factor_to_meters);
        let joint_scale = match kind {
            JointKind::Revolute => 1.0,
            JointKind::Prismatic => scale,
        };
        self.rows.push(DhRow {
            index,
            kind,
            a: a * scale,
            alpha,
            d: d * scale,
            theta_offset: offset,
            limits: Limits::new(min * joint_scale, max * joint_scale),
            fixed: fixed.map(|v| v * joint_scale),
        });
        self.spans.push(RowSpan {
            line: line_no,
            cols,
        });
    }

    fn finish(mut self) -> ParseReport {
        if self.robot_line.is_none() && !self.reported_missing_robot {
            self.error(
                DiagCode::MissingRobot,
                1,
                1,
                "missing `robot \"<name>\"` header",
            );
        }
        if !self.saw_units && !self.reported_missing_units {
            self.error(
                DiagCode::MissingUnits,
                1,
                1,
                "missing `units <m|cm|mm>` header",
            );
        }
        if has_errors(&self.diagnostics) {
            return ParseReport {
                model: None,
                diagnostics: self.diagnostics,
            };
        }

        let spans = Spans {
            rows: &self.spans,
            header: (self.robot_line.unwrap_or(1), 1),
        };
        let semantic = check_chain(&self.rows, &spans);
        self.diagnostics.extend(semantic);

        let model = if has_errors(&self.diagnostics) {
            None
        } else {
            Some(RobotModel {
                name: self.name.unwrap_or_default(),
                rows: self.rows,
                source_units: self.units.unwrap_or(LengthUnit::Meter),
            })
        };
        ParseReport {
            model,
            diagnostics: self.diagnostics,
        }
    }
}
