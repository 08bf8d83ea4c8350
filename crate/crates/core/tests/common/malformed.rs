use dhkin::robot_def::DiagCode;

const GOOD_JOINT: &str = "joint 1 type=revolute a=0 alpha=0 d=0 offset=0 min=-1 max=1";

/// `(name, source, expected code, expected line)` for one broken file each.
pub fn malformed_cases() -> Vec<(&'static str, String, DiagCode, usize)> {
    let h = "robot \"r\"\nunits m\n";
    vec![
        ("unknown directive", format!("{h}link 1 a=0\n"), DiagCode::UnknownDirective, 3),
        ("missing robot", format!("units m\n{GOOD_JOINT}\n"), DiagCode::MissingRobot, 2),
        ("missing units", format!("robot \"r\"\n{GOOD_JOINT}\n"), DiagCode::MissingUnits, 2),
        ("bad units", "robot \"r\"\nunits inch\n".to_string(), DiagCode::BadUnits, 2),
        ("duplicate header", format!("{h}units cm\n{GOOD_JOINT}\n"), DiagCode::DuplicateHeader, 3),
        ("header after joint", format!("robot \"r\"\n{GOOD_JOINT}\nunits m\n"), DiagCode::HeaderOrder, 3),
        ("unquoted name", "robot smokie\nunits m\n".to_string(), DiagCode::BadName, 1),
        ("unterminated name", "robot \"smokie\nunits m\n".to_string(), DiagCode::BadName, 1),
        (
            "missing field",
            format!("{h}joint 1 type=revolute a=0 alpha=0 d=0 min=-1 max=1\n"),
            DiagCode::MissingField,
            3,
        ),
        (
            "unknown field",
            format!("{h}joint 1 type=revolute a=0 alpha=0 d=0 offset=0 min=-1 max=1 mass=3\n"),
            DiagCode::UnknownField,
            3,
        ),
        (
            "duplicate field",
            format!("{h}joint 1 type=revolute a=0 a=1 alpha=0 d=0 offset=0 min=-1 max=1\n"),
            DiagCode::DuplicateField,
            3,
        ),
        (
            "malformed attribute",
            format!("{h}joint 1 type=revolute a=0 alpha=0 d=0 offset=0 min=-1 max=1 loose\n"),
            DiagCode::MalformedAttribute,
            3,
        ),
        (
            "bad joint type",
            format!("{h}joint 1 type=spherical a=0 alpha=0 d=0 offset=0 min=-1 max=1\n"),
            DiagCode::BadJointType,
            3,
        ),
        (
            "bad number",
            format!("{h}joint 1 type=revolute a=4x alpha=0 d=0 offset=0 min=-1 max=1\n"),
            DiagCode::BadNumber,
            3,
        ),
        (
            "pi is not a length",
            format!("{h}joint 1 type=revolute a=pi alpha=0 d=0 offset=0 min=-1 max=1\n"),
            DiagCode::BadNumber,
            3,
        ),
        (
            "bad angle",
            format!("{h}joint 1 type=revolute a=0 alpha=pi/0 d=0 offset=0 min=-1 max=1\n"),
            DiagCode::BadAngle,
            3,
        ),
        (
            "overflowing number",
            format!("{h}joint 1 type=revolute a=1e400 alpha=0 d=0 offset=0 min=-1 max=1\n"),
            DiagCode::NonFinite,
            3,
        ),
        ("bad index", format!("{h}joint one type=revolute\n"), DiagCode::BadIndex, 3),
        ("zero index", format!("{h}joint 0 type=revolute a=0 alpha=0 d=0 offset=0 min=-1 max=1\n"), DiagCode::BadIndex, 3),
        (
            "duplicate index",
            format!("{h}{GOOD_JOINT}\n{GOOD_JOINT}\n"),
            DiagCode::DuplicateIndex,
            4,
        ),
        (
            "non-contiguous index",
            format!("{h}{GOOD_JOINT}\n\n# gap\njoint 3 type=revolute a=0 alpha=0 d=0 offset=0 min=-1 max=1\n"),
            DiagCode::NonContiguousIndex,
            6,
        ),
        (
            "inverted limits",
            format!("{h}# comment\n{GOOD_JOINT}\njoint 2 type=revolute a=0 alpha=0 d=0 offset=0 min=2 max=1\n"),
            DiagCode::LimitsInverted,
            5,
        ),
        (
            "fixed outside limits",
            format!("{h}{GOOD_JOINT}\njoint 2 type=revolute a=0 alpha=0 d=0 offset=0 min=-1 max=1 fixed=1.5\n"),
            DiagCode::FixedOutOfLimits,
            4,
        ),
        (
            "all joints fixed",
            format!("{h}joint 1 type=revolute a=0 alpha=0 d=0 offset=0 min=-1 max=1 fixed=0\n"),
            DiagCode::AllJointsFixed,
            1,
        ),
        ("no joints", h.to_string(), DiagCode::NoJoints, 1),
        ("trailing token", "robot \"r\" extra\nunits m\n".to_string(), DiagCode::UnexpectedToken, 1),
    ]
}
