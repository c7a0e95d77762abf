//! The fixed operator table of the reader.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpType {
    Xfx,
    Xfy,
    Yfx,
    Fy,
    Fx,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpDef {
    pub priority: u16,
    pub kind: OpType,
}

impl OpDef {
    /// Maximum priorities of the (left, right) operands. Prefix operators
    /// have no left operand; its slot is 0.
    pub fn arg_priorities(self) -> (u16, u16) {
        let p = self.priority;
        match self.kind {
            OpType::Xfx => (p - 1, p - 1),
            OpType::Xfy => (p - 1, p),
            OpType::Yfx => (p, p - 1),
            OpType::Fy => (0, p),
            OpType::Fx => (0, p - 1),
        }
    }
}

pub const MAX_PRIORITY: u16 = 1200;
pub const ARG_PRIORITY: u16 = 999;

const INFIX: &[(&str, u16, OpType)] = &[
    (":-", 1200, OpType::Xfx),
    ("-->", 1200, OpType::Xfx),
    (";", 1100, OpType::Xfy),
    ("->", 1050, OpType::Xfy),
    (",", 1000, OpType::Xfy),
    ("=", 700, OpType::Xfx),
    ("==", 700, OpType::Xfx),
    ("\\==", 700, OpType::Xfx),
    ("=..", 700, OpType::Xfx),
    ("is", 700, OpType::Xfx),
    ("<", 700, OpType::Xfx),
    (">", 700, OpType::Xfx),
    ("=<", 700, OpType::Xfx),
    (">=", 700, OpType::Xfx),
    ("+", 500, OpType::Yfx),
    ("-", 500, OpType::Yfx),
    ("*", 400, OpType::Yfx),
    ("/", 400, OpType::Yfx),
    (":", 200, OpType::Xfy),
];

const PREFIX: &[(&str, u16, OpType)] = &[
    (":-", 1200, OpType::Fx),
    ("\\+", 900, OpType::Fy),
    ("-", 200, OpType::Fy),
    ("+", 200, OpType::Fy),
];

fn find(table: &[(&str, u16, OpType)], name: &str) -> Option<OpDef> {
    table
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|&(_, priority, kind)| OpDef { priority, kind })
}

pub fn infix(name: &str) -> Option<OpDef> {
    find(INFIX, name)
}

pub fn prefix(name: &str) -> Option<OpDef> {
    find(PREFIX, name)
}

pub fn is_op(name: &str) -> bool {
    infix(name).is_some() || prefix(name).is_some()
}
