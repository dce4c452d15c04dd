use std::fmt;

use serde::{Serialize, Serializer};

const TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Condition {
    AZero,
    AOne,
    BZero,
    BOne,
    AEqualsB,
    SumOne,
    BIsAMinusOne,
    BIsAPlusOne,
}

impl Condition {
    /// Degenerate conditions change the diagram's structure; the others only make it symmetric.
    pub fn is_degenerate(self) -> bool {
        !matches!(self, Condition::BIsAMinusOne | Condition::BIsAPlusOne)
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Condition::AZero => "a=0",
            Condition::AOne => "a=1",
            Condition::BZero => "b=0",
            Condition::BOne => "b=1",
            Condition::AEqualsB => "a=b",
            Condition::SumOne => "a+b=1",
            Condition::BIsAMinusOne => "b=a-1",
            Condition::BIsAPlusOne => "b=a+1",
        };
        f.write_str(s)
    }
}

impl Serialize for Condition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParameterClass {
    pub degenerate: Vec<Condition>,
    pub symmetric: Vec<Condition>,
}

impl ParameterClass {
    pub fn is_regular(&self) -> bool {
        self.degenerate.is_empty() && self.symmetric.is_empty()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degenerate.is_empty()
    }

    pub fn describe(&self) -> String {
        if self.is_regular() {
            return "regular".into();
        }
        let all: Vec<String> =
            self.degenerate.iter().chain(&self.symmetric).map(|c| c.to_string()).collect();
        format!("critical: {}", all.join(", "))
    }
}

pub fn parameter_classification(a: f64, b: f64) -> ParameterClass {
    use Condition::*;
    let checks = [
        (AZero, a),
        (AOne, a - 1.0),
        (BZero, b),
        (BOne, b - 1.0),
        (AEqualsB, a - b),
        (SumOne, a + b - 1.0),
        (BIsAMinusOne, b - a + 1.0),
        (BIsAPlusOne, b - a - 1.0),
    ];
    let hit: Vec<Condition> =
        checks.iter().filter(|(_, v)| v.abs() <= TOL).map(|(c, _)| *c).collect();
    ParameterClass {
        degenerate: hit.iter().copied().filter(|c| c.is_degenerate()).collect(),
        symmetric: hit.iter().copied().filter(|c| !c.is_degenerate()).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let c = parameter_classification(4.0, 3.0);
        assert_eq!(c.symmetric, vec![Condition::BIsAMinusOne]);
        assert!(c.degenerate.is_empty());
        assert!(parameter_classification(4.0, 2.0).is_regular());
        let c = parameter_classification(0.5, 0.5);
        assert_eq!(c.degenerate, vec![Condition::AEqualsB, Condition::SumOne]);
        assert!(parameter_classification(2.0, 1.0).is_degenerate());
        assert_eq!(parameter_classification(0.5, 0.5).describe(), "critical: a=b, a+b=1");
    }
}
