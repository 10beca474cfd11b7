use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ContextError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupType {
    B,
    C,
    D,
}

impl FromStr for GroupType {
    type Err = ContextError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" | "b" => Ok(GroupType::B),
            "C" | "c" => Ok(GroupType::C),
            "D" | "d" => Ok(GroupType::D),
            _ => Err(ContextError::UnknownType(s.to_string())),
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            GroupType::B => "B",
            GroupType::C => "C",
            GroupType::D => "D",
        };
        f.write_str(c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Twist {
    Identity,
    GammaA,
    GammaB,
    GammaAB,
    GammaN,
}

impl FromStr for Twist {
    type Err = ContextError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identity" | "id" => Ok(Twist::Identity),
            "gamma_a" => Ok(Twist::GammaA),
            "gamma_b" => Ok(Twist::GammaB),
            "gamma_ab" | "gamma_a_gamma_b" => Ok(Twist::GammaAB),
            "gamma_n" => Ok(Twist::GammaN),
            _ => Err(ContextError::UnknownTwist(s.to_string())),
        }
    }
}

/// Which of the two type C blocks a context refers to: defect 4t+1 or 4t-1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CSign {
    Plus,
    Minus,
}

/// The ambient group data a computation is relative to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupContext {
    pub group: GroupType,
    pub n: u32,
    pub a: u32,
    pub b: u32,
    pub a_rel: u32,
    pub b_rel: u32,
    pub t: u32,
    pub c_sign: CSign,
    pub twist: Twist,
}

impl GroupContext {
    pub fn new(group: GroupType, n: u32, a: u32, b: u32, t: u32) -> Result<Self, ContextError> {
        let mut ctx =
            GroupContext { group, n, a, b, a_rel: 0, b_rel: 0, t, c_sign: CSign::Plus, twist: Twist::Identity };
        let m = ctx.m().ok_or_else(|| ContextError::Inconsistent(format!("n={n} too small for t={t}")))?;
        if a + b != n {
            return Err(ContextError::Inconsistent(format!("a+b={} but n={n}", a + b)));
        }
        ctx.a_rel = a.min(m);
        ctx.b_rel = m - ctx.a_rel;
        ctx.validate()?;
        Ok(ctx)
    }

    pub fn with_rel(mut self, a_rel: u32, b_rel: u32) -> Result<Self, ContextError> {
        self.a_rel = a_rel;
        self.b_rel = b_rel;
        self.validate()?;
        Ok(self)
    }

    pub fn with_c_sign(mut self, sign: CSign) -> Result<Self, ContextError> {
        self.c_sign = sign;
        self.validate()?;
        Ok(self)
    }

    pub fn with_twist(mut self, twist: Twist) -> Self {
        self.twist = twist;
        self
    }

    /// Semisimple rank of the Levi carrying the cuspidal datum.
    pub fn levi_rank(&self) -> u32 {
        levi_rank(self.group, self.t, self.c_sign)
    }

    pub fn m(&self) -> Option<u32> {
        self.n.checked_sub(self.levi_rank())
    }

    /// |Φ| for the root system of rank n.
    pub fn root_count(&self) -> u64 {
        root_count(self.group, self.n)
    }

    pub fn validate(&self) -> Result<(), ContextError> {
        let m = self.m().ok_or_else(|| ContextError::Inconsistent("levi rank exceeds n".into()))?;
        if self.a + self.b != self.n {
            return Err(ContextError::Inconsistent("a+b must equal n".into()));
        }
        if self.group != GroupType::B && self.a == 1 {
            return Err(ContextError::Inconsistent("a = 1 is not allowed for types C and D".into()));
        }
        if self.a_rel > self.a || self.b_rel > self.b || self.a_rel + self.b_rel != m {
            return Err(ContextError::Inconsistent(format!(
                "relative split ({},{}) incompatible with (a,b)=({},{}) and m={m}",
                self.a_rel, self.b_rel, self.a, self.b
            )));
        }
        Ok(())
    }
}

pub fn levi_rank(group: GroupType, t: u32, sign: CSign) -> u32 {
    match group {
        GroupType::B => 2 * t * (t + 1),
        GroupType::C => match sign {
            CSign::Plus => 2 * t * (4 * t + 1),
            CSign::Minus => 2 * t * (4 * t).saturating_sub(1),
        },
        GroupType::D => 8 * t * t,
    }
}

pub fn root_count(group: GroupType, n: u32) -> u64 {
    let n = n as u64;
    match group {
        GroupType::B | GroupType::C => 2 * n * n,
        GroupType::D => 2 * n * n.saturating_sub(1),
    }
}
