//! The incidence poset Q for four pairs of lines.
//!
//! Elements are modelled as coordinate subspaces of an 8-dimensional space
//! with basis `e_{i,j}` (`i = 1..4`, `j = 1, 2`): `ℓ_{i,j} = <e_{i,j}>`,
//! `V_j = <e_{1,j}, .., e_{4,j}>`, so intersection is a bitwise and.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Dp4Error, Result};

/// An element of Q, stored as its coordinate mask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QElem(u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QKind {
    Zero,
    Line,
    Plane,
    Half,
    Top,
}

impl QElem {
    pub const ZERO: QElem = QElem(0);
    pub const V: QElem = QElem(0xff);

    /// `ℓ_{i,j}` with `i` in `1..=4`, `j` in `1..=2`.
    pub fn line(i: usize, j: usize) -> QElem {
        assert!((1..=4).contains(&i) && (1..=2).contains(&j));
        QElem(1 << (2 * (i - 1) + (j - 1)))
    }

    /// `ℓ_{i,1} ⊕ ℓ_{i,2}`.
    pub fn plane(i: usize) -> QElem {
        QElem(Self::line(i, 1).0 | Self::line(i, 2).0)
    }

    /// `V_j`.
    pub fn half(j: usize) -> QElem {
        QElem((1..=4).map(|i| Self::line(i, j).0).fold(0, |a, b| a | b))
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn kind(self) -> QKind {
        match self.0 {
            0 => QKind::Zero,
            0xff => QKind::Top,
            m if m.count_ones() == 1 => QKind::Line,
            m if m.count_ones() == 2 => QKind::Plane,
            _ => QKind::Half,
        }
    }

    /// Index `i` of `ℓ_{i,j}` or of a plane.
    pub fn pair_index(self) -> Option<usize> {
        match self.kind() {
            QKind::Line | QKind::Plane => Some(self.0.trailing_zeros() as usize / 2 + 1),
            _ => None,
        }
    }

    pub fn meet(self, other: QElem) -> QElem {
        QElem(self.0 & other.0)
    }

    pub fn leq(self, other: QElem) -> bool {
        self.0 & other.0 == self.0
    }

    /// Codimension weight γ.
    pub fn gamma(self) -> u32 {
        match self.kind() {
            QKind::Zero => 4,
            QKind::Line => 3,
            QKind::Plane | QKind::Half => 2,
            QKind::Top => 0,
        }
    }

    pub fn rank(self) -> u32 {
        match self.kind() {
            QKind::Zero => 3,
            QKind::Line => 2,
            QKind::Plane | QKind::Half => 1,
            QKind::Top => 0,
        }
    }

    pub fn text(self) -> String {
        match self.kind() {
            QKind::Zero => "0".into(),
            QKind::Top => "V".into(),
            QKind::Half => format!("V{}", if self == Self::half(1) { 1 } else { 2 }),
            QKind::Line => {
                let b = self.0.trailing_zeros() as usize;
                format!("l{},{}", b / 2 + 1, b % 2 + 1)
            }
            QKind::Plane => {
                let i = self.pair_index().unwrap();
                format!("l{i},1+l{i},2")
            }
        }
    }

    pub fn parse(s: &str) -> Result<QElem> {
        let s = s.trim();
        let bad = || Dp4Error::Config(format!("unknown element of Q: {s:?}"));
        match s {
            "0" => return Ok(Self::ZERO),
            "V" => return Ok(Self::V),
            "V1" => return Ok(Self::half(1)),
            "V2" => return Ok(Self::half(2)),
            _ => {}
        }
        let line = |t: &str| -> Result<QElem> {
            let t = t.trim().strip_prefix('l').ok_or_else(bad)?;
            let (i, j) = t.split_once(',').ok_or_else(bad)?;
            let i: usize = i.trim().parse().map_err(|_| bad())?;
            let j: usize = j.trim().parse().map_err(|_| bad())?;
            if !(1..=4).contains(&i) || !(1..=2).contains(&j) {
                return Err(bad());
            }
            Ok(Self::line(i, j))
        };
        match s.split_once('+') {
            None => line(s),
            Some((a, b)) => {
                let (a, b) = (line(a)?, line(b)?);
                let m = QElem(a.0 | b.0);
                if a.pair_index() == b.pair_index() && a != b {
                    Ok(m)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

impl fmt::Display for QElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text())
    }
}

impl Serialize for QElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.text())
    }
}

/// All 16 elements, bottom first, top last.
pub fn elements() -> &'static [QElem; 16] {
    static E: std::sync::OnceLock<[QElem; 16]> = std::sync::OnceLock::new();
    E.get_or_init(|| {
        let mut v = vec![QElem::ZERO];
        for i in 1..=4 {
            for j in 1..=2 {
                v.push(QElem::line(i, j));
            }
        }
        v.extend((1..=4).map(QElem::plane));
        v.push(QElem::half(1));
        v.push(QElem::half(2));
        v.push(QElem::V);
        v.try_into().unwrap()
    })
}

pub fn meet(a: QElem, b: QElem) -> QElem {
    a.meet(b)
}

/// Möbius function of Q itself.
pub fn mobius_q(a: QElem, b: QElem) -> i64 {
    if !a.leq(b) {
        return 0;
    }
    if a == b {
        return 1;
    }
    -elements().iter().filter(|&&y| a.leq(y) && y.leq(b) && y != b).map(|&y| mobius_q(a, y)).sum::<i64>()
}
