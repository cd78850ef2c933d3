//! The four Hermitian symmetric pairs of the series `A4 ⊂ D5 ⊂ E6 ⊂ E7`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::minrep::MinusculeModule;
use crate::rootlat::{CartanType, RootSystemData, Weight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Case {
    A4,
    D5,
    E6,
    E7,
}

impl Case {
    pub const ALL: [Case; 4] = [Case::A4, Case::D5, Case::E6, Case::E7];

    pub fn name(self) -> &'static str {
        match self {
            Case::A4 => "a4",
            Case::D5 => "d5",
            Case::E6 => "e6",
            Case::E7 => "e7",
        }
    }

    pub fn cartan_type(self) -> CartanType {
        match self {
            Case::A4 => CartanType::A(4),
            Case::D5 => CartanType::D(5),
            Case::E6 => CartanType::E(6),
            Case::E7 => CartanType::E(7),
        }
    }

    /// Rank, equal to the number of blown-up points.
    pub fn rank(self) -> usize {
        match self {
            Case::A4 => 4,
            Case::D5 => 5,
            Case::E6 => 6,
            Case::E7 => 7,
        }
    }

    pub fn from_rank(r: usize) -> Result<Case> {
        match r {
            4 => Ok(Case::A4),
            5 => Ok(Case::D5),
            6 => Ok(Case::E6),
            7 => Ok(Case::E7),
            _ => Err(Error::UnsupportedPoints(r)),
        }
    }

    /// The grading node (0-based): α3, α5, α6, α7 in Bourbaki numbering.
    pub fn cut(self) -> usize {
        match self {
            Case::A4 => 2,
            Case::D5 => 4,
            Case::E6 => 5,
            Case::E7 => 6,
        }
    }

    /// Dimension of the minuscule module.
    pub fn dim(self) -> usize {
        match self {
            Case::A4 => 10,
            Case::D5 => 16,
            Case::E6 => 27,
            Case::E7 => 56,
        }
    }

    pub fn root_system(self) -> RootSystemData {
        RootSystemData::new(self.cartan_type()).expect("catalogued type")
    }

    pub fn highest_weight(self) -> Weight {
        Weight::fundamental(self.rank(), self.cut())
    }

    pub fn module(self) -> Result<MinusculeModule> {
        MinusculeModule::build(self.root_system(), &self.highest_weight())
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;

    fn from_str(s: &str) -> Result<Case> {
        match s.to_ascii_lowercase().as_str() {
            "a4" => Ok(Case::A4),
            "d5" => Ok(Case::D5),
            "e6" => Ok(Case::E6),
            "e7" => Ok(Case::E7),
            _ => Err(Error::UnsupportedType(s.to_string())),
        }
    }
}
