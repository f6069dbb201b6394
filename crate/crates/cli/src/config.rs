//! Run configuration: a JSON file, overridden by command-line flags.

use std::path::{Path, PathBuf};

use dp4::ffpoly::FieldTable;
use dp4::strata::{Caps, Surface};
use dp4::{Dp4Error, Result};
use serde::Deserialize;

#[derive(Clone, Copy, Debug, Default, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Centres of the blow-up. Coordinates are base-p digit encodings of field
/// elements (the residue itself when q is prime); `[1, 0]` is infinity.
#[derive(Clone, Debug, Deserialize, PartialEq, Eq)]
pub struct Points {
    pub p: [[u32; 2]; 4],
    pub p_prime: [[u32; 2]; 4],
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct CapsConfig {
    pub naive_budget: Option<u64>,
    pub fiber_budget: Option<u64>,
    pub lattice_cap: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub q: Option<u32>,
    pub points: Option<Points>,
    pub caps: CapsConfig,
    pub truncation: Option<u32>,
    pub gamma_max: Option<u32>,
    pub deg_max: Option<u32>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub jobs: Option<usize>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Dp4Error::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| Dp4Error::Config(format!("{}: {e}", path.display())))
    }

    pub fn caps(&self) -> Caps {
        let d = Caps::default();
        Caps {
            naive_budget: self.caps.naive_budget.unwrap_or(d.naive_budget),
            fiber_budget: self.caps.fiber_budget.unwrap_or(d.fiber_budget),
            lattice_cap: self.caps.lattice_cap.unwrap_or(d.lattice_cap),
        }
    }

    pub fn q(&self) -> Result<u32> {
        self.q.ok_or_else(|| Dp4Error::Config("no field order given (use --q or \"q\" in the config)".into()))
    }

    pub fn surface(&self) -> Result<Surface> {
        let q = self.q()?;
        match &self.points {
            None => Surface::new(q),
            Some(pts) => {
                if q < 3 {
                    return Surface::new(q);
                }
                let f = FieldTable::get(q)?;
                let conv = |side: &[[u32; 2]; 4]| -> Result<[(u16, u16); 4]> {
                    let mut out = [(0, 0); 4];
                    for (o, [x, y]) in out.iter_mut().zip(side) {
                        *o = (f.from_vector(*x)?, f.from_vector(*y)?);
                    }
                    Ok(out)
                };
                Surface::with_points(q, conv(&pts.p)?, conv(&pts.p_prime)?)
            }
        }
    }
}
