//! Size guards for the exponential searches.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable holding guard overrides, e.g. `det=7,enum=8`.
pub const GUARDS_ENV: &str = "TRACTRANK_GUARDS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Guards {
    /// Largest square matrix expanded by the formal determinant.
    pub det: usize,
    /// Largest ground set for matroid enumeration.
    pub enumerate: usize,
    /// Largest ground set for column-subset elimination over a field.
    pub field_columns: usize,
    /// Column / row limits for exact sign matroidal rank.
    pub sign_columns: usize,
    pub sign_rows: usize,
    /// Limits for the echelon search behind the relative matroidal rank.
    pub phi_field_order: usize,
    pub phi_columns: usize,
    pub phi_rank: usize,
    /// Largest square matrix for the dominance search.
    pub permutations: usize,
    /// Unknowns in exhaustive homogeneous system solving.
    pub solve_unknowns: usize,
    /// Number of lifts enumerated in finite-fiber mode.
    pub lifts: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            det: 8,
            enumerate: 7,
            field_columns: 12,
            sign_columns: 5,
            sign_rows: 6,
            phi_field_order: 5,
            phi_columns: 8,
            phi_rank: 5,
            permutations: 7,
            solve_unknowns: 8,
            lifts: 1 << 20,
        }
    }
}

impl Guards {
    /// Defaults overridden by [`GUARDS_ENV`] when set.
    pub fn from_env() -> Result<Guards> {
        match std::env::var(GUARDS_ENV) {
            Ok(s) => s.parse(),
            Err(_) => Ok(Guards::default()),
        }
    }

    /// Applies `key=value` overrides separated by commas.
    pub fn apply(&mut self, spec: &str) -> Result<()> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("guard `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("guard `{item}` has a bad value")))?;
            if value == 0 {
                return Err(Error::InvalidParameter(format!("guard `{key}` must be positive")));
            }
            let slot = match key.trim() {
                "det" => &mut self.det,
                "enum" | "enumerate" => &mut self.enumerate,
                "field" | "field_columns" => &mut self.field_columns,
                "sign_cols" | "sign_columns" => &mut self.sign_columns,
                "sign_rows" => &mut self.sign_rows,
                "phi_q" => &mut self.phi_field_order,
                "phi_cols" | "phi_columns" => &mut self.phi_columns,
                "phi_rank" => &mut self.phi_rank,
                "perm" | "permutations" => &mut self.permutations,
                "solve" => &mut self.solve_unknowns,
                "lifts" => &mut self.lifts,
                other => return Err(Error::InvalidParameter(format!("unknown guard `{other}`"))),
            };
            *slot = value;
        }
        Ok(())
    }
}

impl FromStr for Guards {
    type Err = Error;

    fn from_str(s: &str) -> Result<Guards> {
        let mut g = Guards::default();
        g.apply(s)?;
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let g: Guards = "det=6, enum=8".parse().unwrap();
        assert_eq!(g.det, 6);
        assert_eq!(g.enumerate, 8);
        assert_eq!(g.sign_rows, Guards::default().sign_rows);
        assert!("det=0".parse::<Guards>().is_err());
        assert!("bogus=1".parse::<Guards>().is_err());
        assert!("det".parse::<Guards>().is_err());
    }
}
