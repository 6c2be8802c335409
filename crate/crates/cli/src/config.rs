//! Run configuration: the CLI's numeric knobs plus the equation name and
//! initial-condition expression, mapped onto the solver's own types.

use serde::{Deserialize, Serialize};

use geoflow_core::geodesic::{EquationConfig, SolverOptions, TimeScheme};
use geoflow_core::jet::canonical_name;
use geoflow_core::spectral::{GridField, PeriodicGrid};

use crate::expr::IcExpr;
use crate::fault::Fault;

/// Everything needed to reproduce one run; echoed verbatim into the
/// summary JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    /// Equation name or alias: hopf, ch/camassa-holm, hs/hunter-saxton,
    /// kdv, dch/dispersive-ch, dhs/dispersive-hs.
    pub equation: String,
    /// Grid size (even, ≥ 8).
    pub n: usize,
    /// Circle circumference.
    pub length: f64,
    pub dt: f64,
    pub t_end: f64,
    /// "auto" (integrating factor for dispersive equations), "rk4" or
    /// "ifrk4".
    pub scheme: String,
    /// Dispersion coefficient for kdv/dch/dhs; ignored otherwise.
    pub eps: f64,
    pub store_every: usize,
    /// Expression in x, e.g. "sin(x) + 0.3*cos(2*x)".
    pub initial_condition: String,
}

impl RunConfig {
    /// Resolves the equation name (accepting the jet catalog's aliases)
    /// into a solver configuration.
    pub fn equation_config(&self) -> Result<EquationConfig, Fault> {
        let canonical = canonical_name(&self.equation)
            .filter(|c| *c != "hopf-unit")
            .ok_or_else(|| {
                Fault::usage(
                    "unknown-equation",
                    format!(
                        "unknown equation '{}'; valid names: hopf, camassa-holm (ch), \
                         hunter-saxton (hs), kdv, dispersive-ch (dch), dispersive-hs (dhs)",
                        self.equation
                    ),
                )
            })?;
        if !self.eps.is_finite() {
            return Err(Fault::usage("invalid-option", "eps must be finite"));
        }
        Ok(match canonical {
            "hopf" => EquationConfig::hopf(),
            "camassa-holm" => EquationConfig::camassa_holm(),
            "hunter-saxton" => EquationConfig::hunter_saxton(),
            "kdv" => EquationConfig::kdv(self.eps),
            "dispersive-ch" => EquationConfig::dispersive_ch(self.eps),
            "dispersive-hs" => EquationConfig::dispersive_hs(self.eps),
            other => unreachable!("canonical_name returned {other}"),
        })
    }

    pub fn grid(&self) -> Result<PeriodicGrid, Fault> {
        Ok(PeriodicGrid::new(self.n, self.length)?)
    }

    /// Parses and samples the initial condition on the grid.
    pub fn initial_field(&self) -> Result<GridField, Fault> {
        let expr = IcExpr::parse(&self.initial_condition).map_err(|e| {
            Fault::usage(
                "parse-error",
                format!("initial condition: {e} in \"{}\"", self.initial_condition),
            )
        })?;
        let field = GridField::from_fn(self.grid()?, |x| expr.eval(x));
        if !field.is_finite() {
            return Err(Fault::usage(
                "invalid-option",
                format!(
                    "initial condition \"{}\" evaluates to NaN/Inf on the grid",
                    self.initial_condition
                ),
            ));
        }
        Ok(field)
    }

    /// Builds solver options, honouring the scheme override.
    pub fn solver_options(&self, config: &EquationConfig) -> Result<SolverOptions, Fault> {
        let mut opts = SolverOptions::recommended(config, self.dt);
        match self.scheme.as_str() {
            "auto" => {}
            "rk4" => opts.scheme = TimeScheme::Rk4,
            "ifrk4" => opts.scheme = TimeScheme::IfRk4,
            other => {
                return Err(Fault::usage(
                    "invalid-option",
                    format!("unknown scheme '{other}'; valid: auto, rk4, ifrk4"),
                ))
            }
        }
        opts.store_every = self.store_every;
        Ok(opts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> RunConfig {
        RunConfig {
            equation: "kdv".into(),
            n: 64,
            length: std::f64::consts::TAU,
            dt: 1e-3,
            t_end: 0.1,
            scheme: "auto".into(),
            eps: 1.0,
            store_every: 1,
            initial_condition: "sin(x)".into(),
        }
    }

    #[test]
    fn aliases_resolve_and_unknowns_fail() {
        for (alias, canonical) in [
            ("ch", "camassa-holm"),
            ("hs", "hunter-saxton"),
            ("dch", "dispersive-ch"),
            ("dhs", "dispersive-hs"),
            ("burgers", "hopf"),
        ] {
            let cfg = RunConfig {
                equation: alias.into(),
                ..base()
            };
            assert_eq!(cfg.equation_config().unwrap().name(), Some(canonical));
        }
        let cfg = RunConfig {
            equation: "navier-stokes".into(),
            ..base()
        };
        let fault = cfg.equation_config().unwrap_err();
        assert_eq!(fault.code, "unknown-equation");
        assert_eq!(fault.exit, 2);
        // The jet-only normalization is not a solver equation.
        let cfg = RunConfig {
            equation: "hopf-unit".into(),
            ..base()
        };
        assert_eq!(cfg.equation_config().unwrap_err().code, "unknown-equation");
    }

    #[test]
    fn scheme_overrides() {
        let cfg = base();
        let eq = cfg.equation_config().unwrap();
        assert_eq!(
            cfg.solver_options(&eq).unwrap().scheme,
            TimeScheme::IfRk4,
            "auto picks the integrating factor for dispersive equations"
        );
        let cfg = RunConfig {
            scheme: "rk4".into(),
            ..base()
        };
        assert_eq!(cfg.solver_options(&eq).unwrap().scheme, TimeScheme::Rk4);
        let cfg = RunConfig {
            scheme: "leapfrog".into(),
            ..base()
        };
        assert_eq!(cfg.solver_options(&eq).unwrap_err().code, "invalid-option");
    }

    #[test]
    fn initial_field_errors() {
        let cfg = RunConfig {
            initial_condition: "sin(".into(),
            ..base()
        };
        assert_eq!(cfg.initial_field().unwrap_err().code, "parse-error");
        let cfg = RunConfig {
            initial_condition: "ln(x - x)".into(),
            ..base()
        };
        assert_eq!(cfg.initial_field().unwrap_err().code, "invalid-option");
        let cfg = RunConfig {
            n: 7,
            ..base()
        };
        assert_eq!(cfg.initial_field().unwrap_err().code, "invalid-grid");
    }
}
