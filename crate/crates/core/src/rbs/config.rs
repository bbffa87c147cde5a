use serde_json::json;

use crate::error::{check_alpha, check_positive, Error, Result};
use crate::exact::iterations_for;
use crate::DEFAULT_ALPHA;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorMode {
    /// Constant relative error for values above a threshold; pairs with [`Lambda::Unit`].
    Relative,
    /// Uniform additive error; pairs with [`Lambda::SqrtOutDeg`].
    Additive,
}

impl ErrorMode {
    pub fn name(self) -> &'static str {
        match self {
            ErrorMode::Relative => "relative",
            ErrorMode::Additive => "additive",
        }
    }
}

/// Sampling weight `λ(u)` that trades variance against push cost.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lambda {
    /// `λ(u) = 1`
    Unit,
    /// `λ(u) = √d_out(u)`
    SqrtOutDeg,
}

impl Lambda {
    #[inline]
    pub fn weight(self, out_degree: u32) -> f64 {
        match self {
            Lambda::Unit => 1.0,
            Lambda::SqrtOutDeg => (out_degree as f64).sqrt(),
        }
    }
}

/// How `θ` is derived from the user's error parameter (`δ` or `ε`).
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ThetaRule {
    /// `θ = δ` (relative) or `θ = ε` (additive).
    #[default]
    Experimental,
    /// `θ = ε_r² δ / (3L)` (relative) or `θ = ε / √(3Lα)` (additive), where
    /// `L` is the truncation level of the error parameter itself.
    Theoretical {
        /// Relative error target `ε_r`; ignored in additive mode.
        relative_eps: f64,
    },
}

impl ThetaRule {
    pub fn theta(self, mode: ErrorMode, param: f64, alpha: f64) -> f64 {
        match self {
            ThetaRule::Experimental => param,
            ThetaRule::Theoretical { relative_eps } => {
                let levels = truncation_level(alpha, param).max(1) as f64;
                match mode {
                    ErrorMode::Relative => relative_eps * relative_eps * param / (3.0 * levels),
                    ErrorMode::Additive => param / (3.0 * levels * alpha).sqrt(),
                }
            }
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ThetaRule::Experimental => "experimental",
            ThetaRule::Theoretical { .. } => "theoretical",
        }
    }
}

/// `L = ⌈log_{1-α} θ⌉`, or 0 when `θ ≥ 1`.
pub fn truncation_level(alpha: f64, theta: f64) -> usize {
    iterations_for(alpha, theta)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RbsConfig {
    pub alpha: f64,
    pub mode: ErrorMode,
    pub theta: f64,
    /// Overrides the default truncation level.
    pub max_level: Option<usize>,
    pub seed: u64,
    /// Independent copies combined by per-hop median; must be odd.
    pub boost: usize,
}

impl RbsConfig {
    pub fn new(mode: ErrorMode, theta: f64) -> Self {
        Self { alpha: DEFAULT_ALPHA, mode, theta, max_level: None, seed: 0, boost: 1 }
    }

    pub fn relative(theta: f64) -> Self {
        Self::new(ErrorMode::Relative, theta)
    }

    pub fn additive(theta: f64) -> Self {
        Self::new(ErrorMode::Additive, theta)
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_boost(mut self, boost: usize) -> Self {
        self.boost = boost;
        self
    }

    pub fn with_max_level(mut self, levels: usize) -> Self {
        self.max_level = Some(levels);
        self
    }

    pub fn lambda(&self) -> Lambda {
        match self.mode {
            ErrorMode::Relative => Lambda::Unit,
            ErrorMode::Additive => Lambda::SqrtOutDeg,
        }
    }

    pub fn levels(&self) -> usize {
        self.max_level.unwrap_or_else(|| truncation_level(self.alpha, self.theta))
    }

    pub fn validate(&self) -> Result<()> {
        check_alpha(self.alpha)?;
        check_positive("theta", self.theta)?;
        if self.boost == 0 {
            return Err(Error::invalid("boost must be at least 1"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "alpha": self.alpha,
            "mode": self.mode.name(),
            "lambda": match self.lambda() { Lambda::Unit => "unit", Lambda::SqrtOutDeg => "sqrt_out_degree" },
            "theta": self.theta,
            "levels": self.levels(),
            "seed": self.seed,
            "boost": self.boost,
        })
    }
}
