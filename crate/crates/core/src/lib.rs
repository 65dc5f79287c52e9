//! Achievable rates for the relay channel with orthogonal components when
//! the source knows the codeword of an interferer.
//!
//! * [`awgn`]: fixed-gain schemes, reference points and capacity special cases.
//! * [`fading`]: the same ideas under ergodic Ricean fading, estimated by
//!   Monte Carlo with common random numbers.
//! * [`optimizer`]: the grid-plus-simplex maximizer every scheme uses.
//! * [`experiments`]: parameter sweeps, figure presets, CSV output and config
//!   parsing.
//!
//! Powers are linear SNRs (unit noise variance) and rates are in bits per
//! channel use.

pub mod awgn;
pub mod error;
pub mod experiments;
pub mod fading;
pub mod model;
pub mod optimizer;

pub use error::{Error, Result};
pub use model::{
    cap_fn, db_to_linear, linear_to_db, pos_part, Branch, ChannelGains, PowerBudget, RateResult,
    SchemeParams, SplitPowerBudget,
};
pub use optimizer::{maximize, Maximum, OptimizerConfig, ParamSpace};
