//! Central measures on graded graphs, represented through the harmonic
//! function `φ(v) = μ(C_v) / dim(v)`, and their finite-horizon estimates.

mod concentration;
mod decay;
mod ergodic;
mod harmonic;
mod sampler;

pub use concentration::{concentration_check, lift_to_pascalized, ConcentrationReport};
pub use decay::{cylinder_decay_report, DecayReport, DecayRow};
pub use ergodic::{ergodic_estimate, ergodic_estimate_with_cone, ErgodicEstimate};
pub use harmonic::{check_harmonicity, HarmonicAssignment, HarmonicViolation, HarmonicityReport};
pub use sampler::{
    child_seeds, plancherel_sample_path, plancherel_transitions, sample_path, DEFAULT_SEED,
};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

pub(crate) fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

pub(crate) fn integer(n: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n.clone()))
}
