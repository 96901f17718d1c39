//! Perfect state transfer: numeric detection, structural checks at a transfer
//! time, and the necessary conditions a transfer pair must satisfy.

mod conditions;
mod ratio;
mod search;
mod support;

pub use conditions::{analyze_pair, necessary_conditions, TransferReport, Verdict};
pub(crate) use conditions::{analyze_pair_with, check_pair, exact_poly};
pub use ratio::{ratio_condition, rational_approx, RatioVerdict};
pub use search::{
    check_periodicity, fidelity, search_pst, verify_pst_event, Amplitude, PstEvent, PstStructure, SupportSign,
    DEFAULT_THRESHOLD, VERIFY_TOLERANCE,
};
pub use support::{classify_support, rho_squared_integer, SupportClass};

use num_bigint::BigUint;
use num_integer::Roots;
use num_traits::{One, Pow};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Size bounds for connected graphs of maximum valency `k` admitting PST.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FinitenessBound {
    pub k: u64,
    pub support_bound: u64,
    pub eccentricity_bound: u64,
    #[serde(serialize_with = "as_string")]
    pub vertex_bound: BigUint,
}

fn as_string<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `support_bound = ceil((2k + 1) sqrt 2)`, the same bound on eccentricity, and
/// the Moore-type count `1 + sum_{s=1..e} k (k - 1)^(s - 1)`, with `0^0 = 1`.
pub fn finiteness_bound(k: u64) -> Result<FinitenessBound> {
    if k == 0 {
        return Err(Error::InvalidArgument("maximum valency must be at least 1".into()));
    }
    let odd = u128::from(2 * k + 1);
    let target = 2 * odd * odd;
    let mut bound = target.sqrt();
    if bound * bound < target {
        bound += 1;
    }
    let support_bound = u64::try_from(bound).map_err(|_| Error::InvalidArgument(format!("valency {k} too large")))?;
    let kb = BigUint::from(k);
    let km1 = BigUint::from(k - 1);
    let mut vertex_bound = BigUint::one();
    for s in 1..=support_bound {
        vertex_bound += &kb * Pow::pow(&km1, s - 1);
    }
    Ok(FinitenessBound {
        k,
        support_bound,
        eccentricity_bound: support_bound,
        vertex_bound,
    })
}
