//! Exact computation and verification of the trivial source character
//! tables of `SL2(q)`, `q = 2^f`, for odd primes `ℓ` dividing `q² - 1`.
//!
//! The crate is layered bottom-up:
//!
//! * [`gf`]: the field tower `GF(q) ⊂ GF(q²)`;
//! * [`grp`]: `SL2(q)`, its tori, normalisers and class representatives;
//! * [`cyclo`]: exact cyclotomic numbers and reduction modulo `ℓ`;
//! * [`chartab`]: ordinary character tables of `G`, `N`, `N'` and induction;
//! * [`blocks`]: `ℓ`-blocks, Brauer trees and idempotent congruences;
//! * [`tsources`]: trivial source characters and Green correspondents;
//! * [`tsct`]: assembly of the species table and its verification.

pub mod arith;
pub mod blocks;
pub mod chartab;
pub mod cyclo;
mod error;
pub mod gf;
pub mod grp;
pub mod output;
pub mod tsources;
pub mod tsct;

pub use error::Error;

/// The two cases of the classification: `ℓ | q - 1` or `ℓ | q + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Case {
    #[serde(rename = "q-1")]
    QMinusOne,
    #[serde(rename = "q+1")]
    QPlusOne,
}

impl std::fmt::Display for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Case::QMinusOne => "l | q-1",
            Case::QPlusOne => "l | q+1",
        })
    }
}
