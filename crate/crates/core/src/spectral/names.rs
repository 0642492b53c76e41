use std::fmt;

use crate::ring::BasisElement;

/// Adams spectral sequence representative of a non-nilpotent generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdamsName {
    /// `h_0`, detecting `ω_0 = [C₂/e]`.
    H0,
    /// `τ^{tau_exponent} h_0` with `tau_exponent = 2n`, detecting `ω_n`, `n > 0`.
    TauPowerH0 { tau_exponent: u64 },
    /// `γ / τ^{tau_exponent}` with `tau_exponent = 2|n| - 1`, detecting `ω_n`, `n < 0`.
    GammaOverTau { tau_exponent: u64 },
    /// `h_1`, detecting `η`.
    H1,
    /// `Q / ρ^{rho_exponent} · h_1^{h1_exponent}`.
    QOverRho { rho_exponent: u32, h1_exponent: u32 },
}

impl fmt::Display for AdamsName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdamsName::H0 => f.write_str("h0"),
            AdamsName::TauPowerH0 { tau_exponent } => write!(f, "tau^{tau_exponent} h0"),
            AdamsName::GammaOverTau { tau_exponent: 1 } => f.write_str("gamma/tau"),
            AdamsName::GammaOverTau { tau_exponent } => write!(f, "gamma/tau^{tau_exponent}"),
            AdamsName::H1 => f.write_str("h1"),
            AdamsName::QOverRho {
                rho_exponent,
                h1_exponent,
            } => {
                write!(f, "Q/rho^{rho_exponent} h1^{h1_exponent}")
            }
        }
    }
}

/// The Adams name of a basis element, where one is tabulated.
///
/// Defined on every `ω_n`, on `η = x_1`, and on `x_{8k-1}`, `x_{8k+1}` for
/// `k ≥ 1`; `None` elsewhere.
pub fn adams_name(b: &BasisElement) -> Option<AdamsName> {
    match *b {
        BasisElement::Omega(0) => Some(AdamsName::H0),
        BasisElement::Omega(n) if n > 0 => Some(AdamsName::TauPowerH0 {
            tau_exponent: 2 * n.unsigned_abs(),
        }),
        BasisElement::Omega(n) => Some(AdamsName::GammaOverTau {
            tau_exponent: 2 * n.unsigned_abs() - 1,
        }),
        BasisElement::XClass(i) => {
            let i = i.get();
            match (i, i % 8) {
                (1, _) => Some(AdamsName::H1),
                (_, 7) => {
                    let k = (i + 1) / 8;
                    Some(AdamsName::QOverRho {
                        rho_exponent: 4 * k - 2,
                        h1_exponent: 4 * k,
                    })
                }
                (_, 1) => {
                    let k = (i - 1) / 8;
                    Some(AdamsName::QOverRho {
                        rho_exponent: 4 * k - 1,
                        h1_exponent: 4 * k + 1,
                    })
                }
                _ => None,
            }
        }
        BasisElement::Unit | BasisElement::RhoPow(_) => None,
    }
}
