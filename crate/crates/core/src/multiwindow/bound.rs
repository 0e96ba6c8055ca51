use crate::error::{Error, Result};
use crate::rational::Rational;

/// Profit shares `(h₃, …, h₇)` of an optimal run by window class: `h_ℓ` is
/// the share from windows spanning `ℓ` quarter periods.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProfitShareVector([Rational; 5]);

impl ProfitShareVector {
    pub fn new(shares: [Rational; 5]) -> Result<Self> {
        if shares.iter().any(Rational::is_negative) {
            return Err(Error::InvalidParameter("profit shares must be nonnegative".into()));
        }
        let total: Rational = shares.iter().copied().sum();
        if total != Rational::ONE {
            return Err(Error::InvalidParameter(format!("profit shares sum to {total}, not 1")));
        }
        Ok(ProfitShareVector(shares))
    }

    pub fn corner(class: usize) -> Self {
        let mut h = [Rational::ZERO; 5];
        h[class] = Rational::ONE;
        ProfitShareVector(h)
    }

    pub fn shares(&self) -> [Rational; 5] {
        self.0
    }
}

fn dot(coeffs: [(i128, i128); 5], h: &[Rational; 5]) -> Rational {
    coeffs.iter().zip(h).map(|(&(n, d), &x)| Rational::new(n, d) * x).sum()
}

/// Guarantees of the three phases for the shares `h`.
pub fn phase_bounds(h: &ProfitShareVector) -> [Rational; 3] {
    let h = &h.0;
    [
        dot([(1, 3), (7, 24), (1, 4), (9, 40), (1, 5)], h),
        dot([(1, 9), (2, 9), (1, 3), (11, 36), (5, 18)], h),
        dot([(0, 1), (1, 12), (1, 6), (1, 4), (1, 3)], h),
    ]
}

/// Convex weights of the three phase bounds.
pub fn mixing_weights() -> [Rational; 3] {
    [Rational::new(50, 73), Rational::new(6, 73), Rational::new(17, 73)]
}

/// Weighted sum of the phase bounds; a lower bound on the best phase.
pub fn evaluate_bound12(h: &ProfitShareVector) -> Rational {
    phase_bounds(h).iter().zip(mixing_weights()).map(|(&b, w)| b * w).sum()
}

/// Guaranteed profit fraction for longest window 2, 3 or 4 (times `1/γ`).
pub fn rho(max_window: u32) -> Option<Rational> {
    match max_window {
        2 => Some(Rational::new(52, 219)),
        3 => Some(Rational::new(4954, 24619)),
        4 => Some(Rational::new(258044, 1427019)),
        _ => None,
    }
}
