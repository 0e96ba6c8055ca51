use std::fmt;

use crate::error::{Error, Result};

/// Mixed-radix digits `d_u … d_1` with `d_i ∈ {0, …, i}` and place value `i!`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FactorialDigits {
    /// `digits[i - 1]` holds `d_i`.
    digits: Vec<u32>,
}

pub fn factorial(n: u32) -> u128 {
    (1..=n as u128).product()
}

impl FactorialDigits {
    /// Builds from `d_1, d_2, …` (least significant first).
    pub fn from_low(digits: Vec<u32>) -> Result<Self> {
        for (pos, &d) in digits.iter().enumerate() {
            if d as usize > pos + 1 {
                return Err(Error::InvalidParameter(format!("digit d_{} = {} exceeds {}", pos + 1, d, pos + 1)));
            }
        }
        Ok(FactorialDigits { digits })
    }

    pub fn zeros(width: usize) -> Self {
        FactorialDigits { digits: vec![0; width] }
    }

    pub fn width(&self) -> usize {
        self.digits.len()
    }

    /// `d_i`; positions 0 and beyond the width read as zero.
    pub fn digit(&self, i: usize) -> u32 {
        if i == 0 {
            0
        } else {
            self.digits.get(i - 1).copied().unwrap_or(0)
        }
    }

    /// Digits from `d_u` down to `d_1`.
    pub fn high_to_low(&self) -> Vec<u32> {
        self.digits.iter().rev().copied().collect()
    }
}

impl fmt::Display for FactorialDigits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.high_to_low().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn factorial_encode(k: u128, width: usize) -> Result<FactorialDigits> {
    let limit = factorial(width as u32 + 1);
    if k >= limit {
        return Err(Error::InvalidParameter(format!("{k} does not fit in {width} factorial digits")));
    }
    let mut digits = vec![0u32; width];
    let mut rest = k;
    for i in (1..=width).rev() {
        let place = factorial(i as u32);
        digits[i - 1] = (rest / place) as u32;
        rest %= place;
    }
    Ok(FactorialDigits { digits })
}

pub fn factorial_decode(digits: &FactorialDigits) -> u128 {
    digits.digits.iter().enumerate().map(|(pos, &d)| factorial(pos as u32 + 1) * d as u128).sum()
}
