use crate::rational::Rational;

/// A uniform partition of the time axis into half-open periods
/// `[offset + i·length, offset + (i+1)·length)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodGrid {
    pub length: Rational,
    pub offset: Rational,
}

impl PeriodGrid {
    pub fn new(length: Rational, offset: Rational) -> Self {
        assert!(length.is_positive(), "period length must be positive");
        assert!(!offset.is_negative() && offset < length, "offset must lie in [0, length)");
        PeriodGrid { length, offset }
    }

    /// Half-length periods starting at time 0.
    pub fn unit() -> Self {
        PeriodGrid::new(Rational::HALF, Rational::ZERO)
    }

    pub fn index_of(&self, time: Rational) -> i64 {
        ((time - self.offset) / self.length).floor() as i64
    }

    pub fn begin(&self, index: i64) -> Rational {
        self.offset + self.length * Rational::from_int(index as i128)
    }

    pub fn end(&self, index: i64) -> Rational {
        self.begin(index + 1)
    }

    pub fn bounds(&self, index: i64) -> (Rational, Rational) {
        (self.begin(index), self.end(index))
    }

    /// Indices of the periods wholly inside `[start, end)`, in time order.
    pub fn contained(&self, start: Rational, end: Rational) -> std::ops::RangeInclusive<i64> {
        let first = ((start - self.offset) / self.length).ceil() as i64;
        let last = ((end - self.offset) / self.length).floor() as i64 - 1;
        first..=last
    }

    pub fn contained_count(&self, start: Rational, end: Rational) -> usize {
        let r = self.contained(start, end);
        (r.end() - r.start() + 1).max(0) as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn indices_and_bounds() {
        let g = PeriodGrid::new(q(3, 4), q(1, 4));
        assert_eq!(g.index_of(q(1, 4)), 0);
        assert_eq!(g.index_of(q(1, 5)), -1);
        assert_eq!(g.bounds(1), (q(1, 1), q(7, 4)));
        assert_eq!(g.contained(q(3, 10), q(19, 10)), 1..=1);
    }

    #[test]
    fn boundary_window_contains_two_halves() {
        let g = PeriodGrid::unit();
        assert_eq!(g.contained_count(q(1, 2), q(3, 2)), 2);
        assert_eq!(g.contained_count(q(3, 10), q(13, 10)), 1);
        assert_eq!(g.contained_count(q(0, 1), q(2, 5)), 0);
    }
}
