use crate::scalar::Real;

/// Streaming central moments up to fourth order.
///
/// Single-pass update with shifted accumulation (sums of powers of deviations
/// from the running mean), plus an exact count-weighted merge so partial
/// results can be combined in any order.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Moments<T: Real> {
    count: u64,
    mean: T,
    m2: T,
    m3: T,
    m4: T,
}

impl<T: Real> Moments<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_slice(values: &[T]) -> Self {
        let mut m = Self::new();
        values.iter().for_each(|&x| m.push(x));
        m
    }

    pub fn push(&mut self, x: T) {
        let n1 = T::from_u64(self.count).unwrap();
        self.count += 1;
        let n = T::from_u64(self.count).unwrap();
        let delta = x - self.mean;
        let delta_n = delta / n;
        let delta_n2 = delta_n * delta_n;
        let term1 = delta * delta_n * n1;
        let three = T::lit(3.0);
        self.m4 += term1 * delta_n2 * (n * n - three * n + three)
            + T::lit(6.0) * delta_n2 * self.m2
            - T::lit(4.0) * delta_n * self.m3;
        self.m3 += term1 * delta_n * (n - T::lit(2.0)) - three * delta_n * self.m2;
        self.m2 += term1;
        self.mean += delta_n;
    }

    pub fn merge(&self, other: &Self) -> Self {
        if self.count == 0 {
            return *other;
        }
        if other.count == 0 {
            return *self;
        }
        let na = T::from_u64(self.count).unwrap();
        let nb = T::from_u64(other.count).unwrap();
        let n = na + nb;
        let delta = other.mean - self.mean;
        let d2 = delta * delta;
        let d3 = d2 * delta;
        let d4 = d2 * d2;
        let mean = self.mean + delta * nb / n;
        let m2 = self.m2 + other.m2 + d2 * na * nb / n;
        let m3 = self.m3
            + other.m3
            + d3 * na * nb * (na - nb) / (n * n)
            + T::lit(3.0) * delta * (na * other.m2 - nb * self.m2) / n;
        let m4 = self.m4
            + other.m4
            + d4 * na * nb * (na * na - na * nb + nb * nb) / (n * n * n)
            + T::lit(6.0) * d2 * (na * na * other.m2 + nb * nb * self.m2) / (n * n)
            + T::lit(4.0) * delta * (na * other.m3 - nb * self.m3) / n;
        Self {
            count: self.count + other.count,
            mean,
            m2,
            m3,
            m4,
        }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> T {
        self.mean
    }

    /// Population variance, (1/n) sum (x - mean)^2.
    pub fn variance(&self) -> T {
        if self.count == 0 {
            return T::zero();
        }
        self.m2 / T::from_u64(self.count).unwrap()
    }

    pub fn sigma(&self) -> T {
        self.variance().sqrt()
    }

    pub fn third_central(&self) -> T {
        if self.count == 0 {
            return T::zero();
        }
        self.m3 / T::from_u64(self.count).unwrap()
    }

    pub fn fourth_central(&self) -> T {
        if self.count == 0 {
            return T::zero();
        }
        self.m4 / T::from_u64(self.count).unwrap()
    }

    /// mu_4 / sigma^4 - 3, `None` when the variance vanishes.
    pub fn excess(&self) -> Option<T> {
        if self.m2 <= T::zero() {
            return None;
        }
        let n = T::from_u64(self.count).unwrap();
        Some(n * self.m4 / (self.m2 * self.m2) - T::lit(3.0))
    }
}
