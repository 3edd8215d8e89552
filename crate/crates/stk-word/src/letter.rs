use std::fmt;

/// A generator or its inverse, encoded as `2·vertex + sign`.
///
/// The derived order is the total order used for shortlex: vertex order,
/// positive before negative.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn new(vertex: usize, positive: bool) -> Letter {
        Letter(2 * vertex as u32 + u32::from(!positive))
    }

    pub fn pos(vertex: usize) -> Letter {
        Letter::new(vertex, true)
    }

    pub fn neg(vertex: usize) -> Letter {
        Letter::new(vertex, false)
    }

    pub fn from_index(i: usize) -> Letter {
        Letter(i as u32)
    }

    /// Dense index in `0..2n`.
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn vertex(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn pow(self, e: i32) -> Letter {
        if e < 0 {
            self.inverse()
        } else {
            self
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_positive() {
            write!(f, "x{}", self.vertex())
        } else {
            write!(f, "x{}^-1", self.vertex())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_and_inverse() {
        assert!(Letter::pos(0) < Letter::neg(0));
        assert!(Letter::neg(0) < Letter::pos(1));
        assert_eq!(Letter::pos(3).inverse(), Letter::neg(3));
        assert_eq!(Letter::neg(3).vertex(), 3);
        assert_eq!(Letter::from_index(Letter::neg(5).index()), Letter::neg(5));
    }
}
