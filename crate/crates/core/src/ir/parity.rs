use std::fmt;

/// An affine boolean function `c ⊕ x_{i1} ⊕ x_{i2} ⊕ …` over register variables,
/// stored as a parity bit-vector plus a constant bit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    words: Vec<u64>,
    constant: bool,
}

impl Affine {
    /// The constant-zero function over `n` variables.
    pub fn zero(n: usize) -> Self {
        Affine { words: vec![0; n.div_ceil(64)], constant: false }
    }

    /// The projection `x_i` over `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut a = Affine::zero(n);
        a.words[i / 64] |= 1 << (i % 64);
        a
    }

    pub fn constant(&self) -> bool {
        self.constant
    }

    pub fn flip_constant(&mut self) {
        self.constant = !self.constant;
    }

    pub fn has(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &Affine) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
        self.constant ^= other.constant;
    }

    /// Variables with coefficient 1, in increasing order.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }

    /// Evaluate on the assignment where variable `i` is `bit(i)`.
    pub fn eval(&self, bit: impl Fn(usize) -> bool) -> bool {
        self.support().fold(self.constant, |acc, i| acc ^ bit(i))
    }
}

impl fmt::Debug for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.support().map(|i| format!("x{i}")).collect();
        if self.constant || parts.is_empty() {
            parts.insert(0, (self.constant as u8).to_string());
        }
        write!(f, "{}", parts.join("⊕"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xor_and_eval() {
        let mut a = Affine::var(70, 0);
        a.xor_assign(&Affine::var(70, 67));
        assert_eq!(a.support().collect::<Vec<_>>(), vec![0, 67]);
        assert!(a.eval(|i| i == 67));
        assert!(!a.eval(|_| true));
        a.flip_constant();
        assert!(a.eval(|_| true));
        a.xor_assign(&Affine::var(70, 0));
        assert!(!a.has(0) && a.has(67));
    }
}
