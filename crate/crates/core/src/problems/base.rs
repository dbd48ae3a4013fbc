use crate::bitstring::BitString;

/// Number of one-bits.
pub fn onemax(x: &BitString) -> usize {
    x.count_ones()
}

/// Length of the longest all-ones prefix.
pub fn leading_ones(x: &BitString) -> usize {
    x.leading_ones()
}

/// `Σ_{i=1}^{n} i·x_i`.
pub fn linear_harmonic(x: &BitString) -> usize {
    x.iter()
        .enumerate()
        .filter(|&(_, b)| b)
        .map(|(i, _)| i + 1)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        BitString::parse(s).unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(onemax(&bs("1111")), 4);
        assert_eq!(leading_ones(&bs("1101")), 2);
        assert_eq!(leading_ones(&bs("0111")), 0);
        assert_eq!(linear_harmonic(&bs("1010")), 4);
        assert_eq!(linear_harmonic(&BitString::ones(100).unwrap()), 5050);
    }
}
