//! Binary linear codes packed into u64 words (length <= 64): row
//! reduction, dual bases, span enumeration.

/// A binary linear code given by generator rows over GF(2).
#[derive(Clone, Debug)]
pub struct BinaryCode {
    pub n: usize,
    pub generators: Vec<u64>,
}

impl BinaryCode {
    pub fn new(n: usize, generators: Vec<u64>) -> Self {
        assert!(n <= 64);
        let mask = word_mask(n);
        assert!(generators.iter().all(|&g| g & !mask == 0));
        BinaryCode { n, generators }
    }

    pub fn dimension(&self) -> usize {
        rank(&self.generators)
    }

    /// All 2^k codewords; XOR dynamic programming over a reduced basis.
    pub fn words(&self) -> Vec<u64> {
        let basis = row_reduce(&self.generators);
        let mut out = Vec::with_capacity(1 << basis.len());
        out.push(0u64);
        for &b in &basis {
            for i in 0..out.len() {
                out.push(out[i] ^ b);
            }
        }
        out
    }

    /// Generator basis of the dual code.
    pub fn dual(&self) -> BinaryCode {
        BinaryCode::new(self.n, kernel_basis(&self.generators, self.n))
    }

    /// Weight distribution (index = weight).
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut wd = vec![0u64; self.n + 1];
        for w in self.words() {
            wd[w.count_ones() as usize] += 1;
        }
        wd
    }

    pub fn contains(&self, word: u64) -> bool {
        let mut v = word;
        for &b in &row_reduce(&self.generators) {
            let lead = 63 - b.leading_zeros();
            if v >> lead & 1 == 1 {
                v ^= b;
            }
        }
        v == 0
    }
}

fn word_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Row-reduced basis (distinct leading bits, not fully systematic).
pub fn row_reduce(rows: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new(); // basis[i] has leading bit recorded in leads[i]
    let mut leads: Vec<u32> = Vec::new();
    for &r in rows {
        let mut v = r;
        for (i, &b) in basis.iter().enumerate() {
            if v >> leads[i] & 1 == 1 {
                v ^= b;
            }
        }
        if v != 0 {
            let lead = 63 - v.leading_zeros();
            basis.push(v);
            leads.push(lead);
        }
    }
    basis
}

pub fn rank(rows: &[u64]) -> usize {
    row_reduce(rows).len()
}

/// Basis of {x : <x, row> = 0 for all rows} over GF(2), in n-bit words.
pub fn kernel_basis(rows: &[u64], n: usize) -> Vec<u64> {
    let basis = row_reduce(rows);
    // gaussian elimination into reduced echelon with recorded pivot bits
    let mut echelon: Vec<(u32, u64)> = Vec::new();
    for &b in &basis {
        let mut v = b;
        for &(lead, row) in &echelon {
            if v >> lead & 1 == 1 {
                v ^= row;
            }
        }
        let lead = 63 - v.leading_zeros();
        for e in echelon.iter_mut() {
            if e.1 >> lead & 1 == 1 {
                e.1 ^= v;
            }
        }
        echelon.push((lead, v));
    }
    let pivot_bits: Vec<u32> = echelon.iter().map(|e| e.0).collect();
    let free_bits: Vec<u32> = (0..n as u32).filter(|b| !pivot_bits.contains(b)).collect();
    let mut out = Vec::new();
    for &f in &free_bits {
        let mut v = 1u64 << f;
        for &(lead, row) in &echelon {
            // coefficient of free bit f in the pivot equation
            if row >> f & 1 == 1 {
                v |= 1u64 << lead;
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_of_repetition_is_even_weight() {
        let rep = BinaryCode::new(4, vec![0b1111]);
        let dual = rep.dual();
        assert_eq!(dual.dimension(), 3);
        for w in dual.words() {
            assert_eq!(w.count_ones() % 2, 0);
        }
    }

    #[test]
    fn dual_is_orthogonal_complement() {
        let c = BinaryCode::new(7, vec![0b1011000, 0b0101100, 0b0010110, 0b0001011]);
        let d = c.dual();
        assert_eq!(c.dimension() + d.dimension(), 7);
        for x in c.words() {
            for y in d.words() {
                assert_eq!((x & y).count_ones() % 2, 0);
            }
        }
    }

    #[test]
    fn words_count() {
        let c = BinaryCode::new(6, vec![0b100000, 0b011111]);
        assert_eq!(c.words().len(), 4);
        assert!(c.contains(0b111111));
        assert!(!c.contains(0b000011));
    }
}
