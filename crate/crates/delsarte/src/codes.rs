//! Reference binary codes built from standard generator matrices. The
//! Golay codes come from the cyclic generator polynomial
//! g(x) = x^11 + x^9 + x^7 + x^6 + x^5 + x + 1 over GF(2).

use crate::gf2::BinaryCode;

const GOLAY_G: u64 = 0b1010_1110_0011; // coefficients of g(x), bit i = x^i

/// The perfect [23,12,7] binary Golay code.
pub fn golay23() -> BinaryCode {
    let generators = (0..12).map(|i| GOLAY_G << i).collect();
    BinaryCode::new(23, generators)
}

/// The extended [24,12,8] binary Golay code (overall parity bit appended).
pub fn golay24() -> BinaryCode {
    extend_with_parity(&golay23())
}

/// The [2^m-1, 2^m-1-m, 3] binary Hamming code.
pub fn hamming_code(m: u32) -> BinaryCode {
    assert!((2..=6).contains(&m));
    let n = (1usize << m) - 1;
    // parity-check rows: bit j of column index j+1
    let checks: Vec<u64> = (0..m)
        .map(|bit| {
            let mut row = 0u64;
            for j in 0..n {
                if (j + 1) >> bit & 1 == 1 {
                    row |= 1 << j;
                }
            }
            row
        })
        .collect();
    BinaryCode::new(n, checks).dual()
}

/// The [2^m, 2^m-1-m, 4] extended Hamming code.
pub fn extended_hamming_code(m: u32) -> BinaryCode {
    extend_with_parity(&hamming_code(m))
}

/// Appends an overall parity bit to every generator.
pub fn extend_with_parity(code: &BinaryCode) -> BinaryCode {
    let n = code.n;
    let generators = code
        .generators
        .iter()
        .map(|&g| g | ((g.count_ones() as u64 & 1) << n))
        .collect();
    BinaryCode::new(n + 1, generators)
}

/// Direct-sum with a free coordinate: words (c, e) for c in C, e in {0,1}.
pub fn append_free_bit(code: &BinaryCode) -> BinaryCode {
    let n = code.n;
    let mut generators = code.generators.clone();
    generators.push(1u64 << n);
    BinaryCode::new(n + 1, generators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golay23_weight_distribution() {
        let wd = golay23().weight_distribution();
        let expected: Vec<u64> = vec![
            1, 0, 0, 0, 0, 0, 0, 253, 506, 0, 0, 1288, 1288, 0, 0, 506, 253, 0, 0, 0, 0, 0, 0, 1,
        ];
        assert_eq!(wd, expected);
    }

    #[test]
    fn golay24_weight_distribution() {
        let wd = golay24().weight_distribution();
        let expected: Vec<u64> = vec![
            1, 0, 0, 0, 0, 0, 0, 0, 759, 0, 0, 0, 2576, 0, 0, 0, 759, 0, 0, 0, 0, 0, 0, 0, 1,
        ];
        assert_eq!(wd, expected);
    }

    #[test]
    fn hamming_codes() {
        let h = hamming_code(3);
        assert_eq!(h.dimension(), 4);
        assert_eq!(h.weight_distribution(), vec![1, 0, 0, 7, 7, 0, 0, 1]);
        let eh = extended_hamming_code(3);
        assert_eq!(eh.weight_distribution(), vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
        // extended Hamming [8,4] is self-dual
        let dual = eh.dual();
        for g in &eh.generators {
            assert!(dual.contains(*g));
        }
    }

    #[test]
    fn golay24_is_self_dual() {
        let c = golay24();
        let d = c.dual();
        assert_eq!(d.dimension(), 12);
        for g in &c.generators {
            assert!(d.contains(*g));
        }
    }
}
