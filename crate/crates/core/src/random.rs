//! Seeded matrices of prescribed rank.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::linalg::Matrix;

/// `tU diag(1,..,1,0,..,0) V` with `rank` ones and `U, V` drawn from `seed`.
pub fn random_rank_matrix(field: &Field, size: usize, rank: usize, seed: u64) -> Result<Matrix> {
    if size == 0 {
        return Err(Error::DimensionMismatch("empty matrix".into()));
    }
    if rank > size {
        return Err(Error::RankMismatch { expected: format!("at most {size}"), found: rank });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let u = Matrix::random_invertible(field, size, &mut rng);
    let v = Matrix::random_invertible(field, size, &mut rng);
    let mut pattern = Matrix::zeros(field, size, size);
    for i in 0..rank {
        pattern.set(i, i, field.one());
    }
    u.transpose().mul(&pattern)?.mul(&v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn exact_rank_and_determinism() {
        let k = build_field(3, 2).unwrap();
        for rank in 0..=3 {
            let a = random_rank_matrix(&k, 3, rank, 7).unwrap();
            assert_eq!(a.rank(), rank);
            assert_eq!(a, random_rank_matrix(&k, 3, rank, 7).unwrap());
        }
        assert!(random_rank_matrix(&k, 3, 5, 1).is_err());
    }
}
