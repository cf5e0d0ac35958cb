//! Seeded random cite lists for exercising the chip-map pipeline.

use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

use super::CiteList;

/// Generates `item_nums` items where each cites between 1 and
/// `min(max_cite, item_nums - 1)` distinct other items, chosen without
/// replacement by a partial Fisher-Yates shuffle. The same seed always
/// yields the same list; a single item yields no citations.
pub fn generate_test_data(item_nums: usize, max_cite: usize, seed: u64) -> Result<CiteList> {
    if item_nums == 0 {
        return Err(Error::InvalidArgument { reason: "item_nums must be > 0".into() });
    }
    if max_cite == 0 {
        return Err(Error::InvalidArgument { reason: "max_cite must be > 0".into() });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cap = max_cite.min(item_nums - 1);
    let mut items = Vec::with_capacity(item_nums);
    for ni in 1..=item_nums {
        let mut cites = Vec::new();
        if cap > 0 {
            let len = rng.random_range(1..=cap);
            let mut candidates: Vec<usize> = (1..=item_nums).filter(|&c| c != ni).collect();
            for k in 0..len {
                let j = rng.random_range(k..candidates.len());
                candidates.swap(k, j);
                cites.push(candidates[k]);
            }
        }
        items.push((ni, cites));
    }
    Ok(CiteList { items })
}
