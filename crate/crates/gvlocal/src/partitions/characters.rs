//! Irreducible characters `χ_μ(ν)` of the symmetric group by the
//! Murnaghan–Nakayama rule on beta-sets.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use super::Partition;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("character needs partitions of equal size, got {0} and {1}")]
pub struct CharacterError(pub u32, pub u32);

type Memo = HashMap<(Vec<u32>, Vec<u32>), i64>;

fn memo() -> &'static Mutex<Memo> {
    static MEMO: OnceLock<Mutex<Memo>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ_μ` evaluated on the conjugacy class of cycle type `ν`.
pub fn character(mu: &Partition, nu: &Partition) -> Result<i64, CharacterError> {
    if mu.size() != nu.size() {
        return Err(CharacterError(mu.size(), nu.size()));
    }
    Ok(mn(mu.parts().to_vec(), nu.parts()))
}

fn mn(mu: Vec<u32>, nu: &[u32]) -> i64 {
    if nu.is_empty() {
        return 1;
    }
    let key = (mu.clone(), nu.to_vec());
    if let Some(&v) = memo().lock().unwrap().get(&key) {
        return v;
    }
    let r = nu[0];
    let rest = &nu[1..];
    // beta-set: β_i = μ_i + (l - i), i = 1..l
    let l = mu.len();
    let beta: Vec<i64> = mu.iter().enumerate().map(|(i, &p)| p as i64 + (l - 1 - i) as i64).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        let nb = b - r as i64;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let height = beta.iter().filter(|&&x| x > nb && x < b).count();
        let mut nbeta = beta.clone();
        nbeta[i] = nb;
        nbeta.sort_unstable_by(|x, y| y.cmp(x));
        let m = nbeta.len();
        let parts: Vec<u32> = nbeta
            .iter()
            .enumerate()
            .map(|(j, &x)| (x - (m - 1 - j) as i64) as u32)
            .filter(|&p| p > 0)
            .collect();
        let sign = if height % 2 == 0 { 1 } else { -1 };
        total += sign * mn(parts, rest);
    }
    memo().lock().unwrap().insert(key, total);
    total
}
