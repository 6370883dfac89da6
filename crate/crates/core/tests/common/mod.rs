#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::{Mutex, OnceLock};

use rodier_core::cartan::DEFAULT_ENUMERATION_CAP;
use rodier_core::{CartanType, RootSystem, WeylGroup};

pub struct Absolute {
    pub rs: RootSystem,
    pub weyl: WeylGroup,
}

/// Root system and Weyl group of a type, built once per test binary.
pub fn absolute(t: &str) -> &'static Absolute {
    static CACHE: OnceLock<Mutex<BTreeMap<String, &'static Absolute>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    let mut map = cache.lock().unwrap();
    map.entry(t.to_string()).or_insert_with(|| {
        let rs = RootSystem::new(t.parse::<CartanType>().unwrap()).unwrap();
        let weyl = WeylGroup::generate(&rs, DEFAULT_ENUMERATION_CAP).unwrap();
        Box::leak(Box::new(Absolute { rs, weyl }))
    })
}

/// Every subset of `0..n`, as sorted index lists.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1u32 << n)
        .map(|mask| (0..n).filter(|k| mask >> k & 1 == 1).collect())
        .collect()
}

pub const SMALL_TYPES: [&str; 9] = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "A4"];
