//! On-the-fly state interning for subset-style constructions.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Budget, Result};

/// Assigns dense ids to keys in discovery order, under a state budget.
pub(crate) struct Interner<K> {
    index: HashMap<K, usize>,
    keys: Vec<K>,
    budget: Budget,
}

impl<K: Clone + Eq + Hash> Interner<K> {
    pub fn new(budget: Budget) -> Self {
        Interner { index: HashMap::new(), keys: Vec::new(), budget }
    }

    pub fn intern(&mut self, key: K) -> Result<usize> {
        if let Some(&id) = self.index.get(&key) {
            return Ok(id);
        }
        self.budget.check(self.keys.len() + 1)?;
        let id = self.keys.len();
        self.index.insert(key.clone(), id);
        self.keys.push(key);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn key(&self, id: usize) -> &K {
        &self.keys[id]
    }

    pub fn into_keys(self) -> Vec<K> {
        self.keys
    }
}
