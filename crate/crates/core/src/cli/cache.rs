//! On-disk result cache. Entries are keyed by parameters and stamped with the code version;
//! unreadable or stale entries are recomputed and rewritten.

use std::fs;
use std::path::{Path, PathBuf};

use log::{debug, warn};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Result;
use crate::localzeta::mc::splitmix64;
use crate::localzeta::{density_exact, density_mc, DensityMode, DensityResult};
use crate::nichols::{Alphabet, NicholsAlgebra, RewriteSystem};

pub const CODE_VERSION: &str = concat!("resolvent/", env!("CARGO_PKG_VERSION"));

/// One hit in this many is recomputed and compared.
const AUDIT_ONE_IN: u64 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityRequest {
    Exact { budget: u128 },
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Serialize, Deserialize)]
struct Envelope {
    version: String,
    value: DensityResult,
}

#[derive(Clone, Debug, Default)]
pub struct Cache {
    root: Option<PathBuf>,
    seed: u64,
}

impl Cache {
    pub fn new(root: Option<PathBuf>, seed: u64) -> Self {
        Self { root, seed }
    }

    pub fn disabled() -> Self {
        Self::default()
    }

    pub fn root(&self) -> Option<&Path> {
        self.root.as_deref()
    }

    fn path(&self, rel: &str) -> Option<PathBuf> {
        self.root.as_ref().map(|r| r.join(rel))
    }

    fn read(&self, rel: &str) -> Option<Value> {
        let path = self.path(rel)?;
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str(&text) {
            Ok(v) => Some(v),
            Err(e) => {
                warn!("ignoring corrupted cache file {}: {e}", path.display());
                None
            }
        }
    }

    fn write(&self, rel: &str, value: &Value) {
        let Some(path) = self.path(rel) else { return };
        let result = path
            .parent()
            .map_or(Ok(()), fs::create_dir_all)
            .and_then(|_| fs::write(&path, serde_json::to_string_pretty(value).unwrap_or_default()));
        if let Err(e) = result {
            warn!("could not write cache file {}: {e}", path.display());
        }
    }

    fn audit(&self, rel: &str) -> bool {
        let h = rel.bytes().fold(0xcbf29ce484222325u64, |h, x| (h ^ x as u64).wrapping_mul(0x100000001b3));
        splitmix64(self.seed ^ h) % AUDIT_ONE_IN == 0
    }

    /// Density of valuation `b` for `V_d` over `F_p[t]`, from the cache when compatible.
    pub fn density(&self, d: u32, p: u32, b: u32, req: DensityRequest) -> Result<DensityResult> {
        let rel = format!("density/d{d}-p{p}-b{b}.json");
        let compute = || match req {
            DensityRequest::Exact { budget } => density_exact(d, p, b, budget),
            DensityRequest::MonteCarlo { samples, seed } => density_mc(d, p, b, samples, seed),
        };
        let cached = self
            .read(&rel)
            .and_then(|v| match serde_json::from_value::<Envelope>(v) {
                Ok(e) => Some(e),
                Err(e) => {
                    warn!("ignoring corrupted cache entry {rel}: {e}");
                    None
                }
            })
            .filter(|e| e.version == CODE_VERSION)
            .map(|e| e.value)
            .filter(|r| (r.d, r.p, r.b) == (d, p, b) && matches_request(r, req));
        if let Some(hit) = cached {
            if !self.audit(&rel) {
                debug!("cache hit {rel}");
                return Ok(hit);
            }
            let fresh = compute()?;
            if fresh != hit {
                warn!("cache audit failed for {rel}; replacing the entry");
            } else {
                return Ok(hit);
            }
            self.store_density(&rel, &fresh);
            return Ok(fresh);
        }
        let fresh = compute()?;
        self.store_density(&rel, &fresh);
        Ok(fresh)
    }

    fn store_density(&self, rel: &str, r: &DensityResult) {
        let env = Envelope {
            version: CODE_VERSION.to_string(),
            value: r.clone(),
        };
        if let Ok(v) = serde_json::to_value(env) {
            self.write(rel, &v);
        }
    }

    /// `B_d` with its completed rewrite system, from the cache when the stamp matches.
    pub fn nichols(&self, d: usize, rule_cap: usize) -> Result<NicholsAlgebra> {
        let rel = format!("groebner/bd{d}.json");
        let cached = self.read(&rel).and_then(|v| match RewriteSystem::from_json(&v, d) {
            Ok(s) => s,
            Err(e) => {
                warn!("ignoring corrupted cache entry {rel}: {e}");
                None
            }
        });
        if let Some(system) = cached {
            if let Ok(alg) = NicholsAlgebra::from_system(Alphabet::new(d)?, system) {
                if !self.audit(&rel) {
                    return Ok(alg);
                }
                let fresh = NicholsAlgebra::build(d, rule_cap)?;
                if fresh.system.to_json(d) == alg.system.to_json(d) {
                    return Ok(alg);
                }
                warn!("cache audit failed for {rel}; replacing the entry");
                self.write(&rel, &fresh.system.to_json(d));
                return Ok(fresh);
            }
            warn!("ignoring unusable cache entry {rel}");
        }
        let fresh = NicholsAlgebra::build(d, rule_cap)?;
        self.write(&rel, &fresh.system.to_json(d));
        Ok(fresh)
    }
}

fn matches_request(r: &DensityResult, req: DensityRequest) -> bool {
    match req {
        DensityRequest::Exact { .. } => r.mode == DensityMode::Exact,
        DensityRequest::MonteCarlo { samples, seed } => {
            r.mode == DensityMode::MonteCarlo && r.total == samples as u128 && r.seed == Some(seed)
        }
    }
}
