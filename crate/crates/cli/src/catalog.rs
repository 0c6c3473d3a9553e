use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use regwt_core::duality::{classify, PhiPool};
use regwt_core::{enumerate_regular, Error, WeightSystem};

use crate::record::{analyze, CatalogEntry, CheckSet, Options};

/// Regular systems with `h <= h_max`, ordered by `h` and then by sorted weights.
pub fn systems(h_max: u64, dual_only: bool) -> Result<Vec<WeightSystem>, Error> {
    let mut out = Vec::new();
    for h in 2..=h_max {
        let mut level: Vec<WeightSystem> = enumerate_regular(h).into_iter().map(|w| w.canonical()).collect();
        level.sort_by_key(|w| w.sorted_weights());
        for w in level {
            if !dual_only || !classify(&w)?.is_empty() {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Catalog entries computed on `jobs` worker threads; the order does not depend on
/// `jobs`.
pub fn build(h_max: u64, dual_only: bool, opts: &Options, jobs: usize) -> Result<Vec<CatalogEntry>, Error> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::Unsupported(e.to_string()))?;
    pool.install(|| {
        let list = systems(h_max, dual_only)?;
        let hs: Vec<u64> = {
            let mut hs: Vec<u64> = list.iter().map(|w| w.h()).collect();
            hs.dedup();
            hs
        };
        let pools: BTreeMap<u64, PhiPool> = if opts.checks.saito {
            hs.par_iter()
                .map(|&h| PhiPool::new(h).map(|p| (h, p)))
                .collect::<Result<_, _>>()?
        } else {
            BTreeMap::new()
        };
        list.par_iter()
            .map(|w| analyze(w, opts, pools.get(&w.h())).map(CatalogEntry::new))
            .collect()
    })
}

pub fn write_lines(entries: &[CatalogEntry], out: &mut impl Write) -> std::io::Result<()> {
    for e in entries {
        serde_json::to_writer(&mut *out, e)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

pub fn unverified() -> Options {
    Options {
        checks: CheckSet::NONE,
        ..Options::default()
    }
}
