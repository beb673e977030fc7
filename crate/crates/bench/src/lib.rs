//! Workloads shared by the benchmarks.

use yesno_core::simulate::draw_sets;
use yesno_core::{ElementSketch, Sketcher, YesNoParams};

/// m = 256, p = 160, three 32-bit no-filters, k = 4, k' = 5.
pub fn reference_params() -> YesNoParams {
    YesNoParams::with_total(256, 160, 32, 3, 4, 5).expect("valid parameters")
}

pub struct Workload {
    pub params: YesNoParams,
    pub sketcher: Sketcher,
    pub s: Vec<u64>,
    pub t: Vec<u64>,
}

impl Workload {
    pub fn new(n: usize, t: usize, seed: u64) -> Self {
        let params = reference_params();
        let sketcher = Sketcher::new(&params, seed).expect("valid parameters");
        let (s, t) = draw_sets(n, t, seed);
        Workload {
            params,
            sketcher,
            s,
            t,
        }
    }

    pub fn sketches(&self, items: &[u64]) -> Vec<ElementSketch> {
        items.iter().map(|e| self.sketcher.sketch(e)).collect()
    }
}
