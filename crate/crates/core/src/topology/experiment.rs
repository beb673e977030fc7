use std::collections::BTreeMap;
use std::io::Write;

use rand::Rng;
use rayon::prelude::*;

use crate::bitcore::{BitVector, Element, HashFamily};
use crate::error::{Error, Result};
use crate::rng;
use crate::yesno::{ElementSketch, QueryOutcome, Sketcher, YesNoFilter, YesNoParams};

use super::{derive_link_sets, select_long_path, DirectedLink, Graph};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentParams {
    pub yes_no: YesNoParams,
    /// Hash count of the classic filter, which has `yes_no.m()` bits.
    pub k_bf: usize,
    pub allocations: usize,
    /// Count reverse traversals of path links as part of `T`.
    pub include_reverse: bool,
}

impl Default for ExperimentParams {
    /// m = 256 split as p = 192 plus two 32-bit no-filters, k = 4, k' = 3;
    /// classic filter with 6 hashes; 1000 allocations.
    fn default() -> Self {
        ExperimentParams {
            yes_no: YesNoParams::with_total(256, 192, 32, 2, 4, 3).expect("valid defaults"),
            k_bf: 6,
            allocations: 1000,
            include_reverse: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PathExperiment {
    pub name: String,
    pub path: Vec<String>,
    pub s_links: Vec<DirectedLink>,
    pub t_links: Vec<DirectedLink>,
    pub params: ExperimentParams,
}

impl PathExperiment {
    /// Uses `path` when given, otherwise the diameter path of `g`.
    pub fn from_graph(
        name: &str,
        g: &Graph,
        path: Option<Vec<String>>,
        params: ExperimentParams,
    ) -> Result<Self> {
        let path = match path {
            Some(p) => p,
            None => select_long_path(g)?,
        };
        let (s_links, t_links) = derive_link_sets(g, &path, params.include_reverse)?;
        Ok(PathExperiment {
            name: name.to_string(),
            path,
            s_links,
            t_links,
            params,
        })
    }

    pub fn path_len(&self) -> usize {
        self.s_links.len()
    }
}

/// False-positive counts for one allocation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AllocationCounts {
    /// Links of `T` the yes-no filter forwards on.
    pub yes_no: usize,
    /// Links of `T` its yes-filter alone forwards on.
    pub yes_filter: usize,
    /// Links of `T` the classic filter forwards on.
    pub bf: usize,
    /// Path links rejected by either structure.
    pub missed_path_links: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TopologyOutcome {
    pub name: String,
    pub path_len: usize,
    pub t_size: usize,
    pub fp_yesno_mean: f64,
    pub fp_bf_mean: f64,
    pub allocations: Vec<AllocationCounts>,
}

impl TopologyOutcome {
    fn rate(&self, count: f64) -> f64 {
        if self.t_size == 0 {
            0.0
        } else {
            count / self.t_size as f64
        }
    }

    pub fn fp_rate_yesno(&self) -> f64 {
        self.rate(self.fp_yesno_mean)
    }

    pub fn fp_rate_bf(&self) -> f64 {
        self.rate(self.fp_bf_mean)
    }

    /// Yes-no over classic expected false positives; `None` when the classic
    /// filter has none.
    pub fn ratio(&self) -> Option<f64> {
        (self.fp_bf_mean > 0.0).then(|| self.fp_yesno_mean / self.fp_bf_mean)
    }
}

fn run_allocation(
    exp: &PathExperiment,
    s_keys: &[u64],
    t_keys: &[u64],
    seed: u64,
) -> Result<AllocationCounts> {
    let params = &exp.params;
    let sketcher = Sketcher::new(&params.yes_no, rng::derive_seed(seed, &[1]))?;
    let s_sk: Vec<ElementSketch> = s_keys.iter().map(|&k| sketcher.sketch_key(k)).collect();
    let t_sk: Vec<ElementSketch> = t_keys.iter().map(|&k| sketcher.sketch_key(k)).collect();
    let (filter, report) =
        YesNoFilter::build_from_sketches(&params.yes_no, &sketcher, &s_sk, &t_sk)?;

    let bf_hash = HashFamily::random(params.k_bf, params.yes_no.m(), rng::derive_seed(seed, &[2]))?;
    let m = params.yes_no.m();
    let vector = |key: u64| BitVector::from_positions(m, &bf_hash.positions_for_key(key));
    let mut bf = BitVector::new(m);
    for &k in s_keys {
        bf.or_assign(&vector(k))?;
    }
    let bf_hits = |k: u64| vector(k).subset_unchecked(&bf);

    let missed = s_sk
        .iter()
        .zip(s_keys)
        .filter(|(sk, &k)| !filter.query_sketch(sk).is_positive() || !bf_hits(k))
        .count();
    Ok(AllocationCounts {
        yes_no: t_sk
            .iter()
            .filter(|sk| filter.query_sketch(sk) == QueryOutcome::Positive)
            .count(),
        yes_filter: report.f_count,
        bf: t_keys.iter().filter(|&&k| bf_hits(k)).count(),
        missed_path_links: missed,
    })
}

/// Averages false-positive counts over `exp.params.allocations` independent
/// random allocations of every link's bit positions.
pub fn run_topology_experiment(exp: &PathExperiment, seed: u64) -> Result<TopologyOutcome> {
    if exp.params.allocations == 0 {
        return Err(Error::InvalidParams("allocations must be >= 1".into()));
    }
    let s_keys: Vec<u64> = exp.s_links.iter().map(Element::element_key).collect();
    let t_keys: Vec<u64> = exp.t_links.iter().map(Element::element_key).collect();
    let topo_id = exp.name.element_key();
    let allocations = (0..exp.params.allocations)
        .into_par_iter()
        .map(|a| {
            run_allocation(
                exp,
                &s_keys,
                &t_keys,
                rng::derive_seed(seed, &[topo_id, a as u64]),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let mean = |f: fn(&AllocationCounts) -> usize| {
        allocations.iter().map(|c| f(c) as f64).sum::<f64>() / allocations.len() as f64
    };
    Ok(TopologyOutcome {
        name: exp.name.clone(),
        path_len: exp.path_len(),
        t_size: exp.t_links.len(),
        fp_yesno_mean: mean(|c| c.yes_no),
        fp_bf_mean: mean(|c| c.bf),
        allocations,
    })
}

/// Mean false-positive rates of all topologies sharing a path length.
#[derive(Debug, Clone, PartialEq)]
pub struct LengthAggregate {
    pub n: usize,
    pub topologies: usize,
    pub rate_yesno: f64,
    pub rate_bf: f64,
    /// `rate_yesno / rate_bf`; `None` when `rate_bf` is zero.
    pub ratio: Option<f64>,
}

pub fn aggregate_by_length(results: &[TopologyOutcome]) -> Vec<LengthAggregate> {
    let mut groups: BTreeMap<usize, Vec<&TopologyOutcome>> = BTreeMap::new();
    for r in results {
        groups.entry(r.path_len).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(n, rs)| {
            let count = rs.len() as f64;
            let rate_yesno = rs.iter().map(|r| r.fp_rate_yesno()).sum::<f64>() / count;
            let rate_bf = rs.iter().map(|r| r.fp_rate_bf()).sum::<f64>() / count;
            LengthAggregate {
                n,
                topologies: rs.len(),
                rate_yesno,
                rate_bf,
                ratio: (rate_bf > 0.0).then(|| rate_yesno / rate_bf),
            }
        })
        .collect()
}

/// Mean of the defined ratios at lengths `<= max_n`, and the number of
/// lengths skipped because their ratio is undefined.
pub fn mean_ratio(aggregates: &[LengthAggregate], max_n: usize) -> (Option<f64>, usize) {
    let in_range: Vec<&LengthAggregate> = aggregates.iter().filter(|a| a.n <= max_n).collect();
    let defined: Vec<f64> = in_range.iter().filter_map(|a| a.ratio).collect();
    let undefined = in_range.len() - defined.len();
    if defined.is_empty() {
        (None, undefined)
    } else {
        (
            Some(defined.iter().sum::<f64>() / defined.len() as f64),
            undefined,
        )
    }
}

/// Fraction of bootstrap resamples in which the mean yes-no rate is at most
/// the mean classic rate. Allocations are resampled with replacement inside
/// each topology, keeping each allocation's yes-no and classic counts paired.
pub fn bootstrap_dominance(results: &[&TopologyOutcome], resamples: usize, seed: u64) -> f64 {
    if resamples == 0 || results.is_empty() {
        return 1.0;
    }
    let mut rng = rng::stream(seed, &[0xB007]);
    let mut wins = 0;
    for _ in 0..resamples {
        let (mut yn, mut bf) = (0.0, 0.0);
        for r in results {
            if r.t_size == 0 || r.allocations.is_empty() {
                continue;
            }
            let len = r.allocations.len();
            let (mut a, mut b) = (0usize, 0usize);
            for _ in 0..len {
                let c = &r.allocations[rng.gen_range(0..len)];
                a += c.yes_no;
                b += c.bf;
            }
            yn += a as f64 / (len * r.t_size) as f64;
            bf += b as f64 / (len * r.t_size) as f64;
        }
        if yn <= bf {
            wins += 1;
        }
    }
    wins as f64 / resamples as f64
}

fn csv_io(e: csv::Error) -> Error {
    Error::Io {
        path: "<csv>".into(),
        message: e.to_string(),
    }
}

fn fixed(x: f64) -> String {
    format!("{x:.6}")
}

/// `topology,path_len,t_size,fp_yesno_mean,fp_bf_mean,ratio`; an undefined
/// ratio is left empty.
pub fn write_topology_csv<W: Write>(results: &[TopologyOutcome], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "topology",
        "path_len",
        "t_size",
        "fp_yesno_mean",
        "fp_bf_mean",
        "ratio",
    ])
    .map_err(csv_io)?;
    for r in results {
        w.write_record([
            r.name.clone(),
            r.path_len.to_string(),
            r.t_size.to_string(),
            fixed(r.fp_yesno_mean),
            fixed(r.fp_bf_mean),
            r.ratio().map(fixed).unwrap_or_default(),
        ])
        .map_err(csv_io)?;
    }
    w.flush().map_err(|e| csv_io(e.into()))
}

/// `n,rate_yesno,rate_bf,ratio`
pub fn write_aggregate_csv<W: Write>(aggregates: &[LengthAggregate], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "rate_yesno", "rate_bf", "ratio"])
        .map_err(csv_io)?;
    for a in aggregates {
        w.write_record([
            a.n.to_string(),
            fixed(a.rate_yesno),
            fixed(a.rate_bf),
            a.ratio.map(fixed).unwrap_or_default(),
        ])
        .map_err(csv_io)?;
    }
    w.flush().map_err(|e| csv_io(e.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::synthetic;

    fn quick(allocations: usize) -> ExperimentParams {
        ExperimentParams {
            allocations,
            ..ExperimentParams::default()
        }
    }

    #[test]
    fn no_side_links_means_no_false_positives() {
        let mut g = Graph::new();
        g.add_edge("a", "b");
        g.add_edge("b", "c");
        let params = ExperimentParams {
            include_reverse: false,
            ..quick(50)
        };
        let exp = PathExperiment::from_graph("line", &g, None, params).unwrap();
        assert!(exp.t_links.is_empty());
        let out = run_topology_experiment(&exp, 1).unwrap();
        assert_eq!((out.fp_yesno_mean, out.fp_bf_mean), (0.0, 0.0));
        assert_eq!(out.ratio(), None);
        assert_eq!((out.fp_rate_yesno(), out.fp_rate_bf()), (0.0, 0.0));
    }

    #[test]
    fn per_allocation_invariants_on_a_grid() {
        let g = synthetic::grid(8, 9);
        let exp = PathExperiment::from_graph("grid", &g, None, quick(300)).unwrap();
        assert_eq!(exp.path_len(), 15);
        let out = run_topology_experiment(&exp, 3).unwrap();
        for c in &out.allocations {
            assert_eq!(c.missed_path_links, 0);
            assert!(c.yes_no <= c.yes_filter);
        }
        assert!((0.0..=1.0).contains(&out.fp_rate_yesno()));
        assert!((0.0..=1.0).contains(&out.fp_rate_bf()));
    }

    #[test]
    fn deterministic_given_seed() {
        let g = synthetic::ring(20);
        let exp = PathExperiment::from_graph("ring", &g, None, quick(100)).unwrap();
        assert_eq!(
            run_topology_experiment(&exp, 9).unwrap(),
            run_topology_experiment(&exp, 9).unwrap()
        );
    }

    fn outcome(name: &str, n: usize, t: usize, yn: f64, bf: f64) -> TopologyOutcome {
        TopologyOutcome {
            name: name.into(),
            path_len: n,
            t_size: t,
            fp_yesno_mean: yn,
            fp_bf_mean: bf,
            allocations: vec![],
        }
    }

    #[test]
    fn aggregation_by_length() {
        let single = [outcome("a", 5, 10, 0.1, 0.4)];
        let agg = aggregate_by_length(&single);
        assert_eq!(agg.len(), 1);
        assert!((agg[0].rate_yesno - 0.01).abs() < 1e-12);
        assert!((agg[0].rate_bf - 0.04).abs() < 1e-12);
        assert!((agg[0].ratio.unwrap() - 0.25).abs() < 1e-12);

        let many = [
            outcome("a", 5, 10, 0.1, 0.4),
            outcome("b", 5, 20, 0.0, 0.4),
            outcome("c", 3, 4, 0.0, 0.0),
        ];
        let agg = aggregate_by_length(&many);
        assert_eq!(agg[0].n, 3);
        assert_eq!(
            (agg[0].rate_yesno, agg[0].rate_bf, agg[0].ratio),
            (0.0, 0.0, None)
        );
        assert_eq!(agg[1].topologies, 2);
        assert!((agg[1].rate_bf - 0.03).abs() < 1e-12);
        let (mean, undefined) = mean_ratio(&agg, 35);
        assert_eq!(undefined, 1);
        assert!((mean.unwrap() - 0.005 / 0.03).abs() < 1e-12);
    }

    #[test]
    fn csv_layouts() {
        let rs = [outcome("a", 5, 10, 0.1, 0.4), outcome("b", 2, 0, 0.0, 0.0)];
        let mut buf = Vec::new();
        write_topology_csv(&rs, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "topology,path_len,t_size,fp_yesno_mean,fp_bf_mean,ratio\n\
             a,5,10,0.100000,0.400000,0.250000\n\
             b,2,0,0.000000,0.000000,\n"
        );
        let mut buf = Vec::new();
        write_aggregate_csv(&aggregate_by_length(&rs), &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "n,rate_yesno,rate_bf,ratio\n2,0.000000,0.000000,\n5,0.010000,0.040000,0.250000\n"
        );
    }

    #[test]
    fn bootstrap_extremes() {
        let counts = |yes_no, bf| AllocationCounts {
            yes_no,
            yes_filter: yes_no,
            bf,
            missed_path_links: 0,
        };
        let mut good = outcome("g", 5, 10, 0.0, 1.0);
        good.allocations = vec![counts(0, 1), counts(0, 2), counts(1, 1)];
        let mut bad = outcome("b", 5, 10, 1.0, 0.0);
        bad.allocations = vec![counts(2, 0), counts(1, 0)];
        assert_eq!(bootstrap_dominance(&[&good], 200, 1), 1.0);
        assert_eq!(bootstrap_dominance(&[&bad], 200, 1), 0.0);
    }
}
