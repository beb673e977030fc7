use statrs::statistics::{Data, Max, Min, OrderStatistics, Statistics};

/// Mean, sample standard deviation and five-number summary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
    pub min: f64,
    pub q25: f64,
    pub median: f64,
    pub q75: f64,
    pub max: f64,
}

impl Summary {
    /// Panics on an empty sample.
    pub fn of(samples: &[f64]) -> Summary {
        assert!(!samples.is_empty(), "summary of an empty sample");
        let mean = samples.mean();
        let std = if samples.len() > 1 {
            samples.std_dev()
        } else {
            0.0
        };
        let mut data = Data::new(samples.to_vec());
        Summary {
            mean,
            std,
            min: data.min(),
            q25: data.lower_quartile(),
            median: data.median(),
            q75: data.upper_quartile(),
            max: data.max(),
        }
    }
}
