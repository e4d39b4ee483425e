//! Small numerical kernels shared by the metrics.

/// Neumaier-compensated sum. Keeps serial and parallel reductions of the
/// same terms within a few ulp of each other.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(self) -> f64 {
        self.sum + self.carry
    }
}

pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut acc = CompensatedSum::default();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

/// `ln(1 + e^x)` without overflow.
pub(crate) fn softplus(x: f64) -> f64 {
    if x > 0.0 {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Distinct values with multiplicities, ascending.
///
/// PAV output has one value per block, so evaluating a kernel once per
/// distinct LLR is much cheaper than once per score.
#[derive(Debug, Clone)]
pub(crate) struct Histogram {
    pub(crate) values: Vec<f64>,
    pub(crate) counts: Vec<f64>,
    pub(crate) total: f64,
}

impl Histogram {
    pub(crate) fn new(values: &[f64]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mut out = Histogram {
            values: Vec::new(),
            counts: Vec::new(),
            total: values.len() as f64,
        };
        for v in sorted {
            match out.values.last() {
                Some(&last) if last == v => *out.counts.last_mut().unwrap() += 1.0,
                _ => {
                    out.values.push(v);
                    out.counts.push(1.0);
                }
            }
        }
        out
    }

    /// Mean of `f` over the underlying multiset. Weights are normalised
    /// first so a single distinct value yields `f(v)` exactly.
    pub(crate) fn mean(&self, f: impl Fn(f64) -> f64) -> f64 {
        compensated_sum(
            self.values
                .iter()
                .zip(&self.counts)
                .map(|(&v, &c)| (c / self.total) * f(v)),
        )
    }
}
