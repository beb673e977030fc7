use crate::error::{Error, Result};

/// Geometry of a yes-no filter: `m = p + q*r` bits in total.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct YesNoParams {
    p: usize,
    q: usize,
    r: usize,
    k: usize,
    k_prime: usize,
    allow_false_negatives: bool,
}

impl YesNoParams {
    /// Yes-filter of `p` bits with `k` hashes plus `r` no-filters of `q`
    /// bits with `k_prime` hashes.
    pub fn new(p: usize, q: usize, r: usize, k: usize, k_prime: usize) -> Result<Self> {
        let params = YesNoParams {
            p,
            q,
            r,
            k,
            k_prime,
            allow_false_negatives: false,
        };
        params.validate()?;
        Ok(params)
    }

    /// As [`YesNoParams::new`], also checking the stated total `m`.
    pub fn with_total(
        m: usize,
        p: usize,
        q: usize,
        r: usize,
        k: usize,
        k_prime: usize,
    ) -> Result<Self> {
        let params = YesNoParams::new(p, q, r, k, k_prime)?;
        if params.m() != m {
            return Err(Error::InvalidParams(format!(
                "m = {m} but p + q*r = {} + {}*{} = {}",
                p,
                q,
                r,
                params.m()
            )));
        }
        Ok(params)
    }

    /// Skip the member scan during no-filter assignment. Members may then be
    /// rejected by the no stage.
    pub fn allowing_false_negatives(mut self, allow: bool) -> Self {
        self.allow_false_negatives = allow;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.p == 0 {
            return bad("yes-filter length p must be >= 1".into());
        }
        if self.k == 0 {
            return bad("yes-filter hash count k must be >= 1".into());
        }
        if self.r > 0 {
            if self.q == 0 {
                return bad("no-filter length q must be >= 1 when r > 0".into());
            }
            if self.q > self.p {
                return bad(format!(
                    "no-filter length q = {} exceeds yes-filter length p = {}",
                    self.q, self.p
                ));
            }
            if self.k_prime == 0 {
                return bad("no-filter hash count k' must be >= 1 when r > 0".into());
            }
        }
        if self
            .q
            .checked_mul(self.r)
            .and_then(|qr| qr.checked_add(self.p))
            .is_none()
        {
            return bad("total length overflows".into());
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.p + self.q * self.r
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn k_prime(&self) -> usize {
        self.k_prime
    }

    pub fn allow_false_negatives(&self) -> bool {
        self.allow_false_negatives
    }
}
