use crate::bitcore::{BitVector, Element, HashFamily};
use crate::error::{Error, Result};
use crate::rng;

use super::YesNoParams;

/// An element's yes-part (`p` bits) and its single no-part (`q` bits).
///
/// On the wire an element carries `r` copies of the no-part; in memory one
/// copy is enough.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementSketch {
    pub yes_part: BitVector,
    pub no_part: BitVector,
}

impl ElementSketch {
    /// The `p + q*r` bit wire form: yes-part followed by `r` no-part copies.
    pub fn to_wire_bits(&self, r: usize) -> BitVector {
        BitVector::from_bools(
            self.yes_part
                .iter()
                .chain((0..r).flat_map(|_| self.no_part.iter())),
        )
    }
}

/// The two hash families `H` (yes) and `W` (no) of a yes-no filter.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sketcher {
    yes: HashFamily,
    no: HashFamily,
}

impl Sketcher {
    /// Random-allocation families for `params`, both derived from `seed`.
    pub fn new(params: &YesNoParams, seed: u64) -> Result<Self> {
        let yes = HashFamily::random(params.k(), params.p(), rng::derive_seed(seed, &[1]))?;
        let no = HashFamily::random(params.k_prime(), params.q(), rng::derive_seed(seed, &[2]))?;
        Ok(Sketcher { yes, no })
    }

    pub fn from_families(yes: HashFamily, no: HashFamily) -> Self {
        Sketcher { yes, no }
    }

    pub fn yes_family(&self) -> &HashFamily {
        &self.yes
    }

    pub fn no_family(&self) -> &HashFamily {
        &self.no
    }

    pub(crate) fn check(&self, params: &YesNoParams) -> Result<()> {
        if self.yes.range() != params.p() || self.yes.count() != params.k() {
            return Err(Error::Incompatible(format!(
                "yes hash family ({} x [0,{})) does not match k = {}, p = {}",
                self.yes.count(),
                self.yes.range(),
                params.k(),
                params.p()
            )));
        }
        if params.r() > 0 && (self.no.range() != params.q() || self.no.count() != params.k_prime())
        {
            return Err(Error::Incompatible(format!(
                "no hash family ({} x [0,{})) does not match k' = {}, q = {}",
                self.no.count(),
                self.no.range(),
                params.k_prime(),
                params.q()
            )));
        }
        Ok(())
    }

    pub fn sketch<E: Element + ?Sized>(&self, element: &E) -> ElementSketch {
        self.sketch_key(element.element_key())
    }

    pub fn sketch_key(&self, key: u64) -> ElementSketch {
        ElementSketch {
            yes_part: BitVector::from_positions(self.yes.range(), &self.yes.positions_for_key(key)),
            no_part: BitVector::from_positions(self.no.range(), &self.no.positions_for_key(key)),
        }
    }
}
