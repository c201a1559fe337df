use crate::linalg::SquareMatrix;
use crate::model::{MaskSet, ScenarioConfig};

/// Per-layer infector-type → susceptible-type transmission probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissibilityMatrices {
    /// Community edges; `[i, j]` is infector type `i` to susceptible type `j`.
    pub community: SquareMatrix,
    /// School edges, same orientation.
    pub school: SquareMatrix,
}

impl TransmissibilityMatrices {
    /// Product-form matrices `(1 - eps_out[i]) (1 - eps_in[j]) * base` per layer.
    pub fn from_masks(masks: &MaskSet, tc: f64, ts: f64) -> Self {
        Self {
            community: product_form(masks, tc),
            school: product_form(masks, ts),
        }
    }

    pub fn mask_types(&self) -> usize {
        self.community.dim()
    }

    /// Both matrices with every entry multiplied by `factor`; entries may
    /// leave [0,1], which only threshold computations tolerate.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            community: self.community.scaled(factor),
            school: self.school.scaled(factor),
        }
    }
}

fn product_form(masks: &MaskSet, base: f64) -> SquareMatrix {
    SquareMatrix::from_fn(masks.len(), |i, j| {
        (1.0 - masks.eps_out[i]) * (1.0 - masks.eps_in[j]) * base
    })
}

pub fn build_transmissibility(cfg: &ScenarioConfig) -> TransmissibilityMatrices {
    TransmissibilityMatrices::from_masks(&cfg.masks, cfg.tc, cfg.ts)
}
