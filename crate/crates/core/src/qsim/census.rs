use serde::Serialize;

use super::{Circuit, GateLabel};

/// Gate counts by label plus an elementary-gate estimate.
///
/// Controlled basis-preparation and select gates are counted at oracle level:
/// one unit plus their control width. State-preparation gates are reported but
/// excluded from the estimate.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GateCensus {
    pub prep: usize,
    pub rep: usize,
    pub controlled_basis: usize,
    pub qft: usize,
    pub select: usize,
    pub dilation: usize,
    pub other: usize,
    pub qft_swaps: usize,
    pub control_width_total: usize,
    pub elementary_estimate: usize,
}

impl GateCensus {
    pub fn total_gates(&self) -> usize {
        self.prep + self.rep + self.controlled_basis + self.qft + self.select + self.dilation + self.other
    }

    /// `elementary_estimate <= constant * n^2 * 2^n`.
    pub fn within_scaling_bound(&self, n: usize, constant: usize) -> bool {
        self.elementary_estimate <= constant * n * n * (1usize << n)
    }
}

pub fn gate_census(circuit: &Circuit) -> GateCensus {
    let mut c = GateCensus::default();
    for gate in circuit.gates() {
        let width = gate.controls().len();
        match gate.label() {
            GateLabel::Prep => c.prep += 1,
            GateLabel::Rep => {
                c.rep += 1;
                c.elementary_estimate += 1;
            }
            GateLabel::ControlledBasis => {
                c.controlled_basis += 1;
                c.control_width_total += width;
                c.elementary_estimate += 1 + width;
            }
            GateLabel::Select => {
                c.select += 1;
                c.control_width_total += width;
                c.elementary_estimate += 1 + width;
            }
            GateLabel::Qft => {
                c.qft += 1;
                if gate.targets().len() == 2 {
                    c.qft_swaps += 1;
                }
                c.elementary_estimate += 1;
            }
            GateLabel::Dilation => {
                c.dilation += 1;
                c.elementary_estimate += 1;
            }
            GateLabel::Other => {
                c.other += 1;
                c.elementary_estimate += 1 + width;
            }
        }
    }
    c
}
