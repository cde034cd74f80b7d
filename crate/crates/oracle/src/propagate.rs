use xlink_core::geometry::gec_position;
use xlink_core::{Error, Result, SatelliteState, Scenario, Vec3};

/// Positions and pointing of every satellite at `t_s`, orbit by orbit.
/// Satellite `j` of each orbit points at its neighbour `j − 1 (mod N)`.
pub fn propagate(scenario: &Scenario, t_s: f64) -> Result<Vec<SatelliteState>> {
    if !t_s.is_finite() {
        return Err(Error::Domain {
            what: "time",
            requirement: "finite",
            value: t_s,
        });
    }
    let total = scenario.orbits.iter().map(|o| o.num_satellites).sum();
    let mut states = Vec::with_capacity(total);
    for (k, orbit) in scenario.orbits.iter().enumerate() {
        let n = orbit.num_satellites;
        let positions = (0..n)
            .map(|j| gec_position(orbit, j, t_s, &scenario.earth))
            .collect::<Result<Vec<_>>>()?;
        for j in 0..n {
            let target = positions[(j + n - 1) % n];
            states.push(SatelliteState {
                position: positions[j],
                tx_pointing: (target - positions[j]).normalize(),
                orbit_index: k,
                sat_index: j,
            });
        }
    }
    Ok(states)
}

/// The observed link: a receiver and its serving transmitter, both in the
/// same orbit and adjacent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkAssignment {
    pub orbit: usize,
    pub rx_index: usize,
    pub tx_index: usize,
    /// Unit vector of the receiver's beam axis (toward the transmitter).
    pub rx_pointing: Vec3,
}

impl LinkAssignment {
    /// Receiver 0 of orbit 0, served by satellite 1 of the same orbit.
    pub fn reference(states: &[SatelliteState]) -> Result<Self> {
        Self::new(states, 0, 0, 1)
    }

    pub fn new(
        states: &[SatelliteState],
        orbit: usize,
        rx_index: usize,
        tx_index: usize,
    ) -> Result<Self> {
        let n = states.iter().filter(|s| s.orbit_index == orbit).count();
        for idx in [rx_index, tx_index] {
            if idx >= n {
                return Err(Error::Index {
                    what: "satellite",
                    index: idx,
                    len: n,
                });
            }
        }
        if (rx_index + 1) % n != tx_index && (tx_index + 1) % n != rx_index {
            return Err(Error::Scenario(format!(
                "satellites {rx_index} and {tx_index} are not in-orbit neighbours"
            )));
        }
        let rx = find(states, orbit, rx_index)?;
        let tx = find(states, orbit, tx_index)?;
        Ok(LinkAssignment {
            orbit,
            rx_index,
            tx_index,
            rx_pointing: (tx.position - rx.position).normalize(),
        })
    }
}

pub(crate) fn find(
    states: &[SatelliteState],
    orbit: usize,
    index: usize,
) -> Result<&SatelliteState> {
    states
        .iter()
        .find(|s| s.orbit_index == orbit && s.sat_index == index)
        .ok_or(Error::Index {
            what: "satellite",
            index,
            len: states.len(),
        })
}
