use serde::{Deserialize, Serialize};

use crate::{EarthModel, Error, OrbitSpec, RadioParams, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScenarioKind {
    /// Interference from the receiver's own orbit.
    Single,
    /// A second orbit in the same plane at a different altitude.
    Coplanar,
    /// A second orbit at the same altitude and inclination with shifted RAAN.
    Shifted,
}

impl ScenarioKind {
    pub fn name(&self) -> &'static str {
        match self {
            ScenarioKind::Single => "single",
            ScenarioKind::Coplanar => "coplanar",
            ScenarioKind::Shifted => "shifted",
        }
    }
}

/// Physical setup shared by the analytic and simulated paths. The target
/// receiver is satellite 0 of orbit 0 and its serving transmitter is
/// satellite 1 of the same orbit.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub kind: ScenarioKind,
    pub earth: EarthModel,
    pub orbits: Vec<OrbitSpec>,
    pub radio: RadioParams,
}

const SAME_EPS: f64 = 1e-12;

impl Scenario {
    pub fn new(
        kind: ScenarioKind,
        earth: EarthModel,
        orbits: Vec<OrbitSpec>,
        radio: RadioParams,
    ) -> Result<Self> {
        let s = Scenario {
            kind,
            earth,
            orbits,
            radio,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        self.earth.validate()?;
        self.radio.validate()?;
        let want = match self.kind {
            ScenarioKind::Single => 1,
            ScenarioKind::Coplanar | ScenarioKind::Shifted => 2,
        };
        if self.orbits.len() != want {
            return Err(Error::Scenario(format!(
                "orbits: {} scenario needs exactly {want} orbit(s), got {}",
                self.kind.name(),
                self.orbits.len()
            )));
        }
        match self.kind {
            ScenarioKind::Single => {}
            ScenarioKind::Coplanar => {
                let (rx, other) = (&self.orbits[0], &self.orbits[1]);
                if (rx.altitude_km - other.altitude_km).abs() < SAME_EPS {
                    return Err(Error::Scenario(format!(
                        "orbits[1].altitude_km: co-planar orbits need different altitudes (both {} km)",
                        rx.altitude_km
                    )));
                }
                if (rx.inclination_rad - other.inclination_rad).abs() > SAME_EPS
                    || (rx.raan_rad - other.raan_rad).abs() > SAME_EPS
                {
                    return Err(Error::Scenario(
                        "orbits[1]: co-planar orbits need equal inclination and RAAN".into(),
                    ));
                }
            }
            ScenarioKind::Shifted => {
                let (rx, other) = (&self.orbits[0], &self.orbits[1]);
                if (rx.altitude_km - other.altitude_km).abs() > SAME_EPS {
                    return Err(Error::Scenario(format!(
                        "orbits[1].altitude_km: shifted orbits need equal altitudes ({} vs {} km)",
                        rx.altitude_km, other.altitude_km
                    )));
                }
                if (rx.inclination_rad - other.inclination_rad).abs() > SAME_EPS {
                    return Err(Error::Scenario(
                        "orbits[1].inclination: shifted orbits need equal inclinations".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn rx_orbit(&self) -> &OrbitSpec {
        &self.orbits[0]
    }

    /// The second orbit, if the scenario has one.
    pub fn interfering_orbit(&self) -> Option<&OrbitSpec> {
        self.orbits.get(1)
    }

    pub fn with_radio(&self, radio: RadioParams) -> Self {
        Scenario {
            radio,
            ..self.clone()
        }
    }
}
