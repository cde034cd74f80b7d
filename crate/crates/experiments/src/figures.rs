//! The shipped figure configs, embedded so that runs do not depend on the
//! working directory.

use crate::config::{parse_config, ScenarioConfig};
use crate::error::Result;

pub const FIGURES: [(&str, &str); 6] = [
    ("fig4", include_str!("../configs/fig4.json")),
    ("fig5a", include_str!("../configs/fig5a.json")),
    ("fig5b", include_str!("../configs/fig5b.json")),
    ("fig6a", include_str!("../configs/fig6a.json")),
    ("fig6b", include_str!("../configs/fig6b.json")),
    ("fig6c", include_str!("../configs/fig6c.json")),
];

pub fn figure_config(name: &str) -> Option<Result<ScenarioConfig>> {
    FIGURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_config(text))
}
