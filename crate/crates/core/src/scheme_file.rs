//! Versioned JSON scheme files.
//!
//! Exact values are stored as `"p/q"` strings so a file round-trips without
//! loss; float shadows are informational only. Unknown fields are ignored.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exactnum::rational::{format_exact, max_bit_size, parse_rational};
use crate::solver::CouplingScheme;
use crate::spectra::{Parity, Spectrum};
use crate::{Error, Exact, Result};

pub const FORMAT_VERSION: u32 = 1;

/// How the spectrum in a file was produced.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    #[serde(default)]
    pub parameters: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(generator: impl Into<String>) -> Self {
        Self {
            generator: generator.into(),
            ..Self::default()
        }
    }

    pub fn with_parameter(mut self, name: &str, value: u64) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchemeFile {
    pub format_version: u32,
    pub n_sites: usize,
    pub parity: Parity,
    /// Positive levels, descending.
    pub spectrum: Vec<String>,
    /// Full mirror-expanded `J_1²..J_{N−1}²`; empty for spectrum-only files.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub couplings_squared: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub couplings_float: Vec<f64>,
    #[serde(default)]
    pub provenance: Provenance,
    #[serde(default)]
    pub bit_size_max: u64,
}

impl SchemeFile {
    pub fn from_spectrum(spectrum: &Spectrum<Exact>, provenance: Provenance) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            n_sites: spectrum.n_sites(),
            parity: spectrum.parity(),
            spectrum: spectrum.positive_levels().iter().map(format_exact).collect(),
            couplings_squared: Vec::new(),
            couplings_float: Vec::new(),
            provenance,
            bit_size_max: max_bit_size(spectrum.positive_levels()),
        }
    }

    pub fn from_scheme(scheme: &CouplingScheme<Exact>, provenance: Provenance) -> Self {
        Self {
            couplings_squared: scheme.couplings_squared().iter().map(format_exact).collect(),
            couplings_float: scheme.couplings_float().to_vec(),
            bit_size_max: scheme.bit_size_max(),
            ..Self::from_spectrum(scheme.source_spectrum(), provenance)
        }
    }

    pub fn has_couplings(&self) -> bool {
        !self.couplings_squared.is_empty()
    }

    pub fn spectrum(&self) -> Result<Spectrum<Exact>> {
        let levels = self
            .spectrum
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        let spectrum = Spectrum::new(levels, self.parity)?;
        if spectrum.n_sites() != self.n_sites {
            return Err(Error::Parse(format!(
                "n_sites = {} disagrees with {} {} levels",
                self.n_sites,
                spectrum.n_levels(),
                self.parity
            )));
        }
        Ok(spectrum)
    }

    pub fn couplings_squared_exact(&self) -> Result<Vec<Exact>> {
        self.couplings_squared.iter().map(|s| parse_rational(s)).collect()
    }

    /// The stored scheme, or `None` for a spectrum-only file.
    pub fn scheme(&self) -> Result<Option<CouplingScheme<Exact>>> {
        if !self.has_couplings() {
            return Ok(None);
        }
        CouplingScheme::new(self.couplings_squared_exact()?, self.spectrum()?).map(Some)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scheme files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text)?;
        if file.format_version == 0 || file.format_version > FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format_version {} (this build reads up to {FORMAT_VERSION})",
                file.format_version
            )));
        }
        Ok(file)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")?;
        Ok(())
    }
}
