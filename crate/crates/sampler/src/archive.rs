use crate::cftp::CftpSample;
use fivevertex::exact::{format_rational, Rational};
use fivevertex::model::Configuration;
use fivevertex::{Error, LatticeSpec, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecRecord {
    #[serde(rename = "N")]
    pub n: u32,
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "L")]
    pub l: u32,
}

/// One archived sample; serialised as a single JSON line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub spec: SpecRecord,
    pub x: String,
    pub seed: u64,
    #[serde(rename = "coalescence_T")]
    pub coalescence_t: u64,
    pub slices: Vec<Vec<u32>>,
}

impl SampleRecord {
    pub fn new(spec: &LatticeSpec, x: &Rational, seed: u64, sample: &CftpSample) -> Self {
        SampleRecord {
            spec: SpecRecord { n: spec.n, m: spec.m, l: spec.l },
            x: format_rational(x),
            seed,
            coalescence_t: sample.coalescence_t,
            slices: sample.config.slices.clone(),
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialise")
    }

    pub fn from_json_line(line: &str) -> Result<Self> {
        serde_json::from_str(line).map_err(|e| Error::Structural(format!("bad sample record: {e}")))
    }

    /// The configuration, checked against the recorded spec.
    pub fn configuration(&self) -> Result<(LatticeSpec, Configuration)> {
        let spec = LatticeSpec::new(self.spec.n, self.spec.m, self.spec.l)?;
        let cfg = Configuration { slices: self.slices.clone() };
        cfg.validate(&spec)?;
        Ok((spec, cfg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cftp::{cftp_sample, CftpOptions};
    use fivevertex::exact::rat;

    #[test]
    fn round_trip() {
        let spec = LatticeSpec::new(2, 4, 5).unwrap();
        let x = rat(9, 100);
        let s = cftp_sample(&spec, 0.09, 4, &CftpOptions::default()).unwrap();
        let rec = SampleRecord::new(&spec, &x, 4, &s);
        let line = rec.to_json_line();
        assert!(line.contains(r#""x":"9/100""#) && line.contains("coalescence_T"));
        let back = SampleRecord::from_json_line(&line).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.configuration().unwrap().1, s.config);
    }
}
