use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "cubiccf/v1";

/// Default precision floor in bits.
pub const DEFAULT_BITS: u32 = 128;
pub const BITS_ENV: &str = "CUBICCF_PRECISION_BITS";

#[derive(Clone, Debug, Serialize)]
pub struct Precision {
    pub floor_bits: u32,
    pub policy: &'static str,
}

impl Precision {
    pub fn new(floor_bits: u32) -> Self {
        Precision { floor_bits, policy: "exact rationals; intervals start at the floor and double until decided" }
    }
}

/// Run metadata embedded in every artifact.
#[derive(Clone, Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub tool_version: &'static str,
    pub precision: Precision,
    /// Present only with `--timing`, so default output stays byte-stable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
    /// SHA-256 of the compact JSON of the result.
    pub output_digest: String,
}

impl RunManifest {
    pub fn new(command: &str, parameters: Value, precision: Precision, result: &Value) -> Self {
        let bytes = serde_json::to_vec(result).expect("serializable result");
        let digest = Sha256::digest(&bytes);
        RunManifest {
            command: command.to_string(),
            parameters,
            tool_version: env!("CARGO_PKG_VERSION"),
            precision,
            wall_time_ms: None,
            output_digest: digest.iter().map(|b| format!("{b:02x}")).collect(),
        }
    }
}

#[derive(Serialize)]
pub struct Artifact<'a> {
    pub schema: &'static str,
    pub manifest: &'a RunManifest,
    pub result: &'a Value,
}
