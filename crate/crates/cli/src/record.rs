use std::io::Write;

use cycle_prefix::NetworkParams;
use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParamsRecord {
    pub delta: usize,
    pub dee: usize,
    pub r: usize,
}

impl From<&NetworkParams> for ParamsRecord {
    fn from(g: &NetworkParams) -> Self {
        Self {
            delta: g.delta(),
            dee: g.dee(),
            r: g.r(),
        }
    }
}

/// One line of machine-readable output. Field order is fixed; object keys
/// inside `inputs` and `outputs` are sorted.
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentRecord {
    pub schema: u32,
    pub command: String,
    pub params: ParamsRecord,
    pub inputs: Value,
    pub outputs: Value,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl ExperimentRecord {
    pub fn new(
        command: &str,
        params: &NetworkParams,
        inputs: Value,
        outputs: Value,
        pass: bool,
    ) -> Self {
        Self {
            schema: SCHEMA,
            command: command.to_string(),
            params: params.into(),
            inputs,
            outputs,
            pass,
            elapsed_ms: None,
        }
    }

    pub fn write_line(&self, out: &mut impl Write) -> std::io::Result<()> {
        serde_json::to_writer(&mut *out, self)?;
        writeln!(out)
    }
}
