//! JSON documents read and written by the command line.
//!
//! Complex numbers are `[re, im]` pairs and matrices are lists of rows.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use suprematrix::channel::{
    transpose_artificial_qubit_map, Channel, KrausChannel, UnitalMixture, Unitary,
};
use suprematrix::matrix::{c64, zeros, HermitianMatrix, Mat};
use suprematrix::qubit::{qubit_density_from_probabilities, qubit_probabilities_from_density};
use suprematrix::qutrit::{qutrit_density_from_probabilities, qutrit_probabilities_from_density};
use suprematrix::{QubitProbabilities, QutritProbabilities};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Qubit,
    Qutrit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Density,
    Probabilities,
}

impl Representation {
    pub fn other(self) -> Self {
        match self {
            Representation::Density => Representation::Probabilities,
            Representation::Probabilities => Representation::Density,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateDocument {
    pub kind: Kind,
    pub representation: Representation,
    pub data: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Value>,
}

/// A parsed and range-checked state. Positivity is not required.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum State {
    Qubit(QubitProbabilities),
    Qutrit(QutritProbabilities),
}

impl State {
    pub fn kind(&self) -> Kind {
        match self {
            State::Qubit(_) => Kind::Qubit,
            State::Qutrit(_) => Kind::Qutrit,
        }
    }
}

impl StateDocument {
    pub fn parse(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn state(&self) -> CliResult<State> {
        match (self.kind, self.representation) {
            (Kind::Qubit, Representation::Probabilities) => {
                let [a, b, c] = probability_list::<3>(&self.data)?;
                Ok(State::Qubit(QubitProbabilities::new(a, b, c)?))
            }
            (Kind::Qutrit, Representation::Probabilities) => {
                let pi = probability_list::<8>(&self.data)?;
                Ok(State::Qutrit(QutritProbabilities::new(pi)?))
            }
            (Kind::Qubit, Representation::Density) => {
                let m = HermitianMatrix::new(matrix::<2>(&self.data)?)?;
                Ok(State::Qubit(qubit_probabilities_from_density(&m)?))
            }
            (Kind::Qutrit, Representation::Density) => {
                let m = HermitianMatrix::new(matrix::<3>(&self.data)?)?;
                Ok(State::Qutrit(qutrit_probabilities_from_density(&m)?))
            }
        }
    }

    pub fn from_state(
        state: &State,
        representation: Representation,
        metadata: Option<Value>,
    ) -> Self {
        let data = match (state, representation) {
            (State::Qubit(p), Representation::Probabilities) => floats(&p.as_array()),
            (State::Qutrit(q), Representation::Probabilities) => floats(&q.as_array()),
            (State::Qubit(p), Representation::Density) => {
                matrix_value(qubit_density_from_probabilities(p).entries())
            }
            (State::Qutrit(q), Representation::Density) => {
                matrix_value(qutrit_density_from_probabilities(q).entries())
            }
        };
        StateDocument {
            kind: state.kind(),
            representation,
            data,
            metadata,
        }
    }
}

fn number(v: &Value, what: &str) -> CliResult<f64> {
    v.as_f64()
        .ok_or_else(|| CliError::malformed(format!("{what}: expected a number, found {v}")))
}

fn probability_list<const N: usize>(data: &Value) -> CliResult<[f64; N]> {
    let items = data.as_array().filter(|a| a.len() == N).ok_or_else(|| {
        CliError::malformed(format!("data: expected a list of {N} probabilities"))
    })?;
    let mut out = [0.0; N];
    for (slot, v) in out.iter_mut().zip(items) {
        *slot = number(v, "data")?;
    }
    Ok(out)
}

fn complex_pair(v: &Value) -> CliResult<suprematrix::C64> {
    match v.as_array().map(Vec::as_slice) {
        Some([re, im]) => Ok(c64(number(re, "real part")?, number(im, "imaginary part")?)),
        _ => Err(CliError::malformed(format!(
            "complex entry must be an [re, im] pair, found {v}"
        ))),
    }
}

/// An `N x N` matrix of `[re, im]` pairs.
pub fn matrix<const N: usize>(data: &Value) -> CliResult<Mat<N>> {
    let rows = data
        .as_array()
        .filter(|r| r.len() == N)
        .ok_or_else(|| CliError::malformed(format!("expected a {N} x {N} matrix")))?;
    let mut m = zeros::<N>();
    for (row, v) in m.iter_mut().zip(rows) {
        let entries = v
            .as_array()
            .filter(|e| e.len() == N)
            .ok_or_else(|| CliError::malformed(format!("matrix rows must have {N} entries")))?;
        for (z, e) in row.iter_mut().zip(entries) {
            *z = complex_pair(e)?;
        }
    }
    Ok(m)
}

fn floats(values: &[f64]) -> Value {
    Value::Array(values.iter().map(|x| Value::from(*x + 0.0)).collect())
}

pub fn matrix_value<const N: usize>(m: &Mat<N>) -> Value {
    Value::Array(
        m.iter()
            .map(|row| Value::Array(row.iter().map(|z| floats(&[z.re, z.im])).collect()))
            .collect(),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChannelKind {
    Unitary,
    Unital,
    Kraus,
    Dephasing,
    Transpose,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelDocument {
    pub kind: ChannelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub which: Option<usize>,
}

impl ChannelDocument {
    pub fn parse(text: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn matrices(&self) -> CliResult<Vec<Mat<3>>> {
        let list = self
            .matrices
            .as_ref()
            .filter(|m| !m.is_empty())
            .ok_or_else(|| CliError::malformed("channel needs a non-empty `matrices` list"))?;
        list.iter().map(matrix::<3>).collect()
    }

    pub fn channel(&self) -> CliResult<Channel> {
        match self.kind {
            ChannelKind::Unitary => match self.matrices()?.as_slice() {
                [u] => Ok(Channel::Unitary(Unitary::new(*u)?)),
                _ => Err(CliError::malformed(
                    "unitary channel takes exactly one matrix",
                )),
            },
            ChannelKind::Unital => {
                let matrices = self.matrices()?;
                let weights = self
                    .weights
                    .as_ref()
                    .filter(|w| w.len() == matrices.len())
                    .ok_or_else(|| {
                        CliError::malformed("unital channel needs one weight per matrix")
                    })?;
                let terms = weights
                    .iter()
                    .zip(matrices)
                    .map(|(w, u)| Ok((*w, Unitary::new(u)?)))
                    .collect::<CliResult<Vec<_>>>()?;
                Ok(Channel::Unital(UnitalMixture::new(terms)?))
            }
            ChannelKind::Kraus => Ok(Channel::Kraus(KrausChannel::new(self.matrices()?)?)),
            ChannelKind::Dephasing => Ok(Channel::dephasing()),
            ChannelKind::Transpose => {
                let which = self
                    .which
                    .ok_or_else(|| CliError::malformed("transpose channel needs `which`"))?;
                Ok(Channel::Transpose(transpose_artificial_qubit_map(which)?))
            }
        }
    }
}
