use clap::{Args, ValueEnum};
use qwalk::coin::{validate_coin, Coin, Mat2, Qubit, DEFAULT_TOL};
use qwalk::C64;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CoinPreset {
    /// (1/√2) [[1, 1], [1, -1]]
    Hadamard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum QubitPreset {
    /// (1/√2, i/√2)
    Symmetric,
    /// (0, 1)
    Right,
    /// (1, 0)
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Coin, initial state and output format shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    /// Named coin.
    #[arg(long, value_enum, default_value_t = CoinPreset::Hadamard, conflicts_with = "coin")]
    pub preset_coin: CoinPreset,

    /// Coin entries as re,im pairs in row-major order: a, b, c, d (8 reals).
    #[arg(long, allow_hyphen_values = true)]
    pub coin: Option<String>,

    /// Named initial state.
    #[arg(long, value_enum, default_value_t = QubitPreset::Symmetric, conflicts_with = "qubit")]
    pub preset_qubit: QubitPreset,

    /// Initial state as re,im pairs: alpha, beta (4 reals). Rescaled to unit norm.
    #[arg(long, allow_hyphen_values = true)]
    pub qubit: Option<String>,

    /// Unitarity tolerance for --coin.
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

impl RunConfig {
    pub fn coin(&self) -> Result<Coin, CliError> {
        match &self.coin {
            None => Ok(match self.preset_coin {
                CoinPreset::Hadamard => Coin::hadamard(),
            }),
            Some(text) => {
                let v: [f64; 8] = parse_reals(text, "--coin")?;
                validate_coin(Mat2::from_re_im(v), self.tol).map_err(|e| CliError::Input(format!("--coin: {e}")))
            }
        }
    }

    pub fn qubit(&self) -> Result<Qubit, CliError> {
        match &self.qubit {
            None => Ok(match self.preset_qubit {
                QubitPreset::Symmetric => Qubit::symmetric(),
                QubitPreset::Right => Qubit::right(),
                QubitPreset::Left => Qubit::left(),
            }),
            Some(text) => {
                let [ar, ai, br, bi]: [f64; 4] = parse_reals(text, "--qubit")?;
                Qubit::normalized(C64::new(ar, ai), C64::new(br, bi))
                    .map_err(|e| CliError::Input(format!("--qubit: {e}")))
            }
        }
    }
}

/// Exactly `N` finite comma-separated reals.
pub fn parse_reals<const N: usize>(text: &str, flag: &str) -> Result<[f64; N], CliError> {
    let values = parse_list::<f64>(text, flag)?;
    if values.iter().any(|x| !x.is_finite()) {
        return Err(CliError::Input(format!("{flag}: values must be finite")));
    }
    values
        .try_into()
        .map_err(|v: Vec<f64>| CliError::Input(format!("{flag}: expected {N} values, got {}", v.len())))
}

pub fn parse_list<T: std::str::FromStr>(text: &str, flag: &str) -> Result<Vec<T>, CliError> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse::<T>()
                .map_err(|_| CliError::Input(format!("{flag}: cannot parse {:?}", s.trim())))
        })
        .collect()
}
