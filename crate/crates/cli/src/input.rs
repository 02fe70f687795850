use clap::{ArgGroup, Args};
use patwait::{Alphabet, Error, ProbModel, Word};

/// Pattern, alphabet and face probabilities shared by most subcommands.
#[derive(Debug, Args)]
#[command(group(ArgGroup::new("model").required(true).args(["uniform", "probs"])))]
pub struct ModelArgs {
    /// Alphabet spec: a symbol list (HT), a range (A-Z) or a size (6)
    #[arg(long, conflicts_with = "m")]
    pub alphabet: Option<String>,
    /// Numeric alphabet size; patterns are then written 1,3,2
    #[arg(long)]
    pub m: Option<u32>,
    /// Fair die
    #[arg(long)]
    pub uniform: bool,
    /// Face probabilities, e.g. 1/2,1/4,1/4
    #[arg(long)]
    pub probs: Option<String>,
}

/// A failure attributed to one flag.
#[derive(Debug)]
pub struct FlagError {
    pub flag: &'static str,
    pub error: Error,
    pub example: &'static str,
}

impl std::fmt::Display for FlagError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {} (example: {})", self.flag, self.error, self.example)
    }
}

pub fn flag_err(flag: &'static str, example: &'static str) -> impl FnOnce(Error) -> FlagError {
    move |error| FlagError { flag, error, example }
}

fn is_coin_text(s: &str) -> bool {
    !s.trim().is_empty() && s.trim().chars().all(|c| c == 'H' || c == 'T')
}

fn is_numeric_text(s: &str) -> bool {
    s.trim().chars().all(|c| c.is_ascii_digit() || c == ',' || c == ' ')
}

pub struct Resolved {
    pub alphabet: Alphabet,
    pub model: ProbModel,
}

impl ModelArgs {
    /// Resolves the alphabet (explicit, or inferred from the patterns and
    /// the probability list) and the model over it.
    pub fn resolve(&self, patterns: &[&str]) -> Result<Resolved, FlagError> {
        let probs = match &self.probs {
            Some(p) => Some(ProbModel::parse(p).map_err(flag_err("--probs", "--probs 1/2,1/4,1/4"))?),
            None => None,
        };
        let alphabet = if let Some(spec) = &self.alphabet {
            Alphabet::parse(spec).map_err(flag_err("--alphabet", "--alphabet HT, --alphabet A-Z or --alphabet 6"))?
        } else if let Some(m) = self.m {
            Alphabet::numeric(m).map_err(flag_err("--m", "--m 6"))?
        } else if patterns.iter().all(|p| is_coin_text(p)) {
            Alphabet::coin()
        } else if let (Some(model), true) = (&probs, patterns.iter().all(|p| is_numeric_text(p))) {
            Alphabet::numeric(model.size()).expect("models are nonempty")
        } else {
            return Err(FlagError {
                flag: "--alphabet",
                error: Error::InvalidInput("cannot infer the alphabet of the pattern".into()),
                example: "--alphabet A-Z or --m 6",
            });
        };
        let model = match probs {
            Some(model) => {
                if model.size() != alphabet.size() {
                    return Err(FlagError {
                        flag: "--probs",
                        error: Error::InvalidInput(format!(
                            "{} probabilities given for an alphabet of {} faces",
                            model.size(),
                            alphabet.size()
                        )),
                        example: "--probs 1/2,1/2 for H/T patterns",
                    });
                }
                model
            }
            None => ProbModel::uniform(alphabet.size()).expect("alphabet is nonempty"),
        };
        Ok(Resolved { alphabet, model })
    }
}

pub fn parse_pattern(alphabet: &Alphabet, flag: &'static str, text: &str) -> Result<Word, FlagError> {
    let w = alphabet.parse_word(text).map_err(flag_err(
        flag,
        "--pattern HTH, --pattern ABRACADABRA --alphabet A-Z, --pattern 1,3,2 --m 3",
    ))?;
    w.require_pattern().map_err(flag_err(flag, "--pattern HTH"))?;
    Ok(w)
}
