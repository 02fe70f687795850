use patwait::rational::{to_decimal, to_wire};
use patwait::{Alphabet, ProbModel, Ratio, Word};
use serde_json::{json, Map, Value};

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

pub const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

/// JSON object under construction, starting with the common envelope.
pub struct Report(Map<String, Value>);

impl Report {
    pub fn new(command: &str) -> Self {
        let mut m = Map::new();
        m.insert("schema_version".into(), json!(SCHEMA_VERSION));
        m.insert("command".into(), json!(command));
        Report(m)
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) -> &mut Self {
        self.0.insert(key.into(), v.into());
        self
    }

    /// `key` as `num/den` plus `key_decimal`.
    pub fn ratio(&mut self, key: &str, r: &Ratio) -> &mut Self {
        self.set(key, to_wire(r));
        self.set(&format!("{key}_decimal"), to_decimal(r, DECIMAL_DIGITS))
    }

    pub fn ratios(&mut self, key: &str, rs: &[Ratio]) -> &mut Self {
        self.set(key, rs.iter().map(to_wire).collect::<Vec<_>>());
        self.set(
            &format!("{key}_decimal"),
            rs.iter().map(|r| to_decimal(r, DECIMAL_DIGITS)).collect::<Vec<_>>(),
        )
    }

    pub fn pattern(&mut self, alphabet: &Alphabet, model: &ProbModel, w: &Word) -> &mut Self {
        self.set("pattern", alphabet.format_word(w));
        self.set("letters", w.letters().to_vec());
        self.set("alphabet", alphabet.spec());
        self.set("model", model.probs().iter().map(to_wire).collect::<Vec<_>>())
    }

    pub fn print(&self) {
        println!(
            "{}",
            serde_json::to_string_pretty(&self.0).expect("maps of strings serialize")
        );
    }
}
