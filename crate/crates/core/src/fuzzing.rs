//! Round-trip checks behind the fuzz targets and the corpus replay test.
//! Each function accepts arbitrary bytes and panics only when a parser
//! accepts input whose canonical rendering does not parse back to the same
//! value.

use crate::rational::{parse_ratio, to_decimal, to_display, to_wire};
use crate::words::{Alphabet, ProbModel};

fn text(data: &[u8]) -> Option<&str> {
    // keep inputs small so bigint work stays bounded
    if data.len() > 512 {
        return None;
    }
    std::str::from_utf8(data).ok()
}

pub fn ratio(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(r) = parse_ratio(s) else { return };
    assert_eq!(parse_ratio(&to_wire(&r)).unwrap(), r);
    assert_eq!(parse_ratio(&to_display(&r)).unwrap(), r);
    let dec = to_decimal(&r, 12);
    assert!(!dec.is_empty());
}

pub fn probs(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(model) = ProbModel::parse(s) else { return };
    let total: crate::Ratio = model.probs().iter().sum();
    assert_eq!(total, crate::rational::int(1));
    assert!(model.probs().iter().all(|p| *p >= crate::rational::int(0)));
    let wire: Vec<String> = model.probs().iter().map(to_wire).collect();
    assert_eq!(ProbModel::parse(&wire.join(",")).unwrap(), model);
}

pub fn alphabet(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let Ok(a) = Alphabet::parse(s) else { return };
    assert!(a.size() >= 1);
    assert_eq!(Alphabet::parse(&a.spec()).unwrap(), a);
}

/// First line is an alphabet spec, the rest a word over it.
pub fn word(data: &[u8]) {
    let Some(s) = text(data) else { return };
    let (spec, body) = s.split_once('\n').unwrap_or((s, ""));
    let Ok(a) = Alphabet::parse(spec) else { return };
    let Ok(w) = a.parse_word(body) else { return };
    assert!(w.letters().iter().all(|&l| l >= 1 && l <= a.size()));
    assert_eq!(a.parse_word(&a.format_word(&w)).unwrap(), w);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_garbage() {
        for data in [
            &b""[..],
            b"\xff\xfe",
            b"1/0",
            b"-",
            b"a-b",
            b"1,2\n3",
            b"A-C\nABCA",
            b"HT\nX",
        ] {
            ratio(data);
            probs(data);
            alphabet(data);
            word(data);
        }
    }

    #[test]
    fn ambiguous_symbol_sets_are_rejected() {
        assert!(Alphabet::symbols(&['a', '-', 'b']).is_err());
        assert!(Alphabet::symbols(&['1', '3']).is_err());
        assert!(Alphabet::parse("0-9").is_err());
        assert_eq!(Alphabet::parse("13").unwrap().size(), 13);
    }
}
