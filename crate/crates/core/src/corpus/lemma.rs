//! Rule-based lemma fallback for EVENT elements that carry no `lemma`.
//!
//! Only regular English inflection is handled; irregular forms come back
//! lowercased but otherwise unchanged.

const VOWELS: &[u8] = b"aeiou";

fn strip_doubled(stem: &str) -> String {
    let b = stem.as_bytes();
    let n = b.len();
    if n >= 3 && b[n - 1] == b[n - 2] && !VOWELS.contains(&b[n - 1]) && !b"lsz".contains(&b[n - 1])
    {
        stem[..n - 1].to_string()
    } else {
        stem.to_string()
    }
}

pub fn fallback_lemma(surface: &str) -> String {
    let word = surface.trim().to_lowercase();
    if word.len() <= 3 {
        return word;
    }
    if let Some(stem) = word.strip_suffix("ied") {
        return format!("{stem}y");
    }
    if let Some(stem) = word.strip_suffix("ies") {
        return format!("{stem}y");
    }
    if let Some(stem) = word.strip_suffix("ing") {
        if stem.len() >= 3 {
            return strip_doubled(stem);
        }
    }
    if let Some(stem) = word.strip_suffix("ed") {
        if stem.len() >= 3 {
            // approved -> approve, announced -> announce
            if stem.ends_with('v') || stem.ends_with('c') || stem.ends_with('u') {
                return format!("{stem}e");
            }
            return strip_doubled(stem);
        }
    }
    for suffix in ["sses", "shes", "ches", "xes"] {
        if word.ends_with(suffix) {
            return word[..word.len() - 2].to_string();
        }
    }
    if word.ends_with('s') && !["ss", "us", "is"].iter().any(|s| word.ends_with(s)) {
        return word[..word.len() - 1].to_string();
    }
    word
}

#[cfg(test)]
mod tests {
    use super::fallback_lemma;

    #[test]
    fn regular_inflections() {
        assert_eq!(fallback_lemma("Approved"), "approve");
        assert_eq!(fallback_lemma("announced"), "announce");
        assert_eq!(fallback_lemma("rejected"), "reject");
        assert_eq!(fallback_lemma("stopped"), "stop");
        assert_eq!(fallback_lemma("buying"), "buy");
        assert_eq!(fallback_lemma("running"), "run");
        assert_eq!(fallback_lemma("carried"), "carry");
        assert_eq!(fallback_lemma("sells"), "sell");
        assert_eq!(fallback_lemma("launches"), "launch");
        assert_eq!(fallback_lemma("crisis"), "crisis");
        assert_eq!(fallback_lemma("status"), "status");
        assert_eq!(fallback_lemma("sold"), "sold");
    }
}
