//! BCP 47 language tags: syntactic well-formedness and case normalization.
//!
//! Tags are compared on the full normalized form, so `pt` and `pt-BR` are
//! different languages. Ill-formed tags keep their raw text and compare only
//! by that text.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Grandfathered tags listed by BCP 47; well-formed as whole units.
const GRANDFATHERED: [&str; 26] = [
    "en-gb-oed", "i-ami", "i-bnn", "i-default", "i-enochian", "i-hak", "i-klingon", "i-lux",
    "i-mingo", "i-navajo", "i-pwn", "i-tao", "i-tay", "i-tsu", "sgn-be-fr", "sgn-be-nl",
    "sgn-ch-de", "art-lojban", "cel-gaulish", "no-bok", "no-nyn", "zh-guoyu", "zh-hakka",
    "zh-min", "zh-min-nan", "zh-xiang",
];

/// Marker used in reports for literals without any language tag.
pub const UNTAGGED: &str = "und:untagged";

#[derive(Debug, Clone)]
pub struct LanguageTag {
    raw: String,
    normalized: String,
    language: String,
    extlang: Vec<String>,
    script: Option<String>,
    region: Option<String>,
    variants: Vec<String>,
    /// Extensions and private use, lowercased, joined with `-`.
    remainder: Option<String>,
    well_formed: bool,
}

impl LanguageTag {
    pub fn parse(raw: &str) -> LanguageTag {
        parse_tag(raw)
    }

    pub fn raw(&self) -> &str {
        &self.raw
    }

    /// Normalized form for well-formed tags, raw text otherwise.
    pub fn as_str(&self) -> &str {
        if self.well_formed {
            &self.normalized
        } else {
            &self.raw
        }
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn extlang(&self) -> &[String] {
        &self.extlang
    }

    pub fn script(&self) -> Option<&str> {
        self.script.as_deref()
    }

    pub fn region(&self) -> Option<&str> {
        self.region.as_deref()
    }

    pub fn variants(&self) -> &[String] {
        &self.variants
    }

    pub fn extensions_and_private_use(&self) -> Option<&str> {
        self.remainder.as_deref()
    }

    pub fn is_well_formed(&self) -> bool {
        self.well_formed
    }
}

/// Parse and normalize a tag. Never fails: ill-formed input yields a tag with
/// `is_well_formed() == false` that preserves the raw string.
pub fn parse_tag(raw: &str) -> LanguageTag {
    let ill = || LanguageTag {
        raw: raw.to_string(),
        normalized: raw.to_string(),
        language: String::new(),
        extlang: Vec::new(),
        script: None,
        region: None,
        variants: Vec::new(),
        remainder: None,
        well_formed: false,
    };
    if raw.is_empty() || !raw.is_ascii() {
        return ill();
    }
    let lower = raw.to_ascii_lowercase();
    if GRANDFATHERED.contains(&lower.as_str()) {
        return LanguageTag {
            raw: raw.to_string(),
            normalized: lower.clone(),
            language: lower,
            extlang: Vec::new(),
            script: None,
            region: None,
            variants: Vec::new(),
            remainder: None,
            well_formed: true,
        };
    }
    let subtags: Vec<&str> = lower.split('-').collect();
    if subtags.iter().any(|s| s.is_empty() || s.len() > 8 || !s.bytes().all(|b| b.is_ascii_alphanumeric())) {
        return ill();
    }
    let alpha = |s: &str| s.bytes().all(|b| b.is_ascii_alphabetic());
    let digit = |s: &str| s.bytes().all(|b| b.is_ascii_digit());

    // privateuse-only tag: "x-..."
    if subtags[0] == "x" {
        if subtags.len() < 2 {
            return ill();
        }
        return LanguageTag {
            raw: raw.to_string(),
            normalized: lower.clone(),
            language: String::new(),
            extlang: Vec::new(),
            script: None,
            region: None,
            variants: Vec::new(),
            remainder: Some(lower),
            well_formed: true,
        };
    }

    let mut i = 0;
    let language = subtags[0];
    if !(alpha(language) && (2..=8).contains(&language.len())) {
        return ill();
    }
    i += 1;
    let mut extlang = Vec::new();
    if (2..=3).contains(&language.len()) {
        while i < subtags.len() && extlang.len() < 3 && subtags[i].len() == 3 && alpha(subtags[i]) {
            extlang.push(subtags[i].to_string());
            i += 1;
        }
    }
    let mut script = None;
    if i < subtags.len() && subtags[i].len() == 4 && alpha(subtags[i]) {
        let s = subtags[i];
        script = Some(format!("{}{}", s[..1].to_ascii_uppercase(), &s[1..]));
        i += 1;
    }
    let mut region = None;
    if i < subtags.len()
        && ((subtags[i].len() == 2 && alpha(subtags[i])) || (subtags[i].len() == 3 && digit(subtags[i])))
    {
        region = Some(subtags[i].to_ascii_uppercase());
        i += 1;
    }
    let mut variants: Vec<String> = Vec::new();
    while i < subtags.len() {
        let s = subtags[i];
        let is_variant = (5..=8).contains(&s.len())
            || (s.len() == 4 && s.as_bytes()[0].is_ascii_digit());
        if !is_variant {
            break;
        }
        if variants.iter().any(|v| v == s) {
            return ill();
        }
        variants.push(s.to_string());
        i += 1;
    }
    let mut remainder_parts: Vec<&str> = Vec::new();
    let mut seen_singletons = Vec::new();
    while i < subtags.len() {
        let s = subtags[i];
        if s.len() != 1 {
            return ill();
        }
        if s == "x" {
            if i + 1 >= subtags.len() {
                return ill();
            }
            remainder_parts.extend_from_slice(&subtags[i..]);
            i = subtags.len();
            break;
        }
        if seen_singletons.contains(&s) {
            return ill();
        }
        seen_singletons.push(s);
        let start = i;
        i += 1;
        while i < subtags.len() && subtags[i].len() >= 2 {
            i += 1;
        }
        if i == start + 1 {
            return ill();
        }
        remainder_parts.extend_from_slice(&subtags[start..i]);
    }
    debug_assert_eq!(i, subtags.len());

    let mut normalized = language.to_string();
    for e in &extlang {
        normalized.push('-');
        normalized.push_str(e);
    }
    if let Some(s) = &script {
        normalized.push('-');
        normalized.push_str(s);
    }
    if let Some(r) = &region {
        normalized.push('-');
        normalized.push_str(r);
    }
    for v in &variants {
        normalized.push('-');
        normalized.push_str(v);
    }
    let remainder = (!remainder_parts.is_empty()).then(|| remainder_parts.join("-"));
    if let Some(r) = &remainder {
        normalized.push('-');
        normalized.push_str(r);
    }
    LanguageTag {
        raw: raw.to_string(),
        normalized,
        language: language.to_string(),
        extlang,
        script,
        region,
        variants,
        remainder,
        well_formed: true,
    }
}

/// Full-tag identity: no subtag fallback.
pub fn same_language(a: &LanguageTag, b: &LanguageTag) -> bool {
    a == b
}

impl PartialEq for LanguageTag {
    fn eq(&self, other: &Self) -> bool {
        self.well_formed == other.well_formed && self.as_str() == other.as_str()
    }
}

impl Eq for LanguageTag {}

impl Hash for LanguageTag {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.well_formed.hash(state);
        self.as_str().hash(state);
    }
}

impl Ord for LanguageTag {
    fn cmp(&self, other: &Self) -> Ordering {
        self.as_str()
            .to_ascii_lowercase()
            .cmp(&other.as_str().to_ascii_lowercase())
            .then_with(|| self.as_str().cmp(other.as_str()))
            .then_with(|| other.well_formed.cmp(&self.well_formed))
    }
}

impl PartialOrd for LanguageTag {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LanguageTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for LanguageTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for LanguageTag {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(parse_tag(&s))
    }
}

/// The language of one inventoried annotation value.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelLanguage {
    Tagged(LanguageTag),
    /// A literal written without a language tag.
    Untagged,
    /// An IRI or blank-node value; languages do not apply.
    NotApplicable,
}

impl LabelLanguage {
    pub fn tag(&self) -> Option<&LanguageTag> {
        match self {
            LabelLanguage::Tagged(t) => Some(t),
            _ => None,
        }
    }
}

impl fmt::Display for LabelLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LabelLanguage::Tagged(t) => t.fmt(f),
            LabelLanguage::Untagged => f.write_str(UNTAGGED),
            LabelLanguage::NotApplicable => f.write_str("-"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn case_normalization() {
        let t = parse_tag("PT-br");
        assert!(t.is_well_formed());
        assert_eq!(t.language(), "pt");
        assert_eq!(t.region(), Some("BR"));
        assert_eq!(t.as_str(), "pt-BR");
        assert_eq!(parse_tag("EN").as_str(), "en");
        let t = parse_tag("zh-hant-tw");
        assert_eq!((t.script(), t.region()), (Some("Hant"), Some("TW")));
        assert_eq!(parse_tag("de-CH-1901").variants(), ["1901".to_string()]);
        assert_eq!(parse_tag("es-419").region(), Some("419"));
        assert_eq!(parse_tag("en-a-BBB-x-Priv").as_str(), "en-a-bbb-x-priv");
        assert!(parse_tag("i-klingon").is_well_formed());
        assert!(parse_tag("x-whatever").is_well_formed());
    }

    #[test]
    fn ill_formed_tags_keep_raw() {
        for raw in ["x123!", "qq-zz-!!", "e", "en--us", "en-a", "toolongtag", "de-1901-1901", "en-x"] {
            let t = parse_tag(raw);
            assert!(!t.is_well_formed(), "{raw}");
            assert_eq!(t.raw(), raw);
        }
    }

    #[test]
    fn full_tag_identity() {
        assert!(!same_language(&parse_tag("pt"), &parse_tag("pt-br")));
        assert!(same_language(&parse_tag("EN"), &parse_tag("en")));
        assert!(same_language(&parse_tag("qq-zz-!!"), &parse_tag("qq-zz-!!")));
        assert!(!same_language(&parse_tag("QQ-zz-!!"), &parse_tag("qq-zz-!!")));
    }

    #[test]
    fn table_header_languages_are_well_formed() {
        for t in ["ar", "cs", "da", "de", "el", "en", "es", "fr", "it", "ja", "pt", "pt-br", "ru", "zh"] {
            assert!(parse_tag(t).is_well_formed(), "{t}");
        }
    }

    #[test]
    fn serde_round_trip() {
        let t = parse_tag("pt-br");
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, "\"pt-BR\"");
        let back: LanguageTag = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent(raw in "[a-zA-Z]{2,3}(-[a-zA-Z]{4})?(-([a-zA-Z]{2}|[0-9]{3}))?(-[a-zA-Z0-9]{5,8})?|[ -~]{1,12}") {
            let t = parse_tag(&raw);
            let again = parse_tag(t.as_str());
            prop_assert_eq!(&again, &t);
            prop_assert_eq!(again.as_str(), t.as_str());
        }

        #[test]
        fn identity_is_an_equivalence(a in "[a-zA-Z-]{1,6}", b in "[a-zA-Z-]{1,6}", c in "[a-zA-Z-]{1,6}") {
            let (a, b, c) = (parse_tag(&a), parse_tag(&b), parse_tag(&c));
            prop_assert!(same_language(&a, &a));
            prop_assert_eq!(same_language(&a, &b), same_language(&b, &a));
            if same_language(&a, &b) && same_language(&b, &c) {
                prop_assert!(same_language(&a, &c));
            }
        }
    }
}
