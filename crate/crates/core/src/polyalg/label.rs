use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::PolyError;

/// Name of a strand, and of the variable `t_<label>` attached to it.
///
/// Tokens are nonempty strings over `[A-Za-z0-9_]`. Labels order "naturally":
/// all-digit tokens compare by numeric value and sort before any other token,
/// which compare as strings. Every canonical form in the crate uses this order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Label {
    name: Arc<str>,
    // Numeric value of an all-digit token, when it fits.
    value: Option<u64>,
}

impl Label {
    pub fn new(token: &str) -> Result<Self, PolyError> {
        if token.is_empty() || !token.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
            return Err(PolyError::InvalidLabel(token.to_string()));
        }
        Ok(Label::make(Arc::from(token)))
    }

    fn make(name: Arc<str>) -> Self {
        let value = if name.bytes().all(|b| b.is_ascii_digit()) {
            name.parse().ok()
        } else {
            None
        };
        Label { name, value }
    }

    pub fn as_str(&self) -> &str {
        &self.name
    }

    fn numeric(&self) -> Option<&str> {
        if self.name.bytes().all(|b| b.is_ascii_digit()) {
            Some(self.name.trim_start_matches('0'))
        } else {
            None
        }
    }
}

impl From<usize> for Label {
    fn from(n: usize) -> Self {
        Label::make(Arc::from(n.to_string().as_str()))
    }
}

impl From<u32> for Label {
    fn from(n: u32) -> Self {
        Label::from(n as usize)
    }
}

impl From<i32> for Label {
    fn from(n: i32) -> Self {
        assert!(n >= 0, "numeric labels are nonnegative");
        Label::from(n as usize)
    }
}

impl Ord for Label {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (self.value, other.value) {
            return a.cmp(&b).then_with(|| self.name.cmp(&other.name));
        }
        match (self.numeric(), other.numeric()) {
            (Some(a), Some(b)) => a
                .len()
                .cmp(&b.len())
                .then_with(|| a.cmp(b))
                .then_with(|| self.name.cmp(&other.name)),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => self.name.cmp(&other.name),
        }
    }
}

impl PartialOrd for Label {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut v: Vec<Label> = ["10", "2", "b", "a", "1", "x_1", "02"]
            .iter()
            .map(|s| Label::new(s).unwrap())
            .collect();
        v.sort();
        let got: Vec<&str> = v.iter().map(|l| l.as_str()).collect();
        assert_eq!(got, ["1", "02", "2", "10", "a", "b", "x_1"]);
    }

    #[test]
    fn rejects_bad_tokens() {
        assert!(Label::new("").is_err());
        assert!(Label::new("a-b").is_err());
        assert!(Label::new("t 1").is_err());
        assert!(Label::new("A_9").is_ok());
    }
}
