use std::fmt;
use std::fs;

use hankel_spectra::PolySymbol;

/// Bad invocation or bad input; the binary maps it to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl UsageError {
    pub fn new(msg: impl Into<String>) -> Self {
        Self(msg.into())
    }
}

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl From<hankel_spectra::Error> for UsageError {
    fn from(e: hankel_spectra::Error) -> Self {
        Self(e.to_string())
    }
}

/// Parse a symbol given as an expression, a JSON term list, or `@path` to either.
pub fn parse_symbol(spec: &str, dim: Option<usize>) -> Result<PolySymbol, UsageError> {
    let text = match spec.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| UsageError::new(format!("cannot read {path}: {e}")))?,
        None => spec.to_string(),
    };
    let text = text.trim();
    let sym: PolySymbol = if text.starts_with('{') {
        serde_json::from_str(text).map_err(|e| UsageError::new(format!("bad symbol JSON: {e}")))?
    } else {
        text.parse().map_err(|e| UsageError::new(format!("bad symbol {text:?}: {e}")))?
    };
    match dim {
        Some(d) if d < sym.dim() => {
            Err(UsageError::new(format!("--dim {d} is smaller than the {} coordinates used by the symbol", sym.dim())))
        }
        Some(d) => Ok(sym.with_dim(d)?),
        None => Ok(sym),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_json_and_file_agree() {
        let a = parse_symbol("zb1*(zb2+1)", None).unwrap();
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(parse_symbol(&json, None).unwrap(), a);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sym.json");
        fs::write(&path, &json).unwrap();
        assert_eq!(parse_symbol(&format!("@{}", path.display()), None).unwrap(), a);
    }

    #[test]
    fn dimension_forcing() {
        assert_eq!(parse_symbol("zb1", Some(3)).unwrap().dim(), 3);
        assert!(parse_symbol("zb2", Some(1)).is_err());
        assert!(parse_symbol("zb1 +", None).is_err());
    }
}
