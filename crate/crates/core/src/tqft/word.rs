use std::fmt;

use super::TqftError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    CapIn,
    CapOut,
    PantsSplit,
    PantsMerge,
}

impl Generator {
    /// (incoming circles, outgoing circles)
    pub fn arity(self) -> (usize, usize) {
        match self {
            Generator::CapIn => (0, 1),
            Generator::CapOut => (1, 0),
            Generator::PantsSplit => (1, 2),
            Generator::PantsMerge => (2, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Generator::CapIn => "cap_in",
            Generator::CapOut => "cap_out",
            Generator::PantsSplit => "pants_split",
            Generator::PantsMerge => "pants_merge",
        }
    }

    fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "cap_in" => Generator::CapIn,
            "cap_out" => Generator::CapOut,
            "pants_split" => Generator::PantsSplit,
            "pants_merge" => Generator::PantsMerge,
            _ => return None,
        })
    }
}

/// A generator acting on the circles `position .. position + arity.0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub generator: Generator,
    pub position: usize,
}

/// A composable sequence of generators from the empty 1-manifold to itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CobordismWord {
    steps: Vec<Step>,
    /// Set when the word came from `genus:g`.
    genus: Option<usize>,
}

impl CobordismWord {
    /// cap_in, then g blocks pants_split pants_merge, then cap_out.
    pub fn genus(g: usize) -> Self {
        let mut steps = vec![Step { generator: Generator::CapIn, position: 0 }];
        for _ in 0..g {
            steps.push(Step { generator: Generator::PantsSplit, position: 0 });
            steps.push(Step { generator: Generator::PantsMerge, position: 0 });
        }
        steps.push(Step { generator: Generator::CapOut, position: 0 });
        CobordismWord { steps, genus: Some(g) }
    }

    /// Validates arities from the empty boundary back to the empty boundary.
    pub fn from_steps(steps: Vec<Step>) -> Result<Self, TqftError> {
        let mut arity = 0;
        for (index, s) in steps.iter().enumerate() {
            let (input, output) = s.generator.arity();
            if s.position + input > arity || s.position > arity {
                return Err(TqftError::ArityMismatch {
                    step: index,
                    expected: s.position + input,
                    found: arity,
                });
            }
            arity = arity - input + output;
        }
        if arity != 0 {
            return Err(TqftError::ArityMismatch { step: steps.len(), expected: 0, found: arity });
        }
        Ok(CobordismWord { steps, genus: None })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn declared_genus(&self) -> Option<usize> {
        self.genus
    }

    /// Genus read off the Euler characteristic, assuming the surface is connected.
    pub fn euler_genus(&self) -> Option<usize> {
        let chi: i64 = self
            .steps
            .iter()
            .map(|s| match s.generator {
                Generator::CapIn | Generator::CapOut => 1,
                Generator::PantsSplit | Generator::PantsMerge => -1,
            })
            .sum();
        (chi <= 2 && chi % 2 == 0).then(|| ((2 - chi) / 2) as usize)
    }
}

impl fmt::Display for CobordismWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .steps
            .iter()
            .map(|s| {
                if s.position == 0 {
                    s.generator.name().to_string()
                } else {
                    format!("{}@{}", s.generator.name(), s.position)
                }
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Parses `genus:g` or a whitespace/`;`/`,`-separated list of generators,
/// each optionally suffixed `@i` to act on circles starting at i.
pub fn parse_word(text: &str) -> Result<CobordismWord, TqftError> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    if let Some(rest) = trimmed.strip_prefix("genus:") {
        let g = rest.trim().parse::<usize>().map_err(|_| TqftError::Parse {
            position: lead + "genus:".len(),
            message: format!("expected a non-negative genus, found `{}`", rest.trim()),
        })?;
        return Ok(CobordismWord::genus(g));
    }
    let mut steps = Vec::new();
    let mut pos = 0;
    for token in text.split(|c: char| c.is_whitespace() || c == ';' || c == ',') {
        let start = pos;
        pos += token.len() + 1;
        if token.is_empty() {
            continue;
        }
        let (name, position) = match token.split_once('@') {
            Some((n, p)) => {
                let p = p.parse::<usize>().map_err(|_| TqftError::Parse {
                    position: start + n.len() + 1,
                    message: format!("bad circle index `{p}`"),
                })?;
                (n, p)
            }
            None => (token, 0),
        };
        let generator = Generator::from_name(name)
            .ok_or_else(|| TqftError::Parse { position: start, message: format!("unknown generator `{name}`") })?;
        steps.push(Step { generator, position });
    }
    if steps.is_empty() {
        return Err(TqftError::Parse { position: 0, message: "empty word".into() });
    }
    CobordismWord::from_steps(steps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_and_torus() {
        let s = parse_word("cap_in cap_out").unwrap();
        assert_eq!(s.steps().len(), 2);
        assert_eq!(s.euler_genus(), Some(0));
        let t = parse_word("genus:1").unwrap();
        assert_eq!(t.to_string(), "cap_in pants_split pants_merge cap_out");
        assert_eq!(parse_word(&t.to_string()).unwrap().steps(), t.steps());
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_word("cap_in pants_merge").unwrap_err(),
            TqftError::ArityMismatch { step: 1, expected: 2, found: 1 }
        );
        assert_eq!(parse_word("cap_in").unwrap_err(), TqftError::ArityMismatch { step: 1, expected: 0, found: 1 });
        assert!(matches!(parse_word("cap_in  bogus"), Err(TqftError::Parse { position: 8, .. })));
        assert!(matches!(parse_word("genus:x"), Err(TqftError::Parse { position: 6, .. })));
        assert!(matches!(parse_word("cap_in cap_in pants_merge@1 cap_out"), Err(TqftError::ArityMismatch { step: 2, .. })));
    }
}
