//! The group file grammar.
//!
//! ```text
//! # comment
//! name: S4            (optional)
//! degree: 4
//! gen: (1,2,3,4)
//! gen: images: [2,1,4,3]
//! ```
//!
//! Cycles are 1-based and disjoint with fixed points omitted; `images:`
//! lists the images of 1..degree in order. Blank lines and `#` comments are
//! ignored. The `degree:` line must precede the generators.

use sublat_core::{GroupError, PermGroup, Permutation};

/// A parsed group file: the group plus its optional name.
#[derive(Clone, Debug)]
pub struct GroupFile {
    pub group: PermGroup,
    pub name: Option<String>,
}

#[derive(Debug)]
pub enum ParseError {
    Syntax(String),
    Group(GroupError),
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParseError::Syntax(msg) => write!(f, "{msg}"),
            ParseError::Group(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for ParseError {}

impl From<GroupError> for ParseError {
    fn from(err: GroupError) -> Self {
        ParseError::Group(err)
    }
}

fn parse_gen(degree: usize, body: &str, line_no: usize) -> Result<Permutation, ParseError> {
    let body = body.trim();
    if let Some(images) = body.strip_prefix("images:") {
        let images = images.trim();
        let inner = images
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| {
                ParseError::Syntax(format!("line {line_no}: images must be like [2,1,4,3]"))
            })?;
        let mut list = Vec::new();
        for tok in inner.split(',') {
            let tok = tok.trim();
            let v: u32 = tok.parse().map_err(|_| {
                ParseError::Syntax(format!("line {line_no}: bad image {tok:?}"))
            })?;
            if v == 0 {
                return Err(ParseError::Syntax(format!(
                    "line {line_no}: images are 1-based"
                )));
            }
            list.push(v - 1);
        }
        if list.len() != degree {
            return Err(ParseError::Syntax(format!(
                "line {line_no}: expected {degree} images, found {}",
                list.len()
            )));
        }
        Ok(Permutation::from_images(list)?)
    } else {
        Ok(Permutation::parse(degree, body)?)
    }
}

/// Parses a group file.
pub fn parse_group_file(text: &str) -> Result<GroupFile, ParseError> {
    let mut degree: Option<usize> = None;
    let mut name: Option<String> = None;
    let mut gens: Vec<Permutation> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("degree:") {
            let d: usize = rest.trim().parse().map_err(|_| {
                ParseError::Syntax(format!("line {line_no}: bad degree {:?}", rest.trim()))
            })?;
            if d == 0 {
                return Err(ParseError::Syntax(format!(
                    "line {line_no}: degree must be positive"
                )));
            }
            degree = Some(d);
        } else if let Some(rest) = line.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("gen:") {
            let d = degree.ok_or_else(|| {
                ParseError::Syntax(format!(
                    "line {line_no}: generator before the degree line"
                ))
            })?;
            gens.push(parse_gen(d, rest, line_no)?);
        } else {
            return Err(ParseError::Syntax(format!(
                "line {line_no}: unrecognized line {line:?}"
            )));
        }
    }
    let degree =
        degree.ok_or_else(|| ParseError::Syntax("missing degree line".to_string()))?;
    Ok(GroupFile {
        group: PermGroup::new(degree, gens)?,
        name,
    })
}

/// Parses a perfect-seed file: blocks starting with `seed:`, each followed by
/// `gen:` lines in the parent group's degree.
pub fn parse_seed_file(text: &str, degree: usize) -> Result<Vec<PermGroup>, ParseError> {
    let mut seeds: Vec<Vec<Permutation>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "seed:" {
            seeds.push(Vec::new());
        } else if let Some(rest) = line.strip_prefix("gen:") {
            let current = seeds.last_mut().ok_or_else(|| {
                ParseError::Syntax(format!("line {line_no}: gen before any seed: line"))
            })?;
            current.push(parse_gen(degree, rest, line_no)?);
        } else {
            return Err(ParseError::Syntax(format!(
                "line {line_no}: unrecognized line {line:?}"
            )));
        }
    }
    seeds
        .into_iter()
        .map(|gens| PermGroup::new(degree, gens).map_err(ParseError::from))
        .collect()
}

/// Renders a group back into the file grammar (cycle form).
pub fn render_group_file(group: &PermGroup, name: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(n) = name {
        out.push_str(&format!("name: {n}\n"));
    }
    out.push_str(&format!("degree: {}\n", group.degree()));
    for g in group.generators() {
        out.push_str(&format!("gen: {g}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_s3() {
        let gf = parse_group_file("degree: 3\ngen: (1,2,3)\ngen: (1,2)\n").unwrap();
        assert_eq!(gf.group.order().unwrap(), 6);
        assert!(gf.name.is_none());
    }

    #[test]
    fn parses_v4_from_double_transpositions() {
        let gf = parse_group_file("degree: 4\ngen: (1,2)(3,4)\ngen: (1,3)(2,4)\n").unwrap();
        assert_eq!(gf.group.order().unwrap(), 4);
    }

    #[test]
    fn rejects_repeated_point() {
        assert!(parse_group_file("degree: 2\ngen: (1,2)(1,2)\n").is_err());
    }

    #[test]
    fn rejects_missing_degree() {
        assert!(parse_group_file("gen: (1,2)\n").is_err());
        assert!(parse_group_file("# nothing\n").is_err());
    }

    #[test]
    fn rejects_out_of_range_point() {
        assert!(parse_group_file("degree: 3\ngen: (1,4)\n").is_err());
    }

    #[test]
    fn parses_images_form() {
        let gf = parse_group_file("degree: 4\ngen: images: [2,1,4,3]\n").unwrap();
        assert_eq!(gf.group.order().unwrap(), 2);
        assert_eq!(gf.group.generators()[0].to_string(), "(1,2)(3,4)");
    }

    #[test]
    fn parses_name_and_comments() {
        let gf = parse_group_file("# a comment\nname: K4\ndegree: 4\n\ngen: (1,2)\n").unwrap();
        assert_eq!(gf.name.as_deref(), Some("K4"));
        assert_eq!(gf.group.order().unwrap(), 2);
    }

    #[test]
    fn round_trip_preserves_the_group() {
        let gf = parse_group_file("degree: 5\ngen: (1,2,3,4,5)\ngen: (2,3,5,4)\n").unwrap();
        let rendered = render_group_file(&gf.group, None);
        let back = parse_group_file(&rendered).unwrap();
        assert!(gf.group.equals(&back.group).unwrap());
    }

    #[test]
    fn seed_file_blocks() {
        let seeds = parse_seed_file("seed:\ngen: (1,2,3)\nseed:\ngen: (1,2)\ngen: (3,4)\n", 4)
            .unwrap();
        assert_eq!(seeds.len(), 2);
        assert_eq!(seeds[0].order().unwrap(), 3);
        assert_eq!(seeds[1].order().unwrap(), 4);
    }
}
