use std::fs;
use std::path::Path;

use crate::Error;

/// Scientific notation with 13 significant digits.
pub fn sci(v: f64) -> String {
    format!("{v:.12e}")
}

/// CSV text with a header row.
#[derive(Clone, Debug, PartialEq)]
pub struct Csv {
    width: usize,
    text: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Self { width: header.len(), text: header.join(",") + "\n" }
    }

    pub fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.width, "row width must match header");
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    pub fn raw_row(&mut self, line: &str) {
        self.text.push_str(line);
        self.text.push('\n');
    }

    pub fn into_string(self) -> String {
        self.text
    }
}

/// Named text files produced by one experiment.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Artifacts {
    pub files: Vec<(String, String)>,
}

impl Artifacts {
    pub fn add(&mut self, name: impl Into<String>, content: impl Into<String>) {
        self.files.push((name.into(), content.into()));
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.files.iter().find(|(n, _)| n == name).map(|(_, c)| c.as_str())
    }

    pub fn write_to(&self, dir: &Path) -> Result<(), Error> {
        fs::create_dir_all(dir)?;
        for (name, content) in &self.files {
            fs::write(dir.join(name), content)?;
        }
        Ok(())
    }
}

/// Compact tag for file names, e.g. `2.5e1` → `25`, `0.5` → `0p5`.
pub fn tag(v: f64) -> String {
    let s = format!("{v}");
    s.replace('.', "p").replace('-', "m")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting() {
        assert_eq!(sci(1.0), "1.000000000000e0");
        assert_eq!(sci(-2.5e-7), "-2.500000000000e-7");
        assert_eq!(tag(12.5), "12p5");
        assert_eq!(tag(200.0), "200");
        let mut c = Csv::new(&["a", "b"]);
        c.row(&["1".into(), "2".into()]);
        assert_eq!(c.into_string(), "a,b\n1,2\n");
    }
}
