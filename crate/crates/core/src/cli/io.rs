//! File input and atomic output.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use super::CliError;
use crate::corpus::{parse_corpus_jsonl, parse_timeml_with, validate_corpus, AnnotatedDocument, CorpusError, ParseOptions};
use crate::text::tokenize;

const TIMEML_EXTENSIONS: [&str; 3] = ["xml", "tml", "timeml"];

fn extension(path: &Path) -> String {
    path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase()
}

fn missing(path: &Path) -> CliError {
    CliError::Config(format!("{} does not exist", path.display()))
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Regular files directly inside `dir`, sorted by name.
pub fn sorted_files(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = fs::read_dir(dir).map_err(|e| CliError::Config(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::Input(format!("{}: {e}", dir.display())))?.path();
        if path.is_file() {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// The annotated files a corpus path stands for: the path itself, or the
/// TimeML and JSONL files of a directory.
pub fn corpus_files(path: &Path) -> Result<Vec<PathBuf>, CliError> {
    if path.is_dir() {
        let files: Vec<PathBuf> = sorted_files(path)?
            .into_iter()
            .filter(|p| {
                let ext = extension(p);
                ext == "jsonl" || TIMEML_EXTENSIONS.contains(&ext.as_str())
            })
            .collect();
        if files.is_empty() {
            return Err(CliError::Input(format!("{}: no .xml, .tml or .jsonl files", path.display())));
        }
        Ok(files)
    } else if path.exists() {
        Ok(vec![path.to_path_buf()])
    } else {
        Err(missing(path))
    }
}

fn corpus_error(path: &Path, e: CorpusError) -> CliError {
    CliError::Input(format!("{}: {e}", path.display()))
}

pub fn load_corpus(path: &Path, options: ParseOptions) -> Result<Vec<AnnotatedDocument>, CliError> {
    let mut docs = Vec::new();
    for file in corpus_files(path)? {
        let text = read_text(&file)?;
        if extension(&file) == "jsonl" {
            docs.extend(parse_corpus_jsonl(text.as_bytes()).map_err(|e| corpus_error(&file, e))?);
        } else {
            docs.push(parse_timeml_with(&text, options).map_err(|e| corpus_error(&file, e))?);
        }
    }
    validate_corpus(&docs).map_err(|e| corpus_error(path, e))?;
    Ok(docs)
}

/// Tokenized reference documents: one per non-blank line of a file, or one
/// per file of a directory.
pub fn load_reference(path: &Path) -> Result<Vec<Vec<String>>, CliError> {
    if path.is_dir() {
        sorted_files(path)?.iter().map(|f| Ok(tokenize(&read_text(f)?))).collect()
    } else if path.exists() {
        Ok(read_text(path)?
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(tokenize)
            .collect())
    } else {
        Err(missing(path))
    }
}

pub fn read_bytes(path: &Path) -> Result<Vec<u8>, CliError> {
    if !path.exists() {
        return Err(missing(path));
    }
    fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Writes through a temporary file in the same directory, then renames it
/// over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let fail = |e: std::io::Error| CliError::Config(format!("cannot write {}: {e}", path.display()));
    let dir = path.parent().filter(|d| !d.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(fail)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.tmp"));
    let mut file = fs::File::create(&tmp).map_err(fail)?;
    file.write_all(bytes).and_then(|_| file.sync_all()).map_err(fail)?;
    fs::rename(&tmp, path).map_err(fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atomic_write_replaces_and_leaves_no_temp() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sub/a.txt");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(fs::read(&path).unwrap(), b"two");
        assert_eq!(sorted_files(&dir.path().join("sub")).unwrap(), [path]);
    }

    #[test]
    fn reference_lines_and_missing_paths() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ref.txt");
        fs::write(&path, "Phones, batteries\n\nCourts rule\n").unwrap();
        assert_eq!(load_reference(&path).unwrap(), [vec!["phones", "batteries"], vec!["courts", "rule"]]);
        let gone = dir.path().join("nope.txt");
        assert!(matches!(load_reference(&gone), Err(CliError::Config(m)) if m.contains("nope.txt")));
    }
}
