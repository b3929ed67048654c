use std::fs::File;
use std::io::{self, BufWriter, Write};

use crate::{Format, OutputArgs};

/// Where reports go: standard output or a file, as text or JSON lines.
pub struct Sink {
    pub format: Format,
    w: Box<dyn Write>,
}

impl Sink {
    pub fn open(args: &OutputArgs) -> io::Result<Self> {
        let w: Box<dyn Write> = match &args.out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(io::stdout().lock()),
        };
        Ok(Self {
            format: args.format,
            w,
        })
    }

    /// Writes `text` in text mode or `record` as one JSON line.
    pub fn emit<T: serde::Serialize>(&mut self, text: &str, record: &T) -> io::Result<()> {
        match self.format {
            Format::Text => {
                self.w.write_all(text.as_bytes())?;
                if !text.ends_with('\n') {
                    self.w.write_all(b"\n")?;
                }
            }
            Format::Json => {
                serde_json::to_writer(&mut self.w, record)?;
                self.w.write_all(b"\n")?;
            }
        }
        self.w.flush()
    }
}
