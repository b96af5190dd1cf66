//! Loading zero sequences from disk: binary caches or plain text tables,
//! sniffed by the cache magic.

use anyhow::{Context, Result};
use std::io::Read;
use std::path::Path;
use zerostats::{parse_zero_file, read_cache, ZeroFileSpec, ZeroSequence};

pub fn load_sequence(path: &Path) -> Result<ZeroSequence> {
    let mut head = [0u8; 4];
    {
        let mut f = std::fs::File::open(path)
            .with_context(|| format!("opening {}", path.display()))?;
        let _ = f.read(&mut head)?;
    }
    if &head == b"ZDSQ" {
        Ok(read_cache(path)?)
    } else {
        Ok(parse_zero_file(&ZeroFileSpec::plain(path))?)
    }
}
