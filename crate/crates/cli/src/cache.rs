//! Content-addressed result cache with atomic writes.

use sha2::{Digest, Sha256};
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

/// Bump when the layout of cached artifacts changes.
pub const FORMAT_VERSION: u32 = 1;

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> io::Result<Cache> {
        fs::create_dir_all(dir)?;
        // fail early on read-only directories
        let probe = dir.join(format!(".probe-{}", std::process::id()));
        fs::write(&probe, b"")?;
        fs::remove_file(&probe)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str, part: &str) -> PathBuf {
        let digest = Sha256::digest(format!("v{FORMAT_VERSION}\n{key}").as_bytes());
        self.dir.join(format!("{digest:x}.{part}"))
    }

    pub fn get(&self, key: &str, part: &str) -> Option<String> {
        fs::read_to_string(self.path(key, part)).ok()
    }

    pub fn put(&self, key: &str, part: &str, value: &str) -> io::Result<()> {
        write_atomic(&self.path(key, part), value.as_bytes())
    }
}

/// Write to a sibling temporary file, then rename over the target.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)
}
