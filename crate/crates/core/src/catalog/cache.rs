use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// On-disk store of group summaries keyed by descriptor and library version.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
struct Stored<T> {
    version: String,
    descriptor: String,
    value: T,
}

pub fn cache_key(descriptor: &str) -> String {
    let safe: String = descriptor.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    format!("{safe}-{:016x}-v{}", fnv(descriptor), env!("CARGO_PKG_VERSION"))
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf29ce484222325, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

impl Cache {
    pub fn new(dir: PathBuf) -> Cache {
        Cache { dir }
    }

    fn path(&self, descriptor: &str) -> PathBuf {
        self.dir.join(format!("{}.json", cache_key(descriptor)))
    }

    pub fn get<T: for<'de> Deserialize<'de>>(&self, descriptor: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(descriptor)).ok()?;
        let s: Stored<T> = serde_json::from_str(&text).ok()?;
        (s.version == env!("CARGO_PKG_VERSION") && s.descriptor == descriptor).then_some(s.value)
    }

    /// Best effort; failures to write are ignored.
    pub fn put<T: Serialize>(&self, descriptor: &str, value: &T) {
        if fs::create_dir_all(&self.dir).is_err() {
            return;
        }
        let s = Stored { version: env!("CARGO_PKG_VERSION").to_string(), descriptor: descriptor.to_string(), value };
        if let Ok(text) = serde_json::to_string(&s) {
            let tmp = self.path(descriptor).with_extension("tmp");
            if fs::write(&tmp, text).is_ok() {
                let _ = fs::rename(tmp, self.path(descriptor));
            }
        }
    }

    pub fn get_or<T, F>(&self, descriptor: &str, f: F) -> crate::Result<T>
    where
        T: Serialize + for<'de> Deserialize<'de>,
        F: FnOnce() -> crate::Result<T>,
    {
        if let Some(v) = self.get(descriptor) {
            return Ok(v);
        }
        let v = f()?;
        self.put(descriptor, &v);
        Ok(v)
    }
}
