//! On-disk cache of enumerated Weyl groups.
//!
//! One file per Cartan type, `<TYPE>.weyl`, laid out as
//!
//! ```text
//! magic "RDRWEYL\0" | version u32 | type len u8 + bytes | roots u16 | order u32
//! order × (perm: roots × u16 | word len u8 + bytes)
//! sha256 of everything above
//! ```
//!
//! All integers are little endian. A file that fails any check is ignored
//! and regenerated.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rodier_core::{CartanType, RootSystem, WeylGroup};
use sha2::{Digest, Sha256};

use crate::error::CliError;

const MAGIC: &[u8; 8] = b"RDRWEYL\0";
const VERSION: u32 = 1;
const EXTENSION: &str = "weyl";

pub struct Cache {
    dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub cartan: String,
    pub elements: usize,
    pub bytes: u64,
    pub checksum: String,
    pub valid: bool,
}

struct Decoded {
    cartan: String,
    perms: Vec<Vec<u16>>,
    words: Vec<Vec<u8>>,
    checksum: [u8; 32],
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn encode(rs: &RootSystem, w: &WeylGroup) -> Vec<u8> {
    let name = rs.cartan_type().to_string();
    let mut out = Vec::with_capacity(w.order() * (2 * rs.num_roots() + 16) + 64);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.push(name.len() as u8);
    out.extend_from_slice(name.as_bytes());
    out.extend_from_slice(&(rs.num_roots() as u16).to_le_bytes());
    out.extend_from_slice(&(w.order() as u32).to_le_bytes());
    for (i, e) in w.elements().iter().enumerate() {
        for &p in e.perm() {
            out.extend_from_slice(&p.to_le_bytes());
        }
        let word = w.word(i);
        out.push(word.len() as u8);
        out.extend_from_slice(word);
    }
    let digest = Sha256::digest(&out);
    out.extend_from_slice(&digest);
    out
}

struct Reader<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], String> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.data.len()).ok_or("truncated file")?;
        let s = &self.data[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u8(&mut self) -> Result<u8, String> {
        Ok(self.take(1)?[0])
    }

    fn u16(&mut self) -> Result<u16, String> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().unwrap()))
    }

    fn u32(&mut self) -> Result<u32, String> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

fn decode(data: &[u8]) -> Result<Decoded, String> {
    if data.len() < MAGIC.len() + 32 {
        return Err("truncated file".into());
    }
    let (body, digest) = data.split_at(data.len() - 32);
    let checksum: [u8; 32] = digest.try_into().unwrap();
    if Sha256::digest(body).as_slice() != checksum {
        return Err("checksum mismatch".into());
    }
    let mut r = Reader { data: body, pos: 0 };
    if r.take(8)? != MAGIC {
        return Err("bad magic".into());
    }
    let version = r.u32()?;
    if version != VERSION {
        return Err(format!("cache version {version}, expected {VERSION}"));
    }
    let len = r.u8()? as usize;
    let cartan = String::from_utf8(r.take(len)?.to_vec()).map_err(|_| "bad type name")?;
    let roots = r.u16()? as usize;
    let order = r.u32()? as usize;
    let mut perms = Vec::with_capacity(order);
    let mut words = Vec::with_capacity(order);
    for _ in 0..order {
        let perm = (0..roots).map(|_| r.u16()).collect::<Result<Vec<_>, _>>()?;
        let len = r.u8()? as usize;
        words.push(r.take(len)?.to_vec());
        perms.push(perm);
    }
    if r.pos != body.len() {
        return Err("trailing bytes".into());
    }
    Ok(Decoded {
        cartan,
        perms,
        words,
        checksum,
    })
}

impl Cache {
    /// `$RODIER_CACHE_DIR`, else `./.rodier-cache`.
    pub fn from_env() -> Self {
        let dir = std::env::var_os("RODIER_CACHE_DIR")
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(".rodier-cache"));
        Cache { dir }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, t: CartanType) -> PathBuf {
        self.dir.join(format!("{t}.{EXTENSION}"))
    }

    /// The cached group, `Ok(None)` if absent, `Err` describing corruption.
    pub fn load(&self, rs: &RootSystem) -> Result<Option<WeylGroup>, String> {
        let path = self.path_for(rs.cartan_type());
        let data = match fs::read(&path) {
            Ok(d) => d,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.to_string()),
        };
        let d = decode(&data)?;
        if d.cartan != rs.cartan_type().to_string() {
            return Err(format!("file holds {}, expected {}", d.cartan, rs.cartan_type()));
        }
        WeylGroup::from_parts(rs, d.perms, d.words)
            .map(Some)
            .map_err(|e| e.to_string())
    }

    pub fn store(&self, rs: &RootSystem, w: &WeylGroup) -> io::Result<()> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(rs.cartan_type());
        let tmp = path.with_extension(format!("{EXTENSION}.tmp{}", std::process::id()));
        fs::write(&tmp, encode(rs, w))?;
        fs::rename(&tmp, &path)
    }

    /// Load from the cache, or enumerate and store. Corrupt files are
    /// reported on stderr and replaced.
    pub fn weyl_group(&self, rs: &RootSystem, cap: usize) -> Result<WeylGroup, CliError> {
        let order = rs.cartan_type().weyl_order();
        if order > cap as u64 {
            return Err(rodier_core::Error::EnumerationTooLarge {
                group: rs.cartan_type().to_string(),
                order,
                cap,
            }
            .into());
        }
        match self.load(rs) {
            Ok(Some(w)) => return Ok(w),
            Ok(None) => {}
            Err(e) => eprintln!(
                "warning: ignoring cache file {}: {e}; regenerating",
                self.path_for(rs.cartan_type()).display()
            ),
        }
        let w = WeylGroup::generate(rs, cap)?;
        if let Err(e) = self.store(rs, &w) {
            eprintln!("warning: could not write cache in {}: {e}", self.dir.display());
        }
        Ok(w)
    }

    /// Regenerate the entry for one type.
    pub fn rebuild(&self, t: CartanType, cap: usize) -> Result<Entry, CliError> {
        let rs = RootSystem::new(t)?;
        let w = WeylGroup::generate(&rs, cap)?;
        self.store(&rs, &w)?;
        self.entry(&self.path_for(t)).map_err(CliError::from)
    }

    /// Remove every cache file; returns how many were removed.
    pub fn clear(&self) -> io::Result<usize> {
        let mut n = 0;
        for path in self.files()? {
            fs::remove_file(path)?;
            n += 1;
        }
        Ok(n)
    }

    pub fn stat(&self) -> io::Result<Vec<Entry>> {
        self.files()?.iter().map(|p| self.entry(p)).collect()
    }

    fn entry(&self, path: &Path) -> io::Result<Entry> {
        let data = fs::read(path)?;
        let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let bytes = data.len() as u64;
        Ok(match decode(&data) {
            Ok(d) => Entry {
                cartan: d.cartan,
                elements: d.perms.len(),
                bytes,
                checksum: hex(&d.checksum),
                valid: true,
            },
            Err(_) => Entry {
                cartan: name,
                elements: 0,
                bytes,
                checksum: hex(&data[data.len().saturating_sub(32)..]),
                valid: false,
            },
        })
    }

    fn files(&self) -> io::Result<Vec<PathBuf>> {
        let mut out = Vec::new();
        match fs::read_dir(&self.dir) {
            Ok(rd) => {
                for e in rd {
                    let p = e?.path();
                    if p.extension().is_some_and(|x| x == EXTENSION) {
                        out.push(p);
                    }
                }
            }
            Err(e) if e.kind() == io::ErrorKind::NotFound => {}
            Err(e) => return Err(e),
        }
        out.sort();
        Ok(out)
    }
}
