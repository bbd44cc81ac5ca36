//! Text formats for fields, matrices, keys and ciphertexts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rankbreak_core::{BaseMatrix, Ciphertext, ExtMatrix, Fe, Field, GabidulinCode, PrivateKey, PublicKey, Scheme};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("missing field `{0}`")]
    Missing(&'static str),
    #[error("malformed `{key}`: {reason}")]
    Malformed { key: String, reason: String },
    #[error(transparent)]
    Core(#[from] rankbreak_core::Error),
}

fn malformed(key: &str, reason: impl Into<String>) -> FormatError {
    FormatError::Malformed { key: key.to_string(), reason: reason.into() }
}

/// `q=<int> m=<int> modulus=<hex>`.
pub fn format_field(field: &Field) -> String {
    format!("q={} m={} modulus={:x}", field.q(), field.m(), field.modulus_int())
}

pub fn parse_field(s: &str) -> Result<Field, FormatError> {
    let kv = parse_inline(s);
    let q = parse_num(&kv, "q")?;
    let m = parse_num(&kv, "m")?;
    let modulus = kv.get("modulus").ok_or(FormatError::Missing("modulus"))?;
    let modulus = u128::from_str_radix(modulus, 16).map_err(|e| malformed("modulus", e.to_string()))?;
    Ok(Field::from_modulus_int(q as u32, m as u32, modulus)?)
}

fn parse_inline(s: &str) -> BTreeMap<&str, &str> {
    s.split_whitespace().filter_map(|tok| tok.split_once('=')).collect()
}

fn parse_num(kv: &BTreeMap<&str, &str>, key: &'static str) -> Result<usize, FormatError> {
    kv.get(key).ok_or(FormatError::Missing(key))?.parse().map_err(|_| malformed(key, "not an integer"))
}

pub fn format_ext_vector(v: &[Fe]) -> String {
    let mut out = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write!(out, "{:x}", x.raw()).expect("writing to a string");
    }
    out
}

pub fn parse_ext_vector(field: &Field, s: &str) -> Result<Vec<Fe>, FormatError> {
    s.split_whitespace()
        .map(|tok| {
            let raw = u64::from_str_radix(tok, 16).map_err(|e| malformed("vector", e.to_string()))?;
            Ok(field.elem(raw)?)
        })
        .collect()
}

/// `rows cols` then row-major hex entries.
pub fn format_ext_matrix(m: &ExtMatrix) -> String {
    let body = format_ext_vector(m.data());
    if body.is_empty() {
        format!("{} {}", m.rows(), m.cols())
    } else {
        format!("{} {} {}", m.rows(), m.cols(), body)
    }
}

pub fn parse_ext_matrix(field: &Field, s: &str) -> Result<ExtMatrix, FormatError> {
    let (rows, cols, rest) = split_dims(s)?;
    let data = parse_ext_vector(field, rest)?;
    Ok(ExtMatrix::from_vec(field, rows, cols, data)?)
}

/// `rows cols` then row-major decimal entries.
pub fn format_base_matrix(m: &BaseMatrix) -> String {
    let mut out = format!("{} {}", m.rows(), m.cols());
    for v in m.data() {
        write!(out, " {v}").expect("writing to a string");
    }
    out
}

pub fn parse_base_matrix(q: u32, s: &str) -> Result<BaseMatrix, FormatError> {
    let (rows, cols, rest) = split_dims(s)?;
    let data = rest
        .split_whitespace()
        .map(|tok| match tok.parse::<u32>() {
            Ok(v) if v < q => Ok(v),
            _ => Err(malformed("matrix", format!("entry `{tok}` is not in F_{q}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(BaseMatrix::from_vec(q, rows, cols, data)?)
}

fn split_dims(s: &str) -> Result<(usize, usize, &str), FormatError> {
    let s = s.trim_start();
    let mut it = s.splitn(3, char::is_whitespace);
    let rows = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| malformed("matrix", "bad row count"))?;
    let cols = it.next().and_then(|x| x.parse().ok()).ok_or_else(|| malformed("matrix", "bad column count"))?;
    Ok((rows, cols, it.next().unwrap_or("")))
}

/// A parsed `key=value` document; later keys win, repeated `y` keys are kept in order.
struct Doc<'a> {
    map: BTreeMap<&'a str, &'a str>,
    ys: Vec<&'a str>,
}

impl<'a> Doc<'a> {
    fn parse(text: &'a str) -> Doc<'a> {
        let mut map = BTreeMap::new();
        let mut ys = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if let Some((k, v)) = line.split_once('=') {
                if k == "y" {
                    ys.push(v);
                } else {
                    map.insert(k, v);
                }
            }
        }
        Doc { map, ys }
    }

    fn get(&self, key: &'static str) -> Result<&'a str, FormatError> {
        self.map.get(key).copied().ok_or(FormatError::Missing(key))
    }

    fn scheme(&self) -> Result<Scheme, FormatError> {
        let tag = self.get("scheme")?;
        Scheme::from_tag(tag).ok_or_else(|| malformed("scheme", format!("unknown scheme `{tag}`")))
    }
}

fn public_lines(public: &PublicKey) -> String {
    format!(
        "scheme={}\nparams=n={} k={} t={}\nfield={}\nbudget={}\nG_pub={}\n",
        public.scheme,
        public.n,
        public.k,
        public.t,
        format_field(public.field()),
        public.error_budget,
        format_ext_matrix(&public.g_pub)
    )
}

pub fn format_public_key(public: &PublicKey) -> String {
    public_lines(public)
}

pub fn format_private_key(private: &PrivateKey) -> String {
    let mut out = public_lines(&private.public);
    writeln!(out, "a={}", private.a).unwrap();
    writeln!(out, "S={}", format_ext_matrix(&private.s)).unwrap();
    writeln!(out, "alpha={}", format_ext_vector(private.code.alpha())).unwrap();
    writeln!(out, "X={}", format_ext_matrix(&private.x)).unwrap();
    if let Some(sigma) = &private.sigma {
        writeln!(out, "sigma={}", format_base_matrix(sigma)).unwrap();
    }
    out
}

fn parse_public_doc(doc: &Doc<'_>) -> Result<PublicKey, FormatError> {
    let scheme = doc.scheme()?;
    let params = parse_inline(doc.get("params")?);
    let (n, k, t) = (parse_num(&params, "n")?, parse_num(&params, "k")?, parse_num(&params, "t")?);
    let field = parse_field(doc.get("field")?)?;
    let error_budget = doc.get("budget")?.trim().parse().map_err(|_| malformed("budget", "not an integer"))?;
    let g_pub = parse_ext_matrix(&field, doc.get("G_pub")?)?;
    let width = if scheme.is_ggpt() { n + t } else { n };
    if g_pub.rows() != k || g_pub.cols() != width {
        return Err(malformed("G_pub", "dimensions disagree with params"));
    }
    Ok(PublicKey { scheme, n, k, t, g_pub, error_budget })
}

pub fn parse_public_key(text: &str) -> Result<PublicKey, FormatError> {
    parse_public_doc(&Doc::parse(text))
}

pub fn parse_private_key(text: &str) -> Result<PrivateKey, FormatError> {
    let doc = Doc::parse(text);
    let public = parse_public_doc(&doc)?;
    let field = public.field().clone();
    let a = doc.get("a")?.trim().parse().map_err(|_| malformed("a", "not an integer"))?;
    let s = parse_ext_matrix(&field, doc.get("S")?)?;
    let alpha = parse_ext_vector(&field, doc.get("alpha")?)?;
    let code = GabidulinCode::new(&field, &alpha, public.k)?;
    let x = parse_ext_matrix(&field, doc.get("X")?)?;
    let sigma = match doc.map.get("sigma") {
        Some(v) => Some(parse_base_matrix(field.q(), v)?),
        None => None,
    };
    let private = PrivateKey { public, a, s, code, x, sigma };
    if private.reconstruct()? != private.public.g_pub {
        return Err(malformed("G_pub", "does not match the private parts"));
    }
    Ok(private)
}

/// A message split into blocks, one ciphertext per block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiphertextFile {
    pub scheme: Scheme,
    pub blocks: Vec<Ciphertext>,
}

pub fn format_ciphertext(ct: &CiphertextFile) -> String {
    let mut out = format!("scheme={}\nblocks={}\n", ct.scheme, ct.blocks.len());
    for b in &ct.blocks {
        writeln!(out, "y={}", format_ext_vector(&b.y)).unwrap();
    }
    out
}

pub fn parse_ciphertext(field: &Field, text: &str) -> Result<CiphertextFile, FormatError> {
    let doc = Doc::parse(text);
    let scheme = doc.scheme()?;
    let count: usize = doc.get("blocks")?.trim().parse().map_err(|_| malformed("blocks", "not an integer"))?;
    if count != doc.ys.len() {
        return Err(malformed("blocks", "count disagrees with the number of `y` lines"));
    }
    let blocks = doc
        .ys
        .iter()
        .map(|line| Ok(Ciphertext { scheme, y: parse_ext_vector(field, line)? }))
        .collect::<Result<_, FormatError>>()?;
    Ok(CiphertextFile { scheme, blocks })
}
