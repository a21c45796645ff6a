//! Persistent links and bookmarklets. Both are pure functions of the
//! request, which is what makes them stable.

use percent_encoding::{utf8_percent_encode, AsciiSet, CONTROLS};
use rdfshift_core::{FormatId, SourceFormat};

/// Characters escaped when a URI is embedded in a path: those that would
/// end the path (`?`, `#`), `%` so decoding restores the original, and
/// characters never valid in a URI.
const EMBEDDED: &AsciiSet =
    &CONTROLS.add(b' ').add(b'"').add(b'<').add(b'>').add(b'`').add(b'?').add(b'#').add(b'%').add(b'{').add(b'}').add(b'^').add(b'|').add(b'\\');

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareLinks {
    pub html: String,
    pub raw: String,
}

/// Links for a URI conversion: the highlighted view and the raw output.
/// `base` is the service base URL without a trailing slash; empty gives
/// root-relative links.
pub fn build_share_links(base: &str, source: SourceFormat, target: FormatId, uri: &str) -> ShareLinks {
    let uri = utf8_percent_encode(uri, EMBEDDED);
    ShareLinks {
        html: format!("{base}/convert/{source}/{target}/html/{uri}"),
        raw: format!("{base}/convert/{source}/{target}/{uri}"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Bookmarklet {
    pub source: &'static str,
    pub target: &'static str,
    pub code: String,
}

/// One bookmarklet per (source, target) pair, `detect` included: 8 × 9.
pub fn bookmarklet_matrix(base: &str) -> Vec<Bookmarklet> {
    SourceFormat::ALL
        .iter()
        .flat_map(|&source| {
            FormatId::TARGETS.iter().map(move |&target| Bookmarklet {
                source: source.token(),
                target: target.token(),
                code: format!(
                    "javascript:location.href='{base}/convert/{source}/{target}/html/'+encodeURIComponent(location.href);"
                ),
            })
        })
        .collect()
}
