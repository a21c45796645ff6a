//! `rdfshift --from <source> --to <target> [--html] [--base <iri>] [input]`
//!
//! Exit codes: 0 success, 1 conversion error, 2 fetch or input error,
//! 3 usage error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;
use std::time::Duration;

use clap::Parser;
use rdfshift_core::prefixes::PrefixSource;
use rdfshift_core::{convert, Document, Error, FormatId, Render, SourceFormat, DEFAULT_BASE};

use crate::config::{FetchConfig, PrefixLookupConfig};
use crate::fetch::Fetcher;
use crate::lookup::HttpLookupClient;

pub const EXIT_CONVERSION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "rdfshift", version, about = "Convert RDF between serialization formats")]
struct Args {
    /// Input format, or `detect`.
    #[arg(long, value_name = "FORMAT")]
    from: String,
    /// Output format.
    #[arg(long, value_name = "FORMAT")]
    to: String,
    /// Emit a syntax-highlighted HTML page instead of raw output.
    #[arg(long)]
    html: bool,
    /// Base IRI for relative references.
    #[arg(long, value_name = "IRI")]
    base: Option<String>,
    /// Reverse prefix lookup endpoint, e.g. http://prefix.cc.
    #[arg(long, value_name = "URL")]
    prefix_lookup: Option<String>,
    /// A file path, an http(s) URI, or `-` for standard input.
    #[arg(default_value = "-")]
    input: String,
}

struct Input {
    content: Vec<u8>,
    media_type: Option<String>,
    base: String,
}

fn read_input(args: &Args, source: SourceFormat, stdin: &mut dyn Read) -> Result<Input, String> {
    if args.input == "-" {
        let mut content = Vec::new();
        stdin.read_to_end(&mut content).map_err(|e| format!("cannot read standard input: {e}"))?;
        return Ok(Input { content, media_type: None, base: DEFAULT_BASE.to_string() });
    }
    let path = Path::new(&args.input);
    if path.is_file() {
        let content = std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        let cwd = std::env::current_dir().map_err(|e| e.to_string())?;
        let base = url::Url::from_directory_path(&cwd).map(String::from).unwrap_or_else(|_| DEFAULT_BASE.to_string());
        return Ok(Input { content, media_type: None, base });
    }
    // Local use: the address guard protects servers, not the user's own machine.
    let fetcher = Fetcher::new(FetchConfig { allow_private_addresses: true, ..FetchConfig::default() });
    let fetched = fetcher.fetch_document(&args.input, source).map_err(|e| format!("cannot fetch {}: {e}", args.input))?;
    let media_type = matches!(source, SourceFormat::Detect).then_some(fetched.media_type).flatten();
    Ok(Input { content: fetched.content, media_type, base: fetched.final_uri })
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(stdout, "{}", e.render());
            return 0;
        }
    };
    let formats = args.from.parse::<SourceFormat>().and_then(|s| Ok((s, args.to.parse::<FormatId>()?)));
    let (source, target) = match formats {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(stderr, "rdfshift: {e}");
            return EXIT_USAGE;
        }
    };
    let input = match read_input(&args, source, stdin) {
        Ok(i) => i,
        Err(e) => {
            let _ = writeln!(stderr, "rdfshift: {e}");
            return EXIT_INPUT;
        }
    };
    let prefixes = match &args.prefix_lookup {
        Some(endpoint) => {
            let config = PrefixLookupConfig::default();
            let client = HttpLookupClient::new(endpoint.clone(), Duration::from_millis(config.timeout_ms));
            PrefixSource::new(Arc::new(client), config.cache())
        }
        None => PrefixSource::offline(),
    };
    let doc = Document {
        content: &input.content,
        media_type: input.media_type.as_deref(),
        base: Some(args.base.as_deref().unwrap_or(&input.base)),
    };
    let render = if args.html { Render::Html } else { Render::Raw };
    match convert(source, target, render, &doc, &prefixes) {
        Ok(out) => match stdout.write_all(out.body.as_bytes()).and_then(|_| stdout.flush()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "rdfshift: cannot write output: {e}");
                EXIT_INPUT
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "rdfshift: {e}");
            match e {
                Error::UnknownFormat(_) | Error::TargetOnlyFormat(_) => EXIT_USAGE,
                _ => EXIT_CONVERSION,
            }
        }
    }
}
