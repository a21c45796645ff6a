use std::path::PathBuf;
use std::sync::Arc;

use clap::Parser;
use rdfshift_service::api::{router, AppState};
use rdfshift_service::config::ServiceConfig;

#[derive(Parser)]
#[command(name = "rdfshift-server", version, about = "RDF conversion web service")]
struct Args {
    /// TOML configuration file; `RDFSHIFT_CONFIG` is used when absent.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[tokio::main]
async fn main() {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::try_from_default_env().unwrap_or_else(|_| "info".into()))
        .init();
    let args = Args::parse();
    let path = args.config.or_else(|| std::env::var_os("RDFSHIFT_CONFIG").map(PathBuf::from));
    let config = path
        .map_or_else(|| Ok(ServiceConfig::default()), |p| ServiceConfig::from_file(&p))
        .and_then(|c| c.apply_env(|k| std::env::var(k).ok()));
    let config = match config {
        Ok(c) => c,
        Err(e) => {
            eprintln!("rdfshift-server: {e}");
            std::process::exit(3);
        }
    };
    let address = format!("{}:{}", config.bind, config.port);
    let listener = match tokio::net::TcpListener::bind(&address).await {
        Ok(l) => l,
        Err(e) => {
            eprintln!("rdfshift-server: cannot listen on {address}: {e}");
            std::process::exit(2);
        }
    };
    tracing::info!("listening on http://{address}");
    let app = router(Arc::new(AppState::new(config)));
    let shutdown = async {
        let _ = tokio::signal::ctrl_c().await;
    };
    if let Err(e) = axum::serve(listener, app).with_graceful_shutdown(shutdown).await {
        eprintln!("rdfshift-server: {e}");
        std::process::exit(1);
    }
}
