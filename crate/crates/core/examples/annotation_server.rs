//! Runs the annotation API against a scratch copy of the demo project,
//! makes one edit over HTTP and shows the flushed annotation file.
//!
//! Pass `--serve` to keep the server running on port 8080 until Ctrl-C.
//!
//! ```bash
//! cargo run --example annotation_server
//! cargo run --example annotation_server -- --serve
//! ```

use std::io::{Read, Write};
use std::path::Path;
use std::sync::Arc;

use transrel::ingest::{CorpusRole, ProjectManifest};
use transrel::service::{serve, AppState};

fn copy_dir(from: &Path, to: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(to)?;
    for entry in std::fs::read_dir(from)? {
        let entry = entry?;
        if entry.file_type()?.is_dir() {
            copy_dir(&entry.path(), &to.join(entry.file_name()))?;
        } else {
            std::fs::copy(entry.path(), to.join(entry.file_name()))?;
        }
    }
    Ok(())
}

fn request(
    addr: std::net::SocketAddr,
    method: &str,
    path: &str,
    body: &str,
) -> std::io::Result<String> {
    let mut stream = std::net::TcpStream::connect(addr)?;
    write!(
        stream,
        "{} {} HTTP/1.1\r\nHost: localhost\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{}",
        method,
        path,
        body.len(),
        body
    )?;
    let mut response = String::new();
    stream.read_to_string(&mut response)?;
    Ok(response
        .split("\r\n\r\n")
        .nth(1)
        .unwrap_or_default()
        .to_string())
}

#[tokio::main]
async fn main() -> Result<(), Box<dyn std::error::Error>> {
    let scratch = tempfile::tempdir()?;
    copy_dir(
        &Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/demo"),
        scratch.path(),
    )?;
    let manifest = ProjectManifest::from_path(&scratch.path().join("project.toml"))?;
    let state = Arc::new(AppState::load(&manifest, CorpusRole::Reference)?.with_annotator("demo"));

    if std::env::args().any(|a| a == "--serve") {
        let listener = tokio::net::TcpListener::bind("127.0.0.1:8080").await?;
        println!(
            "serving {} on http://127.0.0.1:8080/api/project",
            scratch.path().display()
        );
        serve(listener, state, async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
        return Ok(());
    }

    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await?;
    let addr = listener.local_addr()?;
    let (stop, stopped) = tokio::sync::oneshot::channel::<()>();
    let server = tokio::spawn(serve(listener, state, async {
        let _ = stopped.await;
    }));

    let edit = r#"{"expectedRevision":0,"units":[
        {"src":[0],"tgt":[0],"relation":"literal"},
        {"src":[1],"tgt":[],"relation":"unaligned_reduction"},
        {"src":[2],"tgt":[1],"relation":"modulation"},
        {"src":[],"tgt":[2],"relation":"unaligned_explicitation"},
        {"src":[3],"tgt":[3],"relation":"literal"}]}"#;
    let replies = tokio::task::spawn_blocking(move || -> std::io::Result<Vec<String>> {
        Ok(vec![
            request(addr, "GET", "/api/sentences/s1", "")?,
            request(addr, "PUT", "/api/sentences/s1/units", edit)?,
            // Same base revision again: rejected as stale.
            request(addr, "PUT", "/api/sentences/s1/units", edit)?,
            request(addr, "POST", "/api/flush", "")?,
        ])
    })
    .await??;
    for reply in replies {
        println!("{}", reply);
    }

    let _ = stop.send(());
    server.await??;
    let saved = std::fs::read_to_string(scratch.path().join("ht/annotations.jsonl"))?;
    println!("--- saved s1 ---");
    saved
        .lines()
        .filter(|l| l.contains("\"s1\""))
        .for_each(|l| println!("{}", l));
    Ok(())
}
