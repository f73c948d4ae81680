//! `etabridge-validate <schema.json> [document.json]`: validates a JSON
//! document (stdin when omitted) against a schema. Exit 0 when valid, 1 when
//! invalid, 2 on unreadable input.

use std::io::Read;
use std::process::exit;

fn load(path: Option<&str>) -> Result<serde_json::Value, String> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("{p}: {e}"))?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
            s
        }
    };
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.unwrap_or("stdin")))
}

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args.len() > 2 {
        eprintln!("usage: etabridge-validate <schema.json> [document.json]");
        exit(2);
    }
    let (schema, doc) = match (load(Some(&args[0])), load(args.get(1).map(String::as_str))) {
        (Ok(s), Ok(d)) => (s, d),
        (Err(e), _) | (_, Err(e)) => {
            eprintln!("error: {e}");
            exit(2);
        }
    };
    match etabridge_cli::schema::validate(&schema, &doc) {
        Ok(()) => println!("valid"),
        Err(errors) => {
            for e in errors {
                println!("invalid: {e}");
            }
            exit(1);
        }
    }
}
