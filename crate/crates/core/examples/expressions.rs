//! Nested expressions over an event file, evaluated directly and through the
//! command line entry point.
//!
//! cargo run --example expressions

use std::path::Path;

use oie::cli::expr::parse_expression;
use oie::cli::file::EventFile;
use oie::cli::format::render_traced;
use oie::Config;

fn main() -> oie::Result<()> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/doctors.json");
    let ws = EventFile::load(&path)?.compile()?;
    let config = Config::default();

    for text in [
        "mul(Dr_A, Dr_B)",
        "mul(Dr_A, Dr_A)",
        "add(mul(Dr_A, Dr_B), Dr_C; alpha=0, beta=22)",
        "natadd(Dr_A, Dr_C)",
    ] {
        let e = parse_expression(text)?;
        println!("{e}\n{}", render_traced(&ws.evaluate(&e, &config)?));
    }

    match parse_expression("add(Dr_A; alpha=0, beta=1)") {
        Err(e) => println!("{e}"),
        Ok(_) => unreachable!(),
    }

    let file = path.to_string_lossy().into_owned();
    let mut out = Vec::new();
    let code = oie::cli::run(
        ["oie", "orbit", &file, "--op", "mul"],
        &mut out,
        &mut std::io::stderr(),
    );
    print!("{}", String::from_utf8_lossy(&out));
    println!("exit status {code}");
    Ok(())
}
