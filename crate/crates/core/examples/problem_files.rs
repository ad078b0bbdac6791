//! The command-line driver on the bundled JSON problem files, as a library
//! call. `cargo run --bin geninv -- bvp-compose examples/data/bvp_pair.json`
//! prints the same report.

use geninv::cli::{run, Command, Flags, Report, DEFAULT_SEED};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let matrix = std::fs::read_to_string(format!("{dir}/matrix_pair.json")).unwrap();
    let bvp = std::fs::read_to_string(format!("{dir}/bvp_pair.json")).unwrap();
    let flags = Flags { seed: DEFAULT_SEED, ..Flags::default() };

    for (cmd, text) in [
        (Command::MatrixRol, &matrix),
        (Command::MatrixCompose, &matrix),
        (Command::BvpCompat, &bvp),
        (Command::BvpGreen, &bvp),
        (Command::BvpRol, &bvp),
        (Command::BvpCompose, &bvp),
    ] {
        let report = run(cmd, text, &flags).unwrap();
        print!("{}", report.render(false));
        println!("exit code {}\n", report.exit_code());
        assert_eq!(Report::from_json(&report.to_json()).unwrap(), report);
    }
}
