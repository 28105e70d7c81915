use std::path::PathBuf;
use std::process::{Command, Output};

use riordan_core::io::{sequence_from_json, sequence_to_json, JacobiDoc, TriangleDoc};

fn riordan(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riordan"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = riordan(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("riordan-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn stirling_triangle_from_expressions() {
    let out = ok(&["array", "--g", "1", "--f", "exp(x)-1", "--order", "5"]);
    assert_eq!(
        out,
        "1\n0, 1\n0, 1, 1\n0, 1, 3, 1\n0, 1, 7, 6, 1\n0, 1, 15, 25, 10, 1\n"
    );
}

#[test]
fn pascal_json() {
    let out = ok(&["array", "--g", "exp(x)", "--f", "x", "--order", "4", "--format", "json"]);
    assert_eq!(
        out.trim(),
        r#"{"order":4,"rows":[["1"],["1","1"],["1","2","1"],["1","3","3","1"],["1","4","6","4","1"]]}"#
    );
}

#[test]
fn json_round_trips_byte_identically() {
    let out = ok(&["array", "--name", "thm2", "--order", "6", "--format", "json"]);
    let doc = TriangleDoc::from_json(out.trim()).unwrap();
    let again = TriangleDoc::new(doc.order, &doc.scalars().unwrap()).to_json();
    assert_eq!(again, out.trim());

    let out = ok(&["jacobi", "--name", "thm1", "--order", "6", "--format", "json"]);
    let j = JacobiDoc::from_json(out.trim()).unwrap().params().unwrap();
    assert_eq!(JacobiDoc::from(&j).to_json(), out.trim());

    let out = ok(&["hankel", "--name", "thm2", "--order", "8", "--format", "json"]);
    assert_eq!(sequence_to_json(&sequence_from_json(out.trim()).unwrap()), out.trim());
}

#[test]
fn syntax_error_exits_two() {
    let o = riordan(&["array", "--g", "1/(1-x", "--f", "x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("syntax error at offset 6"), "{}", stderr(&o));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(riordan(&["array", "--order", "65", "--name", "thm1"]).status.code(), Some(2));
    assert_eq!(riordan(&["array", "--name", "thm9"]).status.code(), Some(2));
    assert_eq!(riordan(&["array", "--g", "1"]).status.code(), Some(2));
    let o = riordan(&["array", "--g", "1", "--f", "1+x"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("f(0) must be 0"), "{}", stderr(&o));
}

#[test]
fn production_matrix_of_first_moment_pair() {
    let out = ok(&["prodmat", "--name", "thm1", "--order", "6"]);
    assert_eq!(
        out,
        "z, 1\nz, z + 1, 1\n0, 2*z, z + 2, 1\n0, 0, 3*z, z + 3, 1\n\
         0, 0, 0, 4*z, z + 4, 1\n0, 0, 0, 0, 5*z, z + 5, 1\n"
    );
}

#[test]
fn production_methods_agree() {
    let out = ok(&["prodmat", "--g", "1/(1-x)", "--f", "x", "--order", "5", "--method", "both"]);
    assert!(out.starts_with("1, 1\n1, 1, 1\n2, 2, 1, 1\n"), "{out}");
    assert!(out.ends_with("AGREE rows 0..4\n"), "{out}");
    let out = ok(&[
        "prodmat",
        "--g",
        "1 + 2*x - x^2/3 + z*x^3",
        "--f",
        "x + x^2/2 - z*x^3",
        "--order",
        "7",
        "--method",
        "both",
    ]);
    assert!(out.ends_with("AGREE rows 0..6\n"), "{out}");
    let direct = ok(&["prodmat", "--name", "laguerre", "--order", "5", "--method", "direct"]);
    assert!(direct.starts_with("1, 1\n1, 3, 1\n0, 4, 5, 1\n"), "{direct}");
}

#[test]
fn hankel_from_bfile() {
    let path = temp_file(
        "bell.txt",
        "# Bell numbers\n0 1\n1 1\n2 2\n3 5\n4 15\n5 52\n6 203\n7 877\n8 4140\n",
    );
    let out = ok(&["hankel", "--in", path.to_str().unwrap()]);
    assert_eq!(out, "1, 1, 2, 12, 288\n");
    let out = ok(&["hankel", "--in", path.to_str().unwrap(), "--format", "bfile"]);
    assert_eq!(out, "0 1\n1 1\n2 2\n3 12\n4 288\n");
}

#[test]
fn hankel_inline_polynomials() {
    let out = ok(&[
        "hankel",
        "--seq",
        "1, z, z^2 + z, z^3 + 3*z^2 + z, z^4 + 6*z^3 + 7*z^2 + z, \
         z^5 + 10*z^4 + 25*z^3 + 15*z^2 + z, z^6 + 15*z^5 + 65*z^4 + 90*z^3 + 31*z^2 + z",
        "--nmax",
        "3",
    ]);
    assert_eq!(out, "1, z, 2*z^3, 12*z^6\n");
}

#[test]
fn hankel_term_shortage() {
    let o = riordan(&["hankel", "--seq", "1", "--nmax", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("need 3 terms"), "{}", stderr(&o));
}

#[test]
fn hankel_json_input() {
    let path = temp_file("seq.json", r#"["1", "1", "2", "6", "24"]"#);
    assert_eq!(ok(&["hankel", "--in", path.to_str().unwrap()]), "1, 1, 4\n");
}

#[test]
fn binomial_transform_of_bell_numbers() {
    assert_eq!(ok(&["binom", "--seq", "1,1,2,5,15"]), "1, 2, 5, 15, 52\n");
}

#[test]
fn triangles_and_polynomials() {
    let out = ok(&["triangle", "eulerian", "--order", "5"]);
    assert_eq!(out.lines().nth(5), Some("0, 1, 26, 66, 26, 1"));
    let out = ok(&["triangle", "stirling2", "--order", "3", "--format", "bfile"]);
    assert!(out.contains("3 2 3\n"), "{out}");
    assert_eq!(ok(&["poly", "bell", "--n", "4"]), "z^4 + 6*z^3 + 7*z^2 + z\n");
    assert_eq!(ok(&["poly", "eulerian", "--n", "3", "--z", "1"]), "6\n");
    assert_eq!(ok(&["poly", "eulerian", "--n", "3", "--format", "latex"]), "z^{3} + 4z^{2} + z\n");
}

#[test]
fn latex_matrix() {
    let out = ok(&["array", "--name", "binomial", "--order", "2", "--format", "latex"]);
    assert_eq!(out, "\\begin{pmatrix}\n1 & 0 & 0 \\\\\n1 & 1 & 0 \\\\\n1 & 2 & 1\n\\end{pmatrix}\n");
}

#[test]
fn specialization_after_computation() {
    let at_one = ok(&["array", "--name", "thm2", "--order", "4", "--z", "1"]);
    let laguerre = ok(&["array", "--name", "laguerre", "--order", "4"]);
    assert_eq!(at_one, laguerre);
    let inv = ok(&["inverse", "--name", "thm2", "--order", "3", "--z", "1"]);
    assert_eq!(inv, "1\n-1, 1\n2, -4, 1\n-6, 18, -9, 1\n");
    let o = riordan(&["array", "--g", "1 + x/(1-z)", "--f", "x", "--order", "3", "--z", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("entry (1,0)"), "{}", stderr(&o));
}

#[test]
fn multiply_named_pairs() {
    let out = ok(&[
        "multiply", "--name", "stirling2", "--g2", "exp(z*x)", "--f2", "x", "--order", "5",
    ]);
    assert_eq!(out, ok(&["array", "--name", "thm1", "--order", "5"]));
}

#[test]
fn jacobi_both_directions() {
    let out = ok(&["jacobi", "--name", "thm1", "--order", "4"]);
    assert_eq!(out, "a0: 1\nalpha: z, z + 1, z + 2, z + 3\nbeta: z, 2*z, 3*z\n");
    let out = ok(&["jacobi", "--seq", "1,1,2,6,24,120,720"]);
    assert_eq!(out, "a0: 1\nalpha: 1, 3, 5\nbeta: 1, 4\n");
    let o = riordan(&["jacobi", "--name", "lah_like", "--order", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not tridiagonal"), "{}", stderr(&o));
}

#[test]
fn moments_from_parameter_file() {
    let path = temp_file("thm2.json", r#"{"a0":"1","alpha":["z","2*z + 1","3*z + 2"],"beta":["z","4*z"]}"#);
    let out = ok(&["moments", "--in", path.to_str().unwrap()]);
    assert_eq!(out, "1, z, z^2 + z, z^3 + 4*z^2 + z, z^4 + 11*z^3 + 11*z^2 + z, z^5 + 26*z^4 + 66*z^3 + 26*z^2 + z\n");
    let out = ok(&["moments", "--name", "thm1", "--order", "3"]);
    assert_eq!(out, "1, z, z^2 + z, z^3 + 3*z^2 + z\n");
}

#[test]
fn verify_exit_status() {
    let o = riordan(&["verify", "thm1", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).matches("PASS").count(), 5);
    let o = riordan(&["verify", "thm2", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = riordan(&["verify", "examples", "--order", "8"]);
    assert_eq!(o.status.code(), Some(1));
    let report = stdout(&o);
    let failures: Vec<&str> = report.lines().filter(|l| l.starts_with("FAIL")).collect();
    assert_eq!(failures.len(), 1, "{failures:?}");
    assert!(failures[0].contains("without its first row"));
}
