//! Tokenizer, parser, and executor for the hardware-compatible circuit
//! language, plus the `Program` record type with expected results.
//!
//! Grammar per statement: `<op> q[<i>] (, q[<j>])? ;` with op one of
//! h, t, tdg, s, sdg, x, y, z, id, cx, cnot, measure, bloch. Statements
//! end with `;`. Lines starting with `#` or `//` are comments; comment
//! lines may carry expectation headers:
//!
//! ```text
//! # expect-order: q1,q2
//! # expect-prob: 0,0,1,0
//! # expect-bloch: q0 = 0,0,1
//! ```

use crate::computer::{BlochCoords, QuantumComputer};
use crate::error::{Error, Result};
use crate::gate::StandardGate;
use crate::state::string_from_state;

/// One parsed statement with its source line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Gate { gate: StandardGate, qubit: usize, line: usize },
    Cnot { control: usize, target: usize, line: usize },
    Measure { qubit: usize, line: usize },
    Bloch { qubit: usize, line: usize },
}

impl Statement {
    pub fn line(&self) -> usize {
        match self {
            Statement::Gate { line, .. }
            | Statement::Cnot { line, .. }
            | Statement::Measure { line, .. }
            | Statement::Bloch { line, .. } => *line,
        }
    }
}

fn gate_token(op: &str) -> Option<StandardGate> {
    Some(match op {
        "h" => StandardGate::H,
        "t" => StandardGate::T,
        "tdg" => StandardGate::Tdagger,
        "s" => StandardGate::S,
        "sdg" => StandardGate::Sdagger,
        "x" => StandardGate::X,
        "y" => StandardGate::Y,
        "z" => StandardGate::Z,
        "id" => StandardGate::I,
        _ => return None,
    })
}

fn gate_name(gate: StandardGate) -> &'static str {
    match gate {
        StandardGate::H => "h",
        StandardGate::T => "t",
        StandardGate::Tdagger => "tdg",
        StandardGate::S => "s",
        StandardGate::Sdagger => "sdg",
        StandardGate::X => "x",
        StandardGate::Y => "y",
        StandardGate::Z => "z",
        StandardGate::I => "id",
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses one `q[<i>]` operand, checking the index range.
fn parse_operand(token: &str, line: usize, qubit_count: usize) -> Result<usize> {
    let inner = token
        .strip_prefix("q[")
        .and_then(|rest| rest.strip_suffix(']'))
        .ok_or_else(|| parse_error(line, format!("malformed operand \"{token}\"")))?;
    let index: usize = inner
        .trim()
        .parse()
        .map_err(|_| parse_error(line, format!("malformed qubit index \"{inner}\"")))?;
    if index >= qubit_count {
        return Err(parse_error(
            line,
            format!("qubit index {index} outside 0..{}", qubit_count - 1),
        ));
    }
    Ok(index)
}

fn parse_statement(text: &str, line: usize, qubit_count: usize) -> Result<Statement> {
    let mut parts = text.split_whitespace();
    let op = parts.next().ok_or_else(|| parse_error(line, "empty statement"))?;
    let rest: String = parts.collect::<Vec<_>>().join(" ");
    let operands: Vec<&str> = rest.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();

    if let Some(gate) = gate_token(op) {
        if operands.len() != 1 {
            return Err(parse_error(line, format!("\"{op}\" takes exactly one operand")));
        }
        let qubit = parse_operand(operands[0], line, qubit_count)?;
        return Ok(Statement::Gate { gate, qubit, line });
    }
    match op {
        "cx" | "cnot" => {
            if operands.len() != 2 {
                return Err(parse_error(line, format!("\"{op}\" takes exactly two operands")));
            }
            let control = parse_operand(operands[0], line, qubit_count)?;
            let target = parse_operand(operands[1], line, qubit_count)?;
            if control == target {
                return Err(parse_error(line, "control and target must differ"));
            }
            Ok(Statement::Cnot { control, target, line })
        }
        "measure" | "bloch" => {
            if operands.len() != 1 {
                return Err(parse_error(line, format!("\"{op}\" takes exactly one operand")));
            }
            let qubit = parse_operand(operands[0], line, qubit_count)?;
            Ok(if op == "measure" {
                Statement::Measure { qubit, line }
            } else {
                Statement::Bloch { qubit, line }
            })
        }
        other => Err(parse_error(line, format!("unknown operation \"{other}\""))),
    }
}

fn is_comment(line: &str) -> bool {
    let trimmed = line.trim_start();
    trimmed.starts_with('#') || trimmed.starts_with("//")
}

/// Parses source text into statements. Every statement must end with
/// `;`; comment lines and blank lines are skipped.
pub fn parse(source: &str) -> Result<Vec<Statement>> {
    parse_with_qubit_count(source, crate::computer::DEFAULT_QUBIT_COUNT)
}

pub fn parse_with_qubit_count(source: &str, qubit_count: usize) -> Result<Vec<Statement>> {
    let mut statements = Vec::new();
    let mut pending = String::new();
    let mut pending_line = 0usize;
    for (zero_line, raw) in source.lines().enumerate() {
        let line = zero_line + 1;
        if is_comment(raw) {
            if !pending.trim().is_empty() {
                return Err(parse_error(pending_line, "missing ';' terminator"));
            }
            continue;
        }
        for piece in raw.split_inclusive(';') {
            if pending.trim().is_empty() {
                pending_line = line;
            }
            if let Some(body) = piece.strip_suffix(';') {
                pending.push_str(body);
                let text = pending.trim().to_string();
                if text.is_empty() {
                    return Err(parse_error(line, "empty statement before ';'"));
                }
                statements.push(parse_statement(&text, pending_line, qubit_count)?);
                pending.clear();
            } else {
                pending.push_str(piece);
                pending.push(' ');
            }
        }
    }
    if !pending.trim().is_empty() {
        return Err(parse_error(pending_line, "missing ';' terminator"));
    }
    Ok(statements)
}

/// Canonical one-statement-per-line rendering; `parse(render(s)) == s`
/// modulo line numbers.
pub fn render(statements: &[Statement]) -> String {
    let mut out = String::new();
    for statement in statements {
        match statement {
            Statement::Gate { gate, qubit, .. } => {
                out.push_str(&format!("{} q[{qubit}];\n", gate_name(*gate)));
            }
            Statement::Cnot { control, target, .. } => {
                out.push_str(&format!("cx q[{control}], q[{target}];\n"));
            }
            Statement::Measure { qubit, .. } => {
                out.push_str(&format!("measure q[{qubit}];\n"));
            }
            Statement::Bloch { qubit, .. } => {
                out.push_str(&format!("bloch q[{qubit}];\n"));
            }
        }
    }
    out
}

/// Record of one measurement during execution.
#[derive(Debug, Clone)]
pub struct MeasurementRecord {
    /// The measured qubit.
    pub qubit: String,
    /// Every qubit of the register that collapsed, in register order.
    pub register_qubits: Vec<String>,
    /// The collapsed basis state as a binary string in register order.
    pub collapsed: String,
}

/// What happened while executing a program.
#[derive(Debug, Clone, Default)]
pub struct ExecutionReport {
    pub statements_executed: usize,
    pub measurements: Vec<MeasurementRecord>,
    pub bloch_results: Vec<(String, BlochCoords)>,
}

/// Parses and runs a program on the given machine. Parse errors abort
/// before any state changes; runtime errors carry the statement's line.
pub fn execute(qc: &mut QuantumComputer, source: &str) -> Result<ExecutionReport> {
    let statements = parse_with_qubit_count(source, qc.qubit_count())?;
    let mut report = ExecutionReport::default();
    for statement in &statements {
        run_statement(qc, statement, &mut report)
            .map_err(|e| Error::Runtime { line: statement.line(), source: Box::new(e) })?;
        report.statements_executed += 1;
    }
    Ok(report)
}

fn run_statement(
    qc: &mut QuantumComputer,
    statement: &Statement,
    report: &mut ExecutionReport,
) -> Result<()> {
    match statement {
        Statement::Gate { gate, qubit, .. } => {
            qc.apply_standard_gate(*gate, &format!("q{qubit}"))?;
        }
        Statement::Cnot { control, target, .. } => {
            qc.apply_cnot(&format!("q{control}"), &format!("q{target}"))?;
        }
        Statement::Measure { qubit, .. } => {
            let name = format!("q{qubit}");
            qc.measure(&name)?;
            let register = qc.registers().register_of(&name)?;
            report.measurements.push(MeasurementRecord {
                qubit: name,
                register_qubits: register.qubit_names().to_vec(),
                collapsed: string_from_state(register.get_state())?,
            });
        }
        Statement::Bloch { qubit, .. } => {
            let name = format!("q{qubit}");
            let coords = qc.bloch(&name)?;
            report.bloch_results.push((name, coords));
        }
    }
    Ok(())
}

/// A circuit program together with optional expected results parsed
/// from its comment headers.
#[derive(Debug, Clone)]
pub struct Program {
    pub name: String,
    pub code: String,
    /// Expected probabilities over the named qubit order.
    pub result_probability: Option<(Vec<String>, Vec<f64>)>,
    /// Expected Bloch coordinates per qubit.
    pub bloch_vals: Vec<(String, BlochCoords)>,
}

impl Program {
    /// Parses a program plus expectation headers from source text. The
    /// code must parse; header lines must be well formed.
    pub fn from_source(name: impl Into<String>, source: &str) -> Result<Self> {
        let mut expect_order: Option<Vec<String>> = None;
        let mut expect_prob: Option<Vec<f64>> = None;
        let mut bloch_vals = Vec::new();
        for (zero_line, raw) in source.lines().enumerate() {
            let line = zero_line + 1;
            if !is_comment(raw) {
                continue;
            }
            let body = raw.trim_start().trim_start_matches(['#', '/']).trim();
            if let Some(rest) = body.strip_prefix("expect-order:") {
                expect_order = Some(rest.split(',').map(|s| s.trim().to_string()).collect());
            } else if let Some(rest) = body.strip_prefix("expect-prob:") {
                let values: std::result::Result<Vec<f64>, _> =
                    rest.split(',').map(|s| s.trim().parse()).collect();
                expect_prob = Some(values.map_err(|_| {
                    parse_error(line, "malformed expect-prob value")
                })?);
            } else if let Some(rest) = body.strip_prefix("expect-bloch:") {
                let (qubit, coords) = rest
                    .split_once('=')
                    .ok_or_else(|| parse_error(line, "expect-bloch needs \"qubit = x,y,z\""))?;
                let values: std::result::Result<Vec<f64>, _> =
                    coords.split(',').map(|s| s.trim().parse()).collect();
                let values =
                    values.map_err(|_| parse_error(line, "malformed expect-bloch value"))?;
                if values.len() != 3 {
                    return Err(parse_error(line, "expect-bloch needs three components"));
                }
                bloch_vals.push((
                    qubit.trim().to_string(),
                    BlochCoords::new(values[0], values[1], values[2]),
                ));
            }
        }
        parse(source)?;
        let result_probability = match (expect_order, expect_prob) {
            (Some(order), Some(prob)) => {
                if prob.len() != 1 << order.len() {
                    return Err(parse_error(
                        1,
                        format!(
                            "expect-prob length {} does not match 2^{} qubits",
                            prob.len(),
                            order.len()
                        ),
                    ));
                }
                Some((order, prob))
            }
            (None, None) => None,
            _ => {
                return Err(parse_error(1, "expect-order and expect-prob must appear together"))
            }
        };
        Ok(Self { name: name.into(), code: source.to_string(), result_probability, bloch_vals })
    }

    pub fn from_file(path: &std::path::Path) -> std::io::Result<Result<Self>> {
        let source = std::fs::read_to_string(path)?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        Ok(Self::from_source(name, &source))
    }

    pub fn has_expectations(&self) -> bool {
        self.result_probability.is_some() || !self.bloch_vals.is_empty()
    }
}

/// Checks a finished run against the program's expectations. Probability
/// expectations describe the superposition the program prepared, so
/// measured registers are compared through their pre-collapse
/// snapshots. A mismatch (or a comparison that cannot be made) is
/// `false`, not an error.
pub fn check(program: &Program, qc: &QuantumComputer) -> Result<bool> {
    if !program.has_expectations() {
        return Err(Error::NoExpectations);
    }
    let mut probe = restore_pre_collapse(qc);
    if let Some((order, expected)) = &program.result_probability {
        match probe.probabilities_equal(order, expected) {
            Ok(true) => {}
            Ok(false) | Err(_) => return Ok(false),
        }
    }
    for (qubit, expected) in &program.bloch_vals {
        match probe.bloch_coords_equal(qubit, expected) {
            Ok(true) => {}
            Ok(false) | Err(_) => return Ok(false),
        }
    }
    Ok(true)
}

/// Clone of the machine with every measured register rewound to its
/// pre-collapse snapshot.
pub fn restore_pre_collapse(qc: &QuantumComputer) -> QuantumComputer {
    let mut probe = qc.clone();
    let leads: Vec<String> = probe
        .registers()
        .registers()
        .iter()
        .filter(|r| r.get_noop().is_some())
        .map(|r| r.qubit_names()[0].clone())
        .collect();
    for lead in leads {
        let register = probe.registers_mut().register_of_mut(&lead).expect("lead exists");
        let snapshot = register.get_noop().expect("snapshot present").clone();
        register.set_state(snapshot);
    }
    probe
}

#[cfg(test)]
mod tests {
    use super::*;

    const SWAP_PROGRAM: &str = "\
x q[2];
cx q[1], q[2];
h q[1];
h q[2];
cx q[1], q[2];
h q[1];
h q[2];
cx q[1], q[2];
measure q[1];
measure q[2];
";

    fn names(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_single_gate() {
        let statements = parse("x q[2];").unwrap();
        assert_eq!(
            statements,
            vec![Statement::Gate { gate: StandardGate::X, qubit: 2, line: 1 }]
        );
    }

    #[test]
    fn parse_cnot_both_spellings() {
        let statements = parse("cx q[1], q[2];\ncnot q[0], q[3];").unwrap();
        assert_eq!(
            statements,
            vec![
                Statement::Cnot { control: 1, target: 2, line: 1 },
                Statement::Cnot { control: 0, target: 3, line: 2 },
            ]
        );
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse("h q[0];\nfoo q[0];") {
            Err(Error::Parse { line: 2, message }) => assert!(message.contains("foo")),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("x q[5];") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("cx q[1], q[1];") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("h q[0]") {
            Err(Error::Parse { line: 1, message }) => assert!(message.contains(";")),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse("measure q0;") {
            Err(Error::Parse { line: 1, message }) => assert!(message.contains("operand")),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parse_skips_comments_and_blank_lines() {
        let statements = parse("# header\n\n// note\nh q[0];\n").unwrap();
        assert_eq!(statements.len(), 1);
        assert_eq!(statements[0].line(), 4);
    }

    #[test]
    fn parse_is_whitespace_insensitive() {
        let statements = parse("  cx   q[ 1 ] ,  q[ 2 ]  ;").unwrap();
        assert_eq!(statements, vec![Statement::Cnot { control: 1, target: 2, line: 1 }]);
    }

    #[test]
    fn render_round_trips() {
        let statements = parse(SWAP_PROGRAM).unwrap();
        let rendered = render(&statements);
        let reparsed = parse(&rendered).unwrap();
        assert_eq!(statements.len(), reparsed.len());
        for (a, b) in statements.iter().zip(reparsed.iter()) {
            match (a, b) {
                (Statement::Gate { gate: g1, qubit: q1, .. }, Statement::Gate { gate: g2, qubit: q2, .. }) => {
                    assert_eq!((g1, q1), (g2, q2));
                }
                (
                    Statement::Cnot { control: c1, target: t1, .. },
                    Statement::Cnot { control: c2, target: t2, .. },
                ) => assert_eq!((c1, t1), (c2, t2)),
                (Statement::Measure { qubit: q1, .. }, Statement::Measure { qubit: q2, .. }) => {
                    assert_eq!(q1, q2);
                }
                (Statement::Bloch { qubit: q1, .. }, Statement::Bloch { qubit: q2, .. }) => {
                    assert_eq!(q1, q2);
                }
                other => panic!("statement kinds diverged: {other:?}"),
            }
        }
    }

    #[test]
    fn execute_swap_program() {
        let mut qc = QuantumComputer::with_seed(11);
        let report = execute(&mut qc, SWAP_PROGRAM).unwrap();
        assert_eq!(report.statements_executed, 10);
        let probe = restore_pre_collapse(&qc);
        let mut probe = probe;
        assert!(probe
            .probabilities_equal(&names(&["q1", "q2"]), &[0.0, 0.0, 1.0, 0.0])
            .unwrap());
    }

    #[test]
    fn execute_empty_source_is_noop() {
        let mut qc = QuantumComputer::with_seed(1);
        let report = execute(&mut qc, "").unwrap();
        assert_eq!(report.statements_executed, 0);
        assert_eq!(qc.registers().num_registers(), 5);
    }

    #[test]
    fn execute_is_atomic_on_parse_errors() {
        let mut qc = QuantumComputer::with_seed(1);
        let result = execute(&mut qc, "x q[0];\nbogus q[1];");
        assert!(matches!(result, Err(Error::Parse { line: 2, .. })));
        // the valid first statement must not have run
        let state = qc.registers().register_of("q0").unwrap().get_state();
        assert_eq!(state.basis_index(), Some(0));
    }

    #[test]
    fn runtime_errors_carry_line_numbers() {
        let mut qc = QuantumComputer::with_seed(1);
        let result = execute(&mut qc, "h q[0];\ncx q[0], q[1];\nbloch q[0];");
        match result {
            Err(Error::Runtime { line: 3, .. }) => {}
            other => panic!("expected runtime error on line 3, got {other:?}"),
        }
    }

    #[test]
    fn bell_measurement_keeps_snapshot() {
        let mut qc = QuantumComputer::with_seed(5);
        let report = execute(&mut qc, "h q[0]; cx q[0], q[1]; measure q[0];").unwrap();
        assert_eq!(report.measurements.len(), 1);
        let outcome = &report.measurements[0].collapsed;
        assert!(outcome == "00" || outcome == "11");
        let noop = qc.registers().register_of("q0").unwrap().get_noop().unwrap();
        assert!((noop.amplitude(0).norm_sqr() - 0.5).abs() < 1e-10);
        assert!((noop.amplitude(3).norm_sqr() - 0.5).abs() < 1e-10);
    }

    #[test]
    fn program_header_parsing() {
        let source = "\
# expect-order: q1,q2
# expect-prob: 0,0,1,0
# expect-bloch: q0 = 0,0,1
x q[1];
";
        let program = Program::from_source("test", source).unwrap();
        let (order, prob) = program.result_probability.as_ref().unwrap();
        assert_eq!(order, &names(&["q1", "q2"]));
        assert_eq!(prob, &[0.0, 0.0, 1.0, 0.0]);
        assert_eq!(program.bloch_vals.len(), 1);
        assert_eq!(program.bloch_vals[0].0, "q0");
    }

    #[test]
    fn program_header_errors() {
        assert!(Program::from_source("t", "# expect-prob: 1,0\nx q[0];").is_err());
        assert!(Program::from_source("t", "# expect-order: q0\n# expect-prob: 1,0,0\nx q[0];").is_err());
        assert!(Program::from_source("t", "# expect-bloch: q0 0,0,1\nx q[0];").is_err());
    }

    #[test]
    fn check_swap_expectations() {
        let source = format!("# expect-order: q1,q2\n# expect-prob: 0,0,1,0\n{SWAP_PROGRAM}");
        let program = Program::from_source("swap", &source).unwrap();
        let mut qc = QuantumComputer::with_seed(11);
        execute(&mut qc, &program.code).unwrap();
        assert!(check(&program, &qc).unwrap());

        let wrong = Program::from_source(
            "swap-wrong",
            &format!("# expect-order: q1,q2\n# expect-prob: 1,0,0,0\n{SWAP_PROGRAM}"),
        )
        .unwrap();
        assert!(!check(&wrong, &qc).unwrap());
    }

    #[test]
    fn check_bell_expectations() {
        let source = "\
# expect-order: q0,q1
# expect-prob: 0.5,0,0,0.5
h q[0];
cx q[0], q[1];
measure q[0];
";
        let program = Program::from_source("bell", source).unwrap();
        let mut qc = QuantumComputer::with_seed(2);
        execute(&mut qc, &program.code).unwrap();
        assert!(check(&program, &qc).unwrap());
    }

    #[test]
    fn check_requires_expectations() {
        let program = Program::from_source("empty", "x q[0];").unwrap();
        let qc = QuantumComputer::with_seed(1);
        assert!(matches!(check(&program, &qc), Err(Error::NoExpectations)));
    }

    #[test]
    fn reset_after_program_restores_fresh_machine() {
        let mut qc = QuantumComputer::with_seed(9);
        execute(&mut qc, SWAP_PROGRAM).unwrap();
        qc.reset();
        let state = qc
            .reorder_state(&names(&["q0", "q1", "q2", "q3", "q4"]))
            .unwrap();
        assert_eq!(state.basis_index(), Some(0));
        assert_eq!(qc.registers().total_storage(), 10);
    }
}
