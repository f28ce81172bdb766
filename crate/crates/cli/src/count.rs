//! Single-word counting with optional loop trace.

use popcount_core::{popcount_nonoblivious_traced, Algorithm, Word};

use crate::CliError;

/// Runs `algo` on `hex` and renders the output lines.
///
/// The first line is `count=<b> iterations=<i> unit_ops=<n>`; with `trace`
/// one `k=.. x=.. p=.. guard=..` line follows per loop iteration.
pub fn run_count(
    hex: &str,
    width: usize,
    algo: Algorithm,
    trace: bool,
) -> Result<String, CliError> {
    let x = Word::from_hex(hex, width).map_err(|e| CliError::Usage(e.to_string()))?;
    if trace && algo != Algorithm::NonOblivious {
        return Err(CliError::Usage(format!(
            "--trace is only available for nonoblivious, not {algo}"
        )));
    }
    let result = if trace {
        popcount_nonoblivious_traced(&x)
    } else {
        algo.run(&x)
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;

    let mut out = format!(
        "count={} iterations={} unit_ops={}\n",
        result.count,
        result.stats.iterations,
        result.stats.total_unit_ops()
    );
    for step in result.trace.iter().flatten() {
        out.push_str(&step.to_string());
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_examples() {
        let out = run_count("0x11", 8, Algorithm::NonOblivious, false).unwrap();
        assert!(out.starts_with("count=2 iterations=2 "));
        let out = run_count("0x0", 8, Algorithm::Wegner, false).unwrap();
        assert!(out.starts_with("count=0 iterations=0 "));
        assert!(matches!(
            run_count("0xZZ", 8, Algorithm::Reference, false),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn trace_lines() {
        let out = run_count("0x11", 8, Algorithm::NonOblivious, true).unwrap();
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(
            lines,
            [
                "count=2 iterations=2 unit_ops=19",
                "k=1 x=0x11 p=0x05A5 guard=true",
                "k=2 x=0x11 p=0x0121 guard=false",
            ]
        );
        assert!(run_count("0x11", 8, Algorithm::Tree, true).is_err());
        assert!(run_count("0x11", 12, Algorithm::NonOblivious, false).is_err());
    }
}
