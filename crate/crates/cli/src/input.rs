//! Building the algebra element from a file or a generator recipe.

use std::fs;
use std::io::Read;
use std::path::Path;

use g1lab::algebras::Recipe;
use g1lab::io::read_matrix;
use g1lab::linalg::OperatorNormKind;
use g1lab::spectral::AlgebraElement;
use g1lab::Complex64;

use crate::CliError;

/// Parses `3`, `-1.5`, `2+1i`, `0.5-2i`, `i`, `-i`, `4i` or `re:im`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || format!("cannot parse `{s}` as a complex number");
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((re, im)) = t.split_once(':') {
        return Ok(Complex64::new(
            re.parse().map_err(|_| bad())?,
            im.parse().map_err(|_| bad())?,
        ));
    }
    let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split at the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse().map_err(|_| bad())?, im))
}

pub fn parse_complex_list(s: &str) -> Result<Vec<Complex64>, String> {
    s.split(',').map(parse_complex).collect()
}

#[derive(Debug, Clone, Default)]
pub struct RecipeArgs {
    pub recipe: Option<String>,
    pub order: Option<usize>,
    pub values: Option<Vec<Complex64>>,
    pub param: Option<f64>,
    pub seed: u64,
}

pub fn recipe_from_args(args: &RecipeArgs) -> Result<Recipe, CliError> {
    let name = args.recipe.as_deref().unwrap_or_default();
    let usage = |msg: &str| CliError::Usage(format!("recipe `{name}`: {msg}"));
    let zero = Complex64::new(0.0, 0.0);
    let recipe = match name {
        "normal" => {
            let eigenvalues = match (&args.values, args.order) {
                (Some(v), _) => v.clone(),
                (None, Some(n)) => (1..=n).map(|k| Complex64::new(k as f64, 0.0)).collect(),
                (None, None) => return Err(usage("needs --values or --order")),
            };
            Recipe::Normal {
                eigenvalues,
                seed: args.seed,
            }
        }
        "diagonal" => Recipe::Diagonal {
            values: args.values.clone().ok_or_else(|| usage("needs --values"))?,
        },
        "jordan" => Recipe::Jordan {
            order: args.order.unwrap_or(2),
            eigenvalue: args.values.as_ref().and_then(|v| v.first().copied()).unwrap_or(zero),
        },
        "shift" => Recipe::Shift {
            order: args.order.unwrap_or(2),
        },
        "oblique" => Recipe::Oblique {
            order: args.order.unwrap_or(2),
            angle_param: args.param.unwrap_or(1.0),
            seed: args.seed,
        },
        "nilpotent-algebra" => {
            let v = args
                .values
                .clone()
                .unwrap_or_else(|| vec![zero, Complex64::new(1.0, 0.0)]);
            if v.len() != 2 {
                return Err(usage("--values must be `alpha,beta`"));
            }
            Recipe::NilpotentAlgebra {
                alpha: v[0],
                beta: v[1],
            }
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown recipe `{other}` (expected one of {})",
                Recipe::NAMES.join(", ")
            )))
        }
    };
    Ok(recipe)
}

pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("reading {}: {e}", path.display())))
    }
}

pub fn load_element(
    input: Option<&Path>,
    recipe: &RecipeArgs,
    norm: OperatorNormKind,
) -> Result<AlgebraElement, CliError> {
    match (input, &recipe.recipe) {
        (Some(_), Some(_)) => Err(CliError::Usage(
            "give either an input file or --recipe, not both".into(),
        )),
        (Some(path), None) => {
            let m = read_matrix(&read_input(path)?)?;
            Ok(AlgebraElement::matrix(m, norm))
        }
        (None, Some(_)) => Ok(recipe_from_args(recipe)?.build(norm)?),
        (None, None) => Err(CliError::Usage("missing input: give a matrix file or --recipe".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        let c = Complex64::new;
        assert_eq!(parse_complex("3").unwrap(), c(3.0, 0.0));
        assert_eq!(parse_complex("-1.5").unwrap(), c(-1.5, 0.0));
        assert_eq!(parse_complex("2+1i").unwrap(), c(2.0, 1.0));
        assert_eq!(parse_complex("0.5-2i").unwrap(), c(0.5, -2.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("4i").unwrap(), c(0.0, 4.0));
        assert_eq!(parse_complex("1e-3+2e+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("1:-2").unwrap(), c(1.0, -2.0));
        assert!(parse_complex("x").is_err());
        assert!(parse_complex("").is_err());
        assert_eq!(parse_complex_list("0,1,2+i").unwrap().len(), 3);
    }
}
