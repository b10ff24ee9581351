//! JSON wire formats for the three arrangement kinds. Rationals travel as
//! strings `"p"` or `"p/q"`; parsing rejects zero denominators, and line and
//! hyperplane coefficients are canonicalized on the way in.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::Arrangement;
use crate::plane::{canonical_line, Color, Line2, Point2};
use crate::pseudolines::Pseudoline;
use crate::scalar::{format_scalar, parse_scalar};
use crate::space::{canonical_hyperplane, HyperplaneD, MAX_DIM};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineDto {
    pub a: String,
    pub b: String,
    pub c: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LinesFile {
    pub lines: Vec<LineDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperplaneDto {
    pub normal: Vec<String>,
    pub offset: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HyperplanesFile {
    pub d: usize,
    pub hyperplanes: Vec<HyperplaneDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PseudolineDto {
    pub vertices: Vec<[String; 2]>,
    pub left_slope: String,
    pub right_slope: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub color: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PseudolinesFile {
    pub pseudolines: Vec<PseudolineDto>,
}

/// Any of the three formats; `serde` picks the matching one by its key.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArrangementFile {
    Lines(LinesFile),
    Hyperplanes(HyperplanesFile),
    Pseudolines(PseudolinesFile),
}

fn parse_color(s: &Option<String>) -> Result<Option<Color>> {
    match s.as_deref() {
        None => Ok(None),
        Some("red") => Ok(Some(Color::Red)),
        Some("blue") => Ok(Some(Color::Blue)),
        Some(other) => Err(Error::Parse(format!("unknown color {other:?}"))),
    }
}

fn color_string(c: Option<Color>) -> Option<String> {
    c.map(|c| c.to_string())
}

pub fn lines_from_file(file: &LinesFile) -> Result<Vec<Line2>> {
    file.lines
        .iter()
        .enumerate()
        .map(|(i, dto)| {
            let line = canonical_line(
                parse_scalar(&dto.a)?,
                parse_scalar(&dto.b)?,
                parse_scalar(&dto.c)?,
            )?;
            Ok(line.with_color(parse_color(&dto.color)?).with_id(i))
        })
        .collect()
}

pub fn lines_to_file(lines: &[Line2]) -> LinesFile {
    LinesFile {
        lines: lines
            .iter()
            .map(|l| LineDto {
                a: format_scalar(&l.a),
                b: format_scalar(&l.b),
                c: format_scalar(&l.c),
                color: color_string(l.color),
            })
            .collect(),
    }
}

pub fn hyperplanes_from_file(file: &HyperplanesFile) -> Result<Vec<HyperplaneD>> {
    if file.d < 2 {
        return Err(Error::Parse(format!("dimension {} below 2", file.d)));
    }
    if file.d > MAX_DIM {
        return Err(Error::DimensionTooLarge(file.d, MAX_DIM));
    }
    file.hyperplanes
        .iter()
        .enumerate()
        .map(|(i, dto)| {
            if dto.normal.len() != file.d {
                return Err(Error::DimensionMismatch {
                    expected: file.d,
                    got: dto.normal.len(),
                });
            }
            let normal = dto
                .normal
                .iter()
                .map(|s| parse_scalar(s))
                .collect::<Result<Vec<_>>>()?;
            let h = canonical_hyperplane(normal, parse_scalar(&dto.offset)?)?;
            Ok(h.with_id(i))
        })
        .collect()
}

pub fn hyperplanes_to_file(hs: &[HyperplaneD]) -> HyperplanesFile {
    let d = hs.first().map_or(0, |h| h.dim());
    HyperplanesFile {
        d,
        hyperplanes: hs
            .iter()
            .map(|h| HyperplaneDto {
                normal: h.normal.iter().map(format_scalar).collect(),
                offset: format_scalar(&h.offset),
            })
            .collect(),
    }
}

pub fn pseudolines_from_file(file: &PseudolinesFile) -> Result<Vec<Pseudoline>> {
    file.pseudolines
        .iter()
        .enumerate()
        .map(|(i, dto)| {
            let vertices = dto
                .vertices
                .iter()
                .map(|[x, y]| Ok(Point2::new(parse_scalar(x)?, parse_scalar(y)?)))
                .collect::<Result<Vec<_>>>()?;
            let p = Pseudoline::new(
                vertices,
                parse_scalar(&dto.left_slope)?,
                parse_scalar(&dto.right_slope)?,
            )?;
            Ok(p.with_color(parse_color(&dto.color)?).with_id(i))
        })
        .collect()
}

pub fn pseudolines_to_file(ps: &[Pseudoline]) -> PseudolinesFile {
    PseudolinesFile {
        pseudolines: ps
            .iter()
            .map(|p| PseudolineDto {
                vertices: p
                    .vertices
                    .iter()
                    .map(|v| [format_scalar(&v.x), format_scalar(&v.y)])
                    .collect(),
                left_slope: format_scalar(&p.left_slope),
                right_slope: format_scalar(&p.right_slope),
                color: color_string(p.color),
            })
            .collect(),
    }
}

/// Parses any arrangement file, detecting its kind from the JSON shape.
pub fn parse_arrangement(json: &str) -> Result<Arrangement> {
    let file: ArrangementFile =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    match &file {
        ArrangementFile::Lines(f) => Ok(Arrangement::Lines(lines_from_file(f)?)),
        ArrangementFile::Hyperplanes(f) => Ok(Arrangement::Hyperplanes(hyperplanes_from_file(f)?)),
        ArrangementFile::Pseudolines(f) => Ok(Arrangement::Pseudolines(pseudolines_from_file(f)?)),
    }
}

pub fn arrangement_to_json(arr: &Arrangement) -> String {
    let file = match arr {
        Arrangement::Lines(v) => ArrangementFile::Lines(lines_to_file(v)),
        Arrangement::Hyperplanes(v) => ArrangementFile::Hyperplanes(hyperplanes_to_file(v)),
        Arrangement::Pseudolines(v) => ArrangementFile::Pseudolines(pseudolines_to_file(v)),
    };
    serde_json::to_string_pretty(&file).expect("arrangement files always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_documented_line_format() {
        let json =
            r#"{"lines":[{"a":"1","b":"-2","c":"3/2","color":"red"},{"a":"0","b":"1","c":"0"}]}"#;
        let arr = parse_arrangement(json).unwrap();
        let lines = match arr {
            Arrangement::Lines(v) => v,
            _ => panic!("expected lines"),
        };
        // (1, -2, 3/2) canonicalizes to (2, -4, 3).
        assert_eq!(lines[0], Line2::from_ints(2, -4, 3));
        assert_eq!(lines[0].color, Some(Color::Red));
        assert_eq!(lines[1].color, None);
    }

    #[test]
    fn parses_the_documented_hyperplane_format() {
        let json = r#"{"d":4,"hyperplanes":[{"normal":["1","0","0","0"],"offset":"0"},{"normal":["0","1/2","0","0"],"offset":"1"}]}"#;
        let arr = parse_arrangement(json).unwrap();
        let hs = match arr {
            Arrangement::Hyperplanes(v) => v,
            _ => panic!("expected hyperplanes"),
        };
        assert_eq!(hs[1], HyperplaneD::from_ints(&[0, 1, 0, 0], 2));
    }

    #[test]
    fn parses_the_documented_pseudoline_format() {
        let json = r#"{"pseudolines":[{"vertices":[["0","0"],["1","1"]],"left_slope":"-1","right_slope":"0","color":"blue"}]}"#;
        let arr = parse_arrangement(json).unwrap();
        let ps = match arr {
            Arrangement::Pseudolines(v) => v,
            _ => panic!("expected pseudolines"),
        };
        assert_eq!(ps[0].color, Some(Color::Blue));
        assert_eq!(ps[0].eval_at(&crate::scalar::int(2)), crate::scalar::int(1));
    }

    #[test]
    fn rejects_zero_denominator_and_bad_color() {
        let bad_q = r#"{"lines":[{"a":"1/0","b":"1","c":"0"}]}"#;
        assert!(matches!(parse_arrangement(bad_q), Err(Error::Parse(_))));
        let bad_color = r#"{"lines":[{"a":"1","b":"1","c":"0","color":"green"}]}"#;
        assert!(matches!(parse_arrangement(bad_color), Err(Error::Parse(_))));
    }

    #[test]
    fn round_trips_generated_arrangements() {
        use crate::generators::{generate, GenKind, GenSpec};
        for kind in [GenKind::Random, GenKind::WiringDiagram, GenKind::Biased] {
            let spec = GenSpec::new(kind, 8).with_seed(9);
            let arr = generate(&spec).unwrap();
            let json = arrangement_to_json(&arr);
            let back = parse_arrangement(&json).unwrap();
            match (&arr, &back) {
                (Arrangement::Lines(a), Arrangement::Lines(b)) => assert_eq!(a, b),
                (Arrangement::Pseudolines(a), Arrangement::Pseudolines(b)) => assert_eq!(a, b),
                (Arrangement::Hyperplanes(a), Arrangement::Hyperplanes(b)) => assert_eq!(a, b),
                _ => panic!("kind changed through the round trip"),
            }
        }
    }
}
