//! Plain-text input files.
//!
//! Every file starts with a header `# field p n`. Other lines starting with
//! `#` and blank lines are ignored. Entries are element indices:
//!
//! - points: `x,y` or `x,y,z`
//! - scalar sets: one index per line
//! - lines: `N a b` for `y = ax + b`, `V c` for `x = c`
//! - planes: `P n1 n2 n3 rhs` for `n . x = rhs`, `D a1 a2 a3` for `a . x = 1`
//! - set systems: `ground N` then one member per line as space-separated
//!   sorted indices (an empty line is an empty member); no field header

use crate::error::{Error, Result};
use crate::ffield::{Fe, FieldSpec};
use crate::geom::{Line2, Plane3, Point, Point2, Point3};
use crate::setsys::SetSystem;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

fn parse_err(path: &Path, line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        msg: msg.into(),
    }
}

fn header(f: &FieldSpec) -> String {
    format!("# field {} {}\n", f.p(), f.n())
}

/// Parses the header and hands every content line to `item`.
fn parse_body<T>(
    text: &str,
    path: &Path,
    mut item: impl FnMut(&FieldSpec, &str) -> std::result::Result<T, String>,
) -> Result<(FieldSpec, Vec<T>)> {
    let mut field: Option<FieldSpec> = None;
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = i + 1;
        if let Some(rest) = line.strip_prefix('#') {
            let words: Vec<&str> = rest.split_whitespace().collect();
            if words.first() == Some(&"field") {
                if field.is_some() {
                    return Err(parse_err(path, lineno, "duplicate field header"));
                }
                let [_, p, n] = words[..] else {
                    return Err(parse_err(path, lineno, "expected `# field p n`"));
                };
                let p: u32 = p.parse().map_err(|_| parse_err(path, lineno, "bad p"))?;
                let n: u32 = n.parse().map_err(|_| parse_err(path, lineno, "bad n"))?;
                field = Some(FieldSpec::new(p, n).map_err(|e| parse_err(path, lineno, e.to_string()))?);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let f = field
            .as_ref()
            .ok_or_else(|| parse_err(path, lineno, "missing `# field p n` header"))?;
        out.push(item(f, line).map_err(|m| parse_err(path, lineno, m))?);
    }
    let f = field.ok_or_else(|| parse_err(path, 0, "missing `# field p n` header"))?;
    Ok((f, out))
}

fn elem(f: &FieldSpec, s: &str) -> std::result::Result<Fe, String> {
    let v: u32 = s.trim().parse().map_err(|_| format!("bad element {s:?}"))?;
    f.elem(v).map_err(|e| e.to_string())
}

fn coords<const D: usize>(f: &FieldSpec, line: &str) -> std::result::Result<Point<D>, String> {
    let parts: Vec<&str> = line.split(',').collect();
    if parts.len() != D {
        return Err(format!("expected {D} comma-separated coordinates, got {}", parts.len()));
    }
    let mut c = [Fe::ZERO; D];
    for (slot, s) in c.iter_mut().zip(parts) {
        *slot = elem(f, s)?;
    }
    Ok(Point(c))
}

fn words<const K: usize>(f: &FieldSpec, rest: &[&str]) -> std::result::Result<[Fe; K], String> {
    if rest.len() != K {
        return Err(format!("expected {K} values, got {}", rest.len()));
    }
    let mut c = [Fe::ZERO; K];
    for (slot, s) in c.iter_mut().zip(rest) {
        *slot = elem(f, s)?;
    }
    Ok(c)
}

pub fn parse_points2(text: &str, path: &Path) -> Result<(FieldSpec, Vec<Point2>)> {
    parse_body(text, path, coords::<2>)
}

pub fn parse_points3(text: &str, path: &Path) -> Result<(FieldSpec, Vec<Point3>)> {
    parse_body(text, path, coords::<3>)
}

pub fn parse_scalars(text: &str, path: &Path) -> Result<(FieldSpec, Vec<Fe>)> {
    parse_body(text, path, elem)
}

pub fn parse_lines(text: &str, path: &Path) -> Result<(FieldSpec, Vec<Line2>)> {
    parse_body(text, path, |f, line| {
        let w: Vec<&str> = line.split_whitespace().collect();
        match w.first() {
            Some(&"N") => {
                let [a, b] = words::<2>(f, &w[1..])?;
                Ok(Line2::slanted(a, b))
            }
            Some(&"V") => {
                let [c] = words::<1>(f, &w[1..])?;
                Ok(Line2::vertical(c))
            }
            _ => Err("expected `N a b` or `V c`".into()),
        }
    })
}

pub fn parse_planes(text: &str, path: &Path) -> Result<(FieldSpec, Vec<Plane3>)> {
    parse_body(text, path, |f, line| {
        let w: Vec<&str> = line.split_whitespace().collect();
        match w.first() {
            Some(&"P") => {
                let [a, b, c, r] = words::<4>(f, &w[1..])?;
                Plane3::new(f, [a, b, c], r).map_err(|e| e.to_string())
            }
            Some(&"D") => {
                let [a, b, c] = words::<3>(f, &w[1..])?;
                Plane3::dual(f, [a, b, c]).map_err(|e| e.to_string())
            }
            _ => Err("expected `P n1 n2 n3 rhs` or `D a1 a2 a3`".into()),
        }
    })
}

pub fn parse_set_system(text: &str, path: &Path) -> Result<SetSystem> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim_start().starts_with('#'));
    let (hi, head) = lines.next().ok_or_else(|| parse_err(path, 0, "empty set system file"))?;
    let ground: usize = head
        .trim()
        .strip_prefix("ground")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| parse_err(path, hi + 1, "expected `ground N`"))?;
    let mut members = Vec::new();
    for (i, l) in lines {
        let m: std::result::Result<Vec<usize>, _> = l.split_whitespace().map(str::parse).collect();
        members.push(m.map_err(|_| parse_err(path, i + 1, "bad member index"))?);
    }
    SetSystem::new(ground, members).map_err(|e| parse_err(path, 0, e.to_string()))
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))
}

pub fn read_points2(path: &Path) -> Result<(FieldSpec, Vec<Point2>)> {
    parse_points2(&read(path)?, path)
}

pub fn read_points3(path: &Path) -> Result<(FieldSpec, Vec<Point3>)> {
    parse_points3(&read(path)?, path)
}

pub fn read_scalars(path: &Path) -> Result<(FieldSpec, Vec<Fe>)> {
    parse_scalars(&read(path)?, path)
}

pub fn read_lines(path: &Path) -> Result<(FieldSpec, Vec<Line2>)> {
    parse_lines(&read(path)?, path)
}

pub fn read_planes(path: &Path) -> Result<(FieldSpec, Vec<Plane3>)> {
    parse_planes(&read(path)?, path)
}

pub fn read_set_system(path: &Path) -> Result<SetSystem> {
    parse_set_system(&read(path)?, path)
}

pub fn format_points<const D: usize>(f: &FieldSpec, pts: &[Point<D>]) -> String {
    let mut s = header(f);
    for p in pts {
        let c: Vec<String> = p.0.iter().map(|e| e.0.to_string()).collect();
        s.push_str(&c.join(","));
        s.push('\n');
    }
    s
}

pub fn format_scalars(f: &FieldSpec, xs: &[Fe]) -> String {
    let mut s = header(f);
    for x in xs {
        let _ = writeln!(s, "{}", x.0);
    }
    s
}

pub fn format_lines(f: &FieldSpec, lines: &[Line2]) -> String {
    let mut s = header(f);
    for l in lines {
        let _ = match *l {
            Line2::NonVertical { slope, intercept } => writeln!(s, "N {} {}", slope.0, intercept.0),
            Line2::Vertical { c } => writeln!(s, "V {}", c.0),
        };
    }
    s
}

/// Planes built as `a . x = 1` are written in `D` form.
pub fn format_planes(f: &FieldSpec, planes: &[Plane3]) -> String {
    let mut s = header(f);
    for pl in planes {
        let _ = match pl.dual_vector(f).filter(|_| pl.is_affine_one()) {
            Some(a) => writeln!(s, "D {} {} {}", a[0].0, a[1].0, a[2].0),
            None => {
                let n = pl.normal();
                writeln!(s, "P {} {} {} {}", n[0].0, n[1].0, n[2].0, pl.rhs().0)
            }
        };
    }
    s
}

pub fn format_set_system(sys: &SetSystem) -> String {
    let mut s = format!("ground {}\n", sys.ground_size());
    for i in 0..sys.len() {
        let m: Vec<String> = sys.member_elements(i).iter().map(usize::to_string).collect();
        s.push_str(&m.join(" "));
        s.push('\n');
    }
    s
}

pub fn write_text(path: impl Into<PathBuf>, text: &str) -> Result<()> {
    Ok(std::fs::write(path.into(), text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::make_field;

    #[test]
    fn round_trips() {
        let f = make_field(3, 2).unwrap();
        let p = Path::new("mem");
        let pts = vec![Point::from_indices([1, 8, 0]), Point::from_indices([0, 0, 5])];
        assert_eq!(parse_points3(&format_points(&f, &pts), p).unwrap(), (f.clone(), pts));
        let pts2 = vec![Point::from_indices([7, 2])];
        assert_eq!(parse_points2(&format_points(&f, &pts2), p).unwrap().1, pts2);
        let xs = vec![Fe(3), Fe(0)];
        assert_eq!(parse_scalars(&format_scalars(&f, &xs), p).unwrap().1, xs);
        let ls = vec![Line2::slanted(Fe(2), Fe(4)), Line2::vertical(Fe(8))];
        assert_eq!(parse_lines(&format_lines(&f, &ls), p).unwrap().1, ls);
        let pls = vec![
            Plane3::new(&f, [Fe(0), Fe(2), Fe(1)], Fe(3)).unwrap(),
            Plane3::dual(&f, [Fe(4), Fe(0), Fe(0)]).unwrap(),
        ];
        let back = parse_planes(&format_planes(&f, &pls), p).unwrap().1;
        assert_eq!(back, pls);
        assert!(back[1].is_affine_one());
        let sys = SetSystem::new(4, vec![vec![0, 3], vec![], vec![1]]).unwrap();
        let again = parse_set_system(&format_set_system(&sys), p).unwrap();
        assert_eq!((0..3).map(|i| again.member_elements(i)).collect::<Vec<_>>(), vec![vec![0, 3], vec![], vec![1]]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let p = Path::new("x.txt");
        let e = parse_points3("# field 5 1\n1,2,3\n1,2\n", p).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        assert!(matches!(parse_points3("1,2,3\n", p), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_scalars("# field 5 1\n5\n", p), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_lines("# field 4 1\n", p), Err(Error::Parse { line: 1, .. })));
        assert!(parse_points3("# comment\n# field 5 1\n\n0,0,0\n", p).is_ok());
    }
}
