//! Segre types of self-adjoint operators under an indefinite metric.
//!
//! A Segre type lists the sizes of the Jordan blocks of an operator, grouped
//! by eigenvalue. A complex eigenvalue always comes with its conjugate and
//! the two carry mirrored Jordan structures, so a complex block of size `k`
//! stands for a conjugate pair of `k`-blocks and occupies `2k` dimensions.
//!
//! Machine format: `{` items `}` where an item is a digit or a parenthesised
//! run of digits, and a digit followed by `~` is the conjugate partner of the
//! preceding unpaired digit of the same size. Examples: `{1111~}`,
//! `{(11)(11)}`, `{22~}`, `{(11~11~)}`. The human format writes the
//! conjugate digit with a combining overline and separates it by spaces,
//! as in `{111 1̄}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::GeometryError;
use crate::matrix::Matrix;
use crate::scalar::FieldScalar;
use crate::upoly::UPoly;

const OVERLINE: char = '\u{0305}';

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegreBlock {
    pub size: usize,
    pub complex: bool,
    pub group: usize,
}

#[derive(Clone, Debug)]
pub struct SegreType {
    blocks: Vec<SegreBlock>,
}

/// Canonical multiset form: per eigenvalue, `(complex, sizes descending)`.
type Canonical = Vec<(bool, Vec<usize>)>;

impl SegreType {
    /// Builds a type from blocks; every group must be all real or all
    /// complex.
    pub fn from_blocks(blocks: Vec<SegreBlock>) -> Result<Self, GeometryError> {
        if blocks.is_empty() {
            return Err(GeometryError::ParseSegre("empty type".into()));
        }
        let mut kind: BTreeMap<usize, bool> = BTreeMap::new();
        for b in &blocks {
            if b.size == 0 {
                return Err(GeometryError::ParseSegre("zero block size".into()));
            }
            if *kind.entry(b.group).or_insert(b.complex) != b.complex {
                return Err(GeometryError::ParseSegre("real and complex blocks share an eigenvalue".into()));
            }
        }
        Ok(SegreType { blocks })
    }

    pub fn blocks(&self) -> &[SegreBlock] {
        &self.blocks
    }

    /// Dimension of the space the type describes.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| if b.complex { 2 * b.size } else { b.size }).sum()
    }

    /// Some eigenvalue carries two or more Jordan blocks.
    pub fn is_degenerate(&self) -> bool {
        self.canonical().iter().any(|(_, sizes)| sizes.len() >= 2)
    }

    pub fn has_complex(&self) -> bool {
        self.blocks.iter().any(|b| b.complex)
    }

    /// Every eigenvalue has only 1-blocks.
    pub fn is_diagonalizable(&self) -> bool {
        self.blocks.iter().all(|b| b.size == 1)
    }

    fn canonical(&self) -> Canonical {
        let mut groups: BTreeMap<usize, (bool, Vec<usize>)> = BTreeMap::new();
        for b in &self.blocks {
            groups.entry(b.group).or_insert((b.complex, Vec::new())).1.push(b.size);
        }
        let mut out: Canonical = groups
            .into_values()
            .map(|(c, mut sizes)| {
                sizes.sort_unstable_by(|a, b| b.cmp(a));
                (c, sizes)
            })
            .collect();
        out.sort();
        out
    }

    /// Machine-format string; matches the catalog spelling when the type is
    /// in the catalog.
    pub fn machine(&self) -> String {
        let key = self.canonical();
        for entry in CATALOG {
            let t = SegreType::parse(entry.0).expect("catalog entries parse");
            if t.canonical() == key {
                return entry.0.to_string();
            }
        }
        let mut out = String::from("{");
        let mut ordered = key.clone();
        // real groups first, larger blocks first
        ordered.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        for (complex, sizes) in &ordered {
            let mut item = String::new();
            for s in sizes {
                item.push_str(&s.to_string());
                if *complex {
                    item.push_str(&s.to_string());
                    item.push('~');
                }
            }
            let count = if *complex { 2 * sizes.len() } else { sizes.len() };
            if count > 1 && sizes.len() > 1 {
                out.push('(');
                out.push_str(&item);
                out.push(')');
            } else {
                out.push_str(&item);
            }
        }
        out.push('}');
        out
    }

    /// Human-format string with overlined conjugate digits.
    pub fn human(&self) -> String {
        to_human(&self.machine())
    }

    /// Parses either format.
    pub fn parse(text: &str) -> Result<Self, GeometryError> {
        let err = |m: &str| GeometryError::ParseSegre(format!("{m} in {text:?}"));
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if chars.first() != Some(&'{') || chars.last() != Some(&'}') || chars.len() < 3 {
            return Err(err("expected braces"));
        }
        let mut blocks: Vec<SegreBlock> = Vec::new();
        let mut group = 0usize;
        let mut in_paren = false;
        let mut paren_count = 0usize;
        // unpaired real digits of the current context: (size, group, index in blocks)
        let mut open: Vec<(usize, usize, usize)> = Vec::new();
        let mut i = 1;
        while i < chars.len() - 1 {
            let c = chars[i];
            match c {
                '(' => {
                    if in_paren {
                        return Err(err("nested parentheses"));
                    }
                    in_paren = true;
                    paren_count = 0;
                    open.clear();
                }
                ')' => {
                    if !in_paren || paren_count < 2 {
                        return Err(err("a parenthesised group needs at least two digits"));
                    }
                    in_paren = false;
                    group += 1;
                    open.clear();
                }
                '1'..='9' => {
                    let size = c.to_digit(10).unwrap() as usize;
                    let conj = matches!(chars.get(i + 1), Some('~') | Some(&OVERLINE));
                    if conj {
                        i += 1;
                        let pos = open
                            .iter()
                            .rposition(|&(s, _, _)| s == size)
                            .ok_or_else(|| err("conjugate digit without a partner"))?;
                        let (_, _, idx) = open.remove(pos);
                        blocks[idx].complex = true;
                    } else {
                        let g = group;
                        if !in_paren {
                            group += 1;
                        }
                        blocks.push(SegreBlock { size, complex: false, group: g });
                        open.push((size, g, blocks.len() - 1));
                    }
                    paren_count += 1;
                }
                _ => return Err(err("unexpected character")),
            }
            i += 1;
        }
        if in_paren {
            return Err(err("unclosed parenthesis"));
        }
        SegreType::from_blocks(blocks)
    }
}

fn to_human(machine: &str) -> String {
    let chars: Vec<char> = machine.chars().collect();
    let mut out = String::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if chars.get(i + 1) == Some(&'~') {
            out.push(' ');
            out.push(c);
            out.push(OVERLINE);
            i += 2;
            if chars.get(i).is_some_and(|n| n.is_ascii_digit() || *n == '(') {
                out.push(' ');
            }
            continue;
        }
        out.push(c);
        i += 1;
    }
    out
}

impl PartialEq for SegreType {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

impl Eq for SegreType {}

impl fmt::Display for SegreType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.machine())
    }
}

impl core::str::FromStr for SegreType {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SegreType::parse(s)
    }
}

/// Machine spelling and the neutral-signature-only marker.
const CATALOG: &[(&str, bool)] = &[
    ("{1111}", false),
    ("{112}", false),
    ("{22}", true),
    ("{13}", false),
    ("{4}", true),
    ("{11(11)}", false),
    ("{(11)(11)}", false),
    ("{1(111)}", false),
    ("{(1111)}", false),
    ("{1(12)}", false),
    ("{(11)2}", false),
    ("{(112)}", false),
    ("{(22)}", true),
    ("{(13)}", false),
    ("{1111~}", false),
    ("{211~}", true),
    ("{22~}", true),
    ("{11~11~}", true),
    ("{(11)11~}", false),
    ("{(11~11~)}", true),
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub segre: SegreType,
    /// Realisable only for metrics of signature (2, 2).
    pub neutral_only: bool,
}

/// The possible Segre types of a self-adjoint operator on a
/// four-dimensional space with an indefinite metric.
pub fn table1_catalog() -> Vec<CatalogEntry> {
    CATALOG
        .iter()
        .map(|(s, n)| CatalogEntry { segre: SegreType::parse(s).expect("catalog entries parse"), neutral_only: *n })
        .collect()
}

impl SegreType {
    pub fn in_catalog(&self) -> bool {
        table1_catalog().iter().any(|e| e.segre == *self)
    }

    pub fn is_neutral_only(&self) -> bool {
        table1_catalog().iter().any(|e| e.segre == *self && e.neutral_only)
    }
}

/// An eigenvalue, exact whenever the data allow it.
#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalue {
    /// A real root in the coefficient field.
    Exact(FieldScalar),
    /// `center + sign * sqrt(radius_squared)`, with `radius_squared > 0`
    /// not a square in the coefficient field.
    QuadraticReal { center: FieldScalar, radius_squared: FieldScalar, sign: i8 },
    /// `re + i*im` with `im > 0`, standing for the conjugate pair.
    /// `im` is present when `im^2` is a square in the coefficient field.
    Complex { re: FieldScalar, im: Option<FieldScalar>, im_squared: FieldScalar },
    /// Simple root of an irreducible factor of degree at least three.
    Approx { re: f64, im: f64 },
}

impl Eigenvalue {
    pub fn approx(&self) -> (f64, f64) {
        match self {
            Eigenvalue::Exact(x) => (x.to_f64(), 0.0),
            Eigenvalue::QuadraticReal { center, radius_squared, sign } => {
                (center.to_f64() + f64::from(*sign) * libm::sqrt(radius_squared.to_f64()), 0.0)
            }
            Eigenvalue::Complex { re, im_squared, .. } => (re.to_f64(), libm::sqrt(im_squared.to_f64())),
            Eigenvalue::Approx { re, im } => (*re, *im),
        }
    }

    pub fn is_complex(&self) -> bool {
        match self {
            Eigenvalue::Complex { .. } => true,
            Eigenvalue::Approx { im, .. } => *im != 0.0,
            _ => false,
        }
    }

    /// Exact rendering, or `None` for approximate values.
    pub fn exact_string(&self) -> Option<String> {
        match self {
            Eigenvalue::Exact(x) => Some(x.to_string()),
            Eigenvalue::QuadraticReal { center, radius_squared, sign } => {
                let s = if *sign > 0 { "+" } else { "-" };
                Some(format!("{center} {s} sqrt({radius_squared})"))
            }
            Eigenvalue::Complex { re, im, im_squared } => Some(match im {
                Some(v) => format!("{re} +- ({v})*i"),
                None => format!("{re} +- sqrt({im_squared})*i"),
            }),
            Eigenvalue::Approx { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenGroup {
    pub value: Eigenvalue,
    /// Algebraic multiplicity of one member (of the pair, for complex values).
    pub multiplicity: usize,
    /// Jordan block sizes, descending.
    pub blocks: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectralData {
    pub char_poly: UPoly,
    pub groups: Vec<EigenGroup>,
    pub segre: SegreType,
}

/// The radicand shared by the entries, or an error if two differ.
pub fn matrix_radicand(m: &Matrix) -> Result<u64, GeometryError> {
    let mut d = 0u64;
    for x in m.entries() {
        let here = x.radicand();
        if here != 0 {
            if d != 0 && d != here {
                return Err(crate::error::AlgebraError::MixedRadicals(d, here).into());
            }
            d = here;
        }
    }
    Ok(d)
}

/// Block sizes from `rank(N^k)`, `k = 0, 1, ...`, for a generalised
/// eigenspace of dimension `span`; `per` is 2 when `N` is a real quadratic
/// factor covering a pair of eigenvalues.
fn blocks_from_ranks(n_mat: &Matrix, span: usize, per: usize) -> Vec<usize> {
    let n = n_mat.rows();
    let target = n - span;
    let mut ranks = vec![n];
    let mut power = n_mat.clone();
    loop {
        let r = power.rank();
        ranks.push(r);
        if r == target || ranks.len() > n + 1 {
            break;
        }
        power = power.mul(n_mat);
    }
    // at_least[k] = number of blocks of size >= k+1
    let at_least: Vec<usize> = ranks.windows(2).map(|w| (w[0] - w[1]) / per).collect();
    let mut blocks = Vec::new();
    for k in 0..at_least.len() {
        let next = at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..at_least[k] - next {
            blocks.push(k + 1);
        }
    }
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    blocks
}

fn shifted(rho: &Matrix, lambda: &FieldScalar) -> Matrix {
    let n = rho.rows();
    rho.minus(&Matrix::identity(n).scaled(lambda))
}

/// Exact spectral analysis of a square matrix over `Q(sqrt(d))`.
///
/// `radicand` names the field used to test square roots of discriminants;
/// pass 0 to use the field of the entries.
pub fn analyze(rho: &Matrix, radicand: u64) -> Result<SpectralData, GeometryError> {
    let entries_d = matrix_radicand(rho)?;
    let d = match (entries_d, radicand) {
        (0, r) | (r, 0) => r,
        (a, b) if a == b => a,
        (a, b) => return Err(crate::error::AlgebraError::MixedRadicals(a, b).into()),
    };
    let cp = rho.char_poly();
    let mut groups: Vec<EigenGroup> = Vec::new();
    for (factor, m) in cp.square_free_decomposition() {
        let deg = factor.degree().unwrap_or(0);
        match deg {
            1 => {
                let lambda = -factor.coeff(0);
                let blocks = blocks_from_ranks(&shifted(rho, &lambda), m, 1);
                groups.push(EigenGroup { value: Eigenvalue::Exact(lambda), multiplicity: m, blocks });
            }
            2 => quadratic_groups(rho, &factor, m, d, &mut groups),
            _ if m == 1 => simple_factor_groups(rho, &factor, d, &mut groups),
            _ => {
                return Err(GeometryError::UnsupportedSegre(format!(
                    "repeated factor of degree {deg} in the characteristic polynomial"
                )))
            }
        }
    }
    groups.sort_by(|a, b| {
        let (ra, ia) = a.value.approx();
        let (rb, ib) = b.value.approx();
        (ia != 0.0).cmp(&(ib != 0.0)).then(ra.total_cmp(&rb)).then(ia.total_cmp(&ib))
    });
    let mut blocks = Vec::new();
    for (g, grp) in groups.iter().enumerate() {
        for &size in &grp.blocks {
            blocks.push(SegreBlock { size, complex: grp.value.is_complex(), group: g });
        }
    }
    let segre = SegreType::from_blocks(blocks)?;
    debug_assert_eq!(segre.dimension(), rho.rows());
    Ok(SpectralData { char_poly: cp, groups, segre })
}

/// Monic `x^2 + b x + c` raised to multiplicity `m`.
fn quadratic_groups(rho: &Matrix, f: &UPoly, m: usize, d: u64, out: &mut Vec<EigenGroup>) {
    let b = f.coeff(1);
    let c = f.coeff(0);
    let half = FieldScalar::from_ratio(1, 2);
    let center = -(&b * &half);
    // (x - center)^2 = center^2 - c
    let r2 = &(&center * &center) - &c;
    if let Some(root) = r2.sqrt_in(d) {
        for lambda in [&center + &root, &center - &root] {
            let blocks = blocks_from_ranks(&shifted(rho, &lambda), m, 1);
            out.push(EigenGroup { value: Eigenvalue::Exact(lambda), multiplicity: m, blocks });
        }
        return;
    }
    let blocks = blocks_from_ranks(&f.eval_matrix(rho), 2 * m, 2);
    if r2.signum() < 0 {
        let im_squared = -r2;
        let im = im_squared.sqrt_in(d);
        out.push(EigenGroup { value: Eigenvalue::Complex { re: center, im, im_squared }, multiplicity: m, blocks });
    } else {
        for sign in [1i8, -1] {
            out.push(EigenGroup {
                value: Eigenvalue::QuadraticReal { center: center.clone(), radius_squared: r2.clone(), sign },
                multiplicity: m,
                blocks: blocks.clone(),
            });
        }
    }
}

/// A square-free factor of degree at least three.
fn simple_factor_groups(rho: &Matrix, f: &UPoly, d: u64, out: &mut Vec<EigenGroup>) {
    let mut rest = f.clone();
    for r in f.roots_in_field(d) {
        rest = rest.div_rem(&UPoly::linear_root(&r)).0;
        out.push(EigenGroup { value: Eigenvalue::Exact(r), multiplicity: 1, blocks: vec![1] });
    }
    match rest.degree().unwrap_or(0) {
        0 => {}
        1 => {
            let r = -rest.monic().coeff(0);
            out.push(EigenGroup { value: Eigenvalue::Exact(r), multiplicity: 1, blocks: vec![1] });
        }
        2 => quadratic_groups(rho, &rest.monic(), 1, d, out),
        _ => {
            let real = rest.count_real_roots();
            let mut approx = rest.roots_approx(1e-12);
            approx.sort_by(|a, b| a.1.abs().total_cmp(&b.1.abs()));
            let (reals, complexes) = approx.split_at(real.min(approx.len()));
            for z in reals {
                out.push(EigenGroup { value: Eigenvalue::Approx { re: z.0, im: 0.0 }, multiplicity: 1, blocks: vec![1] });
            }
            for z in complexes.iter().filter(|z| z.1 > 0.0) {
                out.push(EigenGroup { value: Eigenvalue::Approx { re: z.0, im: z.1 }, multiplicity: 1, blocks: vec![1] });
            }
        }
    }
}

/// Exact Segre type of `rho`.
pub fn segre_type(rho: &Matrix) -> Result<SegreType, GeometryError> {
    Ok(analyze(rho, 0)?.segre)
}

// ---- floating-point cross-check -------------------------------------------

type C64 = (f64, f64);

fn c_sub(a: C64, b: C64) -> C64 {
    (a.0 - b.0, a.1 - b.1)
}
fn c_mul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}
fn c_div(a: C64, b: C64) -> C64 {
    let den = b.0 * b.0 + b.1 * b.1;
    ((a.0 * b.0 + a.1 * b.1) / den, (a.1 * b.0 - a.0 * b.1) / den)
}
fn c_abs(a: C64) -> f64 {
    libm::hypot(a.0, a.1)
}

fn c_matmul(a: &[C64], b: &[C64], n: usize) -> Vec<C64> {
    let mut out = vec![(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                let p = c_mul(a[i * n + k], b[k * n + j]);
                out[i * n + j].0 += p.0;
                out[i * n + j].1 += p.1;
            }
        }
    }
    out
}

fn c_rank(m: &[C64], n: usize, threshold: f64) -> usize {
    let mut a = m.to_vec();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..n).max_by(|&x, &y| c_abs(a[x * n + col]).total_cmp(&c_abs(a[y * n + col]))) else {
            break;
        };
        if c_abs(a[p * n + col]) <= threshold {
            continue;
        }
        for j in 0..n {
            a.swap(p * n + j, rank * n + j);
        }
        for i in rank + 1..n {
            let f = c_div(a[i * n + col], a[rank * n + col]);
            for j in col..n {
                a[i * n + j] = c_sub(a[i * n + j], c_mul(f, a[rank * n + j]));
            }
        }
        rank += 1;
    }
    rank
}

/// Segre type from floating-point eigenvalues and numeric ranks.
///
/// Roots closer than `tolerance` (relative to their size) are merged; two
/// roots that are not merged yet lie within ten times that distance make the
/// result indeterminate.
pub fn segre_type_numeric(rho: &Matrix, tolerance: f64) -> Result<SegreType, GeometryError> {
    let n = rho.rows();
    let roots = rho.char_poly().roots_approx(tolerance);
    let scale = |z: C64| 1.0 + c_abs(z);
    let mut cluster: Vec<usize> = (0..roots.len()).collect();
    for i in 0..roots.len() {
        for j in 0..i {
            let dist = c_abs(c_sub(roots[i], roots[j])) / scale(roots[i]);
            if dist <= tolerance {
                let (a, b) = (cluster[i], cluster[j]);
                for c in cluster.iter_mut() {
                    if *c == a {
                        *c = b;
                    }
                }
            }
        }
    }
    let mut separation = f64::INFINITY;
    for i in 0..roots.len() {
        for j in 0..i {
            if cluster[i] != cluster[j] {
                separation = separation.min(c_abs(c_sub(roots[i], roots[j])) / scale(roots[i]));
            }
        }
    }
    if separation < 10.0 * tolerance {
        return Err(GeometryError::Indeterminate(separation));
    }
    let mut members: BTreeMap<usize, Vec<C64>> = BTreeMap::new();
    for (i, c) in cluster.iter().enumerate() {
        members.entry(*c).or_default().push(roots[i]);
    }
    let base: Vec<C64> = rho.to_f64().into_iter().map(|x| (x, 0.0)).collect();
    let norm = base.iter().map(|z| c_abs(*z)).fold(1.0, f64::max);
    let mut blocks = Vec::new();
    for (g, ms) in members.values().enumerate() {
        let k = ms.len() as f64;
        let center = (ms.iter().map(|z| z.0).sum::<f64>() / k, ms.iter().map(|z| z.1).sum::<f64>() / k);
        let complex = c_abs((0.0, center.1)) > tolerance * scale(center);
        if complex && center.1 < 0.0 {
            continue;
        }
        let mut shifted_m = base.clone();
        for i in 0..n {
            shifted_m[i * n + i] = c_sub(shifted_m[i * n + i], center);
        }
        let mut ranks = vec![n];
        let mut power = shifted_m.clone();
        let threshold = libm::sqrt(tolerance) * norm;
        for step in 1..=ms.len() {
            ranks.push(c_rank(&power, n, threshold.powi(step as i32).max(threshold)));
            power = c_matmul(&power, &shifted_m, n);
        }
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0].saturating_sub(w[1])).collect();
        for s in 0..at_least.len() {
            let next = at_least.get(s + 1).copied().unwrap_or(0);
            for _ in 0..at_least[s].saturating_sub(next) {
                blocks.push(SegreBlock { size: s + 1, complex, group: g });
            }
        }
    }
    let t = SegreType::from_blocks(blocks)?;
    if t.dimension() != n {
        return Err(GeometryError::Indeterminate(separation));
    }
    Ok(t)
}
