//! Divisor braid groups as central extensions of `H_1(Σ)^r` by the centre:
//! words, collected normal forms, the word problem and linking invariants.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::centre::{fingerprint, CentralElement, Centre, CentreError};
use crate::scheme::NegativeColourScheme;
use crate::zlinalg::{cokernel, FgAbGroup, IntMatrix, LinalgError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("index out of range at position {position}: {message}")]
    IndexOutOfRange { position: usize, message: String },
    #[error("operands come from different braid groups")]
    ContextMismatch,
    #[error("element is not central (its homology class is nonzero)")]
    NotCentral,
    #[error("collection is not allowable: {}", .0.join("; "))]
    NotAllowable(Vec<String>),
    #[error("expected the two-colour edge scheme")]
    WrongScheme,
    #[error(transparent)]
    Centre(#[from] CentreError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Closed oriented surface of genus `g` with the standard symplectic basis
/// `a_1..a_{2g}`, pairing `♯(a_ℓ, a_{ℓ'}) = J[ℓ, ℓ']`, `J = [[0, I], [−I, 0]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceContext {
    genus: usize,
}

impl SurfaceContext {
    pub fn new(genus: usize) -> Self {
        SurfaceContext { genus }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn cycles(&self) -> usize {
        2 * self.genus
    }

    /// `J[ℓ, ℓ']`, 1-based.
    pub fn pairing(&self, l: usize, lp: usize) -> i64 {
        let g = self.genus;
        if l <= g && lp == l + g {
            1
        } else if l > g && l <= 2 * g && lp + g == l {
            -1
        } else {
            0
        }
    }

    pub fn j_matrix(&self) -> IntMatrix {
        let n = self.cycles();
        let mut j = IntMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                j.set(a, b, self.pairing(a + 1, b + 1));
            }
        }
        j
    }
}

/// A divisor braid group `DB_k(Σ, Γ)`.
#[derive(Debug)]
pub struct BraidContext {
    scheme: NegativeColourScheme,
    surface: SurfaceContext,
    centre: Centre,
    id: u64,
}

impl BraidContext {
    pub fn new(scheme: &NegativeColourScheme, genus: usize) -> Arc<Self> {
        Arc::new(BraidContext {
            scheme: scheme.clone(),
            surface: SurfaceContext::new(genus),
            centre: Centre::new(scheme),
            id: fingerprint(&(scheme, genus)),
        })
    }

    pub fn scheme(&self) -> &NegativeColourScheme {
        &self.scheme
    }

    pub fn surface(&self) -> SurfaceContext {
        self.surface
    }

    pub fn centre(&self) -> &Centre {
        &self.centre
    }

    fn a_index(&self, colour: usize, cycle: usize) -> usize {
        (colour - 1) * self.surface.cycles() + (cycle - 1)
    }

    fn a_len(&self) -> usize {
        self.scheme.r() * self.surface.cycles()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `a_{λ,ℓ}`
    A { colour: usize, cycle: usize },
    /// `b_{λ,μ}` with `λ < μ` an edge.
    B { lo: usize, hi: usize },
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::A { colour, cycle } => write!(f, "a[{colour},{cycle}]"),
            Generator::B { lo, hi } => write!(f, "b[{lo},{hi}]"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.generator)
        } else {
            write!(f, "{}^{}", self.generator, self.exponent)
        }
    }
}

#[derive(Clone, Debug)]
pub struct BraidWord {
    context: Arc<BraidContext>,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn empty(context: &Arc<BraidContext>) -> Self {
        BraidWord {
            context: context.clone(),
            letters: Vec::new(),
        }
    }

    /// Builds a word from letters, validating indices and erasing `b` letters
    /// on non-edges and zero exponents.
    pub fn from_letters(context: &Arc<BraidContext>, letters: &[Letter]) -> Result<Self, BraidError> {
        let mut out = Vec::with_capacity(letters.len());
        for (i, l) in letters.iter().enumerate() {
            let generator = match l.generator {
                Generator::A { colour, cycle } => {
                    check_a(context, colour, cycle, i)?;
                    l.generator
                }
                Generator::B { lo, hi } => {
                    check_colour(context, lo, i)?;
                    check_colour(context, hi, i)?;
                    let (lo, hi) = (lo.min(hi), lo.max(hi));
                    if !context.scheme.has_edge(lo, hi) {
                        continue;
                    }
                    Generator::B { lo, hi }
                }
            };
            if l.exponent != 0 {
                out.push(Letter {
                    generator,
                    exponent: l.exponent,
                });
            }
        }
        Ok(BraidWord {
            context: context.clone(),
            letters: out,
        })
    }

    pub fn context(&self) -> &Arc<BraidContext> {
        &self.context
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Reversed letters with negated exponents.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            context: self.context.clone(),
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    exponent: -l.exponent,
                })
                .collect(),
        }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        same(&self.context, &other.context)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            context: self.context.clone(),
            letters,
        })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn same(a: &Arc<BraidContext>, b: &Arc<BraidContext>) -> Result<(), BraidError> {
    if Arc::ptr_eq(a, b) || a.id == b.id {
        Ok(())
    } else {
        Err(BraidError::ContextMismatch)
    }
}

fn check_colour(ctx: &BraidContext, colour: usize, position: usize) -> Result<(), BraidError> {
    if colour == 0 || colour > ctx.scheme.r() {
        return Err(BraidError::IndexOutOfRange {
            position,
            message: format!("colour {colour} not in 1..={}", ctx.scheme.r()),
        });
    }
    Ok(())
}

fn check_a(ctx: &BraidContext, colour: usize, cycle: usize, position: usize) -> Result<(), BraidError> {
    check_colour(ctx, colour, position)?;
    let n = ctx.surface.cycles();
    if cycle == 0 || cycle > n {
        return Err(BraidError::IndexOutOfRange {
            position,
            message: if n == 0 {
                format!("cycle {cycle}: genus 0 has no a-generators")
            } else {
                format!("cycle {cycle} not in 1..={n}")
            },
        });
    }
    Ok(())
}

/// A parsed word plus the `b` letters that were erased because they name non-edges.
#[derive(Clone, Debug)]
pub struct ParsedWord {
    pub word: BraidWord,
    pub dropped: Vec<(usize, usize)>,
}

struct Lexer<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl Lexer<'_> {
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |c| c.0)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> BraidError {
        BraidError::Syntax {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), BraidError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(match self.peek() {
                Some(found) => format!("expected `{c}`, found `{found}`"),
                None => format!("expected `{c}`, found end of input"),
            }))
        }
    }

    fn integer(&mut self, signed: bool) -> Result<i64, BraidError> {
        self.skip_ws();
        let start = self.pos;
        if signed && matches!(self.peek(), Some('-' | '+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        if s.is_empty() || s == "-" || s == "+" {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        s.parse().map_err(|_| {
            self.pos = start;
            self.error(format!("integer `{s}` out of range"))
        })
    }
}

/// Parses `a[λ,ℓ]` / `b[λ,μ]` tokens with optional `^<int>` exponents.
pub fn parse_word(text: &str, context: &Arc<BraidContext>) -> Result<ParsedWord, BraidError> {
    let mut lx = Lexer {
        chars: text.char_indices().collect(),
        pos: 0,
        text,
    };
    let mut letters = Vec::new();
    let mut dropped = Vec::new();
    loop {
        lx.skip_ws();
        let Some(c) = lx.peek() else { break };
        let start = lx.offset();
        if c != 'a' && c != 'b' {
            return Err(lx.error(format!("expected `a[` or `b[`, found `{c}`")));
        }
        lx.pos += 1;
        lx.expect('[')?;
        let i = lx.integer(false)?;
        lx.expect(',')?;
        let j = lx.integer(false)?;
        lx.expect(']')?;
        let mut exponent = 1;
        let save = lx.pos;
        lx.skip_ws();
        if lx.peek() == Some('^') {
            lx.pos += 1;
            exponent = lx.integer(true)?;
        } else {
            lx.pos = save;
        }
        let (i, j) = (i as usize, j as usize);
        if c == 'a' {
            check_a(context, i, j, start)?;
            if exponent != 0 {
                letters.push(Letter {
                    generator: Generator::A { colour: i, cycle: j },
                    exponent,
                });
            }
        } else {
            check_colour(context, i, start)?;
            check_colour(context, j, start)?;
            let (lo, hi) = (i.min(j), i.max(j));
            if !context.scheme.has_edge(lo, hi) {
                dropped.push((lo, hi));
            } else if exponent != 0 {
                letters.push(Letter {
                    generator: Generator::B { lo, hi },
                    exponent,
                });
            }
        }
    }
    Ok(ParsedWord {
        word: BraidWord {
            context: context.clone(),
            letters,
        },
        dropped,
    })
}

/// `(M, δ)`: exponent sums `M ∈ Z^{r×2g}` of the `a` generators in collected
/// order and the central part `δ` in the centre.
#[derive(Clone, Debug)]
pub struct NormalForm {
    context: Arc<BraidContext>,
    m: Vec<BigInt>,
    central: CentralElement,
}

impl PartialEq for NormalForm {
    fn eq(&self, other: &Self) -> bool {
        self.context.id == other.context.id && self.m == other.m && self.central == other.central
    }
}

impl Eq for NormalForm {}

impl NormalForm {
    pub fn identity(context: &Arc<BraidContext>) -> Self {
        NormalForm {
            context: context.clone(),
            m: vec![BigInt::zero(); context.a_len()],
            central: context.centre.zero(),
        }
    }

    pub fn context(&self) -> &Arc<BraidContext> {
        &self.context
    }

    pub fn central(&self) -> &CentralElement {
        &self.central
    }

    pub fn exponent(&self, colour: usize, cycle: usize) -> &BigInt {
        &self.m[self.context.a_index(colour, cycle)]
    }

    pub fn is_central(&self) -> bool {
        self.m.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_central() && self.central.coefficients().iter().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> Value {
        let m = hurewicz(self);
        let canonical = self
            .context
            .centre
            .coordinates(&self.central)
            .expect("own context");
        json!({
            "M": m.to_rows().iter().map(|r| r.iter().map(big_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "central": self.central.coefficients().iter().map(big_json).collect::<Vec<_>>(),
            "central_canonical": canonical.iter().map(big_json).collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn big_json(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => Value::from(v),
        Err(_) => Value::from(x.to_string()),
    }
}

/// `c(M1, M2)` on the edge `{λ < μ}`: `M1[μ]ᵀ J M2[λ]`.
pub fn cocycle(context: &BraidContext, m1: &[BigInt], m2: &[BigInt]) -> Vec<BigInt> {
    let s = context.surface;
    let n = s.cycles();
    context
        .scheme
        .edges()
        .iter()
        .map(|&(lam, mu)| {
            let mut c = BigInt::zero();
            for l in 1..=n {
                let x = &m1[context.a_index(mu, l)];
                if x.is_zero() {
                    continue;
                }
                for lp in 1..=n {
                    let j = s.pairing(l, lp);
                    if j != 0 {
                        c += x * &m2[context.a_index(lam, lp)] * j;
                    }
                }
            }
            c
        })
        .collect()
}

fn add_into(acc: &mut [BigInt], v: &[BigInt]) {
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

pub fn normal_form(word: &BraidWord) -> NormalForm {
    let ctx = &word.context;
    let mut m = vec![BigInt::zero(); ctx.a_len()];
    let mut delta = vec![BigInt::zero(); ctx.scheme.edge_count()];
    for letter in &word.letters {
        match letter.generator {
            Generator::A { colour, cycle } => {
                let mut step = vec![BigInt::zero(); ctx.a_len()];
                step[ctx.a_index(colour, cycle)] = BigInt::from(letter.exponent);
                add_into(&mut delta, &cocycle(ctx, &m, &step));
                add_into(&mut m, &step);
            }
            Generator::B { lo, hi } => {
                let e = ctx.scheme.edge_index(lo, hi).expect("validated edge");
                delta[e] += letter.exponent;
            }
        }
    }
    NormalForm {
        central: ctx.centre.element(&delta).expect("edge-length vector"),
        context: ctx.clone(),
        m,
    }
}

pub fn multiply(x: &NormalForm, y: &NormalForm) -> Result<NormalForm, BraidError> {
    same(&x.context, &y.context)?;
    let ctx = &x.context;
    let mut delta: Vec<BigInt> = x
        .central
        .coefficients()
        .iter()
        .zip(y.central.coefficients())
        .map(|(a, b)| a + b)
        .collect();
    add_into(&mut delta, &cocycle(ctx, &x.m, &y.m));
    Ok(NormalForm {
        m: x.m.iter().zip(&y.m).map(|(a, b)| a + b).collect(),
        central: ctx.centre.element(&delta)?,
        context: ctx.clone(),
    })
}

/// `(−M, −δ + c(M, M))`.
pub fn invert(x: &NormalForm) -> NormalForm {
    let ctx = &x.context;
    let mut delta: Vec<BigInt> = x.central.coefficients().iter().map(|a| -a).collect();
    add_into(&mut delta, &cocycle(ctx, &x.m, &x.m));
    NormalForm {
        m: x.m.iter().map(|a| -a).collect(),
        central: ctx.centre.element(&delta).expect("edge-length vector"),
        context: ctx.clone(),
    }
}

pub fn words_equal(u: &BraidWord, v: &BraidWord) -> Result<bool, BraidError> {
    same(&u.context, &v.context)?;
    Ok(normal_form(u) == normal_form(v))
}

/// The image in `H_1(Σ; Z)^{⊕r}` as an `r × 2g` matrix.
pub fn hurewicz(x: &NormalForm) -> IntMatrix {
    let r = x.context.scheme.r();
    let n = x.context.surface.cycles();
    let mut out = IntMatrix::zeros(r, n);
    for lam in 0..r {
        for l in 0..n {
            out.set(lam, l, x.m[lam * n + l].clone());
        }
    }
    out
}

/// `Y_{λ,μ} ∈ K` for ordered colour pairs; missing pairs are zero.
#[derive(Clone, Debug)]
pub struct AllowableCollection {
    target: FgAbGroup,
    values: BTreeMap<(usize, usize), Vec<BigInt>>,
}

impl AllowableCollection {
    pub fn new(target: FgAbGroup) -> Self {
        AllowableCollection {
            target,
            values: BTreeMap::new(),
        }
    }

    /// `Y` with `K = Z_n` from integer values.
    pub fn cyclic(n: u64, values: &[((usize, usize), i64)]) -> Self {
        let mut y = AllowableCollection::new(cokernel(&IntMatrix::from_i64(1, 1, &[n as i64])));
        for &(pair, v) in values {
            y.set(pair.0, pair.1, vec![BigInt::from(v)]).expect("length 1");
        }
        y
    }

    /// `K = D_k(Γ)`, `Y_{λ,μ} = Y_{μ,λ}` = the class of `b_{λ,μ}`.
    pub fn universal(scheme: &NegativeColourScheme) -> Self {
        let centre = Centre::new(scheme);
        let mut y = AllowableCollection::new(centre.group().clone());
        for (e, &(a, b)) in scheme.edges().iter().enumerate() {
            let mut v = vec![BigInt::zero(); scheme.edge_count()];
            v[e] = BigInt::one();
            y.values.insert((a, b), v.clone());
            y.values.insert((b, a), v);
        }
        y
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn set(&mut self, lam: usize, mu: usize, value: Vec<BigInt>) -> Result<(), BraidError> {
        if value.len() != self.target.ambient() {
            return Err(LinalgError::DimensionMismatch {
                expected: self.target.ambient(),
                found: value.len(),
            }
            .into());
        }
        self.values.insert((lam, mu), value);
        Ok(())
    }

    pub fn get(&self, lam: usize, mu: usize) -> Vec<BigInt> {
        self.values
            .get(&(lam, mu))
            .cloned()
            .unwrap_or_else(|| vec![BigInt::zero(); self.target.ambient()])
    }

    fn combination<'a>(&self, terms: impl Iterator<Item = (u64, Vec<BigInt>)> + 'a) -> Vec<BigInt> {
        let mut acc = vec![BigInt::zero(); self.target.ambient()];
        for (k, v) in terms {
            for (a, b) in acc.iter_mut().zip(&v) {
                *a += b * k;
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllowabilityReport {
    pub allowable: bool,
    pub violations: Vec<String>,
}

/// Checks (A1) row and column sums and (A2) vanishing off edges, exactly in `K`.
pub fn check_allowable(y: &AllowableCollection, scheme: &NegativeColourScheme) -> AllowabilityReport {
    let r = scheme.r();
    let zero = |v: &[BigInt]| y.target.is_zero_element(v).unwrap_or(false);
    let mut violations = Vec::new();
    for &(a, b) in y.values.keys() {
        if a == 0 || b == 0 || a > r || b > r {
            violations.push(format!("pair ({a},{b}) is outside 1..={r}"));
        }
    }
    for mu in 1..=r {
        let col = y.combination((1..=r).map(|lam| (scheme.degree(lam), y.get(lam, mu))));
        if !zero(&col) {
            violations.push(format!("A1: sum over λ of k_λ Y[λ,{mu}] is nonzero"));
        }
    }
    for lam in 1..=r {
        let row = y.combination((1..=r).map(|mu| (scheme.degree(mu), y.get(lam, mu))));
        if !zero(&row) {
            violations.push(format!("A1: sum over μ of k_μ Y[{lam},μ] is nonzero"));
        }
    }
    for (&(a, b), v) in &y.values {
        if a != 0 && b != 0 && a <= r && b <= r && !scheme.has_edge(a, b) && !zero(v) {
            violations.push(format!("A2: Y[{a},{b}] is nonzero but {{{a},{b}}} is not an edge"));
        }
    }
    AllowabilityReport {
        allowable: violations.is_empty(),
        violations,
    }
}

fn theta_on_edges(y: &AllowableCollection, scheme: &NegativeColourScheme, v: &[BigInt]) -> Vec<BigInt> {
    y.combination(
        scheme
            .edges()
            .iter()
            .zip(v)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(a, b), c)| (1, y.get(a, b).iter().map(|x| x * c).collect())),
    )
}

/// `θ_Y(x)` as a canonical ambient representative in `K`.
pub fn theta(y: &AllowableCollection, x: &NormalForm) -> Result<Vec<BigInt>, BraidError> {
    if !x.is_central() {
        return Err(BraidError::NotCentral);
    }
    let scheme = x.context.scheme();
    let report = check_allowable(y, scheme);
    if !report.allowable {
        return Err(BraidError::NotAllowable(report.violations));
    }
    let presentation = x.context.centre.presentation();
    for mu in 1..=scheme.r() {
        let image = theta_on_edges(y, scheme, &presentation.relation(mu));
        if !y.target.is_zero_element(&image)? {
            return Err(BraidError::NotAllowable(vec![format!(
                "θ does not vanish on the relation of colour {mu}"
            )]));
        }
    }
    let image = theta_on_edges(y, scheme, x.central.coefficients());
    Ok(y.target.coset_canonical(&image)?)
}

/// `L(w) ∈ Z_{gcd(k_1, k_2)}` for the two-colour edge scheme.
pub fn two_colour_link_invariant(w: &BraidWord) -> Result<BigInt, BraidError> {
    let scheme = w.context.scheme();
    if scheme.r() != 2 || scheme.edges() != [(1, 2)] {
        return Err(BraidError::WrongScheme);
    }
    let g = scheme.degree(1).gcd(&scheme.degree(2));
    let y = AllowableCollection::cyclic(g, &[((1, 2), 1), ((2, 1), 1)]);
    let value = theta(&y, &normal_form(w))?;
    Ok(value[0].mod_floor(&BigInt::from(g)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Commuting,
    NonEdge,
    Symmetry,
    Degree,
    CentralA,
    Commutator,
}

/// Every defining relator of the presentation for this context, as text
/// that should normalize to the identity.
pub fn defining_relators(context: &BraidContext) -> Vec<(RelationKind, String)> {
    let r = context.scheme.r();
    let n = context.surface.cycles();
    let pairs: Vec<(usize, usize)> = (1..=r)
        .flat_map(|a| (1..=r).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    let mut out = Vec::new();
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            out.push((
                RelationKind::Commuting,
                format!("b[{a},{b}] b[{c},{d}] b[{a},{b}]^-1 b[{c},{d}]^-1"),
            ));
        }
        if !context.scheme.has_edge(a, b) {
            out.push((RelationKind::NonEdge, format!("b[{a},{b}]")));
        }
        out.push((RelationKind::Symmetry, format!("b[{a},{b}] b[{b},{a}]^-1")));
        for nu in 1..=r {
            for l in 1..=n {
                out.push((
                    RelationKind::CentralA,
                    format!("b[{a},{b}] a[{nu},{l}] b[{a},{b}]^-1 a[{nu},{l}]^-1"),
                ));
            }
        }
    }
    for lam in 1..=r {
        let word: Vec<String> = (1..=r)
            .filter(|&mu| mu != lam)
            .map(|mu| format!("b[{lam},{mu}]^{}", context.scheme.degree(mu)))
            .collect();
        out.push((RelationKind::Degree, word.join(" ")));
    }
    for lam in 1..=r {
        for mu in 1..=r {
            for l in 1..=n {
                for lp in 1..=n {
                    let mut w = format!("a[{lam},{l}] a[{mu},{lp}] a[{lam},{l}]^-1 a[{mu},{lp}]^-1");
                    let j = context.surface.pairing(l, lp);
                    if lam != mu && j != 0 {
                        w.push_str(&format!(" b[{lam},{mu}]^{}", -j));
                    }
                    out.push((RelationKind::Commutator, w));
                }
            }
        }
    }
    out
}
