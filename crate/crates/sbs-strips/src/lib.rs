//! Strips: the combinatorial stand-ins for string modules.
//!
//! A strip is a row of non-blank syllables occupying consecutive columns.
//! Column parity is meaningful: even columns are negative (letters there
//! are read inverted), odd columns positive. Adjacent columns `(even, odd)`
//! meet in a *peak* — both syllables flow out of partner slots over one
//! ground vertex — and columns `(odd, even)` meet in a *valley* — both
//! syllables arrive at partner slots, or the strip ends there with
//! boundary bit 1. Positions off either end count as blank.
//!
//! The canonical form of a strip materialises the stationary partner at
//! any peak that has a proper syllable against a blank (virtual syllables
//! keep their blank partners), normalises the first column to 0 or 1, and
//! then takes the lexicographically smaller of the strip and its
//! reflection. Canonical strips are what the syzygy machinery compares,
//! counts and reports.

use sbs_permdata::{PermissibleData, SlotId};
use sbs_quiver::{ArrowId, VertexId};
use sbs_syllables::Syllable;
use thiserror::Error;

mod strings;
pub use strings::{dual_strip, strip_from_string, StringGraph, StringGraphError};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum StripError {
    #[error("blank cell inside a strip at column {col}")]
    BlankCell { col: usize },
    #[error("invalid syllable at column {col}: {cell}")]
    InvalidCell { col: usize, cell: String },
    #[error("invalid peak at columns {left}..{right}: {msg}")]
    Peak { left: usize, right: usize, msg: String },
    #[error("invalid valley at columns {left}..{right}: {msg}")]
    Valley { left: usize, right: usize, msg: String },
    #[error("cannot parse word: {msg}")]
    WordSyntax { msg: String },
    #[error("run ({run}) is not allowed: {msg}")]
    Run { run: String, msg: String },
    #[error("the word is empty")]
    EmptyWord,
}

/// A validated strip. Equality, ordering and hashing are syntactic, so
/// compare canonical forms when module identity is meant.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strip {
    cells: Vec<Syllable>,
    first_col: usize,
}

impl Strip {
    /// The zero module.
    pub fn empty() -> Strip {
        Strip { cells: Vec::new(), first_col: 0 }
    }

    /// Validate a row of cells starting at the given column.
    pub fn from_cells(
        pd: &PermissibleData,
        cells: Vec<Syllable>,
        first_col: usize,
    ) -> Result<Strip, StripError> {
        validate(pd, &cells, first_col)?;
        Ok(Strip { cells, first_col })
    }

    pub fn cells(&self) -> &[Syllable] {
        &self.cells
    }

    pub fn first_col(&self) -> usize {
        self.first_col
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// A pair of virtual syllables and nothing else: carries no module.
    pub fn is_virtual_row(&self) -> bool {
        !self.cells.is_empty() && self.cells.iter().all(|s| s.is_virtual())
    }

    pub fn is_zero_module(&self) -> bool {
        self.is_empty() || self.is_virtual_row()
    }

    pub fn cell_at_col(&self, col: usize) -> Syllable {
        if col < self.first_col || col >= self.first_col + self.cells.len() {
            Syllable::Blank
        } else {
            self.cells[col - self.first_col]
        }
    }

    pub fn cells_with_cols(&self) -> impl Iterator<Item = (usize, Syllable)> + '_ {
        self.cells.iter().enumerate().map(|(k, &s)| (self.first_col + k, s))
    }

    /// Peak pairs `(L, R)` at columns `(2k, 2k+1)` covering the support,
    /// including the half-blank peaks at the ends.
    pub fn peaks(&self) -> Vec<(Syllable, Syllable)> {
        if self.cells.is_empty() {
            return Vec::new();
        }
        let last = self.first_col + self.cells.len() - 1;
        (self.first_col / 2..=last / 2)
            .map(|k| (self.cell_at_col(2 * k), self.cell_at_col(2 * k + 1)))
            .collect()
    }

    /// Dimension of the underlying module: letters plus one, or 0 for the
    /// empty strip and virtual rows.
    pub fn dim(&self) -> usize {
        if self.is_zero_module() {
            return 0;
        }
        self.cells.iter().map(|s| s.path_len()).sum::<usize>() + 1
    }

    /// Number of non-stationary proper cells (the word's maximal runs).
    pub fn width(&self) -> usize {
        self.cells.iter().filter(|s| s.is_proper() && s.path_len() >= 1).count()
    }

    /// Number of proper cells with boundary bit 0.
    pub fn interior_width(&self) -> usize {
        self.cells.iter().filter(|s| s.is_interior()).count()
    }

    /// Mirror image: same module, columns reversed.
    pub fn reflected(&self) -> Strip {
        let mut cells = self.cells.clone();
        cells.reverse();
        let first_col = if cells.is_empty() {
            0
        } else {
            (self.first_col + cells.len()) % 2
        };
        Strip { cells, first_col }
    }

    /// Materialise rounding stationaries, normalise the first column to its
    /// parity, and pick the smaller of the two mirror forms.
    pub fn canonical(&self, pd: &PermissibleData) -> Strip {
        if self.cells.is_empty() {
            return Strip::empty();
        }
        let mut cells = self.cells.clone();
        let mut first_col = self.first_col % 2;
        let front = cells[0];
        if front.is_proper() && first_col % 2 == 1 {
            let partner = pd.over().dagger(front.source().unwrap());
            cells.insert(0, Syllable::stationary(pd, partner));
            first_col = 0;
        }
        let back = *cells.last().unwrap();
        if back.is_proper() && (first_col + cells.len() - 1) % 2 == 0 {
            let partner = pd.over().dagger(back.source().unwrap());
            cells.push(Syllable::stationary(pd, partner));
        }
        let aligned = Strip { cells, first_col };
        let mirrored = aligned.reflected();
        debug_assert!(validate(pd, &aligned.cells, aligned.first_col).is_ok());
        aligned.min(mirrored)
    }

    /// The simple module at a ground vertex.
    pub fn simple(pd: &PermissibleData, v: VertexId) -> Strip {
        let i = SlotId(2 * v.0);
        let j = pd.over().dagger(i);
        Strip {
            cells: vec![Syllable::stationary(pd, i), Syllable::stationary(pd, j)],
            first_col: 0,
        }
        .canonical(pd)
    }

    /// The projective at a ground vertex, when it is a string module
    /// (`None` when the vertex carries a commutativity relation).
    pub fn projective(pd: &PermissibleData, v: VertexId) -> Option<Strip> {
        let i = SlotId(2 * v.0);
        let j = pd.over().dagger(i);
        if pd.is_pin_slot(i) || pd.is_pin_slot(j) {
            return None;
        }
        let cells = vec![
            Syllable::proper(pd, i, pd.a(i), 1).expect("a_i < a_i + b_i when b_i = 1"),
            Syllable::proper(pd, j, pd.a(j), 1).expect("a_j < a_j + b_j when b_j = 1"),
        ];
        Some(Strip { cells, first_col: 0 }.canonical(pd))
    }

    /// The radical quotient `P/soc P` of the pin projective at a vertex
    /// (`None` when the projective there is a string module).
    pub fn pin_quotient(pd: &PermissibleData, v: VertexId) -> Option<Strip> {
        let i = SlotId(2 * v.0);
        let j = pd.over().dagger(i);
        let cells = vec![
            Syllable::pin_boundary(pd, i)?,
            Syllable::pin_boundary(pd, j)?,
        ];
        Some(Strip { cells, first_col: 0 }.canonical(pd))
    }

    /// The injective at a ground vertex, when it is a string module
    /// (`None` when a commutativity relation points at the vertex).
    pub fn injective(pd: &PermissibleData, v: VertexId) -> Option<Strip> {
        let i = SlotId(2 * v.0);
        let j = pd.over().dagger(i);
        if pd.has_virtual(i) || pd.has_virtual(j) {
            return None;
        }
        let arriving = |slot: SlotId| {
            let len = pd.c(slot);
            (pd.over().shift(slot, -(len as isize)), len)
        };
        let (src_i, len_i) = arriving(i);
        let (src_j, len_j) = arriving(j);
        let mut cells = Vec::new();
        // Direct run into `i` on a positive column, inverse run into `j`
        // on the following negative column; degenerate runs vanish.
        let eps_i = if len_j == 0 { 1 } else { 0 };
        let eps_j = if len_i == 0 { 1 } else { 0 };
        if len_i > 0 {
            cells.push(Syllable::proper(pd, src_i, len_i, eps_i).expect("c_i within budget"));
        }
        if len_j > 0 {
            cells.push(Syllable::proper(pd, src_j, len_j, eps_j).expect("c_j within budget"));
        }
        if cells.is_empty() {
            return Some(Strip::simple(pd, v));
        }
        let first_col = if len_i > 0 { 1 } else { 2 };
        Some(Strip { cells, first_col }.canonical(pd))
    }

    /// Word positions, left to right: the base vertex of the first
    /// position and each letter with its orientation (`true` = inverted).
    /// `None` for strips that carry no module.
    pub fn spine(&self, pd: &PermissibleData) -> Option<(VertexId, Vec<(ArrowId, bool)>)> {
        if self.is_zero_module() {
            return None;
        }
        let over = pd.over();
        let mut base = None;
        let mut letters = Vec::new();
        for (col, cell) in self.cells_with_cols() {
            let d = cell.data()?;
            if cell.is_virtual() {
                continue;
            }
            let arrow = |k: usize| {
                let padded = over.arrow_at(over.shift(d.source, k as isize));
                debug_assert!(padded.0 < over.n_ground_arrows());
                padded
            };
            if col % 2 == 1 {
                base.get_or_insert(over.ground_vertex(d.source));
                for k in 0..d.len {
                    letters.push((arrow(k), false));
                }
            } else {
                base.get_or_insert(over.ground_vertex(over.shift(d.source, d.len as isize)));
                for k in (0..d.len).rev() {
                    letters.push((arrow(k), true));
                }
            }
        }
        Some((base?, letters))
    }

    /// Word form, e.g. `(a.b)(d.d.d)^-1`; stationary modules print as
    /// `e:<vertex>` and zero strips as `0`. Of the two reading directions
    /// the lexicographically smaller word is returned.
    pub fn word_string(&self, pd: &PermissibleData) -> String {
        let fwd = self.word_string_oriented(pd);
        let bwd = self.reflected().word_string_oriented(pd);
        fwd.min(bwd)
    }

    fn word_string_oriented(&self, pd: &PermissibleData) -> String {
        if self.is_zero_module() {
            return "0".to_string();
        }
        let over = pd.over();
        let mut out = String::new();
        for (col, cell) in self.cells_with_cols() {
            let d = match cell.data() {
                Some(d) if d.len >= 1 => d,
                _ => continue,
            };
            let path = over.path_name(d.source, d.len).expect("strip runs avoid phantoms");
            out.push('(');
            out.push_str(&path);
            out.push(')');
            if col % 2 == 0 {
                out.push_str("^-1");
            }
        }
        if out.is_empty() {
            let v = over.ground_vertex(self.cells[0].source().unwrap());
            return format!("e:{}", pd.over().padded().vertex_name(v));
        }
        out
    }

    /// Row form, e.g. `[e(s(b))- (a.b,0)+ (d.d.d,0)- e(s(c))+]`.
    pub fn display(&self, pd: &PermissibleData) -> String {
        let parts: Vec<String> = self
            .cells_with_cols()
            .map(|(col, s)| {
                let sign = if col % 2 == 0 { '-' } else { '+' };
                format!("{}{}", s.display(pd), sign)
            })
            .collect();
        format!("[{}]", parts.join(" "))
    }

    /// Parse a word such as `(a.b)(d)^-1(c)` into its canonical strip.
    /// The degenerate words `e:v` (the simple module at vertex `v`) and
    /// `0` (the zero module) are accepted too, so words round-trip.
    pub fn from_word(pd: &PermissibleData, text: &str) -> Result<Strip, StripError> {
        let trimmed = text.trim();
        if trimmed == "0" {
            return Ok(Strip::empty());
        }
        if let Some(name) = trimmed.strip_prefix("e:") {
            let v = pd.over().padded().vertex_by_name(name).ok_or_else(|| {
                StripError::WordSyntax { msg: format!("unknown vertex `{name}`") }
            })?;
            return Ok(Strip::simple(pd, v));
        }
        let groups = parse_groups(text)?;
        if groups.is_empty() {
            return Err(StripError::EmptyWord);
        }
        let over = pd.over();
        let padded = over.padded();
        // Merge adjacent groups of equal orientation into maximal runs: a
        // following direct group extends the path, a following inverse
        // group prepends to it (inverse runs are written in path order).
        let mut runs: Vec<(Vec<ArrowId>, bool)> = Vec::new();
        for (letters, inverse) in groups {
            let mut arrows = Vec::with_capacity(letters.len());
            for name in &letters {
                let x = padded
                    .arrow_by_name(name)
                    .filter(|x| x.0 < over.n_ground_arrows())
                    .ok_or_else(|| StripError::Run {
                        run: letters.join("."),
                        msg: format!("unknown arrow `{name}`"),
                    })?;
                arrows.push(x);
            }
            match runs.last_mut() {
                Some((prev, pi)) if *pi == inverse => {
                    if inverse {
                        arrows.extend(prev.drain(..));
                        *prev = arrows;
                    } else {
                        prev.extend(arrows);
                    }
                }
                _ => runs.push((arrows, inverse)),
            }
        }
        assemble_runs(pd, &runs)
    }
}

/// Build the canonical strip whose cells are the given maximal runs, in
/// reading order. A run is a ground path (in path order) plus an inversion
/// flag; adjacent runs must alternate orientation.
pub(crate) fn assemble_runs(
    pd: &PermissibleData,
    runs: &[(Vec<ArrowId>, bool)],
) -> Result<Strip, StripError> {
    let n_runs = runs.len();
    let mut cells = Vec::new();
    let first_col = if runs[0].1 { 2 } else { 1 };
    for (k, (arrows, inverse)) in runs.iter().enumerate() {
        let (slot, len) = lift_path(pd, arrows)?;
        let eps = if *inverse {
            usize::from(k == 0)
        } else {
            usize::from(k == n_runs - 1)
        };
        let cell = Syllable::proper(pd, slot, len, eps).ok_or(StripError::Run {
            run: path_label(pd, arrows),
            msg: "the run does not fit any syllable".into(),
        })?;
        cells.push(cell);
    }
    Ok(Strip::from_cells(pd, cells, first_col)?.canonical(pd))
}

pub(crate) fn path_label(pd: &PermissibleData, arrows: &[ArrowId]) -> String {
    let padded = pd.over().padded();
    arrows.iter().map(|&x| padded.arrow_name(x)).collect::<Vec<_>>().join(".")
}

fn validate(pd: &PermissibleData, cells: &[Syllable], first_col: usize) -> Result<(), StripError> {
    for (k, s) in cells.iter().enumerate() {
        let col = first_col + k;
        let d = s.data().ok_or(StripError::BlankCell { col })?;
        let ok = if s.is_virtual() {
            pd.has_virtual(d.source)
        } else {
            d.eps <= 1 && d.len + d.eps >= 1 && d.len < pd.a(d.source) + pd.b(d.source)
        };
        if !ok {
            return Err(StripError::InvalidCell { col, cell: s.display(pd) });
        }
    }
    let pair = |k: usize| -> (Syllable, Syllable) { (cells[k], cells[k + 1]) };
    for k in 0..cells.len().saturating_sub(1) {
        let col = first_col + k;
        let (l, r) = pair(k);
        if col % 2 == 0 {
            peak_ok(pd, l, r).map_err(|msg| StripError::Peak { left: col, right: col + 1, msg })?;
        } else {
            valley_ok(pd, l, r)
                .map_err(|msg| StripError::Valley { left: col, right: col + 1, msg })?;
        }
    }
    if let Some(&f) = cells.first() {
        let left = first_col.saturating_sub(1);
        if first_col % 2 == 1 {
            peak_ok(pd, Syllable::Blank, f)
                .map_err(|msg| StripError::Peak { left, right: first_col, msg })?;
        } else {
            valley_ok(pd, Syllable::Blank, f)
                .map_err(|msg| StripError::Valley { left, right: first_col, msg })?;
        }
    }
    if let Some(&l) = cells.last() {
        let col = first_col + cells.len() - 1;
        if col % 2 == 0 {
            peak_ok(pd, l, Syllable::Blank)
                .map_err(|msg| StripError::Peak { left: col, right: col + 1, msg })?;
        } else {
            valley_ok(pd, l, Syllable::Blank)
                .map_err(|msg| StripError::Valley { left: col, right: col + 1, msg })?;
        }
    }
    Ok(())
}

fn peak_ok(pd: &PermissibleData, l: Syllable, r: Syllable) -> Result<(), String> {
    match (l.data(), r.data()) {
        (None, _) | (_, None) => Ok(()),
        (Some(dl), Some(dr)) => {
            if l.is_virtual() || r.is_virtual() {
                return Err("a virtual syllable cannot share a peak".into());
            }
            if pd.over().dagger(dl.source) != dr.source {
                return Err(format!(
                    "sources {} and {} are not partner slots",
                    pd.over().slot_name(dl.source),
                    pd.over().slot_name(dr.source),
                ));
            }
            Ok(())
        }
    }
}

fn valley_ok(pd: &PermissibleData, l: Syllable, r: Syllable) -> Result<(), String> {
    match (l.data(), r.data()) {
        (None, None) => Ok(()),
        (None, Some(d)) | (Some(d), None) => {
            if d.eps == 1 {
                Ok(())
            } else {
                Err("an open valley needs boundary bit 1".into())
            }
        }
        (Some(dl), Some(dr)) => {
            if dl.eps != 0 || dr.eps != 0 {
                return Err("an interior valley needs boundary bits 0".into());
            }
            let tl = l.target(pd).unwrap();
            let tr = r.target(pd).unwrap();
            if pd.over().dagger(tl) != tr {
                return Err(format!(
                    "targets {} and {} are not partner slots",
                    pd.over().slot_name(tl),
                    pd.over().slot_name(tr),
                ));
            }
            Ok(())
        }
    }
}

fn parse_groups(text: &str) -> Result<Vec<(Vec<String>, bool)>, StripError> {
    let syntax = |msg: &str| StripError::WordSyntax { msg: msg.to_string() };
    let mut groups = Vec::new();
    let mut chars = text.chars().peekable();
    loop {
        while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
            chars.next();
        }
        match chars.next() {
            None => break,
            Some('(') => {}
            Some(c) => return Err(syntax(&format!("expected `(`, found {c:?}"))),
        }
        let mut letters = Vec::new();
        let mut cur = String::new();
        loop {
            match chars.next() {
                Some(c) if c.is_alphanumeric() || c == '_' || c == '~' => cur.push(c),
                Some('.') => {
                    if cur.is_empty() {
                        return Err(syntax("empty letter before `.`"));
                    }
                    letters.push(std::mem::take(&mut cur));
                }
                Some(')') => break,
                Some(c) => return Err(syntax(&format!("unexpected {c:?} inside a group"))),
                None => return Err(syntax("unterminated group")),
            }
        }
        if cur.is_empty() {
            return Err(syntax("empty group"));
        }
        letters.push(cur);
        let inverse = if chars.peek() == Some(&'^') {
            chars.next();
            if chars.next() != Some('-') || chars.next() != Some('1') {
                return Err(syntax("expected `^-1` after a group"));
            }
            true
        } else {
            false
        };
        groups.push((letters, inverse));
    }
    Ok(groups)
}

/// Resolve a ground path to its slot and length, rejecting paths whose
/// residue vanishes or that name a full commutativity component.
fn lift_path(pd: &PermissibleData, arrows: &[ArrowId]) -> Result<(SlotId, usize), StripError> {
    let over = pd.over();
    let padded = over.padded();
    let fail = |msg: String| StripError::Run { run: path_label(pd, arrows), msg };
    for w in arrows.windows(2) {
        if padded.target(w[0]) != padded.source(w[1]) {
            return Err(fail(format!(
                "`{}` does not compose with `{}`",
                padded.arrow_name(w[0]),
                padded.arrow_name(w[1]),
            )));
        }
    }
    let slot = over.slot_of_arrow(arrows[0]);
    for (k, &a) in arrows.iter().enumerate() {
        if over.arrow_at(over.shift(slot, k as isize)) != a {
            return Err(fail("the product vanishes in the algebra".into()));
        }
    }
    let len = arrows.len();
    if len > pd.a(slot) {
        return Err(fail("the product vanishes in the algebra".into()));
    }
    if len == pd.a(slot) && pd.is_pin_slot(slot) {
        return Err(fail("the run names a commutativity component".into()));
    }
    Ok((slot, len))
}
