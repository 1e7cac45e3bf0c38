use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{inverse, nullspace};
use crate::scalar::Scalar;

/// An element of a Hopf algebra as a dense coefficient vector over its basis.
pub type HopfElement<S> = Vec<S>;

/// A sparse element of `H ⊗ H`.
pub type Tensor2<S> = BTreeMap<(usize, usize), S>;

type Sparse<S> = Vec<(usize, S)>;

/// A finite-dimensional Hopf algebra given by structure constants on a
/// fixed basis.
#[derive(Clone, Debug)]
pub struct HopfAlgebra<S> {
    labels: Vec<String>,
    unit: usize,
    mult: Vec<Vec<Sparse<S>>>,
    comult: Vec<Vec<(usize, usize, S)>>,
    counit: Vec<S>,
    antipode: Vec<Sparse<S>>,
}

fn add_into<K: Ord, S: Scalar>(map: &mut BTreeMap<K, S>, k: K, c: S) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(k).or_insert_with(S::zero);
    *e = e.clone() + &c;
    if e.is_zero() {
        map.retain(|_, v| !v.is_zero());
    }
}

impl<S: Scalar> HopfAlgebra<S> {
    /// Assembles a Hopf algebra from structure constants. `unit` is the
    /// index of the basis element equal to `1`. Nothing is verified here;
    /// see [`HopfAlgebra::verify`].
    pub fn from_parts(
        labels: Vec<String>,
        unit: usize,
        mult: Vec<Vec<Vec<(usize, S)>>>,
        comult: Vec<Vec<(usize, usize, S)>>,
        counit: Vec<S>,
        antipode: Vec<Vec<(usize, S)>>,
    ) -> Result<Self> {
        let m = labels.len();
        let shape_ok = unit < m
            && mult.len() == m
            && mult.iter().all(|r| r.len() == m)
            && comult.len() == m
            && counit.len() == m
            && antipode.len() == m;
        if !shape_ok {
            return Err(Error::InvalidHopf("structure constants do not match the basis size".into()));
        }
        Ok(HopfAlgebra { labels, unit, mult, comult, counit, antipode })
    }

    /// The trivial Hopf algebra `𝕜`.
    pub fn trivial() -> Self {
        Self::group_algebra(vec!["1".into()], &[vec![0]]).expect("trivial group")
    }

    /// `𝕜G` from a multiplication table `table[g][h] = gh`.
    pub fn group_algebra(labels: Vec<String>, table: &[Vec<usize>]) -> Result<Self> {
        let m = labels.len();
        if table.len() != m || table.iter().any(|r| r.len() != m || r.iter().any(|&x| x >= m)) {
            return Err(Error::InvalidHopf("group table has the wrong shape".into()));
        }
        let e = (0..m)
            .find(|&g| (0..m).all(|h| table[g][h] == h && table[h][g] == h))
            .ok_or_else(|| Error::InvalidHopf("group table has no identity".into()))?;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidHopf(format!(
                            "group table is not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let mut inv = vec![0; m];
        for g in 0..m {
            inv[g] = (0..m)
                .find(|&h| table[g][h] == e)
                .ok_or_else(|| Error::InvalidHopf(format!("`{}` has no inverse", labels[g])))?;
        }
        let mult = (0..m).map(|g| (0..m).map(|h| vec![(table[g][h], S::one())]).collect()).collect();
        let comult = (0..m).map(|g| vec![(g, g, S::one())]).collect();
        let counit = vec![S::one(); m];
        let antipode = (0..m).map(|g| vec![(inv[g], S::one())]).collect();
        Ok(HopfAlgebra { labels, unit: e, mult, comult, counit, antipode })
    }

    /// `𝕜[ℤ/o₁ × ⋯ × ℤ/o_k]` with named generators; basis labels are
    /// products such as `a*b^2`, and `1` for the identity.
    pub fn abelian(names: &[String], orders: &[u32]) -> Result<Self> {
        if names.len() != orders.len() || orders.iter().any(|&o| o == 0) {
            return Err(Error::InvalidHopf("abelian group needs one positive order per generator".into()));
        }
        let mut elems: Vec<Vec<u32>> = vec![vec![]];
        for &o in orders {
            elems = elems.into_iter().flat_map(|e| (0..o).map(move |k| [e.clone(), vec![k]].concat())).collect();
        }
        let index: BTreeMap<Vec<u32>, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let table: Vec<Vec<usize>> = elems
            .iter()
            .map(|a| {
                elems
                    .iter()
                    .map(|b| {
                        let c: Vec<u32> = a.iter().zip(b).zip(orders).map(|((x, y), o)| (x + y) % o).collect();
                        index[&c]
                    })
                    .collect()
            })
            .collect();
        let labels = elems.iter().map(|e| monomial_label(names, e)).collect();
        Self::group_algebra(labels, &table)
    }

    /// `𝕜S_n`, basis labelled by one-line notation such as `[2,1,3]`.
    pub fn symmetric_group(n: usize) -> Result<Self> {
        let perms = permutations(n);
        let index: BTreeMap<Vec<usize>, usize> = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        // (στ)(k) = σ(τ(k))
        let table: Vec<Vec<usize>> =
            perms.iter().map(|s| perms.iter().map(|t| index[&t.iter().map(|&k| s[k]).collect::<Vec<_>>()]).collect()).collect();
        let labels = perms
            .iter()
            .map(|p| format!("[{}]", p.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",")))
            .collect();
        Self::group_algebra(labels, &table)
    }

    /// The semisimple Hopf algebra `H_{2n²}` on the basis `x^a y^b z^c`
    /// (`0 ≤ a, b < n`, `c ∈ {0, 1}`) with `x, y` grouplike of order `n`,
    /// `z x^a y^b = x^b y^a z`, `z² = (1/n) Σ q^{-ab} x^a y^b` and
    /// `Δ(z) = (1/n) Σ q^{-st} x^s z ⊗ y^t z`, where `q = ζ_n`.
    pub fn h2n2(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidHopf("H_{2n²} needs n ≥ 2".into()));
        }
        let q = |e: i64| {
            S::root_of_unity(n, e.rem_euclid(n as i64))
                .ok_or_else(|| Error::InvalidHopf(format!("the scalar field has no primitive {n}-th root of unity")))
        };
        let nn = n as usize;
        let idx = |a: usize, b: usize, c: usize| c * nn * nn + (a % nn) * nn + (b % nn);
        let m = 2 * nn * nn;
        let inv_n = S::from_i64(n as i64).inv().expect("n ≠ 0");
        let mut labels = vec![String::new(); m];
        for c in 0..2 {
            for a in 0..nn {
                for b in 0..nn {
                    let mut parts = Vec::new();
                    for (v, e) in [("x", a), ("y", b), ("z", c)] {
                        match e {
                            0 => {}
                            1 => parts.push(v.to_string()),
                            _ => parts.push(format!("{v}^{e}")),
                        }
                    }
                    labels[idx(a, b, c)] = if parts.is_empty() { "1".into() } else { parts.join("*") };
                }
            }
        }
        let mut z2 = Vec::new();
        for a in 0..nn {
            for b in 0..nn {
                z2.push(((a, b), q(-((a * b) as i64))? * &inv_n));
            }
        }
        let mut mult = vec![vec![Vec::new(); m]; m];
        for c1 in 0..2 {
            for a1 in 0..nn {
                for b1 in 0..nn {
                    for c2 in 0..2 {
                        for a2 in 0..nn {
                            for b2 in 0..nn {
                                // Move z past the second grouplike: z x^a y^b = x^b y^a z.
                                let (a, b) = if c1 == 1 { (a1 + b2, b1 + a2) } else { (a1 + a2, b1 + b2) };
                                let out = if c1 + c2 < 2 {
                                    vec![(idx(a, b, c1 + c2), S::one())]
                                } else {
                                    z2.iter().map(|((s, t), k)| (idx(a + s, b + t, 0), k.clone())).collect()
                                };
                                mult[idx(a1, b1, c1)][idx(a2, b2, c2)] = out;
                            }
                        }
                    }
                }
            }
        }
        let mut comult = vec![Vec::new(); m];
        let mut antipode = vec![Vec::new(); m];
        for a in 0..nn {
            for b in 0..nn {
                comult[idx(a, b, 0)] = vec![(idx(a, b, 0), idx(a, b, 0), S::one())];
                antipode[idx(a, b, 0)] = vec![(idx(nn - a, nn - b, 0), S::one())];
                let mut d = Vec::new();
                for s in 0..nn {
                    for t in 0..nn {
                        d.push((idx(a + s, b, 1), idx(a, b + t, 1), q(-((s * t) as i64))? * &inv_n));
                    }
                }
                comult[idx(a, b, 1)] = d;
                // S(x^a y^b z) = z x^{-a} y^{-b} = x^{-b} y^{-a} z
                antipode[idx(a, b, 1)] = vec![(idx(nn - b, nn - a, 1), S::one())];
            }
        }
        Ok(HopfAlgebra { labels, unit: idx(0, 0, 0), mult, comult, counit: vec![S::one(); m], antipode })
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn zero(&self) -> HopfElement<S> {
        vec![S::zero(); self.dim()]
    }

    pub fn basis_element(&self, k: usize) -> HopfElement<S> {
        let mut v = self.zero();
        v[k] = S::one();
        v
    }

    pub fn one(&self) -> HopfElement<S> {
        self.basis_element(self.unit)
    }

    /// Product of basis elements `h_i h_j`.
    pub fn mul_basis(&self, i: usize, j: usize) -> &[(usize, S)] {
        &self.mult[i][j]
    }

    pub fn mul(&self, a: &[S], b: &[S]) -> HopfElement<S> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let xy = x.clone() * y;
                for (k, c) in &self.mult[i][j] {
                    out[*k] = out[*k].clone() + &(xy.clone() * c);
                }
            }
        }
        out
    }

    /// `Δ(h_k)` as a list of `(i, j, c)` meaning `c · h_i ⊗ h_j`.
    pub fn comul_basis(&self, k: usize) -> &[(usize, usize, S)] {
        &self.comult[k]
    }

    pub fn comul(&self, h: &[S]) -> Tensor2<S> {
        let mut out = BTreeMap::new();
        for (k, x) in h.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (i, j, c) in &self.comult[k] {
                add_into(&mut out, (*i, *j), x.clone() * c);
            }
        }
        out
    }

    pub fn counit(&self, h: &[S]) -> S {
        h.iter().zip(&self.counit).fold(S::zero(), |acc, (x, e)| acc + &(x.clone() * e))
    }

    pub fn counit_basis(&self, k: usize) -> &S {
        &self.counit[k]
    }

    pub fn antipode(&self, h: &[S]) -> HopfElement<S> {
        let mut out = self.zero();
        for (k, x) in h.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, c) in &self.antipode[k] {
                out[*j] = out[*j].clone() + &(x.clone() * c);
            }
        }
        out
    }

    fn antipode_matrix(&self) -> Vec<Vec<S>> {
        let m = self.dim();
        let mut mat = vec![vec![S::zero(); m]; m];
        for (k, col) in self.antipode.iter().enumerate() {
            for (j, c) in col {
                mat[*j][k] = c.clone();
            }
        }
        mat
    }

    /// `S⁻¹(h)`; fails when the antipode is singular.
    pub fn antipode_inverse(&self, h: &[S]) -> Result<HopfElement<S>> {
        let inv = inverse(&self.antipode_matrix()).ok_or_else(|| Error::InvalidHopf("antipode is not invertible".into()))?;
        Ok(crate::linalg::mat_vec(&inv, h))
    }

    fn mul_tensor(&self, a: &Tensor2<S>, b: &Tensor2<S>) -> Tensor2<S> {
        let mut out = BTreeMap::new();
        for ((i1, j1), x) in a {
            for ((i2, j2), y) in b {
                let xy = x.clone() * y;
                for (k1, c1) in &self.mult[*i1][*i2] {
                    for (k2, c2) in &self.mult[*j1][*j2] {
                        add_into(&mut out, (*k1, *k2), xy.clone() * c1 * c2);
                    }
                }
            }
        }
        out
    }

    /// Checks the Hopf axioms on basis elements and returns the violations.
    pub fn verify(&self) -> Vec<String> {
        let m = self.dim();
        let mut bad = Vec::new();
        let l = &self.labels;
        let basis: Vec<HopfElement<S>> = (0..m).map(|k| self.basis_element(k)).collect();
        for i in 0..m {
            if self.mul(&self.one(), &basis[i]) != basis[i] || self.mul(&basis[i], &self.one()) != basis[i] {
                bad.push(format!("unit law fails for {}", l[i]));
            }
        }
        let prods: Vec<Vec<HopfElement<S>>> = (0..m).map(|i| (0..m).map(|j| self.mul(&basis[i], &basis[j])).collect()).collect();
        'assoc: for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if self.mul(&prods[i][j], &basis[k]) != self.mul(&basis[i], &prods[j][k]) {
                        bad.push(format!("associativity fails on ({}, {}, {})", l[i], l[j], l[k]));
                        break 'assoc;
                    }
                }
            }
        }
        let deltas: Vec<Tensor2<S>> = basis.iter().map(|b| self.comul(b)).collect();
        for k in 0..m {
            let mut left: BTreeMap<(usize, usize, usize), S> = BTreeMap::new();
            let mut right: BTreeMap<(usize, usize, usize), S> = BTreeMap::new();
            for ((i, j), c) in &deltas[k] {
                for (a, b, d) in &self.comult[*i] {
                    add_into(&mut left, (*a, *b, *j), c.clone() * d);
                }
                for (a, b, d) in &self.comult[*j] {
                    add_into(&mut right, (*i, *a, *b), c.clone() * d);
                }
            }
            if left != right {
                bad.push(format!("coassociativity fails on {}", l[k]));
            }
            let mut lc = self.zero();
            let mut rc = self.zero();
            let mut ls = self.zero();
            let mut rs = self.zero();
            for ((i, j), c) in &deltas[k] {
                lc[*j] = lc[*j].clone() + &(c.clone() * &self.counit[*i]);
                rc[*i] = rc[*i].clone() + &(c.clone() * &self.counit[*j]);
                let si = self.antipode(&basis[*i]);
                let sj = self.antipode(&basis[*j]);
                for (t, x) in self.mul(&si, &basis[*j]).into_iter().enumerate() {
                    ls[t] = ls[t].clone() + &(x * c);
                }
                for (t, x) in self.mul(&basis[*i], &sj).into_iter().enumerate() {
                    rs[t] = rs[t].clone() + &(x * c);
                }
            }
            if lc != basis[k] || rc != basis[k] {
                bad.push(format!("counit law fails on {}", l[k]));
            }
            let expect: HopfElement<S> = self.one().into_iter().map(|x| x * &self.counit[k]).collect();
            if ls != expect || rs != expect {
                bad.push(format!("antipode law fails on {}", l[k]));
            }
        }
        if self.counit[self.unit] != S::one() || deltas[self.unit] != BTreeMap::from([((self.unit, self.unit), S::one())]) {
            bad.push("Δ or ε is not unital".into());
        }
        // Multiplicativity on (basis, generator) pairs implies it everywhere.
        let gens = self.generating_set();
        'hom: for i in 0..m {
            for &j in &gens {
                if self.comul(&prods[i][j]) != self.mul_tensor(&deltas[i], &deltas[j]) {
                    bad.push(format!("Δ is not multiplicative on ({}, {})", l[i], l[j]));
                    break 'hom;
                }
                if self.counit(&prods[i][j]) != self.counit[i].clone() * &self.counit[j] {
                    bad.push(format!("ε is not multiplicative on ({}, {})", l[i], l[j]));
                    break 'hom;
                }
            }
        }
        bad
    }

    /// Basis elements generating `H` as an algebra, chosen greedily in basis order.
    pub fn generating_set(&self) -> Vec<usize> {
        let m = self.dim();
        let mut gens = Vec::new();
        let mut span = crate::linalg::Echelon::new();
        let mut members: Vec<HopfElement<S>> = Vec::new();
        let absorb = |v: HopfElement<S>, span: &mut crate::linalg::Echelon<S>, members: &mut Vec<HopfElement<S>>| {
            if span.insert(v.clone()) {
                members.push(v);
            }
        };
        absorb(self.one(), &mut span, &mut members);
        for k in 0..m {
            if span.contains(&self.basis_element(k)) {
                continue;
            }
            gens.push(k);
            // Close the span under right multiplication by the generators.
            let mut i = 0;
            absorb(self.basis_element(k), &mut span, &mut members);
            while i < members.len() {
                for &g in &gens {
                    let p = self.mul(&members[i], &self.basis_element(g));
                    absorb(p, &mut span, &mut members);
                }
                i += 1;
            }
            if span.rank() == m {
                break;
            }
        }
        gens
    }

    /// True when `S² = id`.
    pub fn antipode_is_involutive(&self) -> bool {
        (0..self.dim()).all(|k| {
            let b = self.basis_element(k);
            self.antipode(&self.antipode(&b)) == b
        })
    }

    /// A nonzero right integral `t` (`t h = ε(h) t`), unnormalised.
    pub fn right_integral(&self) -> Result<HopfElement<S>> {
        let m = self.dim();
        // Unknowns t_i; for each h_k and output coordinate l:
        // Σ_i t_i (h_i h_k)_l − ε(h_k) t_l = 0.
        let mut rows = Vec::new();
        for k in 0..m {
            let mut block = vec![vec![S::zero(); m]; m];
            for i in 0..m {
                for (l, c) in &self.mult[i][k] {
                    block[*l][i] = block[*l][i].clone() + c;
                }
                block[i][i] = block[i][i].clone() - &self.counit[k];
            }
            rows.extend(block);
        }
        let ns = nullspace(&rows, m);
        if ns.len() != 1 {
            return Err(Error::InvalidHopf(format!("space of right integrals has dimension {}", ns.len())));
        }
        Ok(ns.into_iter().next().unwrap())
    }

    /// A left integral `α` of the dual, `Σ h₁ ⟨α, h₂⟩ = ⟨α, h⟩ 1`,
    /// scaled so that `⟨α, t⟩ = 1` for the given right integral `t`.
    pub fn dual_left_integral(&self, t: &[S]) -> Result<Vec<S>> {
        let m = self.dim();
        let mut rows = Vec::new();
        for k in 0..m {
            let mut block = vec![vec![S::zero(); m]; m];
            for (i, j, c) in &self.comult[k] {
                block[*i][*j] = block[*i][*j].clone() + c;
            }
            block[self.unit][k] = block[self.unit][k].clone() - &S::one();
            rows.extend(block);
        }
        let ns = nullspace(&rows, m);
        if ns.len() != 1 {
            return Err(Error::InvalidHopf(format!("space of dual left integrals has dimension {}", ns.len())));
        }
        let alpha = ns.into_iter().next().unwrap();
        let pairing = pair(&alpha, t);
        let inv = pairing.inv().ok_or_else(|| Error::InvalidHopf("⟨α, t⟩ = 0".into()))?;
        Ok(alpha.into_iter().map(|x| x * &inv).collect())
    }
}

/// `⟨f, h⟩` for a functional given by its values on the basis.
pub fn pair<S: Scalar>(f: &[S], h: &[S]) -> S {
    f.iter().zip(h).fold(S::zero(), |acc, (x, y)| acc + &(x.clone() * y))
}

fn monomial_label(names: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = names
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(n, &e)| if e == 1 { n.clone() } else { format!("{n}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// A linear functional `H → 𝕜` given on the basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Character<S> {
    pub values: Vec<S>,
}

impl<S: Scalar> Character<S> {
    pub fn counit(h: &HopfAlgebra<S>) -> Self {
        Character { values: h.counit.clone() }
    }

    pub fn eval(&self, h: &[S]) -> S {
        pair(&self.values, h)
    }

    /// Basis pairs on which `χ(h_i h_j) ≠ χ(h_i) χ(h_j)`, plus a note when `χ(1) ≠ 1`.
    pub fn violations(&self, h: &HopfAlgebra<S>) -> Vec<String> {
        let mut bad = Vec::new();
        if self.values[h.unit] != S::one() {
            bad.push("χ(1) ≠ 1".to_string());
        }
        for i in 0..h.dim() {
            for j in 0..h.dim() {
                let lhs = self.eval(&h.mul(&h.basis_element(i), &h.basis_element(j)));
                if lhs != self.values[i].clone() * &self.values[j] {
                    bad.push(format!("χ({}·{}) ≠ χ({})χ({})", h.labels[i], h.labels[j], h.labels[i], h.labels[j]));
                }
            }
        }
        bad
    }

    /// `χ∘S`, the convolution inverse of a character.
    pub fn inverse(&self, h: &HopfAlgebra<S>) -> Self {
        Character { values: (0..h.dim()).map(|k| self.eval(&h.antipode(&h.basis_element(k)))).collect() }
    }

    pub fn is_trivial(&self, h: &HopfAlgebra<S>) -> bool {
        self.values == h.counit
    }

    /// Extends values on algebra generators of `H` to the whole basis by
    /// multiplicativity, walking products `b · g` that land on a multiple
    /// of a single basis element.
    pub fn from_generators(h: &HopfAlgebra<S>, gens: &[(usize, S)]) -> Result<Self> {
        let values = extend_by_generators(h, gens.to_vec(), S::one(), |a, b| a.clone() * b, |v, c| v * c)?;
        let chi = Character { values };
        let bad = chi.violations(h);
        if !bad.is_empty() {
            return Err(Error::InvalidHopf(format!("not a character: {}", bad[0])));
        }
        Ok(chi)
    }
}

/// Breadth-first extension of data known on generators of `H` to its
/// basis. `compose(value(b), value(g))` gives the value on `b g`; a product
/// equal to `c · h_k` assigns `scale(value, c⁻¹)` to `h_k`.
pub(crate) fn extend_by_generators<S, T, C, F>(
    h: &HopfAlgebra<S>,
    gens: Vec<(usize, T)>,
    unit_value: T,
    compose: C,
    scale: F,
) -> Result<Vec<T>>
where
    S: Scalar,
    T: Clone,
    C: Fn(&T, &T) -> T,
    F: Fn(T, &S) -> T,
{
    let m = h.dim();
    let mut known: Vec<Option<T>> = vec![None; m];
    known[h.unit] = Some(unit_value);
    let mut queue = std::collections::VecDeque::from([h.unit]);
    while let Some(b) = queue.pop_front() {
        for (g, gv) in &gens {
            let prod = &h.mult[b][*g];
            if prod.len() != 1 {
                continue;
            }
            let (k, c) = &prod[0];
            if known[*k].is_some() {
                continue;
            }
            let inv = c.inv().expect("nonzero structure constant");
            known[*k] = Some(scale(compose(known[b].as_ref().unwrap(), gv), &inv));
            queue.push_back(*k);
        }
    }
    known
        .into_iter()
        .enumerate()
        .map(|(k, v)| v.ok_or_else(|| Error::InvalidHopf(format!("`{}` is not reached from the generators", h.labels[k]))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Cyclotomic, Rational};
    use num_traits::{One, Zero};

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn group_algebras_pass_the_axioms() {
        let z2 = HopfAlgebra::<Rational>::abelian(&names(&["g"]), &[2]).unwrap();
        assert_eq!(z2.dim(), 2);
        assert!(z2.verify().is_empty());
        assert_eq!(z2.antipode(&z2.basis_element(1)), z2.basis_element(1));
        let k4 = HopfAlgebra::<Rational>::abelian(&names(&["a", "b"]), &[2, 2]).unwrap();
        assert_eq!(k4.labels(), &["1", "b", "a", "a*b"]);
        assert!(k4.verify().is_empty());
        let s3 = HopfAlgebra::<Rational>::symmetric_group(3).unwrap();
        assert_eq!(s3.dim(), 6);
        assert!(s3.verify().is_empty());
        assert!(s3.antipode_is_involutive());
    }

    #[test]
    fn group_integrals() {
        let s3 = HopfAlgebra::<Rational>::symmetric_group(3).unwrap();
        let t = s3.right_integral().unwrap();
        assert!(t.iter().all(|x| x == &t[0]));
        let alpha = s3.dual_left_integral(&t).unwrap();
        let e = s3.unit_index();
        for (k, a) in alpha.iter().enumerate() {
            assert_eq!(a.is_zero(), k != e);
        }
        assert_eq!(pair(&alpha, &t), Rational::one());
    }

    #[test]
    fn rejects_bad_tables() {
        let r = HopfAlgebra::<Rational>::group_algebra(names(&["a", "b"]), &[vec![0, 1], vec![1, 1]]);
        assert!(r.is_err());
    }

    #[test]
    fn h2n2_axioms_for_small_n() {
        for n in [2, 3] {
            let h = HopfAlgebra::<Cyclotomic>::h2n2(n).unwrap();
            assert_eq!(h.dim(), 2 * (n * n) as usize);
            assert_eq!(h.verify(), Vec::<String>::new(), "n = {n}");
            assert!(h.antipode_is_involutive());
            let z = h.index_of("z").unwrap();
            assert_eq!(h.counit_basis(z), &Cyclotomic::one());
            assert_eq!(h.antipode(&h.basis_element(z)), h.basis_element(z));
        }
    }

    #[test]
    fn h8_integral_is_the_product_of_averages() {
        let h = HopfAlgebra::<Rational>::h2n2(2).unwrap();
        let t = h.right_integral().unwrap();
        // (1+x)(1+y)(1+z) has every basis coefficient equal to 1.
        let mut expected = h.one();
        for g in ["x", "y", "z"] {
            let mut f = h.one();
            f[h.index_of(g).unwrap()] = Rational::one();
            expected = h.mul(&expected, &f);
        }
        assert!(expected.iter().all(|c| c == &Rational::one()));
        let c = t[0].clone();
        assert_eq!(t, expected.into_iter().map(|x| x * &c).collect::<Vec<_>>());
        let eps = h.counit(&expected_ones(&h));
        assert_eq!(eps, Rational::from_i64(8));
    }

    fn expected_ones(h: &HopfAlgebra<Rational>) -> Vec<Rational> {
        vec![Rational::one(); h.dim()]
    }

    #[test]
    fn characters() {
        let h = HopfAlgebra::<Cyclotomic>::h2n2(3).unwrap();
        let gens = [
            (h.index_of("x").unwrap(), Cyclotomic::zeta(3, 2)),
            (h.index_of("y").unwrap(), Cyclotomic::zeta(3, 2)),
            (h.index_of("z").unwrap(), -Cyclotomic::zeta(6, 4)),
        ];
        let chi = Character::from_generators(&h, &gens).unwrap();
        let inv = chi.inverse(&h);
        assert!(inv.violations(&h).is_empty());
        for k in 0..h.dim() {
            let prod = chi.values[k].clone() * &inv.values[k];
            if h.labels()[k].contains('z') {
                continue;
            }
            assert_eq!(prod, Cyclotomic::one());
        }
        assert!(Character::counit(&h).is_trivial(&h));
        let bad = Character::from_generators(&h, &[(h.index_of("x").unwrap(), Cyclotomic::integer(2))]);
        assert!(bad.is_err());
    }
}
