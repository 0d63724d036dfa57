#include "logrel/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace logrel {

std::optional<int> Matrix::value_index(std::string_view vname) const {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] == vname) return static_cast<int>(i);
  }
  return std::nullopt;
}

void Matrix::validate() const {
  if (values.empty()) throw Error("matrix '" + name + "' has no values");
  if (values.size() > 64) throw Error("matrix '" + name + "' has too many values");
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (values[i] == values[j]) {
        throw Error("matrix '" + name + "' repeats value '" + values[i] + "'");
      }
    }
  }
  if (designated.size() != values.size()) {
    throw Error("matrix '" + name + "': designated flags misaligned");
  }
  if (std::find(designated.begin(), designated.end(), true) == designated.end()) {
    throw Error("matrix '" + name + "' designates no value");
  }
  if (tables.size() != sig.size()) {
    throw Error("matrix '" + name + "': one table per connective required");
  }
  std::size_t n = values.size();
  for (std::size_t c = 0; c < tables.size(); ++c) {
    const Connective& conn = sig.connectives()[c];
    const Table& t = tables[c];
    if (t.arity != conn.arity) {
      throw Error("matrix '" + name + "': table arity mismatch for '" + conn.name + "'");
    }
    std::size_t want = t.arity == 0 ? 1 : (t.arity == 1 ? n : n * n);
    if (t.entries.size() != want) {
      throw Error("matrix '" + name + "': table for '" + conn.name + "' is not total");
    }
    for (std::uint8_t e : t.entries) {
      if (e >= n) {
        throw Error("matrix '" + name + "': table for '" + conn.name +
                    "' has an out-of-range value");
      }
    }
  }
}

std::uint8_t Valuation::at(int atom) const {
  if (atom < 0 || atom >= kMaxAtoms || values_[atom] < 0) {
    throw CoverageError("valuation does not cover atom '" +
                        (atom >= 0 && atom < kMaxAtoms ? atom_name(atom) : "?") + "'");
  }
  return static_cast<std::uint8_t>(values_[atom]);
}

namespace {

// store-connective index -> matrix table index (-1: uncovered)
std::vector<int> table_map(const Matrix& m, const Signature& store_sig) {
  std::vector<int> map(store_sig.size(), -1);
  for (std::size_t i = 0; i < store_sig.size(); ++i) {
    const Connective& c = store_sig.connectives()[i];
    auto idx = m.sig.index_of(c.name);
    if (idx && m.sig.connectives()[static_cast<std::size_t>(*idx)].arity == c.arity) {
      map[i] = *idx;
    }
  }
  return map;
}

std::uint8_t eval_rec(const Matrix& m, const std::vector<int>& tmap, const Valuation& v,
                      const FormulaStore& store, FormulaId id) {
  const FormulaNode& n = store.node(id);
  switch (n.kind) {
    case NodeKind::Atom:
      return v.at(n.sym);
    case NodeKind::Meta:
      throw Error("cannot evaluate a metavariable");
    case NodeKind::Apply: {
      int t = tmap[n.sym];
      if (t < 0) {
        throw CoverageError("matrix '" + m.name + "' has no table for connective '" +
                            store.signature().connectives()[n.sym].name + "'");
      }
      int arity = m.sig.connectives()[static_cast<std::size_t>(t)].arity;
      if (arity == 0) return m.apply0(t);
      std::uint8_t a = eval_rec(m, tmap, v, store, n.lhs);
      if (arity == 1) return m.apply1(t, a);
      std::uint8_t b = eval_rec(m, tmap, v, store, n.rhs);
      return m.apply2(t, a, b);
    }
  }
  throw Error("corrupt formula node");
}
}  // namespace

std::uint8_t evaluate(const Matrix& m, const Valuation& v, Formula f) {
  if (f.is_null()) throw Error("cannot evaluate a null formula");
  std::vector<int> tmap = table_map(m, f.store()->signature());
  return eval_rec(m, tmap, v, *f.store(), f.id());
}

bool matrix_validates(const Matrix& m, const Sequent& s) {
  const FormulaStore& store = *s.succedent().store();
  std::vector<int> tmap = table_map(m, store.signature());
  std::vector<int> atoms = s.atoms();
  std::size_t n = m.values.size();

  double combos = std::pow(static_cast<double>(n), static_cast<double>(atoms.size()));
  if (combos > 1e8) throw Error("sequent has too many atoms for matrix evaluation");

  std::vector<std::uint8_t> pick(atoms.size(), 0);
  while (true) {
    Valuation v;
    for (std::size_t i = 0; i < atoms.size(); ++i) v.set(atoms[i], pick[i]);
    bool all_designated = true;
    for (const Formula& g : s.antecedent()) {
      if (!m.designated[eval_rec(m, tmap, v, store, g.id())]) {
        all_designated = false;
        break;
      }
    }
    if (all_designated &&
        !m.designated[eval_rec(m, tmap, v, store, s.succedent().id())]) {
      return false;
    }
    std::size_t pos = 0;
    while (pos < pick.size() && pick[pos] == n - 1) pick[pos++] = 0;
    if (pos == pick.size()) break;
    ++pick[pos];
  }
  return true;
}

namespace {

Matrix build_classical() {
  Matrix m;
  m.name = "K";
  m.sig = Signature::core_full();
  m.values = {"f", "t"};
  m.designated = {false, true};
  m.tables.resize(5);
  m.tables[0] = {0, {0}};           // bottom
  m.tables[1] = {1, {1, 0}};        // not
  m.tables[2] = {2, {0, 0, 0, 1}};  // and = min
  m.tables[3] = {2, {0, 1, 1, 1}};  // or = max
  m.tables[4] = {2, {1, 1, 0, 1}};  // imp = not x or y
  m.validate();
  return m;
}

Matrix build_strong_kleene(std::string name, std::string middle, bool middle_designated) {
  Matrix m;
  m.name = std::move(name);
  m.sig = Signature::core_subset({"not", "and", "or", "imp"});
  m.values = {"f", std::move(middle), "t"};
  m.designated = {false, middle_designated, true};
  auto idx = [](int a, int b) { return static_cast<std::size_t>(a * 3 + b); };
  Matrix::Table land{2, std::vector<std::uint8_t>(9)};
  Matrix::Table lor{2, std::vector<std::uint8_t>(9)};
  Matrix::Table limp{2, std::vector<std::uint8_t>(9)};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      land.entries[idx(a, b)] = static_cast<std::uint8_t>(std::min(a, b));
      lor.entries[idx(a, b)] = static_cast<std::uint8_t>(std::max(a, b));
      limp.entries[idx(a, b)] = static_cast<std::uint8_t>(std::max(2 - a, b));
    }
  }
  m.tables = {{1, {2, 1, 0}}, land, lor, limp};
  m.validate();
  return m;
}

Matrix build_l3() {
  Matrix m;
  m.name = "L3";
  m.sig = Signature::core_subset({"not", "and", "or", "imp"});
  m.values = {"0", "half", "1"};
  m.designated = {false, false, true};
  auto idx = [](int a, int b) { return static_cast<std::size_t>(a * 3 + b); };
  Matrix::Table land{2, std::vector<std::uint8_t>(9)};
  Matrix::Table lor{2, std::vector<std::uint8_t>(9)};
  Matrix::Table limp{2, std::vector<std::uint8_t>(9)};
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      land.entries[idx(a, b)] = static_cast<std::uint8_t>(std::min(a, b));
      lor.entries[idx(a, b)] = static_cast<std::uint8_t>(std::max(a, b));
      limp.entries[idx(a, b)] = static_cast<std::uint8_t>(std::min(2, 2 - a + b));
    }
  }
  m.tables = {{1, {2, 1, 0}}, land, lor, limp};
  m.validate();
  return m;
}
}  // namespace

const Matrix& classical_matrix() {
  static const Matrix m = build_classical();
  return m;
}

const Matrix& kleene_k3() {
  static const Matrix m = build_strong_kleene("K3", "n", false);
  return m;
}

const Matrix& priest_lp() {
  static const Matrix m = build_strong_kleene("LP", "b", true);
  return m;
}

const Matrix& lukasiewicz_l3() {
  static const Matrix m = build_l3();
  return m;
}

bool classical_validates(const Sequent& s) {
  return matrix_validates(classical_matrix(), s);
}

Matrix restrict_matrix(const Matrix& m, const std::vector<std::string>& value_subset) {
  if (value_subset.empty()) throw Error("matrix restriction: empty value subset");
  std::vector<bool> keep(m.values.size(), false);
  for (const std::string& v : value_subset) {
    auto idx = m.value_index(v);
    if (!idx) throw Error("matrix '" + m.name + "' has no value '" + v + "'");
    keep[static_cast<std::size_t>(*idx)] = true;
  }

  std::vector<int> old_of_new;  // parent's value order is kept
  std::vector<int> new_of_old(m.values.size(), -1);
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    if (keep[i]) {
      new_of_old[i] = static_cast<int>(old_of_new.size());
      old_of_new.push_back(static_cast<int>(i));
    }
  }

  Matrix out;
  out.name = m.name + "{";
  for (std::size_t i = 0; i < old_of_new.size(); ++i) {
    if (i) out.name += ",";
    out.name += m.values[static_cast<std::size_t>(old_of_new[i])];
  }
  out.name += "}";
  out.sig = m.sig;
  for (int o : old_of_new) {
    out.values.push_back(m.values[static_cast<std::size_t>(o)]);
    out.designated.push_back(m.designated[static_cast<std::size_t>(o)]);
  }
  if (std::find(out.designated.begin(), out.designated.end(), true) == out.designated.end()) {
    throw Error("matrix restriction: no designated value survives");
  }

  auto remap = [&](std::uint8_t old, const std::string& conn) -> std::uint8_t {
    if (!keep[old]) {
      throw Error("matrix restriction: subset not closed under '" + conn + "' (hits value '" +
                  m.values[old] + "')");
    }
    return static_cast<std::uint8_t>(new_of_old[old]);
  };

  std::size_t k = old_of_new.size();
  for (std::size_t c = 0; c < m.tables.size(); ++c) {
    const std::string& cname = m.sig.connectives()[c].name;
    const Matrix::Table& t = m.tables[c];
    Matrix::Table nt{t.arity, {}};
    if (t.arity == 0) {
      nt.entries = {remap(t.entries[0], cname)};
    } else if (t.arity == 1) {
      nt.entries.resize(k);
      for (std::size_t a = 0; a < k; ++a) {
        nt.entries[a] = remap(m.apply1(static_cast<int>(c),
                                       static_cast<std::uint8_t>(old_of_new[a])),
                              cname);
      }
    } else {
      nt.entries.resize(k * k);
      for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
          nt.entries[a * k + b] =
              remap(m.apply2(static_cast<int>(c), static_cast<std::uint8_t>(old_of_new[a]),
                             static_cast<std::uint8_t>(old_of_new[b])),
                    cname);
        }
      }
    }
    out.tables.push_back(std::move(nt));
  }
  out.validate();
  return out;
}

// ── DesignationTable ────────────────────────────────────────────────────

DesignationTable::DesignationTable(const Matrix& m, const FormulaStore& store,
                                   int atom_count) {
  std::size_t nv = m.values.size();
  unsigned long long combos = 1;
  for (int i = 0; i < atom_count; ++i) {
    combos *= nv;
    if (combos > 64) throw Error("designation table needs |V|^atoms <= 64");
  }
  valuation_count_ = static_cast<int>(combos);
  full_mask_ = combos == 64 ? ~0ull : (1ull << combos) - 1;

  std::vector<int> tmap = table_map(m, store.signature());
  std::size_t n = store.size();
  masks_.assign(n, 0);
  covered_.assign(n, false);
  // value of node under every valuation; children precede parents by id
  std::vector<std::uint8_t> vals(n * combos);

  std::vector<std::uint8_t> atom_val(static_cast<std::size_t>(atom_count) * combos);
  for (unsigned long long r = 0; r < combos; ++r) {
    unsigned long long x = r;
    for (int a = 0; a < atom_count; ++a) {
      atom_val[static_cast<std::size_t>(a) * combos + r] = static_cast<std::uint8_t>(x % nv);
      x /= nv;
    }
  }

  for (std::size_t id = 0; id < n; ++id) {
    const FormulaNode& node = store.node(static_cast<FormulaId>(id));
    std::uint8_t* out = &vals[id * combos];
    switch (node.kind) {
      case NodeKind::Atom: {
        if (node.sym >= atom_count) continue;  // uncovered
        const std::uint8_t* src = &atom_val[static_cast<std::size_t>(node.sym) * combos];
        std::copy(src, src + combos, out);
        break;
      }
      case NodeKind::Meta:
        continue;
      case NodeKind::Apply: {
        int t = tmap[node.sym];
        if (t < 0) continue;
        int arity = m.sig.connectives()[static_cast<std::size_t>(t)].arity;
        if (arity == 0) {
          std::fill(out, out + combos, m.apply0(t));
        } else if (arity == 1) {
          if (!covered_[node.lhs]) continue;
          const std::uint8_t* a = &vals[static_cast<std::size_t>(node.lhs) * combos];
          const std::uint8_t* tab = m.tables[static_cast<std::size_t>(t)].entries.data();
          for (unsigned long long r = 0; r < combos; ++r) out[r] = tab[a[r]];
        } else {
          if (!covered_[node.lhs] || !covered_[node.rhs]) continue;
          const std::uint8_t* a = &vals[static_cast<std::size_t>(node.lhs) * combos];
          const std::uint8_t* b = &vals[static_cast<std::size_t>(node.rhs) * combos];
          const std::uint8_t* tab = m.tables[static_cast<std::size_t>(t)].entries.data();
          for (unsigned long long r = 0; r < combos; ++r) {
            out[r] = tab[static_cast<std::size_t>(a[r]) * nv + b[r]];
          }
        }
        break;
      }
    }
    covered_[id] = true;
    std::uint64_t mask = 0;
    for (unsigned long long r = 0; r < combos; ++r) {
      if (m.designated[out[r]]) mask |= 1ull << r;
    }
    masks_[id] = mask;
  }
}

std::uint64_t DesignationTable::mask(FormulaId id) const {
  if (id >= masks_.size() || !covered_[id]) {
    throw CoverageError("formula is outside the designation table");
  }
  return masks_[id];
}

bool DesignationTable::validates(std::span<const FormulaId> antecedent,
                                 FormulaId succedent) const {
  std::uint64_t premise = full_mask_;
  for (FormulaId g : antecedent) premise &= mask(g);
  return (premise & ~mask(succedent)) == 0;
}
}  // namespace logrel
