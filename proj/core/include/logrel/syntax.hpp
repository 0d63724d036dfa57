#pragma once

// Formula language: signatures, interned abstract syntax, parsing,
// canonical printing, and bounded enumeration of wffs and sequents.
//
// Formulas are nodes in an interned DAG owned by a FormulaStore. Two
// structurally identical formulas built in the same store share one id,
// so equality is O(1) and large enumerations stay compact. A Formula
// value is a cheap handle (store pointer + id) and is valid for as long
// as its store lives.
//
// Stores are not synchronized: share one across threads only for reads.

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "logrel/errors.hpp"

namespace logrel {

// ── Atoms ───────────────────────────────────────────────────────────────
// The atom alphabet is fixed and ordered: p, q, r, ..., z, a, b, ..., o.
// Enumeration over "the first n atoms" always means this order.

inline constexpr int kMaxAtoms = 26;
std::string atom_name(int index);
std::optional<int> atom_index(std::string_view name);

// ── Signature ───────────────────────────────────────────────────────────

struct Connective {
  std::string name;
  int arity = 0;
  bool operator==(const Connective&) const = default;
};

namespace core {
inline constexpr std::string_view kBottom = "bottom";
inline constexpr std::string_view kNot = "not";
inline constexpr std::string_view kAnd = "and";
inline constexpr std::string_view kOr = "or";
inline constexpr std::string_view kImp = "imp";
}  // namespace core

class Signature {
 public:
  Signature() = default;
  // Validates: unique lexable names, arity in {0,1,2}, and the fixed
  // arity for any core name (bottom:0, not:1, and/or/imp:2).
  explicit Signature(std::vector<Connective> connectives);

  // The five-connective core language.
  static Signature core_full();
  // A subset of the core language given by names, e.g. {"not","and"}.
  static Signature core_subset(const std::vector<std::string>& names);

  const std::vector<Connective>& connectives() const { return connectives_; }
  std::size_t size() const { return connectives_.size(); }
  std::optional<int> index_of(std::string_view name) const;
  bool contains(std::string_view name) const { return index_of(name).has_value(); }

  bool subset_of(const Signature& other) const;
  bool proper_subset_of(const Signature& other) const;
  Signature intersect(const Signature& other) const;

  bool operator==(const Signature& other) const;
  std::string to_string() const;  // "bottom/0 not/1 and/2 ..."

 private:
  std::vector<Connective> connectives_;
};

// ── Formulas ────────────────────────────────────────────────────────────

using FormulaId = std::uint32_t;
inline constexpr FormulaId kNoFormula = 0xFFFFFFFFu;

enum class NodeKind : std::uint8_t { Atom, Meta, Apply };

struct FormulaNode {
  NodeKind kind;
  std::uint8_t sym;  // atom index, metavariable index, or connective index
  FormulaId lhs = kNoFormula;
  FormulaId rhs = kNoFormula;
};

class FormulaStore;

class Formula {
 public:
  Formula() = default;
  Formula(const FormulaStore* store, FormulaId id) : store_(store), id_(id) {}

  bool is_null() const { return store_ == nullptr; }
  const FormulaStore* store() const { return store_; }
  FormulaId id() const { return id_; }

  NodeKind kind() const;
  bool is_atom() const { return kind() == NodeKind::Atom; }
  bool is_meta() const { return kind() == NodeKind::Meta; }
  bool is_apply() const { return kind() == NodeKind::Apply; }

  int atom() const;         // atom index; only when is_atom()
  int meta() const;         // metavariable index; only when is_meta()
  int connective() const;   // connective index in the store signature
  int arity() const;        // 0 for leaves
  Formula child(int i) const;

  int depth() const;                 // atoms/constants 0; apply 1+max(children)
  std::size_t text_length() const;   // length of the canonical rendering
  std::string text() const;          // canonical rendering

  // Sorted list of distinct atom indices occurring in the formula.
  std::vector<int> atoms() const;
  bool uses_only(const Signature& sig) const;

  // Structural equality; same-store handles compare by id.
  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  const FormulaStore* store_ = nullptr;
  FormulaId id_ = kNoFormula;
};

// Strict total order: depth, then rendered-text length, then the rendering
// itself lexicographically.
bool canonical_less(Formula a, Formula b);

class FormulaStore {
 public:
  explicit FormulaStore(Signature sig);

  const Signature& signature() const { return sig_; }
  std::size_t size() const { return nodes_.size(); }

  Formula atom(int index);
  Formula metavar(int index);
  Formula constant(int connective_index);
  Formula apply(int connective_index, Formula a);
  Formula apply(int connective_index, Formula a, Formula b);

  // Core-connective helpers; throw CoverageError when the signature
  // lacks the connective.
  Formula bottom();
  Formula negation(Formula a);
  Formula conjunction(Formula a, Formula b);
  Formula disjunction(Formula a, Formula b);
  Formula implication(Formula a, Formula b);

  std::optional<int> core_index(std::string_view core_name) const;

  const FormulaNode& node(FormulaId id) const { return nodes_[id]; }
  int depth_of(FormulaId id) const { return depths_[id]; }
  std::uint32_t text_length_of(FormulaId id) const { return text_lens_[id]; }

  // Rebuild a formula from another store in this one. Connectives are
  // matched by name and arity; throws CoverageError on a missing one.
  Formula transplant(Formula f);

  // Drop every node with id >= new_size. Handles to dropped nodes become
  // invalid. Lets scratch stores run long sweeps at constant memory.
  void truncate(std::size_t new_size);

 private:
  friend class Formula;
  Formula intern(const FormulaNode& n, int depth, std::uint32_t text_len);
  void append_text(FormulaId id, std::string& out) const;

  Signature sig_;
  std::vector<FormulaNode> nodes_;
  std::vector<std::uint16_t> depths_;
  std::vector<std::uint32_t> text_lens_;
  std::unordered_map<std::uint64_t, FormulaId> index_;
};

// ── Parsing ─────────────────────────────────────────────────────────────
// Concrete grammar: atoms [a-z][a-z0-9]*; "_|_" bottom; "~" prefix not;
// "&" and; "|" or; "->" imp (right-associative); precedence ~ > & > | > ->;
// parentheses override; user-defined connectives in call form "name(...)".
// Scheme texts may additionally use metavariables A, B, C, ...

Formula parse_formula(std::string_view text, FormulaStore& store);
Formula parse_scheme_text(std::string_view text, FormulaStore& store);

std::string render_formula(Formula f);  // == f.text()

// ── Sequents ────────────────────────────────────────────────────────────

class Sequent {
 public:
  // Antecedent is kept duplicate-free in canonical order.
  Sequent(std::vector<Formula> antecedent, Formula succedent);

  const std::vector<Formula>& antecedent() const { return antecedent_; }
  Formula succedent() const { return succedent_; }
  std::vector<int> atoms() const;  // sorted, distinct, over the whole sequent
  std::string text() const;        // "g1, g2 |- a"

  bool operator==(const Sequent& other) const;

 private:
  std::vector<Formula> antecedent_;
  Formula succedent_;
};

// "g1, g2 |- a"; an empty antecedent is written "|- a".
Sequent parse_sequent(std::string_view text, FormulaStore& store);

// ── Bounds & enumeration ────────────────────────────────────────────────

struct Bounds {
  int atoms = 2;
  int depth = 2;
  int max_antecedent = 1;
  bool valid() const {
    return atoms >= 0 && atoms <= kMaxAtoms && depth >= 0 && max_antecedent >= 0;
  }
  std::string to_string() const;  // "atoms<=2 depth<=2 ante<=1"
};

// All formulas over the first bounds.atoms atoms with depth <= bounds.depth,
// duplicate-free, in canonical order, deterministic across runs. When
// `restrict_to` is given it must be a subset of the store signature and only
// those connectives are used.
std::vector<Formula> enumerate_wffs(FormulaStore& store, const Bounds& bounds,
                                    const Signature* restrict_to = nullptr);

// The canonical sequent space over a wff list: antecedents are index
// subsets of size <= max_antecedent, ordered size-major then
// lexicographically, each paired with every succedent index in order.
class SequentSpace {
 public:
  SequentSpace(std::size_t wff_count, int max_antecedent);

  unsigned long long size() const { return total_; }

  // fn(antecedent indices, succedent index) -> bool; returning false stops.
  // Returns false iff stopped early.
  template <typename F>
  bool for_each(F&& fn) const {
    std::vector<std::uint32_t> combo;
    const std::uint32_t n = static_cast<std::uint32_t>(wff_count_);
    for (int k = 0; k <= max_ante_ && static_cast<std::size_t>(k) <= wff_count_; ++k) {
      combo.assign(static_cast<std::size_t>(k), 0);
      for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(i);
      while (true) {
        for (std::uint32_t succ = 0; succ < n; ++succ) {
          if (!fn(std::span<const std::uint32_t>(combo), succ)) return false;
        }
        int pos = k - 1;
        while (pos >= 0 && combo[static_cast<std::size_t>(pos)] ==
                               n - static_cast<std::uint32_t>(k - pos)) {
          --pos;
        }
        if (pos < 0) break;
        ++combo[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < k; ++i) {
          combo[static_cast<std::size_t>(i)] = combo[static_cast<std::size_t>(i - 1)] + 1;
        }
      }
    }
    return true;
  }

  unsigned long long rank(std::span<const std::uint32_t> ante, std::uint32_t succ) const;
  void decode(unsigned long long rank, std::vector<std::uint32_t>& ante_out,
              std::uint32_t& succ_out) const;

 private:
  unsigned long long choose(std::size_t n, int k) const;

  std::size_t wff_count_;
  int max_ante_;
  unsigned long long total_;
  std::vector<unsigned long long> size_offsets_;  // rank offset per antecedent size
};

// Materialized form of the space above; intended for desk-scale bounds.
std::vector<Sequent> enumerate_sequents(const std::vector<Formula>& wffs,
                                        int max_antecedent);

// ── Axiom schemes ───────────────────────────────────────────────────────

struct AxiomScheme {
  std::string name;
  Formula pattern;     // may contain metavariables
  int metavar_count = 0;
};

// Parses `text` (metavariables allowed) in `store` and counts its
// distinct metavariables.
AxiomScheme make_scheme(std::string name, std::string_view text, FormulaStore& store);

// Every substitution of the given atoms for the metavariables, built in
// `target`, deduplicated, canonical order.
std::vector<Formula> instantiate_scheme(const AxiomScheme& scheme,
                                        std::span<const int> atom_indices,
                                        FormulaStore& target);
}  // namespace logrel
