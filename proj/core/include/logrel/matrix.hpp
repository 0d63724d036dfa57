#pragma once

// Finite-matrix semantics: named truth values, a designated subset, one
// total table per connective. Matrix consequence is designation
// preservation: a sequent is valid when every valuation that designates
// all antecedents designates the succedent.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "logrel/syntax.hpp"

namespace logrel {

struct Matrix {
  struct Table {
    int arity = 0;
    std::vector<std::uint8_t> entries;  // 1, |V|, or |V|*|V| row-major entries
  };

  std::string name;
  Signature sig;
  std::vector<std::string> values;     // index order is the value order
  std::vector<bool> designated;        // aligned with `values`
  std::vector<Table> tables;           // aligned with sig.connectives()

  int value_count() const { return static_cast<int>(values.size()); }
  std::optional<int> value_index(std::string_view name) const;
  std::uint8_t apply0(int conn) const { return tables[static_cast<std::size_t>(conn)].entries[0]; }
  std::uint8_t apply1(int conn, std::uint8_t a) const {
    return tables[static_cast<std::size_t>(conn)].entries[a];
  }
  std::uint8_t apply2(int conn, std::uint8_t a, std::uint8_t b) const {
    return tables[static_cast<std::size_t>(conn)]
        .entries[static_cast<std::size_t>(a) * values.size() + b];
  }

  // Total tables, well-typed entries, designated within range.
  void validate() const;
};

// Total map from atom indices to value indices.
class Valuation {
 public:
  void set(int atom, std::uint8_t value) { values_[atom] = value; }
  std::uint8_t at(int atom) const;

 private:
  std::int16_t values_[kMaxAtoms] = {
      -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1,
      -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1};
};

// Bottom-up table application. Connectives are matched to the matrix by
// name; a formula connective without a table raises CoverageError, as
// does an atom missing from the valuation.
std::uint8_t evaluate(const Matrix& m, const Valuation& v, Formula f);

bool matrix_validates(const Matrix& m, const Sequent& s);

// The built-in two-valued matrix over the full core signature.
const Matrix& classical_matrix();
// Strong Kleene, designated {t}.
const Matrix& kleene_k3();
// Strong Kleene with both-ish middle value, designated {b, t}.
const Matrix& priest_lp();
// Three-valued Lukasiewicz, designated {1}.
const Matrix& lukasiewicz_l3();

bool classical_validates(const Sequent& s);

// Restriction to a value subset (given in any order; the parent's value
// order is kept). The subset must be closed under every table and keep
// at least one designated value.
Matrix restrict_matrix(const Matrix& m, const std::vector<std::string>& value_subset);

// ── Batch evaluation ────────────────────────────────────────────────────
// Designation masks over every valuation of atoms 0..atom_count-1.
// Valuation r assigns atom a the value (r / |V|^a) mod |V|; bit r of a
// mask is set iff the formula is designated under valuation r. Usable
// when |V|^atom_count <= 64.
class DesignationTable {
 public:
  DesignationTable(const Matrix& m, const FormulaStore& store, int atom_count);

  int valuation_count() const { return valuation_count_; }
  std::uint64_t full_mask() const { return full_mask_; }

  // Throws CoverageError for formulas outside the matrix signature.
  std::uint64_t mask(FormulaId id) const;
  bool is_theorem(FormulaId id) const { return mask(id) == full_mask_; }

  // Designation-preservation over the precomputed masks.
  bool validates(std::span<const FormulaId> antecedent, FormulaId succedent) const;

 private:
  int valuation_count_;
  std::uint64_t full_mask_;
  std::vector<std::uint64_t> masks_;
  std::vector<bool> covered_;
};
}  // namespace logrel
