#include "logrel/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>

namespace logrel {

namespace {

constexpr std::string_view kAlphabet = "pqrstuvwxyzabcdefghijklmno";

bool lexable_name(std::string_view s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::islower(static_cast<unsigned char>(c)) &&
        !std::isdigit(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return true;
}

int core_arity(std::string_view name) {
  if (name == core::kBottom) return 0;
  if (name == core::kNot) return 1;
  if (name == core::kAnd || name == core::kOr || name == core::kImp) return 2;
  return -1;
}

std::string_view core_token(std::string_view name) {
  if (name == core::kBottom) return "_|_";
  if (name == core::kNot) return "~";
  if (name == core::kAnd) return "&";
  if (name == core::kOr) return "|";
  if (name == core::kImp) return "->";
  return {};
}
}  // namespace

std::string atom_name(int index) {
  if (index < 0 || index >= kMaxAtoms) throw Error("atom index out of range");
  return std::string(1, kAlphabet[static_cast<std::size_t>(index)]);
}

std::optional<int> atom_index(std::string_view name) {
  if (name.size() != 1) return std::nullopt;
  auto pos = kAlphabet.find(name[0]);
  if (pos == std::string_view::npos) return std::nullopt;
  return static_cast<int>(pos);
}

// ── Signature ───────────────────────────────────────────────────────────

Signature::Signature(std::vector<Connective> connectives)
    : connectives_(std::move(connectives)) {
  for (std::size_t i = 0; i < connectives_.size(); ++i) {
    const Connective& c = connectives_[i];
    if (!lexable_name(c.name)) {
      throw Error("connective name '" + c.name + "' is not a lowercase identifier");
    }
    if (c.arity < 0 || c.arity > 2) {
      throw Error("connective '" + c.name + "' has unsupported arity " +
                  std::to_string(c.arity));
    }
    int want = core_arity(c.name);
    if (want >= 0 && want != c.arity) {
      throw Error("core connective '" + c.name + "' must have arity " +
                  std::to_string(want));
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (connectives_[j].name == c.name) {
        throw Error("duplicate connective name '" + c.name + "'");
      }
    }
  }
}

Signature Signature::core_full() {
  return Signature({{std::string(core::kBottom), 0},
                    {std::string(core::kNot), 1},
                    {std::string(core::kAnd), 2},
                    {std::string(core::kOr), 2},
                    {std::string(core::kImp), 2}});
}

Signature Signature::core_subset(const std::vector<std::string>& names) {
  std::vector<Connective> cs;
  for (const std::string& n : names) {
    int a = core_arity(n);
    if (a < 0) throw Error("'" + n + "' is not a core connective name");
    cs.push_back({n, a});
  }
  return Signature(std::move(cs));
}

std::optional<int> Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < connectives_.size(); ++i) {
    if (connectives_[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

bool Signature::subset_of(const Signature& other) const {
  for (const Connective& c : connectives_) {
    auto idx = other.index_of(c.name);
    if (!idx || other.connectives()[static_cast<std::size_t>(*idx)].arity != c.arity) {
      return false;
    }
  }
  return true;
}

bool Signature::proper_subset_of(const Signature& other) const {
  return subset_of(other) && connectives_.size() < other.connectives_.size();
}

Signature Signature::intersect(const Signature& other) const {
  std::vector<Connective> cs;
  for (const Connective& c : connectives_) {
    auto idx = other.index_of(c.name);
    if (idx && other.connectives()[static_cast<std::size_t>(*idx)].arity == c.arity) {
      cs.push_back(c);
    }
  }
  return Signature(std::move(cs));
}

bool Signature::operator==(const Signature& other) const {
  return subset_of(other) && other.subset_of(*this);
}

std::string Signature::to_string() const {
  std::string out;
  for (const Connective& c : connectives_) {
    if (!out.empty()) out += ' ';
    out += c.name + "/" + std::to_string(c.arity);
  }
  return out;
}

// ── FormulaStore ────────────────────────────────────────────────────────

namespace {
std::uint64_t node_key(const FormulaNode& n) {
  // kind:2 | sym:8 | lhs:27 | rhs:27 — collision-free for ids < 2^27.
  constexpr std::uint64_t kMask27 = (1ull << 27) - 1;
  std::uint64_t lhs = n.lhs == kNoFormula ? kMask27 : n.lhs;
  std::uint64_t rhs = n.rhs == kNoFormula ? kMask27 : n.rhs;
  return (static_cast<std::uint64_t>(n.kind) << 62) |
         (static_cast<std::uint64_t>(n.sym) << 54) | (lhs << 27) | rhs;
}
}  // namespace

FormulaStore::FormulaStore(Signature sig) : sig_(std::move(sig)) {}

Formula FormulaStore::intern(const FormulaNode& n, int depth, std::uint32_t text_len) {
  if (nodes_.size() >= (1ull << 27) - 2) throw Error("formula store full");
  std::uint64_t key = node_key(n);
  auto [it, inserted] = index_.try_emplace(key, static_cast<FormulaId>(nodes_.size()));
  if (inserted) {
    nodes_.push_back(n);
    depths_.push_back(static_cast<std::uint16_t>(depth));
    text_lens_.push_back(text_len);
  }
  return Formula(this, it->second);
}

Formula FormulaStore::atom(int index) {
  if (index < 0 || index >= kMaxAtoms) throw Error("atom index out of range");
  return intern({NodeKind::Atom, static_cast<std::uint8_t>(index), kNoFormula, kNoFormula},
                0, static_cast<std::uint32_t>(atom_name(index).size()));
}

Formula FormulaStore::metavar(int index) {
  if (index < 0 || index >= 26) throw Error("metavariable index out of range");
  return intern({NodeKind::Meta, static_cast<std::uint8_t>(index), kNoFormula, kNoFormula},
                0, 1);
}

Formula FormulaStore::constant(int ci) {
  const auto& cs = sig_.connectives();
  if (ci < 0 || static_cast<std::size_t>(ci) >= cs.size()) {
    throw CoverageError("connective index out of range");
  }
  const Connective& c = cs[static_cast<std::size_t>(ci)];
  if (c.arity != 0) throw Error("connective '" + c.name + "' is not 0-ary");
  std::uint32_t len = core_token(c.name).empty()
                          ? static_cast<std::uint32_t>(c.name.size())
                          : static_cast<std::uint32_t>(core_token(c.name).size());
  return intern({NodeKind::Apply, static_cast<std::uint8_t>(ci), kNoFormula, kNoFormula},
                0, len);
}

Formula FormulaStore::apply(int ci, Formula a) {
  const auto& cs = sig_.connectives();
  if (ci < 0 || static_cast<std::size_t>(ci) >= cs.size()) {
    throw CoverageError("connective index out of range");
  }
  const Connective& c = cs[static_cast<std::size_t>(ci)];
  if (c.arity != 1) throw Error("connective '" + c.name + "' is not unary");
  if (a.store() != this) throw Error("argument belongs to a different store");
  std::uint32_t len = core_token(c.name) == "~"
                          ? 3 + text_lens_[a.id()]
                          : static_cast<std::uint32_t>(c.name.size()) + 2 + text_lens_[a.id()];
  return intern({NodeKind::Apply, static_cast<std::uint8_t>(ci), a.id(), kNoFormula},
                1 + depths_[a.id()], len);
}

Formula FormulaStore::apply(int ci, Formula a, Formula b) {
  const auto& cs = sig_.connectives();
  if (ci < 0 || static_cast<std::size_t>(ci) >= cs.size()) {
    throw CoverageError("connective index out of range");
  }
  const Connective& c = cs[static_cast<std::size_t>(ci)];
  if (c.arity != 2) throw Error("connective '" + c.name + "' is not binary");
  if (a.store() != this || b.store() != this) {
    throw Error("argument belongs to a different store");
  }
  std::string_view tok = core_token(c.name);
  std::uint32_t len;
  if (!tok.empty()) {
    len = text_lens_[a.id()] + text_lens_[b.id()] + 4 + static_cast<std::uint32_t>(tok.size());
  } else {
    len = static_cast<std::uint32_t>(c.name.size()) + 3 + text_lens_[a.id()] +
          text_lens_[b.id()];
  }
  int depth = 1 + std::max(depths_[a.id()], depths_[b.id()]);
  return intern({NodeKind::Apply, static_cast<std::uint8_t>(ci), a.id(), b.id()}, depth, len);
}

std::optional<int> FormulaStore::core_index(std::string_view core_name) const {
  return sig_.index_of(core_name);
}

namespace {
int require_core(const FormulaStore& s, std::string_view name) {
  auto idx = s.core_index(name);
  if (!idx) {
    throw CoverageError("signature has no '" + std::string(name) + "' connective");
  }
  return *idx;
}
}  // namespace

Formula FormulaStore::bottom() { return constant(require_core(*this, core::kBottom)); }
Formula FormulaStore::negation(Formula a) { return apply(require_core(*this, core::kNot), a); }
Formula FormulaStore::conjunction(Formula a, Formula b) {
  return apply(require_core(*this, core::kAnd), a, b);
}
Formula FormulaStore::disjunction(Formula a, Formula b) {
  return apply(require_core(*this, core::kOr), a, b);
}
Formula FormulaStore::implication(Formula a, Formula b) {
  return apply(require_core(*this, core::kImp), a, b);
}

Formula FormulaStore::transplant(Formula f) {
  if (f.is_null()) throw Error("cannot transplant a null formula");
  if (f.store() == this) return f;
  const FormulaStore& src = *f.store();
  const FormulaNode& n = src.node(f.id());
  switch (n.kind) {
    case NodeKind::Atom:
      return atom(n.sym);
    case NodeKind::Meta:
      return metavar(n.sym);
    case NodeKind::Apply: {
      const Connective& c = src.signature().connectives()[n.sym];
      auto idx = sig_.index_of(c.name);
      if (!idx || sig_.connectives()[static_cast<std::size_t>(*idx)].arity != c.arity) {
        throw CoverageError("target signature has no connective '" + c.name + "'");
      }
      if (c.arity == 0) return constant(*idx);
      Formula a = transplant(Formula(&src, n.lhs));
      if (c.arity == 1) return apply(*idx, a);
      Formula b = transplant(Formula(&src, n.rhs));
      return apply(*idx, a, b);
    }
  }
  throw Error("corrupt formula node");
}

void FormulaStore::append_text(FormulaId id, std::string& out) const {
  const FormulaNode& n = nodes_[id];
  switch (n.kind) {
    case NodeKind::Atom:
      out += kAlphabet[n.sym];
      return;
    case NodeKind::Meta:
      out += static_cast<char>('A' + n.sym);
      return;
    case NodeKind::Apply: {
      const Connective& c = sig_.connectives()[n.sym];
      std::string_view tok = core_token(c.name);
      if (c.arity == 0) {
        out += tok.empty() ? std::string_view(c.name) : tok;
      } else if (tok == "~") {
        out += "(~";
        append_text(n.lhs, out);
        out += ')';
      } else if (c.arity == 1) {
        out += c.name;
        out += '(';
        append_text(n.lhs, out);
        out += ')';
      } else if (!tok.empty()) {
        out += '(';
        append_text(n.lhs, out);
        out += ' ';
        out += tok;
        out += ' ';
        append_text(n.rhs, out);
        out += ')';
      } else {
        out += c.name;
        out += '(';
        append_text(n.lhs, out);
        out += ',';
        append_text(n.rhs, out);
        out += ')';
      }
      return;
    }
  }
}

// ── Formula ─────────────────────────────────────────────────────────────

NodeKind Formula::kind() const { return store_->node(id_).kind; }

int Formula::atom() const { return store_->node(id_).sym; }
int Formula::meta() const { return store_->node(id_).sym; }
int Formula::connective() const { return store_->node(id_).sym; }

int Formula::arity() const {
  const FormulaNode& n = store_->node(id_);
  if (n.kind != NodeKind::Apply) return 0;
  return store_->signature().connectives()[n.sym].arity;
}

Formula Formula::child(int i) const {
  const FormulaNode& n = store_->node(id_);
  return Formula(store_, i == 0 ? n.lhs : n.rhs);
}

int Formula::depth() const { return store_->depth_of(id_); }
std::size_t Formula::text_length() const { return store_->text_length_of(id_); }

std::string Formula::text() const {
  std::string out;
  out.reserve(text_length());
  store_->append_text(id_, out);
  return out;
}

std::vector<int> Formula::atoms() const {
  std::array<bool, kMaxAtoms> seen{};
  std::vector<FormulaId> stack{id_};
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    const FormulaNode& n = store_->node(id);
    if (n.kind == NodeKind::Atom) {
      seen[n.sym] = true;
    } else if (n.kind == NodeKind::Apply) {
      if (n.lhs != kNoFormula) stack.push_back(n.lhs);
      if (n.rhs != kNoFormula) stack.push_back(n.rhs);
    }
  }
  std::vector<int> out;
  for (int i = 0; i < kMaxAtoms; ++i) {
    if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

bool Formula::uses_only(const Signature& sig) const {
  const FormulaNode& n = store_->node(id_);
  if (n.kind != NodeKind::Apply) return true;
  const Connective& c = store_->signature().connectives()[n.sym];
  auto idx = sig.index_of(c.name);
  if (!idx || sig.connectives()[static_cast<std::size_t>(*idx)].arity != c.arity) {
    return false;
  }
  for (int i = 0; i < arity(); ++i) {
    if (!child(i).uses_only(sig)) return false;
  }
  return true;
}

bool Formula::operator==(const Formula& other) const {
  if (store_ == other.store_) return id_ == other.id_;
  if (is_null() || other.is_null()) return false;
  const FormulaNode& a = store_->node(id_);
  const FormulaNode& b = other.store_->node(other.id_);
  if (a.kind != b.kind) return false;
  if (a.kind != NodeKind::Apply) return a.sym == b.sym;
  const Connective& ca = store_->signature().connectives()[a.sym];
  const Connective& cb = other.store_->signature().connectives()[b.sym];
  if (ca.name != cb.name || ca.arity != cb.arity) return false;
  for (int i = 0; i < ca.arity; ++i) {
    if (!(child(i) == other.child(i))) return false;
  }
  return true;
}

bool canonical_less(Formula a, Formula b) {
  if (a.depth() != b.depth()) return a.depth() < b.depth();
  if (a.text_length() != b.text_length()) return a.text_length() < b.text_length();
  return a.text() < b.text();
}

std::string render_formula(Formula f) { return f.text(); }

// ── Parser ──────────────────────────────────────────────────────────────

namespace {

enum class Tok { Ident, Meta, Bottom, Not, And, Or, Imp, LParen, RParen, Comma, Turnstile, End };

struct Token {
  Tok type;
  std::string_view text;
  std::size_t offset;
};

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  Token next() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::size_t off = pos_;
    if (pos_ >= s_.size()) return {Tok::End, {}, off};
    char c = s_[pos_];
    if (c == '_') {
      if (s_.compare(pos_, 3, "_|_") == 0) {
        pos_ += 3;
        return {Tok::Bottom, s_.substr(off, 3), off};
      }
      throw ParseError("unknown symbol '_'", off);
    }
    if (c == '~') { ++pos_; return {Tok::Not, s_.substr(off, 1), off}; }
    if (c == '&') { ++pos_; return {Tok::And, s_.substr(off, 1), off}; }
    if (c == '|') {
      if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '-') {
        pos_ += 2;
        return {Tok::Turnstile, s_.substr(off, 2), off};
      }
      ++pos_;
      return {Tok::Or, s_.substr(off, 1), off};
    }
    if (c == '-') {
      if (pos_ + 1 < s_.size() && s_[pos_ + 1] == '>') {
        pos_ += 2;
        return {Tok::Imp, s_.substr(off, 2), off};
      }
      throw ParseError("unknown symbol '-'", off);
    }
    if (c == '(') { ++pos_; return {Tok::LParen, s_.substr(off, 1), off}; }
    if (c == ')') { ++pos_; return {Tok::RParen, s_.substr(off, 1), off}; }
    if (c == ',') { ++pos_; return {Tok::Comma, s_.substr(off, 1), off}; }
    if (std::isupper(static_cast<unsigned char>(c))) {
      ++pos_;
      return {Tok::Meta, s_.substr(off, 1), off};
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t end = pos_ + 1;
      while (end < s_.size() && (std::islower(static_cast<unsigned char>(s_[end])) ||
                                 std::isdigit(static_cast<unsigned char>(s_[end])))) {
        ++end;
      }
      Token t{Tok::Ident, s_.substr(off, end - off), off};
      pos_ = end;
      return t;
    }
    throw ParseError(std::string("unknown symbol '") + c + "'", off);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  Parser(std::string_view text, FormulaStore& store, bool allow_meta)
      : lex_(text), store_(store), allow_meta_(allow_meta) {
    advance();
  }

  Formula parse_full() {
    Formula f = parse_imp();
    expect_end();
    return f;
  }

  Sequent parse_sequent_full() {
    std::vector<Formula> ante;
    if (cur_.type != Tok::Turnstile) {
      ante.push_back(parse_imp());
      while (cur_.type == Tok::Comma) {
        advance();
        ante.push_back(parse_imp());
      }
    }
    if (cur_.type != Tok::Turnstile) {
      throw ParseError("expected '|-'", cur_.offset);
    }
    advance();
    Formula succ = parse_imp();
    expect_end();
    return Sequent(std::move(ante), succ);
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect_end() {
    if (cur_.type != Tok::End) {
      if (cur_.type == Tok::RParen) throw ParseError("unbalanced parentheses", cur_.offset);
      throw ParseError("unexpected token '" + std::string(cur_.text) + "'", cur_.offset);
    }
  }

  int require_connective(std::string_view core_name, std::size_t off) {
    auto idx = store_.signature().index_of(core_name);
    if (!idx) {
      throw ParseError("connective '" + std::string(core_name) + "' is not in the signature",
                       off);
    }
    return *idx;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (cur_.type == Tok::Imp) {
      std::size_t off = cur_.offset;
      advance();
      Formula rhs = parse_imp();  // right-associative
      return store_.apply(require_connective(core::kImp, off), lhs, rhs);
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (cur_.type == Tok::Or) {
      std::size_t off = cur_.offset;
      advance();
      Formula rhs = parse_and();
      lhs = store_.apply(require_connective(core::kOr, off), lhs, rhs);
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (cur_.type == Tok::And) {
      std::size_t off = cur_.offset;
      advance();
      Formula rhs = parse_unary();
      lhs = store_.apply(require_connective(core::kAnd, off), lhs, rhs);
    }
    return lhs;
  }

  Formula parse_unary() {
    if (cur_.type == Tok::Not) {
      std::size_t off = cur_.offset;
      advance();
      Formula a = parse_unary();
      return store_.apply(require_connective(core::kNot, off), a);
    }
    return parse_primary();
  }

  Formula parse_primary() {
    switch (cur_.type) {
      case Tok::LParen: {
        std::size_t open = cur_.offset;
        advance();
        Formula f = parse_imp();
        if (cur_.type != Tok::RParen) throw ParseError("unbalanced parentheses", open);
        advance();
        return f;
      }
      case Tok::Bottom: {
        std::size_t off = cur_.offset;
        advance();
        return store_.constant(require_connective(core::kBottom, off));
      }
      case Tok::Meta: {
        if (!allow_meta_) {
          throw ParseError("metavariables are only allowed in schemes", cur_.offset);
        }
        int idx = cur_.text[0] - 'A';
        advance();
        return store_.metavar(idx);
      }
      case Tok::Ident: {
        Token name = cur_;
        advance();
        auto conn = store_.signature().index_of(name.text);
        if (cur_.type == Tok::LParen) {
          if (!conn) {
            throw ParseError("unknown connective '" + std::string(name.text) + "'",
                             name.offset);
          }
          int arity = store_.signature().connectives()[static_cast<std::size_t>(*conn)].arity;
          advance();
          std::vector<Formula> args;
          if (cur_.type != Tok::RParen) {
            args.push_back(parse_imp());
            while (cur_.type == Tok::Comma) {
              advance();
              args.push_back(parse_imp());
            }
          }
          if (cur_.type != Tok::RParen) throw ParseError("unbalanced parentheses", name.offset);
          advance();
          if (static_cast<int>(args.size()) != arity) {
            throw ParseError("connective '" + std::string(name.text) + "' expects " +
                                 std::to_string(arity) + " argument(s), got " +
                                 std::to_string(args.size()),
                             name.offset);
          }
          if (arity == 0) return store_.constant(*conn);
          if (arity == 1) return store_.apply(*conn, args[0]);
          return store_.apply(*conn, args[0], args[1]);
        }
        if (conn &&
            store_.signature().connectives()[static_cast<std::size_t>(*conn)].arity == 0) {
          return store_.constant(*conn);
        }
        auto ai = atom_index(name.text);
        if (!ai) {
          throw ParseError("unknown symbol '" + std::string(name.text) + "'", name.offset);
        }
        return store_.atom(*ai);
      }
      case Tok::RParen:
        throw ParseError("unbalanced parentheses", cur_.offset);
      default:
        throw ParseError("expected a formula", cur_.offset);
    }
  }

  Lexer lex_;
  FormulaStore& store_;
  bool allow_meta_;
  Token cur_{Tok::End, {}, 0};
};
}  // namespace

Formula parse_formula(std::string_view text, FormulaStore& store) {
  return Parser(text, store, /*allow_meta=*/false).parse_full();
}

Formula parse_scheme_text(std::string_view text, FormulaStore& store) {
  return Parser(text, store, /*allow_meta=*/true).parse_full();
}

Sequent parse_sequent(std::string_view text, FormulaStore& store) {
  return Parser(text, store, /*allow_meta=*/false).parse_sequent_full();
}

// ── Sequent ─────────────────────────────────────────────────────────────

Sequent::Sequent(std::vector<Formula> antecedent, Formula succedent)
    : antecedent_(std::move(antecedent)), succedent_(succedent) {
  if (succedent_.is_null()) throw Error("sequent needs a succedent");
  for (const Formula& f : antecedent_) {
    if (f.store() != succedent_.store()) {
      throw Error("sequent formulas must share one store");
    }
  }
  std::sort(antecedent_.begin(), antecedent_.end(), canonical_less);
  antecedent_.erase(std::unique(antecedent_.begin(), antecedent_.end()), antecedent_.end());
}

std::vector<int> Sequent::atoms() const {
  std::array<bool, kMaxAtoms> seen{};
  auto mark = [&seen](const Formula& f) {
    for (int a : f.atoms()) seen[static_cast<std::size_t>(a)] = true;
  };
  for (const Formula& f : antecedent_) mark(f);
  mark(succedent_);
  std::vector<int> out;
  for (int i = 0; i < kMaxAtoms; ++i) {
    if (seen[static_cast<std::size_t>(i)]) out.push_back(i);
  }
  return out;
}

std::string Sequent::text() const {
  std::string out;
  for (std::size_t i = 0; i < antecedent_.size(); ++i) {
    if (i) out += ", ";
    out += antecedent_[i].text();
  }
  if (!antecedent_.empty()) out += ' ';
  out += "|- ";
  out += succedent_.text();
  return out;
}

bool Sequent::operator==(const Sequent& other) const {
  if (!(succedent_ == other.succedent_)) return false;
  if (antecedent_.size() != other.antecedent_.size()) return false;
  for (std::size_t i = 0; i < antecedent_.size(); ++i) {
    if (!(antecedent_[i] == other.antecedent_[i])) return false;
  }
  return true;
}

// ── Enumeration ─────────────────────────────────────────────────────────

std::string Bounds::to_string() const {
  return "atoms<=" + std::to_string(atoms) + " depth<=" + std::to_string(depth) +
         " ante<=" + std::to_string(max_antecedent);
}

std::vector<Formula> enumerate_wffs(FormulaStore& store, const Bounds& bounds,
                                    const Signature* restrict_to) {
  if (!bounds.valid()) throw Error("invalid bounds: " + bounds.to_string());
  const Signature& sig = restrict_to ? *restrict_to : store.signature();
  if (restrict_to && !restrict_to->subset_of(store.signature())) {
    throw Error("restriction signature is not a subset of the store signature");
  }
  std::vector<int> conn;  // indices into the store signature
  conn.reserve(sig.size());
  for (const Connective& c : sig.connectives()) {
    conn.push_back(*store.signature().index_of(c.name));
  }

  std::vector<Formula> all;        // cumulative, construction order
  std::vector<std::size_t> layer_end;  // all[0..layer_end[d]) has depth <= d
  for (int i = 0; i < bounds.atoms; ++i) all.push_back(store.atom(i));
  for (int ci : conn) {
    if (store.signature().connectives()[static_cast<std::size_t>(ci)].arity == 0) {
      all.push_back(store.constant(ci));
    }
  }
  layer_end.push_back(all.size());

  for (int d = 1; d <= bounds.depth; ++d) {
    std::size_t prev_lo = d >= 2 ? layer_end[static_cast<std::size_t>(d - 2)] : 0;
    std::size_t prev_hi = layer_end[static_cast<std::size_t>(d - 1)];
    std::size_t n_before = all.size();
    for (int ci : conn) {
      int arity = store.signature().connectives()[static_cast<std::size_t>(ci)].arity;
      if (arity == 1) {
        // exactly one child of depth d-1
        for (std::size_t i = prev_lo; i < prev_hi; ++i) {
          all.push_back(store.apply(ci, all[i]));
        }
      } else if (arity == 2) {
        // at least one child of depth d-1
        for (std::size_t i = 0; i < prev_hi; ++i) {
          for (std::size_t j = 0; j < prev_hi; ++j) {
            if (i < prev_lo && j < prev_lo) continue;
            all.push_back(store.apply(ci, all[i], all[j]));
          }
        }
      }
    }
    layer_end.push_back(all.size());
    // An empty layer starves every later one.
    if (all.size() == n_before) break;
  }

  std::sort(all.begin(), all.end(), canonical_less);
  return all;
}

SequentSpace::SequentSpace(std::size_t wff_count, int max_antecedent)
    : wff_count_(wff_count), max_ante_(max_antecedent) {
  if (max_ante_ < 0) throw Error("negative antecedent bound");
  if (max_ante_ > 16) throw Error("antecedent bound too large");
  unsigned long long total = 0;
  size_offsets_.push_back(0);
  for (int k = 0; k <= max_ante_; ++k) {
    unsigned long long c = choose(wff_count_, k);
    unsigned long long block = c * static_cast<unsigned long long>(wff_count_);
    if (c != 0 && block / c != static_cast<unsigned long long>(wff_count_)) {
      throw Error("sequent space too large");
    }
    if (total > std::numeric_limits<unsigned long long>::max() - block) {
      throw Error("sequent space too large");
    }
    total += block;
    size_offsets_.push_back(total);
  }
  total_ = total;
}

unsigned long long SequentSpace::choose(std::size_t n, int k) const {
  if (k < 0 || static_cast<std::size_t>(k) > n) return 0;
  unsigned long long r = 1;
  for (int i = 1; i <= k; ++i) {
    unsigned long long num = static_cast<unsigned long long>(n) -
                             static_cast<unsigned long long>(k - i);
    if (r > std::numeric_limits<unsigned long long>::max() / num) {
      throw Error("sequent space too large");
    }
    r = r * num / static_cast<unsigned long long>(i);
  }
  return r;
}

unsigned long long SequentSpace::rank(std::span<const std::uint32_t> ante,
                                      std::uint32_t succ) const {
  int k = static_cast<int>(ante.size());
  if (k > max_ante_) throw Error("antecedent larger than the space bound");
  // lexicographic rank of the ascending combination
  unsigned long long r = 0;
  std::uint32_t prev = 0;
  for (int i = 0; i < k; ++i) {
    for (std::uint32_t v = (i == 0 ? 0 : prev + 1); v < ante[static_cast<std::size_t>(i)]; ++v) {
      r += choose(wff_count_ - v - 1, k - i - 1);
    }
    prev = ante[static_cast<std::size_t>(i)];
  }
  return size_offsets_[static_cast<std::size_t>(k)] +
         r * static_cast<unsigned long long>(wff_count_) + succ;
}

void SequentSpace::decode(unsigned long long rank, std::vector<std::uint32_t>& ante_out,
                          std::uint32_t& succ_out) const {
  if (rank >= total_) throw Error("sequent rank out of range");
  int k = 0;
  while (rank >= size_offsets_[static_cast<std::size_t>(k + 1)]) ++k;
  unsigned long long local = rank - size_offsets_[static_cast<std::size_t>(k)];
  succ_out = static_cast<std::uint32_t>(local % wff_count_);
  unsigned long long comb = local / wff_count_;
  ante_out.clear();
  std::uint32_t v = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      unsigned long long c = choose(wff_count_ - v - 1, k - i - 1);
      if (comb < c) break;
      comb -= c;
      ++v;
    }
    ante_out.push_back(v);
    ++v;
  }
}

std::vector<Sequent> enumerate_sequents(const std::vector<Formula>& wffs,
                                        int max_antecedent) {
  for (std::size_t i = 1; i < wffs.size(); ++i) {
    if (!canonical_less(wffs[i - 1], wffs[i])) {
      throw Error("wff list must be duplicate-free and canonically ordered");
    }
  }
  SequentSpace space(wffs.size(), max_antecedent);
  std::vector<Sequent> out;
  out.reserve(space.size());
  space.for_each([&](std::span<const std::uint32_t> ante, std::uint32_t succ) {
    std::vector<Formula> a;
    a.reserve(ante.size());
    for (std::uint32_t i : ante) a.push_back(wffs[i]);
    out.emplace_back(std::move(a), wffs[succ]);
    return true;
  });
  return out;
}

// ── Schemes ─────────────────────────────────────────────────────────────

namespace {
void collect_metas(Formula f, std::vector<bool>& seen) {
  if (f.is_meta()) {
    if (static_cast<std::size_t>(f.meta()) >= seen.size()) seen.resize(f.meta() + 1);
    seen[static_cast<std::size_t>(f.meta())] = true;
    return;
  }
  for (int i = 0; i < f.arity(); ++i) collect_metas(f.child(i), seen);
}

Formula substitute(Formula f, std::span<const int> atom_for_meta, FormulaStore& target) {
  if (f.is_meta()) return target.atom(atom_for_meta[static_cast<std::size_t>(f.meta())]);
  const FormulaNode& n = f.store()->node(f.id());
  if (n.kind == NodeKind::Atom) return target.atom(n.sym);
  const Connective& c = f.store()->signature().connectives()[n.sym];
  auto idx = target.signature().index_of(c.name);
  if (!idx || target.signature().connectives()[static_cast<std::size_t>(*idx)].arity != c.arity) {
    throw CoverageError("scheme uses connective '" + c.name +
                        "' missing from the target signature");
  }
  if (c.arity == 0) return target.constant(*idx);
  Formula a = substitute(f.child(0), atom_for_meta, target);
  if (c.arity == 1) return target.apply(*idx, a);
  Formula b = substitute(f.child(1), atom_for_meta, target);
  return target.apply(*idx, a, b);
}
}  // namespace

AxiomScheme make_scheme(std::string name, std::string_view text, FormulaStore& store) {
  Formula pattern = parse_scheme_text(text, store);
  std::vector<bool> seen;
  collect_metas(pattern, seen);
  int count = 0;
  for (bool b : seen) count += b ? 1 : 0;
  if (count != static_cast<int>(seen.size())) {
    throw Error("scheme '" + name + "' must use metavariables A, B, ... contiguously");
  }
  return AxiomScheme{std::move(name), pattern, count};
}

std::vector<Formula> instantiate_scheme(const AxiomScheme& scheme,
                                        std::span<const int> atom_indices,
                                        FormulaStore& target) {
  if (atom_indices.empty()) throw Error("scheme instantiation needs at least one atom");
  std::vector<Formula> out;
  if (scheme.metavar_count == 0) {
    out.push_back(substitute(scheme.pattern, {}, target));
  } else {
    std::vector<int> pick(static_cast<std::size_t>(scheme.metavar_count), 0);
    while (true) {
      std::vector<int> atoms;
      atoms.reserve(pick.size());
      for (int i : pick) atoms.push_back(atom_indices[static_cast<std::size_t>(i)]);
      out.push_back(substitute(scheme.pattern, atoms, target));
      int pos = scheme.metavar_count - 1;
      while (pos >= 0 &&
             pick[static_cast<std::size_t>(pos)] == static_cast<int>(atom_indices.size()) - 1) {
        pick[static_cast<std::size_t>(pos)] = 0;
        --pos;
      }
      if (pos < 0) break;
      ++pick[static_cast<std::size_t>(pos)];
    }
  }
  std::sort(out.begin(), out.end(), canonical_less);
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Formula& a, const Formula& b) { return a == b; }),
            out.end());
  return out;
}
}  // namespace logrel
