#pragma once

// Pseudo-Boolean polynomials over GF(2) with idempotent (Boolean) variables.
//
// A Monomial is a sorted, duplicate-free set of variables (x*x = x); the
// empty set is the constant 1. A Polynomial is a set of monomials, each with
// implicit coefficient 1; addition is symmetric difference, which performs
// the mod-2 cancellation a + a = 0 by construction.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gfrev/errors.hpp"

namespace gfrev {

// Dense handle for a circuit signal. Ids are assigned per VarTable in
// first-seen order; the name<->id mapping is a bijection within one table.
struct VarId {
  std::uint32_t value = UINT32_MAX;

  constexpr bool valid() const { return value != UINT32_MAX; }
  friend constexpr auto operator<=>(VarId, VarId) = default;
};

struct VarIdHash {
  std::size_t operator()(VarId v) const { return std::hash<std::uint32_t>{}(v.value); }
};

class VarTable {
 public:
  VarId intern(std::string_view name);
  std::optional<VarId> find(std::string_view name) const;
  const std::string& name(VarId id) const;
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, VarId> ids_;
};

class Monomial {
 public:
  Monomial() = default;  // constant 1
  explicit Monomial(VarId v) : vars_{v} {}

  // Sorts and removes duplicates (Boolean idempotence applied eagerly).
  static Monomial from_vars(std::vector<VarId> vars);

  // Variable-set union, i.e. the GF(2) product of two monomials.
  static Monomial product(const Monomial& a, const Monomial& b);

  Monomial without(VarId v) const;

  bool contains(VarId v) const;
  bool is_constant() const { return vars_.empty(); }
  std::size_t degree() const { return vars_.size(); }
  std::span<const VarId> vars() const { return vars_; }

  friend bool operator==(const Monomial&, const Monomial&) = default;

 private:
  std::vector<VarId> vars_;  // sorted, unique
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const;
};

using Assignment = std::unordered_map<VarId, bool, VarIdHash>;

class Polynomial {
 public:
  using TermSet = std::unordered_set<Monomial, MonomialHash>;

  Polynomial() = default;  // zero

  static Polynomial zero() { return Polynomial{}; }
  static Polynomial one();
  static Polynomial var(VarId v);

  // GF(2) addition of a single monomial: inserts it, or cancels it if present.
  void toggle(Monomial m);

  bool contains(const Monomial& m) const { return terms_.count(m) != 0; }
  bool contains_var(VarId v) const;
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  const TermSet& terms() const { return terms_; }

  // Sorted, duplicate-free list of every variable appearing in some term.
  std::vector<VarId> vars() const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  TermSet terms_;
};

Polynomial poly_add(const Polynomial& p, const Polynomial& q);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);

// Evaluates f over a Boolean assignment; every variable of f must be bound.
bool evaluate(const Polynomial& f, const Assignment& assignment);

// Maps each variable to the set of monomials containing it. Kept exactly
// consistent with the term set it was built from (or maintained alongside).
class SubstitutionIndex {
 public:
  SubstitutionIndex() = default;
  explicit SubstitutionIndex(const Polynomial& p);

  // Monomials containing v, or nullptr if v does not occur.
  const Polynomial::TermSet* lookup(VarId v) const;

  void add(const Monomial& m);
  void remove(const Monomial& m);
  Polynomial::TermSet take_bucket(VarId v);

  bool consistent_with(const Polynomial& p) const;

 private:
  std::unordered_map<VarId, Polynomial::TermSet, VarIdHash> occ_;
};

// A polynomial paired with its substitution index: the working expression of
// backward rewriting. Substitution cost is proportional to the number of
// affected monomials, not the expression size.
class RewriteExpr {
 public:
  RewriteExpr() = default;
  explicit RewriteExpr(Polynomial seed);

  // Replaces every occurrence of v by g, reducing mod 2. g must not contain v.
  void substitute(VarId v, const Polynomial& g);

  bool mentions(VarId v) const { return index_.lookup(v) != nullptr; }
  std::size_t term_count() const { return poly_.term_count(); }
  std::size_t peak_terms() const { return peak_terms_; }
  std::size_t substitutions() const { return substitutions_; }

  const Polynomial& poly() const { return poly_; }
  const SubstitutionIndex& index() const { return index_; }

 private:
  void toggle(Monomial m);

  Polynomial poly_;
  SubstitutionIndex index_;
  std::size_t peak_terms_ = 0;
  std::size_t substitutions_ = 0;
};

// One-shot substitution; builds the index internally.
Polynomial substitute(const Polynomial& f, VarId v, const Polynomial& g);

// Canonical text form: terms joined by "+", variables joined by "*",
// constant 1 as "1", zero as "0". Terms ordered by ascending degree, then
// lexicographically by variable name.
std::string to_string(const Monomial& m, const VarTable& vars);
std::string to_string(const Polynomial& p, const VarTable& vars);

}  // namespace gfrev
