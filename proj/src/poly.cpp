#include "gfrev/poly.hpp"

#include <algorithm>
#include <utility>

namespace gfrev {

VarId VarTable::intern(std::string_view name) {
  auto it = ids_.find(std::string(name));
  if (it != ids_.end()) return it->second;
  VarId id{static_cast<std::uint32_t>(names_.size())};
  names_.emplace_back(name);
  ids_.emplace(names_.back(), id);
  return id;
}

std::optional<VarId> VarTable::find(std::string_view name) const {
  auto it = ids_.find(std::string(name));
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

const std::string& VarTable::name(VarId id) const { return names_.at(id.value); }

Monomial Monomial::from_vars(std::vector<VarId> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  Monomial m;
  m.vars_ = std::move(vars);
  return m;
}

Monomial Monomial::product(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.vars_.reserve(a.vars_.size() + b.vars_.size());
  std::set_union(a.vars_.begin(), a.vars_.end(), b.vars_.begin(), b.vars_.end(),
                 std::back_inserter(m.vars_));
  return m;
}

Monomial Monomial::without(VarId v) const {
  Monomial m;
  m.vars_.reserve(vars_.size());
  for (VarId w : vars_)
    if (w != v) m.vars_.push_back(w);
  return m;
}

bool Monomial::contains(VarId v) const {
  return std::binary_search(vars_.begin(), vars_.end(), v);
}

std::size_t MonomialHash::operator()(const Monomial& m) const {
  // FNV-1a over the id values.
  std::size_t h = 1469598103934665603ull;
  for (VarId v : m.vars()) {
    h ^= v.value;
    h *= 1099511628211ull;
  }
  return h;
}

Polynomial Polynomial::one() {
  Polynomial p;
  p.toggle(Monomial{});
  return p;
}

Polynomial Polynomial::var(VarId v) {
  Polynomial p;
  p.toggle(Monomial{v});
  return p;
}

void Polynomial::toggle(Monomial m) {
  auto it = terms_.find(m);
  if (it != terms_.end())
    terms_.erase(it);
  else
    terms_.insert(std::move(m));
}

bool Polynomial::contains_var(VarId v) const {
  for (const Monomial& m : terms_)
    if (m.contains(v)) return true;
  return false;
}

std::vector<VarId> Polynomial::vars() const {
  std::vector<VarId> out;
  for (const Monomial& m : terms_) out.insert(out.end(), m.vars().begin(), m.vars().end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Polynomial poly_add(const Polynomial& p, const Polynomial& q) {
  const Polynomial& big = p.term_count() >= q.term_count() ? p : q;
  const Polynomial& small = p.term_count() >= q.term_count() ? q : p;
  Polynomial r = big;
  for (const Monomial& m : small.terms()) r.toggle(m);
  return r;
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q) {
  Polynomial r;
  for (const Monomial& a : p.terms())
    for (const Monomial& b : q.terms()) r.toggle(Monomial::product(a, b));
  return r;
}

bool evaluate(const Polynomial& f, const Assignment& assignment) {
  bool sum = false;
  for (const Monomial& m : f.terms()) {
    bool prod = true;
    for (VarId v : m.vars()) {
      auto it = assignment.find(v);
      if (it == assignment.end())
        throw UnboundVariable("evaluate: variable id " + std::to_string(v.value) +
                              " has no assigned value");
      if (!it->second) {
        prod = false;
        break;
      }
    }
    sum ^= prod;
  }
  return sum;
}

SubstitutionIndex::SubstitutionIndex(const Polynomial& p) {
  for (const Monomial& m : p.terms()) add(m);
}

const Polynomial::TermSet* SubstitutionIndex::lookup(VarId v) const {
  auto it = occ_.find(v);
  return it == occ_.end() ? nullptr : &it->second;
}

void SubstitutionIndex::add(const Monomial& m) {
  for (VarId v : m.vars()) occ_[v].insert(m);
}

void SubstitutionIndex::remove(const Monomial& m) {
  for (VarId v : m.vars()) {
    auto it = occ_.find(v);
    if (it == occ_.end()) continue;
    it->second.erase(m);
    if (it->second.empty()) occ_.erase(it);
  }
}

Polynomial::TermSet SubstitutionIndex::take_bucket(VarId v) {
  auto it = occ_.find(v);
  if (it == occ_.end()) return {};
  Polynomial::TermSet bucket = std::move(it->second);
  occ_.erase(it);
  return bucket;
}

bool SubstitutionIndex::consistent_with(const Polynomial& p) const {
  SubstitutionIndex rebuilt(p);
  if (rebuilt.occ_.size() != occ_.size()) return false;
  for (const auto& [v, bucket] : rebuilt.occ_) {
    auto it = occ_.find(v);
    if (it == occ_.end() || it->second != bucket) return false;
  }
  return true;
}

RewriteExpr::RewriteExpr(Polynomial seed)
    : poly_(std::move(seed)), index_(poly_), peak_terms_(poly_.term_count()) {}

void RewriteExpr::toggle(Monomial m) {
  if (poly_.contains(m)) {
    index_.remove(m);
    poly_.toggle(std::move(m));
  } else {
    index_.add(m);
    poly_.toggle(std::move(m));
  }
}

void RewriteExpr::substitute(VarId v, const Polynomial& g) {
  if (g.contains_var(v))
    throw CyclicSubstitution("substitute: replacement for variable id " +
                             std::to_string(v.value) + " contains the variable itself");

  Polynomial::TermSet affected = index_.take_bucket(v);
  if (affected.empty()) return;
  ++substitutions_;

  for (const Monomial& m : affected) {
    index_.remove(m);  // v's bucket is already gone; removes the other vars
    poly_.toggle(m);
  }
  for (const Monomial& m : affected) {
    Monomial base = m.without(v);
    for (const Monomial& t : g.terms()) toggle(Monomial::product(base, t));
  }
  peak_terms_ = std::max(peak_terms_, poly_.term_count());
}

Polynomial substitute(const Polynomial& f, VarId v, const Polynomial& g) {
  RewriteExpr expr(f);
  expr.substitute(v, g);
  return expr.poly();
}

namespace {

std::vector<std::string> sorted_names(const Monomial& m, const VarTable& vars) {
  std::vector<std::string> names;
  names.reserve(m.degree());
  for (VarId v : m.vars()) names.push_back(vars.name(v));
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

std::string to_string(const Monomial& m, const VarTable& vars) {
  if (m.is_constant()) return "1";
  std::string out;
  bool first = true;
  for (const std::string& n : sorted_names(m, vars)) {
    if (!first) out += '*';
    out += n;
    first = false;
  }
  return out;
}

std::string to_string(const Polynomial& p, const VarTable& vars) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<std::vector<std::string>, const Monomial*>> keyed;
  keyed.reserve(p.term_count());
  for (const Monomial& m : p.terms()) keyed.emplace_back(sorted_names(m, vars), &m);
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first.size() != b.first.size()) return a.first.size() < b.first.size();
    return a.first < b.first;
  });
  std::string out;
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i) out += '+';
    out += to_string(*keyed[i].second, vars);
  }
  return out;
}

}  // namespace gfrev
