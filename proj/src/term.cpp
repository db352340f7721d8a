#include "kbrec/term.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace kbrec {

Term::Term() {
  static const std::shared_ptr<const Node> empty =
      std::make_shared<const Node>(Node{false, "", {}});
  node_ = empty;
}

Term Term::var(std::string name) {
  return Term(std::make_shared<const Node>(Node{true, std::move(name), {}}));
}

Term Term::app(std::string fun, std::vector<Term> args) {
  return Term(std::make_shared<const Node>(
      Node{false, std::move(fun), std::move(args)}));
}

Symbol Term::symbol() const {
  if (is_var()) throw InputError("variable '" + name() + "' has no symbol");
  return Symbol{name(), args().size()};
}

std::size_t Term::size() const {
  std::size_t n = 1;
  for (const Term& a : args()) n += a.size();
  return n;
}

std::size_t Term::depth() const {
  std::size_t d = 0;
  for (const Term& a : args()) d = std::max(d, a.depth());
  return d + 1;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (node_->is_var != other.node_->is_var) return false;
  if (node_->name != other.node_->name) return false;
  if (node_->args.size() != other.node_->args.size()) return false;
  for (std::size_t i = 0; i < node_->args.size(); ++i)
    if (node_->args[i] != other.node_->args[i]) return false;
  return true;
}

std::strong_ordering Term::operator<=>(const Term& other) const {
  if (node_ == other.node_) return std::strong_ordering::equal;
  // variables sort before applications
  if (auto c = (other.node_->is_var <=> node_->is_var); c != 0) return c;
  if (auto c = node_->name <=> other.node_->name; c != 0) return c;
  if (auto c = node_->args.size() <=> other.node_->args.size(); c != 0)
    return c;
  for (std::size_t i = 0; i < node_->args.size(); ++i)
    if (auto c = node_->args[i] <=> other.node_->args[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

const Term* Subst::lookup(const std::string& name) const {
  auto it = map_.find(name);
  return it == map_.end() ? nullptr : &it->second;
}

void Subst::bind(const std::string& name, Term value) {
  if (value.is_var() && value.name() == name) return;
  map_.insert_or_assign(name, std::move(value));
}

void Subst::compose_bind(const std::string& name, const Term& value) {
  Subst unit;
  unit.bind(name, value);
  for (auto& [key, term] : map_) term = apply_subst(unit, term);
  bind(name, value);
}

Term subterm_at(const Term& t, const Position& pos) {
  const Term* cur = &t;
  for (std::size_t i : pos) {
    if (i == 0 || i > cur->args().size())
      throw InputError("position " + to_string(pos) + " out of range in " +
                       to_string(t));
    cur = &cur->args()[i - 1];
  }
  return *cur;
}

Term replace_at(const Term& t, const Position& pos, const Term& replacement) {
  if (pos.empty()) return replacement;
  std::size_t i = pos.front();
  if (i == 0 || i > t.args().size())
    throw InputError("position " + to_string(pos) + " out of range in " +
                     to_string(t));
  std::vector<Term> args = t.args();
  Position rest(pos.begin() + 1, pos.end());
  args[i - 1] = replace_at(args[i - 1], rest, replacement);
  return Term::app(t.name(), std::move(args));
}

Term apply_subst(const Subst& subst, const Term& t) {
  if (t.is_var()) {
    const Term* bound = subst.lookup(t.name());
    return bound ? *bound : t;
  }
  if (subst.empty()) return t;
  bool changed = false;
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) {
    Term b = apply_subst(subst, a);
    changed = changed || !b.identical(a);
    args.push_back(std::move(b));
  }
  return changed ? Term::app(t.name(), std::move(args)) : t;
}

namespace {

void positions_rec(const Term& t, Position& cur, std::vector<Position>& out) {
  out.push_back(cur);
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    cur.push_back(i + 1);
    positions_rec(t.args()[i], cur, out);
    cur.pop_back();
  }
}

bool match_rec(const Term& pattern, const Term& subject,
               std::map<std::string, Term>& raw) {
  if (pattern.is_var()) {
    auto [it, inserted] = raw.emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (subject.is_var() || pattern.name() != subject.name() ||
      pattern.args().size() != subject.args().size())
    return false;
  for (std::size_t i = 0; i < pattern.args().size(); ++i)
    if (!match_rec(pattern.args()[i], subject.args()[i], raw)) return false;
  return true;
}

}  // namespace

std::vector<Position> positions(const Term& t) {
  std::vector<Position> out;
  Position cur;
  positions_rec(t, cur, out);
  return out;
}

std::optional<Subst> match(const Term& pattern, const Term& subject) {
  // identity bindings must stay visible while matching, so collect into a
  // raw map first and drop them only when building the result
  std::map<std::string, Term> raw;
  if (!match_rec(pattern, subject, raw)) return std::nullopt;
  Subst out;
  for (const auto& [name, term] : raw) out.bind(name, term);
  return out;
}

std::optional<Subst> unify(const Term& a, const Term& b) {
  Subst sigma;
  std::vector<std::pair<Term, Term>> work{{a, b}};
  while (!work.empty()) {
    Term s = apply_subst(sigma, work.back().first);
    Term t = apply_subst(sigma, work.back().second);
    work.pop_back();
    if (s == t) continue;
    if (!s.is_var() && t.is_var()) std::swap(s, t);
    if (s.is_var()) {
      if (occurs(s.name(), t)) return std::nullopt;
      sigma.compose_bind(s.name(), t);
      continue;
    }
    if (s.name() != t.name() || s.args().size() != t.args().size())
      return std::nullopt;
    for (std::size_t i = 0; i < s.args().size(); ++i)
      work.emplace_back(s.args()[i], t.args()[i]);
  }
  return sigma;
}

Term rename_with_prefix(const std::string& prefix, const Term& t) {
  if (prefix.find(kReservedChar) == std::string::npos)
    throw InputError("renaming prefix '" + prefix +
                     "' lacks the reserved separator");
  if (t.is_var()) return Term::var(prefix + t.name());
  std::vector<Term> args;
  args.reserve(t.args().size());
  for (const Term& a : t.args()) args.push_back(rename_with_prefix(prefix, a));
  return Term::app(t.name(), std::move(args));
}

namespace {

void vars_rec(const Term& t, std::set<std::string>& seen,
              std::vector<std::string>& out) {
  if (t.is_var()) {
    if (seen.insert(t.name()).second) out.push_back(t.name());
    return;
  }
  for (const Term& a : t.args()) vars_rec(a, seen, out);
}

}  // namespace

std::vector<std::string> vars(const Term& t) {
  std::set<std::string> seen;
  std::vector<std::string> out;
  vars_rec(t, seen, out);
  return out;
}

bool occurs(const std::string& var, const Term& t) {
  if (t.is_var()) return t.name() == var;
  for (const Term& a : t.args())
    if (occurs(var, a)) return true;
  return false;
}

namespace {

void print_rec(const Term& t, std::ostream& os) {
  os << t.name();
  if (t.is_app() && !t.args().empty()) {
    os << '(';
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i > 0) os << ',';
      print_rec(t.args()[i], os);
    }
    os << ')';
  }
}

}  // namespace

std::string to_string(const Term& t) {
  std::ostringstream os;
  print_rec(t, os);
  return os.str();
}

std::string to_string(const Position& pos) {
  if (pos.empty()) return "root";
  std::ostringstream os;
  for (std::size_t i = 0; i < pos.size(); ++i) {
    if (i > 0) os << '.';
    os << pos[i];
  }
  return os.str();
}

std::string canonical_var_name(std::size_t i) {
  static const char* base[] = {"x", "y", "z", "u", "v", "w"};
  return i < 6 ? base[i] : std::string(base[i % 6]) + std::to_string(i / 6);
}

void Signature::declare(const std::string& name, std::size_t arity) {
  auto [it, inserted] = map_.emplace(name, arity);
  if (!inserted && it->second != arity)
    throw InputError("symbol '" + name + "' used with arities " +
                     std::to_string(it->second) + " and " +
                     std::to_string(arity));
}

void Signature::declare_all(const Term& t) {
  if (t.is_app()) {
    declare(t.name(), t.args().size());
    for (const Term& a : t.args()) declare_all(a);
  }
}

std::optional<std::size_t> Signature::arity(const std::string& name) const {
  auto it = map_.find(name);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

bool Signature::contains(const std::string& name) const {
  return map_.count(name) != 0;
}

}  // namespace kbrec
