#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kbrec/errors.hpp"

namespace kbrec {

/// Reserved separator for machine-generated variable names. User identifiers
/// must never contain it; renaming prefixes always do, which keeps renamed
/// variables disjoint from everything the user can write.
inline constexpr char kReservedChar = '#';

struct Symbol {
  std::string name;
  std::size_t arity = 0;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

/// First-order term: a variable or a function application. Immutable value
/// type with structural sharing; copying is cheap.
class Term {
 public:
  /// The empty-named constant; a placeholder no parse can produce, used
  /// only as the pre-assignment state of aggregate fields.
  Term();

  static Term var(std::string name);
  static Term app(std::string fun, std::vector<Term> args = {});

  bool is_var() const;
  bool is_app() const;
  const std::string& name() const;
  const std::vector<Term>& args() const;
  Symbol symbol() const;  // applications only

  std::size_t size() const;   // number of nodes
  std::size_t depth() const;  // leaves have depth 1

  /// Pointer equality on the shared node; implies structural equality.
  bool identical(const Term& other) const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  /// Total order (variables before applications, then by name, then by
  /// arguments); lets terms serve as map/set keys.
  std::strong_ordering operator<=>(const Term& other) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  bool is_var;
  std::string name;
  std::vector<Term> args;
};

inline bool Term::is_var() const { return node_->is_var; }
inline bool Term::is_app() const { return !node_->is_var; }
inline const std::string& Term::name() const { return node_->name; }
inline const std::vector<Term>& Term::args() const { return node_->args; }
inline bool Term::identical(const Term& other) const {
  return node_ == other.node_;
}

/// Path of 1-based argument indices; the empty path is the root.
using Position = std::vector<std::size_t>;

/// Substitution: finite map from variable names to terms. Identity bindings
/// are never stored, so two substitutions are equal iff they behave equally.
class Subst {
 public:
  Subst() = default;

  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  const std::map<std::string, Term>& bindings() const { return map_; }

  /// Bound term for `name`, or nullptr.
  const Term* lookup(const std::string& name) const;

  /// Adds a binding; silently drops `x -> x`.
  void bind(const std::string& name, Term value);

  /// Folds `name -> value` into this substitution as a composition step:
  /// rewrites every existing range term with the new binding, then adds it.
  /// Building block for unification; keeps the result idempotent.
  void compose_bind(const std::string& name, const Term& value);

  bool operator==(const Subst&) const = default;

 private:
  std::map<std::string, Term> map_;
};

Term subterm_at(const Term& t, const Position& pos);
Term replace_at(const Term& t, const Position& pos, const Term& replacement);
Term apply_subst(const Subst& subst, const Term& t);

/// All positions of `t` in pre-order (root first, then arguments left to
/// right).
std::vector<Position> positions(const Term& t);

/// Most general matcher such that pattern * result == subject, if any.
std::optional<Subst> match(const Term& pattern, const Term& subject);

/// Most general unifier, idempotent, with eager occurs check.
std::optional<Subst> unify(const Term& a, const Term& b);

/// Prefixes every variable name; the prefix must contain the reserved
/// separator so results cannot collide with user variables.
Term rename_with_prefix(const std::string& prefix, const Term& t);

/// Variable names in first-occurrence order (left to right, outside in).
std::vector<std::string> vars(const Term& t);

bool occurs(const std::string& var, const Term& t);

std::string to_string(const Term& t);
std::string to_string(const Position& pos);

/// Pool of short display names: x, y, z, u, v, w, x1, y1, ...
std::string canonical_var_name(std::size_t i);

/// Function-symbol table enforcing one arity per name.
class Signature {
 public:
  /// Declares name/arity; throws InputError on an arity clash.
  void declare(const std::string& name, std::size_t arity);
  /// Declares every application symbol occurring in `t`.
  void declare_all(const Term& t);

  std::optional<std::size_t> arity(const std::string& name) const;
  bool contains(const std::string& name) const;
  const std::map<std::string, std::size_t>& table() const { return map_; }

 private:
  std::map<std::string, std::size_t> map_;
};

}  // namespace kbrec
