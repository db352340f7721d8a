#include "support/support.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace kbrec::testsupport {

Term wrap_pair(const Term& l, const Term& r) {
  return Term::app("#pair", {l, r});
}

bool is_instance_of(const Term& general, const Term& specific) {
  return match(general, specific).has_value();
}

bool is_variant_term(const Term& a, const Term& b) {
  return is_instance_of(a, b) && is_instance_of(b, a);
}

namespace {
Term random_term_rec(Rng& rng, const TermGenOptions& opt,
                     std::size_t depth_left) {
  std::vector<int> choices;  // 0.. = symbol index, -1.. = var ~(index)
  for (std::size_t i = 0; i < opt.symbols.size(); ++i)
    if (opt.symbols[i].arity == 0 || depth_left > 1)
      choices.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < opt.vars.size(); ++i)
    choices.push_back(~static_cast<int>(i));
  std::uniform_int_distribution<std::size_t> pick(0, choices.size() - 1);
  int c = choices[pick(rng)];
  if (c < 0) return Term::var(opt.vars[static_cast<std::size_t>(~c)]);
  const Symbol& sym = opt.symbols[static_cast<std::size_t>(c)];
  std::vector<Term> args;
  for (std::size_t i = 0; i < sym.arity; ++i)
    args.push_back(random_term_rec(rng, opt, depth_left - 1));
  return Term::app(sym.name, std::move(args));
}
}  // namespace

Term random_term(Rng& rng, const TermGenOptions& opt) {
  return random_term_rec(rng, opt, opt.max_depth);
}

Subst random_subst(Rng& rng, const std::vector<std::string>& vars,
                   const TermGenOptions& opt) {
  Subst subst;
  for (const std::string& v : vars) subst.bind(v, random_term(rng, opt));
  return subst;
}

Precedence random_precedence(Rng& rng, const std::vector<std::string>& names,
                             std::size_t num_pairs) {
  std::vector<std::string> order = names;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<std::pair<std::string, std::string>> pairs;
  if (order.size() >= 2) {
    std::uniform_int_distribution<std::size_t> pick(0, order.size() - 1);
    for (std::size_t k = 0; k < num_pairs; ++k) {
      std::size_t i = pick(rng);
      std::size_t j = pick(rng);
      if (i == j) continue;
      if (i > j) std::swap(i, j);
      pairs.emplace_back(order[i], order[j]);
    }
  }
  return Precedence::from_pairs(pairs);
}

Trs random_trs(Rng& rng, const TermGenOptions& opt, std::size_t max_rules) {
  std::uniform_int_distribution<std::size_t> count(1, max_rules);
  std::size_t n = count(rng);
  Trs trs;
  for (std::size_t i = 1; i <= n; ++i) {
    Term lhs = Term::var("x");
    while (lhs.is_var()) lhs = random_term(rng, opt);
    TermGenOptions rhs_opt = opt;
    rhs_opt.vars = vars(lhs);
    Term rhs = random_term(rng, rhs_opt);
    trs.push_back(Rule{static_cast<int>(i), lhs, rhs});
  }
  return trs;
}

std::optional<bool> convertible_bfs(const Es& eqs, const Term& s,
                                    const Term& t, std::size_t max_visited,
                                    std::size_t size_slack) {
  const std::size_t max_size = std::max(s.size(), t.size()) + size_slack;
  Trs directed;
  int idx = 1;
  for (const Equation& e : eqs) {
    auto lv = vars(e.lhs);
    auto rv = vars(e.rhs);
    std::set<std::string> lset(lv.begin(), lv.end());
    std::set<std::string> rset(rv.begin(), rv.end());
    auto contains = [](const std::set<std::string>& big,
                       const std::vector<std::string>& small) {
      for (const std::string& v : small)
        if (!big.count(v)) return false;
      return true;
    };
    if (contains(lset, rv)) directed.push_back(Rule{idx++, e.lhs, e.rhs});
    if (contains(rset, lv)) directed.push_back(Rule{idx++, e.rhs, e.lhs});
  }
  std::set<Term> visited{s};
  std::deque<Term> frontier{s};
  while (!frontier.empty()) {
    Term cur = frontier.front();
    frontier.pop_front();
    if (cur == t) return true;
    for (const Step& st : enumerate_steps(directed, cur)) {
      if (st.target.size() > max_size) continue;
      if (visited.count(st.target)) continue;
      if (visited.size() >= max_visited) return std::nullopt;
      visited.insert(st.target);
      frontier.push_back(st.target);
    }
  }
  return false;
}

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = {
      {"two-unary",
       "(VAR x) (EQUATIONS f(f(x)) = f(x), g(g(f(x))) = g(x))"},
      {"add-zero-succ",
       "(VAR x y) (PREC plus > s) "
       "(EQUATIONS plus(zero, x) = x, plus(s(x), y) = s(plus(x, y)))"},
      {"append",
       "(VAR x y z) (PREC app > cons) "
       "(EQUATIONS app(nil, y) = y, app(cons(x, y), z) = cons(x, app(y, z)))"},
      {"negation",
       "(VAR x) (PREC not > true, not > false) "
       "(EQUATIONS not(not(x)) = x, not(true) = false, not(false) = true)"},
      {"square-collapse", "(VAR x) (PREC f > g) (EQUATIONS f(f(x)) = g(x))"},
      {"shift", "(VAR x) (PREC f > g) (EQUATIONS f(g(x)) = g(f(x)))"},
      {"cancel", "(VAR x) (EQUATIONS a(b(x)) = x, b(a(x)) = x)"},
      {"unfold", "(VAR x) (PREC f > g) (EQUATIONS f(x) = g(g(x)))"},
      {"idempotent", "(VAR x) (EQUATIONS h(h(x)) = h(x))"},
      {"assoc",
       "(VAR x y z) (EQUATIONS plus(plus(x, y), z) = plus(x, plus(y, z)))"},
      {"doubling",
       "(VAR x) (PREC d > s, d > z) "
       "(EQUATIONS d(z) = z, d(s(x)) = s(s(d(x))))"},
      {"conditionals",
       "(VAR x y) (EQUATIONS if(true, x, y) = x, if(false, x, y) = y)"},
  };
  return entries;
}

Trs make_rc() {
  Term x1 = V("x1"), x2 = V("x2"), x3 = V("x3"), x4 = V("x4"), x5 = V("x5");
  Term c = F("c");
  auto g = [](const Term& a, const Term& b) { return F("g", {a, b}); };
  auto h = [](const Term& a, const Term& b) { return F("h", {a, b}); };
  auto f = [](const Term& a, const Term& b) { return F("f", {a, b}); };

  Trs trs;
  int idx = 1;
  auto add = [&](const Term& lhs, const Term& rhs) {
    trs.push_back(Rule{idx++, lhs, rhs});
  };

  add(f(g(x1, x2), g(x3, x4)), h(x1, h(x2, g(x3, x4))));
  add(f(g(g(x1, x2), g(x3, x4)), x5), h(x5, h(g(x1, x2), g(x3, x4))));

  std::vector<Term> non_var_ts = {c, f(x4, x5), g(x4, x5), h(x4, x5)};
  std::vector<std::function<Term(const Term&)>> schemas2 = {
      [&](const Term& t) { return h(g(t, x1), h(x2, x3)); },
      [&](const Term& t) { return h(g(x1, t), h(x2, x3)); },
      [&](const Term& t) { return h(x1, h(g(t, x2), x3)); },
      [&](const Term& t) { return h(x1, h(g(x2, t), x3)); },
      [&](const Term& t) { return h(x1, h(x2, g(t, x3))); },
      [&](const Term& t) { return h(x1, h(x2, g(x3, t))); },
  };
  for (const auto& schema : schemas2)
    for (const Term& t : non_var_ts) add(schema(t), c);

  std::vector<Term> var_ys = {x1, x2, x3, x4, x5};
  std::vector<std::function<Term(const Term&)>> schemas3 = {
      [&](const Term& y) { return h(g(y, x1), h(g(x2, x3), g(x4, x5))); },
      [&](const Term& y) { return h(g(x1, y), h(g(x2, x3), g(x4, x5))); },
      [&](const Term& y) { return h(g(x1, x2), h(g(y, x3), g(x4, x5))); },
      [&](const Term& y) { return h(g(x1, x2), h(g(x3, y), g(x4, x5))); },
      [&](const Term& y) { return h(g(x1, x2), h(g(x3, x4), g(y, x5))); },
      [&](const Term& y) { return h(g(x1, x2), h(g(x3, x4), g(x5, y))); },
  };
  for (const auto& schema : schemas3)
    for (const Term& y : var_ys) add(schema(y), c);

  add(h(x1, c), c);
  return trs;
}

std::pair<Term, Term> rc_critical_pair() {
  Term x1 = V("x1"), x2 = V("x2"), x3 = V("x3");
  Term x4 = V("x4"), x5 = V("x5"), x6 = V("x6");
  auto g = [](const Term& a, const Term& b) { return F("g", {a, b}); };
  auto h = [](const Term& a, const Term& b) { return F("h", {a, b}); };
  return {h(g(x1, x2), h(g(x3, x4), g(x5, x6))),
          h(g(x5, x6), h(g(x1, x2), g(x3, x4)))};
}

std::vector<Term> rc_candidates() {
  Term x4 = V("x4"), x5 = V("x5");
  return {V("x1"),          V("x2"),          V("x3"),
          x4,               x5,               F("c"),
          F("f", {x4, x5}), F("g", {x4, x5}), F("h", {x4, x5})};
}

}  // namespace kbrec::testsupport
