#include "kbrec/critpairs.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kbrec {

namespace {

// Bundles a rule's sides into one term so variant checking uses a single
// consistent renaming across both sides. The marker name contains the
// reserved separator and cannot occur in user terms.
Term pairify(const Rule& r) { return Term::app("#pair", {r.lhs, r.rhs}); }

}  // namespace

bool is_variant(const Rule& a, const Rule& b) {
  Term pa = pairify(a);
  Term pb = pairify(b);
  return match(pa, pb).has_value() && match(pb, pa).has_value();
}

std::vector<Overlap> overlaps(const Trs& trs) {
  std::vector<Overlap> out;
  for (const Rule& outer : trs) {
    Term outer_lhs = rename_with_prefix(kOuterPrefix, outer.lhs);
    for (const Rule& inner : trs) {
      Term inner_lhs = rename_with_prefix(kInnerPrefix, inner.lhs);
      bool variants = is_variant(inner, outer);
      for (const Position& pos : positions(outer_lhs)) {
        Term sub = subterm_at(outer_lhs, pos);
        if (sub.is_var()) continue;
        if (pos.empty() && variants) continue;
        if (auto mgu = unify(sub, inner_lhs))
          out.push_back(
              Overlap{inner.index, outer.index, pos, std::move(*mgu)});
      }
    }
  }
  return out;
}

CriticalPair overlap_to_cp(const Trs& trs, const Overlap& ov) {
  const Rule* inner = find_rule(trs, ov.inner_index);
  const Rule* outer = find_rule(trs, ov.outer_index);
  if (!inner || !outer)
    throw InputError("overlap references a rule outside the system");
  Term inner_rhs = rename_with_prefix(kInnerPrefix, inner->rhs);
  Term outer_lhs = rename_with_prefix(kOuterPrefix, outer->lhs);
  Term outer_rhs = rename_with_prefix(kOuterPrefix, outer->rhs);

  Term peak = apply_subst(ov.mgu, outer_lhs);
  Term left = replace_at(peak, ov.pos, apply_subst(ov.mgu, inner_rhs));
  Term right = apply_subst(ov.mgu, outer_rhs);

  // Pull the mgu back through the renaming so each step's substitution is
  // over the original rule's variables and replays against the original
  // system.
  auto pullback = [&](const Rule& r, const char* prefix) {
    Subst s;
    std::set<std::string> seen;
    for (const Term* side : {&r.lhs, &r.rhs})
      for (const std::string& v : vars(*side)) {
        if (!seen.insert(v).second) continue;
        Term renamed = Term::var(prefix + v);
        const Term* bound = ov.mgu.lookup(renamed.name());
        s.bind(v, bound ? *bound : renamed);
      }
    return s;
  };

  Step left_step{peak,        left,   inner->index, StepKind::Rule,
                 StepDir::LR, ov.pos, pullback(*inner, kInnerPrefix)};
  Step right_step{peak,        right, outer->index, StepKind::Rule,
                  StepDir::LR, {},    pullback(*outer, kOuterPrefix)};
  return CriticalPair{std::move(peak),      std::move(left),
                      std::move(right),     std::move(left_step),
                      std::move(right_step)};
}

std::vector<CriticalPair> critical_pairs(const Trs& trs) {
  std::vector<CriticalPair> out;
  for (const Overlap& ov : overlaps(trs)) out.push_back(overlap_to_cp(trs, ov));
  return out;
}

CpCheck all_cps_joinable(const Trs& trs, int fuel) {
  bool exhausted = false;
  for (const CriticalPair& cp : critical_pairs(trs)) {
    try {
      if (!joinable(trs, cp.left, cp.right, fuel))
        return CpCheck{CpCheck::Status::NonJoinable, cp};
    } catch (const FuelError&) {
      exhausted = true;
    }
  }
  if (exhausted) return CpCheck{CpCheck::Status::FuelExhausted, std::nullopt};
  return CpCheck{CpCheck::Status::AllJoinable, std::nullopt};
}

namespace {

std::vector<std::string> fresh_var_pool(std::size_t n) {
  static const char* base[] = {"x", "y", "z", "u", "v", "w"};
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i)
    out.push_back(i < 6 ? base[i]
                        : std::string(base[i % 6]) + std::to_string(i / 6));
  return out;
}

}  // namespace

OracleResult local_confluence_oracle(const Trs& trs,
                                     const OracleBounds& bounds) {
  std::set<Symbol> symbols;
  for (const Rule& r : trs)
    for (const Term* side : {&r.lhs, &r.rhs})
      for (const Position& p : positions(*side)) {
        Term sub = subterm_at(*side, p);
        if (sub.is_app()) symbols.insert(sub.symbol());
      }

  OracleResult res;
  auto spend = [&](std::size_t& counter) {
    ++counter;
    return res.terms_enumerated + res.peaks_checked <= bounds.budget;
  };

  // layers[d] holds all terms of depth exactly d+1
  std::vector<std::vector<Term>> layers;
  layers.emplace_back();
  for (const std::string& v : fresh_var_pool(bounds.num_vars)) {
    layers.back().push_back(Term::var(v));
    if (!spend(res.terms_enumerated)) {
      res.status = OracleResult::Status::ResourceLimit;
      return res;
    }
  }
  for (const Symbol& sym : symbols) {
    if (sym.arity != 0) continue;
    layers.back().push_back(Term::app(sym.name));
    if (!spend(res.terms_enumerated)) {
      res.status = OracleResult::Status::ResourceLimit;
      return res;
    }
  }

  for (std::size_t d = 2; d <= bounds.max_depth; ++d) {
    std::vector<Term> pool;  // depth <= d-1
    for (const auto& layer : layers) pool.insert(pool.end(), layer.begin(), layer.end());
    std::size_t deepest_start = pool.size() - layers.back().size();
    std::vector<Term> next;
    for (const Symbol& sym : symbols) {
      if (sym.arity == 0) continue;
      // odometer over argument tuples; at least one argument from the
      // deepest layer so every term lands in exactly one layer
      std::vector<std::size_t> idx(sym.arity, 0);
      for (;;) {
        bool has_deep = false;
        for (std::size_t i : idx) has_deep = has_deep || i >= deepest_start;
        if (has_deep) {
          std::vector<Term> args;
          args.reserve(sym.arity);
          for (std::size_t i : idx) args.push_back(pool[i]);
          next.push_back(Term::app(sym.name, std::move(args)));
          if (!spend(res.terms_enumerated)) {
            res.status = OracleResult::Status::ResourceLimit;
            return res;
          }
        }
        std::size_t k = 0;
        while (k < idx.size() && ++idx[k] == pool.size()) idx[k++] = 0;
        if (k == idx.size()) break;
      }
    }
    layers.push_back(std::move(next));
  }

  for (const auto& layer : layers)
    for (const Term& u : layer) {
      std::vector<Term> reducts;
      for (const Step& st : enumerate_steps(trs, u)) reducts.push_back(st.target);
      std::sort(reducts.begin(), reducts.end());
      reducts.erase(std::unique(reducts.begin(), reducts.end()), reducts.end());
      for (std::size_t i = 0; i < reducts.size(); ++i)
        for (std::size_t j = i + 1; j < reducts.size(); ++j) {
          if (!spend(res.peaks_checked)) {
            res.status = OracleResult::Status::ResourceLimit;
            return res;
          }
          if (!joinable(trs, reducts[i], reducts[j], bounds.fuel)) {
            res.status = OracleResult::Status::NotLocallyConfluent;
            res.witness = OraclePeak{u, reducts[i], reducts[j]};
            return res;
          }
        }
    }
  res.status = OracleResult::Status::LocallyConfluent;
  return res;
}

}  // namespace kbrec
