#include "kbrec/order.hpp"

#include <cctype>

namespace kbrec {

Precedence Precedence::from_pairs(
    const std::vector<std::pair<std::string, std::string>>& pairs) {
  Precedence p;
  for (const auto& [a, b] : pairs) p.gt_.insert({a, b});
  // transitive closure by relaxation; symbol counts are tiny
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [a, b] : p.gt_)
      for (const auto& [c, d] : p.gt_)
        if (b == c && p.gt_.insert({a, d}).second) changed = true;
  }
  for (const auto& [a, b] : p.gt_)
    if (a == b) throw InputError("precedence cycle involving '" + a + "'");
  return p;
}

namespace {

bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<std::string> split_idents(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  for (std::string& s : out) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    std::size_t e = s.find_last_not_of(" \t\r\n");
    s = b == std::string::npos ? "" : s.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace

Precedence parse_precedence(std::string_view text) {
  std::size_t b = text.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return Precedence();
  text.remove_prefix(b);
  if (text.substr(0, 4) == "PREC" &&
      (text.size() == 4 || !is_ident_char(text[4])))
    text.remove_prefix(4);
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const std::string& chain : split_idents(text, ',')) {
    if (chain.empty()) {
      if (split_idents(text, ',').size() == 1) break;  // blank input
      throw InputError("empty precedence chain");
    }
    std::vector<std::string> names = split_idents(chain, '>');
    if (names.size() < 2)
      throw InputError("precedence chain '" + chain + "' needs at least f > g");
    for (const std::string& n : names) {
      if (n.empty()) throw InputError("missing name in precedence chain");
      for (char c : n)
        if (!is_ident_char(c))
          throw InputError("bad character in precedence name '" + n + "'");
    }
    for (std::size_t i = 0; i + 1 < names.size(); ++i)
      pairs.emplace_back(names[i], names[i + 1]);
  }
  return Precedence::from_pairs(pairs);
}

bool lpo_gt(const Precedence& prec, const Term& s, const Term& t) {
  if (s.is_var()) return false;
  if (t.is_var()) return occurs(t.name(), s);
  for (const Term& si : s.args())
    if (si == t || lpo_gt(prec, si, t)) return true;
  auto dominates_args = [&]() {
    for (const Term& tj : t.args())
      if (!lpo_gt(prec, s, tj)) return false;
    return true;
  };
  if (prec.gt(s.name(), t.name())) return dominates_args();
  if (s.name() == t.name() && s.args().size() == t.args().size()) {
    for (std::size_t i = 0; i < s.args().size(); ++i) {
      if (s.args()[i] == t.args()[i]) continue;
      return lpo_gt(prec, s.args()[i], t.args()[i]) && dominates_args();
    }
  }
  return false;
}

Orientation orient(const Precedence& prec, const Term& lhs, const Term& rhs) {
  if (lpo_gt(prec, lhs, rhs)) return Orientation::LeftToRight;
  if (lpo_gt(prec, rhs, lhs)) return Orientation::RightToLeft;
  return Orientation::Unorientable;
}

bool check_termination(const Precedence& prec, const Trs& trs) {
  for (const Rule& r : trs)
    if (!lpo_gt(prec, r.lhs, r.rhs)) return false;
  return true;
}

}  // namespace kbrec
