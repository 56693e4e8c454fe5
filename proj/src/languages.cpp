#include "qfa/languages.hpp"

#include <algorithm>

#include "qfa/error.hpp"

namespace qfa {

namespace {

void require_m(int m) {
  if (m < 1) throw ArgumentError("m must be at least 1");
}

}  // namespace

Language lang_am(int m) {
  require_m(m);
  return {"A_" + std::to_string(m), "ab", [m](const std::string& w) {
            return !w.empty() && w.back() == 'a' && static_cast<int>(w.size()) <= m + 1;
          }};
}

Language lang_bm(int m) {
  require_m(m);
  return {"B_" + std::to_string(m), "a", [m](const std::string& w) {
            return std::all_of(w.begin(), w.end(), [](char c) { return c == 'a'; }) &&
                   w.size() % static_cast<std::size_t>(m) == 0;
          }};
}

Language lang_cm(int m) {
  require_m(m);
  return {"C_" + std::to_string(m), "ab",
          [m](const std::string& w) { return static_cast<int>(w.size()) == m; }};
}

Language lang_pal() {
  return {"L_pal", "ab", [](const std::string& w) { return std::equal(w.begin(), w.end(), w.rbegin()); }};
}

Language lang_leq() {
  return {"L_eq", "ab", [](const std::string& w) {
            const auto split = w.find_first_not_of('a');
            const std::size_t n_a = split == std::string::npos ? w.size() : split;
            const std::string rest = w.substr(n_a);
            return rest.find('a') == std::string::npos && rest.size() == n_a;
          }};
}

Language complement(const Language& l) {
  Membership inner = l.member;
  return {"co-" + l.name, l.alphabet, [inner](const std::string& w) { return !inner(w); }};
}

}  // namespace qfa
