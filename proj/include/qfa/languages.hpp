#pragma once

#include <string>

#include "qfa/closure.hpp"

namespace qfa {

struct Language {
  std::string name;
  std::string alphabet;
  Membership member;
};

// { ua : |u| <= m } over {a, b}
Language lang_am(int m);
// { a^i : i mod m == 0 } over {a}
Language lang_bm(int m);
// { w : |w| = m } over {a, b}
Language lang_cm(int m);
// palindromes over {a, b}
Language lang_pal();
// { a^n b^n } over {a, b}
Language lang_leq();

Language complement(const Language& l);

}  // namespace qfa
