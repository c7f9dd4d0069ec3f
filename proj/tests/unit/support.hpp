#pragma once

#include "doctest.h"

#include "recurshift/index.hpp"
#include "recurshift/word.hpp"

namespace doctest {
template <>
struct StringMaker<__int128> {
  static String convert(__int128 v) { return recurshift::to_string(v).c_str(); }
};
template <>
struct StringMaker<recurshift::Word> {
  static String convert(const recurshift::Word& w) { return ("\"" + w.to_string() + "\"").c_str(); }
};
}  // namespace doctest

using recurshift::Index;

inline recurshift::Word W(const char* s) { return recurshift::Word::from_string(s); }
