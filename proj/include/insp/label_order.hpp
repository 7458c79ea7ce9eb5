#pragma once

#include <string>
#include <string_view>

namespace insp {

// Natural order on vertex labels: maximal digit runs compare by numeric value,
// every other character by code point. Labels equal under that rule (they differ
// only in leading zeros) fall back to plain lexicographic order, so the result
// is a strict total order.
inline int natural_compare(std::string_view a, std::string_view b) {
  auto digit = [](char c) { return c >= '0' && c <= '9'; };
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (digit(a[i]) && digit(b[j])) {
      std::size_t ie = i, je = j;
      while (ie < a.size() && digit(a[ie])) ++ie;
      while (je < b.size() && digit(b[je])) ++je;
      std::size_t ia = i, jb = j;
      while (ia + 1 < ie && a[ia] == '0') ++ia;
      while (jb + 1 < je && b[jb] == '0') ++jb;
      if (ie - ia != je - jb) return ie - ia < je - jb ? -1 : 1;
      int c = a.substr(ia, ie - ia).compare(b.substr(jb, je - jb));
      if (c != 0) return c < 0 ? -1 : 1;
      i = ie;
      j = je;
    } else {
      auto ca = static_cast<unsigned char>(a[i]);
      auto cb = static_cast<unsigned char>(b[j]);
      if (ca != cb) return ca < cb ? -1 : 1;
      ++i;
      ++j;
    }
  }
  if (i < a.size()) return 1;
  if (j < b.size()) return -1;
  int c = a.compare(b);
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

struct LabelLess {
  using is_transparent = void;
  bool operator()(std::string_view a, std::string_view b) const { return natural_compare(a, b) < 0; }
};

}  // namespace insp
