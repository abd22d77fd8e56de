#include "e6iso/poly_parse.hpp"

#include <cctype>

#include "e6iso/error.hpp"

namespace e6iso {

std::vector<std::pair<std::string, int>> parse_poly_terms(std::string_view text, std::string_view var) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw Error(ErrorCode::ConfigParseError, "empty polynomial literal");
  std::vector<std::pair<std::string, int>> terms;
  size_t i = 0;
  auto fail = [&] { throw Error(ErrorCode::ConfigParseError, "bad polynomial literal '" + s + "'"); };
  while (i < s.size()) {
    std::string sign = "";
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = "-";
      ++i;
    } else if (!terms.empty()) {
      fail();
    }
    std::string coef;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) coef.push_back(s[i++]);
    int deg = 0;
    if (i < s.size() && s[i] == '*') {
      if (coef.empty()) fail();
      ++i;
    }
    if (s.compare(i, var.size(), var) == 0) {
      i += var.size();
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::string e;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) e.push_back(s[i++]);
        if (e.empty()) fail();
        deg = std::stoi(e);
      }
    } else if (coef.empty()) {
      fail();
    }
    if (coef.empty()) coef = "1";
    terms.emplace_back(sign + coef, deg);
  }
  return terms;
}

}  // namespace e6iso
