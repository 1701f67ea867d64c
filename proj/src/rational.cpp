#include "tropmod/rational.hpp"

#include <cstdlib>
#include <sstream>

namespace tropmod {

Rat parse_rational(const std::string& s) {
  std::string t;
  for (char c : s)
    if (!isspace(static_cast<unsigned char>(c))) t += c;
  if (t.empty()) throw Error(ErrorCode::ParseError, "empty rational");
  auto parse_int = [](const std::string& u) -> Int {
    if (u.empty()) throw Error(ErrorCode::ParseError, "empty integer");
    size_t pos = 0;
    Int value = 0;
    try {
      value = std::stoll(u, &pos);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "bad integer '" + u + "'");
    }
    if (pos != u.size()) throw Error(ErrorCode::ParseError, "bad integer '" + u + "'");
    return value;
  };
  auto slash = t.find('/');
  if (slash == std::string::npos) return Rat(parse_int(t));
  Int num = parse_int(t.substr(0, slash));
  Int den = parse_int(t.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
  return Rat(num, den);
}

VecQ parse_rational_list(const std::string& s) {
  VecQ out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, ',')) out.push_back(parse_rational(cur));
  if (out.empty()) throw Error(ErrorCode::ParseError, "empty rational list");
  return out;
}

std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

std::string to_string(const VecQ& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s;
}

}  // namespace tropmod
