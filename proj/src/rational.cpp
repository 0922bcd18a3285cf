#include "supdiff/rational.hpp"

#include <algorithm>
#include <sstream>

namespace supdiff {

Rat parse_rat(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw parse_error("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Int p(s);
      return Rat(p);
    }
    Int p(s.substr(0, slash));
    Int q(s.substr(slash + 1));
    if (q == 0) throw parse_error("zero denominator in '" + text + "'");
    if (q < 0) {
      p = -p;
      q = -q;
    }
    return Rat(p) / Rat(q);
  } catch (const parse_error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("bad rational literal '" + text + "'");
  }
}

std::string format_rat(const Rat& value) {
  const Int num = boost::multiprecision::numerator(value);
  const Int den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

VecQ parse_rat_csv(const std::string& text) {
  std::vector<Rat> parts;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) parts.push_back(parse_rat(item));
  if (parts.empty()) throw parse_error("empty vector literal");
  VecQ v(static_cast<Eigen::Index>(parts.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = parts[static_cast<size_t>(i)];
  return v;
}

std::string format_vec(const VecQ& v) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_rat(v[i]);
  }
  out += ")";
  return out;
}

VecQ zero_vec(Eigen::Index dim) {
  VecQ v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = 0;
  return v;
}

VecQ unit_vec(Eigen::Index dim, Eigen::Index i) {
  VecQ v = zero_vec(dim);
  v[i] = 1;
  return v;
}

bool lex_less(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

bool vec_eq(const VecQ& a, const VecQ& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

VecQ primitive(const VecQ& v) {
  Int den_lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    den_lcm = boost::multiprecision::lcm(den_lcm, boost::multiprecision::denominator(v[i]));
  Int num_gcd = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const Rat scaled = v[i] * Rat(den_lcm);
    num_gcd = boost::multiprecision::gcd(num_gcd, boost::multiprecision::numerator(scaled));
  }
  if (num_gcd == 0) return v;
  VecQ out(v.size());
  const Rat factor = Rat(den_lcm) / Rat(num_gcd);
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = v[i] * factor;
  return out;
}

void sort_unique(std::vector<VecQ>& vs) {
  std::sort(vs.begin(), vs.end(), lex_less);
  vs.erase(std::unique(vs.begin(), vs.end(), vec_eq), vs.end());
}

}  // namespace supdiff
