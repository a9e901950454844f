#include "drinfeld/skew.hpp"

#include <sstream>

namespace drinfeld {

SkewPoly skew_mul(const SkewPoly& f, const SkewPoly& g) { return f * g; }

SigmaPoly adjoint(const SkewPoly& f) {
  std::vector<CInf> c;
  c.reserve(f.coeffs().size());
  for (size_t i = 0; i < f.coeffs().size(); ++i)
    c.push_back(f.coeffs()[i].frobenius(-static_cast<int64_t>(i)));
  return SigmaPoly(std::move(c));
}

CInf skew_eval(const SkewPoly& f, const CInf& x) {
  CInf acc = CInf::zero(x.field());
  CInf xp = x;
  for (size_t i = 0; i < f.coeffs().size(); ++i) {
    if (i > 0) xp = xp.frobenius(1);
    if (!f.coeffs()[i].is_exact_zero()) acc = acc + f.coeffs()[i] * xp;
  }
  return acc;
}

std::string to_string(const SkewPoly& f) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < f.coeffs().size(); ++i) {
    if (f.coeffs()[i].is_exact_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << f.coeffs()[i].to_string() << ")";
    if (i > 0) os << "*tau^" << i;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace drinfeld
