#include "blo/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

namespace blo {
namespace {

template <unsigned N>
GaussRule make_rule() {
  using Gauss = boost::math::quadrature::gauss<double, N>;
  const auto& x = Gauss::abscissa();
  const auto& w = Gauss::weights();
  GaussRule rule;
  // Boost stores the non-negative half; mirror it, ascending.
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] == 0.0) continue;
    rule.nodes.push_back(-x[i]);
    rule.weights.push_back(w[i]);
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    rule.nodes.push_back(x[i]);
    rule.weights.push_back(w[i]);
  }
  return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  static const GaussRule r4 = make_rule<4>();
  static const GaussRule r6 = make_rule<6>();
  static const GaussRule r8 = make_rule<8>();
  static const GaussRule r10 = make_rule<10>();
  static const GaussRule r12 = make_rule<12>();
  static const GaussRule r16 = make_rule<16>();
  static const GaussRule r20 = make_rule<20>();
  static const GaussRule r24 = make_rule<24>();
  static const GaussRule r32 = make_rule<32>();
  switch (order) {
    case 4: return r4;
    case 6: return r6;
    case 8: return r8;
    case 10: return r10;
    case 12: return r12;
    case 16: return r16;
    case 20: return r20;
    case 24: return r24;
    case 32: return r32;
    default:
      throw DomainError("unsupported Gauss-Legendre order " + std::to_string(order));
  }
}

}  // namespace blo
