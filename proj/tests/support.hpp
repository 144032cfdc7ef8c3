#ifndef ADLV_TESTS_SUPPORT_HPP_
#define ADLV_TESTS_SUPPORT_HPP_

#include <random>
#include <unordered_set>

#include "adlv/affine_weyl.hpp"

namespace adlv::testing {

inline ExtAffElt random_element(const AffineWeylGroup& g, std::mt19937& rng,
                                std::size_t max_word) {
  std::uniform_int_distribution<std::size_t> len(0, max_word);
  std::uniform_int_distribution<std::size_t> node(0, g.num_nodes() - 1);
  std::uniform_int_distribution<std::size_t> tau(0, g.omega().size() - 1);
  ExtAffElt x = g.omega()[tau(rng)];
  const std::size_t k = len(rng);
  for (std::size_t i = 0; i < k; ++i) x = g.left_mul(node(rng), x);
  return x;
}

// Brute force: all z x delta(z)^{-1} with z = t^nu u, |nu_i| <= radius.
inline std::unordered_set<ExtAffElt> conjugates_in_ball(const AffineWeylGroup& g,
                                                        const DiagramAut& d,
                                                        const ExtAffElt& x, int radius) {
  const RootDatum& rd = g.rd();
  std::unordered_set<ExtAffElt> out;
  Coweight nu(rd.rank(), -radius);
  for (;;) {
    for (const FiniteWeylElt& u : rd.elements()) {
      const ExtAffElt z = g.multiply(g.translation(nu), g.finite(u));
      out.insert(g.multiply(g.multiply(z, x), g.inverse(g.apply(d, z))));
    }
    std::size_t i = 0;
    while (i < nu.size() && nu[i] == radius) nu[i++] = -radius;
    if (i == nu.size()) break;
    ++nu[i];
  }
  return out;
}

}  // namespace adlv::testing

#endif  // ADLV_TESTS_SUPPORT_HPP_
