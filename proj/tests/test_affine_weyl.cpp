#include <random>
#include <set>

#include "adlv/affine_weyl.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace adlv;
using adlv::testing::random_element;

namespace {

// Number of affine hyperplanes H_{a,k} separating x(A) from the base alcove A,
// computed from an interior point of A.
std::size_t hyperplane_count(const AffineWeylGroup& g, const ExtAffElt& x) {
  const RootDatum& rd = g.rd();
  std::int64_t height = 0;
  for (const Root& a : rd.positive_roots()) {
    std::int64_t h = 0;
    for (auto c : a) h += c;
    height = std::max(height, h);
  }
  QCoweight p(rd.rank());
  for (std::size_t i = 0; i < rd.rank(); ++i)
    p[i] = Rational(1, height + 1) * Rational(1000 + static_cast<std::int64_t>(i), 1001 + 10);
  QCoweight q = x.w.apply(p);
  for (std::size_t i = 0; i < rd.rank(); ++i) q[i] += x.mu[i];
  std::size_t n = 0;
  for (const Root& a : rd.positive_roots()) {
    const Rational pa = rd.pair(p, a), qa = rd.pair(q, a);
    REQUIRE(pa > Rational(0));
    REQUIRE(pa < Rational(1));
    REQUIRE(qa.denominator() != 1);
    const std::int64_t fp = boost::rational_cast<std::int64_t>(pa) - (pa < Rational(0) ? 1 : 0);
    std::int64_t fq = qa.numerator() / qa.denominator();
    if (qa < Rational(0)) fq -= 1;
    n += static_cast<std::size_t>(std::llabs(fq - fp));
  }
  return n;
}

}  // namespace

TEST_CASE("length formula equals hyperplane count") {
  std::mt19937 rng(1);
  for (const char* label : {"A1", "A2", "A3", "B2", "C2", "G2", "B3", "C3", "D4", "F4", "A1xA2"}) {
    CAPTURE(label);
    AffineWeylGroup g(build_root_datum(label));
    std::size_t checked = 0;
    while (checked < 1000) {
      const ExtAffElt x = random_element(g, rng, 24);
      const std::size_t l = g.length(x);
      if (l > 20) continue;
      CHECK(l == hyperplane_count(g, x));
      ++checked;
    }
  }
}

TEST_CASE("A1 group law examples") {
  AffineWeylGroup g(build_root_datum("A1"));
  const ExtAffElt s0 = g.simple(0), s1 = g.simple(1);
  // alpha^vee = 2 omega^vee in fundamental-coweight coordinates
  CHECK(g.multiply(s0, s1) == g.translation({2}));
  CHECK(g.multiply(g.translation({1}), g.translation({3})) == g.translation({4}));
  const ExtAffElt x = g.parse("t[-2]*s1");
  CHECK(g.multiply(x, g.identity()) == x);
  CHECK(g.multiply(x, g.inverse(x)) == g.identity());
  CHECK(g.length(x) == 3);
  CHECK(g.length(s0) == 1);
  CHECK(g.length(g.multiply(s0, s0)) == 0);
  CHECK(g.multiply(s0, s0) == g.identity());
  CHECK(g.length(g.translation({2})) == 2);
  // Omega = {e, t^{omega} s}
  REQUIRE(g.omega().size() == 2);
  CHECK(g.omega()[0] == g.identity());
  CHECK(g.omega()[1] == g.parse("t[1]*s1"));
  CHECK(g.omega_perm(1) == std::vector<Node>{1, 0});
  CHECK_THROWS_AS(g.multiply(x, AffineWeylGroup(build_root_datum("A2")).identity()), ArgumentError);
}

TEST_CASE("A2 lengths and Omega") {
  AffineWeylGroup g(build_root_datum("A2"));
  CHECK(g.length(g.translation({1, 1})) == 4);
  CHECK(g.omega().size() == 3);
  CHECK(g.omega_is_cyclic());
  for (const auto& t : g.omega()) CHECK(g.length(t) == 0);
  CHECK(g.multiply(g.omega()[1], g.omega()[2]) == g.identity());
  // length-zero elements with translation in a box are exactly Omega
  const auto& W = g.rd().elements();
  std::size_t found = 0;
  for (std::int64_t a = -2; a <= 2; ++a)
    for (std::int64_t b = -2; b <= 2; ++b)
      for (const auto& w : W)
        if (g.length({{a, b}, w}) == 0) ++found;
  CHECK(found == 3);
}

TEST_CASE("Omega order and node permutations") {
  for (const char* label : {"A1", "A2", "A3", "B2", "C3", "D4", "D5", "E6", "E7", "G2", "A1xA1"}) {
    CAPTURE(label);
    AffineWeylGroup g(build_root_datum(label));
    CHECK(g.omega().size() == static_cast<std::size_t>(*g.rd().fundamental_group().order()));
    for (std::size_t k = 0; k < g.omega().size(); ++k) {
      CHECK(g.length(g.omega()[k]) == 0);
      CHECK(g.omega_part(g.omega()[k]) == k);
      std::set<Node> img(g.omega_perm(k).begin(), g.omega_perm(k).end());
      CHECK(img.size() == g.num_nodes());
    }
  }
  AffineWeylGroup d4(build_root_datum("D4"));
  CHECK_FALSE(d4.omega_is_cyclic());
}

TEST_CASE("reduced words") {
  std::mt19937 rng(3);
  for (const char* label : {"A1", "A2", "C2", "G2"}) {
    AffineWeylGroup g(build_root_datum(label));
    for (int t = 0; t < 300; ++t) {
      const ExtAffElt x = random_element(g, rng, 14);
      const WordForm f = g.reduced_word(x);
      CHECK(f.word.size() == g.length(x));
      CHECK(g.from_word(f.word, f.tau) == x);
      CHECK(g.parse(g.format(x)) == x);
      CHECK(g.parse(g.format_word(x), true) == x);
      // descents agree with length comparison
      for (Node n = 0; n < g.num_nodes(); ++n) {
        CHECK(g.is_left_descent(x, n) == (g.length(g.left_mul(n, x)) < g.length(x)));
        CHECK(g.is_right_descent(x, n) == (g.length(g.right_mul(x, n)) < g.length(x)));
      }
    }
  }
  AffineWeylGroup a1(build_root_datum("A1"));
  CHECK(a1.reduced_word(a1.omega()[1]).word.empty());
  CHECK(a1.reduced_word(a1.simple(0)).word == std::vector<Node>{0});
  CHECK(a1.reduced_word(a1.translation({2})).word.size() == 2);
  CHECK(a1.reduced_word(a1.parse("t[4]*s1")).word == std::vector<Node>{0, 1, 0});
}

TEST_CASE("literal parsing") {
  AffineWeylGroup g(build_root_datum("A1"));
  CHECK(g.parse("w[0 1 0]") == g.parse("t[4]*s1"));
  CHECK(g.parse(" w[ 0, 1 ]  @ tau^1 ") == g.multiply(g.multiply(g.simple(0), g.simple(1)), g.omega()[1]));
  CHECK(g.parse("tau") == g.omega()[1]);
  CHECK(g.parse("tau^3") == g.omega()[1]);
  CHECK(g.parse("s0 * s1") == g.translation({2}));
  CHECK(g.parse("w[]") == g.identity());
  CHECK_NOTHROW(g.parse("w[1 1]"));
  CHECK_THROWS_AS(g.parse("w[1 1]", true), ArgumentError);
  CHECK_THROWS_AS(g.parse("t[1,2]"), ArgumentError);
  CHECK_THROWS_AS(g.parse("w[3]"), ArgumentError);
  CHECK_THROWS_AS(g.parse("q"), ArgumentError);
  AffineWeylGroup p(build_root_datum("A1xA1"));
  CHECK(p.parse("s0_1") == p.simple(1));
  CHECK(p.node_label(1) == "0_1");
}

TEST_CASE("double coset form") {
  AffineWeylGroup g(build_root_datum("A1"));
  const auto& rd = g.rd();
  const FiniteWeylElt s = rd.simple_reflection(0), e = rd.identity();
  auto f = g.double_coset_form(g.translation({3}));
  CHECK(f.x == e);
  CHECK(f.mu == Coweight{3});
  CHECK(f.y == e);
  f = g.double_coset_form(g.parse("t[4]*s1"));
  CHECK(f.x == e);
  CHECK(f.mu == Coweight{4});
  CHECK(f.y == s);
  // t^{-alpha} s = s t^{alpha}: x_W = s, y = e
  f = g.double_coset_form(g.parse("t[-2]*s1"));
  CHECK(f.x == s);
  CHECK(f.mu == Coweight{2});
  CHECK(f.y == e);
  CHECK(g.multiply(g.multiply(g.finite(s), g.translation({2})), g.finite(s)) == g.translation({-2}));

  for (const char* label : {"A1", "A2", "C2", "G2"}) {
    AffineWeylGroup h(build_root_datum(label));
    for (std::size_t l = 0; l <= 12; ++l)
      for (const ExtAffElt& x : h.elements_of_length(l)) {
        const auto d = h.double_coset_form(x);
        CHECK(h.rd().is_dominant(d.mu));
        CHECK(h.rd().is_min_coset_rep(d.y, h.rd().zero_pairing_set(d.mu), CosetSide::kLeft));
        CHECK(h.from_double_coset(d) == x);
      }
  }
}

TEST_CASE("eta, support, lowest cell") {
  AffineWeylGroup g(build_root_datum("A1"));
  const DiagramAut id = DiagramAut::identity(g.rd());
  const FiniteWeylElt s = g.rd().simple_reflection(0);
  CHECK(g.eta(g.translation({2}), id).is_identity());
  CHECK(g.eta(g.parse("t[4]*s1"), id) == s);
  CHECK(g.eta(g.parse("t[-2]*s1"), id) == s);
  CHECK(g.supp_delta(g.identity(), id).empty());
  CHECK(g.supp_delta(g.parse("t[4]*s1"), id) == NodeSet{0, 1});
  CHECK(g.supp_delta(g.omega()[1], id).empty());

  AffineWeylGroup a2(build_root_datum("A2"));
  const DiagramAut flip = DiagramAut::parse(a2.rd(), "2,1");
  CHECK(a2.supp_delta(a2.simple(1), flip) == NodeSet{1, 2});
  CHECK(a2.is_lowest_cell(a2.translation({1, 1})));
  CHECK_FALSE(a2.is_lowest_cell(a2.identity()));
  CHECK_FALSE(a2.is_lowest_cell(a2.translation({1, 0})));
  CHECK(a2.is_lowest_cell(a2.parse("w[1 2 1]")));
  CHECK(a2.is_lowest_cell(a2.parse("w[0 1 0]")));
  // s0 = t^theta s_theta has a regular translation part but a-value 1
  CHECK_FALSE(a2.is_lowest_cell(a2.simple(0)));
  CHECK_FALSE(a2.is_lowest_cell(a2.parse("w[0 1 2 0]")));
  CHECK(a2.is_lowest_cell(a2.parse("w[0 1 2 1]")));
  // in type A1 every element of positive length is in the lowest cell
  for (std::size_t len = 0; len <= 6; ++len)
    for (const ExtAffElt& x : g.elements_of_length(len)) CHECK(g.is_lowest_cell(x) == (len > 0));
  CHECK_THROWS_AS(DiagramAut::parse(a2.rd(), "1,1"), ConfigError);
  CHECK_THROWS_AS(DiagramAut::parse(*build_root_datum("C2"), "2,1"), ConfigError);
}

TEST_CASE("delta preserves length") {
  std::mt19937 rng(11);
  for (auto [label, spec] : {std::pair{"A2", "2,1"}, std::pair{"A3", "3,2,1"}, std::pair{"D4", "3,2,4,1"},
                             std::pair{"E6", "6,2,5,4,3,1"}, std::pair{"A1xA1", "2,1"}}) {
    CAPTURE(label);
    AffineWeylGroup g(build_root_datum(label));
    const DiagramAut d = DiagramAut::parse(g.rd(), spec);
    for (int t = 0; t < 200; ++t) {
      const ExtAffElt x = random_element(g, rng, 12);
      CHECK(g.length(g.apply(d, x)) == g.length(x));
      for (Node n = 0; n < g.num_nodes(); ++n)
        CHECK(g.apply(d, g.simple(n)) == g.simple(g.delta_node(d, n)));
      for (std::size_t k = 0; k < g.omega().size(); ++k)
        CHECK(g.length(g.omega_twist(k, x, d)) == g.length(x));
    }
  }
}

TEST_CASE("parity and Demazure product") {
  std::mt19937 rng(5);
  for (const char* label : {"A1", "A2", "C2"}) {
    AffineWeylGroup g(build_root_datum(label));
    for (int t = 0; t < 200; ++t) {
      const ExtAffElt x = random_element(g, rng, 8), y = random_element(g, rng, 8),
                      z = random_element(g, rng, 6);
      const std::size_t lxy = g.length(g.multiply(x, y));
      CHECK((lxy + g.length(x) + g.length(y)) % 2 == 0);
      const ExtAffElt d = g.demazure(x, y);
      CHECK(g.length(d) <= g.length(x) + g.length(y));
      CHECK(g.demazure(g.demazure(x, y), z) == g.demazure(x, g.demazure(y, z)));
      const DiagramAut id = DiagramAut::identity(g.rd());
      // supp(x * y) = supp(x) u Ad(tau_x) supp(y); the plain union when x is in W_a
      const std::size_t tx = g.omega_part(x);
      std::set<Node> u;
      for (Node n : g.supp_delta(x, id)) u.insert(n);
      for (Node n : g.supp_delta(y, id)) u.insert(g.omega_perm(tx)[n]);
      CHECK(g.supp_delta(d, id) == NodeSet(u.begin(), u.end()));
      const ExtAffElt ty_inv = g.inverse(g.omega()[g.omega_part(y)]);
      CHECK(g.bruhat_leq(x, g.multiply(d, ty_inv)));
      if (tx == 0) {
        std::set<Node> plain;
        for (Node n : g.supp_delta(x, id)) plain.insert(n);
        for (Node n : g.supp_delta(y, id)) plain.insert(n);
        CHECK(g.supp_delta(d, id) == NodeSet(plain.begin(), plain.end()));
      }
      CHECK(g.demazure(x, g.identity()) == x);
    }
  }
  AffineWeylGroup a1(build_root_datum("A1"));
  CHECK(a1.demazure(a1.simple(1), a1.simple(1)) == a1.simple(1));
  CHECK(a1.demazure(a1.simple(0), a1.simple(1)) == a1.translation({2}));
}

TEST_CASE("Bruhat order") {
  AffineWeylGroup g(build_root_datum("A1"));
  const ExtAffElt s0 = g.simple(0), s1 = g.simple(1);
  const ExtAffElt s010 = g.parse("w[0 1 0]");
  CHECK(g.bruhat_leq(s010, s010));
  CHECK(g.bruhat_leq(s0, s010));
  CHECK(g.bruhat_leq(s1, s010));
  CHECK_FALSE(g.bruhat_leq(s010, s0));
  CHECK_FALSE(g.bruhat_leq(s1, g.multiply(g.omega()[1], s1)));
  CHECK(g.bruhat_leq(g.identity(), s1));
  // A2: compare against subword enumeration
  AffineWeylGroup a2(build_root_datum("A2"));
  for (const ExtAffElt& y : a2.elements_of_length(5)) {
    const WordForm f = a2.reduced_word(y);
    std::set<ExtAffElt> below;
    const std::size_t k = f.word.size();
    for (std::size_t mask = 0; mask < (1u << k); ++mask) {
      std::vector<Node> sub;
      for (std::size_t i = 0; i < k; ++i)
        if (mask & (1u << i)) sub.push_back(f.word[i]);
      below.insert(a2.from_word(sub, f.tau));
    }
    for (std::size_t l = 0; l <= 5; ++l)
      for (const ExtAffElt& x : a2.elements_of_length(l))
        CHECK(a2.bruhat_leq(x, y) == (below.count(x) > 0));
  }
}

TEST_CASE("elements of length and coset representatives") {
  AffineWeylGroup g(build_root_datum("A1"));
  CHECK(g.elements_of_length(0).size() == 2);
  for (std::size_t l = 1; l <= 6; ++l) CHECK(g.elements_of_length(l).size() == 4);
  AffineWeylGroup a2(build_root_datum("A2"));
  const NodeSet J{0};
  const auto reps = a2.min_coset_reps(J, CosetSide::kLeft, 4);
  for (const auto& x : reps) CHECK_FALSE(a2.is_left_descent(x, 0));
  CHECK(a2.parabolic_elements({1, 2}).size() == 6);
  CHECK_THROWS_AS(a2.parabolic_elements({0, 1, 2}), ArgumentError);
}
