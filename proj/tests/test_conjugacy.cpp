#include <algorithm>
#include <random>
#include <set>

#include "adlv/conjugacy.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace adlv;
using adlv::testing::conjugates_in_ball;
using adlv::testing::random_element;

namespace {

struct Fixture {
  explicit Fixture(const std::string& label, const std::string& delta = "id")
      : rd(build_root_datum(label)),
        g(std::make_shared<AffineWeylGroup>(rd)),
        e(g, DiagramAut::parse(*rd, delta)) {}
  RootDatumPtr rd;
  AffineWeylGroupPtr g;
  ConjugacyEngine e;

  ExtAffElt p(const std::string& s) const { return g->parse(s); }
};

QCoweight q(std::initializer_list<Rational> v) { return QCoweight(v); }

}  // namespace

TEST_CASE("Newton point and Kottwitz class, A1 examples") {
  Fixture f("A1");
  CHECK(f.e.newton_point(f.p("t[2]")) == q({Rational(2)}));
  CHECK(f.e.newton_point(f.p("t[-2]")) == q({Rational(2)}));
  CHECK(f.e.newton_point(f.p("tau")) == q({Rational(0)}));
  CHECK(f.e.newton_point(f.p("s1")) == q({Rational(0)}));
  CHECK(f.e.newton_point(f.p("t[-2]*s1")) == q({Rational(0)}));
  CHECK(f.e.newton_point(f.p("t[1]")) == q({Rational(1)}));

  CHECK(f.e.kottwitz(f.p("s0")) == std::vector<std::int64_t>{0});
  CHECK(f.e.kottwitz(f.p("t[2]")) == std::vector<std::int64_t>{0});
  CHECK(f.e.kottwitz(f.p("t[1]")) == std::vector<std::int64_t>{1});

  const SigmaClassDescriptor id = f.e.invariant_f(f.g->identity());
  CHECK(id.is_basic());
  CHECK(f.e.invariant_f(f.p("s1")) == id);
  CHECK(f.e.invariant_f(f.p("s0")) == id);
  CHECK(f.e.invariant_f(f.p("t[2]")).to_string() == "nu=[2],kappa=[0]");

  CHECK(f.e.is_straight(f.p("t[2]")));
  CHECK_FALSE(f.e.is_straight(f.p("s1")));
  CHECK(f.e.is_straight(f.p("tau")));
}

TEST_CASE("Newton vector does not depend on the period") {
  std::mt19937 rng(7);
  for (auto [label, delta] : {std::pair{"A2", "id"}, std::pair{"A2", "2,1"},
                              std::pair{"C2", "id"}, std::pair{"A3", "3,2,1"}}) {
    Fixture f(label, delta);
    CAPTURE(label);
    for (int t = 0; t < 200; ++t) {
      const ExtAffElt x = random_element(*f.g, rng, 10);
      // twisted power of order 2n, computed directly
      std::size_t n = 1;
      ExtAffElt p = x, dx = x;
      const std::size_t dord = f.e.delta().order();
      while (!(n % dord == 0 && p.w.is_identity())) {
        dx = f.g->apply(f.e.delta(), dx);
        p = f.g->multiply(p, dx);
        ++n;
      }
      for (std::size_t k = 0; k < n; ++k) {
        dx = f.g->apply(f.e.delta(), dx);
        p = f.g->multiply(p, dx);
      }
      REQUIRE(p.w.is_identity());
      QCoweight nu(p.mu.size());
      for (std::size_t i = 0; i < nu.size(); ++i)
        nu[i] = Rational(p.mu[i], 2 * static_cast<std::int64_t>(n));
      CHECK(f.e.newton_vector(x) == nu);
      const QCoweight bar = f.e.newton_point(x);
      CHECK(f.rd->is_dominant(bar));
      CHECK(f.e.delta().apply(bar) == bar);
    }
  }
}

TEST_CASE("Kottwitz map is a homomorphism killing the affine Weyl group") {
  std::mt19937 rng(3);
  for (auto [label, delta] : {std::pair{"A1", "id"}, std::pair{"A2", "id"},
                              std::pair{"A2", "2,1"}, std::pair{"D4", "id"},
                              std::pair{"A1xA1", "2,1"}}) {
    Fixture f(label, delta);
    CAPTURE(label);
    for (Node n = 0; n < f.g->num_nodes(); ++n)
      CHECK(f.e.kottwitz(f.g->simple(n)) == f.e.kottwitz(f.g->identity()));
    for (int t = 0; t < 100; ++t) {
      const ExtAffElt x = random_element(*f.g, rng, 8), y = random_element(*f.g, rng, 8);
      const auto kxy = f.e.kottwitz(f.g->multiply(x, y));
      // kappa(xy) = kappa(t^{mu_x + mu_y})
      Coweight s = x.mu;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += y.mu[i];
      CHECK(kxy == f.e.kottwitz_of_coweight(s));
    }
  }
}

TEST_CASE("twisted conjugacy decision agrees with brute force") {
  for (auto [label, delta] : {std::pair{"A1", "id"}, std::pair{"A2", "id"},
                              std::pair{"A2", "2,1"}, std::pair{"C2", "id"}}) {
    Fixture f(label, delta);
    CAPTURE(label);
    CAPTURE(delta);
    std::vector<ExtAffElt> elts;
    for (std::size_t l = 0; l <= 3; ++l)
      for (const ExtAffElt& x : f.g->elements_of_length(l)) elts.push_back(x);
    for (const ExtAffElt& x : elts) {
      const auto ball = conjugates_in_ball(*f.g, f.e.delta(), x, 3);
      for (const ExtAffElt& y : elts) {
        CAPTURE(f.g->format(x));
        CAPTURE(f.g->format(y));
        CHECK(f.e.same_conjugacy_class(x, y) == (ball.count(y) > 0));
      }
    }
  }
}

TEST_CASE("conjugacy examples") {
  Fixture f("A1");
  CHECK(f.e.same_conjugacy_class(f.p("s1"), f.p("s1")));
  CHECK(f.e.same_conjugacy_class(f.p("s1"), f.p("s0")));
  CHECK(f.g->omega_twist(1, f.p("s1"), f.e.delta()) == f.p("s0"));
  CHECK_FALSE(f.e.same_conjugacy_class(f.p("t[2]"), f.p("t[4]")));
  CHECK(f.e.same_conjugacy_class(f.p("t[2]"), f.p("t[-2]")));
}

TEST_CASE("reduction to minimal length") {
  Fixture f("A1");
  {
    auto [m, tr] = f.e.reduce_to_minimal(f.p("t[2]"));
    CHECK(m == f.p("t[2]"));
    CHECK(tr.steps.empty());
  }
  for (const char* lit : {"w[0 1 0]", "t[-2]*s1"}) {
    CAPTURE(lit);
    const ExtAffElt x = f.p(lit);
    CHECK(f.g->length(x) == 3);
    auto [m, tr] = f.e.reduce_to_minimal(x);
    CHECK(f.g->length(m) == 1);
    CHECK(f.e.same_conjugacy_class(m, f.p("s1")));
    REQUIRE(tr.steps.size() == 1);
    CHECK(tr.steps[0].dl == -2);
  }
  const auto lines = f.e.reduce_to_minimal(f.p("w[0 1 0]")).second.lines(*f.g);
  REQUIRE(lines.size() == 1);
  CHECK(lines[0] == "STEP 0 t[4]*s1 -> t[0]*s1 dl=-2");
}

TEST_CASE("reduction traces replay, keep f, and reach the minimum") {
  std::mt19937 rng(11);
  for (auto [label, delta] : {std::pair{"A1", "id"}, std::pair{"A2", "id"},
                              std::pair{"A2", "2,1"}, std::pair{"C2", "id"},
                              std::pair{"G2", "id"}}) {
    Fixture f(label, delta);
    CAPTURE(label);
    CAPTURE(delta);
    for (int t = 0; t < 150; ++t) {
      const ExtAffElt x = random_element(*f.g, rng, 12);
      const SigmaClassDescriptor fx = f.e.invariant_f(x);
      auto [m, tr] = f.e.reduce_to_minimal(x);
      ExtAffElt cur = x;
      for (const TraceStep& s : tr.steps) {
        REQUIRE(s.before == cur);
        const ExtAffElt nxt =
            s.omega ? f.e.omega_twist(s.index, cur) : f.e.twisted(s.index, cur);
        REQUIRE(nxt == s.after);
        CHECK(static_cast<long>(f.g->length(nxt)) - static_cast<long>(f.g->length(cur)) == s.dl);
        CHECK(f.e.invariant_f(nxt) == fx);
        cur = nxt;
      }
      CHECK(cur == m);
      CHECK(tr.terminal == m);
      for (Node i = 0; i < f.g->num_nodes(); ++i)
        CHECK(f.g->length(f.e.twisted(i, m)) >= f.g->length(m));
      CHECK(f.e.same_conjugacy_class(x, m));
      // brute force: no conjugate in a ball is shorter
      if (f.g->length(x) <= 8) {
        std::size_t best = f.g->length(m);
        for (const ExtAffElt& y : conjugates_in_ball(*f.g, f.e.delta(), x, 2))
          best = std::min(best, f.g->length(y));
        CHECK(best == f.g->length(m));
      }
      // random twisted conjugation keeps f
      const ExtAffElt z = random_element(*f.g, rng, 8);
      const ExtAffElt y = f.g->multiply(f.g->multiply(z, x), f.g->inverse(f.g->apply(f.e.delta(), z)));
      CHECK(f.e.invariant_f(y) == fx);
    }
  }
}

TEST_CASE("budget exhaustion is a resource error") {
  Fixture f("A2");
  f.e.set_budget(1);
  CHECK_THROWS_AS(f.e.same_length_orbit(f.p("t[1,1]"), true), ResourceError);
}

TEST_CASE("straight classes") {
  {
    Fixture f("A1");
    auto c0 = f.e.enumerate_straight_classes(0);
    REQUIRE(c0.size() == 2);
    CHECK(c0[0].rep == f.g->identity());
    CHECK(c0[0].descriptor.kottwitz == std::vector<std::int64_t>{0});
    CHECK(c0[1].rep == f.p("tau"));
    CHECK(c0[1].descriptor.kottwitz == std::vector<std::int64_t>{1});
    // L = 2 adds t^{omega} (length 1) and t^{alpha} (length 2)
    auto c2 = f.e.enumerate_straight_classes(2);
    REQUIRE(c2.size() == 4);
    CHECK(c2[2].descriptor.newton == q({Rational(1)}));
    CHECK(c2[3].descriptor.newton == q({Rational(2)}));
    CHECK(c2[3].descriptor.kottwitz == std::vector<std::int64_t>{0});
  }
  for (auto [label, delta] : {std::pair{"A2", "id"}, std::pair{"A2", "2,1"},
                              std::pair{"C2", "id"}, std::pair{"G2", "id"},
                              std::pair{"A1xA1", "2,1"}}) {
    Fixture f(label, delta);
    CAPTURE(label);
    CAPTURE(delta);
    const auto c0 = f.e.enumerate_straight_classes(0);
    // basic classes of length zero: one per element of (P/Q)_delta
    CHECK(static_cast<std::int64_t>(c0.size()) ==
          LatticeQuotient([&] {
            const std::size_t r = f.rd->rank();
            IntMatrix m(r, 2 * r);
            for (std::size_t j = 0; j < r; ++j) {
              const Coweight c = f.rd->simple_coroot(j);
              for (std::size_t i = 0; i < r; ++i) m(i, j) = c[i];
            }
            for (std::size_t i = 0; i < r; ++i) {
              m(i, r + i) += 1;
              m(f.e.delta()(i), r + i) -= 1;
            }
            return m;
          }()).order().value());
    const auto cls = f.e.enumerate_straight_classes(6);
    std::set<SigmaClassDescriptor> seen;
    for (const StraightClass& c : cls) {
      CHECK(seen.insert(c.descriptor).second);
      CHECK(c.length == f.g->length(c.rep));
      CHECK(Rational(static_cast<std::int64_t>(c.length)) == f.e.pair_2rho(c.descriptor.newton));
      // minimal elements of a straight class form one orbit under same-length
      // twisted conjugation and Omega
      const auto omin = f.e.minimal_elements(c.rep);
      CHECK(omin.front() == c.rep);
      const auto orbit = f.e.same_length_orbit(c.rep, true);
      const std::set<ExtAffElt> os(orbit.begin(), orbit.end());
      for (const ExtAffElt& m : omin) CHECK(os.count(m) == 1);
      CHECK(os.size() == omin.size());
    }
  }
}

TEST_CASE("straight classes reached from random starts") {
  std::mt19937 rng(5);
  Fixture f("A2");
  for (int t = 0; t < 100; ++t) {
    const ExtAffElt x = random_element(*f.g, rng, 10);
    const ExtAffElt m = f.e.reduce_to_minimal(x).first;
    if (!f.e.is_straight(m)) continue;
    CHECK(Rational(static_cast<std::int64_t>(f.g->length(m))) ==
          f.e.pair_2rho(f.e.newton_point(x)));
    const auto orbit = f.e.same_length_orbit(m, true);
    CHECK(std::find(orbit.begin(), orbit.end(), f.e.canonical_rep(x)) != orbit.end());
  }
}

TEST_CASE("min2 decomposition") {
  {
    Fixture f("A1");
    const Min2Decomposition d = f.e.min2_decompose(f.p("s1"));
    CHECK(d.J == NodeSet{f.g->finite_node(0)});
    CHECK(d.x == f.g->identity());
    CHECK(d.u == f.p("s1"));
    const Min2Decomposition t = f.e.min2_decompose(f.p("t[2]"));
    CHECK(t.x == f.p("t[2]"));
    CHECK(t.u == f.g->identity());
  }
  {
    Fixture f("A2");
    const Min2Decomposition d = f.e.min2_decompose(f.p("s1"));
    CHECK(d.J == NodeSet{f.g->finite_node(0)});
    CHECK(d.x == f.g->identity());
    CHECK(d.u == f.p("s1"));
  }
  for (auto [label, delta] : {std::pair{"A2", "id"}, std::pair{"A2", "2,1"},
                              std::pair{"C2", "id"}}) {
    Fixture f(label, delta);
    CAPTURE(label);
    CAPTURE(delta);
    for (std::size_t l = 0; l <= 6; ++l)
      for (const ExtAffElt& w : f.g->elements_of_length(l)) {
        if (!f.e.is_minimal(w)) continue;
        const Min2Decomposition d = f.e.min2_decompose(w);
        CHECK(f.g->multiply(d.u, d.x) == d.w_min);
        CHECK(f.g->length(d.u) + f.g->length(d.x) == l);
        CHECK(f.e.is_straight(d.x));
        CHECK(f.e.invariant_f(d.x) == f.e.invariant_f(w));
        CHECK(f.e.same_conjugacy_class(d.w_min, w));
        CHECK(f.g->is_finite_parabolic(d.J));
      }
  }
}

TEST_CASE("superstraight classes") {
  {
    Fixture f("A1");
    CHECK(f.e.is_superstraight_class(f.p("tau")));
    CHECK(f.e.is_superstraight_class(f.p("t[2]")));
    CHECK_FALSE(f.e.is_superstraight_class(f.g->identity()));
  }
  {
    Fixture f("A2");
    CHECK_FALSE(f.e.is_superstraight_class(f.g->identity()));
    CHECK(f.e.is_superstraight_class(f.p("tau")));
    CHECK(f.e.is_superstraight_class(f.p("t[1,1]")));
    CHECK(f.e.is_superstraight_class(f.p("t[2,1]")));
  }
  {
    // Omega of C2 acts on the affine diagram with a fixed node
    Fixture f("C2");
    CHECK_FALSE(f.e.is_superstraight_class(f.p("tau")));
    CHECK(f.e.is_superstraight_class(f.p("t[1,1]")));
  }
}

TEST_CASE("superstraight means the fiber of f is a single class") {
  // brute force on A2: group the minimal elements of length <= 4 by f
  Fixture f("A2");
  std::map<SigmaClassDescriptor, std::set<ExtAffElt>> fibers;
  for (std::size_t l = 0; l <= 5; ++l)
    for (const ExtAffElt& x : f.g->elements_of_length(l))
      fibers[f.e.invariant_f(x)].insert(f.e.canonical_rep(x));
  for (const StraightClass& c : f.e.enumerate_straight_classes(2)) {
    CAPTURE(f.g->format(c.rep));
    // every class in the fiber of a length <= 2 straight class has a member of
    // length <= 5 (it contains u x with u in a finite W_J of rank <= 2)
    CHECK(c.superstraight == (fibers[c.descriptor].size() == 1));
  }
}

TEST_CASE("alcove condition") {
  Fixture f("A1");
  const FiniteWeylElt e = f.rd->identity();
  CHECK(f.e.is_Jw_alcove(f.p("t[2]"), {0}, e));
  CHECK_FALSE(f.e.is_Jw_alcove(f.p("tau"), {}, e));
  CHECK(f.e.is_Jw_alcove(f.p("t[2]"), {}, e));
  CHECK(f.e.is_Jw_alcove(f.p("t[-2]"), {}, f.rd->simple_reflection(0)));

  Fixture a2("A2", "2,1");
  CHECK_THROWS_AS(a2.e.is_Jw_alcove(a2.g->identity(), {0}, a2.rd->identity()), ArgumentError);

  // Minimal elements x_1 of a straight class with y^{-1} x_1 delta(y) of
  // length zero in the Levi and Newton vector nu_O give alcoves.
  for (auto [label, delta] : {std::pair{"A2", "id"}, std::pair{"A2", "2,1"},
                              std::pair{"C2", "id"}, std::pair{"G2", "id"}}) {
    Fixture h(label, delta);
    CAPTURE(label);
    std::size_t found = 0;
    for (const StraightClass& c : h.e.enumerate_straight_classes(6)) {
      std::vector<std::size_t> J;
      for (std::size_t i = 0; i < c.descriptor.newton.size(); ++i)
        if (c.descriptor.newton[i].numerator() == 0) J.push_back(i);
      bool any = false;
      for (const ExtAffElt& m : h.e.minimal_elements(c.rep))
        for (const FiniteWeylElt& y : h.rd->min_coset_reps(J, CosetSide::kRight)) {
          const ExtAffElt ye = h.g->finite(y);
          const ExtAffElt x =
              h.g->multiply(h.g->multiply(h.g->inverse(ye), m), h.g->apply(h.e.delta(), ye));
          if (!h.e.in_levi(x, J) || h.e.levi_length(x, J) != 0) continue;
          if (h.e.newton_vector(x) != c.descriptor.newton) continue;
          any = true;
          ++found;
          CHECK(h.e.is_Jw_alcove(m, J, y));
        }
      CHECK(any);
    }
    CHECK(found > 0);
  }
}

TEST_CASE("partial conjugation") {
  {
    Fixture f("A1");
    const PartialReduction r = f.e.partial_reduce(f.p("t[2]*s1"));
    CHECK(r.terminal == f.p("t[2]*s1"));
    CHECK(r.u == f.g->identity());
    CHECK(r.trace.steps.empty());

    const ExtAffElt x = f.g->multiply(f.p("s1"), f.p("t[2]"));
    CHECK(x == f.p("t[-2]*s1"));
    const PartialReduction s = f.e.partial_reduce(x);
    CHECK(s.x_hat == f.p("t[2]*s1"));
    CHECK(f.g->length(s.x_hat) == 1);
    CHECK(s.u == f.g->identity());
  }
  std::mt19937 rng(2);
  for (auto [label, delta] : {std::pair{"A2", "id"}, std::pair{"A2", "2,1"},
                              std::pair{"C2", "id"}}) {
    Fixture f(label, delta);
    CAPTURE(label);
    std::vector<ExtAffElt> starts;
    const ExtAffElt w0 = f.g->finite(f.rd->longest_element());
    const Coweight theta = f.rd->coroot(f.rd->highest_root(0));
    starts.push_back(f.g->multiply(w0, f.g->translation(theta)));
    for (int t = 0; t < 60; ++t) starts.push_back(random_element(*f.g, rng, 10));
    for (const ExtAffElt& x : starts) {
      const PartialReduction r = f.e.partial_reduce(x);
      CHECK(f.g->multiply(r.u, r.x_hat) == r.terminal);
      CHECK(f.g->is_min_coset_rep(r.x_hat, f.g->finite_nodes(), CosetSide::kLeft));
      CHECK(f.g->length(r.terminal) == f.g->length(r.u) + f.g->length(r.x_hat));
      CHECK(r.u.mu == Coweight(f.rd->rank(), 0));
      std::vector<std::size_t> I;
      for (Node n : r.I) I.push_back(f.g->finite_index(n));
      CHECK(f.rd->in_parabolic(r.u.w, I));
      CHECK(f.e.same_conjugacy_class(x, r.terminal));
      // only finite nodes, never increasing
      ExtAffElt cur = x;
      for (const TraceStep& s : r.trace.steps) {
        CHECK_FALSE(f.g->is_affine_node(s.index));
        CHECK(f.g->length(s.after) <= f.g->length(s.before));
        CHECK(f.e.twisted(s.index, cur) == s.after);
        cur = s.after;
      }
      CHECK(cur == r.terminal);
      // I(x_hat) is stable: Ad(x_hat) delta permutes it
      const ExtAffElt xi = f.g->inverse(r.x_hat);
      for (std::size_t j : I) {
        const ExtAffElt c = f.g->multiply(
            f.g->multiply(r.x_hat, f.g->simple(f.g->finite_node(f.e.delta()(j)))), xi);
        bool hit = false;
        for (std::size_t k : I) hit = hit || c == f.g->simple(f.g->finite_node(k));
        CHECK(hit);
      }
    }
  }
}

TEST_CASE("delta orbits on S") {
  CHECK(Fixture("A2").e.delta_orbits_on_S() == 2);
  CHECK(Fixture("A2", "2,1").e.delta_orbits_on_S() == 1);
  CHECK(Fixture("D4", "3,2,4,1").e.delta_orbits_on_S() == 2);
}
