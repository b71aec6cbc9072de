#include "doctest.h"
#include "gcore/marked_graph.hpp"

#include <random>
#include <set>

#include "fixtures.hpp"

using namespace gcore;

TEST_CASE("diagnostics accept roses and thetas, reject segments") {
  Basis b2({"a", "b"});

  auto rose = MarkedGraph::diagnose(b2, 1, {{0, 0, "a"}, {0, 0, "b"}});
  CHECK(rose.ok());

  auto theta = MarkedGraph::diagnose(b2, 2, {{0, 1, "e0"}, {0, 1, "e1"}, {0, 1, "e2"}});
  CHECK(theta.ok());

  auto segment = MarkedGraph::diagnose(b2, 2, {{0, 1, "e"}});
  CHECK_FALSE(segment.ok());
  CHECK(segment.issues.size() >= 2);  // valence-1 twice plus rank mismatch

  auto disconnected = MarkedGraph::diagnose(
      b2, 2, {{0, 0, "a"}, {0, 0, "b"}, {1, 1, "c"}, {1, 1, "d"}});
  CHECK_FALSE(disconnected.ok());
}

TEST_CASE("rose addresses and geodesics") {
  MarkedGraph g = fixtures::rose2();
  // base to address "a a": crossing petal a twice
  Address aa = g.extend_path({}, {forward_dart(0), forward_dart(0)});
  CHECK(aa.size() == 2);
  auto path = g.tree_geodesic({}, aa);
  CHECK(path.size() == 2);
  CHECK(path[0] == forward_dart(0));

  CHECK(g.tree_geodesic(aa, aa).empty());
  Address a1 = g.extend({}, forward_dart(0));
  CHECK(g.tree_geodesic(a1, aa).size() == 1);

  // reversal symmetry
  auto fwd = g.tree_geodesic({}, aa);
  auto bwd = g.tree_geodesic(aa, {});
  REQUIRE(fwd.size() == bwd.size());
  for (size_t i = 0; i < fwd.size(); ++i)
    CHECK(fwd[i] == dart_reverse(bwd[bwd.size() - 1 - i]));
}

TEST_CASE("balls in rose and theta") {
  MarkedGraph rose = fixtures::rose2();
  CHECK(rose.ball({}, 0).size() == 1);
  CHECK(rose.ball({}, 1).size() == 5);  // base plus 4 neighbors

  MarkedGraph theta = fixtures::theta2();
  // valence 3 tree: radius-2 ball has 1 + 3 + 3*2 = 10 vertices (9 edges)
  CHECK(theta.ball({}, 2).size() == 10);
  CHECK_THROWS_AS(rose.ball({}, 10, 50), resource_error);
}

TEST_CASE("deck translation is an action") {
  MarkedGraph g = fixtures::theta2();
  const Basis& b = g.basis();
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    std::vector<Letter> l1, l2;
    for (int i = 0; i < static_cast<int>(rng() % 6); ++i)
      l1.push_back(letter_of(static_cast<int>(rng() % b.rank()), rng() % 2 == 0));
    for (int i = 0; i < static_cast<int>(rng() % 6); ++i)
      l2.push_back(letter_of(static_cast<int>(rng() % b.rank()), rng() % 2 == 0));
    Word g1(l1), g2(l2);
    Address p = g.ball({}, 3)[rng() % g.ball({}, 3).size()];
    Address lhs = g.deck_translate(g.deck_translate(p, g2), g1);
    Address rhs = g.deck_translate(p, g1 * g2);
    CHECK(lhs == rhs);
  }
  // identity and inverses
  Address p = g.extend_path({}, {forward_dart(0), backward_dart(1)});
  CHECK(g.deck_translate(p, Word()) == p);
  Word w = parse_word("a b^-1", b);
  CHECK(g.deck_translate(g.deck_translate(p, w), w.inverse()) == p);
}

TEST_CASE("rose petal translation unrolls the cover") {
  MarkedGraph g = fixtures::rose2();
  Word a = parse_word("a", g.basis());
  Address img = g.deck_translate({}, a);
  REQUIRE(img.size() == 1);
  CHECK(img[0] == forward_dart(0));
}

TEST_CASE("canonical lifts are canonical") {
  MarkedGraph g = fixtures::theta2();
  // every vertex orbit has exactly one canonical representative
  for (VertexId v = 0; v < g.n_vertices(); ++v) {
    const Address& c = g.canonical_lift(v);
    CHECK(g.endpoint(c) == v);
    CHECK(g.deck_word(c).trivial());
  }
  // canonicalization is idempotent: deck_word . canonical = the address
  std::mt19937_64 rng(11);
  auto pts = g.ball({}, 4);
  for (int t = 0; t < 50; ++t) {
    const Address& p = pts[rng() % pts.size()];
    Word w = g.deck_word(p);
    CHECK(g.deck_translate(g.canonical_lift(g.endpoint(p)), w) == p);
  }
}

TEST_CASE("deck word between fibers requires matching orbits") {
  MarkedGraph g = fixtures::theta2();
  Address v1 = g.extend({}, forward_dart(0));
  CHECK_THROWS_AS(g.deck_word_between(v1, {}), contract_error);
}

TEST_CASE("periodic rays validate") {
  MarkedGraph g = fixtures::rose2();
  PeriodicRay ray{{}, {forward_dart(0)}, {forward_dart(1)}};
  CHECK_NOTHROW(ray.validate(g));
  CHECK(ray.dart_at(0) == forward_dart(0));
  CHECK(ray.dart_at(1) == forward_dart(1));
  CHECK(ray.dart_at(2) == forward_dart(1));

  PeriodicRay bad{{}, {forward_dart(0)}, {backward_dart(0), forward_dart(0)}};
  CHECK_THROWS_AS(bad.validate(g), input_error);

  PeriodicRay empty_period{{}, {forward_dart(0)}, {}};
  CHECK_THROWS_AS(empty_period.validate(g), input_error);
}
