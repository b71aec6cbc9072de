#include "doctest.h"
#include "gcore/square_complex.hpp"

#include <memory>

#include "fixtures.hpp"
#include "gcore/core_builder.hpp"

using namespace gcore;

namespace {

std::shared_ptr<const MarkedGraph> share(MarkedGraph g) {
  return std::make_shared<const MarkedGraph>(std::move(g));
}

BasisMap twist_of(const Basis& b, const std::vector<std::string>& images) {
  std::vector<Word> ws;
  for (const auto& s : images) ws.push_back(parse_word(s, b));
  return BasisMap(b, ws);
}

/// One square over the rose pair, with faces and corners filled in.
QuotientCore single_square_core() {
  auto g = share(fixtures::rose2());
  QuotientCore core(g, g, BasisMap::identity(g->basis()));
  SquareCell s{0, canonical_tree_edge(*g, 1)};
  core.squares.insert(s);
  auto f = core.faces(s);
  for (const auto& e : f.h) core.hedges.insert(e);
  for (const auto& e : f.v) core.vedges.insert(e);
  for (const auto& v : f.corners) core.verts.insert(v);
  core.require_closed();
  return core;
}

QuotientCore crossing_core() {
  auto g = share(fixtures::rose2());
  BasisMap phi = twist_of(g->basis(), {"a b a", "b a"});
  return build_core(make_morphism(g, g, phi));
}

}  // namespace

TEST_CASE("zero-square core has empty boundary and no rectangles") {
  auto g = share(fixtures::rose2());
  QuotientCore core(g, g, BasisMap::identity(g->basis()));
  CHECK(boundary(core, Side::S).vedges.empty());
  CHECK(boundary(core, Side::Sigma).hedges.empty());
  CHECK(maximal_rectangles(core, Side::S).empty());
  CHECK(maximal_rectangles(core, Side::Sigma).empty());
  CHECK(free_edges(core).empty());
}

TEST_CASE("single square core: boundaries, rectangles, collapse") {
  QuotientCore core = single_square_core();
  CHECK(core.area() == 1);
  CHECK(core.hedges.size() == 2);
  CHECK(core.vedges.size() == 2);
  CHECK(core.verts.size() == 4);

  // all four edges lie in a boundary
  auto bs = boundary(core, Side::S);
  auto bsig = boundary(core, Side::Sigma);
  CHECK(bs.vedges.size() == 2);
  CHECK(bsig.hedges.size() == 2);
  CHECK(bs.verts.empty());  // corners have only two incident edges

  auto rects = maximal_rectangles(core, Side::S);
  REQUIRE(rects.size() == 2);
  for (const auto& r : rects) {
    CHECK(r.run_length() == 1);
    CHECK(r.fixed_edge == 0);
    CHECK(r.side_verts.empty());
    CHECK(r.pinched_hedges.empty());
  }

  QuotientCore after = rips_move(core, rects[0]);
  CHECK(after.area() == 0);
  CHECK(after.hedges.size() == 2);
  CHECK(after.vedges.size() == 1);
  CHECK(after.verts.size() == 4);
  // now everything is free
  CHECK(free_edges(after).size() == 3);

  // a stale rectangle is rejected
  CHECK_THROWS_AS(rips_move(after, rects[0]), input_error);
}

TEST_CASE("rectangles partition the boundary of a real core") {
  QuotientCore core = crossing_core();
  for (Side side : {Side::S, Side::Sigma}) {
    BoundaryCells b = boundary(core, side);
    auto rects = maximal_rectangles(core, side);
    size_t edge_total = 0, vert_total = 0;
    for (const auto& r : rects) {
      edge_total += r.side_vedges.size() + r.side_hedges.size();
      vert_total += r.side_verts.size() + r.dangling_verts.size();
      // every square of a run shares the fixed edge and area drops by run
      QuotientCore after = rips_move(core, r);
      CHECK(after.area() == core.area() - r.run_length());
    }
    CHECK(edge_total == (side == Side::S ? b.vedges.size() : b.hedges.size()));
    // vertices not touching a boundary edge form components of their own
    CHECK(vert_total <= b.verts.size());
  }
}

TEST_CASE("canonical form is reflexive and detects differences") {
  QuotientCore core = crossing_core();
  CHECK(is_isomorphic(core, core));

  QuotientCore single = single_square_core();
  CHECK_FALSE(is_isomorphic(core, single));

  // swapping twice is the identity up to isomorphism
  CHECK(is_isomorphic(core, core.swapped().swapped()));
}

TEST_CASE("swap symmetry as labeled complexes") {
  auto g = share(fixtures::rose2());
  BasisMap phi = twist_of(g->basis(), {"a b a", "b a"});
  QuotientCore fwd = build_core(make_morphism(g, g, phi));
  QuotientCore bwd = build_core(make_morphism(g, g, invert_automorphism(phi)));
  CHECK(is_isomorphic(fwd.swapped(), bwd));
  // without the swap the sides are labeled differently unless symmetric
  CHECK(canonical_form(fwd.swapped()) == canonical_form(bwd));
}

TEST_CASE("free edge certificates re-verify") {
  QuotientCore core = single_square_core();
  QuotientCore after = rips_move(core, maximal_rectangles(core, Side::S)[0]);
  for (const auto& c : free_edges(after)) {
    if (c.horizontal)
      CHECK(after.squares_at(c.hedge).empty());
    else
      CHECK(after.squares_at(c.vedge).empty());
    CHECK(c.distance_bound == 2);
  }
}

TEST_CASE("empty cores are isomorphic") {
  auto g = share(fixtures::rose2());
  auto t = share(fixtures::theta2());
  QuotientCore a(g, g, BasisMap::identity(g->basis()));
  QuotientCore b(t, t, BasisMap::identity(t->basis()));
  CHECK(is_isomorphic(a, b));
  CHECK(canonical_form(a) == "empty");
}
