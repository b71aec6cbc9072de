#include "doctest.h"
#include "gcore/words.hpp"

#include <random>

using namespace gcore;

namespace {
Basis rank2() { return Basis({"a", "b"}); }
Basis rank3() { return Basis({"a", "b", "c"}); }
}  // namespace

TEST_CASE("free reduction") {
  Basis b = rank2();
  CHECK(parse_word("a b b^-1 a", b) == parse_word("a a", b));
  CHECK(parse_word("", b).trivial());
  CHECK(parse_word("a b a^-1", b) == parse_word("a b a^-1", b));
  CHECK(parse_word("a b a^-1", b).length() == 3);
}

TEST_CASE("reduction is idempotent and kills w w^-1") {
  Basis b = rank3();
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Letter> raw;
    int len = static_cast<int>(rng() % 12);
    for (int i = 0; i < len; ++i) {
      int g = static_cast<int>(rng() % 3);
      raw.push_back(letter_of(g, rng() % 2 == 0));
    }
    Word w(raw);
    CHECK(Word(w.letters()) == w);
    CHECK((w * w.inverse()).trivial());
    CHECK(w.length() <= len);
  }
}

TEST_CASE("word serialization round-trips") {
  Basis b = rank2();
  Word w = parse_word("a b^-1 a a", b);
  CHECK(parse_word(to_string(w, b), b) == w);
  CHECK(to_string(w, b) == "a b^-1 a a");
  CHECK_THROWS_AS(parse_word("a z", b), input_error);
}

TEST_CASE("pi1 isomorphism detection") {
  Basis b = rank2();
  CHECK(is_pi1_isomorphism(BasisMap::identity(b)));

  // a -> ab, b -> b folds to the full rose
  BasisMap ab(b, {parse_word("a b", b), parse_word("b", b)});
  CHECK(is_pi1_isomorphism(ab));

  // a -> a, b -> a has rank-1 image
  BasisMap collapse(b, {parse_word("a", b), parse_word("a", b)});
  CHECK_FALSE(is_pi1_isomorphism(collapse));

  // conjugate generator: a -> aba^-1, b -> b generates a proper subgroup
  BasisMap conj(b, {parse_word("a b a^-1", b), parse_word("b", b)});
  CHECK_FALSE(is_pi1_isomorphism(conj));
}

TEST_CASE("pi1 isomorphism invariant under basis permutation") {
  Basis b3 = rank3();
  std::vector<BasisMap> maps;
  maps.push_back(BasisMap(b3, {parse_word("a b", b3), parse_word("b", b3), parse_word("c", b3)}));
  maps.push_back(BasisMap(b3, {parse_word("a", b3), parse_word("b", b3), parse_word("a c", b3)}));
  maps.push_back(BasisMap(b3, {parse_word("a", b3), parse_word("a", b3), parse_word("c", b3)}));
  int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  for (const auto& m : maps) {
    bool expect = is_pi1_isomorphism(m);
    for (auto& p : perms) {
      std::vector<Word> permuted;
      for (int i = 0; i < 3; ++i) {
        // postcompose with the permutation of generators
        std::vector<Letter> ls;
        for (Letter l : m.image(i).letters()) ls.push_back(letter_of(p[gen_of(l)], positive(l)));
        permuted.push_back(Word(ls));
      }
      CHECK(is_pi1_isomorphism(BasisMap(b3, permuted)) == expect);
    }
  }
}

TEST_CASE("automorphism inversion") {
  Basis b = rank2();
  BasisMap phi(b, {parse_word("a b", b), parse_word("b", b)});
  BasisMap inv = invert_automorphism(phi);
  CHECK(phi.compose_after(inv) == BasisMap::identity(b));
  CHECK(inv.compose_after(phi) == BasisMap::identity(b));

  BasisMap psi(b, {parse_word("b a^-1", b), parse_word("b a b", b)});
  if (is_pi1_isomorphism(psi)) {
    BasisMap ipsi = invert_automorphism(psi);
    CHECK(psi.compose_after(ipsi) == BasisMap::identity(b));
  }

  Basis b3 = rank3();
  BasisMap rho(b3, {parse_word("a b", b3), parse_word("b c", b3), parse_word("c", b3)});
  BasisMap irho = invert_automorphism(rho);
  CHECK(rho.compose_after(irho) == BasisMap::identity(b3));
  CHECK(irho.compose_after(rho) == BasisMap::identity(b3));

  BasisMap bad(b, {parse_word("a", b), parse_word("a", b)});
  CHECK_THROWS_AS(invert_automorphism(bad), input_error);
}

TEST_CASE("random automorphisms invert") {
  Basis b = rank3();
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 25; ++trial) {
    // compose elementary Nielsen automorphisms
    BasisMap phi = BasisMap::identity(b);
    int steps = 1 + static_cast<int>(rng() % 4);
    for (int s = 0; s < steps; ++s) {
      int x = static_cast<int>(rng() % 3);
      int y = static_cast<int>(rng() % 3);
      if (x == y) continue;
      std::vector<Word> imgs;
      for (int i = 0; i < 3; ++i) imgs.push_back(Word::generator(i));
      imgs[x] = rng() % 2 ? Word::generator(x) * Word::generator(y)
                          : Word::generator(x) * Word::generator(y).inverse();
      phi = BasisMap(b, imgs).compose_after(phi);
    }
    REQUIRE(is_pi1_isomorphism(phi));
    BasisMap inv = invert_automorphism(phi);
    CHECK(phi.compose_after(inv) == BasisMap::identity(b));
  }
}
