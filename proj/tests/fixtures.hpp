#ifndef GCORE_TEST_FIXTURES_HPP
#define GCORE_TEST_FIXTURES_HPP

#include "gcore/marked_graph.hpp"
#include "gcore/words.hpp"

namespace fixtures {

inline gcore::Basis basis2() { return gcore::Basis({"a", "b"}); }
inline gcore::Basis basis3() { return gcore::Basis({"a", "b", "c"}); }

/// Rank-2 rose: one vertex, petals a (edge 0) and b (edge 1).
inline gcore::MarkedGraph rose2() {
  return gcore::MarkedGraph(basis2(), 1, {{0, 0, "a"}, {0, 0, "b"}}, 0, {});
}

/// Theta graph: two vertices joined by three edges, rank 2.
inline gcore::MarkedGraph theta2() {
  return gcore::MarkedGraph(basis2(), 2, {{0, 1, "e0"}, {0, 1, "e1"}, {0, 1, "e2"}}, 0, {0});
}

/// Rank-3 rose.
inline gcore::MarkedGraph rose3() {
  return gcore::MarkedGraph(basis3(), 1, {{0, 0, "a"}, {0, 0, "b"}, {0, 0, "c"}}, 0, {});
}

/// Dumbbell: two vertices, a loop at each, a bar between; rank 2.
inline gcore::MarkedGraph dumbbell2() {
  return gcore::MarkedGraph(basis2(), 2, {{0, 1, "bar"}, {0, 0, "p"}, {1, 1, "q"}}, 0, {0});
}

/// Theta with an extra loop at one vertex; rank 3.
inline gcore::MarkedGraph theta_loop3() {
  return gcore::MarkedGraph(basis3(), 2,
                            {{0, 1, "e0"}, {0, 1, "e1"}, {0, 1, "e2"}, {0, 0, "p"}}, 0, {0});
}

}  // namespace fixtures

#endif
