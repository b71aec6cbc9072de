#ifndef GCORE_MARKED_GRAPH_HPP
#define GCORE_MARKED_GRAPH_HPP

#include <memory>
#include <string>
#include <vector>

#include "gcore/words.hpp"

namespace gcore {

using VertexId = int;
using EdgeId = int;

// A dart is an oriented edge: 2*edge for the intrinsic direction,
// 2*edge+1 for the reverse.
using Dart = int;

inline Dart forward_dart(EdgeId e) { return 2 * e; }
inline Dart backward_dart(EdgeId e) { return 2 * e + 1; }
inline EdgeId dart_edge(Dart d) { return d / 2; }
inline bool dart_is_forward(Dart d) { return (d & 1) == 0; }
inline Dart dart_reverse(Dart d) { return d ^ 1; }

/// Vertex of the universal cover: the reduced dart path from the base
/// vertex.  The empty address is the base lift.
using Address = std::vector<Dart>;

struct shared_edge_error : input_error {
  using input_error::input_error;
};

struct GraphDiagnostics {
  std::vector<std::string> issues;
  bool ok() const { return issues.empty(); }
};

/// Finite connected graph with a base vertex, a spanning tree and a
/// bijection between the non-tree edges and the generators of a free
/// basis.  Presents a filling free splitting; the universal cover is the
/// tree the group acts on.  Immutable after construction.
class MarkedGraph {
 public:
  struct Edge {
    VertexId from;
    VertexId to;
    std::string name;
  };

  MarkedGraph(Basis basis, int n_vertices, std::vector<Edge> edges, VertexId base,
              std::vector<EdgeId> spanning_tree);

  /// Builds the graph, choosing a spanning tree and marking
  /// deterministically (BFS from the base, generators assigned to
  /// non-tree edges in edge order).
  static MarkedGraph with_fresh_marking(Basis basis, int n_vertices, std::vector<Edge> edges,
                                        VertexId base);

  static GraphDiagnostics diagnose(const Basis& basis, int n_vertices,
                                   const std::vector<Edge>& edges);

  const Basis& basis() const { return basis_; }
  int n_vertices() const { return n_vertices_; }
  int n_edges() const { return static_cast<int>(edges_.size()); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  VertexId base() const { return base_; }
  const std::vector<EdgeId>& spanning_tree() const { return spanning_tree_; }
  bool in_spanning_tree(EdgeId e) const { return edge_gen_.at(e) < 0; }
  int generator_of_edge(EdgeId e) const { return edge_gen_.at(e); }  // -1 for tree edges
  EdgeId edge_of_generator(int gen) const { return gen_edge_.at(gen); }

  VertexId dart_from(Dart d) const {
    const Edge& e = edges_.at(dart_edge(d));
    return dart_is_forward(d) ? e.from : e.to;
  }
  VertexId dart_to(Dart d) const {
    const Edge& e = edges_.at(dart_edge(d));
    return dart_is_forward(d) ? e.to : e.from;
  }
  /// Darts leaving v, ascending; a loop at v contributes both darts.
  const std::vector<Dart>& darts_at(VertexId v) const { return darts_at_.at(v); }
  int valence(VertexId v) const { return static_cast<int>(darts_at_.at(v).size()); }

  /// Dart path base -> v inside the spanning tree.
  const std::vector<Dart>& spine(VertexId v) const { return spine_.at(v); }
  /// Shortlex-least reduced path base -> v; the canonical lift of v.
  const Address& canonical_lift(VertexId v) const { return canonical_.at(v); }

  // --- universal cover -------------------------------------------------

  VertexId endpoint(const Address& a) const { return a.empty() ? base_ : dart_to(a.back()); }

  /// Appends a dart (must be composable) with free reduction.
  Address extend(Address a, Dart d) const;
  Address extend_path(Address a, const std::vector<Dart>& path) const;

  /// The unique reduced path between two tree vertices, as darts.
  std::vector<Dart> tree_geodesic(const Address& a, const Address& b) const;
  int tree_distance(const Address& a, const Address& b) const;

  /// Generator word read off a loop at base (any representative path).
  Word word_of_loop(const std::vector<Dart>& loop) const;
  /// Canonical loop at base representing w (spine-conjugated petals).
  std::vector<Dart> loop_of_word(const Word& w) const;

  /// Covering-space action: the deck transformation of w applied to a.
  Address deck_translate(const Address& a, const Word& w) const;
  /// The deck word g with g . canonical_lift(endpoint(a)) = a.
  Word deck_word(const Address& a) const;
  /// The deck word g with g . b = a (endpoints must share an orbit).
  Word deck_word_between(const Address& a, const Address& b) const;

  /// All vertices within the given radius of the center, BFS order.
  /// Throws resource_error when the count exceeds cap.
  std::vector<Address> ball(const Address& center, int radius, size_t cap = 100000) const;

  int betti_number() const { return n_edges() - n_vertices_ + 1; }

 private:
  MarkedGraph() : basis_({"a", "b"}) {}
  void build_derived();

  Basis basis_;
  int n_vertices_ = 0;
  std::vector<Edge> edges_;
  VertexId base_ = 0;
  std::vector<EdgeId> spanning_tree_;
  std::vector<int> edge_gen_;
  std::vector<EdgeId> gen_edge_;
  std::vector<std::vector<Dart>> darts_at_;
  std::vector<std::vector<Dart>> spine_;
  std::vector<Address> canonical_;
};

/// Unoriented edge of the universal cover in forward presentation: the
/// tree edge crossed by `edge`'s intrinsic direction from `tail`.
struct TreeEdge {
  Address tail;
  EdgeId edge;

  bool operator==(const TreeEdge& o) const { return edge == o.edge && tail == o.tail; }
  bool operator<(const TreeEdge& o) const {
    if (edge != o.edge) return edge < o.edge;
    return tail < o.tail;
  }
};

/// Oriented tree edge; forward means along the quotient edge direction.
struct OrientedTreeEdge {
  TreeEdge cell;
  bool forward = true;
};

/// Normalizes the tree edge crossed by dart d from address a.
TreeEdge tree_edge_from_dart(const MarkedGraph& g, const Address& a, Dart d);
/// The two endpoints of a tree edge: tail and head along the forward dart.
Address tree_edge_head(const MarkedGraph& g, const TreeEdge& t);
/// Oriented view: start vertex and crossed dart.
Address oriented_start(const MarkedGraph& g, const OrientedTreeEdge& o);
Address oriented_end(const MarkedGraph& g, const OrientedTreeEdge& o);
Dart oriented_dart(const OrientedTreeEdge& o);

/// Deck translate of a tree edge (forward presentation is preserved).
TreeEdge deck_translate_edge(const MarkedGraph& g, const TreeEdge& t, const Word& w);

/// Eventually periodic ray: from the endpoint of `prefix` the reduced
/// quotient loop `period` repeats forever.  The concatenation
/// prefix . period . period ... must be reduced.
struct PeriodicRay {
  Address start;              // vertex the prefix leaves from
  std::vector<Dart> prefix;   // possibly empty
  std::vector<Dart> period;   // non-empty reduced loop at the prefix end

  void validate(const MarkedGraph& g) const;
  /// Darts of the ray, lazily: dart at position i >= 0.
  Dart dart_at(size_t i) const;
  /// Vertex address after i darts.
  Address vertex_at(const MarkedGraph& g, size_t i) const;
};

}  // namespace gcore

#endif
