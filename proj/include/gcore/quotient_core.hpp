#ifndef GCORE_QUOTIENT_CORE_HPP
#define GCORE_QUOTIENT_CORE_HPP

#include <map>
#include <memory>
#include <set>
#include <vector>

#include "gcore/graph_map.hpp"
#include "gcore/marked_graph.hpp"

namespace gcore {

// Cells of the quotient core.  Each orbit of cells of the product of the
// two trees is anchored at the canonical lift of its first (source)
// coordinate; the second coordinate is stored as the target-tree cell
// seen from that anchor.

struct SquareCell {
  EdgeId src_edge;
  TreeEdge dec;
  auto tie() const { return std::tie(src_edge, dec); }
  bool operator==(const SquareCell& o) const { return tie() == o.tie(); }
  bool operator<(const SquareCell& o) const { return tie() < o.tie(); }
};

struct HEdgeCell {  // source edge x target vertex: the (s, Pi) edges
  EdgeId src_edge;
  Address tvert;
  auto tie() const { return std::tie(src_edge, tvert); }
  bool operator==(const HEdgeCell& o) const { return tie() == o.tie(); }
  bool operator<(const HEdgeCell& o) const { return tie() < o.tie(); }
};

struct VEdgeCell {  // source vertex x target edge: the (P, sigma) edges
  VertexId src_vert;
  TreeEdge dec;
  auto tie() const { return std::tie(src_vert, dec); }
  bool operator==(const VEdgeCell& o) const { return tie() == o.tie(); }
  bool operator<(const VEdgeCell& o) const { return tie() < o.tie(); }
};

struct VertCell {
  VertexId src_vert;
  Address tvert;
  auto tie() const { return std::tie(src_vert, tvert); }
  bool operator==(const VertCell& o) const { return tie() == o.tie(); }
  bool operator<(const VertCell& o) const { return tie() < o.tie(); }
};

/// Finite quotient of the core of the two universal covers.  Holds the
/// cell orbits; incidence is computed from coordinates on demand.
/// Instances are value types; Rips moves produce modified copies.
class QuotientCore {
 public:
  QuotientCore(std::shared_ptr<const MarkedGraph> src, std::shared_ptr<const MarkedGraph> tgt,
               BasisMap twist);

  const MarkedGraph& source() const { return *src_; }
  const MarkedGraph& target() const { return *tgt_; }
  std::shared_ptr<const MarkedGraph> source_ptr() const { return src_; }
  std::shared_ptr<const MarkedGraph> target_ptr() const { return tgt_; }
  const BasisMap& twist() const { return twist_; }
  const BasisMap& twist_inverse() const { return twist_inv_; }

  std::set<SquareCell> squares;
  std::set<HEdgeCell> hedges;
  std::set<VEdgeCell> vedges;
  std::set<VertCell> verts;

  int area() const { return static_cast<int>(squares.size()); }

  /// Action of a source-marking word on target cells.
  Address act(const Word& g, const Address& tv) const;
  TreeEdge act(const Word& g, const TreeEdge& te) const;

  // --- canonical cell keys for arbitrary lifts --------------------------
  SquareCell square_key(const TreeEdge& src_e, const TreeEdge& dec) const;
  HEdgeCell hedge_key(const TreeEdge& src_e, const Address& tv) const;
  VEdgeCell vedge_key(const Address& sv, const TreeEdge& dec) const;
  VertCell vert_key(const Address& sv, const Address& tv) const;

  // --- incidence (computed at the anchoring lift) -----------------------
  struct SquareFaces {
    std::vector<HEdgeCell> h;  // 2 entries
    std::vector<VEdgeCell> v;  // 2 entries
    std::vector<VertCell> corners;  // 4 entries
  };
  SquareFaces faces(const SquareCell& s) const;

  std::vector<VertCell> endpoints(const HEdgeCell& e) const;  // 2 entries
  std::vector<VertCell> endpoints(const VEdgeCell& e) const;  // 2 entries

  /// Squares having the given edge cell as a face (with multiplicity as
  /// seen at the anchoring lift).
  std::vector<SquareCell> squares_at(const HEdgeCell& e) const;
  std::vector<SquareCell> squares_at(const VEdgeCell& e) const;

  /// Edge cells incident to a vertex cell, as seen at the anchoring lift.
  std::vector<HEdgeCell> hedges_at(const VertCell& v) const;
  std::vector<VEdgeCell> vedges_at(const VertCell& v) const;

  /// Per-source-edge slice: decorations of the squares over that edge.
  std::vector<TreeEdge> slice(EdgeId src_edge) const;
  /// Source tree edges paired with a target tree edge (any lift).
  std::vector<TreeEdge> slice_support(const TreeEdge& eta) const;

  /// The factor-swapped core: source and target exchange roles, twist
  /// becomes its inverse, horizontal and vertical cells trade places.
  QuotientCore swapped() const;

  /// Closure check: every face of every cell is present.
  void require_closed() const;

 private:
  std::shared_ptr<const MarkedGraph> src_;
  std::shared_ptr<const MarkedGraph> tgt_;
  BasisMap twist_;
  BasisMap twist_inv_;
};

}  // namespace gcore

#endif
