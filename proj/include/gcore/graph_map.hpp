#ifndef GCORE_GRAPH_MAP_HPP
#define GCORE_GRAPH_MAP_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "gcore/marked_graph.hpp"

namespace gcore {

/// Canonical lift of a quotient edge: crossed forward from the
/// canonical lift of its source vertex.
inline TreeEdge canonical_tree_edge(const MarkedGraph& g, EdgeId e) {
  return TreeEdge{g.canonical_lift(g.edge(e).from), e};
}

/// Quotient-level description of an equivariant map: where vertices go,
/// an edge path per edge, and a deck twist aligning the base lifts.
/// This is the serialization-facing form.
struct IoGraphMap {
  std::map<VertexId, VertexId> vertex_map;
  std::map<EdgeId, std::vector<Dart>> edge_map;
  Word twist;
};

/// Checks endpoint compatibility and freely reduces every edge path.
/// An edge path that reduces to nothing means the two splittings share
/// an edge orbit; such inputs are rejected.
IoGraphMap tighten(const MarkedGraph& src, const MarkedGraph& tgt, IoGraphMap m);

/// Equivariant map between universal covers, stored as the images of the
/// canonical vertex lifts plus the change-of-marking automorphism that
/// the map induces.  Edge images are the geodesics between endpoint
/// images, so they are always tight.  Immutable.
class Morphism {
 public:
  Morphism(std::shared_ptr<const MarkedGraph> src, std::shared_ptr<const MarkedGraph> tgt,
           std::vector<Address> placements, BasisMap twist);

  const MarkedGraph& source() const { return *src_; }
  const MarkedGraph& target() const { return *tgt_; }
  std::shared_ptr<const MarkedGraph> source_ptr() const { return src_; }
  std::shared_ptr<const MarkedGraph> target_ptr() const { return tgt_; }

  /// The induced automorphism: how source-marking words act on the
  /// target tree.
  const BasisMap& twist() const { return twist_; }
  const BasisMap& twist_inverse() const { return twist_inv_; }

  const Address& placement(VertexId v) const { return placements_.at(v); }
  const std::vector<Address>& placements() const { return placements_; }

  /// Action of a source word on target cells (deck transformation of
  /// the twisted word).
  Address act(const Word& g, const Address& target_vertex) const;
  TreeEdge act_edge(const Word& g, const TreeEdge& t) const;

  Address image_of_vertex(const Address& p) const;
  /// Image of a tree edge as darts leaving image_of_vertex(tail).
  std::vector<Dart> image_of_edge(const TreeEdge& t) const;

  int total_image_length() const;

  /// Gate partition of the darts at the canonical lift of v: darts
  /// grouped by the first dart of their image geodesic.
  std::vector<std::vector<Dart>> gates(VertexId v) const;

  bool certified(std::string* why = nullptr) const;
  void require_certified() const;

  /// All source tree edges whose image geodesic crosses eta, found by
  /// scanning the canonical edge images and solving for the deck
  /// translation that places each crossing on eta.
  std::vector<TreeEdge> preimage_edges(const TreeEdge& eta) const;

  /// Image of an eventually periodic ray; exact via projection to the
  /// axis of the translated period word.
  PeriodicRay image_ray(const PeriodicRay& r) const;

  bool operator==(const Morphism& o) const {
    return placements_ == o.placements_ && twist_ == o.twist_;
  }

 private:
  const std::vector<TreeEdge>& canonical_preimages(EdgeId target_edge) const;

  std::shared_ptr<const MarkedGraph> src_;
  std::shared_ptr<const MarkedGraph> tgt_;
  std::vector<Address> placements_;
  BasisMap twist_;
  BasisMap twist_inv_;
  mutable std::map<EdgeId, std::vector<TreeEdge>> preimage_cache_;
};

/// Lifts a quotient-level map to placements and computes its induced
/// automorphism.  The map must be tight (use tighten first).
Morphism lift_graph_map(std::shared_ptr<const MarkedGraph> src,
                        std::shared_ptr<const MarkedGraph> tgt, const IoGraphMap& io);

/// Renders a morphism back to its quotient-level description.
IoGraphMap quotient_description(const Morphism& m);

/// Constructs a certified morphism between two splittings whose actions
/// are identified through `twist` (source marking words to target
/// marking words).  Starts from a seeded equivariant placement and
/// greedily shortens total image length; at a local minimum every
/// vertex has at least two gates.  Distinct variants give distinct but
/// equally valid morphisms.  Throws shared_edge_error when every
/// attempt ends with a collapsed edge image.
Morphism make_morphism(std::shared_ptr<const MarkedGraph> src,
                       std::shared_ptr<const MarkedGraph> tgt, const BasisMap& twist,
                       std::uint64_t variant = 0);

}  // namespace gcore

#endif
