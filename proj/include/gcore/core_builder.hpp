#ifndef GCORE_CORE_BUILDER_HPP
#define GCORE_CORE_BUILDER_HPP

#include "gcore/graph_map.hpp"
#include "gcore/quotient_core.hpp"

namespace gcore {

/// Preimage set of a target tree edge together with its hull structure.
struct HullData {
  TreeEdge eta;
  std::vector<TreeEdge> P;      // source edges whose image crosses eta
  std::vector<TreeEdge> hull;   // minimal subtree containing P
  std::vector<TreeEdge> H;      // interior: non-extremal hull edges
  std::vector<TreeEdge> P_hat;  // P - H, the extremal preimage edges
  std::vector<TreeEdge> CH;     // edges of H escaping in both directions
  std::vector<Address> hull_vertices;
};

/// Hull structure of an explicit edge set (pure tree computation).
HullData hull_of_edges(const MarkedGraph& src, const TreeEdge& eta, std::vector<TreeEdge> P);

HullData hull(const Morphism& m, const TreeEdge& eta);

/// Whether a forward search from the oriented edge can reach a vertex
/// strictly outside the hull of P without crossing an edge of P_hat.
bool can_escape(const MarkedGraph& src, const OrientedTreeEdge& e, const HullData& hd);

std::vector<TreeEdge> consolidated_hull(const Morphism& m, const TreeEdge& eta);

/// Whether some end through the oriented source edge maps to an end on
/// the forward side of the oriented target edge.  Exact: the search
/// frontier is the set of directions free of preimage edges, where the
/// image side is constant.
bool quadrant_heavy(const Morphism& m, const OrientedTreeEdge& src_e,
                    const OrientedTreeEdge& tgt_e);

/// Square membership decided via the four quadrants; used to cross-check
/// the hull route.
bool square_in_core_by_quadrants(const Morphism& m, const TreeEdge& src_e, const TreeEdge& eta);

/// Whether the closed cell (source edge x target vertex) lies in the core.
bool hedge_in_core(const Morphism& m, const TreeEdge& src_e, const Address& tvert);
/// Whether the closed cell (source vertex x target edge) lies in the core.
bool vedge_in_core(const Morphism& m, const Address& svert, const TreeEdge& eta);

/// Assembles the quotient core of the morphism's two splittings:
/// squares from the consolidated hulls, edge cells from the slice
/// subtrees (or a resting-cell search for edges meeting nothing),
/// vertices by closure.  A pair presenting the same splitting twice
/// yields the empty complex; a pair sharing some but not every edge
/// orbit is rejected.
QuotientCore build_core(const Morphism& m);

}  // namespace gcore

#endif
