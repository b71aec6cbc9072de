#ifndef GCORE_SQUARE_COMPLEX_HPP
#define GCORE_SQUARE_COMPLEX_HPP

#include <optional>
#include <string>

#include "gcore/quotient_core.hpp"

namespace gcore {

enum class Side { S, Sigma };

/// Connected component of the S- or Sigma-boundary together with the
/// squares it bounds.  For an S-rectangle the side consists of vertical
/// edges and 3-valent vertices, every square shares the fixed source
/// edge, and collapsing removes the side, the squares and the horizontal
/// edges pinched between consecutive squares of the run.
struct BoundaryRectangle {
  Side side = Side::S;
  EdgeId fixed_edge = -1;
  std::vector<SquareCell> run;
  std::vector<VEdgeCell> side_vedges;   // S-side boundary edges
  std::vector<HEdgeCell> side_hedges;   // Sigma-side boundary edges
  std::vector<VertCell> side_verts;     // interior: joining two run edges
  std::vector<VertCell> dangling_verts; // boundary vertices at the path ends
  std::vector<HEdgeCell> pinched_hedges;  // removed with an S-side
  std::vector<VEdgeCell> pinched_vedges;  // removed with a Sigma-side

  int run_length() const { return static_cast<int>(run.size()); }
};

struct BoundaryCells {
  std::vector<VEdgeCell> vedges;
  std::vector<HEdgeCell> hedges;
  std::vector<VertCell> verts;
};

/// Open edges that are the face of exactly one square, and vertices
/// with exactly three incident edges in the side-appropriate pattern.
BoundaryCells boundary(const QuotientCore& core, Side side);

/// One rectangle per boundary component, canonically ordered.
std::vector<BoundaryRectangle> maximal_rectangles(const QuotientCore& core, Side side);
/// Both sides, S first, canonical order.
std::vector<BoundaryRectangle> all_rectangles(const QuotientCore& core);

/// Removes the rectangle's orbit: its squares, its side cells and the
/// edges pinched between consecutive squares of the run.  Throws
/// input_error when the rectangle is not present in the core.
QuotientCore rips_move(const QuotientCore& core, const BoundaryRectangle& r);

struct FreeEdgeCertificate {
  bool horizontal = true;
  HEdgeCell hedge;
  VEdgeCell vedge;
  int distance_bound = 2;
};

/// All edge cells bounding no square.
std::vector<FreeEdgeCertificate> free_edges(const QuotientCore& core);

/// Canonical encoding of the core as a labeled square complex (cell
/// kinds and incidence with multiplicity).  Two cores are isomorphic as
/// decorated complexes exactly when their encodings agree.
std::string canonical_form(const QuotientCore& core);

bool is_isomorphic(const QuotientCore& a, const QuotientCore& b);

}  // namespace gcore

#endif
