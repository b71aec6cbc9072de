#include "gcore/square_complex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace gcore {

BoundaryCells boundary(const QuotientCore& core, Side side) {
  BoundaryCells out;
  if (side == Side::S) {
    for (const auto& e : core.vedges)
      if (core.squares_at(e).size() == 1) out.vedges.push_back(e);
  } else {
    for (const auto& e : core.hedges)
      if (core.squares_at(e).size() == 1) out.hedges.push_back(e);
  }
  for (const auto& v : core.verts) {
    size_t nh = core.hedges_at(v).size();
    size_t nv = core.vedges_at(v).size();
    if (side == Side::S && nv == 2 && nh == 1) out.verts.push_back(v);
    if (side == Side::Sigma && nh == 2 && nv == 1) out.verts.push_back(v);
  }
  return out;
}

namespace {

// Orders the side edges of one boundary component into a path and
// assembles the rectangle.  Boundary vertices joining two side edges
// are interior to the side and get pinched by the move; a boundary
// vertex incident to a single side edge decorates the end of the side
// and survives.
template <typename EdgeCellT>
BoundaryRectangle assemble_rectangle(const QuotientCore& core, Side side,
                                     const std::vector<EdgeCellT>& comp_edges,
                                     const std::vector<VertCell>& comp_verts) {
  BoundaryRectangle r;
  r.side = side;

  std::set<VertCell> vset(comp_verts.begin(), comp_verts.end());
  std::map<VertCell, std::vector<int>> at_vert;
  for (size_t i = 0; i < comp_edges.size(); ++i)
    for (const auto& v : core.endpoints(comp_edges[i]))
      if (vset.count(v)) at_vert[v].push_back(static_cast<int>(i));

  std::vector<std::vector<int>> nbr(comp_edges.size());
  for (auto& [v, ids] : at_vert) {
    if (ids.size() == 2) {
      nbr[ids[0]].push_back(ids[1]);
      nbr[ids[1]].push_back(ids[0]);
      r.side_verts.push_back(v);
    } else if (ids.size() == 1) {
      r.dangling_verts.push_back(v);
    } else {
      throw internal_error("boundary side vertex joins more than two side edges");
    }
  }

  // find a deterministic end of the path
  int start = -1;
  for (size_t i = 0; i < comp_edges.size(); ++i) {
    if (nbr[i].size() <= 1) {
      if (start < 0 || comp_edges[i] < comp_edges[start]) start = static_cast<int>(i);
    }
  }
  if (start < 0) throw internal_error("boundary side is not a path");

  std::vector<int> order;
  std::vector<bool> seen(comp_edges.size(), false);
  int cur = start;
  while (true) {
    order.push_back(cur);
    seen[cur] = true;
    int nxt = -1;
    for (int cand : nbr[cur])
      if (!seen[cand]) nxt = cand;
    if (nxt < 0) break;
    cur = nxt;
  }
  if (order.size() != comp_edges.size())
    throw internal_error("boundary side is not connected as a path");

  for (int idx : order) {
    const auto& e = comp_edges[idx];
    auto sq = core.squares_at(e);
    if (sq.size() != 1) throw internal_error("side edge without a unique square");
    r.run.push_back(sq.front());
    if constexpr (std::is_same_v<EdgeCellT, VEdgeCell>)
      r.side_vedges.push_back(e);
    else
      r.side_hedges.push_back(e);
  }

  // squares of one rectangle share the fixed edge orbit
  if (side == Side::S) {
    r.fixed_edge = r.run.front().src_edge;
    for (const auto& s : r.run)
      if (s.src_edge != r.fixed_edge)
        throw internal_error("S-rectangle squares do not share a source edge");
  } else {
    r.fixed_edge = r.run.front().dec.edge;
    for (const auto& s : r.run)
      if (s.dec.edge != r.fixed_edge)
        throw internal_error("Sigma-rectangle squares do not share a target edge orbit");
  }

  std::sort(r.side_verts.begin(), r.side_verts.end());
  std::sort(r.dangling_verts.begin(), r.dangling_verts.end());
  // each interior side vertex pinches its unique edge of the other family
  for (const auto& v : r.side_verts) {
    if (side == Side::S) {
      auto hs = core.hedges_at(v);
      if (hs.size() != 1) throw internal_error("side vertex without a unique horizontal edge");
      r.pinched_hedges.push_back(hs.front());
    } else {
      auto vs = core.vedges_at(v);
      if (vs.size() != 1) throw internal_error("side vertex without a unique vertical edge");
      r.pinched_vedges.push_back(vs.front());
    }
  }
  return r;
}

template <typename EdgeCellT>
std::vector<BoundaryRectangle> rectangles_of_side(const QuotientCore& core, Side side,
                                                  const std::vector<EdgeCellT>& bedges,
                                                  const std::vector<VertCell>& bverts) {
  std::set<VertCell> vset(bverts.begin(), bverts.end());
  // union-find over boundary cells: edges joined through boundary vertices
  std::map<VertCell, std::vector<int>> at_vert;
  for (size_t i = 0; i < bedges.size(); ++i)
    for (const auto& v : core.endpoints(bedges[i]))
      if (vset.count(v)) at_vert[v].push_back(static_cast<int>(i));

  std::vector<int> parent(bedges.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto& [v, ids] : at_vert)
    for (size_t k = 1; k < ids.size(); ++k) parent[find(ids[0])] = find(ids[k]);

  std::map<int, std::vector<int>> comps;
  for (size_t i = 0; i < bedges.size(); ++i) comps[find(static_cast<int>(i))].push_back(static_cast<int>(i));

  std::vector<BoundaryRectangle> out;
  for (auto& [root, ids] : comps) {
    std::vector<EdgeCellT> comp_edges;
    for (int i : ids) comp_edges.push_back(bedges[i]);
    std::vector<VertCell> comp_verts;
    for (auto& [v, vids] : at_vert)
      for (int i : vids)
        if (find(i) == root) {
          comp_verts.push_back(v);
          break;
        }
    out.push_back(assemble_rectangle(core, side, comp_edges, comp_verts));
  }
  std::sort(out.begin(), out.end(), [](const BoundaryRectangle& a, const BoundaryRectangle& b) {
    if (a.fixed_edge != b.fixed_edge) return a.fixed_edge < b.fixed_edge;
    return a.run.front() < b.run.front();
  });
  return out;
}

}  // namespace

std::vector<BoundaryRectangle> maximal_rectangles(const QuotientCore& core, Side side) {
  BoundaryCells b = boundary(core, side);
  if (side == Side::S) return rectangles_of_side(core, side, b.vedges, b.verts);
  return rectangles_of_side(core, side, b.hedges, b.verts);
}

std::vector<BoundaryRectangle> all_rectangles(const QuotientCore& core) {
  std::vector<BoundaryRectangle> out = maximal_rectangles(core, Side::S);
  auto sig = maximal_rectangles(core, Side::Sigma);
  out.insert(out.end(), sig.begin(), sig.end());
  return out;
}

QuotientCore rips_move(const QuotientCore& core, const BoundaryRectangle& r) {
  QuotientCore out = core;
  auto erase_or_throw = [](auto& set, const auto& cell, const char* what) {
    if (!set.erase(cell)) throw input_error(std::string("stale rectangle: missing ") + what);
  };
  for (const auto& s : r.run) erase_or_throw(out.squares, s, "square");
  for (const auto& e : r.side_vedges) erase_or_throw(out.vedges, e, "side edge");
  for (const auto& e : r.side_hedges) erase_or_throw(out.hedges, e, "side edge");
  for (const auto& v : r.side_verts) erase_or_throw(out.verts, v, "side vertex");
  for (const auto& e : r.pinched_hedges) erase_or_throw(out.hedges, e, "pinched edge");
  for (const auto& e : r.pinched_vedges) erase_or_throw(out.vedges, e, "pinched edge");
  out.require_closed();
  return out;
}

std::vector<FreeEdgeCertificate> free_edges(const QuotientCore& core) {
  std::vector<FreeEdgeCertificate> out;
  for (const auto& e : core.hedges)
    if (core.squares_at(e).empty()) {
      FreeEdgeCertificate c;
      c.horizontal = true;
      c.hedge = e;
      out.push_back(c);
    }
  for (const auto& e : core.vedges)
    if (core.squares_at(e).empty()) {
      FreeEdgeCertificate c;
      c.horizontal = false;
      c.vedge = e;
      out.push_back(c);
    }
  return out;
}

namespace {

/// Incidence multigraph of the complex with typed nodes.
struct AbstractComplex {
  std::vector<int> kind;  // 0 vert, 1 hedge, 2 vedge, 3 square
  std::vector<std::vector<std::pair<int, int>>> adj;  // (neighbor, multiplicity)

  int n() const { return static_cast<int>(kind.size()); }
};

AbstractComplex abstract_complex(const QuotientCore& core) {
  AbstractComplex ac;
  std::map<VertCell, int> vid;
  std::map<HEdgeCell, int> hid;
  std::map<VEdgeCell, int> eid;
  auto add_node = [&](int kind) {
    ac.kind.push_back(kind);
    ac.adj.emplace_back();
    return static_cast<int>(ac.kind.size()) - 1;
  };
  for (const auto& v : core.verts) vid[v] = add_node(0);
  for (const auto& e : core.hedges) hid[e] = add_node(1);
  for (const auto& e : core.vedges) eid[e] = add_node(2);

  std::map<std::pair<int, int>, int> mult;
  auto link = [&](int a, int b) {
    mult[{std::min(a, b), std::max(a, b)}]++;
  };

  for (const auto& e : core.hedges)
    for (const auto& v : core.endpoints(e)) link(hid[e], vid.at(v));
  for (const auto& e : core.vedges)
    for (const auto& v : core.endpoints(e)) link(eid[e], vid.at(v));
  for (const auto& s : core.squares) {
    int sq = add_node(3);
    auto f = core.faces(s);
    for (const auto& e : f.h) link(sq, hid.at(e));
    for (const auto& e : f.v) link(sq, eid.at(e));
    for (const auto& v : f.corners) link(sq, vid.at(v));
  }
  for (auto& [pair, m] : mult) {
    ac.adj[pair.first].push_back({pair.second, m});
    ac.adj[pair.second].push_back({pair.first, m});
  }
  for (auto& lst : ac.adj) std::sort(lst.begin(), lst.end());
  return ac;
}

// Color refinement; returns per-node colors, normalized to 0..k-1 in
// order of first appearance of the signature ordering.
std::vector<int> refine(const AbstractComplex& ac, std::vector<int> colors) {
  while (true) {
    // signature: (old color, sorted (neighbor color, multiplicity))
    std::vector<std::pair<std::vector<int>, int>> sigs(ac.n());
    for (int v = 0; v < ac.n(); ++v) {
      std::vector<std::pair<int, int>> nbrs;
      for (auto& [u, m] : ac.adj[v]) nbrs.push_back({colors[u], m});
      std::sort(nbrs.begin(), nbrs.end());
      std::vector<int> sig{colors[v]};
      for (auto& [c, m] : nbrs) {
        sig.push_back(c);
        sig.push_back(m);
      }
      sigs[v] = {std::move(sig), v};
    }
    std::map<std::vector<int>, int> new_ids;
    for (int v = 0; v < ac.n(); ++v) new_ids.emplace(sigs[v].first, 0);
    int next = 0;
    for (auto& [sig, id] : new_ids) id = next++;
    std::vector<int> out(ac.n());
    for (int v = 0; v < ac.n(); ++v) out[v] = new_ids[sigs[v].first];
    if (out == colors) return out;
    colors = std::move(out);
  }
}

std::string certificate_for_order(const AbstractComplex& ac, const std::vector<int>& order) {
  std::vector<int> pos(ac.n());
  for (int i = 0; i < ac.n(); ++i) pos[order[i]] = i;
  std::ostringstream os;
  for (int i = 0; i < ac.n(); ++i) {
    int v = order[i];
    os << 'k' << ac.kind[v] << ':';
    std::vector<std::pair<int, int>> nbrs;
    for (auto& [u, m] : ac.adj[v]) nbrs.push_back({pos[u], m});
    std::sort(nbrs.begin(), nbrs.end());
    for (auto& [p, m] : nbrs) os << p << 'x' << m << ',';
    os << ';';
  }
  return os.str();
}

void canonical_search(const AbstractComplex& ac, std::vector<int> colors,
                      std::optional<std::string>& best) {
  colors = refine(ac, colors);
  // find the smallest non-singleton color class
  std::map<int, std::vector<int>> classes;
  for (int v = 0; v < ac.n(); ++v) classes[colors[v]].push_back(v);
  int branch_color = -1;
  for (auto& [c, members] : classes)
    if (members.size() > 1) {
      branch_color = c;
      break;
    }
  if (branch_color < 0) {
    std::vector<int> order(ac.n());
    for (int v = 0; v < ac.n(); ++v) order[colors[v]] = v;
    std::string cert = certificate_for_order(ac, order);
    if (!best || cert < *best) best = std::move(cert);
    return;
  }
  for (int v : classes[branch_color]) {
    std::vector<int> next = colors;
    // individualize v: give it a color just below its class
    for (int u = 0; u < ac.n(); ++u)
      next[u] = 2 * next[u] + (u == v ? 0 : 1);
    canonical_search(ac, std::move(next), best);
  }
}

}  // namespace

std::string canonical_form(const QuotientCore& core) {
  AbstractComplex ac = abstract_complex(core);
  if (ac.n() == 0) return "empty";
  std::optional<std::string> best;
  canonical_search(ac, ac.kind, best);
  return *best;
}

bool is_isomorphic(const QuotientCore& a, const QuotientCore& b) {
  return canonical_form(a) == canonical_form(b);
}

}  // namespace gcore
