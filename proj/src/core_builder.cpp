#include "gcore/core_builder.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

namespace gcore {

namespace {

// Union-find connectivity of an edge set inside the tree.
bool edges_form_subtree(const MarkedGraph& g, const std::vector<TreeEdge>& edges) {
  if (edges.empty()) return true;
  std::map<Address, int> index;
  std::vector<int> parent;
  auto id = [&](const Address& a) {
    auto it = index.find(a);
    if (it != index.end()) return it->second;
    int n = static_cast<int>(index.size());
    index[a] = n;
    parent.push_back(n);
    return n;
  };
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges) {
    int u = id(e.tail);
    int v = id(tree_edge_head(g, e));
    parent[find(u)] = find(v);
  }
  int root = find(0);
  for (size_t i = 0; i < parent.size(); ++i)
    if (find(static_cast<int>(i)) != root) return false;
  return true;
}

}  // namespace

HullData hull_of_edges(const MarkedGraph& src, const TreeEdge& eta, std::vector<TreeEdge> P) {
  if (P.empty()) throw contract_error("hull needs a non-empty edge set");
  std::sort(P.begin(), P.end());
  P.erase(std::unique(P.begin(), P.end()), P.end());

  HullData hd;
  hd.eta = eta;
  hd.P = std::move(P);

  std::set<TreeEdge> hull_edges(hd.P.begin(), hd.P.end());
  std::vector<Address> pts;
  for (const auto& p : hd.P) {
    pts.push_back(p.tail);
    pts.push_back(tree_edge_head(src, p));
  }
  const Address& root = pts.front();
  for (const auto& x : pts) {
    Address cur = root;
    for (Dart d : src.tree_geodesic(root, x)) {
      hull_edges.insert(tree_edge_from_dart(src, cur, d));
      cur = src.extend(std::move(cur), d);
    }
  }
  hd.hull.assign(hull_edges.begin(), hull_edges.end());

  std::map<Address, int> degree;
  for (const auto& e : hd.hull) {
    degree[e.tail]++;
    degree[tree_edge_head(src, e)]++;
  }
  for (auto& [a, deg] : degree) hd.hull_vertices.push_back(a);

  for (const auto& e : hd.hull)
    if (degree[e.tail] >= 2 && degree[tree_edge_head(src, e)] >= 2) hd.H.push_back(e);
  std::set<TreeEdge> interior(hd.H.begin(), hd.H.end());
  for (const auto& p : hd.P)
    if (!interior.count(p)) hd.P_hat.push_back(p);

  for (const auto& e : hd.H)
    if (can_escape(src, {e, true}, hd) && can_escape(src, {e, false}, hd)) hd.CH.push_back(e);
  return hd;
}

HullData hull(const Morphism& m, const TreeEdge& eta) {
  return hull_of_edges(m.source(), eta, m.preimage_edges(eta));
}

bool can_escape(const MarkedGraph& src, const OrientedTreeEdge& e, const HullData& hd) {
  std::set<TreeEdge> blocked(hd.P_hat.begin(), hd.P_hat.end());
  std::set<Address> hull_verts(hd.hull_vertices.begin(), hd.hull_vertices.end());

  Address start = oriented_end(src, e);
  if (!hull_verts.count(start)) return true;
  Dart arrived = oriented_dart(e);
  std::deque<std::pair<Address, Dart>> queue;
  for (Dart d : src.darts_at(src.endpoint(start)))
    if (d != dart_reverse(arrived)) queue.push_back({start, d});

  while (!queue.empty()) {
    auto [a, d] = queue.front();
    queue.pop_front();
    TreeEdge crossed = tree_edge_from_dart(src, a, d);
    if (blocked.count(crossed)) continue;
    Address b = src.extend(a, d);
    if (!hull_verts.count(b)) return true;
    for (Dart d2 : src.darts_at(src.endpoint(b)))
      if (d2 != dart_reverse(d)) queue.push_back({b, d2});
  }
  return false;
}

std::vector<TreeEdge> consolidated_hull(const Morphism& m, const TreeEdge& eta) {
  return hull(m, eta).CH;
}

namespace {

// Does the direction from `from` across dart d contain the tree edge p?
bool direction_contains(const MarkedGraph& g, const Address& from, Dart d, const TreeEdge& p) {
  TreeEdge crossed = tree_edge_from_dart(g, from, d);
  if (crossed == p) return true;
  if (p.tail == from) return forward_dart(p.edge) == d;
  Address head = tree_edge_head(g, p);
  if (head == from) return backward_dart(p.edge) == d;
  int dt = g.tree_distance(from, p.tail);
  int dh = g.tree_distance(from, head);
  const Address& nearest = dt < dh ? p.tail : head;
  auto geo = g.tree_geodesic(from, nearest);
  return !geo.empty() && geo.front() == d;
}

bool on_forward_side(const MarkedGraph& g, const Address& y, const OrientedTreeEdge& o) {
  Address start = oriented_start(g, o);
  Address end = oriented_end(g, o);
  if (y == end) return true;
  if (y == start) return false;
  auto geo = g.tree_geodesic(start, y);
  return !geo.empty() && geo.front() == oriented_dart(o);
}

bool quadrant_heavy_with_p(const Morphism& m, const OrientedTreeEdge& src_e,
                           const OrientedTreeEdge& tgt_e, const std::vector<TreeEdge>& P) {
  const MarkedGraph& src = m.source();
  const MarkedGraph& tgt = m.target();

  std::deque<std::pair<Address, Dart>> queue;
  queue.push_back({oriented_start(src, src_e), oriented_dart(src_e)});

  while (!queue.empty()) {
    auto [a, d] = queue.front();
    queue.pop_front();
    bool meets_p = false;
    for (const auto& p : P)
      if (direction_contains(src, a, d, p)) {
        meets_p = true;
        break;
      }
    Address b = src.extend(a, d);
    if (!meets_p) {
      // the image side is constant over all ends through this direction
      if (on_forward_side(tgt, m.image_of_vertex(b), tgt_e)) return true;
      continue;
    }
    for (Dart d2 : src.darts_at(src.endpoint(b)))
      if (d2 != dart_reverse(d)) queue.push_back({b, d2});
  }
  return false;
}

}  // namespace

bool quadrant_heavy(const Morphism& m, const OrientedTreeEdge& src_e,
                    const OrientedTreeEdge& tgt_e) {
  return quadrant_heavy_with_p(m, src_e, tgt_e, m.preimage_edges(tgt_e.cell));
}

bool square_in_core_by_quadrants(const Morphism& m, const TreeEdge& src_e, const TreeEdge& eta) {
  std::vector<TreeEdge> P = m.preimage_edges(eta);
  for (bool se : {true, false})
    for (bool te : {true, false})
      if (!quadrant_heavy_with_p(m, {src_e, se}, {eta, te}, P)) return false;
  return true;
}

namespace {

// Oriented edges terminating at the vertex, one per dart leaving it.
std::vector<OrientedTreeEdge> incoming_edges(const MarkedGraph& g, const Address& v) {
  std::vector<OrientedTreeEdge> out;
  for (Dart d : g.darts_at(g.endpoint(v)))
    out.push_back({tree_edge_from_dart(g, v, d), !dart_is_forward(d)});
  return out;
}

}  // namespace

bool hedge_in_core(const Morphism& m, const TreeEdge& src_e, const Address& tvert) {
  for (const auto& into : incoming_edges(m.target(), tvert)) {
    std::vector<TreeEdge> P = m.preimage_edges(into.cell);
    for (bool se : {true, false})
      if (!quadrant_heavy_with_p(m, {src_e, se}, into, P)) return false;
  }
  return true;
}

bool vedge_in_core(const Morphism& m, const Address& svert, const TreeEdge& eta) {
  std::vector<TreeEdge> P = m.preimage_edges(eta);
  for (const auto& into : incoming_edges(m.source(), svert))
    for (bool te : {true, false})
      if (!quadrant_heavy_with_p(m, into, {eta, te}, P)) return false;
  return true;
}

namespace {

// A free edge rests in a single complementary region of the other
// splitting: the unique vertex lying in the hulls of both image end
// sets.  Walking toward those hulls finds it; the walk detects a
// parallel (shared) edge by the hulls pointing apart.
//
// The direction test: the end set of one orientation of `edge` maps
// entirely beyond dart d exactly when the reversed quadrant is light.

std::optional<Address> resting_vertex_for_hedge(const Morphism& m, const TreeEdge& src_e) {
  const MarkedGraph& tgt = m.target();
  Address y = m.image_of_vertex(src_e.tail);
  std::optional<Address> prev;
  const int kSafety = 100000;
  for (int step = 0; step < kSafety; ++step) {
    std::optional<Dart> toward_plus, toward_minus;
    for (Dart d : tgt.darts_at(tgt.endpoint(y))) {
      OrientedTreeEdge leaving{tree_edge_from_dart(tgt, y, d), dart_is_forward(d)};
      OrientedTreeEdge entering{leaving.cell, !leaving.forward};
      if (!quadrant_heavy(m, {src_e, true}, entering)) toward_plus = d;
      if (!quadrant_heavy(m, {src_e, false}, entering)) toward_minus = d;
    }
    if (!toward_plus && !toward_minus) {
      if (!hedge_in_core(m, src_e, y))
        throw internal_error("hull intersection vertex fails the core test");
      return y;
    }
    if (toward_plus && toward_minus && *toward_plus != *toward_minus)
      return std::nullopt;  // the hulls are disjoint: parallel edges
    Address next = tgt.extend(y, toward_plus ? *toward_plus : *toward_minus);
    if (prev && next == *prev) return std::nullopt;  // hulls adjacent: parallel
    prev = std::move(y);
    y = std::move(next);
  }
  throw internal_error("resting vertex walk did not terminate");
}

std::optional<Address> resting_vertex_for_vedge(const Morphism& m, const TreeEdge& eta) {
  const MarkedGraph& src = m.source();
  std::vector<TreeEdge> P = m.preimage_edges(eta);
  Address y = P.front().tail;
  std::optional<Address> prev;
  const int kSafety = 100000;
  for (int step = 0; step < kSafety; ++step) {
    std::optional<Dart> toward_plus, toward_minus;
    for (Dart d : src.darts_at(src.endpoint(y))) {
      OrientedTreeEdge leaving{tree_edge_from_dart(src, y, d), dart_is_forward(d)};
      OrientedTreeEdge entering{leaving.cell, !leaving.forward};
      if (!quadrant_heavy_with_p(m, entering, {eta, true}, P)) toward_plus = d;
      if (!quadrant_heavy_with_p(m, entering, {eta, false}, P)) toward_minus = d;
    }
    if (!toward_plus && !toward_minus) {
      if (!vedge_in_core(m, y, eta))
        throw internal_error("hull intersection vertex fails the core test");
      return y;
    }
    if (toward_plus && toward_minus && *toward_plus != *toward_minus) return std::nullopt;
    Address next = src.extend(y, toward_plus ? *toward_plus : *toward_minus);
    if (prev && next == *prev) return std::nullopt;
    prev = std::move(y);
    y = std::move(next);
  }
  throw internal_error("resting vertex walk did not terminate");
}

}  // namespace

QuotientCore build_core(const Morphism& m) {
  m.require_certified();
  const MarkedGraph& src = m.source();
  const MarkedGraph& tgt = m.target();
  QuotientCore core(m.source_ptr(), m.target_ptr(), m.twist());

  std::vector<EdgeId> unplaced_src, unplaced_tgt;

  // squares and vertical cells per target edge orbit
  for (EdgeId h = 0; h < tgt.n_edges(); ++h) {
    TreeEdge eta = canonical_tree_edge(tgt, h);
    HullData hd = hull(m, eta);
    for (const auto& x : hd.CH) core.squares.insert(core.square_key(x, eta));

    if (!hd.CH.empty()) {
      if (!edges_form_subtree(src, hd.CH))
        throw internal_error("consolidated hull is not connected");
      std::set<Address> ends;
      for (const auto& x : hd.CH) {
        ends.insert(x.tail);
        ends.insert(tree_edge_head(src, x));
      }
      for (const auto& v : ends) core.vedges.insert(core.vedge_key(v, eta));
    } else {
      // the target edge meets no source sphere; it rests in a single
      // complementary region of the source splitting
      auto rest = resting_vertex_for_vedge(m, eta);
      if (!rest)
        unplaced_tgt.push_back(h);
      else
        core.vedges.insert(core.vedge_key(*rest, eta));
    }
  }

  // horizontal cells per source edge orbit
  for (EdgeId e = 0; e < src.n_edges(); ++e) {
    std::vector<TreeEdge> decs = core.slice(e);
    if (!decs.empty()) {
      if (!edges_form_subtree(tgt, decs))
        throw internal_error("slice support is not connected");
      std::set<Address> ends;
      for (const auto& dec : decs) {
        ends.insert(dec.tail);
        ends.insert(tree_edge_head(tgt, dec));
      }
      for (const auto& tv : ends) core.hedges.insert(HEdgeCell{e, tv});
    } else {
      TreeEdge lift = canonical_tree_edge(src, e);
      auto rest = resting_vertex_for_hedge(m, lift);
      if (!rest)
        unplaced_src.push_back(e);
      else
        core.hedges.insert(HEdgeCell{e, *rest});
    }
  }

  if (!unplaced_src.empty() || !unplaced_tgt.empty()) {
    // An edge with no resting cell is parallel to an edge of the other
    // splitting.  If everything is parallel the two splittings are the
    // same point and the core is empty; partial overlap is rejected.
    bool all_shared = static_cast<int>(unplaced_src.size()) == src.n_edges() &&
                      static_cast<int>(unplaced_tgt.size()) == tgt.n_edges();
    if (all_shared) return QuotientCore(m.source_ptr(), m.target_ptr(), m.twist());
    throw shared_edge_error("the splittings share an edge orbit (edge with no resting cell)");
  }

  // vertices by closure
  for (const auto& e : core.hedges)
    for (const auto& v : core.endpoints(e)) core.verts.insert(v);
  for (const auto& e : core.vedges)
    for (const auto& v : core.endpoints(e)) core.verts.insert(v);

  core.require_closed();
  return core;
}

}  // namespace gcore
