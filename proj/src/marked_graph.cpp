#include "gcore/marked_graph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace gcore {

GraphDiagnostics MarkedGraph::diagnose(const Basis& basis, int n_vertices,
                                       const std::vector<Edge>& edges) {
  GraphDiagnostics d;
  if (n_vertices <= 0) {
    d.issues.push_back("graph has no vertices");
    return d;
  }
  for (size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].from < 0 || edges[i].from >= n_vertices || edges[i].to < 0 ||
        edges[i].to >= n_vertices) {
      d.issues.push_back("edge " + std::to_string(i) + " has endpoint outside vertex range");
      return d;
    }
  }
  std::vector<int> valence(n_vertices, 0);
  for (const auto& e : edges) {
    valence[e.from]++;
    valence[e.to]++;
  }
  for (int v = 0; v < n_vertices; ++v)
    if (valence[v] <= 1)
      d.issues.push_back("vertex " + std::to_string(v) + " has valence " +
                         std::to_string(valence[v]));
  // connectivity
  std::vector<bool> seen(n_vertices, false);
  std::deque<int> q{0};
  seen[0] = true;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (const auto& e : edges) {
      int w = -1;
      if (e.from == v) w = e.to;
      else if (e.to == v) w = e.from;
      else continue;
      if (!seen[w]) {
        seen[w] = true;
        reached++;
        q.push_back(w);
      }
    }
  }
  if (reached != n_vertices) d.issues.push_back("graph is not connected");
  int betti = static_cast<int>(edges.size()) - n_vertices + 1;
  if (reached == n_vertices && betti != basis.rank())
    d.issues.push_back("first Betti number " + std::to_string(betti) + " does not match rank " +
                       std::to_string(basis.rank()));
  return d;
}

MarkedGraph::MarkedGraph(Basis basis, int n_vertices, std::vector<Edge> edges, VertexId base,
                         std::vector<EdgeId> spanning_tree)
    : basis_(std::move(basis)),
      n_vertices_(n_vertices),
      edges_(std::move(edges)),
      base_(base),
      spanning_tree_(std::move(spanning_tree)) {
  GraphDiagnostics d = diagnose(basis_, n_vertices_, edges_);
  if (!d.ok()) {
    std::string msg = "invalid marked graph:";
    for (const auto& s : d.issues) msg += " " + s + ";";
    throw input_error(msg);
  }
  if (base_ < 0 || base_ >= n_vertices_) throw input_error("base vertex out of range");
  // spanning tree check
  std::sort(spanning_tree_.begin(), spanning_tree_.end());
  if (static_cast<int>(spanning_tree_.size()) != n_vertices_ - 1)
    throw input_error("spanning tree must have n_vertices - 1 edges");
  std::set<EdgeId> st(spanning_tree_.begin(), spanning_tree_.end());
  if (static_cast<int>(st.size()) != n_vertices_ - 1) throw input_error("repeated tree edge");
  std::vector<int> comp(n_vertices_);
  for (int i = 0; i < n_vertices_; ++i) comp[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (EdgeId e : spanning_tree_) {
    int a = find(edges_[e].from), b = find(edges_[e].to);
    if (a == b) throw input_error("spanning tree contains a cycle");
    comp[a] = b;
  }
  build_derived();
}

MarkedGraph MarkedGraph::with_fresh_marking(Basis basis, int n_vertices, std::vector<Edge> edges,
                                            VertexId base) {
  GraphDiagnostics d = diagnose(basis, n_vertices, edges);
  if (!d.ok()) {
    std::string msg = "invalid marked graph:";
    for (const auto& s : d.issues) msg += " " + s + ";";
    throw input_error(msg);
  }
  // BFS spanning tree from base for determinism.
  std::vector<bool> seen(n_vertices, false);
  std::vector<EdgeId> tree;
  std::deque<int> q{base};
  seen[base] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (size_t e = 0; e < edges.size(); ++e) {
      int w = -1;
      if (edges[e].from == v) w = edges[e].to;
      else if (edges[e].to == v) w = edges[e].from;
      else continue;
      if (!seen[w]) {
        seen[w] = true;
        tree.push_back(static_cast<EdgeId>(e));
        q.push_back(w);
      }
    }
  }
  return MarkedGraph(std::move(basis), n_vertices, std::move(edges), base, std::move(tree));
}

void MarkedGraph::build_derived() {
  // marking: non-tree edges get generators in edge order
  edge_gen_.assign(edges_.size(), -1);
  gen_edge_.clear();
  std::set<EdgeId> st(spanning_tree_.begin(), spanning_tree_.end());
  for (size_t e = 0; e < edges_.size(); ++e) {
    if (!st.count(static_cast<EdgeId>(e))) {
      edge_gen_[e] = static_cast<int>(gen_edge_.size());
      gen_edge_.push_back(static_cast<EdgeId>(e));
    }
  }
  if (static_cast<int>(gen_edge_.size()) != basis_.rank())
    throw input_error("non-tree edges do not match basis rank");

  darts_at_.assign(n_vertices_, {});
  for (size_t e = 0; e < edges_.size(); ++e) {
    darts_at_[edges_[e].from].push_back(forward_dart(static_cast<EdgeId>(e)));
    darts_at_[edges_[e].to].push_back(backward_dart(static_cast<EdgeId>(e)));
  }
  for (auto& ds : darts_at_) std::sort(ds.begin(), ds.end());

  // spines inside the spanning tree
  spine_.assign(n_vertices_, {});
  std::vector<bool> seen(n_vertices_, false);
  seen[base_] = true;
  std::deque<int> q{base_};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (Dart d : darts_at_[v]) {
      if (!st.count(dart_edge(d))) continue;
      int w = dart_to(d);
      if (seen[w]) continue;
      seen[w] = true;
      spine_[w] = spine_[v];
      spine_[w].push_back(d);
      q.push_back(w);
    }
  }

  // canonical lifts: BFS with ascending dart exploration gives the
  // shortlex-least reduced path to each vertex
  canonical_.assign(n_vertices_, {});
  std::vector<bool> done(n_vertices_, false);
  done[base_] = true;
  std::deque<int> q2{base_};
  while (!q2.empty()) {
    int v = q2.front();
    q2.pop_front();
    for (Dart d : darts_at_[v]) {
      int w = dart_to(d);
      if (done[w]) continue;
      done[w] = true;
      canonical_[w] = canonical_[v];
      canonical_[w].push_back(d);
      q2.push_back(w);
    }
  }
}

Address MarkedGraph::extend(Address a, Dart d) const {
  if (dart_from(d) != endpoint(a)) throw contract_error("dart not composable with address");
  if (!a.empty() && a.back() == dart_reverse(d))
    a.pop_back();
  else
    a.push_back(d);
  return a;
}

Address MarkedGraph::extend_path(Address a, const std::vector<Dart>& path) const {
  for (Dart d : path) a = extend(std::move(a), d);
  return a;
}

std::vector<Dart> MarkedGraph::tree_geodesic(const Address& a, const Address& b) const {
  size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  std::vector<Dart> path;
  for (size_t i = a.size(); i > k; --i) path.push_back(dart_reverse(a[i - 1]));
  for (size_t i = k; i < b.size(); ++i) path.push_back(b[i]);
  return path;
}

int MarkedGraph::tree_distance(const Address& a, const Address& b) const {
  size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) ++k;
  return static_cast<int>(a.size() - k + b.size() - k);
}

Word MarkedGraph::word_of_loop(const std::vector<Dart>& loop) const {
  std::vector<Letter> letters;
  for (Dart d : loop) {
    int gen = edge_gen_[dart_edge(d)];
    if (gen >= 0) letters.push_back(letter_of(gen, dart_is_forward(d)));
  }
  return Word(std::move(letters));
}

std::vector<Dart> MarkedGraph::loop_of_word(const Word& w) const {
  Address a;  // build as an address starting at base; stays a loop
  for (Letter l : w.letters()) {
    EdgeId e = gen_edge_[gen_of(l)];
    if (positive(l)) {
      a = extend_path(std::move(a), spine_[edges_[e].from]);
      a = extend(std::move(a), forward_dart(e));
      std::vector<Dart> back;
      const auto& sp = spine_[edges_[e].to];
      for (size_t i = sp.size(); i > 0; --i) back.push_back(dart_reverse(sp[i - 1]));
      a = extend_path(std::move(a), back);
    } else {
      a = extend_path(std::move(a), spine_[edges_[e].to]);
      a = extend(std::move(a), backward_dart(e));
      std::vector<Dart> back;
      const auto& sp = spine_[edges_[e].from];
      for (size_t i = sp.size(); i > 0; --i) back.push_back(dart_reverse(sp[i - 1]));
      a = extend_path(std::move(a), back);
    }
  }
  return a;
}

Address MarkedGraph::deck_translate(const Address& a, const Word& w) const {
  Address out = loop_of_word(w);
  return extend_path(std::move(out), a);
}

Word MarkedGraph::deck_word(const Address& a) const {
  return deck_word_between(a, canonical_[endpoint(a)]);
}

Word MarkedGraph::deck_word_between(const Address& a, const Address& b) const {
  if (endpoint(a) != endpoint(b))
    throw contract_error("deck word requires vertices in the same fiber");
  // read a . b^{-1} as a loop at base
  std::vector<Dart> loop = a;
  for (size_t i = b.size(); i > 0; --i) loop.push_back(dart_reverse(b[i - 1]));
  return word_of_loop(loop);
}

std::vector<Address> MarkedGraph::ball(const Address& center, int radius, size_t cap) const {
  std::vector<Address> out{center};
  std::set<Address> seen{center};
  std::deque<std::pair<Address, int>> q{{center, 0}};
  while (!q.empty()) {
    auto [a, dist] = q.front();
    q.pop_front();
    if (dist == radius) continue;
    for (Dart d : darts_at_[endpoint(a)]) {
      Address nxt = extend(a, d);
      if (seen.count(nxt)) continue;
      seen.insert(nxt);
      if (out.size() >= cap) throw resource_error("ball cap exceeded");
      out.push_back(nxt);
      q.push_back({std::move(nxt), dist + 1});
    }
  }
  return out;
}

TreeEdge tree_edge_from_dart(const MarkedGraph& g, const Address& a, Dart d) {
  if (g.dart_from(d) != g.endpoint(a)) throw contract_error("dart does not leave address vertex");
  if (dart_is_forward(d)) return TreeEdge{a, dart_edge(d)};
  return TreeEdge{g.extend(a, d), dart_edge(d)};
}

Address tree_edge_head(const MarkedGraph& g, const TreeEdge& t) {
  return g.extend(t.tail, forward_dart(t.edge));
}

Address oriented_start(const MarkedGraph& g, const OrientedTreeEdge& o) {
  return o.forward ? o.cell.tail : tree_edge_head(g, o.cell);
}

Address oriented_end(const MarkedGraph& g, const OrientedTreeEdge& o) {
  return o.forward ? tree_edge_head(g, o.cell) : o.cell.tail;
}

Dart oriented_dart(const OrientedTreeEdge& o) {
  return o.forward ? forward_dart(o.cell.edge) : backward_dart(o.cell.edge);
}

TreeEdge deck_translate_edge(const MarkedGraph& g, const TreeEdge& t, const Word& w) {
  return TreeEdge{g.deck_translate(t.tail, w), t.edge};
}

void PeriodicRay::validate(const MarkedGraph& g) const {
  if (period.empty()) throw input_error("ray period must be non-trivial");
  Address a = start;
  for (Dart d : prefix) {
    if (g.dart_from(d) != g.endpoint(a)) throw input_error("ray prefix not composable");
    a.push_back(d);  // deducedness checked below
  }
  for (size_t i = 1; i < prefix.size(); ++i)
    if (prefix[i] == dart_reverse(prefix[i - 1])) throw input_error("ray prefix not reduced");
  VertexId anchor = prefix.empty() ? g.endpoint(start) : g.dart_to(prefix.back());
  VertexId cur = anchor;
  for (size_t i = 0; i < period.size(); ++i) {
    if (g.dart_from(period[i]) != cur) throw input_error("ray period not composable");
    cur = g.dart_to(period[i]);
    if (i > 0 && period[i] == dart_reverse(period[i - 1]))
      throw input_error("ray period not reduced");
  }
  if (cur != anchor) throw input_error("ray period is not a loop");
  if (!prefix.empty() && period.front() == dart_reverse(prefix.back()))
    throw input_error("ray backtracks at the prefix-period junction");
  if (period.front() == dart_reverse(period.back()))
    throw input_error("ray period is not cyclically reduced at the junction");
}

Dart PeriodicRay::dart_at(size_t i) const {
  if (i < prefix.size()) return prefix[i];
  return period[(i - prefix.size()) % period.size()];
}

Address PeriodicRay::vertex_at(const MarkedGraph& g, size_t i) const {
  Address a = start;
  for (size_t k = 0; k < i; ++k) a = g.extend(std::move(a), dart_at(k));
  return a;
}

}  // namespace gcore
