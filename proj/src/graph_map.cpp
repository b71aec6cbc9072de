#include "gcore/graph_map.hpp"

#include <algorithm>
#include <set>

namespace gcore {

IoGraphMap tighten(const MarkedGraph& src, const MarkedGraph& tgt, IoGraphMap m) {
  if (static_cast<int>(m.vertex_map.size()) != src.n_vertices())
    throw input_error("vertex map must cover every source vertex");
  for (auto& [v, w] : m.vertex_map)
    if (w < 0 || w >= tgt.n_vertices()) throw input_error("vertex image out of range");
  for (EdgeId e = 0; e < src.n_edges(); ++e) {
    auto it = m.edge_map.find(e);
    if (it == m.edge_map.end()) throw input_error("edge map must cover every source edge");
    // free reduction of the dart path
    std::vector<Dart> reduced;
    for (Dart d : it->second) {
      if (!reduced.empty() && reduced.back() == dart_reverse(d))
        reduced.pop_back();
      else
        reduced.push_back(d);
    }
    if (reduced.empty())
      throw shared_edge_error("edge " + src.edge(e).name +
                              " has image reducing to a point; the splittings share an edge");
    // endpoint compatibility in the quotient
    VertexId from_img = m.vertex_map.at(src.edge(e).from);
    VertexId to_img = m.vertex_map.at(src.edge(e).to);
    if (tgt.dart_from(reduced.front()) != from_img || tgt.dart_to(reduced.back()) != to_img)
      throw input_error("edge image endpoints do not match vertex images for edge " +
                        src.edge(e).name);
    for (size_t i = 0; i + 1 < reduced.size(); ++i)
      if (tgt.dart_to(reduced[i]) != tgt.dart_from(reduced[i + 1]))
        throw input_error("edge image is not a path for edge " + src.edge(e).name);
    it->second = std::move(reduced);
  }
  return m;
}

Morphism::Morphism(std::shared_ptr<const MarkedGraph> src, std::shared_ptr<const MarkedGraph> tgt,
                   std::vector<Address> placements, BasisMap twist)
    : src_(std::move(src)),
      tgt_(std::move(tgt)),
      placements_(std::move(placements)),
      twist_(std::move(twist)),
      twist_inv_(invert_automorphism(twist_)) {
  if (static_cast<int>(placements_.size()) != src_->n_vertices())
    throw input_error("placement needed for every source vertex");
  for (VertexId v = 0; v < src_->n_vertices(); ++v)
    (void)tgt_->endpoint(placements_[v]);  // validates addresses
}

Address Morphism::act(const Word& g, const Address& target_vertex) const {
  return tgt_->deck_translate(target_vertex, twist_.apply(g));
}

TreeEdge Morphism::act_edge(const Word& g, const TreeEdge& t) const {
  return TreeEdge{act(g, t.tail), t.edge};
}

Address Morphism::image_of_vertex(const Address& p) const {
  VertexId v = src_->endpoint(p);
  Word g = src_->deck_word(p);
  return act(g, placements_[v]);
}

std::vector<Dart> Morphism::image_of_edge(const TreeEdge& t) const {
  Address tail_img = image_of_vertex(t.tail);
  Address head_img = image_of_vertex(src_->extend(t.tail, forward_dart(t.edge)));
  return tgt_->tree_geodesic(tail_img, head_img);
}

int Morphism::total_image_length() const {
  int total = 0;
  for (EdgeId e = 0; e < src_->n_edges(); ++e)
    total += static_cast<int>(image_of_edge(canonical_tree_edge(*src_, e)).size());
  return total;
}

std::vector<std::vector<Dart>> Morphism::gates(VertexId v) const {
  const Address& c = src_->canonical_lift(v);
  Address img = image_of_vertex(c);
  std::map<Dart, std::vector<Dart>> groups;
  for (Dart d : src_->darts_at(v)) {
    Address nbr_img = image_of_vertex(src_->extend(c, d));
    auto geo = tgt_->tree_geodesic(img, nbr_img);
    Dart first = geo.empty() ? -1 : geo.front();
    groups[first].push_back(d);
  }
  std::vector<std::vector<Dart>> out;
  for (auto& [first, ds] : groups) out.push_back(std::move(ds));
  return out;
}

bool Morphism::certified(std::string* why) const {
  for (EdgeId e = 0; e < src_->n_edges(); ++e) {
    if (image_of_edge(canonical_tree_edge(*src_, e)).empty()) {
      if (why) *why = "edge " + src_->edge(e).name + " has collapsed image";
      return false;
    }
  }
  for (VertexId v = 0; v < src_->n_vertices(); ++v) {
    if (gates(v).size() < 2) {
      if (why) *why = "vertex " + std::to_string(v) + " has a single gate";
      return false;
    }
  }
  return true;
}

void Morphism::require_certified() const {
  std::string why;
  if (!certified(&why)) throw contract_error("morphism not certified: " + why);
}

const std::vector<TreeEdge>& Morphism::canonical_preimages(EdgeId qe) const {
  auto it = preimage_cache_.find(qe);
  if (it != preimage_cache_.end()) return it->second;

  const MarkedGraph& tgt = *tgt_;
  const MarkedGraph& src = *src_;
  TreeEdge eta_can = canonical_tree_edge(tgt, qe);
  std::vector<TreeEdge> out;
  for (EdgeId e = 0; e < src.n_edges(); ++e) {
    TreeEdge lift = canonical_tree_edge(src, e);
    Address cur = image_of_vertex(lift.tail);
    std::vector<Dart> path = image_of_edge(lift);
    for (Dart d : path) {
      if (dart_edge(d) == qe) {
        TreeEdge crossed = tree_edge_from_dart(tgt, cur, d);
        // g moves this lift so that its image crossing lands on eta_can:
        // phi(g) carries `crossed` to eta_can.
        Word h = tgt.deck_word_between(eta_can.tail, crossed.tail);
        out.push_back(deck_translate_edge(src, lift, twist_inv_.apply(h)));
      }
      cur = tgt.extend(std::move(cur), d);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw internal_error("morphism image misses an edge orbit");
  return preimage_cache_.emplace(qe, std::move(out)).first->second;
}

std::vector<TreeEdge> Morphism::preimage_edges(const TreeEdge& eta) const {
  TreeEdge eta_can = canonical_tree_edge(*tgt_, eta.edge);
  Word to_lift = twist_inv_.apply(tgt_->deck_word_between(eta.tail, eta_can.tail));
  std::vector<TreeEdge> out;
  for (const auto& p : canonical_preimages(eta.edge))
    out.push_back(deck_translate_edge(*src_, p, to_lift));
  std::sort(out.begin(), out.end());
  return out;
}

PeriodicRay Morphism::image_ray(const PeriodicRay& r) const {
  r.validate(*src_);
  const MarkedGraph& src = *src_;
  const MarkedGraph& tgt = *tgt_;

  Address p_end = r.vertex_at(src, r.prefix.size());
  Address p_next = src.extend_path(p_end, r.period);
  Word g = src.deck_word_between(p_next, p_end);  // g . p_end = p_end . period
  Word h = twist_.apply(g);
  if (h.trivial()) throw internal_error("period word maps to the identity");

  Address y = image_of_vertex(r.start);

  // project y onto the axis of h: walk c darts along [y, h.y] where
  // c = d(y, h.y) - d(y, h^2.y)/2
  Address hy = tgt.deck_translate(y, h);
  Address hhy = tgt.deck_translate(hy, h);
  int d1 = tgt.tree_distance(y, hy);
  int d2 = tgt.tree_distance(y, hhy);
  int c = (2 * d1 - d2) / 2;
  std::vector<Dart> toward = tgt.tree_geodesic(y, hy);
  Address z = y;
  for (int i = 0; i < c; ++i) z = tgt.extend(std::move(z), toward[i]);

  PeriodicRay out;
  out.start = y;
  out.prefix = tgt.tree_geodesic(y, z);
  out.period = tgt.tree_geodesic(z, tgt.deck_translate(z, h));
  out.validate(tgt);
  return out;
}

IoGraphMap quotient_description(const Morphism& m) {
  IoGraphMap io;
  const MarkedGraph& src = m.source();
  const MarkedGraph& tgt = m.target();
  for (VertexId v = 0; v < src.n_vertices(); ++v)
    io.vertex_map[v] = tgt.endpoint(m.placement(v));
  for (EdgeId e = 0; e < src.n_edges(); ++e)
    io.edge_map[e] = m.image_of_edge(canonical_tree_edge(src, e));
  io.twist = tgt.deck_word(m.placement(src.base()));
  return io;
}

Morphism lift_graph_map(std::shared_ptr<const MarkedGraph> src,
                        std::shared_ptr<const MarkedGraph> tgt, const IoGraphMap& io) {
  // path-lift the quotient map from the twisted base placement
  auto lift_vertex = [&](const Address& p) {
    Address cur =
        tgt->deck_translate(tgt->canonical_lift(io.vertex_map.at(src->base())), io.twist);
    for (Dart d : p) {
      const auto& path = io.edge_map.at(dart_edge(d));
      if (dart_is_forward(d)) {
        cur = tgt->extend_path(std::move(cur), path);
      } else {
        std::vector<Dart> rev;
        for (size_t i = path.size(); i > 0; --i) rev.push_back(dart_reverse(path[i - 1]));
        cur = tgt->extend_path(std::move(cur), rev);
      }
    }
    return cur;
  };

  std::vector<Address> placements;
  for (VertexId v = 0; v < src->n_vertices(); ++v)
    placements.push_back(lift_vertex(src->canonical_lift(v)));

  Address base_img = lift_vertex({});
  std::vector<Word> images;
  for (int i = 0; i < src->basis().rank(); ++i) {
    Address moved = lift_vertex(src->loop_of_word(Word::generator(i)));
    images.push_back(tgt->deck_word_between(moved, base_img));
  }
  BasisMap twist(src->basis(), std::move(images));
  if (!is_pi1_isomorphism(twist))
    throw input_error("graph map does not induce an automorphism of the group");
  return Morphism(std::move(src), std::move(tgt), std::move(placements), std::move(twist));
}

namespace {

// One pass of steepest-descent over single-vertex moves.  Returns true
// if some move strictly decreased total image length.
bool improve_once(const MarkedGraph& src, const MarkedGraph& tgt, const BasisMap& twist,
                  const std::vector<Word>& holonomy, std::vector<Address>& J) {
  auto edge_len = [&](EdgeId e, const std::vector<Address>& P) {
    VertexId u = src.edge(e).from, w = src.edge(e).to;
    Address head = tgt.deck_translate(P[w], twist.apply(holonomy[e]));
    return tgt.tree_distance(P[u], head);
  };
  auto total = [&](const std::vector<Address>& P) {
    int t = 0;
    for (EdgeId e = 0; e < src.n_edges(); ++e) t += edge_len(e, P);
    return t;
  };
  int best = total(J);
  for (VertexId v = 0; v < src.n_vertices(); ++v) {
    for (Dart d : tgt.darts_at(tgt.endpoint(J[v]))) {
      std::vector<Address> trial = J;
      trial[v] = tgt.extend(trial[v], d);
      int t = total(trial);
      if (t < best) {
        J = std::move(trial);
        return true;
      }
    }
  }
  return false;
}

}  // namespace

Morphism make_morphism(std::shared_ptr<const MarkedGraph> src,
                       std::shared_ptr<const MarkedGraph> tgt, const BasisMap& twist,
                       std::uint64_t variant) {
  if (!(src->basis() == tgt->basis())) throw input_error("splittings must share a basis");
  if (!is_pi1_isomorphism(twist)) throw input_error("twist must be an automorphism");

  std::vector<Word> holonomy;
  for (EdgeId e = 0; e < src->n_edges(); ++e) {
    Address head = src->extend(src->canonical_lift(src->edge(e).from), forward_dart(e));
    holonomy.push_back(src->deck_word(head));
  }

  const int kSeeds = 16;
  for (int attempt = 0; attempt < kSeeds; ++attempt) {
    // Seed: spread the vertex images over a ball around the base lift.
    // The first attempt places the base at the base lift.
    std::vector<Address> pool = tgt->ball({}, 3, 4000);
    std::vector<Address> J;
    std::uint64_t stride = 1 + 2 * static_cast<std::uint64_t>(attempt);
    for (VertexId v = 0; v < src->n_vertices(); ++v)
      J.push_back(pool[(static_cast<std::uint64_t>(v) * stride + 5 * attempt) % pool.size()]);

    while (improve_once(*src, *tgt, twist, holonomy, J)) {
    }

    Morphism m(src, tgt, J, twist);
    if (!m.certified()) continue;
    if (variant == 0) return m;

    // A morphism need not have minimal image length.  Later variants are
    // certified one-step perturbations of the minimal solution.
    std::vector<Morphism> candidates{m};
    for (VertexId v = 0; v < src->n_vertices(); ++v) {
      for (Dart d : tgt->darts_at(tgt->endpoint(J[v]))) {
        std::vector<Address> J2 = J;
        J2[v] = tgt->extend(J2[v], d);
        Morphism pert(src, tgt, std::move(J2), twist);
        if (pert.certified()) candidates.push_back(std::move(pert));
        if (candidates.size() > variant) return candidates[variant];
      }
    }
    return candidates[variant % candidates.size()];
  }
  throw shared_edge_error(
      "no certified morphism found; the splittings appear to share an edge orbit");
}

}  // namespace gcore
