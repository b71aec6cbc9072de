#include "gcore/quotient_core.hpp"

#include <algorithm>

namespace gcore {

QuotientCore::QuotientCore(std::shared_ptr<const MarkedGraph> src,
                           std::shared_ptr<const MarkedGraph> tgt, BasisMap twist)
    : src_(std::move(src)),
      tgt_(std::move(tgt)),
      twist_(std::move(twist)),
      twist_inv_(invert_automorphism(twist_)) {}

Address QuotientCore::act(const Word& g, const Address& tv) const {
  return tgt_->deck_translate(tv, twist_.apply(g));
}

TreeEdge QuotientCore::act(const Word& g, const TreeEdge& te) const {
  return TreeEdge{act(g, te.tail), te.edge};
}

SquareCell QuotientCore::square_key(const TreeEdge& src_e, const TreeEdge& dec) const {
  Word g = src_->deck_word(src_e.tail);
  return SquareCell{src_e.edge, act(g.inverse(), dec)};
}

HEdgeCell QuotientCore::hedge_key(const TreeEdge& src_e, const Address& tv) const {
  Word g = src_->deck_word(src_e.tail);
  return HEdgeCell{src_e.edge, act(g.inverse(), tv)};
}

VEdgeCell QuotientCore::vedge_key(const Address& sv, const TreeEdge& dec) const {
  Word g = src_->deck_word(sv);
  return VEdgeCell{src_->endpoint(sv), act(g.inverse(), dec)};
}

VertCell QuotientCore::vert_key(const Address& sv, const Address& tv) const {
  Word g = src_->deck_word(sv);
  return VertCell{src_->endpoint(sv), act(g.inverse(), tv)};
}

QuotientCore::SquareFaces QuotientCore::faces(const SquareCell& s) const {
  SquareFaces out;
  TreeEdge lift = canonical_tree_edge(*src_, s.src_edge);
  Address head = src_->extend(lift.tail, forward_dart(s.src_edge));
  Address dtail = s.dec.tail;
  Address dhead = tree_edge_head(*tgt_, s.dec);
  out.h.push_back(hedge_key(lift, dtail));
  out.h.push_back(hedge_key(lift, dhead));
  out.v.push_back(vedge_key(lift.tail, s.dec));
  out.v.push_back(vedge_key(head, s.dec));
  out.corners.push_back(vert_key(lift.tail, dtail));
  out.corners.push_back(vert_key(lift.tail, dhead));
  out.corners.push_back(vert_key(head, dtail));
  out.corners.push_back(vert_key(head, dhead));
  return out;
}

std::vector<VertCell> QuotientCore::endpoints(const HEdgeCell& e) const {
  TreeEdge lift = canonical_tree_edge(*src_, e.src_edge);
  Address head = src_->extend(lift.tail, forward_dart(e.src_edge));
  return {vert_key(lift.tail, e.tvert), vert_key(head, e.tvert)};
}

std::vector<VertCell> QuotientCore::endpoints(const VEdgeCell& e) const {
  const Address& c = src_->canonical_lift(e.src_vert);
  return {vert_key(c, e.dec.tail), vert_key(c, tree_edge_head(*tgt_, e.dec))};
}

std::vector<SquareCell> QuotientCore::squares_at(const HEdgeCell& e) const {
  std::vector<SquareCell> out;
  // squares over the same source edge whose decoration is a target tree
  // edge incident to e.tvert
  for (Dart d : tgt_->darts_at(tgt_->endpoint(e.tvert))) {
    TreeEdge dec = tree_edge_from_dart(*tgt_, e.tvert, d);
    SquareCell cand{e.src_edge, dec};
    if (squares.count(cand)) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<SquareCell> QuotientCore::squares_at(const VEdgeCell& e) const {
  std::vector<SquareCell> out;
  const Address& c = src_->canonical_lift(e.src_vert);
  for (Dart d : src_->darts_at(e.src_vert)) {
    TreeEdge se = tree_edge_from_dart(*src_, c, d);
    SquareCell cand = square_key(se, e.dec);
    if (squares.count(cand)) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<HEdgeCell> QuotientCore::hedges_at(const VertCell& v) const {
  std::vector<HEdgeCell> out;
  const Address& c = src_->canonical_lift(v.src_vert);
  for (Dart d : src_->darts_at(v.src_vert)) {
    TreeEdge se = tree_edge_from_dart(*src_, c, d);
    HEdgeCell cand = hedge_key(se, v.tvert);
    if (hedges.count(cand)) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<VEdgeCell> QuotientCore::vedges_at(const VertCell& v) const {
  std::vector<VEdgeCell> out;
  for (Dart d : tgt_->darts_at(tgt_->endpoint(v.tvert))) {
    TreeEdge dec = tree_edge_from_dart(*tgt_, v.tvert, d);
    VEdgeCell cand{v.src_vert, dec};
    if (vedges.count(cand)) out.push_back(cand);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<TreeEdge> QuotientCore::slice(EdgeId src_edge) const {
  std::vector<TreeEdge> out;
  for (const auto& s : squares)
    if (s.src_edge == src_edge) out.push_back(s.dec);
  return out;
}

std::vector<TreeEdge> QuotientCore::slice_support(const TreeEdge& eta) const {
  // source tree edges x with (x, eta) a core square
  std::vector<TreeEdge> out;
  TreeEdge eta_can = canonical_tree_edge(*tgt_, eta.edge);
  Word lift_word = twist_inv_.apply(tgt_->deck_word(eta.tail));
  for (const auto& s : squares) {
    if (s.dec.edge != eta.edge) continue;
    // s = (e_can, dec): orbit contains (g^{-1} e_can, eta_can) where
    // phi(g) carries eta_can to dec; then translate to the given lift.
    Word h = tgt_->deck_word(s.dec.tail);
    Word g = twist_inv_.apply(h);
    TreeEdge lift = canonical_tree_edge(*src_, s.src_edge);
    out.push_back(deck_translate_edge(*src_, lift, lift_word * g.inverse()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

QuotientCore QuotientCore::swapped() const {
  QuotientCore out(tgt_, src_, twist_inv_);
  auto swap_pair_edge = [&](EdgeId se, const TreeEdge& dec) {
    // pair (canonical lift of se, dec); anchor the target coordinate
    Word h = tgt_->deck_word(dec.tail);
    TreeEdge src_lift = canonical_tree_edge(*src_, se);
    TreeEdge moved = deck_translate_edge(*src_, src_lift, twist_inv_.apply(h).inverse());
    return SquareCell{dec.edge, moved};
  };
  for (const auto& s : squares) out.squares.insert(swap_pair_edge(s.src_edge, s.dec));
  for (const auto& e : hedges) {
    // (source edge, target vertex) becomes a vertical cell
    Word h = tgt_->deck_word(e.tvert);
    TreeEdge src_lift = canonical_tree_edge(*src_, e.src_edge);
    TreeEdge moved = deck_translate_edge(*src_, src_lift, twist_inv_.apply(h).inverse());
    out.vedges.insert(VEdgeCell{tgt_->endpoint(e.tvert), moved});
  }
  for (const auto& e : vedges) {
    Word h = tgt_->deck_word(e.dec.tail);
    Address moved = src_->deck_translate(src_->canonical_lift(e.src_vert),
                                         twist_inv_.apply(h).inverse());
    out.hedges.insert(HEdgeCell{e.dec.edge, moved});
  }
  for (const auto& v : verts) {
    Word h = tgt_->deck_word(v.tvert);
    Address moved = src_->deck_translate(src_->canonical_lift(v.src_vert),
                                         twist_inv_.apply(h).inverse());
    out.verts.insert(VertCell{tgt_->endpoint(v.tvert), moved});
  }
  return out;
}

void QuotientCore::require_closed() const {
  for (const auto& s : squares) {
    SquareFaces f = faces(s);
    for (const auto& e : f.h)
      if (!hedges.count(e)) throw internal_error("square missing horizontal face");
    for (const auto& e : f.v)
      if (!vedges.count(e)) throw internal_error("square missing vertical face");
    for (const auto& c : f.corners)
      if (!verts.count(c)) throw internal_error("square missing corner");
  }
  for (const auto& e : hedges)
    for (const auto& c : endpoints(e))
      if (!verts.count(c)) throw internal_error("edge missing endpoint");
  for (const auto& e : vedges)
    for (const auto& c : endpoints(e))
      if (!verts.count(c)) throw internal_error("edge missing endpoint");
}

}  // namespace gcore
