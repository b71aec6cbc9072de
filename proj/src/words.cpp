#include "gcore/words.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace gcore {

Basis::Basis(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  if (symbols_.size() < 2) throw input_error("basis rank must be at least 2");
  std::set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.empty()) throw input_error("empty generator name");
    if (!seen.insert(s).second) throw input_error("duplicate generator name: " + s);
  }
}

std::optional<int> Basis::index_of(const std::string& name) const {
  for (size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

std::vector<Letter> reduce_letters(const std::vector<Letter>& raw) {
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw input_error("zero letter");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word::Word(std::vector<Letter> letters) : letters_(reduce_letters(letters)) {}

Word Word::inverse() const {
  std::vector<Letter> rev(letters_.rbegin(), letters_.rend());
  for (Letter& l : rev) l = -l;
  Word w;
  w.letters_ = std::move(rev);  // reversal of a reduced word is reduced
  return w;
}

Word Word::operator*(const Word& other) const {
  std::vector<Letter> cat = letters_;
  cat.insert(cat.end(), other.letters_.begin(), other.letters_.end());
  return Word(std::move(cat));
}

bool Word::operator<(const Word& o) const {
  if (letters_.size() != o.letters_.size()) return letters_.size() < o.letters_.size();
  return letters_ < o.letters_;
}

std::string to_string(const Word& w, const Basis& basis) {
  std::ostringstream os;
  bool first = true;
  for (Letter l : w.letters()) {
    if (!first) os << ' ';
    first = false;
    os << basis.symbol(gen_of(l));
    if (!positive(l)) os << "^-1";
  }
  return os.str();
}

Word parse_word(const std::string& text, const Basis& basis) {
  std::istringstream is(text);
  std::vector<Letter> letters;
  std::string tok;
  while (is >> tok) {
    bool inv = false;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      inv = true;
      tok = tok.substr(0, tok.size() - 3);
    }
    auto idx = basis.index_of(tok);
    if (!idx) throw input_error("unknown generator symbol: " + tok);
    letters.push_back(letter_of(*idx, !inv));
  }
  return Word(std::move(letters));
}

BasisMap::BasisMap(Basis basis, std::vector<Word> images)
    : basis_(std::move(basis)), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != basis_.rank())
    throw input_error("basis map needs one image per generator");
}

BasisMap BasisMap::identity(const Basis& basis) {
  std::vector<Word> images;
  for (int i = 0; i < basis.rank(); ++i) images.push_back(Word::generator(i));
  return BasisMap(basis, std::move(images));
}

Word BasisMap::apply(const Word& w) const {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    const Word& img = images_.at(gen_of(l));
    if (positive(l)) {
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    } else {
      Word inv = img.inverse();
      out.insert(out.end(), inv.letters().begin(), inv.letters().end());
    }
  }
  return Word(std::move(out));
}

BasisMap BasisMap::compose_after(const BasisMap& inner) const {
  std::vector<Word> images;
  for (const Word& w : inner.images()) images.push_back(apply(w));
  return BasisMap(basis_, std::move(images));
}

namespace {

// Stallings folding on a labeled graph: vertices are ints, darts carry
// generator labels.  Used only for the surjectivity test below.
struct FoldGraph {
  // adjacency: vertex -> list of (letter, target, edge id)
  struct Dart {
    Letter label;
    int to;
    int edge;
  };
  std::vector<std::vector<Dart>> adj;
  int n_edges = 0;

  int add_vertex() {
    adj.emplace_back();
    return static_cast<int>(adj.size()) - 1;
  }
  void add_edge(int u, int v, Letter positive_label) {
    int e = n_edges++;
    adj[u].push_back({positive_label, v, e});
    adj[v].push_back({inverse(positive_label), u, e});
  }
};

}  // namespace

bool is_pi1_isomorphism(const BasisMap& h) {
  const int rank = h.basis().rank();
  FoldGraph g;
  int base = g.add_vertex();
  for (int i = 0; i < rank; ++i) {
    const Word& w = h.image(i);
    if (w.trivial()) return false;
    int cur = base;
    for (int k = 0; k < w.length(); ++k) {
      int nxt = (k + 1 == w.length()) ? base : g.add_vertex();
      Letter l = w.letters()[k];
      if (positive(l))
        g.add_edge(cur, nxt, l);
      else
        g.add_edge(nxt, cur, inverse(l));
      cur = nxt;
    }
  }

  // Union-find over vertices; fold until no vertex has two darts with
  // the same label leading to distinct classes.
  std::vector<int> parent(g.adj.size());
  for (size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t v = 0; v < g.adj.size(); ++v) {
      if (find(static_cast<int>(v)) != static_cast<int>(v)) continue;
      // collect darts of the merged class rooted at v
      std::map<Letter, int> first;
      for (size_t u = 0; u < g.adj.size(); ++u) {
        if (find(static_cast<int>(u)) != static_cast<int>(v)) continue;
        for (const auto& d : g.adj[u]) {
          int t = find(d.to);
          auto it = first.find(d.label);
          if (it == first.end()) {
            first[d.label] = t;
          } else if (it->second != t) {
            parent[find(it->second)] = find(t);
            changed = true;
          }
        }
      }
      if (changed) break;
    }
  }

  // Surjective iff the folded graph is the rose: base class has, for each
  // generator, a loop, and every vertex class is the base class.
  std::set<int> classes;
  for (size_t v = 0; v < g.adj.size(); ++v) classes.insert(find(static_cast<int>(v)));
  // The folded graph is the core graph of the generated subgroup; it is
  // the whole group exactly when that graph is the rose on the alphabet.
  if (classes.size() != 1) return false;
  std::set<Letter> loops;
  for (size_t u = 0; u < g.adj.size(); ++u)
    for (const auto& d : g.adj[u])
      if (positive(d.label)) loops.insert(d.label);
  for (int i = 0; i < rank; ++i)
    if (!loops.count(letter_of(i, true))) return false;
  return true;
}

namespace {

int total_length(const std::vector<Word>& tuple) {
  int n = 0;
  for (const auto& w : tuple) n += w.length();
  return n;
}

// Elementary Nielsen move applied to a tuple: replace entry a by
// entry_a * entry_b^{sign} (b != a), or invert entry a.
struct NielsenMove {
  int a;
  int b;     // -1 for inversion of a
  bool inv;  // use inverse of entry b
};

void apply_move(std::vector<Word>& tuple, const NielsenMove& m) {
  if (m.b < 0)
    tuple[m.a] = tuple[m.a].inverse();
  else
    tuple[m.a] = tuple[m.a] * (m.inv ? tuple[m.b].inverse() : tuple[m.b]);
}

// The automorphism x_a -> x_a x_b^{±1} (or x_a -> x_a^{-1}) as a BasisMap.
BasisMap move_automorphism(const Basis& basis, const NielsenMove& m) {
  std::vector<Word> images;
  for (int i = 0; i < basis.rank(); ++i) images.push_back(Word::generator(i));
  if (m.b < 0)
    images[m.a] = Word::generator(m.a).inverse();
  else
    images[m.a] =
        Word::generator(m.a) * (m.inv ? Word::generator(m.b).inverse() : Word::generator(m.b));
  return BasisMap(basis, std::move(images));
}

}  // namespace

BasisMap invert_automorphism(const BasisMap& phi) {
  if (!is_pi1_isomorphism(phi)) throw input_error("not an automorphism");
  const Basis& basis = phi.basis();
  const int rank = basis.rank();

  // Breadth-first search over Nielsen-equivalent tuples, allowing strict
  // length decreases freely and level moves within a visited set.  A basis
  // tuple always reaches total length = rank (a signed permuted basis).
  std::vector<Word> tuple = phi.images();
  std::vector<NielsenMove> trail;

  auto candidate_moves = [&]() {
    std::vector<NielsenMove> ms;
    for (int a = 0; a < rank; ++a) {
      ms.push_back({a, -1, false});
      for (int b = 0; b < rank; ++b) {
        if (a == b) continue;
        ms.push_back({a, b, false});
        ms.push_back({a, b, true});
      }
    }
    return ms;
  };
  const std::vector<NielsenMove> moves = candidate_moves();

  auto is_signed_basis = [&](const std::vector<Word>& t) {
    std::vector<bool> hit(rank, false);
    for (const auto& w : t) {
      if (w.length() != 1) return false;
      int g = gen_of(w.letters()[0]);
      if (hit[g]) return false;
      hit[g] = true;
    }
    return true;
  };

  // Greedy strict reduction with a bounded plateau search when stuck.
  std::set<std::vector<Word>> visited;
  std::deque<std::pair<std::vector<Word>, std::vector<NielsenMove>>> queue;
  queue.push_back({tuple, {}});
  visited.insert(tuple);
  int best = total_length(tuple);
  std::optional<std::vector<NielsenMove>> solution;
  const size_t kStateCap = 200000;

  while (!queue.empty()) {
    auto [t, path] = queue.front();
    queue.pop_front();
    if (is_signed_basis(t)) {
      solution = path;
      break;
    }
    for (const auto& m : moves) {
      auto t2 = t;
      apply_move(t2, m);
      int len = total_length(t2);
      if (len > best) continue;  // never grow beyond best seen
      if (visited.count(t2)) continue;
      if (visited.size() > kStateCap) throw resource_error("automorphism inversion search too large");
      visited.insert(t2);
      auto p2 = path;
      p2.push_back(m);
      if (len < best) {
        // restart the plateau from the shorter tuple
        best = len;
        queue.clear();
        visited.clear();
        visited.insert(t2);
        queue.push_back({std::move(t2), std::move(p2)});
        break;
      }
      queue.push_back({std::move(t2), std::move(p2)});
    }
  }
  if (!solution) throw internal_error("automorphism inversion failed to reach a signed basis");

  // phi ∘ nu_1 ∘ ... ∘ nu_k = pi with pi a signed permutation, so
  // phi^{-1} = nu_1 ∘ ... ∘ nu_k ∘ pi^{-1}.
  std::vector<Word> final_tuple = phi.images();
  for (const auto& m : *solution) apply_move(final_tuple, m);

  // pi sends generator a to final_tuple[a]; invert the signed permutation.
  std::vector<Word> pi_inv_images(rank);
  for (int a = 0; a < rank; ++a) {
    Letter l = final_tuple[a].letters()[0];
    int g = gen_of(l);
    pi_inv_images[g] = positive(l) ? Word::generator(a) : Word::generator(a).inverse();
  }
  BasisMap result(basis, std::move(pi_inv_images));
  for (auto it = solution->rbegin(); it != solution->rend(); ++it)
    result = move_automorphism(basis, *it).compose_after(result);

  // result = nu_1 ∘ ... ∘ nu_k ∘ pi^{-1}
  return result;
}

}  // namespace gcore
