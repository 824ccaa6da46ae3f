#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gly/errors.hpp"
#include "gly/space.hpp"

namespace gly {

// Named generator of a homeomorphism group, stored with its exact inverse.
struct Generator {
  std::string name;
  SpaceMap map;
  SpaceMap inv;
};

// The generating set of a finitely generated group of self-homeomorphisms.
// Names are unique; the inverse of "g" prints as "g'".
class GeneratorSet {
 public:
  GeneratorSet() = default;

  /// Inverse computed exactly (throws NotInvertibleError if none exists).
  void add(std::string name, SpaceMap map) {
    SpaceMap inv = inverse(map);
    add_with_inverse(std::move(name), std::move(map), std::move(inv));
  }

  void add_with_inverse(std::string name, SpaceMap map, SpaceMap inv) {
    for (const auto& g : gens_)
      if (g.name == name) throw ValidationError("duplicate generator name \"" + name + "\"");
    gens_.push_back(Generator{std::move(name), std::move(map), std::move(inv)});
  }

  std::size_t size() const { return gens_.size(); }
  bool empty() const { return gens_.empty(); }
  const Generator& operator[](std::size_t i) const { return gens_[i]; }
  const std::vector<Generator>& all() const { return gens_; }

  std::optional<std::size_t> find(const std::string& name) const {
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i].name == name) return i;
    return std::nullopt;
  }

 private:
  std::vector<Generator> gens_;
};

// A letter is a signed 1-based generator index: +k is generator k-1,
// -k its inverse. A word is a freely reduced letter sequence; the empty
// word is the identity element e.
using Letter = int;
using Word = std::vector<Letter>;

inline std::string letter_token(const GeneratorSet& gens, Letter l) {
  const std::size_t idx = static_cast<std::size_t>((l > 0 ? l : -l) - 1);
  if (idx >= gens.size()) throw ParseError("letter index out of range");
  return l > 0 ? gens[idx].name : gens[idx].name + "'";
}

inline const SpaceMap& letter_map(const GeneratorSet& gens, Letter l) {
  const std::size_t idx = static_cast<std::size_t>((l > 0 ? l : -l) - 1);
  return l > 0 ? gens[idx].map : gens[idx].inv;
}

/// Words print as space-separated generator names, ' marking inverses;
/// the identity prints as "e".
inline std::string word_to_string(const GeneratorSet& gens, const Word& w) {
  if (w.empty()) return "e";
  std::string s;
  for (const Letter l : w) {
    if (!s.empty()) s += ' ';
    s += letter_token(gens, l);
  }
  return s;
}

inline Word parse_word(const GeneratorSet& gens, const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok == "e") continue;
    bool inv = false;
    if (tok.size() > 1 && tok.back() == '\'') {
      inv = true;
      tok.pop_back();
    }
    const auto idx = gens.find(tok);
    if (!idx) throw ParseError("unknown generator \"" + tok + "\" in word");
    const Letter l = static_cast<Letter>(*idx) + 1;
    w.push_back(inv ? -l : l);
  }
  return w;
}

/// Free reduction: cancel adjacent letter/inverse pairs. Realizes the same
/// group element; relations beyond free ones are handled by ball dedup.
inline Word reduce_word(const Word& w) {
  Word out;
  for (const Letter l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline Word inverse_word(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

/// Shortest-then-lexicographic order on words; tokens compare as strings,
/// so the order is by generator name with "g" before "g'".
inline bool word_less(const GeneratorSet& gens, const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    return letter_token(gens, a[i]) < letter_token(gens, b[i]);
  }
  return false;
}

/// Exact composition of the word's letters, leftmost outermost.
inline SpaceMap realize_word(const GeneratorSet& gens, const Word& w, const PhaseSpace& space,
                             std::size_t breakpoint_cap = kBreakpointCap) {
  SpaceMap acc = identity_of(space);
  for (auto it = w.rbegin(); it != w.rend(); ++it)
    acc = compose(letter_map(gens, *it), acc, breakpoint_cap);
  return acc;
}

struct GroupElement {
  Word word;          // a shortest representing word (lexicographically least)
  SpaceMap realized;  // exact composition of the word's letters
};

struct BallLimits {
  std::size_t max_elements = 200000;
  std::size_t max_total_breakpoints = 4000000;
  std::size_t compose_breakpoint_cap = kBreakpointCap;
};

// Ball of a Cayley graph: every group element realized by a reduced word
// of bounded length, deduplicated by exact functional equality. Elements
// are stored in shortest-then-lex word order; element 0 is the identity.
class CayleyBall {
 public:
  const std::vector<GroupElement>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }
  int radius() const { return radius_; }
  const GroupElement& identity() const { return elems_.front(); }

  /// Element index ranges per word length, for layered traversals.
  const std::vector<std::pair<std::size_t, std::size_t>>& layers() const { return layers_; }

 private:
  friend CayleyBall ball_enumerate(const GeneratorSet&, const PhaseSpace&, int,
                                   const BallLimits&);
  std::vector<GroupElement> elems_;
  std::vector<std::pair<std::size_t, std::size_t>> layers_;
  int radius_ = 0;
};

/// Deterministic breadth-first enumeration of the radius-`radius` ball.
/// Elements realizing canonically equal maps are merged, keeping the
/// lexicographically smallest shortest word. Output is independent of
/// worker counts by construction (expansion order is fixed).
inline CayleyBall ball_enumerate(const GeneratorSet& gens, const PhaseSpace& space, int radius,
                                 const BallLimits& limits = {}) {
  if (radius < 0) throw ValidationError("ball radius must be >= 0");
  CayleyBall ball;
  ball.radius_ = radius;
  std::unordered_map<std::string, std::size_t> seen;
  std::size_t breakpoint_budget = 0;

  auto track = [&](GroupElement el) -> bool {  // true if genuinely new
    std::string key = canonical_key(el.realized);
    auto [it, fresh] = seen.emplace(std::move(key), ball.elems_.size());
    if (!fresh) return false;
    breakpoint_budget += breakpoint_count(el.realized);
    ball.elems_.push_back(std::move(el));
    if (ball.elems_.size() > limits.max_elements ||
        breakpoint_budget > limits.max_total_breakpoints)
      throw ResourceLimitError("Cayley ball cap exceeded at radius " +
                               std::to_string(ball.layers_.size() - 1) + " (" +
                               std::to_string(ball.elems_.size()) + " elements)");
    return true;
  };

  track(GroupElement{{}, identity_of(space)});
  ball.layers_.emplace_back(0, 1);

  // letters in token order so same-length words are generated lexicographically
  std::vector<Letter> letters;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    letters.push_back(static_cast<Letter>(i) + 1);
    letters.push_back(-(static_cast<Letter>(i) + 1));
  }
  std::sort(letters.begin(), letters.end(), [&](Letter a, Letter b) {
    return letter_token(gens, a) < letter_token(gens, b);
  });

  std::vector<std::size_t> frontier{0};
  for (int r = 1; r <= radius && !frontier.empty(); ++r) {
    std::vector<std::size_t> next;
    for (const std::size_t idx : frontier) {
      for (const Letter l : letters) {
        const Word& w = ball.elems_[idx].word;
        if (!w.empty() && w.back() == -l) continue;  // free cancellation
        Word extended = w;
        extended.push_back(l);
        SpaceMap realized =
            compose(ball.elems_[idx].realized, letter_map(gens, l), limits.compose_breakpoint_cap);
        if (track(GroupElement{std::move(extended), std::move(realized)}))
          next.push_back(ball.elems_.size() - 1);
      }
    }
    ball.layers_.emplace_back(next.empty() ? ball.elems_.size() : next.front(),
                              ball.elems_.size());
    frontier = std::move(next);
  }
  while (static_cast<int>(ball.layers_.size()) <= radius)
    ball.layers_.emplace_back(ball.elems_.size(), ball.elems_.size());
  return ball;
}

enum class Objective { Minimize, Maximize };

struct DistanceResult {
  Word witness;
  Rational value;
  bool exact = true;  // false when found by beam search
};

namespace detail {
inline bool improves(Objective obj, const Rational& candidate, const Rational& best) {
  return obj == Objective::Minimize ? candidate < best : candidate > best;
}
}  // namespace detail

/// Exact extremum of d(g(p), g(q)) over the ball. Ties break toward the
/// earlier stored element, i.e. shortest-then-lexicographic word.
inline DistanceResult optimize_distance(const CayleyBall& ball, const PhaseSpace& space,
                                        const Rational& p, const Rational& q, Objective obj) {
  const auto& elems = ball.elements();
  DistanceResult best{elems[0].word, metric(space, eval(elems[0].realized, p),
                                            eval(elems[0].realized, q))};
  for (std::size_t i = 1; i < elems.size(); ++i) {
    const Rational d = metric(space, eval(elems[i].realized, p), eval(elems[i].realized, q));
    if (detail::improves(obj, d, best.value)) best = DistanceResult{elems[i].word, d};
  }
  return best;
}

/// Greedy layered search: keep the `beam_width` best elements per word
/// length and extend only those. The result is always attained by a real
/// element (re-evaluation reproduces it) but is not certified extremal.
inline DistanceResult optimize_distance_beam(const GeneratorSet& gens, const PhaseSpace& space,
                                             int radius, const Rational& p, const Rational& q,
                                             Objective obj, int beam_width,
                                             const BallLimits& limits = {}) {
  if (beam_width < 1) throw ValidationError("beam width must be >= 1");
  struct Entry {
    GroupElement el;
    Rational value;
  };
  auto score = [&](const SpaceMap& m) { return metric(space, eval(m, p), eval(m, q)); };

  std::vector<Letter> letters;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    letters.push_back(static_cast<Letter>(i) + 1);
    letters.push_back(-(static_cast<Letter>(i) + 1));
  }
  std::sort(letters.begin(), letters.end(), [&](Letter a, Letter b) {
    return letter_token(gens, a) < letter_token(gens, b);
  });

  Entry identity{GroupElement{{}, identity_of(space)}, Rational(0)};
  identity.value = score(identity.el.realized);
  DistanceResult best{identity.el.word, identity.value, false};
  std::vector<Entry> frontier{std::move(identity)};
  std::unordered_map<std::string, bool> seen;
  seen.emplace(canonical_key(frontier[0].el.realized), true);

  for (int r = 1; r <= radius && !frontier.empty(); ++r) {
    std::vector<Entry> layer;
    for (const Entry& e : frontier) {
      for (const Letter l : letters) {
        if (!e.el.word.empty() && e.el.word.back() == -l) continue;
        Word w = e.el.word;
        w.push_back(l);
        SpaceMap m = compose(e.el.realized, letter_map(gens, l), limits.compose_breakpoint_cap);
        auto [it, fresh] = seen.emplace(canonical_key(m), true);
        if (!fresh) continue;
        Entry cand{GroupElement{std::move(w), std::move(m)}, Rational(0)};
        cand.value = score(cand.el.realized);
        if (detail::improves(obj, cand.value, best.value))
          best = DistanceResult{cand.el.word, cand.value, false};
        layer.push_back(std::move(cand));
      }
    }
    std::stable_sort(layer.begin(), layer.end(), [&](const Entry& a, const Entry& b) {
      if (a.value != b.value) return detail::improves(obj, a.value, b.value);
      return word_less(gens, a.el.word, b.el.word);
    });
    if (layer.size() > static_cast<std::size_t>(beam_width))
      layer.erase(layer.begin() + beam_width, layer.end());
    frontier = std::move(layer);
  }
  return best;
}

}  // namespace gly
