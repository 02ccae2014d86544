#pragma once

#include <algorithm>
#include <complex>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lcaforms {

namespace detail {
struct ElementTag {};
struct CharacterTag {};
}  // namespace detail

/// Coordinate vector of a product of cyclic groups. The tag keeps elements of
/// X apart from characters of its dual even though both use the same factors.
template <class Tag>
struct Coords {
  std::vector<std::int64_t> coords;

  friend auto operator<=>(const Coords&, const Coords&) = default;
  friend bool operator==(const Coords&, const Coords&) = default;
};

using GroupElement = Coords<detail::ElementTag>;
using Character = Coords<detail::CharacterTag>;

inline Character as_character(const GroupElement& x) { return Character{x.coords}; }
inline GroupElement as_element(const Character& y) { return GroupElement{y.coords}; }

/// Z(n_1) x ... x Z(n_k). The dual group is identified with the same factor
/// list through (x, y) = exp(2 pi i sum_j x_j y_j / n_j).
///
/// Elements are indexed in lexicographic coordinate order (first coordinate
/// most significant), which is the canonical order of every set-valued result.
class FiniteAbelianGroup {
 public:
  static constexpr std::size_t kMaxOrder = std::size_t{1} << 20;

  FiniteAbelianGroup() = default;

  explicit FiniteAbelianGroup(std::vector<std::int64_t> factors) : factors_(std::move(factors)) {
    order_ = 1;
    for (const auto n : factors_) {
      if (n < 2) throw std::invalid_argument("cyclic factor orders must be >= 2");
      order_ *= static_cast<std::size_t>(n);
      if (order_ > kMaxOrder) throw std::invalid_argument("group order exceeds desk-scale limit");
    }
    strides_.assign(factors_.size(), 1);
    for (std::size_t j = factors_.size(); j-- > 1;) {
      strides_[j - 1] = strides_[j] * static_cast<std::size_t>(factors_[j]);
    }
    phase_modulus_ = 1;
    for (const auto n : factors_) phase_modulus_ = std::lcm(phase_modulus_, n);
  }

  const std::vector<std::int64_t>& factors() const noexcept { return factors_; }
  std::size_t order() const noexcept { return order_; }
  std::size_t rank() const noexcept { return factors_.size(); }

  /// Common denominator of all pairing phases.
  std::int64_t phase_modulus() const noexcept { return phase_modulus_; }

  friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
    return a.factors_ == b.factors_;
  }

  std::vector<std::int64_t> decode(std::size_t index) const {
    if (index >= order_) throw std::out_of_range("element index out of range");
    std::vector<std::int64_t> c(factors_.size());
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      c[j] = static_cast<std::int64_t>(index / strides_[j]) % factors_[j];
    }
    return c;
  }

  GroupElement element(std::size_t index) const { return GroupElement{decode(index)}; }
  Character character(std::size_t index) const { return Character{decode(index)}; }

  /// Index of a coordinate vector; coordinates are reduced mod n_j first.
  template <class Tag>
  std::size_t index_of(const Coords<Tag>& v) const {
    check_shape(v.coords.size());
    std::size_t index = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      index += static_cast<std::size_t>(mod(v.coords[j], factors_[j])) * strides_[j];
    }
    return index;
  }

  template <class Tag>
  Coords<Tag> reduce(Coords<Tag> v) const {
    check_shape(v.coords.size());
    for (std::size_t j = 0; j < factors_.size(); ++j) v.coords[j] = mod(v.coords[j], factors_[j]);
    return v;
  }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(order_);
    for (std::size_t i = 0; i < order_; ++i) out.push_back(element(i));
    return out;
  }

  GroupElement zero() const { return GroupElement{std::vector<std::int64_t>(factors_.size(), 0)}; }

  // Index arithmetic. Index 0 is always the identity.
  std::size_t add(std::size_t a, std::size_t b) const { return combine(a, b, 1); }
  std::size_t sub(std::size_t a, std::size_t b) const { return combine(a, b, -1); }
  std::size_t neg(std::size_t a) const { return combine(0, a, -1); }
  std::size_t times(std::int64_t k, std::size_t a) const {
    std::size_t index = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      const auto cj = static_cast<std::int64_t>(a / strides_[j]) % factors_[j];
      index += static_cast<std::size_t>(mod(k % factors_[j] * cj, factors_[j])) * strides_[j];
    }
    return index;
  }
  std::size_t twice(std::size_t a) const { return times(2, a); }

  template <class Tag>
  Coords<Tag> add(const Coords<Tag>& a, const Coords<Tag>& b) const {
    return from_index<Tag>(add(index_of(a), index_of(b)));
  }
  template <class Tag>
  Coords<Tag> neg(const Coords<Tag>& a) const {
    return from_index<Tag>(neg(index_of(a)));
  }
  template <class Tag>
  Coords<Tag> times(std::int64_t k, const Coords<Tag>& a) const {
    return from_index<Tag>(times(k, index_of(a)));
  }

  /// Order of the element with the given index.
  std::int64_t element_order(std::size_t a) const {
    std::int64_t result = 1;
    const auto c = decode(a);
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      result = std::lcm(result, factors_[j] / std::gcd(factors_[j], c[j]));
    }
    return result;
  }

  /// Numerator p of the phase p / phase_modulus() in [0, 1) so that
  /// (x, y) = exp(2 pi i p / phase_modulus()).
  std::int64_t phase_numerator(std::size_t x, std::size_t y) const {
    std::int64_t p = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      const auto xj = static_cast<std::int64_t>(x / strides_[j]) % factors_[j];
      const auto yj = static_cast<std::int64_t>(y / strides_[j]) % factors_[j];
      p = (p + (xj * yj % factors_[j]) * (phase_modulus_ / factors_[j])) % phase_modulus_;
    }
    return p;
  }

  /// (x, y) by index. Quarter turns are returned exactly.
  std::complex<double> pair(std::size_t x, std::size_t y) const {
    return unit_root(phase_numerator(x, y), phase_modulus_);
  }

  std::string to_string() const {
    if (factors_.empty()) return "{0}";
    std::string s;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      if (j) s += "x";
      s += "Z(" + std::to_string(factors_[j]) + ")";
    }
    return s;
  }

  template <class Tag>
  std::string format(const Coords<Tag>& v) const {
    if (v.coords.size() == 1) return std::to_string(v.coords[0]);
    std::string s = "(";
    for (std::size_t j = 0; j < v.coords.size(); ++j) {
      if (j) s += ",";
      s += std::to_string(v.coords[j]);
    }
    return s + ")";
  }
  std::string format_index(std::size_t index) const { return format(element(index)); }

  static std::complex<double> unit_root(std::int64_t p, std::int64_t q) {
    p = mod(p, q);
    if ((4 * p) % q == 0) {
      switch ((4 * p) / q) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, 1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, -1.0};
      }
    }
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(p) / static_cast<double>(q);
    return std::polar(1.0, angle);
  }

  static std::int64_t mod(std::int64_t a, std::int64_t n) {
    const auto r = a % n;
    return r < 0 ? r + n : r;
  }

 private:
  void check_shape(std::size_t n) const {
    if (n != factors_.size()) {
      throw std::invalid_argument("coordinate vector of length " + std::to_string(n) +
                                  " does not match group " + to_string());
    }
  }

  std::size_t combine(std::size_t a, std::size_t b, std::int64_t sign) const {
    std::size_t index = 0;
    for (std::size_t j = 0; j < factors_.size(); ++j) {
      const auto aj = static_cast<std::int64_t>(a / strides_[j]) % factors_[j];
      const auto bj = static_cast<std::int64_t>(b / strides_[j]) % factors_[j];
      index += static_cast<std::size_t>(mod(aj + sign * bj, factors_[j])) * strides_[j];
    }
    return index;
  }

  template <class Tag>
  Coords<Tag> from_index(std::size_t i) const {
    return Coords<Tag>{decode(i)};
  }

  std::vector<std::int64_t> factors_;
  std::vector<std::size_t> strides_;
  std::size_t order_ = 1;
  std::int64_t phase_modulus_ = 1;
};

/// (x, y) for an element of X and a character in its dual.
inline std::complex<double> pair(const FiniteAbelianGroup& g, const GroupElement& x,
                                 const Character& y) {
  return g.pair(g.index_of(x), g.index_of(y));
}

/// A subgroup of a finite abelian group, stored fully enumerated.
class Subgroup {
 public:
  static Subgroup trivial(const FiniteAbelianGroup& g) { return Subgroup(g, {0}); }

  static Subgroup whole(const FiniteAbelianGroup& g) {
    std::vector<std::size_t> all(g.order());
    std::iota(all.begin(), all.end(), std::size_t{0});
    return Subgroup(g, std::move(all));
  }

  template <class Tag>
  static Subgroup generated(const FiniteAbelianGroup& g, const std::vector<Coords<Tag>>& gens) {
    std::vector<std::size_t> idx;
    idx.reserve(gens.size());
    for (const auto& x : gens) idx.push_back(g.index_of(x));
    return generated_by_indices(g, idx);
  }

  static Subgroup generated_by_indices(const FiniteAbelianGroup& g,
                                       const std::vector<std::size_t>& gens) {
    std::vector<char> member(g.order(), 0);
    member[0] = 1;
    std::vector<std::size_t> elems{0};
    for (const auto gen : gens) adjoin(g, member, elems, gen);
    std::sort(elems.begin(), elems.end());
    return Subgroup(g, std::move(elems));
  }

  /// Validates that the listed indices form a subgroup.
  static Subgroup from_indices(const FiniteAbelianGroup& g, std::vector<std::size_t> indices) {
    std::sort(indices.begin(), indices.end());
    indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
    std::vector<char> member(g.order(), 0);
    for (const auto i : indices) {
      if (i >= g.order()) throw std::invalid_argument("subgroup index out of range");
      member[i] = 1;
    }
    if (indices.empty() || !member[0]) throw std::invalid_argument("subgroup must contain 0");
    for (const auto a : indices) {
      if (!member[g.neg(a)]) throw std::invalid_argument("set is not closed under negation");
      for (const auto b : indices) {
        if (!member[g.add(a, b)]) throw std::invalid_argument("set is not closed under addition");
      }
    }
    return Subgroup(g, std::move(indices));
  }

  const FiniteAbelianGroup& group() const noexcept { return group_; }
  const std::vector<std::size_t>& indices() const noexcept { return indices_; }
  const std::vector<std::size_t>& generators() const noexcept { return generators_; }
  std::size_t order() const noexcept { return indices_.size(); }

  bool contains(std::size_t index) const { return index < member_.size() && member_[index]; }
  template <class Tag>
  bool contains(const Coords<Tag>& v) const {
    return contains(group_.index_of(v));
  }

  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(indices_.size());
    for (const auto i : indices_) out.push_back(group_.element(i));
    return out;
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.group_ == b.group_ && a.indices_ == b.indices_;
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < indices_.size(); ++k) {
      if (k) s += ",";
      s += group_.format_index(indices_[k]);
    }
    return s + "}";
  }

 private:
  Subgroup(const FiniteAbelianGroup& g, std::vector<std::size_t> sorted_indices)
      : group_(g), indices_(std::move(sorted_indices)), member_(g.order(), 0) {
    for (const auto i : indices_) member_[i] = 1;
    // Greedy generating set in canonical order.
    std::vector<char> span(g.order(), 0);
    span[0] = 1;
    std::vector<std::size_t> span_elems{0};
    for (const auto i : indices_) {
      if (span[i]) continue;
      generators_.push_back(i);
      adjoin(g, span, span_elems, i);
    }
  }

  // H + <gen> is the union of the cosets H + k gen.
  static void adjoin(const FiniteAbelianGroup& g, std::vector<char>& member,
                     std::vector<std::size_t>& elems, std::size_t gen) {
    if (member[gen]) return;
    const std::vector<std::size_t> base = elems;
    std::size_t step = gen;
    while (!member[step]) {
      for (const auto h : base) {
        const auto e = g.add(h, step);
        if (!member[e]) {
          member[e] = 1;
          elems.push_back(e);
        }
      }
      step = g.add(step, gen);
    }
  }

  FiniteAbelianGroup group_;
  std::vector<std::size_t> indices_;
  std::vector<char> member_;
  std::vector<std::size_t> generators_;
};

/// Every subgroup of g, ordered by size and then by element list.
inline std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& g) {
  std::set<std::vector<std::size_t>> seen;
  std::vector<Subgroup> found;
  std::vector<Subgroup> frontier{Subgroup::trivial(g)};
  seen.insert(frontier.front().indices());
  while (!frontier.empty()) {
    std::vector<Subgroup> next;
    for (const auto& h : frontier) {
      for (std::size_t x = 0; x < g.order(); ++x) {
        if (h.contains(x)) continue;
        auto gens = h.generators();
        gens.push_back(x);
        auto bigger = Subgroup::generated_by_indices(g, gens);
        if (seen.insert(bigger.indices()).second) next.push_back(std::move(bigger));
      }
      found.push_back(h);
    }
    frontier = std::move(next);
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.indices() < b.indices();
  });
  return found;
}

/// A(Y, K) = {y : (x, y) = 1 for all x in K}, computed with exact phases.
/// Because the dual shares the factor list, the same call gives A(X, E) for a
/// subgroup E of the dual.
inline Subgroup annihilator(const Subgroup& k) {
  const auto& g = k.group();
  std::vector<std::size_t> out;
  for (std::size_t y = 0; y < g.order(); ++y) {
    bool kills = true;
    for (const auto x : k.generators()) {
      if (g.phase_numerator(x, y) != 0) {
        kills = false;
        break;
      }
    }
    if (kills) out.push_back(y);
  }
  return Subgroup::from_indices(g, std::move(out));
}

/// True iff doubling maps K onto itself.
inline bool is_corwin(const Subgroup& k) {
  const auto& g = k.group();
  std::vector<char> hit(g.order(), 0);
  std::size_t image_size = 0;
  for (const auto x : k.indices()) {
    const auto d = g.twice(x);
    if (!hit[d]) {
      hit[d] = 1;
      ++image_size;
    }
  }
  return image_size == k.order();
}

inline bool is_corwin(const FiniteAbelianGroup& g) { return is_corwin(Subgroup::whole(g)); }

/// Indices of the nonzero elements x with 2x = 0.
inline std::vector<std::size_t> elements_of_order_two(const FiniteAbelianGroup& g) {
  std::vector<std::size_t> out;
  for (std::size_t x = 1; x < g.order(); ++x) {
    if (g.twice(x) == 0) out.push_back(x);
  }
  return out;
}

/// Functional graph of y -> 2y on a finite dual group.
///
/// Every element lies on exactly one cycle or in exactly one chain. A chain
/// starts at a root (an element outside the image of doubling) and follows
/// doubling until it reaches a cycle element or an element already placed in
/// an earlier chain; that element is recorded in `feeds`.
struct DoublingGraph {
  struct Chain {
    std::vector<std::size_t> nodes;
    std::size_t feeds = 0;
  };

  FiniteAbelianGroup group;
  std::vector<std::size_t> image;                  // index -> index of 2y
  std::vector<std::vector<std::size_t>> preimages;  // sorted
  std::vector<std::size_t> roots;                  // sorted
  std::vector<std::vector<std::size_t>> cycles;     // each starts at its smallest index
  std::vector<Chain> chains;                       // one per root, in root order
  std::vector<char> on_cycle;

  std::size_t cycle_length(std::size_t cycle) const { return cycles.at(cycle).size(); }
};

inline DoublingGraph doubling_graph(const FiniteAbelianGroup& y_group) {
  DoublingGraph graph;
  graph.group = y_group;
  const auto n = y_group.order();
  graph.image.resize(n);
  graph.preimages.assign(n, {});
  for (std::size_t y = 0; y < n; ++y) {
    graph.image[y] = y_group.twice(y);
    graph.preimages[graph.image[y]].push_back(y);
  }
  for (std::size_t y = 0; y < n; ++y) {
    if (graph.preimages[y].empty()) graph.roots.push_back(y);
  }

  // Walk forward from each unvisited element; meeting the current path again
  // closes a new cycle.
  graph.on_cycle.assign(n, 0);
  std::vector<char> state(n, 0);  // 0 unvisited, 1 on the current path, 2 done
  for (std::size_t y = 0; y < n; ++y) {
    std::vector<std::size_t> path;
    std::size_t z = y;
    while (state[z] == 0) {
      state[z] = 1;
      path.push_back(z);
      z = graph.image[z];
    }
    if (state[z] == 1) {
      std::vector<std::size_t> cycle(std::find(path.begin(), path.end(), z), path.end());
      for (const auto w : cycle) graph.on_cycle[w] = 1;
      std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
      graph.cycles.push_back(std::move(cycle));
    }
    for (const auto w : path) state[w] = 2;
  }
  std::sort(graph.cycles.begin(), graph.cycles.end());

  std::vector<char> placed(graph.on_cycle.begin(), graph.on_cycle.end());
  for (const auto root : graph.roots) {
    DoublingGraph::Chain chain;
    std::size_t w = root;
    while (!placed[w]) {
      placed[w] = 1;
      chain.nodes.push_back(w);
      w = graph.image[w];
    }
    chain.feeds = w;
    graph.chains.push_back(std::move(chain));
  }
  return graph;
}

}  // namespace lcaforms
