#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/errors.hpp"

namespace compro {

/// One syllable of a group word: a generator raised to a nonzero power.
/// Generators are numbered 1..m.
struct Syllable {
  int gen = 0;
  std::int64_t exp = 0;

  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// A group element in syllable form. Not necessarily in normal form;
/// WordCalc produces and consumes canonical forms.
struct Word {
  std::vector<Syllable> syl;

  bool empty() const { return syl.empty(); }
  size_t size() const { return syl.size(); }

  friend bool operator==(const Word&, const Word&) = default;

  /// Parses "a1^3 a2^-5027 a1" style text (exponent omitted means 1).
  static Word parse(std::string_view text);
  std::string str() const;
};

/// Commutation graph on generators 1..m. An edge {i,j} means a_i and a_j
/// commute. No self-loops.
class CommGraph {
 public:
  CommGraph() = default;
  explicit CommGraph(int m);

  int m() const { return m_; }
  void add_edge(int i, int j);
  bool commute(int i, int j) const { return adj_[idx(i, j)]; }
  std::vector<std::pair<int, int>> edges() const;

 private:
  size_t idx(int i, int j) const { return size_t(i - 1) * m_ + size_t(j - 1); }
  int m_ = 0;
  std::vector<bool> adj_;
};

/// Word arithmetic over a graph product of infinite cyclic groups, with an
/// optional exponent modulus for quotient-group computations.
///
/// Normal forms are Cartier-Foata style: repeatedly emit the least generator
/// whose syllable commutes past everything before it, merging syllables of
/// the generator just emitted. Two words represent the same group element
/// exactly when their normal forms are identical.
class WordCalc {
 public:
  /// modulus 0 means the generators have infinite order; a positive modulus
  /// q computes in the graph product of Z/q instead.
  explicit WordCalc(const CommGraph& graph, std::int64_t modulus = 0);

  const CommGraph& graph() const { return *graph_; }
  std::int64_t modulus() const { return modulus_; }

  Word normal(const Word& w) const;
  Word mul(const Word& a, const Word& b) const;
  Word inverse(const Word& a) const;
  Word conjugate(const Word& g, const Word& x) const;  // g x g^-1
  Word power(const Word& a, std::int64_t k) const;
  bool trivial(const Word& w) const { return normal(w).empty(); }
  bool commute_elements(const Word& a, const Word& b) const;

  /// Canonical representative of the right coset w * <droppable generators>.
  /// A syllable over a droppable generator that commutes with every syllable
  /// after it is removed; the loop runs to a fixed point.
  Word coset_canonical(const Word& w, const std::vector<bool>& droppable) const;

  /// True when the normal form of w only uses generators from the given set,
  /// i.e. w lies in the parabolic subgroup they generate.
  bool in_parabolic(const Word& w, const std::vector<bool>& gens) const;

 private:
  std::int64_t reduce_exp(std::int64_t e) const;
  const CommGraph* graph_;
  std::int64_t modulus_;
};

}  // namespace compro
