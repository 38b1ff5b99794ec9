#pragma once

// Subshifts of finite type over a finite alphabet, locally constant
// potentials, eventually periodic points, and the higher-block recoding
// that turns Birkhoff-sum questions into weighted-walk questions.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ergomax/errors.hpp"

namespace ergomax {

// Potential depending on the first `depth` symbols of a point.
// Keys are words of symbol indices; unlisted allowed words take `default_value`.
struct LocallyConstantPotential {
  int depth = 1;
  double default_value = 0.0;
  std::map<std::vector<int>, double> values;

  double value_of(std::span<const int> word) const;
};

// One-sided subshift of finite type: symbols, a 0/1 transition matrix
// (entry (i,j)=1 means symbol j may follow symbol i), and a potential.
struct SubshiftSystem {
  std::vector<std::string> symbols;
  std::vector<std::vector<int>> transition;
  LocallyConstantPotential potential;

  int symbol_count() const { return static_cast<int>(symbols.size()); }
  int symbol_index(const std::string& label) const;  // -1 if unknown
  bool pair_allowed(int i, int j) const { return transition[i][j] != 0; }
  bool word_allowed(std::span<const int> word) const;
};

// Parses and validates a system-description JSON document.
// Rejects duplicate symbols, non-square or non-0/1 matrices, depth < 1,
// potential keys that use unknown symbols, disallowed words, or words
// removed by forward trimming.
SubshiftSystem parse_system(const std::string& text);

// A point given as preperiod followed by an infinitely repeated period.
// Stored as symbol indices into the owning system.
struct EventuallyPeriodicPoint {
  std::vector<int> preperiod;
  std::vector<int> period;  // nonempty

  bool operator==(const EventuallyPeriodicPoint&) const = default;
};

// Point syntax "preperiod|period" with comma-separated symbol labels,
// e.g. "a|1,0" for a(10)^inf and "|0,1" for (01)^inf.
EventuallyPeriodicPoint parse_point(const std::string& text,
                                    const SubshiftSystem& system);
std::string point_to_string(const EventuallyPeriodicPoint& point,
                            const SubshiftSystem& system);

// Throws ParseError unless every consecutive pair of preperiod.period.period
// is allowed (covers the junction and the wrap-around pair).
void validate_point(const EventuallyPeriodicPoint& point,
                    const SubshiftSystem& system);

int point_symbol_at(const EventuallyPeriodicPoint& point, std::size_t i);

// Drops the first symbol; a purely periodic point has its period rotated.
EventuallyPeriodicPoint shift_point(const EventuallyPeriodicPoint& point);

// S_n(phi)(x) = phi(x) + phi(Tx) + ... + phi(T^{n-1}x), exactly unrolled.
double birkhoff_sum(const EventuallyPeriodicPoint& point, int n,
                    const SubshiftSystem& system);

// Vertex-weighted digraph on the allowed depth-k words that survive
// iterated removal of out-degree-0 words. Walks of n vertices correspond
// to allowed (n+k-1)-words extendable to points, and the Birkhoff sum of
// a point is the sum of the first n vertex weights along its walk.
struct WeightedDigraph {
  int depth = 1;
  std::vector<std::string> symbol_labels;
  std::vector<std::vector<int>> vertex_words;  // sorted lexicographically
  std::vector<double> vertex_weight;
  std::vector<std::vector<int>> out;           // sorted adjacency
  std::vector<std::pair<int, int>> edges;      // sorted (u,v)

  int vertex_count() const { return static_cast<int>(vertex_words.size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  int edge_index(int u, int v) const;  // -1 if absent
  int vertex_of_word(const std::vector<int>& word) const;  // -1 if absent
  std::string vertex_label(int v) const;
  std::string edge_label(int e) const;

  // First symbol of each vertex word along a cycle, as system symbol indices.
  std::vector<int> cycle_symbols(const std::vector<int>& cycle) const;
};

// Higher-block recoding with forward trimming.
// Throws EmptySubshiftError if nothing survives.
WeightedDigraph trim_and_recode(const SubshiftSystem& system);

struct Cycle {
  std::vector<int> vertices;  // canonical rotation: starts at smallest vertex
  double mean = 0.0;          // mean vertex weight
};

// All simple cycles of length <= max_len, in lexicographic order of their
// canonical vertex sequences.
std::vector<Cycle> enumerate_simple_cycles(const WeightedDigraph& graph,
                                           int max_len);

}  // namespace ergomax
