#include "ergomax/symbolic.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include <json.hpp>

namespace ergomax {

namespace {

using nlohmann::json;

// Enumerates allowed depth-k words in lexicographic order, then iteratively
// removes words without an allowed one-symbol extension. Shared by
// parse_system (key validation) and trim_and_recode (graph construction).
std::vector<std::vector<int>> trimmed_words(const SubshiftSystem& system) {
  const int k = system.potential.depth;
  const int s = system.symbol_count();

  std::vector<std::vector<int>> words;
  std::vector<int> word;
  auto extend = [&](auto&& self, int pos) -> void {
    if (pos == k) {
      words.push_back(word);
      if (words.size() > 200000) {
        throw DomainError("recoded vertex set exceeds 200000 words");
      }
      return;
    }
    for (int c = 0; c < s; ++c) {
      if (pos > 0 && !system.pair_allowed(word[pos - 1], c)) continue;
      word.push_back(c);
      self(self, pos + 1);
      word.pop_back();
    }
  };
  extend(extend, 0);

  // A word survives iff some symbol extends it to an allowed (k+1)-word
  // whose suffix also survives. Iterate to a fixed point.
  std::set<std::vector<int>> alive(words.begin(), words.end());
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = alive.begin(); it != alive.end();) {
      const std::vector<int>& w = *it;
      bool has_successor = false;
      for (int c = 0; c < s && !has_successor; ++c) {
        if (!system.pair_allowed(w.back(), c)) continue;
        std::vector<int> next(w.begin() + (k > 1 ? 1 : 0), w.end());
        if (k == 1) next.clear();
        next.push_back(c);
        if (alive.count(next)) has_successor = true;
      }
      if (!has_successor) {
        it = alive.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }

  std::vector<std::vector<int>> result(alive.begin(), alive.end());
  return result;  // std::set iterates lexicographically
}

std::vector<int> parse_word(const json& arr, const SubshiftSystem& system,
                            int expected_len) {
  if (!arr.is_array()) throw ParseError("potential word must be an array");
  if (static_cast<int>(arr.size()) != expected_len) {
    throw ParseError("potential word length does not match depth");
  }
  std::vector<int> word;
  for (const auto& item : arr) {
    if (!item.is_string()) throw ParseError("word entries must be symbol labels");
    int idx = system.symbol_index(item.get<std::string>());
    if (idx < 0) {
      throw ParseError("potential key uses unknown symbol '" +
                       item.get<std::string>() + "'");
    }
    word.push_back(idx);
  }
  return word;
}

}  // namespace

double LocallyConstantPotential::value_of(std::span<const int> word) const {
  auto it = values.find(std::vector<int>(word.begin(), word.end()));
  return it == values.end() ? default_value : it->second;
}

int SubshiftSystem::symbol_index(const std::string& label) const {
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i] == label) return static_cast<int>(i);
  }
  return -1;
}

bool SubshiftSystem::word_allowed(std::span<const int> word) const {
  for (std::size_t i = 0; i + 1 < word.size(); ++i) {
    if (!pair_allowed(word[i], word[i + 1])) return false;
  }
  return true;
}

SubshiftSystem parse_system(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed system document: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("system document must be an object");
  if (!doc.contains("symbols") || !doc["symbols"].is_array() ||
      doc["symbols"].empty()) {
    throw ParseError("missing or empty 'symbols' array");
  }

  SubshiftSystem system;
  for (const auto& s : doc["symbols"]) {
    if (!s.is_string()) throw ParseError("symbols must be strings");
    std::string label = s.get<std::string>();
    if (system.symbol_index(label) >= 0) {
      throw ParseError("duplicate symbol '" + label + "'");
    }
    system.symbols.push_back(label);
  }

  const int n = system.symbol_count();
  if (!doc.contains("transition") || !doc["transition"].is_array() ||
      static_cast<int>(doc["transition"].size()) != n) {
    throw ParseError("transition matrix must be square with one row per symbol");
  }
  for (const auto& row : doc["transition"]) {
    if (!row.is_array() || static_cast<int>(row.size()) != n) {
      throw ParseError("transition matrix must be square");
    }
    std::vector<int> r;
    for (const auto& e : row) {
      if (!e.is_number_integer() ||
          (e.get<int>() != 0 && e.get<int>() != 1)) {
        throw ParseError("transition entries must be 0 or 1");
      }
      r.push_back(e.get<int>());
    }
    system.transition.push_back(std::move(r));
  }

  if (!doc.contains("potential") || !doc["potential"].is_object()) {
    throw ParseError("missing 'potential' object");
  }
  const json& pot = doc["potential"];
  if (!pot.contains("depth") || !pot["depth"].is_number_integer()) {
    throw ParseError("potential depth must be an integer");
  }
  system.potential.depth = pot["depth"].get<int>();
  if (system.potential.depth < 1) throw ParseError("potential depth must be >= 1");
  if (pot.contains("default")) {
    if (!pot["default"].is_number()) throw ParseError("potential default must be a number");
    system.potential.default_value = pot["default"].get<double>();
  }
  if (pot.contains("values")) {
    if (!pot["values"].is_array()) throw ParseError("potential values must be an array");
    for (const auto& entry : pot["values"]) {
      if (!entry.is_object() || !entry.contains("word") || !entry.contains("value")) {
        throw ParseError("potential value entries need 'word' and 'value'");
      }
      std::vector<int> word = parse_word(entry["word"], system, system.potential.depth);
      if (!system.word_allowed(word)) {
        throw ParseError("potential key is not an allowed word");
      }
      if (!entry["value"].is_number()) throw ParseError("potential value must be a number");
      if (system.potential.values.count(word)) {
        throw ParseError("duplicate potential key");
      }
      system.potential.values[word] = entry["value"].get<double>();
    }
  }

  // Keys must survive forward trimming: a value attached to a word with no
  // infinite continuation cannot belong to any point of the subshift.
  if (!system.potential.values.empty()) {
    auto words = trimmed_words(system);
    std::set<std::vector<int>> alive(words.begin(), words.end());
    for (const auto& [word, value] : system.potential.values) {
      (void)value;
      if (!alive.count(word)) {
        throw ParseError("potential key names a word with no forward continuation");
      }
    }
  }
  return system;
}

EventuallyPeriodicPoint parse_point(const std::string& text,
                                    const SubshiftSystem& system) {
  auto bar = text.find('|');
  if (bar == std::string::npos || text.find('|', bar + 1) != std::string::npos) {
    throw ParseError("point must contain exactly one '|'");
  }
  auto split = [&](const std::string& part) {
    std::vector<int> out;
    if (part.empty()) return out;
    std::stringstream ss(part);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      int idx = system.symbol_index(tok);
      if (idx < 0) throw ParseError("unknown symbol '" + tok + "' in point");
      out.push_back(idx);
    }
    return out;
  };
  EventuallyPeriodicPoint point;
  point.preperiod = split(text.substr(0, bar));
  point.period = split(text.substr(bar + 1));
  if (point.period.empty()) throw ParseError("point period must be nonempty");
  validate_point(point, system);
  return point;
}

std::string point_to_string(const EventuallyPeriodicPoint& point,
                            const SubshiftSystem& system) {
  auto join = [&](const std::vector<int>& word) {
    std::string s;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (i) s += ',';
      s += system.symbols[word[i]];
    }
    return s;
  };
  return join(point.preperiod) + "|" + join(point.period);
}

void validate_point(const EventuallyPeriodicPoint& point,
                    const SubshiftSystem& system) {
  if (point.period.empty()) throw ParseError("point period must be nonempty");
  std::vector<int> unrolled = point.preperiod;
  unrolled.insert(unrolled.end(), point.period.begin(), point.period.end());
  unrolled.insert(unrolled.end(), point.period.begin(), point.period.end());
  for (int sym : unrolled) {
    if (sym < 0 || sym >= system.symbol_count()) {
      throw ParseError("point uses a symbol outside the alphabet");
    }
  }
  if (!system.word_allowed(unrolled)) {
    throw ParseError("point word is not allowed by the transition matrix");
  }
}

int point_symbol_at(const EventuallyPeriodicPoint& point, std::size_t i) {
  if (i < point.preperiod.size()) return point.preperiod[i];
  return point.period[(i - point.preperiod.size()) % point.period.size()];
}

EventuallyPeriodicPoint shift_point(const EventuallyPeriodicPoint& point) {
  EventuallyPeriodicPoint out = point;
  if (!out.preperiod.empty()) {
    out.preperiod.erase(out.preperiod.begin());
  } else {
    std::rotate(out.period.begin(), out.period.begin() + 1, out.period.end());
  }
  return out;
}

double birkhoff_sum(const EventuallyPeriodicPoint& point, int n,
                    const SubshiftSystem& system) {
  if (n < 1) throw DomainError("birkhoff_sum requires n >= 1");
  validate_point(point, system);
  const int k = system.potential.depth;
  double sum = 0.0;
  std::vector<int> window(k);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < k; ++j) window[j] = point_symbol_at(point, i + j);
    sum += system.potential.value_of(window);
  }
  return sum;
}

int WeightedDigraph::edge_index(int u, int v) const {
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
  if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
  return static_cast<int>(it - edges.begin());
}

int WeightedDigraph::vertex_of_word(const std::vector<int>& word) const {
  auto it = std::lower_bound(vertex_words.begin(), vertex_words.end(), word);
  if (it == vertex_words.end() || *it != word) return -1;
  return static_cast<int>(it - vertex_words.begin());
}

std::string WeightedDigraph::vertex_label(int v) const {
  bool single = true;
  for (const auto& s : symbol_labels) single = single && s.size() == 1;
  std::string out;
  for (std::size_t i = 0; i < vertex_words[v].size(); ++i) {
    if (i && !single) out += ',';
    out += symbol_labels[vertex_words[v][i]];
  }
  return out;
}

std::string WeightedDigraph::edge_label(int e) const {
  return vertex_label(edges[e].first) + ">" + vertex_label(edges[e].second);
}

std::vector<int> WeightedDigraph::cycle_symbols(const std::vector<int>& cycle) const {
  std::vector<int> symbols;
  symbols.reserve(cycle.size());
  for (int v : cycle) symbols.push_back(vertex_words[v][0]);
  return symbols;
}

WeightedDigraph trim_and_recode(const SubshiftSystem& system) {
  WeightedDigraph graph;
  graph.depth = system.potential.depth;
  graph.symbol_labels = system.symbols;
  graph.vertex_words = trimmed_words(system);
  if (graph.vertex_words.empty()) {
    throw EmptySubshiftError("subshift is empty after trimming");
  }

  const int k = graph.depth;
  const int n = graph.vertex_count();
  graph.vertex_weight.resize(n);
  graph.out.assign(n, {});
  for (int v = 0; v < n; ++v) {
    graph.vertex_weight[v] = system.potential.value_of(graph.vertex_words[v]);
  }
  // Edge u -> v iff the words overlap in k-1 symbols and the junction pair
  // is allowed; for k > 1 the junction pair already lies inside v's word.
  for (int u = 0; u < n; ++u) {
    const auto& w = graph.vertex_words[u];
    for (int v = 0; v < n; ++v) {
      const auto& w2 = graph.vertex_words[v];
      bool ok = k == 1 ? system.pair_allowed(w[0], w2[0]) : true;
      for (int j = 0; ok && j + 1 < k; ++j) ok = w[j + 1] == w2[j];
      if (!ok) continue;
      graph.out[u].push_back(v);
      graph.edges.emplace_back(u, v);
    }
  }
  std::sort(graph.edges.begin(), graph.edges.end());
  return graph;
}

std::vector<Cycle> enumerate_simple_cycles(const WeightedDigraph& graph,
                                           int max_len) {
  if (max_len < 1) throw DomainError("max_len must be >= 1");
  const int n = graph.vertex_count();
  std::vector<Cycle> cycles;
  std::vector<int> path;
  std::vector<char> on_path(n, 0);

  // DFS restricted to vertices >= start emits each simple cycle once, at its
  // canonical rotation, in lexicographic order of the vertex sequences.
  auto dfs = [&](auto&& self, int start, int v) -> void {
    for (int w : graph.out[v]) {
      if (w == start) {
        double sum = 0.0;
        for (int u : path) sum += graph.vertex_weight[u];
        cycles.push_back({path, sum / static_cast<double>(path.size())});
      } else if (w > start && !on_path[w] &&
                 static_cast<int>(path.size()) < max_len) {
        on_path[w] = 1;
        path.push_back(w);
        self(self, start, w);
        path.pop_back();
        on_path[w] = 0;
      }
    }
  };

  for (int s = 0; s < n; ++s) {
    path = {s};
    on_path[s] = 1;
    dfs(dfs, s, s);
    on_path[s] = 0;
  }
  return cycles;
}

}  // namespace ergomax
